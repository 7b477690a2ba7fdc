use crate::error::{Error, Result};
use crate::interval::{InteriorDiffeo, Interval, PlMap};
use crate::scalar::{format_rational, Rational};

/// Interior lattice points `left + k·(right−left)/r`, `k = 1..r−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteSet {
    interval: Interval,
    resolution: usize,
    sites: Vec<Rational>,
}

impl SiteSet {
    pub fn new(interval: &Interval, resolution: usize) -> Result<SiteSet> {
        if resolution < 2 {
            return Err(Error::Input(format!("resolution {resolution} < 2")));
        }
        let mesh = interval.length() / Rational::from_integer(resolution.into());
        let sites = (1..resolution)
            .map(|k| interval.left() + &mesh * Rational::from_integer(k.into()))
            .collect();
        Ok(SiteSet { interval: interval.clone(), resolution, sites })
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn sites(&self) -> &[Rational] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn index_of(&self, t: &Rational) -> Option<usize> {
        self.sites.binary_search(t).ok()
    }
}

/// A permutation `π` of site indices, `π(k) = image[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SitePermutation {
    image: Vec<usize>,
}

impl SitePermutation {
    pub fn new(image: Vec<usize>) -> Result<SitePermutation> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || seen[i] {
                return Err(Error::Input(format!("{image:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(SitePermutation { image })
    }

    pub fn identity(n: usize) -> SitePermutation {
        SitePermutation { image: (0..n).collect() }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> SitePermutation {
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(i, j);
        SitePermutation { image }
    }

    /// The permutation of sites induced by a site-compatible diffeomorphism.
    pub fn from_diffeo(a: &InteriorDiffeo, sites: &SiteSet) -> Result<SitePermutation> {
        if a.interval() != sites.interval() {
            return Err(Error::EndpointMismatch("diffeomorphism of another interval".into()));
        }
        let image = sites
            .sites()
            .iter()
            .map(|s| {
                let t = a.eval(s)?;
                sites.index_of(&t).ok_or_else(|| Error::SiteIncompatible(format_rational(s)))
            })
            .collect::<Result<Vec<_>>>()?;
        SitePermutation::new(image)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.image[k]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(k, &i)| k == i)
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &SitePermutation) -> SitePermutation {
        assert_eq!(self.len(), inner.len(), "permutations of different site sets");
        SitePermutation { image: inner.image.iter().map(|&k| self.image[k]).collect() }
    }

    pub fn inverse(&self) -> SitePermutation {
        let mut image = vec![0; self.len()];
        for (k, &i) in self.image.iter().enumerate() {
            image[i] = k;
        }
        SitePermutation { image }
    }

    /// `π^ε`: `ε π ε⁻¹` on the image of `ε`, the identity elsewhere.
    pub fn transport(&self, eps: &SiteEmbedding) -> Result<SitePermutation> {
        if eps.source_len() != self.len() {
            return Err(Error::EndpointMismatch("transport along an embedding of another site set".into()));
        }
        let mut image: Vec<usize> = (0..eps.target_len()).collect();
        for k in 0..self.len() {
            image[eps.apply(k)] = eps.apply(self.apply(k));
        }
        SitePermutation::new(image)
    }
}

/// Every permutation of `n` sites, in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<SitePermutation> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<SitePermutation>) {
        if prefix.len() == used.len() {
            out.push(SitePermutation { image: prefix.clone() });
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// An injective map of site indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SiteEmbedding {
    target_len: usize,
    image: Vec<usize>,
}

impl SiteEmbedding {
    pub fn new(image: Vec<usize>, target_len: usize) -> Result<SiteEmbedding> {
        let mut seen = vec![false; target_len];
        for &i in &image {
            if i >= target_len || seen[i] {
                return Err(Error::Input(format!("{image:?} is not injective into {target_len} sites")));
            }
            seen[i] = true;
        }
        Ok(SiteEmbedding { target_len, image })
    }

    pub fn identity(n: usize) -> SiteEmbedding {
        SiteEmbedding { target_len: n, image: (0..n).collect() }
    }

    /// Site map of a PL embedding; errors on the first site that misses the lattice.
    pub fn from_pl(eps: &PlMap, src: &SiteSet, tgt: &SiteSet) -> Result<SiteEmbedding> {
        if eps.domain() != src.interval() || eps.codomain() != tgt.interval() {
            return Err(Error::EndpointMismatch("embedding between other intervals".into()));
        }
        let image = src
            .sites()
            .iter()
            .map(|s| {
                let t = eps.eval(s)?;
                tgt.index_of(&t).ok_or_else(|| Error::SiteIncompatible(format_rational(s)))
            })
            .collect::<Result<Vec<_>>>()?;
        SiteEmbedding::new(image, tgt.len())
    }

    pub fn source_len(&self) -> usize {
        self.image.len()
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn apply(&self, k: usize) -> usize {
        self.image[k]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &SiteEmbedding) -> Result<SiteEmbedding> {
        if inner.target_len != self.source_len() {
            return Err(Error::EndpointMismatch("site embeddings do not compose".into()));
        }
        Ok(SiteEmbedding { target_len: self.target_len, image: inner.image.iter().map(|&k| self.image[k]).collect() })
    }

    pub fn permuted(&self, before: &SitePermutation, after: &SitePermutation) -> SiteEmbedding {
        SiteEmbedding {
            target_len: self.target_len,
            image: (0..self.source_len()).map(|k| after.apply(self.image[before.apply(k)])).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn lattice_points() {
        let s = SiteSet::new(&Interval::ints(0, 1), 4).unwrap();
        assert_eq!(s.sites(), &[rat(1, 4), rat(1, 2), rat(3, 4)]);
        assert_eq!(SiteSet::new(&Interval::ints(0, 1), 2).unwrap().len(), 1);
        assert!(SiteSet::new(&Interval::ints(0, 1), 1).is_err());
    }

    #[test]
    fn permutation_algebra() {
        assert_eq!(all_permutations(3).len(), 6);
        let s = SitePermutation::transposition(3, 0, 1);
        let t = SitePermutation::transposition(3, 1, 2);
        assert_ne!(s.after(&t), t.after(&s));
        assert!(s.after(&s).is_identity());
        let st = s.after(&t);
        assert!(st.after(&st.inverse()).is_identity());
    }

    #[test]
    fn transport_of_permutations() {
        let eps = SiteEmbedding::new(vec![1, 2], 3).unwrap();
        let swap = SitePermutation::transposition(2, 0, 1);
        assert_eq!(swap.transport(&eps).unwrap().image(), &[0, 2, 1]);
    }

    #[test]
    fn pl_site_maps() {
        let i = Interval::ints(0, 1);
        let j = Interval::ints(0, 2);
        let si = SiteSet::new(&i, 2).unwrap();
        let incl = PlMap::inclusion(&i, &j);
        assert!(matches!(
            SiteEmbedding::from_pl(&incl, &si, &SiteSet::new(&j, 2).unwrap()),
            Err(Error::SiteIncompatible(_))
        ));
        let e = SiteEmbedding::from_pl(&incl, &si, &SiteSet::new(&j, 4).unwrap()).unwrap();
        assert_eq!(e.image(), &[0]);
    }
}
