use std::sync::Arc;

use super::sites::{SiteEmbedding, SitePermutation, SiteSet};
use crate::algebra::{closure, AlgHom, Algebra};
use crate::error::{Error, Result};
use crate::interval::{InteriorDiffeo, Interval, PlMap};
use crate::matrix::Matrix;
use crate::scalar::Field;

pub const MAX_SITES: usize = 6;

/// Majorana generators `γ_{2k}, γ_{2k+1}` at each site `k`, Jordan–Wigner form.
#[derive(Clone, Debug)]
pub struct CarAlgebra {
    sites: SiteSet,
    generators: Vec<Matrix>,
    algebra: Arc<Algebra>,
}

fn pauli() -> [Matrix; 4] {
    let g = Field::Gauss;
    let i = g.i().expect("gaussian field has i");
    let (z, o) = (g.zero(), g.one());
    let y = Matrix::from_rows(vec![vec![z.clone(), -&i], vec![i, z.clone()]]).expect("2x2");
    [
        Matrix::identity(g, 2),
        Matrix::from_i64(g, &[&[0, 1], &[1, 0]]),
        y,
        Matrix::diag(g, &[o.clone(), -o]),
    ]
}

fn majoranas(m: usize) -> Vec<Matrix> {
    let [id, x, y, z] = pauli();
    let string = |k: usize, mid: &Matrix| {
        (0..m).fold(Matrix::identity(Field::Gauss, 1), |acc, j| {
            let f = if j < k { &z } else if j == k { mid } else { &id };
            acc.kron(f)
        })
    };
    (0..m).flat_map(|k| [string(k, &x), string(k, &y)]).collect()
}

/// Checks `γ_j γ_k + γ_k γ_j = 2δ_{jk}` exactly.
pub fn check_car(gens: &[Matrix]) -> bool {
    gens.iter().enumerate().all(|(j, gj)| {
        gens.iter().enumerate().all(|(k, gk)| {
            let ac = &(gj * gk) + &(gk * gj);
            let two = Field::Gauss.from_i64(if j == k { 2 } else { 0 });
            ac == Matrix::scalar(Field::Gauss, gj.rows(), two)
        })
    })
}

pub fn quantize(interval: &Interval, resolution: usize) -> Result<CarAlgebra> {
    let sites = SiteSet::new(interval, resolution)?;
    let m = sites.len();
    if m > MAX_SITES {
        return Err(Error::SiteCap(m, MAX_SITES));
    }
    let generators = majoranas(m);
    if !check_car(&generators) {
        return Err(Error::Internal("Jordan–Wigner generators violate the CAR".into()));
    }
    let n = 1usize << m;
    let name = format!("Cl{interval}/{resolution}");
    let algebra = closure(&name, Field::Gauss, n, &generators)?;
    if algebra.dim() != n * n {
        return Err(Error::Internal(format!("CAR algebra has dimension {} ≠ {}", algebra.dim(), n * n)));
    }
    Ok(CarAlgebra { sites, generators, algebra })
}

impl CarAlgebra {
    /// `m` sites on the lattice of `[0, m+1]` at unit mesh.
    pub fn on_sites(m: usize) -> Result<CarAlgebra> {
        let len = m as i64 + 1;
        quantize(&Interval::ints(0, len), m + 1)
    }

    pub fn sites(&self) -> &SiteSet {
        &self.sites
    }

    pub fn site_count(&self) -> usize {
        self.sites.len()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn identity_hom(&self) -> AlgHom {
        AlgHom::identity(&self.algebra)
    }
}

/// Sends the generator pair at site `k` to the pair at site `e(k)`.
pub fn induced_site_hom(e: &SiteEmbedding, src: &CarAlgebra, tgt: &CarAlgebra) -> Result<AlgHom> {
    if e.source_len() != src.site_count() || e.target_len() != tgt.site_count() {
        return Err(Error::EndpointMismatch("site embedding does not match the lattices".into()));
    }
    let images: Vec<Matrix> = (0..src.site_count())
        .flat_map(|k| {
            let j = e.apply(k);
            [tgt.generators[2 * j].clone(), tgt.generators[2 * j + 1].clone()]
        })
        .collect();
    AlgHom::from_generator_images(&src.algebra, &tgt.algebra, &images)
}

pub fn induced_hom(eps: &PlMap, src: &CarAlgebra, tgt: &CarAlgebra) -> Result<AlgHom> {
    let e = SiteEmbedding::from_pl(eps, &src.sites, &tgt.sites)?;
    induced_site_hom(&e, src, tgt)
}

/// `α_π(γ at site s) = γ at site π(s)`; covariant: `α_{πρ} = α_π ∘ α_ρ`.
pub fn bogoliubov_perm(pi: &SitePermutation, car: &CarAlgebra) -> Result<AlgHom> {
    let e = SiteEmbedding::new(pi.image().to_vec(), car.site_count())?;
    induced_site_hom(&e, car, car)
}

/// The automorphism of a site-compatible interior diffeomorphism.
pub fn bogoliubov(a: &InteriorDiffeo, car: &CarAlgebra) -> Result<(SitePermutation, AlgHom)> {
    let pi = SitePermutation::from_diffeo(a, &car.sites)?;
    let hom = bogoliubov_perm(&pi, car)?;
    Ok((pi, hom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn small_lattices() {
        let one = quantize(&Interval::ints(0, 1), 2).unwrap();
        assert_eq!(one.generators().len(), 2);
        assert_eq!(one.algebra().dim(), 4);
        let two = quantize(&Interval::ints(0, 1), 3).unwrap();
        assert_eq!(two.generators().len(), 4);
        assert_eq!(two.algebra().dim(), 16);
        for g in two.generators() {
            assert!((g * g).is_identity());
        }
        assert!(matches!(quantize(&Interval::ints(0, 1), 8), Err(Error::SiteCap(7, 6))));
    }

    #[test]
    fn induced_homs() {
        let i = Interval::ints(0, 1);
        let j = Interval::ints(0, 2);
        let ci = quantize(&i, 2).unwrap();
        let cj = quantize(&j, 4).unwrap();
        let h = induced_hom(&PlMap::inclusion(&i, &j), &ci, &cj).unwrap();
        assert_eq!(h.apply(&ci.generators()[0]).unwrap(), cj.generators()[0]);
        assert_eq!(induced_hom(&PlMap::identity(&i), &ci, &ci).unwrap(), ci.identity_hom());
        let coarse = quantize(&j, 2).unwrap();
        assert!(matches!(induced_hom(&PlMap::inclusion(&i, &j), &ci, &coarse), Err(Error::SiteIncompatible(_))));
    }

    #[test]
    fn site_compatible_diffeos_fix_every_site() {
        let i = Interval::ints(0, 1);
        let car = quantize(&i, 3).unwrap();
        let id = InteriorDiffeo::identity(&i);
        let (pi, hom) = bogoliubov(&id, &car).unwrap();
        assert!(pi.is_identity());
        assert_eq!(hom, car.identity_hom());
        let moving = InteriorDiffeo::new(
            PlMap::new(i.clone(), i.clone(), vec![rat(0, 1), rat(1, 4), rat(1, 3), rat(3, 4), rat(1, 1)], vec![
                rat(0, 1),
                rat(1, 4),
                rat(1, 2),
                rat(3, 4),
                rat(1, 1),
            ])
            .unwrap(),
            rat(1, 4),
        )
        .unwrap();
        assert!(matches!(bogoliubov(&moving, &car), Err(Error::SiteIncompatible(_))));
    }

    #[test]
    fn swap_is_an_automorphism() {
        let car = CarAlgebra::on_sites(2).unwrap();
        let swap = bogoliubov_perm(&SitePermutation::transposition(2, 0, 1), &car).unwrap();
        assert_eq!(swap.apply(&car.generators()[1]).unwrap(), car.generators()[3]);
    }
}
