use super::cells::{check_interval_two_cell, IntervalTwoCell};
use super::pl::compose;
use super::{InteriorDiffeo, PlMap};
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Complete invariant of an embedding up to 2-cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingInvariant {
    /// Slope of the first piece when `ε` hits the left end of the codomain.
    pub left: Option<Rational>,
    /// Slope of the last piece when `ε` hits the right end.
    pub right: Option<Rational>,
}

impl EmbeddingInvariant {
    pub fn of(eps: &PlMap) -> EmbeddingInvariant {
        let j = eps.codomain();
        let img = eps.image();
        EmbeddingInvariant {
            left: (img.left() == j.left()).then(|| eps.first_slope()),
            right: (img.right() == j.right()).then(|| eps.last_slope()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Pi0Emb {
    pub equivalent: bool,
    pub invariants: [EmbeddingInvariant; 2],
    /// `(id, b): ε0 → ε1`, certified, when equivalent.
    pub witness: Option<IntervalTwoCell>,
}

pub fn pi0_emb(eps0: &PlMap, eps1: &PlMap) -> Result<Pi0Emb> {
    if eps0.domain() != eps1.domain() || eps0.codomain() != eps1.codomain() {
        return Err(Error::EndpointMismatch("embeddings with different endpoints".into()));
    }
    let invariants = [EmbeddingInvariant::of(eps0), EmbeddingInvariant::of(eps1)];
    if invariants[0] != invariants[1] {
        return Ok(Pi0Emb { equivalent: false, invariants, witness: None });
    }
    let b = splice(eps0, eps1)?;
    let a = InteriorDiffeo::identity(eps0.domain());
    let witness = check_interval_two_cell(eps0, eps1, &a, &b)?
        .valid()
        .ok_or_else(|| Error::Internal("spliced witness does not commute".into()))?;
    Ok(Pi0Emb { equivalent: true, invariants, witness: Some(witness) })
}

/// `ε1 ∘ ε0⁻¹` on the image of `ε0`, joined linearly to the identity near free ends.
fn splice(eps0: &PlMap, eps1: &PlMap) -> Result<InteriorDiffeo> {
    let j = eps0.codomain();
    let two = Rational::from_integer(2.into());
    let mid = compose(eps1, &eps0.inverse_on_image())?;
    let (img0, img1) = (eps0.image(), eps1.image());
    let mut bps = Vec::new();
    let mut vals = Vec::new();
    if img0.left() > j.left() {
        let h = j.left() + (img0.left().min(img1.left()) - j.left()) / &two;
        bps.extend([j.left().clone(), h.clone()]);
        vals.extend([j.left().clone(), h]);
    }
    bps.extend(mid.breakpoints().iter().cloned());
    vals.extend(mid.values().iter().cloned());
    if img0.right() < j.right() {
        let h = j.right() - (j.right() - img0.right().max(img1.right())) / &two;
        bps.extend([h.clone(), j.right().clone()]);
        vals.extend([h, j.right().clone()]);
    }
    InteriorDiffeo::from_map(PlMap::new(j.clone(), j.clone(), bps, vals)?)
}

#[cfg(test)]
mod tests {
    use super::super::{rat, Interval};
    use super::*;

    #[test]
    fn interior_embeddings_are_equivalent() {
        let i = Interval::ints(0, 1);
        let j = Interval::ints(0, 3);
        let e0 = PlMap::affine(&i, &j, rat(1, 1), rat(2, 1)).unwrap();
        let e1 = PlMap::affine(&i, &j, rat(3, 2), rat(5, 2)).unwrap();
        let r = pi0_emb(&e0, &e1).unwrap();
        assert!(r.equivalent);
        assert!(r.witness.unwrap().a().is_identity());
        let same = pi0_emb(&e0, &e0).unwrap();
        assert!(same.witness.unwrap().b().is_identity());
    }

    #[test]
    fn germs_at_matched_ends_separate_classes() {
        let i = Interval::ints(0, 1);
        let id = PlMap::identity(&i);
        let slope2 = PlMap::new(i.clone(), i.clone(), vec![rat(0, 1), rat(1, 4), rat(1, 1)], vec![
            rat(0, 1),
            rat(1, 2),
            rat(1, 1),
        ])
        .unwrap();
        let r = pi0_emb(&id, &slope2).unwrap();
        assert!(!r.equivalent && r.witness.is_none());
    }

    #[test]
    fn matching_pattern_matters() {
        let i = Interval::ints(0, 1);
        let j = Interval::ints(0, 2);
        let flush = PlMap::affine(&i, &j, rat(0, 1), rat(1, 1)).unwrap();
        let inner = PlMap::affine(&i, &j, rat(1, 2), rat(3, 2)).unwrap();
        assert!(!pi0_emb(&flush, &inner).unwrap().equivalent);
        let flush2 = PlMap::new(i.clone(), j.clone(), vec![rat(0, 1), rat(1, 2), rat(1, 1)], vec![
            rat(0, 1),
            rat(1, 2),
            rat(3, 2),
        ])
        .unwrap();
        assert!(pi0_emb(&flush, &flush2).unwrap().equivalent);
    }
}
