//! Seeded generators for test instances.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{AlgHom, Algebra, Unit};
use crate::error::Result;
use crate::interval::{check_interval_two_cell, compose, rat, InteriorDiffeo, Interval, IntervalTwoCell, PlMap};
use crate::matrix::Matrix;
use crate::quantization::{SiteCell, SiteEmbedding, SitePermutation, SiteSet};
use crate::scalar::{Field, Rational, Scalar};

/// Uniform over `F_p`; small integers `a + bi` with `|a|, |b| ≤ 3` over `Q(i)`.
pub fn scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        Field::Gauss => {
            let re = field.from_i64(rng.gen_range(-3..=3));
            let im = field.from_i64(rng.gen_range(-3..=3));
            &re + &(&im * &field.i().expect("gaussian unit"))
        }
    }
}

pub fn nonzero_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    loop {
        let s = scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A random element of `alg`, as a combination of its basis.
pub fn element<R: Rng>(alg: &Algebra, rng: &mut R) -> Matrix {
    let n = alg.ambient_dim();
    let mut acc = Matrix::zeros(alg.field(), n, n);
    for b in alg.basis() {
        acc = &acc + &b.scale(&scalar(alg.field(), rng));
    }
    acc
}

pub fn unit<R: Rng>(alg: &Arc<Algebra>, rng: &mut R) -> Unit {
    loop {
        let m = element(alg, rng);
        if m.det().is_ok_and(|d| !d.is_zero()) {
            if let Ok(u) = Unit::new(alg, m) {
                return u;
            }
        }
    }
}

/// `σ_w` for a random unit `w`.
pub fn inner_hom<R: Rng>(alg: &Arc<Algebra>, rng: &mut R) -> (Unit, AlgHom) {
    let w = unit(alg, rng);
    let h = AlgHom::inner(&w);
    (w, h)
}

/// A random certified 2-cell out of `phi0`: `phi1 = σ_b ∘ phi0 ∘ σ_{a⁻¹}`.
pub fn cell_from<R: Rng>(phi0: &AlgHom, rng: &mut R) -> Result<(AlgHom, Unit, Unit)> {
    let a = unit(phi0.source(), rng);
    let b = unit(phi0.target(), rng);
    let phi1 = AlgHom::inner(&a.inv()).then(phi0)?.conjugated_by(&b)?;
    Ok((phi1, a, b))
}

/// A random cell `phi0 → phi1` when one exists; `b` is solved from `a`.
pub fn cell_between_inner<R: Rng>(w0: &Unit, w1: &Unit, rng: &mut R) -> Result<(Unit, Unit)> {
    // σ_b σ_{w0} = σ_{w1} σ_a  ⇔  w0 b ∝ a w1
    let a = unit(w0.parent(), rng);
    let z = nonzero_scalar(w0.parent().field(), rng);
    let b = w0.inv().mul(&a)?.mul(w1)?;
    let zb = Unit::new(w0.parent(), b.element().scale(&z))?;
    Ok((a, zb))
}

/// `m` distinct sorted points strictly inside `(lo, hi)`, on a grid of step `(hi−lo)/24`.
pub fn points_between<R: Rng>(lo: &Rational, hi: &Rational, m: usize, rng: &mut R) -> Vec<Rational> {
    let mut ks: Vec<i64> = (0..m).map(|_| rng.gen_range(1..24)).collect();
    ks.sort();
    ks.dedup();
    ks.into_iter().map(|k| lo + (hi - lo) * rat(k, 24)).collect()
}

/// A random PL embedding; its image touches each end of `j` with probability 1/4.
pub fn pl_embedding<R: Rng>(i: &Interval, j: &Interval, rng: &mut R) -> Result<PlMap> {
    let inner = points_between(j.left(), j.right(), 2, rng);
    let (mut lo, mut hi) = (j.left().clone(), j.right().clone());
    if inner.len() == 2 {
        if rng.gen_bool(0.75) {
            lo = inner[0].clone();
        }
        if rng.gen_bool(0.75) {
            hi = inner[1].clone();
        }
    }
    let m = rng.gen_range(0..=3);
    let mut bps = vec![i.left().clone()];
    bps.extend(points_between(i.left(), i.right(), m, rng));
    bps.push(i.right().clone());
    let mut vals = vec![lo.clone()];
    vals.extend(points_between(&lo, &hi, bps.len() - 2, rng));
    // dedup may have shortened either list
    while vals.len() + 1 < bps.len() {
        bps.remove(1);
    }
    while vals.len() + 1 > bps.len() {
        vals.pop();
    }
    vals.push(hi);
    PlMap::new(i.clone(), j.clone(), bps, vals)
}

/// `(M M* + 1)/tr` for a random Gaussian-integer `M`: Hermitian, positive definite, trace 1.
pub fn density_matrix<R: Rng>(n: usize, rng: &mut R) -> Matrix {
    let g = Field::Gauss;
    let entries = (0..n * n).map(|_| scalar(g, rng)).collect();
    let m = Matrix::from_flat(g, n, n, entries);
    let rho = &(&m * &m.adjoint()) + &Matrix::identity(g, n);
    rho.scale(&rho.trace().inverse().expect("positive trace"))
}

/// A diagonal density matrix with random positive rational weights.
pub fn diagonal_density<R: Rng>(n: usize, rng: &mut R) -> Matrix {
    let g = Field::Gauss;
    let w: Vec<Scalar> = (0..n).map(|_| g.from_i64(rng.gen_range(1..=9))).collect();
    let d = Matrix::diag(g, &w);
    d.scale(&d.trace().inverse().expect("positive trace"))
}

/// A random PL self-homeomorphism of `i`.
pub fn pl_homeo<R: Rng>(i: &Interval, rng: &mut R) -> Result<PlMap> {
    let xs = points_between(i.left(), i.right(), rng.gen_range(1..=3), rng);
    let ys = points_between(i.left(), i.right(), xs.len(), rng);
    let n = xs.len().min(ys.len());
    let mut bps = vec![i.left().clone()];
    let mut vals = bps.clone();
    bps.extend(xs.into_iter().take(n));
    vals.extend(ys.into_iter().take(n));
    bps.push(i.right().clone());
    vals.push(i.right().clone());
    PlMap::new(i.clone(), i.clone(), bps, vals)
}

/// A random map fixing `[l, l+δ]∪[r−δ, r]`, for a random collar `δ ≤ |I|/4`.
pub fn interior_diffeo<R: Rng>(i: &Interval, rng: &mut R) -> Result<InteriorDiffeo> {
    let delta = i.length() * rat(rng.gen_range(1..=4), 16);
    let (lo, hi) = (i.left() + &delta, i.right() - &delta);
    interior_diffeo_on(i, &lo, &hi, delta, rng)
}

fn interior_diffeo_on<R: Rng>(i: &Interval, lo: &Rational, hi: &Rational, delta: Rational, rng: &mut R) -> Result<InteriorDiffeo> {
    let m = rng.gen_range(1..=3);
    let xs = points_between(lo, hi, m, rng);
    let ys = points_between(lo, hi, xs.len(), rng);
    let n = xs.len().min(ys.len());
    let mut bps = vec![i.left().clone(), lo.clone()];
    let mut vals = bps.clone();
    bps.extend(xs.into_iter().take(n));
    vals.extend(ys.into_iter().take(n));
    bps.extend([hi.clone(), i.right().clone()]);
    vals.extend([hi.clone(), i.right().clone()]);
    InteriorDiffeo::new(PlMap::new(i.clone(), i.clone(), bps, vals)?, delta)
}

/// A random certified cell out of `eps0`: `ε1 = b ∘ ε0 ∘ a⁻¹`.
pub fn interval_cell_from<R: Rng>(eps0: &PlMap, rng: &mut R) -> Result<IntervalTwoCell> {
    let a = interior_diffeo(eps0.domain(), rng)?;
    let b = interior_diffeo(eps0.codomain(), rng)?;
    interval_cell_with(eps0, &a, &b)
}

pub fn interval_cell_with(eps0: &PlMap, a: &InteriorDiffeo, b: &InteriorDiffeo) -> Result<IntervalTwoCell> {
    let eps1 = compose(&compose(b.map(), eps0)?, a.inverse().map())?;
    Ok(check_interval_two_cell(eps0, &eps1, a, b)?.valid().expect("completed square commutes"))
}

/// An interior diffeomorphism fixing every site, moving points between them.
pub fn site_compatible_diffeo<R: Rng>(sites: &SiteSet, rng: &mut R) -> Result<InteriorDiffeo> {
    let i = sites.interval();
    let mesh = i.length() / Rational::from_integer(sites.resolution().into());
    let delta = &mesh * rat(1, 2);
    let mut knots = vec![i.left() + &delta];
    knots.extend(sites.sites().iter().cloned());
    knots.push(i.right() - &delta);
    let mut bps = vec![i.left().clone()];
    let mut vals = vec![i.left().clone()];
    for w in knots.windows(2) {
        bps.push(w[0].clone());
        vals.push(w[0].clone());
        if rng.gen_bool(0.7) {
            let xs = points_between(&w[0], &w[1], 1, rng);
            let ys = points_between(&w[0], &w[1], 1, rng);
            bps.extend(xs);
            vals.extend(ys);
        }
    }
    bps.extend([knots.last().unwrap().clone(), i.right().clone()]);
    vals.extend([knots.last().unwrap().clone(), i.right().clone()]);
    InteriorDiffeo::new(PlMap::new(i.clone(), i.clone(), bps, vals)?, delta)
}

pub fn site_permutation<R: Rng>(n: usize, rng: &mut R) -> SitePermutation {
    let mut image: Vec<usize> = (0..n).collect();
    for k in (1..n).rev() {
        image.swap(k, rng.gen_range(0..=k));
    }
    SitePermutation::new(image).expect("shuffle")
}

/// A random injective, order-agnostic map of `n` sites into `m`.
pub fn site_embedding<R: Rng>(n: usize, m: usize, rng: &mut R) -> Result<SiteEmbedding> {
    let perm = site_permutation(m, rng);
    SiteEmbedding::new(perm.image()[..n].to_vec(), m)
}

pub fn site_cell_from<R: Rng>(eps0: &SiteEmbedding, rng: &mut R) -> Result<SiteCell> {
    let a = site_permutation(eps0.source_len(), rng);
    let b = site_permutation(eps0.target_len(), rng);
    SiteCell::completing(eps0.clone(), a, b)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::homgroupoid::check_two_cell;

    #[test]
    fn generated_cells_certify() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for field in [Field::Prime(5), Field::Gauss] {
            let alg = Algebra::full("M2", field, 2);
            let (_, phi0) = inner_hom(&alg, &mut rng);
            let (phi1, a, b) = cell_from(&phi0, &mut rng).unwrap();
            assert!(check_two_cell(&phi0, &phi1, &a, &b).unwrap().is_valid());
            let (w0, h0) = inner_hom(&alg, &mut rng);
            let (w1, h1) = inner_hom(&alg, &mut rng);
            let (a, b) = cell_between_inner(&w0, &w1, &mut rng).unwrap();
            assert!(check_two_cell(&h0, &h1, &a, &b).unwrap().is_valid());
        }
    }

    #[test]
    fn generated_interval_cells_certify() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let i = Interval::ints(0, 1);
        let j = Interval::ints(0, 3);
        for _ in 0..50 {
            let eps = pl_embedding(&i, &j, &mut rng).unwrap();
            let c = interval_cell_from(&eps, &mut rng).unwrap();
            assert_eq!(c.src(), &eps);
        }
        let sites = SiteSet::new(&Interval::ints(0, 4), 4).unwrap();
        for _ in 0..20 {
            let d = site_compatible_diffeo(&sites, &mut rng).unwrap();
            assert!(SitePermutation::from_diffeo(&d, &sites).unwrap().is_identity());
        }
    }
}
