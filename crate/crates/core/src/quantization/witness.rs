use std::collections::BTreeMap;

use super::car::{bogoliubov_perm, CarAlgebra};
use super::sites::SitePermutation;
use crate::algebra::{AlgHom, Unit};
use crate::error::{Error, Result};
use crate::homgroupoid::find_unit;
use crate::linsolve::solve_linear;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// `𝔞`: a unit with `σ_𝔞 = α`, normalized so its first nonzero coordinate is 1.
#[derive(Clone, Debug)]
pub struct InnerWitness {
    pub automorphism: AlgHom,
    pub unit: Unit,
}

/// Solves `γ u = u α(γ)` over the generators for an invertible `u`.
pub fn inner_witness(alpha: &AlgHom) -> Result<InnerWitness> {
    let alg = alpha.source();
    if !alg.same(alpha.target()) {
        return Err(Error::EndpointMismatch("inner witnesses need an endomorphism".into()));
    }
    let n = alg.ambient_dim();
    let mut constraints = Vec::new();
    for g in alg.generators() {
        let ag = alpha.apply(g)?;
        let terms: Vec<Matrix> = alg.basis().iter().map(|b| &(g * b) - &(b * &ag)).collect();
        for e in 0..n * n {
            let row: Vec<Scalar> = terms.iter().map(|t| t.entries()[e].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                constraints.push(row);
            }
        }
    }
    let space = solve_linear(alg.field(), &constraints, alg.dim())?;
    let u = find_unit(alg, &space, 0)?
        .ok_or_else(|| Error::NoUnitFound(format!("{} intertwiners, none invertible", space.len())))?;
    let coords = alg.coords(u.element()).expect("unit lies in the algebra");
    let lead = coords.iter().find(|c| !c.is_zero()).expect("units are nonzero").clone();
    let inv = lead.inverse().expect("nonzero");
    let unit = Unit::with_inverse(alg, u.element().scale(&inv), u.inverse_matrix().scale(&lead))?;
    for (i, b) in alg.basis().iter().enumerate() {
        if unit.conj(b) != alpha.images()[i] {
            return Err(Error::Internal(format!("inner witness fails on basis element {i}")));
        }
    }
    Ok(InnerWitness { automorphism: alpha.clone(), unit })
}

/// `λ` with `x = λ y`, when `x y⁻¹` is a scalar.
pub fn scalar_ratio(x: &Unit, y: &Unit) -> Option<Scalar> {
    (x.element() * y.inverse_matrix()).as_scalar()
}

#[derive(Clone, Debug)]
pub struct AntihomReport {
    pub pi0: SitePermutation,
    pub pi1: SitePermutation,
    /// `𝔞(π0 ∘ π1)`
    pub composite: Unit,
    /// `𝔞(π0 ∘ π1) = 𝔞(π1) 𝔞(π0)` exactly.
    pub on_the_nose: bool,
    /// `λ` with `𝔞(π0 ∘ π1) = λ 𝔞(π1) 𝔞(π0)`.
    pub reversed_scalar: Option<Scalar>,
    /// `λ` with `𝔞(π0 ∘ π1) = λ 𝔞(π0) 𝔞(π1)`.
    pub same_order_scalar: Option<Scalar>,
}

/// Witnesses keyed by permutation; lattices with equal site count share generators.
#[derive(Default)]
pub struct WitnessCache {
    cache: BTreeMap<SitePermutation, Unit>,
}

impl WitnessCache {
    pub fn get(&mut self, pi: &SitePermutation, car: &CarAlgebra) -> Result<Unit> {
        if let Some(u) = self.cache.get(pi) {
            return Ok(u.clone());
        }
        let u = inner_witness(&bogoliubov_perm(pi, car)?)?.unit;
        self.cache.insert(pi.clone(), u.clone());
        Ok(u)
    }

    fn report(&mut self, pi0: &SitePermutation, pi1: &SitePermutation, car: &CarAlgebra) -> Result<AntihomReport> {
        let w0 = self.get(pi0, car)?;
        let w1 = self.get(pi1, car)?;
        let composite = self.get(&pi0.after(pi1), car)?;
        let reversed = w1.mul(&w0)?;
        let same = w0.mul(&w1)?;
        Ok(AntihomReport {
            pi0: pi0.clone(),
            pi1: pi1.clone(),
            on_the_nose: composite.element() == reversed.element(),
            reversed_scalar: scalar_ratio(&composite, &reversed),
            same_order_scalar: scalar_ratio(&composite, &same),
            composite,
        })
    }
}

pub fn antihom_check(pi0: &SitePermutation, pi1: &SitePermutation, car: &CarAlgebra) -> Result<AntihomReport> {
    if pi0.len() != car.site_count() || pi1.len() != car.site_count() {
        return Err(Error::EndpointMismatch("permutations of another site set".into()));
    }
    WitnessCache::default().report(pi0, pi1, car)
}

/// Antihomomorphism reports for every ordered pair from `perms`.
pub fn defect_table(perms: &[SitePermutation], car: &CarAlgebra) -> Result<Vec<Vec<AntihomReport>>> {
    let mut w = WitnessCache::default();
    perms.iter().map(|p| perms.iter().map(|q| w.report(p, q, car)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Unit;

    #[test]
    fn identity_has_witness_one() {
        let car = CarAlgebra::on_sites(1).unwrap();
        let w = inner_witness(&car.identity_hom()).unwrap();
        assert!(w.unit.element().is_identity());
    }

    #[test]
    fn inner_automorphisms_recover_their_unit() {
        let car = CarAlgebra::on_sites(2).unwrap();
        let g = car.generators();
        let m = &(&g[0] + &g[3]) + &(&g[0] * &g[2]);
        let w = Unit::new(car.algebra(), &m + &Matrix::identity(m.field(), 4).scale(&m.field().from_i64(3))).unwrap();
        let alpha = AlgHom::inner(&w);
        let u = inner_witness(&alpha).unwrap().unit;
        assert!(scalar_ratio(&u, &w).is_some());
    }

    #[test]
    fn swap_reports() {
        let car = CarAlgebra::on_sites(2).unwrap();
        let swap = SitePermutation::transposition(2, 0, 1);
        let r = antihom_check(&swap, &swap, &car).unwrap();
        assert!(r.composite.element().is_identity());
        assert!(r.reversed_scalar.is_some());
        let id = SitePermutation::identity(2);
        let r = antihom_check(&id, &id, &car).unwrap();
        assert!(r.on_the_nose);
        assert!(r.reversed_scalar.unwrap().is_one());
    }
}
