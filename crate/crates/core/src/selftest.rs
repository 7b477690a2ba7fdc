//! A seeded, fixed-size sweep of the library's laws; the CLI's `selftest`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{closure, compose_sigma_check, AlgHom, Algebra};
use crate::error::Result;
use crate::homgroupoid::{associativity_check, check_two_cell, conjugating_unit, enumerate_units, hcompose, TwoCell};
use crate::interval::{
    check_interval_two_cell, interval_associativity, lorentz, lorentz_flow_check, rat, transport, Interval,
    MappingClass, PlMap,
};
use crate::matrix::Matrix;
use crate::quantization::{
    all_permutations, antihom_check, bogoliubov, inner_witness, quantize, quantize_interval_cell,
    two_functor_check, CarAlgebra, ModularData, SiteSet, WitnessCache,
};
use crate::random;
use crate::scalar::Field;
use crate::symbolic::corpus::{expected_verdict, CORPUS};
use crate::symbolic::{verify_script_with, GoalVerdict, DEFAULT_DEPTH};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Suite {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<Suite>,
}

impl SelftestReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn run_suite(name: &str, cases: usize, rng: &mut ChaCha8Rng, mut case: impl FnMut(&mut ChaCha8Rng) -> Result<bool>) -> Suite {
    let mut failures = 0;
    let mut first_failure = None;
    for k in 0..cases {
        let outcome = case(rng);
        if !matches!(outcome, Ok(true)) {
            failures += 1;
            if first_failure.is_none() {
                first_failure = Some(match outcome {
                    Err(e) => format!("case {k}: {e}"),
                    _ => format!("case {k}: law fails"),
                });
            }
        }
    }
    Suite { name: name.to_string(), cases, failures, first_failure }
}

fn m2(field: Field) -> Arc<Algebra> {
    Algebra::full("M2", field, 2)
}

/// `f: φ0→φ1` in `Hom(A,B)` and `g: ψ0→ψ1` in `Hom(B,C)`, all `Mat₂`.
fn composable_pair(field: Field, rng: &mut ChaCha8Rng) -> Result<(TwoCell, TwoCell)> {
    let alg = m2(field);
    let (_, phi0) = random::inner_hom(&alg, rng);
    let (_, psi0) = random::inner_hom(&alg, rng);
    let (phi1, a, b0) = random::cell_from(&phi0, rng)?;
    let (psi1, b1, c) = random::cell_from(&psi0, rng)?;
    let f = check_two_cell(&phi0, &phi1, &a, &b0)?.valid().expect("generated cell");
    let g = check_two_cell(&psi0, &psi1, &b1, &c)?.valid().expect("generated cell");
    Ok((f, g))
}

/// Diagonal and full sources into `Mat₂(F₅)`, with inclusion-type or scalar-type homs.
pub fn random_hom_pair(rng: &mut ChaCha8Rng) -> Result<(AlgHom, AlgHom)> {
    let f5 = Field::Prime(5);
    let target = m2(f5);
    if rng.gen_bool(0.3) {
        let (_, h0) = random::inner_hom(&target, rng);
        let (_, h1) = random::inner_hom(&target, rng);
        return Ok((h0, h1));
    }
    let diag = closure("D2", f5, 2, &[Matrix::unit(f5, 2, 0, 0)])?;
    let kinds = [0usize, 1, 2];
    let pick = |rng: &mut ChaCha8Rng| -> Result<AlgHom> {
        let kind = kinds[rng.gen_range(0..3)];
        let base = AlgHom::from_fn(&diag, &target, |x| match kind {
            0 => x.clone(),
            1 => Matrix::scalar(f5, 2, x.get(0, 0).clone()),
            _ => Matrix::scalar(f5, 2, x.get(1, 1).clone()),
        })?;
        base.conjugated_by(&random::unit(&target, rng))
    };
    let h0 = pick(rng)?;
    let h1 = if rng.gen_bool(0.5) { h0.conjugated_by(&random::unit(&target, rng))? } else { pick(rng)? };
    Ok((h0, h1))
}

pub fn selftest(seed: u64) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f5 = Field::Prime(5);
    let mut suites = Vec::new();

    suites.push(run_suite("sigma_order_law", 40, &mut rng, |rng| {
        let alg = m2(f5);
        let (a, b) = (random::unit(&alg, rng), random::unit(&alg, rng));
        Ok(compose_sigma_check(&a, &b)?.passed())
    }));

    suites.push(run_suite("hcompose_certifies", 30, &mut rng, |rng| {
        let field = if rng.gen_bool(0.2) { Field::Gauss } else { f5 };
        let (f, g) = composable_pair(field, rng)?;
        Ok(hcompose(&f, &g).is_ok())
    }));

    suites.push(run_suite("hcompose_associative", 20, &mut rng, |rng| {
        let (f, g) = composable_pair(f5, rng)?;
        let (_, h) = composable_pair(f5, rng)?;
        Ok(associativity_check(&f, &g, &h)?.equal)
    }));

    suites.push(run_suite("pi0_matches_enumeration", 8, &mut rng, |rng| {
        let (h0, h1) = random_hom_pair(rng)?;
        let fast = conjugating_unit(&h0, &h1, rng.gen())?.is_some();
        let slow = enumerate_units(h0.target())?
            .iter()
            .any(|u| h1.images().iter().zip(h0.images()).all(|(x, y)| u.conj(x) == *y));
        Ok(fast == slow)
    }));

    let (i, j) = (Interval::ints(0, 1), Interval::ints(0, 3));
    suites.push(run_suite("transport_square", 40, &mut rng, |rng| {
        let eps = random::pl_embedding(&i, &j, rng)?;
        let c = random::interior_diffeo(&i, rng)?;
        let ce = transport(&c, &eps)?;
        Ok(check_interval_two_cell(&eps, &eps, &c, &ce)?.is_valid())
    }));

    let k = Interval::ints(0, 6);
    let l = Interval::ints(0, 10);
    suites.push(run_suite("interval_associative", 10, &mut rng, |rng| {
        let f = random::interval_cell_from(&random::pl_embedding(&i, &j, rng)?, rng)?;
        let delta0 = random::pl_embedding(&j, &k, rng)?;
        let g = random::interval_cell_with(&delta0, &random::interior_diffeo(&j, rng)?, &random::interior_diffeo(&k, rng)?)?;
        let h = random::interval_cell_from(&random::pl_embedding(&k, &l, rng)?, rng)?;
        let rep = interval_associativity(&f, &g, &h)?;
        Ok(rep.equal && rep.left_display && rep.right_display)
    }));

    suites.push(run_suite("mapping_class_hom", 30, &mut rng, |rng| {
        let (f, g) = (random::pl_homeo(&i, rng)?, random::pl_homeo(&i, rng)?);
        let fg = crate::interval::compose(&f, &g)?;
        Ok(MappingClass::of_pl(&fg)? == MappingClass::of_pl(&f)?.compose(&MappingClass::of_pl(&g)?)?)
    }));

    suites.push(run_suite("lorentz_group_law", 20, &mut rng, |rng| {
        let u1 = rat(rng.gen_range(-9..=9), 10);
        let u2 = rat(rng.gen_range(-9..=9), 10);
        let chk = lorentz_flow_check(&u1, &u2)?;
        let nontrivial = u1 == rat(0, 1) || !lorentz(&u1)?.mapping_class().is_identity();
        Ok(chk.group_law && nontrivial)
    }));

    suites.push(run_suite("site_compatible_witnesses", 9, &mut rng, |rng| {
        let r = rng.gen_range(2..=4);
        let car = CarAlgebra::on_sites(r - 1)?;
        let sites = SiteSet::new(car.sites().interval(), r)?;
        let a = random::site_compatible_diffeo(&sites, rng)?;
        let (_, alpha) = bogoliubov(&a, &car)?;
        let w = inner_witness(&alpha)?;
        Ok(w.unit.element().is_identity())
    }));

    suites.push(run_suite("permutation_antihom", 6, &mut rng, |rng| {
        let car = CarAlgebra::on_sites(3)?;
        let perms = all_permutations(3);
        let p = &perms[rng.gen_range(0..perms.len())];
        let q = &perms[rng.gen_range(0..perms.len())];
        Ok(antihom_check(p, q, &car)?.reversed_scalar.is_some())
    }));

    let mut cache = WitnessCache::default();
    suites.push(run_suite("two_functor_up_to_center", 6, &mut rng, |rng| {
        let (ci, cj, ck) = (CarAlgebra::on_sites(1)?, CarAlgebra::on_sites(2)?, CarAlgebra::on_sites(3)?);
        let f = random::site_cell_from(&random::site_embedding(1, 2, rng)?, rng)?;
        let g = random::site_cell_from(&random::site_embedding(2, 3, rng)?, rng)?;
        let rep = two_functor_check(&f, &g, [&ci, &cj, &ck], &mut cache)?;
        Ok(rep.images_certified && rep.exchanged_scalar.is_some() && rep.diagram_scalar.is_some())
    }));

    suites.push(run_suite("quantized_interval_cells", 6, &mut rng, |rng| {
        let (si, sj) = (Interval::ints(0, 3), Interval::ints(0, 4));
        let (ci, cj) = (quantize(&si, 3)?, quantize(&sj, 4)?);
        let shift = rng.gen_range(0..=1);
        let eps = PlMap::affine(&si, &sj, rat(shift, 1), rat(shift + 3, 1))?;
        let a = random::site_compatible_diffeo(ci.sites(), rng)?;
        let b = random::site_compatible_diffeo(cj.sites(), rng)?;
        let cell = random::interval_cell_with(&eps, &a, &b)?;
        let q = quantize_interval_cell(&cell, &ci, &cj, &mut cache)?;
        Ok(q.certified.is_some())
    }));

    suites.push(run_suite("kms", 30, &mut rng, |rng| {
        let n = rng.gen_range(2..=3);
        let rho = if rng.gen_bool(0.5) { random::density_matrix(n, rng) } else { random::diagonal_density(n, rng) };
        let data = ModularData::new(rho)?;
        let alg = Algebra::full("Mat", Field::Gauss, n);
        let (x, y) = (random::element(&alg, rng), random::element(&alg, rng));
        let inner = data.inner_form().is_ok();
        Ok(data.kms_check(&x, &y).holds && inner)
    }));

    let mut corpus_rng_seed = rng.gen::<u64>();
    suites.push(run_suite("symbolic_corpus", CORPUS.len(), &mut rng, |_| {
        let (name, text) = CORPUS[(corpus_rng_seed % 1_000_003) as usize % CORPUS.len()];
        corpus_rng_seed = corpus_rng_seed.wrapping_add(1);
        let report = verify_script_with(text, DEFAULT_DEPTH, seed, 10)?;
        Ok(report.goals.iter().all(|g| {
            let expect = expected_verdict(name, &g.name);
            g.verdict == expect && g.replayed != Some(false) && (expect != GoalVerdict::Proven || g.model.all_passed())
        }))
    }));

    let passed = suites.iter().all(|s| s.failures == 0);
    SelftestReport { seed, passed, suites }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passes_and_repeats() {
        let a = selftest(7);
        for s in &a.suites {
            assert_eq!(s.failures, 0, "{}: {:?}", s.name, s.first_failure);
        }
        assert_eq!(a.to_json(), selftest(7).to_json());
    }
}
