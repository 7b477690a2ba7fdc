//! The groupoid of homomorphisms `A → B` with 2-cells `(a, b)`, vertical and
//! horizontal composition, and the quotient by inner automorphisms.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{combine, Algebra, AlgHom, Unit};
use crate::error::{Error, Result};
use crate::linsolve::solve_linear;
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

/// A failed pointwise condition, recorded at a source basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub basis_index: usize,
    pub lhs: Matrix,
    pub rhs: Matrix,
}

#[derive(Clone, Debug)]
pub enum Checked<T, C = Counterexample> {
    Valid(T),
    Invalid(C),
}

impl<T, C> Checked<T, C> {
    pub fn valid(self) -> Option<T> {
        match self {
            Checked::Valid(t) => Some(t),
            Checked::Invalid(_) => None,
        }
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, Checked::Valid(_))
    }
}

/// A certified 2-cell `(a, b): φ0 → φ1`, i.e. `σ_b ∘ φ0 = φ1 ∘ σ_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoCell {
    src: AlgHom,
    dst: AlgHom,
    a: Unit,
    b: Unit,
    // φ1(a)b⁻¹, which conjugates φ1 back to φ0
    conjugator: Matrix,
}

impl TwoCell {
    pub fn src(&self) -> &AlgHom {
        &self.src
    }

    pub fn dst(&self) -> &AlgHom {
        &self.dst
    }

    pub fn a(&self) -> &Unit {
        &self.a
    }

    pub fn b(&self) -> &Unit {
        &self.b
    }

    pub fn conjugator(&self) -> &Matrix {
        &self.conjugator
    }

    pub fn identity(phi: &AlgHom) -> TwoCell {
        TwoCell {
            src: phi.clone(),
            dst: phi.clone(),
            a: Unit::one(phi.source()),
            b: Unit::one(phi.target()),
            conjugator: phi.target().one(),
        }
    }

    /// `(a⁻¹, b⁻¹): φ1 → φ0`.
    pub fn inverse(&self) -> Result<TwoCell> {
        certify(&self.dst, &self.src, &self.a.inv(), &self.b.inv())
    }

    /// Same components, strict equality.
    pub fn same_components(&self, other: &TwoCell) -> bool {
        self.a == other.a && self.b == other.b
    }
}

fn check_units(phi0: &AlgHom, phi1: &AlgHom, a: &Unit, b: &Unit) -> Result<()> {
    if !phi0.same_endpoints(phi1) {
        return Err(Error::EndpointMismatch("2-cell between homs with different endpoints".into()));
    }
    if !a.parent().same(phi0.source()) {
        return Err(Error::ParentMismatch(phi0.source().name().into(), a.parent().name().into()));
    }
    if !b.parent().same(phi0.target()) {
        return Err(Error::ParentMismatch(phi0.target().name().into(), b.parent().name().into()));
    }
    Ok(())
}

/// Checks `b⁻¹ φ0(x) b = φ1(a⁻¹ x a)` on the source basis.
pub fn check_two_cell(phi0: &AlgHom, phi1: &AlgHom, a: &Unit, b: &Unit) -> Result<Checked<TwoCell>> {
    check_units(phi0, phi1, a, b)?;
    for (i, x) in phi0.source().basis().iter().enumerate() {
        let lhs = b.conj(&phi0.images()[i]);
        let rhs = phi1.apply(&a.conj(x))?;
        if lhs != rhs {
            return Ok(Checked::Invalid(Counterexample { basis_index: i, lhs, rhs }));
        }
    }
    let phi1_a = phi1.apply(a.element())?;
    let conjugator = &phi1_a * b.inverse_matrix();
    let w = Unit::with_inverse(
        phi0.target(),
        conjugator.clone(),
        b.element() * &phi1.apply(a.inverse_matrix())?,
    )?;
    for (i, im0) in phi0.images().iter().enumerate() {
        if w.conj(&phi1.images()[i]) != *im0 {
            return Err(Error::Internal(format!("second form of the 2-cell condition fails at basis {i}")));
        }
    }
    if conjugator != b.inverse_matrix() * &phi0.apply(a.element())? {
        return Err(Error::Internal("exchange identity fails on a certified 2-cell".into()));
    }
    Ok(Checked::Valid(TwoCell { src: phi0.clone(), dst: phi1.clone(), a: a.clone(), b: b.clone(), conjugator }))
}

/// Certification for cells that must hold by construction.
fn certify(phi0: &AlgHom, phi1: &AlgHom, a: &Unit, b: &Unit) -> Result<TwoCell> {
    match check_two_cell(phi0, phi1, a, b)? {
        Checked::Valid(c) => Ok(c),
        Checked::Invalid(ce) => Err(Error::Internal(format!(
            "constructed 2-cell fails its defining condition at basis {}",
            ce.basis_index
        ))),
    }
}

/// `(a1, b1) ∘ (a0, b0) = (a0 a1, b0 b1)`.
pub fn vcompose(f: &TwoCell, g: &TwoCell) -> Result<TwoCell> {
    if f.dst != g.src {
        return Err(Error::EndpointMismatch("vertical composition needs f.dst = g.src".into()));
    }
    certify(&f.src, &g.dst, &f.a.mul(&g.a)?, &f.b.mul(&g.b)?)
}

/// `(a, b0) × (b1, c) ↦ (a, c ψ1(b1⁻¹ b0))`, a cell `ψ0∘φ0 → ψ1∘φ1`.
pub fn hcompose(f: &TwoCell, g: &TwoCell) -> Result<TwoCell> {
    if !f.src.target().same(g.src.source()) {
        return Err(Error::EndpointMismatch("horizontal composition needs target(f) = source(g)".into()));
    }
    let src = f.src.then(&g.src)?;
    let dst = f.dst.then(&g.dst)?;
    let core = g.a.inv().mul(&f.b)?;
    let c = g.b.mul(&g.dst.apply_unit(&core)?)?;
    certify(&src, &dst, &f.a, &c)
}

#[derive(Clone, Debug)]
pub struct AssociativityReport {
    pub left: TwoCell,
    pub right: TwoCell,
    pub equal: bool,
}

/// Compares `(f ∘h g) ∘h h` with `f ∘h (g ∘h h)`.
pub fn associativity_check(f: &TwoCell, g: &TwoCell, h: &TwoCell) -> Result<AssociativityReport> {
    let left = hcompose(&hcompose(f, g)?, h)?;
    let right = hcompose(f, &hcompose(g, h)?)?;
    let equal = left.src == right.src && left.dst == right.dst && left.same_components(&right);
    Ok(AssociativityReport { left, right, equal })
}

const RANDOM_TRIALS: usize = 64;
const ENUMERATION_LIMIT: u64 = 1 << 20;

/// A unit `u` of the target with `σ_u ∘ φ1 = φ0`, plus the witness cell `(1, u⁻¹): φ0 → φ1`.
pub fn conjugating_unit(phi0: &AlgHom, phi1: &AlgHom, seed: u64) -> Result<Option<(Unit, TwoCell)>> {
    if !phi0.same_endpoints(phi1) {
        return Err(Error::EndpointMismatch("conjugacy between homs with different endpoints".into()));
    }
    let target = phi0.target();
    let space = intertwiners(phi0, phi1)?;
    let Some(u) = find_unit(target, &space, seed)? else {
        return Ok(None);
    };
    for (im0, im1) in phi0.images().iter().zip(phi1.images()) {
        if u.conj(im1) != *im0 {
            return Err(Error::Internal("conjugating unit does not certify".into()));
        }
    }
    let cell = certify(phi0, phi1, &Unit::one(phi0.source()), &u.inv())?;
    Ok(Some((u, cell)))
}

/// Basis of `{u ∈ B : φ1(x) u = u φ0(x) for all x}`, as coordinate vectors.
pub fn intertwiners(phi0: &AlgHom, phi1: &AlgHom) -> Result<Vec<Vec<Scalar>>> {
    let target = phi0.target();
    let n = target.ambient_dim();
    let mut constraints = Vec::new();
    for (im0, im1) in phi0.images().iter().zip(phi1.images()) {
        let terms: Vec<Matrix> = target.basis().iter().map(|bi| &(im1 * bi) - &(bi * im0)).collect();
        for e in 0..n * n {
            let row: Vec<Scalar> = terms.iter().map(|t| t.entries()[e].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                constraints.push(row);
            }
        }
    }
    solve_linear(target.field(), &constraints, target.dim())
}

/// Locates an invertible element in the span of `space` (coordinates over `alg`).
pub fn find_unit(alg: &Arc<Algebra>, space: &[Vec<Scalar>], seed: u64) -> Result<Option<Unit>> {
    if space.is_empty() {
        return Ok(None);
    }
    let field = alg.field();
    let k = space.len();
    let vectors: Vec<Matrix> = space.iter().map(|v| alg.combine(v)).collect();
    let n = alg.ambient_dim();
    let attempt = |coeffs: &[Scalar]| -> Option<Matrix> {
        let m = combine(field, n, &vectors, coeffs);
        (!m.det().ok()?.is_zero()).then_some(m)
    };
    let found = match field {
        Field::Prime(p) if (p as f64).powi(k as i32) <= ENUMERATION_LIMIT as f64 => {
            let total = p.pow(k as u32);
            (1..total).find_map(|mut idx| {
                let coeffs: Vec<Scalar> = (0..k)
                    .map(|_| {
                        let d = idx % p;
                        idx /= p;
                        field.from_i64(d as i64)
                    })
                    .collect();
                attempt(&coeffs)
            })
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let random = (0..RANDOM_TRIALS).find_map(|_| {
                let coeffs: Vec<Scalar> = (0..k).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect();
                attempt(&coeffs)
            });
            random.or_else(|| kronecker_sweep(field, n, k, &attempt))
        }
    };
    found.map(|m| Unit::new(alg, m)).transpose()
}

/// Evaluates along `t ↦ (t^{e_0}, …, t^{e_{k-1}})` with `e_i = (n+1)^i`. Distinct
/// monomials of the determinant stay distinct, so over an infinite field a
/// nonvanishing determinant is detected within `deg + 1` sample points.
fn kronecker_sweep(field: Field, n: usize, k: usize, attempt: &dyn Fn(&[Scalar]) -> Option<Matrix>) -> Option<Matrix> {
    let base = (n + 1) as u32;
    let exps: Vec<u32> = (0..k as u32).map(|i| base.saturating_pow(i)).collect();
    let degree = n as u64 * *exps.last().unwrap_or(&1) as u64;
    let limit = match field {
        Field::Gauss => degree + 1,
        Field::Prime(p) => degree.min(p - 1),
    };
    (1..=limit).find_map(|t| {
        let t = field.from_i64(t as i64);
        let coeffs: Vec<Scalar> = exps.iter().map(|&e| t.pow(e)).collect();
        attempt(&coeffs)
    })
}

pub fn pi0_equal(phi0: &AlgHom, phi1: &AlgHom, seed: u64) -> Result<bool> {
    Ok(conjugating_unit(phi0, phi1, seed)?.is_some())
}

/// A hom up to inner automorphism of the target.
#[derive(Clone, Debug)]
pub struct OutMorphism {
    pub representative: AlgHom,
}

impl OutMorphism {
    pub fn new(representative: AlgHom) -> Self {
        OutMorphism { representative }
    }

    pub fn source_name(&self) -> &str {
        self.representative.source().name()
    }

    pub fn target_name(&self) -> &str {
        self.representative.target().name()
    }

    pub fn equals(&self, other: &OutMorphism, seed: u64) -> Result<bool> {
        pi0_equal(&self.representative, &other.representative, seed)
    }

    pub fn then(&self, after: &OutMorphism) -> Result<OutMorphism> {
        Ok(OutMorphism::new(self.representative.then(&after.representative)?))
    }
}

#[derive(Clone, Debug)]
pub struct AutReport {
    /// `(a, b)` passes the 2-cell check `φ → φ`.
    pub is_cell: bool,
    /// `φ(a) b⁻¹` commutes with the image of `φ`.
    pub central: bool,
    pub counterexample: Option<Counterexample>,
}

impl AutReport {
    pub fn criterion_agrees(&self) -> bool {
        self.is_cell == self.central
    }
}

/// Decides both sides of: `(a, b) ∈ mor(φ, φ)` iff `φ(a)b⁻¹` centralizes `φ(A)`.
pub fn aut_check(phi: &AlgHom, a: &Unit, b: &Unit) -> Result<AutReport> {
    let checked = check_two_cell(phi, phi, a, b)?;
    let w = &phi.apply(a.element())? * b.inverse_matrix();
    let central = phi.images().iter().all(|im| &w * im == im * &w);
    let (is_cell, counterexample) = match checked {
        Checked::Valid(_) => (true, None),
        Checked::Invalid(ce) => (false, Some(ce)),
    };
    Ok(AutReport { is_cell, central, counterexample })
}

/// A 2×2 pasting: `f: φ0→φ1`, `f2: φ1→φ2` in `Hom(A,B)`, `g: ψ0→ψ1`, `g2: ψ1→ψ2` in `Hom(B,C)`.
#[derive(Clone, Debug)]
pub struct Grid {
    pub f: TwoCell,
    pub f2: TwoCell,
    pub g: TwoCell,
    pub g2: TwoCell,
}

#[derive(Clone, Debug)]
pub struct InterchangeReport {
    pub vertical_first: TwoCell,
    pub horizontal_first: TwoCell,
    pub strict_equal: bool,
    /// Both pastings certify as cells `ψ0∘φ0 → ψ2∘φ2`.
    pub both_certify: bool,
    /// `c`-components agree up to the centralizer of the composite image.
    pub equal_up_to_centralizer: bool,
}

pub fn interchange_probe(grid: &Grid) -> Result<InterchangeReport> {
    let vertical_first = hcompose(&vcompose(&grid.f, &grid.f2)?, &vcompose(&grid.g, &grid.g2)?)?;
    let horizontal_first = vcompose(&hcompose(&grid.f, &grid.g)?, &hcompose(&grid.f2, &grid.g2)?)?;
    let both_certify = vertical_first.src == horizontal_first.src && vertical_first.dst == horizontal_first.dst;
    let strict_equal = both_certify && vertical_first.same_components(&horizontal_first);
    let ratio = horizontal_first.b.inverse_matrix() * vertical_first.b.element();
    let equal_up_to_centralizer = vertical_first.a == horizontal_first.a
        && vertical_first.src.images().iter().all(|im| &ratio * im == im * &ratio);
    Ok(InterchangeReport { vertical_first, horizontal_first, strict_equal, both_certify, equal_up_to_centralizer })
}

/// Every unit of `alg` over a prime field, by exhaustive enumeration of coordinates.
pub fn enumerate_units(alg: &Arc<Algebra>) -> Result<Vec<Unit>> {
    let Field::Prime(p) = alg.field() else {
        return Err(Error::Input("unit enumeration needs a prime field".into()));
    };
    let d = alg.dim() as u32;
    let total = p.checked_pow(d).filter(|&t| t <= ENUMERATION_LIMIT).ok_or_else(|| {
        Error::Input(format!("{p}^{d} candidates exceed the enumeration limit"))
    })?;
    let field = alg.field();
    let mut units = Vec::new();
    for mut idx in 0..total {
        let coeffs: Vec<Scalar> = (0..d)
            .map(|_| {
                let v = idx % p;
                idx /= p;
                field.from_i64(v as i64)
            })
            .collect();
        let m = alg.combine(&coeffs);
        if let Ok(inv) = m.invert() {
            units.push(Unit::with_inverse(alg, m, inv)?);
        }
    }
    Ok(units)
}
