use num_traits::{Signed, Zero};

use crate::algebra::{AlgHom, Algebra, Unit};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

/// A faithful state `Tr(ρ ·)` on `Mat_N(ℚ(i))`.
#[derive(Clone, Debug)]
pub struct ModularData {
    rho: Matrix,
    rho_inv: Matrix,
}

fn positive_rational(s: &Scalar) -> bool {
    s.as_gaussian().is_some_and(|g| g.im.is_zero() && g.re.is_positive())
}

impl ModularData {
    pub fn new(rho: Matrix) -> Result<ModularData> {
        if rho.field() != Field::Gauss {
            return Err(Error::FieldMismatch(Field::Gauss.descriptor(), rho.field().descriptor()));
        }
        if !rho.is_square() {
            return Err(Error::NonSquare(rho.rows(), rho.cols()));
        }
        if rho.adjoint() != rho || !rho.leading_minors()?.iter().all(positive_rational) {
            return Err(Error::NotPositiveDefinite);
        }
        if !rho.trace().is_one() {
            return Err(Error::TraceNotOne);
        }
        let rho_inv = rho.invert()?;
        Ok(ModularData { rho, rho_inv })
    }

    pub fn rho(&self) -> &Matrix {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.rho.rows()
    }

    /// `E(x) = ρ x ρ⁻¹`, the modular flow continued to the KMS point.
    pub fn modular_continuation(&self, x: &Matrix) -> Matrix {
        &(&self.rho * x) * &self.rho_inv
    }

    /// The rejected convention `x ↦ ρ⁻¹ x ρ`.
    pub fn opposite_continuation(&self, x: &Matrix) -> Matrix {
        &(&self.rho_inv * x) * &self.rho
    }

    pub fn state(&self, x: &Matrix) -> Scalar {
        (&self.rho * x).trace()
    }

    /// `Tr(ρ x E(y))` against `Tr(ρ y x)`.
    pub fn kms_check(&self, x: &Matrix, y: &Matrix) -> KmsReport {
        let lhs = self.state(&(x * &self.modular_continuation(y)));
        let rhs = self.state(&(y * x));
        let opposite = self.state(&(x * &self.opposite_continuation(y)));
        KmsReport { holds: lhs == rhs, opposite_holds: opposite == rhs, lhs, rhs }
    }

    /// `E = σ_u` with `u = ρ⁻¹`, as a certified automorphism of `Mat_N`.
    pub fn inner_form(&self) -> Result<(Unit, AlgHom)> {
        let alg = Algebra::full("Mat", Field::Gauss, self.dim());
        let u = Unit::with_inverse(&alg, self.rho_inv.clone(), self.rho.clone())?;
        let hom = AlgHom::inner(&u);
        for (b, im) in alg.basis().iter().zip(hom.images()) {
            if self.modular_continuation(b) != *im {
                return Err(Error::Internal("modular continuation is not σ_{ρ⁻¹}".into()));
            }
        }
        Ok((u, hom))
    }

    /// `ρ = diag(1/4, 3/4)`, `x = e12`, `y = e21` separate the two conventions.
    pub fn convention_counterexample() -> (ModularData, Matrix, Matrix) {
        let g = Field::Gauss;
        let q = |n, d| g.from_rational(&crate::interval::rat(n, d)).expect("rational");
        let rho = Matrix::diag(g, &[q(1, 4), q(3, 4)]);
        (ModularData::new(rho).expect("faithful"), Matrix::unit(g, 2, 0, 1), Matrix::unit(g, 2, 1, 0))
    }
}

#[derive(Clone, Debug)]
pub struct KmsReport {
    pub holds: bool,
    pub opposite_holds: bool,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convention_is_pinned() {
        let (d, x, y) = ModularData::convention_counterexample();
        let r = d.kms_check(&x, &y);
        assert!(r.holds && !r.opposite_holds);
        assert_eq!(r.rhs.to_string(), "3/4");
    }

    #[test]
    fn tracial_state() {
        let g = Field::Gauss;
        let half = g.from_rational(&crate::interval::rat(1, 2)).unwrap();
        let d = ModularData::new(Matrix::scalar(g, 2, half)).unwrap();
        let x = Matrix::from_i64(g, &[&[1, 2], &[3, 4]]);
        assert_eq!(d.modular_continuation(&x), x);
        let (u, _) = d.inner_form().unwrap();
        assert!(u.element().as_scalar().is_some());
    }

    #[test]
    fn rejects_bad_states() {
        let g = Field::Gauss;
        assert_eq!(ModularData::new(Matrix::from_i64(g, &[&[1, 0], &[0, 0]])).unwrap_err(), Error::NotPositiveDefinite);
        assert_eq!(ModularData::new(Matrix::from_i64(g, &[&[1, 0], &[0, 1]])).unwrap_err(), Error::TraceNotOne);
        assert_eq!(ModularData::new(Matrix::from_i64(g, &[&[1, 1], &[0, 1]])).unwrap_err(), Error::NotPositiveDefinite);
    }
}
