//! Dense exact matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linsolve::solve_linear;
use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::scalar(field, n, field.one())
    }

    pub fn scalar(field: Field, n: usize, s: Scalar) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = s.clone();
        }
        m
    }

    /// Matrix unit `e_{ij}` (zero-based).
    pub fn unit(field: Field, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        m.entries[i * n + j] = field.one();
        m
    }

    pub fn diag(field: Field, d: &[Scalar]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(field, n, n);
        for (i, x) in d.iter().enumerate() {
            m.entries[i * n + i] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::Shape("matrix without rows".into()));
        }
        let c = rows[0].len();
        if c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged or empty matrix rows".into()));
        }
        let field = rows[0][0].field();
        let entries: Vec<Scalar> = rows.into_iter().flatten().collect();
        if let Some(x) = entries.iter().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch(field.descriptor(), x.field().descriptor()));
        }
        Ok(Matrix { rows: r, cols: c, field, entries })
    }

    /// Integer-entry convenience constructor.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_rows(rows).expect("well-formed literal")
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix { rows, cols, field, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.cols).map(|c| c.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.as_scalar().is_some_and(|s| s.is_one())
    }

    /// `Some(λ)` when the matrix is `λ·1`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let lambda = self.entries[0].clone();
        for i in 0..n {
            for j in 0..n {
                let x = &self.entries[i * n + j];
                if i == j {
                    if *x != lambda {
                        return None;
                    }
                } else if !x.is_zero() {
                    return None;
                }
            }
        }
        Some(lambda)
    }

    pub fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.descriptor(), other.field.descriptor()));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.descriptor(), other.field.descriptor()));
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![self.field.zero(); n * m];
        for i in 0..n {
            for l in 0..k {
                let a = &self.entries[i * k + l];
                if a.is_zero() {
                    continue;
                }
                let row = &other.entries[l * m..(l + 1) * m];
                let dst = &mut out[i * m..(i + 1) * m];
                for (d, b) in dst.iter_mut().zip(row) {
                    if b.is_zero() {
                        continue;
                    }
                    let p = if a.is_one() { b.clone() } else { a * b };
                    *d = if d.is_zero() { p } else { &*d + &p };
                }
            }
        }
        Matrix { rows: n, cols: m, field: self.field, entries: out }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let entries = self
            .entries
            .iter()
            .map(|x| if x.is_zero() { x.clone() } else { x * s })
            .collect();
        self.with_entries(entries)
    }

    fn with_entries(&self, entries: Vec<Scalar>) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, field: self.field, entries }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Conjugate transpose (plain transpose over `F_p`).
    pub fn adjoint(&self) -> Matrix {
        let t = self.transpose();
        Matrix { entries: t.entries.iter().map(Scalar::conj).collect(), ..t }
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Exact two-sided inverse by Gauss–Jordan elimination.
    pub fn invert(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let f = self.field;
        let mut a = self.row_vecs();
        let mut inv = Matrix::identity(f, n).row_vecs();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::NotAUnit)?;
            a.swap(col, p);
            inv.swap(col, p);
            let s = a[col][col].inverse().expect("nonzero pivot");
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                if !x.is_zero() {
                    *x = &*x * &s;
                }
            }
            let (prow, pinv) = (a[col].clone(), inv[col].clone());
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for (x, y) in a[r].iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x = &*x - &(&factor * y);
                    }
                }
                for (x, y) in inv[r].iter_mut().zip(&pinv) {
                    if !y.is_zero() {
                        *x = &*x - &(&factor * y);
                    }
                }
            }
        }
        Matrix::from_rows(inv)
    }

    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != col {
                a.swap(col, p);
                det = -det;
            }
            det = &det * &a[col][col];
            let inv = a[col][col].inverse().expect("nonzero");
            let prow = a[col].clone();
            for row in a.iter_mut().skip(col + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] * &inv;
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x = &*x - &(&factor * y);
                    }
                }
            }
        }
        Ok(det)
    }

    /// Leading principal minors, top-left `1x1` first.
    pub fn leading_minors(&self) -> Result<Vec<Scalar>> {
        if !self.is_square() {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        (1..=self.rows)
            .map(|k| {
                let rows = (0..k).map(|i| (0..k).map(|j| self.get(i, j).clone()).collect()).collect();
                Matrix::from_rows(rows)?.det()
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Monic minimal polynomial, coefficients lowest degree first.
    pub fn minimal_polynomial(&self) -> Result<Vec<Scalar>> {
        if !self.is_square() {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let f = self.field;
        let mut powers = vec![Matrix::identity(f, n)];
        for k in 1..=n {
            let next = &powers[k - 1] * self;
            powers.push(next);
            // Find c with Σ_{j≤k} c_j vec(M^j) = 0 and c_k ≠ 0.
            let constraints: Vec<Vec<Scalar>> = (0..n * n)
                .map(|e| powers.iter().map(|p| p.entries[e].clone()).collect())
                .collect();
            let kernel = solve_linear(f, &constraints, k + 1)?;
            if let Some(v) = kernel.into_iter().find(|v| !v[k].is_zero()) {
                let lead = v[k].inverse().expect("nonzero");
                return Ok(v.iter().map(|c| c * &lead).collect());
            }
        }
        unreachable!("Cayley–Hamilton bounds the degree by n")
    }

    /// Evaluates `Σ c_k M^k` by Horner's rule.
    pub fn eval_poly(&self, coeffs: &[Scalar]) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in coeffs.iter().rev() {
            acc = &(&acc * self) + &Matrix::scalar(self.field, n, c.clone());
        }
        acc
    }

    /// Inverse as a polynomial in the matrix, through the minimal polynomial.
    ///
    /// For `m(t) = t^d + ... + c_1 t + c_0` with `c_0 ≠ 0`,
    /// `M^{-1} = -(M^{d-1} + ... + c_1) / c_0`.
    pub fn polynomial_inverse(&self) -> Result<Matrix> {
        let mp = self.minimal_polynomial()?;
        let c0 = mp[0].clone();
        let c0_inv = c0.inverse().ok_or(Error::NotAUnit)?;
        let shifted: Vec<Scalar> = mp[1..].to_vec();
        Ok(self.eval_poly(&shifted).scale(&(-&c0_inv)))
    }

    pub fn map_entries(&self, field: Field, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, field, entries: self.entries.iter().map(f).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.cols).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        self.try_mul(o).expect("matrix product")
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        self.check_same_shape(o).expect("matrix sum");
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| {
                if b.is_zero() {
                    a.clone()
                } else if a.is_zero() {
                    b.clone()
                } else {
                    a + b
                }
            })
            .collect();
        self.with_entries(entries)
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        self + &(-o)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.with_entries(self.entries.iter().map(|x| -x).collect())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .entries
            .chunks(self.cols)
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Matrix, D::Error> {
        let rows: Vec<Vec<Scalar>> = Vec::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: Field = Field::Gauss;

    #[test]
    fn minimal_polynomials() {
        let one = G.one();
        assert_eq!(Matrix::identity(G, 2).minimal_polynomial().unwrap(), vec![-&one, one.clone()]);
        let d = Matrix::from_i64(G, &[&[1, 0], &[0, 2]]);
        assert_eq!(d.minimal_polynomial().unwrap(), vec![G.from_i64(2), G.from_i64(-3), one.clone()]);
        let e12 = Matrix::unit(G, 2, 0, 1);
        assert_eq!(e12.minimal_polynomial().unwrap(), vec![G.zero(), G.zero(), one]);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Matrix::identity(G, 3).invert().unwrap(), Matrix::identity(G, 3));
        let swap = Matrix::from_i64(G, &[&[0, 1], &[1, 0]]);
        assert_eq!(swap.invert().unwrap(), swap);
        let uni = Matrix::from_i64(G, &[&[1, 1], &[0, 1]]);
        assert_eq!(uni.invert().unwrap(), Matrix::from_i64(G, &[&[1, -1], &[0, 1]]));
        assert_eq!(Matrix::unit(G, 2, 0, 1).invert(), Err(Error::NotAUnit));
        assert!(matches!(Matrix::zeros(G, 2, 3).invert(), Err(Error::NonSquare(2, 3))));
    }

    #[test]
    fn polynomial_inverse_agrees() {
        let m = Matrix::from_i64(G, &[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        assert_eq!(m.polynomial_inverse().unwrap(), m.invert().unwrap());
        let f5 = Field::Prime(5);
        let m = Matrix::from_i64(f5, &[&[1, 1], &[0, 1]]);
        assert_eq!(m.polynomial_inverse().unwrap(), Matrix::from_i64(f5, &[&[1, 4], &[0, 1]]));
    }

    #[test]
    fn det_and_minors() {
        let m = Matrix::from_i64(G, &[&[2, 1], &[1, 3]]);
        assert_eq!(m.det().unwrap(), G.from_i64(5));
        assert_eq!(m.leading_minors().unwrap(), vec![G.from_i64(2), G.from_i64(5)]);
    }

    #[test]
    fn kron_of_units() {
        let x = Matrix::from_i64(G, &[&[0, 1], &[1, 0]]);
        let k = x.kron(&Matrix::identity(G, 2));
        assert_eq!(k.rows(), 4);
        assert!((&k * &k).is_identity());
    }

    #[test]
    fn json_form() {
        let m = Matrix::from_i64(Field::Prime(5), &[&[1, 4], &[0, 1]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1 mod 5","4 mod 5"],["0 mod 5","1 mod 5"]]"#);
        let back: Matrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
