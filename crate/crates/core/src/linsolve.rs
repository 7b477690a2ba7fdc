//! Row reduction and homogeneous solves over an exact field.

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Reduced row echelon form of a dense system, with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
    pub width: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn check_fields(field: Field, rows: &[Vec<Scalar>]) -> Result<()> {
    for row in rows {
        for x in row {
            if x.field() != field {
                return Err(Error::FieldMismatch(field.descriptor(), x.field().descriptor()));
            }
        }
    }
    Ok(())
}

/// Gauss–Jordan elimination in place.
pub fn rref(field: Field, mut rows: Vec<Vec<Scalar>>, width: usize) -> Result<Echelon> {
    check_fields(field, &rows)?;
    for r in &rows {
        if r.len() != width {
            return Err(Error::Shape(format!("row of length {} in a system of width {width}", r.len())));
        }
    }
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..width {
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][col].inverse().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[next].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    Ok(Echelon { rows, pivots, width })
}

/// Basis of the solution space of `constraints · x = 0`.
///
/// An empty result means only the zero solution exists.
pub fn solve_linear(field: Field, constraints: &[Vec<Scalar>], unknowns: usize) -> Result<Vec<Vec<Scalar>>> {
    let ech = rref(field, constraints.to_vec(), unknowns)?;
    Ok(kernel_from_echelon(field, &ech))
}

pub fn kernel_from_echelon(field: Field, ech: &Echelon) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; ech.width];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ech.width).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ech.width];
        v[free] = field.one();
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            if !row[free].is_zero() {
                v[p] = -&row[free];
            }
        }
        basis.push(v);
    }
    basis
}

/// Incrementally maintained span used by closure computations.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    width: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl SpanBuilder {
    pub fn new(width: usize) -> Self {
        SpanBuilder { width, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after reduction against the current span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let factor = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&factor * r);
                }
            }
        }
        v
    }

    /// Adds `v` if it is independent; returns whether it was.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inverse().expect("nonzero");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // keep existing rows reduced at the new pivot
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, n) in row.iter_mut().zip(&r) {
                if !n.is_zero() {
                    *x = &*x - &(&factor * n);
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: i64) -> Scalar {
        Field::Gauss.from_i64(v)
    }

    #[test]
    fn one_equation_kernel() {
        let basis = solve_linear(Field::Gauss, &[vec![g(1), g(1)]], 2).unwrap();
        assert_eq!(basis, vec![vec![g(-1), g(1)]]);
        // (1, -1) spans the same line
        let v = &basis[0];
        assert_eq!(&v[0] + &v[1], g(0));
    }

    #[test]
    fn empty_system_has_full_kernel() {
        assert_eq!(solve_linear(Field::Gauss, &[], 2).unwrap().len(), 2);
    }

    #[test]
    fn mixed_fields_rejected() {
        let row = vec![g(1), Field::Prime(5).one()];
        assert!(matches!(solve_linear(Field::Gauss, &[row], 2), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn commutant_of_diag_1_2_is_two_dimensional() {
        // u = [[u0,u1],[u2,u3]], M = diag(1,2): (uM - Mu) entries:
        // (0,0): 0, (0,1): 2u1 - u1 = u1, (1,0): u2 - 2u2 = -u2, (1,1): 0
        let z = g(0);
        let rows = vec![
            vec![z.clone(), g(1), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), g(-1), z.clone()],
        ];
        let ker = solve_linear(Field::Gauss, &rows, 4).unwrap();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(v[1].is_zero() && v[2].is_zero());
        }
    }

    #[test]
    fn span_builder_detects_dependence() {
        let f = Field::Prime(5);
        let mut s = SpanBuilder::new(3);
        assert!(s.insert(&[f.from_i64(1), f.from_i64(2), f.zero()]));
        assert!(s.insert(&[f.zero(), f.from_i64(1), f.from_i64(1)]));
        assert!(!s.insert(&[f.from_i64(2), f.from_i64(2), f.from_i64(3)]));
        assert_eq!(s.dim(), 2);
    }
}
