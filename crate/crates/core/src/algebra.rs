//! Finite-dimensional unital algebras realized inside a full matrix algebra.
//!
//! An [`Algebra`] is the span of a closed set of words in its generators.
//! Each basis element remembers the generator word that produced it, which
//! lets homomorphisms be specified by generator images alone.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linsolve::{rref, solve_linear, SpanBuilder};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

pub const DEFAULT_DIMENSION_CAP: usize = 4096;

type Sparse = Vec<(usize, Scalar)>;

#[derive(Debug)]
pub struct Algebra {
    name: String,
    field: Field,
    n: usize,
    generators: Vec<Matrix>,
    basis: Vec<Matrix>,
    words: Vec<Vec<usize>>,
    pivots: Vec<usize>,
    // row j: coordinates (over `basis`) of the RREF row with pivot `pivots[j]`
    transform: Vec<Sparse>,
    structure: OnceLock<Vec<Vec<Sparse>>>,
}

/// Smallest unital subalgebra of `Mat_n` containing `generators`.
pub fn closure(name: &str, field: Field, n: usize, generators: &[Matrix]) -> Result<Arc<Algebra>> {
    closure_with_cap(name, field, n, generators, DEFAULT_DIMENSION_CAP)
}

pub fn closure_with_cap(
    name: &str,
    field: Field,
    n: usize,
    generators: &[Matrix],
    cap: usize,
) -> Result<Arc<Algebra>> {
    for g in generators {
        if g.field() != field {
            return Err(Error::FieldMismatch(field.descriptor(), g.field().descriptor()));
        }
        if g.rows() != n || g.cols() != n {
            return Err(Error::Shape(format!("generator is {}x{}, expected {n}x{n}", g.rows(), g.cols())));
        }
    }
    let mut span = SpanBuilder::new(n * n);
    let mut basis = vec![Matrix::identity(field, n)];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    span.insert(basis[0].entries());
    let mut next = 0;
    while next < basis.len() {
        for (k, g) in generators.iter().enumerate() {
            let cand = &basis[next] * g;
            if span.insert(cand.entries()) {
                if basis.len() >= cap {
                    return Err(Error::DimensionCap(cap));
                }
                let mut w = words[next].clone();
                w.push(k);
                basis.push(cand);
                words.push(w);
            }
        }
        next += 1;
    }
    Algebra::assemble(name, field, n, generators.to_vec(), basis, words)
}

impl Algebra {
    fn assemble(
        name: &str,
        field: Field,
        n: usize,
        generators: Vec<Matrix>,
        basis: Vec<Matrix>,
        words: Vec<Vec<usize>>,
    ) -> Result<Arc<Algebra>> {
        let d = basis.len();
        let width = n * n + d;
        let rows: Vec<Vec<Scalar>> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut r = b.entries().to_vec();
                r.extend((0..d).map(|j| if i == j { field.one() } else { field.zero() }));
                r
            })
            .collect();
        let ech = rref(field, rows, width)?;
        if ech.rank() != d || ech.pivots.iter().any(|&p| p >= n * n) {
            return Err(Error::Internal("closure basis is not independent".into()));
        }
        let transform = ech
            .rows
            .iter()
            .map(|r| {
                r[n * n..]
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i, x.clone()))
                    .collect()
            })
            .collect();
        Ok(Arc::new(Algebra {
            name: name.to_string(),
            field,
            n,
            generators,
            basis,
            words,
            pivots: ech.pivots,
            transform,
            structure: OnceLock::new(),
        }))
    }

    /// The full matrix algebra `Mat_n`, basis = matrix units in row-major order.
    pub fn full(name: &str, field: Field, n: usize) -> Arc<Algebra> {
        let mut gens = Vec::new();
        for i in 0..n {
            for j in 0..n {
                gens.push(Matrix::unit(field, n, i, j));
            }
        }
        let basis = gens.clone();
        // e_ij is the single-letter word [i*n + j]
        let words = (0..n * n).map(|k| vec![k]).collect();
        Algebra::assemble(name, field, n, gens, basis, words).expect("matrix units are independent")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// Generator word whose product is the `i`-th basis element (empty word = 1).
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn one(&self) -> Matrix {
        Matrix::identity(self.field, self.n)
    }

    fn check_matrix(&self, m: &Matrix) -> Result<()> {
        if m.field() != self.field {
            return Err(Error::FieldMismatch(self.field.descriptor(), m.field().descriptor()));
        }
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::Shape(format!("{}x{} element in Mat_{}", m.rows(), m.cols(), self.n)));
        }
        Ok(())
    }

    /// Coordinates of `m` over the basis, or `None` when `m` is outside the span.
    pub fn coords(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        self.check_matrix(m).ok()?;
        let w = m.entries();
        let mut c = vec![self.field.zero(); self.dim()];
        for (j, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            for (i, t) in &self.transform[j] {
                c[*i] = &c[*i] + &(&w[p] * t);
            }
        }
        (self.combine(&c) == *m).then_some(c)
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.coords(m).is_some()
    }

    /// `Σ c_i B_i`.
    pub fn combine(&self, coords: &[Scalar]) -> Matrix {
        combine(self.field, self.n, &self.basis, coords)
    }

    /// Sparse structure constants: `B_i B_j = Σ_k c[i][j][k] B_k`.
    pub fn structure_constants(&self) -> &[Vec<Sparse>] {
        self.structure.get_or_init(|| {
            self.basis
                .iter()
                .map(|bi| {
                    self.basis
                        .iter()
                        .map(|bj| {
                            let c = self.coords(&(bi * bj)).expect("algebra is closed");
                            c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
                        })
                        .collect()
                })
                .collect()
        })
    }

    pub fn element(self: &Arc<Self>, m: Matrix) -> Result<Element> {
        if !self.contains(&m) {
            return Err(Error::NotInAlgebra(self.name.clone()));
        }
        Ok(Element { parent: Arc::clone(self), matrix: m })
    }

    pub fn same(&self, other: &Algebra) -> bool {
        std::ptr::eq(self, other)
            || (self.field == other.field && self.n == other.n && self.basis == other.basis)
    }

    /// Basis of `{z ∈ A : zs = sz for all s ∈ S}`.
    pub fn centralizer_of(&self, set: &[Matrix]) -> Result<Vec<Matrix>> {
        for s in set {
            self.check_matrix(s)?;
        }
        let d = self.dim();
        let mut constraints = Vec::new();
        for s in set {
            let comms: Vec<Matrix> = self.basis.iter().map(|b| &(b * s) - &(s * b)).collect();
            for e in 0..self.n * self.n {
                let row: Vec<Scalar> = comms.iter().map(|c| c.entries()[e].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    constraints.push(row);
                }
            }
        }
        let kernel = solve_linear(self.field, &constraints, d)?;
        Ok(kernel.iter().map(|v| self.combine(v)).collect())
    }
}

pub fn combine(field: Field, n: usize, basis: &[Matrix], coords: &[Scalar]) -> Matrix {
    let mut acc = Matrix::zeros(field, n, n);
    for (b, c) in basis.iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        acc = if c.is_one() { &acc + b } else { &acc + &b.scale(c) };
    }
    acc
}

pub fn center(a: &Algebra) -> Result<Vec<Matrix>> {
    a.centralizer_of(a.generators())
        .or_else(|_| a.centralizer_of(a.basis()))
}

pub fn centralizer_in(a: &Algebra, set: &[Element]) -> Result<Vec<Matrix>> {
    for x in set {
        if !x.parent.same(a) {
            return Err(Error::ParentMismatch(a.name.clone(), x.parent.name.clone()));
        }
    }
    let ms: Vec<Matrix> = set.iter().map(|x| x.matrix.clone()).collect();
    a.centralizer_of(&ms)
}

/// An element of a constructed algebra.
#[derive(Clone, Debug)]
pub struct Element {
    parent: Arc<Algebra>,
    matrix: Matrix,
}

impl Element {
    pub fn parent(&self) -> &Arc<Algebra> {
        &self.parent
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn coords(&self) -> Vec<Scalar> {
        self.parent.coords(&self.matrix).expect("elements stay in their algebra")
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        if !self.parent.same(&other.parent) {
            return Err(Error::ParentMismatch(self.parent.name.clone(), other.parent.name.clone()));
        }
        Ok(Element { parent: Arc::clone(&self.parent), matrix: &self.matrix * &other.matrix })
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same(&other.parent) && self.matrix == other.matrix
    }
}

/// A unit with its inverse, both certified to lie in the same algebra.
#[derive(Clone, Debug)]
pub struct Unit {
    parent: Arc<Algebra>,
    element: Matrix,
    inverse: Matrix,
}

impl PartialEq for Unit {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same(&other.parent) && self.element == other.element
    }
}

/// Inverts `x` inside its algebra: the inverse is a polynomial in `x`.
pub fn invert_in_algebra(x: &Element) -> Result<Unit> {
    Unit::new(&x.parent, x.matrix.clone())
}

impl Unit {
    pub fn new(parent: &Arc<Algebra>, element: Matrix) -> Result<Unit> {
        if !parent.contains(&element) {
            return Err(Error::NotInAlgebra(parent.name.clone()));
        }
        let inverse = element.polynomial_inverse()?;
        if !parent.contains(&inverse) {
            return Err(Error::Internal("polynomial inverse left the algebra".into()));
        }
        if !(&element * &inverse).is_identity() || !(&inverse * &element).is_identity() {
            return Err(Error::Internal("inverse does not certify".into()));
        }
        Ok(Unit { parent: Arc::clone(parent), element, inverse })
    }

    /// Trusted constructor for a unit whose inverse is already known.
    pub fn with_inverse(parent: &Arc<Algebra>, element: Matrix, inverse: Matrix) -> Result<Unit> {
        if !(&element * &inverse).is_identity() || !(&inverse * &element).is_identity() {
            return Err(Error::NotAUnit);
        }
        if !parent.contains(&element) || !parent.contains(&inverse) {
            return Err(Error::NotInAlgebra(parent.name.clone()));
        }
        Ok(Unit { parent: Arc::clone(parent), element, inverse })
    }

    pub fn one(parent: &Arc<Algebra>) -> Unit {
        let one = parent.one();
        Unit { parent: Arc::clone(parent), element: one.clone(), inverse: one }
    }

    pub fn parent(&self) -> &Arc<Algebra> {
        &self.parent
    }

    pub fn element(&self) -> &Matrix {
        &self.element
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inverse
    }

    pub fn inv(&self) -> Unit {
        Unit { parent: Arc::clone(&self.parent), element: self.inverse.clone(), inverse: self.element.clone() }
    }

    pub fn mul(&self, other: &Unit) -> Result<Unit> {
        if !self.parent.same(&other.parent) {
            return Err(Error::ParentMismatch(self.parent.name.clone(), other.parent.name.clone()));
        }
        Ok(Unit {
            parent: Arc::clone(&self.parent),
            element: &self.element * &other.element,
            inverse: &other.inverse * &self.inverse,
        })
    }

    /// `σ_u(x) = u⁻¹ x u`.
    pub fn conj(&self, x: &Matrix) -> Matrix {
        &(&self.inverse * x) * &self.element
    }
}

pub fn inner_aut(u: &Unit, x: &Element) -> Result<Element> {
    if !u.parent.same(&x.parent) {
        return Err(Error::ParentMismatch(u.parent.name.clone(), x.parent.name.clone()));
    }
    Ok(Element { parent: Arc::clone(&x.parent), matrix: u.conj(&x.matrix) })
}

/// Outcome of a law check over a basis, with a counterexample on failure.
#[derive(Clone, Debug, PartialEq)]
pub enum LawCheck {
    Pass,
    Fail { basis_index: usize, lhs: Matrix, rhs: Matrix },
}

impl LawCheck {
    pub fn passed(&self) -> bool {
        matches!(self, LawCheck::Pass)
    }
}

/// `σ_{ab}(x) = σ_b(σ_a(x))` on every basis element.
pub fn compose_sigma_check(a: &Unit, b: &Unit) -> Result<LawCheck> {
    let ab = a.mul(b)?;
    for (i, x) in a.parent.basis().iter().enumerate() {
        let lhs = ab.conj(x);
        let rhs = b.conj(&a.conj(x));
        if lhs != rhs {
            return Ok(LawCheck::Fail { basis_index: i, lhs, rhs });
        }
    }
    Ok(LawCheck::Pass)
}

/// A unital algebra homomorphism, stored by the images of the source basis.
#[derive(Clone, Debug)]
pub struct AlgHom {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    images: Vec<Matrix>,
}

impl PartialEq for AlgHom {
    fn eq(&self, other: &Self) -> bool {
        self.source.same(&other.source) && self.target.same(&other.target) && self.images == other.images
    }
}

impl AlgHom {
    /// Certifies images of the source basis: in the target, unital, multiplicative.
    pub fn new(source: &Arc<Algebra>, target: &Arc<Algebra>, images: Vec<Matrix>) -> Result<AlgHom> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field().descriptor(), target.field().descriptor()));
        }
        if images.len() != source.dim() {
            return Err(Error::Shape(format!("{} images for a {}-dimensional source", images.len(), source.dim())));
        }
        for im in &images {
            if !target.contains(im) {
                return Err(Error::NotInAlgebra(target.name.clone()));
            }
        }
        let hom = AlgHom { source: Arc::clone(source), target: Arc::clone(target), images };
        hom.certify()?;
        Ok(hom)
    }

    /// Extends generator images along the stored basis words, then certifies.
    pub fn from_generator_images(
        source: &Arc<Algebra>,
        target: &Arc<Algebra>,
        gen_images: &[Matrix],
    ) -> Result<AlgHom> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::Shape(format!(
                "{} generator images for {} generators",
                gen_images.len(),
                source.generators().len()
            )));
        }
        for g in gen_images {
            target.check_matrix(g)?;
        }
        let images = (0..source.dim())
            .map(|i| {
                source.word(i).iter().fold(target.one(), |acc, &k| &acc * &gen_images[k])
            })
            .collect();
        AlgHom::new(source, target, images)
    }

    /// Builds the hom from a matrix-level map evaluated on the source basis.
    pub fn from_fn(source: &Arc<Algebra>, target: &Arc<Algebra>, f: impl Fn(&Matrix) -> Matrix) -> Result<AlgHom> {
        let images = source.basis().iter().map(f).collect();
        AlgHom::new(source, target, images)
    }

    pub fn identity(a: &Arc<Algebra>) -> AlgHom {
        AlgHom { source: Arc::clone(a), target: Arc::clone(a), images: a.basis().to_vec() }
    }

    /// The inner automorphism `σ_u` as a hom `A → A`.
    pub fn inner(u: &Unit) -> AlgHom {
        let a = u.parent();
        AlgHom { source: Arc::clone(a), target: Arc::clone(a), images: a.basis().iter().map(|x| u.conj(x)).collect() }
    }

    fn certify(&self) -> Result<()> {
        let one = self.source.coords(&self.source.one()).expect("unital algebra");
        if !self.apply_coords(&one).is_identity() {
            return Err(Error::NotUnital);
        }
        let sc = self.source.structure_constants();
        for i in 0..self.source.dim() {
            for j in 0..self.source.dim() {
                let lhs = self.apply_sparse(&sc[i][j]);
                let rhs = &self.images[i] * &self.images[j];
                if lhs != rhs {
                    return Err(Error::NotMultiplicative(i, j));
                }
            }
        }
        Ok(())
    }

    fn apply_sparse(&self, c: &[(usize, Scalar)]) -> Matrix {
        let n = self.target.ambient_dim();
        let mut acc = Matrix::zeros(self.target.field(), n, n);
        for (k, x) in c {
            acc = &acc + &self.images[*k].scale(x);
        }
        acc
    }

    fn apply_coords(&self, c: &[Scalar]) -> Matrix {
        combine(self.target.field(), self.target.ambient_dim(), &self.images, c)
    }

    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        let c = self.source.coords(x).ok_or_else(|| Error::NotInAlgebra(self.source.name.clone()))?;
        Ok(self.apply_coords(&c))
    }

    pub fn apply_unit(&self, u: &Unit) -> Result<Unit> {
        if !u.parent.same(&self.source) {
            return Err(Error::ParentMismatch(self.source.name.clone(), u.parent.name.clone()));
        }
        Ok(Unit {
            parent: Arc::clone(&self.target),
            element: self.apply(&u.element)?,
            inverse: self.apply(&u.inverse)?,
        })
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &AlgHom) -> Result<AlgHom> {
        if !self.target.same(&after.source) {
            return Err(Error::EndpointMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source.name, self.target.name, after.source.name, after.target.name
            )));
        }
        let images = self.images.iter().map(|m| after.apply(m)).collect::<Result<Vec<_>>>()?;
        Ok(AlgHom { source: Arc::clone(&self.source), target: Arc::clone(&after.target), images })
    }

    /// Post-composition with `σ_u` on the target: `x ↦ u⁻¹ φ(x) u`.
    pub fn conjugated_by(&self, u: &Unit) -> Result<AlgHom> {
        if !u.parent.same(&self.target) {
            return Err(Error::ParentMismatch(self.target.name.clone(), u.parent.name.clone()));
        }
        let images = self.images.iter().map(|m| u.conj(m)).collect();
        Ok(AlgHom { source: Arc::clone(&self.source), target: Arc::clone(&self.target), images })
    }

    pub fn same_endpoints(&self, other: &AlgHom) -> bool {
        self.source.same(&other.source) && self.target.same(&other.target)
    }
}

/// JSON algebra definition: field descriptor, ambient dimension, generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub name: String,
    pub field: String,
    pub dim: usize,
    #[serde(default)]
    pub generators: Vec<Matrix>,
    #[serde(default)]
    pub full: bool,
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<Arc<Algebra>> {
        let field: Field = self.field.parse()?;
        if self.full {
            return Ok(Algebra::full(&self.name, field, self.dim));
        }
        closure(&self.name, field, self.dim, &self.generators)
    }
}

/// JSON hom definition: either basis images or generator images.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomSpec {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub images: Option<Vec<Matrix>>,
    #[serde(default)]
    pub generator_images: Option<Vec<Matrix>>,
}

impl HomSpec {
    pub fn build(&self, source: &Arc<Algebra>, target: &Arc<Algebra>) -> Result<AlgHom> {
        match (&self.images, &self.generator_images) {
            (Some(im), _) => AlgHom::new(source, target, im.clone()),
            (None, Some(g)) => AlgHom::from_generator_images(source, target, g),
            (None, None) => Err(Error::Input("hom needs `images` or `generator_images`".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: Field = Field::Gauss;
    const F5: Field = Field::Prime(5);

    #[test]
    fn closure_examples() {
        let a = closure("k", G, 2, &[]).unwrap();
        assert_eq!(a.dim(), 1);
        let e12 = Matrix::unit(G, 2, 0, 1);
        let e21 = Matrix::unit(G, 2, 1, 0);
        assert_eq!(closure("M2", G, 2, &[e12, e21]).unwrap().dim(), 4);
        let d = Matrix::from_i64(G, &[&[1, 0], &[0, 2]]);
        let diag = closure("D", G, 2, &[d]).unwrap();
        assert_eq!(diag.dim(), 2);
        assert!(diag.contains(&Matrix::unit(G, 2, 0, 0)));
        assert!(!diag.contains(&Matrix::unit(G, 2, 0, 1)));
    }

    #[test]
    fn closure_cap_is_a_hard_error() {
        let e12 = Matrix::unit(G, 2, 0, 1);
        let e21 = Matrix::unit(G, 2, 1, 0);
        assert_eq!(closure_with_cap("M2", G, 2, &[e12, e21], 3).unwrap_err(), Error::DimensionCap(3));
    }

    #[test]
    fn closure_rejects_mixed_fields() {
        let g = Matrix::unit(F5, 2, 0, 1);
        assert!(matches!(closure("x", G, 2, &[g]), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn inversion_examples() {
        let m2 = Algebra::full("M2", F5, 2);
        let u = invert_in_algebra(&m2.element(Matrix::from_i64(F5, &[&[1, 1], &[0, 1]])).unwrap()).unwrap();
        assert_eq!(u.inverse_matrix(), &Matrix::from_i64(F5, &[&[1, 4], &[0, 1]]));

        let d = closure("D", G, 2, &[Matrix::from_i64(G, &[&[1, 0], &[0, 2]])]).unwrap();
        let x = d.element(Matrix::from_i64(G, &[&[2, 0], &[0, 3]])).unwrap();
        let u = invert_in_algebra(&x).unwrap();
        let half = G.from_rational(&crate::scalar::parse_rational("1/2").unwrap()).unwrap();
        let third = G.from_rational(&crate::scalar::parse_rational("1/3").unwrap()).unwrap();
        assert_eq!(u.inverse_matrix(), &Matrix::diag(G, &[half, third]));
        assert!(d.contains(u.inverse_matrix()));

        let one = invert_in_algebra(&d.element(d.one()).unwrap()).unwrap();
        assert!(one.inverse_matrix().is_identity());

        let singular = m2.element(Matrix::unit(F5, 2, 0, 0)).unwrap();
        assert_eq!(invert_in_algebra(&singular).unwrap_err(), Error::NotAUnit);
    }

    #[test]
    fn swap_conjugation() {
        let m2 = Algebra::full("M2", G, 2);
        let u = Unit::new(&m2, Matrix::from_i64(G, &[&[0, 1], &[1, 0]])).unwrap();
        let x = m2.element(Matrix::unit(G, 2, 0, 0)).unwrap();
        assert_eq!(inner_aut(&u, &x).unwrap().matrix(), &Matrix::unit(G, 2, 1, 1));
        let uu = m2.element(u.element().clone()).unwrap();
        assert_eq!(inner_aut(&u, &uu).unwrap(), uu);
        assert_eq!(inner_aut(&Unit::one(&m2), &x).unwrap(), x);
    }

    #[test]
    fn parent_mismatch_is_reported() {
        let a = Algebra::full("A", G, 2);
        let b = closure("D", G, 2, &[Matrix::from_i64(G, &[&[1, 0], &[0, 2]])]).unwrap();
        let u = Unit::one(&a);
        let x = b.element(b.one()).unwrap();
        assert!(matches!(inner_aut(&u, &x), Err(Error::ParentMismatch(..))));
    }

    #[test]
    fn centers_and_centralizers() {
        let m2 = Algebra::full("M2", G, 2);
        let z = center(&m2).unwrap();
        assert_eq!(z.len(), 1);
        assert!(z[0].as_scalar().is_some());

        let d = closure("D", G, 2, &[Matrix::from_i64(G, &[&[1, 0], &[0, 2]])]).unwrap();
        assert_eq!(center(&d).unwrap().len(), 2);

        let e11 = m2.element(Matrix::unit(G, 2, 0, 0)).unwrap();
        let c = centralizer_in(&m2, &[e11]).unwrap();
        assert_eq!(c.len(), 2);
        for m in &c {
            assert!(d.contains(m), "centralizer of e11 is the diagonal algebra");
        }
    }

    #[test]
    fn hom_certification_rejects_bad_maps() {
        let m2 = Algebra::full("M2", G, 2);
        // transpose is an anti-homomorphism
        let t = AlgHom::from_fn(&m2, &m2, Matrix::transpose);
        assert!(matches!(t, Err(Error::NotMultiplicative(..))));
        // zero map is not unital
        let z = AlgHom::from_fn(&m2, &m2, |_| Matrix::zeros(G, 2, 2));
        assert_eq!(z.unwrap_err(), Error::NotUnital);
        let u = Unit::new(&m2, Matrix::from_i64(G, &[&[1, 1], &[0, 1]])).unwrap();
        assert!(AlgHom::from_fn(&m2, &m2, |x| u.conj(x)).is_ok());
    }

    #[test]
    fn sigma_order_law_trivial_cases() {
        let m2 = Algebra::full("M2", F5, 2);
        let one = Unit::one(&m2);
        assert!(compose_sigma_check(&one, &one).unwrap().passed());
    }
}
