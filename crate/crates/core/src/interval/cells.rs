use super::diffeo::transport;
use super::pl::compose;
use super::{InteriorDiffeo, PlMap};
use crate::error::{Error, Result};
use crate::homgroupoid::Checked;
use crate::scalar::Rational;

/// A certified square `b ∘ ε0 = ε1 ∘ a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalTwoCell {
    src: PlMap,
    dst: PlMap,
    a: InteriorDiffeo,
    b: InteriorDiffeo,
}

/// The leftmost breakpoint where the two sides of the square disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCounterexample {
    pub point: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl IntervalTwoCell {
    pub fn src(&self) -> &PlMap {
        &self.src
    }

    pub fn dst(&self) -> &PlMap {
        &self.dst
    }

    pub fn a(&self) -> &InteriorDiffeo {
        &self.a
    }

    pub fn b(&self) -> &InteriorDiffeo {
        &self.b
    }

    pub fn identity(eps: &PlMap) -> IntervalTwoCell {
        IntervalTwoCell {
            src: eps.clone(),
            dst: eps.clone(),
            a: InteriorDiffeo::identity(eps.domain()),
            b: InteriorDiffeo::identity(eps.codomain()),
        }
    }

    /// `(a⁻¹, b⁻¹): ε1 → ε0`.
    pub fn inverse(&self) -> Result<IntervalTwoCell> {
        certify(&self.dst, &self.src, &self.a.inverse(), &self.b.inverse())
    }
}

pub fn check_interval_two_cell(
    eps0: &PlMap,
    eps1: &PlMap,
    a: &InteriorDiffeo,
    b: &InteriorDiffeo,
) -> Result<Checked<IntervalTwoCell, PointCounterexample>> {
    if eps0.domain() != eps1.domain() || eps0.codomain() != eps1.codomain() {
        return Err(Error::EndpointMismatch("embeddings with different endpoints".into()));
    }
    if a.interval() != eps0.domain() || b.interval() != eps0.codomain() {
        return Err(Error::EndpointMismatch("diffeomorphisms live on the wrong intervals".into()));
    }
    let lhs = compose(b.map(), eps0)?;
    let rhs = compose(eps1, a.map())?;
    if lhs == rhs {
        return Ok(Checked::Valid(IntervalTwoCell {
            src: eps0.clone(),
            dst: eps1.clone(),
            a: a.clone(),
            b: b.clone(),
        }));
    }
    let mut pts: Vec<Rational> = lhs.breakpoints().iter().chain(rhs.breakpoints()).cloned().collect();
    pts.sort();
    pts.dedup();
    for t in pts {
        let (l, r) = (lhs.eval(&t)?, rhs.eval(&t)?);
        if l != r {
            return Ok(Checked::Invalid(PointCounterexample { point: t, lhs: l, rhs: r }));
        }
    }
    Err(Error::Internal("PL maps differ but agree on all breakpoints".into()))
}

fn certify(eps0: &PlMap, eps1: &PlMap, a: &InteriorDiffeo, b: &InteriorDiffeo) -> Result<IntervalTwoCell> {
    check_interval_two_cell(eps0, eps1, a, b)?
        .valid()
        .ok_or_else(|| Error::Internal("constructed interval 2-cell does not commute".into()))
}

/// `(a0, b0): ε0 → ε1` then `(a1, b1): ε1 → ε2` gives `(a1 ∘ a0, b1 ∘ b0)`.
pub fn interval_vcompose(f: &IntervalTwoCell, g: &IntervalTwoCell) -> Result<IntervalTwoCell> {
    if f.dst != g.src {
        return Err(Error::EndpointMismatch("vertical composition needs f.dst = g.src".into()));
    }
    certify(&f.src, &g.dst, &g.a.after(&f.a)?, &g.b.after(&f.b)?)
}

/// `(a, b0) × (b1, c) ↦ (a, c ∘ (b1⁻¹ ∘ b0)^{δ0})`, a cell `δ0∘ε0 → δ1∘ε1`.
pub fn interval_hcompose(f: &IntervalTwoCell, g: &IntervalTwoCell) -> Result<IntervalTwoCell> {
    if f.src.codomain() != g.src.domain() {
        return Err(Error::EndpointMismatch("horizontal composition needs codomain(f) = domain(g)".into()));
    }
    let src = compose(&g.src, &f.src)?;
    let dst = compose(&g.dst, &f.dst)?;
    let pushed = transport(&g.a.inverse().after(&f.b)?, &g.src)?;
    certify(&src, &dst, &f.a, &g.b.after(&pushed)?)
}

#[derive(Clone, Debug)]
pub struct IntervalAssociativity {
    pub left: IntervalTwoCell,
    pub right: IntervalTwoCell,
    pub equal: bool,
    /// `d (c1⁻¹c0 (b1⁻¹b0)^{δ0})^{η0}` matches the left bracketing.
    pub left_display: bool,
    /// `d (c1⁻¹c0)^{η0} (b1⁻¹b0)^{η0δ0}` matches the right bracketing.
    pub right_display: bool,
}

/// Both bracketings of `f ∘h g ∘h h`, compared against the closed forms.
pub fn interval_associativity(
    f: &IntervalTwoCell,
    g: &IntervalTwoCell,
    h: &IntervalTwoCell,
) -> Result<IntervalAssociativity> {
    let left = interval_hcompose(&interval_hcompose(f, g)?, h)?;
    let right = interval_hcompose(f, &interval_hcompose(g, h)?)?;
    let equal = left == right;

    let (b0, b1, c0, c1, d) = (&f.b, &g.a, &g.b, &h.a, &h.b);
    let (delta0, eta0) = (&g.src, &h.src);
    let b_core = b1.inverse().after(b0)?;
    let c_core = c1.inverse().after(c0)?;
    let left_closed = d.after(&transport(&c_core.after(&transport(&b_core, delta0)?)?, eta0)?)?;
    let right_closed =
        d.after(&transport(&c_core, eta0)?)?.after(&transport(&b_core, &compose(eta0, delta0)?)?)?;
    Ok(IntervalAssociativity {
        left_display: left.b == left_closed && left.a == f.a,
        right_display: right.b == right_closed && right.a == f.a,
        left,
        right,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{rat, Interval};
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn bump_on(i: &Interval, bps: &[Rational], vals: &[Rational], collar: Rational) -> InteriorDiffeo {
        InteriorDiffeo::new(PlMap::new(i.clone(), i.clone(), bps.to_vec(), vals.to_vec()).unwrap(), collar).unwrap()
    }

    #[test]
    fn identity_and_transport_cells() {
        let i = Interval::ints(0, 1);
        let j = Interval::ints(0, 3);
        let eps = PlMap::affine(&i, &j, r(1), r(2)).unwrap();
        let id = IntervalTwoCell::identity(&eps);
        assert!(check_interval_two_cell(&eps, &eps, id.a(), id.b()).unwrap().is_valid());
        let c = bump_on(&i, &[r(0), rat(1, 4), rat(1, 2), rat(3, 4), r(1)], &[r(0), rat(1, 4), rat(5, 8), rat(3, 4), r(1)], rat(1, 4));
        let ce = transport(&c, &eps).unwrap();
        assert!(check_interval_two_cell(&eps, &eps, &c, &ce).unwrap().is_valid());
    }

    #[test]
    fn mismatch_reports_leftmost_point() {
        let i = Interval::ints(0, 1);
        let j = Interval::ints(0, 3);
        let e0 = PlMap::affine(&i, &j, r(1), r(2)).unwrap();
        let c = bump_on(&i, &[r(0), rat(1, 4), rat(1, 2), rat(3, 4), r(1)], &[r(0), rat(1, 4), rat(5, 8), rat(3, 4), r(1)], rat(1, 4));
        match check_interval_two_cell(&e0, &e0, &c, &InteriorDiffeo::identity(&j)).unwrap() {
            Checked::Invalid(ce) => {
                assert_eq!(ce.point, rat(1, 2));
                assert_eq!(ce.lhs, rat(3, 2));
                assert_eq!(ce.rhs, rat(13, 8));
            }
            Checked::Valid(_) => panic!("square should not commute"),
        }
    }

    #[test]
    fn hcompose_with_identity_is_transport() {
        let i = Interval::ints(0, 1);
        let j = Interval::ints(0, 3);
        let k = Interval::ints(0, 5);
        let eps = PlMap::affine(&i, &j, r(1), r(2)).unwrap();
        let delta = PlMap::affine(&j, &k, r(1), r(4)).unwrap();
        let c = bump_on(&i, &[r(0), rat(1, 4), rat(1, 2), rat(3, 4), r(1)], &[r(0), rat(1, 4), rat(5, 8), rat(3, 4), r(1)], rat(1, 4));
        let f = certify(&eps, &eps, &c, &transport(&c, &eps).unwrap()).unwrap();
        let g = IntervalTwoCell::identity(&delta);
        let h = interval_hcompose(&f, &g).unwrap();
        assert_eq!(h.b(), &transport(f.b(), &delta).unwrap());
        let rep = interval_associativity(&f, &g, &IntervalTwoCell::identity(&PlMap::identity(&k))).unwrap();
        assert!(rep.equal && rep.left_display && rep.right_display);
        let inv = f.inverse().unwrap();
        let v = interval_vcompose(&f, &inv).unwrap();
        assert!(v.a().is_identity() && v.b().is_identity());
    }
}
