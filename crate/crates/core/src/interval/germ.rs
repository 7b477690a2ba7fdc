use num_traits::{Signed, Zero};

use super::{one, Interval, PlMap};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Endpoint {
    Left,
    Right,
}

/// Germ of an endpoint-fixing map, as a Möbius matrix up to positive scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryGerm {
    endpoint: Endpoint,
    point: Rational,
    // [[m0, m1], [m2, m3]], normalized
    m: [Rational; 4],
}

impl BoundaryGerm {
    pub fn new(endpoint: Endpoint, point: Rational, m: [Rational; 4]) -> Result<BoundaryGerm> {
        let [a, b, c, d] = &m;
        let det = a * d - b * c;
        if det.is_zero() {
            return Err(Error::InvalidPl("singular germ matrix".into()));
        }
        let denom = c * &point + d;
        if denom.is_zero() || (a * &point + b) / &denom != point {
            return Err(Error::EndpointNotFixed(format_rational(&point)));
        }
        // derivative det/(cx+d)² has the sign of det
        if !det.is_positive() {
            return Err(Error::InvalidPl("germ reverses orientation".into()));
        }
        let scale = if d.is_zero() { c.abs() } else { d.abs() };
        let m = m.map(|x| x / &scale);
        Ok(BoundaryGerm { endpoint, point, m })
    }

    /// Germ of `x ↦ slope·(x − p) + p`.
    pub fn affine(endpoint: Endpoint, point: Rational, slope: Rational) -> Result<BoundaryGerm> {
        let shift = &point * (one() - &slope);
        BoundaryGerm::new(endpoint, point, [slope, shift, Rational::zero(), one()])
    }

    pub fn identity(endpoint: Endpoint, point: Rational) -> BoundaryGerm {
        BoundaryGerm::affine(endpoint, point, one()).expect("identity germ")
    }

    pub fn endpoint(&self) -> Endpoint {
        self.endpoint
    }

    pub fn point(&self) -> &Rational {
        &self.point
    }

    pub fn matrix(&self) -> &[Rational; 4] {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        let [a, b, c, d] = &self.m;
        b.is_zero() && c.is_zero() && a == d
    }

    /// Derivative at the fixed endpoint: `det / (c p + d)²`.
    pub fn derivative(&self) -> Rational {
        let [a, b, c, d] = &self.m;
        let den = c * &self.point + d;
        (a * d - b * c) / (&den * &den)
    }

    /// Germ of `self ∘ other`.
    pub fn compose(&self, other: &BoundaryGerm) -> Result<BoundaryGerm> {
        if self.endpoint != other.endpoint || self.point != other.point {
            return Err(Error::EndpointMismatch("germs at different endpoints".into()));
        }
        BoundaryGerm::new(self.endpoint, self.point.clone(), mat_mul(&self.m, &other.m))
    }
}

fn mat_mul(x: &[Rational; 4], y: &[Rational; 4]) -> [Rational; 4] {
    [
        &x[0] * &y[0] + &x[1] * &y[2],
        &x[0] * &y[1] + &x[1] * &y[3],
        &x[2] * &y[0] + &x[3] * &y[2],
        &x[2] * &y[1] + &x[3] * &y[3],
    ]
}

/// Class in `Diff(I)/Diff_0(I)`: the pair of boundary germs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingClass {
    pub left: BoundaryGerm,
    pub right: BoundaryGerm,
}

impl MappingClass {
    /// Reads off the first and last affine pieces of an endpoint-fixing PL map.
    pub fn of_pl(f: &PlMap) -> Result<MappingClass> {
        if !f.fixes_endpoints() {
            return Err(Error::EndpointNotFixed(format!("{f:?}")));
        }
        let i = f.domain();
        Ok(MappingClass {
            left: BoundaryGerm::affine(Endpoint::Left, i.left().clone(), f.first_slope())?,
            right: BoundaryGerm::affine(Endpoint::Right, i.right().clone(), f.last_slope())?,
        })
    }

    pub fn identity(i: &Interval) -> MappingClass {
        MappingClass {
            left: BoundaryGerm::identity(Endpoint::Left, i.left().clone()),
            right: BoundaryGerm::identity(Endpoint::Right, i.right().clone()),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.left.is_identity() && self.right.is_identity()
    }

    /// Class of `f ∘ g` from the classes of `f` and `g`.
    pub fn compose(&self, other: &MappingClass) -> Result<MappingClass> {
        Ok(MappingClass { left: self.left.compose(&other.left)?, right: self.right.compose(&other.right)? })
    }
}

/// `x ↦ (x + u)/(u x + 1)`, the projective class of `[[cosh t, sinh t], [sinh t, cosh t]]` with `u = tanh t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusMap {
    u: Rational,
}

pub fn lorentz(u: &Rational) -> Result<MobiusMap> {
    MobiusMap::new(u.clone())
}

impl MobiusMap {
    pub fn new(u: Rational) -> Result<MobiusMap> {
        if u.abs() >= one() {
            return Err(Error::LorentzRange(format_rational(&u)));
        }
        Ok(MobiusMap { u })
    }

    /// The chart coordinate `u = tanh t`.
    pub fn chart(&self) -> &Rational {
        &self.u
    }

    /// Representative `[[1, u], [u, 1]]`; the hyperbola point is `(1, u)/√(1−u²)`.
    pub fn matrix(&self) -> [Rational; 4] {
        [one(), self.u.clone(), self.u.clone(), one()]
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        (x + &self.u) / (&self.u * x + one())
    }

    /// `(1 − u²)/(u x + 1)²`.
    pub fn derivative(&self, x: &Rational) -> Rational {
        let den = &self.u * x + one();
        (one() - &self.u * &self.u) / (&den * &den)
    }

    /// `self ∘ other`: rapidities add, so `u` composes by `(u1 + u2)/(1 + u1 u2)`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap { u: (&self.u + &other.u) / (one() + &self.u * &other.u) }
    }

    pub fn mapping_class(&self) -> MappingClass {
        let m = self.matrix();
        MappingClass {
            left: BoundaryGerm::new(Endpoint::Left, -one(), m.clone()).expect("fixes -1"),
            right: BoundaryGerm::new(Endpoint::Right, one(), m).expect("fixes +1"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LorentzCheck {
    pub u3: Rational,
    /// `lorentz(u1) ∘ lorentz(u2) = lorentz((u1+u2)/(1+u1u2))` exactly.
    pub group_law: bool,
    pub derivative_plus: [Rational; 2],
    pub derivative_minus: [Rational; 2],
}

pub fn lorentz_flow_check(u1: &Rational, u2: &Rational) -> Result<LorentzCheck> {
    let l1 = lorentz(u1)?;
    let l2 = lorentz(u2)?;
    let u3 = (u1 + u2) / (one() + u1 * u2);
    let group_law = l1.compose(&l2) == lorentz(&u3)?;
    let d = |l: &MobiusMap| [l.derivative(&one()), l.derivative(&-one())];
    let [p1, m1] = d(&l1);
    let [p2, m2] = d(&l2);
    Ok(LorentzCheck { u3, group_law, derivative_plus: [p1, p2], derivative_minus: [m1, m2] })
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    #[test]
    fn lorentz_examples() {
        let id = lorentz(&Rational::zero()).unwrap();
        assert_eq!(id.eval(&rat(1, 3)), rat(1, 3));
        assert!(id.mapping_class().is_identity());
        let chk = lorentz_flow_check(&rat(1, 2), &rat(1, 3)).unwrap();
        assert_eq!(chk.u3, rat(5, 7));
        assert!(chk.group_law);
        assert!(lorentz(&one()).is_err());
    }

    #[test]
    fn lorentz_boundary_behaviour() {
        let l = lorentz(&rat(1, 2)).unwrap();
        assert_eq!(l.eval(&one()), one());
        assert_eq!(l.eval(&-one()), -one());
        assert_eq!(l.derivative(&one()), rat(1, 3));
        assert_eq!(l.derivative(&-one()), rat(3, 1));
        assert_eq!(l.mapping_class().right.derivative(), rat(1, 3));
        assert!(!l.mapping_class().is_identity());
        assert_eq!(l.chart(), &rat(1, 2));
    }

    #[test]
    fn pl_germs() {
        let i = Interval::ints(0, 1);
        let f = PlMap::new(i.clone(), i.clone(), vec![rat(0, 1), rat(1, 4), rat(1, 1)], vec![rat(0, 1), rat(1, 2), rat(1, 1)]).unwrap();
        let cls = MappingClass::of_pl(&f).unwrap();
        assert_eq!(cls.left.derivative(), rat(2, 1));
        assert!(!cls.is_identity());
        let g = PlMap::new(i.clone(), i.clone(), vec![rat(0, 1), rat(1, 6), rat(1, 1)], vec![rat(0, 1), rat(1, 2), rat(1, 1)]).unwrap();
        let gc = MappingClass::of_pl(&g).unwrap();
        let fg = super::super::pl::compose(&f, &g).unwrap();
        assert_eq!(MappingClass::of_pl(&fg).unwrap(), cls.compose(&gc).unwrap());
        assert_eq!(MappingClass::of_pl(&fg).unwrap().left.derivative(), rat(6, 1));
        let shifted = PlMap::affine(&i, &Interval::ints(0, 2), rat(1, 2), rat(3, 2)).unwrap();
        assert!(matches!(MappingClass::of_pl(&shifted), Err(Error::EndpointNotFixed(_))));
    }

    #[test]
    fn germs_are_projective() {
        let p = rat(1, 1);
        let g = BoundaryGerm::new(Endpoint::Right, p.clone(), [rat(10, 3), rat(8, 3), rat(8, 3), rat(10, 3)]).unwrap();
        let h = BoundaryGerm::new(Endpoint::Right, p, [rat(5, 3), rat(4, 3), rat(4, 3), rat(5, 3)]).unwrap();
        assert_eq!(g, h);
    }
}
