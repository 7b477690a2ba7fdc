use super::pl::compose;
use super::{is_positive, Interval, PlMap};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, Rational};

/// A PL self-map of `I` that is the identity on both collars of width `δ`.
#[derive(Clone, Debug)]
pub struct InteriorDiffeo {
    map: PlMap,
    collar: Rational,
}

/// Equality ignores the collar certificate.
impl PartialEq for InteriorDiffeo {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

impl Eq for InteriorDiffeo {}

fn fixes_segment(map: &PlMap, p: &Rational, q: &Rational) -> Result<bool> {
    if map.eval(p)? != *p || map.eval(q)? != *q {
        return Ok(false);
    }
    Ok(map.breakpoints().iter().zip(map.values()).all(|(b, v)| b <= p || b >= q || b == v))
}

impl InteriorDiffeo {
    pub fn new(map: PlMap, collar: Rational) -> Result<InteriorDiffeo> {
        let i = map.domain().clone();
        if map.codomain() != &i || !map.is_surjective() {
            return Err(Error::NotInteriorSupported("not a diffeomorphism of its domain".into()));
        }
        if !is_positive(&collar) || &collar + &collar > i.length() {
            return Err(Error::NotInteriorSupported(format!("collar {} out of range", format_rational(&collar))));
        }
        let l_end = i.left() + &collar;
        let r_start = i.right() - &collar;
        if !fixes_segment(&map, i.left(), &l_end)? || !fixes_segment(&map, &r_start, i.right())? {
            return Err(Error::NotInteriorSupported(format!(
                "not the identity on collars of width {}",
                format_rational(&collar)
            )));
        }
        Ok(InteriorDiffeo { map, collar })
    }

    /// Uses the widest collar the map admits.
    pub fn from_map(map: PlMap) -> Result<InteriorDiffeo> {
        let collar = max_collar(&map)
            .ok_or_else(|| Error::NotInteriorSupported("map moves points arbitrarily close to the boundary".into()))?;
        InteriorDiffeo::new(map, collar)
    }

    pub fn identity(i: &Interval) -> InteriorDiffeo {
        let half = i.length() / Rational::from_integer(2.into());
        InteriorDiffeo { map: PlMap::identity(i), collar: half }
    }

    pub fn map(&self) -> &PlMap {
        &self.map
    }

    pub fn collar(&self) -> &Rational {
        &self.collar
    }

    pub fn interval(&self) -> &Interval {
        self.map.domain()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_identity()
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &InteriorDiffeo) -> Result<InteriorDiffeo> {
        let map = compose(&self.map, &inner.map)?;
        InteriorDiffeo::new(map, self.collar.clone().min(inner.collar.clone()))
    }

    pub fn inverse(&self) -> InteriorDiffeo {
        InteriorDiffeo { map: self.map.inverse().expect("diffeomorphisms are surjective"), collar: self.collar.clone() }
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        self.map.eval(t)
    }
}

/// Widest `δ ≤ |I|/2` with the map the identity on both `δ`-collars.
pub fn max_collar(map: &PlMap) -> Option<Rational> {
    let i = map.domain();
    let half = i.length() / Rational::from_integer(2.into());
    if map.is_identity() {
        return Some(half);
    }
    let bps = map.breakpoints();
    let vals = map.values();
    let n = bps.len();
    let left_ok = vals[0] == bps[0] && vals[1] == bps[1];
    let right_ok = vals[n - 1] == bps[n - 1] && vals[n - 2] == bps[n - 2];
    if !left_ok || !right_ok {
        return None;
    }
    let l = &bps[1] - i.left();
    let r = i.right() - &bps[n - 2];
    Some(l.min(r).min(half))
}

/// `c^ε`: `ε ∘ c ∘ ε⁻¹` on the image of `ε`, the identity elsewhere.
pub fn transport(c: &InteriorDiffeo, eps: &PlMap) -> Result<InteriorDiffeo> {
    if eps.domain() != c.interval() {
        return Err(Error::EndpointMismatch(format!(
            "transport of a diffeo of {} along an embedding of {}",
            c.interval(),
            eps.domain()
        )));
    }
    let j = eps.codomain().clone();
    let image = eps.image();
    let onto = eps.with_codomain(&image)?;
    let mid = compose(&compose(&onto, &c.map)?, &onto.inverse()?)?;
    let mut bps = Vec::new();
    let mut vals = Vec::new();
    if image.left() > j.left() {
        bps.push(j.left().clone());
        vals.push(j.left().clone());
    }
    bps.extend(mid.breakpoints().iter().cloned());
    vals.extend(mid.values().iter().cloned());
    if image.right() < j.right() {
        bps.push(j.right().clone());
        vals.push(j.right().clone());
    }
    let map = PlMap::new(j.clone(), j.clone(), bps, vals)?;
    let i = c.interval();
    let lo = eps.eval(&(i.left() + &c.collar))? - j.left();
    let hi = j.right() - eps.eval(&(i.right() - &c.collar))?;
    InteriorDiffeo::new(map, lo.min(hi))
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    /// Supported in `[1/4, 3/4]`, moving `1/2` to `5/8`.
    fn bump() -> InteriorDiffeo {
        let i = Interval::ints(0, 1);
        let m = PlMap::new(i.clone(), i, vec![r(0), rat(1, 4), rat(1, 2), rat(3, 4), r(1)], vec![
            r(0),
            rat(1, 4),
            rat(5, 8),
            rat(3, 4),
            r(1),
        ])
        .unwrap();
        InteriorDiffeo::new(m, rat(1, 4)).unwrap()
    }

    #[test]
    fn collar_is_checked() {
        let b = bump();
        assert!(InteriorDiffeo::new(b.map().clone(), rat(1, 3)).is_err());
        assert_eq!(max_collar(b.map()), Some(rat(1, 4)));
        let i = Interval::ints(0, 1);
        let slope2 = PlMap::new(i.clone(), i, vec![r(0), rat(1, 4), r(1)], vec![r(0), rat(1, 2), r(1)]).unwrap();
        assert!(InteriorDiffeo::from_map(slope2).is_err());
    }

    #[test]
    fn transport_examples() {
        let c = bump();
        let i = Interval::ints(0, 1);
        let j = Interval::ints(0, 3);
        let eps = PlMap::affine(&i, &j, r(1), r(2)).unwrap();
        let ce = transport(&c, &eps).unwrap();
        assert_eq!(ce.map().breakpoints(), &[r(0), rat(5, 4), rat(3, 2), rat(7, 4), r(3)]);
        assert_eq!(ce.eval(&rat(3, 2)).unwrap(), rat(13, 8));
        assert_eq!(ce.collar(), &rat(5, 4));
        assert_eq!(compose(&eps, c.map()).unwrap(), compose(ce.map(), &eps).unwrap());

        assert_eq!(transport(&c, &PlMap::identity(&i)).unwrap(), c);
        assert!(transport(&InteriorDiffeo::identity(&i), &eps).unwrap().is_identity());
    }

    #[test]
    fn transport_is_interior_even_when_eps_hits_the_boundary() {
        let c = bump();
        let i = Interval::ints(0, 1);
        let j = Interval::ints(0, 2);
        let eps = PlMap::affine(&i, &j, r(0), r(1)).unwrap();
        let ce = transport(&c, &eps).unwrap();
        assert_eq!(ce.collar(), &rat(1, 4));
    }
}
