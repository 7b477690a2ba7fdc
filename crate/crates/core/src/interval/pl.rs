use serde::{Deserialize, Serialize};

use super::{is_positive, Interval};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};

/// An orientation-preserving piecewise-linear embedding with rational data.
///
/// Stored in canonical form: no interior breakpoint joins two collinear
/// pieces. Two maps are equal as functions iff their data are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct PlMap {
    domain: Interval,
    codomain: Interval,
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

impl std::fmt::Debug for PlMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PlMap{:?}->{:?} {{", self.domain, self.codomain)?;
        for (b, v) in self.breakpoints.iter().zip(&self.values) {
            write!(f, " {}↦{}", format_rational(b), format_rational(v))?;
        }
        write!(f, " }}")
    }
}

impl PlMap {
    pub fn new(domain: Interval, codomain: Interval, breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<PlMap> {
        if breakpoints.len() < 2 || breakpoints.len() != values.len() {
            return Err(Error::InvalidPl("need matching breakpoint and value lists of length ≥ 2".into()));
        }
        if breakpoints[0] != *domain.left() || breakpoints.last() != Some(domain.right()) {
            return Err(Error::InvalidPl("breakpoints must start and end at the domain endpoints".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPl("breakpoints must be strictly increasing".into()));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPl("values must be strictly increasing".into()));
        }
        if !codomain.contains(&values[0]) || !codomain.contains(values.last().unwrap()) {
            return Err(Error::ImageEscapes(format!(
                "[{}, {}] ⊄ {codomain}",
                format_rational(&values[0]),
                format_rational(values.last().unwrap())
            )));
        }
        let mut m = PlMap { domain, codomain, breakpoints, values };
        m.canonicalize();
        Ok(m)
    }

    pub fn identity(i: &Interval) -> PlMap {
        PlMap::inclusion(i, i)
    }

    /// The inclusion `I ⊂ J`.
    pub fn inclusion(i: &Interval, j: &Interval) -> PlMap {
        assert!(j.contains_interval(i), "{i} ⊄ {j}");
        PlMap {
            domain: i.clone(),
            codomain: j.clone(),
            breakpoints: vec![i.left().clone(), i.right().clone()],
            values: vec![i.left().clone(), i.right().clone()],
        }
    }

    /// The affine map of `I` onto `[lo, hi] ⊂ J`.
    pub fn affine(i: &Interval, j: &Interval, lo: Rational, hi: Rational) -> Result<PlMap> {
        PlMap::new(i.clone(), j.clone(), vec![i.left().clone(), i.right().clone()], vec![lo, hi])
    }

    fn canonicalize(&mut self) {
        let mut bps = vec![self.breakpoints[0].clone()];
        let mut vals = vec![self.values[0].clone()];
        let n = self.breakpoints.len();
        for k in 1..n {
            if k + 1 < n {
                let s0 = slope(&bps[bps.len() - 1], &vals[vals.len() - 1], &self.breakpoints[k], &self.values[k]);
                let s1 = slope(&self.breakpoints[k], &self.values[k], &self.breakpoints[k + 1], &self.values[k + 1]);
                if s0 == s1 {
                    continue;
                }
            }
            bps.push(self.breakpoints[k].clone());
            vals.push(self.values[k].clone());
        }
        self.breakpoints = bps;
        self.values = vals;
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn codomain(&self) -> &Interval {
        &self.codomain
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn image(&self) -> Interval {
        Interval::new(self.values[0].clone(), self.values.last().unwrap().clone()).expect("strictly increasing")
    }

    pub fn slopes(&self) -> Vec<Rational> {
        (0..self.breakpoints.len() - 1)
            .map(|k| slope(&self.breakpoints[k], &self.values[k], &self.breakpoints[k + 1], &self.values[k + 1]))
            .collect()
    }

    pub fn first_slope(&self) -> Rational {
        slope(&self.breakpoints[0], &self.values[0], &self.breakpoints[1], &self.values[1])
    }

    pub fn last_slope(&self) -> Rational {
        let n = self.breakpoints.len();
        slope(&self.breakpoints[n - 2], &self.values[n - 2], &self.breakpoints[n - 1], &self.values[n - 1])
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && self.breakpoints == self.values
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == self.codomain
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        if !self.domain.contains(t) {
            return Err(Error::InvalidPl(format!("{} outside {}", format_rational(t), self.domain)));
        }
        Ok(interpolate(&self.breakpoints, &self.values, t))
    }

    /// Preimage of a point of the image.
    pub fn preimage(&self, y: &Rational) -> Result<Rational> {
        if !self.image().contains(y) {
            return Err(Error::ImageEscapes(format!("{} not in the image {}", format_rational(y), self.image())));
        }
        Ok(interpolate(&self.values, &self.breakpoints, y))
    }

    /// `self ∘ inner`; requires `inner.codomain = self.domain`.
    pub fn after(&self, inner: &PlMap) -> Result<PlMap> {
        compose(self, inner)
    }

    /// Inverse of a surjective map.
    pub fn inverse(&self) -> Result<PlMap> {
        if !self.is_surjective() {
            return Err(Error::NotSurjective);
        }
        Ok(PlMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            breakpoints: self.values.clone(),
            values: self.breakpoints.clone(),
        })
    }

    /// Inverse from the image back onto the domain.
    pub fn inverse_on_image(&self) -> PlMap {
        PlMap {
            domain: self.image(),
            codomain: self.domain.clone(),
            breakpoints: self.values.clone(),
            values: self.breakpoints.clone(),
        }
    }

    /// Same function, viewed with another codomain containing the image.
    pub fn with_codomain(&self, codomain: &Interval) -> Result<PlMap> {
        PlMap::new(self.domain.clone(), codomain.clone(), self.breakpoints.clone(), self.values.clone())
    }

    pub fn fixes_endpoints(&self) -> bool {
        self.domain == self.codomain
            && self.values[0] == *self.domain.left()
            && self.values.last() == Some(self.domain.right())
    }

    pub fn to_spec(&self) -> PlSpec {
        PlSpec {
            domain: Some(self.domain.clone()),
            codomain: Some(self.codomain.clone()),
            breakpoints: self.breakpoints.iter().map(format_rational).collect(),
            values: self.values.iter().map(format_rational).collect(),
            collar: None,
        }
    }
}

fn slope(x0: &Rational, y0: &Rational, x1: &Rational, y1: &Rational) -> Rational {
    (y1 - y0) / (x1 - x0)
}

fn interpolate(xs: &[Rational], ys: &[Rational], t: &Rational) -> Rational {
    let k = match xs.binary_search(t) {
        Ok(k) => return ys[k].clone(),
        Err(k) => k,
    };
    // xs[k-1] < t < xs[k]
    &ys[k - 1] + (t - &xs[k - 1]) * slope(&xs[k - 1], &ys[k - 1], &xs[k], &ys[k])
}

/// `outer ∘ inner` with merged breakpoints.
pub fn compose(outer: &PlMap, inner: &PlMap) -> Result<PlMap> {
    if inner.codomain != outer.domain {
        return Err(Error::EndpointMismatch(format!(
            "codomain {} does not match domain {}",
            inner.codomain, outer.domain
        )));
    }
    let image = inner.image();
    let mut pts = inner.breakpoints.clone();
    for b in &outer.breakpoints {
        if image.contains(b) {
            pts.push(inner.preimage(b)?);
        }
    }
    pts.sort();
    pts.dedup();
    let vals = pts.iter().map(|t| outer.eval(&inner.eval(t)?)).collect::<Result<Vec<_>>>()?;
    PlMap::new(inner.domain.clone(), outer.codomain.clone(), pts, vals)
}

/// JSON form of a PL map with exact rational strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Interval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codomain: Option<Interval>,
    pub breakpoints: Vec<String>,
    pub values: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collar: Option<String>,
}

impl PlSpec {
    /// Domain defaults to the breakpoint span, codomain to the value span.
    pub fn build(&self) -> Result<PlMap> {
        let bps = self.breakpoints.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        let vals = self.values.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        if bps.len() < 2 || vals.len() < 2 {
            return Err(Error::InvalidPl("need at least two breakpoints".into()));
        }
        let span = |v: &[Rational]| Interval::new(v[0].clone(), v[v.len() - 1].clone());
        let domain = match &self.domain {
            Some(d) => d.clone(),
            None => span(&bps)?,
        };
        let codomain = match &self.codomain {
            Some(c) => c.clone(),
            None => span(&vals)?,
        };
        PlMap::new(domain, codomain, bps, vals)
    }

    pub fn collar(&self) -> Result<Option<Rational>> {
        self.collar
            .as_deref()
            .map(|c| {
                let q = parse_rational(c)?;
                if !is_positive(&q) {
                    return Err(Error::NotInteriorSupported("collar must be positive".into()));
                }
                Ok(q)
            })
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn unit() -> Interval {
        Interval::ints(0, 1)
    }

    fn bent() -> PlMap {
        PlMap::new(unit(), unit(), vec![r(0), rat(1, 2), r(1)], vec![r(0), rat(1, 4), r(1)]).unwrap()
    }

    #[test]
    fn canonical_form_drops_collinear_breakpoints() {
        let m = PlMap::new(unit(), unit(), vec![r(0), rat(1, 3), r(1)], vec![r(0), rat(1, 3), r(1)]).unwrap();
        assert!(m.is_identity());
        assert_eq!(m, PlMap::identity(&unit()));
    }

    #[test]
    fn rejects_bad_data() {
        assert!(PlMap::new(unit(), unit(), vec![r(0), r(1)], vec![r(1), r(0)]).is_err());
        assert!(matches!(
            PlMap::new(unit(), unit(), vec![r(0), r(1)], vec![r(0), r(2)]),
            Err(Error::ImageEscapes(_))
        ));
        assert!(PlMap::new(unit(), unit(), vec![r(0), rat(1, 2)], vec![r(0), r(1)]).is_err());
    }

    #[test]
    fn composition_and_inverse() {
        let f = bent();
        let id = PlMap::identity(&unit());
        assert_eq!(compose(&f, &id).unwrap(), f);
        assert_eq!(compose(&id, &f).unwrap(), f);
        let inv = f.inverse().unwrap();
        assert!(compose(&f, &inv).unwrap().is_identity());
        assert!(compose(&inv, &f).unwrap().is_identity());
        let ff = compose(&f, &f).unwrap();
        for k in 0..=10 {
            let t = rat(k, 10);
            assert_eq!(ff.eval(&t).unwrap(), f.eval(&f.eval(&t).unwrap()).unwrap());
        }
    }

    #[test]
    fn eval_interpolates() {
        assert_eq!(bent().eval(&rat(3, 4)).unwrap(), rat(5, 8));
        assert!(bent().eval(&r(2)).is_err());
    }

    #[test]
    fn non_surjective_inverse_is_an_error() {
        let j = Interval::ints(0, 3);
        let e = PlMap::affine(&unit(), &j, r(1), r(2)).unwrap();
        assert_eq!(e.inverse().unwrap_err(), Error::NotSurjective);
        let back = e.inverse_on_image();
        assert!(compose(&back, &e.with_codomain(&e.image()).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn spec_round_trip() {
        let f = bent();
        let json = serde_json::to_string(&f.to_spec()).unwrap();
        let back: PlSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build().unwrap(), f);
    }
}
