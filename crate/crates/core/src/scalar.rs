//! Exact scalars: Gaussian rationals `Q(i)` and prime fields `F_p`.
//!
//! The two variants never mix. Arithmetic operators panic on a field
//! mismatch; every fallible entry point of the crate checks fields up front
//! and reports [`Error::FieldMismatch`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Which ground field a scalar, matrix or algebra lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Gauss,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Gauss => Scalar::Gauss(Gaussian::from_rational(Rational::from_integer(v.into()))),
            Field::Prime(p) => Scalar::Fp(Fp::new(v.rem_euclid(p as i64) as u64, p)),
        }
    }

    /// Embeds a rational number. Over `F_p` the denominator must be invertible.
    pub fn from_rational(self, q: &Rational) -> Result<Scalar> {
        match self {
            Field::Gauss => Ok(Scalar::Gauss(Gaussian::from_rational(q.clone()))),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let num = ((q.numer() % &m) + &m) % &m;
                let den = ((q.denom() % &m) + &m) % &m;
                let den = Fp::new(den.to_u64().unwrap_or(0), p);
                let num = Fp::new(num.to_u64().unwrap_or(0), p);
                let inv = den.inverse().ok_or(Error::NotAUnit)?;
                Ok(Scalar::Fp(num.mul(inv)))
            }
        }
    }

    /// The imaginary unit; only available over `Q(i)`.
    pub fn i(self) -> Option<Scalar> {
        match self {
            Field::Gauss => Some(Scalar::Gauss(Gaussian::new(Rational::zero(), Rational::one()))),
            Field::Prime(_) => None,
        }
    }

    /// Every field element, when the field is finite.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Gauss => None,
            Field::Prime(p) => Some((0..p).map(|v| Scalar::Fp(Fp::new(v, p))).collect()),
        }
    }

    pub fn descriptor(self) -> String {
        match self {
            Field::Gauss => "gauss".to_string(),
            Field::Prime(p) => format!("fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "gauss" {
            return Ok(Field::Gauss);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::parse(0, format!("bad prime in field descriptor `{s}`")))?;
            return Field::prime(p);
        }
        Err(Error::parse(0, format!("unknown field descriptor `{s}`")))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element `re + im*i` of `Q(i)`. `BigRational` keeps both parts reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        Gaussian { re, im: Rational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Gaussian::new(&self.re / &n, -&self.im / &n))
    }

    fn add(&self, o: &Self) -> Self {
        Gaussian::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &Self) -> Self {
        Gaussian::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Gaussian::from_rational(&self.re * &o.re);
        }
        Gaussian::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

/// An element of `F_p`, `value` in `[0, modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        Fp { value: value % modulus, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn check(self, o: Fp) {
        assert_eq!(self.modulus, o.modulus, "arithmetic across distinct prime moduli");
    }

    fn add(self, o: Fp) -> Fp {
        self.check(o);
        Fp::new(self.value + o.value, self.modulus)
    }

    fn sub(self, o: Fp) -> Fp {
        self.check(o);
        Fp::new(self.value + self.modulus - o.value, self.modulus)
    }

    fn mul(self, o: Fp) -> Fp {
        self.check(o);
        Fp::new(
            ((self.value as u128 * o.value as u128) % self.modulus as u128) as u64,
            self.modulus,
        )
    }

    pub fn inverse(self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        // Fermat: v^(p-2)
        let mut base = self;
        let mut exp = self.modulus - 2;
        let mut acc = Fp::new(1, self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            exp >>= 1;
        }
        Some(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Gauss(Gaussian),
    Fp(Fp),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Gauss(_) => Field::Gauss,
            Scalar::Fp(x) => Field::Prime(x.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Gauss(g) => g.is_zero(),
            Scalar::Fp(x) => x.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Gauss(g) => g.im.is_zero() && g.re.is_one(),
            Scalar::Fp(x) => x.value == 1,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Gauss(g) => g.inverse().map(Scalar::Gauss),
            Scalar::Fp(x) => x.inverse().map(Scalar::Fp),
        }
    }

    /// Complex conjugate; the identity on `F_p`.
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Gauss(g) => Scalar::Gauss(g.conj()),
            Scalar::Fp(_) => self.clone(),
        }
    }

    pub fn as_gaussian(&self) -> Option<&Gaussian> {
        match self {
            Scalar::Gauss(g) => Some(g),
            Scalar::Fp(_) => None,
        }
    }

    /// The real part when the scalar is a plain rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Gauss(g) if g.im.is_zero() => Some(&g.re),
            _ => None,
        }
    }

    pub fn same_field(&self, other: &Scalar) -> bool {
        self.field() == other.field()
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Gauss(a), Scalar::Gauss(b)) => Scalar::Gauss(a.add(b)),
            (Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(a.add(*b)),
            _ => mismatch(self, o),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Gauss(a), Scalar::Gauss(b)) => Scalar::Gauss(a.sub(b)),
            (Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(a.sub(*b)),
            _ => mismatch(self, o),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Gauss(a), Scalar::Gauss(b)) => Scalar::Gauss(a.mul(b)),
            (Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(a.mul(*b)),
            _ => mismatch(self, o),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Gauss(a) => Scalar::Gauss(Gaussian::new(-a.re.clone(), -a.im.clone())),
            Scalar::Fp(a) => Scalar::Fp(Fp::new(a.modulus - a.value, a.modulus)),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(x) => write!(f, "{} mod {}", x.value, x.modulus),
            Scalar::Gauss(g) => {
                if g.im.is_zero() {
                    return f.write_str(&fmt_rational(&g.re));
                }
                let im_abs = g.im.abs();
                let sign = if g.im.is_negative() { "-" } else { "+" };
                if g.re.is_zero() {
                    let lead = if g.im.is_negative() { "-" } else { "" };
                    write!(f, "{lead}{}*i", fmt_rational(&im_abs))
                } else {
                    write!(f, "{}{sign}{}*i", fmt_rational(&g.re), fmt_rational(&im_abs))
                }
            }
        }
    }
}

/// Parses `p/q`, an integer, or a decimal-free rational literal.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::parse(0, format!("malformed rational `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(q: &Rational) -> String {
    fmt_rational(q)
}

fn parse_imag(s: &str) -> Result<Rational> {
    // `s` is the coefficient text in front of `*i` / `i`, possibly signed or empty.
    let t = s.trim().trim_end_matches('*').trim();
    match t {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        _ => parse_rational(t),
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `v mod p`, `p/q`, `p/q+r/s*i`, `r/s*i`, `i`, `-i`.
    fn from_str(s: &str) -> Result<Scalar> {
        let s = s.trim();
        if let Some((v, p)) = s.split_once("mod") {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::parse(0, format!("malformed prime-field literal `{s}`")))?;
            let field = Field::prime(p)?;
            let v: BigInt = v
                .trim()
                .parse()
                .map_err(|_| Error::parse(0, format!("malformed prime-field literal `{s}`")))?;
            let m = BigInt::from(p);
            let v = ((v % &m) + &m) % &m;
            return Ok(field.from_i64(v.to_i64().unwrap_or(0)));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Scalar::Gauss(Gaussian::from_rational(parse_rational(s)?)));
        };
        // Split real and imaginary parts at the last sign that is not leading
        // and not part of a denominator.
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                split = Some(k);
                break;
            }
        }
        let (re, im) = match split {
            Some(k) => (parse_rational(&body[..k])?, parse_imag(&body[k..])?),
            None => (Rational::zero(), parse_imag(body)?),
        };
        Ok(Scalar::Gauss(Gaussian::new(re, im)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rationals_stay_reduced() {
        let a = Field::Gauss.from_rational(&q(2, 4)).unwrap();
        let b = Field::Gauss.from_rational(&q(-3, -6)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1/2");
    }

    #[test]
    fn prime_field_construction_checks_primality() {
        assert!(Field::prime(5).is_ok());
        assert!(matches!(Field::prime(6), Err(Error::NotPrime(6))));
        assert_eq!(Field::Prime(5).from_i64(-1).to_string(), "4 mod 5");
    }

    #[test]
    fn fp_inverse() {
        for v in 1..7 {
            let x = Field::Prime(7).from_i64(v);
            assert!((&x * &x.inverse().unwrap()).is_one());
        }
        assert!(Field::Prime(7).zero().inverse().is_none());
    }

    #[test]
    fn gaussian_inverse_and_i_squared() {
        let i = Field::Gauss.i().unwrap();
        assert_eq!(&i * &i, Field::Gauss.from_i64(-1));
        let z: Scalar = "1/2-3*i".parse().unwrap();
        assert!((&z * &z.inverse().unwrap()).is_one());
    }

    #[test]
    fn string_forms_round_trip() {
        for s in ["0", "-7", "3/4", "1/2+3/4*i", "-1/3-2*i", "5*i", "-1*i", "3 mod 5"] {
            let x: Scalar = s.parse().unwrap();
            let y: Scalar = x.to_string().parse().unwrap();
            assert_eq!(x, y, "{s}");
        }
        assert_eq!("i".parse::<Scalar>().unwrap(), Field::Gauss.i().unwrap());
        assert_eq!("-i".parse::<Scalar>().unwrap(), -Field::Gauss.i().unwrap());
        assert_eq!("1/2+3/4*i".parse::<Scalar>().unwrap().to_string(), "1/2+3/4*i");
        assert_eq!("-1/2-1/4*i".parse::<Scalar>().unwrap().to_string(), "-1/2-1/4*i");
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = Field::Gauss.one() + Field::Prime(5).one();
    }
}
