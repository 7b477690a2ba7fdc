//! Intervals, piecewise-linear embeddings, interior-supported diffeomorphisms
//! and their 2-cells, boundary germs, and the Lorentz subgroup on `[-1, 1]`.

mod cells;
mod diffeo;
mod emb;
mod germ;
mod pl;

pub use cells::{
    check_interval_two_cell, interval_associativity, interval_hcompose, interval_vcompose, IntervalAssociativity,
    IntervalTwoCell, PointCounterexample,
};
pub use diffeo::{transport, InteriorDiffeo};
pub use emb::{pi0_emb, EmbeddingInvariant, Pi0Emb};
pub use germ::{lorentz, lorentz_flow_check, BoundaryGerm, Endpoint, LorentzCheck, MappingClass, MobiusMap};
pub use diffeo::max_collar;
pub use pl::{compose, PlMap, PlSpec};

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};

pub type Embedding = PlMap;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// A compact oriented interval `[left, right]` with `left < right`.
#[derive(Clone)]
pub struct Interval {
    left: Rational,
    right: Rational,
    label: String,
}

impl Interval {
    pub fn new(left: Rational, right: Rational) -> Result<Interval> {
        Interval::labelled(left, right, "")
    }

    pub fn labelled(left: Rational, right: Rational, label: &str) -> Result<Interval> {
        if left >= right {
            return Err(Error::InvalidPl(format!(
                "degenerate interval [{}, {}]",
                format_rational(&left),
                format_rational(&right)
            )));
        }
        Ok(Interval { left, right, label: label.to_string() })
    }

    /// `[a, b]` for integers; panics when `a >= b`.
    pub fn ints(a: i64, b: i64) -> Interval {
        Interval::new(rat(a, 1), rat(b, 1)).expect("a < b")
    }

    /// The Lorentz interval `[-1, 1]`.
    pub fn unit_symmetric() -> Interval {
        Interval::ints(-1, 1)
    }

    pub fn left(&self) -> &Rational {
        &self.left
    }

    pub fn right(&self) -> &Rational {
        &self.right
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn length(&self) -> Rational {
        &self.right - &self.left
    }

    pub fn contains(&self, t: &Rational) -> bool {
        &self.left <= t && t <= &self.right
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.left <= other.left && other.right <= self.right
    }

    pub fn midpoint(&self) -> Rational {
        (&self.left + &self.right) / Rational::from_integer(2.into())
    }
}

// labels are documentation only
impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.left == other.left && self.right == other.right
    }
}

impl Eq for Interval {}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.left), format_rational(&self.right))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.left), format_rational(&self.right)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [l, r] = <[String; 2]>::deserialize(d)?;
        let l = parse_rational(&l).map_err(serde::de::Error::custom)?;
        let r = parse_rational(&r).map_err(serde::de::Error::custom)?;
        Interval::new(l, r).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn is_positive(q: &Rational) -> bool {
    q > &Rational::zero()
}

pub(crate) fn one() -> Rational {
    Rational::one()
}
