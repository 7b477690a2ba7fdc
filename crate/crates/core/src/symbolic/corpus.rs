//! The shipped identity scripts, embedded so runs do not depend on the working directory.

use super::script::GoalVerdict;

pub const CORPUS: &[(&str, &str)] = &[
    ("exchange.nc", include_str!("../../scripts/exchange.nc")),
    ("sigma.nc", include_str!("../../scripts/sigma.nc")),
    ("aut_closure.nc", include_str!("../../scripts/aut_closure.nc")),
    ("hcompose_chain.nc", include_str!("../../scripts/hcompose_chain.nc")),
    ("conjugator_variants.nc", include_str!("../../scripts/conjugator_variants.nc")),
    ("hcompose_assoc.nc", include_str!("../../scripts/hcompose_assoc.nc")),
    ("interval_square.nc", include_str!("../../scripts/interval_square.nc")),
    ("interval_assoc.nc", include_str!("../../scripts/interval_assoc.nc")),
    ("leading_factor.nc", include_str!("../../scripts/leading_factor.nc")),
    ("two_functor.nc", include_str!("../../scripts/two_functor.nc")),
    ("two_functor_literal.nc", include_str!("../../scripts/two_functor_literal.nc")),
];

/// Goals that are expected not to be proven; every other corpus goal should be.
pub const NOT_PROVEN: &[(&str, &str, GoalVerdict)] = &[
    ("conjugator_variants.nc", "variant_b1", GoalVerdict::Unknown),
    ("leading_factor.nc", "s_reading", GoalVerdict::Refuted),
    ("two_functor_literal.nc", "literal", GoalVerdict::Unknown),
    ("two_functor_literal.nc", "exchange_at_quotient", GoalVerdict::Unknown),
];

pub fn expected_verdict(script: &str, goal: &str) -> GoalVerdict {
    NOT_PROVEN
        .iter()
        .find(|(s, g, _)| *s == script && *g == goal)
        .map(|(_, _, v)| *v)
        .unwrap_or(GoalVerdict::Proven)
}

pub fn script(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
