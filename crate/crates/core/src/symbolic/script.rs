use serde::Serialize;
use serde_json::{json, Value};

use super::expr::Expr;
use super::instantiate::{model_check, ModelCheck};
use super::parse::{parse_script, Direction, Statement};
use super::rewrite::{prove_equal, replay, Outcome, Rule, Trace};
use crate::error::Result;

pub const MODEL_TRIALS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GoalVerdict {
    Proven,
    Refuted,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct GoalReport {
    pub name: String,
    pub lhs: Expr,
    pub rhs: Expr,
    pub verdict: GoalVerdict,
    pub outcome: Outcome,
    /// `Some(ok)` for proven goals.
    pub replayed: Option<bool>,
    /// Random matrix models of the assumptions; run for every goal.
    pub model: ModelCheck,
}

impl GoalReport {
    pub fn trace(&self) -> Option<&Trace> {
        match &self.outcome {
            Outcome::Proven(t) => Some(t),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "name": self.name,
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "verdict": self.verdict,
            "model": self.model,
        });
        match &self.outcome {
            Outcome::Proven(t) => {
                v["steps"] = json!(t.steps.len());
                v["replayed"] = json!(self.replayed);
                v["trace"] = trace_json(t);
            }
            Outcome::Refuted { lhs, rhs } => {
                v["normal_forms"] = json!([lhs.to_string(), rhs.to_string()]);
            }
            Outcome::Unknown { explored } => v["explored"] = json!(explored),
        }
        v
    }
}

pub fn trace_json(t: &Trace) -> Value {
    json!({
        "lhs": t.lhs.to_string(),
        "rhs": t.rhs.to_string(),
        "steps": t.steps.iter().map(|s| json!({
            "side": s.side,
            "rule": s.rule_name,
            "position": s.position,
            "context": s.context,
            "before": s.before.to_string(),
            "after": s.after.to_string(),
        })).collect::<Vec<_>>(),
    })
}

#[derive(Clone, Debug, Default)]
pub struct ScriptReport {
    pub rules: Vec<Rule>,
    pub goals: Vec<GoalReport>,
    pub warnings: Vec<String>,
}

impl ScriptReport {
    pub fn goal(&self, name: &str) -> Option<&GoalReport> {
        self.goals.iter().find(|g| g.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "goals": self.goals.iter().map(GoalReport::to_json).collect::<Vec<_>>(),
            "warnings": self.warnings,
        })
    }
}

pub fn rules_of(statements: &[Statement]) -> Result<Vec<Rule>> {
    let mut rules = Vec::new();
    let mut k = 0;
    for s in statements {
        if let Statement::Assume { name, lhs, rhs, direction, .. } = s {
            k += 1;
            let name = name.clone().unwrap_or_else(|| format!("h{k}"));
            let r = match direction {
                Direction::LeftToRight => Rule::new(&name, lhs, rhs)?,
                Direction::RightToLeft => Rule::new(&name, rhs, lhs)?,
            };
            rules.push(r.inverted());
            rules.insert(rules.len() - 1, r);
        }
    }
    Ok(rules)
}

pub fn verify_script(text: &str, depth: usize, seed: u64) -> Result<ScriptReport> {
    verify_script_with(text, depth, seed, MODEL_TRIALS)
}

pub fn verify_script_with(text: &str, depth: usize, seed: u64, trials: usize) -> Result<ScriptReport> {
    let (statements, warnings) = parse_script(text)?;
    let rules = rules_of(&statements)?;
    let mut goals = Vec::new();
    let mut k = 0;
    for s in &statements {
        let Statement::Prove { name, lhs, rhs, .. } = s else { continue };
        k += 1;
        let outcome = prove_equal(lhs, rhs, &rules, depth);
        let verdict = match &outcome {
            Outcome::Proven(_) => GoalVerdict::Proven,
            Outcome::Refuted { .. } => GoalVerdict::Refuted,
            Outcome::Unknown { .. } => GoalVerdict::Unknown,
        };
        let replayed = match &outcome {
            Outcome::Proven(t) => Some(replay(t, &rules).is_ok()),
            _ => None,
        };
        let model = model_check(&statements, lhs, rhs, seed.wrapping_add(k), trials)?;
        goals.push(GoalReport {
            name: name.clone().unwrap_or_else(|| format!("goal{k}")),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            verdict,
            outcome,
            replayed,
            model,
        });
    }
    Ok(ScriptReport { rules, goals, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_script() {
        let r = verify_script("   # nothing\n", 8, 0).unwrap();
        assert!(r.goals.is_empty());
    }

    #[test]
    fn exchange_note() {
        let text = "symbols a b x; homs phi0 phi1;\n\
                    cell a b : phi0 -> phi1;\n\
                    assume def: phi0(?x) = b sigma[phi1(a)](phi1(?x)) b^-1 -> lr;\n\
                    prove exchange: phi1(a) b^-1 = b^-1 phi0(a);";
        let r = verify_script(text, 3, 1).unwrap();
        assert!(r.warnings.is_empty(), "{:?}", r.warnings);
        let g = r.goal("exchange").unwrap();
        assert_eq!(g.verdict, GoalVerdict::Proven);
        assert_eq!(g.replayed, Some(true));
        assert!(g.model.all_passed());
    }

    #[test]
    fn unsatisfied_assumption_is_a_model_error() {
        let text = "symbols a b; assume a = b; prove a b = b a;";
        assert!(matches!(verify_script(text, 4, 0), Err(crate::error::Error::Model(_))));
    }

    #[test]
    fn undeclared_names_warn() {
        let r = verify_script("symbols a; homs f; prove f(a) = g(b);", 2, 0).unwrap();
        assert_eq!(r.warnings.len(), 2);
        assert_eq!(r.goals[0].verdict, GoalVerdict::Refuted);
    }

    #[test]
    fn lets_only_shape_the_model() {
        let text = "symbols a b w; let w = a b; prove w b^-1 = a;";
        let r = verify_script(text, 2, 0).unwrap();
        assert_eq!(r.goals[0].verdict, GoalVerdict::Refuted);
        assert!(r.goals[0].model.all_passed());
    }
}
