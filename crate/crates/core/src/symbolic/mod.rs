//! Words over units and hom applications, with hypothesis-directed rewriting.

pub mod corpus;
pub mod expr;
pub mod instantiate;
pub mod parse;
pub mod rewrite;
pub mod script;
pub mod word;

pub use expr::Expr;
pub use instantiate::{model_check, Model, ModelCheck};
pub use parse::{parse, parse_script, parse_with, Direction, Statement, SymbolTable};
pub use rewrite::{apply_at, prove_equal, replay, Outcome, Rule, Side, Step, Trace, DEFAULT_DEPTH};
pub use script::{verify_script, verify_script_with, GoalReport, GoalVerdict, ScriptReport};
pub use word::{normalize, Base, Letter, Word};
