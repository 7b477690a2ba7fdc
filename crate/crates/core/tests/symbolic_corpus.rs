use std::path::PathBuf;

use innerhom::symbolic::{verify_script, GoalVerdict, ScriptReport, DEFAULT_DEPTH};

fn run(name: &str) -> ScriptReport {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scripts").join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    let report = verify_script(&text, DEFAULT_DEPTH, 11).unwrap();
    assert!(report.warnings.is_empty(), "{name}: {:?}", report.warnings);
    for g in &report.goals {
        eprintln!("{name} {} {:?} steps={:?} model={}/{}", g.name, g.verdict, g.trace().map(|t| t.steps.len()), g.model.passed, g.model.trials);
    }
    report
}

fn all_proven(name: &str) {
    let r = run(name);
    assert!(!r.goals.is_empty());
    for g in &r.goals {
        assert_eq!(g.verdict, GoalVerdict::Proven, "{name}: {}", g.name);
        assert_eq!(g.replayed, Some(true), "{name}: {}", g.name);
        assert!(g.model.all_passed(), "{name}: {} failed in {} models", g.name, g.model.trials - g.model.passed);
    }
}

#[test]
fn exchange_note_in_one_step() {
    let r = run("exchange.nc");
    assert_eq!(r.goals.len(), 1);
    let t = r.goals[0].trace().expect("proven");
    assert!(t.steps.len() <= 3);
    all_proven("exchange.nc");
}

#[test]
fn corpus_is_proven() {
    for s in ["sigma.nc", "aut_closure.nc", "hcompose_chain.nc", "hcompose_assoc.nc", "interval_square.nc", "interval_assoc.nc", "two_functor.nc"] {
        all_proven(s);
    }
}

#[test]
fn conjugator_variants() {
    let r = run("conjugator_variants.nc");
    assert_eq!(r.goal("variant_a").unwrap().verdict, GoalVerdict::Proven);
    assert!(r.goal("variant_a").unwrap().model.all_passed());
    let b1 = r.goal("variant_b1").unwrap();
    assert_eq!(b1.verdict, GoalVerdict::Unknown);
    assert!(b1.model.passed < b1.model.trials);
}

#[test]
fn associativity_typo() {
    let r = run("leading_factor.nc");
    assert_eq!(r.goal("d_reading").unwrap().verdict, GoalVerdict::Proven);
    assert_eq!(r.goal("s_reading").unwrap().verdict, GoalVerdict::Refuted);
}

#[test]
fn literal_conclusion_is_not_derivable() {
    let r = run("two_functor_literal.nc");
    for g in &r.goals {
        assert_eq!(g.verdict, GoalVerdict::Unknown, "{}", g.name);
        assert!(g.model.passed < g.model.trials);
    }
}
