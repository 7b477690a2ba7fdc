//! Command-line dispatch. `run` is the whole program; `main` only forwards argv.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{AlgHom, Algebra, AlgebraSpec, HomSpec, Unit};
use crate::error::{Error, Result};
use crate::homgroupoid::{
    aut_check, check_two_cell, conjugating_unit, hcompose, interchange_probe, intertwiners, vcompose, Checked,
    Counterexample, Grid, TwoCell,
};
use crate::interval::{
    check_interval_two_cell, compose, interval_hcompose, lorentz, lorentz_flow_check, pi0_emb, transport,
    BoundaryGerm, EmbeddingInvariant, InteriorDiffeo, Interval, IntervalTwoCell, MappingClass, PlMap, PlSpec,
    PointCounterexample,
};
use crate::matrix::Matrix;
use crate::quantization::{
    antihom_check, bogoliubov, induced_hom, inner_witness, quantize, two_functor_check, CarAlgebra, ModularData,
    SiteCell, SiteEmbedding, SitePermutation, WitnessCache,
};
use crate::scalar::{format_rational, parse_rational, Field, Rational};
use crate::selftest::selftest;
use crate::symbolic::{verify_script_with, GoalVerdict, DEFAULT_DEPTH};
use crate::verdict::Verdict;

pub const DEFAULT_SEED: u64 = 7;

#[derive(Parser, Debug)]
#[command(name = "innerhom", version, about = "Exact checks for algebras up to inner automorphism")]
struct Cli {
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Ground field override: `gauss` or `fp:<p>`.
    #[arg(long, global = true)]
    field: Option<Field>,
    /// Write the verdict here instead of stdout.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// Record wall-clock time in the verdict (breaks byte-reproducibility).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hom groupoids of algebras.
    #[command(subcommand)]
    Alg(AlgCmd),
    /// Embeddings, interior diffeomorphisms and their 2-cells.
    #[command(subcommand)]
    Interval(IntervalCmd),
    /// The lattice free fermion.
    #[command(subcommand)]
    Fermion(FermionCmd),
    /// Finite-dimensional modular data.
    #[command(subcommand)]
    Modular(ModularCmd),
    /// Bounded rewriting over noncommutative words.
    #[command(subcommand)]
    Symbolic(SymbolicCmd),
    /// Seeded sweep over every law the library checks.
    Selftest,
}

#[derive(Args, Debug)]
struct Algebras {
    /// Source algebra.
    #[arg(long = "a")]
    a: PathBuf,
    /// Target algebra (defaults to the source).
    #[arg(long = "b")]
    b: Option<PathBuf>,
    /// Third algebra, for horizontal composites (defaults to the target).
    #[arg(long = "c")]
    c: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum AlgCmd {
    CheckTwoCell {
        #[command(flatten)]
        algebras: Algebras,
        #[arg(long)]
        cell: PathBuf,
    },
    /// `f` then `g`, both in `Hom(A,B)`.
    Vcompose {
        #[command(flatten)]
        algebras: Algebras,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// `f` in `Hom(A,B)`, `g` in `Hom(B,C)`.
    Hcompose {
        #[command(flatten)]
        algebras: Algebras,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    Pi0 {
        #[command(flatten)]
        algebras: Algebras,
        #[arg(long)]
        hom0: PathBuf,
        #[arg(long)]
        hom1: PathBuf,
    },
    /// Whether `(a, b): φ → φ`, compared with `b⁻¹φ(a)` central.
    AutCheck {
        #[command(flatten)]
        algebras: Algebras,
        #[arg(long)]
        hom: PathBuf,
        #[arg(long)]
        unit_a: PathBuf,
        #[arg(long)]
        unit_b: PathBuf,
    },
    /// `f, f2` in `Hom(A,B)`, `g, g2` in `Hom(B,C)`.
    Interchange {
        #[command(flatten)]
        algebras: Algebras,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        f2: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        g2: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum IntervalCmd {
    /// `f ∘ g`.
    Compose {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// `c^ε` and the square `c^ε ∘ ε = ε ∘ c`.
    Transport {
        #[arg(long)]
        c: PathBuf,
        #[arg(long)]
        eps: PathBuf,
    },
    CellCheck {
        #[arg(long)]
        cell: PathBuf,
    },
    Hcompose {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// Boundary germs of a self-homeomorphism.
    Class {
        #[arg(long)]
        f: PathBuf,
    },
    /// The Lorentz map in the `u` chart, optionally against a second parameter.
    Lorentz {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        u2: Option<String>,
    },
    Pi0 {
        #[arg(long)]
        eps0: PathBuf,
        #[arg(long)]
        eps1: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum FermionCmd {
    Build {
        #[arg(long)]
        resolution: usize,
        /// `a,b` with rational endpoints.
        #[arg(long, allow_hyphen_values = true)]
        interval: String,
    },
    /// The homomorphism induced by a site-compatible embedding.
    Induce {
        #[arg(long)]
        eps: PathBuf,
        #[arg(long)]
        resolution: usize,
        #[arg(long)]
        target_resolution: usize,
    },
    /// The inner witness of a site-compatible interior diffeomorphism.
    Witness {
        #[arg(long)]
        diffeo: PathBuf,
        #[arg(long)]
        resolution: usize,
    },
    /// `𝔞(π0 ∘ π1)` against `𝔞(π1)𝔞(π0)`.
    Antihom {
        #[arg(long)]
        pi0: String,
        #[arg(long)]
        pi1: String,
    },
    TwoFunctor {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum ModularCmd {
    Kms {
        #[arg(long)]
        rho: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum SymbolicCmd {
    Prove {
        script: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Full report with rewrite traces.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Random instantiations per goal.
        #[arg(long, default_value_t = crate::symbolic::script::MODEL_TRIALS)]
        trials: usize,
    },
}

/// `{hom0, hom1, a, b}`: a candidate 2-cell `(a, b): hom0 → hom1`.
#[derive(Deserialize)]
struct CellSpec {
    hom0: HomSpec,
    hom1: HomSpec,
    a: Matrix,
    b: Matrix,
}

#[derive(Deserialize)]
struct IntervalCellSpec {
    src: PlSpec,
    dst: PlSpec,
    a: PlSpec,
    b: PlSpec,
}

/// `src` lists the image of each source site; `dst` is completed as `b ∘ src ∘ a⁻¹`.
#[derive(Deserialize)]
struct SiteCellSpec {
    src: Vec<usize>,
    target_sites: usize,
    a: Vec<usize>,
    b: Vec<usize>,
}

struct Ctx {
    seed: u64,
    field: Option<Field>,
}

/// Parses `argv` (program name first), runs, writes the verdict and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let ctx = Ctx { seed: cli.seed, field: cli.field };
    let start = Instant::now();
    let mut verdict = dispatch(&cli.command, &ctx).unwrap_or_else(|e| Verdict::from_error(&e));
    if cli.timing {
        verdict.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    eprintln!("{}", summary(&verdict));
    let out = verdict.to_json();
    match &cli.json_out {
        Some(path) => {
            if let Err(e) = fs::write(path, format!("{out}\n")) {
                eprintln!("cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => println!("{out}"),
    }
    verdict.exit_code()
}

fn summary(v: &Verdict) -> String {
    let status = serde_json::to_value(v.status).expect("status serializes");
    match &v.message {
        Some(m) => format!("{}: {m}", status.as_str().unwrap_or("?")),
        None => status.as_str().unwrap_or("?").to_string(),
    }
}

fn dispatch(cmd: &Command, ctx: &Ctx) -> Result<Verdict> {
    match cmd {
        Command::Alg(c) => alg(c, ctx),
        Command::Interval(c) => interval(c),
        Command::Fermion(c) => {
            gauss_only(ctx)?;
            fermion(c)
        }
        Command::Modular(ModularCmd::Kms { rho, x, y }) => {
            gauss_only(ctx)?;
            kms(rho, x, y)
        }
        Command::Symbolic(SymbolicCmd::Prove { script, depth, trace, trials }) => {
            symbolic(script, *depth, trace.as_deref(), *trials, ctx.seed)
        }
        Command::Selftest => {
            let report = selftest(ctx.seed);
            let value = serde_json::to_value(&report).expect("report serializes");
            let failed: Vec<&str> = report.suites.iter().filter(|s| s.failures > 0).map(|s| s.name.as_str()).collect();
            let v = Verdict::decide(report.passed, value);
            Ok(if failed.is_empty() { v } else { v.with_message(format!("failing suites: {}", failed.join(", "))) })
        }
    }
}

fn gauss_only(ctx: &Ctx) -> Result<()> {
    match ctx.field {
        None | Some(Field::Gauss) => Ok(()),
        Some(f) => Err(Error::Input(format!("this subcommand works over gauss only, not {f}"))),
    }
}

// ---- loading ----

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Input(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column())))
}

/// `line:col` of a byte offset, both 1-based.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |k| before.len() - k - 1) + 1;
    (line, col)
}

fn load_algebra(path: &Path, ctx: &Ctx) -> Result<Arc<Algebra>> {
    let mut spec: AlgebraSpec = load(path)?;
    if let Some(f) = ctx.field {
        spec.field = f.descriptor();
    }
    spec.build().map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

struct Algs {
    a: Arc<Algebra>,
    b: Arc<Algebra>,
    c: Arc<Algebra>,
}

fn algebras(paths: &Algebras, ctx: &Ctx) -> Result<Algs> {
    let a = load_algebra(&paths.a, ctx)?;
    let b = match &paths.b {
        Some(p) => load_algebra(p, ctx)?,
        None => a.clone(),
    };
    let c = match &paths.c {
        Some(p) => load_algebra(p, ctx)?,
        None => b.clone(),
    };
    Ok(Algs { a, b, c })
}

fn load_hom(path: &Path, src: &Arc<Algebra>, dst: &Arc<Algebra>) -> Result<AlgHom> {
    let spec: HomSpec = load(path)?;
    spec.build(src, dst).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_unit(path: &Path, alg: &Arc<Algebra>) -> Result<Unit> {
    let m: Matrix = load(path)?;
    Unit::new(alg, m).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_cell(path: &Path, src: &Arc<Algebra>, dst: &Arc<Algebra>) -> Result<Checked<TwoCell>> {
    let spec: CellSpec = load(path)?;
    let at = |e: Error| Error::Input(format!("{}: {e}", path.display()));
    let phi0 = spec.hom0.build(src, dst).map_err(at)?;
    let phi1 = spec.hom1.build(src, dst).map_err(at)?;
    let a = Unit::new(src, spec.a).map_err(at)?;
    let b = Unit::new(dst, spec.b).map_err(at)?;
    check_two_cell(&phi0, &phi1, &a, &b)
}

/// A cell that must certify before it can be composed.
fn require_cell(path: &Path, src: &Arc<Algebra>, dst: &Arc<Algebra>) -> Result<std::result::Result<TwoCell, Verdict>> {
    Ok(match load_cell(path, src, dst)? {
        Checked::Valid(c) => Ok(c),
        Checked::Invalid(cx) => {
            Err(Verdict::refuted(json!({ "input": path.display().to_string(), "failure": counterexample_json(&cx) }))
                .with_message(format!("{} is not a 2-cell", path.display())))
        }
    })
}

macro_rules! cell_or_return {
    ($e:expr) => {
        match $e? {
            Ok(c) => c,
            Err(v) => return Ok(v),
        }
    };
}

fn load_pl(path: &Path) -> Result<PlMap> {
    let spec: PlSpec = load(path)?;
    spec.build().map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn diffeo_of(spec: &PlSpec) -> Result<InteriorDiffeo> {
    let map = spec.build()?;
    match spec.collar()? {
        Some(c) => InteriorDiffeo::new(map, c),
        None => InteriorDiffeo::from_map(map),
    }
}

fn load_diffeo(path: &Path) -> Result<InteriorDiffeo> {
    let spec: PlSpec = load(path)?;
    diffeo_of(&spec).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn parse_interval(s: &str) -> Result<Interval> {
    let (l, r) = s.split_once(',').ok_or_else(|| Error::Input(format!("interval `{s}` is not `a,b`")))?;
    Interval::new(parse_rational(l.trim())?, parse_rational(r.trim())?)
}

fn parse_perm(s: &str) -> Result<SitePermutation> {
    let image = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Input(format!("bad site index `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    SitePermutation::new(image)
}

// ---- JSON payloads ----

fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn unit_json(u: &Unit) -> Value {
    json!(u.element())
}

fn cell_json(c: &TwoCell) -> Value {
    json!({ "a": unit_json(c.a()), "b": unit_json(c.b()) })
}

fn counterexample_json(c: &Counterexample) -> Value {
    json!({ "basis_index": c.basis_index, "lhs": c.lhs, "rhs": c.rhs })
}

fn point_json(c: &PointCounterexample) -> Value {
    json!({ "point": q(&c.point), "lhs": q(&c.lhs), "rhs": q(&c.rhs) })
}

fn pl_json(m: &PlMap) -> Value {
    serde_json::to_value(m.to_spec()).expect("specs serialize")
}

fn diffeo_json(d: &InteriorDiffeo) -> Value {
    let mut spec = d.map().to_spec();
    spec.collar = Some(format_rational(d.collar()));
    serde_json::to_value(spec).expect("specs serialize")
}

fn interval_cell_json(c: &IntervalTwoCell) -> Value {
    json!({ "src": pl_json(c.src()), "dst": pl_json(c.dst()), "a": diffeo_json(c.a()), "b": diffeo_json(c.b()) })
}

fn germ_json(g: &BoundaryGerm) -> Value {
    json!({ "point": q(g.point()), "matrix": g.matrix().iter().map(q).collect::<Vec<_>>(), "derivative": q(&g.derivative()) })
}

fn class_json(c: &MappingClass) -> Value {
    json!({ "left": germ_json(&c.left), "right": germ_json(&c.right), "trivial": c.is_identity() })
}

fn invariant_json(i: &EmbeddingInvariant) -> Value {
    json!({ "left": i.left.as_ref().map(q), "right": i.right.as_ref().map(q) })
}

// ---- alg ----

fn alg(cmd: &AlgCmd, ctx: &Ctx) -> Result<Verdict> {
    match cmd {
        AlgCmd::CheckTwoCell { algebras: p, cell } => {
            let k = algebras(p, ctx)?;
            Ok(match load_cell(cell, &k.a, &k.b)? {
                Checked::Valid(c) => Verdict::verified(json!({ "cell": cell_json(&c), "conjugator": c.conjugator() })),
                Checked::Invalid(cx) => Verdict::refuted(counterexample_json(&cx)),
            })
        }
        AlgCmd::Vcompose { algebras: p, f, g } => {
            let k = algebras(p, ctx)?;
            let f = cell_or_return!(require_cell(f, &k.a, &k.b));
            let g = cell_or_return!(require_cell(g, &k.a, &k.b));
            match vcompose(&f, &g) {
                Ok(c) => Ok(Verdict::verified(cell_json(&c))),
                Err(Error::EndpointMismatch(m)) => Ok(Verdict::refuted(json!({ "endpoints": m }))),
                Err(e) => Err(e),
            }
        }
        AlgCmd::Hcompose { algebras: p, f, g } => {
            let k = algebras(p, ctx)?;
            let f = cell_or_return!(require_cell(f, &k.a, &k.b));
            let g = cell_or_return!(require_cell(g, &k.b, &k.c));
            let c = hcompose(&f, &g)?;
            Ok(Verdict::verified(cell_json(&c)))
        }
        AlgCmd::Pi0 { algebras: p, hom0, hom1 } => {
            let k = algebras(p, ctx)?;
            let h0 = load_hom(hom0, &k.a, &k.b)?;
            let h1 = load_hom(hom1, &k.a, &k.b)?;
            match conjugating_unit(&h0, &h1, ctx.seed)? {
                Some((u, cell)) => Ok(Verdict::verified(json!({ "unit": unit_json(&u), "cell": cell_json(&cell) }))),
                None => {
                    let space = intertwiners(&h0, &h1)?;
                    if space.is_empty() || matches!(k.b.field(), Field::Prime(_)) {
                        Ok(Verdict::refuted(json!({ "intertwiner_dim": space.len(), "units": 0 })))
                    } else {
                        Ok(Verdict::unknown(format!(
                            "{}-dimensional intertwiner space, no invertible element found",
                            space.len()
                        )))
                    }
                }
            }
        }
        AlgCmd::AutCheck { algebras: p, hom, unit_a, unit_b } => {
            let k = algebras(p, ctx)?;
            let phi = load_hom(hom, &k.a, &k.b)?;
            let a = load_unit(unit_a, &k.a)?;
            let b = load_unit(unit_b, &k.b)?;
            let r = aut_check(&phi, &a, &b)?;
            if !r.criterion_agrees() {
                return Err(Error::Internal("cell test and centrality test disagree".into()));
            }
            let payload = json!({ "is_cell": r.is_cell, "central": r.central });
            Ok(match &r.counterexample {
                Some(cx) if !r.is_cell => Verdict::refuted(json!({ "is_cell": false, "central": r.central, "failure": counterexample_json(cx) })),
                _ => Verdict::decide(r.is_cell, payload),
            })
        }
        AlgCmd::Interchange { algebras: p, f, f2, g, g2 } => {
            let k = algebras(p, ctx)?;
            let grid = Grid {
                f: cell_or_return!(require_cell(f, &k.a, &k.b)),
                f2: cell_or_return!(require_cell(f2, &k.a, &k.b)),
                g: cell_or_return!(require_cell(g, &k.b, &k.c)),
                g2: cell_or_return!(require_cell(g2, &k.b, &k.c)),
            };
            let r = interchange_probe(&grid)?;
            let payload = json!({
                "vertical_first": cell_json(&r.vertical_first),
                "horizontal_first": cell_json(&r.horizontal_first),
                "strict_equal": r.strict_equal,
                "both_certify": r.both_certify,
                "equal_up_to_centralizer": r.equal_up_to_centralizer,
            });
            Ok(Verdict::decide(r.strict_equal, payload))
        }
    }
}

// ---- interval ----

fn interval(cmd: &IntervalCmd) -> Result<Verdict> {
    match cmd {
        IntervalCmd::Compose { f, g } => {
            let h = compose(&load_pl(f)?, &load_pl(g)?)?;
            Ok(Verdict::verified(pl_json(&h)))
        }
        IntervalCmd::Transport { c, eps } => {
            let c = load_diffeo(c)?;
            let eps = load_pl(eps)?;
            let ce = transport(&c, &eps)?;
            Ok(match check_interval_two_cell(&eps, &eps, &c, &ce)? {
                Checked::Valid(_) => Verdict::verified(diffeo_json(&ce)),
                Checked::Invalid(cx) => Verdict::refuted(point_json(&cx)),
            })
        }
        IntervalCmd::CellCheck { cell } => {
            let spec: IntervalCellSpec = load(cell)?;
            let at = |e: Error| Error::Input(format!("{}: {e}", cell.display()));
            let (src, dst) = (spec.src.build().map_err(at)?, spec.dst.build().map_err(at)?);
            let (a, b) = (diffeo_of(&spec.a).map_err(at)?, diffeo_of(&spec.b).map_err(at)?);
            Ok(match check_interval_two_cell(&src, &dst, &a, &b)? {
                Checked::Valid(c) => Verdict::verified(interval_cell_json(&c)),
                Checked::Invalid(cx) => Verdict::refuted(point_json(&cx)),
            })
        }
        IntervalCmd::Hcompose { f, g } => {
            let mut cells = Vec::new();
            for path in [f, g] {
                let spec: IntervalCellSpec = load(path)?;
                let at = |e: Error| Error::Input(format!("{}: {e}", path.display()));
                let (src, dst) = (spec.src.build().map_err(at)?, spec.dst.build().map_err(at)?);
                let (a, b) = (diffeo_of(&spec.a).map_err(at)?, diffeo_of(&spec.b).map_err(at)?);
                match check_interval_two_cell(&src, &dst, &a, &b)? {
                    Checked::Valid(c) => cells.push(c),
                    Checked::Invalid(cx) => {
                        return Ok(Verdict::refuted(json!({ "input": path.display().to_string(), "failure": point_json(&cx) })))
                    }
                }
            }
            let c = interval_hcompose(&cells[0], &cells[1])?;
            Ok(Verdict::verified(interval_cell_json(&c)))
        }
        IntervalCmd::Class { f } => {
            let c = MappingClass::of_pl(&load_pl(f)?)?;
            Ok(Verdict::verified(class_json(&c)))
        }
        IntervalCmd::Lorentz { u, u2 } => {
            let u = parse_rational(u)?;
            let l = lorentz(&u)?;
            let one = Rational::from_integer(1.into());
            let mut payload = json!({
                "u": q(&u),
                "matrix": l.matrix().iter().map(q).collect::<Vec<_>>(),
                "derivative_plus": q(&l.derivative(&one)),
                "derivative_minus": q(&l.derivative(&-one.clone())),
                "class": class_json(&l.mapping_class()),
            });
            let mut ok = true;
            if let Some(u2) = u2 {
                let chk = lorentz_flow_check(&u, &parse_rational(u2)?)?;
                payload["composite_u"] = q(&chk.u3);
                payload["group_law"] = json!(chk.group_law);
                ok = chk.group_law;
            }
            Ok(Verdict::decide(ok, payload))
        }
        IntervalCmd::Pi0 { eps0, eps1 } => {
            let r = pi0_emb(&load_pl(eps0)?, &load_pl(eps1)?)?;
            let inv = json!([invariant_json(&r.invariants[0]), invariant_json(&r.invariants[1])]);
            Ok(match &r.witness {
                Some(w) => Verdict::verified(json!({ "invariants": inv, "cell": interval_cell_json(w) })),
                None => Verdict::refuted(json!({ "invariants": inv })),
            })
        }
    }
}

// ---- fermion ----

fn site_cell(spec: &SiteCellSpec) -> Result<SiteCell> {
    SiteCell::completing(
        SiteEmbedding::new(spec.src.clone(), spec.target_sites)?,
        SitePermutation::new(spec.a.clone())?,
        SitePermutation::new(spec.b.clone())?,
    )
}

fn opt_scalar(s: &Option<crate::scalar::Scalar>) -> Value {
    s.as_ref().map_or(Value::Null, |x| Value::String(x.to_string()))
}

fn fermion(cmd: &FermionCmd) -> Result<Verdict> {
    match cmd {
        FermionCmd::Build { resolution, interval } => {
            let car = quantize(&parse_interval(interval)?, *resolution)?;
            let n = car.generators().first().map_or(1, |g| g.rows());
            Ok(Verdict::verified(json!({
                "interval": car.sites().interval(),
                "resolution": resolution,
                "sites": car.sites().sites().iter().map(q).collect::<Vec<_>>(),
                "generators": car.generators().len(),
                "matrix_size": n,
                "algebra_dim": car.algebra().dim(),
            })))
        }
        FermionCmd::Induce { eps, resolution, target_resolution } => {
            let eps = load_pl(eps)?;
            let src = quantize(eps.domain(), *resolution)?;
            let tgt = quantize(eps.codomain(), *target_resolution)?;
            match induced_hom(&eps, &src, &tgt) {
                Ok(h) => {
                    let site_map = SiteEmbedding::from_pl(&eps, src.sites(), tgt.sites())?;
                    let images = src.generators().iter().map(|g| h.apply(g)).collect::<Result<Vec<_>>>()?;
                    Ok(Verdict::verified(json!({ "site_map": site_map.image(), "generator_images": images })))
                }
                Err(Error::SiteIncompatible(s)) => Ok(Verdict::refuted(json!({ "incompatible_site": s }))),
                Err(e) => Err(e),
            }
        }
        FermionCmd::Witness { diffeo, resolution } => {
            let a = load_diffeo(diffeo)?;
            let car = quantize(a.interval(), *resolution)?;
            match bogoliubov(&a, &car) {
                Ok((perm, alpha)) => {
                    let w = inner_witness(&alpha)?;
                    Ok(Verdict::verified(json!({ "permutation": perm.image(), "unit": unit_json(&w.unit) })))
                }
                Err(Error::SiteIncompatible(s)) => Ok(Verdict::refuted(json!({ "incompatible_site": s }))),
                Err(e) => Err(e),
            }
        }
        FermionCmd::Antihom { pi0, pi1 } => {
            let (p0, p1) = (parse_perm(pi0)?, parse_perm(pi1)?);
            let car = CarAlgebra::on_sites(p0.len())?;
            let r = antihom_check(&p0, &p1, &car)?;
            let payload = json!({
                "composite": unit_json(&r.composite),
                "on_the_nose": r.on_the_nose,
                "reversed_scalar": opt_scalar(&r.reversed_scalar),
                "same_order_scalar": opt_scalar(&r.same_order_scalar),
            });
            Ok(Verdict::decide(r.reversed_scalar.is_some(), payload))
        }
        FermionCmd::TwoFunctor { f, g } => {
            let f = site_cell(&load(f)?)?;
            let g = site_cell(&load(g)?)?;
            let cars = [
                CarAlgebra::on_sites(f.src().source_len())?,
                CarAlgebra::on_sites(f.src().target_len())?,
                CarAlgebra::on_sites(g.src().target_len())?,
            ];
            let mut cache = WitnessCache::default();
            let r = two_functor_check(&f, &g, [&cars[0], &cars[1], &cars[2]], &mut cache)?;
            let ok = r.images_certified && r.exchanged_scalar.is_some() && r.diagram_scalar.is_some() && r.hcompose_up_to_center;
            Ok(Verdict::decide(
                ok,
                json!({
                    "images_certified": r.images_certified,
                    "exchanged_scalar": opt_scalar(&r.exchanged_scalar),
                    "diagram_scalar": opt_scalar(&r.diagram_scalar),
                    "literal_scalar": opt_scalar(&r.literal_scalar),
                    "literal_on_the_nose": r.literal_on_the_nose,
                    "hcompose_up_to_center": r.hcompose_up_to_center,
                    "hcompose_on_the_nose": r.hcompose_on_the_nose,
                    "b_commute": r.b_commute,
                }),
            ))
        }
    }
}

fn kms(rho: &Path, x: &Path, y: &Path) -> Result<Verdict> {
    let data = ModularData::new(load(rho)?)?;
    let (x, y): (Matrix, Matrix) = (load(x)?, load(y)?);
    let r = data.kms_check(&x, &y);
    let (w, _) = data.inner_form()?;
    let payload = json!({
        "lhs": r.lhs.to_string(),
        "rhs": r.rhs.to_string(),
        "opposite_holds": r.opposite_holds,
        "inner_witness": unit_json(&w),
    });
    Ok(Verdict::decide(r.holds, payload))
}

// ---- symbolic ----

fn symbolic(script: &Path, depth: usize, trace: Option<&Path>, trials: usize, seed: u64) -> Result<Verdict> {
    let text = read(script)?;
    let report = verify_script_with(&text, depth, seed, trials).map_err(|e| match e {
        Error::Parse { offset, message } => {
            let (l, c) = line_col(&text, offset);
            Error::Input(format!("{}:{l}:{c}: {message}", script.display()))
        }
        e => Error::Input(format!("{}: {e}", script.display())),
    })?;
    if let Some(path) = trace {
        let body = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
        fs::write(path, format!("{body}\n")).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let goals: Vec<Value> = report
        .goals
        .iter()
        .map(|g| {
            json!({
                "name": g.name,
                "verdict": g.verdict,
                "steps": g.trace().map(|t| t.steps.len()),
                "replayed": g.replayed,
                "model": g.model,
            })
        })
        .collect();
    let sound = report.goals.iter().all(|g| g.replayed != Some(false) && (g.verdict != GoalVerdict::Proven || g.model.all_passed()));
    if !sound {
        return Ok(Verdict::error("a proof failed to replay or to hold in the model").with_message(json!(goals).to_string()));
    }
    let count = |v: GoalVerdict| report.goals.iter().filter(|g| g.verdict == v).count();
    let (proven, refuted) = (count(GoalVerdict::Proven), count(GoalVerdict::Refuted));
    let tally = format!("{proven}/{} goals proven, {refuted} refuted", report.goals.len());
    Ok(if proven == report.goals.len() {
        Verdict::verified(json!({ "goals": goals })).with_message(tally)
    } else if refuted > 0 {
        Verdict::refuted(json!({ "goals": goals })).with_message(tally)
    } else {
        Verdict::unknown(tally)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_col_counts_from_one() {
        assert_eq!(line_col("ab\ncd", 0), (1, 1));
        assert_eq!(line_col("ab\ncd", 4), (2, 2));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["innerhom", "frobnicate"]), 2);
        assert_eq!(run(["innerhom", "alg", "pi0"]), 2);
    }
}
