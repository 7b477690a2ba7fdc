use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::expr::Expr;
use super::parse::Statement;
use super::word::{normalize, Base, Word};
use crate::algebra::{AlgHom, Algebra, Unit};
use crate::error::{Error, Result};
use crate::homgroupoid::check_two_cell;
use crate::random;
use crate::scalar::Field;

/// Samples per universally quantified hypothesis.
const VAR_SAMPLES: usize = 3;

/// Every hom is some `σ_w` on `Mat₂(F₅)`; every symbol is a unit.
pub struct Model {
    alg: Arc<Algebra>,
    homs: HashMap<String, Unit>,
    atoms: HashMap<String, Unit>,
    rng: ChaCha8Rng,
}

impl Model {
    pub fn new(seed: u64) -> Model {
        Model {
            alg: Algebra::full("M2(F5)", Field::Prime(5), 2),
            homs: HashMap::new(),
            atoms: HashMap::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn hom(&mut self, name: &str) -> Unit {
        if let Some(w) = self.homs.get(name) {
            return w.clone();
        }
        let w = random::unit(&self.alg, &mut self.rng);
        self.homs.insert(name.to_string(), w.clone());
        w
    }

    fn atom(&mut self, name: &str) -> Unit {
        if let Some(u) = self.atoms.get(name) {
            return u.clone();
        }
        let u = random::unit(&self.alg, &mut self.rng);
        self.atoms.insert(name.to_string(), u.clone());
        u
    }

    pub fn eval_word(&mut self, w: &Word, vars: &HashMap<String, Unit>) -> Result<Unit> {
        let mut acc = Unit::one(&self.alg);
        for l in w.letters() {
            let mut u = match &l.base {
                Base::Atom(a) => self.atom(a),
                Base::Var(v) => vars.get(v).cloned().ok_or_else(|| Error::Model(format!("unbound ?{v}")))?,
            };
            for h in l.homs.iter().rev() {
                let wh = self.hom(h);
                u = wh.inv().mul(&u)?.mul(&wh)?;
            }
            if l.inv {
                u = u.inv();
            }
            acc = acc.mul(&u)?;
        }
        Ok(acc)
    }

    pub fn eval(&mut self, e: &Expr) -> Result<Unit> {
        self.eval_word(&normalize(e), &HashMap::new())
    }

    fn random_vars(&mut self, e: &[&Expr]) -> HashMap<String, Unit> {
        let mut names = Vec::new();
        for x in e {
            x.vars(&mut names);
        }
        names.into_iter().map(|v| (v, random::unit(&self.alg, &mut self.rng))).collect()
    }

    /// Does `lhs = rhs` hold at a random assignment of its variables?
    pub fn holds(&mut self, lhs: &Expr, rhs: &Expr) -> Result<bool> {
        let vars = self.random_vars(&[lhs, rhs]);
        let l = self.eval_word(&normalize(lhs), &vars)?;
        let r = self.eval_word(&normalize(rhs), &vars)?;
        Ok(l.element() == r.element())
    }

    fn cell(&mut self, a: &str, b: &str, src: &str, dst: &str) -> Result<()> {
        let (has_a, has_b) = (self.atoms.contains_key(a), self.atoms.contains_key(b));
        let (has0, has1) = (self.homs.contains_key(src), self.homs.contains_key(dst));
        // σ_b σ_{w0} = σ_{w1} σ_a  ⇔  w0 b ∝ a w1
        match (has_a, has_b) {
            (false, false) => {
                let (w0, w1) = (self.hom(src), self.hom(dst));
                let (ua, ub) = random::cell_between_inner(&w0, &w1, &mut self.rng)?;
                self.atoms.insert(a.into(), ua);
                self.atoms.insert(b.into(), ub);
            }
            (true, false) => {
                let (w0, w1, ua) = (self.hom(src), self.hom(dst), self.atom(a));
                self.atoms.insert(b.into(), w0.inv().mul(&ua)?.mul(&w1)?);
            }
            (false, true) => {
                let (w0, w1, ub) = (self.hom(src), self.hom(dst), self.atom(b));
                self.atoms.insert(a.into(), w0.mul(&ub)?.mul(&w1.inv())?);
            }
            (true, true) => {
                let (ua, ub) = (self.atom(a), self.atom(b));
                if !has1 {
                    let w0 = self.hom(src);
                    self.homs.insert(dst.into(), ua.inv().mul(&w0)?.mul(&ub)?);
                } else if !has0 {
                    let w1 = self.hom(dst);
                    self.homs.insert(src.into(), ua.mul(&w1)?.mul(&ub.inv())?);
                }
            }
        }
        let (h0, h1) = (AlgHom::inner(&self.hom(src)), AlgHom::inner(&self.hom(dst)));
        if !check_two_cell(&h0, &h1, &self.atom(a), &self.atom(b))?.is_valid() {
            return Err(Error::Model(format!("cell ({a}, {b}): {src} -> {dst} is not satisfiable here")));
        }
        Ok(())
    }

    fn central(&mut self, a: &str, b: &str, hom: &str) -> Result<()> {
        let w = self.hom(hom);
        let z = random::nonzero_scalar(self.alg.field(), &mut self.rng);
        let zi = z.inverse().expect("nonzero");
        if self.atoms.contains_key(b) && !self.atoms.contains_key(a) {
            let ub = self.atom(b);
            // φ(a) = z b
            let phia = Unit::new(&self.alg, ub.element().scale(&z))?;
            self.atoms.insert(a.into(), w.mul(&phia)?.mul(&w.inv())?);
        } else if !self.atoms.contains_key(b) {
            let ua = self.atom(a);
            let phia = w.inv().mul(&ua)?.mul(&w)?;
            self.atoms.insert(b.into(), Unit::new(&self.alg, phia.element().scale(&zi))?);
        }
        let h = AlgHom::inner(&w);
        let (ua, ub) = (self.atom(a), self.atom(b));
        let phia = h.apply(ua.element())?;
        let defect = &phia * ub.inverse_matrix();
        if defect.as_scalar().is_none() || !check_two_cell(&h, &h, &ua, &ub)?.is_valid() {
            return Err(Error::Model(format!("({a}, {b}) is not a central 2-cell of {hom}")));
        }
        Ok(())
    }

    /// Realizes the model directives, then checks every assumption.
    pub fn realize(&mut self, statements: &[Statement]) -> Result<()> {
        for s in statements {
            match s {
                Statement::Cell { a, b, src, dst } => self.cell(a, b, src, dst)?,
                Statement::Central { a, b, hom } => self.central(a, b, hom)?,
                Statement::Let { name, value } => {
                    let u = self.eval(value)?;
                    if self.atoms.insert(name.clone(), u).is_some() {
                        return Err(Error::Model(format!("`{name}` is assigned twice")));
                    }
                }
                _ => {}
            }
        }
        for s in statements {
            if let Statement::Assume { name, lhs, rhs, .. } = s {
                let samples = if lhs.has_vars() || rhs.has_vars() { VAR_SAMPLES } else { 1 };
                for _ in 0..samples {
                    if !self.holds(lhs, rhs)? {
                        let n = name.as_deref().unwrap_or("unnamed");
                        return Err(Error::Model(format!("assumption `{n}` fails in the matrix model")));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ModelCheck {
    pub trials: usize,
    pub passed: usize,
}

impl ModelCheck {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }
}

/// Evaluates the goal in `trials` independent models of the script's assumptions.
pub fn model_check(statements: &[Statement], lhs: &Expr, rhs: &Expr, seed: u64, trials: usize) -> Result<ModelCheck> {
    let mut passed = 0;
    for t in 0..trials {
        let mut m = Model::new(seed.wrapping_mul(1_000_003).wrapping_add(t as u64));
        m.realize(statements)?;
        if m.holds(lhs, rhs)? {
            passed += 1;
        }
    }
    Ok(ModelCheck { trials, passed })
}
