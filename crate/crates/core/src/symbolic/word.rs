use std::fmt;

use super::expr::Expr;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Atom(String),
    Var(String),
}

/// `h_1(h_2(…(x)…))^{±1}`, homs listed outermost first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub homs: Vec<String>,
    pub base: Base,
    pub inv: bool,
}

impl Letter {
    pub fn inverse(&self) -> Letter {
        Letter { inv: !self.inv, ..self.clone() }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.inv != other.inv && self.base == other.base && self.homs == other.homs
    }

    pub fn under(&self, context: &[String]) -> Letter {
        let mut homs = context.to_vec();
        homs.extend(self.homs.iter().cloned());
        Letter { homs, ..self.clone() }
    }

    pub fn to_expr(&self) -> Expr {
        let core = match &self.base {
            Base::Atom(a) => Expr::Atom(a.clone()),
            Base::Var(v) => Expr::Var(v.clone()),
        };
        let applied = self.homs.iter().rev().fold(core, |e, h| Expr::hom(h, e));
        if self.inv {
            Expr::inverse(applied)
        } else {
            applied
        }
    }
}

/// A freely reduced word of letters; the structural normal form of an expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn one() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Free reduction: cancels adjacent `w w⁻¹` pairs.
    pub fn reduced(letters: Vec<Letter>) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        for l in letters {
            if out.last().is_some_and(|last| last.cancels(&l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverse).collect())
    }

    pub fn to_expr(&self) -> Expr {
        Expr::product(self.0.iter().map(Letter::to_expr).collect())
    }

    pub fn has_vars(&self) -> bool {
        self.0.iter().any(|l| matches!(l.base, Base::Var(_)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

/// Pushes homs and inverses down to letters, flattens, and freely reduces.
pub fn normalize(e: &Expr) -> Word {
    let mut out = Vec::new();
    push_letters(e, &[], false, &mut out);
    Word::reduced(out)
}

fn push_letters(e: &Expr, homs: &[String], inv: bool, out: &mut Vec<Letter>) {
    match e {
        Expr::One => {}
        Expr::Atom(a) => out.push(Letter { homs: homs.to_vec(), base: Base::Atom(a.clone()), inv }),
        Expr::Var(v) => out.push(Letter { homs: homs.to_vec(), base: Base::Var(v.clone()), inv }),
        Expr::Inverse(x) => push_letters(x, homs, !inv, out),
        Expr::Product(fs) => {
            if inv {
                fs.iter().rev().for_each(|f| push_letters(f, homs, true, out));
            } else {
                fs.iter().for_each(|f| push_letters(f, homs, false, out));
            }
        }
        Expr::HomApp(h, x) => {
            let mut inner = homs.to_vec();
            inner.push(h.clone());
            push_letters(x, &inner, inv, out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Expr {
        Expr::atom(n)
    }

    #[test]
    fn structural_rules() {
        let xy = Expr::product(vec![a("x"), a("y")]);
        let e = Expr::hom("phi", Expr::inverse(xy));
        let expect = Expr::product(vec![
            Expr::inverse(Expr::hom("phi", a("y"))),
            Expr::inverse(Expr::hom("phi", a("x"))),
        ]);
        assert_eq!(normalize(&e), normalize(&expect));
        assert_eq!(normalize(&Expr::product(vec![a("x"), Expr::inverse(a("x"))])), Word::one());
        let nested = Expr::hom("psi", Expr::product(vec![Expr::hom("phi", a("a")), Expr::inverse(a("b0"))]));
        assert_eq!(normalize(&nested).to_string(), "psi(phi(a)) psi(b0)^-1");
        assert_eq!(normalize(&Expr::hom("phi", Expr::One)), Word::one());
    }

    #[test]
    fn idempotent() {
        let e = Expr::product(vec![a("x"), Expr::hom("f", Expr::inverse(Expr::product(vec![a("y"), a("x")]))), a("z")]);
        let w = normalize(&e);
        assert_eq!(normalize(&w.to_expr()), w);
    }
}
