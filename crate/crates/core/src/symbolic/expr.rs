use std::fmt;

/// A noncommutative expression over units, pattern variables and hom symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    One,
    Atom(String),
    /// Pattern variable `?x`, only meaningful inside hypotheses.
    Var(String),
    Inverse(Box<Expr>),
    Product(Vec<Expr>),
    HomApp(String, Box<Expr>),
}

impl Expr {
    pub fn atom(name: &str) -> Expr {
        Expr::Atom(name.to_string())
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    /// Cancels double inverses and the inverse of 1.
    pub fn inverse(e: Expr) -> Expr {
        match e {
            Expr::Inverse(inner) => *inner,
            Expr::One => Expr::One,
            e => Expr::Inverse(Box::new(e)),
        }
    }

    /// Flattens nested products and drops units.
    pub fn product(factors: Vec<Expr>) -> Expr {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                Expr::One => {}
                Expr::Product(inner) => flat.extend(inner),
                f => flat.push(f),
            }
        }
        match flat.len() {
            0 => Expr::One,
            1 => flat.pop().unwrap(),
            _ => Expr::Product(flat),
        }
    }

    pub fn hom(name: &str, e: Expr) -> Expr {
        Expr::HomApp(name.to_string(), Box::new(e))
    }

    /// `σ_u(x) = u⁻¹ x u`.
    pub fn sigma(u: Expr, x: Expr) -> Expr {
        Expr::product(vec![Expr::inverse(u.clone()), x, u])
    }

    /// Transport along an embedding: `d x d⁻¹`.
    pub fn push(d: Expr, x: Expr) -> Expr {
        Expr::product(vec![d.clone(), x, Expr::inverse(d)])
    }

    pub fn atoms(&self, out: &mut Vec<String>) {
        match self {
            Expr::One | Expr::Var(_) => {}
            Expr::Atom(a) => {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
            Expr::Inverse(e) | Expr::HomApp(_, e) => e.atoms(out),
            Expr::Product(fs) => fs.iter().for_each(|f| f.atoms(out)),
        }
    }

    pub fn homs(&self, out: &mut Vec<String>) {
        match self {
            Expr::One | Expr::Var(_) | Expr::Atom(_) => {}
            Expr::Inverse(e) => e.homs(out),
            Expr::HomApp(h, e) => {
                if !out.contains(h) {
                    out.push(h.clone());
                }
                e.homs(out)
            }
            Expr::Product(fs) => fs.iter().for_each(|f| f.homs(out)),
        }
    }

    pub fn vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::One | Expr::Atom(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Inverse(e) | Expr::HomApp(_, e) => e.vars(out),
            Expr::Product(fs) => fs.iter().for_each(|f| f.vars(out)),
        }
    }

    pub fn has_vars(&self) -> bool {
        let mut v = Vec::new();
        self.vars(&mut v);
        !v.is_empty()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::One => write!(f, "1"),
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Var(v) => write!(f, "?{v}"),
            Expr::Inverse(e) => match **e {
                Expr::Product(_) => write!(f, "({e})^-1"),
                _ => write!(f, "{e}^-1"),
            },
            Expr::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Expr::HomApp(h, e) => write!(f, "{h}({e})"),
        }
    }
}
