use super::expr::Expr;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    One,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Star,
    Inv,
    Semi,
    Eq,
    Arrow,
    Colon,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if c == '#' {
            while it.peek().is_some_and(|&(_, c)| c != '\n') {
                it.next();
            }
            continue;
        }
        let single = |tok: Tok| Token { tok, start: i, end: i + c.len_utf8() };
        let token = match c {
            '(' => single(Tok::LParen),
            ')' => single(Tok::RParen),
            '[' => single(Tok::LBracket),
            ']' => single(Tok::RBracket),
            '*' | '·' => single(Tok::Star),
            ';' => single(Tok::Semi),
            '=' => single(Tok::Eq),
            ':' => single(Tok::Colon),
            '⁻' => {
                it.next();
                match it.peek() {
                    Some(&(j, '¹')) => Token { tok: Tok::Inv, start: i, end: j + '¹'.len_utf8() },
                    _ => return Err(Error::parse(i, "expected `⁻¹`")),
                }
            }
            '^' => {
                let rest = &text[i..];
                if !rest.starts_with("^-1") {
                    return Err(Error::parse(i, "only `^-1` exponents are supported"));
                }
                it.next();
                it.next();
                Token { tok: Tok::Inv, start: i, end: i + 3 }
            }
            '-' => {
                it.next();
                match it.peek() {
                    Some(&(j, '>')) => Token { tok: Tok::Arrow, start: i, end: j + 1 },
                    _ => return Err(Error::parse(i, "unexpected `-`")),
                }
            }
            '?' => {
                it.next();
                let mut end = i + 1;
                while let Some(&(j, c)) = it.peek() {
                    if is_ident_char(c) {
                        end = j + c.len_utf8();
                        it.next();
                    } else {
                        break;
                    }
                }
                if end == i + 1 {
                    return Err(Error::parse(i, "`?` must be followed by a variable name"));
                }
                out.push(Token { tok: Tok::Var(text[i + 1..end].to_string()), start: i, end });
                continue;
            }
            '1' => {
                let next = text[i + 1..].chars().next();
                if next.is_some_and(is_ident_char) {
                    return Err(Error::parse(i, "identifiers must start with a letter"));
                }
                single(Tok::One)
            }
            c if is_ident_start(c) => {
                let mut end = i;
                while let Some(&(j, c)) = it.peek() {
                    if is_ident_char(c) {
                        end = j + c.len_utf8();
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Token { tok: Tok::Ident(text[i..end].to_string()), start: i, end });
                continue;
            }
            other => return Err(Error::parse(i, format!("unexpected character `{other}`"))),
        };
        it.next();
        out.push(token);
    }
    out.push(Token { tok: Tok::Eof, start: text.len(), end: text.len() });
    Ok(out)
}

/// Declared unit and hom symbols; enables unknown-symbol warnings.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    pub symbols: Vec<String>,
    pub homs: Vec<String>,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    table: Option<SymbolTable>,
    warnings: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].start
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(Error::parse(self.offset(), format!("expected {what}")))
        }
    }

    fn glued_paren(&self) -> bool {
        let prev = &self.tokens[self.pos - 1];
        let cur = &self.tokens[self.pos];
        cur.tok == Tok::LParen && cur.start == prev.end
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Var(_) | Tok::One | Tok::LParen)
    }

    fn expr(&mut self) -> Result<Expr> {
        if !self.starts_factor() {
            return Err(Error::parse(self.offset(), "expected an expression"));
        }
        let mut factors = vec![self.factor()?];
        loop {
            if *self.peek() == Tok::Star {
                self.next();
                factors.push(self.factor()?);
            } else if self.starts_factor() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(Expr::product(factors))
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut e = self.primary()?;
        while *self.peek() == Tok::Inv {
            self.next();
            e = Expr::inverse(e);
        }
        Ok(e)
    }

    fn bracketed(&mut self, open: Tok, close: Tok, what: &str) -> Result<Expr> {
        self.expect(open, what)?;
        let e = self.expr()?;
        self.expect(close, "a closing bracket")?;
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr> {
        let start = self.offset();
        let t = self.next();
        match t.tok {
            Tok::One => Ok(Expr::One),
            Tok::Var(v) => Ok(Expr::Var(v)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if (name == "sigma" || name == "push") && *self.peek() == Tok::LBracket {
                    let by = self.bracketed(Tok::LBracket, Tok::RBracket, "`[`")?;
                    let arg = self.bracketed(Tok::LParen, Tok::RParen, "`(`")?;
                    return Ok(if name == "sigma" { Expr::sigma(by, arg) } else { Expr::push(by, arg) });
                }
                if let Some(u) = name.strip_prefix("sigma_").filter(|u| !u.is_empty()) {
                    if self.glued_paren() {
                        self.check_symbol(u, start);
                        let arg = self.bracketed(Tok::LParen, Tok::RParen, "`(`")?;
                        return Ok(Expr::sigma(Expr::atom(u), arg));
                    }
                }
                let declared_hom = self.table.as_ref().is_some_and(|t| t.homs.contains(&name));
                let declared_symbol = self.table.as_ref().is_some_and(|t| t.symbols.contains(&name));
                if declared_hom || (!declared_symbol && self.glued_paren()) {
                    if *self.peek() != Tok::LParen {
                        return Err(Error::parse(self.offset(), format!("hom `{name}` needs an argument")));
                    }
                    if self.table.is_some() && !declared_hom {
                        self.warnings.push(format!("undeclared hom `{name}` at byte {start}"));
                    }
                    let arg = self.bracketed(Tok::LParen, Tok::RParen, "`(`")?;
                    return Ok(Expr::hom(&name, arg));
                }
                self.check_symbol(&name, start);
                Ok(Expr::Atom(name))
            }
            _ => Err(Error::parse(start, "expected an expression")),
        }
    }

    fn check_symbol(&mut self, name: &str, at: usize) {
        if let Some(t) = &self.table {
            if !t.symbols.iter().any(|s| s == name) {
                self.warnings.push(format!("undeclared symbol `{name}` at byte {at}"));
            }
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => Err(Error::parse(self.offset(), format!("expected {what}"))),
        }
    }

    /// `name :` prefix, if present.
    fn label(&mut self) -> Option<String> {
        if let (Tok::Ident(s), Tok::Colon) = (self.peek().clone(), &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)].tok) {
            self.next();
            self.next();
            return Some(s);
        }
        None
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { tokens: lex(text)?, pos: 0, table: None, warnings: Vec::new() };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(Error::parse(p.offset(), "trailing input"));
    }
    Ok(e)
}

/// Parses against declared symbols; returns warnings for undeclared names.
pub fn parse_with(text: &str, table: &SymbolTable) -> Result<(Expr, Vec<String>)> {
    let mut p = Parser { tokens: lex(text)?, pos: 0, table: Some(table.clone()), warnings: Vec::new() };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(Error::parse(p.offset(), "trailing input"));
    }
    Ok((e, p.warnings))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Statement {
    Symbols(Vec<String>),
    Homs(Vec<String>),
    Assume { name: Option<String>, lhs: Expr, rhs: Expr, direction: Direction, offset: usize },
    Prove { name: Option<String>, lhs: Expr, rhs: Expr, offset: usize },
    /// `(a, b)` is a 2-cell `φ0 → φ1` in the matrix model.
    Cell { a: String, b: String, src: String, dst: String },
    /// `(a, b)` is an automorphism 2-cell of `φ`, with central defect.
    Central { a: String, b: String, hom: String },
    /// Model-only assignment; the prover treats `name` as free.
    Let { name: String, value: Expr },
}

pub fn parse_script(text: &str) -> Result<(Vec<Statement>, Vec<String>)> {
    let mut p = Parser { tokens: lex(text)?, pos: 0, table: None, warnings: Vec::new() };
    let mut table = SymbolTable::default();
    let mut out = Vec::new();
    while *p.peek() != Tok::Eof {
        let offset = p.offset();
        let kw = p.ident("a statement keyword")?;
        let stmt = match kw.as_str() {
            "symbols" | "homs" => {
                let mut names = Vec::new();
                while let Tok::Ident(s) = p.peek().clone() {
                    p.next();
                    names.push(s);
                }
                if kw == "symbols" {
                    table.symbols.extend(names.iter().cloned());
                    Statement::Symbols(names)
                } else {
                    table.homs.extend(names.iter().cloned());
                    Statement::Homs(names)
                }
            }
            "assume" | "prove" => {
                let name = p.label();
                let declared = !table.symbols.is_empty() || !table.homs.is_empty();
                p.table = declared.then(|| table.clone());
                let lhs = p.expr()?;
                p.expect(Tok::Eq, "`=`")?;
                let rhs = p.expr()?;
                p.table = None;
                if kw == "assume" {
                    let mut direction = Direction::LeftToRight;
                    if *p.peek() == Tok::Arrow {
                        p.next();
                        direction = match p.ident("`lr` or `rl`")?.as_str() {
                            "lr" => Direction::LeftToRight,
                            "rl" => Direction::RightToLeft,
                            other => return Err(Error::parse(p.offset(), format!("unknown direction `{other}`"))),
                        };
                    }
                    Statement::Assume { name, lhs, rhs, direction, offset }
                } else {
                    Statement::Prove { name, lhs, rhs, offset }
                }
            }
            "cell" => {
                let a = p.ident("a unit name")?;
                let b = p.ident("a unit name")?;
                p.expect(Tok::Colon, "`:`")?;
                let src = p.ident("a hom name")?;
                p.expect(Tok::Arrow, "`->`")?;
                let dst = p.ident("a hom name")?;
                Statement::Cell { a, b, src, dst }
            }
            "central" => {
                let a = p.ident("a unit name")?;
                let b = p.ident("a unit name")?;
                p.expect(Tok::Colon, "`:`")?;
                let hom = p.ident("a hom name")?;
                Statement::Central { a, b, hom }
            }
            "let" => {
                let name = p.ident("a name")?;
                p.expect(Tok::Eq, "`=`")?;
                let value = p.expr()?;
                Statement::Let { name, value }
            }
            other => return Err(Error::parse(offset, format!("unknown statement `{other}`"))),
        };
        p.expect(Tok::Semi, "`;`")?;
        out.push(stmt);
    }
    Ok((out, p.warnings))
}

#[cfg(test)]
mod tests {
    use super::super::word::normalize;
    use super::*;

    #[test]
    fn simple_forms() {
        let e = parse("a^-1 x a").unwrap();
        assert_eq!(e, Expr::product(vec![Expr::inverse(Expr::atom("a")), Expr::atom("x"), Expr::atom("a")]));
        assert_eq!(parse("phi1(a) b^-1").unwrap(), Expr::product(vec![Expr::hom("phi1", Expr::atom("a")), Expr::inverse(Expr::atom("b"))]));
        assert_eq!(parse("a * b").unwrap(), parse("a b").unwrap());
        assert_eq!(parse("b⁻¹").unwrap(), parse("b^-1").unwrap());
    }

    #[test]
    fn sugar() {
        let s = parse("sigma_b(phi0(x))").unwrap();
        assert_eq!(normalize(&s), normalize(&parse("b^-1 phi0(x) b").unwrap()));
        let t = parse("sigma[u v](x)").unwrap();
        assert_eq!(normalize(&t), normalize(&parse("v^-1 u^-1 x u v").unwrap()));
        let p = parse("push[d](x y)").unwrap();
        assert_eq!(normalize(&p).to_string(), "d x y d^-1");
    }

    #[test]
    fn errors_carry_offsets() {
        match parse("a b )") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        match parse("phi(a") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("a ^2"), Err(Error::Parse { offset: 2, .. })));
    }

    #[test]
    fn glued_paren_means_application() {
        assert_eq!(parse("f(a)").unwrap(), Expr::hom("f", Expr::atom("a")));
        assert_eq!(parse("f (a)").unwrap(), parse("f a").unwrap());
    }

    #[test]
    fn print_parse_round_trip() {
        for s in ["phi((x y)^-1) z", "psi(phi(a) b0^-1)", "sigma_u(f(x))", "1", "?v f(?v)^-1"] {
            let w = normalize(&parse(s).unwrap());
            assert_eq!(normalize(&parse(&w.to_string()).unwrap()), w);
        }
    }

    #[test]
    fn statements() {
        let (st, warn) = parse_script("symbols a b; homs f;\nassume h: f(a) = b -> rl;\nprove f(a) = b;\ncell a b : f -> g;").unwrap();
        assert_eq!(st.len(), 5);
        assert!(warn.is_empty());
        assert!(matches!(&st[2], Statement::Assume { name: Some(n), direction: Direction::RightToLeft, .. } if n == "h"));
        assert!(parse_script("prove a = ;").is_err());
    }
}
