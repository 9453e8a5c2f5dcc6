//! Text formats: polynomial expressions and ideal files.
//!
//! ```text
//! ring Q[x1,x2]        # or F5[x,y]
//! order grevlex        # optional
//! perm 2,1             # optional
//! x1*x2
//! x2^2
//! ```
//!
//! Expressions use `+ - * ^` and parentheses; coefficients are integers or
//! `a/b` literals. Juxtaposition is not multiplication.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::dcalc::Permutation;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::groebner::IdealGens;
use crate::poly::Polynomial;
use crate::ring::{PolyRing, Ring, TermOrder};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(src: &str, line: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().unwrap()), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*^()/".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(perr(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        perr(self.line, self.col(), msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Num(k)) => {
                    self.pos += 1;
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| perr(self.line, col, "exponent too large"))?;
                    Ok(base.pow(k))
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        match self.peek().cloned() {
            Some(Tok::Num(a)) => {
                self.pos += 1;
                let mut c = field.from_bigint(&a);
                if self.eat('/') {
                    let col = self.col();
                    let Some(Tok::Num(b)) = self.peek().cloned() else {
                        return Err(self.err("expected an integer denominator"));
                    };
                    self.pos += 1;
                    let inv = field
                        .from_bigint(&b)
                        .inv()
                        .ok_or_else(|| perr(self.line, col, "zero denominator"))?;
                    c = &c * &inv;
                }
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                let i = self
                    .ring
                    .var_index(&name)
                    .ok_or_else(|| self.err(format!("unknown identifier `{name}`")))?;
                self.pos += 1;
                Ok(Polynomial::var(self.ring, i))
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(t) => Err(self.err(format!("unexpected token {}", show(&t)))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

fn show(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
    }
}

/// Parse one expression, reporting errors at `line`.
pub fn parse_poly_at(ring: &Ring, src: &str, line: usize) -> Result<Polynomial> {
    let toks = lex(src, line)?;
    let mut p = Parser {
        ring,
        toks,
        pos: 0,
        line,
        end_col: src.chars().count() + 1,
    };
    let f = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(f)
}

pub fn parse_poly(ring: &Ring, src: &str) -> Result<Polynomial> {
    parse_poly_at(ring, src, 1)
}

/// A parsed ideal file.
#[derive(Clone, Debug)]
pub struct IdealFile {
    pub ring: Ring,
    pub ideal: IdealGens,
    pub order: Option<TermOrder>,
    pub perm: Option<Permutation>,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Parse `ring FIELD[v1,...,vn]`.
pub fn parse_ring_line(line: &str, lineno: usize) -> Result<Ring> {
    let t = line.trim_start();
    let off = line.len() - t.len();
    let Some(rest) = t.strip_prefix("ring") else {
        return Err(perr(lineno, off + 1, "expected `ring FIELD[vars]`"));
    };
    let rest_off = off + 4;
    let (Some(lb), Some(rb)) = (rest.find('['), rest.rfind(']')) else {
        return Err(perr(lineno, rest_off + 1, "expected `[` and `]` around variable names"));
    };
    if rb < lb || !rest[rb + 1..].trim().is_empty() {
        return Err(perr(lineno, rest_off + rb + 1, "malformed variable list"));
    }
    let fname = rest[..lb].trim();
    let field = match fname {
        "Q" => Field::Rationals,
        _ => {
            let p = fname
                .strip_prefix('F')
                .and_then(|d| d.parse::<u64>().ok())
                .ok_or_else(|| perr(lineno, rest_off + 1, format!("unknown field `{fname}`")))?;
            Field::prime(p).map_err(|e| perr(lineno, rest_off + 1, e.to_string()))?
        }
    };
    let vars: Vec<&str> = rest[lb + 1..rb].split(',').map(str::trim).collect();
    PolyRing::new(field, &vars).map_err(|e| perr(lineno, rest_off + lb + 2, e.to_string()))
}

/// Parse an ideal file; every generator must be nonzero with zero constant
/// term. A `field` override replaces the declared coefficient field.
pub fn parse_ideal_file(text: &str) -> Result<IdealFile> {
    parse_ideal_file_with(text, None)
}

pub fn parse_ideal_file_with(text: &str, field: Option<Field>) -> Result<IdealFile> {
    let mut ring: Option<Ring> = None;
    let mut order = None;
    let mut perm = None;
    let mut gens = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = strip_comment(raw);
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let Some(r) = &ring else {
            let mut r = parse_ring_line(line, lineno)?;
            if let Some(f) = field {
                r = r.with_field(f)?;
            }
            ring = Some(r);
            continue;
        };
        let col = line.len() - line.trim_start().len() + 1;
        if let Some(rest) = t.strip_prefix("order ") {
            order = Some(
                rest.trim()
                    .parse::<TermOrder>()
                    .map_err(|e| perr(lineno, col, e.to_string()))?,
            );
            continue;
        }
        if let Some(rest) = t.strip_prefix("perm ") {
            let p = parse_perm(rest.trim(), r.nvars()).map_err(|e| perr(lineno, col, e.to_string()))?;
            perm = Some(p);
            continue;
        }
        let f = parse_poly_at(r, line, lineno)?;
        if f.is_zero() {
            return Err(perr(lineno, col, format!("generator `{}` is zero", t)));
        }
        if !f.in_max_ideal() {
            return Err(perr(
                lineno,
                col,
                format!("generator `{t}` has a nonzero constant term"),
            ));
        }
        gens.push(f);
    }
    let Some(ring) = ring else {
        return Err(perr(1, 1, "missing `ring` line"));
    };
    if gens.is_empty() {
        return Err(perr(last_line.max(1), 1, "no generators"));
    }
    let ideal = IdealGens::new(&ring, gens)?;
    Ok(IdealFile {
        ring,
        ideal,
        order,
        perm,
    })
}

/// A 1-based image list, or `reverse`, or `id`.
pub fn parse_perm(s: &str, n: usize) -> Result<Permutation> {
    let p = match s {
        "reverse" => Permutation::reversal(n),
        "id" | "identity" => Permutation::identity(n),
        _ => s.parse()?,
    };
    if p.len() != n {
        return Err(Error::Precondition(format!(
            "permutation {p} has length {} but the ring has {n} variables",
            p.len()
        )));
    }
    Ok(p)
}

/// Canonical text of a ring line, e.g. `ring Q[x1,x2]`.
pub fn format_ring(ring: &Ring) -> String {
    format!("ring {}[{}]", ring.field(), ring.var_names().join(","))
}

/// Canonical text of an ideal file; parses back to the same data.
pub fn format_ideal_file(file: &IdealFile) -> String {
    let mut s = format_ring(&file.ring);
    s.push('\n');
    if let Some(o) = file.order {
        let _ = writeln!(s, "order {o}");
    }
    if let Some(p) = &file.perm {
        let _ = writeln!(s, "perm {p}");
    }
    for g in file.ideal.gens() {
        let _ = writeln!(s, "{g}");
    }
    s
}

/// Parse a scalar literal (`-3`, `5/7`) in a field.
pub fn parse_scalar(field: Field, s: &str) -> Result<Scalar> {
    let ring = PolyRing::new(field, &["x"])?;
    let p = parse_poly(&ring, s)?;
    if p.total_degree().unwrap_or(0) > 0 {
        return Err(perr(1, 1, "expected a constant"));
    }
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example_file() {
        let f = parse_ideal_file("ring Q[x1,x2]\nx1*x2\nx2^2\n").unwrap();
        assert_eq!(f.ring.nvars(), 2);
        let m = f.ideal.to_monomial_ideal().unwrap();
        assert_eq!(m.display(), "(x1*x2, x2^2)");
    }

    #[test]
    fn parses_prime_field() {
        let f = parse_ideal_file("ring F5[x,y]\nx^2+3*y^2").unwrap();
        assert_eq!(f.ring.field(), Field::Prime(5));
        assert_eq!(f.ideal.gens()[0].to_string(), "x^2 + 3*y^2");
        let g = parse_poly(&f.ring, "7*x - x").unwrap();
        assert_eq!(g.to_string(), "x");
    }

    #[test]
    fn constant_term_is_an_error() {
        let e = parse_ideal_file("ring Q[x]\nx+1").unwrap_err();
        match e {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("constant term"), "{message}");
                assert!(message.contains("x+1"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn error_positions() {
        let r = PolyRing::standard(Field::Rationals, 2).unwrap();
        assert_eq!(
            parse_poly(&r, "x1 + y").unwrap_err(),
            Error::Parse {
                line: 1,
                column: 6,
                message: "unknown identifier `y`".into()
            }
        );
        assert!(matches!(parse_poly(&r, "x1 x2"), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(parse_poly(&r, "(x1"), Err(Error::Parse { column: 4, .. })));
        assert!(parse_poly(&r, "x1^").is_err());
        assert!(parse_poly(&r, "1/0").is_err());
        let e = parse_ideal_file("ring Q[x1,x2]\n\nx1*$").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 4, .. }));
        assert!(parse_ideal_file("ring G7[x]\nx").is_err());
        assert!(parse_ideal_file("ring F6[x]\nx").is_err());
        assert!(parse_ideal_file("ring Q[x,x]\nx").is_err());
        assert!(parse_ideal_file("ring Q[x]\n").is_err());
    }

    #[test]
    fn arithmetic_and_rationals() {
        let r = PolyRing::standard(Field::Rationals, 3).unwrap();
        let f = parse_poly(&r, "(x1 + x2)^2 - 2*x1*x2 - 1/2*x3 + -x3").unwrap();
        assert_eq!(f.to_string(), "x1^2 + x2^2 - 3/2*x3");
        assert_eq!(parse_poly(&r, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn round_trip() {
        let text = "ring F7[a,b,c]\norder lex\nperm 3,1,2\na*b - 2*c^2\nb^3\n";
        let f = parse_ideal_file(text).unwrap();
        let printed = format_ideal_file(&f);
        let g = parse_ideal_file(&printed).unwrap();
        assert_eq!(format_ideal_file(&g), printed);
        assert_eq!(g.ideal, f.ideal);
        assert_eq!(g.perm, Some(Permutation::last_first(3)));
        assert_eq!(g.order, Some(TermOrder::Lex));
    }

    #[test]
    fn comments_and_reverse() {
        let f = parse_ideal_file("# header\nring Q[x1,x2,x3] # three vars\nperm reverse\n\nx1*x3 # gen\n").unwrap();
        assert_eq!(f.perm, Some(Permutation::reversal(3)));
        assert_eq!(f.ideal.gens().len(), 1);
    }
}
