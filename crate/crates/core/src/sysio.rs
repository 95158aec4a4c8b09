//! Text format for polynomial systems, plus JSON/CSV result emission.
//!
//! ```text
//! params x
//! vars y z
//! eq x*y - 1
//! eq y^2 + 1/2*z
//! ```
//!
//! Lines starting with `#` (or trailing `# ...`) are comments.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{Integer, Rational};
use crate::error::Result;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::system::PolynomialSystem;
use crate::Answer;

/// Largest exponent of any single variable the parser will materialise.
const MAX_EXPONENT: u64 = 1 << 20;
/// Largest number of terms a parsed expression may expand to.
const MAX_TERMS: usize = 100_000;
const MAX_NESTING: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `{0}` section")]
    MissingSection(&'static str),
    #[error("expected at least one `eq` line")]
    NoEquations,
    #[error("`vars` must declare at least one variable")]
    NoVariables,
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected {found}, expected {expected}")]
    UnexpectedToken { found: String, expected: &'static str },
    #[error("undeclared identifier `{0}`")]
    Undeclared(String),
    #[error("identifier `{0}` declared twice")]
    Duplicate(String),
    #[error("exponent must be a non-negative integer below 2^32")]
    BadExponent,
    #[error("zero denominator in literal")]
    ZeroDenominator,
    #[error("expression too large to expand")]
    TooLarge,
    #[error("parentheses nested too deeply")]
    TooDeep,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(Integer),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Slash => "`/`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of line".into(),
        }
    }
}

fn err(line: usize, col: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, col, kind }
}

fn tokenize(text: &str, line: usize, col0: usize) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("ascii digits")), col));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
            other => return Err(err(line, col, ParseErrorKind::UnexpectedChar(other))),
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, col0 + chars.len()));
    Ok(out)
}

struct ExprParser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    names: &'a HashMap<String, usize>,
    depth: usize,
}

type P = Polynomial<Rational>;

impl ExprParser<'_> {
    fn at(&self) -> &(Tok, usize) {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn peek(&self) -> &Tok {
        &self.at().0
    }

    fn col(&self) -> usize {
        self.at().1
    }

    /// Consumes one token; past the end this keeps yielding `End`, and
    /// `pos -= 1` always undoes it.
    fn bump(&mut self) -> Tok {
        let t = self.peek().clone();
        self.pos += 1;
        t
    }

    fn fail<T>(&self, kind: ParseErrorKind) -> std::result::Result<T, ParseError> {
        Err(err(self.line, self.col(), kind))
    }

    fn unexpected<T>(&self, expected: &'static str) -> std::result::Result<T, ParseError> {
        self.fail(ParseErrorKind::UnexpectedToken { found: self.peek().describe(), expected })
    }

    fn expr(&mut self) -> std::result::Result<P, ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return self.fail(ParseErrorKind::TooDeep);
        }
        let mut acc = self.signed_term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
            self.check_size(&acc)?;
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn signed_term(&mut self) -> std::result::Result<P, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.term()?.neg());
        }
        self.term()
    }

    fn term(&mut self) -> std::result::Result<P, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let f = self.factor()?;
            self.check_product(&acc, &f)?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> std::result::Result<P, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let e = match self.bump() {
            Tok::Int(n) => u32::try_from(&n).map_err(|_| err(self.line, self.col(), ParseErrorKind::BadExponent))?,
            _ => {
                self.pos -= 1;
                return self.fail(ParseErrorKind::BadExponent);
            }
        };
        if paren && self.bump() != Tok::RParen {
            self.pos -= 1;
            return self.unexpected("`)`");
        }
        self.check_power(&base, e)?;
        Ok(base.pow(e))
    }

    fn base(&mut self) -> std::result::Result<P, ParseError> {
        let col = self.col();
        match self.bump() {
            Tok::Ident(name) => match self.names.get(&name) {
                Some(&i) => Ok(P::var(i)),
                None => Err(err(self.line, col, ParseErrorKind::Undeclared(name))),
            },
            Tok::Int(n) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dcol = self.col();
                    match self.bump() {
                        Tok::Int(d) if d.is_zero() => Err(err(self.line, dcol, ParseErrorKind::ZeroDenominator)),
                        Tok::Int(d) => Ok(P::constant(Rational::new(n, d))),
                        _ => {
                            self.pos -= 1;
                            self.unexpected("integer denominator")
                        }
                    }
                } else {
                    Ok(P::constant(Rational::from_integer(n)))
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if self.bump() != Tok::RParen {
                    self.pos -= 1;
                    return self.unexpected("`)`");
                }
                Ok(inner)
            }
            Tok::Minus => {
                // unary minus inside a product, e.g. `2*-y`
                Ok(self.factor()?.neg())
            }
            _ => {
                self.pos -= 1;
                self.unexpected("identifier, integer or `(`")
            }
        }
    }

    fn check_size(&self, p: &P) -> std::result::Result<(), ParseError> {
        if p.num_terms() > MAX_TERMS {
            return self.fail(ParseErrorKind::TooLarge);
        }
        Ok(())
    }

    fn check_product(&self, a: &P, b: &P) -> std::result::Result<(), ParseError> {
        if a.num_terms().saturating_mul(b.num_terms()) > MAX_TERMS
            || max_exponent(a) + max_exponent(b) > MAX_EXPONENT
        {
            return self.fail(ParseErrorKind::TooLarge);
        }
        Ok(())
    }

    fn check_power(&self, a: &P, e: u32) -> std::result::Result<(), ParseError> {
        if max_exponent(a).saturating_mul(e as u64) > MAX_EXPONENT {
            return self.fail(ParseErrorKind::TooLarge);
        }
        if a.num_terms() > 1 && (a.num_terms() as f64).powf(e as f64).min((e as f64 + 1.0).powi(a.support_len() as i32)) > MAX_TERMS as f64 {
            return self.fail(ParseErrorKind::TooLarge);
        }
        Ok(())
    }
}

fn max_exponent(p: &P) -> u64 {
    p.terms()
        .flat_map(|(m, _)| m.exponents().iter().map(|&e| e as u64).collect::<Vec<_>>())
        .max()
        .unwrap_or(0)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parse a single expression over the given names (index = position).
pub fn parse_polynomial(text: &str, names: &[String]) -> std::result::Result<Polynomial<Rational>, ParseError> {
    let map: HashMap<String, usize> = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    parse_expr_line(strip_comment(text), 1, 1, &map)
}

fn parse_expr_line(
    text: &str,
    line: usize,
    col0: usize,
    names: &HashMap<String, usize>,
) -> std::result::Result<P, ParseError> {
    let toks = tokenize(text, line, col0)?;
    let mut p = ExprParser { toks, pos: 0, line, names, depth: 0 };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.unexpected("operator or end of line");
    }
    Ok(out)
}

/// Parse a system; coefficients may be rational.
pub fn parse_system(text: &str) -> std::result::Result<PolynomialSystem<Rational>, ParseError> {
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l.strip_suffix('\r').unwrap_or(l))))
        .filter(|(_, l)| !l.trim().is_empty());

    let mut header = |section: &'static str| -> std::result::Result<(usize, Vec<String>), ParseError> {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| err(text.split('\n').count().max(1), 1, ParseErrorKind::MissingSection(section)))?;
        let mut words = l.split_whitespace();
        if words.next() != Some(section) {
            let col = l.len() - l.trim_start().len() + 1;
            return Err(err(ln, col, ParseErrorKind::MissingSection(section)));
        }
        let names: Vec<String> = words.map(str::to_string).collect();
        for name in &names {
            let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                let col = l.find(name.as_str()).unwrap_or(0) + 1;
                return Err(err(ln, col, ParseErrorKind::UnexpectedToken {
                    found: format!("`{name}`"),
                    expected: "identifier",
                }));
            }
        }
        Ok((ln, names))
    };
    let (_, params) = header("params")?;
    let (vln, vars) = header("vars")?;
    if vars.is_empty() {
        return Err(err(vln, 1, ParseErrorKind::NoVariables));
    }

    let mut map = HashMap::new();
    for (i, name) in params.iter().chain(&vars).enumerate() {
        if map.insert(name.clone(), i).is_some() {
            return Err(err(vln, 1, ParseErrorKind::Duplicate(name.clone())));
        }
    }

    let mut polys = Vec::new();
    for (ln, l) in lines {
        let trimmed = l.trim_start();
        let indent = l.len() - trimmed.len();
        let rest = match trimmed.strip_prefix("eq") {
            Some(r) if r.is_empty() || r.starts_with(char::is_whitespace) => r,
            _ => {
                let found = trimmed.split_whitespace().next().unwrap_or("").to_string();
                return Err(err(ln, indent + 1, ParseErrorKind::UnexpectedToken {
                    found: format!("`{found}`"),
                    expected: "`eq`",
                }));
            }
        };
        let col0 = indent + 3;
        polys.push(parse_expr_line(rest, ln, col0, &map)?);
    }
    if polys.is_empty() {
        let last = text.split('\n').count();
        return Err(err(last, 1, ParseErrorKind::NoEquations));
    }
    Ok(PolynomialSystem { params, vars, polys })
}

/// Parse and scale each equation to integer coefficients.
pub fn parse_integral_system(text: &str) -> Result<PolynomialSystem<Integer>> {
    Ok(parse_system(text)?.clear_denominators())
}

/// Coefficient formatting shared by the integral and rational renderers.
pub trait RenderCoeff {
    fn is_negative(&self) -> bool;
    fn is_unit_magnitude(&self) -> bool;
    fn abs_string(&self) -> String;
}

impl RenderCoeff for Integer {
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_unit_magnitude(&self) -> bool {
        self.abs().is_one()
    }
    fn abs_string(&self) -> String {
        self.abs().to_string()
    }
}

impl RenderCoeff for Rational {
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_unit_magnitude(&self) -> bool {
        self.abs().is_one()
    }
    fn abs_string(&self) -> String {
        self.abs().to_string()
    }
}

impl RenderCoeff for crate::arith::PrimeFieldElem {
    fn is_negative(&self) -> bool {
        false
    }
    fn is_unit_magnitude(&self) -> bool {
        self.value() == 1
    }
    fn abs_string(&self) -> String {
        self.value().to_string()
    }
}

fn render_monomial(m: &Monomial, names: &[String]) -> String {
    m.iter()
        .map(|(i, e)| {
            let name = names.get(i).cloned().unwrap_or_else(|| format!("v{i}"));
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Render in descending canonical order; the zero polynomial is `0`.
pub fn render_polynomial<C: crate::arith::Coeff + RenderCoeff>(f: &Polynomial<C>, names: &[String]) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in f.terms().rev().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&c.abs_string());
        } else if c.is_unit_magnitude() {
            out.push_str(&render_monomial(m, names));
        } else {
            let _ = write!(out, "{}*{}", c.abs_string(), render_monomial(m, names));
        }
    }
    out
}

pub fn render_system<C: crate::arith::Coeff + RenderCoeff>(s: &PolynomialSystem<C>) -> String {
    let names = s.names();
    let mut out = String::new();
    let header = |kw: &str, ids: &[String]| {
        if ids.is_empty() {
            kw.to_string()
        } else {
            format!("{kw} {}", ids.join(" "))
        }
    };
    let _ = writeln!(out, "{}", header("params", &s.params));
    let _ = writeln!(out, "{}", header("vars", &s.vars));
    for f in &s.polys {
        let _ = writeln!(out, "eq {}", render_polynomial(f, &names));
    }
    out
}

/// One decision, as emitted by the CLI. Timing is optional so that
/// reports stay byte-identical across runs unless asked for.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub instance: String,
    pub answer: Answer,
    pub oracle: String,
    /// Nonzero parameter polynomial in the ideal, for UNSAT.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<f64>,
}

impl DecisionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serialisable")
    }
}

/// CSV with a header row.
pub fn to_csv<S: AsRef<str>>(header: &[&str], rows: &[Vec<S>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r.iter().map(|s| s.as_ref())).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf8 input")
}
