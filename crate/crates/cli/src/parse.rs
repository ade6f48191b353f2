//! Text and JSON input for polynomial systems.

use fewnomial::algebra::Rat;
use fewnomial::bivar::{BivarError, SparsePolyQ2};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("g must have exactly 3 terms, found {0}")]
    GNotTrinomial(usize),
    #[error("non-integer exponent at position {0}")]
    NonIntegerExponent(usize),
    #[error("invalid JSON input: {0}")]
    Json(String),
    #[error(transparent)]
    Bivar(#[from] BivarError),
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, msg: msg.into() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Options {
    pub precision: u32,
    pub max_depth: u32,
    pub seed: u64,
    pub slow: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            precision: 64,
            max_depth: 64,
            seed: 0,
            slow: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSpec {
    pub f: SparsePolyQ2,
    pub g: SparsePolyQ2,
    pub options: Options,
}

impl SystemSpec {
    pub fn new(f: SparsePolyQ2, g: SparsePolyQ2) -> Result<Self, ParseError> {
        if g.len() != 3 {
            return Err(ParseError::GNotTrinomial(g.len()));
        }
        Ok(SystemSpec {
            f,
            g,
            options: Options::default(),
        })
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

type RawTerm = (Rat, i64, i64);

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn at(&self) -> usize {
        self.offset + self.pos
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    /// Unsigned integer or finite decimal, optionally followed by `/ digits`.
    fn number(&mut self) -> Result<Rat, ParseError> {
        self.skip_ws();
        let start = self.at();
        let int = self.digits().ok_or_else(|| syntax(start, "expected a number"))?;
        let mut value = Rat::from_integer(int.parse::<BigInt>().unwrap());
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            let frac = self.digits().ok_or_else(|| syntax(self.at(), "expected digits after '.'"))?;
            let scale = BigInt::from(10).pow(frac.len() as u32);
            value += Rat::new(frac.parse::<BigInt>().unwrap(), scale);
        }
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let at = self.at();
            let d = self.digits().ok_or_else(|| syntax(at, "expected a denominator"))?;
            let d: BigInt = d.parse().unwrap();
            if d.is_zero() {
                return Err(syntax(at, "zero denominator"));
            }
            value /= Rat::from_integer(d);
        }
        Ok(value)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.at();
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        self.skip_ws();
        let at = self.at();
        let d = self.digits().ok_or_else(|| syntax(at, "expected an integer exponent"))?;
        if matches!(self.src.get(self.pos), Some(b'.')) || self.peek() == Some(b'/') {
            return Err(ParseError::NonIntegerExponent(start));
        }
        let v: i64 = d.parse().map_err(|_| syntax(at, "exponent too large"))?;
        if paren && !self.eat(b')') {
            return Err(syntax(self.at(), "expected ')'"));
        }
        Ok(if neg { -v } else { v })
    }

    fn factor(&mut self, term: &mut RawTerm) -> Result<(), ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let neg = self.eat(b'-');
                let v = self.number()?;
                if !self.eat(b')') {
                    return Err(syntax(self.at(), "expected ')'"));
                }
                term.0 *= if neg { -v } else { v };
            }
            Some(c) if c.is_ascii_digit() => term.0 *= self.number()?,
            Some(c @ (b'x' | b'y')) => {
                self.pos += 1;
                let e = if self.eat(b'^') { self.exponent()? } else { 1 };
                if c == b'x' {
                    term.1 += e;
                } else {
                    term.2 += e;
                }
            }
            Some(c) => return Err(syntax(self.at(), format!("unexpected '{}'", c as char))),
            None => return Err(syntax(self.at(), "unexpected end of input")),
        }
        Ok(())
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(b'(' | b'x' | b'y' | b'0'..=b'9'))
    }

    fn term(&mut self, sign: i32) -> Result<RawTerm, ParseError> {
        let mut t: RawTerm = (Rat::from_integer(sign.into()), 0, 0);
        self.factor(&mut t)?;
        loop {
            if self.eat(b'*') {
                self.factor(&mut t)?;
            } else if self.starts_factor() {
                self.factor(&mut t)?;
            } else {
                return Ok(t);
            }
        }
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        let mut sign = 1;
        let mut op_pos = None;
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            op_pos = Some(self.at());
            self.pos += 1;
            sign = if c == b'-' { -1 } else { 1 };
        }
        loop {
            if !self.starts_factor() {
                return Err(match op_pos {
                    Some(p) => syntax(p, "dangling operator"),
                    None => syntax(self.at(), "expected a term"),
                });
            }
            terms.push(self.term(sign)?);
            match self.peek() {
                Some(c @ (b'+' | b'-')) => {
                    op_pos = Some(self.at());
                    self.pos += 1;
                    sign = if c == b'-' { -1 } else { 1 };
                }
                _ => return Ok(terms),
            }
        }
    }
}

/// Parses one polynomial; `offset` shifts reported positions.
pub fn parse_poly_at(text: &str, offset: usize) -> Result<SparsePolyQ2, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        offset,
    };
    let terms = p.poly()?;
    if let Some(c) = p.peek() {
        return Err(syntax(p.at(), format!("unexpected '{}'", c as char)));
    }
    Ok(SparsePolyQ2::from_rat_terms(&terms)?)
}

pub fn parse_poly(text: &str) -> Result<SparsePolyQ2, ParseError> {
    parse_poly_at(text, 0)
}

/// `"f ; g"`, or a JSON object with fields `f`, `g` and optional `options`.
pub fn parse_system(text: &str) -> Result<SystemSpec, ParseError> {
    if text.trim_start().starts_with('{') {
        return parse_system_json(text);
    }
    let Some(semi) = text.find(';') else {
        return Err(syntax(text.len(), "expected ';' between f and g"));
    };
    let f = parse_poly_at(&text[..semi], 0)?;
    let g = parse_poly_at(&text[semi + 1..], semi + 1)?;
    SystemSpec::new(f, g)
}

fn json_poly(v: &Value) -> Result<SparsePolyQ2, ParseError> {
    match v {
        Value::String(s) => parse_poly(s),
        Value::Array(items) => {
            let mut terms = Vec::with_capacity(items.len());
            for it in items {
                let bad = || ParseError::Json(format!("term must be [coeff, i, j]: {it}"));
                let arr = it.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
                let c = match &arr[0] {
                    Value::String(s) => {
                        let neg = s.trim_start().starts_with('-');
                        let body = s.trim_start().trim_start_matches('-');
                        let mut p = Parser {
                            src: body.as_bytes(),
                            pos: 0,
                            offset: 0,
                        };
                        let r = p.number()?;
                        if p.peek().is_some() {
                            return Err(bad());
                        }
                        if neg {
                            -r
                        } else {
                            r
                        }
                    }
                    Value::Number(n) if n.is_i64() => Rat::from_integer(n.as_i64().unwrap().into()),
                    _ => return Err(bad()),
                };
                let e = |x: &Value| match x {
                    Value::Number(n) if n.is_i64() => Ok(n.as_i64().unwrap()),
                    Value::Number(_) => Err(ParseError::NonIntegerExponent(0)),
                    _ => Err(bad()),
                };
                terms.push((c, e(&arr[1])?, e(&arr[2])?));
            }
            Ok(SparsePolyQ2::from_rat_terms(&terms)?)
        }
        _ => Err(ParseError::Json("polynomial must be a string or a term list".into())),
    }
}

pub fn parse_system_json(text: &str) -> Result<SystemSpec, ParseError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let field = |k: &str| v.get(k).ok_or_else(|| ParseError::Json(format!("missing field '{k}'")));
    let mut spec = SystemSpec::new(json_poly(field("f")?)?, json_poly(field("g")?)?)?;
    if let Some(o) = v.get("options") {
        spec.options = serde_json::from_value(o.clone()).map_err(|e| ParseError::Json(e.to_string()))?;
    }
    Ok(spec)
}

fn render_coeff(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("({}/{})", c.numer(), c.denom())
    }
}

fn render_power(name: &str, e: &Rat) -> Option<String> {
    if e.is_zero() {
        None
    } else if e.is_one() {
        Some(name.to_string())
    } else {
        Some(format!("{name}^{}", e.numer()))
    }
}

/// Text form accepted by [`parse_poly`]. Coefficients must be rational.
pub fn render_poly(p: &SparsePolyQ2) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in p.terms().iter().enumerate() {
        let c = t.coeff.as_rat().cloned().unwrap_or_else(Rat::zero);
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        let mut parts = Vec::new();
        let pows: Vec<String> = [("x", &t.exp.0), ("y", &t.exp.1)]
            .into_iter()
            .filter_map(|(n, e)| render_power(n, e))
            .collect();
        if !mag.is_one() || pows.is_empty() {
            parts.push(render_coeff(&mag));
        }
        parts.extend(pows);
        out.push_str(&parts.join("*"));
    }
    out
}

pub fn render(spec: &SystemSpec) -> String {
    format!("{} ; {}", render_poly(&spec.f), render_poly(&spec.g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn sextic_text() {
        let s = parse_system("x^6 + (44/31)y^3 - y ; y^6 + (44/31)x^3 - x").unwrap();
        let (f, g) = fewnomial::fixtures::sextic();
        assert_eq!((s.f, s.g), (f, g));
    }

    #[test]
    fn quintic_text() {
        let s = parse_system("x^5 - (49/95)x^3*y + y^6 ; y^5 - (49/95)x*y^3 + x^6").unwrap();
        let (f, g) = fewnomial::fixtures::quintic();
        assert_eq!((s.f, s.g), (f, g));
    }

    #[test]
    fn dangling_operator() {
        assert_eq!(
            parse_system("x + ; y"),
            Err(ParseError::Syntax {
                pos: 2,
                msg: "dangling operator".into()
            })
        );
    }

    #[test]
    fn g_must_be_trinomial() {
        assert_eq!(parse_system("x + y ; x - y"), Err(ParseError::GNotTrinomial(2)));
        // merged terms count once
        assert_eq!(parse_system("x ; x + x - 1"), Err(ParseError::GNotTrinomial(2)));
    }

    #[test]
    fn exponents() {
        assert!(matches!(parse_poly("x^(1/2)"), Err(ParseError::NonIntegerExponent(_))));
        assert!(matches!(parse_poly("x^1.5"), Err(ParseError::NonIntegerExponent(_))));
        let p = parse_poly("x^-2*y^(-1) + 3").unwrap();
        assert_eq!(p.terms()[0].exp, (r(-2, 1), r(-1, 1)));
    }

    #[test]
    fn decimals_are_exact() {
        let p = parse_poly("0.25x - 1.5").unwrap();
        assert_eq!(p.terms()[0].coeff.as_rat(), Some(&r(-3, 2)));
        assert_eq!(p.terms()[1].coeff.as_rat(), Some(&r(1, 4)));
        assert!(parse_poly("0.x").is_err());
    }

    #[test]
    fn implicit_products() {
        let p = parse_poly("2 x y 3 x").unwrap();
        assert_eq!(p.terms()[0].coeff.as_rat(), Some(&r(6, 1)));
        assert_eq!(p.terms()[0].exp, (r(2, 1), r(1, 1)));
    }

    #[test]
    fn json_forms() {
        let a = parse_system(r#"{"f": "x^6 + (44/31)y^3 - y", "g": [["1", 0, 6], ["44/31", 3, 0], [-1, 1, 0]]}"#).unwrap();
        let (f, g) = fewnomial::fixtures::sextic();
        assert_eq!((a.f, a.g), (f, g));
        let b = parse_system(r#"{"f": "x", "g": "1 + x + y", "options": {"precision": 128}}"#).unwrap();
        assert_eq!(b.options.precision, 128);
        assert_eq!(b.options.max_depth, 64);
    }

    #[test]
    fn render_sextic() {
        let (f, g) = fewnomial::fixtures::sextic();
        let s = SystemSpec::new(f, g).unwrap();
        assert_eq!(render(&s), "-y + (44/31)*y^3 + x^6 ; y^6 - x + (44/31)*x^3");
        assert_eq!(parse_system(&render(&s)).unwrap(), s);
    }
}
