//! The shared textual grammar for polynomials, tuples, families, points
//! and scalars, with renderers that round-trip through the parser.
//!
//! Grammar (whitespace is insignificant everywhere):
//!
//! ```text
//! poly       := ["+" | "-"] term { ("+" | "-") term }
//! term       := factor { ["*"] factor }            (adjacency multiplies)
//! factor     := integer [ "/" integer ]
//!             | variable [ "^" integer ]
//!             | parameter [ "^" integer ]
//!             | "(" poly ")" [ "^" integer ]
//! variable   := "x0" .. "x9"
//! parameter  := "a0" .. "a9"
//! tuple      := "[" poly { ":" poly } "]"
//! family     := tuple "over" "{" [ poly { "," poly } ] "}"
//!               "params" "(" parameter [ ".." parameter ] ")"
//! point      := scalar { ":" scalar }
//! scalar     := ["-"] integer [ "/" integer ]
//! ```
//!
//! Parameters are admitted only inside family text: in the component slots
//! (bihomogeneous in parameters and variables) and in the constraint list
//! (parameters only). Every parsed polynomial must be homogeneous; family
//! slots must be bihomogeneous. Coefficient arithmetic is exact, with
//! `num/den` requiring an invertible denominator in the chosen field.
//!
//! Anything textually well formed but semantically untenable as a value
//! (an all-zero tuple, slots of mixed degrees, a constraint mentioning a
//! variable) is likewise reported as a [`ParseError`]: the text fails to
//! denote a value. Errors from *operating* on parsed values are the
//! [`crate::Error`] domain errors instead.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::families::{BiPoly, ParametricFamily};
use crate::polyring::{FieldKind, HomogeneousPoly, Monomial, Scalar};
use crate::wspace::MapTuple;

/// A syntax or static-semantics failure, with the byte offset of the
/// offending token in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ParseError {}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Var(usize),
    Param(usize),
    Word(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Colon,
    Comma,
    DotDot,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(s) => format!("integer '{s}'"),
            Tok::Var(i) => format!("'x{i}'"),
            Tok::Param(i) => format!("'a{i}'"),
            Tok::Word(w) => format!("'{w}'"),
            Tok::Plus => "'+'".to_string(),
            Tok::Minus => "'-'".to_string(),
            Tok::Star => "'*'".to_string(),
            Tok::Slash => "'/'".to_string(),
            Tok::Caret => "'^'".to_string(),
            Tok::LParen => "'('".to_string(),
            Tok::RParen => "')'".to_string(),
            Tok::LBracket => "'['".to_string(),
            Tok::RBracket => "']'".to_string(),
            Tok::LBrace => "'{'".to_string(),
            Tok::RBrace => "'}'".to_string(),
            Tok::Colon => "':'".to_string(),
            Tok::Comma => "','".to_string(),
            Tok::DotDot => "'..'".to_string(),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => toks.push((start, Tok::Plus)),
            '-' => toks.push((start, Tok::Minus)),
            '*' => toks.push((start, Tok::Star)),
            '/' => toks.push((start, Tok::Slash)),
            '^' => toks.push((start, Tok::Caret)),
            '(' => toks.push((start, Tok::LParen)),
            ')' => toks.push((start, Tok::RParen)),
            '[' => toks.push((start, Tok::LBracket)),
            ']' => toks.push((start, Tok::RBracket)),
            '{' => toks.push((start, Tok::LBrace)),
            '}' => toks.push((start, Tok::RBrace)),
            ':' => toks.push((start, Tok::Colon)),
            ',' => toks.push((start, Tok::Comma)),
            '.' => {
                if bytes.get(i + 1) == Some(&b'.') {
                    toks.push((start, Tok::DotDot));
                    i += 2;
                    continue;
                }
                return err(start, "unexpected '.'");
            }
            '0'..='9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                toks.push((start, Tok::Int(src[i..j].to_string())));
                i = j;
                continue;
            }
            'a'..='z' | 'A'..='Z' => {
                // `x3` / `a3` are single tokens; adjacency like `a0a1` is
                // two of them, but a second digit (`x10`) is an error, not
                // a silent product with an integer.
                if (c == 'x' || c == 'a')
                    && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)
                {
                    if bytes.get(i + 2).is_some_and(u8::is_ascii_digit) {
                        let mut j = i;
                        while j < bytes.len() && (bytes[j] as char).is_ascii_alphanumeric() {
                            j += 1;
                        }
                        return err(start, format!("unrecognized symbol '{}'", &src[i..j]));
                    }
                    let idx = (bytes[i + 1] - b'0') as usize;
                    toks.push((
                        start,
                        if c == 'x' { Tok::Var(idx) } else { Tok::Param(idx) },
                    ));
                    i += 2;
                    continue;
                }
                let mut j = i;
                while j < bytes.len() && (bytes[j] as char).is_ascii_alphanumeric() {
                    j += 1;
                }
                let word = &src[i..j];
                if word == "over" || word == "params" {
                    toks.push((start, Tok::Word(word.to_string())));
                } else {
                    return err(start, format!("unrecognized symbol '{word}'"));
                }
                i = j;
                continue;
            }
            _ => return err(start, format!("unexpected character '{c}'")),
        }
        i += 1;
    }
    Ok(toks)
}

/// A not-necessarily-homogeneous exact polynomial, used only while parsing.
#[derive(Clone)]
struct GeneralPoly {
    field: FieldKind,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl GeneralPoly {
    fn zero(field: FieldKind, nvars: usize) -> GeneralPoly {
        GeneralPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    fn constant(field: FieldKind, nvars: usize, c: Scalar) -> GeneralPoly {
        let mut p = GeneralPoly::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::new(&alloc::vec![0; nvars]), c);
        }
        p
    }

    fn variable(field: FieldKind, nvars: usize, i: usize) -> GeneralPoly {
        let mut p = GeneralPoly::zero(field, nvars);
        p.terms
            .insert(Monomial::variable(nvars, i), Scalar::one(field));
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        let merged = match self.terms.remove(&m) {
            None => c,
            Some(prev) => &prev + &c,
        };
        if !merged.is_zero() {
            self.terms.insert(m, merged);
        }
    }

    fn add(&self, other: &GeneralPoly) -> GeneralPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn neg(&self) -> GeneralPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    fn mul(&self, other: &GeneralPoly) -> GeneralPoly {
        let mut out = GeneralPoly::zero(self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn pow(&self, k: usize) -> GeneralPoly {
        let mut out = GeneralPoly::constant(self.field, self.nvars, Scalar::one(self.field));
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Fails (with the span start of the expression) unless all terms share
    /// one degree; the empty polynomial is the zero form of degree 0.
    fn into_homogeneous(self, position: usize) -> Result<HomogeneousPoly, ParseError> {
        let mut degree = None;
        for m in self.terms.keys() {
            match degree {
                None => degree = Some(m.degree()),
                Some(d) if d != m.degree() => {
                    return err(
                        position,
                        format!(
                            "polynomial is not homogeneous: mixes degrees {d} and {}",
                            m.degree()
                        ),
                    )
                }
                _ => {}
            }
        }
        HomogeneousPoly::from_terms(self.field, self.nvars, degree.unwrap_or(0), self.terms)
            .map_err(|e| ParseError {
                position,
                message: e.to_string(),
            })
    }
}

/// What the polynomial expressions being parsed may mention. The combined
/// variable space puts parameters first, matching the bihomogeneous layout.
#[derive(Clone, Copy)]
struct VarScope {
    /// Number of admissible x-variables (0 forbids them).
    nvars: usize,
    /// Number of admissible parameters (0 forbids them).
    params: usize,
}

impl VarScope {
    fn total(&self) -> usize {
        self.nvars + self.params
    }
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    field: FieldKind,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(toks: &'a [(usize, Tok)], field: FieldKind, src_len: usize) -> Parser<'a> {
        Parser {
            toks,
            pos: 0,
            field,
            end: src_len,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn advance(&mut self) -> Option<&(usize, Tok)> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok) -> Result<(), ParseError> {
        match self.advance() {
            Some((_, t)) if t == want => Ok(()),
            Some((p, t)) => err(*p, format!("expected {}, found {}", want.describe(), t.describe())),
            None => err(self.end, format!("expected {}, found end of input", want.describe())),
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some((p, t)) => err(*p, format!("unexpected trailing {}", t.describe())),
        }
    }

    fn parse_usize(&mut self, what: &str) -> Result<usize, ParseError> {
        match self.advance() {
            Some((p, Tok::Int(s))) => s
                .parse::<usize>()
                .map_err(|_| ParseError {
                    position: *p,
                    message: format!("{what} '{s}' is out of range"),
                }),
            Some((p, t)) => err(*p, format!("expected {what}, found {}", t.describe())),
            None => err(self.end, format!("expected {what}, found end of input")),
        }
    }

    /// integer ["/" integer] as a field element, at the given sign.
    fn parse_coefficient(&mut self, digits: String, position: usize) -> Result<Scalar, ParseError> {
        let num: BigInt = digits.parse().expect("digit run");
        let den: BigInt = if matches!(self.peek(), Some(Tok::Slash)) {
            self.advance();
            match self.advance() {
                Some((p, Tok::Int(s))) => {
                    let d: BigInt = s.parse().expect("digit run");
                    let p = *p;
                    if d == BigInt::from(0) {
                        return err(p, "zero denominator");
                    }
                    d
                }
                Some((p, t)) => {
                    return err(*p, format!("expected denominator, found {}", t.describe()))
                }
                None => return err(self.end, "expected denominator, found end of input"),
            }
        } else {
            BigInt::one()
        };
        match Scalar::from_big_ratio(self.field, num.clone(), den.clone()) {
            Some(s) => Ok(s),
            None => err(
                position,
                format!("denominator '{den}' is not invertible in the field"),
            ),
        }
    }

    /// Optional `^ k` suffix.
    fn parse_exponent(&mut self) -> Result<usize, ParseError> {
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.advance();
            self.parse_usize("exponent")
        } else {
            Ok(1)
        }
    }

    fn parse_factor(&mut self, scope: VarScope) -> Result<GeneralPoly, ParseError> {
        let (p, tok) = match self.advance() {
            Some(pt) => (pt.0, pt.1.clone()),
            None => return err(self.end, "expected a factor, found end of input"),
        };
        match tok {
            Tok::Int(s) => {
                let c = self.parse_coefficient(s, p)?;
                Ok(GeneralPoly::constant(self.field, scope.total(), c))
            }
            Tok::Var(i) => {
                if i >= scope.nvars {
                    if scope.nvars == 0 {
                        return err(p, format!("variable 'x{i}' is not allowed here"));
                    }
                    return err(
                        p,
                        format!("variable 'x{i}' exceeds the ambient dimension (max x{})", scope.nvars - 1),
                    );
                }
                let e = self.parse_exponent()?;
                Ok(GeneralPoly::variable(self.field, scope.total(), scope.params + i).pow(e))
            }
            Tok::Param(i) => {
                if i >= scope.params {
                    if scope.params == 0 {
                        return err(p, format!("parameter 'a{i}' is not allowed here"));
                    }
                    return err(
                        p,
                        format!("parameter 'a{i}' exceeds the declared parameters (max a{})", scope.params - 1),
                    );
                }
                let e = self.parse_exponent()?;
                Ok(GeneralPoly::variable(self.field, scope.total(), i).pow(e))
            }
            Tok::LParen => {
                let inner = self.parse_poly(scope)?;
                self.expect(&Tok::RParen)?;
                let e = self.parse_exponent()?;
                Ok(inner.pow(e))
            }
            other => err(p, format!("expected a factor, found {}", other.describe())),
        }
    }

    fn parse_term(&mut self, scope: VarScope) -> Result<GeneralPoly, ParseError> {
        let mut acc = self.parse_factor(scope)?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.advance();
                    acc = acc.mul(&self.parse_factor(scope)?);
                }
                // Adjacency multiplies: `3x0`, `x0(x1+x2)`.
                Some(Tok::Int(_)) | Some(Tok::Var(_)) | Some(Tok::Param(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.parse_factor(scope)?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_poly(&mut self, scope: VarScope) -> Result<GeneralPoly, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.advance();
            }
            Some(Tok::Minus) => {
                self.advance();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.parse_term(scope)?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.advance();
                    acc = acc.add(&self.parse_term(scope)?);
                }
                Some(Tok::Minus) => {
                    self.advance();
                    acc = acc.add(&self.parse_term(scope)?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    /// `[ poly : ... : poly ]`, returned raw with per-slot span starts.
    fn parse_bracketed_slots(
        &mut self,
        scope: VarScope,
    ) -> Result<Vec<(usize, GeneralPoly)>, ParseError> {
        self.expect(&Tok::LBracket)?;
        let mut slots = Vec::new();
        loop {
            let start = self.here();
            let p = self.parse_poly(scope)?;
            slots.push((start, p));
            match self.advance() {
                Some((_, Tok::Colon)) => continue,
                Some((_, Tok::RBracket)) => return Ok(slots),
                Some((p, t)) => {
                    return err(*p, format!("expected ':' or ']', found {}", t.describe()))
                }
                None => return err(self.end, "expected ':' or ']', found end of input"),
            }
        }
    }

    /// ["-"] integer ["/" integer]
    fn parse_scalar(&mut self) -> Result<Scalar, ParseError> {
        let negate = if matches!(self.peek(), Some(Tok::Minus)) {
            self.advance();
            true
        } else {
            false
        };
        match self.advance() {
            Some((p, Tok::Int(s))) => {
                let (s, p) = (s.clone(), *p);
                let c = self.parse_coefficient(s, p)?;
                Ok(if negate { -&c } else { c })
            }
            Some((p, t)) => err(*p, format!("expected a number, found {}", t.describe())),
            None => err(self.end, "expected a number, found end of input"),
        }
    }
}

/// Parses one homogeneous polynomial in `nvars` x-variables.
pub fn parse_poly(
    field: FieldKind,
    nvars: usize,
    src: &str,
) -> Result<HomogeneousPoly, ParseError> {
    let toks = tokenize(src)?;
    let mut parser = Parser::new(&toks, field, src.len());
    let scope = VarScope { nvars, params: 0 };
    let start = parser.here();
    let p = parser.parse_poly(scope)?;
    parser.expect_end()?;
    p.into_homogeneous(start)
}

/// Parses `[p0 : ... : pn]` with exactly `nvars = n + 1` components.
pub fn parse_tuple(field: FieldKind, nvars: usize, src: &str) -> Result<MapTuple, ParseError> {
    let toks = tokenize(src)?;
    let mut parser = Parser::new(&toks, field, src.len());
    let scope = VarScope { nvars, params: 0 };
    let slots = parser.parse_bracketed_slots(scope)?;
    parser.expect_end()?;
    if slots.len() != nvars {
        return err(
            0,
            format!("expected {} components, found {}", nvars, slots.len()),
        );
    }
    let comps = slots
        .into_iter()
        .map(|(pos, gp)| gp.into_homogeneous(pos))
        .collect::<Result<Vec<_>, _>>()?;
    MapTuple::new(comps).map_err(|e| ParseError {
        position: 0,
        message: e.to_string(),
    })
}

/// Parses `tuple over {constraints} params (a0..ak)` with `nvars = n + 1`
/// component slots, bihomogeneous in parameters and variables.
pub fn parse_family(
    field: FieldKind,
    nvars: usize,
    src: &str,
) -> Result<ParametricFamily, ParseError> {
    let toks = tokenize(src)?;

    // The parameter arity is declared at the end; read it first so the
    // slots can be parsed over the right combined variable space.
    let params_at = toks
        .iter()
        .position(|(_, t)| matches!(t, Tok::Word(w) if w == "params"))
        .ok_or(ParseError {
            position: src.len(),
            message: String::from("missing 'params (a0..ak)' clause"),
        })?;
    let mut tail = Parser::new(&toks[params_at + 1..], field, src.len());
    tail.expect(&Tok::LParen)?;
    let first = match tail.advance() {
        Some((_, Tok::Param(0))) => 0usize,
        Some((p, t)) => return err(*p, format!("expected 'a0', found {}", t.describe())),
        None => return err(src.len(), "expected 'a0', found end of input"),
    };
    let last = if matches!(tail.peek(), Some(Tok::DotDot)) {
        tail.advance();
        match tail.advance() {
            Some((_, Tok::Param(i))) => *i,
            Some((p, t)) => {
                return err(*p, format!("expected a parameter, found {}", t.describe()))
            }
            None => return err(src.len(), "expected a parameter, found end of input"),
        }
    } else {
        first
    };
    tail.expect(&Tok::RParen)?;
    tail.expect_end()?;
    let params = last + 1;

    let scope = VarScope { nvars, params };
    let mut parser = Parser::new(&toks[..params_at], field, src.len());
    let slots = parser.parse_bracketed_slots(scope)?;
    if slots.len() != nvars {
        return err(
            0,
            format!("expected {} components, found {}", nvars, slots.len()),
        );
    }
    match parser.advance() {
        Some((p, t)) => match t {
            Tok::Word(w) if w == "over" => {}
            other => return err(*p, format!("expected 'over', found {}", other.describe())),
        },
        None => return err(src.len(), "expected 'over', found end of input"),
    }
    parser.expect(&Tok::LBrace)?;
    let constraint_scope = VarScope { nvars: 0, params };
    let mut constraints = Vec::new();
    if !matches!(parser.peek(), Some(Tok::RBrace)) {
        loop {
            let start = parser.here();
            let gp = parser.parse_poly(constraint_scope)?;
            // Constraints live in the parameters alone; rebase from the
            // combined space (which has no x-variables here anyway).
            constraints.push((start, gp));
            match parser.peek() {
                Some(Tok::Comma) => {
                    parser.advance();
                }
                _ => break,
            }
        }
    }
    parser.expect(&Tok::RBrace)?;
    parser.expect_end()?;

    let components = slots
        .into_iter()
        .map(|(pos, gp)| {
            let combined = gp.into_homogeneous(pos)?;
            BiPoly::from_combined(&combined, params, nvars).map_err(|e| ParseError {
                position: pos,
                message: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let constraints = constraints
        .into_iter()
        .map(|(pos, gp)| gp.into_homogeneous(pos))
        .collect::<Result<Vec<_>, _>>()?;
    ParametricFamily::new(components, constraints).map_err(|e| ParseError {
        position: 0,
        message: e.to_string(),
    })
}

/// Parses `c0 : c1 : ... : ck` into exact field elements.
pub fn parse_point(field: FieldKind, src: &str) -> Result<Vec<Scalar>, ParseError> {
    let toks = tokenize(src)?;
    let mut parser = Parser::new(&toks, field, src.len());
    let mut coords = alloc::vec![parser.parse_scalar()?];
    while matches!(parser.peek(), Some(Tok::Colon)) {
        parser.advance();
        coords.push(parser.parse_scalar()?);
    }
    parser.expect_end()?;
    Ok(coords)
}

/// Parses a single exact field element.
pub fn parse_scalar(field: FieldKind, src: &str) -> Result<Scalar, ParseError> {
    let toks = tokenize(src)?;
    let mut parser = Parser::new(&toks, field, src.len());
    let c = parser.parse_scalar()?;
    parser.expect_end()?;
    Ok(c)
}

struct DisplayMonomial<'a>(&'a Monomial);

impl core::fmt::Display for DisplayMonomial<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        self.0.render(f, 'x')
    }
}

/// Renders a tuple as `[p0 : p1 : ... : pn]` (same as its `Display`).
pub fn render_tuple(t: &MapTuple) -> String {
    format!("{t}")
}

/// Renders a point as `c0:c1:...:ck`.
pub fn render_point(pt: &[Scalar]) -> String {
    let mut out = String::new();
    for (i, c) in pt.iter().enumerate() {
        if i > 0 {
            out.push(':');
        }
        out.push_str(&format!("{c}"));
    }
    out
}

/// Renders one bihomogeneous slot: a sum over x-monomials of
/// `coefficient * monomial` pieces, parenthesizing multi-term parameter
/// coefficients so the result re-parses exactly.
fn render_bipoly(b: &BiPoly) -> String {
    if b.is_zero() {
        return String::from("0");
    }
    let mut pieces: Vec<String> = Vec::new();
    // Descending x-monomial order to match polynomial printing.
    for (m, c) in b.terms().collect::<Vec<_>>().into_iter().rev() {
        let coeff = format!("{}", DisplayParams(c));
        let mono = if m.degree() == 0 {
            None
        } else {
            Some(format!("{}", DisplayMonomial(m)))
        };
        let single_term = c.terms().count() == 1;
        let piece = match (single_term, mono) {
            (_, None) if single_term => coeff,
            (_, None) => format!("({coeff})"),
            (true, Some(mono)) => {
                if coeff == "1" {
                    mono
                } else if coeff == "-1" {
                    format!("-{mono}")
                } else {
                    format!("{coeff}*{mono}")
                }
            }
            (false, Some(mono)) => format!("({coeff})*{mono}"),
        };
        pieces.push(piece);
    }
    let mut out = String::new();
    for (i, piece) in pieces.iter().enumerate() {
        if i == 0 {
            out.push_str(piece);
        } else if let Some(rest) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(piece);
        }
    }
    out
}

/// Renders a family as `[slots] over {constraints} params (a0..ak)`.
pub fn render_family(f: &ParametricFamily) -> String {
    let mut out = String::from("[");
    for (i, c) in f.components().iter().enumerate() {
        if i > 0 {
            out.push_str(" : ");
        }
        out.push_str(&render_bipoly(c));
    }
    out.push_str("] over {");
    for (i, g) in f.base_constraints().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&format!("{}", DisplayParams(g)));
    }
    out.push_str("} params (");
    if f.param_arity() == 1 {
        out.push_str("a0");
    } else {
        out.push_str(&format!("a0..a{}", f.param_arity() - 1));
    }
    out.push(')');
    out
}

struct DisplayParams<'a>(&'a HomogeneousPoly);

impl core::fmt::Display for DisplayParams<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        self.0.render(f, 'a')
    }
}

/// Renders a polynomial in the parameter symbols `a0..a9`.
pub fn render_param_poly(p: &HomogeneousPoly) -> String {
    format!("{}", DisplayParams(p))
}
