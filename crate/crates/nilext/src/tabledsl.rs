//! Parser and serializer for algebra presentations and catalog files.
//!
//! The format is line-oriented UTF-8 with LF line endings; entries are
//! separated by one or more blank lines and `#` starts a comment line.
//!
//! ```text
//! # one entry
//! algebra N4s_13 dim 4
//! params lambda
//! e1*e1 = e2
//! e1*e2 = e3
//! e1*e3 = e4
//! e2*e2 = lambda e4
//! expect
//!   cd true
//!   h2c 7
//!   h2eq false
//!   note "one-parameter family"
//! end
//! ```
//!
//! Grammar summary:
//!
//! * header: `algebra NAME dim N` — NAME is any whitespace-free token;
//! * `params p1 (c1 != c2, ...) p2 ...` — each parenthesized group lists
//!   nonvanishing constraints `lhs != rhs` (meaning `lhs - rhs` is nonzero
//!   on admissible values) and attaches after a parameter name;
//! * equations: `ei*ej = TERM (+ TERM | - TERM)*` with `TERM = [COEFF] ek`;
//!   at most one equation per unordered pair; missing products are zero;
//! * coefficients are polynomial literals built from integers, fractions
//!   (`3/4`), parameter names, `eta(k)` (the root `zeta_{2k}`, so
//!   `eta(k)^k = -1`) and `zeta(m)^j`; `*`, `/`, `^`, unary `-` and
//!   parentheses are supported, with no implicit multiplication except
//!   coefficient-times-basis — additive coefficients must be parenthesized:
//!   `(1+alpha) e5`;
//! * the optional `expect ... end` block holds `cd BOOL`, `ann N`, `h2c N`,
//!   `h2d N`, `h2eq BOOL`, `note "..."` and witness annotations:
//!   `witness [r11,r12,..; r21,..; ..] maps COCYCLE to COCYCLE` with
//!   `COCYCLE` a combination of `dij` basis forms (`d13` is the symmetric
//!   form with value 1 on `(e1, e3)`), or `witness radical "..."` for an
//!   orbit relation whose published change of basis needs radicals outside
//!   the supported scalars and is therefore recorded as unverifiable.
//!
//! The cyclotomic order of an entry's ring is the lcm of the orders needed
//! by the `eta`/`zeta` literals it contains (1 when there are none).

use std::collections::BTreeMap;
use std::fmt;

use nilext_core::poly::{Assignment, Constraint, Poly, Ring, RingRef};
use nilext_core::scalar::Scalar;
use nilext_core::sympair::{pair_count, pair_pos, pairs};
use nilext_core::{AlgebraTable, CoreError, Rational, SymCocycle};

/// Positioned parse error.
#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        msg: msg.into(),
    })
}

/// Orbit-equality witness: a base-algebra automorphism candidate mapping the
/// class of `source` to the class of `target`, or a record that the
/// published witness needs unsupported radicals.
#[derive(Clone, Debug, PartialEq)]
pub enum WitnessAnnotation {
    Map {
        matrix: Vec<Vec<Poly>>,
        source: SymCocycle,
        target: SymCocycle,
    },
    Radical {
        relation: String,
    },
}

/// Expected-flags block of a presentation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Expect {
    pub cd: Option<bool>,
    pub ann_dim: Option<usize>,
    pub h2c_dim: Option<usize>,
    pub h2d_dim: Option<usize>,
    pub h2_equal: Option<bool>,
    pub witnesses: Vec<WitnessAnnotation>,
    pub notes: Vec<String>,
}

/// One parsed algebra presentation.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub dim: usize,
    pub ring: RingRef,
    pub constraints: Vec<Constraint>,
    /// RHS coordinates per unordered pair (0-based, `i <= j`).
    pub equations: BTreeMap<(usize, usize), Vec<Poly>>,
    pub expect: Expect,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.dim == other.dim
            && self.ring == other.ring
            && self
                .constraints
                .iter()
                .map(Constraint::poly)
                .eq(other.constraints.iter().map(Constraint::poly))
            && self.equations == other.equations
            && self.expect == other.expect
    }
}

impl Presentation {
    /// Structure-constant table of this presentation.
    pub fn to_table(&self) -> Result<AlgebraTable, CoreError> {
        let mut products = vec![vec![Poly::zero(&self.ring); self.dim]; pair_count(self.dim)];
        for (&(i, j), coords) in &self.equations {
            products[pair_pos(self.dim, i, j)] = coords.clone();
        }
        AlgebraTable::new(&self.ring, self.dim, products, self.constraints.clone())
    }

    /// Parameter names in ring order.
    pub fn params(&self) -> &[String] {
        self.ring.params()
    }
}

// ---------------------------------------------------------------------------
// lexer

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Name(String),
    Str(String),
    Basis(usize),
    Delta(usize, usize),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Star,
    Plus,
    Minus,
    Slash,
    Caret,
    Assign,
    NotEqual,
}

#[derive(Clone, Debug)]
struct Sp {
    tok: Tok,
    col: usize,
}

fn lex_line(line_no: usize, line: &str) -> Result<Vec<Sp>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let mut push1 = |tok: Tok, i: &mut usize| {
            out.push(Sp { tok, col });
            *i += 1;
        };
        match c {
            ' ' | '\t' | '\r' => {
                i += 1;
            }
            '(' => push1(Tok::LParen, &mut i),
            ')' => push1(Tok::RParen, &mut i),
            '[' => push1(Tok::LBracket, &mut i),
            ']' => push1(Tok::RBracket, &mut i),
            ',' => push1(Tok::Comma, &mut i),
            ';' => push1(Tok::Semi, &mut i),
            '*' => push1(Tok::Star, &mut i),
            '+' => push1(Tok::Plus, &mut i),
            '-' => push1(Tok::Minus, &mut i),
            '/' => push1(Tok::Slash, &mut i),
            '^' => push1(Tok::Caret, &mut i),
            '=' => push1(Tok::Assign, &mut i),
            '!' => {
                if chars.get(i + 1) == Some(&'=') {
                    out.push(Sp {
                        tok: Tok::NotEqual,
                        col,
                    });
                    i += 2;
                } else {
                    return err(line_no, col, "expected `!=`");
                }
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                        None => return err(line_no, col, "unterminated string literal"),
                    }
                }
                out.push(Sp { tok: Tok::Str(s), col });
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Sp {
                    tok: Tok::Int(chars[start..i].iter().collect()),
                    col,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                out.push(Sp {
                    tok: classify_word(&word),
                    col,
                });
            }
            other => return err(line_no, col, format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

fn classify_word(word: &str) -> Tok {
    let bytes = word.as_bytes();
    if bytes.len() >= 2 && bytes[0] == b'e' && bytes[1..].iter().all(u8::is_ascii_digit) {
        if let Ok(k) = word[1..].parse::<usize>() {
            if k >= 1 {
                return Tok::Basis(k);
            }
        }
    }
    if bytes.len() == 3 && bytes[0] == b'd' && bytes[1].is_ascii_digit() && bytes[2].is_ascii_digit()
    {
        let i = (bytes[1] - b'0') as usize;
        let j = (bytes[2] - b'0') as usize;
        if i >= 1 && j >= 1 {
            return Tok::Delta(i, j);
        }
    }
    Tok::Name(word.to_string())
}

// ---------------------------------------------------------------------------
// token cursor and expressions

struct Cursor<'a> {
    toks: &'a [Sp],
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, toks: &'a [Sp]) -> Self {
        Cursor { toks, pos: 0, line }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|s| s.col)
            .unwrap_or_else(|| self.toks.last().map(|s| s.col + 1).unwrap_or(1))
    }

    fn next(&mut self) -> Option<&Sp> {
        let sp = self.toks.get(self.pos);
        if sp.is_some() {
            self.pos += 1;
        }
        sp
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            err(self.line, self.col(), format!("expected {what}"))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

/// Scan a token stream for `eta(k)` / `zeta(m)` literals and return the
/// orders they require.
fn scan_root_orders(toks: &[Sp]) -> Vec<u32> {
    let mut orders = Vec::new();
    for i in 0..toks.len() {
        if let Tok::Name(name) = &toks[i].tok {
            if (name == "eta" || name == "zeta") && i + 2 < toks.len()
                && toks[i + 1].tok == Tok::LParen {
                    if let Tok::Int(d) = &toks[i + 2].tok {
                        if let Ok(v) = d.parse::<u32>() {
                            if v >= 1 {
                                orders.push(if name == "eta" { 2 * v } else { v });
                            }
                        }
                    }
                }
        }
    }
    orders
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Multiplicative coefficient expression: atoms joined by `*`, `/` and `^`,
/// with unary minus. Additive structure must be parenthesized.
fn parse_coeff(c: &mut Cursor, ring: &RingRef) -> Result<Poly, ParseError> {
    parse_mult(c, ring)
}

/// Full additive expression (inside parentheses, matrix entries and
/// constraints).
fn parse_expr(c: &mut Cursor, ring: &RingRef) -> Result<Poly, ParseError> {
    let mut acc = parse_mult(c, ring)?;
    loop {
        if c.eat(&Tok::Plus) {
            let rhs = parse_mult(c, ring)?;
            acc = acc
                .checked_add(&rhs)
                .map_err(|e| core_err(c.line, c.col(), e))?;
        } else if c.eat(&Tok::Minus) {
            let rhs = parse_mult(c, ring)?;
            acc = acc
                .checked_sub(&rhs)
                .map_err(|e| core_err(c.line, c.col(), e))?;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_mult(c: &mut Cursor, ring: &RingRef) -> Result<Poly, ParseError> {
    let mut acc = parse_unary(c, ring)?;
    loop {
        if c.eat(&Tok::Star) {
            let rhs = parse_unary(c, ring)?;
            acc = acc
                .checked_mul(&rhs)
                .map_err(|e| core_err(c.line, c.col(), e))?;
        } else if c.eat(&Tok::Slash) {
            let col = c.col();
            let rhs = parse_unary(c, ring)?;
            let den = rhs.as_constant().ok_or_else(|| ParseError {
                line: c.line,
                col,
                msg: "division by a parametric expression is not supported".into(),
            })?;
            let inv = den.inv().map_err(|e| core_err(c.line, col, e))?;
            acc = acc.scale(&inv);
        } else {
            return Ok(acc);
        }
    }
}

fn parse_unary(c: &mut Cursor, ring: &RingRef) -> Result<Poly, ParseError> {
    if c.eat(&Tok::Minus) {
        return Ok(parse_unary(c, ring)?.neg());
    }
    parse_power(c, ring)
}

fn parse_power(c: &mut Cursor, ring: &RingRef) -> Result<Poly, ParseError> {
    let base = parse_atom(c, ring)?;
    if c.eat(&Tok::Caret) {
        let col = c.col();
        match c.next().map(|s| s.tok.clone()) {
            Some(Tok::Int(d)) => {
                let e: u32 = d.parse().map_err(|_| ParseError {
                    line: c.line,
                    col,
                    msg: "exponent overflow".into(),
                })?;
                Ok(base.pow(e))
            }
            _ => err(c.line, col, "expected integer exponent"),
        }
    } else {
        Ok(base)
    }
}

fn parse_atom(c: &mut Cursor, ring: &RingRef) -> Result<Poly, ParseError> {
    let col = c.col();
    match c.next().map(|s| s.tok.clone()) {
        Some(Tok::Int(digits)) => {
            let n: Rational = digits
                .parse::<nilext_core::Integer>()
                .map(Rational::from_integer)
                .map_err(|_| ParseError {
                    line: c.line,
                    col,
                    msg: "bad integer".into(),
                })?;
            Ok(Poly::from_rational(ring, n))
        }
        Some(Tok::LParen) => {
            let inner = parse_expr(c, ring)?;
            c.expect(Tok::RParen, "`)`")?;
            Ok(inner)
        }
        Some(Tok::Name(name)) if name == "eta" || name == "zeta" => {
            c.expect(Tok::LParen, "`(`")?;
            let dcol = c.col();
            let order = match c.next().map(|s| s.tok.clone()) {
                Some(Tok::Int(d)) => d.parse::<u32>().map_err(|_| ParseError {
                    line: c.line,
                    col: dcol,
                    msg: "bad root order".into(),
                })?,
                _ => return err(c.line, dcol, "expected root order"),
            };
            c.expect(Tok::RParen, "`)`")?;
            let scalar = if name == "eta" {
                Scalar::eta(ring.field(), order)
            } else {
                Scalar::root(ring.field(), order, 1)
            }
            .map_err(|e| core_err(c.line, col, e))?;
            Ok(Poly::constant(ring, scalar))
        }
        Some(Tok::Name(name)) => Poly::param(ring, &name).ok_or_else(|| ParseError {
            line: c.line,
            col,
            msg: format!("unknown parameter `{name}`"),
        }),
        _ => err(c.line, col, "expected coefficient"),
    }
}

fn core_err(line: usize, col: usize, e: CoreError) -> ParseError {
    ParseError {
        line,
        col,
        msg: e.to_string(),
    }
}

fn starts_coeff(tok: &Tok) -> bool {
    matches!(tok, Tok::Int(_) | Tok::Name(_) | Tok::LParen | Tok::Minus)
}

/// Linear combination of basis tokens (`e<k>` or `d<ij>`), returned as
/// coordinates. `pick` maps the accepted token to a coordinate slot.
fn parse_combination(
    c: &mut Cursor,
    ring: &RingRef,
    len: usize,
    pick: &dyn Fn(&Tok) -> Option<usize>,
    what: &str,
) -> Result<Vec<Poly>, ParseError> {
    let mut coords = vec![Poly::zero(ring); len];
    let mut first = true;
    loop {
        let mut negate = false;
        if c.eat(&Tok::Plus) {
            if first {
                return err(c.line, c.col(), "leading `+` is not allowed");
            }
        } else if c.eat(&Tok::Minus) {
            negate = true;
        } else if !first {
            return Ok(coords);
        }
        let mut coeff = if c
            .peek()
            .is_some_and(|t| starts_coeff(t) && pick(t).is_none())
        {
            parse_coeff(c, ring)?
        } else {
            Poly::one(ring)
        };
        if negate {
            coeff = coeff.neg();
        }
        let col = c.col();
        let slot = match c.next().map(|s| s.tok.clone()) {
            Some(tok) => pick(&tok).ok_or_else(|| ParseError {
                line: c.line,
                col,
                msg: format!("expected {what}"),
            })?,
            None => return err(c.line, col, format!("expected {what}")),
        };
        coords[slot] = coords[slot]
            .checked_add(&coeff)
            .map_err(|e| core_err(c.line, col, e))?;
        first = false;
    }
}

// ---------------------------------------------------------------------------
// entry parsing

struct RawEntry {
    /// (line number, tokens)
    lines: Vec<(usize, Vec<Sp>)>,
}

fn split_entries(text: &str) -> Result<Vec<RawEntry>, ParseError> {
    let mut entries = Vec::new();
    let mut current: Vec<(usize, Vec<Sp>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.starts_with('#') {
            continue;
        }
        if trimmed.is_empty() {
            if !current.is_empty() {
                entries.push(RawEntry {
                    lines: std::mem::take(&mut current),
                });
            }
            continue;
        }
        // the header line's NAME may contain characters outside the token
        // grammar (catalog names such as `N_76(-1)`); lex it by whitespace
        if trimmed.starts_with("algebra ") {
            current.push((line_no, lex_header(trimmed)));
        } else {
            current.push((line_no, lex_line(line_no, raw)?));
        }
    }
    if !current.is_empty() {
        entries.push(RawEntry { lines: current });
    }
    Ok(entries)
}

/// Header lines are `algebra NAME dim N` where NAME is any whitespace-free
/// token.
fn lex_header(line: &str) -> Vec<Sp> {
    let mut toks = Vec::new();
    let mut col = 1usize;
    for piece in line.split_whitespace() {
        let tok = if piece.bytes().all(|b| b.is_ascii_digit()) {
            Tok::Int(piece.to_string())
        } else {
            Tok::Name(piece.to_string())
        };
        toks.push(Sp { tok, col });
        col += piece.len() + 1;
    }
    toks
}

struct ConstraintSrc {
    line: usize,
    /// tokens of one `lhs != rhs` group
    toks: Vec<Sp>,
}

/// Parse one presentation from its raw lines.
fn parse_entry(entry: &RawEntry) -> Result<Presentation, ParseError> {
    // pass 1: header, parameter names, root orders
    let (first_line, header) = &entry.lines[0];
    let mut hc = Cursor::new(*first_line, header);
    match hc.next().map(|s| s.tok.clone()) {
        Some(Tok::Name(w)) if w == "algebra" => {}
        _ => return err(*first_line, 1, "expected `algebra NAME dim N`"),
    }
    let name = match hc.next().map(|s| s.tok.clone()) {
        Some(Tok::Name(n)) => n,
        Some(Tok::Int(n)) => n,
        _ => return err(*first_line, hc.col(), "expected algebra name"),
    };
    match hc.next().map(|s| s.tok.clone()) {
        Some(Tok::Name(w)) if w == "dim" => {}
        _ => return err(*first_line, hc.col(), "expected `dim`"),
    }
    let dim: usize = match hc.next().map(|s| s.tok.clone()) {
        Some(Tok::Int(d)) => d.parse().map_err(|_| ParseError {
            line: *first_line,
            col: hc.col(),
            msg: "bad dimension".into(),
        })?,
        _ => return err(*first_line, hc.col(), "expected dimension"),
    };
    if dim > 9 {
        return err(
            *first_line,
            hc.col(),
            "dimensions above 9 are not supported by the format",
        );
    }
    if !hc.at_end() {
        return err(*first_line, hc.col(), "trailing tokens after header");
    }

    let mut params: Vec<String> = Vec::new();
    let mut constraint_srcs: Vec<ConstraintSrc> = Vec::new();
    let mut m: u64 = 1;
    for (line_no, toks) in &entry.lines[1..] {
        for order in scan_root_orders(toks) {
            m = lcm(m, order as u64);
        }
        if let Some(Sp {
            tok: Tok::Name(w), ..
        }) = toks.first()
        {
            if w == "params" {
                let mut c = Cursor::new(*line_no, toks);
                c.next();
                while let Some(tok) = c.peek().cloned() {
                    match tok {
                        Tok::Name(p) => {
                            if params.contains(&p) {
                                return err(*line_no, c.col(), format!("duplicate parameter `{p}`"));
                            }
                            params.push(p);
                            c.next();
                        }
                        Tok::LParen => {
                            if params.is_empty() {
                                return err(
                                    *line_no,
                                    c.col(),
                                    "constraint group before any parameter",
                                );
                            }
                            c.next();
                            let mut depth = 1usize;
                            let mut group: Vec<Sp> = Vec::new();
                            let mut groups: Vec<Vec<Sp>> = Vec::new();
                            loop {
                                let col = c.col();
                                match c.next().cloned() {
                                    Some(sp) => match sp.tok {
                                        Tok::LParen => {
                                            depth += 1;
                                            group.push(sp);
                                        }
                                        Tok::RParen => {
                                            depth -= 1;
                                            if depth == 0 {
                                                break;
                                            }
                                            group.push(sp);
                                        }
                                        Tok::Comma if depth == 1 => {
                                            groups.push(std::mem::take(&mut group));
                                        }
                                        _ => group.push(sp),
                                    },
                                    None => {
                                        return err(*line_no, col, "unterminated constraint group")
                                    }
                                }
                            }
                            groups.push(group);
                            for g in groups {
                                constraint_srcs.push(ConstraintSrc {
                                    line: *line_no,
                                    toks: g,
                                });
                            }
                        }
                        other => {
                            return err(
                                *line_no,
                                c.col(),
                                format!("unexpected token in params: {other:?}"),
                            )
                        }
                    }
                }
            }
        }
    }

    let ring = Ring::new(params, m as u32).map_err(|e| core_err(*first_line, 1, e))?;

    // pass 2: equations and expect block
    let mut equations: BTreeMap<(usize, usize), Vec<Poly>> = BTreeMap::new();
    let mut expect = Expect::default();
    let mut in_expect = false;
    let mut expect_closed = false;
    for (line_no, toks) in &entry.lines[1..] {
        let mut c = Cursor::new(*line_no, toks);
        let head = match c.peek().cloned() {
            Some(t) => t,
            None => continue,
        };
        if expect_closed {
            return err(*line_no, 1, "content after `end`");
        }
        match head {
            Tok::Name(w) if w == "params" && !in_expect => { /* handled in pass 1 */ }
            Tok::Name(w) if w == "expect" && !in_expect => {
                c.next();
                if !c.at_end() {
                    return err(*line_no, c.col(), "`expect` takes no arguments");
                }
                in_expect = true;
            }
            Tok::Name(w) if w == "end" && in_expect => {
                in_expect = false;
                expect_closed = true;
            }
            Tok::Basis(_) if !in_expect => {
                parse_equation(&mut c, &ring, dim, &mut equations)?;
            }
            _ if in_expect => {
                parse_expect_line(&mut c, &ring, dim, &mut expect)?;
            }
            other => {
                return err(*line_no, c.col(), format!("unexpected line start: {other:?}"));
            }
        }
    }
    if in_expect {
        let last = entry.lines.last().map(|(l, _)| *l).unwrap_or(*first_line);
        return err(last, 1, "unterminated `expect` block (missing `end`)");
    }

    // constraints (need the full ring)
    let mut constraints = Vec::new();
    for src in &constraint_srcs {
        let mut c = Cursor::new(src.line, &src.toks);
        let lhs = parse_expr(&mut c, &ring)?;
        c.expect(Tok::NotEqual, "`!=`")?;
        let rhs = parse_expr(&mut c, &ring)?;
        if !c.at_end() {
            return err(src.line, c.col(), "trailing tokens in constraint");
        }
        let poly = lhs.checked_sub(&rhs).map_err(|e| core_err(src.line, 1, e))?;
        let label = format!("{} != {}", lhs, rhs);
        constraints.push(Constraint::new(poly, &label).map_err(|e| core_err(src.line, 1, e))?);
    }

    Ok(Presentation {
        name,
        dim,
        ring,
        constraints,
        equations,
        expect,
    })
}

fn parse_equation(
    c: &mut Cursor,
    ring: &RingRef,
    dim: usize,
    equations: &mut BTreeMap<(usize, usize), Vec<Poly>>,
) -> Result<(), ParseError> {
    let col = c.col();
    let i = match c.next().map(|s| s.tok.clone()) {
        Some(Tok::Basis(i)) => i,
        _ => return err(c.line, col, "expected `ei*ej = ...`"),
    };
    c.expect(Tok::Star, "`*`")?;
    let col_j = c.col();
    let j = match c.next().map(|s| s.tok.clone()) {
        Some(Tok::Basis(j)) => j,
        _ => return err(c.line, col_j, "expected second basis factor"),
    };
    if i > dim || j > dim {
        return err(c.line, col, format!("basis index out of range 1..{dim}"));
    }
    c.expect(Tok::Assign, "`=`")?;
    let pick = |t: &Tok| match t {
        Tok::Basis(k) if *k >= 1 && *k <= dim => Some(*k - 1),
        _ => None,
    };
    let coords = parse_combination(c, ring, dim, &pick, "basis vector")?;
    if !c.at_end() {
        return err(c.line, c.col(), "trailing tokens after equation");
    }
    let key = (i.min(j) - 1, i.max(j) - 1);
    if equations.contains_key(&key) {
        return err(
            c.line,
            col,
            format!("duplicate equation for pair e{}*e{}", key.0 + 1, key.1 + 1),
        );
    }
    equations.insert(key, coords);
    Ok(())
}

fn parse_expect_line(
    c: &mut Cursor,
    ring: &RingRef,
    dim: usize,
    expect: &mut Expect,
) -> Result<(), ParseError> {
    let col = c.col();
    let key = match c.next().map(|s| s.tok.clone()) {
        Some(Tok::Name(k)) => k,
        _ => return err(c.line, col, "expected expect key"),
    };
    match key.as_str() {
        "cd" => expect.cd = Some(parse_bool(c)?),
        "h2eq" => expect.h2_equal = Some(parse_bool(c)?),
        "ann" => expect.ann_dim = Some(parse_usize(c)?),
        "h2c" => expect.h2c_dim = Some(parse_usize(c)?),
        "h2d" => expect.h2d_dim = Some(parse_usize(c)?),
        "note" => {
            let col = c.col();
            match c.next().map(|s| s.tok.clone()) {
                Some(Tok::Str(s)) => expect.notes.push(s),
                _ => return err(c.line, col, "expected quoted note"),
            }
        }
        "witness" => {
            if let Some(Tok::Name(w)) = c.peek() {
                if w == "radical" {
                    c.next();
                    let col = c.col();
                    match c.next().map(|s| s.tok.clone()) {
                        Some(Tok::Str(s)) => {
                            expect
                                .witnesses
                                .push(WitnessAnnotation::Radical { relation: s });
                        }
                        _ => return err(c.line, col, "expected quoted relation"),
                    }
                    return end_of_line(c);
                }
            }
            c.expect(Tok::LBracket, "`[`")?;
            let mut rows: Vec<Vec<Poly>> = Vec::new();
            loop {
                let mut row = Vec::new();
                loop {
                    row.push(parse_expr(c, ring)?);
                    if !c.eat(&Tok::Comma) {
                        break;
                    }
                }
                rows.push(row);
                if c.eat(&Tok::Semi) {
                    continue;
                }
                c.expect(Tok::RBracket, "`]` or `;`")?;
                break;
            }
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return err(c.line, col, format!("witness matrix must be {dim}x{dim}"));
            }
            expect_word(c, "maps")?;
            let source = parse_cocycle(c, ring, dim)?;
            expect_word(c, "to")?;
            let target = parse_cocycle(c, ring, dim)?;
            expect.witnesses.push(WitnessAnnotation::Map {
                matrix: rows,
                source,
                target,
            });
        }
        other => return err(c.line, col, format!("unknown expect key `{other}`")),
    }
    end_of_line(c)
}

fn end_of_line(c: &mut Cursor) -> Result<(), ParseError> {
    if c.at_end() {
        Ok(())
    } else {
        err(c.line, c.col(), "trailing tokens")
    }
}

fn expect_word(c: &mut Cursor, word: &str) -> Result<(), ParseError> {
    let col = c.col();
    match c.next().map(|s| s.tok.clone()) {
        Some(Tok::Name(w)) if w == word => Ok(()),
        _ => err(c.line, col, format!("expected `{word}`")),
    }
}

fn parse_bool(c: &mut Cursor) -> Result<bool, ParseError> {
    let col = c.col();
    match c.next().map(|s| s.tok.clone()) {
        Some(Tok::Name(w)) if w == "true" => Ok(true),
        Some(Tok::Name(w)) if w == "false" => Ok(false),
        _ => err(c.line, col, "expected `true` or `false`"),
    }
}

fn parse_usize(c: &mut Cursor) -> Result<usize, ParseError> {
    let col = c.col();
    match c.next().map(|s| s.tok.clone()) {
        Some(Tok::Int(d)) => d.parse().map_err(|_| ParseError {
            line: c.line,
            col,
            msg: "bad integer".into(),
        }),
        _ => err(c.line, col, "expected integer"),
    }
}

fn parse_cocycle(c: &mut Cursor, ring: &RingRef, dim: usize) -> Result<SymCocycle, ParseError> {
    let pick = |t: &Tok| match t {
        Tok::Delta(i, j) if *i <= *j && *j <= dim => Some(pair_pos(dim, i - 1, j - 1)),
        Tok::Delta(i, j) if *j < *i && *i <= dim => Some(pair_pos(dim, j - 1, i - 1)),
        _ => None,
    };
    let coords = parse_combination(c, ring, pair_count(dim), &pick, "`dij` basis form")?;
    SymCocycle::from_components(ring, dim, vec![coords]).map_err(|e| core_err(c.line, c.col(), e))
}

/// Parse a single presentation.
pub fn parse(text: &str) -> Result<Presentation, ParseError> {
    let entries = split_entries(text)?;
    match entries.len() {
        0 => err(1, 1, "no entry found"),
        1 => parse_entry(&entries[0]),
        _ => err(1, 1, "multiple entries; use parse_catalog"),
    }
}

/// Parse a whole catalog: concatenated presentations separated by blank
/// lines. Duplicate names are rejected.
pub fn parse_catalog(text: &str) -> Result<Vec<Presentation>, ParseError> {
    let entries = split_entries(text)?;
    let mut out: Vec<Presentation> = Vec::with_capacity(entries.len());
    for e in &entries {
        let p = parse_entry(e).map_err(|mut pe| {
            let head = e.lines.first().map(|(l, _)| *l).unwrap_or(pe.line);
            pe.msg = format!("{} (in entry starting at line {head})", pe.msg);
            pe
        })?;
        if out.iter().any(|q| q.name == p.name) {
            let line = e.lines.first().map(|(l, _)| *l).unwrap_or(1);
            return err(line, 1, format!("duplicate algebra name `{}`", p.name));
        }
        out.push(p);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// serializer

/// Render a polynomial as a coefficient usable in term position: atomic
/// literals stay bare, anything additive gets parenthesized.
fn coeff_string(p: &Poly) -> String {
    let s = format!("{p}");
    let single_term = p.terms().count() == 1;
    if single_term && !s.contains(" + ") && !s.contains(" - ") {
        s
    } else {
        format!("({s})")
    }
}

fn combination_string<'a>(coords: impl Iterator<Item = (&'a Poly, String)>) -> String {
    let mut out = String::new();
    for (p, basis) in coords {
        if p.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        if p.as_constant().is_some_and(|c| c.is_one()) {
            out.push_str(&basis);
        } else {
            out.push_str(&coeff_string(p));
            out.push(' ');
            out.push_str(&basis);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical text of a presentation; `parse(serialize(p))` is structurally
/// equal to `p`. Equations appear in pair order with lower index first.
pub fn serialize(p: &Presentation) -> String {
    let mut out = String::new();
    out.push_str(&format!("algebra {} dim {}\n", p.name, p.dim));
    if !p.ring.params().is_empty() {
        out.push_str("params");
        for (idx, name) in p.ring.params().iter().enumerate() {
            out.push(' ');
            out.push_str(name);
            let attached: Vec<&Constraint> = p
                .constraints
                .iter()
                .filter(|c| first_param_of(c.poly()) == Some(idx))
                .collect();
            if !attached.is_empty() {
                out.push_str(" (");
                for (k, c) in attached.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&format!("{} != 0", c.poly()));
                }
                out.push(')');
            }
        }
        out.push('\n');
    }
    for (&(i, j), coords) in &p.equations {
        if coords.iter().all(Poly::is_zero) {
            continue;
        }
        let rhs = combination_string(
            coords
                .iter()
                .enumerate()
                .map(|(k, c)| (c, format!("e{}", k + 1))),
        );
        out.push_str(&format!("e{}*e{} = {}\n", i + 1, j + 1, rhs));
    }
    let e = &p.expect;
    if *e != Expect::default() {
        out.push_str("expect\n");
        if let Some(cd) = e.cd {
            out.push_str(&format!("  cd {cd}\n"));
        }
        if let Some(v) = e.ann_dim {
            out.push_str(&format!("  ann {v}\n"));
        }
        if let Some(v) = e.h2c_dim {
            out.push_str(&format!("  h2c {v}\n"));
        }
        if let Some(v) = e.h2d_dim {
            out.push_str(&format!("  h2d {v}\n"));
        }
        if let Some(v) = e.h2_equal {
            out.push_str(&format!("  h2eq {v}\n"));
        }
        for w in &e.witnesses {
            match w {
                WitnessAnnotation::Radical { relation } => {
                    out.push_str(&format!("  witness radical \"{relation}\"\n"));
                }
                WitnessAnnotation::Map {
                    matrix,
                    source,
                    target,
                } => {
                    let rows: Vec<String> = matrix
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|p| format!("{p}"))
                                .collect::<Vec<_>>()
                                .join(", ")
                        })
                        .collect();
                    let dim = p.dim;
                    let csrc = combination_string(
                        source
                            .component(0)
                            .iter()
                            .zip(pairs(dim))
                            .map(|(c, (i, j))| (c, format!("d{}{}", i + 1, j + 1))),
                    );
                    let ctgt = combination_string(
                        target
                            .component(0)
                            .iter()
                            .zip(pairs(dim))
                            .map(|(c, (i, j))| (c, format!("d{}{}", i + 1, j + 1))),
                    );
                    out.push_str(&format!(
                        "  witness [{}] maps {} to {}\n",
                        rows.join("; "),
                        csrc,
                        ctgt
                    ));
                }
            }
        }
        for n in &e.notes {
            out.push_str(&format!("  note \"{n}\"\n"));
        }
        out.push_str("end\n");
    }
    out
}

fn first_param_of(p: &Poly) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (exp, _) in p.terms() {
        for (i, &e) in exp.iter().enumerate() {
            if e > 0 {
                best = Some(best.map_or(i, |b| b.min(i)));
                break;
            }
        }
    }
    best
}

/// Evaluate a parameter assignment literal of the form
/// `name=value,name=value` with constant values.
pub fn parse_assignment(ring: &RingRef, text: &str) -> Result<Assignment, ParseError> {
    let mut out = Assignment::new();
    if text.trim().is_empty() {
        return Ok(out);
    }
    for piece in text.split(',') {
        let Some((name, val)) = piece.split_once('=') else {
            return err(1, 1, format!("bad assignment `{piece}`; use name=value"));
        };
        let name = name.trim();
        if ring.param_index(name).is_none() {
            return err(1, 1, format!("unknown parameter `{name}`"));
        }
        let toks = lex_line(1, val.trim())?;
        let mut c = Cursor::new(1, &toks);
        let poly = parse_expr(&mut c, ring)?;
        if !c.at_end() {
            return err(1, c.col(), "trailing tokens in value");
        }
        let Some(scalar) = poly.as_constant() else {
            return err(1, 1, format!("value for `{name}` must be constant"));
        };
        out.insert(name.to_string(), scalar);
    }
    Ok(out)
}
