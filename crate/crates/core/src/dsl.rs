//! Input language for the command line tool.
//!
//! ```text
//! vars x y z;
//! let f = x^2 + y*z;
//! let w = 3*z*d(f) - 2*f*d(z);
//! let v = [x, -y, 0];
//! let pi = [1 : x^2 + y^2];
//! ```
//!
//! Precedence from tightest: `^`, `*`, `/\`, then `+` and `-`. Brackets with
//! commas build tuples (vector fields, affine maps); brackets with colons
//! build projective maps. `#` starts a comment.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exterior::{DiffForm, VectorField};
use crate::poly::{render_rational, Poly};
use crate::Q;

const MAX_DEPTH: usize = 200;
const MAX_EXPONENT: u32 = 200;
const RESERVED: [&str; 5] = ["vars", "let", "d", "i", "L"];

/// A diagnostic carrying a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

/// A bound value.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Poly(Poly),
    Form(DiffForm),
    Tuple(Vec<Poly>),
    Projective(Vec<Poly>),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Poly(_) => "function",
            Value::Form(_) => "form",
            Value::Tuple(_) => "tuple",
            Value::Projective(_) => "projective map",
        }
    }

    fn print(&self, names: &[String]) -> String {
        match self {
            Value::Poly(p) => p.render(names),
            Value::Form(w) => print_form(w, names),
            Value::Tuple(c) => format!("[{}]", join(c, names, ", ")),
            Value::Projective(c) => format!("[{}]", join(c, names, " : ")),
        }
    }
}

fn join(c: &[Poly], names: &[String], sep: &str) -> String {
    c.iter().map(|p| p.render(names)).collect::<Vec<_>>().join(sep)
}

fn print_form(w: &DiffForm, names: &[String]) -> String {
    let dxs = |k: &[u8]| k.iter().map(|&i| format!("d({})", names[i as usize])).collect::<Vec<_>>().join("/\\");
    if w.is_zero() {
        let k: Vec<u8> = (0..w.degree() as u8).collect();
        return format!("0*{}", dxs(&k));
    }
    w.terms()
        .map(|(k, c)| format!("({})*{}", c.render(names), dxs(k)))
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Debug, Clone)]
pub struct Binding {
    pub name: String,
    pub value: Value,
    pub pos: Pos,
}

/// Declared variables plus named bindings in source order.
#[derive(Debug, Clone, Default)]
pub struct Session {
    vars: Vec<String>,
    bindings: Vec<Binding>,
}

impl PartialEq for Session {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
            && self.bindings.len() == other.bindings.len()
            && self.bindings.iter().zip(&other.bindings).all(|(a, b)| a.name == b.name && a.value == b.value)
    }
}

impl Session {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn bindings(&self) -> &[Binding] {
        &self.bindings
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.bindings.iter().find(|b| b.name == name).map(|b| &b.value)
    }

    /// Last binding whose value satisfies `pred`.
    pub fn last_where<F: Fn(&Value) -> bool>(&self, pred: F) -> Option<&Binding> {
        self.bindings.iter().rev().find(|b| pred(&b.value))
    }

    /// Canonical source text; parsing it yields an equal session.
    pub fn print(&self) -> String {
        let mut out = String::new();
        if !self.vars.is_empty() {
            out.push_str(&format!("vars {};\n", self.vars.join(" ")));
        }
        for b in &self.bindings {
            out.push_str(&format!("let {} = {};\n", b.name, b.value.print(&self.vars)));
        }
        out
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Wedge,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semi,
    Eq,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(n) => write!(f, "number {n}"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Wedge => f.write_str("`/\\`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn err<T>(pos: Pos, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line: pos.line, col: pos.col, message: message.into() })
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump!();
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                s.push(c);
                bump!();
            }
            out.push((Tok::Ident(s), pos));
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                s.push(c);
                bump!();
            }
            out.push((Tok::Int(s.parse().expect("digits")), pos));
            continue;
        }
        bump!();
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' if chars.peek() == Some(&'\\') => {
                bump!();
                Tok::Wedge
            }
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            ';' => Tok::Semi,
            '=' => Tok::Eq,
            other => return err(pos, format!("unexpected character `{}`", other.escape_debug())),
        };
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    session: &'a Session,
    binding: Option<String>,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, ParseError> {
        let (t, pos) = self.next();
        if t == tok {
            Ok(pos)
        } else {
            err(pos, format!("expected {tok}, found {t}"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        match self.next() {
            (Tok::Ident(s), pos) => Ok((s, pos)),
            (t, pos) => err(pos, format!("expected {what}, found {t}")),
        }
    }

    /// Wraps evaluation failures with the position and the binding name.
    fn fail<T>(&self, pos: Pos, message: impl fmt::Display) -> Result<T, ParseError> {
        match &self.binding {
            Some(b) => err(pos, format!("in binding `{b}`: {message}")),
            None => err(pos, message.to_string()),
        }
    }

    fn nvars(&self) -> usize {
        self.session.vars.len()
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return err(self.pos(), "expression nested too deeply");
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        self.enter()?;
        let mut acc = self.wedge()?;
        loop {
            let pos = self.pos();
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.next();
            let rhs = self.wedge()?;
            let rhs = if negate { self.negate(rhs, pos)? } else { rhs };
            acc = self.add(acc, rhs, pos)?;
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn wedge(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.product()?;
        while *self.peek() == Tok::Wedge {
            let pos = self.next().1;
            let rhs = self.product()?;
            acc = self.wedge_values(acc, rhs, pos)?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            let pos = self.next().1;
            let rhs = self.unary()?;
            acc = self.multiply(acc, rhs, pos)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        match self.peek() {
            Tok::Minus => {
                let pos = self.next().1;
                self.enter()?;
                let v = self.unary()?;
                self.depth -= 1;
                self.negate(v, pos)
            }
            Tok::Plus => {
                self.next();
                self.enter()?;
                let v = self.unary();
                self.depth -= 1;
                v
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let pos = self.next().1;
        let e = match self.next() {
            (Tok::Int(n), _) => n.to_u32().filter(|&e| e <= MAX_EXPONENT),
            (t, p) => return err(p, format!("expected an integer exponent, found {t}")),
        };
        let Some(e) = e else {
            return self.fail(pos, format!("exponent exceeds {MAX_EXPONENT}"));
        };
        match base {
            Value::Poly(p) => Ok(Value::Poly(p.pow(e))),
            other => self.fail(pos, format!("cannot raise a {} to a power", other.kind())),
        }
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let (tok, pos) = self.next();
        match tok {
            Tok::Int(n) => {
                let mut c = Q::from_integer(n);
                if *self.peek() == Tok::Slash {
                    let slash = self.next().1;
                    match self.next() {
                        (Tok::Int(d), _) if !d.is_zero() => c /= Q::from_integer(d),
                        (Tok::Int(_), p) => return err(p, "division by zero"),
                        (_, _) => return err(slash, "`/` only forms rational literals such as 3/2"),
                    }
                }
                Ok(Value::Poly(Poly::constant(self.nvars(), c)))
            }
            Tok::Ident(name) if matches!(name.as_str(), "d" | "i" | "L") && *self.peek() == Tok::LParen => {
                self.call(&name, pos)
            }
            Tok::Ident(name) => {
                if let Some(i) = self.session.vars.iter().position(|v| *v == name) {
                    return Ok(Value::Poly(Poly::var(self.nvars(), i)));
                }
                match self.session.get(&name) {
                    Some(v) => Ok(v.clone()),
                    None => err(pos, format!("unknown name `{name}`")),
                }
            }
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Tok::LBracket => self.bracket(pos),
            t => err(pos, format!("expected an expression, found {t}")),
        }
    }

    fn call(&mut self, name: &str, pos: Pos) -> Result<Value, ParseError> {
        self.expect(Tok::LParen)?;
        let first = self.expr()?;
        let out = if name == "d" {
            match first {
                Value::Poly(p) => Value::Form(DiffForm::function(p).exterior_derivative()),
                Value::Form(w) => Value::Form(w.exterior_derivative()),
                other => return self.fail(pos, format!("d() of a {}", other.kind())),
            }
        } else {
            self.expect(Tok::Comma)?;
            let arg_pos = self.pos();
            let second = self.expr()?;
            let v = match first {
                Value::Tuple(c) if c.len() == self.nvars() => VectorField::new(c).expect("declared arity"),
                Value::Tuple(c) => {
                    return self.fail(pos, format!("vector field has {} components for {} variables", c.len(), self.nvars()))
                }
                other => return self.fail(pos, format!("{name}() expects a vector field, got a {}", other.kind())),
            };
            match (name, second) {
                ("i", Value::Poly(_)) => Value::Poly(Poly::zero(self.nvars())),
                ("i", Value::Form(w)) => match w.interior_product(&v) {
                    Ok(r) => form_value(r),
                    Err(e) => return self.fail(arg_pos, e),
                },
                ("L", Value::Poly(p)) => match v.apply(&p) {
                    Ok(r) => Value::Poly(r),
                    Err(e) => return self.fail(arg_pos, e),
                },
                ("L", Value::Form(w)) => match w.lie_derivative(&v) {
                    Ok(r) => Value::Form(r),
                    Err(e) => return self.fail(arg_pos, e),
                },
                (_, other) => return self.fail(arg_pos, format!("{name}() of a {}", other.kind())),
            }
        };
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    fn bracket(&mut self, pos: Pos) -> Result<Value, ParseError> {
        let mut comps = Vec::new();
        let mut sep: Option<Tok> = None;
        loop {
            let at = self.pos();
            match self.expr()? {
                Value::Poly(p) => comps.push(p),
                other => return self.fail(at, format!("tuple entries must be functions, got a {}", other.kind())),
            }
            let (t, p) = self.next();
            match t {
                Tok::RBracket => break,
                Tok::Comma | Tok::Colon => match &sep {
                    None => sep = Some(t),
                    Some(s) if *s == t => {}
                    Some(_) => return err(p, "cannot mix `,` and `:` in one bracket"),
                },
                t => return err(p, format!("expected `,`, `:` or `]`, found {t}")),
            }
        }
        if sep == Some(Tok::Colon) {
            return Ok(Value::Projective(comps));
        }
        if comps.is_empty() {
            return err(pos, "empty tuple");
        }
        Ok(Value::Tuple(comps))
    }

    fn negate(&self, v: Value, pos: Pos) -> Result<Value, ParseError> {
        match v {
            Value::Poly(p) => Ok(Value::Poly(-&p)),
            Value::Form(w) => Ok(Value::Form(-&w)),
            Value::Tuple(c) => Ok(Value::Tuple(c.iter().map(|p| -p).collect())),
            Value::Projective(_) => self.fail(pos, "cannot negate a projective map"),
        }
    }

    fn add(&self, a: Value, b: Value, pos: Pos) -> Result<Value, ParseError> {
        match (a, b) {
            (Value::Poly(p), Value::Poly(q)) => Ok(Value::Poly(&p + &q)),
            (Value::Form(v), Value::Form(w)) => {
                if v.degree() != w.degree() {
                    return self.fail(pos, format!("cannot add a {}-form and a {}-form", v.degree(), w.degree()));
                }
                Ok(Value::Form(&v + &w))
            }
            (Value::Poly(p), Value::Form(w)) | (Value::Form(w), Value::Poly(p)) if p.is_zero() => Ok(Value::Form(w)),
            (Value::Tuple(a), Value::Tuple(b)) if a.len() == b.len() => {
                Ok(Value::Tuple(a.iter().zip(&b).map(|(x, y)| x + y).collect()))
            }
            (a, b) => self.fail(pos, format!("cannot add a {} and a {}", a.kind(), b.kind())),
        }
    }

    fn multiply(&self, a: Value, b: Value, pos: Pos) -> Result<Value, ParseError> {
        match (a, b) {
            (Value::Poly(p), Value::Poly(q)) => Ok(Value::Poly(&p * &q)),
            (Value::Poly(p), Value::Form(w)) | (Value::Form(w), Value::Poly(p)) => Ok(Value::Form(w.mul_poly(&p))),
            (Value::Poly(p), Value::Tuple(c)) | (Value::Tuple(c), Value::Poly(p)) => {
                Ok(Value::Tuple(c.iter().map(|x| &p * x).collect()))
            }
            (Value::Form(_), Value::Form(_)) => self.fail(pos, "use `/\\` to multiply two forms"),
            (a, b) => self.fail(pos, format!("cannot multiply a {} and a {}", a.kind(), b.kind())),
        }
    }

    fn wedge_values(&self, a: Value, b: Value, pos: Pos) -> Result<Value, ParseError> {
        let as_form = |v: Value| match v {
            Value::Poly(p) => Some(DiffForm::function(p)),
            Value::Form(w) => Some(w),
            _ => None,
        };
        let (ka, kb) = (a.kind(), b.kind());
        match (as_form(a), as_form(b)) {
            (Some(v), Some(w)) => {
                if v.degree() + w.degree() > self.nvars() {
                    return self.fail(pos, format!("wedge of degree {} exceeds {} variables", v.degree() + w.degree(), self.nvars()));
                }
                match v.wedge(&w) {
                    Ok(r) => Ok(form_value(r)),
                    Err(e) => self.fail(pos, e),
                }
            }
            _ => self.fail(pos, format!("cannot wedge a {ka} and a {kb}")),
        }
    }
}

fn form_value(w: DiffForm) -> Value {
    match w.as_function() {
        Some(p) if w.degree() == 0 => Value::Poly(p),
        _ => Value::Form(w),
    }
}

/// Parses and evaluates a whole source text.
pub fn parse_session(text: &str) -> Result<Session, ParseError> {
    let mut toks = lex(text)?;
    let mut session = Session::default();
    let mut at = 0;
    loop {
        let mut p = Parser { toks, at, session: &session, binding: None, depth: 0 };
        let (tok, pos) = p.next();
        let stmt = match tok {
            Tok::Eof => break,
            Tok::Ident(ref k) if k == "vars" => {
                if !session.vars.is_empty() || !session.bindings.is_empty() {
                    return err(pos, "variables must be declared once, before any binding");
                }
                let mut vars: Vec<String> = Vec::new();
                while let Tok::Ident(_) = p.peek() {
                    let (name, npos) = p.ident("a variable name")?;
                    if RESERVED.contains(&name.as_str()) {
                        return err(npos, format!("`{name}` is reserved"));
                    }
                    if vars.contains(&name) {
                        return err(npos, format!("variable `{name}` declared twice"));
                    }
                    vars.push(name);
                }
                if vars.is_empty() {
                    return err(p.pos(), "expected at least one variable name");
                }
                if vars.len() > 255 {
                    return err(pos, "too many variables");
                }
                p.expect(Tok::Semi)?;
                Stmt::Vars(vars)
            }
            Tok::Ident(ref k) if k == "let" => {
                if session.vars.is_empty() {
                    return err(pos, "declare variables with `vars` before `let`");
                }
                let (name, npos) = p.ident("a binding name")?;
                if RESERVED.contains(&name.as_str()) || session.vars.contains(&name) {
                    return err(npos, format!("`{name}` is reserved or a variable"));
                }
                if session.get(&name).is_some() {
                    return err(npos, format!("`{name}` is already bound"));
                }
                p.expect(Tok::Eq)?;
                p.binding = Some(name.clone());
                let value = p.expr()?;
                p.expect(Tok::Semi)?;
                Stmt::Let(Binding { name, value, pos: npos })
            }
            t => return err(pos, format!("expected `vars` or `let`, found {t}")),
        };
        at = p.at;
        toks = p.toks;
        match stmt {
            Stmt::Vars(v) => session.vars = v,
            Stmt::Let(b) => session.bindings.push(b),
        }
    }
    Ok(session)
}

enum Stmt {
    Vars(Vec<String>),
    Let(Binding),
}

/// Renders a rational point as `c1,c2,...`.
pub fn render_point(point: &[Q]) -> String {
    point.iter().map(render_rational).collect::<Vec<_>>().join(",")
}

/// Parses `c1,c2,...` with integer or `a/b` entries.
pub fn parse_point(text: &str) -> Result<Vec<Q>, String> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            let parsed = match s.split_once('/') {
                Some((n, d)) => match (n.trim().parse::<BigInt>(), d.trim().parse::<BigInt>()) {
                    (Ok(n), Ok(d)) if !d.is_zero() => Some(Q::new(n, d)),
                    _ => None,
                },
                None => s.parse::<BigInt>().ok().map(Q::from_integer),
            };
            parsed.ok_or_else(|| format!("bad coordinate `{s}`"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qi;

    fn form(s: &Session, name: &str) -> DiffForm {
        match s.get(name) {
            Some(Value::Form(w)) => w.clone(),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn differential_of_a_function() {
        let s = parse_session("vars x y; let w = d(x^2+y^2);").unwrap();
        let x = Poly::var(2, 0).scale(&qi(2));
        let y = Poly::var(2, 1).scale(&qi(2));
        assert_eq!(form(&s, "w"), DiffForm::one_form(&[x, y]).unwrap());
    }

    #[test]
    fn precedence() {
        let s = parse_session("vars x y; let a = 2*x^2 + -3/2*y; let w = x*d(x) /\\ d(y) + 0*d(x)/\\d(y);").unwrap();
        assert_eq!(s.get("a").unwrap(), &Value::Poly(parse_session("vars x y; let b = 2*x*x - 3/2*y;").unwrap().get("b").unwrap().as_poly()));
        assert_eq!(form(&s, "w").degree(), 2);
    }

    impl Value {
        fn as_poly(&self) -> Poly {
            match self {
                Value::Poly(p) => p.clone(),
                _ => panic!(),
            }
        }
    }

    #[test]
    fn operators_on_forms() {
        let s = parse_session(
            "vars x y z; let w = x*d(y) + z*d(z); let v = [x, y, z]; let r = i(v, w); let l = L(v, w); let t = w /\\ d(w);",
        )
        .unwrap();
        assert_eq!(s.get("r").unwrap().as_poly(), &(&Poly::var(3, 0) * &Poly::var(3, 1)) + &Poly::var(3, 2).pow(2));
        assert_eq!(form(&s, "l"), form(&s, "w").scale(&qi(2)));
        assert!(!form(&s, "t").is_zero());
    }

    #[test]
    fn maps_and_round_trip() {
        let text = "vars x y z; # a comment\nlet f = x^2 - 1/3*y*z; let pi = [1 : f]; let m = [x, y^2 + x*z]; let w = 3*z*d(f) - 2*f*d(z); let o = d(d(f));";
        let s = parse_session(text).unwrap();
        assert!(matches!(s.get("pi"), Some(Value::Projective(c)) if c.len() == 2));
        let printed = s.print();
        assert_eq!(parse_session(&printed).unwrap(), s);
        assert_eq!(parse_session(&printed).unwrap().print(), printed);
    }

    #[test]
    fn positioned_errors() {
        let e = parse_session("vars x y;\nlet w = x +* y;").unwrap_err();
        assert_eq!((e.line, e.col), (2, 12));
        let e = parse_session("vars x;\nlet w = d(x) * d(x);").unwrap_err();
        assert!(e.message.contains("binding `w`"), "{e}");
        assert!(parse_session("let w = x;").is_err());
        assert!(parse_session("vars x; let w = x^99999;").is_err());
        assert!(parse_session(&format!("vars x; let w = {}x{};", "(".repeat(5000), ")".repeat(5000))).is_err());
        assert!(parse_session("vars x; let w = 1/0;").is_err());
        assert!(parse_session("vars x y; let v = [x, y]; let w = i(v, d(x)); let u = i([x], d(x));").is_err());
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("1,-2/3,0").unwrap(), vec![qi(1), crate::q(-2, 3), qi(0)]);
        assert!(parse_point("1,a").is_err());
        assert_eq!(render_point(&[qi(1), crate::q(1, 2)]), "1,1/2");
    }
}
