//! Sparse bivariate polynomials over the integers.
//!
//! A [`BiPoly`] is a finite map from [`Monomial`]s to non-zero big-integer
//! coefficients. Values are canonical: zero coefficients are never stored, so
//! structural equality is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest exponent the parser accepts after `^`.
pub const MAX_PARSE_EXPONENT: u64 = 1_000_000;

/// The power product `X^x * Y^y`.
///
/// `Ord` is the pure lexicographic order with `Y > X`: monomials are compared
/// by their `Y` exponent first and by their `X` exponent on ties. This is the
/// order used to orient rewrite rules in the quotient engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub const fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial::new(other.x - self.x, other.y - self.y))
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.x + other.x, self.y + other.y)
    }

    /// Ordering used when printing: descending total degree, then descending
    /// `X` exponent.
    pub fn display_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        other.degree().cmp(&self.degree()).then_with(|| other.x.cmp(&self.x))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.y.cmp(&other.y).then_with(|| self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.x {
            0 => {}
            1 => parts.push("X".to_string()),
            e => parts.push(format!("X^{e}")),
        }
        match self.y {
            0 => {}
            1 => parts.push("Y".to_string()),
            e => parts.push(format!("Y^{e}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A polynomial in `Z[X,Y]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(1)
    }

    pub fn x() -> Self {
        BiPoly::monomial(Monomial::new(1, 0), 1)
    }

    pub fn y() -> Self {
        BiPoly::monomial(Monomial::new(0, 1), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        BiPoly::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(m, c.into());
        p
    }

    /// `X^e`.
    pub fn x_pow(e: u32) -> Self {
        BiPoly::monomial(Monomial::new(e, 0), 1)
    }

    /// `Y^e`.
    pub fn y_pow(e: u32) -> Self {
        BiPoly::monomial(Monomial::new(0, e), 1)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut p = BiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in lexicographic (`Y > X`) ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Leading term under lex order with `Y > X`.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, a)| (k.times(m), a.clone())).collect(),
        }
    }

    /// Substitute integer values for `X` and `Y`.
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, (m, c)| {
            acc + c * num_traits::pow(x.clone(), m.x as usize) * num_traits::pow(y.clone(), m.y as usize)
        })
    }

    /// Set `Y = 0`.
    pub fn at_y_zero(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.y == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Exchange the roles of `X` and `Y`.
    pub fn swap_variables(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.y, m.x), c.clone()))
                .collect(),
        }
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $f(self, rhs: BiPoly) -> BiPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $f(self, rhs: &BiPoly) -> BiPoly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.display_cmp(b.0));
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            }
            let abs = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("exponent {exp} at position {pos} exceeds the cap {MAX_PARSE_EXPONENT}")]
    ExponentTooLarge { pos: usize, exp: String },
}

impl FromStr for BiPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

/// Parse a polynomial expression.
///
/// Grammar: `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
/// `factor := INT | VAR ('^' UINT)? | '(' expr ')'` with `VAR` one of `X`, `Y`.
/// A leading unary minus on a term is accepted. Whitespace is ignored;
/// implicit multiplication is rejected.
pub fn parse_poly(text: &str) -> Result<BiPoly, ParseError> {
    let mut p = Parser {
        chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        idx: 0,
        len: text.len(),
    };
    let out = p.expr()?;
    if let Some(&(pos, c)) = p.chars.get(p.idx) {
        return Err(ParseError::Syntax {
            pos,
            msg: format!("unexpected character '{c}'"),
        });
    }
    Ok(out)
}

/// Parse a comma-separated list of polynomials (an ideal's generators).
pub fn parse_poly_list(text: &str) -> Result<Vec<BiPoly>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let p = parse_poly(piece).map_err(|e| match e {
            ParseError::Syntax { pos, msg } => ParseError::Syntax { pos: pos + offset, msg },
            ParseError::ExponentTooLarge { pos, exp } => ParseError::ExponentTooLarge { pos: pos + offset, exp },
        })?;
        out.push(p);
        offset += piece.len() + 1;
    }
    Ok(out)
}

struct Parser {
    chars: Vec<(usize, char)>,
    idx: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.idx).map_or(self.len, |&(p, _)| p)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = if self.peek() == Some('-') {
            self.idx += 1;
            -self.term()?
        } else {
            self.term()?
        };
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.idx += 1;
                    acc = acc + self.term()?;
                }
                '-' => {
                    self.idx += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.idx += 1;
            acc = acc * self.factor()?;
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == 'X' || c == 'Y' || c == '(' => {
                Err(self.err("implicit multiplication is not allowed; use '*'"))
            }
            _ => Ok(acc),
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.idx += 1;
        }
        s
    }

    fn factor(&mut self) -> Result<BiPoly, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let s = self.digits();
                let n: BigInt = s.parse().expect("digit string");
                Ok(BiPoly::constant(n))
            }
            Some(v @ ('X' | 'Y')) => {
                self.idx += 1;
                let mut exp = 1u32;
                if self.peek() == Some('^') {
                    self.idx += 1;
                    let pos = self.pos();
                    let s = self.digits();
                    if s.is_empty() {
                        return Err(self.err("expected exponent after '^'"));
                    }
                    let big: BigInt = s.parse().expect("digit string");
                    match big.to_u64() {
                        Some(e) if e <= MAX_PARSE_EXPONENT => exp = e as u32,
                        _ => return Err(ParseError::ExponentTooLarge { pos, exp: s }),
                    }
                }
                Ok(if v == 'X' {
                    BiPoly::x_pow(exp)
                } else {
                    BiPoly::y_pow(exp)
                })
            }
            Some('(') => {
                self.idx += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.idx += 1;
                if self.peek() == Some('^') {
                    return Err(self.err("exponents apply to variables only"));
                }
                Ok(inner)
            }
            Some(c) => Err(self.err(format!("unexpected character '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0} is not a prime")]
pub struct NotPrime(pub u64);

/// `T_p(X) = sum_{l=1..p} C(p,l) X^(l-1)`, the preimage of `1 + x + ... + x^(p-1)`
/// under `X -> x - 1`.
pub fn trace_poly_x(p: u64) -> Result<BiPoly, NotPrime> {
    if !is_prime(p) {
        return Err(NotPrime(p));
    }
    Ok(BiPoly::from_terms(
        (1..=p).map(|l| (Monomial::new((l - 1) as u32, 0), binomial(p, l))),
    ))
}

/// `T(X,Y) = X^2 + 3X + 3 + 3Y + Y^2`.
pub fn trace_poly_xy() -> BiPoly {
    BiPoly::from_terms([
        (Monomial::new(2, 0), 1),
        (Monomial::new(1, 0), 3),
        (Monomial::ONE, 3),
        (Monomial::new(0, 1), 3),
        (Monomial::new(0, 2), 1),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let t3 = p("X^2+3*X+3");
        assert_eq!(
            t3,
            BiPoly::from_terms([(Monomial::new(2, 0), 1), (Monomial::new(1, 0), 3), (Monomial::ONE, 3)])
        );
        assert!(p("0").is_zero());
        assert_eq!(
            p("(Y-1)*(Y+1)"),
            BiPoly::from_terms([(Monomial::new(0, 2), 1), (Monomial::ONE, -1)])
        );
        assert_eq!(
            p(" - X * Y ^ 2 + 4"),
            BiPoly::from_terms([(Monomial::new(1, 2), -1), (Monomial::ONE, 4)])
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_poly("2X"), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("X+"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("(X+1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("Z"), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(matches!(
            parse_poly("X^1000001"),
            Err(ParseError::ExponentTooLarge { pos: 2, .. })
        ));
        assert!(parse_poly("X^1000000").is_ok());
        assert!(matches!(parse_poly("X,Y"), Err(ParseError::Syntax { pos: 1, .. })));
        let err = parse_poly_list("X, Y+, 3").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { pos: 5, .. }), "{err:?}");
    }

    #[test]
    fn arithmetic_examples() {
        assert!((p("X") + p("-X")).is_zero());
        assert_eq!(p("X+1") * p("X-1"), p("X^2-1"));
        assert_eq!(p("X*Y") * p("X^3"), p("X^4*Y"));
        assert_eq!(p("X+Y").scale(&BigInt::from(-2)), p("-2*X-2*Y"));
        assert!(p("X+Y").scale(&BigInt::zero()).is_zero());
    }

    #[test]
    fn format_is_canonical() {
        assert_eq!(p("3+3*X+X^2").to_string(), "X^2+3*X+3");
        assert_eq!(p("Y^2+X*Y-X^3").to_string(), "-X^3+X*Y+Y^2");
        assert_eq!(p("-1").to_string(), "-1");
        assert_eq!(BiPoly::zero().to_string(), "0");
    }

    #[test]
    fn leading_term_is_lex_y_first() {
        let t = trace_poly_xy();
        assert_eq!(t.leading_term().unwrap().0, &Monomial::new(0, 2));
        let f = p("X^9+X*Y");
        assert_eq!(f.leading_term().unwrap().0, &Monomial::new(1, 1));
    }

    #[test]
    fn trace_polynomials() {
        assert_eq!(trace_poly_x(3).unwrap(), p("X^2+3*X+3"));
        assert_eq!(trace_poly_x(2).unwrap(), p("X+2"));
        assert_eq!(trace_poly_x(5).unwrap(), p("X^4+5*X^3+10*X^2+10*X+5"));
        assert_eq!(trace_poly_x(4), Err(NotPrime(4)));
        assert_eq!(trace_poly_x(1), Err(NotPrime(1)));
        let t = trace_poly_xy();
        assert_eq!(t, p("X^2+3*X+3+3*Y+Y^2"));
        assert_eq!(t.at_y_zero(), trace_poly_x(3).unwrap());
        let t3 = trace_poly_x(3).unwrap();
        assert_eq!(&(&t - &t3) - &t3.swap_variables(), BiPoly::constant(-3));
    }

    #[test]
    fn trace_poly_is_lower_coefficients_divisible_by_p() {
        for q in [2u64, 3, 5, 7, 11, 13] {
            let t = trace_poly_x(q).unwrap();
            assert_eq!(t.degree(), Some(q as u32 - 1));
            for (m, c) in t.terms() {
                if m.x == q as u32 - 1 {
                    assert!(c.is_one());
                } else {
                    assert!((c % BigInt::from(q)).is_zero(), "p={q} coeff of {m}");
                }
            }
        }
    }

    #[test]
    fn trace_poly_evaluates_to_geometric_sum() {
        // T_p(x - 1) = 1 + x + ... + x^(p-1)
        for q in [2u64, 3, 5, 7] {
            let t = trace_poly_x(q).unwrap();
            for x in -3i64..=4 {
                let lhs = t.eval(&BigInt::from(x - 1), &BigInt::zero());
                let rhs: BigInt = (0..q).map(|k| BigInt::from(x).pow(k as u32)).sum();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
