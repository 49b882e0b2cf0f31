//! Bivariate polynomials in `x, y` with Gaussian-rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};
use num_traits::Zero;

use super::gauss::GaussRat;
use crate::error::Error;

/// The monomial `x^px * y^py`. Ordered graded-lexicographically with `x > y`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    pub px: u32,
    pub py: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { px: 0, py: 0 };

    pub fn new(px: u32, py: u32) -> Self {
        Monomial { px, py }
    }

    pub fn degree(&self) -> u32 {
        self.px + self.py
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial { px: self.px + o.px, py: self.py + o.py }
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.px <= o.px && self.py <= o.py
    }

    /// `o / self` when `self` divides `o`.
    pub fn quotient(&self, o: &Monomial) -> Option<Monomial> {
        self.divides(o).then(|| Monomial { px: o.px - self.px, py: o.py - self.py })
    }

    /// All monomials of total degree `<= d`, ascending in graded-lex order.
    pub fn up_to_degree(d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for t in 0..=d {
            for px in 0..=t {
                out.push(Monomial::new(px, t - px));
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then(self.px.cmp(&o.px))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("x", self.px), ("y", self.py)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A polynomial in `x, y`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussPoly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl GaussPoly {
    pub fn zero() -> Self {
        GaussPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn term(c: GaussRat, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// `c * x^px * y^py` with an integer coefficient.
    pub fn mono(c: i64, px: u32, py: u32) -> Self {
        Self::term(GaussRat::from_int(c), Monomial::new(px, py))
    }

    pub fn x() -> Self {
        Self::mono(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::mono(1, 0, 1)
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &GaussRat)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GaussPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        GaussPoly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Rescales so that the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => Self::zero(),
        }
    }

    /// Applies a linear change on monomials: `x^p y^q -> c(p,q) * x^p' y^q'`.
    pub fn map_terms(&self, f: impl Fn(&Monomial) -> (GaussRat, Monomial)) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (k, m2) = f(m);
            out.add_term(m2, c * &k);
        }
        out
    }

    pub fn eval(&self, x: &GaussRat, y: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            acc += &(c * &(x.pow(m.px) * y.pow(m.py)));
        }
        acc
    }
}

impl fmt::Display for GaussPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (neg, mag) = split_sign(c);
            let mixed = !(mag.is_real() || mag.re.is_zero());
            let coef = if m == &Monomial::ONE {
                if mixed && !first { format!("({mag})") } else { mag.to_string() }
            } else if mag.is_one() {
                m.to_string()
            } else if !mixed {
                format!("{mag}*{m}")
            } else {
                format!("({mag})*{m}")
            };
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, coef)?;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, coef)?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Splits a coefficient into a display sign and magnitude: a purely real or
/// purely imaginary value is shown with an explicit sign, mixed values keep
/// their own signs.
pub(crate) fn split_sign(c: &GaussRat) -> (bool, GaussRat) {
    use num_traits::Signed;
    if c.im.is_zero() && c.re.is_negative() {
        (true, -c)
    } else if c.re.is_zero() && c.im.is_negative() {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

impl fmt::Debug for GaussPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for GaussPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a GaussPoly> for &'a GaussPoly {
    type Output = GaussPoly;
    fn add(self, o: &GaussPoly) -> GaussPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a GaussPoly> for &'a GaussPoly {
    type Output = GaussPoly;
    fn sub(self, o: &GaussPoly) -> GaussPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a GaussPoly> for &'a GaussPoly {
    type Output = GaussPoly;
    fn mul(self, o: &GaussPoly) -> GaussPoly {
        let mut out = GaussPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_poly_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GaussPoly> for GaussPoly {
            type Output = GaussPoly;
            fn $m(self, o: GaussPoly) -> GaussPoly { (&self).$m(&o) }
        }
    )*};
}
owned_poly_ops!(Add add, Sub sub, Mul mul);

impl Neg for &GaussPoly {
    type Output = GaussPoly;
    fn neg(self) -> GaussPoly {
        self.scale(&GaussRat::from_int(-1))
    }
}

impl Neg for GaussPoly {
    type Output = GaussPoly;
    fn neg(self) -> GaussPoly {
        -&self
    }
}

/// Recursive-descent parser for expressions in `x`, `y`, `i`, integers,
/// `+ - * / ^` and parentheses. Division is only allowed by constants.
struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in polynomial", self.pos))
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<GaussPoly, Error> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GaussPoly, Error> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    if d.degree() != Some(0) {
                        return Err(self.err("division by a non-constant"));
                    }
                    let c = d.coeff(&Monomial::ONE);
                    acc = acc.scale(&c.inv().ok_or_else(|| self.err("division by zero"))?);
                }
                Some(b'x') | Some(b'y') | Some(b'i') | Some(b'(') => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<GaussPoly, Error> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.number()?;
            let e: u32 = e.try_into().map_err(|_| self.err("bad exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<u64, Error> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number too large"))
    }

    fn atom(&mut self) -> Result<GaussPoly, Error> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(GaussPoly::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(GaussPoly::y())
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(GaussPoly::constant(GaussRat::i()))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'0'..=b'9') => {
                let n = self.number()?;
                let n: i64 = n.try_into().map_err(|_| self.err("number too large"))?;
                Ok(GaussPoly::constant(GaussRat::from_int(n)))
            }
            _ => Err(self.err("unexpected character")),
        }
    }
}

impl FromStr for GaussPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let clean: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut p = Parser { s: &clean, pos: 0 };
        let out = p.expr()?;
        if p.pos != clean.len() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

/// Parses a polynomial, panicking on malformed input. Intended for literals.
pub fn poly(s: &str) -> GaussPoly {
    s.parse().unwrap_or_else(|e| panic!("bad polynomial literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_examples() {
        assert_eq!(&poly("x+y") * &GaussPoly::one(), poly("x+y"));
        assert_eq!(&poly("x^2+y^2") * &poly("x^2+y^2"), poly("x^4+2x^2y^2+y^4"));
        assert_eq!(&poly("x^7+i*y^7") * &poly("x^7-i*y^7"), poly("x^14+y^14"));
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(2, 0);
        let b = Monomial::new(1, 1);
        let c = Monomial::new(0, 3);
        assert!(a > b && c > a);
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(poly("y^4 + x^4").to_string(), "x^4 + y^4");
        assert_eq!(poly("x^7 - i*y^7").to_string(), "x^7 - i*y^7");
        assert_eq!(poly("(1+i)*x*y - 1/2").to_string(), "(1+i)*x*y - 1/2");
        assert_eq!(GaussPoly::zero().to_string(), "0");
        assert_eq!(poly(&poly("3/2*x^3*y - 2*i*y^2 + 5").to_string()), poly("3/2*x^3*y - 2*i*y^2 + 5"));
    }
}
