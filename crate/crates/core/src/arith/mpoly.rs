//! Multivariate polynomials over Gaussian rationals in indexed variables.
//! Used for symbolic representations, where variables are matrix entries.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use super::gauss::GaussRat;
use super::poly::split_sign;

/// Exponent vector as sorted `(variable, exponent)` pairs, exponents > 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MMono(Vec<(u32, u32)>);

impl MMono {
    pub fn one() -> Self {
        MMono(Vec::new())
    }

    pub fn var(v: u32) -> Self {
        MMono(vec![(v, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exp(&self, v: u32) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn mul(&self, o: &MMono) -> MMono {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < o.0.len() {
            match (self.0.get(i), o.0.get(j)) {
                (Some(&(a, ea)), Some(&(b, eb))) if a == b => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
                (Some(&(a, ea)), Some(&(b, _))) if a < b => {
                    out.push((a, ea));
                    i += 1;
                }
                (Some(_), Some(&(b, eb))) => {
                    out.push((b, eb));
                    j += 1;
                }
                (Some(&t), None) => {
                    out.push(t);
                    i += 1;
                }
                (None, Some(&t)) => {
                    out.push(t);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        MMono(out)
    }

    /// Removes variable `v` entirely, returning its exponent.
    fn without(&self, v: u32) -> (u32, MMono) {
        let e = self.exp(v);
        (e, MMono(self.0.iter().copied().filter(|&(w, _)| w != v).collect()))
    }
}

impl Ord for MMono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            // lexicographic: a smaller variable index with a higher exponent is larger
            for (a, b) in self.0.iter().zip(&o.0) {
                if a.0 != b.0 {
                    return b.0.cmp(&a.0);
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.0.len().cmp(&o.0.len())
        })
    }
}

impl PartialOrd for MMono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A polynomial in variables `0, 1, 2, ...`; names live with the caller.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct MPoly {
    terms: BTreeMap<MMono, GaussRat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = Self::zero();
        p.add_term(MMono::one(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn var(v: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(MMono::var(v), GaussRat::one());
        p
    }

    pub fn add_term(&mut self, m: MMono, c: GaussRat) {
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MMono, &GaussRat)> {
        self.terms.iter()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&MMono::one()).cloned(),
            _ => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect()
    }

    pub fn degree_in(&self, v: u32) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Writes `self = v * a + b` where neither `a` nor `b` involve `v`;
    /// `None` if `v` occurs with exponent above one.
    pub fn split_linear(&self, v: u32) -> Option<(MPoly, MPoly)> {
        let mut a = MPoly::zero();
        let mut b = MPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            match e {
                0 => b.add_term(rest, c.clone()),
                1 => a.add_term(rest, c.clone()),
                _ => return None,
            }
        }
        Some((a, b))
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: u32) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            if e == 0 {
                continue;
            }
            let mono = (1..e).fold(rest, |acc, _| acc.mul(&MMono::var(v)));
            out.add_term(mono, c * &GaussRat::from(e as i64));
        }
        out
    }

    /// Replaces variable `v` by `p`.
    pub fn substitute(&self, v: u32, p: &MPoly) -> MPoly {
        if !self.terms.keys().any(|m| m.exp(v) > 0) {
            return self.clone();
        }
        let mut powers: Vec<MPoly> = vec![MPoly::one()];
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            while powers.len() <= e as usize {
                let next = &powers[powers.len() - 1] * p;
                powers.push(next);
            }
            for (pm, pc) in &powers[e as usize].terms {
                out.add_term(rest.mul(pm), c * pc);
            }
        }
        out
    }

    /// Evaluates with `vals[v]` for every variable that occurs.
    pub fn eval(&self, vals: &dyn Fn(u32) -> GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                t = &t * &vals(v).pow(e);
            }
            acc += &t;
        }
        acc
    }

    /// Evaluates some variables, keeping the rest symbolic.
    pub fn partial_eval(&self, vals: &dyn Fn(u32) -> Option<GaussRat>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in &m.0 {
                match vals(v) {
                    Some(x) => t = &t * &x.pow(e),
                    None => rest.push((v, e)),
                }
            }
            out.add_term(MMono(rest), t);
        }
        out
    }

    /// Renames variables through `f`; `f` must be injective on occurring variables.
    pub fn rename(&self, f: &dyn Fn(u32) -> u32) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut fs: Vec<(u32, u32)> = m.0.iter().map(|&(v, e)| (f(v), e)).collect();
            fs.sort();
            out.add_term(MMono(fs), c.clone());
        }
        out
    }

    /// Leading coefficient in the term order.
    pub fn leading_coeff(&self) -> Option<&GaussRat> {
        self.terms.values().next_back()
    }

    /// Rescales to leading coefficient 1.
    pub fn monic(&self) -> MPoly {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.inv().expect("nonzero")),
            None => MPoly::zero(),
        }
    }

    /// True if `self = c * o` for some nonzero constant `c`.
    pub fn is_unit_multiple_of(&self, o: &MPoly) -> bool {
        self.monic() == o.monic() && self.is_zero() == o.is_zero()
    }

    /// Renders with variable names, highest terms first.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = split_sign(c);
            let mono: Vec<String> = m
                .0
                .iter()
                .map(|&(v, e)| {
                    let n = &names[v as usize];
                    if e == 1 {
                        n.clone()
                    } else {
                        format!("{n}^{e}")
                    }
                })
                .collect();
            let mono = mono.join("*");
            let mixed = !(mag.is_real() || mag.re.is_zero());
            let body = if mono.is_empty() {
                if mixed && k > 0 { format!("({mag})") } else { mag.to_string() }
            } else if mag.is_one() {
                mono
            } else if !mixed {
                format!("{mag}*{mono}")
            } else {
                format!("({mag})*{mono}")
            };
            match (k, neg) {
                (0, true) => s.push_str(&format!("-{body}")),
                (0, false) => s.push_str(&body),
                (_, true) => s.push_str(&format!(" - {body}")),
                (_, false) => s.push_str(&format!(" + {body}")),
            }
        }
        s
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&GaussRat::from_int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        ["G", "c", "d"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn substitution_and_display() {
        let (g, c, d) = (MPoly::var(0), MPoly::var(1), MPoly::var(2));
        // cd - G - c d^2 G
        let cd = &c * &d;
        let e = &(&cd - &g) - &(&(&cd * &d) * &g);
        assert_eq!(e.display(&names()), "-G*c*d^2 + c*d - G");
        let (a, b) = e.split_linear(0).unwrap();
        assert_eq!(a.display(&names()), "-c*d^2 - 1");
        assert_eq!(b.display(&names()), "c*d");
        let s = e.substitute(1, &MPoly::zero());
        assert_eq!(s, -&g);
        assert!(e.split_linear(2).is_none());
    }

    #[test]
    fn unit_multiples() {
        let p = &MPoly::var(0) + &MPoly::one();
        assert!(p.scale(&GaussRat::i()).is_unit_multiple_of(&p));
        assert!(!p.is_unit_multiple_of(&MPoly::var(0)));
    }
}
