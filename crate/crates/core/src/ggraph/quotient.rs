//! Bounded-degree linear algebra for ideals of `C[x, y]`.
//!
//! An ideal is represented by the span of all products `m * g` of total degree
//! at most a bound, row-reduced in graded-lex order. Rows are sparse, so
//! `alpha`-homogeneous generators never mix classes.

use std::collections::{BTreeMap, HashMap};

use crate::arith::{GaussMatrix, GaussPoly, GaussRat, Monomial};
use crate::error::{Error, Result};

type Row = BTreeMap<Monomial, GaussRat>;

fn lead(row: &Row) -> Option<Monomial> {
    row.keys().next_back().copied()
}

fn axpy(row: &mut Row, f: &GaussRat, other: &Row) {
    for (m, c) in other {
        let v = f * c;
        match row.get_mut(m) {
            Some(e) => {
                *e -= &v;
                if e.is_zero() {
                    row.remove(m);
                }
            }
            None => {
                row.insert(*m, -v);
            }
        }
    }
}

/// The degree-truncated part of an ideal in reduced echelon form.
#[derive(Clone, Debug)]
pub struct TruncatedIdeal {
    pub bound: u32,
    /// Fully reduced rows keyed by leading monomial; leading coefficient 1.
    pivots: HashMap<Monomial, Row>,
}

impl TruncatedIdeal {
    pub fn new(gens: &[GaussPoly], bound: u32) -> Self {
        let mut pivots: HashMap<Monomial, Row> = HashMap::new();
        let monos = Monomial::up_to_degree(bound);
        // Insert low-degree products first so pivots stay sparse.
        let mut products: Vec<(u32, usize, Monomial)> = Vec::new();
        for (gi, p) in gens.iter().enumerate() {
            let Some(d) = p.degree() else { continue };
            for m in &monos {
                if m.degree() + d <= bound {
                    products.push((m.degree() + d, gi, *m));
                }
            }
        }
        products.sort();
        for (_, gi, m) in products {
            let mut row: Row = gens[gi].terms().map(|(t, c)| (t.mul(&m), c.clone())).collect();
            while let Some(l) = lead(&row) {
                match pivots.get(&l) {
                    Some(p) => {
                        let f = row[&l].clone();
                        axpy(&mut row, &f, p);
                    }
                    None => {
                        let inv = row[&l].inv().expect("nonzero");
                        for v in row.values_mut() {
                            *v = &*v * &inv;
                        }
                        pivots.insert(l, row);
                        break;
                    }
                }
            }
        }
        // Full reduction, smallest leading monomials first.
        let mut keys: Vec<Monomial> = pivots.keys().copied().collect();
        keys.sort();
        for l in keys {
            let mut row = pivots.remove(&l).unwrap();
            loop {
                let target = row.keys().rev().skip(1).find(|m| pivots.contains_key(m)).copied();
                let Some(t) = target else { break };
                let f = row[&t].clone();
                let p = &pivots[&t];
                axpy(&mut row, &f, p);
            }
            pivots.insert(l, row);
        }
        TruncatedIdeal { bound, pivots }
    }

    /// Normal form modulo the truncated ideal. Terms above the bound are kept.
    pub fn reduce(&self, p: &GaussPoly) -> GaussPoly {
        let mut out = GaussPoly::zero();
        for (m, c) in p.terms() {
            match self.pivots.get(m) {
                Some(row) => {
                    for (t, v) in row {
                        if t != m {
                            out.add_term(*t, -(c * v));
                        }
                    }
                }
                None => out.add_term(*m, c.clone()),
            }
        }
        out
    }

    pub fn contains(&self, p: &GaussPoly) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn is_pivot(&self, m: &Monomial) -> bool {
        self.pivots.contains_key(m)
    }

    /// Monomials of degree at most the bound that are not leading terms.
    pub fn standard(&self) -> Vec<Monomial> {
        Monomial::up_to_degree(self.bound).into_iter().filter(|m| !self.pivots.contains_key(m)).collect()
    }

    /// Pairs of monomials identified by a two-term relation.
    pub fn twins(&self) -> Vec<(Monomial, Monomial)> {
        let mut out: Vec<(Monomial, Monomial)> = self
            .pivots
            .iter()
            .filter(|(_, row)| row.len() == 2)
            .map(|(l, row)| (*l, *row.keys().next().unwrap()))
            .collect();
        out.sort();
        out
    }

    /// Monomials within the bound whose normal form is nonzero.
    pub fn outside(&self) -> Vec<Monomial> {
        Monomial::up_to_degree(self.bound)
            .into_iter()
            .filter(|m| self.pivots.get(m).is_none_or(|row| row.len() > 1))
            .collect()
    }

    /// The quotient algebra, if the standard set is an order ideal whose
    /// multiplication closes inside the bound.
    pub fn quotient(&self) -> Result<Quotient> {
        let standard = self.standard();
        if standard.iter().any(|m| m.degree() >= self.bound) {
            return Err(Error::Verification(format!(
                "quotient is not finite within degree bound {} ({} standard monomials)",
                self.bound,
                standard.len()
            )));
        }
        Ok(Quotient::from_rules(standard, |m| self.reduce(&GaussPoly::term(GaussRat::one(), *m))))
    }
}

/// A finite-dimensional quotient `C[x, y]/I` with a monomial basis and
/// multiplication matrices.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub standard: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Column `j` holds the coordinates of `x * standard[j]`.
    pub mx: GaussMatrix,
    pub my: GaussMatrix,
}

impl Quotient {
    /// Builds the multiplication matrices from a normal-form rule valid on the
    /// border of `standard`.
    pub fn from_rules(standard: Vec<Monomial>, nf: impl Fn(&Monomial) -> GaussPoly) -> Self {
        let index: HashMap<Monomial, usize> = standard.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let d = standard.len();
        let mut mx = GaussMatrix::zeros(d, d);
        let mut my = GaussMatrix::zeros(d, d);
        for (j, s) in standard.iter().enumerate() {
            for (mat, step) in [(&mut mx, Monomial::new(1, 0)), (&mut my, Monomial::new(0, 1))] {
                let t = s.mul(&step);
                match index.get(&t) {
                    Some(&k) => mat[(k, j)] = GaussRat::one(),
                    None => {
                        for (m, c) in nf(&t).terms() {
                            let k = *index.get(m).expect("normal form outside the standard set");
                            mat[(k, j)] = c.clone();
                        }
                    }
                }
            }
        }
        Quotient { standard, index, mx, my }
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a polynomial in the standard basis.
    pub fn coords(&self, p: &GaussPoly) -> Vec<GaussRat> {
        let mut cache: HashMap<Monomial, Vec<GaussRat>> = HashMap::new();
        let mut out = vec![GaussRat::zero(); self.dim()];
        for (m, c) in p.terms() {
            let v = self.monomial_coords(m, &mut cache);
            for (o, x) in out.iter_mut().zip(&v) {
                if !x.is_zero() {
                    *o += &(c * x);
                }
            }
        }
        out
    }

    fn monomial_coords(&self, m: &Monomial, cache: &mut HashMap<Monomial, Vec<GaussRat>>) -> Vec<GaussRat> {
        if let Some(&k) = self.index.get(m) {
            let mut v = vec![GaussRat::zero(); self.dim()];
            v[k] = GaussRat::one();
            return v;
        }
        if let Some(v) = cache.get(m) {
            return v.clone();
        }
        let v = if m.px > 0 {
            let prev = self.monomial_coords(&Monomial::new(m.px - 1, m.py), cache);
            self.mx.apply(&prev)
        } else {
            let prev = self.monomial_coords(&Monomial::new(m.px, m.py - 1), cache);
            self.my.apply(&prev)
        };
        cache.insert(*m, v.clone());
        v
    }

    /// Normal form as a polynomial in the standard monomials.
    pub fn normal_form(&self, p: &GaussPoly) -> GaussPoly {
        let mut out = GaussPoly::zero();
        for (k, c) in self.coords(p).into_iter().enumerate() {
            out.add_term(self.standard[k], c);
        }
        out
    }

    pub fn contains(&self, p: &GaussPoly) -> bool {
        self.coords(p).iter().all(|c| c.is_zero())
    }

    /// The multiplication matrices commute, i.e. the rules define an algebra.
    pub fn is_commutative(&self) -> bool {
        &self.mx * &self.my == &self.my * &self.mx
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly;

    #[test]
    fn d4_type_a_quotient() {
        let t = TruncatedIdeal::new(&[poly("x*y"), poly("x^4+y^4")], 8);
        let q = t.quotient().unwrap();
        assert_eq!(q.dim(), 8);
        assert_eq!(t.outside().len(), 9);
        assert_eq!(t.twins(), vec![(Monomial::new(4, 0), Monomial::new(0, 4))]);
        assert!(q.contains(&poly("x^5")));
        assert!(q.is_commutative());
    }

    #[test]
    fn dropping_a_generator_grows_the_quotient() {
        let gens = [poly("2*x*y"), poly("2*x*y*(x^2+y^2)"), poly("x*(x^4-y^4)"), poly("y*(x^4-y^4)")];
        let t = TruncatedIdeal::new(&gens, 8);
        assert_eq!(t.quotient().unwrap().dim(), 9);
    }
}
