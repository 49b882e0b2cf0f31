//! G-graphs of `BD_2n(a)`: classification from consecutive Newton boundary
//! points, their ideals, quotient bases with twins, and the check that the
//! quotient is the regular representation.

pub mod quotient;

use std::fmt;

use serde::Serialize;

use crate::arith::{row_reduce, GaussMatrix, GaussPoly, GaussRat, Monomial};
use crate::error::{Error, Result};
use crate::group::{act_beta, alpha_class, beta_eigenvalue, irreps, project_one_dim, GroupParams, Irrep, Sign};
use crate::lattice::{newton_boundary, LatticePoint};

pub use quotient::{Quotient, TruncatedIdeal};

/// The kinds of G-graph. `CA`/`CB` are the two shapes of type C.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GGraphKind {
    A,
    B1,
    B2,
    CA(Sign),
    CB(Sign),
    D(Sign),
}

impl GGraphKind {
    /// Short label: `A`, `B1`, `B2`, `C+`, `C-`, `D+`, `D-`.
    pub fn label(&self) -> String {
        match self {
            GGraphKind::A => "A".into(),
            GGraphKind::B1 => "B1".into(),
            GGraphKind::B2 => "B2".into(),
            GGraphKind::CA(s) | GGraphKind::CB(s) => format!("C{s}"),
            GGraphKind::D(s) => format!("D{s}"),
        }
    }

    /// Label distinguishing the two shapes of type C.
    pub fn detailed_label(&self) -> String {
        match self {
            GGraphKind::CA(s) => format!("CA{s}"),
            GGraphKind::CB(s) => format!("CB{s}"),
            k => k.label(),
        }
    }

    pub fn sign(&self) -> Option<Sign> {
        match *self {
            GGraphKind::CA(s) | GGraphKind::CB(s) | GGraphKind::D(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_c(&self) -> bool {
        matches!(self, GGraphKind::CA(_) | GGraphKind::CB(_))
    }
}

impl fmt::Display for GGraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl Serialize for GGraphKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.detailed_label())
    }
}

/// Basis slots of one irrep: one polynomial per copy (first components for
/// two-dimensional irreps; the second component is the `beta`-image).
#[derive(Clone, Debug, Serialize)]
pub struct BasisSlot {
    pub irrep: Irrep,
    pub polys: Vec<GaussPoly>,
}

/// A quotient basis grouped by irrep, with twins and the monomials not in the ideal.
#[derive(Clone, Debug, Serialize)]
pub struct GradedBasis {
    pub slots: Vec<BasisSlot>,
    pub twins: Vec<(Monomial, Monomial)>,
    pub outside: Vec<Monomial>,
    pub dimension: usize,
    pub multiplicities: Vec<(Irrep, usize)>,
}

/// A classified G-graph.
#[derive(Clone, Debug, Serialize)]
pub struct GGraph {
    pub id: String,
    pub kind: GGraphKind,
    pub points: (LatticePoint, LatticePoint),
    pub ideal: Vec<GaussPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<GradedBasis>,
}

impl GGraph {
    pub fn label(&self) -> String {
        let (p, q) = self.points;
        format!("{}({},{};{},{})", self.kind.label(), p.r, p.s, q.r, q.s)
    }
}

/// Kinds attached to the boundary pair `(e_i, e_next)`.
pub fn classify_pair(ei: LatticePoint, en: LatticePoint, g: &GroupParams) -> Result<Vec<GGraphKind>> {
    let (r, s, u, v, q) = (ei.r, ei.s, en.r, en.s, g.q);
    let on_lattice = |p: LatticePoint| p.r >= 0 && p.s >= 0 && (g.a * p.r - p.s).rem_euclid(g.two_n) == 0;
    if !on_lattice(ei) || !on_lattice(en) || u <= r || v >= s {
        return Err(Error::Invalid(format!("{ei}, {en} are not consecutive boundary points of {g}")));
    }
    if en == LatticePoint::new(q, q) {
        let c = if 2 * q < s {
            GGraphKind::CA
        } else if 2 * q == r + s {
            GGraphKind::CB
        } else {
            return Err(Error::Invalid(format!("pair {ei}, {en} fits neither shape of type C")));
        };
        return Ok(vec![c(Sign::Plus), c(Sign::Minus), GGraphKind::D(Sign::Plus), GGraphKind::D(Sign::Minus)]);
    }
    // On the first pair u = s - v can only occur with r = 0, where the A and
    // B1 ideals coincide; it is named A.
    if u < s - v || (r == 0 && u == s - v) {
        Ok(vec![GGraphKind::A])
    } else if u - r == s - v {
        let m = u - r;
        Ok(vec![if u < 2 * m { GGraphKind::B1 } else { GGraphKind::B2 }])
    } else {
        Err(Error::Invalid(format!("pair {ei}, {en} is neither of type A nor B")))
    }
}

fn xy(c: GaussRat, px: i64, py: i64) -> GaussPoly {
    assert!(px >= 0 && py >= 0, "negative exponent");
    GaussPoly::term(c, Monomial::new(px as u32, py as u32))
}

fn one() -> GaussRat {
    GaussRat::one()
}

/// Generators of `I_Gamma` as in the classification, unreduced. Binomials
/// that cancel for small exponents are dropped.
pub fn ggraph_ideal(kind: GGraphKind, pair: (LatticePoint, LatticePoint), g: &GroupParams) -> Vec<GaussPoly> {
    let mut gens = classified_generators(kind, pair, g);
    gens.retain(|p| !p.is_zero());
    gens
}

fn classified_generators(kind: GGraphKind, pair: (LatticePoint, LatticePoint), g: &GroupParams) -> Vec<GaussPoly> {
    let (LatticePoint { r, s }, LatticePoint { r: u, s: v }) = pair;
    let q = g.q;
    let sg = |sign: Sign| GaussRat::from_int(sign.as_i64());
    // x^q + sign (-i)^q y^q
    let special = |sign: Sign| &xy(one(), q, 0) + &xy(sg(sign) * GaussRat::i_pow(-q), 0, q);
    match kind {
        GGraphKind::A => vec![
            xy(one(), u, u),
            &xy(one(), s - v, u - r) + &xy(GaussRat::sign_pow(u - r), u - r, s - v),
            &xy(one(), r + s, 0) + &xy(GaussRat::sign_pow(r), 0, r + s),
        ],
        GGraphKind::B1 => {
            let m = u - r;
            vec![
                &xy(one(), r + s, 0) + &xy(GaussRat::sign_pow(r), 0, r + s),
                &xy(one(), m + s, m - r) + &xy(GaussRat::sign_pow(m - r), m - r, m + s),
                xy(one(), u, m),
                xy(one(), m, u),
            ]
        }
        GGraphKind::B2 => {
            let m = u - r;
            vec![xy(one(), 2 * m, 2 * m), xy(one(), s + m, 0), xy(one(), 0, s + m), xy(one(), u, m), xy(one(), m, u)]
        }
        GGraphKind::D(sign) => vec![special(sign), xy(one(), s - r, s - r)],
        GGraphKind::CA(sign) => {
            let (m1, m2) = (s - q, q - r);
            let c2 = sg(sign) * GaussRat::sign_pow(r) * GaussRat::i_pow(q);
            vec![
                special(sign).pow(2),
                &xy(one(), s, m2) + &xy(c2, m2, s),
                // The printed sign here also carries the +/- of the kind, which
                // breaks the regular representation for one of the two; the
                // sign-free form verifies for both.
                &xy(one(), m1, m2) + &xy(GaussRat::sign_pow(m2), m2, m1),
            ]
        }
        GGraphKind::CB(sign) => {
            let m = q - r;
            let f = special(sign);
            vec![
                f.mul_monomial(&Monomial::new(0, m as u32)),
                f.mul_monomial(&Monomial::new(m as u32, 0)),
                xy(one(), s - r, s - r),
                xy(one(), s, m),
                xy(one(), m, s),
            ]
        }
    }
}

/// All G-graphs of `g`: one of type A or B per non-final boundary pair and
/// the four special ones on the final pair.
pub fn enumerate_ggraphs(g: &GroupParams) -> Result<Vec<GGraph>> {
    g.require_family()?;
    let pts = newton_boundary(g)?;
    let mut out = Vec::new();
    for w in pts.windows(2) {
        for kind in classify_pair(w[0], w[1], g)? {
            let ideal = ggraph_ideal(kind, (w[0], w[1]), g);
            let mut gg = GGraph { id: String::new(), kind, points: (w[0], w[1]), ideal, basis: None };
            gg.id = gg.label();
            out.push(gg);
        }
    }
    Ok(out)
}

/// Finds a G-graph by full id, by index, or by kind label when unambiguous.
pub fn find_ggraph<'a>(graphs: &'a [GGraph], key: &str) -> Result<&'a GGraph> {
    if let Some(gg) = graphs.iter().find(|gg| gg.id == key) {
        return Ok(gg);
    }
    if let Ok(k) = key.parse::<usize>() {
        if let Some(gg) = graphs.get(k) {
            return Ok(gg);
        }
    }
    let hits: Vec<&GGraph> =
        graphs.iter().filter(|gg| gg.kind.label() == key || gg.kind.detailed_label() == key).collect();
    match hits.len() {
        1 => Ok(hits[0]),
        0 => Err(Error::Invalid(format!("no G-graph matches {key:?}"))),
        _ => Err(Error::Invalid(format!("{key:?} is ambiguous; use one of the full ids"))),
    }
}

/// The default degree bound `4n`.
pub fn default_bound(g: &GroupParams) -> u32 {
    (4 * g.n) as u32
}

/// Matrix of `beta` on the standard monomials of class `c` (which must be
/// fixed by conjugation).
fn beta_block(quot: &Quotient, std_c: &[Monomial]) -> GaussMatrix {
    let d = std_c.len();
    let mut b = GaussMatrix::zeros(d, d);
    for (j, m) in std_c.iter().enumerate() {
        let img = quot.coords(&act_beta(&GaussPoly::term(GaussRat::one(), *m)));
        for (k, s) in std_c.iter().enumerate() {
            b[(k, j)] = img[quot.index_of(s).unwrap()].clone();
        }
    }
    b
}

/// Per-irrep multiplicities of a quotient algebra, computed from class
/// dimensions and `beta`-eigenspaces.
pub fn multiplicities(quot: &Quotient, g: &GroupParams) -> Vec<(Irrep, usize)> {
    let by_class = |c: i64| -> Vec<Monomial> { quot.standard.iter().copied().filter(|m| alpha_class(m, g) == c).collect() };
    let mut out = Vec::new();
    for rho in irreps(g) {
        let mult = match rho {
            Irrep::OneDim { j, sign } => {
                let std_c = by_class(j);
                if std_c.is_empty() {
                    0
                } else {
                    let mut b = beta_block(quot, &std_c);
                    let lam = beta_eigenvalue(j, sign);
                    for k in 0..std_c.len() {
                        b[(k, k)] = &b[(k, k)] - &lam;
                    }
                    std_c.len() - row_reduce(&b).rank
                }
            }
            Irrep::TwoDim { r } => {
                let (d0, d1) = (by_class(r).len(), by_class(g.conj(r)).len());
                if d0 == d1 {
                    d0
                } else {
                    usize::MAX
                }
            }
        };
        out.push((rho, mult));
    }
    out
}

/// Builds the graded basis of `C[x, y]/I`.
pub fn quotient_basis(ideal: &[GaussPoly], g: &GroupParams, deg_bound: u32) -> Result<GradedBasis> {
    let t = TruncatedIdeal::new(ideal, deg_bound);
    let quot = t.quotient()?;
    let mults = multiplicities(&quot, g);
    let mut slots = Vec::new();
    for rho in irreps(g) {
        let std_c: Vec<Monomial> = quot.standard.iter().copied().filter(|m| alpha_class(m, g) == rho.class()).collect();
        let polys = match rho {
            Irrep::OneDim { j, sign } => {
                let mut found = Vec::new();
                for m in &std_c {
                    let p = project_one_dim(&GaussPoly::term(GaussRat::one(), *m), j, sign);
                    if !quot.contains(&p) {
                        found.push(p.monic());
                        break;
                    }
                }
                found
            }
            Irrep::TwoDim { .. } => std_c.iter().map(|m| GaussPoly::term(GaussRat::one(), *m)).collect(),
        };
        slots.push(BasisSlot { irrep: rho, polys });
    }
    Ok(GradedBasis { slots, twins: t.twins(), outside: t.outside(), dimension: quot.dim(), multiplicities: mults })
}

/// Result of [`verify_regular_rep`].
#[derive(Clone, Debug, Serialize)]
pub struct RegularRepReport {
    pub dimension: usize,
    pub expected_dimension: usize,
    pub multiplicities: Vec<(String, usize)>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offending: Option<String>,
}

/// Checks that every irrep appears `dim rho` times and the total is `4n`.
pub fn verify_regular_rep(basis: &GradedBasis, g: &GroupParams) -> RegularRepReport {
    let expected = (4 * g.n) as usize;
    let offending = basis.multiplicities.iter().find(|(rho, m)| *m != rho.dim()).map(|(rho, m)| {
        if *m == usize::MAX {
            format!("{rho}: unequal component dimensions")
        } else {
            format!("{rho}: multiplicity {m}, expected {}", rho.dim())
        }
    });
    let offending = offending.or_else(|| {
        (basis.dimension != expected).then(|| format!("dimension {} != {expected}", basis.dimension))
    });
    RegularRepReport {
        dimension: basis.dimension,
        expected_dimension: expected,
        multiplicities: basis.multiplicities.iter().map(|(r, m)| (r.label(), *m)).collect(),
        ok: offending.is_none(),
        offending,
    }
}

/// Drops generators lying in the ideal of the remaining ones.
pub fn reduce_generators(gens: &[GaussPoly], deg_bound: u32) -> Vec<GaussPoly> {
    let mut kept: Vec<GaussPoly> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut k = kept.len();
    while k > 0 {
        k -= 1;
        let others: Vec<GaussPoly> =
            kept.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, p)| p.clone()).collect();
        if !others.is_empty() && TruncatedIdeal::new(&others, deg_bound).contains(&kept[k]) {
            kept.remove(k);
        }
    }
    kept
}

/// Equality of two zero-dimensional ideals by mutual normal-form containment.
pub fn ideals_equal(i1: &[GaussPoly], i2: &[GaussPoly], deg_bound: u32) -> Result<bool> {
    let q1 = TruncatedIdeal::new(i1, deg_bound).quotient()?;
    let q2 = TruncatedIdeal::new(i2, deg_bound).quotient()?;
    Ok(q1.dim() == q2.dim() && i1.iter().all(|p| q2.contains(p)) && i2.iter().all(|p| q1.contains(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly;
    use crate::group::make_group;

    #[test]
    fn bd42_classification() {
        let g = make_group(42, 13).unwrap();
        let p = |r, s| LatticePoint::new(r, s);
        assert_eq!(classify_pair(p(0, 42), p(1, 13), &g).unwrap(), vec![GGraphKind::A]);
        assert_eq!(classify_pair(p(1, 13), p(4, 10), &g).unwrap(), vec![GGraphKind::B1]);
        let last = classify_pair(p(4, 10), p(7, 7), &g).unwrap();
        let labels: Vec<String> = last.iter().map(|k| k.detailed_label()).collect();
        assert_eq!(labels, ["CB+", "CB-", "D+", "D-"]);
    }

    #[test]
    fn d4_type_a_ideal_and_basis() {
        let g = make_group(4, 3).unwrap();
        let gg = enumerate_ggraphs(&g).unwrap();
        assert_eq!(gg.len(), 5);
        assert_eq!(gg[0].ideal, vec![poly("x*y"), poly("x^4+y^4")]);
        let b = quotient_basis(&gg[0].ideal, &g, 8).unwrap();
        assert_eq!(b.dimension, 8);
        assert_eq!(b.outside.len(), 9);
        assert!(verify_regular_rep(&b, &g).ok);
    }

    #[test]
    fn broken_ideal_fails() {
        let g = make_group(4, 3).unwrap();
        let err = quotient_basis(&[poly("x^4+y^4")], &g, 8);
        assert!(err.is_err());
        let b = quotient_basis(&[poly("x*y"), poly("x^5"), poly("y^5")], &g, 8).unwrap();
        assert!(!verify_regular_rep(&b, &g).ok);
    }
}
