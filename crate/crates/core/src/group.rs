//! The binary dihedral group `BD_2n(a)`, its irreducible representations and
//! the action of its generators on polynomials.
//!
//! The group is generated by `alpha = diag(e, e^a)` with `e` a primitive
//! `2n`-th root of unity and by `beta: f(x, y) -> f(y, -x)`. The `alpha`
//! action is tracked through residues mod `2n`, so the only scalars that ever
//! appear are Gaussian integers coming from `beta`.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{GaussPoly, GaussRat, Monomial};
use crate::error::{Error, Result};

/// Validated parameters of `BD_2n(a)` with derived invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupParams {
    pub two_n: i64,
    pub a: i64,
    pub n: i64,
    pub q: i64,
    pub k: i64,
    pub small: bool,
    /// `a + 1 mod 2n`, the index of the determinant twist.
    pub det_twist_index: i64,
}

impl GroupParams {
    pub fn order(&self) -> i64 {
        4 * self.n
    }

    pub fn k_odd(&self) -> bool {
        self.k % 2 == 1
    }

    /// Charts, quivers and G-graphs are available for small non-abelian
    /// groups with `k` odd.
    pub fn require_family(&self) -> Result<()> {
        if self.a == 1 {
            return Err(Error::Unsupported(format!(
                "BD_{}(1) is abelian (alpha is scalar); use the cyclic tools",
                self.two_n
            )));
        }
        if !self.small {
            return Err(Error::Unsupported(format!(
                "BD_{}({}) is not small: gcd(a+1, 2n) = {} divides n = {}",
                self.two_n,
                self.a,
                (self.a + 1).gcd(&self.two_n),
                self.n
            )));
        }
        if !self.k_odd() {
            return Err(Error::Unsupported(format!(
                "BD_{}({}) has k = {} even; only the k odd family is supported",
                self.two_n, self.a, self.k
            )));
        }
        Ok(())
    }

    pub fn residue(&self, j: i64) -> i64 {
        j.rem_euclid(self.two_n)
    }

    /// `a * j mod 2n`.
    pub fn conj(&self, j: i64) -> i64 {
        self.residue(self.a * j)
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BD_{}({})", self.two_n, self.a)
    }
}

/// Builds and validates `BD_2n(a)`.
pub fn make_group(two_n: i64, a: i64) -> Result<GroupParams> {
    if two_n < 4 || two_n % 2 != 0 {
        return Err(Error::Invalid(format!("2n must be even and at least 4, got {two_n}")));
    }
    if a < 1 || a >= two_n {
        return Err(Error::Invalid(format!("a must lie in [1, 2n), got {a}")));
    }
    if a.gcd(&two_n) != 1 {
        return Err(Error::Invalid(format!("gcd(a, 2n) = {} is not 1", a.gcd(&two_n))));
    }
    if (a * a) % two_n != 1 {
        return Err(Error::Invalid(format!("a^2 = {} is not 1 mod {two_n}", (a * a) % two_n)));
    }
    let n = two_n / 2;
    let q = two_n / (a - 1).gcd(&two_n);
    let k = n / q;
    let small = n % (a + 1).gcd(&two_n) != 0;
    Ok(GroupParams { two_n, a, n, q, k, small, det_twist_index: (a + 1) % two_n })
}

/// All small `BD_2n(a)` with `k` odd and `2n <= max_two_n`, sorted.
pub fn enumerate_small_groups(max_two_n: i64) -> Vec<GroupParams> {
    let mut out = Vec::new();
    let mut two_n = 4;
    while two_n <= max_two_n {
        for a in 1..two_n {
            if let Ok(g) = make_group(two_n, a) {
                if g.small && g.k_odd() {
                    out.push(g);
                }
            }
        }
        two_n += 2;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Sign::Plus { "+" } else { "-" })
    }
}

/// An irreducible representation: `rho_j^{+/-}` or the two-dimensional `V_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "type")]
pub enum Irrep {
    OneDim { j: i64, sign: Sign },
    TwoDim { r: i64 },
}

impl Irrep {
    pub fn dim(&self) -> usize {
        match self {
            Irrep::OneDim { .. } => 1,
            Irrep::TwoDim { .. } => 2,
        }
    }

    /// The `alpha`-class carried by the first component.
    pub fn class(&self) -> i64 {
        match *self {
            Irrep::OneDim { j, .. } => j,
            Irrep::TwoDim { r } => r,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Irrep::OneDim { j, sign } => format!("rho_{j}{sign}"),
            Irrep::TwoDim { r } => format!("V_{r}"),
        }
    }
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Eigenvalue of `beta` on `rho_j^sign`. Squares to `(-1)^j`: for `j` even
/// `rho^+` is `beta`-fixed and `rho^-` is negated; for `j` odd `rho^+` has
/// eigenvalue `-i` and `rho^-` has `i`.
pub fn beta_eigenvalue(j: i64, sign: Sign) -> GaussRat {
    match (j.rem_euclid(2) == 0, sign) {
        (true, Sign::Plus) => GaussRat::one(),
        (true, Sign::Minus) => GaussRat::from_int(-1),
        (false, Sign::Plus) => GaussRat::from_ints(0, -1),
        (false, Sign::Minus) => GaussRat::i(),
    }
}

/// All irreducible representations: `4k` one-dimensional, then `n - k`
/// two-dimensional with canonical index `min(r, a r mod 2n)`.
pub fn irreps(g: &GroupParams) -> Vec<Irrep> {
    let mut out = Vec::new();
    for j in 0..g.two_n {
        if g.conj(j) == j {
            out.push(Irrep::OneDim { j, sign: Sign::Plus });
            out.push(Irrep::OneDim { j, sign: Sign::Minus });
        }
    }
    for r in 0..g.two_n {
        let ar = g.conj(r);
        if ar != r && r < ar {
            out.push(Irrep::TwoDim { r });
        }
    }
    out
}

/// The irrep whose first component has class `c`, and the component index.
pub fn irrep_of_class(g: &GroupParams, c: i64, sign: Sign) -> (Irrep, usize) {
    let c = g.residue(c);
    let ac = g.conj(c);
    if ac == c {
        (Irrep::OneDim { j: c, sign }, 0)
    } else if c < ac {
        (Irrep::TwoDim { r: c }, 0)
    } else {
        (Irrep::TwoDim { r: ac }, 1)
    }
}

/// `beta(f)(x, y) = f(y, -x)`.
pub fn act_beta(f: &GaussPoly) -> GaussPoly {
    f.map_terms(|m| (GaussRat::sign_pow(m.py as i64), Monomial::new(m.py, m.px)))
}

/// `alpha`-class `px + a py mod 2n` of a monomial.
pub fn alpha_class(m: &Monomial, g: &GroupParams) -> i64 {
    (m.px as i64 + g.a * m.py as i64).rem_euclid(g.two_n)
}

/// Common class of all terms, if `f` is `alpha`-homogeneous and nonzero.
pub fn homogeneous_class(f: &GaussPoly, g: &GroupParams) -> Option<i64> {
    let mut cls = None;
    for (m, _) in f.terms() {
        let c = alpha_class(m, g);
        match cls {
            None => cls = Some(c),
            Some(d) if d != c => return None,
            _ => {}
        }
    }
    cls
}

/// Where a semi-invariant lives: its irrep and which component of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SemiInvariant {
    pub irrep: Irrep,
    pub component: usize,
}

/// Classifies `f` as an element of some `S_rho`, or `None` if it is not
/// semi-invariant.
pub fn classify_semi_invariant(f: &GaussPoly, g: &GroupParams) -> Result<Option<SemiInvariant>> {
    if f.is_zero() {
        return Err(Error::Invalid("the zero polynomial has no representation type".into()));
    }
    let Some(c) = homogeneous_class(f, g) else {
        return Ok(None);
    };
    if g.conj(c) != c {
        let (irrep, component) = irrep_of_class(g, c, Sign::Plus);
        return Ok(Some(SemiInvariant { irrep, component }));
    }
    let b = act_beta(f);
    for sign in [Sign::Plus, Sign::Minus] {
        if b == f.scale(&beta_eigenvalue(c, sign)) {
            return Ok(Some(SemiInvariant { irrep: Irrep::OneDim { j: c, sign }, component: 0 }));
        }
    }
    Ok(None)
}

/// Projection of `m` onto the `beta`-eigenspace of `rho_j^sign`.
pub fn project_one_dim(m: &GaussPoly, j: i64, sign: Sign) -> GaussPoly {
    let lam_inv = beta_eigenvalue(j, sign).inv().expect("unit");
    m + &act_beta(m).scale(&lam_inv)
}

/// A spanning set of `S_rho` in degrees `<= max_deg`.
pub fn semi_invariant_basis(g: &GroupParams, rho: &Irrep, max_deg: u32) -> Vec<GaussPoly> {
    let mut out: Vec<GaussPoly> = Vec::new();
    for m in Monomial::up_to_degree(max_deg) {
        if alpha_class(&m, g) != rho.class() {
            continue;
        }
        let p = match *rho {
            Irrep::OneDim { j, sign } => project_one_dim(&GaussPoly::term(GaussRat::one(), m), j, sign),
            Irrep::TwoDim { .. } => GaussPoly::term(GaussRat::one(), m),
        };
        if p.is_zero() {
            continue;
        }
        let p = p.monic();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly;

    #[test]
    fn invariants_of_examples() {
        let g = make_group(30, 19).unwrap();
        assert_eq!((g.q, g.k, g.small), (5, 3, true));
        let g = make_group(42, 13).unwrap();
        assert_eq!((g.q, g.k, g.small), (7, 3, true));
        let g = make_group(4, 3).unwrap();
        assert_eq!((g.q, g.k, g.small), (2, 1, true));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_group(30, 5).is_err());
        assert!(make_group(30, 7).is_err());
        assert!(make_group(5, 2).is_err());
        let g = make_group(4, 1).unwrap();
        assert!(!g.small && g.require_family().is_err());
    }

    #[test]
    fn d4_irreps() {
        let g = make_group(4, 3).unwrap();
        let labels: Vec<String> = irreps(&g).iter().map(|r| r.label()).collect();
        assert_eq!(labels, ["rho_0+", "rho_0-", "rho_2+", "rho_2-", "V_1"]);
    }

    #[test]
    fn d4_semi_invariants() {
        let g = make_group(4, 3).unwrap();
        let cls = |s: &str| classify_semi_invariant(&poly(s), &g).unwrap().unwrap().irrep.label();
        assert_eq!(cls("x^2+y^2"), "rho_2+");
        assert_eq!(cls("x^2-y^2"), "rho_2-");
        assert_eq!(cls("x*y"), "rho_0-");
        assert_eq!(cls("1"), "rho_0+");
        let rho0m = Irrep::OneDim { j: 0, sign: Sign::Minus };
        assert_eq!(semi_invariant_basis(&g, &rho0m, 4), vec![poly("x*y"), poly("x^4-y^4")]);
        let rho2p = Irrep::OneDim { j: 2, sign: Sign::Plus };
        assert_eq!(semi_invariant_basis(&g, &rho2p, 2), vec![poly("x^2+y^2")]);
    }

    #[test]
    fn bd42_sign_pair() {
        let g = make_group(42, 13).unwrap();
        let p = classify_semi_invariant(&poly("x^7+i*y^7"), &g).unwrap().unwrap();
        let m = classify_semi_invariant(&poly("x^7-i*y^7"), &g).unwrap().unwrap();
        match (p.irrep, m.irrep) {
            (Irrep::OneDim { j: 7, sign: s1 }, Irrep::OneDim { j: 7, sign: s2 }) => assert_ne!(s1, s2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn beta_examples() {
        assert_eq!(act_beta(&poly("x")), poly("y"));
        assert_eq!(act_beta(&poly("y")), poly("-x"));
        assert_eq!(act_beta(&poly("x^4+y^4")), poly("x^4+y^4"));
    }
}
