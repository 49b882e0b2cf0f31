//! Hirzebruch-Jung continued fractions and the boundary of the Newton polygon
//! of the congruence lattice `{(r, s) : s = a r mod 2n}`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupParams;

/// `num/den = d0 - 1/(d1 - 1/(...))` with every digit at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HJExpansion {
    pub num: i64,
    pub den: i64,
    pub digits: Vec<i64>,
}

impl HJExpansion {
    pub fn is_palindrome(&self) -> bool {
        self.digits.iter().eq(self.digits.iter().rev())
    }

    /// Evaluates the continued fraction back to a reduced `(num, den)`.
    pub fn value(&self) -> (i64, i64) {
        let (mut p, mut q) = (1i64, 0i64);
        for &d in self.digits.iter().rev() {
            // d - q/p = (d p - q)/p
            let np = d * p - q;
            q = p;
            p = np;
        }
        (p, q)
    }
}

/// The minus-sign continued fraction of `num/den`.
pub fn hj_expand(num: i64, den: i64) -> Result<HJExpansion> {
    if !(0 < den && den < num) {
        return Err(Error::Invalid(format!("need 0 < den < num, got {num}/{den}")));
    }
    if num.gcd(&den) != 1 {
        return Err(Error::Invalid(format!("{num}/{den} is not reduced")));
    }
    let (mut p, mut q) = (num, den);
    let mut digits = Vec::new();
    while q != 0 {
        let d = Integer::div_ceil(&p, &q);
        digits.push(d);
        (p, q) = (q, d * q - p);
    }
    Ok(HJExpansion { num, den, digits })
}

/// A point `(r, s)` in monomial-exponent coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticePoint {
    pub r: i64,
    pub s: i64,
}

impl LatticePoint {
    pub fn new(r: i64, s: i64) -> Self {
        LatticePoint { r, s }
    }
}

impl std::fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

/// `e_0 = (0, m)`, `e_1 = (1, a)`, `e_{i+1} = c_i e_i - e_{i-1}` over the
/// digits of `m/a`, ending at `(m, 0)`.
pub fn cyclic_boundary(m: i64, a: i64) -> Result<Vec<LatticePoint>> {
    let hj = hj_expand(m, a)?;
    let mut pts = vec![LatticePoint::new(0, m), LatticePoint::new(1, a)];
    for c in hj.digits {
        let (p, q) = (pts[pts.len() - 2], pts[pts.len() - 1]);
        pts.push(LatticePoint::new(c * q.r - p.r, c * q.s - p.s));
    }
    Ok(pts)
}

/// Boundary points from `(0, 2n)` up to and including `(q, q)`.
pub fn newton_boundary(g: &GroupParams) -> Result<Vec<LatticePoint>> {
    let all = cyclic_boundary(g.two_n, g.a)?;
    let stop = LatticePoint::new(g.q, g.q);
    match all.iter().position(|p| *p == stop) {
        Some(k) => Ok(all[..=k].to_vec()),
        None => Err(Error::Invalid(format!("boundary of {g} does not reach ({0},{0})", g.q))),
    }
}

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i64 {
    (a.r - o.r) * (b.s - o.s) - (a.s - o.s) * (b.r - o.r)
}

/// Independent oracle: lattice points on the lower-left hull of the nonzero
/// congruence points in `[0, box]^2`, truncated at `(q, q)`.
pub fn newton_boundary_bruteforce(g: &GroupParams, bbox: i64) -> Vec<LatticePoint> {
    let mut lowest: Vec<LatticePoint> = Vec::new();
    for r in 0..=bbox {
        let s0 = (g.a * r).rem_euclid(g.two_n);
        let s = if r == 0 { g.two_n } else { s0 };
        if s <= bbox {
            lowest.push(LatticePoint::new(r, s));
        }
    }
    // The Newton polygon boundary is the lower convex chain that is
    // non-increasing in s; points past the minimum of s are irrelevant.
    let mut hull: Vec<LatticePoint> = Vec::new();
    for p in lowest.iter().copied() {
        if let Some(last) = hull.last() {
            if p.s >= last.s {
                continue;
            }
        }
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let mut on = Vec::new();
    for p in &lowest {
        let on_edge = hull.windows(2).any(|w| {
            cross(w[0], w[1], *p) == 0 && w[0].r <= p.r && p.r <= w[1].r
        }) || hull.first() == Some(p);
        if on_edge && !on.contains(p) {
            on.push(*p);
        }
    }
    on.sort_by_key(|p| p.r);
    let stop = LatticePoint::new(g.q, g.q);
    if let Some(k) = on.iter().position(|p| *p == stop) {
        on.truncate(k + 1);
    }
    on
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
        v.iter().map(|&(r, s)| LatticePoint::new(r, s)).collect()
    }

    #[test]
    fn expansions() {
        assert_eq!(hj_expand(30, 11).unwrap().digits, [3, 4, 3]);
        assert_eq!(hj_expand(42, 13).unwrap().digits, [4, 2, 2, 2, 4]);
        assert_eq!(hj_expand(5, 1).unwrap().digits, [5]);
        assert_eq!(hj_expand(42, 13).unwrap().value(), (42, 13));
        assert!(hj_expand(5, 5).is_err());
        assert!(hj_expand(6, 4).is_err());
    }

    #[test]
    fn boundaries() {
        let g = make_group(42, 13).unwrap();
        assert_eq!(newton_boundary(&g).unwrap(), pts(&[(0, 42), (1, 13), (4, 10), (7, 7)]));
        let g = make_group(30, 19).unwrap();
        assert_eq!(newton_boundary(&g).unwrap(), pts(&[(0, 30), (1, 19), (2, 8), (5, 5)]));
        assert_eq!(cyclic_boundary(5, 2).unwrap(), pts(&[(0, 5), (1, 2), (3, 1), (5, 0)]));
        let d4 = make_group(4, 3).unwrap();
        assert_eq!(newton_boundary_bruteforce(&d4, 4), pts(&[(0, 4), (1, 3), (2, 2)]));
        let g = make_group(30, 19).unwrap();
        assert_eq!(newton_boundary_bruteforce(&g, 30), pts(&[(0, 30), (1, 19), (2, 8), (5, 5)]));
    }
}
