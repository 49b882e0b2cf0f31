//! Charts of `G-Hilb` for the cyclic group `1/m(1,a)`.
//!
//! Consecutive boundary points `e_i, e_{i+1}` span a smooth cone; its chart
//! has coordinates the invariant Laurent monomials `M1 = (s_i, -r_i)` and
//! `M2 = (-s_{i+1}, r_{i+1})`, dual to the two rays. In each weight the
//! G-graph keeps the monomial that is smallest on both rays, and each arrow
//! of the McKay quiver takes the value `(x or y) * tail / head`, a monomial
//! in `M1, M2`.

use serde::Serialize;

use super::numeric::ClusterModule;
use crate::arith::{GaussMatrix, GaussPoly, GaussRat, Monomial};
use crate::error::{Error, Result};
use crate::lattice::{cyclic_boundary, LatticePoint};
use crate::quiver::{cyclic_mckay, QuiverData};

/// One chart of the cyclic resolution. The chart is the affine plane in its
/// two free parameters; every arrow is a monomial in them.
#[derive(Clone, Debug, Serialize)]
pub struct CyclicChart {
    pub ggraph: String,
    pub points: (LatticePoint, LatticePoint),
    /// Monomial generators of the G-graph ideal.
    pub ideal: Vec<GaussPoly>,
    /// The G-graph, indexed by weight.
    pub basis: Vec<Monomial>,
    pub free_params: Vec<String>,
    /// Always empty: cyclic charts are planes.
    pub equations: Vec<String>,
    pub bindings: Vec<(String, String)>,
    /// Each arrow as a Laurent monomial in `x, y`.
    pub name_map: Vec<(String, String)>,
    /// Exponents of every arrow in the chart coordinates, in arrow order.
    #[serde(skip)]
    pub exponents: Vec<(u32, u32)>,
}

fn dot(v: (i64, i64), p: LatticePoint) -> i64 {
    v.0 * p.r + v.1 * p.s
}

/// `x^i y^j` with possibly negative exponents, as a fraction.
pub fn laurent(v: (i64, i64)) -> String {
    let part = |name: &str, e: i64| match e {
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    };
    let (mut num, mut den) = (Vec::new(), Vec::new());
    for (name, e) in [("x", v.0), ("y", v.1)] {
        if e > 0 {
            num.push(part(name, e));
        } else if e < 0 {
            den.push(part(name, -e));
        }
    }
    let num = if num.is_empty() { "1".to_string() } else { num.join("*") };
    match den.len() {
        0 => num,
        1 => format!("{num}/{}", den[0]),
        _ => format!("{num}/({})", den.join("*")),
    }
}

fn power(name: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

fn chart_for_pair(m: i64, a: i64, qd: &QuiverData, ei: LatticePoint, ej: LatticePoint) -> Result<CyclicChart> {
    let weight = |v: (i64, i64)| (v.0 + a * v.1).rem_euclid(m);
    // The smallest monomial on both rays in each weight.
    let mut basis = Vec::with_capacity(m as usize);
    for w in 0..m {
        let cands: Vec<(i64, i64)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|&v| weight(v) == w).collect();
        let best = cands
            .iter()
            .copied()
            .find(|&c| cands.iter().all(|&o| dot(c, ei) <= dot(o, ei) && dot(c, ej) <= dot(o, ej)))
            .ok_or_else(|| Error::Verification(format!("no G-graph for the pair {ei}, {ej}")))?;
        basis.push(Monomial::new(best.0 as u32, best.1 as u32));
    }
    let exp = |mono: &Monomial| (mono.px as i64, mono.py as i64);
    let mut exponents = Vec::with_capacity(qd.arrows.len());
    let mut values = Vec::with_capacity(qd.arrows.len());
    for arrow in &qd.arrows {
        let (t, h) = (exp(&basis[arrow.tail]), exp(&basis[arrow.head]));
        let step = if arrow.family == 'x' { (1, 0) } else { (0, 1) };
        let v = (step.0 + t.0 - h.0, step.1 + t.1 - h.1);
        // v = p M1 + q M2 with p, q read off against the opposite rays.
        let (p, q) = (dot(v, ej), dot(v, ei));
        if p < 0 || q < 0 || p % m != 0 || q % m != 0 {
            return Err(Error::Verification(format!("arrow {} is not regular on the chart", arrow.name)));
        }
        exponents.push(((p / m) as u32, (q / m) as u32));
        values.push(v);
    }
    let pick = |target: (u32, u32)| qd.arrows.iter().zip(&exponents).filter(|(_, e)| **e == target).map(|(a, _)| a.name.clone()).min_by_key(|n| (n.to_lowercase(), n.clone()));
    let (c1, c2) = match (pick((1, 0)), pick((0, 1))) {
        (Some(c1), Some(c2)) => (c1, c2),
        _ => return Err(Error::Verification(format!("the chart of {ei}, {ej} has no arrow coordinates"))),
    };
    let mut free = vec![c1.clone(), c2.clone()];
    free.sort_by_key(|n| (n.to_lowercase(), n.clone()));
    let bindings = qd
        .arrows
        .iter()
        .zip(&exponents)
        .filter(|(arrow, _)| !free.contains(&arrow.name))
        .map(|(arrow, &(p, q))| {
            let parts: Vec<String> = [power(&c1, p), power(&c2, q)].into_iter().flatten().collect();
            (arrow.name.clone(), if parts.is_empty() { "1".to_string() } else { parts.join("*") })
        })
        .collect();
    let ideal = minimal_outside(&basis)
        .into_iter()
        .map(|mono| GaussPoly::term(GaussRat::one(), mono))
        .collect();
    Ok(CyclicChart {
        ggraph: format!("({},{};{},{})", ei.r, ei.s, ej.r, ej.s),
        points: (ei, ej),
        ideal,
        basis,
        free_params: free,
        equations: Vec::new(),
        bindings,
        name_map: qd.arrows.iter().zip(&values).map(|(arrow, &v)| (arrow.name.clone(), laurent(v))).collect(),
        exponents,
    })
}

/// Minimal monomials outside an order ideal of monomials.
fn minimal_outside(basis: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for b in basis.iter().chain(std::iter::once(&Monomial::ONE)) {
        for step in [Monomial::new(1, 0), Monomial::new(0, 1)] {
            let c = b.mul(&step);
            if !basis.contains(&c) && !out.contains(&c) {
                out.push(c);
            }
        }
    }
    let mut minimal: Vec<Monomial> = out.iter().copied().filter(|c| !out.iter().any(|o| o != c && o.divides(c))).collect();
    minimal.sort_by_key(|mono| (std::cmp::Reverse(mono.px), mono.py));
    minimal
}

/// One chart per pair of consecutive boundary points of `1/m(1,a)`.
pub fn cyclic_charts(m: i64, a: i64) -> Result<Vec<CyclicChart>> {
    let qd = cyclic_mckay(m, a)?;
    let pts = cyclic_boundary(m, a)?;
    pts.windows(2).map(|w| chart_for_pair(m, a, &qd, w[0], w[1])).collect()
}

/// The x/y action of the chart's representation at `values` of its free
/// parameters, on one slot per vertex, with `1` in the slot of `rho_0`.
pub fn cyclic_module(chart: &CyclicChart, qd: &QuiverData, values: &[GaussRat]) -> Result<ClusterModule> {
    if values.len() != 2 {
        return Err(Error::Invalid(format!("a cyclic chart has 2 parameters, got {}", values.len())));
    }
    // Values in the order of the coordinates M1, M2.
    let coord = |e: (u32, u32)| chart.free_params.iter().position(|f| qd.arrow(f).is_some_and(|a| chart.exponents[a.id] == e));
    let (i1, i2) = (coord((1, 0)).expect("coordinate"), coord((0, 1)).expect("coordinate"));
    let (m1, m2) = (&values[i1], &values[i2]);
    let d = qd.vertices.len();
    let mut x = GaussMatrix::zeros(d, d);
    let mut y = GaussMatrix::zeros(d, d);
    for (arrow, &(p, q)) in qd.arrows.iter().zip(&chart.exponents) {
        let value = &m1.pow(p) * &m2.pow(q);
        let mat = if arrow.family == 'x' { &mut x } else { &mut y };
        mat[(arrow.head, arrow.tail)] = value;
    }
    Ok(ClusterModule { slots: (0..d).map(|v| (v, 0, 0)).collect(), x, y, v0: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_display() {
        assert_eq!(laurent((-2, 1)), "y/x^2");
        assert_eq!(laurent((5, 0)), "x^5");
        assert_eq!(laurent((0, 0)), "1");
        assert_eq!(laurent((-1, -1)), "1/(x*y)");
    }

    fn shown(c: &CyclicChart) -> Vec<String> {
        c.ideal.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn five_two() {
        let charts = cyclic_charts(5, 2).unwrap();
        assert_eq!(charts.len(), 3);
        assert_eq!(shown(&charts[0]), ["x^5", "y"]);
        assert_eq!(shown(&charts[1]), ["x^2", "x*y^2", "y^3"]);
        assert_eq!(shown(&charts[2]), ["x", "y^5"]);
        let free: Vec<Vec<String>> = charts.iter().map(|c| c.free_params.clone()).collect();
        assert_eq!(free, [vec!["A", "e"], vec!["b", "E"], vec!["a", "D"]]);
        let map: std::collections::HashMap<_, _> = charts[0].name_map.iter().cloned().collect();
        assert_eq!((map["A"].as_str(), map["e"].as_str()), ("y/x^2", "x^5"));
        assert!(charts.iter().all(|c| c.equations.is_empty() && c.bindings.len() == 8));
    }

    #[test]
    fn two_one() {
        let charts = cyclic_charts(2, 1).unwrap();
        assert_eq!(charts.len(), 2);
        assert_eq!(shown(&charts[0]), ["x^2", "y"]);
        assert_eq!(shown(&charts[1]), ["x", "y^2"]);
    }

    #[test]
    fn origin_cluster_is_the_graph_ideal() {
        let qd = cyclic_mckay(7, 3).unwrap();
        for c in cyclic_charts(7, 3).unwrap() {
            let zero = [GaussRat::zero(), GaussRat::zero()];
            let module = cyclic_module(&c, &qd, &zero).unwrap();
            assert!(module.commutes());
            let ideal = super::super::numeric::cluster_ideal(&module, 8).unwrap();
            let mut want = c.basis.clone();
            want.sort_by_key(|m| (m.px, m.py));
            let mut got = ideal.standard.clone();
            got.sort_by_key(|m| (m.px, m.py));
            assert_eq!(got, want, "{}", c.ggraph);
        }
    }
}
