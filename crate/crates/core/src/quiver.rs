//! McKay quivers: the cyclic quiver of `1/m(1,a)` and the dihedral quiver of
//! `BD_2n(a)` as its `Z/2` orbifold quotient, with relations, the
//! multiplication templates on arrows, and DOT export.
//!
//! Arrows point in the direction of multiplication: an arrow `v -> w` with
//! template `T` sends a `v`-covariant row vector `f` to the `w`-covariant
//! row vector `f T`. A path `p q` means `p` first, so its template is the
//! matrix product `T_p T_q`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::arith::{GaussMatrix, GaussPoly, GaussRat, Monomial};
use crate::error::{Error, Result};
use crate::group::{irrep_of_class, GroupParams, Irrep, Sign};

/// Position of a vertex in the quiver layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum VertexRole {
    /// Left one-dimensional vertex `P_i^sign`.
    P { i: i64, sign: Sign },
    /// Right one-dimensional vertex `Q_i^sign`.
    Q { i: i64, sign: Sign },
    /// Two-dimensional vertex `W_{l,j}`, `1 <= j <= q-1`.
    W { l: i64, j: i64 },
    /// Vertex of the cyclic quiver.
    Cyclic { j: i64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct Vertex {
    pub id: usize,
    pub name: String,
    pub label: String,
    pub dim: usize,
    /// `alpha`-class of the first component.
    pub class: i64,
    pub role: VertexRole,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub irrep: Option<Irrep>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Arrow {
    pub id: usize,
    pub name: String,
    pub family: char,
    pub segment: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<i64>,
    pub tail: usize,
    pub head: usize,
}

/// The parallelogram `0, (k,k), (2q,0), (k+2q,k)` tiling the torus of the
/// cyclic quiver.
#[derive(Clone, Debug, Serialize)]
pub struct FundamentalDomain {
    pub corners: [(i64, i64); 4],
    pub lattice_points: usize,
}

impl FundamentalDomain {
    fn new(k: i64, q: i64) -> Self {
        let corners = [(0, 0), (k, k), (2 * q, 0), (k + 2 * q, k)];
        // Half-open parallelogram s (k,k) + t (2q,0) with s, t in [0, 1).
        let mut count = 0;
        for y in 0..k {
            for x in 0..(k + 2 * q) {
                // s = y/k, t = (x - y)/(2q)
                if x >= y && x - y < 2 * q {
                    count += 1;
                }
            }
        }
        FundamentalDomain { corners, lattice_points: count }
    }
}

/// A quiver with named vertices and arrows.
#[derive(Clone, Debug, Serialize)]
pub struct QuiverData {
    pub name: String,
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fundamental_domain: Option<FundamentalDomain>,
}

impl QuiverData {
    pub fn arrow(&self, name: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.name == name)
    }

    pub fn vertex_of(&self, role: VertexRole) -> Option<usize> {
        self.vertices.iter().position(|v| v.role == role)
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.tail == v)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.head == v)
    }

    pub fn total_dimension(&self) -> usize {
        self.vertices.iter().map(|v| v.dim).sum()
    }
}

/// The McKay quiver of the cyclic group `1/m(1,a)`: arrows `x: j -> j+1` and
/// `y: j -> j+a`. For `m <= 26` the arrows out of `j` are named by the
/// `j`-th lowercase (x) and uppercase (y) letter.
pub fn cyclic_mckay(m: i64, a: i64) -> Result<QuiverData> {
    if m < 2 || a < 1 || a >= m || num_integer::gcd(a, m) != 1 {
        return Err(Error::Invalid(format!("1/{m}(1,{a}) needs m >= 2 and gcd(a, m) = 1")));
    }
    let vertices = (0..m)
        .map(|j| Vertex {
            id: j as usize,
            name: format!("v{j}"),
            label: format!("rho_{j}"),
            dim: 1,
            class: j,
            role: VertexRole::Cyclic { j },
            irrep: None,
        })
        .collect();
    let letters = m <= 26;
    let mut arrows = Vec::new();
    for (family, step) in [('x', 1), ('y', a)] {
        for j in 0..m {
            let name = if letters {
                let c = (b'a' + j as u8) as char;
                if family == 'x' {
                    c.to_string()
                } else {
                    c.to_ascii_uppercase().to_string()
                }
            } else {
                format!("{family}{j}")
            };
            arrows.push(Arrow {
                id: arrows.len(),
                name,
                family,
                segment: j,
                index: None,
                tail: j as usize,
                head: (j + step).rem_euclid(m) as usize,
            });
        }
    }
    Ok(QuiverData { name: format!("1/{m}(1,{a})"), vertices, arrows, fundamental_domain: None })
}

fn arrow_name(g: &GroupParams, family: char, i: i64, j: Option<i64>) -> String {
    match (g.k == 1, j) {
        (true, None) => family.to_string(),
        (true, Some(j)) => format!("{family}{j}"),
        (false, None) => format!("{family}{i}"),
        (false, Some(j)) => format!("{family}{i}_{j}"),
    }
}

/// The dihedral McKay quiver with segments `i in Z/k`.
pub fn dihedral_mckay(g: &GroupParams) -> Result<QuiverData> {
    g.require_family()?;
    let (k, q) = (g.k, g.q);
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut push = |role: VertexRole, class: i64, sign: Sign, name: String| {
        let (irrep, _) = irrep_of_class(g, class, sign);
        vertices.push(Vertex {
            id: vertices.len(),
            name,
            label: irrep.label(),
            dim: irrep.dim(),
            class: g.residue(class),
            role,
            irrep: Some(irrep),
        });
    };
    for i in 0..k {
        for sign in [Sign::Plus, Sign::Minus] {
            push(VertexRole::P { i, sign }, i * (g.a + 1), sign, format!("P{i}{sign}"));
        }
    }
    for i in 0..k {
        for sign in [Sign::Plus, Sign::Minus] {
            push(VertexRole::Q { i, sign }, i * (g.a + 1) + q, sign, format!("Q{i}{sign}"));
        }
    }
    for l in 0..k {
        for j in 1..q {
            push(VertexRole::W { l, j }, (l - 1) * (g.a + 1) + j, Sign::Plus, format!("W{l}_{j}"));
        }
    }
    let index: HashMap<VertexRole, usize> = vertices.iter().map(|v| (v.role, v.id)).collect();
    let m = |i: i64| i.rem_euclid(k);
    let p = |i: i64, sign| index[&VertexRole::P { i: m(i), sign }];
    let qv = |i: i64, sign| index[&VertexRole::Q { i: m(i), sign }];
    let w = |l: i64, j: i64| index[&VertexRole::W { l: m(l), j }];
    let (plus, minus) = (Sign::Plus, Sign::Minus);

    let mut arrows: Vec<Arrow> = Vec::new();
    let mut add = |family: char, i: i64, j: Option<i64>, tail: usize, head: usize| {
        arrows.push(Arrow { id: arrows.len(), name: arrow_name(g, family, i, j), family, segment: i, index: j, tail, head });
    };
    for i in 0..k {
        add('a', i, None, p(i, plus), w(i + 1, 1));
        add('b', i, None, w(i, 1), p(i, plus));
        add('c', i, None, p(i, minus), w(i + 1, 1));
        add('d', i, None, w(i, 1), p(i, minus));
        add('e', i, None, w(i, q - 1), qv(i - 1, plus));
        add('f', i, None, qv(i - 1, plus), w(i + 1, q - 1));
        add('g', i, None, w(i, q - 1), qv(i - 1, minus));
        add('h', i, None, qv(i - 1, minus), w(i + 1, q - 1));
        for j in 1..=q - 2 {
            add('r', i, Some(j), w(i, j), w(i, j + 1));
        }
        for j in 1..=q - 2 {
            add('u', i, Some(j), w(i, j + 1), w(i + 1, j));
        }
    }
    Ok(QuiverData {
        name: g.to_string(),
        vertices,
        arrows,
        fundamental_domain: Some(FundamentalDomain::new(k, q)),
    })
}

/// A relation `sum c_t * path_t = 0`; paths are arrow ids, first arrow first.
#[derive(Clone, Debug)]
pub struct Relation {
    pub terms: Vec<(GaussRat, Vec<usize>)>,
}

impl Relation {
    /// Rendering such as `b1*a1 + d1*c1 - 2*r1_1*u1_1`.
    pub fn render(&self, qd: &QuiverData) -> String {
        let mut s = String::new();
        for (k, (c, path)) in self.terms.iter().enumerate() {
            let names: Vec<&str> = path.iter().map(|&a| qd.arrows[a].name.as_str()).collect();
            let (neg, mag) = crate::arith::poly::split_sign(c);
            let body = if mag.is_one() { names.join("*") } else { format!("{mag}*{}", names.join("*")) };
            match (k, neg) {
                (0, true) => s.push_str(&format!("-{body}")),
                (0, false) => s.push_str(&body),
                (_, true) => s.push_str(&format!(" - {body}")),
                (_, false) => s.push_str(&format!(" + {body}")),
            }
        }
        s
    }

    pub fn tail(&self, qd: &QuiverData) -> usize {
        qd.arrows[self.terms[0].1[0]].tail
    }

    pub fn head(&self, qd: &QuiverData) -> usize {
        qd.arrows[*self.terms[0].1.last().unwrap()].head
    }
}

/// The relations of the dihedral quiver, `k (q + 3)` of them.
pub fn relation_set(g: &GroupParams, qd: &QuiverData) -> Result<Vec<Relation>> {
    g.require_family()?;
    let (k, q) = (g.k, g.q);
    let id = |family: char, i: i64, j: Option<i64>| -> usize {
        qd.arrow(&arrow_name(g, family, i.rem_euclid(k), j)).expect("arrow exists").id
    };
    let one = GaussRat::one;
    let neg = || GaussRat::from_int(-1);
    let two = || GaussRat::from_int(-2);
    let mut rels = Vec::new();
    for i in 0..k {
        for (x, y) in [('a', 'b'), ('c', 'd'), ('f', 'e'), ('h', 'g')] {
            rels.push(Relation { terms: vec![(one(), vec![id(x, i, None), id(y, i + 1, None)])] });
        }
        let left = vec![(one(), vec![id('b', i, None), id('a', i, None)]), (one(), vec![id('d', i, None), id('c', i, None)])];
        let right = vec![(one(), vec![id('e', i, None), id('f', i, None)]), (one(), vec![id('g', i, None), id('h', i, None)])];
        if q == 2 {
            let mut terms = left;
            terms.extend(right.into_iter().map(|(_, p)| (neg(), p)));
            rels.push(Relation { terms });
            continue;
        }
        let mut terms = left;
        terms.push((two(), vec![id('r', i, Some(1)), id('u', i, Some(1))]));
        rels.push(Relation { terms });
        for j in 1..=q - 3 {
            rels.push(Relation {
                terms: vec![
                    (one(), vec![id('u', i, Some(j)), id('r', i + 1, Some(j))]),
                    (neg(), vec![id('r', i, Some(j + 1)), id('u', i, Some(j + 1))]),
                ],
            });
        }
        let mut terms = right;
        terms.push((two(), vec![id('u', i, Some(q - 2)), id('r', i + 1, Some(q - 2))]));
        rels.push(Relation { terms });
    }
    Ok(rels)
}

/// The multiplication template of an arrow: the matrix `x * x_part + y * y_part`,
/// shaped `dim(tail) x dim(head)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub x_part: GaussMatrix,
    pub y_part: GaussMatrix,
}

impl Template {
    fn build(rows: usize, cols: usize, entries: &[(usize, usize, GaussRat, bool)]) -> Self {
        let (mut x_part, mut y_part) = (GaussMatrix::zeros(rows, cols), GaussMatrix::zeros(rows, cols));
        for (r, c, v, is_x) in entries {
            if *is_x {
                x_part[(*r, *c)] = v.clone();
            } else {
                y_part[(*r, *c)] = v.clone();
            }
        }
        Template { x_part, y_part }
    }

    pub fn rows(&self) -> usize {
        self.x_part.rows
    }

    pub fn cols(&self) -> usize {
        self.x_part.cols
    }

    /// Entry `(r, c)` as a polynomial.
    pub fn entry(&self, r: usize, c: usize) -> GaussPoly {
        let mut p = GaussPoly::zero();
        p.add_term(Monomial::new(1, 0), self.x_part[(r, c)].clone());
        p.add_term(Monomial::new(0, 1), self.y_part[(r, c)].clone());
        p
    }

    pub fn to_poly_matrix(&self) -> PolyMatrix {
        PolyMatrix { rows: (0..self.rows()).map(|r| (0..self.cols()).map(|c| self.entry(r, c)).collect()).collect() }
    }
}

impl Serialize for Template {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.to_poly_matrix().rows.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

/// Template of an arrow family; the right-edge families depend on the parity of `q`.
pub fn family_template(family: char, q: i64) -> Template {
    let one = GaussRat::one;
    let m1 = || GaussRat::from_int(-1);
    let i = GaussRat::i;
    let mi = || GaussRat::from_ints(0, -1);
    let (x, y) = (true, false);
    let odd = q % 2 != 0;
    match family {
        'a' => Template::build(1, 2, &[(0, 0, one(), x), (0, 1, one(), y)]),
        'c' => Template::build(1, 2, &[(0, 0, one(), x), (0, 1, m1(), y)]),
        'b' => Template::build(2, 1, &[(0, 0, one(), y), (1, 0, m1(), x)]),
        'd' => Template::build(2, 1, &[(0, 0, one(), y), (1, 0, one(), x)]),
        'r' => Template::build(2, 2, &[(0, 0, one(), x), (1, 1, one(), y)]),
        'u' => Template::build(2, 2, &[(0, 0, one(), y), (1, 1, m1(), x)]),
        'e' if odd => Template::build(2, 1, &[(0, 0, one(), x), (1, 0, i(), y)]),
        'g' if odd => Template::build(2, 1, &[(0, 0, one(), x), (1, 0, mi(), y)]),
        'f' if odd => Template::build(1, 2, &[(0, 0, one(), y), (0, 1, i(), x)]),
        'h' if odd => Template::build(1, 2, &[(0, 0, one(), y), (0, 1, mi(), x)]),
        'e' => Template::build(2, 1, &[(0, 0, one(), x), (1, 0, one(), y)]),
        'g' => Template::build(2, 1, &[(0, 0, one(), x), (1, 0, m1(), y)]),
        'f' => Template::build(1, 2, &[(0, 0, one(), y), (0, 1, m1(), x)]),
        'h' => Template::build(1, 2, &[(0, 0, one(), y), (0, 1, one(), x)]),
        'x' => Template::build(1, 1, &[(0, 0, one(), x)]),
        'y' => Template::build(1, 1, &[(0, 0, one(), y)]),
        _ => panic!("unknown arrow family {family}"),
    }
}

/// Templates for every arrow of the quiver, indexed by arrow id.
pub fn xy_templates(g: &GroupParams, qd: &QuiverData) -> Vec<Template> {
    qd.arrows.iter().map(|a| family_template(a.family, g.q)).collect()
}

/// A matrix of polynomials, used for symbolic path evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: Vec<Vec<GaussPoly>>,
}

impl PolyMatrix {
    pub fn zeros(r: usize, c: usize) -> Self {
        PolyMatrix { rows: vec![vec![GaussPoly::zero(); c]; r] }
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        let (r, m, c) = (self.rows.len(), o.rows.len(), o.rows.first().map_or(0, |v| v.len()));
        let mut out = PolyMatrix::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                let mut acc = GaussPoly::zero();
                for t in 0..m {
                    acc = &acc + &(&self.rows[i][t] * &o.rows[t][j]);
                }
                out.rows[i][j] = acc;
            }
        }
        out
    }

    pub fn add_scaled(&mut self, c: &GaussRat, o: &PolyMatrix) {
        for (ra, rb) in self.rows.iter_mut().zip(&o.rows) {
            for (a, b) in ra.iter_mut().zip(rb) {
                *a = &*a + &b.scale(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|p| p.is_zero())
    }
}

/// Outcome of substituting the templates into the relations.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub relations: usize,
    /// `(relation, residue)` for every relation that does not vanish.
    pub residues: Vec<(String, String)>,
    pub ok: bool,
}

/// Substitutes the templates into every relation; all must vanish.
pub fn verify_relations_symbolic(g: &GroupParams) -> Result<RelationReport> {
    let qd = dihedral_mckay(g)?;
    let rels = relation_set(g, &qd)?;
    let temps: Vec<PolyMatrix> = xy_templates(g, &qd).iter().map(|t| t.to_poly_matrix()).collect();
    let mut residues = Vec::new();
    for rel in &rels {
        let (t, h) = (qd.vertices[rel.tail(&qd)].dim, qd.vertices[rel.head(&qd)].dim);
        let mut acc = PolyMatrix::zeros(t, h);
        for (c, path) in &rel.terms {
            let mut m = temps[path[0]].clone();
            for &a in &path[1..] {
                m = m.mul(&temps[a]);
            }
            acc.add_scaled(c, &m);
        }
        if !acc.is_zero() {
            let shown: Vec<String> = acc.rows.iter().map(|r| r.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")).collect();
            residues.push((rel.render(&qd), format!("[{}]", shown.join("; "))));
        }
    }
    Ok(RelationReport { relations: rels.len(), ok: residues.is_empty(), residues })
}

/// Deterministic DOT rendering.
pub fn export_dot(qd: &QuiverData) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{}\" {{", qd.name);
    for v in &qd.vertices {
        let shape = if v.dim == 2 { "box" } else { "ellipse" };
        let _ = writeln!(s, "  v{} [label=\"{}\", shape={shape}];", v.id, v.label);
    }
    for a in &qd.arrows {
        let _ = writeln!(s, "  v{} -> v{} [label=\"{}\"];", a.tail, a.head, a.name);
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn d4_quiver() {
        let g = make_group(4, 3).unwrap();
        let qd = dihedral_mckay(&g).unwrap();
        assert_eq!(qd.vertices.len(), 5);
        let names: Vec<&str> = qd.arrows.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["a", "b", "c", "d", "e", "f", "g", "h"]);
        let rels = relation_set(&g, &qd).unwrap();
        let shown: Vec<String> = rels.iter().map(|r| r.render(&qd)).collect();
        assert_eq!(shown, ["a*b", "c*d", "f*e", "h*g", "b*a + d*c - e*f - g*h"]);
        assert!(verify_relations_symbolic(&g).unwrap().ok);
        let dot = export_dot(&qd);
        assert_eq!(dot.matches("->").count(), 8);
    }

    #[test]
    fn bd42_counts_and_names() {
        let g = make_group(42, 13).unwrap();
        let qd = dihedral_mckay(&g).unwrap();
        let one = qd.vertices.iter().filter(|v| v.dim == 1).count();
        assert_eq!((one, qd.vertices.len() - one), (12, 18));
        let rels = relation_set(&g, &qd).unwrap();
        assert_eq!(rels.len(), 3 * (4 + 6));
        assert_eq!(rels[4].render(&qd), "b0*a0 + d0*c0 - 2*r0_1*u0_1");
        assert_eq!(family_template('e', 7).entry(1, 0).to_string(), "i*y");
        assert_eq!(qd.fundamental_domain.as_ref().unwrap().lattice_points, 42);
    }

    #[test]
    fn r_then_u_is_xy_diag() {
        let r = family_template('r', 5).to_poly_matrix();
        let u = family_template('u', 5).to_poly_matrix();
        let ru = r.mul(&u);
        assert_eq!(ru.rows[0][0].to_string(), "x*y");
        assert_eq!(ru.rows[1][1].to_string(), "-x*y");
        assert!(ru.rows[0][1].is_zero() && ru.rows[1][0].is_zero());
    }

    #[test]
    fn cyclic_quivers() {
        let qd = cyclic_mckay(5, 2).unwrap();
        assert_eq!((qd.vertices.len(), qd.arrows.len()), (5, 10));
        assert_eq!(qd.arrow("A").unwrap().head, 2);
        let qd = cyclic_mckay(2, 1).unwrap();
        assert_eq!(qd.arrows.iter().filter(|a| a.tail == 0 && a.head == 1).count(), 2);
        assert!(cyclic_mckay(6, 2).is_err());
    }
}
