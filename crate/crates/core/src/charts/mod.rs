//! Affine charts of G-Hilb: from a G-graph to a normalized symbolic
//! representation of the McKay quiver, elimination of the relations down to
//! the chart equations, numeric points, the induced `C[x, y]`-module and its
//! annihilator ideal.
//!
//! A normalization is a spanning tree on the basis vectors of all vertex
//! spaces, rooted at the single basis vector of `rho_0^+`. A tree edge is a
//! designated entry `(s, t)` of an arrow matrix: the arrow sends basis vector
//! `s` of its tail to basis vector `t` of its head, so row `s` of the matrix
//! becomes the unit row `e_t`.

pub mod cyclic;
pub mod numeric;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::arith::{GaussRat, MMono, MPoly, Span};
use crate::error::{Error, Result};
use crate::ggraph::{GGraph, GGraphKind};
use crate::group::{GroupParams, Sign};
use crate::quiver::{dihedral_mckay, relation_set, QuiverData, Relation, VertexRole};

pub use cyclic::{cyclic_charts, cyclic_module, CyclicChart};
pub use numeric::{
    assemble_xy_action, check_stability, cluster_ideal, instantiate, origin_values, sample_point, sampling_plan, verify_chart, PlanSource, SamplingPlan,
    verify_cluster, verify_cluster_bounded, orbit_point, sample_orbit_point, ChartVerification, ClusterModule, ClusterReport, NumericRep,
};

/// Which entry of an arrow matrix: lowercase/uppercase for the first/second
/// entry of a row or column vector; for `2 x 2` matrices `(m, M; m', M')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Lower,
    Upper,
    LowerPrime,
    UpperPrime,
}

fn slot_position(slot: Slot, rows: usize, cols: usize) -> (usize, usize) {
    match (slot, rows, cols) {
        (Slot::Lower, _, _) => (0, 0),
        (Slot::Upper, 1, _) => (0, 1),
        (Slot::Upper, _, 1) => (1, 0),
        (Slot::Upper, _, _) => (0, 1),
        (Slot::LowerPrime, _, _) => (1, 0),
        (Slot::UpperPrime, _, _) => (1, 1),
    }
}

/// Name of entry `(r, c)` of an arrow called `name` with the given shape,
/// e.g. `a1`/`A1` or `r0_2`, `R0_2`, `r'0_2`, `R'0_2`.
pub fn entry_name(name: &str, rows: usize, cols: usize, r: usize, c: usize) -> String {
    let (letter, suffix) = name.split_at(1);
    let upper = letter.to_ascii_uppercase();
    match (rows, cols, r, c) {
        (1, 1, _, _) => name.to_string(),
        (1, _, _, 0) | (_, 1, 0, _) => name.to_string(),
        (1, _, _, _) | (_, 1, _, _) => format!("{upper}{suffix}"),
        (_, _, 0, 0) => format!("{letter}{suffix}"),
        (_, _, 0, _) => format!("{upper}{suffix}"),
        (_, _, _, 0) => format!("{letter}'{suffix}"),
        _ => format!("{upper}'{suffix}"),
    }
}

/// A designated entry: a tree edge `(tail, row) -> (head, col)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Designation {
    pub name: String,
    #[serde(skip)]
    pub arrow: usize,
    #[serde(skip)]
    pub row: usize,
    #[serde(skip)]
    pub col: usize,
}

/// How a normalization was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeSource {
    /// The designations listed for the graph's type.
    Theorem,
    /// A spanning tree found by search at the G-graph point.
    Search,
}

/// The nonzero entries designated for a G-graph.
#[derive(Clone, Debug, Serialize)]
pub struct OpenConditions {
    pub ggraph: String,
    pub kind: GGraphKind,
    pub source: TreeSource,
    pub nonzero: Vec<Designation>,
    /// Entries forced to zero by the change of basis.
    pub zero: Vec<String>,
}

/// `theta = (-sum_{i>0} dim rho_i, 1, ..., 1)`: the stability weight of the
/// G-Hilb chamber, as (vertex label, weight).
pub fn theta(qd: &QuiverData) -> Vec<(String, i64)> {
    let root = root_vertex(qd);
    let rest: i64 = qd.vertices.iter().filter(|v| v.id != root).map(|v| v.dim as i64).sum();
    qd.vertices.iter().map(|v| (v.label.clone(), if v.id == root { -rest } else { 1 })).collect()
}

pub(crate) fn root_vertex(qd: &QuiverData) -> usize {
    qd.vertex_of(VertexRole::P { i: 0, sign: Sign::Plus }).expect("rho_0^+ vertex")
}

struct Builder<'a> {
    g: &'a GroupParams,
    qd: &'a QuiverData,
    out: Vec<Designation>,
}

impl Builder<'_> {
    fn arrow_id(&self, family: char, i: i64, j: Option<i64>) -> Option<usize> {
        let k = self.g.k;
        let i = i.rem_euclid(k);
        let name = match (k == 1, j) {
            (true, None) => family.to_string(),
            (true, Some(j)) => format!("{family}{j}"),
            (false, None) => format!("{family}{i}"),
            (false, Some(j)) => format!("{family}{i}_{j}"),
        };
        self.qd.arrow(&name).map(|a| a.id)
    }

    fn set(&mut self, family: char, i: i64, j: Option<i64>, slot: Slot) {
        let Some(id) = self.arrow_id(family, i, j) else { return };
        let a = &self.qd.arrows[id];
        let (rows, cols) = (self.qd.vertices[a.tail].dim, self.qd.vertices[a.head].dim);
        let (row, col) = slot_position(slot, rows, cols);
        let name = entry_name(&a.name, rows, cols, row, col);
        if !self.out.iter().any(|d| d.name == name) {
            self.out.push(Designation { name, arrow: id, row, col });
        }
    }

    fn remove(&mut self, family: char, i: i64, j: Option<i64>) {
        if let Some(id) = self.arrow_id(family, i, j) {
            self.out.retain(|d| d.arrow != id);
        }
    }
}

/// The designated nonzero entries for a G-graph, following the case list for
/// its type. For `k = 1` the choice between `F_0` and `H_0` is the one made
/// for `D_4` (`F` for A, C+ and D+, `H` for C- and D-).
pub fn open_conditions(gg: &GGraph, g: &GroupParams) -> Result<OpenConditions> {
    let qd = dihedral_mckay(g)?;
    let nonzero = theorem_designations(gg, g, &qd);
    Ok(finish_conditions(gg, &qd, nonzero, TreeSource::Theorem))
}

fn finish_conditions(gg: &GGraph, qd: &QuiverData, nonzero: Vec<Designation>, source: TreeSource) -> OpenConditions {
    let mut zero = Vec::new();
    for d in &nonzero {
        let a = &qd.arrows[d.arrow];
        let (rows, cols) = (qd.vertices[a.tail].dim, qd.vertices[a.head].dim);
        for c in 0..cols {
            if c != d.col {
                zero.push(entry_name(&a.name, rows, cols, d.row, c));
            }
        }
    }
    OpenConditions { ggraph: gg.id.clone(), kind: gg.kind, source, nonzero, zero }
}

fn theorem_designations(gg: &GGraph, g: &GroupParams, qd: &QuiverData) -> Vec<Designation> {
    use Slot::*;
    let (k, q) = (g.k, g.q);
    let r = gg.points.0.r;
    let u = gg.points.1.r;
    let mut b = Builder { g, qd, out: Vec::new() };
    let even = |i: i64| i % 2 == 0;
    // U'_{i,j} for all i > 0, and U'_{0,j} from j = r on.
    let u_primes = |b: &mut Builder| {
        for i in 0..k {
            for j in 1..=q - 2 {
                if i > 0 || j >= r {
                    b.set('u', i, Some(j), UpperPrime);
                }
            }
        }
    };
    // C_0 and R'_{1,1..r-2} replace the missing U'_{0,1..r-1}.
    let c0_chain = |b: &mut Builder| {
        if r >= 2 {
            b.set('c', 0, None, Upper);
            for j in 1..=r - 2 {
                b.set('r', 1, Some(j), UpperPrime);
            }
        }
    };
    match gg.kind {
        GGraphKind::A => {
            b.set('a', 0, None, Lower);
            b.set('d', 0, None, Upper);
            b.set('h', 0, None, Upper);
            for i in 0..k {
                if even(i) {
                    b.set('a', i, None, Lower);
                    b.set('h', i, None, Upper);
                } else {
                    b.set('c', i, None, Lower);
                    b.set('f', i, None, Upper);
                }
                b.set('e', i, None, Lower);
                b.set('g', i, None, Lower);
                for j in 1..=q - 2 {
                    b.set('r', i, Some(j), Lower);
                    b.set('u', i, Some(j), UpperPrime);
                }
                if i == 0 {
                    continue;
                }
                if i < u {
                    if even(i) {
                        b.set('b', i, None, Lower);
                        b.set('d', i, None, Upper);
                    } else {
                        b.set('b', i, None, Upper);
                        b.set('d', i, None, Lower);
                    }
                } else {
                    b.set('b', i, None, Upper);
                    b.set('d', i, None, Upper);
                }
            }
        }
        GGraphKind::B1 | GGraphKind::B2 | GGraphKind::CA(_) | GGraphKind::CB(_) => {
            let plus_c = gg.kind.is_c() && gg.kind.sign() == Some(Sign::Plus);
            b.set('a', 0, None, Lower);
            b.set('d', 0, None, Lower);
            b.set('h', 0, None, Upper);
            for i in 0..k {
                if i > 0 {
                    if even(i) {
                        b.set('a', i, None, Lower);
                        b.set('b', i, None, Lower);
                        b.set('d', i, None, Upper);
                    } else {
                        b.set('b', i, None, Upper);
                        b.set('c', i, None, Lower);
                        b.set('d', i, None, Lower);
                    }
                    let h_here = even(i) != plus_c;
                    b.set(if h_here { 'h' } else { 'f' }, i, None, Upper);
                }
                b.set('e', i, None, Lower);
                b.set('g', i, None, Lower);
                for j in 1..=q - 2 {
                    b.set('r', i, Some(j), Lower);
                }
            }
            c0_chain(&mut b);
            u_primes(&mut b);
        }
        GGraphKind::D(sign) => {
            b.set('a', 0, None, Lower);
            b.set('d', 0, None, Lower);
            for i in 1..k {
                if even(i) {
                    b.set('a', i, None, Lower);
                    b.set('b', i, None, Lower);
                    b.set('d', i, None, Upper);
                } else {
                    b.set('b', i, None, Upper);
                    b.set('c', i, None, Lower);
                    b.set('d', i, None, Lower);
                }
            }
            u_primes(&mut b);
            for i in 0..k {
                for j in 1..=q - 2 {
                    b.set('r', i, Some(j), Lower);
                }
            }
            // The chain f_1, u_{2,q-2}, u_{3,q-3}, ... takes over the first
            // basis vectors that r_{2,q-2}, r_{3,q-3}, ..., r_{k,q-k} would reach.
            for i in 2..=k {
                b.remove('r', i, Some(q - i));
            }
            for i in 2..k {
                b.set('u', i, Some(q - i), Lower);
            }
            c0_chain(&mut b);
            let plus = sign == Sign::Plus;
            let (x0, x1) = if plus {
                ([('e', Lower), ('h', Upper), ('g', Upper)], [('e', Upper), ('f', Lower), ('g', Lower), ('h', Upper)])
            } else {
                ([('e', Upper), ('f', Upper), ('g', Lower)], [('e', Lower), ('f', Upper), ('g', Upper), ('h', Lower)])
            };
            for (f, s) in x0 {
                b.set(f, 0, None, s);
            }
            if k > 1 {
                for (f, s) in x1 {
                    b.set(f, 1, None, s);
                }
            }
            for i in 2..k {
                let list = match (plus, even(i)) {
                    (true, true) | (false, false) => [('e', Upper), ('g', Lower), ('f', Upper)],
                    (true, false) | (false, true) => [('e', Lower), ('g', Upper), ('h', Upper)],
                };
                for (f, s) in list {
                    b.set(f, i, None, s);
                }
            }
        }
    }
    if k == 1 {
        let use_f = match gg.kind {
            GGraphKind::A => true,
            GGraphKind::CA(s) | GGraphKind::CB(s) | GGraphKind::D(s) => s == Sign::Plus,
            _ => false,
        };
        b.remove('f', 0, None);
        b.remove('h', 0, None);
        b.set(if use_f { 'f' } else { 'h' }, 0, None, Upper);
    }
    b.out
}

/// Checks that the designations form a spanning tree on all basis vectors
/// rooted at `rho_0^+`; returns a description of the first defect.
pub fn tree_defect(qd: &QuiverData, ds: &[Designation]) -> Option<String> {
    let root = (root_vertex(qd), 0usize);
    let mut parent: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for d in ds {
        let a = &qd.arrows[d.arrow];
        let node = (a.head, d.col);
        if node == root {
            return Some(format!("{} points into the root", d.name));
        }
        if parent.insert(node, (a.tail, d.row)).is_some() {
            return Some(format!("{}[{}] is reached twice (again by {})", qd.vertices[a.head].name, d.col, d.name));
        }
    }
    let rows_used: Vec<(usize, usize)> = ds.iter().map(|d| (d.arrow, d.row)).collect();
    for (i, x) in rows_used.iter().enumerate() {
        if rows_used[..i].contains(x) {
            return Some(format!("{} designates a row twice", qd.arrows[x.0].name));
        }
    }
    for v in &qd.vertices {
        for c in 0..v.dim {
            let mut node = (v.id, c);
            let mut steps = 0;
            while node != root {
                match parent.get(&node) {
                    Some(&p) => node = p,
                    None => return Some(format!("{}[{}] is not reached", qd.vertices[node.0].name, node.1)),
                }
                steps += 1;
                if steps > parent.len() + 1 {
                    return Some(format!("cycle through {}[{}]", v.name, c));
                }
            }
        }
    }
    None
}

/// An arrow-matrix entry of a symbolic representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    Zero,
    One,
    Var(u32),
}

/// A representation with entries 0, 1 or a named variable.
#[derive(Clone, Debug)]
pub struct SymbolicRep {
    pub matrices: Vec<Vec<Vec<Entry>>>,
    pub var_names: Vec<String>,
    /// `(arrow, row, col)` of each variable.
    pub var_entries: Vec<(usize, usize, usize)>,
}

impl SymbolicRep {
    pub fn var(&self, name: &str) -> Option<u32> {
        self.var_names.iter().position(|n| n == name).map(|v| v as u32)
    }
}

/// Applies the designations: each designated row becomes a unit row, all
/// other entries become variables.
pub fn normalize_rep(oc: &OpenConditions, qd: &QuiverData) -> SymbolicRep {
    let mut matrices = Vec::new();
    let mut var_names = Vec::new();
    let mut var_entries = Vec::new();
    for a in &qd.arrows {
        let (rows, cols) = (qd.vertices[a.tail].dim, qd.vertices[a.head].dim);
        let mut m = vec![vec![Entry::Zero; cols]; rows];
        for (r, row) in m.iter_mut().enumerate() {
            match oc.nonzero.iter().find(|d| d.arrow == a.id && d.row == r) {
                Some(d) => row[d.col] = Entry::One,
                None => {
                    for (c, e) in row.iter_mut().enumerate() {
                        *e = Entry::Var(var_names.len() as u32);
                        var_names.push(entry_name(&a.name, rows, cols, r, c));
                        var_entries.push((a.id, r, c));
                    }
                }
            }
        }
        matrices.push(m);
    }
    // Number variables in display order: case-insensitive by name.
    let mut order: Vec<usize> = (0..var_names.len()).collect();
    order.sort_by_key(|&v| display_key(&var_names[v]));
    let mut rank = vec![0u32; order.len()];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r as u32;
    }
    for m in &mut matrices {
        for e in m.iter_mut().flatten() {
            if let Entry::Var(v) = e {
                *v = rank[*v as usize];
            }
        }
    }
    let var_names = order.iter().map(|&v| var_names[v].clone()).collect();
    let var_entries = order.iter().map(|&v| var_entries[v]).collect();
    SymbolicRep { matrices, var_names, var_entries }
}

fn display_key(name: &str) -> (String, String) {
    (name.to_lowercase(), name.to_string())
}

type PolyMat = Vec<Vec<MPoly>>;

fn entry_poly(e: Entry) -> MPoly {
    match e {
        Entry::Zero => MPoly::zero(),
        Entry::One => MPoly::one(),
        Entry::Var(v) => MPoly::var(v),
    }
}

fn mat_mul(a: &PolyMat, b: &PolyMat) -> PolyMat {
    let (r, m, c) = (a.len(), b.len(), b.first().map_or(0, |v| v.len()));
    let mut out = vec![vec![MPoly::zero(); c]; r];
    for i in 0..r {
        for j in 0..c {
            let mut acc = MPoly::zero();
            for t in 0..m {
                if !a[i][t].is_zero() && !b[t][j].is_zero() {
                    acc = &acc + &(&a[i][t] * &b[t][j]);
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Entries of `sum c * path` for a relation, evaluated on polynomial matrices.
pub(crate) fn relation_entries(rel: &Relation, mats: &[PolyMat]) -> Vec<MPoly> {
    let mut acc: Option<PolyMat> = None;
    for (c, path) in &rel.terms {
        let mut m = mats[path[0]].clone();
        for &a in &path[1..] {
            m = mat_mul(&m, &mats[a]);
        }
        let m: PolyMat = m.iter().map(|row| row.iter().map(|p| p.scale(c)).collect()).collect();
        acc = Some(match acc {
            None => m,
            Some(a) => a.iter().zip(&m).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect()).collect(),
        });
    }
    acc.unwrap_or_default().into_iter().flatten().collect()
}

/// The entries of every relation evaluated on a symbolic representation,
/// dropping those that vanish identically.
pub fn relation_equations(sr: &SymbolicRep, qd: &QuiverData, rels: &[Relation]) -> Result<Vec<MPoly>> {
    let mats: Vec<PolyMat> =
        sr.matrices.iter().map(|m| m.iter().map(|row| row.iter().map(|&e| entry_poly(e)).collect()).collect()).collect();
    let mut eqs: Vec<MPoly> = Vec::new();
    for rel in rels {
        for p in relation_entries(rel, &mats) {
            if let Some(c) = p.as_constant() {
                if !c.is_zero() {
                    return Err(Error::Verification(format!("relation {} forces {c} = 0", rel.render(qd))));
                }
                continue;
            }
            eqs.push(p);
        }
    }
    Ok(eqs)
}

/// A solved chart.
#[derive(Clone, Debug, Serialize)]
pub struct Chart {
    pub ggraph: String,
    pub kind: GGraphKind,
    pub source: TreeSource,
    pub nonzero: Vec<String>,
    pub free_params: Vec<String>,
    /// Eliminated variables as polynomials in the free parameters.
    pub bindings: Vec<(String, String)>,
    /// Residual equations `p = 0`.
    pub equations: Vec<String>,
    /// The same equations written as `lhs = rhs`.
    pub equations_display: Vec<String>,
    /// Equations that hold near the origin as consequences of the others.
    /// They can cut out extra components away from the origin, so points
    /// are checked against them too.
    pub implied_equations: Vec<String>,
    /// Values of the free parameters at the G-graph point.
    pub origin: Vec<(String, String)>,
    /// Entry of the representation carried by each variable.
    pub name_map: BTreeMap<String, String>,
    #[serde(skip)]
    pub origin_point: Vec<GaussRat>,
    #[serde(skip)]
    pub implied_polys: Vec<MPoly>,
    #[serde(skip)]
    pub designations: Vec<Designation>,
    #[serde(skip)]
    pub rep: SymbolicRep,
    #[serde(skip)]
    pub free_vars: Vec<u32>,
    #[serde(skip)]
    pub binding_polys: Vec<(u32, MPoly)>,
    #[serde(skip)]
    pub equation_polys: Vec<MPoly>,
    /// The relations before elimination, in all variables.
    #[serde(skip)]
    pub relation_polys: Vec<MPoly>,
}

impl Chart {
    pub fn dimension_count(&self) -> i64 {
        self.free_params.len() as i64 - self.equations.len() as i64
    }

    pub fn var(&self, name: &str) -> Option<u32> {
        self.rep.var(name)
    }
}

/// Substitutes the representation into the relations and eliminates
/// variables that occur linearly with a constant coefficient, cheapest
/// first, as long as the equations do not grow beyond their initial size.
///
/// When the values `center` of the variables at the G-graph point are known,
/// variables that are nonzero there are eliminated first, and the free
/// parameters' centre values become the chart origin.
pub fn solve_chart(
    gg: &GGraph,
    oc: &OpenConditions,
    sr: &SymbolicRep,
    qd: &QuiverData,
    rels: &[Relation],
    center: Option<&[GaussRat]>,
) -> Result<Chart> {
    let mut eqs = relation_equations(sr, qd, rels)?;
    let relation_polys = eqs.clone();
    let mut order: Vec<u32> = (0..sr.var_names.len() as u32).collect();
    order.sort_by(|a, b| sr.var_names[*a as usize].cmp(&sr.var_names[*b as usize]));
    let mut bindings: Vec<(u32, MPoly)> = Vec::new();
    let rank: HashMap<u32, usize> = order.iter().enumerate().map(|(r, &v)| (v, r)).collect();
    let budget = 2 * eqs.iter().map(MPoly::num_terms).sum::<usize>();
    loop {
        // Cheapest elimination first: least fill-in (other equations touched
        // times size of the value), then lowest degree, then name.
        let mut best: Option<((bool, usize, u32, usize), usize, u32, GaussRat, MPoly)> = None;
        for (k, e) in eqs.iter().enumerate() {
            for v in e.vars() {
                let Some((a, b)) = e.split_linear(v) else { continue };
                let Some(a) = a.as_constant() else { continue };
                let at_zero = center.is_none_or(|c| c[v as usize].is_zero());
                let others = eqs.iter().filter(|f| f.degree_in(v) > 0).count() - 1;
                let key = (at_zero, others * b.num_terms(), b.total_degree(), rank[&v]);
                if best.as_ref().is_none_or(|(bk, ..)| key < *bk) {
                    best = Some((key, k, v, a, b));
                }
            }
        }
        let Some((_, k, v, a, b)) = best else { break };
        let value = b.scale(&-a.inv().expect("nonzero coefficient"));
        let mut next: Vec<MPoly> = Vec::with_capacity(eqs.len());
        for e in eqs.iter().take(k).chain(eqs.iter().skip(k + 1)) {
            let s = e.substitute(v, &value);
            if let Some(c) = s.as_constant() {
                if !c.is_zero() {
                    return Err(Error::Verification(format!("inconsistent chart: {c} = 0")));
                }
                continue;
            }
            let s = s.monic();
            if !next.contains(&s) {
                next.push(s);
            }
        }
        // Past this point substitution only inflates the equations; the
        // variable is kept together with its equation instead.
        if next.iter().map(MPoly::num_terms).sum::<usize>() > budget {
            break;
        }
        eqs = next;
        for (_, p) in bindings.iter_mut() {
            *p = p.substitute(v, &value);
        }
        bindings.push((v, value));
    }
    let at = |v: u32| center.map_or_else(GaussRat::zero, |c| c[v as usize].clone());
    let bound: Vec<u32> = bindings.iter().map(|(v, _)| *v).collect();
    // Variables are numbered in display order.
    let free_vars: Vec<u32> = (0..sr.var_names.len() as u32).filter(|v| !bound.contains(v)).collect();
    let (eqs, implied) = local_equations(independent_equations(eqs), &free_vars, &at);
    let names = &sr.var_names;
    let mut binding_list: Vec<(u32, MPoly)> = bindings;
    binding_list.sort_by_key(|b| b.0);
    let name_map = sr
        .var_entries
        .iter()
        .enumerate()
        .map(|(v, &(a, r, c))| (names[v].clone(), format!("{}[{},{}]", qd.arrows[a].name, r, c)))
        .collect();
    Ok(Chart {
        ggraph: gg.id.clone(),
        kind: gg.kind,
        source: oc.source,
        nonzero: oc.nonzero.iter().map(|d| d.name.clone()).collect(),
        designations: oc.nonzero.clone(),
        free_params: free_vars.iter().map(|&v| names[v as usize].clone()).collect(),
        bindings: binding_list.iter().map(|(v, p)| (names[*v as usize].clone(), p.display(names))).collect(),
        equations: eqs.iter().map(|e| e.display(names)).collect(),
        equations_display: eqs.iter().map(|e| display_equation(e, &free_vars, names)).collect(),
        implied_equations: implied.iter().map(|e| e.display(names)).collect(),
        origin: free_vars.iter().map(|&v| (names[v as usize].clone(), at(v).to_string())).collect(),
        name_map,
        origin_point: free_vars.iter().map(|&v| at(v)).collect(),
        implied_polys: implied,
        rep: sr.clone(),
        free_vars,
        binding_polys: binding_list,
        equation_polys: eqs,
        relation_polys,
    })
}

/// Splits the equations into a set with independent differentials at the
/// centre and the rest. When the kept set cuts out a smooth surface there,
/// the rest lie in its ideal near the centre and are returned separately;
/// otherwise every equation is kept.
fn local_equations(eqs: Vec<MPoly>, free: &[u32], at: &dyn Fn(u32) -> GaussRat) -> (Vec<MPoly>, Vec<MPoly>) {
    let mut span = Span::new(free.len());
    let (mut kept, mut implied) = (Vec::new(), Vec::new());
    for e in eqs {
        let grad: Vec<GaussRat> = free.iter().map(|&v| e.derivative(v).eval(at)).collect();
        if span.insert(&grad) {
            kept.push(e);
        } else {
            implied.push(e);
        }
    }
    if free.len() != kept.len() + 2 {
        kept.append(&mut implied);
    }
    (kept, implied)
}

/// Drops equations that are constant linear combinations of earlier ones.
fn independent_equations(eqs: Vec<MPoly>) -> Vec<MPoly> {
    let mut columns: BTreeMap<MMono, usize> = BTreeMap::new();
    for e in &eqs {
        for (m, _) in e.terms() {
            let next = columns.len();
            columns.entry(m.clone()).or_insert(next);
        }
    }
    let mut span = Span::new(columns.len());
    eqs.into_iter()
        .filter(|e| {
            let mut v = vec![GaussRat::zero(); columns.len()];
            for (m, c) in e.terms() {
                v[columns[m]] = c.clone();
            }
            span.insert(&v)
        })
        .collect()
}

/// Writes `e = 0` as `b = (-a)*v` for the first variable `v` occurring
/// linearly with a coefficient `a` that has a nonzero constant term.
fn display_equation(e: &MPoly, free: &[u32], names: &[String]) -> String {
    for &v in free {
        if e.degree_in(v) != 1 {
            continue;
        }
        let Some((a, b)) = e.split_linear(v) else { continue };
        let c0 = a.terms().find(|(m, _)| m.degree() == 0).map(|(_, c)| c.clone());
        let Some(c0) = c0 else { continue };
        // Scale so that the coefficient has constant term 1 up to sign and the
        // left side does not start with a minus sign.
        let mut s = -c0.inv().expect("nonzero");
        if b.scale(&s).display(names).starts_with('-') {
            s = -s;
        }
        let (lhs, coef) = (b.scale(&s), a.scale(&-s));
        let coef_s = coef.display(names);
        let rhs = if coef.num_terms() > 1 { format!("({coef_s})*{}", names[v as usize]) } else { format!("{coef_s}*{}", names[v as usize]) };
        let rhs = if coef.as_constant().is_some_and(|c| c.is_one()) { names[v as usize].clone() } else { rhs };
        return format!("{} = {rhs}", lhs.display(names));
    }
    format!("{} = 0", e.display(names))
}

/// Builds, normalizes and solves the chart of one G-graph. If the listed
/// designations do not give a valid chart centred at the G-graph point, a
/// spanning tree is searched for instead.
pub fn chart_for(gg: &GGraph, g: &GroupParams) -> Result<Chart> {
    let qd = dihedral_mckay(g)?;
    let rels = relation_set(g, &qd)?;
    let quot = numeric::graph_quotient(gg, g)?;
    let mut oc = open_conditions(gg, g)?;
    let mut point = None;
    if tree_defect(&qd, &oc.nonzero).is_none() {
        point = numeric::graph_point(&quot, g, &qd, &oc.nonzero);
    }
    if point.is_none() {
        let ds = numeric::search_tree(gg, g, &qd)?;
        oc = finish_conditions(gg, &qd, ds, TreeSource::Search);
        point = numeric::graph_point(&quot, g, &qd, &oc.nonzero);
    }
    let point = point.ok_or_else(|| Error::Verification(format!("no chart centred at {}", gg.id)))?;
    let sr = normalize_rep(&oc, &qd);
    let center: Vec<GaussRat> = sr.var_entries.iter().map(|&(a, r, c)| point[a][(r, c)].clone()).collect();
    solve_chart(gg, &oc, &sr, &qd, &rels, Some(&center))
}

/// Charts for all G-graphs of `g`.
pub fn all_charts(g: &GroupParams) -> Result<Vec<Chart>> {
    crate::ggraph::enumerate_ggraphs(g)?.iter().map(|gg| chart_for(gg, g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ggraph::enumerate_ggraphs;
    use crate::group::make_group;

    #[test]
    fn entry_names() {
        assert_eq!(entry_name("a", 1, 2, 0, 1), "A");
        assert_eq!(entry_name("b1", 2, 1, 1, 0), "B1");
        assert_eq!(entry_name("r0_2", 2, 2, 1, 0), "r'0_2");
        assert_eq!(entry_name("u1", 2, 2, 1, 1), "U'1");
    }

    #[test]
    fn d4_designations() {
        let g = make_group(4, 3).unwrap();
        let qd = dihedral_mckay(&g).unwrap();
        let want = [["a", "D", "e", "F", "g"], ["a", "d", "e", "F", "g"], ["a", "d", "e", "g", "H"], ["a", "d", "e", "G", "F"], ["a", "d", "E", "g", "H"]];
        for (gg, want) in enumerate_ggraphs(&g).unwrap().iter().zip(want) {
            let oc = open_conditions(gg, &g).unwrap();
            let mut got: Vec<&str> = oc.nonzero.iter().map(|d| d.name.as_str()).collect();
            let mut want = want.to_vec();
            got.sort();
            want.sort();
            assert_eq!(got, want, "{}", gg.id);
            assert_eq!(tree_defect(&qd, &oc.nonzero), None);
        }
    }

    #[test]
    fn d4_type_a_chart() {
        let g = make_group(4, 3).unwrap();
        let gg = &enumerate_ggraphs(&g).unwrap()[0];
        let c = chart_for(gg, &g).unwrap();
        assert_eq!(c.source, TreeSource::Theorem);
        assert_eq!(c.free_params, ["c", "d", "G"]);
        assert_eq!(c.equations_display, ["c*d = (c*d^2 + 1)*G"]);
        let b: BTreeMap<_, _> = c.bindings.iter().cloned().collect();
        assert_eq!(b["H"], "-c*d^2 - 1");
        assert_eq!(b["B"], "c*d*G - c");
    }
}
