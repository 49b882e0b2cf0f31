//! Numeric points of a chart: exact representations, stability, the
//! `C[x, y]`-module they define and its annihilator of the `rho_0^+` vector.

use std::collections::{HashMap, VecDeque};

use rand::Rng;
use serde::Serialize;

use super::{root_vertex, Chart, Designation};
use crate::arith::{GaussMatrix, GaussPoly, GaussRat, MPoly, Monomial, Span};
use crate::error::{Error, Result};
use crate::ggraph::{default_bound, multiplicities, GGraph, Quotient, TruncatedIdeal};
use crate::group::GroupParams;
use crate::quiver::{family_template, QuiverData};

/// A representation with exact entries, one matrix per arrow.
#[derive(Clone, Debug, Serialize)]
pub struct NumericRep {
    pub matrices: Vec<GaussMatrix>,
}

/// Values of all chart variables from values of the free parameters
/// (in `chart.free_params` order).
fn all_values(chart: &Chart, free: &[GaussRat]) -> Result<Vec<GaussRat>> {
    if free.len() != chart.free_vars.len() {
        return Err(Error::Invalid(format!("expected {} parameters, got {}", chart.free_vars.len(), free.len())));
    }
    let mut vals = vec![GaussRat::zero(); chart.rep.var_names.len()];
    for (v, x) in chart.free_vars.iter().zip(free) {
        vals[*v as usize] = x.clone();
    }
    let get = |v: u32| vals[v as usize].clone();
    let all = chart.equation_polys.iter().chain(&chart.implied_polys);
    for (e, p) in all.zip(chart.equations.iter().chain(&chart.implied_equations)) {
        if !e.eval(&get).is_zero() {
            return Err(Error::Invalid(format!("the point does not satisfy {p} = 0")));
        }
    }
    let bound: Vec<(u32, GaussRat)> = chart.binding_polys.iter().map(|(v, p)| (*v, p.eval(&get))).collect();
    for (v, x) in bound {
        vals[v as usize] = x;
    }
    Ok(vals)
}

/// The representation at a point of the chart.
pub fn instantiate(chart: &Chart, qd: &QuiverData, free: &[GaussRat]) -> Result<NumericRep> {
    let vals = all_values(chart, free)?;
    let matrices = qd
        .arrows
        .iter()
        .zip(&chart.rep.matrices)
        .map(|(_, m)| {
            GaussMatrix::from_rows(
                m.iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| match e {
                                super::Entry::Zero => GaussRat::zero(),
                                super::Entry::One => GaussRat::one(),
                                super::Entry::Var(v) => vals[*v as usize].clone(),
                            })
                            .collect()
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(NumericRep { matrices })
}

/// The chart origin, the free-parameter values at the G-graph point.
pub fn origin_values(chart: &Chart) -> Vec<GaussRat> {
    chart.origin_point.clone()
}

fn small_rational<R: Rng>(rng: &mut R) -> GaussRat {
    let part = |rng: &mut R| -> (i64, i64) {
        let mut p = rng.gen_range(-4i64..=4);
        if p == 0 {
            p = 1;
        }
        (p, rng.gen_range(1i64..=3))
    };
    let (p, q) = part(rng);
    if rng.gen_bool(0.5) {
        GaussRat::from_fracs(p, q, 0, 1)
    } else {
        let (r, s) = part(rng);
        GaussRat::from_fracs(p, q, r, s)
    }
}

/// Which equations a sampling plan solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanSource {
    /// The chart equations, implied ones included, in the free parameters.
    Chart,
    /// The relations in all entries of the representation, before
    /// elimination; used when the chart equations admit no plan.
    Relations,
}

/// How to draw points of a chart: the variables in `random` are drawn at
/// random, then each `(equation, variable)` step solves that equation for a
/// variable occurring in it linearly, all its other variables being known by
/// then.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingPlan {
    pub source: PlanSource,
    pub random: Vec<u32>,
    pub steps: Vec<(usize, u32)>,
}

fn plan_equations(chart: &Chart, source: PlanSource) -> Vec<&MPoly> {
    match source {
        PlanSource::Chart => chart.equation_polys.iter().chain(&chart.implied_polys).collect(),
        PlanSource::Relations => chart.relation_polys.iter().collect(),
    }
}

/// Searches pairs of variables to draw, in order, for which every other
/// target variable can then be solved for one at a time.
fn find_plan(eqs: &[&MPoly], targets: &[u32], source: PlanSource) -> Option<SamplingPlan> {
    let shapes: Vec<Vec<(u32, u32)>> =
        eqs.iter().map(|e| e.vars().into_iter().filter(|v| targets.contains(v)).map(|v| (v, e.degree_in(v))).collect()).collect();
    let index: HashMap<u32, usize> = targets.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let try_pair = |random: [u32; 2]| -> Option<SamplingPlan> {
        let mut known = vec![false; targets.len()];
        for v in random {
            known[index[&v]] = true;
        }
        let mut used = vec![false; eqs.len()];
        let mut steps = Vec::new();
        while steps.len() + 2 < targets.len() {
            let step = shapes.iter().enumerate().find_map(|(i, shape)| {
                if used[i] {
                    return None;
                }
                let mut unknown = shape.iter().filter(|(v, _)| !known[index[v]]);
                let &(v, d) = unknown.next()?;
                (unknown.next().is_none() && d == 1).then_some((i, v))
            })?;
            used[step.0] = true;
            known[index[&step.1]] = true;
            steps.push(step);
        }
        Some(SamplingPlan { source, random: random.to_vec(), steps })
    };
    for (i, &u) in targets.iter().enumerate() {
        for &v in &targets[i + 1..] {
            if let Some(plan) = try_pair([u, v]) {
                return Some(plan);
            }
        }
    }
    None
}

/// A plan for drawing points of a two-dimensional chart, from the chart
/// equations if possible and from the relations otherwise.
pub fn sampling_plan(chart: &Chart) -> Option<SamplingPlan> {
    if chart.dimension_count() != 2 {
        return None;
    }
    if chart.free_vars.len() == 2 && chart.equation_polys.is_empty() {
        return Some(SamplingPlan { source: PlanSource::Chart, random: chart.free_vars.clone(), steps: Vec::new() });
    }
    find_plan(&plan_equations(chart, PlanSource::Chart), &chart.free_vars, PlanSource::Chart).or_else(|| {
        let all: Vec<u32> = (0..chart.rep.var_names.len() as u32).collect();
        find_plan(&plan_equations(chart, PlanSource::Relations), &all, PlanSource::Relations)
    })
}

/// Draws a random exact point of the chart following a sampling plan, and
/// returns the free-parameter values. Draws where a coefficient to divide
/// by vanishes, or which miss an equation not used by the plan, are skipped.
pub fn sample_point<R: Rng>(chart: &Chart, plan: &SamplingPlan, rng: &mut R) -> Option<Vec<GaussRat>> {
    let eqs = plan_equations(chart, plan.source);
    'attempt: for _ in 0..64 {
        let mut vals: Vec<Option<GaussRat>> = vec![None; chart.rep.var_names.len()];
        for &v in &plan.random {
            vals[v as usize] = Some(small_rational(rng));
        }
        for &(i, v) in &plan.steps {
            let get = |w: u32| vals[w as usize].clone();
            let p = eqs[i].partial_eval(&get);
            let Some((a, b)) = p.split_linear(v) else { continue 'attempt };
            let (Some(a), Some(b)) = (a.as_constant(), b.as_constant()) else { continue 'attempt };
            if a.is_zero() {
                continue 'attempt;
            }
            vals[v as usize] = Some(-(&b / &a));
        }
        let free: Option<Vec<GaussRat>> = chart.free_vars.iter().map(|&v| vals[v as usize].clone()).collect();
        let Some(free) = free else { continue };
        let Ok(all) = all_values(chart, &free) else { continue };
        // Drawn entries must agree with the chart's bindings.
        if plan.source == PlanSource::Relations && vals.iter().zip(&all).any(|(v, w)| v.as_ref().is_some_and(|v| v != w)) {
            continue;
        }
        return Some(free);
    }
    None
}

/// The coordinate ring of the orbit of `p`, in the monomial basis `basis`.
///
/// The orbit is the union of the `alpha`-orbits of `p` and of its image
/// `(y, -x)` under `beta`, so a polynomial vanishes on it exactly when each
/// `alpha`-weight component vanishes at these two points. Each weight occurs
/// twice in a basis of the regular representation, so normal forms come
/// from 2x2 solves. `None` if `basis` does not fit this pattern or is not a
/// basis for this orbit.
pub fn orbit_quotient(g: &GroupParams, basis: &[Monomial], p: (&GaussRat, &GaussRat)) -> Option<Quotient> {
    let weight = |m: &Monomial| g.residue(m.px as i64 + g.a * m.py as i64);
    let q = (p.1.clone(), -p.0);
    let mut by_weight: HashMap<i64, Vec<Monomial>> = HashMap::new();
    for m in basis {
        by_weight.entry(weight(m)).or_default().push(*m);
    }
    if by_weight.len() as i64 != g.two_n || by_weight.values().any(|ms| ms.len() != 2) {
        return None;
    }
    let value = |m: &Monomial, pt: (&GaussRat, &GaussRat)| GaussPoly::term(GaussRat::one(), *m).eval(pt.0, pt.1);
    let mut inverses: HashMap<i64, GaussMatrix> = HashMap::new();
    for (&w, ms) in &by_weight {
        let m = GaussMatrix::from_rows(vec![
            vec![value(&ms[0], p), value(&ms[1], p)],
            vec![value(&ms[0], (&q.0, &q.1)), value(&ms[1], (&q.0, &q.1))],
        ]);
        inverses.insert(w, m.inverse()?);
    }
    Some(Quotient::from_rules(basis.to_vec(), |m| {
        let w = weight(m);
        let c = inverses[&w].apply(&[value(m, p), value(m, (&q.0, &q.1))]);
        let ms = &by_weight[&w];
        let mut out = GaussPoly::zero();
        out.add_term(ms[0], c[0].clone());
        out.add_term(ms[1], c[1].clone());
        out
    }))
}

/// The point of the chart given by the free orbit of `p`, as free-parameter
/// values, if the orbit lies in the chart.
pub fn orbit_point(chart: &Chart, gg: &GGraph, g: &GroupParams, qd: &QuiverData, p: (&GaussRat, &GaussRat)) -> Option<Vec<GaussRat>> {
    let basis = graph_quotient(gg, g).ok()?.standard;
    let quot = orbit_quotient(g, &basis, p)?;
    let mats = graph_point(&quot, g, qd, &chart.designations)?;
    let free: Vec<GaussRat> = chart
        .free_vars
        .iter()
        .map(|&v| {
            let (a, r, c) = chart.rep.var_entries[v as usize];
            mats[a][(r, c)].clone()
        })
        .collect();
    // The chart's bindings must rebuild the same representation.
    let rep = instantiate(chart, qd, &free).ok()?;
    (rep.matrices == mats).then_some(free)
}

/// Draws the orbit of a random point and returns its chart coordinates.
pub fn sample_orbit_point<R: Rng>(chart: &Chart, gg: &GGraph, g: &GroupParams, qd: &QuiverData, rng: &mut R) -> Option<Vec<GaussRat>> {
    (0..16).find_map(|_| {
        let (x, y) = (small_rational(rng), small_rational(rng));
        orbit_point(chart, gg, g, qd, (&x, &y))
    })
}

/// Row-vector image of `v` under `m`.
fn row_times(v: &[GaussRat], m: &GaussMatrix) -> Vec<GaussRat> {
    m.transpose().apply(v)
}

/// theta-stability: the subrepresentation generated by the basis vector of
/// `rho_0^+` is everything.
pub fn check_stability(qd: &QuiverData, rep: &NumericRep) -> bool {
    let mut spans: Vec<Span> = qd.vertices.iter().map(|v| Span::new(v.dim)).collect();
    let root = root_vertex(qd);
    let mut queue: VecDeque<(usize, Vec<GaussRat>)> = VecDeque::new();
    let mut e0 = vec![GaussRat::zero(); qd.vertices[root].dim];
    e0[0] = GaussRat::one();
    spans[root].insert(&e0);
    queue.push_back((root, e0));
    while let Some((v, vec)) = queue.pop_front() {
        for a in qd.out_arrows(v) {
            let img = row_times(&vec, &rep.matrices[a.id]);
            if spans[a.head].insert(&img) {
                queue.push_back((a.head, img));
            }
        }
    }
    spans.iter().all(|s| s.rank() == s.dim())
}

/// The `C[x, y]`-module of a representation: basis vectors
/// `(vertex, multiplicity index, irrep basis index)`, with `x` and `y` as
/// matrices acting on columns.
#[derive(Clone, Debug)]
pub struct ClusterModule {
    pub slots: Vec<(usize, usize, usize)>,
    pub x: GaussMatrix,
    pub y: GaussMatrix,
    /// Index of the `rho_0^+` vector.
    pub v0: usize,
}

impl ClusterModule {
    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn commutes(&self) -> bool {
        &self.x * &self.y == &self.y * &self.x
    }

    /// `m(X, Y) v0` for the monomial `m`, memoized.
    fn monomial_vector(&self, m: &Monomial, cache: &mut HashMap<Monomial, Vec<GaussRat>>) -> Vec<GaussRat> {
        if let Some(v) = cache.get(m) {
            return v.clone();
        }
        let v = if m.degree() == 0 {
            let mut e = vec![GaussRat::zero(); self.dim()];
            e[self.v0] = GaussRat::one();
            e
        } else if m.px > 0 {
            let prev = self.monomial_vector(&Monomial::new(m.px - 1, m.py), cache);
            self.x.apply(&prev)
        } else {
            let prev = self.monomial_vector(&Monomial::new(m.px, m.py - 1), cache);
            self.y.apply(&prev)
        };
        cache.insert(*m, v.clone());
        v
    }

    /// `p(X, Y) v0 = 0`, i.e. `p` lies in the annihilator of `v0`.
    pub fn annihilates(&self, p: &GaussPoly) -> bool {
        let mut cache = HashMap::new();
        let mut acc = vec![GaussRat::zero(); self.dim()];
        for (m, c) in p.terms() {
            let v = self.monomial_vector(m, &mut cache);
            for (a, x) in acc.iter_mut().zip(&v) {
                if !x.is_zero() {
                    *a += &(c * x);
                }
            }
        }
        acc.iter().all(|c| c.is_zero())
    }
}

/// Assembles `x` and `y`. An arrow `alpha: v -> w` with template `T` says
/// that the `rho_w`-component `t` of `(x f_c, y f_c)_c` is
/// `sum_c Tx[c][t] x f_c + Ty[c][t] y f_c`; in the module this component of
/// the vector `(v, s, .)` is `sum_t' M_alpha[s][t'] (w, t', t)`. Inverting
/// these equations gives `x` and `y` on every basis vector.
pub fn assemble_xy_action(g: &GroupParams, qd: &QuiverData, rep: &NumericRep) -> Result<ClusterModule> {
    let mut slots = Vec::new();
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for v in &qd.vertices {
        for s in 0..v.dim {
            for c in 0..v.dim {
                index.insert((v.id, s, c), slots.len());
                slots.push((v.id, s, c));
            }
        }
    }
    let n = slots.len();
    let mut x = GaussMatrix::zeros(n, n);
    let mut y = GaussMatrix::zeros(n, n);
    for v in &qd.vertices {
        let d = v.dim;
        let outs: Vec<_> = qd.out_arrows(v.id).collect();
        let mut k_rows: Vec<Vec<GaussRat>> = Vec::new();
        let mut targets: Vec<(usize, usize)> = Vec::new();
        for a in &outs {
            let t = family_template(a.family, g.q);
            for col in 0..t.cols() {
                let mut row = vec![GaussRat::zero(); 2 * d];
                for c in 0..d {
                    row[c] = t.x_part[(c, col)].clone();
                    row[d + c] = t.y_part[(c, col)].clone();
                }
                k_rows.push(row);
                targets.push((a.id, col));
            }
        }
        let k = GaussMatrix::from_rows(k_rows);
        if k.rows != 2 * d {
            return Err(Error::Verification(format!("vertex {} has {} outgoing components, expected {}", v.name, k.rows, 2 * d)));
        }
        let kinv = k.inverse().ok_or_else(|| Error::Verification(format!("templates at {} are degenerate", v.name)))?;
        for s in 0..d {
            // Right-hand sides: one module vector per row of K.
            let rhs: Vec<Vec<GaussRat>> = targets
                .iter()
                .map(|&(aid, t)| {
                    let a = &qd.arrows[aid];
                    let m = &rep.matrices[aid];
                    let mut vec = vec![GaussRat::zero(); n];
                    for tp in 0..m.cols {
                        let val = &m[(s, tp)];
                        if !val.is_zero() {
                            vec[index[&(a.head, tp, t)]] = val.clone();
                        }
                    }
                    vec
                })
                .collect();
            for u in 0..2 * d {
                let mut img = vec![GaussRat::zero(); n];
                for (r, rv) in rhs.iter().enumerate() {
                    let f = &kinv[(u, r)];
                    if f.is_zero() {
                        continue;
                    }
                    for (o, z) in img.iter_mut().zip(rv) {
                        if !z.is_zero() {
                            *o += &(f * z);
                        }
                    }
                }
                let (mat, c) = if u < d { (&mut x, u) } else { (&mut y, u - d) };
                let col = index[&(v.id, s, c)];
                for (r, z) in img.into_iter().enumerate() {
                    mat[(r, col)] = z;
                }
            }
        }
    }
    let v0 = index[&(root_vertex(qd), 0, 0)];
    Ok(ClusterModule { slots, x, y, v0 })
}

/// The annihilator of `v0` in a commuting module: reduced graded-lex
/// Groebner basis and standard monomials.
#[derive(Clone, Debug, Serialize)]
pub struct ClusterIdeal {
    pub generators: Vec<GaussPoly>,
    pub standard: Vec<Monomial>,
    pub dimension: usize,
    #[serde(skip)]
    pub quotient: Option<Quotient>,
}

/// Computes the annihilator ideal of `v0` by linear algebra on the vectors
/// `m(X, Y) v0`, processing monomials in increasing graded-lex order.
pub fn cluster_ideal(module: &ClusterModule, max_degree: u32) -> Result<ClusterIdeal> {
    let mut cache = HashMap::new();
    let mut span = Span::new(module.dim());
    let mut standard: Vec<Monomial> = Vec::new();
    let mut generators: Vec<GaussPoly> = Vec::new();
    let mut nf: HashMap<Monomial, GaussPoly> = HashMap::new();
    let is_std = |st: &[Monomial], m: Monomial| st.contains(&m);
    for d in 0..=max_degree + 1 {
        let mut any = false;
        for px in (0..=d).rev() {
            let m = Monomial::new(px, d - px);
            let divisors_standard = (m.px == 0 || is_std(&standard, Monomial::new(m.px - 1, m.py)))
                && (m.py == 0 || is_std(&standard, Monomial::new(m.px, m.py - 1)));
            if !divisors_standard {
                continue;
            }
            any = true;
            let v = module.monomial_vector(&m, &mut cache);
            match span.express(&v) {
                Some(coeffs) => {
                    let mut p = GaussPoly::term(GaussRat::one(), m);
                    let mut rest = GaussPoly::zero();
                    for (s, c) in standard.iter().zip(&coeffs) {
                        p.add_term(*s, -c);
                        rest.add_term(*s, c.clone());
                    }
                    generators.push(p);
                    nf.insert(m, rest);
                }
                None => {
                    if d > max_degree {
                        return Err(Error::Verification(format!("standard monomial of degree {d} exceeds the bound")));
                    }
                    span.insert(&v);
                    standard.push(m);
                }
            }
        }
        if !any {
            break;
        }
    }
    generators.sort_by(|a, b| a.leading().map(|t| *t.0).cmp(&b.leading().map(|t| *t.0)));
    let std_sorted = standard.clone();
    let quotient = Quotient::from_rules(std_sorted, |m| {
        if let Some(p) = nf.get(m) {
            return p.clone();
        }
        let v = module.monomial_vector(m, &mut HashMap::new());
        let coeffs = span.express(&v).expect("module is spanned by the standard vectors");
        let mut p = GaussPoly::zero();
        for (s, c) in standard.iter().zip(&coeffs) {
            p.add_term(*s, c.clone());
        }
        p
    });
    Ok(ClusterIdeal { dimension: standard.len(), generators, standard, quotient: Some(quotient) })
}

/// Outcome of the checks at one point.
#[derive(Clone, Debug, Serialize)]
pub struct ClusterReport {
    pub commutes: bool,
    pub stable: bool,
    pub dimension: usize,
    pub expected_dimension: usize,
    pub regular: bool,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

/// Checks that a point of the chart is a G-cluster: the matrices commute,
/// the representation is stable, and the annihilator of `v0` has colength
/// `4n` with the regular representation as quotient.
pub fn verify_cluster(g: &GroupParams, qd: &QuiverData, rep: &NumericRep) -> Result<(ClusterReport, Option<ClusterIdeal>)> {
    verify_cluster_bounded(g, qd, rep, default_bound(g))
}

/// [`verify_cluster`] with an explicit degree bound for the ideal.
pub fn verify_cluster_bounded(g: &GroupParams, qd: &QuiverData, rep: &NumericRep, max_degree: u32) -> Result<(ClusterReport, Option<ClusterIdeal>)> {
    let expected = (4 * g.n) as usize;
    let stable = check_stability(qd, rep);
    let module = assemble_xy_action(g, qd, rep)?;
    let commutes = module.commutes();
    let mut report =
        ClusterReport { commutes, stable, dimension: 0, expected_dimension: expected, regular: false, ok: false, failure: None };
    if !commutes {
        report.failure = Some("X and Y do not commute".into());
        return Ok((report, None));
    }
    let ideal = cluster_ideal(&module, max_degree)?;
    report.dimension = ideal.dimension;
    let quot = ideal.quotient.as_ref().expect("quotient");
    let mults = multiplicities(quot, g);
    report.regular = mults.iter().all(|(rho, m)| *m == rho.dim());
    report.failure = if !stable {
        Some("not theta-stable".into())
    } else if ideal.dimension != expected {
        Some(format!("colength {} != {expected}", ideal.dimension))
    } else if !report.regular {
        Some("quotient is not the regular representation".into())
    } else {
        None
    };
    report.ok = report.failure.is_none();
    Ok((report, Some(ideal)))
}

/// Verification of one chart: its origin and a number of random points.
#[derive(Clone, Debug, Serialize)]
pub struct ChartVerification {
    pub ggraph: String,
    pub origin_is_graph_ideal: bool,
    /// `linear` when points are drawn by solving the equations, `orbit`
    /// when they come from free orbits.
    pub sampling: &'static str,
    pub samples_requested: usize,
    pub samples_checked: usize,
    pub failures: Vec<String>,
    pub ok: bool,
}

/// The origin of the chart is the G-graph point: the representation is a
/// G-cluster and the G-graph ideal annihilates `v0`, which with equal
/// colength gives equality of ideals.
pub fn origin_is_graph_point(chart: &Chart, gg: &GGraph, g: &GroupParams, qd: &QuiverData) -> bool {
    let Ok(rep) = instantiate(chart, qd, &origin_values(chart)) else { return false };
    if !check_stability(qd, &rep) {
        return false;
    }
    let Ok(module) = assemble_xy_action(g, qd, &rep) else { return false };
    if !module.commutes() {
        return false;
    }
    let Ok(ideal) = cluster_ideal(&module, default_bound(g)) else { return false };
    ideal.dimension == (4 * g.n) as usize && gg.ideal.iter().all(|p| module.annihilates(p))
}

/// Checks the origin and `samples` random points of a chart.
pub fn verify_chart<R: Rng>(chart: &Chart, gg: &GGraph, g: &GroupParams, qd: &QuiverData, samples: usize, rng: &mut R) -> Result<ChartVerification> {
    let origin = origin_is_graph_point(chart, gg, g, qd);
    let mut failures = Vec::new();
    if !origin {
        failures.push("origin is not the G-graph ideal".to_string());
    }
    let mut checked = 0;
    let plan = sampling_plan(chart);
    for k in 0..samples {
        let point = match &plan {
            Some(plan) => sample_point(chart, plan, rng),
            None => sample_orbit_point(chart, gg, g, qd, rng),
        };
        let Some(point) = point else {
            failures.push(format!("sample {k}: no point found"));
            continue;
        };
        let rep = instantiate(chart, qd, &point)?;
        let (report, _) = verify_cluster(g, qd, &rep)?;
        checked += 1;
        if let Some(f) = report.failure {
            let pt: Vec<String> = point.iter().map(|c| c.to_string()).collect();
            failures.push(format!("sample {k} ({}): {f}", pt.join(",")));
        }
    }
    Ok(ChartVerification {
        ggraph: chart.ggraph.clone(),
        origin_is_graph_ideal: origin,
        sampling: if plan.is_some() { "linear" } else { "orbit" },
        samples_requested: samples,
        samples_checked: checked,
        ok: failures.is_empty(),
        failures,
    })
}

/// An element of `Hom_G(rho_v, C[x, y]/I)`: one quotient vector per basis
/// vector of `rho_v`.
type Equivariant = Vec<Vec<GaussRat>>;

/// Image of `phi` under arrow `a`: component `t` is
/// `sum_c Tx[c][t] x phi_c + Ty[c][t] y phi_c`.
fn arrow_image(quot: &Quotient, g: &GroupParams, qd: &QuiverData, a: usize, phi: &Equivariant) -> Equivariant {
    let t = family_template(qd.arrows[a].family, g.q);
    let xs: Vec<Vec<GaussRat>> = phi.iter().map(|p| quot.mx.apply(p)).collect();
    let ys: Vec<Vec<GaussRat>> = phi.iter().map(|p| quot.my.apply(p)).collect();
    (0..t.cols())
        .map(|col| {
            let mut out = vec![GaussRat::zero(); quot.dim()];
            for c in 0..t.rows() {
                for (coef, v) in [(&t.x_part[(c, col)], &xs[c]), (&t.y_part[(c, col)], &ys[c])] {
                    if coef.is_zero() {
                        continue;
                    }
                    for (o, z) in out.iter_mut().zip(v) {
                        if !z.is_zero() {
                            *o += &(coef * z);
                        }
                    }
                }
            }
            out
        })
        .collect()
}

fn flatten(phi: &Equivariant) -> Vec<GaussRat> {
    phi.iter().flatten().cloned().collect()
}

/// The quotient `C[x, y]/I_Gamma` of a G-graph.
pub(crate) fn graph_quotient(gg: &GGraph, g: &GroupParams) -> Result<Quotient> {
    TruncatedIdeal::new(&gg.ideal, default_bound(g)).quotient()
}

fn root_element(quot: &Quotient) -> Equivariant {
    let mut one = vec![GaussRat::zero(); quot.dim()];
    one[quot.index_of(&Monomial::ONE).expect("1 is standard")] = GaussRat::one();
    vec![one]
}

/// Values of the representation at the G-graph point in the basis fixed by
/// a designation tree: basis vectors are propagated from `1` along the tree
/// and every arrow image is expressed in them. `None` if the propagated
/// vectors are dependent, i.e. the point is outside the open set.
pub(crate) fn graph_point(quot: &Quotient, g: &GroupParams, qd: &QuiverData, ds: &[Designation]) -> Option<Vec<GaussMatrix>> {
    let root = root_vertex(qd);
    let mut basis: HashMap<(usize, usize), Equivariant> = HashMap::new();
    basis.insert((root, 0), root_element(quot));
    loop {
        let mut grew = false;
        for d in ds {
            let a = &qd.arrows[d.arrow];
            if basis.contains_key(&(a.head, d.col)) {
                continue;
            }
            if let Some(phi) = basis.get(&(a.tail, d.row)) {
                let img = arrow_image(quot, g, qd, d.arrow, phi);
                basis.insert((a.head, d.col), img);
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let mut spans = Vec::new();
    for v in &qd.vertices {
        let mut span = Span::new(v.dim * quot.dim());
        for t in 0..v.dim {
            if !span.insert(&flatten(basis.get(&(v.id, t))?)) {
                return None;
            }
        }
        spans.push(span);
    }
    let mut mats = Vec::new();
    for a in &qd.arrows {
        let (rows, cols) = (qd.vertices[a.tail].dim, qd.vertices[a.head].dim);
        let mut m = GaussMatrix::zeros(rows, cols);
        for s in 0..rows {
            let img = arrow_image(quot, g, qd, a.id, &basis[&(a.tail, s)]);
            let coords = spans[a.head].express(&flatten(&img))?;
            for (t, c) in coords.into_iter().enumerate() {
                m[(s, t)] = c;
            }
        }
        mats.push(m);
    }
    Some(mats)
}

/// A spanning tree for a G-graph found from the G-graph point itself:
/// breadth first from `rho_0^+`, an arrow row becomes a designation when its
/// image at `C[x, y]/I_Gamma` is independent of the basis vectors already
/// reached at the head.
pub(crate) fn search_tree(gg: &GGraph, g: &GroupParams, qd: &QuiverData) -> Result<Vec<Designation>> {
    let quot = graph_quotient(gg, g)?;
    let root = root_vertex(qd);
    let mut basis: HashMap<(usize, usize), Equivariant> = HashMap::new();
    let mut spans: Vec<Span> = qd.vertices.iter().map(|v| Span::new(v.dim * quot.dim())).collect();
    let e = root_element(&quot);
    spans[root].insert(&flatten(&e));
    basis.insert((root, 0), e);
    let mut queue = VecDeque::from([(root, 0usize)]);
    let mut out = Vec::new();
    while let Some((v, s)) = queue.pop_front() {
        for a in qd.out_arrows(v) {
            let head = &qd.vertices[a.head];
            let reached = spans[a.head].rank();
            if reached == head.dim {
                continue;
            }
            let img = arrow_image(&quot, g, qd, a.id, &basis[&(v, s)]);
            if spans[a.head].insert(&flatten(&img)) {
                let (rows, cols) = (qd.vertices[v].dim, head.dim);
                out.push(Designation { name: super::entry_name(&a.name, rows, cols, s, reached), arrow: a.id, row: s, col: reached });
                basis.insert((a.head, reached), img);
                queue.push_back((a.head, reached));
            }
        }
    }
    if spans.iter().zip(&qd.vertices).any(|(s, v)| s.rank() != v.dim) {
        return Err(Error::Verification(format!("C[x,y]/I of {} does not generate every vertex", gg.id)));
    }
    Ok(out)
}
