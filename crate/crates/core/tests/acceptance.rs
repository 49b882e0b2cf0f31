//! Acceptance checks. Each check prints one `PASS` or `FAIL` line; the
//! binary exits nonzero if any check fails.

use std::collections::BTreeMap;
use std::panic::catch_unwind;
use std::time::{Duration, Instant};

use bdhilb::arith::{poly, GaussPoly, GaussRat, MPoly};
use bdhilb::charts::{
    assemble_xy_action, chart_for, cluster_ideal, cyclic_charts, instantiate, sample_point, sampling_plan, verify_chart, Chart,
};
use bdhilb::ggraph::{default_bound, enumerate_ggraphs, ideals_equal, quotient_basis, verify_regular_rep};
use bdhilb::ggraph::quotient::TruncatedIdeal;
use bdhilb::group::{enumerate_small_groups, irreps, make_group, GroupParams};
use bdhilb::lattice::{hj_expand, newton_boundary, newton_boundary_bruteforce, LatticePoint};
use bdhilb::quiver::{dihedral_mckay, verify_relations_symbolic};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Check {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:.2?}, limit {limit:?}"))
}

fn family_groups(max: i64) -> Vec<GroupParams> {
    enumerate_small_groups(max).into_iter().filter(|g| g.require_family().is_ok()).collect()
}

fn cli_json(args: &[&str]) -> Result<serde_json::Value, String> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = bdhilb::cli::run(std::iter::once("bdhilb").chain(args.iter().copied()), &mut out, &mut err);
    ensure(code == 0, || format!("{args:?} exited {code}: {}", String::from_utf8_lossy(&err)))?;
    serde_json::from_slice(&out).map_err(|e| e.to_string())
}

fn binding(c: &Chart, name: &str) -> Result<MPoly, String> {
    let v = c.var(name).ok_or_else(|| format!("no variable {name}"))?;
    c.binding_polys.iter().find(|(w, _)| *w == v).map(|(_, p)| p.clone()).ok_or_else(|| format!("{name} is not bound"))
}

fn var(c: &Chart, name: &str) -> Result<MPoly, String> {
    c.var(name).map(MPoly::var).ok_or_else(|| format!("no variable {name}"))
}

/// D4 charts from the command line, with the type A bindings.
fn d4_charts() -> Check {
    let start = Instant::now();
    let charts = cli_json(&["charts", "4", "3"])?;
    within(start, Duration::from_secs(1), "charts 4 3")?;
    let want = [
        ("A", "c*d = (c*d^2 + 1)*G"),
        ("C+", "G*H = (H + 1)*D"),
        ("C-", "E*F = (F + 1)*D"),
        ("D+", "g*h = (g^2*h - 1)*D"),
        ("D-", "e*f = (e^2*f - 1)*D"),
    ];
    let list = charts.as_array().ok_or("charts output is not a list")?;
    ensure(list.len() == want.len(), || format!("{} charts", list.len()))?;
    for (chart, (label, eq)) in list.iter().zip(want) {
        let id = chart["ggraph"].as_str().unwrap_or_default();
        ensure(id.starts_with(label), || format!("chart {id}, expected {label}"))?;
        ensure(chart["equations_display"] == serde_json::json!([eq]), || format!("{id}: {}", chart["equations_display"]))?;
    }
    let g = make_group(4, 3).unwrap();
    let c = chart_for(&enumerate_ggraphs(&g).unwrap()[0], &g).map_err(|e| e.to_string())?;
    let (cv, dv, gv) = (var(&c, "c")?, var(&c, "d")?, var(&c, "G")?);
    let one = MPoly::one();
    // H = -1 - c d^2.
    let h_want = -&(&one + &(&cv * &(&dv * &dv)));
    let h = binding(&c, "H")?;
    ensure(h == h_want, || "H is not -1 - c*d^2".into())?;
    // B = -c - G^2 H, up to a multiple of the chart equation.
    let b = binding(&c, "B")?;
    let diff = &(&b + &cv) + &(&(&gv * &gv) * &h);
    let eq = &c.equation_polys[0];
    let multiple = &gv * eq;
    ensure(diff.is_zero() || diff == multiple || diff == -&multiple, || format!("B differs by {}", diff.display(&c.rep.var_names)))
}

fn r_polys(c: &GaussRat, d: &GaussRat, gv: &GaussRat) -> Vec<GaussPoly> {
    let k = |v: &GaussRat| GaussPoly::constant(v.clone());
    let x4y4 = poly("x^4 - y^4");
    let s2 = poly("x^2 + y^2");
    let cd = c * d;
    let b = &-c.clone() + &(&(gv * gv) * &(&GaussRat::one() + &(&cd * d)));
    vec![
        &poly("2*x*y") + &(&k(d) * &x4y4),
        &(&poly("2*x*y") * &s2) - &(&k(gv) * &poly("x^2 - y^2")),
        &(&(&poly("x") * &x4y4) + &(&k(c) * &poly("x"))) - &(&k(&cd) * &(&poly("y") * &s2)),
        &(&(&poly("y") * &x4y4) - &(&k(c) * &poly("y"))) - &(&k(&cd) * &(&poly("x") * &s2)),
        &(&s2 * &s2) - &k(&b),
    ]
}

/// The type A cluster ideal of D4 is generated by R1..R5; R5 is needed.
fn d4_cluster_ideals() -> Check {
    let g = make_group(4, 3).unwrap();
    let qd = dihedral_mckay(&g).unwrap();
    let c = chart_for(&enumerate_ggraphs(&g).unwrap()[0], &g).map_err(|e| e.to_string())?;
    let plan = sampling_plan(&c).ok_or("no sampling plan for type A")?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let idx = |n: &str| c.free_params.iter().position(|f| f == n).unwrap();
    let mut points = vec![c.origin_point.clone()];
    while points.len() < 10 {
        points.push(sample_point(&c, &plan, &mut rng).ok_or("sampling failed")?);
    }
    for p in &points {
        let rep = instantiate(&c, &qd, p).map_err(|e| e.to_string())?;
        let module = assemble_xy_action(&g, &qd, &rep).map_err(|e| e.to_string())?;
        let ideal = cluster_ideal(&module, default_bound(&g)).map_err(|e| e.to_string())?;
        let rs = r_polys(&p[idx("c")], &p[idx("d")], &p[idx("G")]);
        // Both inclusions: the R's kill the cyclic vector, and every
        // generator reduces to zero in a degree-truncated span of the R's,
        // which lies inside the ideal they generate.
        let span = TruncatedIdeal::new(&rs, 16);
        let shown: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        ensure(rs.iter().all(|r| module.annihilates(r)), || format!("some R is not in the cluster ideal at ({})", shown.join(", ")))?;
        ensure(ideal.generators.iter().all(|f| span.contains(f)), || format!("the cluster ideal is larger at ({})", shown.join(", ")))?;
        ensure(ideal.dimension == 8, || format!("colength {}", ideal.dimension))?;
    }
    let zero = GaussRat::zero();
    let rs = r_polys(&zero, &zero, &zero);
    let dim = TruncatedIdeal::new(&rs[..4], 12).quotient().map(|q| q.dim()).map_err(|e| e.to_string())?;
    ensure(dim == 9, || format!("without R5 the origin has colength {dim}"))
}

fn bd42_ideals() -> Vec<(&'static str, Vec<GaussPoly>)> {
    let ps = |v: &[&str]| v.iter().map(|s| poly(s)).collect::<Vec<_>>();
    vec![
        ("A", ps(&["x*y", "x^42 + y^42"])),
        ("B1", ps(&["x^14 - y^14", "x^16*y^2 + x^2*y^16", "x^4*y^3", "x^3*y^4"])),
        ("C-", ps(&["x^7*y^3 - i*y^10", "x^10 - i*x^3*y^7", "x^6*y^6", "x^10*y^3", "x^3*y^10"])),
        ("C+", ps(&["x^7*y^3 + i*y^10", "x^10 + i*x^3*y^7", "x^6*y^6", "x^10*y^3", "x^3*y^10"])),
        ("D-", ps(&["x^7 + i*y^7", "x^6*y^6"])),
        ("D+", ps(&["x^7 - i*y^7", "x^6*y^6"])),
    ]
}

/// BD42(13): invariants, boundary and the six G-graph ideals.
fn bd42() -> Check {
    let start = Instant::now();
    let g = make_group(42, 13).map_err(|e| e.to_string())?;
    ensure((g.q, g.k) == (7, 3), || format!("q = {}, k = {}", g.q, g.k))?;
    let hj = hj_expand(42, 13).map_err(|e| e.to_string())?;
    ensure(hj.digits == [4, 2, 2, 2, 4], || format!("42/13 = {:?}", hj.digits))?;
    let pts = newton_boundary(&g).map_err(|e| e.to_string())?;
    let want: Vec<LatticePoint> = [(0, 42), (1, 13), (4, 10), (7, 7)].iter().map(|&(r, s)| LatticePoint::new(r, s)).collect();
    ensure(pts == want, || format!("boundary {pts:?}"))?;
    let graphs = enumerate_ggraphs(&g).map_err(|e| e.to_string())?;
    let ours: Vec<&[GaussPoly]> = graphs.iter().map(|gg| gg.ideal.as_slice()).collect();
    let theirs = bd42_ideals();
    ensure(ours.len() == theirs.len(), || format!("{} G-graphs", ours.len()))?;
    let bound = default_bound(&g);
    let mut used = vec![false; ours.len()];
    for (label, ideal) in &theirs {
        let hit = (0..ours.len()).find(|&k| !used[k] && ideals_equal(ours[k], ideal, bound).unwrap_or(false));
        match hit {
            Some(k) => used[k] = true,
            None => return Err(format!("no G-graph has the ideal listed for {label}")),
        }
    }
    for gg in &graphs {
        chart_for(gg, &g).map_err(|e| format!("{}: {e}", gg.id))?;
    }
    within(start, Duration::from_secs(5), "BD42(13) ideals and charts")
}

/// BD30(19): invariants and quiver vertex counts.
fn bd30() -> Check {
    let g = make_group(30, 19).map_err(|e| e.to_string())?;
    ensure((g.q, g.k) == (5, 3), || format!("q = {}, k = {}", g.q, g.k))?;
    let hj = hj_expand(30, 11).map_err(|e| e.to_string())?;
    ensure(hj.digits == [3, 4, 3], || format!("30/11 = {:?}", hj.digits))?;
    let qd = dihedral_mckay(&g).map_err(|e| e.to_string())?;
    let one = qd.vertices.iter().filter(|v| v.dim == 1).count();
    let two = qd.vertices.iter().filter(|v| v.dim == 2).count();
    ensure((one, two) == (12, 12), || format!("{one} one-dimensional and {two} two-dimensional vertices"))
}

/// 1/5(1,2): three charts with the expected coordinates and ideals.
fn cyclic_five_two() -> Check {
    let charts = cyclic_charts(5, 2).map_err(|e| e.to_string())?;
    ensure(charts.len() == 3, || format!("{} charts", charts.len()))?;
    let map: BTreeMap<_, _> = charts[0].name_map.iter().cloned().collect();
    ensure(map.get("A").map(String::as_str) == Some("y/x^2"), || format!("A = {:?}", map.get("A")))?;
    ensure(map.get("e").map(String::as_str) == Some("x^5"), || format!("e = {:?}", map.get("e")))?;
    ensure(charts[0].free_params == ["A", "e"], || format!("free {:?}", charts[0].free_params))?;
    let want = [vec!["x^5", "y"], vec!["x^2", "x*y^2", "y^3"], vec!["x", "y^5"]];
    for (c, w) in charts.iter().zip(want) {
        let got: Vec<String> = c.ideal.iter().map(|p| p.to_string()).collect();
        ensure(got == w, || format!("{}: {got:?}", c.ggraph))?;
        ensure(c.equations.is_empty() && c.free_params.len() == 2, || format!("{} is not a plane", c.ggraph))?;
    }
    Ok(())
}

/// The templates satisfy every relation for all groups with 2n <= 60.
fn relation_soundness() -> Check {
    let start = Instant::now();
    let groups = family_groups(60);
    for g in &groups {
        let r = verify_relations_symbolic(g).map_err(|e| e.to_string())?;
        ensure(r.ok, || format!("{g}: {:?}", r.residues.first()))?;
    }
    ensure(groups.len() > 20, || format!("only {} groups", groups.len()))?;
    within(start, Duration::from_secs(60), "relation sweep")
}

/// Every G-graph quotient is the regular representation.
fn regular_representation() -> Check {
    for g in family_groups(60) {
        let sum: usize = irreps(&g).iter().map(|r| r.dim() * r.dim()).sum();
        ensure(sum == g.order() as usize, || format!("{g}: sum of squares {sum}"))?;
        for gg in enumerate_ggraphs(&g).map_err(|e| e.to_string())? {
            let basis = quotient_basis(&gg.ideal, &g, default_bound(&g)).map_err(|e| format!("{g} {}: {e}", gg.id))?;
            let r = verify_regular_rep(&basis, &g);
            ensure(r.ok && r.dimension == g.order() as usize, || format!("{g} {}: {:?}", gg.id, r.offending))?;
        }
    }
    Ok(())
}

/// Random exact points of every chart of D4 and BD42(13) are G-clusters.
fn cluster_property() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (two_n, a) in [(4, 3), (42, 13)] {
        let g = make_group(two_n, a).unwrap();
        let qd = dihedral_mckay(&g).unwrap();
        for gg in enumerate_ggraphs(&g).unwrap() {
            let c = chart_for(&gg, &g).map_err(|e| e.to_string())?;
            let v = verify_chart(&c, &gg, &g, &qd, 20, &mut rng).map_err(|e| e.to_string())?;
            ensure(v.origin_is_graph_ideal, || format!("{g} {}: origin is not the G-graph ideal", gg.id))?;
            ensure(v.ok && v.samples_checked >= 20, || format!("{g} {}: {:?}", gg.id, v.failures))?;
        }
    }
    within(start, Duration::from_secs(120), "cluster sweep")
}

/// Newton boundaries agree with brute force; the expansions of
/// 2n/(2n - a) are palindromic.
fn oracles() -> Check {
    for g in family_groups(60) {
        let fast = newton_boundary(&g).map_err(|e| e.to_string())?;
        let slow = newton_boundary_bruteforce(&g, g.two_n);
        ensure(fast == slow, || format!("{g}: {fast:?} != {slow:?}"))?;
        let hj = hj_expand(g.two_n, g.two_n - g.a).map_err(|e| e.to_string())?;
        ensure(hj.is_palindrome(), || format!("{g}: {:?}", hj.digits))?;
    }
    Ok(())
}

fn main() {
    let checks: [(&str, fn() -> Check); 9] = [
        ("D4 charts", d4_charts),
        ("D4 cluster ideals", d4_cluster_ideals),
        ("BD42(13) G-graphs", bd42),
        ("BD30(19) quiver", bd30),
        ("cyclic 1/5(1,2)", cyclic_five_two),
        ("relation soundness", relation_soundness),
        ("regular representation", regular_representation),
        ("cluster property", cluster_property),
        ("oracles", oracles),
    ];
    let mut failed = 0;
    for (k, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(()) => println!("PASS {}. {name} ({:.2?})", k + 1, start.elapsed()),
            Err(e) => {
                failed += 1;
                println!("FAIL {}. {name}: {e}", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} checks failed", checks.len());
        std::process::exit(1);
    }
}
