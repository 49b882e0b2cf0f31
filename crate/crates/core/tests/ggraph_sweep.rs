//! Every G-graph of every small group in the family gives a regular-representation quotient.

use bdhilb::ggraph::{default_bound, enumerate_ggraphs, ideals_equal, quotient_basis, verify_regular_rep, GGraphKind};
use bdhilb::group::enumerate_small_groups;

#[test]
fn all_ggraphs_are_regular_up_to_60() {
    let mut checked = 0;
    for g in enumerate_small_groups(60).into_iter().filter(|g| g.require_family().is_ok()) {
        let graphs = enumerate_ggraphs(&g).unwrap();
        for gg in &graphs {
            let basis = quotient_basis(&gg.ideal, &g, default_bound(&g)).unwrap_or_else(|e| panic!("{g} {}: {e}", gg.id));
            let rep = verify_regular_rep(&basis, &g);
            assert!(rep.ok, "{g} {}: {:?}", gg.id, rep.offending);
            checked += 1;
        }
        let d: Vec<_> = graphs.iter().filter(|gg| matches!(gg.kind, GGraphKind::D(_))).collect();
        assert_eq!(d.len(), 2);
        assert!(!ideals_equal(&d[0].ideal, &d[1].ideal, default_bound(&g)).unwrap(), "{g}");
    }
    assert!(checked > 20);
}
