//! Structural properties of the dihedral McKay quiver over all small groups.

use std::collections::BTreeSet;

use bdhilb::group::{enumerate_small_groups, irreps};
use bdhilb::quiver::{dihedral_mckay, relation_set, verify_relations_symbolic};

#[test]
fn quivers_match_irreps_and_relations_vanish() {
    for g in enumerate_small_groups(60).into_iter().filter(|g| g.require_family().is_ok()) {
        let qd = dihedral_mckay(&g).unwrap();
        let from_quiver: BTreeSet<_> = qd.vertices.iter().map(|v| v.irrep.unwrap()).collect();
        let all: BTreeSet<_> = irreps(&g).into_iter().collect();
        assert_eq!(from_quiver.len(), qd.vertices.len(), "{g}: repeated irrep");
        assert_eq!(from_quiver, all, "{g}");
        assert_eq!(qd.total_dimension() as i64, g.two_n + 2 * g.k);
        assert_eq!(qd.fundamental_domain.as_ref().unwrap().lattice_points as i64, g.two_n);
        // V tensor rho: arrows out of and into each vertex carry twice its dimension.
        for v in &qd.vertices {
            let out: usize = qd.out_arrows(v.id).map(|a| qd.vertices[a.head].dim).sum();
            let inn: usize = qd.in_arrows(v.id).map(|a| qd.vertices[a.tail].dim).sum();
            assert_eq!((out, inn), (2 * v.dim, 2 * v.dim), "{g} {}", v.name);
        }
        // Every arrow raises the class of the first component by 1 or a.
        for a in &qd.arrows {
            let (t, h) = (&qd.vertices[a.tail], &qd.vertices[a.head]);
            let step = if "acr".contains(a.family) { 1 } else if "bdu".contains(a.family) { g.a } else if "eg".contains(a.family) { 1 } else { g.a };
            assert_eq!(g.residue(t.class + step), h.class, "{g} {}", a.name);
        }
        assert_eq!(relation_set(&g, &qd).unwrap().len() as i64, g.k * (4 + g.q - 1));
        let rep = verify_relations_symbolic(&g).unwrap();
        assert!(rep.ok, "{g}: {:?}", rep.residues);
    }
}
