//! Property tests for exact arithmetic and the lattice oracles.

use bdhilb::arith::{GaussPoly, GaussRat, Monomial};
use bdhilb::group::make_group;
use bdhilb::lattice::{hj_expand, newton_boundary, newton_boundary_bruteforce};
use num_integer::Integer;
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-20i64..20, 1i64..8, -20i64..20, 1i64..8).prop_map(|(p, q, r, s)| GaussRat::from_fracs(p, q, r, s))
}

fn gpoly() -> impl Strategy<Value = GaussPoly> {
    prop::collection::vec((gauss(), 0u32..4, 0u32..4), 0..5).prop_map(|terms| {
        let mut f = GaussPoly::zero();
        for (c, px, py) in terms {
            f.add_term(Monomial::new(px, py), c);
        }
        f
    })
}

proptest! {
    #[test]
    fn field_laws(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, GaussRat::zero());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn display_parses_back(a in gauss()) {
        let back: GaussRat = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn decimals_are_rejected(n in 0u32..1000, d in 1u32..1000) {
        let text = format!("{n}.{d}");
        prop_assert!(text.parse::<GaussRat>().is_err());
    }

    #[test]
    fn polynomial_display_parses_back(f in gpoly()) {
        let back: GaussPoly = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn polynomial_ring_laws(f in gpoly(), g in gpoly(), x in gauss(), y in gauss()) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!((&f * &g).eval(&x, &y), &f.eval(&x, &y) * &g.eval(&x, &y));
        prop_assert_eq!((&f + &g).eval(&x, &y), &f.eval(&x, &y) + &g.eval(&x, &y));
    }

    #[test]
    fn hj_value_round_trips(num in 2i64..400, den in 1i64..400) {
        prop_assume!(den < num && num.gcd(&den) == 1);
        let e = hj_expand(num, den).unwrap();
        prop_assert_eq!(e.value(), (num, den));
        prop_assert!(e.digits.iter().all(|&d| d >= 2));
    }

    #[test]
    fn boundary_matches_bruteforce(two_n in (2i64..60).prop_map(|n| 2 * n), a in 2i64..120) {
        prop_assume!(a < two_n);
        if let Ok(g) = make_group(two_n, a) {
            if let Ok(b) = newton_boundary(&g) {
                prop_assert_eq!(b, newton_boundary_bruteforce(&g, two_n));
                let e = hj_expand(two_n, two_n - a).unwrap();
                prop_assert!(e.is_palindrome());
            }
        }
    }
}
