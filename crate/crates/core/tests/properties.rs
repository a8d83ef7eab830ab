use hecke_core::model::generate_ls_paths;
use hecke_core::paths::{root_operator, LambdaPath, Orientation, RootOperator};
use hecke_core::rational::{fmt_rat, parse_rat, Rat};
use hecke_core::root_system::named;
use hecke_core::{RootSystem, Vector, WeylElement};
use proptest::prelude::*;

fn a2() -> RootSystem {
    RootSystem::from_gcm(named::a2()).unwrap()
}

fn word(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..2, 0..max)
}

/// A path of shape `(1, 1)` from `start` whose pieces follow the given
/// Weyl words for the given positive durations.
fn path(sys: &RootSystem, start: &Vector, pieces: &[(Vec<usize>, i128)]) -> LambdaPath {
    let lam = Vector::from_ints(&[1, 1]);
    let total: i128 = pieces.iter().map(|(_, d)| d).sum();
    let disp: Vec<Vector> = pieces
        .iter()
        .map(|(w, d)| {
            let dir = sys.act_word(w, &lam);
            dir.scale(&Rat::new(*d, total))
        })
        .collect();
    LambdaPath::from_displacements(sys, start, &disp, Orientation::Dominant).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_forms_are_canonical(w in word(10)) {
        let s = a2();
        let v = s.regular_vector().clone();
        let n = s.normalize_word(&w).unwrap();
        prop_assert!(n.length() <= w.len());
        prop_assert_eq!(s.act(&n, &v), s.act_word(&w, &v));
        prop_assert_eq!(s.normalize_word(n.word()).unwrap(), n.clone());
        prop_assert!(s.multiply(&n, &s.inverse(&n)).is_identity());
    }

    #[test]
    fn multiplication_acts(a in word(6), b in word(6), x in -5i64..5, y in -5i64..5) {
        let s = a2();
        let (a, b) = (s.normalize_word(&a).unwrap(), s.normalize_word(&b).unwrap());
        let v = Vector::from_ints(&[x, y]);
        prop_assert_eq!(s.act(&s.multiply(&a, &b), &v), s.act(&a, &s.act(&b, &v)));
        prop_assert!(s.bruhat_leq(&WeylElement::identity(), &a));
        prop_assert_eq!(s.inversion_set(&a).len(), a.length());
    }

    #[test]
    fn rationals_round_trip(p in -1000i128..1000, q in 1i128..1000) {
        let r = Rat::new(p, q);
        prop_assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
    }

    #[test]
    fn reversal_is_an_involution(
        pieces in prop::collection::vec((word(4), 1i128..5), 1..4),
        x in -3i64..3,
        y in -3i64..3,
    ) {
        let s = a2();
        let p = path(&s, &Vector::from_ints(&[x, y]), &pieces);
        let r = p.reverse();
        prop_assert_eq!(r.start(), &p.end());
        prop_assert_eq!(r.end(), p.start().clone());
        prop_assert_eq!(r.reverse(), p.clone());
        let shift = Vector::from_ints(&[y, x]);
        prop_assert_eq!(p.translate(&shift).end(), &p.end() + &shift);
    }
}

#[test]
fn f_and_e_are_inverse_on_a_crystal() {
    let s = a2();
    let g = generate_ls_paths(&s, &Vector::from_ints(&[2, 1]), 50).unwrap();
    assert!(!g.partial);
    let mut checked = 0;
    for p in &g.nodes {
        for i in 0..2 {
            if let Ok(q) = root_operator(&s, RootOperator::F, i, p) {
                assert_eq!(root_operator(&s, RootOperator::E, i, &q).unwrap(), *p);
                checked += 1;
            }
        }
    }
    assert_eq!(checked, g.edges.len());
}
