use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::strategy::Strategy as _;

use cobord::abelian::{abelian_invariants, smith_normal_form};
use cobord::coset::{enumerate, group_order, EnumerationLimits, GroupOrder, Strategy};
use cobord::matrix::IntegerMatrix;
use cobord::parse::{parse_presentation, parse_word};
use cobord::presentation::Presentation;
use cobord::words::{Generator, Letter, Word};

fn gens() -> Vec<Generator> {
    ["a", "b"].iter().map(|n| Generator::new(n).unwrap()).collect()
}

fn word_strategy(max_len: usize) -> impl proptest::strategy::Strategy<Value = Word> {
    prop::collection::vec((0usize..2, any::<bool>()), 0..max_len)
        .prop_map(|raw| Word::from_letters(raw.into_iter().map(|(g, inv)| Letter::new(gens()[g].clone(), inv))))
}

/// Two-generator presentations with bounded generator orders, so most are finite.
fn finite_ish() -> impl proptest::strategy::Strategy<Value = Presentation> {
    (2i64..5, 2i64..5, word_strategy(8)).prop_map(|(m, n, w)| {
        let g = gens();
        Presentation::new("random", g.clone(), vec![Word::power(&g[0], m), Word::power(&g[1], n), w]).unwrap()
    })
}

fn limits(s: Strategy) -> EnumerationLimits {
    EnumerationLimits::default().with_max_cosets(20_000).with_strategy(s)
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&i| q[i]).collect()
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn word_group_laws(u in word_strategy(20), v in word_strategy(20)) {
        prop_assert!((&u * &u.inverse()).is_identity());
        prop_assert_eq!((&u * &v).inverse(), &v.inverse() * &u.inverse());
        prop_assert_eq!(u.pow(3), &(&u * &u) * &u);
        prop_assert_eq!(parse_word(&u.to_string(), None).unwrap(), u.clone());
    }

    #[test]
    fn presentation_text_round_trip(p in finite_ish()) {
        let q = parse_presentation(&p.to_string()).unwrap();
        prop_assert_eq!(q.generators(), p.generators());
        prop_assert_eq!(q.relators(), p.relators());
    }

    #[test]
    fn strategies_agree(p in finite_ish()) {
        let hlt = group_order(&p, limits(Strategy::Hlt)).unwrap();
        let felsch = group_order(&p, limits(Strategy::Felsch)).unwrap();
        if let (GroupOrder::Finite(a), GroupOrder::Finite(b)) = (&hlt, &felsch) {
            prop_assert_eq!(a, b);
        }
    }

    // The permutation action on cosets must satisfy every relator, be
    // transitive, and generate a group whose order is the number of cosets.
    #[test]
    fn coset_action_is_regular(p in finite_ish()) {
        let Some(table) = enumerate(&p, &[], limits(Strategy::Hlt)).unwrap().complete() else { return Ok(()) };
        let n = table.n_cosets();
        let rep = table.permutation_rep().unwrap();
        let id: Vec<usize> = (0..n).collect();
        for r in p.relators() {
            let mut perm = id.clone();
            for l in r.letters() {
                let g = &rep[&l.generator];
                perm = compose(&perm, &if l.inverse { invert(g) } else { g.clone() });
            }
            prop_assert_eq!(&perm, &id, "relator {}", r);
        }
        let mut seen = BTreeSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in rep.values() {
                let y = compose(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        prop_assert_eq!(seen.len(), n);
    }

    #[test]
    fn simplify_preserves_invariants(p in finite_ish()) {
        let s = p.simplify(50);
        prop_assert_eq!(abelian_invariants(&s.presentation), abelian_invariants(&p));
        let before = group_order(&p, limits(Strategy::Hlt)).unwrap().finite();
        let after = group_order(&s.presentation, limits(Strategy::Hlt)).unwrap().finite();
        if let (Some(a), Some(b)) = (before, after) {
            prop_assert_eq!(a, b);
        }
    }

    // For square relator matrices |H1| = |det|, computed without the SNF.
    #[test]
    fn abelianization_order_matches_determinant(u in word_strategy(12), v in word_strategy(12)) {
        let g = gens();
        let p = Presentation::new("square", g, vec![u, v]).unwrap();
        let det = p.relator_matrix().determinant().unwrap().abs();
        let inv = abelian_invariants(&p);
        if det.is_zero() {
            prop_assert!(inv.free_rank > 0);
        } else {
            prop_assert_eq!(inv.free_rank, 0);
            prop_assert_eq!(inv.order(), Some(det));
        }
    }

    #[test]
    fn snf_of_transpose_has_same_diagonal(rows in prop::collection::vec(prop::collection::vec(-20i64..=20, 4), 3)) {
        let m = IntegerMatrix::from_rows(&rows).unwrap();
        let a = smith_normal_form(&m).diagonal;
        let b = smith_normal_form(&m.transpose()).diagonal;
        let nonzero = |d: Vec<BigInt>| d.into_iter().filter(|x| !x.is_zero()).collect::<Vec<_>>();
        prop_assert_eq!(nonzero(a), nonzero(b));
    }
}
