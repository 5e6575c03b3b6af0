mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use cardmpc::{
    build_matrix, decode, encode, oracle_equality, oracle_set, oracle_set_size, pile_scramble,
    pile_shift, run_protocol, InputVector, Permutation, Protocol, SeededSource, Suit,
};

fn inputs_strategy(max_k: usize, max_n: usize) -> impl Strategy<Value = InputVector> {
    (2..=max_k, 1..=max_n).prop_flat_map(|(k, n)| {
        prop::collection::vec(0..k, n).prop_map(move |v| InputVector::new(v, k).unwrap())
    })
}

fn permutation_strategy(k: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=k).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn matrix_and_perm() -> impl Strategy<Value = (InputVector, Permutation, usize)> {
    inputs_strategy(8, 6).prop_flat_map(|x| {
        let k = x.k();
        (Just(x), permutation_strategy(k), 0..k)
    })
}

proptest! {
    #[test]
    fn decode_inverts_encode(k in 2usize..40, i in 0usize..40) {
        prop_assume!(i < k);
        let s = encode(i, k).unwrap();
        prop_assert_eq!(s.len(), k);
        prop_assert_eq!(decode(&s).unwrap(), i);
    }

    #[test]
    fn built_rows_hold_one_face_down_club(x in inputs_strategy(9, 8), extra in any::<bool>()) {
        let m = build_matrix(&x, extra).unwrap();
        prop_assert_eq!(m.rows(), x.n() + usize::from(extra));
        prop_assert_eq!(m.face_up_count(), 0);
        for r in 1..=m.rows() {
            prop_assert_eq!(m.row_pattern(r).clubs(), 1);
        }
    }

    #[test]
    fn scramble_moves_intact_columns((x, p, _) in matrix_and_perm()) {
        let m = build_matrix(&x, false).unwrap();
        let out = pile_scramble(&m, &p).unwrap();
        for r in 1..=m.rows() {
            prop_assert_eq!(out.row_pattern(r).clubs(), m.row_pattern(r).clubs());
        }
        for i in 1..=m.cols() {
            for r in 1..=m.rows() {
                prop_assert_eq!(out.card(r, p.apply(i)), m.card(r, i));
            }
        }
    }

    #[test]
    fn shift_is_cyclic_scramble((x, _, r) in matrix_and_perm()) {
        let m = build_matrix(&x, true).unwrap();
        let k = m.cols();
        prop_assert_eq!(pile_shift(&m, r).unwrap(), pile_scramble(&m, &Permutation::cyclic(k, r)).unwrap());
        let back = pile_shift(&pile_shift(&m, r).unwrap(), (k - r) % k).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn shuffling_commutes_with_turning_a_row((x, p, _) in matrix_and_perm()) {
        let m = build_matrix(&x, false).unwrap();
        let mut flipped_first = m.clone();
        flipped_first.turn_over_row(1);
        let a = pile_scramble(&flipped_first, &p).unwrap();
        let mut b = pile_scramble(&m, &p).unwrap();
        b.turn_over_row(1);
        let view = |m: &cardmpc::CardMatrix| -> BTreeSet<(Suit, usize)> {
            (1..=m.cols()).filter_map(|j| m.card(1, j).visible().map(|s| (s, j))).collect()
        };
        prop_assert_eq!(view(&a), view(&b));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn inverse_undoes_scramble((x, p, _) in matrix_and_perm()) {
        let m = build_matrix(&x, false).unwrap();
        let there = pile_scramble(&m, &p).unwrap();
        prop_assert_eq!(pile_scramble(&there, &p.inverse()).unwrap(), m);
    }

    #[test]
    fn oracles_are_permutation_invariant(x in inputs_strategy(8, 8), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut v = x.values().to_vec();
        v.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let y = InputVector::new(v, x.k()).unwrap();
        prop_assert_eq!(oracle_equality(&x), oracle_equality(&y));
        prop_assert_eq!(oracle_set(&x), oracle_set(&y));
        prop_assert_eq!(oracle_set_size(&x), oracle_set_size(&y));
        prop_assert_eq!(oracle_set_size(&x) == 1, oracle_equality(&x) == 1);
        prop_assert!(oracle_set_size(&x) <= x.n().min(x.k()));
    }

    #[test]
    fn runs_satisfy_invariants(x in inputs_strategy(8, 8), seed in any::<u64>()) {
        for p in Protocol::ALL {
            let (_, v) = common::checked_run(p, &x, &mut SeededSource::new(seed));
            prop_assert_eq!(v.total(), 0, "{} {}: {:?}", p, x, v);
        }
    }

    #[test]
    fn replay_is_deterministic(x in inputs_strategy(7, 6), seed in any::<u64>()) {
        for p in Protocol::ALL {
            let run = run_protocol(p, &x, &mut SeededSource::new(seed)).unwrap();
            let mut tape = run.tape.clone();
            tape.rewind();
            let again = run_protocol(p, &x, &mut tape).unwrap();
            prop_assert_eq!(&again.transcript, &run.transcript);
            prop_assert_eq!(&again.output, &run.output);
            prop_assert_eq!(tape.consumed(), x.n());
        }
    }
}
