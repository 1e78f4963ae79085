mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use common::*;
use textile_core::invariants::{determinant, invariant_factors, smith_normal_form};
use textile_core::io::{parse_input, InputDocument, Object};
use textile_core::shift2d::{corner_fibration_report, count_square_blocks, textile_of, tile_rectangle, TileMode, Tiling};
use textile_core::tower::{oracle_level, tower};
use textile_core::{count_lifts, Budget, IntMatrix, LiftDirection, Matrix, MatrixShift, Side, ZMatrix};

fn zero_one(k: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::bool::weighted(0.6), k * k)
        .prop_map(move |bits| IntMatrix::from_fn(k, k, |i, j| u64::from(bits[i * k + j])))
}

fn shift() -> impl Strategy<Value = MatrixShift> {
    (1usize..=3)
        .prop_flat_map(|k| (zero_one(k), zero_one(k)))
        .prop_map(|(a, b)| MatrixShift::with_numeric_alphabet(a, b).unwrap())
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn to_z(rows: &[Vec<i64>]) -> ZMatrix {
    Matrix::from_rows(rows.to_vec()).unwrap().map(|&x| BigInt::from(x))
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 128,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn smith_diagonal_is_a_divisibility_chain(m in int_matrix()) {
        let s = smith_normal_form(&to_z(&m)).unwrap();
        let d = s.diagonal();
        prop_assert!(d.iter().all(|x| !x.is_negative()));
        for w in d.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides, "chain broken: {:?}", d);
        }
        prop_assert_eq!(invariant_factors(&to_z(&m)), d.clone());
        let nonzero = d.iter().filter(|x| !x.is_zero()).count();
        prop_assert_eq!(nonzero, rank(&m));
        if m.len() == m[0].len() {
            let product: BigInt = d.iter().product();
            prop_assert_eq!(product, determinant(&to_z(&m)).unwrap().abs());
        }
    }

    #[test]
    fn tower_matches_word_enumeration(x in shift(), n in 1usize..=4) {
        for side in [Side::A, Side::B] {
            let level = tower(&x, side, n, Budget::DEFAULT).unwrap().levels.pop().unwrap();
            let (strips, matrix) = brute_force_level(&x, side, n);
            prop_assert_eq!(&level.strips, &strips);
            prop_assert_eq!(&level.matrix, &matrix);
            let o = oracle_level(&x, side, n, Budget::DEFAULT).unwrap();
            prop_assert_eq!((o.side, o.n, &o.strips, &o.matrix), (level.side, level.n, &level.strips, &level.matrix));
            let rule = match side { Side::A => x.vertical(), Side::B => x.horizontal() };
            prop_assert_eq!(level.k() as u64, rule.pow(n as u32 - 1).unwrap().entry_sum());
        }
    }

    #[test]
    fn block_counts_agree(x in shift(), w in 1usize..=3, h in 1usize..=3) {
        let listed = x.enumerate_blocks(w, h, Budget::DEFAULT).unwrap();
        prop_assert!(listed.iter().all(|b| x.is_locally_admissible(b)));
        let distinct: BTreeSet<_> = listed.iter().map(|b| x.block_name(b)).collect();
        prop_assert_eq!(distinct.len(), listed.len());
        let tiled = tile_rectangle(&x, w, h, TileMode::Count, Budget::DEFAULT).unwrap();
        prop_assert_eq!(tiled, Tiling::Count(listed.len() as u64));
        if w == h {
            let c = count_square_blocks(&x, w, Budget::DEFAULT).unwrap();
            prop_assert_eq!(c, listed.len().into());
        }
    }

    #[test]
    fn shift_documents_round_trip(x in shift()) {
        let mut doc = InputDocument::new();
        doc.push("X", Object::Shift(x)).unwrap();
        prop_assert_eq!(parse_input(&doc.to_text()).unwrap(), doc);
    }

    #[test]
    fn block_textiles_dualize_and_lift(x in shift()) {
        let Ok(t) = textile_of(&x, 2, 2, Budget::DEFAULT) else {
            return Ok(());
        };
        // the dual needs s and r onto, which fails when G has sources or sinks
        if let Ok(d) = t.dual() {
            prop_assert_eq!(d.dual().unwrap(), t.clone());
        }
        prop_assert_eq!(corner_fibration_report(&x).unwrap(), t.lifting_report());
        let doc = InputDocument::from_textile("T", &t).unwrap();
        prop_assert_eq!(parse_input(&doc.to_text()).unwrap(), doc);

        // every path of G maps to exactly one path of H
        let (g, h) = (t.g(), t.h());
        let a = g.vertex_matrix();
        let two_paths_of_g: u64 = a.checked_mul(&a).unwrap().entry_sum();
        let mut lifted = BigInt::zero();
        for b1 in 0..h.edge_count() {
            for b2 in h.out_edges(h.range(b1)) {
                let c = count_lifts(t.p(), None, &[b1, b2], LiftDirection::Source).unwrap();
                lifted += BigInt::from(c.total);
            }
        }
        prop_assert_eq!(lifted, BigInt::from(two_paths_of_g));
    }
}
