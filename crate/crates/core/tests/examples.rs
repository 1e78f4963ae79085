mod common;

use common::int;
use textile_core::examples;
use textile_core::invariants::{bowen_franks, identify_algebra};
use textile_core::shift2d::{recode_to_matrix_shift, textile_of};
use textile_core::tower::{oracle_level, tower};
use textile_core::{algebra_report, AlgebraTag, Budget, FPAbelianGroup, MatrixShift, Side};

#[test]
fn opposite_of_ex1_graph() {
    let g = examples::textile("ex1").g().opposite();
    let a = g.edge_id("a").unwrap();
    assert_eq!((g.vertex_name(g.source(a)), g.vertex_name(g.range(a))), ("v", "u"));
}

#[test]
fn ex2_side_a_level_two_has_nine_columns() {
    let level = oracle_level(&examples::shift("ex2-shift"), Side::A, 2, Budget::DEFAULT).unwrap();
    assert_eq!(level.k(), 9);
}

#[test]
fn golden_mean_sides_coincide() {
    let x = examples::shift("golden-mean");
    let a = tower(&x, Side::A, 6, Budget::DEFAULT).unwrap();
    let b = tower(&x, Side::B, 6, Budget::DEFAULT).unwrap();
    for (la, lb) in a.levels.iter().zip(&b.levels) {
        assert_eq!(la.matrix, lb.matrix);
    }
    assert_eq!(a.k_sequence(), vec![2, 3, 5, 8, 13, 21]);
    assert!(a.tail_deletion.iter().all(|&t| t));
}

#[test]
fn swap_example_second_b_level() {
    let r = algebra_report(&examples::shift("ex1-shift"), Side::B, 2, Budget::DEFAULT).unwrap();
    let d = &r.descriptor;
    assert_eq!(d.tag, AlgebraTag::CircleMatrixSum(vec![2, 2]));
    assert_eq!(d.k0, FPAbelianGroup::free(2));
    assert_eq!(d.k1, FPAbelianGroup::free(2));
    assert!(!r.simple_up_to_level());
}

#[test]
fn full_shift_third_level() {
    let r = algebra_report(&examples::shift("full-shift-2"), Side::A, 3, Budget::DEFAULT).unwrap();
    assert_eq!(r.descriptor.tag.to_string(), "cuntz(8)");
    assert_eq!(r.descriptor.k0.to_string(), "Z/7");
    assert!(r.descriptor.k1.is_trivial());
    assert_eq!(r.label, "Ā(2,3)");
}

#[test]
fn bowen_franks_of_small_matrices() {
    assert!(bowen_franks(&int(vec![vec![1, 1], vec![1, 0]])).unwrap().is_trivial());
    assert_eq!(bowen_franks(&int(vec![vec![2]])).unwrap(), FPAbelianGroup::trivial());
    assert_eq!(bowen_franks(&int(vec![vec![3]])).unwrap().to_string(), "Z/2");
    assert_eq!(bowen_franks(&int(vec![vec![1]])).unwrap(), FPAbelianGroup::free(1));
    let d = identify_algebra(&int(vec![vec![0, 1], vec![1, 0]])).unwrap();
    assert_eq!(d.tag, AlgebraTag::CircleMatrixSum(vec![2]));
}

#[test]
fn swap_automaton_recovers_the_swap_example() {
    let ca = examples::shift("swap-ca");
    let ex1 = examples::shift("ex1-shift");
    assert_eq!(ca.horizontal(), ex1.horizontal());
    assert_eq!(ca.vertical(), ex1.vertical());
}

#[test]
fn ledrappier_presentations() {
    let printed = examples::shift("ledrappier");
    let doc = examples::document("ledrappier").unwrap();
    let recoded = recode_to_matrix_shift(doc.pattern("ledrappier-pattern").unwrap(), Budget::DEFAULT).unwrap();
    assert_eq!(recoded.shift, printed);
    let via_ca = examples::shift("ledrappier-ca");
    assert_eq!(via_ca.horizontal(), printed.horizontal());
    assert_eq!(via_ca.vertical(), printed.vertical());
    // the four-symbol recoding allows twice as many 2x2 blocks as the binary L-window shift
    assert_eq!(printed.enumerate_blocks(2, 2, Budget::DEFAULT).unwrap().len(), 16);
    let binary = doc.pattern("ledrappier-pattern").unwrap();
    assert_eq!(binary.enumerate_blocks(2, 2, Budget::DEFAULT).unwrap().len(), 8);
}

#[test]
fn golden_mean_block_textile_sizes() {
    let t = textile_of(&examples::shift("golden-mean"), 2, 2, Budget::DEFAULT).unwrap();
    assert_eq!((t.g().vertex_count(), t.g().edge_count()), (3, 7));
    assert_eq!((t.h().vertex_count(), t.h().edge_count()), (2, 3));
    let names: Vec<&str> = t.g().vertices().iter().map(String::as_str).collect();
    assert_eq!(names, ["00", "01", "10"]);
}

#[test]
fn every_builtin_shift_round_trips_through_its_textile() {
    for (name, t) in examples::textiles() {
        if !t.validate().is_valid() {
            continue;
        }
        let x = MatrixShift::from_textile(&t).unwrap();
        assert_eq!(x.size(), t.g().edge_count(), "{name}");
    }
}
