//! Path lifting for `T(2, 2)` read off directly from the symbols: each
//! lifting question is whether a corner of a `2 x 2` block can be filled.
//!
//! With the block written `a b / c d` (top row first), `G(2, 2)` has rows as
//! vertices and `H = G(1, 2)` has columns as edges:
//!
//! | morphism, end | vertex | column | free corner |
//! |---------------|--------|--------|-------------|
//! | p, source     | `c d`  | `a/c`  | `b`         |
//! | p, range      | `a b`  | `a/c`  | `d`         |
//! | q, source     | `c d`  | `b/d`  | `a`         |
//! | q, range      | `a b`  | `b/d`  | `c`         |

use super::{join_symbols, Budget, MatrixShift};
use crate::error::{Error, Result};
use crate::textile::{LiftDirection, LiftReport, MorphismLifting, Which};

pub fn corner_fibration_report(x: &MatrixShift) -> Result<LiftReport> {
    if x.enumerate_blocks(2, 2, Budget::DEFAULT)?.is_empty() {
        return Err(Error::EmptyBlockSet {
            width: 2,
            height: 2,
        });
    }
    let k = x.size();
    let names = x.alphabet();
    // admissible rows (left, right) and columns (top, bottom), in block order
    let rows: Vec<(usize, usize)> = (0..k)
        .flat_map(|l| (0..k).map(move |r| (l, r)))
        .filter(|&(l, r)| x.h_ok(l, r))
        .collect();
    let columns: Vec<(usize, usize)> = (0..k)
        .flat_map(|t| (0..k).map(move |b| (t, b)))
        .filter(|&(t, b)| x.v_ok(b, t))
        .collect();
    let row_name = |(l, r): (usize, usize)| join_symbols(names, [l, r]);
    let col_name = |(t, b): (usize, usize)| format!("{}/{}", names[t], names[b]);

    let lifting = |which: Which| {
        let mut tallies = Vec::new();
        for direction in [LiftDirection::Source, LiftDirection::Range] {
            for &row in &rows {
                for &col in &columns {
                    // the row is the bottom (source) or top (range) of the block,
                    // the column its left (p) or right (q) side
                    let completions = match (which, direction) {
                        (Which::P, LiftDirection::Source) => {
                            let ((c, d), (a, c2)) = (row, col);
                            if c2 != c {
                                continue;
                            }
                            (0..k).filter(|&b| x.h_ok(a, b) && x.v_ok(d, b)).count()
                        }
                        (Which::P, LiftDirection::Range) => {
                            let ((a, b), (a2, c)) = (row, col);
                            if a2 != a {
                                continue;
                            }
                            (0..k).filter(|&d| x.h_ok(c, d) && x.v_ok(d, b)).count()
                        }
                        (Which::Q, LiftDirection::Source) => {
                            let ((c, d), (b, d2)) = (row, col);
                            if d2 != d {
                                continue;
                            }
                            (0..k).filter(|&a| x.h_ok(a, b) && x.v_ok(c, a)).count()
                        }
                        (Which::Q, LiftDirection::Range) => {
                            let ((a, b), (b2, d)) = (row, col);
                            if b2 != b {
                                continue;
                            }
                            (0..k).filter(|&c| x.h_ok(c, d) && x.v_ok(c, a)).count()
                        }
                    };
                    tallies.push((direction, row_name(row), col_name(col), completions));
                }
            }
        }
        MorphismLifting::from_counts(tallies)
    };
    Ok(LiftReport {
        p: lifting(Which::P),
        q: lifting(Which::Q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift2d::textile_of;
    use crate::IntMatrix;

    #[test]
    fn full_shift_has_two_completions_everywhere() {
        let rep = corner_fibration_report(&MatrixShift::full(2)).unwrap();
        for m in [&rep.p, &rep.q] {
            assert!(m.is_fibration());
            assert!(!m.s_lift_unique && !m.r_lift_unique);
            assert!(m.failure_witnesses.iter().all(|w| w.lifts == 2));
        }
    }

    #[test]
    fn single_symbol_is_a_covering() {
        let rep = corner_fibration_report(&MatrixShift::full(1)).unwrap();
        assert!(rep.p.is_covering() && rep.q.is_covering());
    }

    #[test]
    fn agrees_with_textile_route_on_golden_mean() {
        let a = IntMatrix::from_rows(vec![vec![1, 1], vec![1, 0]]).unwrap();
        let x = MatrixShift::with_numeric_alphabet(a.clone(), a).unwrap();
        let direct = corner_fibration_report(&x).unwrap();
        let via = textile_of(&x, 2, 2, Budget::DEFAULT).unwrap().lifting_report();
        assert_eq!(direct, via);
    }
}
