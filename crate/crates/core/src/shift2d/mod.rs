//! Two-dimensional matrix shifts `X(A, B)` on the first quadrant.
//!
//! Orientation: the first coordinate grows to the right, the second grows
//! upward. `A(x(i,j), x(i+1,j)) = 1` is the horizontal rule and
//! `B(x(i,j), x(i,j+1)) = 1` the vertical one, so `B` is read
//! `B(lower, upper)`. Blocks store row 0 at the bottom. "Admissible" always
//! means locally admissible: every horizontally or vertically adjacent pair
//! inside the block is allowed.

mod automaton;
mod corner;
mod pattern;
mod rank2;
mod textile_of;
mod tiling;

pub use automaton::{admissible_words, from_cellular_automaton, CellularAutomaton};
pub use corner::corner_fibration_report;
pub use pattern::{recode_to_matrix_shift, PatternShift2D, Recoding};
pub use rank2::{from_rank2, RankTwoData};
pub use textile_of::{dual_textile_of, textile_of};
pub use tiling::{count_square_blocks, entropy_table, tile_rectangle, EntropyRow, TileMode, Tiling};

use std::fmt;

use crate::error::{Error, Result};
use crate::textile::TextileSystem;
use crate::IntMatrix;

/// Cap on the number of enumerated objects (blocks, strips, search states).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_items: usize,
}

impl Budget {
    pub const DEFAULT: Budget = Budget {
        max_items: 1 << 22,
    };

    pub fn new(max_items: usize) -> Self {
        Budget { max_items }
    }

    pub(crate) fn check(&self, count: usize, what: impl FnOnce() -> String) -> Result<()> {
        if count > self.max_items {
            Err(Error::BudgetExceeded {
                what: what(),
                limit: self.max_items,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

pub(crate) fn check_symbol_name(s: &str) -> Result<()> {
    if s.is_empty() || s.chars().any(|c| c.is_whitespace() || matches!(c, '/' | ',' | '#')) {
        return Err(Error::InvalidPattern(format!(
            "symbol `{s}` must be non-empty without whitespace, '/', ',' or '#'"
        )));
    }
    Ok(())
}

/// Joins symbol names into one token, concatenating when every name is a single character.
pub(crate) fn join_symbols(names: &[String], symbols: impl IntoIterator<Item = usize>) -> String {
    let compact = names.iter().all(|s| s.chars().count() == 1);
    let parts: Vec<&str> = symbols.into_iter().map(|s| names[s].as_str()).collect();
    parts.join(if compact { "" } else { "," })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixShift {
    alphabet: Vec<String>,
    horizontal: IntMatrix,
    vertical: IntMatrix,
}

impl MatrixShift {
    pub fn new(alphabet: Vec<String>, horizontal: IntMatrix, vertical: IntMatrix) -> Result<Self> {
        let k = alphabet.len();
        if k == 0 {
            return Err(Error::DimensionMismatch("empty alphabet".into()));
        }
        for s in &alphabet {
            check_symbol_name(s)?;
        }
        for (i, s) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(s) {
                return Err(Error::Duplicate {
                    kind: "symbol",
                    name: s.clone(),
                });
            }
        }
        for m in [&horizontal, &vertical] {
            m.ensure_square()?;
            if m.rows() != k {
                return Err(Error::DimensionMismatch(format!(
                    "{}x{} matrix for an alphabet of {k} symbols",
                    m.rows(),
                    m.cols()
                )));
            }
            m.ensure_zero_one()?;
        }
        Ok(MatrixShift {
            alphabet,
            horizontal,
            vertical,
        })
    }

    /// Alphabet `0..k-1` named by decimal digits.
    pub fn with_numeric_alphabet(horizontal: IntMatrix, vertical: IntMatrix) -> Result<Self> {
        let alphabet = (0..horizontal.rows()).map(|i| i.to_string()).collect();
        Self::new(alphabet, horizontal, vertical)
    }

    pub fn full(k: usize) -> Self {
        Self::with_numeric_alphabet(IntMatrix::all_ones(k, k), IntMatrix::all_ones(k, k)).unwrap()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn horizontal(&self) -> &IntMatrix {
        &self.horizontal
    }

    pub fn vertical(&self) -> &IntMatrix {
        &self.vertical
    }

    pub fn h_ok(&self, left: usize, right: usize) -> bool {
        self.horizontal[(left, right)] == 1
    }

    pub fn v_ok(&self, lower: usize, upper: usize) -> bool {
        self.vertical[(lower, upper)] == 1
    }

    pub fn symbol_id(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == name)
    }

    /// Rows are listed from the top, separated by `/`.
    pub fn block_name(&self, block: &Block) -> String {
        (0..block.height)
            .rev()
            .map(|j| join_symbols(&self.alphabet, block.row(j).iter().copied()))
            .collect::<Vec<_>>()
            .join("/")
    }

    pub fn is_locally_admissible(&self, block: &Block) -> bool {
        (0..block.height).all(|j| {
            (0..block.width).all(|i| {
                let x = block.get(i, j);
                (i + 1 == block.width || self.h_ok(x, block.get(i + 1, j)))
                    && (j + 1 == block.height || self.v_ok(x, block.get(i, j + 1)))
            })
        })
    }

    /// The shift whose symbols are the edges of `G`: `A(e, e') = 1` iff
    /// `q(e) = p(e')` and `B(e, e') = 1` iff `r(e) = s(e')`.
    pub fn from_textile(t: &TextileSystem) -> Result<Self> {
        let g = t.g();
        let n = g.edge_count();
        let a = IntMatrix::from_fn(n, n, |e, f| u64::from(t.q().on_edge(e) == t.p().on_edge(f)));
        let b = IntMatrix::from_fn(n, n, |e, f| u64::from(g.range(e) == g.source(f)));
        Self::new(g.edges().iter().map(|e| e.name.clone()).collect(), a, b)
    }

    /// All locally admissible `width x height` blocks, ordered
    /// lexicographically reading the top row first, left to right.
    pub fn enumerate_blocks(&self, width: usize, height: usize, budget: Budget) -> Result<Vec<Block>> {
        if width == 0 || height == 0 {
            return Err(Error::DimensionMismatch("block sides must be at least 1".into()));
        }
        budget.check(width * height, || format!("block area {width}x{height}"))?;
        let mut out = Vec::new();
        let mut cells = vec![0usize; width * height];
        self.fill_reading_order(width, height, 0, &mut cells, &mut out, budget)?;
        Ok(out)
    }

    fn fill_reading_order(
        &self,
        width: usize,
        height: usize,
        k: usize,
        cells: &mut [usize],
        out: &mut Vec<Block>,
        budget: Budget,
    ) -> Result<()> {
        if k == width * height {
            out.push(Block {
                width,
                height,
                cells: cells.to_vec(),
            });
            return budget.check(out.len(), || format!("number of {width}x{height} blocks"));
        }
        let i = k % width;
        let j = height - 1 - k / width;
        for s in 0..self.size() {
            if i > 0 && !self.h_ok(cells[j * width + i - 1], s) {
                continue;
            }
            if j + 1 < height && !self.v_ok(s, cells[(j + 1) * width + i]) {
                continue;
            }
            cells[j * width + i] = s;
            self.fill_reading_order(width, height, k + 1, cells, out, budget)?;
        }
        Ok(())
    }
}

/// A rectangular array of symbols; `get(i, j)` is column `i`, row `j`, row 0 at the bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    width: usize,
    height: usize,
    cells: Vec<usize>,
}

impl Block {
    /// `rows_bottom_up[j][i]` is the symbol at column `i`, row `j`.
    pub fn from_rows_bottom_up(rows_bottom_up: Vec<Vec<usize>>) -> Result<Self> {
        let height = rows_bottom_up.len();
        let width = rows_bottom_up.first().map_or(0, Vec::len);
        if width == 0 || rows_bottom_up.iter().any(|r| r.len() != width) {
            return Err(Error::DimensionMismatch("ragged or empty block".into()));
        }
        Ok(Block {
            width,
            height,
            cells: rows_bottom_up.into_iter().flatten().collect(),
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[j * self.width + i]
    }

    pub fn row(&self, j: usize) -> &[usize] {
        &self.cells[j * self.width..(j + 1) * self.width]
    }

    pub fn column(&self, i: usize) -> Vec<usize> {
        (0..self.height).map(|j| self.get(i, j)).collect()
    }

    pub fn sub_block(&self, i0: usize, j0: usize, width: usize, height: usize) -> Block {
        let cells = (j0..j0 + height)
            .flat_map(|j| (i0..i0 + width).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        Block {
            width,
            height,
            cells,
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in (0..self.height).rev() {
            let row: Vec<String> = self.row(j).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Which of the two positivity-pattern equalities failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoherenceCheck {
    /// `AB` against `BA`.
    ProductOrder,
    /// `AB^t` against `B^tA`.
    TransposedProducts,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceWitness {
    pub check: CoherenceCheck,
    pub row: usize,
    pub col: usize,
    pub left_positive: bool,
    pub right_positive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coherence {
    pub coherent: bool,
    pub witness: Option<CoherenceWitness>,
}

/// Coherence of a pair of 0/1 matrices: `AB` and `BA` have the same
/// positive entries, and so do `AB^t` and `B^tA`.
pub fn is_coherent(a: &IntMatrix, b: &IntMatrix) -> Result<Coherence> {
    a.ensure_square()?;
    b.ensure_square()?;
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch("matrices of different size".into()));
    }
    a.ensure_zero_one()?;
    b.ensure_zero_one()?;
    if a.has_zero_row() || a.has_zero_column() || b.has_zero_row() || b.has_zero_column() {
        return Err(Error::ZeroRowOrColumn);
    }
    let bt = b.transpose();
    let pairs = [
        (CoherenceCheck::ProductOrder, a.checked_mul(b)?, b.checked_mul(a)?),
        (
            CoherenceCheck::TransposedProducts,
            a.checked_mul(&bt)?,
            bt.checked_mul(a)?,
        ),
    ];
    for (check, left, right) in pairs {
        for row in 0..left.rows() {
            for col in 0..left.cols() {
                let (l, r) = (left[(row, col)] > 0, right[(row, col)] > 0);
                if l != r {
                    return Ok(Coherence {
                        coherent: false,
                        witness: Some(CoherenceWitness {
                            check,
                            row,
                            col,
                            left_positive: l,
                            right_positive: r,
                        }),
                    });
                }
            }
        }
    }
    Ok(Coherence {
        coherent: true,
        witness: None,
    })
}

impl MatrixShift {
    pub fn coherence(&self) -> Result<Coherence> {
        is_coherent(&self.horizontal, &self.vertical)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corner {
    /// `c -A-> d -B-> b`, completed by `a` with `B(c, a)` and `A(a, b)`.
    RightThenUp,
    /// `c -B-> a -A-> b`, completed by `d` with `A(c, d)` and `B(d, b)`.
    UpThenRight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationWitness {
    pub orientation: Corner,
    /// `(c, middle, b)` with `middle` the symbol on the given path.
    pub path: (usize, usize, usize),
    pub completions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTwoCheck {
    pub commute: bool,
    pub unique_factorization: bool,
    pub witness: Option<FactorizationWitness>,
}

/// Commutation of `A` and `B`, and whether every L-shaped path of a
/// `2 x 2` block completes in exactly one way in both orientations.
pub fn rank2_check(x: &MatrixShift) -> RankTwoCheck {
    let (a, b) = (x.horizontal(), x.vertical());
    let commute = a.checked_mul(b).ok() == b.checked_mul(a).ok();
    let k = x.size();
    let mut witness = None;
    'outer: for orientation in [Corner::RightThenUp, Corner::UpThenRight] {
        for c in 0..k {
            for mid in 0..k {
                for top_right in 0..k {
                    let (on_path, completions) = match orientation {
                        Corner::RightThenUp => (
                            x.h_ok(c, mid) && x.v_ok(mid, top_right),
                            (0..k)
                                .filter(|&s| x.v_ok(c, s) && x.h_ok(s, top_right))
                                .count(),
                        ),
                        Corner::UpThenRight => (
                            x.v_ok(c, mid) && x.h_ok(mid, top_right),
                            (0..k)
                                .filter(|&s| x.h_ok(c, s) && x.v_ok(s, top_right))
                                .count(),
                        ),
                    };
                    if on_path && completions != 1 {
                        witness = Some(FactorizationWitness {
                            orientation,
                            path: (c, mid, top_right),
                            completions,
                        });
                        break 'outer;
                    }
                }
            }
        }
    }
    RankTwoCheck {
        commute,
        unique_factorization: witness.is_none(),
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<u64>>) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn golden() -> MatrixShift {
        let a = m(vec![vec![1, 1], vec![1, 0]]);
        MatrixShift::with_numeric_alphabet(a.clone(), a).unwrap()
    }

    #[test]
    fn coherence_examples() {
        let a = m(vec![vec![0, 0, 1], vec![1, 1, 0], vec![1, 1, 0]]);
        let b = IntMatrix::all_ones(3, 3);
        assert!(is_coherent(&a, &b).unwrap().coherent);
        assert_ne!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());

        let c = is_coherent(&m(vec![vec![1, 1], vec![1, 0]]), &m(vec![vec![1, 0], vec![1, 1]])).unwrap();
        assert!(!c.coherent);
        assert_eq!(
            c.witness,
            Some(CoherenceWitness {
                check: CoherenceCheck::ProductOrder,
                row: 1,
                col: 1,
                left_positive: false,
                right_positive: true
            })
        );
        let g = golden();
        assert!(g.coherence().unwrap().coherent);
    }

    #[test]
    fn coherence_preconditions() {
        let z = m(vec![vec![1, 0], vec![1, 0]]);
        assert_eq!(
            is_coherent(&z, &IntMatrix::all_ones(2, 2)).unwrap_err(),
            Error::ZeroRowOrColumn
        );
        assert_eq!(
            is_coherent(&m(vec![vec![2, 0], vec![1, 1]]), &IntMatrix::all_ones(2, 2)).unwrap_err(),
            Error::NotZeroOne
        );
    }

    #[test]
    fn golden_mean_blocks() {
        let g = golden();
        let blocks = g.enumerate_blocks(2, 2, Budget::DEFAULT).unwrap();
        assert_eq!(blocks.len(), 7);
        let names: Vec<String> = blocks.iter().map(|b| g.block_name(b)).collect();
        assert_eq!(names, ["00/00", "00/01", "00/10", "01/00", "01/10", "10/00", "10/01"]);
        assert!(blocks.iter().all(|b| g.is_locally_admissible(b)));
    }

    #[test]
    fn full_shift_block_counts_and_budget() {
        let f = MatrixShift::full(2);
        for (w, h) in [(1, 1), (2, 3), (3, 3)] {
            assert_eq!(f.enumerate_blocks(w, h, Budget::DEFAULT).unwrap().len(), 1 << (w * h));
        }
        assert!(matches!(
            f.enumerate_blocks(3, 3, Budget::new(100)),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(f.enumerate_blocks(0, 2, Budget::DEFAULT).is_err());
    }

    #[test]
    fn rank2_examples() {
        let ex1 = MatrixShift::new(
            vec!["a".into(), "b".into()],
            IntMatrix::all_ones(2, 2),
            m(vec![vec![0, 1], vec![1, 0]]),
        )
        .unwrap();
        let r = rank2_check(&ex1);
        assert!(r.commute && r.unique_factorization);
        let r = rank2_check(&MatrixShift::full(2));
        assert!(r.commute && !r.unique_factorization);
        assert_eq!(r.witness.unwrap().completions, 2);
    }

    #[test]
    fn sub_blocks_and_names() {
        let b = Block::from_rows_bottom_up(vec![vec![0, 1, 1], vec![1, 0, 0]]).unwrap();
        assert_eq!(b.get(1, 1), 0);
        assert_eq!(b.sub_block(1, 0, 2, 2), Block::from_rows_bottom_up(vec![vec![1, 1], vec![0, 0]]).unwrap());
        assert_eq!(b.column(0), vec![0, 1]);
        assert_eq!(MatrixShift::full(2).block_name(&b), "100/011");
    }

    #[test]
    fn malformed_shifts_rejected() {
        let j = IntMatrix::all_ones(2, 2);
        assert!(MatrixShift::new(vec!["a".into(), "a".into()], j.clone(), j.clone()).is_err());
        assert!(MatrixShift::new(vec!["a/b".into(), "c".into()], j.clone(), j.clone()).is_err());
        assert!(MatrixShift::new(vec!["a".into()], j.clone(), j).is_err());
    }
}
