//! Strip towers of a matrix shift.
//!
//! Side A restricts the shift to vertical strips: level `n` has the columns
//! of height `n` as symbols and the horizontal rule between them as `A_n`.
//! Side B does the same with horizontal strips and `B_n`. Columns are listed
//! from the top symbol downward and rows from the left symbol rightward;
//! strips are ordered lexicographically in that listing.

use std::fmt;

use crate::error::{Error, Result};
use crate::shift2d::{admissible_words, Budget, MatrixShift};
use crate::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Side::A),
            "B" | "b" => Ok(Side::B),
            _ => Err(Error::Parse {
                line: 0,
                column: 0,
                message: format!("side must be A or B, not `{s}`"),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    pub side: Side,
    pub n: usize,
    /// Strips in order; each lists its symbols from the top (side A) or from the left (side B).
    pub strips: Vec<Vec<usize>>,
    pub matrix: IntMatrix,
    /// Retained indices of the Kronecker parent, for `n >= 2`.
    pub parent_indices: Option<Vec<usize>>,
    /// Dimension of the Kronecker parent, equal to `k` at level 1.
    pub parent_size: usize,
}

impl TowerLevel {
    pub fn first(x: &MatrixShift, side: Side) -> Self {
        let matrix = match side {
            Side::A => x.horizontal().clone(),
            Side::B => x.vertical().clone(),
        };
        TowerLevel {
            side,
            n: 1,
            strips: (0..x.size()).map(|s| vec![s]).collect(),
            parent_size: matrix.rows(),
            matrix,
            parent_indices: None,
        }
    }

    pub fn k(&self) -> usize {
        self.strips.len()
    }

    /// Kronecker indices removed when this level was built.
    pub fn deleted_indices(&self) -> Vec<usize> {
        let Some(kept) = &self.parent_indices else {
            return Vec::new();
        };
        let mut it = kept.iter().peekable();
        (0..self.parent_size)
            .filter(|i| {
                if it.peek() == Some(&i) {
                    it.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// Whether the deleted indices are exactly the trailing `k k_{n-1} - k_n` ones.
    pub fn deletes_tail(&self) -> bool {
        let deleted = self.deleted_indices();
        deleted.iter().copied().eq(self.parent_size - deleted.len()..self.parent_size)
    }

    pub fn strip_name(&self, x: &MatrixShift, i: usize) -> String {
        let names = x.alphabet();
        let parts: Vec<&str> = self.strips[i].iter().map(|&s| names[s].as_str()).collect();
        match self.side {
            Side::A => parts.join("/"),
            Side::B => {
                if names.iter().all(|s| s.chars().count() == 1) {
                    parts.concat()
                } else {
                    parts.join(",")
                }
            }
        }
    }

    fn check(&self, x: &MatrixShift) -> Result<()> {
        let k = self.k();
        let bad = |msg: String| Err(Error::DimensionMismatch(format!("malformed tower level: {msg}")));
        if self.matrix.rows() != k || self.matrix.cols() != k {
            return bad(format!("{} strips but a {}x{} matrix", k, self.matrix.rows(), self.matrix.cols()));
        }
        if self.n == 0 || self.strips.iter().any(|s| s.len() != self.n || s.iter().any(|&c| c >= x.size())) {
            return bad(format!("strips are not words of length {} over the alphabet", self.n));
        }
        if self.strips.windows(2).any(|w| w[0] >= w[1]) {
            return bad("strips are not strictly increasing".into());
        }
        Ok(())
    }
}

/// Sizes of the strip blocks by their first listed symbol: column sums of
/// `B^{n-1}` for side A, row sums of `A^{n-1}` for side B.
fn leading_symbol_counts(x: &MatrixShift, side: Side, n: usize) -> Result<Vec<u64>> {
    let exp = u32::try_from(n - 1).map_err(|_| Error::Overflow)?;
    Ok(match side {
        Side::A => x.vertical().pow(exp)?.column_sums(),
        Side::B => x.horizontal().pow(exp)?.row_sums(),
    })
}

/// One step of the tower: the principal submatrix of `M ⊗ M_n` where `M` is
/// `A` (side A) or `B` (side B). Index `j k_n + h` stands for strip `h`
/// extended by symbol `j` on top (side A) or on the left (side B), and is
/// deleted when that extension breaks the other rule. The deletion set is
/// computed both from the symbols and from the prefix-sum index arithmetic;
/// a disagreement is an error.
pub fn next_level(x: &MatrixShift, level: &TowerLevel, budget: Budget) -> Result<TowerLevel> {
    level.check(x)?;
    let (k, kn, n) = (x.size(), level.k(), level.n);
    budget.check((k * kn).saturating_mul(k * kn), || format!("Kronecker parent of level {}", n + 1))?;
    let (rule, base) = match level.side {
        Side::A => (x.vertical(), x.horizontal()),
        Side::B => (x.horizontal(), x.vertical()),
    };
    // semantic rule: keep (j; strip) iff the new symbol may sit above / left of the strip's first symbol
    let allowed = |j: usize, first: usize| match level.side {
        Side::A => rule[(first, j)] == 1,
        Side::B => rule[(j, first)] == 1,
    };
    // literal rule: the first symbol of strip h is the block i with prefix(i) <= h < prefix(i+1)
    let counts = leading_symbol_counts(x, level.side, n)?;
    let total: u64 = counts.iter().sum();
    if total != kn as u64 {
        return Err(Error::DimensionMismatch(format!(
            "level {n} has {kn} strips, expected {total}"
        )));
    }
    let mut first_of = Vec::with_capacity(kn);
    for (i, &c) in counts.iter().enumerate() {
        first_of.extend(std::iter::repeat(i).take(c as usize));
    }
    // side B reads the side-A formula with B replaced by the transpose of A
    let literal_rule = match level.side {
        Side::A => rule.clone(),
        Side::B => rule.transpose(),
    };
    let literal_keep = |j: usize, h: usize| literal_rule[(first_of[h], j)] != 0;

    let mut keep = Vec::new();
    let mut strips = Vec::new();
    for j in 0..k {
        for (h, strip) in level.strips.iter().enumerate() {
            let m = j * kn + h;
            let semantic = allowed(j, strip[0]);
            if semantic != literal_keep(j, h) {
                return Err(Error::DeletionRuleMismatch { level: n + 1, index: m });
            }
            if semantic {
                keep.push(m);
                let mut s = Vec::with_capacity(n + 1);
                s.push(j);
                s.extend_from_slice(strip);
                strips.push(s);
            }
        }
    }
    budget.check(keep.len(), || format!("strips at level {}", n + 1))?;
    let matrix = base.kronecker(&level.matrix).principal_submatrix(&keep);
    Ok(TowerLevel {
        side: level.side,
        n: n + 1,
        strips,
        matrix,
        parent_indices: Some(keep),
        parent_size: k * kn,
    })
}

pub fn next_a(x: &MatrixShift, level: &TowerLevel, budget: Budget) -> Result<TowerLevel> {
    if level.side != Side::A {
        return Err(Error::DimensionMismatch("next_a expects a side-A level".into()));
    }
    next_level(x, level, budget)
}

pub fn next_b(x: &MatrixShift, level: &TowerLevel, budget: Budget) -> Result<TowerLevel> {
    if level.side != Side::B {
        return Err(Error::DimensionMismatch("next_b expects a side-B level".into()));
    }
    next_level(x, level, budget)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub side: Side,
    pub levels: Vec<TowerLevel>,
    /// `None` when coherence is undefined (a zero row or column).
    pub coherent: Option<bool>,
    /// For each level `n >= 2`, whether its deletions were the trailing indices.
    pub tail_deletion: Vec<bool>,
}

impl Tower {
    pub fn k_sequence(&self) -> Vec<usize> {
        self.levels.iter().map(TowerLevel::k).collect()
    }

    pub fn warnings(&self) -> Vec<String> {
        match self.coherent {
            Some(true) => Vec::new(),
            Some(false) => vec!["the pair (A, B) is not coherent; levels are still well defined".into()],
            None => vec!["coherence is undefined for matrices with a zero row or column".into()],
        }
    }
}

/// Levels `1..=levels` on the given side.
pub fn tower(x: &MatrixShift, side: Side, levels: usize, budget: Budget) -> Result<Tower> {
    if levels == 0 {
        return Err(Error::DimensionMismatch("a tower needs at least one level".into()));
    }
    let coherent = x.coherence().ok().map(|c| c.coherent);
    let mut out = vec![TowerLevel::first(x, side)];
    let mut tail_deletion = Vec::new();
    for _ in 1..levels {
        let next = next_level(x, out.last().unwrap(), budget)?;
        tail_deletion.push(next.deletes_tail());
        out.push(next);
    }
    Ok(Tower {
        side,
        levels: out,
        coherent,
        tail_deletion,
    })
}

/// Level `n` built directly from the strips: columns are `B`-paths and rows
/// `A`-paths, and two strips are adjacent when every pair of corresponding
/// symbols is adjacent under the other matrix.
pub fn oracle_level(x: &MatrixShift, side: Side, n: usize, budget: Budget) -> Result<TowerLevel> {
    if n == 0 {
        return Err(Error::DimensionMismatch("strip length must be at least 1".into()));
    }
    budget.check(n, || "strip length".into())?;
    let (paths, adjacency) = match side {
        // listed from the top: consecutive symbols (upper, lower) satisfy B(lower, upper)
        Side::A => (x.vertical().transpose(), x.horizontal()),
        Side::B => (x.horizontal().clone(), x.vertical()),
    };
    let count: u64 = leading_symbol_counts(x, side, n)?.iter().sum();
    budget.check(count as usize, || format!("strips of length {n}"))?;
    let strips = admissible_words(&paths, n);
    let k = strips.len();
    let matrix = IntMatrix::from_fn(k, k, |a, b| {
        u64::from(strips[a].iter().zip(&strips[b]).all(|(&s, &t)| adjacency[(s, t)] == 1))
    });
    Ok(TowerLevel {
        side,
        n,
        strips,
        parent_size: k,
        matrix,
        parent_indices: None,
    })
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
    fn golden_mean_second_level() {
        let t = tower(&golden(), Side::A, 2, Budget::DEFAULT).unwrap();
        assert_eq!(t.levels[1].matrix, m(vec![vec![1, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]));
        assert_eq!(t.levels[1].parent_indices, Some(vec![0, 1, 2]));
        assert_eq!(t.levels[1].strip_name(&golden(), 2), "1/0");
        assert_eq!(t.tail_deletion, vec![true]);
        assert_eq!(t.coherent, Some(true));
    }

    #[test]
    fn fibonacci_sizes() {
        for side in [Side::A, Side::B] {
            let t = tower(&golden(), side, 7, Budget::DEFAULT).unwrap();
            assert_eq!(t.k_sequence(), vec![2, 3, 5, 8, 13, 21, 34]);
        }
    }

    #[test]
    fn oracle_matches_on_golden_mean() {
        let t = tower(&golden(), Side::B, 5, Budget::DEFAULT).unwrap();
        for level in &t.levels {
            let o = oracle_level(&golden(), Side::B, level.n, Budget::DEFAULT).unwrap();
            assert_eq!((&o.strips, &o.matrix), (&level.strips, &level.matrix));
        }
    }

    #[test]
    fn deleted_indices_complement_parent() {
        let t = tower(&golden(), Side::A, 3, Budget::DEFAULT).unwrap();
        assert_eq!(t.levels[2].deleted_indices(), vec![5]);
        assert!(t.levels[0].deleted_indices().is_empty());
    }

    #[test]
    fn malformed_levels_are_rejected() {
        let g = golden();
        let mut level = TowerLevel::first(&g, Side::A);
        level.matrix = IntMatrix::identity(3);
        assert!(next_a(&g, &level, Budget::DEFAULT).is_err());
        assert!(next_b(&g, &TowerLevel::first(&g, Side::A), Budget::DEFAULT).is_err());
        assert!(tower(&g, Side::A, 0, Budget::DEFAULT).is_err());
    }

    #[test]
    fn budget_stops_growth() {
        assert!(matches!(
            tower(&MatrixShift::full(2), Side::A, 12, Budget::new(1 << 12)),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
