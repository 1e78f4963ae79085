use num_bigint::BigUint;
use num_traits::{Float, One, ToPrimitive, Zero};

use super::{admissible_words, Block, Budget, MatrixShift};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TileMode {
    Count,
    Witness,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tiling {
    Count(u64),
    Witness(Option<Block>),
    /// Sorted in the reading order of [`MatrixShift::enumerate_blocks`].
    All(Vec<Block>),
}

struct Tiler<'a> {
    x: &'a MatrixShift,
    width: usize,
    height: usize,
    mode: TileMode,
    budget: Budget,
    cells: Vec<usize>,
    count: u64,
    found: Vec<Block>,
}

impl Tiler<'_> {
    /// Fills column by column, each from the bottom up. Returns `true` to stop.
    fn fill(&mut self, k: usize) -> Result<bool> {
        if k == self.width * self.height {
            self.count += 1;
            self.budget
                .check(self.count as usize, || format!("number of {}x{} tilings", self.width, self.height))?;
            match self.mode {
                TileMode::Count => {}
                TileMode::Witness | TileMode::All => {
                    let rows = (0..self.height)
                        .map(|j| self.cells[j * self.width..(j + 1) * self.width].to_vec())
                        .collect();
                    self.found.push(Block::from_rows_bottom_up(rows)?);
                }
            }
            return Ok(self.mode == TileMode::Witness);
        }
        let (i, j) = (k / self.height, k % self.height);
        for s in 0..self.x.size() {
            if i > 0 && !self.x.h_ok(self.cells[j * self.width + i - 1], s) {
                continue;
            }
            if j > 0 && !self.x.v_ok(self.cells[(j - 1) * self.width + i], s) {
                continue;
            }
            self.cells[j * self.width + i] = s;
            if self.fill(k + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Backtracking tiler for a `width x height` rectangle. Independent of
/// [`MatrixShift::enumerate_blocks`], which fills in a different order.
pub fn tile_rectangle(x: &MatrixShift, width: usize, height: usize, mode: TileMode, budget: Budget) -> Result<Tiling> {
    if width == 0 || height == 0 {
        return Err(Error::DimensionMismatch("rectangle sides must be at least 1".into()));
    }
    budget.check(width * height, || format!("rectangle area {width}x{height}"))?;
    let mut t = Tiler {
        x,
        width,
        height,
        mode,
        budget,
        cells: vec![0; width * height],
        count: 0,
        found: Vec::new(),
    };
    t.fill(0)?;
    Ok(match mode {
        TileMode::Count => Tiling::Count(t.count),
        TileMode::Witness => Tiling::Witness(t.found.pop()),
        TileMode::All => {
            let mut all = t.found;
            all.sort_by_cached_key(|b| (0..height).rev().flat_map(|j| b.row(j).to_vec()).collect::<Vec<_>>());
            Tiling::All(all)
        }
    })
}

/// `|B(n, n)|` by a transfer matrix over admissible rows of width `n`.
pub fn count_square_blocks(x: &MatrixShift, n: usize, budget: Budget) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::DimensionMismatch("square side must be at least 1".into()));
    }
    budget.check(n * n, || format!("square area {n}x{n}"))?;
    let rows = admissible_words(x.horizontal(), n);
    budget.check(rows.len(), || format!("number of admissible rows of width {n}"))?;
    let stacks = |lower: &[usize], upper: &[usize]| lower.iter().zip(upper).all(|(&l, &u)| x.v_ok(l, u));
    let successors: Vec<Vec<usize>> = rows
        .iter()
        .map(|lo| (0..rows.len()).filter(|&u| stacks(lo, &rows[u])).collect())
        .collect();
    let mut ways: Vec<BigUint> = vec![BigUint::one(); rows.len()];
    for _ in 1..n {
        let mut next = vec![BigUint::zero(); rows.len()];
        for (r, w) in ways.iter().enumerate() {
            for &u in &successors[r] {
                next[u] += w;
            }
        }
        ways = next;
    }
    Ok(ways.into_iter().sum())
}

/// Base-2 logarithm of a positive integer, exact up to `f64` rounding.
pub(crate) fn log2_biguint(c: &BigUint) -> f64 {
    let bits = c.bits();
    if bits <= 1000 {
        c.to_f64().map_or(f64::INFINITY, f64::log2)
    } else {
        let shift = bits - 64;
        (c >> shift).to_f64().unwrap().log2() + shift as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyRow<F> {
    pub n: usize,
    pub count: BigUint,
    /// `log2(count) / n^2`, negative infinity when there are no blocks.
    pub normalized: F,
}

/// Rows `n = 1..=max_n` of block counts for `n x n` squares.
pub fn entropy_table<F: Float>(x: &MatrixShift, max_n: usize, budget: Budget) -> Result<Vec<EntropyRow<F>>> {
    budget.check(max_n * max_n, || format!("square area {max_n}x{max_n}"))?;
    (1..=max_n)
        .map(|n| {
            let count = count_square_blocks(x, n, budget)?;
            let normalized = if count.is_zero() {
                F::neg_infinity()
            } else {
                F::from(log2_biguint(&count) / (n * n) as f64).ok_or(Error::Overflow)?
            };
            Ok(EntropyRow { n, count, normalized })
        })
        .collect()
}
