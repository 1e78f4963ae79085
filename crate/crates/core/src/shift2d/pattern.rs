use std::collections::{BTreeSet, HashMap};

use super::{check_symbol_name, join_symbols, Block, Budget, MatrixShift};
use crate::error::{Error, Result};
use crate::IntMatrix;

type Cell = (usize, usize);

/// A shift given by a finite window `F` and the patterns allowed on every
/// translate of it. Patterns list symbols in the declared order of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternShift2D {
    alphabet: Vec<String>,
    window: Vec<Cell>,
    patterns: BTreeSet<Vec<usize>>,
}

impl PatternShift2D {
    pub fn new(
        alphabet: Vec<String>,
        window: Vec<Cell>,
        patterns: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::InvalidPattern("empty alphabet".into()));
        }
        for s in &alphabet {
            check_symbol_name(s)?;
        }
        if window.is_empty() {
            return Err(Error::InvalidPattern("empty window".into()));
        }
        let distinct: BTreeSet<Cell> = window.iter().copied().collect();
        if distinct.len() != window.len() {
            return Err(Error::InvalidPattern("repeated window cell".into()));
        }
        let patterns: BTreeSet<Vec<usize>> = patterns.into_iter().collect();
        if patterns.is_empty() {
            return Err(Error::InvalidPattern("no admissible patterns".into()));
        }
        for p in &patterns {
            if p.len() != window.len() || p.iter().any(|&s| s >= alphabet.len()) {
                return Err(Error::InvalidPattern(format!("malformed pattern {:?}", p)));
            }
        }
        Ok(PatternShift2D {
            alphabet,
            window,
            patterns,
        })
    }

    /// Nearest-neighbour window `{(0,0), (1,0), (0,1)}` with patterns read off `(A, B)`.
    pub fn nearest_neighbour(x: &MatrixShift) -> Result<Self> {
        let k = x.size();
        let mut patterns = Vec::new();
        for c in 0..k {
            for d in 0..k {
                for a in 0..k {
                    if x.h_ok(c, d) && x.v_ok(c, a) {
                        patterns.push(vec![c, d, a]);
                    }
                }
            }
        }
        Self::new(x.alphabet().to_vec(), vec![(0, 0), (1, 0), (0, 1)], patterns)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn window(&self) -> &[Cell] {
        &self.window
    }

    pub fn patterns(&self) -> &BTreeSet<Vec<usize>> {
        &self.patterns
    }

    pub fn allows(&self, pattern: &[usize]) -> bool {
        self.patterns.contains(pattern)
    }

    /// Translates `t` with `F + t` inside `region`.
    fn translates_inside(&self, region: &BTreeSet<Cell>) -> Vec<Cell> {
        let max_x = region.iter().map(|c| c.0).max().unwrap_or(0);
        let max_y = region.iter().map(|c| c.1).max().unwrap_or(0);
        let mut out = Vec::new();
        for ty in 0..=max_y {
            for tx in 0..=max_x {
                if self
                    .window
                    .iter()
                    .all(|&(x, y)| region.contains(&(x + tx, y + ty)))
                {
                    out.push((tx, ty));
                }
            }
        }
        out
    }

    /// Blocks in which every translate of the window that fits is allowed,
    /// in the same order as [`MatrixShift::enumerate_blocks`].
    pub fn enumerate_blocks(&self, width: usize, height: usize, budget: Budget) -> Result<Vec<Block>> {
        if width == 0 || height == 0 {
            return Err(Error::DimensionMismatch("block sides must be at least 1".into()));
        }
        budget.check(width * height, || format!("block area {width}x{height}"))?;
        let region: BTreeSet<Cell> = (0..width)
            .flat_map(|i| (0..height).map(move |j| (i, j)))
            .collect();
        // reading order: top row first, left to right
        let order = |(i, j): Cell| (height - 1 - j) * width + i;
        let mut checks: Vec<Vec<Cell>> = vec![Vec::new(); width * height];
        for t in self.translates_inside(&region) {
            let last = self
                .window
                .iter()
                .map(|&(x, y)| order((x + t.0, y + t.1)))
                .max()
                .unwrap();
            checks[last].push(t);
        }
        let mut cells = vec![0usize; width * height];
        let mut out = Vec::new();
        self.fill(width, height, 0, &checks, &mut cells, &mut out, budget)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn fill(
        &self,
        width: usize,
        height: usize,
        k: usize,
        checks: &[Vec<Cell>],
        cells: &mut [usize],
        out: &mut Vec<Block>,
        budget: Budget,
    ) -> Result<()> {
        if k == width * height {
            let rows = (0..height)
                .map(|j| cells[j * width..(j + 1) * width].to_vec())
                .collect();
            out.push(Block::from_rows_bottom_up(rows)?);
            return budget.check(out.len(), || format!("number of {width}x{height} blocks"));
        }
        let (i, j) = (k % width, height - 1 - k / width);
        let mut pattern = Vec::with_capacity(self.window.len());
        for s in 0..self.alphabet.len() {
            cells[j * width + i] = s;
            let ok = checks[k].iter().all(|&(tx, ty)| {
                pattern.clear();
                pattern.extend(self.window.iter().map(|&(x, y)| cells[(y + ty) * width + x + tx]));
                self.patterns.contains(&pattern)
            });
            if ok {
                self.fill(width, height, k + 1, checks, cells, out, budget)?;
            }
        }
        Ok(())
    }
}

/// Result of recoding a pattern shift as a matrix shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recoding {
    pub shift: MatrixShift,
    /// Cells of the recoding shape: the window's cells in declared order,
    /// then the remaining cells of its down-left closure by row.
    pub shape: Vec<Cell>,
    /// `symbols[s]` is the pattern on `shape` represented by new symbol `s`.
    pub symbols: Vec<Vec<usize>>,
}

/// Down-left closure of the window, with the window's own cells first.
fn staircase(window: &[Cell]) -> Vec<Cell> {
    let mut shape = window.to_vec();
    let mut rest: Vec<Cell> = Vec::new();
    for &(x, y) in window {
        for cy in 0..=y {
            for cx in 0..=x {
                if !shape.contains(&(cx, cy)) && !rest.contains(&(cx, cy)) {
                    rest.push((cx, cy));
                }
            }
        }
    }
    rest.sort_by_key(|&(x, y)| (y, x));
    shape.extend(rest);
    shape
}

/// Higher block presentation: the new symbols are the locally admissible
/// patterns on the down-left closure `D` of the window, and two symbols are
/// horizontally (vertically) compatible when they agree where `D` and its
/// translate by `(1,0)` (`(0,1)`) overlap and every window translate inside
/// the union is allowed.
pub fn recode_to_matrix_shift(ps: &PatternShift2D, budget: Budget) -> Result<Recoding> {
    let shape = staircase(&ps.window);
    let width = shape.iter().map(|c| c.0).max().unwrap() + 1;
    let height = shape.iter().map(|c| c.1).max().unwrap() + 1;
    budget.check(width.max(height), || format!("window bounding box {width}x{height}"))?;
    let region: BTreeSet<Cell> = shape.iter().copied().collect();
    let pos: HashMap<Cell, usize> = shape.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let inner = ps.translates_inside(&region);
    let window_pattern = |get: &dyn Fn(Cell) -> usize, t: Cell| -> Vec<usize> {
        ps.window.iter().map(|&(x, y)| get((x + t.0, y + t.1))).collect()
    };

    // enumerate assignments on the shape in lexicographic order
    let k = ps.alphabet.len();
    let mut symbols: Vec<Vec<usize>> = Vec::new();
    let mut current = vec![0usize; shape.len()];
    loop {
        let get = |c: Cell| current[pos[&c]];
        if inner.iter().all(|&t| ps.allows(&window_pattern(&get, t))) {
            symbols.push(current.clone());
            budget.check(symbols.len(), || "number of recoded symbols".into())?;
        }
        // odometer increment, last position fastest
        let mut i = shape.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            current[i] += 1;
            if current[i] < k {
                break;
            }
            current[i] = 0;
        }
        if current.iter().all(|&s| s == 0) {
            break;
        }
    }
    if symbols.is_empty() {
        return Err(Error::EmptyBlockSet { width, height });
    }

    let compatibility = |step: Cell| -> IntMatrix {
        let shifted: BTreeSet<Cell> = shape.iter().map(|&(x, y)| (x + step.0, y + step.1)).collect();
        let union: BTreeSet<Cell> = region.union(&shifted).copied().collect();
        let straddling: Vec<Cell> = ps
            .translates_inside(&union)
            .into_iter()
            .filter(|&t| {
                let cells: Vec<Cell> = ps.window.iter().map(|&(x, y)| (x + t.0, y + t.1)).collect();
                !cells.iter().all(|c| region.contains(c)) && !cells.iter().all(|c| shifted.contains(c))
            })
            .collect();
        let n = symbols.len();
        IntMatrix::from_fn(n, n, |a, b| {
            let (lo, hi) = (&symbols[a], &symbols[b]);
            let get = |c: Cell| -> usize {
                if let Some(&i) = pos.get(&c) {
                    lo[i]
                } else {
                    hi[pos[&(c.0 - step.0, c.1 - step.1)]]
                }
            };
            let overlap_ok = shape.iter().all(|&c| match pos.get(&(c.0 + step.0, c.1 + step.1)) {
                Some(&i) => lo[i] == hi[pos[&c]],
                None => true,
            });
            u64::from(overlap_ok && straddling.iter().all(|&t| ps.allows(&window_pattern(&get, t))))
        })
    };
    let a = compatibility((1, 0));
    let b = compatibility((0, 1));
    let names = symbols
        .iter()
        .map(|s| join_symbols(&ps.alphabet, s.iter().copied()))
        .collect();
    Ok(Recoding {
        shift: MatrixShift::new(names, a, b)?,
        shape,
        symbols,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ledrappier() -> PatternShift2D {
        let patterns = (0..4).map(|w: usize| {
            let (c, d) = (w >> 1, w & 1);
            vec![c, d, c ^ d]
        });
        PatternShift2D::new(vec!["0".into(), "1".into()], vec![(0, 0), (1, 0), (0, 1)], patterns).unwrap()
    }

    #[test]
    fn ledrappier_recodes_to_printed_pair() {
        let r = recode_to_matrix_shift(&ledrappier(), Budget::DEFAULT).unwrap();
        assert_eq!(r.shape, vec![(0, 0), (1, 0), (0, 1)]);
        assert_eq!(r.shift.alphabet(), ["000", "011", "101", "110"]);
        let a = IntMatrix::from_rows(vec![
            vec![1, 1, 0, 0],
            vec![0, 0, 1, 1],
            vec![1, 1, 0, 0],
            vec![0, 0, 1, 1],
        ])
        .unwrap();
        let b = IntMatrix::from_rows(vec![
            vec![1, 1, 0, 0],
            vec![0, 0, 1, 1],
            vec![0, 0, 1, 1],
            vec![1, 1, 0, 0],
        ])
        .unwrap();
        assert_eq!(r.shift.horizontal(), &a);
        assert_eq!(r.shift.vertical(), &b);
    }

    #[test]
    fn ledrappier_has_eight_2x2_blocks() {
        assert_eq!(ledrappier().enumerate_blocks(2, 2, Budget::DEFAULT).unwrap().len(), 8);
    }

    #[test]
    fn all_patterns_give_full_shift() {
        let all = (0..8).map(|w: usize| vec![w >> 2, (w >> 1) & 1, w & 1]);
        let ps = PatternShift2D::new(vec!["0".into(), "1".into()], vec![(0, 0), (1, 0), (0, 1)], all).unwrap();
        let r = recode_to_matrix_shift(&ps, Budget::DEFAULT).unwrap();
        assert_eq!(r.symbols.len(), 8);
        // the recoded shift is nearest-neighbour overlap only
        assert!(r.shift.horizontal().entries().iter().filter(|&&x| x == 1).count() == 32);
    }

    #[test]
    fn staircase_closure() {
        assert_eq!(staircase(&[(1, 1)]), vec![(1, 1), (0, 0), (1, 0), (0, 1)]);
        assert_eq!(staircase(&[(0, 0), (2, 0)]), vec![(0, 0), (2, 0), (1, 0)]);
    }

    #[test]
    fn invalid_pattern_shifts() {
        let bits = vec!["0".to_string(), "1".to_string()];
        assert!(PatternShift2D::new(bits.clone(), vec![], [vec![]]).is_err());
        assert!(PatternShift2D::new(bits.clone(), vec![(0, 0)], Vec::<Vec<usize>>::new()).is_err());
        assert!(PatternShift2D::new(bits.clone(), vec![(0, 0), (0, 0)], [vec![0, 0]]).is_err());
        assert!(PatternShift2D::new(bits, vec![(0, 0)], [vec![2]]).is_err());
    }
}
