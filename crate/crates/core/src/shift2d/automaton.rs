use std::collections::{BTreeSet, HashMap};

use super::{check_symbol_name, join_symbols, MatrixShift, PatternShift2D};
use crate::error::{Error, Result};
use crate::IntMatrix;

/// Words of the given length allowed by a 0/1 transition matrix, in lexicographic order.
pub fn admissible_words(transitions: &IntMatrix, len: usize) -> Vec<Vec<usize>> {
    let k = transitions.rows();
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut words: Vec<Vec<usize>> = (0..k).map(|s| vec![s]).collect();
    for _ in 1..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                let last = *w.last().unwrap();
                (0..k)
                    .filter(move |&s| transitions[(last, s)] == 1)
                    .map(move |s| {
                        let mut next = w.clone();
                        next.push(s);
                        next
                    })
            })
            .collect();
    }
    words
}

/// A sliding block code on a one-dimensional shift `Y` given by its local
/// rule on `window`-words; successive rows of the two-dimensional shift are
/// successive images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularAutomaton {
    alphabet: Vec<String>,
    transitions: IntMatrix,
    window: usize,
    rule: HashMap<Vec<usize>, usize>,
}

impl CellularAutomaton {
    pub fn new(
        alphabet: Vec<String>,
        transitions: IntMatrix,
        window: usize,
        rule: impl IntoIterator<Item = (Vec<usize>, usize)>,
    ) -> Result<Self> {
        let k = alphabet.len();
        if k == 0 {
            return Err(Error::InvalidAutomaton("empty alphabet".into()));
        }
        for s in &alphabet {
            check_symbol_name(s)?;
        }
        transitions.ensure_square()?;
        transitions.ensure_zero_one()?;
        if transitions.rows() != k {
            return Err(Error::DimensionMismatch("transition matrix does not match alphabet".into()));
        }
        if window == 0 {
            return Err(Error::InvalidAutomaton("window must be at least 1".into()));
        }
        let words: BTreeSet<Vec<usize>> = admissible_words(&transitions, window).into_iter().collect();
        if words.is_empty() {
            return Err(Error::InvalidAutomaton("the one-dimensional shift is empty".into()));
        }
        let mut map = HashMap::new();
        for (word, image) in rule {
            if image >= k || !words.contains(&word) {
                return Err(Error::InvalidAutomaton(format!(
                    "rule {:?} -> {image} is not on an admissible word",
                    word
                )));
            }
            if map.insert(word.clone(), image).is_some() {
                return Err(Error::InvalidAutomaton(format!("rule for {:?} given twice", word)));
            }
        }
        if let Some(missing) = words.iter().find(|w| !map.contains_key(*w)) {
            return Err(Error::InvalidAutomaton(format!(
                "no rule for word {}",
                join_symbols(&alphabet, missing.iter().copied())
            )));
        }
        Ok(CellularAutomaton {
            alphabet,
            transitions,
            window,
            rule: map,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn transitions(&self) -> &IntMatrix {
        &self.transitions
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn image(&self, word: &[usize]) -> Option<usize> {
        self.rule.get(word).copied()
    }

    /// Rules sorted by word.
    pub fn rules(&self) -> Vec<(Vec<usize>, usize)> {
        let mut v: Vec<_> = self.rule.iter().map(|(w, &s)| (w.clone(), s)).collect();
        v.sort();
        v
    }

    /// Matrix shift over the admissible `window`-words: horizontally adjacent
    /// words overlap in `window - 1` symbols, and a word may sit above `u`
    /// iff its first symbol is the image of `u`.
    pub fn to_matrix_shift(&self) -> Result<MatrixShift> {
        let words = admissible_words(&self.transitions, self.window);
        let w = self.window;
        let n = words.len();
        let a = IntMatrix::from_fn(n, n, |x, y| {
            let (u, v) = (&words[x], &words[y]);
            u64::from(u[1..] == v[..w - 1] && self.transitions[(u[w - 1], v[w - 1])] == 1)
        });
        let b = IntMatrix::from_fn(n, n, |x, y| u64::from(words[y][0] == self.rule[&words[x]]));
        let names = words
            .iter()
            .map(|word| join_symbols(&self.alphabet, word.iter().copied()))
            .collect();
        MatrixShift::new(names, a, b)
    }

    /// The space-time diagram over the original alphabet, as a pattern
    /// shift on the window `{(0,0), ..., (v-1, 0), (0, 1)}` with
    /// `v = max(window, 2)`: the bottom row is admissible for `Y` and the
    /// cell above its first symbol is the image of its first `window` symbols.
    pub fn space_time_pattern(&self) -> Result<PatternShift2D> {
        let width = self.window.max(2);
        let mut cells: Vec<(usize, usize)> = (0..width).map(|i| (i, 0)).collect();
        cells.push((0, 1));
        let patterns: Vec<Vec<usize>> = admissible_words(&self.transitions, width)
            .into_iter()
            .map(|mut word| {
                let top = self.rule[&word[..self.window]];
                word.push(top);
                word
            })
            .collect();
        PatternShift2D::new(self.alphabet.clone(), cells, patterns)
    }
}

/// Convenience wrapper matching the free-function style of the other constructions.
pub fn from_cellular_automaton(ca: &CellularAutomaton) -> Result<MatrixShift> {
    ca.to_matrix_shift()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift2d::Budget;

    fn bits() -> Vec<String> {
        vec!["0".into(), "1".into()]
    }

    #[test]
    fn swap_automaton_recovers_ex1_matrices() {
        let ca = CellularAutomaton::new(bits(), IntMatrix::all_ones(2, 2), 1, [(vec![0], 1), (vec![1], 0)]).unwrap();
        let x = from_cellular_automaton(&ca).unwrap();
        assert_eq!(x.horizontal(), &IntMatrix::all_ones(2, 2));
        assert_eq!(x.vertical(), &IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap());
    }

    #[test]
    fn identity_rule_gives_identity() {
        let ca = CellularAutomaton::new(bits(), IntMatrix::all_ones(2, 2), 1, [(vec![0], 0), (vec![1], 1)]).unwrap();
        assert_eq!(ca.to_matrix_shift().unwrap().vertical(), &IntMatrix::identity(2));
    }

    #[test]
    fn xor_rule_gives_ledrappier_matrices() {
        let rule = (0..4).map(|w| (vec![w >> 1, w & 1], (w >> 1) ^ (w & 1)));
        let ca = CellularAutomaton::new(bits(), IntMatrix::all_ones(2, 2), 2, rule).unwrap();
        let x = ca.to_matrix_shift().unwrap();
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
        assert_eq!((x.horizontal(), x.vertical()), (&a, &b));
        assert_eq!(x.alphabet(), ["00", "01", "10", "11"]);
        // three free bottom symbols and a free top-right corner
        assert_eq!(x.enumerate_blocks(2, 2, Budget::DEFAULT).unwrap().len(), 16);
        // the binary space-time diagram has one constraint per 2x2 block
        let p = ca.space_time_pattern().unwrap();
        assert_eq!(p.enumerate_blocks(2, 2, Budget::DEFAULT).unwrap().len(), 8);
    }

    #[test]
    fn rule_must_be_total_on_admissible_words() {
        let golden = IntMatrix::from_rows(vec![vec![1, 1], vec![1, 0]]).unwrap();
        // 11 is not admissible, so three rules suffice; a fourth is rejected
        let three = [(vec![0, 0], 0), (vec![0, 1], 1), (vec![1, 0], 1)];
        assert!(CellularAutomaton::new(bits(), golden.clone(), 2, three.clone()).is_ok());
        let mut four = three.to_vec();
        four.push((vec![1, 1], 0));
        assert!(CellularAutomaton::new(bits(), golden.clone(), 2, four).is_err());
        assert!(CellularAutomaton::new(bits(), golden, 2, three[..2].to_vec()).is_err());
        assert_eq!(admissible_words(&IntMatrix::from_rows(vec![vec![1, 1], vec![1, 0]]).unwrap(), 3).len(), 5);
    }
}
