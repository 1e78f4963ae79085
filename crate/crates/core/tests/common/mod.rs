//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_integer::Integer;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use textile_core::{IntMatrix, MatrixShift, Side};

pub fn int(rows: Vec<Vec<u64>>) -> IntMatrix {
    IntMatrix::from_rows(rows).unwrap()
}

/// Strips of length `n` and their adjacency by listing every word over the
/// alphabet and filtering, without Kronecker products.
pub fn brute_force_level(x: &MatrixShift, side: Side, n: usize) -> (Vec<Vec<usize>>, IntMatrix) {
    let k = x.size();
    let mut strips = Vec::new();
    let total = k.pow(n as u32);
    for mut code in 0..total {
        let mut word = vec![0; n];
        for slot in word.iter_mut().rev() {
            *slot = code % k;
            code /= k;
        }
        let ok = word.windows(2).all(|w| match side {
            // columns listed from the top: w[0] sits above w[1]
            Side::A => x.v_ok(w[1], w[0]),
            // rows listed from the left
            Side::B => x.h_ok(w[0], w[1]),
        });
        if ok {
            strips.push(word);
        }
    }
    let m = strips.len();
    let matrix = IntMatrix::from_fn(m, m, |a, b| {
        let adjacent = strips[a].iter().zip(&strips[b]).all(|(&s, &t)| match side {
            Side::A => x.h_ok(s, t),
            Side::B => x.v_ok(s, t),
        });
        u64::from(adjacent)
    });
    (strips, matrix)
}

/// Random `rows x cols` integer matrix with entries in `lo..=hi`.
pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(lo..=hi)).collect()).collect()
}

/// Random 0/1 pair of size `k` with no zero row or column in either matrix.
pub fn random_zero_one_pair(rng: &mut ChaCha8Rng, k: usize) -> (IntMatrix, IntMatrix) {
    let one = |rng: &mut ChaCha8Rng| loop {
        let m = IntMatrix::from_fn(k, k, |_, _| u64::from(rng.gen_bool(0.55)));
        if !m.has_zero_row() && !m.has_zero_column() {
            return m;
        }
    };
    (one(rng), one(rng))
}

fn det_i128(m: &[Vec<i64>]) -> i128 {
    // fraction-free elimination
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..n {
            for j in c + 1..n {
                a[r][j] = (a[c][c] * a[r][j] - a[r][c] * a[c][j]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[c][c];
    }
    sign * a[n - 1][n - 1]
}

pub fn determinant(m: &[Vec<i64>]) -> i128 {
    if m.is_empty() {
        1
    } else {
        det_i128(m)
    }
}

/// Rank over the rationals.
pub fn rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(p, rank);
        for r in rank + 1..a.len() {
            if a[r][c] != 0 {
                let (x, y) = (a[rank][c], a[r][c]);
                let g = x.gcd(&y);
                for j in 0..cols {
                    a[r][j] = a[r][j] * (x / g) - a[rank][j] * (y / g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let minor = |skip_r: usize, skip_c: usize| -> Vec<Vec<i64>> {
        (0..n)
            .filter(|&r| r != skip_r)
            .map(|r| (0..n).filter(|&c| c != skip_c).map(|c| m[r][c]).collect())
            .collect()
    };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                    s * determinant(&minor(j, i))
                })
                .collect()
        })
        .collect()
}

/// Invariant factors (all > 1) of `Z^n / N Z^n` for nonsingular `N`, found
/// by enumerating the cosets and counting elements of each order.
///
/// `v` lies in the column lattice of `N` exactly when `adj(N) v = 0 mod det`,
/// so `v -> adj(N) v mod det` embeds the quotient in `(Z/det)^n`.
pub fn coset_invariant_factors(n: &[Vec<i64>]) -> Vec<u64> {
    let d = determinant(n).unsigned_abs();
    assert!(d > 0, "singular matrix");
    let size = n.len();
    let adj = adjugate(n);
    let d_i = d as i128;
    let generators: Vec<Vec<i128>> = (0..size)
        .map(|j| (0..size).map(|i| adj[i][j].rem_euclid(d_i)).collect())
        .collect();
    let zero = vec![0i128; size];
    let mut seen: HashSet<Vec<i128>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(v) = queue.pop_front() {
        for g in &generators {
            let w: Vec<i128> = v.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(d_i)).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let elements: Vec<Vec<i128>> = seen.into_iter().collect();
    assert_eq!(elements.len() as u128, d as u128, "coset count must equal |det|");

    // number of x with m x = 0, for each divisor m of d
    let divisors: Vec<u64> = (1..=d as u64).filter(|m| (d as u64) % m == 0).collect();
    let killed = |m: u64| {
        elements
            .iter()
            .filter(|v| v.iter().all(|&c| (c * m as i128).rem_euclid(d_i) == 0))
            .count() as u64
    };
    let profile: BTreeMap<u64, u64> = divisors.iter().map(|&m| (m, killed(m))).collect();
    let candidates = divisibility_chains(d as u64, 1);
    let matching: Vec<Vec<u64>> = candidates
        .into_iter()
        .filter(|chain| {
            divisors
                .iter()
                .all(|&m| chain.iter().map(|&c| m.gcd(&c)).product::<u64>() == profile[&m])
        })
        .collect();
    assert_eq!(matching.len(), 1, "order profile must determine the group");
    matching.into_iter().next().unwrap()
}

/// All chains `c1 | c2 | ... ` with every `ci > 1`, first term a multiple of `min`, and product `n`.
fn divisibility_chains(n: u64, min: u64) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for c in 2..=n {
        if n % c == 0 && c % min == 0 {
            for mut rest in divisibility_chains(n / c, c) {
                if rest.iter().all(|r| r % c == 0) {
                    rest.insert(0, c);
                    out.push(rest);
                }
            }
        }
    }
    out
}

/// `I - A` as signed rows.
pub fn identity_minus(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, &x)| i64::from(i == j) - x).collect())
        .collect()
}
