//! Smith normal form over the integers and the invariants read off it:
//! Bowen–Franks groups, Cuntz–Krieger K-theory, simplicity flags and an
//! identification tag for the graph algebra of a 0/1 matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::shift2d::{Budget, MatrixShift};
use crate::tower::{tower, Side};
use crate::{IntMatrix, ZMatrix};

/// Scalars the elimination can run over; fixed-width types report overflow.
pub trait SnfScalar: Integer + Signed + Clone + CheckedAdd + CheckedSub + CheckedMul {}

impl<T: Integer + Signed + Clone + CheckedAdd + CheckedSub + CheckedMul> SnfScalar for T {}

/// `U M V = D` with `U`, `V` unimodular and `D` diagonal with `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition<T> {
    pub u: Matrix<T>,
    pub v: Matrix<T>,
    pub d: Matrix<T>,
}

impl<T: Clone + Zero> SmithDecomposition<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Elimination<T> {
    a: Vec<Vec<T>>,
    u: Option<Vec<Vec<T>>>,
    /// Stored by rows: `v[r][c]`.
    v: Option<Vec<Vec<T>>>,
}

fn identity_rows<T: Zero + One + Clone>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

/// `x - q y`, or `None` on overflow.
fn sub_mul<T: SnfScalar>(x: &T, q: &T, y: &T) -> Option<T> {
    x.checked_sub(&q.checked_mul(y)?)
}

impl<T: SnfScalar> Elimination<T> {
    fn new(a: Vec<Vec<T>>, cols: usize, track: bool) -> Self {
        let rows = a.len();
        Elimination {
            u: track.then(|| identity_rows(rows)),
            v: track.then(|| identity_rows(cols)),
            a,
        }
    }

    /// `row_i -= q row_t`, on `A` from column `from` on.
    fn row_sub(&mut self, i: usize, t: usize, q: &T, from: usize) -> Option<()> {
        fn apply<T: SnfScalar>(rows: &mut [Vec<T>], i: usize, t: usize, q: &T, from: usize) -> Option<()> {
            let pivot = rows[t][from..].to_vec();
            for (x, y) in rows[i][from..].iter_mut().zip(&pivot) {
                if !y.is_zero() {
                    *x = sub_mul(x, q, y)?;
                }
            }
            Some(())
        }
        apply(&mut self.a, i, t, q, from)?;
        if let Some(u) = self.u.as_mut() {
            apply(u, i, t, q, 0)?;
        }
        Some(())
    }

    /// `col_j -= q col_t`.
    fn col_sub(&mut self, j: usize, t: usize, q: &T, from: usize) -> Option<()> {
        for row in self.a.iter_mut().skip(from) {
            if !row[t].is_zero() {
                row[j] = sub_mul(&row[j], q, &row[t])?;
            }
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                if !row[t].is_zero() {
                    row[j] = sub_mul(&row[j], q, &row[t])?;
                }
            }
        }
        Some(())
    }

    fn swap_rows(&mut self, i: usize, t: usize) {
        self.a.swap(i, t);
        if let Some(u) = self.u.as_mut() {
            u.swap(i, t);
        }
    }

    fn swap_cols(&mut self, j: usize, t: usize) {
        for row in self.a.iter_mut() {
            row.swap(j, t);
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                row.swap(j, t);
            }
        }
    }

    fn negate_row(&mut self, t: usize) -> Option<()> {
        for rows in [Some(&mut self.a), self.u.as_mut()].into_iter().flatten() {
            for x in rows[t].iter_mut() {
                *x = T::zero().checked_sub(x)?;
            }
        }
        Some(())
    }

    fn run(mut self) -> Option<Self> {
        let m = self.a.len();
        let n = self.a.first().map_or(0, Vec::len);
        for t in 0..m.min(n) {
            // smallest nonzero entry of the remaining submatrix
            let mut best: Option<(usize, usize)> = None;
            'search: for i in t..m {
                for j in t..n {
                    let x = &self.a[i][j];
                    if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                        best = Some((i, j));
                        if x.abs().is_one() {
                            break 'search;
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            // a positive pivot keeps floor-division remainders in [0, pivot)
            if self.a[t][t].is_negative() {
                self.negate_row(t)?;
            }
            loop {
                let mut changed = false;
                for i in t + 1..m {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.row_sub(i, t, &q, t)?;
                        if !self.a[i][t].is_zero() {
                            self.swap_rows(i, t);
                            changed = true;
                        }
                    }
                }
                for j in t + 1..n {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.col_sub(j, t, &q, t)?;
                        if !self.a[t][j].is_zero() {
                            self.swap_cols(j, t);
                            changed = true;
                        }
                    }
                }
                if changed {
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad_row = (t + 1..m).find(|&i| self.a[i][t + 1..].iter().any(|x| !x.is_multiple_of(&p)));
                match bad_row {
                    Some(i) => {
                        // row_t += row_i brings a non-multiple into row t
                        self.row_sub(t, i, &-T::one(), t)?;
                    }
                    None => break,
                }
            }
        }
        Some(self)
    }
}

fn to_rows<T: Clone>(m: &Matrix<T>) -> Vec<Vec<T>> {
    m.row_vecs()
}

fn from_rows<T>(rows: Vec<Vec<T>>, cols: usize) -> Matrix<T> {
    let r = rows.len();
    Matrix::new(r, cols, rows.into_iter().flatten().collect()).unwrap()
}

/// Smith normal form over `T`, or `None` if an intermediate value overflows `T`.
pub fn smith_normal_form_in<T: SnfScalar>(m: &Matrix<T>) -> Option<SmithDecomposition<T>> {
    let e = Elimination::new(to_rows(m), m.cols(), true).run()?;
    Some(SmithDecomposition {
        u: from_rows(e.u.unwrap(), m.rows()),
        v: from_rows(e.v.unwrap(), m.cols()),
        d: from_rows(e.a, m.cols()),
    })
}

fn diagonal_in<T: SnfScalar>(m: &Matrix<T>) -> Option<Vec<T>> {
    let e = Elimination::new(to_rows(m), m.cols(), false).run()?;
    Some((0..m.rows().min(m.cols())).map(|i| e.a[i][i].clone()).collect())
}

fn to_i64(m: &ZMatrix) -> Option<Matrix<i64>> {
    let data: Option<Vec<i64>> = m.entries().iter().map(ToPrimitive::to_i64).collect();
    Matrix::new(m.rows(), m.cols(), data?).ok()
}

fn widen(m: &Matrix<i64>) -> ZMatrix {
    m.map(|&x| BigInt::from(x))
}

/// Smith normal form with exact arithmetic: machine integers first, arbitrary
/// precision when they overflow. The decomposition is verified before it is returned.
pub fn smith_normal_form(m: &ZMatrix) -> Result<SmithDecomposition<BigInt>> {
    let s = to_i64(m)
        .and_then(|small| smith_normal_form_in(&small))
        .map(|s| SmithDecomposition {
            u: widen(&s.u),
            v: widen(&s.v),
            d: widen(&s.d),
        })
        .unwrap_or_else(|| smith_normal_form_in(m).expect("arbitrary precision cannot overflow"));
    verify(&s, m)?;
    Ok(s)
}

/// Diagonal of the Smith form without the transforms.
pub fn invariant_factors(m: &ZMatrix) -> Vec<BigInt> {
    to_i64(m)
        .and_then(|small| diagonal_in(&small))
        .map(|d| d.into_iter().map(BigInt::from).collect())
        .unwrap_or_else(|| diagonal_in(m).expect("arbitrary precision cannot overflow"))
}

/// Checks `U M V = D`, unimodularity, diagonal shape and the divisibility chain.
pub fn verify(s: &SmithDecomposition<BigInt>, m: &ZMatrix) -> Result<()> {
    let fail = |msg: &str| Err(Error::SmithCheck(msg.into()));
    if s.u.checked_mul(m)?.checked_mul(&s.v)? != s.d {
        return fail("U M V != D");
    }
    if !determinant(&s.u)?.abs().is_one() || !determinant(&s.v)?.abs().is_one() {
        return fail("transform is not unimodular");
    }
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j && !s.d[(i, j)].is_zero() {
                return fail("D is not diagonal");
            }
        }
    }
    let diag = s.diagonal();
    if diag.iter().any(Signed::is_negative) {
        return fail("negative diagonal entry");
    }
    if diag.windows(2).any(|w| !(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero())) {
        return fail("diagonal is not a divisibility chain");
    }
    Ok(())
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &ZMatrix) -> Result<BigInt> {
    m.ensure_square()?;
    let n = m.rows();
    let mut a = m.row_vecs();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(BigInt::zero());
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = x / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] })
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_r`
/// with `t_1 | t_2 | ... | t_r` and every `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FPAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FPAbelianGroup {
    pub fn trivial() -> Self {
        FPAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FPAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Cokernel of a matrix with `rows` rows, from its Smith diagonal.
    pub fn cokernel(rows: usize, diagonal: &[BigInt]) -> Self {
        let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
        FPAbelianGroup {
            free_rank: rows - rank,
            torsion: diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl fmt::Display for FPAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

fn to_z(a: &IntMatrix) -> ZMatrix {
    a.map(|&x| BigInt::from(x))
}

/// `I - M` over the integers.
fn identity_minus(a: &IntMatrix) -> ZMatrix {
    let mut m = to_z(a).map(|x| -x);
    for i in 0..a.rows() {
        m[(i, i)] += 1;
    }
    m
}

/// `BF(A) = Z^k / (I - A) Z^k`.
pub fn bowen_franks(a: &IntMatrix) -> Result<FPAbelianGroup> {
    a.ensure_square()?;
    Ok(FPAbelianGroup::cokernel(a.rows(), &invariant_factors(&identity_minus(a))))
}

/// `K0 = coker(I - A^t)` and `K1 = ker(I - A^t)`, which is free.
pub fn ck_k_theory(a: &IntMatrix) -> Result<(FPAbelianGroup, FPAbelianGroup)> {
    a.ensure_square()?;
    a.ensure_zero_one()?;
    let k0 = FPAbelianGroup::cokernel(a.rows(), &invariant_factors(&identity_minus(&a.transpose())));
    // for a square matrix the nullity equals the corank
    let k1 = FPAbelianGroup::free(k0.free_rank);
    Ok((k0, k1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplicityFlags {
    pub irreducible: bool,
    pub permutation: bool,
    pub simple_purely_infinite: bool,
}

pub fn simplicity_flags(a: &IntMatrix) -> Result<SimplicityFlags> {
    a.ensure_zero_one()?;
    let irreducible = a.is_irreducible()?;
    let permutation = a.is_permutation()?;
    Ok(SimplicityFlags {
        irreducible,
        permutation,
        simple_purely_infinite: irreducible && !permutation,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraTag {
    /// `O_N`, from the `N x N` all-ones matrix.
    Cuntz(usize),
    CuntzKrieger,
    /// Direct sum of `M_L(C(T))` over the cycle lengths `L` of a permutation matrix.
    CircleMatrixSum(Vec<usize>),
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraTag::Cuntz(n) => write!(f, "cuntz({n})"),
            AlgebraTag::CuntzKrieger => f.write_str("cuntz_krieger(generic)"),
            AlgebraTag::CircleMatrixSum(ls) => {
                let ls: Vec<String> = ls.iter().map(ToString::to_string).collect();
                write!(f, "circle_matrix_sum({})", ls.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDescriptor {
    pub matrix: IntMatrix,
    pub flags: SimplicityFlags,
    pub k0: FPAbelianGroup,
    pub k1: FPAbelianGroup,
    pub tag: AlgebraTag,
}

/// Flags, K-theory and a structural tag for the graph algebra of `A`.
pub fn identify_algebra(a: &IntMatrix) -> Result<AlgebraDescriptor> {
    a.ensure_square()?;
    a.ensure_zero_one()?;
    if a.has_zero_row() {
        return Err(Error::ZeroRow);
    }
    let flags = simplicity_flags(a)?;
    let (k0, k1) = ck_k_theory(a)?;
    let tag = if let Some(mut cycles) = a.permutation_cycles()? {
        cycles.sort_unstable();
        AlgebraTag::CircleMatrixSum(cycles)
    } else if a.entries().iter().all(|&x| x == 1) {
        AlgebraTag::Cuntz(a.rows())
    } else {
        AlgebraTag::CuntzKrieger
    };
    Ok(AlgebraDescriptor {
        matrix: a.clone(),
        flags,
        k0,
        k1,
        tag,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraReport {
    /// `Ā(2,n)` for side A, `A(n,2)` for side B.
    pub label: String,
    pub side: Side,
    pub n: usize,
    pub descriptor: AlgebraDescriptor,
    /// Simplicity flag of every level `1..=n`.
    pub simple_by_level: Vec<bool>,
    pub notes: Vec<String>,
}

impl AlgebraReport {
    /// Whether every computed level is simple and purely infinite. This is
    /// evidence about mixing of the two-dimensional shift, not a decision.
    pub fn simple_up_to_level(&self) -> bool {
        self.simple_by_level.iter().all(|&b| b)
    }
}

/// Runs the tower to level `n` and identifies the algebra of the level matrix.
pub fn algebra_report(x: &MatrixShift, side: Side, n: usize, budget: Budget) -> Result<AlgebraReport> {
    let t = tower(x, side, n, budget)?;
    let mut notes = t.warnings();
    let mut simple_by_level = Vec::with_capacity(n);
    for level in &t.levels {
        simple_by_level.push(simplicity_flags(&level.matrix)?.simple_purely_infinite);
    }
    let level = t.levels.last().unwrap();
    let descriptor = identify_algebra(&level.matrix)?;
    if let AlgebraTag::CircleMatrixSum(cycles) = &descriptor.tag {
        if cycles.len() > 1 {
            notes.push(format!(
                "the level matrix is a permutation with {} cycles of lengths {:?}; its graph algebra is a \
                 direct sum of {} circle-matrix algebras with K0 = {}, not a single C(T) ⊗ M_{} (whose K0 is Z)",
                cycles.len(),
                cycles,
                cycles.len(),
                descriptor.k0,
                level.k()
            ));
        }
    }
    let first_failure = simple_by_level.iter().position(|&b| !b);
    notes.push(match first_failure {
        None => format!("simple and purely infinite at every level up to {n}; consistent with strong mixing, not a proof of it"),
        Some(i) => format!("not simple and purely infinite at level {}; evidence against strong mixing", i + 1),
    });
    let label = match side {
        Side::A => format!("Ā(2,{n})"),
        Side::B => format!("A({n},2)"),
    };
    Ok(AlgebraReport {
        label,
        side,
        n,
        descriptor,
        simple_by_level,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: Vec<Vec<i64>>) -> ZMatrix {
        Matrix::from_rows(rows).unwrap().map(|&x| BigInt::from(x))
    }

    fn int(rows: Vec<Vec<u64>>) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn diag(m: &ZMatrix) -> Vec<i64> {
        smith_normal_form(m).unwrap().diagonal().iter().map(|d| d.to_i64().unwrap()).collect()
    }

    #[test]
    fn small_smith_forms() {
        assert_eq!(diag(&z(vec![vec![2, 0], vec![0, 4]])), vec![2, 4]);
        assert_eq!(diag(&z(vec![vec![2, 1], vec![1, 2]])), vec![1, 3]);
        assert_eq!(diag(&z(vec![vec![0, -1], vec![-1, 1]])), vec![1, 1]);
        assert_eq!(diag(&z(vec![vec![4, 0], vec![0, 6]])), vec![2, 12]);
        assert_eq!(diag(&z(vec![vec![0, 0, 0], vec![0, 0, 0]])), vec![0, 0]);
        assert_eq!(diag(&z(vec![vec![6, 4, 2]])), vec![2]);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2;
        let m = z(vec![vec![big, big - 1], vec![big - 1, big - 3]]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.diagonal()[0], BigInt::one());
        assert_eq!(s.diagonal()[1], determinant(&m).unwrap().abs());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&z(vec![vec![2, 1], vec![1, 2]])).unwrap(), BigInt::from(3));
        assert_eq!(determinant(&z(vec![vec![0, 1], vec![1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(
            determinant(&z(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]])).unwrap(),
            BigInt::from(-3)
        );
    }

    #[test]
    fn groups_display() {
        assert_eq!(FPAbelianGroup::trivial().to_string(), "0");
        let g = FPAbelianGroup {
            free_rank: 2,
            torsion: vec![BigInt::from(3)],
        };
        assert_eq!(g.to_string(), "Z^2 ⊕ Z/3");
    }

    #[test]
    fn bowen_franks_examples() {
        assert!(bowen_franks(&int(vec![vec![1, 1], vec![1, 0]])).unwrap().is_trivial());
        for n in 1..=3u32 {
            let k = 1usize << n;
            let g = bowen_franks(&IntMatrix::all_ones(k, k)).unwrap();
            let expected = if k == 2 { vec![] } else { vec![BigInt::from(k - 1)] };
            assert_eq!(g, FPAbelianGroup { free_rank: 0, torsion: expected });
        }
        assert_eq!(bowen_franks(&IntMatrix::identity(3)).unwrap(), FPAbelianGroup::free(3));
    }

    #[test]
    fn k_theory_and_tags() {
        let b2 = int(vec![vec![0, 0, 0, 1], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 0]]);
        let d = identify_algebra(&b2).unwrap();
        assert_eq!((d.k0.clone(), d.k1.clone()), (FPAbelianGroup::free(2), FPAbelianGroup::free(2)));
        assert_eq!(d.tag.to_string(), "circle_matrix_sum(2,2)");
        assert!(d.flags.permutation && !d.flags.simple_purely_infinite);

        let d = identify_algebra(&IntMatrix::all_ones(8, 8)).unwrap();
        assert_eq!(d.tag, AlgebraTag::Cuntz(8));
        assert_eq!(d.k0.to_string(), "Z/7");
        assert!(d.k1.is_trivial());

        let d = identify_algebra(&int(vec![vec![1, 1, 1], vec![1, 0, 1], vec![1, 1, 0]])).unwrap();
        assert_eq!(d.tag, AlgebraTag::CuntzKrieger);
        assert_eq!(d.k0.to_string(), "Z/4");
        assert!(d.flags.simple_purely_infinite);

        let d = identify_algebra(&int(vec![vec![1, 1], vec![1, 0]])).unwrap();
        assert_eq!(d.tag, AlgebraTag::CuntzKrieger);
        assert!(d.k0.is_trivial() && d.k1.is_trivial());

        assert_eq!(identify_algebra(&int(vec![vec![1, 1], vec![0, 0]])).unwrap_err(), Error::ZeroRow);
    }
}
