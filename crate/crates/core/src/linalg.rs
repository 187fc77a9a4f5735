//! Exact integer matrices, rational elimination and a small Jacobi eigensolver.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::tol;

/// Square integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMat {
    n: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn zeros(n: usize) -> Self {
        IntMat { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows; panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), n, "matrix must be square");
            data.extend_from_slice(r);
        }
        IntMat { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let row = &self.data[i * self.n..(i + 1) * self.n];
                row.iter().zip(v).fold(0i64, |acc, (a, b)| checked_fma(acc, *a, *b))
            })
            .collect()
    }

    pub fn mul_vec_f64(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) as f64 * v[j]).sum()).collect()
    }

    /// uᵀ·M·v over the integers.
    pub fn bilinear(&self, u: &[i64], v: &[i64]) -> i64 {
        let mv = self.mul_vec(v);
        u.iter().zip(&mv).fold(0i64, |acc, (a, b)| checked_fma(acc, *a, *b))
    }

    pub fn quadratic_f64(&self, x: &[f64]) -> f64 {
        let mx = self.mul_vec_f64(x);
        x.iter().zip(&mx).map(|(a, b)| a * b).sum()
    }

    /// Principal submatrix on the given index set (in the given order).
    pub fn principal(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    fn to_big(&self) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|i| (0..self.n).map(|j| BigInt::from(self.get(i, j))).collect()).collect()
    }

    pub fn det(&self) -> i64 {
        bareiss_det(self.to_big()).to_i64().expect("determinant overflows i64")
    }

    /// Exact adjugate, so that `m * adj(m) == det(m) * I`.
    pub fn adjugate(&self) -> Self {
        let n = self.n;
        if n == 1 {
            return IntMat::identity(1);
        }
        let big = self.to_big();
        let mut adj = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<BigInt>> = big
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| *r != i)
                    .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let mut d = bareiss_det(minor);
                if (i + j) % 2 == 1 {
                    d = -d;
                }
                adj.set(j, i, d.to_i64().expect("adjugate entry overflows i64"));
            }
        }
        adj
    }
}

#[inline]
fn checked_fma(acc: i64, a: i64, b: i64) -> i64 {
    a.checked_mul(b).and_then(|p| acc.checked_add(p)).expect("integer overflow in exact matrix arithmetic")
}

impl Mul for &IntMat {
    type Output = IntMat;

    fn mul(self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = IntMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out.data[idx] = checked_fma(out.data[idx], a, rhs.get(k, j));
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

/// Fraction-free Gaussian elimination.
fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Result of the exact definiteness test on a symmetric integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    /// Kernel basis vectors are primitive integer vectors.
    PositiveSemidefinite(Vec<Vec<i64>>),
    Indefinite,
}

/// Exact definiteness via symmetric-pivoted LDLᵀ over the rationals.
///
/// At each step a strictly positive diagonal pivot is eliminated by a
/// congruence. A negative diagonal, or a zero diagonal whose row is nonzero,
/// witnesses indefiniteness. When only a zero block remains the matrix is
/// semidefinite and its kernel is computed separately.
pub fn definiteness(m: &IntMat) -> Definiteness {
    assert!(m.is_symmetric(), "definiteness needs a symmetric matrix");
    let n = m.dim();
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(m.get(i, j).into())).collect()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    loop {
        if active.is_empty() {
            return Definiteness::PositiveDefinite;
        }
        if active.iter().any(|&i| a[i][i].is_negative()) {
            return Definiteness::Indefinite;
        }
        let pivot = active.iter().copied().find(|&i| a[i][i].is_positive());
        let Some(p) = pivot else {
            // every remaining diagonal entry is zero
            let nonzero = active.iter().any(|&i| active.iter().any(|&j| !a[i][j].is_zero()));
            if nonzero {
                return Definiteness::Indefinite;
            }
            return Definiteness::PositiveSemidefinite(integer_kernel(m));
        };
        active.retain(|&i| i != p);
        let d = a[p][p].clone();
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &j in &active {
                let v = &f * &a[p][j];
                a[i][j] -= v;
            }
        }
    }
}

/// Basis of the rational nullspace, each vector scaled to a primitive integer
/// vector whose first nonzero entry is positive.
pub fn integer_kernel(m: &IntMat) -> Vec<Vec<i64>> {
    let n = m.dim();
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(m.get(i, j).into())).collect()).collect();
    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, r);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r2 in 0..n {
            if r2 != row && !a[r2][col].is_zero() {
                let f = a[r2][col].clone();
                for c in 0..n {
                    let v = &f * &a[row][c];
                    a[r2][c] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            primitive(&v)
        })
        .collect()
}

fn primitive(v: &[BigRational]) -> Vec<i64> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut out: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
    if out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        out = out.into_iter().map(|x| -x).collect();
    }
    out.iter().map(|x| x.to_i64().expect("kernel entry overflows i64")).collect()
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Returns eigenvalues and the matching unit eigenvectors (as rows), sorted by
/// descending eigenvalue.
pub fn jacobi_eigen(m: &[Vec<f64>]) -> Option<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let scale: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= tol::JACOBI * scale {
            let mut pairs: Vec<(f64, Vec<f64>)> =
                (0..n).map(|k| (a[k][k], (0..n).map(|i| v[i][k]).collect())).collect();
            pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
            return Some(pairs.into_iter().unzip());
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn adjugate_of_one_by_one_is_one() {
        assert_eq!(IntMat::from_rows(&[[5]]).adjugate(), IntMat::from_rows(&[[1]]));
    }

    #[test]
    fn det_small() {
        assert_eq!(IntMat::from_rows(&[[2, -3], [-3, 2]]).det(), -5);
        assert_eq!(IntMat::from_rows(&[[0, 1], [1, 0]]).det(), -1);
        assert_eq!(IntMat::identity(4).det(), 1);
    }

    #[test]
    fn kernel_of_affine_triangle() {
        let m = IntMat::from_rows(&[[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]);
        assert_eq!(integer_kernel(&m), vec![vec![1, 1, 1]]);
        assert_eq!(definiteness(&m), Definiteness::PositiveSemidefinite(vec![vec![1, 1, 1]]));
    }

    #[test]
    fn zero_diagonal_with_offdiagonal_is_indefinite() {
        let m = IntMat::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(definiteness(&m), Definiteness::Indefinite);
        let z = IntMat::zeros(2);
        assert_eq!(definiteness(&z), Definiteness::PositiveSemidefinite(vec![vec![1, 0], vec![0, 1]]));
    }

    #[test]
    fn jacobi_recovers_known_spectrum() {
        let m = vec![vec![2.0, -1.0, 0.0], vec![-1.0, 2.0, -2.0], vec![0.0, -2.0, 2.0]];
        let (vals, vecs) = jacobi_eigen(&m).unwrap();
        let s5 = 5f64.sqrt();
        let expect = [2.0 + s5, 2.0, 2.0 - s5];
        for (a, b) in vals.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        for (lam, v) in vals.iter().zip(&vecs) {
            for i in 0..3 {
                let mv: f64 = (0..3).map(|j| m[i][j] * v[j]).sum();
                assert!((mv - lam * v[i]).abs() < 1e-10);
            }
        }
    }

    fn sym_matrix(n: usize) -> impl Strategy<Value = IntMat> {
        proptest::collection::vec(-4i64..=4, n * n).prop_map(move |xs| {
            let mut m = IntMat::zeros(n);
            for i in 0..n {
                for j in 0..=i {
                    m.set(i, j, xs[i * n + j]);
                    m.set(j, i, xs[i * n + j]);
                }
            }
            m
        })
    }

    proptest! {
        #[test]
        fn adjugate_identity(m in (1usize..=6).prop_flat_map(sym_matrix)) {
            let n = m.dim();
            let d = m.det();
            let prod = &m * &m.adjugate();
            let mut expect = IntMat::zeros(n);
            for i in 0..n { expect.set(i, i, d); }
            prop_assert_eq!(prod, expect);
        }

        #[test]
        fn kernel_vectors_are_annihilated(m in (1usize..=5).prop_flat_map(sym_matrix)) {
            for k in integer_kernel(&m) {
                prop_assert!(m.mul_vec(&k).iter().all(|&x| x == 0));
            }
        }
    }
}
