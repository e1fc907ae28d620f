//! Exact linear algebra over the three coefficient rings.
//!
//! Boundary matrices are sparse column-major. Solves over Q use dense
//! rational Gauss-Jordan elimination, Z/2 uses packed bitset rows, and Z
//! goes through the Smith normal form in [`crate::snf`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring::{Coeff, FieldCoeff, Z2};
use crate::snf;

/// Sparse column-major matrix.
#[derive(Clone, Debug)]
pub struct ColMat<K> {
    rows: usize,
    cols: Vec<Vec<(usize, K)>>,
}

impl<K: Coeff> ColMat<K> {
    pub fn new(rows: usize, cols: usize) -> Self {
        ColMat { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn push(&mut self, row: usize, col: usize, value: K) {
        debug_assert!(row < self.rows);
        if !value.is_zero() {
            self.cols[col].push((row, value));
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, K)] {
        &self.cols[j]
    }

    pub fn dense_column(&self, j: usize) -> Vec<K> {
        let mut out = vec![K::zero(); self.rows];
        for (i, v) in &self.cols[j] {
            out[*i] = out[*i].add(v);
        }
        out
    }

    /// `A x` for a dense vector indexed by columns.
    pub fn mul_vec(&self, x: &[K]) -> Vec<K> {
        assert_eq!(x.len(), self.ncols());
        let mut out = vec![K::zero(); self.rows];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, v) in &self.cols[j] {
                out[*i] = out[*i].add(&v.mul(xj));
            }
        }
        out
    }

    /// Checks `self ∘ inner = 0`, i.e. every column of `inner` (a vector in
    /// `self`'s column space) is mapped to zero.
    pub fn compose_is_zero(&self, inner: &ColMat<K>) -> bool {
        (0..inner.ncols()).all(|j| {
            let mut acc = vec![K::zero(); self.rows];
            for (col_idx, v) in inner.column(j) {
                for (i, w) in self.column(*col_idx) {
                    acc[*i] = acc[*i].add(&w.mul(v));
                }
            }
            acc.iter().all(K::is_zero)
        })
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<K>> {
        let mut rows = vec![vec![K::zero(); self.ncols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                rows[*i][j] = rows[*i][j].add(v);
            }
        }
        rows
    }
}

/// Ring-specific exact solvers behind a common interface.
pub trait ChainOps: Coeff {
    fn mat_rank(mat: &ColMat<Self>) -> usize;

    /// Some solution of `A x = b`, if one exists over the ring.
    fn mat_solve(mat: &ColMat<Self>, rhs: &[Self]) -> Option<Vec<Self>>;

    /// A basis of `ker A` (a lattice basis over Z).
    fn mat_kernel(mat: &ColMat<Self>) -> Vec<Vec<Self>>;

    /// Normalizes a rank-one kernel generator: integral with content one
    /// where that makes sense, first supported entry positive.
    fn normalize_generator(vec: Vec<Self>) -> Vec<Self>;
}

// ---------------------------------------------------------------------------
// dense Gauss-Jordan over a field
// ---------------------------------------------------------------------------

struct Echelon<K> {
    rows: Vec<Vec<K>>,
    /// pivot column of each used row, in order
    pivots: Vec<usize>,
}

fn field_eliminate<K: FieldCoeff>(mat: &ColMat<K>) -> Echelon<K> {
    let mut rows = mat.to_dense_rows();
    let ncols = mat.ncols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pivot_row) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot_row);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in c..ncols {
                    if !rows[r][j].is_zero() {
                        let delta = rows[r][j].mul(&factor);
                        rows[i][j] = rows[i][j].sub(&delta);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Echelon { rows, pivots }
}

fn field_solve<K: FieldCoeff>(mat: &ColMat<K>, rhs: &[K]) -> Option<Vec<K>> {
    assert_eq!(rhs.len(), mat.nrows());
    // augment with the right-hand side as an extra column
    let mut aug = ColMat::<K>::new(mat.nrows(), mat.ncols() + 1);
    for j in 0..mat.ncols() {
        for (i, v) in mat.column(j) {
            aug.push(*i, j, v.clone());
        }
    }
    for (i, v) in rhs.iter().enumerate() {
        aug.push(i, mat.ncols(), v.clone());
    }
    let ech = field_eliminate(&aug);
    let n = mat.ncols();
    if ech.pivots.contains(&n) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![K::zero(); n];
    for (r, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.rows[r][n].clone();
    }
    Some(x)
}

fn field_kernel<K: FieldCoeff>(mat: &ColMat<K>) -> Vec<Vec<K>> {
    let ech = field_eliminate(mat);
    let n = mat.ncols();
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; n];
        for &p in &ech.pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_set[free] {
            continue;
        }
        let mut vec = vec![K::zero(); n];
        vec[free] = K::one();
        for (r, &p) in ech.pivots.iter().enumerate() {
            // row r reads x_p + sum_free a_f x_f = 0
            vec[p] = ech.rows[r][free].neg();
        }
        basis.push(vec);
    }
    basis
}

impl ChainOps for BigRational {
    fn mat_rank(mat: &ColMat<Self>) -> usize {
        field_eliminate(mat).pivots.len()
    }

    fn mat_solve(mat: &ColMat<Self>, rhs: &[Self]) -> Option<Vec<Self>> {
        field_solve(mat, rhs)
    }

    fn mat_kernel(mat: &ColMat<Self>) -> Vec<Vec<Self>> {
        field_kernel(mat)
    }

    fn normalize_generator(vec: Vec<Self>) -> Vec<Self> {
        let mut denom_lcm: BigInt = One::one();
        for v in &vec {
            if !Zero::is_zero(v) {
                denom_lcm = denom_lcm.lcm(v.denom());
            }
        }
        let scale = BigRational::from_integer(denom_lcm);
        let ints: Vec<BigInt> = vec.iter().map(|v| (v * &scale).to_integer()).collect();
        let normalized = BigInt::normalize_generator(ints);
        normalized.into_iter().map(BigRational::from_integer).collect()
    }
}

// ---------------------------------------------------------------------------
// packed rows over Z/2
// ---------------------------------------------------------------------------

/// Row-major bit matrix; column j lives in word j/64, bit j%64.
struct BitRows {
    ncols: usize,
    rows: Vec<Vec<u64>>,
}

impl BitRows {
    fn from_colmat(mat: &ColMat<Z2>) -> Self {
        let words = mat.ncols().div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; words]; mat.nrows()];
        for j in 0..mat.ncols() {
            for (i, v) in mat.column(j) {
                if !v.is_zero() {
                    rows[*i][j / 64] ^= 1 << (j % 64);
                }
            }
        }
        BitRows { ncols: mat.ncols(), rows }
    }

    fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row][col / 64] >> (col % 64) & 1 == 1
    }

    /// Gauss-Jordan elimination, optionally pivoting only on the first
    /// `limit` columns (the rest act as an augmentation).
    fn reduce(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit.min(self.ncols) {
            let Some(pr) = (r..self.rows.len()).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.rows.swap(r, pr);
            let pivot_row = std::mem::take(&mut self.rows[r]);
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i != r && row[c / 64] >> (c % 64) & 1 == 1 {
                    for (w, p) in row.iter_mut().zip(&pivot_row) {
                        *w ^= p;
                    }
                }
            }
            self.rows[r] = pivot_row;
            pivots.push(c);
            r += 1;
            if r == self.rows.len() {
                break;
            }
        }
        pivots
    }
}

impl ChainOps for Z2 {
    fn mat_rank(mat: &ColMat<Self>) -> usize {
        let mut bits = BitRows::from_colmat(mat);
        bits.reduce(mat.ncols()).len()
    }

    fn mat_solve(mat: &ColMat<Self>, rhs: &[Self]) -> Option<Vec<Self>> {
        assert_eq!(rhs.len(), mat.nrows());
        let n = mat.ncols();
        let mut aug = ColMat::<Z2>::new(mat.nrows(), n + 1);
        for j in 0..n {
            for (i, v) in mat.column(j) {
                aug.push(*i, j, *v);
            }
        }
        for (i, v) in rhs.iter().enumerate() {
            aug.push(i, n, *v);
        }
        let mut bits = BitRows::from_colmat(&aug);
        let pivots = bits.reduce(n);
        // inconsistent iff some pivot-free row still has the rhs bit set
        for (i, _) in bits.rows.iter().enumerate() {
            if i >= pivots.len() && bits.get(i, n) {
                return None;
            }
        }
        let mut x = vec![Z2::zero(); n];
        for (r, &p) in pivots.iter().enumerate() {
            if bits.get(r, n) {
                x[p] = Z2::one();
            }
        }
        Some(x)
    }

    fn mat_kernel(mat: &ColMat<Self>) -> Vec<Vec<Self>> {
        let mut bits = BitRows::from_colmat(mat);
        let pivots = bits.reduce(mat.ncols());
        let n = mat.ncols();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in 0..n {
            if is_pivot[free] {
                continue;
            }
            let mut vec = vec![Z2::zero(); n];
            vec[free] = Z2::one();
            for (r, &p) in pivots.iter().enumerate() {
                if bits.get(r, free) {
                    vec[p] = Z2::one();
                }
            }
            basis.push(vec);
        }
        basis
    }

    fn normalize_generator(vec: Vec<Self>) -> Vec<Self> {
        vec
    }
}

// ---------------------------------------------------------------------------
// Z: Smith normal form backend
// ---------------------------------------------------------------------------

impl ChainOps for BigInt {
    fn mat_rank(mat: &ColMat<Self>) -> usize {
        // rank over Z equals rank over Q; elimination is cheaper than SNF
        let qmat = to_rational(mat);
        BigRational::mat_rank(&qmat)
    }

    fn mat_solve(mat: &ColMat<Self>, rhs: &[Self]) -> Option<Vec<Self>> {
        snf::solve_integer(mat, rhs)
    }

    fn mat_kernel(mat: &ColMat<Self>) -> Vec<Vec<Self>> {
        snf::kernel_lattice(mat)
    }

    fn normalize_generator(vec: Vec<Self>) -> Vec<Self> {
        let mut content: BigInt = Zero::zero();
        for v in &vec {
            content = content.gcd(v);
        }
        let mut out = vec;
        if !Zero::is_zero(&content) && !content.is_one() {
            for v in out.iter_mut() {
                *v = &*v / &content;
            }
        }
        if let Some(first) = out.iter().find(|v| !Zero::is_zero(*v)) {
            if first.is_negative() {
                for v in out.iter_mut() {
                    *v = -&*v;
                }
            }
        }
        out
    }
}

pub fn to_rational(mat: &ColMat<BigInt>) -> ColMat<BigRational> {
    let mut out = ColMat::new(mat.nrows(), mat.ncols());
    for j in 0..mat.ncols() {
        for (i, v) in mat.column(j) {
            out.push(*i, j, BigRational::from_integer(v.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_q(rows: usize, entries: &[(usize, usize, i64)], cols: usize) -> ColMat<BigRational> {
        let mut m = ColMat::new(rows, cols);
        for &(i, j, v) in entries {
            m.push(i, j, BigRational::from_i64(v));
        }
        m
    }

    #[test]
    fn rational_solve_and_rank() {
        // x + y = 3, x - y = 1  ->  x = 2, y = 1
        let m = mat_q(2, &[(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, -1)], 2);
        assert_eq!(BigRational::mat_rank(&m), 2);
        let sol = BigRational::mat_solve(
            &m,
            &[BigRational::from_i64(3), BigRational::from_i64(1)],
        )
        .unwrap();
        assert_eq!(sol, vec![BigRational::from_i64(2), BigRational::from_i64(1)]);
    }

    #[test]
    fn rational_inconsistent_system() {
        let m = mat_q(2, &[(0, 0, 1), (1, 0, 1)], 1);
        let out = BigRational::mat_solve(
            &m,
            &[BigRational::from_i64(1), BigRational::from_i64(2)],
        );
        assert!(out.is_none());
    }

    #[test]
    fn rational_kernel() {
        // single equation x + y + z = 0: kernel rank 2
        let m = mat_q(1, &[(0, 0, 1), (0, 1, 1), (0, 2, 1)], 3);
        let basis = BigRational::mat_kernel(&m);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let img = m.mul_vec(v);
            assert!(img.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn z2_solve_and_kernel() {
        let mut m = ColMat::<Z2>::new(2, 3);
        m.push(0, 0, Z2::one());
        m.push(0, 1, Z2::one());
        m.push(1, 1, Z2::one());
        m.push(1, 2, Z2::one());
        assert_eq!(Z2::mat_rank(&m), 2);
        let sol = Z2::mat_solve(&m, &[Z2::one(), Z2::zero()]).unwrap();
        let img = m.mul_vec(&sol);
        assert_eq!(img, vec![Z2::one(), Z2::zero()]);
        let kernel = Z2::mat_kernel(&m);
        assert_eq!(kernel.len(), 1);
        assert!(m.mul_vec(&kernel[0]).iter().all(Z2::is_zero));
    }

    #[test]
    fn z2_wide_matrix_crosses_word_boundary() {
        // identity-ish pattern on 130 columns
        let n = 130;
        let mut m = ColMat::<Z2>::new(1, n);
        for j in 0..n {
            m.push(0, j, Z2::one());
        }
        assert_eq!(Z2::mat_rank(&m), 1);
        let kernel = Z2::mat_kernel(&m);
        assert_eq!(kernel.len(), n - 1);
    }

    #[test]
    fn generator_normalization() {
        let v = vec![
            BigRational::new(BigInt::from(-2), BigInt::from(3)),
            BigRational::new(BigInt::from(4), BigInt::from(3)),
        ];
        let n = BigRational::normalize_generator(v);
        assert_eq!(n, vec![BigRational::from_i64(1), BigRational::from_i64(-2)]);

        let v = vec![BigInt::from(-6), BigInt::from(9)];
        assert_eq!(BigInt::normalize_generator(v), vec![BigInt::from(2), BigInt::from(-3)]);
    }
}
