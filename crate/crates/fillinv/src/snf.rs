//! Smith normal form over the integers, with transform tracking.
//!
//! `U A V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
//! entry dividing the next. Pivoting always picks the submatrix entry of
//! least absolute value, which keeps intermediate growth tame on boundary
//! matrices.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::ColMat;

pub struct Snf {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub diag: Vec<BigInt>,
    /// Row transform, `nrows x nrows`.
    pub u: Vec<Vec<BigInt>>,
    /// Column transform, `ncols x ncols`.
    pub v: Vec<Vec<BigInt>>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Diagonal entries greater than one: the torsion coefficients
    /// contributed by the matrix as a boundary operator.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| d.abs() > BigInt::from(1)).cloned().collect()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            let mut row = vec![BigInt::from(0); n];
            row[i] = BigInt::from(1);
            row
        })
        .collect()
}

pub fn smith(mat: &ColMat<BigInt>) -> Snf {
    let nrows = mat.nrows();
    let ncols = mat.ncols();
    let mut a = mat.to_dense_rows();
    let mut u = identity(nrows);
    let mut v = identity(ncols);

    let limit = nrows.min(ncols);
    let mut k = 0;
    while k < limit {
        // smallest nonzero |entry| in the trailing submatrix; a unit pivot
        // cannot be beaten, so stop scanning at the first one
        let one = BigInt::from(1);
        let mut pivot: Option<(usize, usize)> = None;
        'scan: for i in k..nrows {
            for j in k..ncols {
                if a[i][j].is_zero() {
                    continue;
                }
                if pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                    if a[i][j].abs() == one {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != k {
            a.swap(k, pi);
            u.swap(k, pi);
        }
        if pj != k {
            swap_cols(&mut a, k, pj);
            swap_cols(&mut v, k, pj);
        }

        let mut dirty = true;
        while dirty {
            dirty = false;
            // clear the column below the pivot
            for i in k + 1..nrows {
                if a[i][k].is_zero() {
                    continue;
                }
                let q = &a[i][k] / &a[k][k];
                if !q.is_zero() {
                    row_sub(&mut a, i, k, &q);
                    row_sub(&mut u, i, k, &q);
                }
                if !a[i][k].is_zero() {
                    // remainder became the new, smaller pivot
                    a.swap(k, i);
                    u.swap(k, i);
                    dirty = true;
                }
            }
            // clear the row right of the pivot
            for j in k + 1..ncols {
                if a[k][j].is_zero() {
                    continue;
                }
                let q = &a[k][j] / &a[k][k];
                if !q.is_zero() {
                    col_sub(&mut a, j, k, &q);
                    col_sub(&mut v, j, k, &q);
                }
                if !a[k][j].is_zero() {
                    swap_cols(&mut a, k, j);
                    swap_cols(&mut v, k, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold in any entry the pivot does not divide
            'outer: for i in k + 1..nrows {
                for j in k + 1..ncols {
                    if !(&a[i][j] % &a[k][k]).is_zero() {
                        row_add(&mut a, k, i);
                        row_add(&mut u, k, i);
                        dirty = true;
                        break 'outer;
                    }
                }
            }
        }
        if a[k][k].is_negative() {
            for x in a[k].iter_mut() {
                *x = -&*x;
            }
            for x in u[k].iter_mut() {
                *x = -&*x;
            }
        }
        k += 1;
    }

    let diag: Vec<BigInt> =
        (0..limit).map(|i| a[i][i].clone()).take_while(|d| !d.is_zero()).collect();
    Snf { diag, u, v }
}

/// Some integral solution of `A x = b`, or `None` when no integral
/// solution exists (divisibility or consistency failure).
pub fn solve_integer(mat: &ColMat<BigInt>, rhs: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(rhs.len(), mat.nrows());
    let s = smith(mat);
    let y: Vec<BigInt> = s.u.iter().map(|row| dot(row, rhs)).collect();
    let mut t = vec![BigInt::from(0); mat.ncols()];
    for (i, yi) in y.iter().enumerate() {
        if i < s.diag.len() {
            let (q, r) = (yi / &s.diag[i], yi % &s.diag[i]);
            if !r.is_zero() {
                return None;
            }
            t[i] = q;
        } else if !yi.is_zero() {
            return None;
        }
    }
    Some(s.v.iter().map(|row| dot(row, &t)).collect())
}

/// A lattice basis of `ker A`: the columns of `V` past the rank.
pub fn kernel_lattice(mat: &ColMat<BigInt>) -> Vec<Vec<BigInt>> {
    let s = smith(mat);
    let n = mat.ncols();
    (s.rank()..n)
        .map(|j| (0..n).map(|i| s.v[i][j].clone()).collect())
        .collect()
}

fn dot(row: &[BigInt], x: &[BigInt]) -> BigInt {
    let mut acc = BigInt::from(0);
    for (a, b) in row.iter().zip(x) {
        if !a.is_zero() && !b.is_zero() {
            acc += a * b;
        }
    }
    acc
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row_i -= q * row_k
fn row_sub(m: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt) {
    let (rk, ri) = index_pair(m, k, i);
    for (x, p) in ri.iter_mut().zip(rk.iter()) {
        if !p.is_zero() {
            *x -= q * p;
        }
    }
}

/// row_k += row_i
fn row_add(m: &mut [Vec<BigInt>], k: usize, i: usize) {
    let (rk, ri) = index_pair(m, k, i);
    for (x, p) in rk.iter_mut().zip(ri.iter()) {
        if !p.is_zero() {
            *x += p;
        }
    }
}

/// col_j -= q * col_k
fn col_sub(m: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[k].is_zero() {
            let delta = q * &row[k];
            row[j] -= delta;
        }
    }
}

fn index_pair(
    m: &mut [Vec<BigInt>],
    first: usize,
    second: usize,
) -> (&mut Vec<BigInt>, &mut Vec<BigInt>) {
    assert_ne!(first, second);
    if first < second {
        let (lo, hi) = m.split_at_mut(second);
        (&mut lo[first], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(first);
        (&mut hi[0], &mut lo[second])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn colmat(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> ColMat<BigInt> {
        let mut m = ColMat::new(rows, cols);
        for &(i, j, v) in entries {
            m.push(i, j, BigInt::from(v));
        }
        m
    }

    fn check_transforms(mat: &ColMat<BigInt>, s: &Snf) {
        // U A V must be the stated diagonal
        let a = mat.to_dense_rows();
        let nrows = mat.nrows();
        let ncols = mat.ncols();
        let mut ua = vec![vec![BigInt::from(0); ncols]; nrows];
        for i in 0..nrows {
            for j in 0..ncols {
                for (k, arow) in a.iter().enumerate() {
                    if !s.u[i][k].is_zero() && !arow[j].is_zero() {
                        ua[i][j] += &s.u[i][k] * &arow[j];
                    }
                }
            }
        }
        for i in 0..nrows {
            for j in 0..ncols {
                let mut acc = BigInt::from(0);
                for (k, vrow) in s.v.iter().enumerate() {
                    if !ua[i][k].is_zero() && !vrow[j].is_zero() {
                        acc += &ua[i][k] * &vrow[j];
                    }
                }
                let expected = if i == j && i < s.diag.len() {
                    s.diag[i].clone()
                } else {
                    BigInt::from(0)
                };
                assert_eq!(acc, expected, "UAV mismatch at ({i},{j})");
            }
        }
    }

    #[test]
    fn textbook_matrix() {
        // diag(2, 6) from [[2, 4], [4, 2]] -> diagonal 2, 6
        let m = colmat(2, 2, &[(0, 0, 2), (0, 1, 4), (1, 0, 4), (1, 1, 2)]);
        let s = smith(&m);
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6)]);
        check_transforms(&m, &s);
    }

    #[test]
    fn divisibility_chain() {
        let m = colmat(
            3,
            3,
            &[
                (0, 0, 2),
                (0, 1, 4),
                (0, 2, 4),
                (1, 0, -6),
                (1, 1, 6),
                (1, 2, 12),
                (2, 0, 10),
                (2, 1, 4),
                (2, 2, 16),
            ],
        );
        let s = smith(&m);
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]);
        for w in s.diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        check_transforms(&m, &s);
    }

    #[test]
    fn solve_honors_divisibility() {
        // 2x = 3 has no integer solution, 2x = 4 does
        let m = colmat(1, 1, &[(0, 0, 2)]);
        assert!(solve_integer(&m, &[BigInt::from(3)]).is_none());
        let sol = solve_integer(&m, &[BigInt::from(4)]).unwrap();
        assert_eq!(sol, vec![BigInt::from(2)]);
    }

    #[test]
    fn solve_reproduces_rhs() {
        let m = colmat(2, 3, &[(0, 0, 1), (0, 1, 2), (1, 1, 3), (1, 2, -1)]);
        let rhs = vec![BigInt::from(5), BigInt::from(7)];
        let x = solve_integer(&m, &rhs).unwrap();
        assert_eq!(m.mul_vec(&x), rhs);
    }

    #[test]
    fn kernel_vectors_lie_in_kernel() {
        let m = colmat(1, 3, &[(0, 0, 2), (0, 1, 4), (0, 2, 6)]);
        let kernel = kernel_lattice(&m);
        assert_eq!(kernel.len(), 2);
        for v in &kernel {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        // the kernel basis from a unimodular V is primitive
        for v in &kernel {
            let content = v.iter().fold(BigInt::from(0), |acc, x| {
                use num_integer::Integer;
                acc.gcd(x)
            });
            assert_eq!(content, BigInt::from(1));
        }
    }

    #[test]
    fn zero_matrix() {
        let m = ColMat::<BigInt>::new(2, 2);
        let s = smith(&m);
        assert!(s.diag.is_empty());
        assert_eq!(kernel_lattice(&m).len(), 2);
        let sol = solve_integer(&m, &[BigInt::from(0), BigInt::from(0)]).unwrap();
        assert_eq!(sol, vec![BigInt::from(0), BigInt::from(0)]);
    }
}
