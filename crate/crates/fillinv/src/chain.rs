//! Formal linear combinations of oriented simplices.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::{faces_of, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::ring::Coeff;
use crate::scalar::Scalar;

/// A chain of fixed dimension: simplex tuple -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVector<K: Coeff> {
    dim: usize,
    coeffs: BTreeMap<Simplex, K>,
}

impl<K: Coeff> ChainVector<K> {
    pub fn zero(dim: usize) -> Self {
        ChainVector { dim, coeffs: BTreeMap::new() }
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Simplex, K)>) -> Self {
        let mut chain = ChainVector::zero(dim);
        for (simplex, coeff) in terms {
            chain.add_term(&simplex, coeff);
        }
        chain
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, simplex: &[usize]) -> K {
        self.coeffs.get(simplex).cloned().unwrap_or_else(K::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &K)> {
        self.coeffs.iter()
    }

    /// Adds `coeff * simplex` for an already sorted tuple; zero sums drop out.
    pub fn add_term(&mut self, simplex: &[usize], coeff: K) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(simplex.len(), self.dim + 1, "dimension mismatch");
        debug_assert!(simplex.windows(2).all(|w| w[0] < w[1]), "unsorted simplex");
        match self.coeffs.get_mut(simplex) {
            Some(existing) => {
                let sum = existing.add(&coeff);
                if sum.is_zero() {
                    self.coeffs.remove(simplex);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.coeffs.insert(simplex.to_vec(), coeff);
            }
        }
    }

    /// Adds `coeff` times a possibly unsorted, possibly degenerate tuple:
    /// sorting contributes the permutation sign, degenerate tuples vanish.
    pub fn add_oriented(&mut self, vertices: &[usize], coeff: K) {
        let mut sorted = vertices.to_vec();
        let sign = sort_count_sign(&mut sorted);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return;
        }
        let signed = if sign { coeff.neg() } else { coeff };
        self.add_term(&sorted, signed);
    }

    pub fn add(&self, other: &ChainVector<K>) -> ChainVector<K> {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (s, c) in other.iter() {
            out.add_term(s, c.clone());
        }
        out
    }

    pub fn neg(&self) -> ChainVector<K> {
        ChainVector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|(s, c)| (s.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, factor: &K) -> ChainVector<K> {
        let mut out = ChainVector::zero(self.dim);
        for (s, c) in self.iter() {
            out.add_term(s, c.mul(factor));
        }
        out
    }

    /// Simplicial boundary with alternating signs.
    pub fn boundary(&self) -> ChainVector<K> {
        let mut out = ChainVector::zero(self.dim.saturating_sub(1));
        if self.dim == 0 {
            return out;
        }
        for (s, c) in self.iter() {
            for (i, face) in faces_of(s).into_iter().enumerate() {
                let signed = if i % 2 == 0 { c.clone() } else { c.neg() };
                out.add_term(&face, signed);
            }
        }
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_zero()
    }

    /// Every referenced simplex exists in `complex` with this dimension.
    pub fn validate_in(&self, complex: &SimplicialComplex) -> Result<()> {
        for (s, _) in self.iter() {
            if !complex.contains(s) {
                return Err(Error::BadFormat(format!(
                    "chain references simplex {s:?} absent from the complex"
                )));
            }
        }
        Ok(())
    }

    /// Dense coefficient vector indexed by the complex's sorted simplices.
    pub fn to_vector(&self, complex: &SimplicialComplex) -> Vec<K> {
        let mut out = vec![K::zero(); complex.simplex_count(self.dim)];
        for (s, c) in self.iter() {
            let idx = self.dim_index(complex, s);
            out[idx] = c.clone();
        }
        out
    }

    fn dim_index(&self, complex: &SimplicialComplex, s: &[usize]) -> usize {
        complex.index_of(s).unwrap_or_else(|| panic!("simplex {s:?} not in complex"))
    }

    pub fn from_vector(complex: &SimplicialComplex, dim: usize, dense: &[K]) -> Self {
        let list = complex.simplices(dim);
        assert_eq!(dense.len(), list.len());
        let mut chain = ChainVector::zero(dim);
        for (s, c) in list.iter().zip(dense) {
            chain.add_term(s, c.clone());
        }
        chain
    }

    /// Weighted l1 size: sum of `|coefficient| * weight(simplex)`.
    pub fn weighted_volume(&self, weight: impl Fn(&Simplex) -> Scalar) -> Scalar {
        let mut total = Scalar::zero();
        for (s, c) in self.iter() {
            total = total.add(&c.abs_weight().mul(&weight(s)));
        }
        total
    }
}

impl<K: Coeff> fmt::Display for ChainVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (s, c)) in self.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{s:?}")?;
        }
        Ok(())
    }
}

/// Sorts in place; returns true when the permutation used is odd.
fn sort_count_sign(v: &mut [usize]) -> bool {
    // insertion sort counting inversions; tuples are tiny
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    odd
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::ring::Z2;

    #[test]
    fn boundary_of_triangle() {
        let mut chain = ChainVector::<BigInt>::zero(2);
        chain.add_term(&[0, 1, 2], BigInt::from(1));
        let b = chain.boundary();
        assert_eq!(b.coeff(&[1, 2]), BigInt::from(1));
        assert_eq!(b.coeff(&[0, 2]), BigInt::from(-1));
        assert_eq!(b.coeff(&[0, 1]), BigInt::from(1));
        assert!(b.boundary().is_zero());
    }

    #[test]
    fn oriented_insertion_signs() {
        let mut chain = ChainVector::<BigInt>::zero(1);
        chain.add_oriented(&[2, 0], BigInt::from(1));
        assert_eq!(chain.coeff(&[0, 2]), BigInt::from(-1));
        // degenerate tuples vanish
        chain.add_oriented(&[1, 1], BigInt::from(5));
        assert_eq!(chain.support_size(), 1);
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut chain = ChainVector::<BigInt>::zero(1);
        chain.add_term(&[0, 1], BigInt::from(2));
        chain.add_term(&[0, 1], BigInt::from(-2));
        assert!(chain.is_zero());
    }

    #[test]
    fn z2_boundary_of_two_triangles_drops_shared_edge() {
        let mut chain = ChainVector::<Z2>::zero(2);
        chain.add_term(&[0, 1, 2], Z2::one());
        chain.add_term(&[1, 2, 3], Z2::one());
        let b = chain.boundary();
        assert_eq!(b.support_size(), 4);
        assert!(b.coeff(&[1, 2]).is_zero());
    }

    #[test]
    fn dense_round_trip() {
        let c = SimplicialComplex::from_simplices(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        let mut chain = ChainVector::<BigInt>::zero(1);
        chain.add_term(&[0, 1], BigInt::from(3));
        chain.add_term(&[1, 2], BigInt::from(-1));
        let dense = chain.to_vector(&c);
        let back = ChainVector::from_vector(&c, 1, &dense);
        assert_eq!(chain, back);
    }
}
