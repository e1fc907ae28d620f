//! Simplicial maps: monotonicity counts, degree on fundamental classes,
//! the interpolated pullback metric, and simplex volumes from edge
//! lengths.

use std::collections::BTreeMap;

use crate::chain::ChainVector;
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::fundamental_cycle;
use crate::linalg::ChainOps;
use crate::metric::MetricComplex;
use crate::ring::Coeff;
use crate::scalar::Scalar;

/// A vertex assignment whose simplex images (after collapsing repeats)
/// land in the target complex.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != source.vertex_count() {
            return Err(Error::BadFormat(format!(
                "vertex map has {} entries for {} vertices",
                vertex_map.len(),
                source.vertex_count()
            )));
        }
        for &v in &vertex_map {
            if v >= target.vertex_count() {
                return Err(Error::BadIndex { index: v, vertex_count: target.vertex_count() });
            }
        }
        let map = SimplicialMap { source, target, vertex_map };
        for dim in 0..=map.source.dim().unwrap_or(0) {
            for s in map.source.simplices(dim) {
                let image = map.image_simplex(s);
                if !map.target.contains(&image) {
                    return Err(Error::NotSimplicial(s.clone()));
                }
            }
        }
        Ok(map)
    }

    pub fn identity(complex: &SimplicialComplex) -> Self {
        let n = complex.vertex_count();
        SimplicialMap {
            source: complex.clone(),
            target: complex.clone(),
            vertex_map: (0..n).collect(),
        }
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    /// Sorted, deduplicated image tuple of a simplex.
    pub fn image_simplex(&self, simplex: &[usize]) -> Simplex {
        let mut image: Vec<usize> = simplex.iter().map(|&v| self.vertex_map[v]).collect();
        image.sort_unstable();
        image.dedup();
        image
    }

    /// Whether the image collapses the simplex to lower dimension.
    pub fn is_degenerate_on(&self, simplex: &[usize]) -> bool {
        self.image_simplex(simplex).len() != simplex.len()
    }

    /// `outer . inner`.
    pub fn compose(outer: &SimplicialMap, inner: &SimplicialMap) -> Result<SimplicialMap> {
        if inner.target != outer.source {
            return Err(Error::BadFormat("composition mismatch".into()));
        }
        let vertex_map =
            inner.vertex_map.iter().map(|&v| outer.vertex_map[v]).collect::<Vec<_>>();
        SimplicialMap::new(inner.source.clone(), outer.target.clone(), vertex_map)
    }

    /// Induced chain map: degenerate images vanish, others acquire the
    /// sorting permutation sign.
    pub fn push_chain<K: Coeff>(&self, chain: &ChainVector<K>) -> ChainVector<K> {
        let mut out = ChainVector::zero(chain.dim());
        for (s, c) in chain.iter() {
            let image: Vec<usize> = s.iter().map(|&v| self.vertex_map[v]).collect();
            out.add_oriented(&image, c.clone());
        }
        out
    }
}

/// Preimage statistics of the top-dimensional simplices.
#[derive(Clone, Debug)]
pub struct MonotonicityReport {
    pub n: usize,
    pub d: usize,
    pub is_monotone: bool,
    /// target n-simplices whose nondegenerate preimage count exceeds `d`
    pub offending: Vec<(Simplex, usize)>,
    pub max_preimages: usize,
}

/// Counts nondegenerate n-simplex preimages of each target n-simplex and
/// reports (n,d)-monotonicity.
pub fn check_monotone(f: &SimplicialMap, n: usize, d: usize) -> Result<MonotonicityReport> {
    let (src_dim, tgt_dim) = (f.source().dim(), f.target().dim());
    if src_dim != Some(n) || tgt_dim != Some(n) {
        return Err(Error::BadParams(format!(
            "monotonicity at n = {n} needs source and target of dimension {n}, got {src_dim:?} and {tgt_dim:?}"
        )));
    }
    let mut counts: BTreeMap<Simplex, usize> = BTreeMap::new();
    for s in f.source().simplices(n) {
        let image = f.image_simplex(s);
        if image.len() == n + 1 {
            *counts.entry(image).or_insert(0) += 1;
        }
    }
    let mut offending = Vec::new();
    let mut max_preimages = 0;
    for t in f.target().simplices(n) {
        let count = counts.get(t).copied().unwrap_or(0);
        max_preimages = max_preimages.max(count);
        if count > d {
            offending.push((t.clone(), count));
        }
    }
    Ok(MonotonicityReport { n, d, is_monotone: offending.is_empty(), offending, max_preimages })
}

/// Expresses the pushforward of the source fundamental cycle as a multiple
/// of the target fundamental cycle.
pub fn degree<K: ChainOps>(f: &SimplicialMap) -> Result<K> {
    let source_class =
        fundamental_cycle::<K>(f.source())?.ok_or(Error::NotOrientable)?;
    let target_class =
        fundamental_cycle::<K>(f.target())?.ok_or(Error::NotOrientable)?;
    let push = f.push_chain(&source_class);
    if push.is_zero() {
        return Ok(K::zero());
    }
    // the normalized target generator leads with coefficient one
    let (lead, lead_coeff) = target_class.iter().next().expect("nonzero generator");
    debug_assert_eq!(lead_coeff, &K::one());
    let k = push.coeff(lead);
    if push == target_class.scale(&k) {
        Ok(k)
    } else {
        Err(Error::NotAMultiple)
    }
}

/// The interpolated pullback metric at edge level: the new length of a
/// source edge `e` is `sqrt(len(f(e))^2 + t^2 len_1(e)^2)`, with
/// `len(f(e)) = 0` when `f` collapses `e`. The map from the new metric to
/// the target is nonexpanding edge by edge.
pub fn pullback_interp_metric(
    f: &SimplicialMap,
    g2: &MetricComplex,
    g1: &MetricComplex,
    t: &Scalar,
) -> Result<MetricComplex> {
    if !t.is_positive() {
        return Err(Error::NonpositiveT);
    }
    if f.source() != g1.complex() {
        return Err(Error::BadFormat("g1 lives on a different complex than the source".into()));
    }
    if f.target() != g2.complex() {
        return Err(Error::BadFormat("g2 lives on a different complex than the target".into()));
    }
    let t_sq = t.square();
    let lengths: Vec<((usize, usize), Scalar)> = g1
        .complex()
        .simplices(1)
        .iter()
        .map(|e| {
            let image = f.image_simplex(e);
            let image_sq = if image.len() == 2 {
                g2.edge_length(image[0], image[1]).square()
            } else {
                Scalar::zero()
            };
            let own_sq = g1.edge_length(e[0], e[1]).square();
            let new_len = image_sq.add(&t_sq.mul(&own_sq)).sqrt();
            ((e[0], e[1]), new_len)
        })
        .collect();
    MetricComplex::new(g1.complex().clone(), lengths)
}

/// Euclidean volume of a k-simplex from its edge lengths via the
/// Cayley-Menger determinant; lengths are indexed by vertex pairs
/// `(0,1), (0,2), ..., (0,k), (1,2), ...` in lexicographic order.
pub fn simplex_volume_from_lengths(k: usize, lengths: &[Scalar]) -> Result<Scalar> {
    if lengths.len() != k * (k + 1) / 2 {
        return Err(Error::BadParams(format!(
            "a {k}-simplex has {} edges, got {}",
            k * (k + 1) / 2,
            lengths.len()
        )));
    }
    let mut index = BTreeMap::new();
    let mut pos = 0;
    for i in 0..=k {
        for j in i + 1..=k {
            index.insert((i, j), pos);
            pos += 1;
        }
    }
    cayley_menger_volume(k, |i, j| lengths[index[&(i.min(j), i.max(j))]].clone())
}

/// Cayley-Menger volume with lengths supplied by a callback.
pub fn cayley_menger_volume(
    k: usize,
    length: impl Fn(usize, usize) -> Scalar,
) -> Result<Scalar> {
    if k == 0 {
        return Ok(Scalar::one());
    }
    let size = k + 2;
    let mut m = vec![vec![Scalar::zero(); size]; size];
    for i in 1..size {
        m[0][i] = Scalar::one();
        m[i][0] = Scalar::one();
    }
    let mut scale = Scalar::zero();
    for i in 0..=k {
        for j in i + 1..=k {
            let l = length(i, j);
            if l > scale {
                scale = l.clone();
            }
            let sq = l.square();
            m[i + 1][j + 1] = sq.clone();
            m[j + 1][i + 1] = sq;
        }
    }
    let det = determinant(m);
    // vol^2 = (-1)^(k+1) det / (2^k (k!)^2)
    let sign = if (k + 1).is_multiple_of(2) { det } else { det.neg() };
    let factorial = (1..=k as i64).product::<i64>();
    let denom = Scalar::from_int((1i64 << k) * factorial * factorial);
    let vol_sq = sign.div(&denom);
    if vol_sq.is_negative() {
        let tolerance = scale.to_f64().max(1.0).powi(2 * k as i32) * 1e-9;
        if vol_sq.is_exact() || vol_sq.to_f64() < -tolerance {
            return Err(Error::NotEuclideanRealizable);
        }
        return Ok(Scalar::zero());
    }
    Ok(vol_sq.sqrt())
}

fn determinant(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = det.neg();
        }
        det = det.mul(&m[col][col]);
        let inv = m[col][col].clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].div(&inv);
            for c in col..n {
                let delta = f.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&delta);
            }
        }
    }
    det
}

/// Total top-dimensional volume of a metric complex, each simplex assessed
/// by Cayley-Menger from its edge lengths.
pub fn total_volume(mc: &MetricComplex) -> Result<Scalar> {
    let Some(top) = mc.complex().dim() else {
        return Ok(Scalar::zero());
    };
    let mut total = Scalar::zero();
    for s in mc.complex().simplices(top) {
        let vol = cayley_menger_volume(top, |i, j| mc.edge_length(s[i], s[j]).clone())?;
        total = total.add(&vol);
    }
    Ok(total)
}
