//! The filling radius: the scale at which the fundamental class dies.
//!
//! Sup-norm balls around the Kuratowski image are axis boxes, so their
//! nerve is the flag complex of the pairwise-intersection graph, and two
//! balls of radius r intersect exactly when the point distance is at most
//! 2r. The filling radius is therefore half the death scale of the
//! fundamental class in the distance-flag filtration; between critical
//! scales the nerve is constant, so the infimum is attained at a critical
//! value. The box-intersection test is implemented independently and
//! checked against the distance test at every probed scale.

use crate::chain::ChainVector;
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{fundamental_cycle, solve_boundary};
use crate::linalg::ChainOps;
use crate::metric::{kuratowski_embed, FiniteMetricSpace, MetricComplex};
use crate::ring::RingSpec;
use crate::scalar::Scalar;

/// The distance-flag filtration of a finite metric space.
#[derive(Clone, Debug)]
pub struct ScaleFiltration {
    base: FiniteMetricSpace,
    critical_scales: Vec<Scalar>,
    max_dim: usize,
}

impl ScaleFiltration {
    pub fn new(base: FiniteMetricSpace, max_dim: usize) -> Self {
        let critical_scales = base.critical_scales();
        ScaleFiltration { base, critical_scales, max_dim }
    }

    pub fn base(&self) -> &FiniteMetricSpace {
        &self.base
    }

    pub fn critical_scales(&self) -> &[Scalar] {
        &self.critical_scales
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn complex_at(&self, scale: &Scalar) -> SimplicialComplex {
        nerve_complex(&self.base, scale, self.max_dim)
    }
}

/// The flag (clique) complex of the graph joining points at distance at
/// most `scale`, truncated at `max_dim`.
pub fn nerve_complex(
    fms: &FiniteMetricSpace,
    scale: &Scalar,
    max_dim: usize,
) -> SimplicialComplex {
    let n = fms.len();
    let words = n.div_ceil(64).max(1);
    let mut adj = vec![vec![0u64; words]; n];
    for i in 0..n {
        for j in i + 1..n {
            if fms.d(i, j) <= scale {
                adj[i][j / 64] |= 1 << (j % 64);
                adj[j][i / 64] |= 1 << (i % 64);
            }
        }
    }

    let mut cliques: Vec<Simplex> = Vec::new();
    if max_dim >= 1 {
        let mut stack: Vec<usize> = Vec::new();
        for v in 0..n {
            // candidates: neighbors of v with larger index
            let mut cand = adj[v].clone();
            mask_below(&mut cand, v + 1);
            stack.push(v);
            grow_cliques(&adj, &mut stack, cand, max_dim + 1, &mut cliques);
            stack.pop();
        }
    }
    SimplicialComplex::from_simplices(n, cliques)
}

fn grow_cliques(
    adj: &[Vec<u64>],
    stack: &mut Vec<usize>,
    cand: Vec<u64>,
    max_size: usize,
    out: &mut Vec<Simplex>,
) {
    if stack.len() >= max_size {
        return;
    }
    let words = cand.len();
    for w in 0..words {
        let mut bits = cand[w];
        while bits != 0 {
            let v = w * 64 + bits.trailing_zeros() as usize;
            bits &= bits - 1;
            stack.push(v);
            out.push(stack.clone());
            let mut next = cand.clone();
            for k in 0..words {
                next[k] &= adj[v][k];
            }
            mask_below(&mut next, v + 1);
            grow_cliques(adj, stack, next, max_size, out);
            stack.pop();
        }
    }
}

/// Clears bits strictly below `limit`.
fn mask_below(bits: &mut [u64], limit: usize) {
    let word = limit / 64;
    for w in bits.iter_mut().take(word) {
        *w = 0;
    }
    if word < bits.len() {
        bits[word] &= !((1u64 << (limit % 64)) - 1);
    }
}

/// One probed critical scale of the filtration.
#[derive(Clone, Debug)]
pub struct ProbeRecord {
    pub scale: Scalar,
    /// nerve simplex counts per dimension
    pub counts: Vec<usize>,
    /// whether the fundamental class bounds at this scale
    pub bounds: bool,
}

/// A computed filling radius with its verifiable witness.
#[derive(Clone, Debug)]
pub struct FillRadCertificate<K: crate::ring::Coeff> {
    pub ring: RingSpec,
    pub radius: Scalar,
    /// `2 * radius`: the critical scale at which the class first bounds.
    pub death_scale: Scalar,
    /// A chain in the death-scale nerve whose boundary is the included
    /// fundamental cycle.
    pub witness: ChainVector<K>,
    /// The fundamental cycle that was filled.
    pub fundamental: ChainVector<K>,
    pub max_dim: usize,
    /// All probed scales, sorted, with outcomes.
    pub probes: Vec<ProbeRecord>,
}

/// Filling radius of a metric complex over the ring `K`.
///
/// `max_dim` defaults to `n + 1`, the minimum at which the class can
/// bound; passing `n + 2` is a stability check.
pub fn filling_radius<K: ChainOps>(
    mc: &MetricComplex,
    max_dim: Option<usize>,
) -> Result<FillRadCertificate<K>> {
    let z = fundamental_cycle::<K>(mc.complex())?.ok_or(Error::NoFundamentalClass)?;
    let fms = mc.path_metric()?;
    filling_radius_of_cycle(&fms, &z, max_dim)
}

/// Filling radius of an explicit cycle in a finite metric space.
pub fn filling_radius_of_cycle<K: ChainOps>(
    fms: &FiniteMetricSpace,
    z: &ChainVector<K>,
    max_dim: Option<usize>,
) -> Result<FillRadCertificate<K>> {
    let n = z.dim();
    let max_dim = max_dim.unwrap_or(n + 1);
    if max_dim < n + 1 {
        return Err(Error::BadParams(format!(
            "max_dim {max_dim} below n + 1 = {}",
            n + 1
        )));
    }
    let filtration = ScaleFiltration::new(fms.clone(), max_dim);
    let embedding = kuratowski_embed(fms)?;

    // the class exists once every simplex of the cycle is a clique
    let mut birth = Scalar::zero();
    for (simplex, _) in z.iter() {
        for (a, &u) in simplex.iter().enumerate() {
            for &v in &simplex[a + 1..] {
                let d = fms.d(u, v);
                if d > &birth {
                    birth = d.clone();
                }
            }
        }
    }

    let candidates: Vec<Scalar> = filtration
        .critical_scales()
        .iter()
        .filter(|s| **s >= birth)
        .cloned()
        .collect();
    if candidates.is_empty() {
        return Err(Error::NeverDies);
    }

    let mut probes: Vec<(usize, ProbeRecord)> = Vec::new();
    let mut witnesses: Vec<(usize, ChainVector<K>)> = Vec::new();
    let probe = |idx: usize,
                     probes: &mut Vec<(usize, ProbeRecord)>,
                     witnesses: &mut Vec<(usize, ChainVector<K>)>|
     -> Result<bool> {
        let scale = &candidates[idx];
        let nerve = filtration.complex_at(scale);
        check_box_realization(&embedding, fms, scale, &nerve)?;
        z.validate_in(&nerve)?;
        let witness = solve_boundary(z, &nerve)?;
        let bounds = witness.is_some();
        probes.push((
            idx,
            ProbeRecord { scale: scale.clone(), counts: nerve.counts(), bounds },
        ));
        if let Some(w) = witness {
            witnesses.push((idx, w));
        }
        Ok(bounds)
    };

    // gallop upward from the birth scale: death usually sits near it, and
    // probing the diameter first would build the full flag complex
    let last = candidates.len() - 1;
    let death_idx = if probe(0, &mut probes, &mut witnesses)? {
        0
    } else {
        let mut lo = 0usize; // known not to bound
        let mut hi = None;
        let mut step = 1usize;
        while hi.is_none() {
            let idx = (lo + step).min(last);
            if probe(idx, &mut probes, &mut witnesses)? {
                hi = Some(idx);
            } else {
                if idx == last {
                    return Err(Error::NeverDies);
                }
                lo = idx;
                step *= 2;
            }
        }
        let mut hi = hi.expect("set above");
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if probe(mid, &mut probes, &mut witnesses)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };

    let death_scale = candidates[death_idx].clone();
    let witness = witnesses
        .into_iter()
        .find(|(idx, _)| *idx == death_idx)
        .map(|(_, w)| w)
        .expect("witness recorded at the death scale");
    probes.sort_by_key(|a| a.0);
    probes.dedup_by(|a, b| a.0 == b.0);

    Ok(FillRadCertificate {
        ring: K::RING,
        radius: death_scale.half(),
        death_scale,
        witness,
        fundamental: z.clone(),
        max_dim,
        probes: probes.into_iter().map(|(_, p)| p).collect(),
    })
}

/// Asserts the nerve's edge relation against the independent sup-norm
/// box-intersection test at radius `scale / 2`.
///
/// Boxes of radius r around two embedded points intersect exactly when
/// their sup-norm distance is at most 2r; with exact coordinates that
/// distance equals the path distance, closing the loop to the nerve's
/// edge rule. In floating-point mode the sup-vs-path bridge is already
/// verified to tolerance by the embedding, so only the exact comparisons
/// are enforced here.
fn check_box_realization(
    embedding: &crate::metric::KuratowskiPoints,
    fms: &FiniteMetricSpace,
    scale: &Scalar,
    nerve: &SimplicialComplex,
) -> Result<()> {
    let r = scale.half();
    let two_r = r.double();
    let exact = fms.is_exact();
    for i in 0..fms.len() {
        for j in i + 1..fms.len() {
            let by_box = embedding.boxes_intersect(i, j, &r);
            let by_sup = embedding.sup_dist(i, j) <= two_r;
            let by_dist = fms.d(i, j) <= scale;
            let in_nerve = nerve.contains(&[i, j]);
            let consistent =
                by_box == by_sup && by_dist == in_nerve && (!exact || by_sup == by_dist);
            if !consistent {
                return Err(Error::BadMetric(format!(
                    "ball-nerve realization mismatch at ({i}, {j}), scale {scale}"
                )));
            }
        }
    }
    Ok(())
}

impl<K: ChainOps> FillRadCertificate<K> {
    /// Re-verifies the certificate: the witness boundary equals the
    /// fundamental cycle in the death-scale nerve, and no witness exists
    /// one critical scale lower.
    pub fn verify(&self, fms: &FiniteMetricSpace) -> Result<()> {
        if self.witness.boundary() != self.fundamental {
            return Err(Error::BadFormat("witness boundary mismatch".into()));
        }
        let nerve = nerve_complex(fms, &self.death_scale, self.max_dim);
        self.witness.validate_in(&nerve)?;
        let scales = fms.critical_scales();
        let lower = scales.iter().rev().find(|s| **s < self.death_scale);
        if let Some(lower) = lower {
            let nerve_below = nerve_complex(fms, lower, self.max_dim);
            if self.fundamental.validate_in(&nerve_below).is_ok()
                && solve_boundary(&self.fundamental, &nerve_below)?.is_some()
            {
                return Err(Error::BadFormat(
                    "class already bounds one critical scale lower".into(),
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use num_rational::BigRational;

    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::homology::homology_summary;
    use crate::ring::Z2;

    fn cycle(n: usize, total: Scalar) -> MetricComplex {
        let edges = (0..n).map(|i| vec![i, (i + 1) % n]).collect::<Vec<_>>();
        let c = SimplicialComplex::from_simplices(n, edges);
        let len = total.div(&Scalar::from_int(n as i64));
        let lengths: Vec<_> =
            c.simplices(1).iter().map(|e| ((e[0], e[1]), len.clone())).collect();
        MetricComplex::new(c, lengths).unwrap()
    }

    #[test]
    fn nerve_at_large_scale_is_complete_flag() {
        let fms = cycle(4, Scalar::from_int(4)).path_metric().unwrap();
        let nerve = nerve_complex(&fms, &Scalar::from_int(2), 2);
        assert_eq!(nerve.counts(), vec![4, 6, 4]);
        let nerve3 = nerve_complex(&fms, &Scalar::from_int(2), 3);
        assert_eq!(nerve3.counts(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn nerve_below_min_distance_is_discrete() {
        let fms = cycle(4, Scalar::from_int(4)).path_metric().unwrap();
        let nerve = nerve_complex(&fms, &Scalar::from_ratio(1, 2), 2);
        assert_eq!(nerve.counts(), vec![4]);
    }

    #[test]
    fn unit_six_cycle_nerve_at_one_has_no_triangles() {
        let fms = cycle(6, Scalar::from_int(6)).path_metric().unwrap();
        let nerve = nerve_complex(&fms, &Scalar::one(), 2);
        assert_eq!(nerve.counts(), vec![6, 6]);
        let h = homology_summary(&nerve, RingSpec::ModTwoZ2);
        assert_eq!(h.betti(1), 1);
    }

    #[test]
    fn four_cycle_filling_radius_over_z2() {
        let mc = cycle(4, Scalar::from_int(4));
        let cert = filling_radius::<Z2>(&mc, None).unwrap();
        assert_eq!(cert.death_scale, Scalar::from_int(2));
        assert_eq!(cert.radius, Scalar::one());
        cert.verify(&mc.path_metric().unwrap()).unwrap();

        // brute-force oracle: betti numbers at the two critical scales
        let fms = mc.path_metric().unwrap();
        let alive = nerve_complex(&fms, &Scalar::from_int(1), 2);
        let dead = nerve_complex(&fms, &Scalar::from_int(2), 2);
        assert_eq!(homology_summary(&alive, RingSpec::ModTwoZ2).betti(1), 1);
        assert_eq!(homology_summary(&dead, RingSpec::ModTwoZ2).betti(1), 0);
    }

    #[test]
    fn homogeneity_under_scaling() {
        let mc = cycle(4, Scalar::from_int(4));
        let tripled = mc.scale(&Scalar::from_int(3)).unwrap();
        let base = filling_radius::<Z2>(&mc, None).unwrap();
        let scaled = filling_radius::<Z2>(&tripled, None).unwrap();
        assert_eq!(scaled.radius, base.radius.mul(&Scalar::from_int(3)));
    }

    #[test]
    fn forty_eight_cycle_death_at_hop_sixteen() {
        let total = Scalar::parse("6.283185307").unwrap();
        let mc = cycle(48, total.clone());
        let cert = filling_radius::<Z2>(&mc, None).unwrap();
        // death exactly at 16 hops of length L/48, radius exactly L/6
        let hop = total.div(&Scalar::from_int(48));
        assert_eq!(cert.death_scale, hop.mul(&Scalar::from_int(16)));
        assert_eq!(cert.radius, total.div(&Scalar::from_int(6)));
        assert!((cert.radius.to_f64() - std::f64::consts::FRAC_PI_3).abs() < 1e-9);
        cert.verify(&mc.path_metric().unwrap()).unwrap();
    }

    #[test]
    fn ring_comparison_on_four_cycle() {
        let mc = cycle(4, Scalar::from_int(4));
        let q = filling_radius::<BigRational>(&mc, None).unwrap();
        let z = filling_radius::<BigInt>(&mc, None).unwrap();
        let z2 = filling_radius::<Z2>(&mc, None).unwrap();
        assert!(q.radius <= z.radius);
        assert!(z2.radius <= z.radius);
    }

    #[test]
    fn circle_death_scale_is_ring_independent() {
        let mc = cycle(12, Scalar::from_int(12));
        let q = filling_radius::<BigRational>(&mc, None).unwrap();
        let z = filling_radius::<BigInt>(&mc, None).unwrap();
        let z2 = filling_radius::<Z2>(&mc, None).unwrap();
        assert_eq!(q.death_scale, z.death_scale);
        assert_eq!(z2.death_scale, z.death_scale);
    }

    #[test]
    fn max_dim_below_minimum_is_rejected() {
        let mc = cycle(4, Scalar::from_int(4));
        assert!(matches!(
            filling_radius::<Z2>(&mc, Some(1)),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn stability_at_max_dim_plus_one() {
        let mc = cycle(12, Scalar::from_int(12));
        let base = filling_radius::<Z2>(&mc, None).unwrap();
        let higher = filling_radius::<Z2>(&mc, Some(3)).unwrap();
        assert_eq!(base.death_scale, higher.death_scale);
    }

    #[test]
    fn search_agrees_with_a_linear_scan() {
        // scan every candidate scale in order and find the first that
        // bounds; the galloped bisection must land on the same scale
        for mc in [
            cycle(12, Scalar::from_int(12)),
            crate::fixtures::torus(3, 3).unwrap(),
            crate::fixtures::octahedron(),
        ] {
            let z = fundamental_cycle::<Z2>(mc.complex()).unwrap().unwrap();
            let fms = mc.path_metric().unwrap();
            let cert = filling_radius_of_cycle::<Z2>(&fms, &z, None).unwrap();
            let n = z.dim();
            let mut first_bounding: Option<Scalar> = None;
            let mut seen_true = false;
            for scale in fms.critical_scales() {
                let nerve = nerve_complex(&fms, &scale, n + 1);
                let bounds = z.validate_in(&nerve).is_ok()
                    && solve_boundary(&z, &nerve).unwrap().is_some();
                if bounds && first_bounding.is_none() {
                    first_bounding = Some(scale.clone());
                }
                // the predicate is monotone along the filtration
                assert!(!seen_true || bounds, "bounding is not monotone");
                seen_true = seen_true || bounds;
            }
            assert_eq!(first_bounding.as_ref(), Some(&cert.death_scale));
        }
    }

    #[test]
    fn subdivision_refines_toward_a_sixth_of_length() {
        // unit-hop 4-cycle, total length 4, target radius 4/6 = 2/3
        let mc = cycle(4, Scalar::from_int(4));
        let target = Scalar::from_ratio(2, 3);
        let mut previous: Option<Scalar> = None;
        for rounds in 0..4 {
            let refined = mc.subdivide(rounds).unwrap();
            let cert = filling_radius::<Z2>(&refined, None).unwrap();
            let n = refined.complex().vertex_count() as i64;
            let gap = cert.radius.sub(&target);
            assert!(!gap.is_negative(), "radius below the continuum value");
            // within the discretization bound L/n
            assert!(gap <= Scalar::from_ratio(4, n), "rounds {rounds}");
            if let Some(prev) = previous {
                assert!(cert.radius <= prev, "not monotone at rounds {rounds}");
            }
            previous = Some(cert.radius);
        }
    }
}
