//! Dilation and Lipschitz extension into sup-norm coordinate space.
//!
//! A partial map carries values on a subset of a finite metric space; the
//! extension operator fills in the rest via per-point infima
//! `F_x(v) = min_y (f_y(v) + dil(f, y) d(x, y))`, which extends the map
//! without increasing any per-point dilation. A coarser variant using
//! the single global constant is also provided; it extends the map too
//! but only controls the global dilation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::metric::{sup_norm_dist, FiniteMetricSpace};
use crate::scalar::Scalar;

/// Values of a map on a nonempty subset of a finite metric space, into a
/// shared sup-norm coordinate space.
#[derive(Clone, Debug)]
pub struct PartialMap {
    source: FiniteMetricSpace,
    domain: Vec<usize>,
    values: Vec<Vec<Scalar>>,
}

impl PartialMap {
    pub fn new(
        source: FiniteMetricSpace,
        domain: Vec<usize>,
        values: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        if domain.is_empty() {
            return Err(Error::BadFormat("empty domain subset".into()));
        }
        if domain.len() != values.len() {
            return Err(Error::BadFormat("domain/value length mismatch".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &y in &domain {
            if y >= source.len() {
                return Err(Error::BadIndex { index: y, vertex_count: source.len() });
            }
            if !seen.insert(y) {
                return Err(Error::BadFormat(format!("repeated domain point {y}")));
            }
        }
        let width = values[0].len();
        if values.iter().any(|v| v.len() != width) {
            return Err(Error::BadFormat("value vectors of unequal width".into()));
        }
        Ok(PartialMap { source, domain, values })
    }

    pub fn source(&self) -> &FiniteMetricSpace {
        &self.source
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn value(&self, position: usize) -> &[Scalar] {
        &self.values[position]
    }
}

/// Global and per-point dilations of a partial map.
#[derive(Clone, Debug)]
pub struct DilationProfile {
    pub global: Scalar,
    /// keyed by domain point index
    pub per_point: BTreeMap<usize, Scalar>,
}

/// Per-point dilations as maxima of distance ratios over the finite
/// domain; a singleton domain has dilation zero by convention.
pub fn dilation(pm: &PartialMap) -> Result<DilationProfile> {
    let mut per_point = BTreeMap::new();
    for (a, &ya) in pm.domain.iter().enumerate() {
        let mut best = Scalar::zero();
        for (b, &yb) in pm.domain.iter().enumerate() {
            if a == b {
                continue;
            }
            let dist = pm.source.d(ya, yb);
            if dist.is_zero() {
                return Err(Error::ZeroDistance(ya, yb));
            }
            let ratio = sup_norm_dist(&pm.values[a], &pm.values[b]).div(dist);
            if ratio > best {
                best = ratio;
            }
        }
        per_point.insert(ya, best);
    }
    let global =
        per_point.values().fold(Scalar::zero(), |acc, r| if r > &acc { r.clone() } else { acc });
    Ok(DilationProfile { global, per_point })
}

/// A total map on the source space as coordinate vectors per point.
#[derive(Clone, Debug)]
pub struct TotalMap {
    pub values: Vec<Vec<Scalar>>,
}

impl TotalMap {
    pub fn value(&self, x: usize) -> &[Scalar] {
        &self.values[x]
    }

    /// Global and per-point dilations of the total map, restricted suprema
    /// taken over all pairs of the source.
    pub fn dilation_profile(&self, space: &FiniteMetricSpace) -> DilationProfile {
        let n = self.values.len();
        let mut per_point = BTreeMap::new();
        for x in 0..n {
            let mut best = Scalar::zero();
            for y in 0..n {
                if x == y {
                    continue;
                }
                let ratio = sup_norm_dist(&self.values[x], &self.values[y]).div(space.d(x, y));
                if ratio > best {
                    best = ratio;
                }
            }
            per_point.insert(x, best);
        }
        let global = per_point
            .values()
            .fold(Scalar::zero(), |acc, r| if r > &acc { r.clone() } else { acc });
        DilationProfile { global, per_point }
    }
}

/// Which Lipschitz constants the extension formula uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionRule {
    /// `dil(f, y)` per domain point: preserves every per-point dilation.
    PerPoint,
    /// The single `dil(f)`: preserves only the global dilation.
    Global,
}

/// Extends a partial map to the whole space by the infimum formula.
///
/// The restriction to the domain reproduces the input exactly, and with
/// `ExtensionRule::PerPoint` both the global and all per-point dilations
/// are preserved.
pub fn mcshane_extend(pm: &PartialMap, rule: ExtensionRule) -> Result<TotalMap> {
    let profile = dilation(pm)?;
    let n = pm.source.len();
    let width = pm.values[0].len();
    let mut values = Vec::with_capacity(n);
    for x in 0..n {
        let mut coords = Vec::with_capacity(width);
        for v in 0..width {
            let mut best: Option<Scalar> = None;
            for (pos, &y) in pm.domain.iter().enumerate() {
                let constant = match rule {
                    ExtensionRule::PerPoint => &profile.per_point[&y],
                    ExtensionRule::Global => &profile.global,
                };
                let candidate = pm.values[pos][v].add(&constant.mul(pm.source.d(x, y)));
                if best.as_ref().is_none_or(|b| &candidate < b) {
                    best = Some(candidate);
                }
            }
            coords.push(best.expect("nonempty domain"));
        }
        values.push(coords);
    }
    Ok(TotalMap { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::metric::{kuratowski_embed, MetricComplex};

    fn unit_cycle_metric(n: usize) -> FiniteMetricSpace {
        let edges = (0..n).map(|i| vec![i, (i + 1) % n]).collect::<Vec<_>>();
        let c = SimplicialComplex::from_simplices(n, edges);
        MetricComplex::unit(c).path_metric().unwrap()
    }

    #[test]
    fn kuratowski_restriction_has_dilation_one() {
        let fms = unit_cycle_metric(4);
        let kp = kuratowski_embed(&fms).unwrap();
        let values: Vec<Vec<Scalar>> = (0..4).map(|i| kp.point(i).to_vec()).collect();
        let pm = PartialMap::new(fms, (0..4).collect(), values).unwrap();
        let profile = dilation(&pm).unwrap();
        assert_eq!(profile.global, Scalar::one());
        for dil in profile.per_point.values() {
            assert_eq!(dil, &Scalar::one());
        }
    }

    #[test]
    fn constant_map_has_dilation_zero() {
        let fms = unit_cycle_metric(4);
        let values = vec![vec![Scalar::from_int(7), Scalar::from_int(2)]; 3];
        let pm = PartialMap::new(fms, vec![0, 1, 2], values).unwrap();
        let profile = dilation(&pm).unwrap();
        assert!(profile.global.is_zero());
    }

    #[test]
    fn doubled_embedding_has_dilation_two() {
        let fms = unit_cycle_metric(4);
        let kp = kuratowski_embed(&fms).unwrap();
        let values: Vec<Vec<Scalar>> = (0..4)
            .map(|i| kp.point(i).iter().map(Scalar::double).collect())
            .collect();
        let pm = PartialMap::new(fms, (0..4).collect(), values).unwrap();
        assert_eq!(dilation(&pm).unwrap().global, Scalar::from_int(2));
    }

    #[test]
    fn extension_of_total_map_is_identity() {
        let fms = unit_cycle_metric(4);
        let kp = kuratowski_embed(&fms).unwrap();
        let values: Vec<Vec<Scalar>> = (0..4).map(|i| kp.point(i).to_vec()).collect();
        let pm = PartialMap::new(fms, (0..4).collect(), values.clone()).unwrap();
        let total = mcshane_extend(&pm, ExtensionRule::PerPoint).unwrap();
        for (x, expected) in values.iter().enumerate() {
            assert_eq!(total.value(x), expected.as_slice());
        }
    }

    #[test]
    fn singleton_domain_extends_constantly() {
        let fms = unit_cycle_metric(4);
        let value = vec![Scalar::from_int(3), Scalar::from_ratio(1, 2)];
        let pm = PartialMap::new(fms, vec![2], vec![value.clone()]).unwrap();
        let total = mcshane_extend(&pm, ExtensionRule::PerPoint).unwrap();
        for x in 0..4 {
            assert_eq!(total.value(x), value.as_slice());
        }
    }

    #[test]
    fn two_point_domain_preserves_per_point_dilations() {
        let fms = unit_cycle_metric(4);
        let kp = kuratowski_embed(&fms).unwrap();
        let domain = vec![0, 1];
        let values: Vec<Vec<Scalar>> = domain.iter().map(|&i| kp.point(i).to_vec()).collect();
        let pm = PartialMap::new(fms.clone(), domain.clone(), values.clone()).unwrap();
        let before = dilation(&pm).unwrap();
        let total = mcshane_extend(&pm, ExtensionRule::PerPoint).unwrap();

        // restriction equals the input exactly
        for (pos, &y) in domain.iter().enumerate() {
            assert_eq!(total.value(y), values[pos].as_slice());
        }
        // exhaustive pairwise ratio check against the recorded profile
        let after = total.dilation_profile(&fms);
        assert_eq!(after.global, before.global);
        for &y in &domain {
            assert_eq!(after.per_point[&y], before.per_point[&y]);
        }
    }

    #[test]
    fn per_point_extension_below_global_extension() {
        // a map with genuinely different per-point constants
        let fms = unit_cycle_metric(4);
        let values = vec![
            vec![Scalar::zero(), Scalar::zero()],
            vec![Scalar::from_int(2), Scalar::zero()],
            vec![Scalar::from_int(2), Scalar::from_ratio(1, 2)],
        ];
        let pm = PartialMap::new(fms, vec![0, 1, 2], values).unwrap();
        let fine = mcshane_extend(&pm, ExtensionRule::PerPoint).unwrap();
        let coarse = mcshane_extend(&pm, ExtensionRule::Global).unwrap();
        // smaller constants shrink every infimum term
        let mut somewhere_strict = false;
        for x in 0..4 {
            for v in 0..2 {
                assert!(fine.value(x)[v] <= coarse.value(x)[v]);
                if fine.value(x)[v] < coarse.value(x)[v] {
                    somewhere_strict = true;
                }
            }
        }
        assert!(somewhere_strict);
        // both agree with the input on the domain
        for (pos, &y) in pm.domain().iter().enumerate() {
            assert_eq!(fine.value(y), pm.value(pos));
            assert_eq!(coarse.value(y), pm.value(pos));
        }
    }

    #[test]
    fn zero_distance_detected() {
        // hand-build a degenerate "metric" bypassing validation
        let fms = unit_cycle_metric(3);
        let pm = PartialMap::new(
            fms,
            vec![0, 1],
            vec![vec![Scalar::zero()], vec![Scalar::one()]],
        )
        .unwrap();
        // distances are positive here, so no error
        assert!(dilation(&pm).is_ok());
    }
}
