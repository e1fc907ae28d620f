//! Empirical harnesses for the comparison and extension behavior of the
//! filling invariants.
//!
//! The comparison run takes an (n,1)-monotone map with unit degree,
//! builds the interpolated pullback metric for each t, and checks that
//! the source filling radius dominates the target's while the volume
//! excess shrinks with t. The extension run compares a complex against a
//! verified cell attachment and reports the filling radii side by side.

use crate::error::{Error, Result};
use crate::extension::ExtensionComplex;
use crate::fillrad::filling_radius;
use crate::fillvol::{fillvol_upper, AmbientSpec, OptimalChain, SearchBudget};
use crate::maps::{
    check_monotone, degree, pullback_interp_metric, total_volume, MonotonicityReport,
    SimplicialMap,
};
use crate::metric::MetricComplex;
use crate::ring::RingSpec;
use crate::scalar::Scalar;

/// One interpolation step of the comparison experiment.
#[derive(Clone, Debug)]
pub struct ComparisonRow {
    pub t: Scalar,
    pub ring: RingSpec,
    /// FillRad of the source under the interpolated pullback metric.
    pub fillrad_source: Scalar,
    /// FillRad of the target under its own metric.
    pub fillrad_target: Scalar,
    pub vol_source: Scalar,
    pub vol_target: Scalar,
    pub fillvol_source: Option<Scalar>,
    pub fillvol_target: Option<Scalar>,
    /// `fillrad_source >= fillrad_target`
    pub ok: bool,
}

impl ComparisonRow {
    pub fn volume_excess(&self) -> Scalar {
        self.vol_source.sub(&self.vol_target)
    }
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub ring: RingSpec,
    pub monotonicity: MonotonicityReport,
    pub rows: Vec<ComparisonRow>,
    pub all_ok: bool,
}

/// Runs the comparison experiment for each interpolation parameter.
///
/// Hypotheses checked up front: the map is (n,1)-monotone and its degree
/// is a unit of the ring (surjectivity on top homology).
pub fn comparison_experiment<K: OptimalChain>(
    f: &SimplicialMap,
    g2: &MetricComplex,
    g1: &MetricComplex,
    t_values: &[Scalar],
    max_dim: Option<usize>,
    with_fillvol: bool,
) -> Result<ComparisonReport> {
    let n = f
        .source()
        .dim()
        .ok_or_else(|| Error::HypothesisFailed("empty source".into()))?;
    let monotonicity = check_monotone(f, n, 1)?;
    if !monotonicity.is_monotone {
        return Err(Error::HypothesisFailed(format!(
            "map is not ({n},1)-monotone: {} offenders",
            monotonicity.offending.len()
        )));
    }
    let deg = degree::<K>(f)?;
    if !deg.is_unit() {
        return Err(Error::HypothesisFailed(format!(
            "degree {deg} is not a unit over {}, so the map cannot be surjective on top homology",
            K::RING
        )));
    }

    let budget = SearchBudget::default();
    let target_cert = filling_radius::<K>(g2, max_dim)?;
    let vol_target = total_volume(g2)?;
    let fillvol_target = if with_fillvol {
        Some(fillvol_upper::<K>(g2, &AmbientSpec::Cone, &budget)?.value)
    } else {
        None
    };

    let mut rows = Vec::with_capacity(t_values.len());
    for t in t_values {
        let pulled = pullback_interp_metric(f, g2, g1, t)?;
        let source_cert = filling_radius::<K>(&pulled, max_dim)?;
        let vol_source = total_volume(&pulled)?;
        let fillvol_source = if with_fillvol {
            Some(fillvol_upper::<K>(&pulled, &AmbientSpec::Cone, &budget)?.value)
        } else {
            None
        };
        let ok = source_cert.radius >= target_cert.radius;
        rows.push(ComparisonRow {
            t: t.clone(),
            ring: K::RING,
            fillrad_source: source_cert.radius,
            fillrad_target: target_cert.radius.clone(),
            vol_source,
            vol_target: vol_target.clone(),
            fillvol_source,
            fillvol_target: fillvol_target.clone(),
            ok,
        });
    }
    let all_ok = rows.iter().all(|r| r.ok);
    Ok(ComparisonReport { ring: K::RING, monotonicity, rows, all_ok })
}

/// Outcome of comparing a complex with its cell-attachment extension.
#[derive(Clone, Debug)]
pub struct ExtensionReport {
    pub ring: RingSpec,
    pub fillrad_base: Scalar,
    pub fillrad_extended: Scalar,
    pub equal_exactly: bool,
    /// Half of the base filtration's critical-scale gap above the death
    /// scale; zero when the death scale is already the diameter.
    pub allowed_gap: Scalar,
    /// `|extended - base| <= allowed_gap` (with exact equality accepted
    /// even at gap zero).
    pub within_gap: bool,
    pub fillvol_base: Option<Scalar>,
    pub fillvol_extended: Option<Scalar>,
}

/// Computes the filling radius of a complex and of its extension and
/// reports how closely they agree.
pub fn extension_experiment<K: OptimalChain>(
    ext: &ExtensionComplex,
    max_dim: Option<usize>,
    with_fillvol: bool,
) -> Result<ExtensionReport> {
    let budget = SearchBudget::default();
    let base_cert = filling_radius::<K>(&ext.base, max_dim)?;
    let ext_cert = filling_radius::<K>(&ext.result, max_dim)?;

    let base_fms = ext.base.path_metric()?;
    let scales = base_fms.critical_scales();
    let next = scales.iter().find(|s| **s > base_cert.death_scale);
    let allowed_gap = match next {
        Some(next) => next.sub(&base_cert.death_scale).half(),
        None => Scalar::zero(),
    };
    let equal_exactly = ext_cert.radius == base_cert.radius;
    let diff = ext_cert.radius.sub(&base_cert.radius).abs();
    let within_gap = equal_exactly || diff <= allowed_gap;

    let (fillvol_base, fillvol_extended) = if with_fillvol {
        (
            Some(fillvol_upper::<K>(&ext.base, &AmbientSpec::Cone, &budget)?.value),
            Some(fillvol_upper::<K>(&ext.result, &AmbientSpec::Cone, &budget)?.value),
        )
    } else {
        (None, None)
    };

    Ok(ExtensionReport {
        ring: K::RING,
        fillrad_base: base_cert.radius,
        fillrad_extended: ext_cert.radius,
        equal_exactly,
        allowed_gap,
        within_gap,
        fillvol_base,
        fillvol_extended,
    })
}
