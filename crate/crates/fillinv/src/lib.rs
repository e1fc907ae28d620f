//! Filling invariants of finite simplicial complexes with piecewise-linear
//! metrics.
//!
//! The crate computes filling radii (the scale at which the fundamental
//! class dies in the neighborhood filtration of the Kuratowski embedding)
//! and certified upper bounds on filling volumes (optimal homologous
//! chains), over Z, Q, and Z/2, together with the dilation/extension
//! machinery and the map-comparison and cell-attachment experiments built
//! on top of them. All homological arithmetic is exact.
//!
//! ```
//! use fillinv::fillrad::filling_radius;
//! use fillinv::fixtures;
//! use fillinv::ring::Z2;
//! use fillinv::scalar::Scalar;
//!
//! // a 48-point circle of total length ~2 pi dies at exactly 16 hops
//! let total = Scalar::parse("6.283185307").unwrap();
//! let circle = fixtures::cycle(48, &total).unwrap();
//! let cert = filling_radius::<Z2>(&circle, None).unwrap();
//! assert_eq!(cert.radius, total.div(&Scalar::from_int(6)));
//! assert!((cert.radius.to_f64() - std::f64::consts::FRAC_PI_3).abs() < 1e-9);
//! ```

// matrix code indexes rows and columns directly
#![allow(clippy::needless_range_loop)]

pub mod chain;
pub mod complex;
pub mod error;
pub mod experiment;
pub mod extension;
pub mod fillrad;
pub mod fillvol;
pub mod fixtures;
pub mod homology;
pub mod json;
pub mod linalg;
pub mod lipschitz;
pub mod lp;
pub mod maps;
pub mod metric;
pub mod ring;
pub mod scalar;
pub mod snf;

pub use chain::ChainVector;
pub use complex::{FaceMode, Simplex, SimplicialComplex};
pub use error::{Error, Result};
pub use experiment::{
    comparison_experiment, extension_experiment, ComparisonReport, ComparisonRow,
    ExtensionReport,
};
pub use extension::{attach_cell, AttachOptions, AttachingCycle, ExtensionComplex};
pub use fillrad::{filling_radius, nerve_complex, FillRadCertificate, ScaleFiltration};
pub use fillvol::{
    affine_simplex_volume, cone_fill, fillvol_upper, optimal_chain, AmbientSpec, ApexRule,
    FillVolCertificate, SearchBudget, WeightMode, WeightedComplex,
};
pub use homology::{
    fundamental_cycle, homology_summary, is_orientable, solve_boundary, HomologySummary,
};
pub use lipschitz::{
    dilation, mcshane_extend, DilationProfile, ExtensionRule, PartialMap, TotalMap,
};
pub use maps::{
    check_monotone, degree, pullback_interp_metric, simplex_volume_from_lengths, total_volume,
    MonotonicityReport, SimplicialMap,
};
pub use metric::{kuratowski_embed, FiniteMetricSpace, KuratowskiPoints, MetricComplex};
pub use ring::{Coeff, RingSpec, Z2};
pub use scalar::Scalar;
