//! Cell attachments that leave the base metric untouched.
//!
//! A cell of dimension k < dim V is attached through a triangulated
//! collar (cross-section edge lengths interpolating, in the square, from
//! the attaching cycle's pullback lengths to round-sphere lengths), a
//! cylinder of round cross-sections, and a round hemispherical cap. Rung
//! lengths are `pi R` per unit of the longitudinal parameter. The
//! construction is only accepted after verifying strong isometry: the
//! path-metric matrix restricted to the base vertices must equal the
//! base's own matrix exactly, otherwise the radius is too small.

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::maps::SimplicialMap;
use crate::metric::MetricComplex;
use crate::scalar::Scalar;

/// The attaching sphere of a cell: two vertices for a 1-cell, a closed
/// edge loop for a 2-cell.
#[derive(Clone, Debug)]
pub enum AttachingCycle {
    Pair(usize, usize),
    Loop(Vec<usize>),
}

impl AttachingCycle {
    pub fn cell_dim(&self) -> usize {
        match self {
            AttachingCycle::Pair(_, _) => 1,
            AttachingCycle::Loop(_) => 2,
        }
    }
}

/// Tunable lengths of the attachment; only "long enough" matters, and the
/// strong-isometry verification is the arbiter.
#[derive(Clone, Debug)]
pub struct AttachOptions {
    /// Longitudinal span of the cylinder part.
    pub cylinder_span: Scalar,
    /// Rung length per unit longitudinal parameter; `None` means `pi R`.
    pub rung_per_unit: Option<Scalar>,
}

impl Default for AttachOptions {
    fn default() -> Self {
        AttachOptions { cylinder_span: Scalar::from_int(6), rung_per_unit: None }
    }
}

/// Bookkeeping for one attached cell.
#[derive(Clone, Debug)]
pub struct AttachedCell {
    pub k: usize,
    pub radius: Scalar,
    pub mesh: usize,
    pub new_vertices: std::ops::Range<usize>,
}

/// A verified extension `V -> V'`.
#[derive(Clone, Debug)]
pub struct ExtensionComplex {
    pub base: MetricComplex,
    pub result: MetricComplex,
    pub inclusion: SimplicialMap,
    pub cells: Vec<AttachedCell>,
}

impl ExtensionComplex {
    /// The degenerate extension with no attached cells.
    pub fn trivial(base: MetricComplex) -> Self {
        let inclusion = SimplicialMap::identity(base.complex());
        ExtensionComplex { result: base.clone(), base, inclusion, cells: Vec::new() }
    }
}

pub fn attach_cell(
    base: &MetricComplex,
    cycle: &AttachingCycle,
    radius: &Scalar,
    mesh: usize,
) -> Result<ExtensionComplex> {
    attach_cell_with(base, cycle, radius, mesh, &AttachOptions::default())
}

pub fn attach_cell_with(
    base: &MetricComplex,
    cycle: &AttachingCycle,
    radius: &Scalar,
    mesh: usize,
    options: &AttachOptions,
) -> Result<ExtensionComplex> {
    let k = cycle.cell_dim();
    let dim = base.complex().dim().unwrap_or(0);
    if k >= dim {
        return Err(Error::BadParams(format!(
            "cell dimension {k} must be below the complex dimension {dim}"
        )));
    }
    if !radius.is_positive() {
        return Err(Error::BadParams("attachment radius must be positive".into()));
    }
    if mesh == 0 {
        return Err(Error::BadParams("mesh must be at least 1".into()));
    }

    let n = base.complex().vertex_count();
    let mut new_edges: Vec<((usize, usize), Scalar)> = Vec::new();
    let mut new_triangles: Vec<Simplex> = Vec::new();
    let mut next_vertex = n;
    let fresh = |count: usize, next_vertex: &mut usize| -> Vec<usize> {
        let range = (*next_vertex..*next_vertex + count).collect();
        *next_vertex += count;
        range
    };

    let rung_unit = options
        .rung_per_unit
        .clone()
        .unwrap_or_else(|| Scalar::from_f64(std::f64::consts::PI).mul(radius));
    let collar_rung = rung_unit.div(&Scalar::from_int(mesh as i64));
    let cylinder_rung = rung_unit
        .mul(&options.cylinder_span)
        .div(&Scalar::from_int(mesh as i64));
    // pole-to-equator distance on the round cap
    let polar = Scalar::from_f64(std::f64::consts::FRAC_PI_2).mul(radius);

    match cycle {
        AttachingCycle::Pair(p, q) => {
            let (p, q) = (*p, *q);
            if p == q || p >= n || q >= n {
                return Err(Error::BadAttachingCycle(format!(
                    "attaching pair ({p}, {q}) invalid on {n} vertices"
                )));
            }
            // two longitudinal sides, then an arc of total length pi R
            let mut side_end = [0usize; 2];
            for (side, &start) in [p, q].iter().enumerate() {
                let mut prev = start;
                for step in 0..2 * mesh {
                    let v = fresh(1, &mut next_vertex)[0];
                    let len =
                        if step < mesh { collar_rung.clone() } else { cylinder_rung.clone() };
                    new_edges.push(((prev, v), len));
                    prev = v;
                }
                side_end[side] = prev;
            }
            let arc_step = Scalar::from_f64(std::f64::consts::PI)
                .mul(radius)
                .div(&Scalar::from_int(mesh as i64));
            let mut prev = side_end[0];
            for step in 0..mesh {
                let v = if step + 1 == mesh {
                    side_end[1]
                } else {
                    fresh(1, &mut next_vertex)[0]
                };
                new_edges.push(((prev, v), arc_step.clone()));
                prev = v;
            }
        }
        AttachingCycle::Loop(vs) => {
            let m = vs.len();
            if m < 3 {
                return Err(Error::BadAttachingCycle("loop needs at least 3 vertices".into()));
            }
            let mut sorted = vs.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != m {
                return Err(Error::BadAttachingCycle("repeated loop vertex".into()));
            }
            for (i, &v) in vs.iter().enumerate() {
                let w = vs[(i + 1) % m];
                if v >= n || w >= n {
                    return Err(Error::BadAttachingCycle(format!("vertex {v} out of range")));
                }
                if !base.complex().contains(&[v.min(w), v.max(w)]) {
                    return Err(Error::BadAttachingCycle(format!(
                        "loop edge ({v}, {w}) missing from the complex"
                    )));
                }
            }
            // round cross-section edge length; h must be nonexpanding from
            // the round circle of radius R
            let round_len = Scalar::from_f64(2.0 * std::f64::consts::PI)
                .mul(radius)
                .div(&Scalar::from_int(m as i64));
            let pulled: Vec<Scalar> = (0..m)
                .map(|i| base.edge_length(vs[i], vs[(i + 1) % m]).clone())
                .collect();
            for (i, len) in pulled.iter().enumerate() {
                if len > &round_len {
                    return Err(Error::RTooSmall(format!(
                        "attaching edge {i} has length {len}, above the round length {round_len}"
                    )));
                }
            }

            // cross-section length at collar parameter s in [-1, 0]:
            // squared lengths interpolate linearly between endpoints
            let cross_at = |s: f64, i: usize| -> Scalar {
                let a = pulled[i].square().to_f64();
                let b = round_len.square().to_f64();
                Scalar::from_f64((-s * a + (1.0 + s) * b).sqrt())
            };

            let mut previous: Vec<usize> = vs.clone();
            let mut previous_cross: Vec<Scalar> = pulled.clone();
            let total_layers = 2 * mesh;
            for layer in 1..=total_layers {
                let current = fresh(m, &mut next_vertex);
                let (cross, rung): (Vec<Scalar>, Scalar) = if layer <= mesh {
                    let s = -1.0 + layer as f64 / mesh as f64;
                    ((0..m).map(|i| cross_at(s, i)).collect(), collar_rung.clone())
                } else {
                    (vec![round_len.clone(); m], cylinder_rung.clone())
                };
                for i in 0..m {
                    let j = (i + 1) % m;
                    let (a, b) = (previous[i], previous[j]);
                    let (a2, b2) = (current[i], current[j]);
                    new_edges.push(((a2, b2), cross[i].clone()));
                    new_edges.push(((a, a2), rung.clone()));
                    // trapezoid diagonal between consecutive cross-sections
                    let mid = previous_cross[i].add(&cross[i]).half();
                    let diag = mid.square().add(&rung.square()).sqrt();
                    new_edges.push(((a, b2), diag));
                    new_triangles.push(vec![a, b, b2]);
                    new_triangles.push(vec![a, a2, b2]);
                }
                previous = current;
                previous_cross = cross;
            }
            // cap: a fan from the pole
            let apex = fresh(1, &mut next_vertex)[0];
            for i in 0..m {
                let j = (i + 1) % m;
                new_edges.push(((previous[i], apex), polar.clone()));
                new_triangles.push(vec![previous[i], previous[j], apex]);
            }
        }
    }

    // assemble V': all base simplices plus the attachment
    let mut simplices: Vec<Simplex> = Vec::new();
    for d in 0..=dim {
        simplices.extend(base.complex().simplices(d).iter().cloned());
    }
    for ((a, b), _) in &new_edges {
        simplices.push(vec![(*a).min(*b), (*a).max(*b)]);
    }
    simplices.extend(new_triangles);
    let complex = SimplicialComplex::validate(
        next_vertex,
        simplices,
        crate::complex::FaceMode::CloseFaces,
    )?;
    let mut lengths: Vec<((usize, usize), Scalar)> =
        base.edge_lengths().map(|(k, v)| (*k, v.clone())).collect();
    lengths.extend(new_edges);
    let result = MetricComplex::new(complex.clone(), lengths)?;

    // strong isometry, verified: the base keeps exactly its own distances
    let before = base.path_metric()?;
    let after = result.path_metric()?;
    for i in 0..n {
        for j in 0..n {
            if after.d(i, j) != before.d(i, j) {
                return Err(Error::RTooSmall(format!(
                    "attachment shortens d({i}, {j}) from {} to {}",
                    before.d(i, j),
                    after.d(i, j)
                )));
            }
        }
    }

    let inclusion = SimplicialMap::new(
        base.complex().clone(),
        complex,
        (0..n).collect(),
    )?;
    Ok(ExtensionComplex {
        base: base.clone(),
        result,
        inclusion,
        cells: vec![AttachedCell {
            k,
            radius: radius.clone(),
            mesh,
            new_vertices: n..next_vertex,
        }],
    })
}
