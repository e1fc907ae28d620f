//! Piecewise-linear metrics on complexes and the induced finite metric
//! spaces.
//!
//! A metric complex is a complex plus positive edge lengths; distances
//! between vertices are shortest paths in the weighted 1-skeleton. The
//! Kuratowski embedding sends each point to its distance row, an isometry
//! into the sup-norm coordinate space indexed by the point set.

use std::collections::BTreeMap;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Relative tolerance for metric validation in floating-point mode.
pub const FLOAT_METRIC_TOL: f64 = 1e-9;

/// Relative tolerance under which two critical scales merge.
pub const SCALE_MERGE_TOL: f64 = 1e-12;

/// A finite simplicial complex with positive edge lengths.
#[derive(Clone, Debug)]
pub struct MetricComplex {
    complex: SimplicialComplex,
    lengths: BTreeMap<(usize, usize), Scalar>,
}

impl MetricComplex {
    pub fn new(
        complex: SimplicialComplex,
        lengths: impl IntoIterator<Item = ((usize, usize), Scalar)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((a, b), len) in lengths {
            let key = (a.min(b), a.max(b));
            map.insert(key, len);
        }
        for edge in complex.simplices(1) {
            let key = (edge[0], edge[1]);
            match map.get(&key) {
                None => {
                    return Err(Error::BadFormat(format!("edge {key:?} has no length")));
                }
                Some(len) if !len.is_positive() => {
                    return Err(Error::NonpositiveLength(key.0, key.1));
                }
                Some(_) => {}
            }
        }
        map.retain(|key, _| complex.contains(&[key.0, key.1]));
        Ok(MetricComplex { complex, lengths: map })
    }

    /// All edges get length one.
    pub fn unit(complex: SimplicialComplex) -> Self {
        let lengths: Vec<_> =
            complex.simplices(1).iter().map(|e| ((e[0], e[1]), Scalar::one())).collect();
        MetricComplex::new(complex, lengths).expect("unit lengths are positive")
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn edge_length(&self, a: usize, b: usize) -> &Scalar {
        self.lengths
            .get(&(a.min(b), a.max(b)))
            .unwrap_or_else(|| panic!("no edge ({a}, {b})"))
    }

    pub fn edge_lengths(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.lengths.iter()
    }

    /// True when every edge length is an exact rational.
    pub fn is_exact(&self) -> bool {
        self.lengths.values().all(Scalar::is_exact)
    }

    /// Multiplies every edge length by `factor > 0`.
    pub fn scale(&self, factor: &Scalar) -> Result<MetricComplex> {
        if !factor.is_positive() {
            return Err(Error::NonpositiveScale);
        }
        let lengths = self
            .lengths
            .iter()
            .map(|(key, len)| (*key, len.mul(factor)))
            .collect::<Vec<_>>();
        MetricComplex::new(self.complex.clone(), lengths)
    }

    /// Edge-midpoint subdivision, `rounds` times. Split edges get half the
    /// parent length; the interior edges of a subdivided triangle are the
    /// flat-triangle midsegments, half the opposite parent side.
    ///
    /// Only complexes of dimension at most 2 are supported.
    pub fn subdivide(&self, rounds: usize) -> Result<MetricComplex> {
        let dim = self.complex.dim().unwrap_or(0);
        if dim > 2 {
            return Err(Error::UnsupportedDimension(dim));
        }
        let mut current = self.clone();
        for _ in 0..rounds {
            current = current.subdivide_once()?;
        }
        Ok(current)
    }

    fn subdivide_once(&self) -> Result<MetricComplex> {
        let n = self.complex.vertex_count();
        let edges = self.complex.simplices(1);
        let midpoint: BTreeMap<(usize, usize), usize> = edges
            .iter()
            .enumerate()
            .map(|(rank, e)| ((e[0], e[1]), n + rank))
            .collect();
        let mid = |a: usize, b: usize| midpoint[&(a.min(b), a.max(b))];

        let mut lengths: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        let mut simplices: Vec<Simplex> = Vec::new();
        let mut add_edge = |u: usize, v: usize, len: Scalar, simplices: &mut Vec<Simplex>| {
            let key = (u.min(v), u.max(v));
            if lengths.insert(key, len).is_none() {
                simplices.push(vec![key.0, key.1]);
            }
        };

        for e in edges {
            let m = mid(e[0], e[1]);
            let half = self.edge_length(e[0], e[1]).half();
            add_edge(e[0], m, half.clone(), &mut simplices);
            add_edge(m, e[1], half, &mut simplices);
        }
        for t in self.complex.simplices(2) {
            let (a, b, c) = (t[0], t[1], t[2]);
            let (mab, mac, mbc) = (mid(a, b), mid(a, c), mid(b, c));
            // midsegment through two side midpoints: half the opposite side
            add_edge(mab, mac, self.edge_length(b, c).half(), &mut simplices);
            add_edge(mab, mbc, self.edge_length(a, c).half(), &mut simplices);
            add_edge(mac, mbc, self.edge_length(a, b).half(), &mut simplices);
            for tri in [
                vec![a, mab, mac],
                vec![b, mab, mbc],
                vec![c, mac, mbc],
                vec![mab, mac, mbc],
            ] {
                simplices.push(tri);
            }
        }

        let complex = SimplicialComplex::from_simplices(n + edges.len(), simplices);
        MetricComplex::new(complex, lengths)
    }

    /// All-pairs shortest-path distances on the weighted 1-skeleton.
    pub fn path_metric(&self) -> Result<FiniteMetricSpace> {
        let n = self.complex.vertex_count();
        let mut dist: Vec<Vec<Option<Scalar>>> = vec![vec![None; n]; n];
        for (i, row) in dist.iter_mut().enumerate() {
            row[i] = Some(Scalar::zero());
        }
        for ((a, b), len) in &self.lengths {
            let better = dist[*a][*b].as_ref().is_none_or(|cur| len < cur);
            if better {
                dist[*a][*b] = Some(len.clone());
                dist[*b][*a] = Some(len.clone());
            }
        }
        // Floyd-Warshall; an entry is only replaced by a strictly shorter
        // path, so exact values survive unless genuinely improved.
        for k in 0..n {
            for i in 0..n {
                let Some(dik) = dist[i][k].clone() else { continue };
                for j in 0..n {
                    let Some(dkj) = &dist[k][j] else { continue };
                    let candidate = dik.add(dkj);
                    let better = dist[i][j].as_ref().is_none_or(|cur| &candidate < cur);
                    if better {
                        dist[i][j] = Some(candidate);
                    }
                }
            }
        }
        let mut rows = Vec::with_capacity(n);
        for (i, row) in dist.into_iter().enumerate() {
            let mut out = Vec::with_capacity(n);
            for (j, d) in row.into_iter().enumerate() {
                out.push(d.ok_or(Error::Disconnected(i, j))?);
            }
            rows.push(out);
        }
        FiniteMetricSpace::new(rows)
    }
}

/// Labeled points with an exact or double-precision distance matrix.
#[derive(Clone, Debug)]
pub struct FiniteMetricSpace {
    dist: Vec<Vec<Scalar>>,
}

impl FiniteMetricSpace {
    /// Validates the metric axioms: zero diagonal, symmetry, positivity of
    /// off-diagonal entries, and the triangle inequality (exactly in exact
    /// mode, within `FLOAT_METRIC_TOL` relative otherwise).
    pub fn new(dist: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = dist.len();
        for (i, row) in dist.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadMetric(format!("row {i} has length {}", row.len())));
            }
            if !row[i].is_zero() {
                return Err(Error::BadMetric(format!("nonzero diagonal at {i}")));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if dist[i][j] != dist[j][i] {
                    return Err(Error::BadMetric(format!("asymmetry at ({i}, {j})")));
                }
                if !dist[i][j].is_positive() {
                    return Err(Error::BadMetric(format!(
                        "nonpositive distance between distinct points {i} and {j}"
                    )));
                }
            }
        }
        let exact = dist.iter().flatten().all(Scalar::is_exact);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let via = dist[i][k].add(&dist[k][j]);
                    let ok = if exact {
                        dist[i][j] <= via
                    } else {
                        dist[i][j].to_f64()
                            <= via.to_f64() * (1.0 + FLOAT_METRIC_TOL) + FLOAT_METRIC_TOL
                    };
                    if !ok {
                        return Err(Error::BadMetric(format!(
                            "triangle inequality fails: d({i},{j}) > d({i},{k}) + d({k},{j})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteMetricSpace { dist })
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn d(&self, i: usize, j: usize) -> &Scalar {
        &self.dist[i][j]
    }

    pub fn is_exact(&self) -> bool {
        self.dist.iter().flatten().all(Scalar::is_exact)
    }

    pub fn diameter(&self) -> Scalar {
        let mut best = Scalar::zero();
        for row in &self.dist {
            for d in row {
                if *d > best {
                    best = d.clone();
                }
            }
        }
        best
    }

    /// Sorted distinct positive pairwise distances; near-equal scales
    /// (within `SCALE_MERGE_TOL` relative) merge in floating-point mode.
    pub fn critical_scales(&self) -> Vec<Scalar> {
        let mut all: Vec<Scalar> = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                all.push(self.dist[i][j].clone());
            }
        }
        all.sort();
        let mut out: Vec<Scalar> = Vec::new();
        for s in all {
            match out.last() {
                Some(last) if last == &s => {}
                Some(last) if !s.is_exact() && last.close_to(&s, SCALE_MERGE_TOL) => {}
                _ => out.push(s),
            }
        }
        out
    }

    /// Restriction to a subset of points, in the given order.
    pub fn restrict(&self, points: &[usize]) -> FiniteMetricSpace {
        let dist = points
            .iter()
            .map(|&i| points.iter().map(|&j| self.dist[i][j].clone()).collect())
            .collect();
        FiniteMetricSpace { dist }
    }
}

/// The image of the Kuratowski embedding: one sup-norm coordinate vector
/// per point, coordinate `v` of point `w` being `d(w, v)`.
#[derive(Clone, Debug)]
pub struct KuratowskiPoints {
    coords: Vec<Vec<Scalar>>,
}

impl KuratowskiPoints {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Number of sup-norm coordinates (the size of the index set).
    pub fn ambient_dim(&self) -> usize {
        self.coords.first().map_or(0, Vec::len)
    }

    pub fn point(&self, i: usize) -> &[Scalar] {
        &self.coords[i]
    }

    pub fn sup_dist(&self, i: usize, j: usize) -> Scalar {
        sup_norm_dist(&self.coords[i], &self.coords[j])
    }

    /// Whether the sup-norm balls of radius `r` around points `i` and `j`
    /// intersect, tested coordinatewise on the axis boxes. Independent of
    /// the distance comparison `d(i,j) <= 2r`.
    pub fn boxes_intersect(&self, i: usize, j: usize, r: &Scalar) -> bool {
        let two_r = r.double();
        self.coords[i]
            .iter()
            .zip(&self.coords[j])
            .all(|(a, b)| a.sub(b).abs() <= two_r)
    }
}

pub fn sup_norm_dist(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let mut best = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        let d = x.sub(y).abs();
        if d > best {
            best = d;
        }
    }
    best
}

/// The Kuratowski embedding `v -> d(v, .)`, with its isometry verified:
/// pairwise sup-norm distances reproduce the input matrix (exactly in
/// exact mode).
pub fn kuratowski_embed(fms: &FiniteMetricSpace) -> Result<KuratowskiPoints> {
    let coords: Vec<Vec<Scalar>> = (0..fms.len())
        .map(|i| (0..fms.len()).map(|v| fms.d(i, v).clone()).collect())
        .collect();
    let kp = KuratowskiPoints { coords };
    let exact = fms.is_exact();
    for i in 0..fms.len() {
        for j in 0..fms.len() {
            let sup = kp.sup_dist(i, j);
            let ok = if exact {
                &sup == fms.d(i, j)
            } else {
                sup.close_to(fms.d(i, j), FLOAT_METRIC_TOL)
            };
            if !ok {
                return Err(Error::BadMetric(format!(
                    "Kuratowski isometry fails at ({i}, {j}): sup {sup} vs d {}",
                    fms.d(i, j)
                )));
            }
        }
    }
    Ok(kp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    pub(crate) fn cycle_complex(n: usize) -> SimplicialComplex {
        let edges = (0..n).map(|i| vec![i, (i + 1) % n]).collect::<Vec<_>>();
        SimplicialComplex::from_simplices(n, edges)
    }

    fn unit_cycle(n: usize) -> MetricComplex {
        MetricComplex::unit(cycle_complex(n))
    }

    #[test]
    fn single_edge_distance() {
        let c = SimplicialComplex::from_simplices(2, vec![vec![0, 1]]);
        let mc =
            MetricComplex::new(c, vec![((0, 1), Scalar::from_int(3))]).unwrap();
        let fms = mc.path_metric().unwrap();
        assert_eq!(fms.d(0, 1), &Scalar::from_int(3));
    }

    #[test]
    fn four_cycle_opposite_vertices() {
        let fms = unit_cycle(4).path_metric().unwrap();
        assert_eq!(fms.d(0, 2), &Scalar::from_int(2));
        assert_eq!(fms.d(1, 3), &Scalar::from_int(2));
        assert_eq!(fms.d(0, 1), &Scalar::from_int(1));
        assert!(fms.is_exact());
    }

    #[test]
    fn long_edge_loses_to_two_hop_path() {
        let c = cycle_complex(3);
        let mc = MetricComplex::new(
            c,
            vec![
                ((0, 1), Scalar::from_int(1)),
                ((1, 2), Scalar::from_int(1)),
                ((0, 2), Scalar::from_int(10)),
            ],
        )
        .unwrap();
        let fms = mc.path_metric().unwrap();
        assert_eq!(fms.d(0, 2), &Scalar::from_int(2));
    }

    #[test]
    fn disconnected_pair_is_an_error() {
        let c = SimplicialComplex::from_simplices(3, vec![vec![0, 1]]);
        let mc = MetricComplex::unit(c);
        assert!(matches!(mc.path_metric(), Err(Error::Disconnected(_, _))));
    }

    #[test]
    fn scaling_scales_the_path_metric() {
        let mc = unit_cycle(4);
        let scaled = mc.scale(&Scalar::from_int(2)).unwrap();
        let before = mc.path_metric().unwrap();
        let after = scaled.path_metric().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(after.d(i, j), &before.d(i, j).double());
            }
        }
        assert!(matches!(mc.scale(&Scalar::zero()), Err(Error::NonpositiveScale)));
        // identity scaling
        let same = mc.scale(&Scalar::one()).unwrap();
        assert_eq!(same.edge_length(0, 1), &Scalar::one());
    }

    #[test]
    fn cycle_subdivision_preserves_total_length() {
        let mc = unit_cycle(3);
        let sub = mc.subdivide(1).unwrap();
        assert_eq!(sub.complex().vertex_count(), 6);
        assert_eq!(sub.complex().simplex_count(1), 6);
        let total: Scalar = sub
            .edge_lengths()
            .fold(Scalar::zero(), |acc, (_, len)| acc.add(len));
        assert_eq!(total, Scalar::from_int(3));
        // path metric restricted to original vertices is unchanged
        let before = mc.path_metric().unwrap();
        let after = sub.path_metric().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(after.d(i, j), before.d(i, j));
            }
        }
    }

    #[test]
    fn equilateral_triangle_subdivision() {
        let c = SimplicialComplex::from_simplices(3, vec![vec![0, 1, 2]]);
        let sub = MetricComplex::unit(c).subdivide(1).unwrap();
        assert_eq!(sub.complex().simplex_count(2), 4);
        for (_, len) in sub.edge_lengths() {
            assert_eq!(len, &Scalar::from_ratio(1, 2));
        }
        // zero rounds is the identity
        let c = SimplicialComplex::from_simplices(3, vec![vec![0, 1, 2]]);
        let mc = MetricComplex::unit(c);
        let same = mc.subdivide(0).unwrap();
        assert_eq!(same.complex().simplex_count(2), 1);
    }

    #[test]
    fn subdivision_rejects_three_complexes() {
        let c = SimplicialComplex::from_simplices(4, vec![vec![0, 1, 2, 3]]);
        let mc = MetricComplex::unit(c);
        assert!(matches!(mc.subdivide(1), Err(Error::UnsupportedDimension(3))));
    }

    #[test]
    fn metric_space_validation() {
        let bad = FiniteMetricSpace::new(vec![
            vec![Scalar::zero(), Scalar::from_int(1)],
            vec![Scalar::from_int(2), Scalar::zero()],
        ]);
        assert!(bad.is_err());
        let bad = FiniteMetricSpace::new(vec![
            vec![Scalar::zero(), Scalar::from_int(5), Scalar::from_int(1)],
            vec![Scalar::from_int(5), Scalar::zero(), Scalar::from_int(1)],
            vec![Scalar::from_int(1), Scalar::from_int(1), Scalar::zero()],
        ]);
        assert!(matches!(bad, Err(Error::BadMetric(_))));
    }

    #[test]
    fn kuratowski_two_points() {
        let fms = FiniteMetricSpace::new(vec![
            vec![Scalar::zero(), Scalar::from_int(5)],
            vec![Scalar::from_int(5), Scalar::zero()],
        ])
        .unwrap();
        let kp = kuratowski_embed(&fms).unwrap();
        assert_eq!(kp.point(0), &[Scalar::zero(), Scalar::from_int(5)]);
        assert_eq!(kp.point(1), &[Scalar::from_int(5), Scalar::zero()]);
        assert_eq!(kp.sup_dist(0, 1), Scalar::from_int(5));
    }

    #[test]
    fn kuratowski_single_point() {
        let fms = FiniteMetricSpace::new(vec![vec![Scalar::zero()]]).unwrap();
        let kp = kuratowski_embed(&fms).unwrap();
        assert_eq!(kp.point(0), &[Scalar::zero()]);
    }

    #[test]
    fn kuratowski_isometry_on_cycle() {
        let fms = unit_cycle(4).path_metric().unwrap();
        let kp = kuratowski_embed(&fms).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(&kp.sup_dist(i, j), fms.d(i, j));
            }
        }
    }

    #[test]
    fn box_intersection_matches_distance_test() {
        let fms = unit_cycle(6).path_metric().unwrap();
        let kp = kuratowski_embed(&fms).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                for num in 0..=6 {
                    let r = Scalar::from_ratio(num, 2);
                    let by_box = kp.boxes_intersect(i, j, &r);
                    let by_dist = fms.d(i, j) <= &r.double();
                    assert_eq!(by_box, by_dist, "i={i} j={j} r={r}");
                }
            }
        }
    }

    #[test]
    fn near_equal_float_scales_merge() {
        let a = 1.0;
        let b = 1.0 + 1e-15;
        let c = 2.0;
        let fms = FiniteMetricSpace::new(vec![
            vec![Scalar::zero(), Scalar::from_f64(a), Scalar::from_f64(c)],
            vec![Scalar::from_f64(a), Scalar::zero(), Scalar::from_f64(b)],
            vec![Scalar::from_f64(c), Scalar::from_f64(b), Scalar::zero()],
        ])
        .unwrap();
        let scales = fms.critical_scales();
        assert_eq!(scales.len(), 2, "{scales:?}");
    }

    #[test]
    fn critical_scales_of_cycle() {
        let fms = unit_cycle(4).path_metric().unwrap();
        assert_eq!(fms.critical_scales(), vec![Scalar::from_int(1), Scalar::from_int(2)]);
        assert_eq!(fms.diameter(), Scalar::from_int(2));
    }
}
