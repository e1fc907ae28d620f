//! Deterministic metric-complex fixtures.
//!
//! Spheres and projective planes are geodesic triangulations: icosahedra
//! subdivided on the unit sphere with great-circle edge lengths, and
//! their antipodal quotients with quotient distances. Cycles, grid tori,
//! and the 4-simplex boundary carry exact rational lengths.

use std::collections::BTreeMap;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::maps::SimplicialMap;
use crate::metric::MetricComplex;
use crate::scalar::Scalar;

/// An n-cycle of total length `total`.
pub fn cycle(n: usize, total: &Scalar) -> Result<MetricComplex> {
    if n < 3 {
        return Err(Error::BadParams(format!("cycle needs n >= 3, got {n}")));
    }
    if !total.is_positive() {
        return Err(Error::BadParams("cycle length must be positive".into()));
    }
    let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    let complex = SimplicialComplex::from_simplices(n, edges);
    let step = total.div(&Scalar::from_int(n as i64));
    let lengths: Vec<_> =
        complex.simplices(1).iter().map(|e| ((e[0], e[1]), step.clone())).collect();
    MetricComplex::new(complex, lengths)
}

/// Flat m x k grid torus: unit square sides, diagonals of length
/// 1.4142135623730951 (an exact decimal, so the metric stays rational).
pub fn torus(m: usize, k: usize) -> Result<MetricComplex> {
    if m < 3 || k < 3 {
        return Err(Error::BadParams(format!("torus needs m, k >= 3, got {m} x {k}")));
    }
    let diagonal = Scalar::parse("1.4142135623730951").expect("literal");
    let idx = |i: usize, j: usize| (j % k) * m + (i % m);
    let mut triangles = Vec::new();
    let mut lengths: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    let mut put = |a: usize, b: usize, len: Scalar| {
        lengths.insert((a.min(b), a.max(b)), len);
    };
    for j in 0..k {
        for i in 0..m {
            let a = idx(i, j);
            let b = idx(i + 1, j);
            let c = idx(i, j + 1);
            let d = idx(i + 1, j + 1);
            triangles.push(vec![a, b, d]);
            triangles.push(vec![a, c, d]);
            put(a, b, Scalar::one());
            put(a, c, Scalar::one());
            put(a, d, diagonal.clone());
        }
    }
    let complex = SimplicialComplex::from_simplices(m * k, triangles);
    MetricComplex::new(complex, lengths)
}

/// Translation automorphism of the grid torus, chosen by seed. Every
/// translation preserves the diagonal pattern, so the map is simplicial
/// of degree one.
pub fn torus_translation(m: usize, k: usize, seed: u64) -> Result<SimplicialMap> {
    let torus = torus(m, k)?;
    let di = (seed % m as u64) as usize;
    let dj = ((seed / m as u64) % k as u64) as usize;
    let map: Vec<usize> = (0..m * k)
        .map(|v| {
            let (i, j) = (v % m, v / m);
            ((j + dj) % k) * m + (i + di) % m
        })
        .collect();
    SimplicialMap::new(torus.complex().clone(), torus.complex().clone(), map)
}

/// The boundary of the 4-simplex with unit edges: a 3-sphere on 5
/// vertices.
pub fn s3_boundary() -> MetricComplex {
    let mut tetra = Vec::new();
    for skip in 0..5 {
        tetra.push((0..5).filter(|&v| v != skip).collect::<Vec<_>>());
    }
    MetricComplex::unit(SimplicialComplex::from_simplices(5, tetra))
}

/// The octahedron with unit edges.
pub fn octahedron() -> MetricComplex {
    let complex = SimplicialComplex::from_simplices(
        6,
        vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 1, 4],
            vec![1, 2, 5],
            vec![2, 3, 5],
            vec![3, 4, 5],
            vec![1, 4, 5],
        ],
    );
    MetricComplex::unit(complex)
}

/// Klein bottle from an m x k grid whose last row glues back with a flip.
pub fn klein_bottle(m: usize, k: usize) -> Result<MetricComplex> {
    if m < 4 || k < 4 {
        return Err(Error::BadParams(format!("klein bottle needs m, k >= 4, got {m} x {k}")));
    }
    let idx = |i: usize, j: usize| -> usize {
        if j < k {
            j * m + (i % m)
        } else {
            // glue the top row to the bottom with reversed orientation
            (m - (i % m)) % m
        }
    };
    let mut triangles = Vec::new();
    for j in 0..k {
        for i in 0..m {
            let a = idx(i, j);
            let b = idx(i + 1, j);
            let c = idx(i, j + 1);
            let d = idx(i + 1, j + 1);
            triangles.push(vec![a, b, d]);
            triangles.push(vec![a, c, d]);
        }
    }
    let complex = SimplicialComplex::from_simplices(m * k, triangles);
    Ok(MetricComplex::unit(complex))
}

// geodesic sphere machinery -------------------------------------------------

struct SpherePoints {
    coords: Vec<[f64; 3]>,
    faces: Vec<[usize; 3]>,
}

fn icosahedron() -> SpherePoints {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut raw: Vec<[f64; 3]> = Vec::new();
    for &a in &[1.0, -1.0] {
        for &b in &[phi, -phi] {
            raw.push([0.0, a, b]);
            raw.push([a, b, 0.0]);
            raw.push([b, 0.0, a]);
        }
    }
    let norm = (1.0 + phi * phi).sqrt();
    let coords: Vec<[f64; 3]> =
        raw.iter().map(|p| [p[0] / norm, p[1] / norm, p[2] / norm]).collect();
    // neighbors have positive dot product (cos = 1/sqrt 5)
    let mut faces = Vec::new();
    let dot = |a: usize, b: usize| -> f64 {
        coords[a].iter().zip(&coords[b]).map(|(x, y)| x * y).sum()
    };
    for a in 0..12 {
        for b in a + 1..12 {
            if dot(a, b) < 0.1 {
                continue;
            }
            for c in b + 1..12 {
                if dot(a, c) > 0.1 && dot(b, c) > 0.1 {
                    faces.push([a, b, c]);
                }
            }
        }
    }
    debug_assert_eq!(faces.len(), 20);
    SpherePoints { coords, faces }
}

fn subdivide_sphere(sp: &SpherePoints) -> SpherePoints {
    let mut coords = sp.coords.clone();
    let mut midpoint: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut faces = Vec::new();
    let mut mid = |a: usize, b: usize, coords: &mut Vec<[f64; 3]>| -> usize {
        let key = (a.min(b), a.max(b));
        if let Some(&v) = midpoint.get(&key) {
            return v;
        }
        let p = [
            coords[a][0] + coords[b][0],
            coords[a][1] + coords[b][1],
            coords[a][2] + coords[b][2],
        ];
        let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        coords.push([p[0] / norm, p[1] / norm, p[2] / norm]);
        let v = coords.len() - 1;
        midpoint.insert(key, v);
        v
    };
    for &[a, b, c] in &sp.faces {
        let ab = mid(a, b, &mut coords);
        let ac = mid(a, c, &mut coords);
        let bc = mid(b, c, &mut coords);
        faces.push([a, ab, ac]);
        faces.push([b, ab, bc]);
        faces.push([c, ac, bc]);
        faces.push([ab, ac, bc]);
    }
    SpherePoints { coords, faces }
}

fn sphere_points(level: usize) -> SpherePoints {
    let mut sp = icosahedron();
    for _ in 0..level {
        sp = subdivide_sphere(&sp);
    }
    sp
}

fn great_circle(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    dot.clamp(-1.0, 1.0).acos()
}

/// Pairs each vertex with its antipode and picks class representatives
/// (the lexicographically larger coordinate triple), in first-encounter
/// order.
fn antipodal_classes(sp: &SpherePoints) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = sp.coords.len();
    let mut partner = vec![usize::MAX; n];
    for i in 0..n {
        let neg = [-sp.coords[i][0], -sp.coords[i][1], -sp.coords[i][2]];
        partner[i] = (0..n)
            .find(|&j| sp.coords[j].iter().zip(&neg).all(|(x, y)| (x - y).abs() < 1e-9))
            .ok_or_else(|| Error::BadParams("sphere is not antipodally symmetric".into()))?;
    }
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let j = partner[i];
        let rep = if sp.coords[i] > sp.coords[j] { i } else { j };
        let id = reps.len();
        reps.push(rep);
        class_of[i] = id;
        class_of[j] = id;
    }
    Ok((reps, class_of))
}

fn geodesic_matrix(coords: &[[f64; 3]], quotient: bool) -> crate::metric::FiniteMetricSpace {
    let n = coords.len();
    let mut dist = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let dot: f64 =
                    coords[i].iter().zip(&coords[j]).map(|(x, y)| x * y).sum();
                let d = if quotient { dot.abs() } else { dot }.clamp(-1.0, 1.0).acos();
                dist[i][j] = Scalar::from_f64(d);
            }
        }
    }
    crate::metric::FiniteMetricSpace::new(dist).expect("round samples are metric")
}

/// Geodesic sphere with the true great-circle distance matrix on all
/// vertex pairs (the sample of the round metric; the 1-skeleton path
/// metric only overestimates it).
pub fn sphere2_space(level: usize) -> Result<(MetricComplex, crate::metric::FiniteMetricSpace)> {
    let mc = sphere2(level)?;
    let sp = sphere_points(level);
    Ok((mc, geodesic_matrix(&sp.coords, false)))
}

/// Projective plane with the true quotient distance matrix
/// (`arccos |u . v|`) on all class pairs.
pub fn rp2_space(level: usize) -> Result<(MetricComplex, crate::metric::FiniteMetricSpace)> {
    let mc = rp2(level)?;
    let sp = sphere_points(level);
    let (reps, _) = antipodal_classes(&sp)?;
    let rep_coords: Vec<[f64; 3]> = reps.iter().map(|&r| sp.coords[r]).collect();
    Ok((mc, geodesic_matrix(&rep_coords, true)))
}

/// Geodesic sphere: the icosahedron subdivided `level` times, vertices on
/// the unit sphere, edges weighted by great-circle length.
pub fn sphere2(level: usize) -> Result<MetricComplex> {
    if level > 3 {
        return Err(Error::BadParams(format!("sphere2 level {level} beyond desk scale")));
    }
    let sp = sphere_points(level);
    let complex = SimplicialComplex::from_simplices(
        sp.coords.len(),
        sp.faces.iter().map(|f| f.to_vec()).collect::<Vec<_>>(),
    );
    let lengths: Vec<_> = complex
        .simplices(1)
        .iter()
        .map(|e| {
            let d = great_circle(&sp.coords[e[0]], &sp.coords[e[1]]);
            ((e[0], e[1]), Scalar::from_f64(d))
        })
        .collect();
    MetricComplex::new(complex, lengths)
}

/// Projective plane: the antipodal quotient of `sphere2(level)` with
/// quotient distances `arccos |u . v|` on edges.
pub fn rp2(level: usize) -> Result<MetricComplex> {
    if level > 3 {
        return Err(Error::BadParams(format!("rp2 level {level} beyond desk scale")));
    }
    let sp = sphere_points(level);
    let (reps, class_of) = antipodal_classes(&sp)?;

    let mut faces: Vec<Vec<usize>> = sp
        .faces
        .iter()
        .map(|f| {
            let mut t = vec![class_of[f[0]], class_of[f[1]], class_of[f[2]]];
            t.sort_unstable();
            t
        })
        .collect();
    faces.sort();
    faces.dedup();
    for f in &faces {
        if f[0] == f[1] || f[1] == f[2] {
            return Err(Error::BadParams("antipodal quotient degenerates a face".into()));
        }
    }
    let complex = SimplicialComplex::from_simplices(reps.len(), faces);
    let lengths: Vec<_> = complex
        .simplices(1)
        .iter()
        .map(|e| {
            let (u, v) = (reps[e[0]], reps[e[1]]);
            let dot: f64 = sp.coords[u].iter().zip(&sp.coords[v]).map(|(x, y)| x * y).sum();
            ((e[0], e[1]), Scalar::from_f64(dot.abs().clamp(0.0, 1.0).acos()))
        })
        .collect();
    MetricComplex::new(complex, lengths)
}
