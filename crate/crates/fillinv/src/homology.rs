//! Homology over Z, Q, and Z/2: ranks, torsion, fundamental cycles, and
//! the "does this cycle bound" solve that drives the filling computations.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::chain::ChainVector;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::ChainOps;
use crate::ring::{RingSpec, Z2};
use crate::snf;

/// Betti numbers per dimension, with torsion coefficients over Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub ring: RingSpec,
    pub per_dim: Vec<DimSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimSummary {
    pub dim: usize,
    /// Free rank (the betti number over the ring).
    pub rank: usize,
    /// Torsion coefficients, each > 1; empty over fields.
    pub torsion: Vec<BigInt>,
}

impl HomologySummary {
    pub fn betti(&self, dim: usize) -> usize {
        self.per_dim.get(dim).map_or(0, |d| d.rank)
    }

    pub fn torsion(&self, dim: usize) -> &[BigInt] {
        self.per_dim.get(dim).map_or(&[], |d| &d.torsion)
    }
}

/// Ranks via exact elimination over fields; ranks and torsion via Smith
/// normal form over Z.
pub fn homology_summary(complex: &SimplicialComplex, ring: RingSpec) -> HomologySummary {
    let top = complex.dim().unwrap_or(0);
    let counts = complex.counts();

    // rank of each boundary map; d_0 and d_{top+1} are zero maps
    let mut boundary_rank = vec![0usize; top + 2];
    let mut torsion: Vec<Vec<BigInt>> = vec![Vec::new(); top + 2];
    for dim in 1..=top {
        match ring {
            RingSpec::ModTwoZ2 => {
                let m = complex.boundary_matrix::<Z2>(dim).expect("dim in range");
                boundary_rank[dim] = Z2::mat_rank(&m);
            }
            RingSpec::RationalsQ => {
                let m = complex.boundary_matrix::<BigRational>(dim).expect("dim in range");
                boundary_rank[dim] = BigRational::mat_rank(&m);
            }
            RingSpec::IntegersZ => {
                let m = complex.boundary_matrix::<BigInt>(dim).expect("dim in range");
                let s = snf::smith(&m);
                boundary_rank[dim] = s.rank();
                // elementary divisors of d_dim contribute torsion to H_{dim-1}
                torsion[dim - 1] = s.torsion();
            }
        }
    }

    let per_dim = (0..=top)
        .map(|dim| DimSummary {
            dim,
            rank: counts[dim] - boundary_rank[dim] - boundary_rank[dim + 1],
            torsion: torsion[dim].clone(),
        })
        .collect();
    HomologySummary { ring, per_dim }
}

/// The generating top cycle of a K-orientable complex, normalized so the
/// lexicographically smallest supported top simplex has coefficient +1
/// (over Q it is the integral-lattice generator with content one).
///
/// Returns `None` when the top homology is not isomorphic to the ring.
pub fn fundamental_cycle<K: ChainOps>(
    complex: &SimplicialComplex,
) -> Result<Option<ChainVector<K>>> {
    let Some(top) = complex.dim() else {
        return Err(Error::NotPureDimensional);
    };
    if complex.simplex_count(top) == 0 {
        return Err(Error::NotPureDimensional);
    }
    if top == 0 {
        // a single point: H_0 = K, generated by the vertex
        if complex.vertex_count() == 1 {
            let mut c = ChainVector::zero(0);
            c.add_term(&[0], K::one());
            return Ok(Some(c));
        }
        return Ok(None);
    }
    let boundary = complex.boundary_matrix::<K>(top).expect("top >= 1");
    // no (top+1)-simplices exist, so H_top is exactly ker(d_top)
    let kernel = K::mat_kernel(&boundary);
    if kernel.len() != 1 {
        return Ok(None);
    }
    let generator = K::normalize_generator(kernel.into_iter().next().unwrap());
    Ok(Some(ChainVector::from_vector(complex, top, &generator)))
}

/// Whether the complex is K-orientable (`H_top = K`).
pub fn is_orientable(complex: &SimplicialComplex, ring: RingSpec) -> bool {
    let found = match ring {
        RingSpec::IntegersZ => fundamental_cycle::<BigInt>(complex).map(|c| c.is_some()),
        RingSpec::RationalsQ => fundamental_cycle::<BigRational>(complex).map(|c| c.is_some()),
        RingSpec::ModTwoZ2 => fundamental_cycle::<Z2>(complex).map(|c| c.is_some()),
    };
    found.unwrap_or(false)
}

/// Some chain `c` with boundary `z`, if the cycle bounds over the ring.
///
/// Fields go through exact elimination; Z goes through the Smith normal
/// form so divisibility is honored.
pub fn solve_boundary<K: ChainOps>(
    z: &ChainVector<K>,
    complex: &SimplicialComplex,
) -> Result<Option<ChainVector<K>>> {
    z.validate_in(complex)?;
    if !z.is_cycle() {
        return Err(Error::NotACycle(z.boundary().support_size()));
    }
    let chain_dim = z.dim() + 1;
    if chain_dim > complex.dim().unwrap_or(0) {
        // no chains one dimension up: only the zero cycle bounds
        return Ok(z.is_zero().then(|| ChainVector::zero(chain_dim)));
    }
    let boundary = complex.boundary_matrix::<K>(chain_dim)?;
    let rhs = z.to_vector(complex);
    let solution = K::mat_solve(&boundary, &rhs);
    Ok(solution.map(|x| ChainVector::from_vector(complex, chain_dim, &x)))
}

#[cfg(test)]
mod tests {
    use num_traits::Signed;

    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::ring::Coeff;

    fn triangle_boundary() -> SimplicialComplex {
        SimplicialComplex::from_simplices(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]])
    }

    /// 6-vertex minimal triangulation of the real projective plane
    /// (the hemi-icosahedron).
    pub(crate) fn rp2_six_vertex() -> SimplicialComplex {
        SimplicialComplex::from_simplices(
            6,
            vec![
                vec![0, 1, 3],
                vec![0, 1, 4],
                vec![0, 2, 4],
                vec![0, 2, 5],
                vec![0, 3, 5],
                vec![1, 2, 3],
                vec![1, 2, 5],
                vec![1, 4, 5],
                vec![2, 3, 4],
                vec![3, 4, 5],
            ],
        )
    }

    /// 7-vertex Moebius-Kantor triangulation of the torus.
    pub(crate) fn torus_seven_vertex() -> SimplicialComplex {
        let mut faces = Vec::new();
        for i in 0..7usize {
            faces.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            faces.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        SimplicialComplex::from_simplices(7, faces)
    }

    /// Boundary of the 3-simplex: a 2-sphere on 4 vertices.
    pub(crate) fn sphere_four_vertex() -> SimplicialComplex {
        SimplicialComplex::from_simplices(
            4,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
    }

    #[test]
    fn circle_betti_numbers_all_rings() {
        let c = triangle_boundary();
        for ring in RingSpec::all() {
            let h = homology_summary(&c, ring);
            assert_eq!(h.betti(0), 1, "b0 over {ring}");
            assert_eq!(h.betti(1), 1, "b1 over {ring}");
            assert!(h.torsion(0).is_empty() && h.torsion(1).is_empty());
        }
    }

    #[test]
    fn projective_plane_homology() {
        let c = rp2_six_vertex();
        assert_eq!(c.counts(), vec![6, 15, 10]);
        let hz = homology_summary(&c, RingSpec::IntegersZ);
        assert_eq!(hz.betti(0), 1);
        assert_eq!(hz.betti(1), 0);
        assert_eq!(hz.torsion(1), &[BigInt::from(2)]);
        assert_eq!(hz.betti(2), 0);
        let h2 = homology_summary(&c, RingSpec::ModTwoZ2);
        assert_eq!(h2.betti(1), 1);
        assert_eq!(h2.betti(2), 1);
        let hq = homology_summary(&c, RingSpec::RationalsQ);
        assert_eq!(hq.betti(1), 0);
        assert_eq!(hq.betti(2), 0);
    }

    #[test]
    fn seven_vertex_torus_homology() {
        let c = torus_seven_vertex();
        assert_eq!(c.counts(), vec![7, 21, 14]);
        let hq = homology_summary(&c, RingSpec::RationalsQ);
        assert_eq!(hq.betti(0), 1);
        assert_eq!(hq.betti(1), 2);
        assert_eq!(hq.betti(2), 1);
        let hz = homology_summary(&c, RingSpec::IntegersZ);
        assert_eq!(hz.betti(1), 2);
        assert!(hz.torsion(1).is_empty());
    }

    #[test]
    fn sphere_fundamental_cycle_over_z() {
        let c = sphere_four_vertex();
        let z = fundamental_cycle::<BigInt>(&c).unwrap().unwrap();
        assert_eq!(z.support_size(), 4);
        assert!(z.is_cycle());
        // all coefficients are units and the smallest simplex is +1
        for (_, coeff) in z.iter() {
            assert_eq!(coeff.abs(), BigInt::from(1));
        }
        assert_eq!(z.coeff(&[0, 1, 2]), BigInt::from(1));
    }

    #[test]
    fn torus_fundamental_cycle_over_q_is_integral() {
        let c = torus_seven_vertex();
        let z = fundamental_cycle::<BigRational>(&c).unwrap().unwrap();
        assert_eq!(z.support_size(), 14);
        for (_, coeff) in z.iter() {
            assert!(coeff.is_integer());
            assert_eq!(coeff.abs(), BigRational::from_i64(1));
        }
        assert!(z.is_cycle());
    }

    #[test]
    fn projective_plane_orientability_by_ring() {
        let c = rp2_six_vertex();
        assert!(!is_orientable(&c, RingSpec::IntegersZ));
        assert!(!is_orientable(&c, RingSpec::RationalsQ));
        assert!(is_orientable(&c, RingSpec::ModTwoZ2));
        let z = fundamental_cycle::<Z2>(&c).unwrap().unwrap();
        // over Z/2 the class is the sum of all 2-simplices
        assert_eq!(z.support_size(), 10);
    }

    #[test]
    fn solve_boundary_of_present_triangle() {
        let c = SimplicialComplex::from_simplices(3, vec![vec![0, 1, 2]]);
        let mut z = ChainVector::<BigInt>::zero(2);
        z.add_term(&[0, 1, 2], BigInt::from(1));
        let z = z.boundary();
        let filling = solve_boundary(&z, &c).unwrap().unwrap();
        assert_eq!(filling.coeff(&[0, 1, 2]), BigInt::from(1));
        assert_eq!(filling.support_size(), 1);
    }

    #[test]
    fn top_class_cannot_bound_in_its_own_complex() {
        let c = sphere_four_vertex();
        let z = fundamental_cycle::<BigInt>(&c).unwrap().unwrap();
        assert!(solve_boundary(&z, &c).unwrap().is_none());
    }

    #[test]
    fn cone_fills_the_sphere_class() {
        let c = sphere_four_vertex();
        let z = fundamental_cycle::<BigInt>(&c).unwrap().unwrap();
        let cone = c.cone();
        let filling = solve_boundary(&z, &cone).unwrap().unwrap();
        assert_eq!(filling.boundary(), z);
    }

    #[test]
    fn integral_solve_honors_torsion() {
        // in the projective plane, the torsion generator bounds over Q,
        // does not bound over Z, and its double bounds over Z
        let c = rp2_six_vertex();
        let mut g = ChainVector::<BigInt>::zero(1);
        g.add_oriented(&[0, 1], BigInt::from(1));
        g.add_oriented(&[1, 2], BigInt::from(1));
        g.add_oriented(&[2, 0], BigInt::from(1));
        assert!(g.is_cycle());
        let gq = ChainVector::<BigRational>::from_terms(
            1,
            g.iter().map(|(s, c)| (s.clone(), BigRational::from_integer(c.clone()))),
        );
        let over_q = solve_boundary(&gq, &c).unwrap();
        assert!(over_q.is_some(), "loop must bound rationally");
        let over_z = solve_boundary(&g, &c).unwrap();
        assert!(over_z.is_none(), "torsion generator must not bound integrally");
        let doubled = g.scale(&BigInt::from(2));
        let filled = solve_boundary(&doubled, &c).unwrap().unwrap();
        assert_eq!(filled.boundary(), doubled);
    }

    #[test]
    fn non_cycle_is_rejected() {
        let c = triangle_boundary();
        let mut not_cycle = ChainVector::<BigInt>::zero(1);
        not_cycle.add_term(&[0, 1], BigInt::from(1));
        assert!(matches!(solve_boundary(&not_cycle, &c), Err(Error::NotACycle(_))));
    }
}
