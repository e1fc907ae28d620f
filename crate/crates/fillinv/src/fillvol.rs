//! Filling volumes: weighted optimal homologous chains and cone fillings.
//!
//! Weights are Euclidean affine-simplex volumes of the embedded points.
//! For an affine simplex in sup-norm space the Euclidean parametrization
//! is coordinatewise nonexpanding, so these weights dominate the
//! nonexpanding-infimum volume and every certificate value is an upper
//! bound for the filling volume. Optimization is exact: a rational
//! simplex LP over Q, exhaustive or branch-and-bound search over Z/2,
//! and a boxed lattice search over Z reported against the Q optimum.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::chain::ChainVector;
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::ChainOps;
use crate::lp::{solve_standard, LpOutcome, StandardLp};
use crate::metric::KuratowskiPoints;
use crate::ring::{Coeff, RingSpec, Z2};
#[cfg(test)]
use crate::ring::FieldCoeff;
use crate::scalar::Scalar;

/// How chain weights were assigned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    UnitWeights,
    EuclideanUpperBound,
}

impl WeightMode {
    pub fn label(self) -> &'static str {
        match self {
            WeightMode::UnitWeights => "unit",
            WeightMode::EuclideanUpperBound => "euclidean-upper-bound",
        }
    }
}

/// A complex with nonnegative weights on its chain-dimension simplices.
#[derive(Clone, Debug)]
pub struct WeightedComplex {
    complex: SimplicialComplex,
    chain_dim: usize,
    weights: Vec<Scalar>,
    mode: WeightMode,
}

impl WeightedComplex {
    pub fn unit(complex: SimplicialComplex, chain_dim: usize) -> Self {
        let weights = vec![Scalar::one(); complex.simplex_count(chain_dim)];
        WeightedComplex { complex, chain_dim, weights, mode: WeightMode::UnitWeights }
    }

    /// Weights from an explicit list parallel to the sorted chain-dimension
    /// simplices.
    pub fn with_weights(
        complex: SimplicialComplex,
        chain_dim: usize,
        weights: Vec<Scalar>,
        mode: WeightMode,
    ) -> Result<Self> {
        if weights.len() != complex.simplex_count(chain_dim) {
            return Err(Error::BadFormat("weight count mismatch".into()));
        }
        if weights.iter().any(Scalar::is_negative) {
            return Err(Error::BadFormat("negative weight".into()));
        }
        Ok(WeightedComplex { complex, chain_dim, weights, mode })
    }

    /// Euclidean affine volumes computed from a geometric realization
    /// (one coordinate vector per vertex).
    pub fn euclidean(
        complex: SimplicialComplex,
        chain_dim: usize,
        coords: &[Vec<Scalar>],
    ) -> Result<Self> {
        if coords.len() < complex.vertex_count() {
            return Err(Error::BadFormat("realization misses vertices".into()));
        }
        let weights = complex
            .simplices(chain_dim)
            .iter()
            .map(|s| {
                let pts: Vec<&[Scalar]> = s.iter().map(|&v| coords[v].as_slice()).collect();
                affine_simplex_volume(&pts)
            })
            .collect();
        WeightedComplex {
            complex,
            chain_dim,
            weights,
            mode: WeightMode::EuclideanUpperBound,
        }
        .validated()
    }

    fn validated(self) -> Result<Self> {
        if self.weights.iter().any(Scalar::is_negative) {
            return Err(Error::BadFormat("negative weight".into()));
        }
        Ok(self)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn chain_dim(&self) -> usize {
        self.chain_dim
    }

    pub fn mode(&self) -> WeightMode {
        self.mode
    }

    pub fn weight_at(&self, index: usize) -> &Scalar {
        &self.weights[index]
    }

    pub fn weight(&self, simplex: &[usize]) -> Scalar {
        match self.complex.index_of(simplex) {
            Some(i) => self.weights[i].clone(),
            None => panic!("simplex {simplex:?} has no weight"),
        }
    }

    pub fn all_weights_exact(&self) -> bool {
        self.weights.iter().all(Scalar::is_exact)
    }

    /// Weights as exact rationals (doubles convert exactly).
    fn rational_weights(&self) -> Vec<BigRational> {
        self.weights
            .iter()
            .map(|w| match w {
                Scalar::Exact(r) => r.clone(),
                Scalar::Approx(x) => {
                    BigRational::from_float(*x).expect("finite weight")
                }
            })
            .collect()
    }
}

/// Euclidean volume of the affine simplex on the given points, via the
/// Gram determinant of its edge vectors; zero for degenerate simplices.
pub fn affine_simplex_volume(points: &[&[Scalar]]) -> Scalar {
    let k = points.len().saturating_sub(1);
    if k == 0 {
        return Scalar::one();
    }
    let base = points[0];
    let edges: Vec<Vec<Scalar>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a.sub(b)).collect())
        .collect();
    let mut gram = vec![vec![Scalar::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let mut dot = Scalar::zero();
            for (a, b) in edges[i].iter().zip(&edges[j]) {
                dot = dot.add(&a.mul(b));
            }
            gram[i][j] = dot.clone();
            gram[j][i] = dot;
        }
    }
    let det = determinant(gram);
    // the Gram determinant is nonnegative; a negative value is rounding
    let det = if det.is_negative() { Scalar::zero() } else { det };
    let factorial = (1..=k as i64).product::<i64>();
    det.sqrt().div(&Scalar::from_int(factorial))
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

/// A filling with its verified boundary and weighted size.
#[derive(Clone, Debug)]
pub struct FillVolCertificate<K: Coeff> {
    pub ring: RingSpec,
    pub mode: WeightMode,
    pub value: Scalar,
    pub chain: ChainVector<K>,
    /// Whether the optimizer proved the value minimal (over Z: whether it
    /// met the rational lower bound).
    pub certified_optimal: bool,
    /// The rational optimum, reported alongside best-effort Z searches.
    pub lower_bound: Option<Scalar>,
}

/// Limits for the combinatorial searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Kernel dimension up to which Z/2 search is exhaustive.
    pub exhaustive_kernel_limit: usize,
    /// Node limit for branch-and-bound.
    pub node_budget: u64,
    /// Half-width of the Z lattice-coefficient box.
    pub integer_box: i64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { exhaustive_kernel_limit: 25, node_budget: 10_000_000, integer_box: 2 }
    }
}

/// Minimizes the weighted l1 size over all chains with boundary `z`.
pub trait OptimalChain: ChainOps {
    fn optimal_chain_with(
        z: &ChainVector<Self>,
        wc: &WeightedComplex,
        budget: &SearchBudget,
    ) -> Result<FillVolCertificate<Self>>;
}

pub fn optimal_chain<K: OptimalChain>(
    z: &ChainVector<K>,
    wc: &WeightedComplex,
) -> Result<FillVolCertificate<K>> {
    K::optimal_chain_with(z, wc, &SearchBudget::default())
}

pub fn optimal_chain_with<K: OptimalChain>(
    z: &ChainVector<K>,
    wc: &WeightedComplex,
    budget: &SearchBudget,
) -> Result<FillVolCertificate<K>> {
    K::optimal_chain_with(z, wc, budget)
}

fn check_inputs<K: Coeff>(z: &ChainVector<K>, wc: &WeightedComplex) -> Result<()> {
    if z.dim() + 1 != wc.chain_dim() {
        return Err(Error::BadFormat(format!(
            "cycle dimension {} does not match chain dimension {}",
            z.dim(),
            wc.chain_dim()
        )));
    }
    z.validate_in(wc.complex())?;
    if !z.is_cycle() {
        return Err(Error::NotACycle(z.boundary().support_size()));
    }
    Ok(())
}

/// When no chains of the target dimension exist, only the zero cycle
/// bounds (with the empty filling).
fn ensure_chain_space<K: Coeff>(
    z: &ChainVector<K>,
    wc: &WeightedComplex,
) -> Result<Option<FillVolCertificate<K>>> {
    if wc.chain_dim() <= wc.complex().dim().unwrap_or(0) {
        return Ok(None);
    }
    if z.is_zero() {
        Ok(Some(FillVolCertificate {
            ring: K::RING,
            mode: wc.mode(),
            value: Scalar::zero(),
            chain: ChainVector::zero(wc.chain_dim()),
            certified_optimal: true,
            lower_bound: None,
        }))
    } else {
        Err(Error::Infeasible)
    }
}

fn value_scalar(wc: &WeightedComplex, value: BigRational) -> Scalar {
    if wc.all_weights_exact() {
        Scalar::Exact(value)
    } else {
        Scalar::Approx(Scalar::Exact(value).to_f64())
    }
}

impl OptimalChain for BigRational {
    fn optimal_chain_with(
        z: &ChainVector<Self>,
        wc: &WeightedComplex,
        _budget: &SearchBudget,
    ) -> Result<FillVolCertificate<Self>> {
        check_inputs(z, wc)?;
        if let Some(cert) = ensure_chain_space(z, wc)? {
            return Ok(cert);
        }
        let boundary = wc.complex().boundary_matrix::<BigRational>(wc.chain_dim())?;
        let rhs = z.to_vector(wc.complex());
        if BigRational::mat_solve(&boundary, &rhs).is_none() {
            return Err(Error::Infeasible);
        }
        let weights = wc.rational_weights();
        let m = boundary.ncols();
        // split coefficients r = r+ - r-, both nonnegative
        let mut objective = Vec::with_capacity(2 * m);
        for w in &weights {
            objective.push(w.clone());
            objective.push(w.clone());
        }
        let rows: Vec<(Vec<BigRational>, BigRational)> = (0..boundary.nrows())
            .map(|i| {
                let mut row = vec![BigRational::zero(); 2 * m];
                for j in 0..m {
                    for (r, v) in boundary.column(j) {
                        if *r == i {
                            row[2 * j] = &row[2 * j] + v;
                            row[2 * j + 1] = &row[2 * j + 1] - v;
                        }
                    }
                }
                (row, rhs[i].clone())
            })
            .collect();
        let outcome = solve_standard(&StandardLp { objective, rows });
        let (x, value) = match outcome {
            LpOutcome::Optimal { x, value } => (x, value),
            LpOutcome::Infeasible => return Err(Error::Infeasible),
            LpOutcome::Unbounded => {
                return Err(Error::BadFormat("weighted l1 program unbounded".into()))
            }
        };
        let dense: Vec<BigRational> = (0..m).map(|j| &x[2 * j] - &x[2 * j + 1]).collect();
        let chain = ChainVector::from_vector(wc.complex(), wc.chain_dim(), &dense);
        Ok(FillVolCertificate {
            ring: RingSpec::RationalsQ,
            mode: wc.mode(),
            value: value_scalar(wc, value),
            chain,
            certified_optimal: true,
            lower_bound: None,
        })
    }
}

impl OptimalChain for Z2 {
    fn optimal_chain_with(
        z: &ChainVector<Self>,
        wc: &WeightedComplex,
        budget: &SearchBudget,
    ) -> Result<FillVolCertificate<Self>> {
        check_inputs(z, wc)?;
        if let Some(cert) = ensure_chain_space(z, wc)? {
            return Ok(cert);
        }
        let boundary = wc.complex().boundary_matrix::<Z2>(wc.chain_dim())?;
        let rhs = z.to_vector(wc.complex());
        let base = Z2::mat_solve(&boundary, &rhs).ok_or(Error::Infeasible)?;
        let kernel = Z2::mat_kernel(&boundary);
        let weights = wc.rational_weights();
        let m = boundary.ncols();

        let weight_of = |bits: &[bool]| -> BigRational {
            let mut acc = BigRational::zero();
            for (j, on) in bits.iter().enumerate() {
                if *on {
                    acc += &weights[j];
                }
            }
            acc
        };
        let base_bits: Vec<bool> = base.iter().map(|c| !c.is_zero()).collect();
        let kernel_bits: Vec<Vec<usize>> = kernel
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter_map(|(j, c)| (!c.is_zero()).then_some(j))
                    .collect()
            })
            .collect();

        let k = kernel_bits.len();
        let (best_bits, certified) = if k <= budget.exhaustive_kernel_limit {
            // Gray-code sweep of the whole coset
            let mut current = base_bits.clone();
            let mut current_weight = weight_of(&current);
            let mut best = current.clone();
            let mut best_weight = current_weight.clone();
            for g in 1u64..(1u64 << k) {
                let flip = g.trailing_zeros() as usize;
                for &j in &kernel_bits[flip] {
                    if current[j] {
                        current[j] = false;
                        current_weight = &current_weight - &weights[j];
                    } else {
                        current[j] = true;
                        current_weight = &current_weight + &weights[j];
                    }
                }
                if current_weight < best_weight {
                    best_weight = current_weight.clone();
                    best = current.clone();
                }
            }
            (best, true)
        } else {
            // branch-and-bound over kernel generators with weight pruning
            let potentials: Vec<BigRational> = kernel_bits
                .iter()
                .map(|supp| {
                    supp.iter().fold(BigRational::zero(), |acc, &j| acc + &weights[j])
                })
                .collect();
            let mut suffix = vec![BigRational::zero(); k + 1];
            for i in (0..k).rev() {
                suffix[i] = &suffix[i + 1] + &potentials[i];
            }
            let mut best = base_bits.clone();
            let mut best_weight = weight_of(&base_bits);
            let mut current = base_bits.clone();
            let mut current_weight = best_weight.clone();
            let mut nodes: u64 = 0;
            search_z2(
                0,
                k,
                &kernel_bits,
                &weights,
                &suffix,
                &mut current,
                &mut current_weight,
                &mut best,
                &mut best_weight,
                &mut nodes,
                budget.node_budget,
            )?;
            (best, true)
        };

        let dense: Vec<Z2> = (0..m).map(|j| Z2(best_bits[j])).collect();
        let chain = ChainVector::from_vector(wc.complex(), wc.chain_dim(), &dense);
        let value = weight_of(&best_bits);
        Ok(FillVolCertificate {
            ring: RingSpec::ModTwoZ2,
            mode: wc.mode(),
            value: value_scalar(wc, value),
            chain,
            certified_optimal: certified,
            lower_bound: None,
        })
    }
}

#[allow(clippy::too_many_arguments)]
fn search_z2(
    level: usize,
    k: usize,
    kernel_bits: &[Vec<usize>],
    weights: &[BigRational],
    suffix: &[BigRational],
    current: &mut Vec<bool>,
    current_weight: &mut BigRational,
    best: &mut Vec<bool>,
    best_weight: &mut BigRational,
    nodes: &mut u64,
    node_budget: u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > node_budget {
        return Err(Error::SearchBudgetExceeded(*nodes));
    }
    if level == k {
        if *current_weight < *best_weight {
            *best_weight = current_weight.clone();
            *best = current.clone();
        }
        return Ok(());
    }
    // remaining generators cannot reduce weight below this bound
    if &*current_weight - &suffix[level] >= *best_weight {
        return Ok(());
    }
    for include in [false, true] {
        if include {
            for &j in &kernel_bits[level] {
                if current[j] {
                    current[j] = false;
                    *current_weight = &*current_weight - &weights[j];
                } else {
                    current[j] = true;
                    *current_weight = &*current_weight + &weights[j];
                }
            }
        }
        search_z2(
            level + 1,
            k,
            kernel_bits,
            weights,
            suffix,
            current,
            current_weight,
            best,
            best_weight,
            nodes,
            node_budget,
        )?;
    }
    // undo the inclusion flip
    for &j in &kernel_bits[level] {
        if current[j] {
            current[j] = false;
            *current_weight = &*current_weight - &weights[j];
        } else {
            current[j] = true;
            *current_weight = &*current_weight + &weights[j];
        }
    }
    Ok(())
}

impl OptimalChain for BigInt {
    fn optimal_chain_with(
        z: &ChainVector<Self>,
        wc: &WeightedComplex,
        budget: &SearchBudget,
    ) -> Result<FillVolCertificate<Self>> {
        check_inputs(z, wc)?;
        if let Some(cert) = ensure_chain_space(z, wc)? {
            return Ok(cert);
        }
        let boundary = wc.complex().boundary_matrix::<BigInt>(wc.chain_dim())?;
        let rhs = z.to_vector(wc.complex());
        let base = BigInt::mat_solve(&boundary, &rhs).ok_or(Error::Infeasible)?;
        let kernel = BigInt::mat_kernel(&boundary);
        let weights = wc.rational_weights();

        // the rational optimum bounds every integral filling from below
        let zq = ChainVector::from_terms(
            z.dim(),
            z.iter().map(|(s, c)| (s.clone(), BigRational::from_integer(c.clone()))),
        );
        let q_cert = BigRational::optimal_chain_with(&zq, wc, budget)?;
        let q_value = match &q_cert.value {
            Scalar::Exact(r) => r.clone(),
            approx => BigRational::from_float(approx.to_f64()).expect("finite"),
        };

        let weight_of = |coeffs: &[BigInt]| -> BigRational {
            let mut acc = BigRational::zero();
            for (j, c) in coeffs.iter().enumerate() {
                if !Coeff::is_zero(c) {
                    acc += &weights[j] * BigRational::from_integer(c.abs());
                }
            }
            acc
        };

        let k = kernel.len();
        let box_values: Vec<BigInt> =
            (-budget.integer_box..=budget.integer_box).map(BigInt::from).collect();
        let potentials: Vec<BigRational> = kernel
            .iter()
            .map(|v| {
                let mut acc = BigRational::zero();
                for (j, c) in v.iter().enumerate() {
                    if !Coeff::is_zero(c) {
                        acc += &weights[j]
                                * BigRational::from_integer(c.abs() * budget.integer_box);
                    }
                }
                acc
            })
            .collect();
        let mut suffix = vec![BigRational::zero(); k + 1];
        for i in (0..k).rev() {
            suffix[i] = &suffix[i + 1] + &potentials[i];
        }

        let mut best = base.clone();
        let mut best_weight = weight_of(&base);
        let mut current = base.clone();
        let mut nodes: u64 = 0;
        search_z(
            0,
            &kernel,
            &box_values,
            &weight_of,
            &suffix,
            &mut current,
            &mut best,
            &mut best_weight,
            &mut nodes,
            budget.node_budget,
        )?;

        let chain = ChainVector::from_vector(wc.complex(), wc.chain_dim(), &best);
        let certified = best_weight == q_value;
        Ok(FillVolCertificate {
            ring: RingSpec::IntegersZ,
            mode: wc.mode(),
            value: value_scalar(wc, best_weight),
            chain,
            certified_optimal: certified,
            lower_bound: Some(value_scalar(wc, q_value)),
        })
    }
}

#[allow(clippy::too_many_arguments)]
fn search_z(
    level: usize,
    kernel: &[Vec<BigInt>],
    box_values: &[BigInt],
    weight_of: &dyn Fn(&[BigInt]) -> BigRational,
    suffix: &[BigRational],
    current: &mut Vec<BigInt>,
    best: &mut Vec<BigInt>,
    best_weight: &mut BigRational,
    nodes: &mut u64,
    node_budget: u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > node_budget {
        return Err(Error::SearchBudgetExceeded(*nodes));
    }
    if level == kernel.len() {
        let w = weight_of(current);
        if w < *best_weight {
            *best_weight = w;
            *best = current.clone();
        }
        return Ok(());
    }
    let here = weight_of(current);
    if &here - &suffix[level] >= *best_weight {
        return Ok(());
    }
    for t in box_values {
        if !Coeff::is_zero(t) {
            for (c, kv) in current.iter_mut().zip(&kernel[level]) {
                *c += t * kv;
            }
        }
        search_z(
            level + 1,
            kernel,
            box_values,
            weight_of,
            suffix,
            current,
            best,
            best_weight,
            nodes,
            node_budget,
        )?;
        if !Coeff::is_zero(t) {
            for (c, kv) in current.iter_mut().zip(&kernel[level]) {
                *c -= t * kv;
            }
        }
    }
    Ok(())
}

/// Which finite ambient complex hosts the filling search.
#[derive(Clone, Debug)]
pub enum AmbientSpec {
    /// Cone over the fundamental cycle inside the sup-norm space.
    Cone,
    /// The distance-flag nerve at a fixed scale, realized affinely on the
    /// embedded points.
    NerveAtScale(Scalar),
}

/// Certified upper bound on the filling volume of the fundamental class:
/// embed by Kuratowski, build the ambient, weigh simplices by Euclidean
/// volume, and take the optimal chain. The search runs over a finite
/// ambient, so the value is an upper bound by construction.
pub fn fillvol_upper<K: OptimalChain>(
    mc: &crate::metric::MetricComplex,
    ambient: &AmbientSpec,
    budget: &SearchBudget,
) -> Result<FillVolCertificate<K>> {
    let z = crate::homology::fundamental_cycle::<K>(mc.complex())?
        .ok_or(Error::NoFundamentalClass)?;
    let fms = mc.path_metric()?;
    let kp = crate::metric::kuratowski_embed(&fms)?;
    let n = z.dim();
    match ambient {
        AmbientSpec::Cone => {
            let (wc, _tautological) = cone_fill(&z, &kp, ApexRule::BoxCenter)?;
            K::optimal_chain_with(&z, &wc, budget)
        }
        AmbientSpec::NerveAtScale(scale) => {
            let complex = crate::fillrad::nerve_complex(&fms, scale, n + 1);
            if z.validate_in(&complex).is_err() {
                return Err(Error::Infeasible);
            }
            let coords: Vec<Vec<Scalar>> =
                (0..kp.len()).map(|i| kp.point(i).to_vec()).collect();
            let wc = WeightedComplex::euclidean(complex, n + 1, &coords)?;
            K::optimal_chain_with(&z, &wc, budget)
        }
    }
}

/// Where the apex of a cone filling goes.
#[derive(Clone, Debug)]
pub enum ApexRule {
    /// Coordinatewise midpoint of the bounding box of the cycle's support.
    BoxCenter,
    Point(Vec<Scalar>),
}

/// Cones the cycle off inside the sup-norm space: one new apex vertex,
/// Euclidean weights, and the tautological cone chain as certificate.
pub fn cone_fill<K: Coeff>(
    z: &ChainVector<K>,
    realization: &KuratowskiPoints,
    apex_rule: ApexRule,
) -> Result<(WeightedComplex, FillVolCertificate<K>)> {
    let n = z.dim();
    let apex_index = realization.len();
    if z.is_zero() {
        let complex = SimplicialComplex::from_simplices(apex_index + 1, Vec::new());
        let wc = WeightedComplex {
            complex,
            chain_dim: n + 1,
            weights: Vec::new(),
            mode: WeightMode::EuclideanUpperBound,
        };
        let cert = FillVolCertificate {
            ring: K::RING,
            mode: WeightMode::EuclideanUpperBound,
            value: Scalar::zero(),
            chain: ChainVector::zero(n + 1),
            certified_optimal: true,
            lower_bound: None,
        };
        return Ok((wc, cert));
    }

    let mut support: Vec<usize> = Vec::new();
    for (s, _) in z.iter() {
        for &v in s {
            if !support.contains(&v) {
                support.push(v);
            }
        }
    }
    let width = realization.ambient_dim();
    let apex = match apex_rule {
        ApexRule::Point(p) => {
            if p.len() != width {
                return Err(Error::BadFormat("apex dimension mismatch".into()));
            }
            p
        }
        ApexRule::BoxCenter => (0..width)
            .map(|v| {
                let mut lo = realization.point(support[0])[v].clone();
                let mut hi = lo.clone();
                for &i in &support[1..] {
                    let x = &realization.point(i)[v];
                    if *x < lo {
                        lo = (*x).clone();
                    }
                    if *x > hi {
                        hi = (*x).clone();
                    }
                }
                lo.add(&hi).half()
            })
            .collect(),
    };

    let mut simplices: Vec<Simplex> = Vec::new();
    for (s, _) in z.iter() {
        simplices.push(s.clone());
        let mut coned = s.clone();
        coned.push(apex_index);
        simplices.push(coned);
    }
    let complex = SimplicialComplex::from_simplices(apex_index + 1, simplices);
    let mut coords: Vec<Vec<Scalar>> =
        (0..realization.len()).map(|i| realization.point(i).to_vec()).collect();
    coords.push(apex);
    let wc = WeightedComplex::euclidean(complex, n + 1, &coords)?;

    // cone chain: the sign makes d(cone z) = z for a cycle z
    let mut chain = ChainVector::zero(n + 1);
    for (s, c) in z.iter() {
        let mut coned = s.clone();
        coned.push(apex_index);
        let signed = if (n + 1).is_multiple_of(2) { c.clone() } else { c.neg() };
        chain.add_term(&coned, signed);
    }
    if &chain.boundary() != z {
        return Err(Error::BadFormat("cone chain boundary mismatch".into()));
    }
    // accumulate exactly over the same rationalized weights the optimizers
    // use, so cone values and optima stay comparable to the last bit
    let weights = wc.rational_weights();
    let mut value = BigRational::from_i64(0);
    for (s, c) in chain.iter() {
        let idx = wc.complex().index_of(s).expect("cone simplex indexed");
        if let Scalar::Exact(w) = c.abs_weight() {
            value += &weights[idx] * w;
        }
    }
    let cert = FillVolCertificate {
        ring: K::RING,
        mode: WeightMode::EuclideanUpperBound,
        value: value_scalar(&wc, value),
        chain,
        certified_optimal: false,
        lower_bound: None,
    };
    Ok((wc, cert))
}
