//! Finite simplicial complexes with deterministic orientation.
//!
//! Simplices are strictly increasing vertex tuples; the orientation of every
//! simplex is the one induced by increasing vertex order, so boundary
//! matrices are reproducible bit for bit. Vertices `0..vertex_count` are
//! always present as 0-simplices.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::ColMat;
use crate::ring::Coeff;

/// A simplex as its strictly increasing vertex tuple.
pub type Simplex = Vec<usize>;

/// How `validate` treats faces that are not listed in the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceMode {
    /// Every positive-dimensional face of a listed simplex must be listed.
    Strict,
    /// Missing faces are inferred and recorded; duplicates are merged.
    CloseFaces,
}

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// `by_dim[k]` holds the sorted k-simplices.
    by_dim: Vec<Vec<Simplex>>,
    connected: bool,
    inferred: Vec<Simplex>,
}

/// Equality is structural: which faces were inferred during validation is
/// bookkeeping, not identity.
impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.by_dim == other.by_dim
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Validates a raw description: index ranges, degeneracy, duplicates,
    /// and closure under faces according to `mode`.
    pub fn validate(
        vertex_count: usize,
        simplices: impl IntoIterator<Item = Vec<usize>>,
        mode: FaceMode,
    ) -> Result<Self> {
        let mut listed: BTreeSet<Simplex> = BTreeSet::new();
        for raw in simplices {
            let mut s = raw;
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::BadFormat(format!("degenerate simplex {s:?}")));
            }
            for &v in &s {
                if v >= vertex_count {
                    return Err(Error::BadIndex { index: v, vertex_count });
                }
            }
            if !listed.insert(s.clone()) && mode == FaceMode::Strict {
                return Err(Error::DuplicateSimplex(s));
            }
        }

        // Vertices are primitive: all of 0..vertex_count belong to the complex.
        for v in 0..vertex_count {
            listed.insert(vec![v]);
        }

        let mut inferred = Vec::new();
        let mut queue: Vec<Simplex> = listed.iter().cloned().collect();
        while let Some(s) = queue.pop() {
            if s.len() <= 2 {
                continue; // vertex faces are always present
            }
            for face in faces_of(&s) {
                if !listed.contains(&face) {
                    match mode {
                        FaceMode::Strict => {
                            return Err(Error::MissingFace { simplex: s, face });
                        }
                        FaceMode::CloseFaces => {
                            listed.insert(face.clone());
                            inferred.push(face.clone());
                            queue.push(face);
                        }
                    }
                }
            }
        }
        inferred.sort();

        let max_dim = listed.iter().map(|s| s.len() - 1).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); max_dim + 1];
        for s in listed {
            by_dim[s.len() - 1].push(s);
        }
        // BTreeSet iteration is sorted, and sorting is per-dimension stable.

        let connected = is_connected(vertex_count, by_dim.get(1).map_or(&[][..], |e| e));
        Ok(SimplicialComplex { vertex_count, by_dim, connected, inferred })
    }

    /// Builds a complex from its top simplices, closing under faces.
    pub fn from_simplices(
        vertex_count: usize,
        simplices: impl IntoIterator<Item = Vec<usize>>,
    ) -> Self {
        Self::validate(vertex_count, simplices, FaceMode::CloseFaces)
            .expect("invalid simplex data")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Faces added by closing validation, sorted.
    pub fn inferred_faces(&self) -> &[Simplex] {
        &self.inferred
    }

    /// Dimension of the complex; `None` when it has no simplices at all.
    pub fn dim(&self) -> Option<usize> {
        (self.vertex_count > 0).then(|| self.by_dim.len() - 1)
    }

    /// The sorted k-simplices (empty slice beyond the dimension).
    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.by_dim.get(dim).map_or(&[], |v| v)
    }

    pub fn simplex_count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    /// Simplex counts per dimension, `0..=dim`.
    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(|v| v.len()).collect()
    }

    /// Position of a simplex within its dimension's sorted list.
    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let list = self.simplices(simplex.len().wrapping_sub(1));
        list.binary_search_by(|probe| probe.as_slice().cmp(simplex)).ok()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index_of(simplex).is_some()
    }

    /// Signed boundary matrix of `∂_dim`: rows are (dim-1)-simplices,
    /// columns are dim-simplices, entries alternate in sign by the
    /// increasing-vertex-order convention.
    pub fn boundary_matrix<K: Coeff>(&self, dim: usize) -> Result<ColMat<K>> {
        let max = self.dim().unwrap_or(0);
        if dim < 1 || dim > max {
            return Err(Error::DimOutOfRange { dim, max });
        }
        let rows = self.simplex_count(dim - 1);
        let cols_list = self.simplices(dim);
        let mut mat = ColMat::new(rows, cols_list.len());
        for (j, s) in cols_list.iter().enumerate() {
            for (i, face) in faces_of(s).into_iter().enumerate() {
                let row = self.index_of(&face).expect("closed complex");
                let entry = if i % 2 == 0 { K::one() } else { K::one().neg() };
                mat.push(row, j, entry);
            }
        }
        Ok(mat)
    }

    /// Cone over the complex: a new apex vertex joined to every simplex.
    pub fn cone(&self) -> SimplicialComplex {
        let apex = self.vertex_count;
        let mut simplices: Vec<Simplex> = Vec::new();
        for list in &self.by_dim {
            for s in list {
                simplices.push(s.clone());
                let mut coned = s.clone();
                coned.push(apex);
                simplices.push(coned);
            }
        }
        SimplicialComplex::from_simplices(apex + 1, simplices)
    }
}

/// The (k-1)-faces of a k-simplex in the order "drop vertex i", i = 0..=k.
/// A vertex yields the single empty tuple.
pub fn faces_of(simplex: &[usize]) -> Vec<Simplex> {
    (0..simplex.len())
        .map(|i| {
            let mut face = simplex.to_vec();
            face.remove(i);
            face
        })
        .collect()
}

fn is_connected(vertex_count: usize, edges: &[Simplex]) -> bool {
    if vertex_count <= 1 {
        return true;
    }
    let mut parent: Vec<usize> = (0..vertex_count).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for e in edges {
        let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (1..vertex_count).all(|v| find(&mut parent, v) == root)
}
