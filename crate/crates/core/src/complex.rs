//! Finite abstract simplicial complexes stored by their maximal faces.
//!
//! A [`SimplicialComplex`] keeps only its facets (an antichain under inclusion),
//! sorted lexicographically. The full face poset is the downward closure of the
//! facets; it is enumerated per dimension on demand and memoized, since facet
//! counts are small while closures grow combinatorially.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense non-negative vertex id.
pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("face has no vertices")]
    EmptyFace,
    #[error("face repeats vertex {0}")]
    DuplicateVertex(Vertex),
    #[error("apex {0} is already a vertex of the complex")]
    ApexCollision(Vertex),
}

/// A simplex given by its strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Face(Vec<Vertex>);

impl Face {
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptyFace);
        }
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertex(w[0]));
        }
        Ok(Face(vertices))
    }

    /// Caller guarantees `vertices` is nonempty and strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    /// The face on `0..n`.
    pub fn full(n: usize) -> Self {
        Face::from_sorted((0..n as Vertex).collect())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// Vertices common to both faces, in increasing order (possibly empty).
    pub fn intersection(&self, other: &Face) -> Vec<Vertex> {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn intersection_len(&self, other: &Face) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    pub fn union(&self, other: &Face) -> Face {
        Face::from_sorted(self.0.iter().chain(&other.0).copied().sorted().dedup().collect())
    }

    /// The codimension-one face omitting the vertex at position `idx`.
    pub fn without_index(&self, idx: usize) -> Option<Face> {
        if self.0.len() <= 1 {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(idx);
        Some(Face(v))
    }

    pub fn with_vertex(&self, v: Vertex) -> Result<Face, ComplexError> {
        let mut vs = self.0.clone();
        vs.push(v);
        Face::new(vs)
    }

    /// All subfaces with exactly `size` vertices, in lexicographic order.
    pub fn subfaces(&self, size: usize) -> impl Iterator<Item = Face> + '_ {
        let size = size.max(1);
        self.0.iter().copied().combinations(size).map(Face::from_sorted)
    }
}

impl TryFrom<Vec<Vertex>> for Face {
    type Error = ComplexError;

    fn try_from(v: Vec<Vertex>) -> Result<Self, Self::Error> {
        Face::new(v)
    }
}

impl From<Face> for Vec<Vertex> {
    fn from(f: Face) -> Self {
        f.0
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" "))
    }
}

/// Face counts `f_0, f_1, ...` per dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) }).sum()
    }
}

/// An immutable simplicial complex over dense integer vertex ids.
#[derive(Clone, Serialize, Deserialize)]
#[serde(from = "FacetList", into = "FacetList")]
pub struct SimplicialComplex {
    facets: Vec<Face>,
    vertices: Vec<Vertex>,
    closure: Vec<OnceLock<Vec<Face>>>,
}

#[derive(Serialize, Deserialize)]
struct FacetList {
    facets: Vec<Face>,
}

impl From<FacetList> for SimplicialComplex {
    fn from(l: FacetList) -> Self {
        SimplicialComplex::from_facets(l.facets)
    }
}

impl From<SimplicialComplex> for FacetList {
    fn from(c: SimplicialComplex) -> Self {
        FacetList { facets: c.facets }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl Hash for SimplicialComplex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.facets.hash(state);
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.facets).finish()
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.facets.iter().map(|x| format!("{x:?}")).join(" "))
    }
}

impl Default for SimplicialComplex {
    fn default() -> Self {
        Self::empty()
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { facets: Vec::new(), vertices: Vec::new(), closure: Vec::new() }
    }

    /// The full simplex on `face`.
    pub fn simplex(face: Face) -> Self {
        Self::from_facets([face])
    }

    /// Builds the complex generated by `faces`, keeping only the
    /// inclusion-maximal ones. Duplicates and dominated faces are absorbed.
    pub fn from_facets(faces: impl IntoIterator<Item = Face>) -> Self {
        let mut faces: Vec<Face> = faces.into_iter().collect();
        faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
        for f in faces {
            if !kept.iter().any(|k| k.len() > f.len() && f.is_subset_of(k)) {
                kept.push(f);
            }
        }
        kept.sort_unstable();
        Self::from_antichain(kept)
    }

    /// `facets` must already be a sorted antichain.
    pub(crate) fn from_antichain(facets: Vec<Face>) -> Self {
        let vertices: Vec<Vertex> =
            facets.iter().flat_map(|f| f.vertices().iter().copied()).sorted_unstable().dedup().collect();
        let top = facets.iter().map(Face::len).max().unwrap_or(0);
        let closure = (0..top).map(|_| OnceLock::new()).collect();
        SimplicialComplex { facets, vertices, closure }
    }

    /// Convenience constructor from raw vertex lists.
    pub fn try_from_lists<I, F>(lists: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = Vertex>,
    {
        let faces = lists.into_iter().map(|l| Face::new(l.into_iter().collect())).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_facets(faces))
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn vertex_set(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension of the largest facet; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.closure.len().checked_sub(1)
    }

    /// One more than the largest vertex id in use.
    pub fn vertex_bound(&self) -> Vertex {
        self.vertices.last().map_or(0, |v| v + 1)
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        self.facets.iter().any(|f| face.is_subset_of(f))
    }

    /// All `i`-dimensional faces of the closure, lexicographically ordered.
    pub fn faces_of_dim(&self, i: usize) -> &[Face] {
        match self.closure.get(i) {
            None => &[],
            Some(cell) => cell.get_or_init(|| {
                let mut out: Vec<Face> =
                    self.facets.iter().filter(|f| f.len() > i).flat_map(|f| f.subfaces(i + 1)).collect();
                out.sort_unstable();
                out.dedup();
                out
            }),
        }
    }

    pub fn f_vector(&self) -> FVector {
        FVector((0..self.closure.len()).map(|i| self.faces_of_dim(i).len()).collect())
    }

    /// True iff every facet has dimension exactly `d`.
    pub fn is_pure(&self, d: usize) -> bool {
        !self.facets.is_empty() && self.facets.iter().all(|f| f.dimension() == d)
    }

    /// The complex of all faces of dimension at most `i`.
    pub fn skeleton(&self, i: usize) -> SimplicialComplex {
        if self.dim().is_none_or(|d| d <= i) {
            return self.clone();
        }
        let faces =
            self.facets.iter().flat_map(
                |f| {
                    if f.len() <= i + 1 {
                        vec![f.clone()]
                    } else {
                        f.subfaces(i + 1).collect()
                    }
                },
            );
        Self::from_facets(faces)
    }

    /// Faces of `self` whose vertices all lie in `subset`.
    pub fn induced_subcomplex(&self, subset: &[Vertex]) -> SimplicialComplex {
        let subset: Vec<Vertex> = subset.iter().copied().sorted_unstable().dedup().collect();
        let faces = self.facets.iter().filter_map(|f| {
            let vs: Vec<Vertex> = f.vertices().iter().copied().filter(|v| subset.binary_search(v).is_ok()).collect();
            (!vs.is_empty()).then(|| Face::from_sorted(vs))
        });
        Self::from_facets(faces)
    }

    /// Joins every facet with `apex`. The cone over the empty complex is the point `apex`.
    pub fn cone(&self, apex: Vertex) -> Result<SimplicialComplex, ComplexError> {
        if self.vertices.binary_search(&apex).is_ok() {
            return Err(ComplexError::ApexCollision(apex));
        }
        if self.is_empty() {
            return Ok(Self::simplex(Face::from_sorted(vec![apex])));
        }
        let facets = self.facets.iter().map(|f| f.with_vertex(apex)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_facets(facets))
    }

    /// Union of the cones over two fresh apexes `vertex_bound()` and `vertex_bound() + 1`.
    pub fn suspension(&self) -> SimplicialComplex {
        let (a, b) = (self.vertex_bound(), self.vertex_bound() + 1);
        if self.is_empty() {
            return Self::from_facets([Face::from_sorted(vec![a]), Face::from_sorted(vec![b])]);
        }
        let facets = self.facets.iter().flat_map(|f| {
            let mut fa = f.vertices().to_vec();
            fa.push(a);
            let mut fb = f.vertices().to_vec();
            fb.push(b);
            [Face::from_sorted(fa), Face::from_sorted(fb)]
        });
        Self::from_facets(facets)
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        Self::from_facets(self.facets.iter().chain(&other.facets).cloned())
    }

    /// Faces common to both complexes.
    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let faces = self.facets.iter().flat_map(|f| {
            other.facets.iter().filter_map(move |g| {
                let common = f.intersection(g);
                (!common.is_empty()).then(|| Face::from_sorted(common))
            })
        });
        Self::from_facets(faces)
    }

    /// True iff every face of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|f| other.contains_face(f))
    }

    /// Applies `map` to every vertex. The map must be injective on the vertex set.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> SimplicialComplex {
        let facets = self
            .facets
            .iter()
            .map(|f| Face::new(f.vertices().iter().map(|&v| map(v)).collect()).expect("relabeling must be injective"));
        Self::from_facets(facets)
    }

    /// The subcomplex generated by the facets at `indices`.
    pub fn subcomplex_of_facets(&self, indices: &[usize]) -> SimplicialComplex {
        let mut facets: Vec<Face> = indices.iter().map(|&i| self.facets[i].clone()).collect();
        facets.sort_unstable();
        facets.dedup();
        Self::from_antichain(facets)
    }
}

/// Returns `(A ∪ B, A ∩ B)`.
pub fn union_complexes(a: &SimplicialComplex, b: &SimplicialComplex) -> (SimplicialComplex, SimplicialComplex) {
    (a.union(b), a.intersection(b))
}
