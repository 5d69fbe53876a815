//! Simplicial homology with integer coefficients.
//!
//! Betti numbers and torsion come from the Smith normal forms of the boundary
//! maps. Integer coefficients are the single source of truth: by universal
//! coefficients a group is nontrivial for some coefficient group exactly when
//! the integral Betti number or torsion in that degree (or the degree below)
//! is nonzero.

mod matrix;
mod snf;

use std::fmt;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use matrix::{rational_rank, IntegerMatrix};
pub use snf::{smith_normal_form, SnfResult};

use crate::complex::{union_complexes, SimplicialComplex};

/// One homology group `Z^betti ⊕ Z/t_1 ⊕ ... ⊕ Z/t_s`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Torsion coefficients, each greater than one, in divisibility order.
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: Vec::new() }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology in degrees `0..=dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub reduced: bool,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    /// The group in degree `k`; trivial above the stored range.
    pub fn group(&self, k: usize) -> HomologyGroup {
        self.groups.get(k).cloned().unwrap_or_default()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    /// Equal groups in every degree, ignoring trailing trivial groups.
    pub fn same_groups(&self, other: &HomologyProfile) -> bool {
        let n = self.groups.len().max(other.groups.len());
        self.reduced == other.reduced && (0..n).all(|k| self.group(k) == other.group(k))
    }

    /// Same groups in degrees `0..=max_degree`.
    pub fn same_groups_up_to(&self, other: &HomologyProfile, max_degree: usize) -> bool {
        self.reduced == other.reduced && (0..=max_degree).all(|k| self.group(k) == other.group(k))
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_trivial)
    }

    /// Alternating sum of Betti numbers.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().enumerate().map(|(i, g)| if i % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum()
    }
}

/// Lists degrees up to the last nontrivial group, always including `H_0`.
impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.groups.iter().rposition(|g| !g.is_trivial()).unwrap_or(0);
        let parts: Vec<String> = (0..=top).map(|i| format!("H_{i}: {}", self.group(i))).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Dense boundary map from `i`-faces (columns) to `(i-1)`-faces (rows).
fn boundary_dense(x: &SimplicialComplex, i: usize, reduced: bool) -> (Vec<Vec<i64>>, usize) {
    let cols_faces = x.faces_of_dim(i);
    let cols = cols_faces.len();
    if i == 0 {
        let rows = if reduced && cols > 0 { 1 } else { 0 };
        return (vec![vec![1; cols]; rows], cols);
    }
    let row_faces = x.faces_of_dim(i - 1);
    let mut a = vec![vec![0i64; cols]; row_faces.len()];
    for (c, face) in cols_faces.iter().enumerate() {
        for j in 0..face.len() {
            let sub = face.without_index(j).expect("dimension is positive");
            let r = row_faces.binary_search(&sub).expect("closure contains every subface");
            a[r][c] = if j % 2 == 0 { 1 } else { -1 };
        }
    }
    (a, cols)
}

/// Matrix of the boundary map `∂_i`. Rows and columns follow the
/// lexicographic face order; the column of `(v_0 < ... < v_i)` has `(-1)^j` at
/// the face omitting `v_j`. With `reduced`, `∂_0` is the augmentation row.
pub fn boundary_matrix(x: &SimplicialComplex, i: usize, reduced: bool) -> IntegerMatrix {
    let (a, cols) = boundary_dense(x, i, reduced);
    if a.is_empty() {
        return IntegerMatrix::zeros(0, cols);
    }
    IntegerMatrix::from_dense(&a)
}

fn boundary_snf(x: &SimplicialComplex, i: usize, reduced: bool) -> SnfResult {
    let (a, cols) = boundary_dense(x, i, reduced);
    snf::snf_dense(a, cols)
}

fn torsion_u64(snf: &SnfResult) -> Vec<u64> {
    snf.torsion().map(|t| t.to_u64().expect("torsion coefficient exceeds u64")).collect()
}

/// Homology in the single degree `k`.
pub fn homology_group(x: &SimplicialComplex, k: usize, reduced: bool) -> HomologyGroup {
    let fk = x.faces_of_dim(k).len();
    if fk == 0 {
        return HomologyGroup::default();
    }
    let (lower, upper) = rayon::join(|| boundary_snf(x, k, reduced), || boundary_snf(x, k + 1, reduced));
    HomologyGroup { betti: fk - lower.rank() - upper.rank(), torsion: torsion_u64(&upper) }
}

/// Betti numbers and torsion in every degree up to the dimension of `x`.
pub fn homology_profile(x: &SimplicialComplex, reduced: bool) -> HomologyProfile {
    let Some(dim) = x.dim() else {
        return HomologyProfile { reduced, groups: Vec::new() };
    };
    let snfs: Vec<SnfResult> = (0..=dim + 1).into_par_iter().map(|i| boundary_snf(x, i, reduced)).collect();
    let groups = (0..=dim)
        .map(|i| HomologyGroup {
            betti: x.faces_of_dim(i).len() - snfs[i].rank() - snfs[i + 1].rank(),
            torsion: torsion_u64(&snfs[i + 1]),
        })
        .collect();
    HomologyProfile { reduced, groups }
}

/// Betti numbers from ranks over the rationals, bypassing Smith normal form.
pub fn rational_betti(x: &SimplicialComplex, reduced: bool) -> Vec<usize> {
    let Some(dim) = x.dim() else {
        return Vec::new();
    };
    let ranks: Vec<usize> = (0..=dim + 1).map(|i| rational_rank(&boundary_matrix(x, i, reduced))).collect();
    (0..=dim).map(|i| x.faces_of_dim(i).len() - ranks[i] - ranks[i + 1]).collect()
}

/// Reduced homology nontrivial in degree `k` (free part or torsion). For
/// `k = 0` this means the complex is disconnected.
pub fn is_homology_nontrivial(x: &SimplicialComplex, k: usize) -> bool {
    !homology_group(x, k, true).is_trivial()
}

/// Reduced homology in degree `n`, where degree `-1` is `Z` exactly for the
/// empty complex.
fn reduced_group_from(x: &SimplicialComplex, n: isize) -> HomologyGroup {
    match n {
        n if n < -1 => HomologyGroup::default(),
        -1 if x.is_empty() => HomologyGroup::free(1),
        -1 => HomologyGroup::default(),
        n => homology_group(x, n as usize, true),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MvError {
    #[error("A ∪ B does not equal X")]
    UnionMismatch,
    #[error("B must be a single simplex, found {0} facets")]
    NotSimplex(usize),
    #[error("reduced H_{degree}(A) is nontrivial ({group})")]
    PieceNotAcyclic { degree: isize, group: String },
}

/// Checks `H_n(X) ≅ H_{n-1}(A ∩ B)` (reduced) for `X = A ∪ B` with `B` a
/// simplex and `H_n(A) = H_{n-1}(A) = 0`. Violated hypotheses are errors.
pub fn mv_corollary_check(
    x: &SimplicialComplex,
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    n: usize,
) -> Result<bool, MvError> {
    let (union, inter) = union_complexes(a, b);
    if union != *x {
        return Err(MvError::UnionMismatch);
    }
    if b.facets().len() != 1 {
        return Err(MvError::NotSimplex(b.facets().len()));
    }
    let n = n as isize;
    for degree in [n, n - 1] {
        let g = reduced_group_from(a, degree);
        if !g.is_trivial() {
            return Err(MvError::PieceNotAcyclic { degree, group: g.to_string() });
        }
    }
    Ok(reduced_group_from(x, n) == reduced_group_from(&inter, n - 1))
}
