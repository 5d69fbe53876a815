//! Nerve of the cover by maximal faces.
//!
//! Vertex `i` of the nerve stands for facet `i` of the source complex, and a
//! set of indices spans a nerve face when those facets share a vertex. Every
//! such intersection is a simplex, so the nerve has the homology of the
//! source complex.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::homology::is_homology_nontrivial;

/// Complexes with at most this many facets get their full nerve by default.
pub const FULL_NERVE_FACET_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NerveComplex {
    pub complex: SimplicialComplex,
    /// `source_facets[i]` is the facet behind nerve vertex `i`.
    pub source_facets: Vec<Face>,
    /// Highest nerve dimension enumerated, if the nerve was truncated.
    pub max_dim: Option<usize>,
}

impl NerveComplex {
    pub fn source_facet(&self, i: Vertex) -> &Face {
        &self.source_facets[i as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NerveError {
    #[error("H_{k} is nontrivial but the complex has only {facets} facets")]
    TooFewFacets { k: usize, facets: usize },
    #[error("H_{k} is nontrivial but no {size} facets have empty intersection")]
    NoWitness { k: usize, size: usize },
    #[error("facet index {0} out of range")]
    NoSuchFacet(usize),
}

/// Nerve truncated at `max_dim`, or the full nerve for `None`.
pub fn nerve_with_cap(x: &SimplicialComplex, max_dim: Option<usize>) -> NerveComplex {
    let facets = x.facets();
    let mut found: Vec<Face> = Vec::new();
    let mut chosen: Vec<Vertex> = Vec::new();
    for i in 0..facets.len() {
        chosen.push(i as Vertex);
        extend(facets, facets[i].vertices().to_vec(), &mut chosen, max_dim, &mut found);
        chosen.pop();
    }
    NerveComplex { complex: SimplicialComplex::from_facets(found), source_facets: facets.to_vec(), max_dim }
}

/// Depth-first search over increasing index sets. A set whose facets share
/// nothing is never extended.
fn extend(
    facets: &[Face],
    common: Vec<Vertex>,
    chosen: &mut Vec<Vertex>,
    max_dim: Option<usize>,
    found: &mut Vec<Face>,
) {
    let meets = |j: usize| {
        let f = facets[j].vertices();
        common.iter().any(|v| f.binary_search(v).is_ok())
    };
    let maximal = (0..facets.len()).all(|j| chosen.binary_search(&(j as Vertex)).is_ok() || !meets(j));
    if maximal || max_dim.is_some_and(|c| chosen.len() > c) {
        found.push(Face::from_sorted(chosen.clone()));
        return;
    }
    let last = *chosen.last().unwrap() as usize;
    for j in last + 1..facets.len() {
        let next: Vec<Vertex> =
            common.iter().copied().filter(|v| facets[j].vertices().binary_search(v).is_ok()).collect();
        if next.is_empty() {
            continue;
        }
        chosen.push(j as Vertex);
        extend(facets, next, chosen, max_dim, found);
        chosen.pop();
    }
}

/// Full nerve for up to [`FULL_NERVE_FACET_LIMIT`] facets. Larger covers are
/// truncated one dimension above the complex, which still determines every
/// homology group the complex can have.
pub fn nerve_max(x: &SimplicialComplex) -> NerveComplex {
    let cap = if x.facets().len() <= FULL_NERVE_FACET_LIMIT { None } else { x.dim().map(|d| d + 1) };
    nerve_with_cap(x, cap)
}

fn common_is_empty(facets: &[Face], idx: impl IntoIterator<Item = usize>) -> bool {
    let mut it = idx.into_iter();
    let Some(first) = it.next() else {
        return false;
    };
    let mut common = facets[first].vertices().to_vec();
    for i in it {
        common.retain(|v| facets[i].vertices().binary_search(v).is_ok());
        if common.is_empty() {
            return true;
        }
    }
    common.is_empty()
}

/// The lexicographically first `k+2` facets (by index) with empty common
/// intersection. Errors if none exists although `H_k` is nontrivial.
pub fn nerve_lemma_witness(x: &SimplicialComplex, k: usize) -> Result<Option<Vec<usize>>, NerveError> {
    let facets = x.facets();
    let found = (0..facets.len()).combinations(k + 2).find(|c| common_is_empty(facets, c.iter().copied()));
    if found.is_some() {
        return Ok(found);
    }
    if is_homology_nontrivial(x, k) {
        return Err(if facets.len() < k + 2 {
            NerveError::TooFewFacets { k, facets: facets.len() }
        } else {
            NerveError::NoWitness { k, size: k + 2 }
        });
    }
    Ok(None)
}

/// The lexicographically first `k+1` facets other than facet `m` whose common
/// intersection misses facet `m`.
pub fn nerve_lemma_witness_through(
    x: &SimplicialComplex,
    k: usize,
    m: usize,
) -> Result<Option<Vec<usize>>, NerveError> {
    let facets = x.facets();
    if m >= facets.len() {
        return Err(NerveError::NoSuchFacet(m));
    }
    let found = (0..facets.len())
        .filter(|&i| i != m)
        .combinations(k + 1)
        .find(|c| common_is_empty(facets, std::iter::once(m).chain(c.iter().copied())));
    if found.is_some() {
        return Ok(found);
    }
    if is_homology_nontrivial(x, k) {
        return Err(NerveError::NoWitness { k, size: k + 1 });
    }
    Ok(None)
}

/// True when the complex is the boundary of the simplex on its `n` vertices.
pub fn is_simplex_boundary(x: &SimplicialComplex, n: usize) -> bool {
    x.num_vertices() == n && n >= 2 && x.facets().len() == n && x.is_pure(n - 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology_profile;

    fn sc(lists: &[&[Vertex]]) -> SimplicialComplex {
        SimplicialComplex::try_from_lists(lists.iter().map(|l| l.to_vec())).unwrap()
    }

    #[test]
    fn small_nerves() {
        assert_eq!(nerve_max(&sc(&[&[0, 1, 2]])).complex, sc(&[&[0]]));
        assert_eq!(nerve_max(&sc(&[&[0, 1], &[2, 3]])).complex, sc(&[&[0], &[1]]));
        assert!(nerve_max(&SimplicialComplex::empty()).complex.is_empty());
    }

    #[test]
    fn nerve_of_mh21_is_a_circle() {
        let x = sc(&[&[2, 3, 4], &[0, 1, 3], &[0, 1, 2]]);
        let n = nerve_max(&x);
        assert!(is_simplex_boundary(&n.complex, 3));
        assert_eq!(n.source_facet(2), &x.facets()[2]);
    }

    #[test]
    fn nerve_of_tetrahedron_boundary() {
        let x = SimplicialComplex::simplex(Face::full(4)).skeleton(2);
        let n = nerve_max(&x);
        assert!(is_simplex_boundary(&n.complex, 4));
        assert!(homology_profile(&n.complex, true).same_groups(&homology_profile(&x, true)));
    }

    #[test]
    fn truncation() {
        let x = SimplicialComplex::simplex(Face::full(4)).skeleton(2);
        let n = nerve_with_cap(&x, Some(1));
        assert_eq!(n.complex, SimplicialComplex::simplex(Face::full(4)).skeleton(1));
    }

    #[test]
    fn witnesses() {
        let x = SimplicialComplex::simplex(Face::full(4)).skeleton(2);
        assert_eq!(nerve_lemma_witness(&x, 2), Ok(Some(vec![0, 1, 2, 3])));
        let mh = sc(&[&[2, 3, 4], &[0, 1, 3], &[0, 1, 2]]);
        assert_eq!(nerve_lemma_witness(&mh, 1), Ok(Some(vec![0, 1, 2])));
        assert_eq!(nerve_lemma_witness_through(&mh, 1, 2), Ok(Some(vec![0, 1])));
        let cone = sc(&[&[0, 1], &[1, 2], &[0, 2]]).cone(3).unwrap();
        assert_eq!(nerve_lemma_witness(&cone, 1), Ok(None));
        assert_eq!(nerve_lemma_witness_through(&cone, 1, 0), Ok(None));
        assert_eq!(nerve_lemma_witness_through(&cone, 1, 9), Err(NerveError::NoSuchFacet(9)));
    }

    #[test]
    fn witness_respects_lex_order() {
        // facets 0,1,2 share vertex 0; the first empty triple is (0,1,3)
        let x = sc(&[&[0, 1], &[0, 2], &[0, 3], &[1, 2]]);
        assert_eq!(nerve_lemma_witness(&x, 1), Ok(Some(vec![0, 1, 3])));
    }
}
