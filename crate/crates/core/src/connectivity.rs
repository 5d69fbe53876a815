//! Strong connectivity with respect to a dimension, growth processes,
//! expansion operations and collapses.
//!
//! Two facets are adjacent with respect to `m` when they share at least `m`
//! vertices. Facet intersections are faces, so this is the same as sharing an
//! `(m-1)`-face.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::complex::{Face, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("facet {facet:?} has dimension below {m}")]
    BelowDimension { facet: Face, m: usize },
    #[error("complex is not strongly connected w.r.t. dimension {m}: {} components", components.len())]
    NotStronglyConnected { m: usize, components: Vec<Vec<usize>> },
    #[error("facet-graph and skeleton criteria disagree at dimension {0}")]
    CriteriaDisagree(usize),
    #[error("attach region is not a subcomplex of the complex")]
    RegionNotInComplex,
    #[error("attach region is not contained in the boundary of the new face")]
    RegionNotInBoundary,
    #[error("attach region has no face of dimension {0}")]
    RegionTooSmall(isize),
    #[error("new face has dimension {dim} below {m}")]
    FaceTooSmall { dim: usize, m: usize },
}

/// Facets as nodes; an edge joins two facets sharing at least `m` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetGraph {
    pub m: usize,
    pub facets: Vec<Face>,
    pub edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
}

impl FacetGraph {
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.facets.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

pub fn facet_graph(x: &SimplicialComplex, m: usize) -> FacetGraph {
    let facets = x.facets().to_vec();
    let n = facets.len();
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if facets[i].intersection_len(&facets[j]) >= m {
                edges.push((i, j));
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    FacetGraph { m, facets, edges, adjacency }
}

fn check_dimension(x: &SimplicialComplex, m: usize) -> Result<(), ConnectivityError> {
    match x.facets().iter().find(|f| f.dimension() < m) {
        Some(f) => Err(ConnectivityError::BelowDimension { facet: f.clone(), m }),
        None => Ok(()),
    }
}

/// Strong components w.r.t. `m` as lists of facet indices. Requires every
/// facet to have dimension at least `m`.
pub fn strong_components(x: &SimplicialComplex, m: usize) -> Result<Vec<Vec<usize>>, ConnectivityError> {
    check_dimension(x, m)?;
    Ok(facet_graph(x, m).components())
}

/// Number of classes of `m`-faces of the `m`-skeleton under "share an
/// `(m-1)`-face". For `m = 0` every pair of vertices is related.
pub fn skeleton_class_count(x: &SimplicialComplex, m: usize) -> usize {
    let top = x.faces_of_dim(m);
    if top.is_empty() {
        return 0;
    }
    if m == 0 {
        return 1;
    }
    let mut parent: Vec<usize> = (0..top.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let ridges = x.faces_of_dim(m - 1);
    let mut first_owner: Vec<Option<usize>> = vec![None; ridges.len()];
    for (i, f) in top.iter().enumerate() {
        for j in 0..f.len() {
            let r = ridges.binary_search(&f.without_index(j).unwrap()).unwrap();
            match first_owner[r] {
                None => first_owner[r] = Some(i),
                Some(o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, i));
                    parent[a] = b;
                }
            }
        }
    }
    (0..top.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// Exactly one strong component w.r.t. `m`. The facet-graph answer is checked
/// against the skeleton formulation.
pub fn is_strongly_connected(x: &SimplicialComplex, m: usize) -> Result<bool, ConnectivityError> {
    let by_graph = strong_components(x, m)?.len() == 1;
    let by_skeleton = skeleton_class_count(x, m) == 1;
    if by_graph != by_skeleton {
        return Err(ConnectivityError::CriteriaDisagree(m));
    }
    Ok(by_graph)
}

/// Facet-graph connectivity only, for hot loops.
pub(crate) fn is_strongly_connected_fast(x: &SimplicialComplex, m: usize) -> bool {
    x.facets().iter().all(|f| f.dimension() >= m) && facet_graph(x, m).components().len() == 1
}

/// Attaching `new_face` along `attach_region`, a subcomplex of its boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionOp {
    pub new_face: Face,
    pub attach_region: SimplicialComplex,
}

/// Facets in an order where every prefix is strongly connected w.r.t. `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthProcess {
    pub m: usize,
    pub facets: Vec<Face>,
}

impl GrowthProcess {
    /// The complex generated by the first `len` facets.
    pub fn prefix(&self, len: usize) -> SimplicialComplex {
        let mut f = self.facets[..len].to_vec();
        f.sort_unstable();
        SimplicialComplex::from_antichain(f)
    }

    /// Each step after the first as an expansion of the preceding prefix.
    pub fn expansions(&self) -> Vec<ExpansionOp> {
        (1..self.facets.len())
            .map(|i| {
                let new_face = self.facets[i].clone();
                let attach_region = self.prefix(i).induced_subcomplex(new_face.vertices());
                ExpansionOp { new_face, attach_region }
            })
            .collect()
    }
}

/// Breadth-first order of the facet graph from the smallest facet, neighbours
/// visited in facet order.
pub fn growth_process(x: &SimplicialComplex, m: usize) -> Result<GrowthProcess, ConnectivityError> {
    let comps = strong_components(x, m)?;
    if comps.len() != 1 {
        return Err(ConnectivityError::NotStronglyConnected { m, components: comps });
    }
    let g = facet_graph(x, m);
    let n = g.facets.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        order.push(g.facets[u].clone());
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    Ok(GrowthProcess { m, facets: order })
}

/// Glues the full simplex on `op.new_face` to `x` along `op.attach_region`.
pub fn apply_expansion(
    x: &SimplicialComplex,
    op: &ExpansionOp,
    m: usize,
) -> Result<SimplicialComplex, ConnectivityError> {
    if op.new_face.dimension() < m {
        return Err(ConnectivityError::FaceTooSmall { dim: op.new_face.dimension(), m });
    }
    if !op.attach_region.is_subcomplex_of(x) {
        return Err(ConnectivityError::RegionNotInComplex);
    }
    if op.attach_region.facets().iter().any(|f| f.len() >= op.new_face.len() || !f.is_subset_of(&op.new_face)) {
        return Err(ConnectivityError::RegionNotInBoundary);
    }
    // every complex contains the empty face, so m = 0 asks for nothing
    if m > 0 && !op.attach_region.facets().iter().any(|f| f.len() >= m) {
        return Err(ConnectivityError::RegionTooSmall(m as isize - 1));
    }
    Ok(x.union(&SimplicialComplex::simplex(op.new_face.clone())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CollapseOutcome {
    /// All remaining faces have dimension at most the target.
    Collapsed { complex: SimplicialComplex, steps: usize },
    /// Exhaustive search found no collapse sequence.
    Impossible { explored: usize },
    /// Greedy got stuck or the exhaustive budget ran out.
    Unknown { explored: usize },
}

impl CollapseOutcome {
    pub fn collapsed(&self) -> bool {
        matches!(self, CollapseOutcome::Collapsed { .. })
    }
}

pub const DEFAULT_COLLAPSE_BUDGET: usize = 1_000_000;

/// Elementary collapses `(σ, τ)`: `τ` a facet of dimension above `target`, `σ`
/// a codimension-one face of `τ` lying in no other facet. Ordered by `σ`.
fn free_pairs(facets: &[Face], target: usize) -> Vec<(Face, usize)> {
    let mut out = Vec::new();
    for (ti, tau) in facets.iter().enumerate() {
        if tau.dimension() <= target {
            continue;
        }
        for j in 0..tau.len() {
            let sigma = tau.without_index(j).unwrap();
            let elsewhere = facets.iter().enumerate().any(|(k, f)| k != ti && sigma.is_subset_of(f));
            if !elsewhere {
                out.push((sigma, ti));
            }
        }
    }
    out.sort();
    out
}

fn collapse_step(facets: &[Face], sigma: &Face, ti: usize) -> Vec<Face> {
    let tau = &facets[ti];
    let rest: Vec<Face> = facets.iter().enumerate().filter(|&(k, _)| k != ti).map(|(_, f)| f.clone()).collect();
    let mut next = rest.clone();
    for j in 0..tau.len() {
        let face = tau.without_index(j).unwrap();
        if face == *sigma || rest.iter().any(|f| face.is_subset_of(f)) {
            continue;
        }
        next.push(face);
    }
    next.sort_unstable();
    next
}

fn top_dim(facets: &[Face]) -> Option<usize> {
    facets.iter().map(Face::dimension).max()
}

/// Tries to collapse `x` onto a complex of dimension at most `target`.
///
/// Greedy mode always takes the lexicographically smallest free pair; a stuck
/// greedy run is `Unknown`. Exhaustive mode explores every removal order with
/// memoization, up to `budget` states.
pub fn collapse_to_dimension(x: &SimplicialComplex, target: usize, exhaustive: bool) -> CollapseOutcome {
    collapse_with_budget(x, target, exhaustive, DEFAULT_COLLAPSE_BUDGET)
}

pub fn collapse_with_budget(x: &SimplicialComplex, target: usize, exhaustive: bool, budget: usize) -> CollapseOutcome {
    let start = x.facets().to_vec();
    let done = |f: &[Face]| top_dim(f).is_none_or(|d| d <= target);
    if !exhaustive {
        let mut cur = start;
        let mut steps = 0;
        while !done(&cur) {
            let pairs = free_pairs(&cur, target);
            let Some((sigma, ti)) = pairs.first() else {
                return CollapseOutcome::Unknown { explored: steps };
            };
            cur = collapse_step(&cur, sigma, *ti);
            steps += 1;
        }
        return CollapseOutcome::Collapsed { complex: SimplicialComplex::from_antichain(cur), steps };
    }
    let mut visited: HashSet<Vec<Face>> = HashSet::new();
    let mut stack = vec![(start, 0usize)];
    while let Some((cur, depth)) = stack.pop() {
        if done(&cur) {
            return CollapseOutcome::Collapsed { complex: SimplicialComplex::from_antichain(cur), steps: depth };
        }
        if !visited.insert(cur.clone()) {
            continue;
        }
        if visited.len() > budget {
            return CollapseOutcome::Unknown { explored: visited.len() };
        }
        for (sigma, ti) in free_pairs(&cur, target).into_iter().rev() {
            let next = collapse_step(&cur, &sigma, ti);
            if !visited.contains(&next) {
                stack.push((next, depth + 1));
            }
        }
    }
    CollapseOutcome::Impossible { explored: visited.len() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Vertex;
    use crate::homology::homology_profile;

    fn sc(lists: &[&[Vertex]]) -> SimplicialComplex {
        SimplicialComplex::try_from_lists(lists.iter().map(|l| l.to_vec())).unwrap()
    }

    fn face(v: &[Vertex]) -> Face {
        Face::new(v.to_vec()).unwrap()
    }

    fn tetra_boundary() -> SimplicialComplex {
        sc(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
    }

    /// The pure 2-complex on 5 vertices built from blocks {0,1},{2},{3} and apex 4.
    fn mh21() -> SimplicialComplex {
        sc(&[&[2, 3, 4], &[0, 1, 3], &[0, 1, 2]])
    }

    #[test]
    fn facet_graph_of_tetrahedron_boundary_is_complete() {
        let g = facet_graph(&tetra_boundary(), 2);
        assert_eq!(g.edges.len(), 6);
    }

    #[test]
    fn facet_graph_of_mh21_has_one_edge() {
        let g = facet_graph(&mh21(), 2);
        assert_eq!(g.edges, vec![(0, 1)]);
        assert_eq!(g.facets[0], face(&[0, 1, 2]));
        let g = facet_graph(&sc(&[&[0, 1], &[2, 3]]), 1);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn components() {
        assert_eq!(strong_components(&tetra_boundary(), 2).unwrap(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(strong_components(&mh21(), 2).unwrap(), vec![vec![0, 1], vec![2]]);
        assert_eq!(strong_components(&mh21(), 1).unwrap().len(), 1);
        assert!(matches!(
            strong_components(&sc(&[&[0, 1, 2], &[3, 4]]), 2),
            Err(ConnectivityError::BelowDimension { .. })
        ));
    }

    #[test]
    fn strong_connectivity() {
        assert!(is_strongly_connected(&tetra_boundary(), 2).unwrap());
        assert!(!is_strongly_connected(&sc(&[&[0, 1, 2], &[2, 3, 4]]), 2).unwrap());
        assert!(is_strongly_connected(&sc(&[&[0, 1, 2], &[2, 3, 4]]), 1).unwrap());
        assert!(!is_strongly_connected(&SimplicialComplex::empty(), 0).unwrap());
        assert!(is_strongly_connected(&sc(&[&[0], &[1]]), 0).unwrap());
    }

    #[test]
    fn growth_process_of_tetrahedron_boundary() {
        let g = growth_process(&tetra_boundary(), 2).unwrap();
        let order: Vec<Vec<Vertex>> = g.facets.iter().map(|f| f.vertices().to_vec()).collect();
        assert_eq!(order, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        for i in 1..=4 {
            assert!(is_strongly_connected(&g.prefix(i), 2).unwrap());
            assert_eq!(g.prefix(i).facets().len(), i);
        }
        // last step glues along the whole boundary of the last triangle
        let last = g.expansions().pop().unwrap();
        assert_eq!(last.attach_region, sc(&[&[1, 2], &[1, 3], &[2, 3]]));
    }

    #[test]
    fn growth_process_edge_cases() {
        let single = sc(&[&[0, 1, 2]]);
        assert_eq!(growth_process(&single, 2).unwrap().facets.len(), 1);
        let g = growth_process(&mh21(), 1).unwrap();
        assert_eq!(g.facets.len(), 3);
        for i in 1..=3 {
            assert!(is_strongly_connected(&g.prefix(i), 1).unwrap());
        }
        match growth_process(&mh21(), 2) {
            Err(ConnectivityError::NotStronglyConnected { components, .. }) => assert_eq!(components.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    fn betti(x: &SimplicialComplex) -> Vec<usize> {
        homology_profile(x, true).betti()
    }

    fn delta(before: &SimplicialComplex, after: &SimplicialComplex) -> Vec<i64> {
        let (b, a) = (betti(before), betti(after));
        (0..3).map(|i| *a.get(i).unwrap_or(&0) as i64 - *b.get(i).unwrap_or(&0) as i64).collect()
    }

    #[test]
    fn dimension_two_expansion_table() {
        // along an edge, far vertex new: no effect
        let x = sc(&[&[0, 1, 2]]);
        let op = ExpansionOp { new_face: face(&[1, 2, 3]), attach_region: sc(&[&[1, 2]]) };
        let y = apply_expansion(&x, &op, 2).unwrap();
        assert_eq!(y.facets().len(), 2);
        assert_eq!(delta(&x, &y), vec![0, 0, 0]);

        // along an edge plus the opposite vertex: adds a 1-cycle
        let strip = sc(&[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        let op = ExpansionOp { new_face: face(&[0, 1, 5]), attach_region: sc(&[&[0, 1], &[5]]) };
        let y = apply_expansion(&strip, &op, 2).unwrap();
        assert_eq!(delta(&strip, &y), vec![0, 1, 0]);

        // along two edges: no effect
        let x = sc(&[&[0, 1, 2], &[0, 2, 3]]);
        let op = ExpansionOp { new_face: face(&[1, 2, 3]), attach_region: sc(&[&[1, 2], &[2, 3]]) };
        let y = apply_expansion(&x, &op, 2).unwrap();
        assert_eq!(delta(&x, &y), vec![0, 0, 0]);

        // along the whole boundary: closes a 2-cycle
        let x = sc(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3]]);
        let op = ExpansionOp { new_face: face(&[1, 2, 3]), attach_region: sc(&[&[1, 2], &[1, 3], &[2, 3]]) };
        let y = apply_expansion(&x, &op, 2).unwrap();
        assert_eq!(y, tetra_boundary());
        assert_eq!(delta(&x, &y), vec![0, 0, 1]);

        // along the whole boundary of a hole in an annulus-like complex: kills a 1-cycle
        let x = sc(&[&[0, 1, 3], &[1, 2, 4], &[0, 2, 5], &[1, 3, 4], &[2, 4, 5], &[0, 3, 5]]);
        assert_eq!(betti(&x)[1], 1);
        let op = ExpansionOp { new_face: face(&[0, 1, 2]), attach_region: sc(&[&[0, 1], &[1, 2], &[0, 2]]) };
        let y = apply_expansion(&x, &op, 2).unwrap();
        assert_eq!(delta(&x, &y), vec![0, -1, 0]);
    }

    #[test]
    fn expansion_errors() {
        let x = sc(&[&[0, 1, 2]]);
        let bad_region = ExpansionOp { new_face: face(&[1, 2, 3]), attach_region: sc(&[&[1, 3]]) };
        assert_eq!(apply_expansion(&x, &bad_region, 2), Err(ConnectivityError::RegionNotInComplex));
        let vertex_only = ExpansionOp { new_face: face(&[1, 3, 4]), attach_region: sc(&[&[1]]) };
        assert_eq!(apply_expansion(&x, &vertex_only, 2), Err(ConnectivityError::RegionTooSmall(1)));
        let small = ExpansionOp { new_face: face(&[1, 3]), attach_region: sc(&[&[1]]) };
        assert!(matches!(apply_expansion(&x, &small, 2), Err(ConnectivityError::FaceTooSmall { .. })));
        let disjoint = ExpansionOp { new_face: face(&[3, 4]), attach_region: SimplicialComplex::empty() };
        assert_eq!(apply_expansion(&x, &disjoint, 0).unwrap().facets().len(), 2);
        let outside = ExpansionOp { new_face: face(&[1, 2, 3]), attach_region: sc(&[&[0, 1]]) };
        assert_eq!(apply_expansion(&x, &outside, 2), Err(ConnectivityError::RegionNotInBoundary));
    }

    #[test]
    fn triangle_collapses_to_a_point() {
        let out = collapse_to_dimension(&sc(&[&[0, 1, 2]]), 0, false);
        match out {
            CollapseOutcome::Collapsed { complex, .. } => assert_eq!(complex.facets().len(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn circle_does_not_collapse() {
        let circle = sc(&[&[0, 1], &[1, 2], &[0, 2]]);
        assert!(matches!(collapse_to_dimension(&circle, 0, true), CollapseOutcome::Impossible { .. }));
        assert!(matches!(collapse_to_dimension(&circle, 0, false), CollapseOutcome::Unknown { .. }));
        assert!(collapse_to_dimension(&circle, 1, false).collapsed());
    }

    #[test]
    fn cone_collapses() {
        let c = sc(&[&[0, 1], &[1, 2], &[0, 2]]).cone(3).unwrap();
        assert!(collapse_to_dimension(&c, 0, false).collapsed());
        assert!(collapse_to_dimension(&c, 0, true).collapsed());
    }

    #[test]
    fn sphere_collapses_onto_its_one_skeleton_only_after_a_puncture() {
        assert!(matches!(collapse_to_dimension(&tetra_boundary(), 1, true), CollapseOutcome::Impossible { .. }));
        let punctured = sc(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3]]);
        assert!(collapse_to_dimension(&punctured, 1, false).collapsed());
    }

    #[test]
    fn tiny_budget_reports_unknown() {
        let x = tetra_boundary();
        assert!(matches!(collapse_with_budget(&x, 1, true, 0), CollapseOutcome::Unknown { .. }));
    }
}
