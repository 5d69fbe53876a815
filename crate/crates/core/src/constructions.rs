//! Closed-form vertex bounds and the complexes that attain them.
//!
//! Every generator checks its advertised properties before returning, so a
//! misreading of a recipe surfaces as a [`ConstructionError::Postcondition`]
//! rather than as a silently wrong complex.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::connectivity::is_strongly_connected;
use crate::homology::{homology_profile, is_homology_nontrivial};
use crate::io::LabeledComplex;
use crate::nerve::{is_simplex_boundary, nerve_max};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("need k <= d, got d = {d}, k = {k}")]
    KAboveD { d: usize, k: usize },
    #[error("need k >= 1")]
    KZero,
    #[error("need d >= 1")]
    DZero,
    #[error("need m <= d, got m = {m}, d = {d}")]
    MAboveD { d: usize, m: usize },
    #[error("m = {m} is at or below the connectivity threshold {threshold} for d = {d}, k = {k}")]
    BelowThreshold { d: usize, k: usize, m: usize, threshold: usize },
    #[error("postcondition failed for {name}: {detail}")]
    Postcondition { name: String, detail: String },
}

fn check_pure(d: usize, k: usize) -> Result<(), ConstructionError> {
    if k > d {
        return Err(ConstructionError::KAboveD { d, k });
    }
    Ok(())
}

fn check_strong(d: usize, k: usize) -> Result<(), ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::KZero);
    }
    check_pure(d, k)
}

/// `⌈(d+1)(k+2)/(k+1)⌉`, the fewest vertices of a pure `d`-complex with
/// nontrivial `H_k`.
pub fn bound_pure(d: usize, k: usize) -> Result<usize, ConstructionError> {
    check_pure(d, k)?;
    Ok(((d + 1) * (k + 2)).div_ceil(k + 1))
}

/// `d+1+⌈d/k⌉`, the fewest vertices when the complex is also strongly
/// connected w.r.t. `d`.
pub fn bound_strong(d: usize, k: usize) -> Result<usize, ConstructionError> {
    check_strong(d, k)?;
    Ok(d + 1 + d.div_ceil(k))
}

/// `⌊(d+1)k/(k+1)⌋`, the largest `m` for which the pure bound is still
/// attained by a complex strongly connected w.r.t. `m`.
pub fn connectivity_threshold(d: usize, k: usize) -> Result<usize, ConstructionError> {
    check_pure(d, k)?;
    Ok((d + 1) * k / (k + 1))
}

/// `d+1+⌈m/k⌉` for `m` strictly above the connectivity threshold.
pub fn bound_rel(d: usize, k: usize, m: usize) -> Result<usize, ConstructionError> {
    check_strong(d, k)?;
    if m > d {
        return Err(ConstructionError::MAboveD { d, m });
    }
    let threshold = connectivity_threshold(d, k)?;
    if m <= threshold {
        return Err(ConstructionError::BelowThreshold { d, k, m, threshold });
    }
    Ok(d + 1 + m.div_ceil(k))
}

/// The bound for pure `d`-complexes with nontrivial `H_k` that are strongly
/// connected w.r.t. `m`: the pure bound up to the threshold, the relative bound
/// above it.
pub fn bound_connected(d: usize, k: usize, m: usize) -> Result<usize, ConstructionError> {
    check_strong(d, k)?;
    if m > d {
        return Err(ConstructionError::MAboveD { d, m });
    }
    if m <= connectivity_threshold(d, k)? {
        bound_pure(d, k)
    } else {
        bound_rel(d, k, m)
    }
}

/// Parameters of a construction with the block sizes they induce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstructionParams {
    pub d: usize,
    pub k: usize,
    pub m: Option<usize>,
}

impl ConstructionParams {
    /// `⌊(d+1)/(k+1)⌋`, the small block size of the pure construction.
    pub fn q(&self) -> usize {
        (self.d + 1) / (self.k + 1)
    }

    /// `(d+1) mod (k+1)`, the number of large blocks of the pure construction.
    pub fn r(&self) -> usize {
        (self.d + 1) % (self.k + 1)
    }

    /// `d mod k`, the number of large blocks of `V` in the strong construction.
    pub fn r_strong(&self) -> usize {
        self.d % self.k.max(1)
    }
}

/// Sizes of `parts` nearly equal blocks of `n` items, larger blocks first.
fn block_sizes(n: usize, parts: usize) -> Vec<usize> {
    (0..parts).map(|i| n / parts + usize::from(i < n % parts)).collect()
}

/// A union `base ∪ cell` where `cell` is a single simplex, recorded before
/// any skeleton is taken.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub base: SimplicialComplex,
    pub cell: SimplicialComplex,
    pub whole: SimplicialComplex,
}

impl Attachment {
    fn new(base: SimplicialComplex, cell: Face) -> Self {
        let cell = SimplicialComplex::simplex(cell);
        let whole = base.union(&cell);
        Attachment { base, cell, whole }
    }

    pub fn intersection(&self) -> SimplicialComplex {
        self.base.intersection(&self.cell)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub name: String,
    pub params: ConstructionParams,
    pub complex: SimplicialComplex,
    /// `labels[v]` names vertex `v`.
    pub labels: Vec<String>,
    pub attachment: Option<Attachment>,
}

impl Construction {
    pub fn labeled(&self) -> LabeledComplex {
        LabeledComplex { complex: self.complex.clone(), labels: self.labels.clone() }
    }

    /// Vertex id for a label.
    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.labels.iter().position(|l| l == label).map(|v| v as Vertex)
    }
}

struct Checker<'a> {
    name: &'a str,
}

impl Checker<'_> {
    fn ensure(&self, ok: bool, detail: impl FnOnce() -> String) -> Result<(), ConstructionError> {
        if ok {
            Ok(())
        } else {
            Err(ConstructionError::Postcondition { name: self.name.to_string(), detail: detail() })
        }
    }

    fn vertices(&self, x: &SimplicialComplex, want: usize) -> Result<(), ConstructionError> {
        self.ensure(x.num_vertices() == want, || format!("{} vertices, expected {want}", x.num_vertices()))
    }

    fn pure(&self, x: &SimplicialComplex, d: usize) -> Result<(), ConstructionError> {
        self.ensure(x.is_pure(d), || format!("not pure of dimension {d}"))
    }

    fn strongly_connected(&self, x: &SimplicialComplex, m: usize) -> Result<(), ConstructionError> {
        let ok = is_strongly_connected(x, m).unwrap_or(false);
        self.ensure(ok, || format!("not strongly connected w.r.t. {m}"))
    }

    fn nontrivial(&self, x: &SimplicialComplex, k: usize) -> Result<(), ConstructionError> {
        self.ensure(is_homology_nontrivial(x, k), || format!("H_{k} is trivial"))
    }
}

fn range(start: usize, len: usize) -> Vec<Vertex> {
    (start..start + len).map(|v| v as Vertex).collect()
}

fn face(vs: impl IntoIterator<Item = Vertex>) -> Face {
    Face::new(vs.into_iter().collect()).expect("construction faces have distinct vertices")
}

/// The pure construction: `k+2` facets of dimension `d` on
/// `⌈(d+1)(k+2)/(k+1)⌉` vertices with empty common intersection and nerve
/// the boundary of a `(k+1)`-simplex.
///
/// The vertices split into blocks `s_0..s_{k+1}` (the first `r` of size
/// `q+1`, the rest of size `q`) plus a vertex `z` when `r > 0`. Facet `f_i`
/// is the union of all blocks but `s_i`, together with `z` when `s_i` is one
/// of the large blocks.
pub fn build_mh(d: usize, k: usize) -> Result<Construction, ConstructionError> {
    let params = ConstructionParams { d, k, m: None };
    let bound = bound_pure(d, k)?;
    let (q, r) = (params.q(), params.r());
    let mut labels = Vec::new();
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    for i in 0..k + 2 {
        let size = if i < r { q + 1 } else { q };
        blocks.push(range(labels.len(), size));
        labels.extend((0..size).map(|j| format!("s{i}_{j}")));
    }
    let z = (r > 0).then(|| {
        labels.push("z".to_string());
        (labels.len() - 1) as Vertex
    });
    let facets = (0..k + 2).map(|i| {
        let rest = blocks.iter().enumerate().filter(|&(j, _)| j != i).flat_map(|(_, b)| b.iter().copied());
        face(rest.chain(z.filter(|_| i < r)))
    });
    let complex = SimplicialComplex::from_facets(facets);

    let c = Checker { name: "mh" };
    c.pure(&complex, d)?;
    c.ensure(complex.facets().len() == k + 2, || format!("{} facets", complex.facets().len()))?;
    c.vertices(&complex, bound)?;
    let common = complex.facets().iter().fold(complex.vertex_set().to_vec(), |mut acc, f| {
        acc.retain(|&v| f.contains(v));
        acc
    });
    c.ensure(common.is_empty(), || "facets have a common vertex".into())?;
    Ok(Construction { name: "mh".into(), params, complex, labels, attachment: None })
}

/// The strong construction on `d+1+⌈d/k⌉` vertices, returned as a pure
/// `d`-complex strongly connected w.r.t. `d`.
///
/// `V = {v1..vd}` splits into blocks `S_1..S_k` and `W = {w1..w_{⌈d/k⌉+1}}`.
/// The base complex has facets `V`, `W ∪ (V \ S_j)` for each `j`, and the
/// simplex on `V ∪ W \ {w1}`. Gluing the simplex on `V ∪ {w1}` to it meets
/// the base in a complex with nerve `∂Δ^k`, which creates `H_k`.
pub fn build_ms(d: usize, k: usize) -> Result<Construction, ConstructionError> {
    let params = ConstructionParams { d, k, m: None };
    let bound = bound_strong(d, k)?;
    let mut labels: Vec<String> = (1..=d).map(|i| format!("v{i}")).collect();
    let w_len = d.div_ceil(k) + 1;
    labels.extend((1..=w_len).map(|i| format!("w{i}")));
    let v = range(0, d);
    let w = range(d, w_len);
    let mut s_blocks = Vec::new();
    let mut at = 0;
    for size in block_sizes(d, k) {
        s_blocks.push(&v[at..at + size]);
        at += size;
    }
    let mut base = vec![face(v.iter().copied())];
    for j in 0..k {
        let others = s_blocks.iter().enumerate().filter(|&(i, _)| i != j).flat_map(|(_, s)| s.iter().copied());
        base.push(face(w.iter().copied().chain(others)));
    }
    base.push(face(v.iter().chain(&w[1..]).copied()));
    let base = SimplicialComplex::from_facets(base);
    let cell = face(v.iter().copied().chain([w[0]]));
    let attachment = Attachment::new(base, cell.clone());
    let complex = attachment.whole.skeleton(d);

    let c = Checker { name: "ms" };
    c.vertices(&complex, bound)?;
    c.pure(&complex, d)?;
    c.strongly_connected(&complex, d)?;
    c.nontrivial(&complex, k)?;
    let seam = attachment.base.induced_subcomplex(cell.vertices());
    c.ensure(is_simplex_boundary(&nerve_max(&seam).complex, k + 1), || {
        format!("nerve of the attaching region is not the boundary of a {k}-simplex")
    })?;
    Ok(Construction { name: "ms".into(), params, complex, labels, attachment: Some(attachment) })
}

/// The relative construction on `d+1+⌈m/k⌉` vertices, strongly connected
/// w.r.t. `m` for `m` above the connectivity threshold.
///
/// `V = {v1..vm}` splits into `V_1..V_k`, `W = {w_{m+1}..w_{d+1}}` and
/// `Q = {q1..q_{⌈m/k⌉}}`. The base `C′` consists of the `d`-faces through
/// `q1` inside `V ∪ Q` and inside `(V \ V_j) ∪ W ∪ Q` for each `j`, so `q1`
/// is a cone point. The complex adds the `d`-face `V ∪ W`.
pub fn build_rel(d: usize, k: usize, m: usize) -> Result<Construction, ConstructionError> {
    let params = ConstructionParams { d, k, m: Some(m) };
    let bound = bound_rel(d, k, m)?;
    let q_len = m.div_ceil(k);
    let mut labels: Vec<String> = (1..=m).map(|i| format!("v{i}")).collect();
    labels.extend((m + 1..=d + 1).map(|i| format!("w{i}")));
    labels.extend((1..=q_len).map(|i| format!("q{i}")));
    let v = range(0, m);
    let w = range(m, d + 1 - m);
    let q = range(d + 1, q_len);
    let q1 = q[0];
    let mut v_blocks = Vec::new();
    let mut at = 0;
    for size in block_sizes(m, k) {
        v_blocks.push(&v[at..at + size]);
        at += size;
    }
    // d-faces through q1 of the simplex on `q1` plus `rest`
    let through_q1 = |rest: Vec<Vertex>| -> Vec<Face> {
        rest.into_iter().combinations(d).map(|c| face(c.into_iter().chain([q1]))).collect()
    };
    let q_rest = || q[1..].iter().copied();
    let mut base = through_q1(v.iter().copied().chain(q_rest()).collect());
    for j in 0..k {
        let others = v_blocks.iter().enumerate().filter(|&(i, _)| i != j).flat_map(|(_, b)| b.iter().copied());
        base.extend(through_q1(others.chain(w.iter().copied()).chain(q_rest()).collect()));
    }
    let base = SimplicialComplex::from_facets(base);
    let cell = face(v.iter().chain(&w).copied());
    let attachment = Attachment::new(base, cell);
    let complex = attachment.whole.clone();

    let c = Checker { name: "rel" };
    c.vertices(&complex, bound)?;
    c.pure(&complex, d)?;
    c.strongly_connected(&complex, m)?;
    c.nontrivial(&complex, k)?;
    c.ensure(attachment.base.facets().iter().all(|f| f.contains(q1)), || "q1 is not a cone point".into())?;
    c.ensure(homology_profile(&attachment.base, true).is_acyclic(), || "C′ is not acyclic".into())?;
    Ok(Construction { name: "rel".into(), params, complex, labels, attachment: Some(attachment) })
}

/// The suspension-type construction: the pure construction for `(d-1, k-1)`,
/// coned off from a new vertex `v`, plus the full simplex on the old vertices,
/// cut down to its `d`-skeleton.
pub fn build_suspension_example(d: usize, k: usize) -> Result<Construction, ConstructionError> {
    if d == 0 {
        return Err(ConstructionError::DZero);
    }
    let params = ConstructionParams { d, k, m: None };
    let bound = bound_strong(d, k)?;
    let inner = build_mh(d - 1, k - 1)?;
    let apex = inner.complex.vertex_bound();
    let base = inner.complex.cone(apex).expect("apex is a fresh vertex");
    let cell = face(inner.complex.vertex_set().iter().copied());
    let attachment = Attachment::new(base, cell);
    let complex = attachment.whole.skeleton(d);
    let mut labels = inner.labels;
    labels.push("v".to_string());

    let c = Checker { name: "susp" };
    c.vertices(&complex, bound)?;
    c.pure(&complex, d)?;
    c.strongly_connected(&complex, d)?;
    c.nontrivial(&complex, k)?;
    Ok(Construction { name: "susp".into(), params, complex, labels, attachment: Some(attachment) })
}
