//! Seeded random complexes and the standard test corpus.

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::constructions::{build_mh, build_ms, build_rel, build_suspension_example, connectivity_threshold};

/// Corpus members are kept small enough that their full nerve stays cheap.
pub const CORPUS_FACET_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub complex: SimplicialComplex,
}

/// `facets` distinct `d`-simplices on `n` vertices, uniformly among all such
/// choices. The count is clamped to the number of available simplices.
pub fn random_pure_complex<R: Rng>(rng: &mut R, n: usize, d: usize, facets: usize) -> SimplicialComplex {
    let all: Vec<Face> =
        (0..n as Vertex).combinations(d + 1).map(|c| Face::new(c).expect("combinations are distinct")).collect();
    let count = facets.min(all.len());
    SimplicialComplex::from_facets(sample(rng, all.len(), count).into_iter().map(|i| all[i].clone()))
}

/// `count` random pure complexes with `4 <= n <= max_n`, dimension between 1
/// and `min(3, n-2)`, and 2 to 8 facets.
pub fn random_corpus(seed: u64, count: usize, max_n: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(4..=max_n.max(4));
            let d = rng.gen_range(1..=(n - 2).min(3));
            let facets = rng.gen_range(2..=8);
            CorpusEntry { name: format!("random-{seed}-{i}"), complex: random_pure_complex(&mut rng, n, d, facets) }
        })
        .collect()
}

fn push_capped(out: &mut Vec<CorpusEntry>, name: String, complex: SimplicialComplex) {
    if complex.facets().len() <= CORPUS_FACET_CAP {
        out.push(CorpusEntry { name, complex });
    }
}

/// The constructions on their parameter grids plus 200 random complexes.
///
/// Every pure construction with `0 <= k <= d <= 6` is included. The strong and
/// suspension constructions appear in their glued form before the skeleton is
/// taken, which has `k+2` facets, and as skeletons when those are small. The
/// relative construction appears when it is small.
pub fn standard_corpus(seed: u64) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for d in 0..=6 {
        for k in 0..=d {
            let c = build_mh(d, k).expect("pure construction");
            out.push(CorpusEntry { name: format!("mh-{d}-{k}"), complex: c.complex });
        }
    }
    for d in 1..=5 {
        for k in 1..=d {
            for c in [build_ms(d, k).expect("strong construction"), build_suspension_example(d, k).expect("suspension")]
            {
                let whole = c.attachment.as_ref().expect("glued construction").whole.clone();
                push_capped(&mut out, format!("{}-{d}-{k}-glued", c.name), whole);
                push_capped(&mut out, format!("{}-{d}-{k}", c.name), c.complex);
            }
            let t = connectivity_threshold(d, k).expect("k <= d");
            for m in t + 1..=d {
                let c = build_rel(d, k, m).expect("relative construction");
                push_capped(&mut out, format!("rel-{d}-{k}-{m}"), c.complex);
            }
        }
    }
    out.extend(random_corpus(seed, 200, 7));
    out
}
