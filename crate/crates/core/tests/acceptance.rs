//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line for
//! each, and exits nonzero if any fails.

use std::time::{Duration, Instant};

use homex::complex::{Face, SimplicialComplex};
use homex::connectivity::{
    apply_expansion, collapse_with_budget, growth_process, is_strongly_connected, strong_components, CollapseOutcome,
};
use homex::constructions::{build_mh, build_ms, build_rel, build_suspension_example};
use homex::corpus::standard_corpus;
use homex::homology::{
    boundary_matrix, homology_group, homology_profile, is_homology_nontrivial, mv_corollary_check, rational_betti,
    HomologyGroup,
};
use homex::nerve::{nerve_lemma_witness, nerve_lemma_witness_through, nerve_max};
use homex::search::{verify_bound, SearchConstraint, SearchMode, SearchOptions};

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Check + 'a>);

/// Smallest `n` with `n * b >= a`, found by counting up.
fn ceil_div(a: usize, b: usize) -> usize {
    (0..).find(|n| n * b >= a).unwrap()
}

/// Largest `n` with `n * b <= a`, found by counting up.
fn floor_div(a: usize, b: usize) -> usize {
    (0..).take_while(|n| n * b <= a).last().unwrap()
}

fn pure_bound(d: usize, k: usize) -> usize {
    ceil_div((d + 1) * (k + 2), k + 1)
}

fn strong_bound(d: usize, k: usize) -> usize {
    d + 1 + ceil_div(d, k)
}

fn threshold(d: usize, k: usize) -> usize {
    floor_div((d + 1) * k, k + 1)
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn common_vertices(facets: &[&Face]) -> Vec<u32> {
    let mut common = facets[0].vertices().to_vec();
    for f in &facets[1..] {
        common.retain(|v| f.contains(*v));
    }
    common
}

fn criterion_1() -> Check {
    let mut count = 0;
    for d in 0..=6 {
        for k in 0..=d {
            let x = build_mh(d, k).map_err(|e| format!("({d},{k}): {e}"))?.complex;
            ensure(x.is_pure(d), || format!("({d},{k}) not pure"))?;
            ensure(x.num_vertices() == pure_bound(d, k), || format!("({d},{k}) has {} vertices", x.num_vertices()))?;
            ensure(x.facets().len() == k + 2, || format!("({d},{k}) has {} facets", x.facets().len()))?;
            ensure(!homology_group(&x, k, true).is_trivial(), || format!("({d},{k}) H_{k} trivial"))?;
            count += 1;
        }
    }
    Ok(format!("{count} grid points"))
}

fn search(d: usize, k: usize, mode: SearchMode, n: usize) -> Result<usize, String> {
    let opts = SearchOptions { jobs: 4, max_n: 8 };
    let r = verify_bound(&SearchConstraint { d, k, mode, n }, &opts).map_err(|e| e.to_string())?;
    Ok(r.witnesses.len())
}

fn criterion_2() -> Check {
    let grid = [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 2), (4, 3), (4, 4)];
    for (d, k) in grid {
        let b = pure_bound(d, k);
        let below = search(d, k, SearchMode::Pure, b - 1)?;
        ensure(below == 0, || format!("({d},{k}) has {below} witness classes at n = {}", b - 1))?;
        let at = search(d, k, SearchMode::Pure, b)?;
        ensure(at > 0, || format!("({d},{k}) has no witness at n = {b}"))?;
    }
    Ok(format!("{} pairs", grid.len()))
}

fn criterion_3() -> Check {
    let mut count = 0;
    for d in 1..=5 {
        for k in 1..=d {
            for c in [build_ms(d, k), build_suspension_example(d, k)] {
                let c = c.map_err(|e| format!("({d},{k}): {e}"))?;
                let x = &c.complex;
                ensure(x.num_vertices() == strong_bound(d, k), || {
                    format!("{} ({d},{k}) has {} vertices", c.name, x.num_vertices())
                })?;
                ensure(is_strongly_connected(x, d) == Ok(true), || {
                    format!("{} ({d},{k}) not strongly connected", c.name)
                })?;
                ensure(is_homology_nontrivial(x, k), || format!("{} ({d},{k}) H_{k} trivial", c.name))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} complexes"))
}

fn criterion_4() -> Check {
    let grid = [(2, 1), (2, 2), (3, 2), (3, 3), (4, 3)];
    for (d, k) in grid {
        let n = strong_bound(d, k) - 1;
        let below = search(d, k, SearchMode::Strong(d), n)?;
        ensure(below == 0, || format!("({d},{k}) has {below} witness classes at n = {n}"))?;
    }
    Ok(format!("{} pairs", grid.len()))
}

fn rel_grid() -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for d in 1..=5 {
        for k in 1..=d {
            for m in threshold(d, k) + 1..=d {
                out.push((d, k, m));
            }
        }
    }
    out
}

fn criterion_5() -> Check {
    let grid = rel_grid();
    for &(d, k, m) in &grid {
        let c = build_rel(d, k, m).map_err(|e| format!("({d},{k},{m}): {e}"))?;
        let x = &c.complex;
        ensure(x.num_vertices() == d + 1 + ceil_div(m, k), || {
            format!("({d},{k},{m}) has {} vertices", x.num_vertices())
        })?;
        ensure(is_strongly_connected(x, m) == Ok(true), || format!("({d},{k},{m}) not strongly connected"))?;
        ensure(is_homology_nontrivial(x, k), || format!("({d},{k},{m}) H_{k} trivial"))?;
        let base = &c.attachment.as_ref().unwrap().base;
        let q1 = c.vertex("q1").unwrap();
        ensure(base.facets().iter().all(|f| f.contains(q1)), || format!("({d},{k},{m}) q1 is not a cone point"))?;
        ensure(homology_profile(base, true).is_acyclic(), || format!("({d},{k},{m}) C' not acyclic"))?;
    }
    Ok(format!("{} triples", grid.len()))
}

fn criterion_6() -> Check {
    let mut count = 0;
    for d in 1..=6 {
        for k in 1..=d {
            let x = build_mh(d, k).unwrap().complex;
            let t = threshold(d, k);
            ensure(is_strongly_connected(&x, t) == Ok(true), || format!("({d},{k}) not strongly connected at {t}"))?;
            // t+1 above the facet dimension cannot be strongly connected either
            let above = is_strongly_connected(&x, t + 1).unwrap_or(false);
            ensure(!above, || format!("({d},{k}) strongly connected at {}", t + 1))?;
            count += 1;
        }
    }
    Ok(format!("{count} grid points"))
}

fn criterion_7(corpus: &[homex::corpus::CorpusEntry]) -> Check {
    let mut witnesses = 0;
    for e in corpus {
        let x = &e.complex;
        let n = nerve_max(x);
        ensure(n.max_dim.is_none(), || format!("{}: nerve was truncated", e.name))?;
        let (px, pn) = (homology_profile(x, true), homology_profile(&n.complex, true));
        ensure(px.same_groups(&pn), || format!("{}: complex {px} but nerve {pn}", e.name))?;
        for k in 0..px.groups.len() {
            if px.group(k).is_trivial() {
                continue;
            }
            let w = nerve_lemma_witness(x, k).map_err(|err| format!("{}: {err}", e.name))?;
            let w = w.ok_or_else(|| format!("{}: no witness for H_{k}", e.name))?;
            let fs: Vec<&Face> = w.iter().map(|&i| &x.facets()[i]).collect();
            ensure(w.len() == k + 2 && common_vertices(&fs).is_empty(), || format!("{}: bad witness {w:?}", e.name))?;
            for m in 0..x.facets().len() {
                let w = nerve_lemma_witness_through(x, k, m).map_err(|err| format!("{}: {err}", e.name))?;
                let w = w.ok_or_else(|| format!("{}: no witness through facet {m} for H_{k}", e.name))?;
                let mut fs: Vec<&Face> = w.iter().map(|&i| &x.facets()[i]).collect();
                fs.push(&x.facets()[m]);
                ensure(common_vertices(&fs).is_empty(), || format!("{}: bad witness through {m}", e.name))?;
            }
            witnesses += 1;
        }
    }
    Ok(format!("{} complexes, {witnesses} nontrivial groups witnessed", corpus.len()))
}

fn criterion_8(corpus: &[homex::corpus::CorpusEntry]) -> Check {
    for n in 2..=6 {
        let sphere = SimplicialComplex::simplex(Face::full(n + 1)).skeleton(n - 1);
        let p = homology_profile(&sphere, true);
        for i in 0..=n {
            let want = if i == n - 1 { HomologyGroup::free(1) } else { HomologyGroup::default() };
            ensure(p.group(i) == want, || format!("boundary of the {n}-simplex: H_{i} = {}", p.group(i)))?;
        }
    }
    let rp2 = SimplicialComplex::try_from_lists([
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 5],
        vec![0, 1, 5],
        vec![1, 2, 4],
        vec![2, 3, 5],
        vec![1, 3, 4],
        vec![2, 4, 5],
        vec![1, 3, 5],
    ])
    .unwrap();
    let p = homology_profile(&rp2, false);
    ensure(p.group(1) == HomologyGroup { betti: 0, torsion: vec![2] }, || format!("projective plane: {p}"))?;
    ensure(p.group(2).betti == 0, || format!("projective plane: {p}"))?;
    for e in corpus {
        let x = &e.complex;
        let dim = x.dim().unwrap();
        for reduced in [false, true] {
            for i in 0..=dim {
                let prod = boundary_matrix(x, i, reduced).mul(&boundary_matrix(x, i + 1, reduced));
                ensure(prod.is_zero(), || format!("{}: boundary squared nonzero in degree {i}", e.name))?;
            }
        }
        let p = homology_profile(x, false);
        let chi = x.f_vector().euler_characteristic();
        ensure(p.euler_characteristic() == chi, || format!("{}: Euler characteristic mismatch", e.name))?;
        ensure(rational_betti(x, false) == p.betti(), || format!("{}: rational Betti numbers disagree", e.name))?;
    }
    Ok(format!("spheres, projective plane, {} corpus complexes", corpus.len()))
}

fn criterion_9(corpus: &[homex::corpus::CorpusEntry]) -> Check {
    let mut processes = 0;
    for e in corpus {
        let x = &e.complex;
        let min_dim = x.facets().iter().map(Face::dimension).min().unwrap();
        for m in 0..=min_dim {
            if is_strongly_connected(x, m) != Ok(true) {
                continue;
            }
            let g = growth_process(x, m).map_err(|err| format!("{} m={m}: {err}", e.name))?;
            let ops = g.expansions();
            for i in 1..=g.facets.len() {
                let prefix = g.prefix(i);
                ensure(prefix.facets().len() == i, || format!("{} m={m}: prefix {i} has wrong size", e.name))?;
                ensure(is_strongly_connected(&prefix, m) == Ok(true), || {
                    format!("{} m={m}: prefix {i} not strongly connected", e.name)
                })?;
                if i > 1 {
                    let grown = apply_expansion(&g.prefix(i - 1), &ops[i - 2], m)
                        .map_err(|err| format!("{} m={m}: step {i}: {err}", e.name))?;
                    ensure(grown == prefix, || format!("{} m={m}: step {i} does not reproduce the prefix", e.name))?;
                }
            }
            ensure(g.prefix(g.facets.len()) == *x, || {
                format!("{} m={m}: process does not end at the complex", e.name)
            })?;
            processes += 1;
        }
    }
    Ok(format!("{processes} growth processes"))
}

fn criterion_10() -> Check {
    let mut count = 0;
    let mut cases = Vec::new();
    for d in 1..=5 {
        for k in 1..=d {
            cases.push((format!("ms ({d},{k})"), k, build_ms(d, k)));
        }
    }
    for (d, k, m) in rel_grid() {
        cases.push((format!("rel ({d},{k},{m})"), k, build_rel(d, k, m)));
    }
    for (name, k, c) in cases {
        let c = c.map_err(|e| format!("{name}: {e}"))?;
        let a = c.attachment.as_ref().unwrap();
        match mv_corollary_check(&a.whole, &a.base, &a.cell, k) {
            Ok(true) => count += 1,
            Ok(false) => return Err(format!("{name}: H_{k} of the union differs from H_{} of the seam", k - 1)),
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    Ok(format!("{count} attachment steps"))
}

/// The claim that a complex collapses onto dimension `t` exactly when each of
/// its strong components w.r.t. `t+1` does, tried on every pure complex with
/// at most 6 vertices and `t = d-1`. Logged only.
fn collapsibility_experiment() -> String {
    const BUDGET: usize = 20_000;
    let (mut agree, mut disagree, mut unknown) = (0, 0, 0);
    let decided = |o: &CollapseOutcome| match o {
        CollapseOutcome::Collapsed { .. } => Some(true),
        CollapseOutcome::Impossible { .. } => Some(false),
        CollapseOutcome::Unknown { .. } => None,
    };
    for n in 2..=6 {
        for d in 1..n.min(4) {
            let Ok(all) = homex::search::enumerate_pure_canonical(n, d) else { continue };
            for x in all {
                let t = d - 1;
                let whole = decided(&collapse_with_budget(&x, t, true, BUDGET));
                let comps = strong_components(&x, d).unwrap();
                let parts: Option<Vec<bool>> = comps
                    .iter()
                    .map(|c| decided(&collapse_with_budget(&x.subcomplex_of_facets(c), t, true, BUDGET)))
                    .collect();
                match (whole, parts) {
                    (Some(w), Some(p)) if w == p.iter().all(|&b| b) => agree += 1,
                    (Some(_), Some(_)) => {
                        disagree += 1;
                        println!("  collapsibility discrepancy: {x:?}");
                    }
                    _ => unknown += 1,
                }
            }
        }
    }
    format!("{agree} agree, {disagree} disagree, {unknown} undecided within budget")
}

fn main() {
    let corpus = standard_corpus(0x5eed);
    let criteria: Vec<Criterion> = vec![
        ("1 pure construction tightness grid", Duration::from_secs(10), Box::new(criterion_1)),
        ("2 pure bound, exhaustive search (4 workers)", Duration::from_secs(300), Box::new(criterion_2)),
        ("3 strong construction tightness grid", Duration::from_secs(30), Box::new(criterion_3)),
        ("4 strong bound, exhaustive search", Duration::from_secs(300), Box::new(criterion_4)),
        ("5 relative construction grid", Duration::from_secs(60), Box::new(criterion_5)),
        ("6 connectivity threshold of the pure construction", Duration::MAX, Box::new(criterion_6)),
        ("7 nerve lemma and Leray agreement", Duration::from_secs(120), Box::new(|| criterion_7(&corpus))),
        ("8 homology engine oracles", Duration::MAX, Box::new(|| criterion_8(&corpus))),
        ("9 growth processes", Duration::MAX, Box::new(|| criterion_9(&corpus))),
        ("10 Mayer-Vietoris attachment steps", Duration::MAX, Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let limit_text = if limit == Duration::MAX { String::new() } else { format!(", limit {}s", limit.as_secs()) };
        let verdict = match result {
            Ok(detail) if elapsed <= limit => format!("PASS criterion {name}: {detail} ({elapsed:.2?}{limit_text})"),
            Ok(detail) => format!("FAIL criterion {name}: {detail} but took {elapsed:.2?}{limit_text}"),
            Err(why) => format!("FAIL criterion {name}: {why} ({elapsed:.2?})"),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!("{verdict}");
    }
    let start = Instant::now();
    let log = collapsibility_experiment();
    println!("INFO collapsibility claim (not a criterion): {log} ({:.2?})", start.elapsed());
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
