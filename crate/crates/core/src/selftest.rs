//! The fixture and corpus checks behind `capfree selftest` and the acceptance tests.
//!
//! Each check returns a [`CheckReport`]; nothing here panics on a failed
//! expectation, so a run always reports every check.

use std::time::Instant;

use rand::Rng;

use crate::construct::{generate_instance, random_skeleton, GeneratedInstance, GeneratorParams};
use crate::decomposition::clique_cutset_tree;
use crate::graph::Graph;
use crate::limits::Limits;
use crate::named;
use crate::oracles::{
    brute_chromatic, brute_mwss, find_forbidden_induced, odd_signable_signing, Certificate,
    ForbiddenKind,
};
use crate::recognition::{detect_cap_fast, recognize, GraphClass};
use crate::skeleton::{
    clique_number_via_skeleton, extract_skeleton, twin_classes, SkeletonOutcome,
};
use crate::solvers::{chromatic_number, clique_number, greedy_color, mwss, mwss_with_trace};
use crate::treewidth::{
    atom_tree_decomposition, clique_tree, is_chordal, skeleton_tree_decomposition,
    triangulation_from_ears,
};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

pub const CHECKS: usize = 12;

pub const TITLES: [&str; CHECKS] = [
    "extremal blown five-hole",
    "odd hole and Hajos graph",
    "minimum degree bound",
    "greedy colouring bound",
    "skeleton treewidth",
    "atom treewidth",
    "chromatic number against brute force",
    "stable set against brute force",
    "cap detector",
    "twin refinement",
    "recognition",
    "odd-signability oracle",
];

/// `ceil(3w / 2)`.
pub fn three_halves(w: usize) -> usize {
    (3 * w).div_ceil(2)
}

/// Parameters of the shared in-class corpus; classes alternate by seed parity.
pub fn corpus_params(seed: u64) -> GeneratorParams {
    GeneratorParams {
        seed,
        ears: 1,
        max_ear_len: 7,
        max_blowup: 2,
        max_universal: 1,
        glue: 1,
        class: if seed % 2 == 1 {
            GraphClass::CapFourHoleOddSignable
        } else {
            GraphClass::CapEvenHoleFree
        },
        min_base: 5,
        max_base: 8,
    }
}

/// The 200 instances used by the degree, greedy, atom-treewidth and recognition checks.
pub fn corpus() -> Vec<GeneratedInstance> {
    (1..=200)
        .map(|s| generate_instance(&corpus_params(s)).expect("corpus parameters are valid"))
        .collect()
}

/// Small in-class instances: the first `count` seeds whose instance has at most `max_n` vertices.
pub fn small_corpus(count: usize, max_n: usize) -> Vec<GeneratedInstance> {
    let mut out = Vec::new();
    let mut seed = 1;
    while out.len() < count {
        assert!(
            seed < 100_000,
            "too few instances with at most {max_n} vertices"
        );
        let glue = (seed % 2) as usize;
        let params = GeneratorParams {
            max_ear_len: 6,
            min_base: 5,
            max_base: 7,
            glue,
            max_blowup: 2 - glue,
            ..corpus_params(seed)
        };
        let inst = generate_instance(&params).expect("corpus parameters are valid");
        if inst.graph.n() <= max_n {
            out.push(inst);
        }
        seed += 1;
    }
    out
}

fn finish(id: usize, start: Instant, failures: &[String], summary: String) -> CheckReport {
    let detail = if failures.is_empty() {
        summary
    } else {
        format!(
            "{summary}; {} failure(s), first: {}",
            failures.len(),
            failures[0]
        )
    };
    CheckReport {
        id,
        title: TITLES[id - 1],
        passed: failures.is_empty(),
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run(id: usize) -> CheckReport {
    match id {
        1 => extremal(),
        2 => odd_hole_and_hajos(),
        3 => degree_bound(&corpus()),
        4 => greedy_bound(&corpus()),
        5 => skeleton_width(),
        6 => atom_width(&corpus()),
        7 => chromatic_agreement(),
        8 => stable_set_agreement(),
        9 => cap_detector(),
        10 => twin_refinement(),
        11 => recognition(&corpus()),
        12 => odd_signability(),
        _ => panic!("no check {id}"),
    }
}

/// Every check, building the shared corpus once.
pub fn run_all() -> Vec<CheckReport> {
    let shared = corpus();
    vec![
        extremal(),
        odd_hole_and_hajos(),
        degree_bound(&shared),
        greedy_bound(&shared),
        skeleton_width(),
        atom_width(&shared),
        chromatic_agreement(),
        stable_set_agreement(),
        cap_detector(),
        twin_refinement(),
        recognition(&shared),
        odd_signability(),
    ]
}

pub fn extremal() -> CheckReport {
    let start = Instant::now();
    let limits = Limits::default();
    let g = named::blown_five_hole(1).unwrap();
    let mut failures = Vec::new();
    let omega = match extract_skeleton(&g) {
        SkeletonOutcome::Skeleton(sd) => clique_number_via_skeleton(&sd),
        _ => 0,
    };
    let alpha = mwss(&g, &limits).map(|r| r.weight).unwrap_or(-1);
    let chi = chromatic_number(&g, &limits).map(|r| r.0).unwrap_or(0);
    for (name, got, want) in [
        ("omega", omega as i64, 4),
        ("alpha", alpha, 2),
        ("chi", chi as i64, 5),
    ] {
        if got != want {
            failures.push(format!("{name} = {got}, expected {want}"));
        }
    }
    if 4 * chi != 5 * omega {
        failures.push("chi is not 5/4 omega".into());
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 1.0 {
        failures.push(format!("took {secs:.2} s"));
    }
    finish(
        1,
        start,
        &failures,
        format!("omega {omega}, alpha {alpha}, chi {chi}"),
    )
}

pub fn odd_hole_and_hajos() -> CheckReport {
    let start = Instant::now();
    let limits = Limits::default();
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for (name, g, want) in [
        ("C5", named::hole(5).unwrap(), 3),
        ("Hajos", named::hajos(), 4),
    ] {
        let omega = clique_number(&g, &limits).map(|r| r.0).unwrap_or(0);
        let greedy = greedy_color(&g);
        let chi = chromatic_number(&g, &limits).map(|r| r.0).unwrap_or(0);
        let brute = match brute_chromatic(&g, &limits) {
            Ok(Certificate::Coloring { k, .. }) => k,
            _ => 0,
        };
        if chi != want || brute != want {
            failures.push(format!(
                "{name}: chi {chi}, brute force {brute}, expected {want}"
            ));
        }
        if !greedy.is_proper(&g)
            || greedy.num_colors() > three_halves(omega)
            || chi > three_halves(omega)
        {
            failures.push(format!(
                "{name}: greedy {} colours against bound {}",
                greedy.num_colors(),
                three_halves(omega)
            ));
        }
        summary.push(format!(
            "{name} chi {chi} greedy {} omega {omega}",
            greedy.num_colors()
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 1.0 {
        failures.push(format!("took {secs:.2} s"));
    }
    finish(2, start, &failures, summary.join(", "))
}

pub fn degree_bound(corpus: &[GeneratedInstance]) -> CheckReport {
    let start = Instant::now();
    let limits = Limits::default();
    let mut failures = Vec::new();
    let mut largest = 0;
    for inst in corpus {
        let g = &inst.graph;
        largest = largest.max(g.n());
        if g.n() > 60 {
            failures.push(format!(
                "seed {} has {} vertices",
                inst.provenance.params.seed,
                g.n()
            ));
        }
        match clique_number(g, &limits) {
            Ok((omega, _)) => {
                let bound = three_halves(omega) - 1;
                if g.min_degree().unwrap_or(0) > bound {
                    failures.push(format!(
                        "seed {}: min degree {} > {bound}",
                        inst.provenance.params.seed,
                        g.min_degree().unwrap()
                    ));
                }
                if omega != inst.provenance.omega {
                    failures.push(format!(
                        "seed {}: omega {omega}, provenance {}",
                        inst.provenance.params.seed, inst.provenance.omega
                    ));
                }
            }
            Err(e) => failures.push(format!("seed {}: {e}", inst.provenance.params.seed)),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 120.0 {
        failures.push(format!("took {secs:.1} s"));
    }
    finish(
        3,
        start,
        &failures,
        format!("{} instances, up to {largest} vertices", corpus.len()),
    )
}

pub fn greedy_bound(corpus: &[GeneratedInstance]) -> CheckReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for inst in corpus {
        let g = &inst.graph;
        let c = greedy_color(g);
        let omega = inst.provenance.omega;
        worst = worst.max(c.num_colors() as f64 / omega as f64);
        if !c.is_proper(g) || c.num_colors() > three_halves(omega) {
            failures.push(format!(
                "seed {}: {} colours, omega {omega}",
                inst.provenance.params.seed,
                c.num_colors()
            ));
        }
    }
    finish(
        4,
        start,
        &failures,
        format!("{} instances, worst colours/omega {worst:.3}", corpus.len()),
    )
}

pub fn skeleton_width() -> CheckReport {
    let start = Instant::now();
    let limits = Limits::default();
    let mut failures = Vec::new();
    let (mut ears, mut widest, mut largest, mut max_clique) = (0, 0, 0, 0);
    for seed in 1..=100u64 {
        let params = GeneratorParams {
            seed,
            ears: 6,
            max_ear_len: 6,
            min_base: 5,
            max_base: 9,
            class: GraphClass::CapFourHoleOddSignable,
            ..GeneratorParams::default()
        };
        let (f, es) = random_skeleton(&params).unwrap();
        ears += es.ears.len();
        largest = largest.max(f.n());
        if f.n() > 40 {
            failures.push(format!("seed {seed}: {} vertices", f.n()));
        }
        match skeleton_tree_decomposition(&f, &limits) {
            Ok(Ok(td)) if td.validate(&f).is_ok() && td.width() <= 5 => {
                widest = widest.max(td.width())
            }
            Ok(Ok(td)) => failures.push(format!(
                "seed {seed}: decomposition of width {} or invalid",
                td.width()
            )),
            Ok(Err(r)) => failures.push(format!("seed {seed}: rejected {r:?}")),
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
        match triangulation_from_ears(&f, &es, &limits) {
            Ok(t) => {
                let contains = f.edges().all(|(u, v)| t.has_edge(u, v));
                let omega = if is_chordal(&t) {
                    clique_tree(&t).unwrap().width() + 1
                } else {
                    0
                };
                max_clique = max_clique.max(omega);
                if !contains || omega == 0 || omega > 6 {
                    failures.push(format!(
                        "seed {seed}: triangulation chordal {}, omega {omega}",
                        omega > 0
                    ));
                }
            }
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 300.0 {
        failures.push(format!("took {secs:.1} s"));
    }
    let summary =
        format!("100 skeletons, {ears} ears, up to {largest} vertices, width at most {widest}, triangulation omega at most {max_clique}");
    finish(5, start, &failures, summary)
}

pub fn atom_width(corpus: &[GeneratedInstance]) -> CheckReport {
    let start = Instant::now();
    let limits = Limits::default();
    let mut failures = Vec::new();
    let mut atoms = 0;
    for inst in corpus {
        let g = &inst.graph;
        let seed = inst.provenance.params.seed;
        for atom in clique_cutset_tree(g).atoms() {
            atoms += 1;
            let (sub, _) = g.induced_subgraph(atom).unwrap();
            let omega = clique_number(&sub, &limits).map(|r| r.0).unwrap_or(0);
            match atom_tree_decomposition(&sub, &limits) {
                Ok(Some((td, _))) => {
                    if td.validate(&sub).is_err() || td.width() > 6 * omega as isize - 1 {
                        failures.push(format!(
                            "seed {seed}: width {} with omega {omega}",
                            td.width()
                        ));
                    }
                }
                Ok(None) => failures.push(format!("seed {seed}: atom without skeleton")),
                Err(e) => failures.push(format!("seed {seed}: {e}")),
            }
        }
    }
    finish(6, start, &failures, format!("{atoms} atoms"))
}

pub fn chromatic_agreement() -> CheckReport {
    let start = Instant::now();
    let limits = Limits::default();
    let mut failures = Vec::new();
    let mut graphs: Vec<(String, Graph)> = small_corpus(100, 14)
        .into_iter()
        .map(|i| (format!("instance {}", i.provenance.params.seed), i.graph))
        .collect();
    for seed in 0..100u64 {
        let n = 6 + (seed % 9) as usize;
        let p = [0.2, 0.35, 0.5, 0.65][(seed % 4) as usize];
        graphs.push((format!("gnp seed {seed}"), named::gnp(n, p, seed).unwrap()));
    }
    for (name, g) in &graphs {
        let brute = match brute_chromatic(g, &limits) {
            Ok(Certificate::Coloring { k, .. }) => k,
            _ => usize::MAX,
        };
        match chromatic_number(g, &limits) {
            Ok((chi, c)) if chi == brute && c.is_proper(g) && c.num_colors() == chi => {}
            Ok((chi, _)) => failures.push(format!("{name}: {chi} against {brute}")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    finish(7, start, &failures, format!("{} graphs", graphs.len()))
}

pub fn stable_set_agreement() -> CheckReport {
    let start = Instant::now();
    let limits = Limits::default();
    let mut failures = Vec::new();
    let mut rng = named::prng(8);
    let mut graphs: Vec<(String, Graph)> = small_corpus(100, 20)
        .into_iter()
        .map(|i| (format!("instance {}", i.provenance.params.seed), i.graph))
        .collect();
    for seed in 0..50u64 {
        let n = 8 + (seed % 13) as usize;
        graphs.push((
            format!("gnp seed {seed}"),
            named::gnp(n, 0.15 + 0.1 * (seed % 5) as f64, seed).unwrap(),
        ));
    }
    let mut reweighted = 0;
    for (name, g) in graphs.iter_mut() {
        let w: Vec<i64> = (0..g.n()).map(|_| rng.random_range(0..=100)).collect();
        *g = g.clone().with_weights(w).unwrap();
        let brute = match brute_mwss(g, &limits) {
            Ok(Certificate::StableSet { weight, .. }) => weight,
            _ => i64::MIN,
        };
        match mwss_with_trace(g, &limits) {
            Ok((r, trace)) => {
                reweighted += trace.reweighted;
                if r.weight != brute || !g.is_stable(&r.set) {
                    failures.push(format!("{name}: {} against {brute}", r.weight));
                }
                if trace.reweight_violations > 0 || trace.restriction_violations > 0 {
                    failures.push(format!("{name}: {trace:?}"));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    finish(
        8,
        start,
        &failures,
        format!(
            "{} weighted graphs, {reweighted} cutset vertices reweighted",
            graphs.len()
        ),
    )
}

pub fn cap_detector() -> CheckReport {
    let start = Instant::now();
    let limits = Limits::default();
    let mut failures = Vec::new();
    let mut with_cap = 0;
    for seed in 0..200u64 {
        let n = 5 + (seed % 8) as usize;
        let p = [0.2, 0.4, 0.6][(seed % 3) as usize];
        let g = named::gnp(n, p, seed).unwrap();
        let fast = detect_cap_fast(&g);
        let oracle = find_forbidden_induced(&g, ForbiddenKind::Cap, &limits);
        match (fast, oracle) {
            (Some(w), Ok(Some(_))) if w.verify(&g) => with_cap += 1,
            (None, Ok(None)) => {}
            (f, o) => failures.push(format!("gnp seed {seed}: fast {f:?}, oracle {o:?}")),
        }
    }
    if detect_cap_fast(&named::house()).is_none_or(|w| !w.verify(&named::house())) {
        failures.push("house: no cap".into());
    }
    for (name, g) in [
        ("C6", named::hole(6).unwrap()),
        ("G1", named::blown_five_hole(1).unwrap()),
    ] {
        if detect_cap_fast(&g).is_some() {
            failures.push(format!("{name}: cap reported"));
        }
    }
    let big = named::gnp(200, 1000.0 / 19900.0, 2024).unwrap();
    let t = Instant::now();
    let _ = detect_cap_fast(&big);
    let big_secs = t.elapsed().as_secs_f64();
    if big_secs >= 60.0 {
        failures.push(format!("200-vertex graph took {big_secs:.1} s"));
    }
    let summary = format!(
        "200 random graphs, {with_cap} with caps; {} edges on 200 vertices in {big_secs:.2} s",
        big.m()
    );
    finish(9, start, &failures, summary)
}

/// Twin classes by comparing closed neighbourhoods pairwise.
pub fn twins_quadratic(g: &Graph) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in g.vertices() {
        let nv = g.closed_neighborhood(v);
        match classes
            .iter_mut()
            .find(|c| g.closed_neighborhood(c[0]) == nv)
        {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    classes
}

pub fn twin_refinement() -> CheckReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut graphs: Vec<Graph> = vec![
        named::blown_five_hole(1).unwrap(),
        named::blown_five_hole(2).unwrap(),
        named::hajos(),
        named::cube(),
        named::complete(5),
        named::wheel(5).unwrap(),
        named::house(),
        named::triangular_prism(),
        named::complete_bipartite(2, 3),
        named::hole(6).unwrap().add_universal_clique(2),
    ];
    for seed in 0..190u64 {
        let n = 4 + (seed % 15) as usize;
        let base = named::gnp(n, 0.3 + 0.05 * (seed % 7) as f64, seed).unwrap();
        // Blowing up half the graphs makes non-trivial classes common.
        graphs.push(if seed % 2 == 0 {
            base.blow_up(&vec![2; n]).unwrap()
        } else {
            base
        });
    }
    for (i, g) in graphs.iter().enumerate() {
        let fast: Vec<Vec<usize>> = twin_classes(g)
            .classes
            .into_iter()
            .map(|c| c.to_vec())
            .collect();
        if fast != twins_quadratic(g) {
            failures.push(format!("graph {i}"));
        }
    }
    finish(10, start, &failures, format!("{} graphs", graphs.len()))
}

pub fn recognition(corpus: &[GeneratedInstance]) -> CheckReport {
    let start = Instant::now();
    let limits = Limits::default();
    let mut failures = Vec::new();
    for inst in corpus {
        let class = inst.provenance.params.class;
        match recognize(&inst.graph, class, &limits) {
            Ok(v) if v.accepted() && v.check(&inst.graph) => {}
            Ok(v) => failures.push(format!(
                "seed {} ({class}): {}",
                inst.provenance.params.seed,
                v.to_json()
            )),
            Err(e) => failures.push(format!("seed {}: {e}", inst.provenance.params.seed)),
        }
    }
    let negatives = [
        ("even wheel", named::wheel(4).unwrap()),
        ("K2,3", named::complete_bipartite(2, 3)),
        ("prism", named::triangular_prism()),
        ("house", named::house()),
        ("C4", named::hole(4).unwrap()),
        (
            "C6 plus universal vertex",
            named::hole(6).unwrap().add_universal_clique(1),
        ),
    ];
    for (name, g) in &negatives {
        for class in [
            GraphClass::CapFourHoleOddSignable,
            GraphClass::CapEvenHoleFree,
        ] {
            match recognize(g, class, &limits) {
                Ok(v) if v.rejected() && v.witness().is_some() && v.check(g) => {
                    if *name == "C6 plus universal vertex"
                        && v.witness().unwrap().kind != ForbiddenKind::EvenWheel
                    {
                        failures.push(format!(
                            "{name} ({class}): witness {:?}",
                            v.witness().unwrap().kind
                        ));
                    }
                }
                Ok(v) => failures.push(format!("{name} ({class}): {}", v.to_json())),
                Err(e) => failures.push(format!("{name} ({class}): {e}")),
            }
        }
    }
    finish(
        11,
        start,
        &failures,
        format!(
            "{} generated accepted, {} fixtures rejected in both classes",
            corpus.len(),
            negatives.len()
        ),
    )
}

/// Fixtures and random graphs on at most 12 vertices.
pub fn small_pool() -> Vec<(String, Graph)> {
    let mut pool: Vec<(String, Graph)> = vec![
        ("cube".into(), named::cube()),
        ("hajos".into(), named::hajos()),
        ("house".into(), named::house()),
        ("prism".into(), named::triangular_prism()),
        ("K2,3".into(), named::complete_bipartite(2, 3)),
        ("K3,3".into(), named::complete_bipartite(3, 3)),
        ("G1".into(), named::blown_five_hole(1).unwrap()),
    ];
    for k in 3..=11 {
        pool.push((format!("C{k}"), named::hole(k).unwrap()));
        pool.push((format!("W{k}"), named::wheel(k).unwrap()));
    }
    for k in 1..=6 {
        pool.push((format!("K{k}"), named::complete(k)));
    }
    for seed in 0..200u64 {
        let n = 5 + (seed % 8) as usize;
        let p = [0.2, 0.3, 0.4, 0.5, 0.6][(seed % 5) as usize];
        pool.push((format!("gnp seed {seed}"), named::gnp(n, p, seed).unwrap()));
    }
    pool
}

pub fn odd_signability() -> CheckReport {
    let start = Instant::now();
    let limits = Limits::default();
    let mut failures = Vec::new();
    let pool = small_pool();
    let mut signable = 0;
    for (name, g) in &pool {
        let signing = odd_signable_signing(g, &limits);
        let mut found = None;
        for kind in [
            ForbiddenKind::Theta,
            ForbiddenKind::Prism,
            ForbiddenKind::EvenWheel,
        ] {
            match find_forbidden_induced(g, kind, &limits) {
                Ok(Some(w)) => {
                    found = Some(w);
                    break;
                }
                Ok(None) => {}
                Err(e) => failures.push(format!("{name}: {e}")),
            }
        }
        match (signing, found) {
            (Ok(Some(s)), None) if s.verify(g) => signable += 1,
            (Ok(None), Some(w)) if w.verify(g) => {}
            (s, w) => failures.push(format!(
                "{name}: signing {:?}, structure {w:?}",
                s.map(|x| x.is_some())
            )),
        }
    }
    finish(
        12,
        start,
        &failures,
        format!("{} graphs, {signable} odd-signable", pool.len()),
    )
}
