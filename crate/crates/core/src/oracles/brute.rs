use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::{Limits, BRUTE_FORCE_CEILING};

/// Optimum value together with the object attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `colors[v]` in `0..k`.
    Coloring {
        k: usize,
        colors: Vec<usize>,
    },
    StableSet {
        weight: i64,
        vertices: Vec<usize>,
    },
    Clique {
        vertices: Vec<usize>,
    },
    /// `None` when the graph has no clique cutset.
    CliqueCutset(Option<Vec<usize>>),
}

fn guard(g: &Graph, what: &'static str, limit: usize) -> Result<()> {
    let limit = limit.min(BRUTE_FORCE_CEILING);
    if g.n() > limit {
        return Err(Error::TooLarge {
            what,
            size: g.n(),
            limit,
        });
    }
    Ok(())
}

fn masks(g: &Graph) -> Vec<u64> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect()
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Exact chromatic number by backtracking, trying `k = 1, 2, ...`.
pub fn brute_chromatic(g: &Graph, limits: &Limits) -> Result<Certificate> {
    guard(g, "brute-force chromatic number", limits.chromatic_vertices)?;
    let n = g.n();
    if n == 0 {
        return Ok(Certificate::Coloring {
            k: 0,
            colors: vec![],
        });
    }
    // Colour high-degree vertices first.
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    for k in 1..=n {
        let mut colors = vec![usize::MAX; n];
        if color_from(g, &order, 0, k, 0, &mut colors) {
            return Ok(Certificate::Coloring { k, colors });
        }
    }
    unreachable!("n colours always suffice")
}

fn color_from(
    g: &Graph,
    order: &[usize],
    i: usize,
    k: usize,
    used: usize,
    colors: &mut [usize],
) -> bool {
    let Some(&v) = order.get(i) else { return true };
    // A fresh colour is only tried once, which removes colour-permutation symmetry.
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).iter().all(|&u| colors[u] != c) {
            colors[v] = c;
            if color_from(g, order, i + 1, k, used.max(c + 1), colors) {
                return true;
            }
        }
    }
    colors[v] = usize::MAX;
    false
}

/// Maximum weight stable set by branch and bound; negative weights are never worth taking.
pub fn brute_mwss(g: &Graph, limits: &Limits) -> Result<Certificate> {
    guard(g, "brute-force stable set", limits.mwss_vertices)?;
    let adj = masks(g);
    let w = g.weight_vec();
    let all = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    let mut best = (0i64, 0u64);
    mwss_branch(&adj, &w, all, 0, 0, &mut best);
    Ok(Certificate::StableSet {
        weight: best.0,
        vertices: bits(best.1),
    })
}

fn mwss_branch(adj: &[u64], w: &[i64], cand: u64, chosen: u64, value: i64, best: &mut (i64, u64)) {
    if value > best.0 {
        *best = (value, chosen);
    }
    if cand == 0 {
        return;
    }
    let bound: i64 = bits(cand).iter().map(|&v| w[v].max(0)).sum();
    if value + bound <= best.0 {
        return;
    }
    let v = cand.trailing_zeros() as usize;
    let rest = cand & !(1 << v);
    if w[v] > 0 {
        mwss_branch(adj, w, rest & !adj[v], chosen | 1 << v, value + w[v], best);
    }
    mwss_branch(adj, w, rest, chosen, value, best);
}

/// Maximum clique: a maximum stable set of the complement.
pub fn brute_max_clique(g: &Graph, limits: &Limits) -> Result<Certificate> {
    guard(g, "brute-force clique", limits.clique_vertices)?;
    let n = g.n();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let co: Vec<u64> = masks(g)
        .iter()
        .enumerate()
        .map(|(v, &m)| !m & all & !(1 << v))
        .collect();
    let w = vec![1i64; n];
    let mut best = (0i64, 0u64);
    mwss_branch(&co, &w, all, 0, 0, &mut best);
    Ok(Certificate::Clique {
        vertices: bits(best.1),
    })
}

/// Clique cutset by trying every clique, smallest first.
pub fn brute_clique_cutset(g: &Graph, limits: &Limits) -> Result<Certificate> {
    guard(g, "brute-force clique cutset", limits.cutset_vertices)?;
    let n = g.n();
    let adj = masks(g);
    let mut frontier = vec![0u64];
    // Level by level, so the returned cutset has minimum size.
    loop {
        for &k in &frontier {
            let mut removed = vec![false; n];
            for v in bits(k) {
                removed[v] = true;
            }
            if g.components_avoiding(&removed).len() >= 2 {
                return Ok(Certificate::CliqueCutset(Some(bits(k))));
            }
        }
        let mut next = Vec::new();
        for &k in &frontier {
            let start = if k == 0 {
                0
            } else {
                64 - k.leading_zeros() as usize
            };
            for (v, &row) in adj.iter().enumerate().skip(start) {
                if row & k == k {
                    next.push(k | 1 << v);
                }
            }
        }
        if next.is_empty() {
            return Ok(Certificate::CliqueCutset(None));
        }
        frontier = next;
    }
}

/// Colouring with every vertex coloured, colours in `0..k`, and no monochromatic edge.
pub fn is_proper_coloring(g: &Graph, colors: &[usize], k: usize) -> bool {
    colors.len() == g.n()
        && colors.iter().all(|&c| c < k)
        && g.edges().all(|(u, v)| colors[u] != colors[v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn chi(g: &Graph) -> usize {
        match brute_chromatic(g, &Limits::default()).unwrap() {
            Certificate::Coloring { k, colors } => {
                assert!(is_proper_coloring(g, &colors, k));
                k
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chi(&named::hole(5).unwrap()), 3);
        assert_eq!(chi(&named::hole(6).unwrap()), 2);
        assert_eq!(chi(&named::complete(5)), 5);
        assert_eq!(chi(&named::hajos()), 4);
        assert_eq!(chi(&Graph::empty(3)), 1);
        assert_eq!(chi(&Graph::empty(0)), 0);
    }

    #[test]
    fn stable_sets_and_cliques() {
        let g = named::hole(7).unwrap();
        match brute_mwss(&g, &Limits::default()).unwrap() {
            Certificate::StableSet { weight, vertices } => {
                assert_eq!(weight, 3);
                assert!(g.is_stable(&vertices));
            }
            _ => unreachable!(),
        }
        let h = named::hajos();
        match brute_max_clique(&h, &Limits::default()).unwrap() {
            Certificate::Clique { vertices } => assert_eq!(vertices.len(), 3),
            _ => unreachable!(),
        }
    }

    #[test]
    fn weighted_stable_set_skips_negative_weights() {
        let g = named::path(3)
            .unwrap()
            .with_weights(vec![-4, 5, -1])
            .unwrap();
        assert_eq!(
            brute_mwss(&g, &Limits::default()).unwrap(),
            Certificate::StableSet {
                weight: 5,
                vertices: vec![1]
            }
        );
        let all_negative = Graph::empty(2).with_weights(vec![-1, -2]).unwrap();
        assert_eq!(
            brute_mwss(&all_negative, &Limits::default()).unwrap(),
            Certificate::StableSet {
                weight: 0,
                vertices: vec![]
            }
        );
    }

    #[test]
    fn clique_cutsets() {
        let cut = |g: &Graph| match brute_clique_cutset(g, &Limits::default()).unwrap() {
            Certificate::CliqueCutset(c) => c,
            _ => unreachable!(),
        };
        assert_eq!(cut(&named::hole(5).unwrap()), None);
        assert_eq!(cut(&named::path(3).unwrap()), Some(vec![1]));
        assert_eq!(cut(&Graph::empty(2)), Some(vec![]));
        assert_eq!(cut(&named::complete(4)), None);
        // Two triangles sharing an edge.
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(cut(&g), Some(vec![1, 2]));
    }

    #[test]
    fn guards_refuse_large_inputs() {
        let g = named::hole(30).unwrap();
        let err = brute_chromatic(&g, &Limits::default()).unwrap_err();
        assert!(err.is_undecided());
        assert!(brute_chromatic(&g, &Limits::uniform(30)).is_ok());
    }
}
