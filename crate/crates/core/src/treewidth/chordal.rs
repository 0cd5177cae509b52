use super::{decomposition_from_order, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Maximum cardinality search: vertices in visit order, ties to the smallest id.
pub fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    // Bucket queue keyed by weight; stale entries are skipped on pop.
    let mut buckets: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); n + 1];
    buckets[0].extend(0..n);
    let mut top = 0;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        while buckets[top].is_empty() {
            top -= 1;
        }
        let v = buckets[top].pop_first().unwrap();
        visited[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !visited[u] {
                buckets[weight[u]].remove(&u);
                weight[u] += 1;
                buckets[weight[u]].insert(u);
                top = top.max(weight[u]);
            }
        }
    }
    order
}

/// Reverse of the MCS order; a perfect elimination order exactly when `g` is chordal.
pub fn perfect_elimination_order(g: &Graph) -> Vec<usize> {
    let mut order = mcs_order(g);
    order.reverse();
    order
}

/// Zero-fill test on the MCS elimination order.
pub fn is_chordal(g: &Graph) -> bool {
    let order = perfect_elimination_order(g);
    let mut pos = vec![0usize; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order.iter().all(|&v| {
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| pos[u] > pos[v])
            .collect();
        match later.iter().copied().min_by_key(|&u| pos[u]) {
            None => true,
            Some(p) => later.iter().all(|&u| u == p || g.has_edge(p, u)),
        }
    })
}

/// Clique tree of a chordal graph: maximal cliques as bags.
pub fn clique_tree(g: &Graph) -> Result<TreeDecomposition> {
    if !is_chordal(g) {
        return Err(Error::InvalidParameter(
            "clique tree needs a chordal graph".into(),
        ));
    }
    Ok(decomposition_from_order(g, &perfect_elimination_order(g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn chordality() {
        assert!(is_chordal(&named::complete(5)));
        assert!(is_chordal(&named::path(6).unwrap()));
        assert!(!is_chordal(&named::hole(4).unwrap()));
        assert!(!is_chordal(&named::hole(7).unwrap()));
        let fan = named::path(5).unwrap().add_universal_clique(1);
        assert!(is_chordal(&fan));
    }

    #[test]
    fn clique_tree_bags_are_maximal_cliques() {
        // Two triangles sharing an edge, plus a pendant vertex.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let td = clique_tree(&g).unwrap();
        td.validate(&g).unwrap();
        assert_eq!(td.bags.len(), 3);
        assert!(td.bags.iter().all(|b| g.is_clique(b)));
        assert_eq!(td.width(), 2);
        assert!(clique_tree(&named::hole(5).unwrap()).is_err());
    }

    #[test]
    fn chordality_matches_hole_search() {
        for seed in 0..60 {
            let g = named::gnp(10, 0.45, seed).unwrap();
            let holes = crate::oracles::holes_bounded(&g, 1_000_000).unwrap();
            assert_eq!(is_chordal(&g), holes.is_empty(), "seed {seed}");
        }
    }
}
