use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::limits::Limits;

fn rows(g: &Graph) -> Vec<FixedBitSet> {
    g.vertices().map(|v| g.row(v).clone()).collect()
}

/// Decomposition read off an elimination order.
///
/// Eliminating `v` makes its remaining neighbours a clique; the bag of `v`
/// is `v` plus those neighbours, and its parent is the first of them to be
/// eliminated. Bags contained in a neighbouring bag are then merged away, so
/// for a perfect elimination order of a chordal graph the bags are exactly
/// the maximal cliques.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition {
            bags: vec![VertexSet::empty()],
            edges: vec![],
        };
    }
    let mut adj = rows(g);
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bags: Vec<VertexSet> = Vec::with_capacity(n);
    let mut parent: Vec<Option<usize>> = Vec::with_capacity(n);
    for &v in order {
        let later: Vec<usize> = adj[v].ones().filter(|&u| pos[u] > pos[v]).collect();
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        parent.push(
            later
                .iter()
                .copied()
                .min_by_key(|&u| pos[u])
                .map(|u| pos[u]),
        );
        bags.push(std::iter::once(v).chain(later).collect());
    }
    // Node i is the bag of order[i]; contract tree edges where one bag contains the other.
    let mut rep: Vec<usize> = (0..n).collect();
    fn find(rep: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while rep[r] != r {
            r = rep[r];
        }
        let mut y = x;
        while rep[y] != r {
            let next = rep[y];
            rep[y] = r;
            y = next;
        }
        r
    }
    let mut changed = true;
    while changed {
        changed = false;
        for (i, &p) in parent.iter().enumerate() {
            let Some(p) = p else { continue };
            let (a, b) = (find(&mut rep, i), find(&mut rep, p));
            if a == b {
                continue;
            }
            if bags[a].is_subset(&bags[b]) {
                rep[a] = b;
                changed = true;
            } else if bags[b].is_subset(&bags[a]) {
                rep[b] = a;
                changed = true;
            }
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut out = TreeDecomposition::default();
    for i in 0..n {
        let r = find(&mut rep, i);
        if index[r] == usize::MAX {
            index[r] = out.bags.len();
            out.bags.push(bags[r].clone());
        }
    }
    let mut roots = Vec::new();
    let mut seen_edges = HashSet::new();
    for i in 0..n {
        let a = index[find(&mut rep, i)];
        match parent[i] {
            Some(p) => {
                let b = index[find(&mut rep, p)];
                if a != b && seen_edges.insert((a.min(b), a.max(b))) {
                    out.edges.push((a.min(b), a.max(b)));
                }
            }
            None => roots.push(a),
        }
    }
    // One root per component; chain them so the result is a single tree.
    roots.sort_unstable();
    roots.dedup();
    for w in roots.windows(2) {
        out.edges.push((w[0], w[1]));
    }
    out
}

/// Greedy order: repeatedly eliminate the vertex adding the fewest fill edges,
/// ties to smaller degree, then smaller id.
pub fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj = rows(g);
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in alive.ones() {
            let nb: Vec<usize> = adj[v].intersection(&alive).collect();
            let mut fill = 0;
            for (i, &a) in nb.iter().enumerate() {
                fill += nb[i + 1..].iter().filter(|&&b| !adj[a].contains(b)).count();
            }
            let key = (fill, nb.len(), v);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        let v = best.unwrap().2;
        let nb: Vec<usize> = adj[v].intersection(&alive).collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        alive.set(v, false);
        order.push(v);
    }
    order
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    nodes: u64,
    budget: u64,
    failed: HashSet<FixedBitSet>,
}

impl Search<'_> {
    /// For every vertex outside `eliminated`, the vertices outside it reachable
    /// through paths whose interior lies inside it: the neighbourhood in the
    /// graph left after eliminating that set, in any order.
    fn eliminated_neighbourhoods(&self, eliminated: &FixedBitSet) -> Vec<FixedBitSet> {
        let n = self.g.n();
        let mut comp = vec![usize::MAX; n];
        let mut reach: Vec<FixedBitSet> = Vec::new();
        for s in eliminated.ones() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = reach.len();
            let mut border = FixedBitSet::with_capacity(n);
            comp[s] = id;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in self.g.neighbors(x) {
                    if eliminated.contains(y) {
                        if comp[y] == usize::MAX {
                            comp[y] = id;
                            stack.push(y);
                        }
                    } else {
                        border.insert(y);
                    }
                }
            }
            reach.push(border);
        }
        let mut out = vec![FixedBitSet::with_capacity(n); n];
        for v in (0..n).filter(|&v| !eliminated.contains(v)) {
            let q = &mut out[v];
            for &y in self.g.neighbors(v) {
                if eliminated.contains(y) {
                    q.union_with(&reach[comp[y]]);
                } else {
                    q.insert(y);
                }
            }
            q.set(v, false);
        }
        out
    }

    fn run(&mut self, eliminated: &mut FixedBitSet, order: &mut Vec<usize>) -> Result<bool> {
        let n = self.g.n();
        if n - eliminated.count_ones(..) <= self.k + 1 {
            return Ok(true);
        }
        if self.failed.contains(eliminated) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted {
                what: "exact treewidth search",
                budget: self.budget,
            });
        }
        let q = self.eliminated_neighbourhoods(eliminated);
        let mut candidates: Vec<usize> = (0..n)
            .filter(|&v| !eliminated.contains(v) && q[v].count_ones(..) <= self.k)
            .collect();
        // A simplicial vertex of small degree can always go first.
        let simplicial = candidates.iter().copied().find(|&v| {
            q[v].ones()
                .all(|a| q[v].ones().all(|b| a == b || q[a].contains(b)))
        });
        if let Some(v) = simplicial {
            candidates = vec![v];
        } else {
            candidates.sort_by_key(|&v| (q[v].count_ones(..), v));
        }
        for v in candidates {
            eliminated.insert(v);
            order.push(v);
            let ok = self.run(eliminated, order)?;
            if ok {
                return Ok(true);
            }
            order.pop();
            eliminated.set(v, false);
        }
        self.failed.insert(eliminated.clone());
        Ok(false)
    }
}

/// An elimination order of width at most `k`, or `None` if the treewidth exceeds `k`.
///
/// Depth-first search over sets of eliminated vertices, memoising the sets
/// already shown to fail. Visiting more than `limits.treewidth_nodes` states
/// is reported as an error, never as a width bound.
pub fn exact_order_within(g: &Graph, k: usize, limits: &Limits) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    let mut search = Search {
        g,
        k,
        nodes: 0,
        budget: limits.treewidth_nodes,
        failed: HashSet::new(),
    };
    let mut eliminated = FixedBitSet::with_capacity(n);
    let mut order = Vec::new();
    if !search.run(&mut eliminated, &mut order)? {
        return Ok(None);
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !eliminated.contains(v)).collect();
    order.extend(rest);
    Ok(Some(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn brute_treewidth(g: &Graph) -> isize {
        // Every order of a tiny graph.
        fn perms(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
            if k == items.len() {
                out.push(items.clone());
                return;
            }
            for i in k..items.len() {
                items.swap(k, i);
                perms(items, k + 1, out);
                items.swap(k, i);
            }
        }
        let mut all = Vec::new();
        perms(&mut (0..g.n()).collect(), 0, &mut all);
        all.iter()
            .map(|o| decomposition_from_order(g, o).width())
            .min()
            .unwrap()
    }

    #[test]
    fn orders_give_valid_decompositions() {
        for seed in 0..40 {
            let g = named::gnp(12, 0.35, seed).unwrap();
            let td = decomposition_from_order(&g, &min_fill_order(&g));
            td.validate(&g).unwrap();
        }
    }

    #[test]
    fn exact_search_matches_permutation_brute_force() {
        for seed in 0..25 {
            let g = named::gnp(7, 0.5, seed).unwrap();
            let tw = brute_treewidth(&g);
            for k in 0..=6usize {
                let found = exact_order_within(&g, k, &Limits::default()).unwrap();
                assert_eq!(found.is_some(), k as isize >= tw, "seed {seed} k {k}");
                if let Some(order) = found {
                    let td = decomposition_from_order(&g, &order);
                    td.validate(&g).unwrap();
                    assert!(td.width() <= k as isize);
                }
            }
        }
    }

    #[test]
    fn known_widths() {
        let cycle = named::hole(8).unwrap();
        assert!(exact_order_within(&cycle, 1, &Limits::default())
            .unwrap()
            .is_none());
        assert!(exact_order_within(&cycle, 2, &Limits::default())
            .unwrap()
            .is_some());
        let k44 = named::complete_bipartite(4, 4);
        assert!(exact_order_within(&k44, 3, &Limits::default())
            .unwrap()
            .is_none());
        assert!(exact_order_within(&k44, 4, &Limits::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn node_budget_is_an_error() {
        let g = named::gnp(30, 0.3, 1).unwrap();
        let limits = Limits {
            treewidth_nodes: 3,
            ..Limits::default()
        };
        assert!(exact_order_within(&g, 5, &limits)
            .unwrap_err()
            .is_undecided());
    }
}
