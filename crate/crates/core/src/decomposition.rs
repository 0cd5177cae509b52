//! Clique-cutset decomposition.
//!
//! A minimal elimination ordering is computed with MCS-M; walking it in
//! elimination order, every generator whose later neighbourhood in the fill
//! graph is a clique of `G` splits off an atom. Generators are the vertices
//! numbered with a label no larger than their predecessor's; their later
//! neighbourhoods are exactly the minimal separators of the triangulation, so
//! no atom is split off along a separator that is not minimal. The result is
//! a binary tree whose left children are atoms.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Minimal elimination ordering by MCS-M.
///
/// Returns `(order, later)`: `order[i]` is the `i`-th vertex eliminated and
/// `later[v]` lists the neighbours of `v` in the fill graph eliminated after `v`.
/// Ties in the cardinality search go to the smallest vertex id.
pub fn mcs_m(g: &Graph) -> (Vec<usize>, Vec<Vec<usize>>) {
    let (order, later, _) = mcs_m_generators(g);
    (order, later)
}

/// MCS-M that also flags the generators.
fn mcs_m_generators(g: &Graph) -> (Vec<usize>, Vec<Vec<usize>>, Vec<bool>) {
    let n = g.n();
    let mut generator = vec![false; n];
    let mut previous: Option<usize> = None;
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut order = vec![0usize; n];
    let mut later: Vec<Vec<usize>> = vec![Vec::new(); n];
    // `cost[u]`: least possible maximum interior weight over paths from v to u.
    let mut cost = vec![usize::MAX; n];
    for i in (0..n).rev() {
        let v = (0..n)
            .filter(|&u| !numbered[u])
            .max_by_key(|&u| (weight[u], Reverse(u)))
            .unwrap();
        numbered[v] = true;
        order[i] = v;
        generator[v] = previous.is_some_and(|p| weight[v] <= p);
        previous = Some(weight[v]);
        cost.iter_mut().for_each(|c| *c = usize::MAX);
        let mut heap = BinaryHeap::new();
        let mut reached = Vec::new();
        for &u in g.neighbors(v) {
            if !numbered[u] {
                // Direct neighbours have no interior; 0 stands for "below every weight".
                cost[u] = 0;
                heap.push(Reverse((0usize, u)));
            }
        }
        while let Some(Reverse((c, x))) = heap.pop() {
            if c != cost[x] {
                continue;
            }
            if c < weight[x] + 1 {
                reached.push(x);
            }
            // Passing through x costs its weight (shifted by one so direct edges stay at 0).
            let through = c.max(weight[x] + 1);
            for &y in g.neighbors(x) {
                if !numbered[y] && y != v && through < cost[y] {
                    cost[y] = through;
                    heap.push(Reverse((through, y)));
                }
            }
        }
        for x in reached {
            weight[x] += 1;
            later[x].push(v);
        }
    }
    for l in &mut later {
        l.sort_unstable();
    }
    (order, later, generator)
}

/// Binary clique-cutset decomposition tree. Left children are always atoms.
///
/// Each cutset separates the left subtree's vertices from the right's, minus the cutset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionTree {
    Atom(VertexSet),
    Split {
        cutset: VertexSet,
        left: Box<DecompositionTree>,
        right: Box<DecompositionTree>,
    },
}

/// One separation step: `cutset` is a clique of `G` and no edge joins `left` to `right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSplit {
    pub cutset: VertexSet,
    pub left: VertexSet,
    pub right: VertexSet,
}

/// Runs the atom-splitting walk and returns the splits in order, plus the final atom.
///
/// Components are handled one after another; the last atom of a component is
/// split off the remaining components along the empty clique.
fn splits(g: &Graph) -> (Vec<CliqueSplit>, VertexSet) {
    let n = g.n();
    let (order, later, generator) = mcs_m_generators(g);
    let comps = g.components();
    let mut comp_of = vec![0usize; n];
    for (i, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
    }
    let mut alive = vec![true; n];
    let mut out = Vec::new();
    let rest = |alive: &[bool], skip: &[usize]| -> VertexSet {
        (0..n).filter(|&u| alive[u] && !skip.contains(&u)).collect()
    };
    for (ci, comp) in comps.iter().enumerate() {
        let mut alive_here = comp.len();
        for &v in order.iter().filter(|&&v| comp_of[v] == ci) {
            if !alive[v] || !generator[v] {
                continue;
            }
            let c = &later[v];
            debug_assert!(c.iter().all(|&u| alive[u]));
            if !g.is_clique(c) {
                continue;
            }
            let mut removed: Vec<bool> = alive.iter().map(|a| !a).collect();
            for &u in c {
                removed[u] = true;
            }
            let a = g
                .components_avoiding(&removed)
                .into_iter()
                .find(|comp| comp.contains(&v))
                .unwrap();
            if a.len() + c.len() == alive_here {
                continue;
            }
            alive_here -= a.len();
            for &u in &a {
                alive[u] = false;
            }
            out.push(CliqueSplit {
                cutset: c.iter().copied().collect(),
                left: a.into(),
                right: rest(&alive, c),
            });
        }
        if ci + 1 < comps.len() {
            let atom: Vec<usize> = comp.iter().copied().filter(|&u| alive[u]).collect();
            for &u in &atom {
                alive[u] = false;
            }
            out.push(CliqueSplit {
                cutset: VertexSet::empty(),
                left: atom.into(),
                right: rest(&alive, &[]),
            });
        }
    }
    let last = (0..n).filter(|&u| alive[u]).collect();
    (out, last)
}

/// First clique cutset, or `None` when `g` has none.
///
/// A disconnected graph yields the empty cutset with the component of the
/// smallest vertex on the left; otherwise the first cutset met along the
/// elimination order is returned.
pub fn find_clique_cutset(g: &Graph) -> Option<CliqueSplit> {
    let comps = g.components();
    if comps.len() >= 2 {
        let left: VertexSet = comps[0].iter().copied().collect();
        let right = (0..g.n()).filter(|v| !left.contains(*v)).collect();
        return Some(CliqueSplit {
            cutset: VertexSet::empty(),
            left,
            right,
        });
    }
    splits(g).0.into_iter().next()
}

/// Full decomposition; every atom induces a graph without clique cutset.
pub fn clique_cutset_tree(g: &Graph) -> DecompositionTree {
    let (steps, last) = splits(g);
    let mut tree = DecompositionTree::Atom(last);
    for s in steps.into_iter().rev() {
        let atom = s.left.union(&s.cutset);
        tree = DecompositionTree::Split {
            cutset: s.cutset,
            left: Box::new(DecompositionTree::Atom(atom)),
            right: Box::new(tree),
        };
    }
    tree
}

impl DecompositionTree {
    /// Vertex set of the subproblem rooted here.
    pub fn vertices(&self) -> VertexSet {
        match self {
            DecompositionTree::Atom(a) => a.clone(),
            DecompositionTree::Split { left, right, .. } => {
                left.vertices().union(&right.vertices())
            }
        }
    }

    /// Leaves, left to right.
    pub fn atoms(&self) -> Vec<&VertexSet> {
        let mut out = Vec::new();
        let mut node = self;
        loop {
            match node {
                DecompositionTree::Atom(a) => {
                    out.push(a);
                    return out;
                }
                DecompositionTree::Split { left, right, .. } => {
                    out.extend(left.atoms());
                    node = right;
                }
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.atoms().len()
    }

    /// Cutsets of the internal nodes, top down along the right spine and left subtrees.
    pub fn cutsets(&self) -> Vec<&VertexSet> {
        match self {
            DecompositionTree::Atom(_) => vec![],
            DecompositionTree::Split {
                cutset,
                left,
                right,
            } => {
                let mut out = vec![cutset];
                out.extend(left.cutsets());
                out.extend(right.cutsets());
                out
            }
        }
    }

    /// Checks the tree against `g`: cutsets are cliques separating their two
    /// sides, leaves cover `V(G)`, and every edge lies inside some atom.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDecomposition(m));
        if self.vertices().len() != g.n() || self.vertices().iter().any(|&v| v >= g.n()) {
            return bad("leaves do not cover the vertex set".into());
        }
        self.validate_node(g)?;
        let atoms = self.atoms();
        for (u, v) in g.edges() {
            if !atoms.iter().any(|a| a.contains(u) && a.contains(v)) {
                return bad(format!("edge {u}-{v} lies in no atom"));
            }
        }
        Ok(())
    }

    fn validate_node(&self, g: &Graph) -> Result<()> {
        let DecompositionTree::Split {
            cutset,
            left,
            right,
        } = self
        else {
            return Ok(());
        };
        if !g.is_clique(cutset) {
            return Err(Error::InvalidDecomposition(format!(
                "cutset {:?} is not a clique",
                &cutset[..]
            )));
        }
        let h1 = left.vertices().difference(cutset);
        let h2 = right.vertices().difference(cutset);
        if h1.is_empty() || h2.is_empty() || !h1.intersection(&h2).is_empty() {
            return Err(Error::InvalidDecomposition(
                "split sides are empty or overlap".into(),
            ));
        }
        if h1.iter().any(|&a| h2.iter().any(|&b| g.has_edge(a, b))) {
            return Err(Error::InvalidDecomposition(format!(
                "cutset {:?} does not separate",
                &cutset[..]
            )));
        }
        left.validate_node(g)?;
        right.validate_node(g)
    }

    /// Graphviz rendering; internal nodes show their cutset, leaves their size.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph decomposition {\n  node [shape=box];\n");
        let mut next = 0usize;
        self.dot_node(&mut out, &mut next);
        out.push_str("}\n");
        out
    }

    fn dot_node(&self, out: &mut String, next: &mut usize) -> usize {
        let id = *next;
        *next += 1;
        match self {
            DecompositionTree::Atom(a) => {
                let _ = writeln!(out, "  n{id} [label=\"atom ({})\"];", a.len());
            }
            DecompositionTree::Split {
                cutset,
                left,
                right,
            } => {
                let names: Vec<String> = cutset.iter().map(|v| (v + 1).to_string()).collect();
                let _ = writeln!(
                    out,
                    "  n{id} [shape=ellipse, label=\"K = {{{}}}\"];",
                    names.join(", ")
                );
                let l = left.dot_node(out, next);
                let r = right.dot_node(out, next);
                let _ = writeln!(out, "  n{id} -> n{l};\n  n{id} -> n{r};");
            }
        }
        id
    }

    /// JSON with 1-based vertex ids, matching the graph file format.
    pub fn to_json(&self) -> Value {
        let ids = |s: &VertexSet| s.iter().map(|v| v + 1).collect::<Vec<_>>();
        match self {
            DecompositionTree::Atom(a) => json!({ "atom": ids(a) }),
            DecompositionTree::Split {
                cutset,
                left,
                right,
            } => {
                json!({ "cutset": ids(cutset), "left": left.to_json(), "right": right.to_json() })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::named;
    use crate::oracles::{brute_clique_cutset, Certificate};

    fn has_cutset(g: &Graph) -> bool {
        matches!(
            brute_clique_cutset(g, &Limits::default()).unwrap(),
            Certificate::CliqueCutset(Some(_))
        )
    }

    fn check(g: &Graph) -> DecompositionTree {
        let t = clique_cutset_tree(g);
        t.validate(g).unwrap();
        for a in t.atoms() {
            let (sub, _) = g.induced_subgraph(a).unwrap();
            assert!(
                !has_cutset(&sub),
                "atom {:?} still has a clique cutset",
                &a[..]
            );
        }
        assert_eq!(find_clique_cutset(g).is_some(), has_cutset(g));
        t
    }

    #[test]
    fn diamond_splits_on_shared_edge() {
        // K4 minus the edge 0-3.
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(
            find_clique_cutset(&g).unwrap().cutset,
            VertexSet::new(vec![1, 2])
        );
        let t = check(&g);
        assert_eq!(t.leaf_count(), 2);
        assert!(t.atoms().iter().all(|a| a.len() == 3));
    }

    #[test]
    fn path_and_hole() {
        let p4 = named::path(4).unwrap();
        let cut = find_clique_cutset(&p4).unwrap().cutset;
        assert!(cut[..] == [1] || cut[..] == [2]);
        let t = check(&p4);
        assert_eq!(t.leaf_count(), 3);
        assert!(t.atoms().iter().all(|a| a.len() == 2));
        let c5 = named::hole(5).unwrap();
        assert!(find_clique_cutset(&c5).is_none());
        assert_eq!(check(&c5), DecompositionTree::Atom((0..5).collect()));
    }

    #[test]
    fn disconnected_input_splits_on_empty_set() {
        let g = Graph::from_edges(5, [(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        let s = find_clique_cutset(&g).unwrap();
        assert!(s.cutset.is_empty());
        assert_eq!(s.left, VertexSet::new(vec![0, 1]));
        let t = check(&g);
        assert_eq!(t.leaf_count(), 2);
        assert!(t.cutsets().iter().all(|k| k.is_empty()));
        // A path component still splits into edges.
        let h = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(check(&h).leaf_count(), 3);
    }

    #[test]
    fn mcs_m_later_sets_on_a_hole() {
        // The fill graph of a minimal ordering on C5 is a minimal triangulation: 2 chords.
        let g = named::hole(5).unwrap();
        let (order, later) = mcs_m(&g);
        let mut seen = order.clone();
        seen.sort_unstable();
        assert_eq!(seen, (0..5).collect::<Vec<_>>());
        let fill_edges: usize = later.iter().map(Vec::len).sum();
        assert_eq!(fill_edges, 7);
    }

    #[test]
    fn random_graphs_decompose_into_atoms() {
        for seed in 0..60 {
            let g = named::gnp(12, [0.15, 0.3, 0.5][seed as usize % 3], seed).unwrap();
            let t = check(&g);
            if g.is_connected() && g.n() >= 2 {
                assert!(t.leaf_count() < g.n());
            }
        }
    }

    #[test]
    fn dot_and_json() {
        let t = clique_cutset_tree(&named::path(3).unwrap());
        let dot = t.to_dot();
        assert!(dot.contains("K = {2}"));
        assert!(dot.contains("atom (2)"));
        assert_eq!(t.to_json()["cutset"], json!([2]));
    }
}
