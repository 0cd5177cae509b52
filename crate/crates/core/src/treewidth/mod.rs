//! Tree decompositions: validation, chordal completions, small-width search,
//! the ear-based triangulation of skeletons, lifting to atoms, and nice form.

mod chordal;
mod ears;
mod elimination;
mod nice;

pub use chordal::{clique_tree, is_chordal, mcs_order, perfect_elimination_order};
pub use ears::{triangulation_from_ears, Ear, EarSequence};
pub use elimination::{decomposition_from_order, exact_order_within, min_fill_order};
pub use nice::{nice_decomposition, NiceDecomposition, NiceKind, NiceNode};

use serde_json::{json, Value};

use crate::decomposition::{clique_cutset_tree, DecompositionTree};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::limits::Limits;
use crate::oracles::forbidden::find_triangle;
use crate::skeleton::{extract_skeleton, SkeletonDecomposition, SkeletonOutcome};

/// Bags joined by tree edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// A single bag holding every vertex.
    pub fn trivial(n: usize) -> Self {
        TreeDecomposition {
            bags: vec![(0..n).collect()],
            edges: vec![],
        }
    }

    /// Largest bag size minus one; `-1` only for a decomposition without vertices.
    pub fn width(&self) -> isize {
        self.bags
            .iter()
            .map(|b| b.len() as isize)
            .max()
            .unwrap_or(0)
            - 1
    }

    /// Checks the tree shape, vertex coverage, edge coverage, and that the bags
    /// holding any one vertex form a connected subtree.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDecomposition(m));
        let k = self.bags.len();
        if k == 0 {
            return if g.n() == 0 {
                Ok(())
            } else {
                bad("no bags".into())
            };
        }
        if self.edges.len() + 1 != k {
            return bad(format!(
                "{} edges for {} bags is not a tree",
                self.edges.len(),
                k
            ));
        }
        let mut tree_adj = vec![Vec::new(); k];
        for &(a, b) in &self.edges {
            if a >= k || b >= k || a == b {
                return bad(format!("bad tree edge ({a}, {b})"));
            }
            tree_adj[a].push(b);
            tree_adj[b].push(a);
        }
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &tree_adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("tree is disconnected".into());
        }
        if let Some(&v) = self
            .bags
            .iter()
            .flat_map(|b| b.iter())
            .find(|&&v| v >= g.n())
        {
            return bad(format!("bag holds unknown vertex {v}"));
        }
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for (i, b) in self.bags.iter().enumerate() {
            for &v in b.iter() {
                holders[v].push(i);
            }
        }
        if let Some(v) = holders.iter().position(Vec::is_empty) {
            return bad(format!("vertex {v} is in no bag"));
        }
        for (u, v) in g.edges() {
            if !holders[u].iter().any(|&i| self.bags[i].contains(v)) {
                return bad(format!("edge {u}-{v} is in no bag"));
            }
        }
        // Subtree check: the bags holding v, with tree edges between two such bags, form one component.
        let mut holds = vec![false; k];
        let mut reached = vec![false; k];
        for (v, hold) in holders.iter().enumerate() {
            for &i in hold {
                holds[i] = true;
            }
            let mut count = 1;
            let mut stack = vec![hold[0]];
            reached[hold[0]] = true;
            while let Some(x) = stack.pop() {
                for &y in &tree_adj[x] {
                    if holds[y] && !reached[y] {
                        reached[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
            for &i in hold {
                holds[i] = false;
                reached[i] = false;
            }
            if count != hold.len() {
                return bad(format!("bags holding vertex {v} are not connected"));
            }
        }
        Ok(())
    }

    /// Drops every vertex with `keep[v] == false` from every bag. Still valid for the induced subgraph.
    pub fn restrict(&self, keep: &[bool]) -> TreeDecomposition {
        TreeDecomposition {
            bags: self
                .bags
                .iter()
                .map(|b| b.iter().copied().filter(|&v| keep[v]).collect())
                .collect(),
            edges: self.edges.clone(),
        }
    }

    /// Renames every vertex `v` to `map[v]`.
    pub fn relabel(&self, map: &[usize]) -> TreeDecomposition {
        TreeDecomposition {
            bags: self
                .bags
                .iter()
                .map(|b| b.iter().map(|&v| map[v]).collect())
                .collect(),
            edges: self.edges.clone(),
        }
    }

    /// Index of a bag containing all of `set`.
    pub fn bag_containing(&self, set: &[usize]) -> Option<usize> {
        self.bags
            .iter()
            .position(|b| set.iter().all(|&v| b.contains(v)))
    }

    /// JSON with 1-based vertex ids and 0-based bag indices.
    pub fn to_json(&self) -> Value {
        let bags: Vec<Vec<usize>> = self
            .bags
            .iter()
            .map(|b| b.iter().map(|v| v + 1).collect())
            .collect();
        json!({ "width": self.width(), "bags": bags, "edges": self.edges })
    }
}

/// Why a skeleton did not get a width-5 decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkeletonWidthReject {
    Triangle([usize; 3]),
    /// The exact search proved treewidth above 5.
    WidthAboveFive,
}

/// Width-5 decomposition of a triangle-free graph.
///
/// Min-fill first; when that is too wide, an exact search for an elimination
/// order of width at most 5. Exhausting the node budget is an error, so a
/// returned rejection is always a proof.
pub fn skeleton_tree_decomposition(
    f: &Graph,
    limits: &Limits,
) -> Result<std::result::Result<TreeDecomposition, SkeletonWidthReject>> {
    if let Some(t) = find_triangle(f) {
        let v = &t.vertices;
        return Ok(Err(SkeletonWidthReject::Triangle([v[0], v[1], v[2]])));
    }
    let td = decomposition_from_order(f, &min_fill_order(f));
    if td.width() <= 5 {
        return Ok(Ok(td));
    }
    match exact_order_within(f, 5, limits)? {
        Some(order) => Ok(Ok(decomposition_from_order(f, &order))),
        None => Ok(Err(SkeletonWidthReject::WidthAboveFive)),
    }
}

/// Replaces each skeleton vertex by its clique and adds the universal clique to every bag.
pub fn lift_tree_decomposition(
    td: &TreeDecomposition,
    sd: &SkeletonDecomposition,
) -> Result<TreeDecomposition> {
    let k = sd.cliques.len();
    if let Some(&v) = td.bags.iter().flat_map(|b| b.iter()).find(|&&v| v >= k) {
        return Err(Error::InvalidDecomposition(format!(
            "skeleton has {k} vertices, bag names {v}"
        )));
    }
    if sd.skeleton.n() != k {
        return Err(Error::InvalidDecomposition(
            "skeleton and clique map disagree".into(),
        ));
    }
    let bags = td
        .bags
        .iter()
        .map(|b| {
            b.iter()
                .flat_map(|&v| sd.cliques[v].iter().copied())
                .chain(sd.universal.iter().copied())
                .collect()
        })
        .collect();
    Ok(TreeDecomposition {
        bags,
        edges: td.edges.clone(),
    })
}

/// Decomposition of an atom through its skeleton, or `None` if the atom has
/// no in-class skeleton shape. Complete atoms get a single bag.
pub fn atom_tree_decomposition(
    atom: &Graph,
    limits: &Limits,
) -> Result<Option<(TreeDecomposition, Option<SkeletonDecomposition>)>> {
    match extract_skeleton(atom) {
        SkeletonOutcome::Complete => Ok(Some((TreeDecomposition::trivial(atom.n()), None))),
        SkeletonOutcome::Reject(_) => Ok(None),
        SkeletonOutcome::Skeleton(sd) => match skeleton_tree_decomposition(&sd.skeleton, limits)? {
            Ok(td) => Ok(Some((lift_tree_decomposition(&td, &sd)?, Some(sd)))),
            Err(_) => Ok(None),
        },
    }
}

/// Decomposition of any graph: atoms with a skeleton go through the skeleton
/// route, the rest use min-fill, and the pieces are joined along the clique cutsets.
pub fn tree_decomposition(g: &Graph, limits: &Limits) -> Result<TreeDecomposition> {
    let tree = clique_cutset_tree(g);
    let mut pieces = Vec::new();
    for atom in tree.atoms() {
        let (sub, map) = g.induced_subgraph(atom)?;
        let td = match atom_tree_decomposition(&sub, limits) {
            Ok(Some((td, _))) => td,
            Ok(None) | Err(Error::BudgetExhausted { .. }) => {
                decomposition_from_order(&sub, &min_fill_order(&sub))
            }
            Err(e) => return Err(e),
        };
        pieces.push(td.relabel(&map));
    }
    Ok(glue_along_tree(&tree, pieces))
}

/// Joins per-atom decompositions (in `tree.atoms()` order) into one for the whole graph.
///
/// Each cutset is a clique, so it sits inside a bag on both sides; one tree
/// edge between those bags keeps every vertex's bags connected.
pub fn glue_along_tree(
    tree: &DecompositionTree,
    pieces: Vec<TreeDecomposition>,
) -> TreeDecomposition {
    let mut pieces = pieces.into_iter();
    glue_node(tree, &mut pieces)
}

fn glue_node(
    node: &DecompositionTree,
    pieces: &mut impl Iterator<Item = TreeDecomposition>,
) -> TreeDecomposition {
    match node {
        DecompositionTree::Atom(_) => pieces.next().expect("one decomposition per atom"),
        DecompositionTree::Split {
            cutset,
            left,
            right,
        } => {
            let l = glue_node(left, pieces);
            let r = glue_node(right, pieces);
            let a = l.bag_containing(cutset).expect("cutset is a clique");
            let b = r.bag_containing(cutset).expect("cutset is a clique");
            let offset = l.bags.len();
            let mut out = l;
            out.edges
                .extend(r.edges.iter().map(|&(x, y)| (x + offset, y + offset)));
            out.bags.extend(r.bags);
            out.edges.push((a, b + offset));
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn width_of(f: &Graph) -> isize {
        let td = skeleton_tree_decomposition(f, &Limits::default())
            .unwrap()
            .unwrap();
        td.validate(f).unwrap();
        td.width()
    }

    #[test]
    fn skeleton_widths() {
        assert_eq!(width_of(&named::hole(5).unwrap()), 2);
        assert!(width_of(&named::cube()) <= 4);
        assert_eq!(width_of(&named::hole(12).unwrap()), 2);
    }

    #[test]
    fn triangles_are_refused() {
        let r = skeleton_tree_decomposition(&named::complete(3), &Limits::default()).unwrap();
        assert!(matches!(r, Err(SkeletonWidthReject::Triangle(_))));
    }

    #[test]
    fn wide_triangle_free_graph_is_rejected() {
        // K_{7,7} is triangle-free with treewidth 7.
        let g = named::complete_bipartite(7, 7);
        let r = skeleton_tree_decomposition(&g, &Limits::default()).unwrap();
        assert_eq!(r, Err(SkeletonWidthReject::WidthAboveFive));
    }

    #[test]
    fn validation_catches_broken_decompositions() {
        let g = named::path(3).unwrap();
        let good = TreeDecomposition {
            bags: vec![VertexSet::new(vec![0, 1]), VertexSet::new(vec![1, 2])],
            edges: vec![(0, 1)],
        };
        good.validate(&g).unwrap();
        let missing_edge = TreeDecomposition {
            bags: vec![VertexSet::new(vec![0, 1]), VertexSet::new(vec![2])],
            edges: vec![(0, 1)],
        };
        assert!(missing_edge.validate(&g).is_err());
        let split = TreeDecomposition {
            bags: vec![
                VertexSet::new(vec![0, 1]),
                VertexSet::new(vec![1, 2]),
                VertexSet::new(vec![0]),
            ],
            edges: vec![(0, 1), (1, 2)],
        };
        assert!(split.validate(&g).is_err());
        let not_tree = TreeDecomposition {
            bags: good.bags.clone(),
            edges: vec![],
        };
        assert!(not_tree.validate(&g).is_err());
    }

    #[test]
    fn lifting_blown_hole() {
        let g = named::blown_five_hole(1).unwrap();
        let SkeletonOutcome::Skeleton(sd) = extract_skeleton(&g) else {
            panic!()
        };
        let td = skeleton_tree_decomposition(&sd.skeleton, &Limits::default())
            .unwrap()
            .unwrap();
        let lifted = lift_tree_decomposition(&td, &sd).unwrap();
        lifted.validate(&g).unwrap();
        assert!(lifted.width() <= 5);
    }

    #[test]
    fn lifting_adds_universal_vertices() {
        let g = named::wheel(5).unwrap();
        let SkeletonOutcome::Skeleton(sd) = extract_skeleton(&g) else {
            panic!()
        };
        let td = skeleton_tree_decomposition(&sd.skeleton, &Limits::default())
            .unwrap()
            .unwrap();
        let lifted = lift_tree_decomposition(&td, &sd).unwrap();
        lifted.validate(&g).unwrap();
        assert_eq!(lifted.width(), td.width() + 1);
        let h = named::hole(6).unwrap();
        let SkeletonOutcome::Skeleton(sh) = extract_skeleton(&h) else {
            panic!()
        };
        let th = skeleton_tree_decomposition(&h, &Limits::default())
            .unwrap()
            .unwrap();
        assert_eq!(lift_tree_decomposition(&th, &sh).unwrap(), th);
    }

    #[test]
    fn whole_graph_decompositions_are_valid() {
        for seed in 0..30 {
            let g = named::gnp(14, 0.3, seed).unwrap();
            tree_decomposition(&g, &Limits::default())
                .unwrap()
                .validate(&g)
                .unwrap();
        }
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        tree_decomposition(&g, &Limits::default())
            .unwrap()
            .validate(&g)
            .unwrap();
    }
}
