//! True twins, skeletons of atoms, and the clique number read off a skeleton.

use serde_json::{json, Value};

use crate::decomposition::find_clique_cutset;
use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::oracles::forbidden::find_triangle;

/// Classes of the relation `N[u] = N[v]`, each sorted, ordered by least vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPartition {
    pub classes: Vec<VertexSet>,
}

impl TwinPartition {
    /// `class_of[v]` = index of the class holding `v`.
    pub fn class_index(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (i, c) in self.classes.iter().enumerate() {
            for &v in c.iter() {
                out[v] = i;
            }
        }
        out
    }
}

/// True-twin classes by partition refinement.
///
/// Starting from one class, each closed neighbourhood `N[v]` splits every
/// class it meets into the part inside and the part outside. Each vertex
/// moves once per neighbour, so the total work is `O(n + m)`.
pub fn twin_classes(g: &Graph) -> TwinPartition {
    let n = g.n();
    if n == 0 {
        return TwinPartition { classes: vec![] };
    }
    let mut members: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut class_of = vec![0usize; n];
    let mut pos: Vec<usize> = (0..n).collect();
    // `split_to[c]` is the class receiving the moved part of `c` during round `stamp[c]`.
    let mut split_to: Vec<usize> = vec![0];
    let mut stamp: Vec<usize> = vec![usize::MAX];
    for v in 0..n {
        for u in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
            let c = class_of[u];
            if stamp[c] != v {
                stamp[c] = v;
                split_to[c] = members.len();
                members.push(Vec::new());
                split_to.push(0);
                stamp.push(usize::MAX);
            }
            // Swap-remove u from its class, then append to the new part.
            let i = pos[u];
            let last = *members[c].last().unwrap();
            let len = members[c].len();
            members[c].swap(i, len - 1);
            pos[last] = i;
            members[c].pop();
            let d = split_to[c];
            pos[u] = members[d].len();
            members[d].push(u);
            class_of[u] = d;
        }
    }
    // A class moved entirely lives on under its new index; the old slot stays empty.
    let mut classes: Vec<VertexSet> = members
        .into_iter()
        .filter(|m| !m.is_empty())
        .map(VertexSet::new)
        .collect();
    classes.sort_by_key(|c| c[0]);
    TwinPartition { classes }
}

/// An atom written as a triangle-free skeleton `F` whose vertices are blown up
/// into cliques, plus a universal clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonDecomposition {
    /// The skeleton; vertex `i` stands for `cliques[i]`.
    pub skeleton: Graph,
    /// `K_v` for each skeleton vertex, as atom vertex ids; ordered by least member.
    pub cliques: Vec<VertexSet>,
    /// The universal vertices of the atom.
    pub universal: VertexSet,
}

/// Why an atom does not have the expected skeleton shape. Ids are atom vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkeletonReject {
    Triangle([usize; 3]),
    CliqueCutset(VertexSet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkeletonOutcome {
    Complete,
    Skeleton(SkeletonDecomposition),
    Reject(SkeletonReject),
}

/// Splits an atom into universal clique, twin classes and skeleton.
///
/// The skeleton takes the least vertex of each class. A triangle or a clique
/// cutset in the skeleton means the atom is not a blown-up triangle-free
/// graph plus universal clique, and is reported as a rejection.
pub fn extract_skeleton(atom: &Graph) -> SkeletonOutcome {
    let n = atom.n();
    if atom.is_complete() {
        return SkeletonOutcome::Complete;
    }
    let universal: VertexSet = atom
        .vertices()
        .filter(|&v| atom.degree(v) + 1 == n)
        .collect();
    let rest: Vec<usize> = atom
        .vertices()
        .filter(|&v| !universal.contains(v))
        .collect();
    let (inner, map) = atom.induced_subgraph(&rest).unwrap();
    let cliques: Vec<VertexSet> = twin_classes(&inner)
        .classes
        .into_iter()
        .map(|c| c.iter().map(|&i| map[i]).collect())
        .collect();
    let reps: Vec<usize> = cliques.iter().map(|c| c[0]).collect();
    let (skeleton, _) = atom.induced_subgraph(&reps).unwrap();
    let skeleton = skeleton.without_weights();
    if let Some(t) = find_triangle(&skeleton) {
        let v = &t.vertices;
        return SkeletonOutcome::Reject(SkeletonReject::Triangle([
            reps[v[0]], reps[v[1]], reps[v[2]],
        ]));
    }
    if let Some(split) = find_clique_cutset(&skeleton) {
        return SkeletonOutcome::Reject(SkeletonReject::CliqueCutset(
            split.cutset.iter().map(|&i| reps[i]).collect(),
        ));
    }
    SkeletonOutcome::Skeleton(SkeletonDecomposition {
        skeleton,
        cliques,
        universal,
    })
}

impl SkeletonDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.cliques.iter().map(|c| c.len()).collect()
    }

    /// Number of atom vertices.
    pub fn atom_order(&self) -> usize {
        self.cliques.iter().map(|c| c.len()).sum::<usize>() + self.universal.len()
    }

    /// Skeleton vertex holding each atom vertex, `None` for universal vertices.
    pub fn owner(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.atom_order()];
        for (i, c) in self.cliques.iter().enumerate() {
            for &v in c.iter() {
                out[v] = Some(i);
            }
        }
        out
    }

    /// JSON with 1-based ids: skeleton vertex `i + 1` maps to the listed atom vertices.
    pub fn to_json(&self) -> Value {
        let ids = |s: &VertexSet| s.iter().map(|v| v + 1).collect::<Vec<_>>();
        let map: serde_json::Map<String, Value> = self
            .cliques
            .iter()
            .enumerate()
            .map(|(i, c)| ((i + 1).to_string(), json!(ids(c))))
            .collect();
        json!({
            "skeleton": self.skeleton.to_text(),
            "cliques": map,
            "universal": ids(&self.universal),
        })
    }
}

/// Maximum clique size of the atom.
///
/// A triangle-free skeleton has only vertices and edges as cliques, so every
/// maximal clique of the atom is `U ∪ K_v` or `U ∪ K_v ∪ K_w` for an edge `vw`.
pub fn clique_number_via_skeleton(sd: &SkeletonDecomposition) -> usize {
    let k = sd.sizes();
    let single = k.iter().copied().max().unwrap_or(0);
    let pair = sd
        .skeleton
        .edges()
        .map(|(v, w)| k[v] + k[w])
        .max()
        .unwrap_or(0);
    sd.universal.len() + single.max(pair)
}

/// A maximum clique of the atom, as atom vertex ids.
pub fn max_clique_via_skeleton(sd: &SkeletonDecomposition) -> VertexSet {
    let k = sd.sizes();
    let best_single = (0..k.len()).max_by_key(|&v| (k[v], std::cmp::Reverse(v)));
    let best_pair = sd
        .skeleton
        .edges()
        .max_by_key(|&(v, w)| (k[v] + k[w], std::cmp::Reverse((v, w))));
    let mut out = sd.universal.clone();
    match (best_single, best_pair) {
        (_, Some((v, w))) if k[v] + k[w] >= best_single.map_or(0, |s| k[s]) => {
            out = out.union(&sd.cliques[v]).union(&sd.cliques[w]);
        }
        (Some(v), _) => out = out.union(&sd.cliques[v]),
        _ => {}
    }
    out
}

/// Rebuilds the atom: blow up the skeleton, add the universal clique, and
/// relabel blocks back to the atom ids they came from.
pub fn reconstruct_atom(sd: &SkeletonDecomposition) -> Graph {
    let blown = sd
        .skeleton
        .blow_up(&sd.sizes())
        .unwrap()
        .add_universal_clique(sd.universal.len());
    let label: Vec<usize> = sd
        .cliques
        .iter()
        .flat_map(|c| c.iter().copied())
        .chain(sd.universal.iter().copied())
        .collect();
    let mut b = GraphBuilder::new(label.len());
    for (x, y) in blown.edges() {
        b.add_edge(label[x], label[y]);
    }
    b.build()
}
