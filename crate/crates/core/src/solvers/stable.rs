use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::decomposition::{clique_cutset_tree, DecompositionTree};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::limits::Limits;
use crate::oracles::{brute_max_clique, brute_mwss, Certificate};
use crate::skeleton::{
    extract_skeleton, max_clique_via_skeleton, SkeletonDecomposition, SkeletonOutcome,
};
use crate::treewidth::{
    nice_decomposition, skeleton_tree_decomposition, NiceKind, TreeDecomposition,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableSetResult {
    pub set: VertexSet,
    pub weight: i64,
}

impl StableSetResult {
    pub fn to_json(&self) -> Value {
        json!({ "weight": self.weight, "set": self.set.iter().map(|v| v + 1).collect::<Vec<_>>() })
    }
}

/// Counters for the run-time checks made while solving.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MwssTrace {
    /// Cutset vertices reweighted, and how many came out heavier than before.
    pub reweighted: usize,
    pub reweight_violations: usize,
    /// Restricted skeletons set up, and how many failed the twin and universality check.
    pub restrictions: usize,
    pub restriction_violations: usize,
    /// Subproblems handed to the brute-force oracle.
    pub brute_force: usize,
}

/// The weighted skeleton of an atom: the heaviest vertex of each class, ties
/// to the smaller id, plus the heaviest universal vertex adjacent to all of
/// them when the universal clique is nonempty.
///
/// Returns the graph and, for each of its vertices, the atom vertex it stands for.
/// A stable set of the atom holds at most one vertex per class, or one
/// universal vertex alone, so both graphs have the same optimum.
pub fn reduce_to_skeleton_weights(
    sd: &SkeletonDecomposition,
    weights: &[i64],
) -> (Graph, Vec<usize>) {
    let heaviest = |set: &VertexSet| {
        set.iter()
            .copied()
            .max_by_key(|&v| (weights[v], std::cmp::Reverse(v)))
    };
    let mut reps: Vec<usize> = sd.cliques.iter().map(|c| heaviest(c).unwrap()).collect();
    let k = reps.len();
    let mut b = GraphBuilder::new(k + usize::from(!sd.universal.is_empty()));
    for (u, v) in sd.skeleton.edges() {
        b.add_edge(u, v);
    }
    if let Some(u) = heaviest(&sd.universal) {
        for v in 0..k {
            b.add_edge(k, v);
        }
        reps.push(u);
    }
    let g = b
        .build()
        .with_weights(reps.iter().map(|&v| weights[v]).collect())
        .unwrap();
    (g, reps)
}

/// Maximum weight stable set by dynamic programming over the nice form of `td`.
///
/// States are stable subsets of a bag, as bit masks over bag positions; a
/// vertex's weight is counted where it is forgotten, or at the root. Weights
/// may be negative; the empty set is always a candidate.
pub fn stable_set_dp(g: &Graph, td: &TreeDecomposition) -> Result<StableSetResult> {
    if let Some(b) = td.bags.iter().find(|b| b.len() > 63) {
        return Err(Error::TooLarge {
            what: "stable set dynamic program",
            size: b.len(),
            limit: 63,
        });
    }
    let w = g.weight_vec();
    let nice = nice_decomposition(td, g)?;
    // Per node: state -> (value, child state).
    let mut tables: Vec<BTreeMap<u64, (i64, u64)>> = Vec::with_capacity(nice.nodes.len());
    for node in &nice.nodes {
        let bag = &node.bag;
        let mut table = BTreeMap::new();
        let offer = |t: &mut BTreeMap<u64, (i64, u64)>, s: u64, value: i64, from: u64| {
            let e = t.entry(s).or_insert((value, from));
            if value > e.0 {
                *e = (value, from);
            }
        };
        match &node.kind {
            NiceKind::Leaf => {
                table.insert(0, (0, 0));
            }
            NiceKind::Introduce { vertex, child } => {
                let p = bag.iter().position(|u| u == vertex).unwrap();
                let nbrs: u64 = bag
                    .iter()
                    .enumerate()
                    .filter(|&(_, &u)| g.has_edge(*vertex, u))
                    .fold(0, |m, (i, _)| m | 1 << i);
                for (&s, &(value, _)) in &tables[*child] {
                    let spread = (s & ((1 << p) - 1)) | ((s >> p) << (p + 1));
                    offer(&mut table, spread, value, s);
                    if spread & nbrs == 0 {
                        offer(&mut table, spread | 1 << p, value, s);
                    }
                }
            }
            NiceKind::Forget { vertex, child } => {
                let p = nice.nodes[*child]
                    .bag
                    .iter()
                    .position(|u| u == vertex)
                    .unwrap();
                for (&s, &(value, _)) in &tables[*child] {
                    let gain = if s >> p & 1 == 1 { w[*vertex] } else { 0 };
                    let squeezed = (s & ((1 << p) - 1)) | ((s >> (p + 1)) << p);
                    offer(&mut table, squeezed, value + gain, s);
                }
            }
            NiceKind::Join { left, right } => {
                for (&s, &(a, _)) in &tables[*left] {
                    if let Some(&(b, _)) = tables[*right].get(&s) {
                        table.insert(s, (a + b, s));
                    }
                }
            }
        }
        tables.push(table);
    }
    let root = nice.root();
    let rbag = &nice.nodes[root].bag;
    let bag_weight = |s: u64| {
        rbag.iter()
            .enumerate()
            .filter(|&(i, _)| s >> i & 1 == 1)
            .map(|(_, &v)| w[v])
            .sum::<i64>()
    };
    let mut best: Option<(i64, u64)> = None;
    for (&s, &(value, _)) in &tables[root] {
        let total = value + bag_weight(s);
        if best.is_none_or(|(b, _)| total > b) {
            best = Some((total, s));
        }
    }
    let (weight, top) = best.unwrap();
    let mut chosen = vec![None; nice.nodes.len()];
    chosen[root] = Some(top);
    let mut set = Vec::new();
    for i in (0..nice.nodes.len()).rev() {
        let s = chosen[i].unwrap();
        let bag = &nice.nodes[i].bag;
        set.extend(
            bag.iter()
                .enumerate()
                .filter(|&(j, _)| s >> j & 1 == 1)
                .map(|(_, &v)| v),
        );
        let from = tables[i][&s].1;
        match &nice.nodes[i].kind {
            NiceKind::Leaf => {}
            NiceKind::Introduce { child, .. } | NiceKind::Forget { child, .. } => {
                chosen[*child] = Some(from)
            }
            NiceKind::Join { left, right } => {
                chosen[*left] = Some(s);
                chosen[*right] = Some(s);
            }
        }
    }
    Ok(StableSetResult {
        set: set.into_iter().collect(),
        weight,
    })
}

enum AtomShape {
    Complete,
    Skeleton(SkeletonDecomposition, TreeDecomposition),
    Other,
}

/// An atom `G[L]` prepared once for the many stable-set subproblems `G[L \ X]`.
struct AtomSolver {
    graph: Graph,
    /// Atom vertex -> vertex of the whole graph.
    map: Vec<usize>,
    shape: AtomShape,
}

impl AtomSolver {
    fn new(g: &Graph, atom: &VertexSet, limits: &Limits) -> Result<Self> {
        let (graph, map) = g.induced_subgraph(atom)?;
        let graph = graph.without_weights();
        let shape = match extract_skeleton(&graph) {
            SkeletonOutcome::Complete => AtomShape::Complete,
            SkeletonOutcome::Reject(_) => AtomShape::Other,
            SkeletonOutcome::Skeleton(sd) => {
                match skeleton_tree_decomposition(&sd.skeleton, limits) {
                    Ok(Ok(td)) => AtomShape::Skeleton(sd, td),
                    Ok(Err(_)) | Err(Error::BudgetExhausted { .. }) => AtomShape::Other,
                    Err(e) => return Err(e),
                }
            }
        };
        Ok(AtomSolver { graph, map, shape })
    }

    /// Maximum weight stable set of the atom minus the vertices with `removed[v]`
    /// (atom ids), under global weights `w`; the result is in global ids.
    fn solve(
        &self,
        removed: &[bool],
        w: &[i64],
        limits: &Limits,
        trace: &mut MwssTrace,
    ) -> Result<VertexSet> {
        let local_w: Vec<i64> = self.map.iter().map(|&v| w[v]).collect();
        let alive: Vec<usize> = self.graph.vertices().filter(|&v| !removed[v]).collect();
        let local: Vec<usize> = match &self.shape {
            AtomShape::Complete => {
                let best = alive
                    .iter()
                    .copied()
                    .max_by_key(|&v| (local_w[v], std::cmp::Reverse(v)));
                best.filter(|&v| local_w[v] > 0).into_iter().collect()
            }
            AtomShape::Skeleton(sd, td) => {
                let (rsd, keep) = restrict_skeleton(sd, removed);
                trace.restrictions += 1;
                if !restriction_sound(&self.graph, &rsd, &alive) {
                    trace.restriction_violations += 1;
                }
                let (f, reps) = reduce_to_skeleton_weights(&rsd, &local_w);
                let mut index = vec![usize::MAX; sd.cliques.len()];
                for (i, &v) in keep.iter().enumerate() {
                    index[v] = i;
                }
                let k = keep.len();
                let mut ftd = TreeDecomposition {
                    bags: td
                        .bags
                        .iter()
                        .map(|b| {
                            b.iter()
                                .filter(|&&v| index[v] != usize::MAX)
                                .map(|&v| index[v])
                                .collect()
                        })
                        .collect(),
                    edges: td.edges.clone(),
                };
                if f.n() > k {
                    for b in &mut ftd.bags {
                        *b = b.union(&VertexSet::new(vec![k]));
                    }
                }
                stable_set_dp(&f, &ftd)?
                    .set
                    .iter()
                    .map(|&i| reps[i])
                    .collect()
            }
            AtomShape::Other => {
                trace.brute_force += 1;
                let (sub, back) = self
                    .graph
                    .clone()
                    .with_weights(local_w)?
                    .induced_subgraph(&alive)?;
                let Certificate::StableSet { vertices, .. } = brute_mwss(&sub, limits)? else {
                    unreachable!()
                };
                vertices.iter().map(|&i| back[i]).collect()
            }
        };
        Ok(local.iter().map(|&v| self.map[v]).collect())
    }
}

/// The skeleton decomposition of `G[V \ X]` obtained by shrinking each class and
/// the universal clique, dropping emptied classes. Also returns the surviving skeleton vertices.
fn restrict_skeleton(
    sd: &SkeletonDecomposition,
    removed: &[bool],
) -> (SkeletonDecomposition, Vec<usize>) {
    let shrink =
        |s: &VertexSet| -> VertexSet { s.iter().copied().filter(|&v| !removed[v]).collect() };
    let keep: Vec<usize> = (0..sd.cliques.len())
        .filter(|&i| sd.cliques[i].iter().any(|&v| !removed[v]))
        .collect();
    let (skeleton, _) = sd.skeleton.induced_subgraph(&keep).unwrap();
    let rsd = SkeletonDecomposition {
        skeleton,
        cliques: keep.iter().map(|&i| shrink(&sd.cliques[i])).collect(),
        universal: shrink(&sd.universal),
    };
    (rsd, keep)
}

/// Each shrunken class is a clique of true twins in `G[alive]` and the shrunken
/// universal clique sees all of `alive`.
fn restriction_sound(g: &Graph, rsd: &SkeletonDecomposition, alive: &[usize]) -> bool {
    let closed = |v: usize| -> Vec<usize> {
        alive
            .iter()
            .copied()
            .filter(|&u| u == v || g.has_edge(u, v))
            .collect()
    };
    let classes_ok = rsd.cliques.iter().all(|c| {
        let first = closed(c[0]);
        c.iter().all(|&v| closed(v) == first)
    });
    classes_ok
        && rsd
            .universal
            .iter()
            .all(|&u| closed(u).len() == alive.len())
}

/// Maximum weight stable set, using the weights stored on `g`.
pub fn mwss(g: &Graph, limits: &Limits) -> Result<StableSetResult> {
    Ok(mwss_with_trace(g, limits)?.0)
}

/// [`mwss`] together with the counters of its run-time checks.
///
/// Walks the clique cutset decomposition: for a split of atom `A ∪ S` off
/// the rest `B ∪ S`, solve `A` alone (`I'`) and `A \ N(v)` for every `v` in
/// `S` (`I_v`), give `v` the weight `w(v) + w(I_v) - w(I')`, solve `B ∪ S`
/// under the new weights, and extend its optimum by `I_v` if it uses `v`, by
/// `I'` otherwise.
pub fn mwss_with_trace(g: &Graph, limits: &Limits) -> Result<(StableSetResult, MwssTrace)> {
    let tree = clique_cutset_tree(g);
    let mut trace = MwssTrace::default();
    let mut w = g.weight_vec();
    let set = solve_node(g, &tree, &mut w, limits, &mut trace)?;
    let original = g.weight_vec();
    let weight = set.iter().map(|&v| original[v]).sum();
    Ok((StableSetResult { set, weight }, trace))
}

fn solve_node(
    g: &Graph,
    node: &DecompositionTree,
    w: &mut [i64],
    limits: &Limits,
    trace: &mut MwssTrace,
) -> Result<VertexSet> {
    match node {
        DecompositionTree::Atom(atom) => {
            let solver = AtomSolver::new(g, atom, limits)?;
            solver.solve(&vec![false; atom.len()], w, limits, trace)
        }
        DecompositionTree::Split {
            cutset,
            left,
            right,
        } => {
            let l = left.vertices();
            let solver = AtomSolver::new(g, &l, limits)?;
            let local = |v: usize| l.binary_search(&v).unwrap();
            let mut removed = vec![false; l.len()];
            for &s in cutset.iter() {
                removed[local(s)] = true;
            }
            let weight_of = |set: &VertexSet, w: &[i64]| set.iter().map(|&v| w[v]).sum::<i64>();
            let base = solver.solve(&removed, w, limits, trace)?;
            let base_weight = weight_of(&base, w);
            let mut per_vertex = Vec::with_capacity(cutset.len());
            for &s in cutset.iter() {
                let mut without = removed.clone();
                for &u in g.neighbors(s) {
                    if let Ok(i) = l.binary_search(&u) {
                        without[i] = true;
                    }
                }
                let iv = solver.solve(&without, w, limits, trace)?;
                per_vertex.push(iv);
            }
            for (&s, iv) in cutset.iter().zip(&per_vertex) {
                let new = w[s] + weight_of(iv, w) - base_weight;
                trace.reweighted += 1;
                if new > w[s] {
                    trace.reweight_violations += 1;
                }
                w[s] = new;
            }
            let rest = solve_node(g, right, w, limits, trace)?;
            let hit = cutset.iter().position(|&s| rest.contains(s));
            Ok(match hit {
                Some(i) => rest.union(&per_vertex[i]),
                None => rest.union(&base),
            })
        }
    }
}

/// Largest clique: per atom from the skeleton, or by brute force when an atom has none.
pub fn clique_number(g: &Graph, limits: &Limits) -> Result<(usize, VertexSet)> {
    let tree = clique_cutset_tree(g);
    let mut best = VertexSet::empty();
    for atom in tree.atoms() {
        let (sub, map) = g.induced_subgraph(atom)?;
        let local: VertexSet = match extract_skeleton(&sub) {
            SkeletonOutcome::Complete => sub.vertices().collect(),
            SkeletonOutcome::Skeleton(sd) => max_clique_via_skeleton(&sd),
            SkeletonOutcome::Reject(_) => match brute_max_clique(&sub, limits) {
                Ok(Certificate::Clique { vertices }) => vertices.into_iter().collect(),
                Ok(_) => unreachable!(),
                Err(e) if e.is_undecided() => {
                    return Err(Error::Unsupported(format!(
                        "atom on {} vertices has no skeleton and {e}",
                        sub.n()
                    )))
                }
                Err(e) => return Err(e),
            },
        };
        if local.len() > best.len() {
            best = local.iter().map(|&v| map[v]).collect();
        }
    }
    Ok((best.len(), best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn weighted(g: Graph, w: &[i64]) -> Graph {
        g.with_weights(w.to_vec()).unwrap()
    }

    #[test]
    fn small_paths() {
        let limits = Limits::default();
        let r = mwss(&weighted(named::path(3).unwrap(), &[1, 3, 1]), &limits).unwrap();
        assert_eq!((r.weight, r.set.to_vec()), (3, vec![1]));
        let r = mwss(&weighted(named::path(3).unwrap(), &[2, 3, 2]), &limits).unwrap();
        assert_eq!((r.weight, r.set.to_vec()), (4, vec![0, 2]));
    }

    #[test]
    fn blown_hole_has_stability_two() {
        let g = named::blown_five_hole(1).unwrap();
        let r = mwss(&g, &Limits::default()).unwrap();
        assert_eq!(r.weight, 2);
        assert!(g.is_stable(&r.set));
    }

    #[test]
    fn skeleton_weights() {
        let SkeletonOutcome::Skeleton(sd) = extract_skeleton(&named::blown_five_hole(1).unwrap())
        else {
            panic!()
        };
        let (f, reps) = reduce_to_skeleton_weights(&sd, &[1; 10]);
        assert_eq!(f.without_weights(), named::hole(5).unwrap());
        assert_eq!(reps, vec![0, 2, 4, 6, 8]);
        let mut w = vec![1; 10];
        w[1] = 5;
        let (f, reps) = reduce_to_skeleton_weights(&sd, &w);
        assert_eq!((f.weight(0), reps[0]), (5, 1));

        let SkeletonOutcome::Skeleton(sd) = extract_skeleton(&named::wheel(5).unwrap()) else {
            panic!()
        };
        let (f, _) = reduce_to_skeleton_weights(&sd, &[1; 6]);
        assert_eq!(f.n(), 6);
        assert_eq!(f.degree(5), 5);
        assert_eq!(mwss(&f, &Limits::default()).unwrap().weight, 2);
    }

    #[test]
    fn negative_weights_never_help() {
        let g = weighted(named::hole(5).unwrap(), &[-1, -2, -3, -4, -5]);
        let r = mwss(&g, &Limits::default()).unwrap();
        assert_eq!(r.weight, 0);
        assert!(r.set.is_empty());
        let td =
            crate::treewidth::decomposition_from_order(&g, &crate::treewidth::min_fill_order(&g));
        assert_eq!(stable_set_dp(&g, &td).unwrap().weight, 0);
    }

    #[test]
    fn matches_brute_force_with_random_weights() {
        use rand::Rng;
        let limits = Limits::default();
        let mut rng = named::prng(9);
        for seed in 0..60 {
            let g = named::gnp(12, 0.3, seed).unwrap();
            let w: Vec<i64> = (0..12).map(|_| rng.random_range(0..=100)).collect();
            let g = weighted(g, &w);
            let (r, trace) = mwss_with_trace(&g, &limits).unwrap();
            let Certificate::StableSet { weight, .. } = brute_mwss(&g, &limits).unwrap() else {
                unreachable!()
            };
            assert_eq!(r.weight, weight, "seed {seed}");
            assert!(g.is_stable(&r.set));
            assert_eq!(trace.reweight_violations, 0);
            assert_eq!(trace.restriction_violations, 0);
        }
    }

    #[test]
    fn clique_numbers() {
        let limits = Limits::default();
        assert_eq!(
            clique_number(&named::blown_five_hole(1).unwrap(), &limits)
                .unwrap()
                .0,
            4
        );
        assert_eq!(clique_number(&named::hajos(), &limits).unwrap().0, 3);
        let (k, c) = clique_number(&named::gnp(14, 0.5, 3).unwrap(), &limits).unwrap();
        let g = named::gnp(14, 0.5, 3).unwrap();
        assert!(g.is_clique(&c) && c.len() == k);
        let Certificate::Clique { vertices } = brute_max_clique(&g, &limits).unwrap() else {
            unreachable!()
        };
        assert_eq!(k, vertices.len());
    }
}
