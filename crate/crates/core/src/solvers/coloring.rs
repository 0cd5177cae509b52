use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::decomposition::{clique_cutset_tree, DecompositionTree};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::oracles::{brute_chromatic, Certificate};
use crate::skeleton::{clique_number_via_skeleton, extract_skeleton, SkeletonOutcome};
use crate::treewidth::{
    lift_tree_decomposition, nice_decomposition, skeleton_tree_decomposition, NiceKind,
    TreeDecomposition,
};

/// Colour of every vertex, `0`-based; JSON output shifts to `1..=q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn num_colors(&self) -> usize {
        self.colors.iter().map(|&c| c + 1).max().unwrap_or(0)
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n() && g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }

    pub fn to_json(&self) -> Value {
        json!(self.colors.iter().map(|c| c + 1).collect::<Vec<_>>())
    }
}

/// Greedy colouring along the reverse of a min-degree elimination order.
///
/// The vertex removed last is coloured first; each vertex takes the smallest
/// colour unused by its coloured neighbours. Ties pick the smaller id.
pub fn greedy_color(g: &Graph) -> Coloring {
    let n = g.n();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = g.vertices().map(|v| (degree[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some((_, v)) = queue.pop_first() {
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                queue.remove(&(degree[u], u));
                degree[u] -= 1;
                queue.insert((degree[u], u));
            }
        }
    }
    let mut colors = vec![usize::MAX; n];
    let mut used = vec![usize::MAX; n + 1];
    for &v in order.iter().rev() {
        for &u in g.neighbors(v) {
            if colors[u] != usize::MAX {
                used[colors[u]] = v;
            }
        }
        colors[v] = (0..).find(|&c| used[c] != v).unwrap();
    }
    Coloring { colors }
}

/// Renumbers labels by first occurrence, so equal partitions compare equal.
fn canonical(labels: &mut [u8]) {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    for l in labels.iter_mut() {
        if map[*l as usize] == u8::MAX {
            map[*l as usize] = next;
            next += 1;
        }
        *l = map[*l as usize];
    }
}

/// A proper colouring with at most `q` colours, or `None` if there is none.
///
/// Dynamic programming over the nice form of `td`. A state is the partition
/// of the bag into colour classes; colours are interchangeable, so the
/// partition is all that matters below a bag. The witness is read back top
/// down, giving each vertex a colour where it is forgotten.
pub fn q_color(g: &Graph, td: &TreeDecomposition, q: usize) -> Result<Option<Coloring>> {
    if q < 1 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    if g.n() == 0 {
        return Ok(Some(Coloring { colors: vec![] }));
    }
    if q > 255 || td.bags.iter().any(|b| b.len() > 255) {
        return Err(Error::TooLarge {
            what: "colouring dynamic program",
            size: q.max(td.width() as usize + 1),
            limit: 255,
        });
    }
    let nice = nice_decomposition(td, g)?;
    type Table = BTreeMap<Vec<u8>, Vec<u8>>;
    let mut tables: Vec<Table> = Vec::with_capacity(nice.nodes.len());
    for node in &nice.nodes {
        let bag = &node.bag;
        let mut table = Table::new();
        match &node.kind {
            NiceKind::Leaf => {
                table.insert(vec![], vec![]);
            }
            NiceKind::Introduce { vertex, child } => {
                let p = bag.iter().position(|u| u == vertex).unwrap();
                for state in tables[*child].keys() {
                    let classes = state.iter().map(|&l| l + 1).max().unwrap_or(0);
                    let mut blocked = vec![false; classes as usize + 1];
                    for (i, &u) in bag.iter().filter(|&u| u != vertex).enumerate() {
                        if g.has_edge(*vertex, u) {
                            blocked[state[i] as usize] = true;
                        }
                    }
                    let top = if (classes as usize) < q {
                        classes
                    } else {
                        classes - 1
                    };
                    for c in (0..=top).filter(|&c| !blocked[c as usize]) {
                        let mut next = state.clone();
                        next.insert(p, c);
                        canonical(&mut next);
                        table.entry(next).or_insert_with(|| state.clone());
                    }
                }
            }
            NiceKind::Forget { vertex, child } => {
                let p = nice.nodes[*child]
                    .bag
                    .iter()
                    .position(|u| u == vertex)
                    .unwrap();
                for state in tables[*child].keys() {
                    let mut next = state.clone();
                    next.remove(p);
                    canonical(&mut next);
                    table.entry(next).or_insert_with(|| state.clone());
                }
            }
            NiceKind::Join { left, right } => {
                for state in tables[*left].keys() {
                    if tables[*right].contains_key(state) {
                        table.insert(state.clone(), state.clone());
                    }
                }
            }
        }
        tables.push(table);
    }
    let root = nice.root();
    let Some(first) = tables[root].keys().next().cloned() else {
        return Ok(None);
    };
    let mut colors = vec![usize::MAX; g.n()];
    for (i, &v) in nice.nodes[root].bag.iter().enumerate() {
        colors[v] = first[i] as usize;
    }
    let mut chosen: Vec<Option<Vec<u8>>> = vec![None; nice.nodes.len()];
    chosen[root] = Some(first);
    for i in (0..nice.nodes.len()).rev() {
        let state = chosen[i].take().unwrap();
        match &nice.nodes[i].kind {
            NiceKind::Leaf => {}
            NiceKind::Introduce { child, .. } => chosen[*child] = Some(tables[i][&state].clone()),
            NiceKind::Forget { vertex, child } => {
                let below = tables[i][&state].clone();
                let cbag = &nice.nodes[*child].bag;
                let p = cbag.iter().position(|u| u == vertex).unwrap();
                let mate = cbag
                    .iter()
                    .enumerate()
                    .find(|&(j, _)| j != p && below[j] == below[p]);
                colors[*vertex] = match mate {
                    Some((_, &u)) => colors[u],
                    None => {
                        let taken: BTreeSet<usize> = cbag
                            .iter()
                            .filter(|&u| u != vertex)
                            .map(|&u| colors[u])
                            .collect();
                        (0..).find(|c| !taken.contains(c)).unwrap()
                    }
                };
                chosen[*child] = Some(below);
            }
            NiceKind::Join { left, right } => {
                chosen[*left] = Some(state.clone());
                chosen[*right] = Some(state);
            }
        }
    }
    Ok(Some(Coloring { colors }))
}

/// Merges per-atom colourings into one colouring of `g`.
///
/// `atom_colorings[i]` colours `tree.atoms()[i]`, indexed by position in that
/// sorted vertex set. At each split the right side's colours are permuted to
/// agree with the left side on the cutset, which is a clique and so carries
/// distinct colours on both sides.
pub fn combine_colorings(
    g: &Graph,
    tree: &DecompositionTree,
    atom_colorings: &[Coloring],
    q: usize,
) -> Result<Coloring> {
    let atoms = tree.atoms();
    if atoms.len() != atom_colorings.len() {
        return Err(Error::InvalidColoring(format!(
            "{} colourings for {} atoms",
            atom_colorings.len(),
            atoms.len()
        )));
    }
    for (i, (atom, c)) in atoms.iter().zip(atom_colorings).enumerate() {
        let (sub, _) = g.induced_subgraph(atom)?;
        if !c.is_proper(&sub) {
            return Err(Error::InvalidColoring(format!(
                "colouring of atom {i} is not proper"
            )));
        }
        if c.num_colors() > q {
            return Err(Error::InvalidColoring(format!(
                "atom {i} uses {} colours, more than {q}",
                c.num_colors()
            )));
        }
    }
    let mut next = atom_colorings.iter();
    let merged = combine_node(g.n(), tree, &mut next, q);
    Ok(Coloring {
        colors: merged.into_iter().map(|c| c.unwrap_or(0)).collect(),
    })
}

fn combine_node<'a>(
    n: usize,
    node: &DecompositionTree,
    next: &mut impl Iterator<Item = &'a Coloring>,
    q: usize,
) -> Vec<Option<usize>> {
    match node {
        DecompositionTree::Atom(atom) => {
            let c = next.next().unwrap();
            let mut out = vec![None; n];
            for (i, &v) in atom.iter().enumerate() {
                out[v] = Some(c.colors[i]);
            }
            out
        }
        DecompositionTree::Split {
            cutset,
            left,
            right,
        } => {
            let mut out = combine_node(n, left, next, q);
            let r = combine_node(n, right, next, q);
            let mut perm = vec![usize::MAX; q];
            let mut used = vec![false; q];
            for &s in cutset.iter() {
                let (a, b) = (out[s].unwrap(), r[s].unwrap());
                perm[b] = a;
                used[a] = true;
            }
            let mut free = (0..q).filter(|&c| !used[c]);
            for p in perm.iter_mut().filter(|p| **p == usize::MAX) {
                *p = free.next().unwrap();
            }
            for v in 0..n {
                if let Some(c) = r[v] {
                    out[v] = Some(perm[c]);
                }
            }
            out
        }
    }
}

/// Chromatic number of one atom with an optimal colouring.
///
/// Complete atoms are trivial. An atom with a skeleton gets the lifted
/// decomposition and `q_color` for `q` rising from its clique number; the
/// decomposition is valid for every `q`, so the first success is optimal.
/// Anything else goes to the brute-force oracle under its guard.
pub fn atom_chromatic(atom: &Graph, limits: &Limits) -> Result<(usize, Coloring)> {
    let n = atom.n();
    match extract_skeleton(atom) {
        SkeletonOutcome::Complete => {
            return Ok((
                n,
                Coloring {
                    colors: (0..n).collect(),
                },
            ))
        }
        SkeletonOutcome::Skeleton(sd) => {
            if let Ok(Ok(td)) = skeleton_tree_decomposition(&sd.skeleton, limits) {
                let lifted = lift_tree_decomposition(&td, &sd)?;
                for q in clique_number_via_skeleton(&sd)..=n {
                    if let Some(c) = q_color(atom, &lifted, q)? {
                        return Ok((q, c));
                    }
                }
            }
        }
        SkeletonOutcome::Reject(_) => {}
    }
    match brute_chromatic(atom, limits) {
        Ok(Certificate::Coloring { k, colors }) => Ok((k, Coloring { colors })),
        Ok(_) => unreachable!(),
        Err(e) if e.is_undecided() => Err(Error::Unsupported(format!(
            "atom on {n} vertices has no skeleton and {e}"
        ))),
        Err(e) => Err(e),
    }
}

/// Chromatic number and an optimal colouring: the maximum over the atoms of
/// the clique cutset decomposition, with atom colourings merged along the cutsets.
pub fn chromatic_number(g: &Graph, limits: &Limits) -> Result<(usize, Coloring)> {
    if g.n() == 0 {
        return Ok((0, Coloring { colors: vec![] }));
    }
    let tree = clique_cutset_tree(g);
    let mut chi = 0;
    let mut parts = Vec::new();
    for atom in tree.atoms() {
        let (sub, _) = g.induced_subgraph(atom)?;
        let (k, c) = atom_chromatic(&sub, limits)?;
        chi = chi.max(k);
        parts.push(c);
    }
    let coloring = combine_colorings(g, &tree, &parts, chi)?;
    Ok((chi, coloring))
}
