//! Certified instances: good-ear skeletons, blow-ups with a universal clique,
//! and gluing along cliques.

use std::fmt;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::decomposition::find_clique_cutset;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::limits::Limits;
use crate::named::{prng, Prng};
use crate::oracles::forbidden::{find_four_hole, find_triangle};
use crate::oracles::{find_forbidden_induced, holes_bounded, is_hole, ForbiddenKind};
use crate::recognition::GraphClass;
use crate::treewidth::{Ear, EarSequence};

/// Knobs for [`generate_instance`] and [`random_skeleton`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorParams {
    pub seed: u64,
    /// Ears requested per skeleton.
    pub ears: usize,
    /// Longest ear, in edges.
    pub max_ear_len: usize,
    /// Largest clique substituted for a skeleton vertex.
    pub max_blowup: usize,
    /// Largest universal clique added to an atom.
    pub max_universal: usize,
    /// Number of gluing steps; the instance has `glue + 1` atoms.
    pub glue: usize,
    pub class: GraphClass,
    /// Shortest and longest base hole.
    pub min_base: usize,
    pub max_base: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            seed: 1,
            ears: 1,
            max_ear_len: 7,
            max_blowup: 2,
            max_universal: 1,
            glue: 1,
            class: GraphClass::CapFourHoleOddSignable,
            min_base: 5,
            max_base: 8,
        }
    }
}

impl GeneratorParams {
    fn check(&self) -> Result<()> {
        if self.max_ear_len < 2 {
            return Err(Error::InvalidParameter(
                "maximum ear length must be at least 2".into(),
            ));
        }
        if self.min_base < 5 || self.min_base > self.max_base {
            return Err(Error::InvalidParameter(format!(
                "base hole length range {}..={} must start at 5 or more",
                self.min_base, self.max_base
            )));
        }
        if self.class == GraphClass::CapEvenHoleFree
            && self.min_base == self.max_base
            && self.min_base.is_multiple_of(2)
        {
            return Err(Error::InvalidParameter(
                "even-hole-free skeletons need an odd base hole".into(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "ears": self.ears,
            "max_ear_len": self.max_ear_len,
            "max_blowup": self.max_blowup,
            "max_universal": self.max_universal,
            "glue": self.glue,
            "class": self.class.name(),
            "min_base": self.min_base,
            "max_base": self.max_base,
        })
    }
}

/// Why a valid ear is not good.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EarDefect {
    /// The apex has this many neighbours on the path, an even number.
    EvenApexCount(usize),
    /// A hole through the two ends and the apex, with a neighbour of the apex as wheel centre.
    WheelNearApex { hole: Vec<usize>, center: usize },
    /// A hole through both ends with the apex as wheel centre.
    WheelAtApex { hole: Vec<usize> },
}

impl fmt::Display for EarDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EarDefect::EvenApexCount(k) => write!(f, "apex has {k} neighbours on the path"),
            EarDefect::WheelNearApex { hole, center } => {
                write!(f, "wheel centred at {center} on hole {hole:?}")
            }
            EarDefect::WheelAtApex { hole } => {
                write!(f, "wheel centred at the apex on hole {hole:?}")
            }
        }
    }
}

/// Checks that `path` is a good ear of the hole `host` with apex `apex`.
///
/// `g` holds the graph after the addition; `before` lists the vertices it had
/// before. An `Err(InvalidEar)` means `path` is not an ear at all; `Some`
/// names the broken good-ear condition. The wheel conditions are checked by
/// enumerating every hole of the earlier graph.
pub fn validate_good_ear(
    g: &Graph,
    before: &[usize],
    host: &[usize],
    path: &[usize],
    apex: usize,
    limits: &Limits,
) -> Result<Option<EarDefect>> {
    let n = g.n();
    let bad = |m: &str| Err(Error::InvalidEar(m.to_string()));
    let mut old = vec![false; n];
    for &v in before {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        old[v] = true;
    }
    if path.len() < 3 || path.iter().any(|&v| v >= n) || apex >= n {
        return bad("path needs two ends and an interior");
    }
    let (x, z) = (path[0], path[path.len() - 1]);
    let interior = &path[1..path.len() - 1];
    if host.iter().any(|&v| v >= n || !old[v]) || !is_hole(g, host) {
        return bad("host is not a hole of the earlier graph");
    }
    let k = host.len();
    let Some(yi) = host.iter().position(|&v| v == apex) else {
        return bad("apex is not on the host");
    };
    let around = [host[(yi + 1) % k], host[(yi + k - 1) % k]];
    if !(around == [x, z] || around == [z, x]) {
        return bad("ends are not the two host neighbours of the apex");
    }
    if interior.iter().any(|&v| old[v]) {
        return bad("interior meets the earlier graph");
    }
    for (i, &a) in path.iter().enumerate() {
        for (j, &b) in path.iter().enumerate().skip(i + 1) {
            if a == b || g.has_edge(a, b) != (j == i + 1) {
                return bad("path is not chordless");
            }
        }
    }
    if interior.iter().any(|&p| {
        g.neighbors(p)
            .iter()
            .any(|&u| old[u] && u != x && u != z && u != apex)
    }) {
        return bad("interior sees the earlier graph beyond the ends and the apex");
    }
    let ear = Ear {
        host: host.to_vec(),
        path: path.to_vec(),
        apex,
    };
    if !is_hole(g, &ear.augmented_hole()) {
        return bad("path and host minus apex do not induce a hole");
    }

    let count = path.iter().filter(|&&p| g.has_edge(apex, p)).count();
    if count % 2 == 0 {
        return Ok(Some(EarDefect::EvenApexCount(count)));
    }
    if before.len() > limits.oracle_vertices {
        return Err(Error::TooLarge {
            what: "good-ear wheel check",
            size: before.len(),
            limit: limits.oracle_vertices,
        });
    }
    let (prev, map) = g.induced_subgraph(before)?;
    let local = |v: usize| map.binary_search(&v).unwrap();
    let (lx, ly, lz) = (local(x), local(apex), local(z));
    let mut on = vec![false; prev.n()];
    for h in holes_bounded(&prev, limits.cycle_budget)? {
        for &v in &h {
            on[v] = true;
        }
        let global = || h.iter().map(|&v| map[v]).collect::<Vec<_>>();
        let hits = |c: usize| h.iter().filter(|&&v| prev.has_edge(c, v)).count();
        if on[lx] && on[lz] {
            if on[ly] {
                let center = prev
                    .neighbors(ly)
                    .iter()
                    .copied()
                    .find(|&c| !on[c] && hits(c) >= 3);
                if let Some(c) = center {
                    return Ok(Some(EarDefect::WheelNearApex {
                        hole: global(),
                        center: map[c],
                    }));
                }
            } else if hits(ly) >= 3 {
                return Ok(Some(EarDefect::WheelAtApex { hole: global() }));
            }
        }
        for &v in &h {
            on[v] = false;
        }
    }
    Ok(None)
}

/// Tries per requested ear before giving up on it.
const EAR_ATTEMPTS: usize = 40;

/// Triangle-free skeleton grown from a random hole by good ears.
///
/// Each ear has an odd number of apex neighbours spaced at least three apart
/// along the path, so no triangle or 4-hole appears and ears have at least
/// six edges. Every candidate must pass [`validate_good_ear`] and leave no
/// clique cutset; for the even-hole-free class it must also leave no even
/// hole. Sampling that stalls returns fewer ears than requested.
pub fn random_skeleton(params: &GeneratorParams) -> Result<(Graph, EarSequence)> {
    params.check()?;
    Ok(sample_skeleton(
        params,
        params.class,
        &mut prng(params.seed),
    ))
}

fn sample_skeleton(
    params: &GeneratorParams,
    class: GraphClass,
    rng: &mut Prng,
) -> (Graph, EarSequence) {
    let limits = Limits::default();
    let lengths: Vec<usize> = (params.min_base..=params.max_base)
        .filter(|&k| class == GraphClass::CapFourHoleOddSignable || k % 2 == 1)
        .collect();
    let base_len = *lengths.choose(rng).unwrap();
    let mut g = crate::named::hole(base_len).unwrap();
    let mut es = EarSequence {
        base: (0..base_len).collect(),
        ears: vec![],
    };
    if params.max_ear_len < 6 {
        return (g, es);
    }
    'ears: for _ in 0..params.ears {
        let Ok(holes) = holes_bounded(&g, limits.cycle_budget) else {
            break;
        };
        for _ in 0..EAR_ATTEMPTS {
            let host = holes.choose(rng).unwrap();
            let k = host.len();
            let yi = rng.random_range(0..k);
            let (x, y, z) = (host[(yi + k - 1) % k], host[yi], host[(yi + 1) % k]);
            let Some(gaps) = sample_gaps(
                params.max_ear_len,
                class == GraphClass::CapEvenHoleFree,
                rng,
            ) else {
                continue;
            };
            let len: usize = gaps.iter().sum();
            let n = g.n();
            let mut path = vec![x];
            path.extend(n..n + len - 1);
            path.push(z);
            let mut b = GraphBuilder::new(n + len - 1);
            for (u, v) in g.edges() {
                b.add_edge(u, v);
            }
            for w in path.windows(2) {
                b.add_edge(w[0], w[1]);
            }
            let mut at = 0;
            for &gap in &gaps[..gaps.len() - 1] {
                at += gap;
                b.add_edge(y, path[at]);
            }
            let next = b.build();
            let before: Vec<usize> = (0..n).collect();
            if !matches!(
                validate_good_ear(&next, &before, host, &path, y, &limits),
                Ok(None)
            ) {
                continue;
            }
            if find_triangle(&next).is_some()
                || find_four_hole(&next).is_some()
                || find_clique_cutset(&next).is_some()
            {
                continue;
            }
            if class == GraphClass::CapEvenHoleFree
                && !matches!(
                    find_forbidden_induced(&next, ForbiddenKind::EvenHole, &limits),
                    Ok(None)
                )
            {
                continue;
            }
            es.ears.push(Ear {
                host: host.clone(),
                path,
                apex: y,
            });
            g = next;
            continue 'ears;
        }
        break;
    }
    (g, es)
}

/// Distances between consecutive apex neighbours along an ear: an even
/// number of gaps, each at least 3, summing to at most `max_len`. Odd gaps
/// only when `odd` is set.
fn sample_gaps(max_len: usize, odd: bool, rng: &mut Prng) -> Option<Vec<usize>> {
    let counts: Vec<usize> = (1..)
        .step_by(2)
        .map(|j| j + 1)
        .take_while(|&c| 3 * c <= max_len)
        .collect();
    let &count = counts.choose(rng)?;
    let step = if odd { 2 } else { 1 };
    let mut gaps = vec![3; count];
    let spare = (max_len - 3 * count) / step;
    for _ in 0..rng.random_range(0..=spare) {
        let i = rng.random_range(0..count);
        gaps[i] += step;
    }
    Some(gaps)
}

/// Identification of a clique of one atom with an equal-size clique of another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Joint {
    pub atoms: (usize, usize),
    /// Vertices of the first atom, matched position by position with `right`.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Disjoint union of `atoms` with the joint cliques identified.
///
/// Returns the glued graph and, per atom, the new id of each of its vertices.
/// New ids follow the first appearance of each merged vertex when the atoms
/// are listed one after another.
pub fn glue_atoms(atoms: &[Graph], joints: &[Joint]) -> Result<(Graph, Vec<Vec<usize>>)> {
    let offsets: Vec<usize> = atoms
        .iter()
        .scan(0, |acc, a| {
            let o = *acc;
            *acc += a.n();
            Some(o)
        })
        .collect();
    let total: usize = atoms.iter().map(|a| a.n()).sum();
    let mut atom_rep: Vec<usize> = (0..atoms.len()).collect();
    let mut rep: Vec<usize> = (0..total).collect();
    fn find(rep: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while rep[r] != r {
            r = rep[r];
        }
        rep[x] = r;
        r
    }
    for (i, j) in joints.iter().enumerate() {
        let (a, b) = j.atoms;
        if a >= atoms.len() || b >= atoms.len() {
            return Err(Error::InvalidJoint(format!(
                "joint {i} names a missing atom"
            )));
        }
        if j.left.len() != j.right.len() {
            return Err(Error::InvalidJoint(format!(
                "joint {i} matches cliques of different sizes"
            )));
        }
        for (side, set, g) in [
            ("first", &j.left, &atoms[a]),
            ("second", &j.right, &atoms[b]),
        ] {
            let mut s = set.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != set.len() || s.iter().any(|&v| v >= g.n()) || !g.is_clique(&s) {
                return Err(Error::InvalidJoint(format!(
                    "joint {i}: {side} set is not a clique"
                )));
            }
        }
        let (ra, rb) = (find(&mut atom_rep, a), find(&mut atom_rep, b));
        if ra == rb {
            return Err(Error::InvalidJoint(format!(
                "joint {i} closes a cycle of atoms"
            )));
        }
        atom_rep[ra] = rb;
        for (&u, &v) in j.left.iter().zip(&j.right) {
            let (ru, rv) = (
                find(&mut rep, offsets[a] + u),
                find(&mut rep, offsets[b] + v),
            );
            rep[ru.max(rv)] = ru.min(rv);
        }
    }
    let mut id = vec![usize::MAX; total];
    let mut next = 0;
    let mut maps = Vec::with_capacity(atoms.len());
    for (a, g) in atoms.iter().enumerate() {
        let mut map = Vec::with_capacity(g.n());
        for v in g.vertices() {
            let r = find(&mut rep, offsets[a] + v);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            map.push(id[r]);
        }
        maps.push(map);
    }
    let mut b = GraphBuilder::new(next);
    for (g, map) in atoms.iter().zip(&maps) {
        for (u, v) in g.edges() {
            b.add_edge(map[u], map[v]);
        }
    }
    Ok((b.build(), maps))
}

/// How one atom of a generated instance was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomProvenance {
    pub skeleton: Graph,
    pub ears: EarSequence,
    /// Clique size substituted for each skeleton vertex.
    pub sizes: Vec<usize>,
    pub universal: usize,
    /// Clique number of the atom, from the skeleton and the sizes.
    pub omega: usize,
    /// Instance id of every atom vertex: blocks in skeleton order, then the universal clique.
    pub vertices: Vec<usize>,
}

/// Everything needed to re-derive a generated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub params: GeneratorParams,
    pub atoms: Vec<AtomProvenance>,
    /// Joints in atom-local ids.
    pub joints: Vec<Joint>,
    pub omega: usize,
}

impl Provenance {
    /// Total ears placed, against the number requested.
    pub fn ears_placed(&self) -> (usize, usize) {
        let placed = self.atoms.iter().map(|a| a.ears.ears.len()).sum();
        (placed, self.params.ears * self.atoms.len())
    }

    /// JSON with 1-based vertex ids.
    pub fn to_json(&self) -> Value {
        let ids = |s: &[usize]| s.iter().map(|v| v + 1).collect::<Vec<_>>();
        let (placed, requested) = self.ears_placed();
        json!({
            "params": self.params.to_json(),
            "omega": self.omega,
            "ears_placed": placed,
            "ears_requested": requested,
            "atoms": self.atoms.iter().map(|a| json!({
                "skeleton": a.skeleton.to_text(),
                "ear_sequence": a.ears.to_json(),
                "sizes": a.sizes,
                "universal": a.universal,
                "omega": a.omega,
                "vertices": ids(&a.vertices),
            })).collect::<Vec<_>>(),
            "joints": self.joints.iter().map(|j| json!({
                "atoms": [j.atoms.0 + 1, j.atoms.1 + 1],
                "left": ids(&j.left),
                "right": ids(&j.right),
            })).collect::<Vec<_>>(),
        })
    }
}

/// A generated graph with its construction record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedInstance {
    pub graph: Graph,
    pub provenance: Provenance,
}

/// Random member of `params.class`.
///
/// Builds `glue + 1` atoms, each a skeleton from good ears, blown up with
/// clique sizes in `1..=max_blowup` and given a universal clique of size at
/// most `max_universal`. An atom with a universal clique gets an
/// even-hole-free skeleton, as both classes require. Each later atom is
/// glued to a random earlier one along a clique lying inside one blown-up
/// vertex plus the universal clique, which no hole meets in two vertices.
pub fn generate_instance(params: &GeneratorParams) -> Result<GeneratedInstance> {
    params.check()?;
    let mut rng = prng(params.seed);
    let mut atoms = Vec::new();
    let mut graphs = Vec::new();
    for _ in 0..=params.glue {
        let universal = rng.random_range(0..=params.max_universal);
        let class = if universal > 0 {
            GraphClass::CapEvenHoleFree
        } else {
            params.class
        };
        let (skeleton, ears) = sample_skeleton(params, class, &mut rng);
        let sizes: Vec<usize> = (0..skeleton.n())
            .map(|_| rng.random_range(1..=params.max_blowup.max(1)))
            .collect();
        let graph = skeleton.blow_up(&sizes)?.add_universal_clique(universal);
        let pair = skeleton
            .edges()
            .map(|(v, w)| sizes[v] + sizes[w])
            .max()
            .unwrap_or(0);
        let omega = universal + pair.max(sizes.iter().copied().max().unwrap_or(0));
        atoms.push(AtomProvenance {
            skeleton,
            ears,
            sizes,
            universal,
            omega,
            vertices: vec![],
        });
        graphs.push(graph);
    }
    let mut joints = Vec::new();
    for i in 1..atoms.len() {
        let j = rng.random_range(0..i);
        let (ci, cj) = (
            glue_clique(&atoms[i], &mut rng),
            glue_clique(&atoms[j], &mut rng),
        );
        let size = rng.random_range(1..=ci.len().min(cj.len()));
        joints.push(Joint {
            atoms: (j, i),
            left: cj[..size].to_vec(),
            right: ci[..size].to_vec(),
        });
    }
    let (graph, maps) = glue_atoms(&graphs, &joints)?;
    for (a, map) in atoms.iter_mut().zip(maps) {
        a.vertices = map;
    }
    let omega = atoms.iter().map(|a| a.omega).max().unwrap_or(0);
    Ok(GeneratedInstance {
        graph,
        provenance: Provenance {
            params: params.clone(),
            atoms,
            joints,
            omega,
        },
    })
}

/// One blown-up vertex plus the universal clique, in atom ids.
fn glue_clique(atom: &AtomProvenance, rng: &mut Prng) -> Vec<usize> {
    let v = rng.random_range(0..atom.sizes.len());
    let start: usize = atom.sizes[..v].iter().sum();
    let total: usize = atom.sizes.iter().sum();
    (start..start + atom.sizes[v])
        .chain(total..total + atom.universal)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::clique_cutset_tree;
    use crate::named;
    use crate::oracles::odd_signable_signing;

    /// C5 = 0..5 with apex 0 between 1 and 4; ear of length 4 from 1 to 4 through 5, 6, 7.
    fn short_ear(apex_sees_middle: bool) -> (Graph, Vec<usize>) {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let path = vec![1, 5, 6, 7, 4];
        edges.extend(path.windows(2).map(|w| (w[0], w[1])));
        if apex_sees_middle {
            edges.push((0, 6));
        }
        (Graph::from_edges(8, edges).unwrap(), path)
    }

    #[test]
    fn apex_parity() {
        let host: Vec<usize> = (0..5).collect();
        let before: Vec<usize> = (0..5).collect();
        let (g, path) = short_ear(true);
        assert_eq!(
            validate_good_ear(&g, &before, &host, &path, 0, &Limits::default()).unwrap(),
            None
        );
        let (g, path) = short_ear(false);
        assert_eq!(
            validate_good_ear(&g, &before, &host, &path, 0, &Limits::default()).unwrap(),
            Some(EarDefect::EvenApexCount(2))
        );
    }

    #[test]
    fn one_interior_vertex() {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend([(1, 5), (5, 4), (0, 5)]);
        let g = Graph::from_edges(6, edges).unwrap();
        let r = validate_good_ear(
            &g,
            &[0, 1, 2, 3, 4],
            &[0, 1, 2, 3, 4],
            &[1, 5, 4],
            0,
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(r, None);
    }

    #[test]
    fn wheels_in_the_earlier_graph_spoil_the_ear() {
        // C5 0..5 plus a vertex 5 seeing 0, 2, 3 gives a wheel through 1, 0, 4 centred near the apex.
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend([(5, 0), (5, 2), (5, 3)]);
        let path = [1, 6, 7, 8, 4];
        edges.extend(path.windows(2).map(|w| (w[0], w[1])));
        edges.push((0, 7));
        let g = Graph::from_edges(9, edges).unwrap();
        let before: Vec<usize> = (0..6).collect();
        let r =
            validate_good_ear(&g, &before, &[0, 1, 2, 3, 4], &path, 0, &Limits::default()).unwrap();
        assert!(
            matches!(r, Some(EarDefect::WheelNearApex { center: 5, .. })),
            "{r:?}"
        );
    }

    #[test]
    fn non_ears_are_errors() {
        let (g, path) = short_ear(true);
        let before: Vec<usize> = (0..5).collect();
        assert!(
            validate_good_ear(&g, &before, &[0, 1, 2, 3, 4], &path, 2, &Limits::default()).is_err()
        );
        assert!(
            validate_good_ear(&g, &before, &[0, 1, 2, 4], &path, 0, &Limits::default()).is_err()
        );
        assert!(validate_good_ear(
            &g,
            &before,
            &[0, 1, 2, 3, 4],
            &[1, 5, 4],
            0,
            &Limits::default()
        )
        .is_err());
    }

    #[test]
    fn bare_base_hole() {
        let params = GeneratorParams {
            ears: 0,
            min_base: 7,
            max_base: 7,
            ..GeneratorParams::default()
        };
        let (g, es) = random_skeleton(&params).unwrap();
        assert_eq!(g, named::hole(7).unwrap());
        assert!(es.ears.is_empty());
    }

    #[test]
    fn skeletons_are_odd_signable_and_cutset_free() {
        for seed in 0..12 {
            for class in [
                GraphClass::CapFourHoleOddSignable,
                GraphClass::CapEvenHoleFree,
            ] {
                let params = GeneratorParams {
                    seed,
                    ears: 3,
                    max_ear_len: 8,
                    class,
                    ..GeneratorParams::default()
                };
                let (g, es) = random_skeleton(&params).unwrap();
                assert!(find_triangle(&g).is_none());
                assert!(find_clique_cutset(&g).is_none());
                assert!(odd_signable_signing(&g, &Limits::default())
                    .unwrap()
                    .is_some());
                assert_eq!(
                    g.n(),
                    es.base.len() + es.ears.iter().map(|e| e.interior().len()).sum::<usize>()
                );
                if class == GraphClass::CapEvenHoleFree {
                    let hit =
                        find_forbidden_induced(&g, ForbiddenKind::EvenHole, &Limits::default())
                            .unwrap();
                    assert!(hit.is_none(), "seed {seed}");
                }
            }
        }
    }

    #[test]
    fn ears_actually_get_placed() {
        let placed: usize = (0..10)
            .map(|seed| {
                let params = GeneratorParams {
                    seed,
                    ears: 2,
                    max_ear_len: 8,
                    ..GeneratorParams::default()
                };
                random_skeleton(&params).unwrap().1.ears.len()
            })
            .sum();
        assert!(placed >= 10, "only {placed} ears over ten seeds");
    }

    #[test]
    fn blown_five_hole_from_params() {
        let params = GeneratorParams {
            ears: 0,
            min_base: 5,
            max_base: 5,
            max_blowup: 1,
            max_universal: 0,
            glue: 0,
            ..GeneratorParams::default()
        };
        let inst = generate_instance(&params).unwrap();
        assert_eq!(inst.graph, named::hole(5).unwrap());
        assert_eq!(inst.provenance.omega, 2);
    }

    #[test]
    fn gluing() {
        let t = named::complete(3);
        let (g, maps) = glue_atoms(
            &[t.clone(), t],
            &[Joint {
                atoms: (0, 1),
                left: vec![0, 1],
                right: vec![1, 2],
            }],
        )
        .unwrap();
        assert_eq!((g.n(), g.m()), (4, 5));
        assert_eq!(maps[1], vec![3, 0, 1]);
        let single = named::hole(5).unwrap();
        assert_eq!(
            glue_atoms(std::slice::from_ref(&single), &[]).unwrap().0,
            single
        );
        let c = named::hole(5).unwrap();
        let bad = Joint {
            atoms: (0, 1),
            left: vec![0, 2],
            right: vec![0, 1],
        };
        assert!(glue_atoms(&[c.clone(), c.clone()], &[bad]).is_err());
        let j = |a, b| Joint {
            atoms: (a, b),
            left: vec![0],
            right: vec![0],
        };
        assert!(glue_atoms(&[c.clone(), c.clone(), c], &[j(0, 1), j(1, 2), j(2, 0)]).is_err());
    }

    #[test]
    fn glued_blow_ups_split_on_the_shared_edge() {
        let blown = named::blown_five_hole(1).unwrap();
        let joint = Joint {
            atoms: (0, 1),
            left: vec![0, 1],
            right: vec![2, 3],
        };
        let (g, maps) = glue_atoms(&[blown.clone(), blown], &[joint]).unwrap();
        let tree = clique_cutset_tree(&g);
        tree.validate(&g).unwrap();
        let mut atoms: Vec<Vec<usize>> = tree.atoms().into_iter().map(|a| a.to_vec()).collect();
        let mut expected: Vec<Vec<usize>> = maps.iter().map(|m| sorted(m)).collect();
        atoms.sort();
        expected.sort();
        assert_eq!(atoms, expected);
    }

    #[test]
    fn decomposition_recovers_generated_atoms() {
        for seed in 1..40 {
            let params = GeneratorParams {
                seed,
                glue: 3,
                ..GeneratorParams::default()
            };
            let inst = generate_instance(&params).unwrap();
            let mut atoms: Vec<Vec<usize>> = clique_cutset_tree(&inst.graph)
                .atoms()
                .into_iter()
                .map(|a| a.to_vec())
                .collect();
            let mut expected: Vec<Vec<usize>> = inst
                .provenance
                .atoms
                .iter()
                .map(|a| sorted(&a.vertices))
                .collect();
            atoms.sort();
            expected.sort();
            assert_eq!(atoms, expected, "seed {seed}");
        }
    }

    fn sorted(v: &[usize]) -> Vec<usize> {
        let mut v = v.to_vec();
        v.sort_unstable();
        v
    }

    #[test]
    fn generation_is_deterministic() {
        for seed in 0..5 {
            let params = GeneratorParams {
                seed,
                ..GeneratorParams::default()
            };
            let a = generate_instance(&params).unwrap();
            let b = generate_instance(&params).unwrap();
            assert_eq!(a.graph.to_text(), b.graph.to_text());
            assert_eq!(a.provenance.to_json(), b.provenance.to_json());
        }
    }
}
