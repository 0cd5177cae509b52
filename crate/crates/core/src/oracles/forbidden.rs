use std::collections::VecDeque;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use super::cycles::{is_hole, visit_chordless_cycles};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ForbiddenKind {
    EvenHole,
    FourHole,
    Cap,
    Theta,
    Prism,
    EvenWheel,
    Triangle,
}

impl ForbiddenKind {
    pub const ALL: [ForbiddenKind; 7] = [
        ForbiddenKind::EvenHole,
        ForbiddenKind::FourHole,
        ForbiddenKind::Cap,
        ForbiddenKind::Theta,
        ForbiddenKind::Prism,
        ForbiddenKind::EvenWheel,
        ForbiddenKind::Triangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ForbiddenKind::EvenHole => "even-hole",
            ForbiddenKind::FourHole => "4-hole",
            ForbiddenKind::Cap => "cap",
            ForbiddenKind::Theta => "theta",
            ForbiddenKind::Prism => "prism",
            ForbiddenKind::EvenWheel => "even-wheel",
            ForbiddenKind::Triangle => "triangle",
        }
    }
}

impl fmt::Display for ForbiddenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ForbiddenKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ForbiddenKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown forbidden structure '{s}'")))
    }
}

/// An induced subgraph realizing a forbidden structure.
///
/// Vertex order by kind: holes in cycle order; caps and wheels list the hole
/// in cycle order followed by the extra vertex; thetas and prisms list a hole
/// in cycle order followed by the interior of the third path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenWitness {
    pub kind: ForbiddenKind,
    pub vertices: Vec<usize>,
}

impl ForbiddenWitness {
    pub fn new(kind: ForbiddenKind, vertices: Vec<usize>) -> Self {
        ForbiddenWitness { kind, vertices }
    }

    /// Re-checks the witness against the definition of its kind.
    pub fn verify(&self, g: &Graph) -> bool {
        verify_witness(g, self)
    }

    /// The same witness with vertex ids translated through `map`.
    pub fn relabel(&self, map: &[usize]) -> ForbiddenWitness {
        ForbiddenWitness {
            kind: self.kind,
            vertices: self.vertices.iter().map(|&v| map[v]).collect(),
        }
    }
}

/// Exhaustive search for an induced copy of `kind`.
///
/// Triangles and 4-holes are found directly; every other kind walks the
/// holes of `g` and is guarded by `limits.oracle_vertices` and the cycle budget.
pub fn find_forbidden_induced(
    g: &Graph,
    kind: ForbiddenKind,
    limits: &Limits,
) -> Result<Option<ForbiddenWitness>> {
    match kind {
        ForbiddenKind::Triangle => return Ok(find_triangle(g)),
        ForbiddenKind::FourHole => return Ok(find_four_hole(g)),
        _ => {}
    }
    if g.n() > limits.oracle_vertices {
        return Err(Error::TooLarge {
            what: "forbidden structure oracle",
            size: g.n(),
            limit: limits.oracle_vertices,
        });
    }
    let mut found = None;
    visit_chordless_cycles(g, 4, None, Some(limits.cycle_budget), |hole| {
        found = match kind {
            ForbiddenKind::EvenHole => (hole.len() % 2 == 0).then(|| hole.to_vec()),
            ForbiddenKind::Cap => hole_with_attachment(g, hole, |c| c == 2, true),
            ForbiddenKind::EvenWheel => {
                hole_with_attachment(g, hole, |c| c >= 4 && c % 2 == 0, false)
            }
            ForbiddenKind::Theta => theta_on_hole(g, hole),
            ForbiddenKind::Prism => prism_on_hole(g, hole),
            ForbiddenKind::Triangle | ForbiddenKind::FourHole => unreachable!(),
        };
        if found.is_some() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found.map(|v| ForbiddenWitness::new(kind, v)))
}

pub(crate) fn find_triangle(g: &Graph) -> Option<ForbiddenWitness> {
    for (u, v) in g.edges() {
        if let Some(&w) = g.neighbors(v).iter().find(|&&w| w > v && g.has_edge(u, w)) {
            return Some(ForbiddenWitness::new(
                ForbiddenKind::Triangle,
                vec![u, v, w],
            ));
        }
    }
    None
}

/// Induced `C4` search over nonadjacent pairs and their common neighbours.
pub(crate) fn find_four_hole(g: &Graph) -> Option<ForbiddenWitness> {
    for a in g.vertices() {
        for c in a + 1..g.n() {
            if g.has_edge(a, c) {
                continue;
            }
            let common: Vec<usize> = g
                .neighbors(a)
                .iter()
                .copied()
                .filter(|&x| g.has_edge(c, x))
                .collect();
            for (i, &b) in common.iter().enumerate() {
                if let Some(&d) = common[i + 1..].iter().find(|&&d| !g.has_edge(b, d)) {
                    return Some(ForbiddenWitness::new(
                        ForbiddenKind::FourHole,
                        vec![a, b, c, d],
                    ));
                }
            }
        }
    }
    None
}

/// A vertex outside `hole` whose attachment count satisfies `accept`
/// (and, for caps, whose two neighbours are consecutive).
fn hole_with_attachment(
    g: &Graph,
    hole: &[usize],
    accept: impl Fn(usize) -> bool,
    consecutive: bool,
) -> Option<Vec<usize>> {
    let k = hole.len();
    let mut on_hole = vec![false; g.n()];
    for &v in hole {
        on_hole[v] = true;
    }
    for x in g.vertices().filter(|&x| !on_hole[x]) {
        let hits: Vec<usize> = (0..k).filter(|&i| g.has_edge(x, hole[i])).collect();
        if !accept(hits.len()) {
            continue;
        }
        if consecutive {
            let (i, j) = (hits[0], hits[1]);
            if !(j == i + 1 || (i == 0 && j == k - 1)) {
                continue;
            }
        }
        let mut w = hole.to_vec();
        w.push(x);
        return Some(w);
    }
    None
}

/// Shortest path from any `sources` vertex to any `targets` vertex through `allowed`.
fn shortest_path(
    g: &Graph,
    sources: &[usize],
    targets: &[bool],
    allowed: &[bool],
) -> Option<Vec<usize>> {
    let n = g.n();
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        seen[s] = true;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        if targets[u] {
            let mut path = vec![u];
            let mut cur = u;
            while prev[cur] != usize::MAX {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.neighbors(u) {
            if !seen[w] && (allowed[w] || targets[w]) {
                seen[w] = true;
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// A theta is a hole plus a chordless path between two nonadjacent hole
/// vertices whose interior sees nothing else on the hole.
fn theta_on_hole(g: &Graph, hole: &[usize]) -> Option<Vec<usize>> {
    let n = g.n();
    let k = hole.len();
    let mut on_hole = vec![false; n];
    for &v in hole {
        on_hole[v] = true;
    }
    for i in 0..k {
        for j in i + 2..k {
            if i == 0 && j == k - 1 {
                continue;
            }
            let (x, y) = (hole[i], hole[j]);
            let allowed: Vec<bool> = (0..n)
                .map(|v| !on_hole[v] && hole.iter().all(|&h| h == x || h == y || !g.has_edge(v, h)))
                .collect();
            let mut targets = vec![false; n];
            targets[y] = true;
            if let Some(path) = shortest_path(g, &[x], &targets, &allowed) {
                let mut w = hole.to_vec();
                w.extend_from_slice(&path[1..path.len() - 1]);
                return Some(w);
            }
        }
    }
    None
}

/// A prism is a hole with two disjoint hole edges `x1x2`, `y1y2` splitting it
/// into two paths, plus a chordless path from a common neighbour of `x1, x2`
/// to a common neighbour of `y1, y2` that sees nothing else on the hole.
fn prism_on_hole(g: &Graph, hole: &[usize]) -> Option<Vec<usize>> {
    let n = g.n();
    let k = hole.len();
    let mut on_hole = vec![false; n];
    for &v in hole {
        on_hole[v] = true;
    }
    let attachments = |v: usize| -> Vec<usize> {
        let mut a: Vec<usize> = hole.iter().copied().filter(|&h| g.has_edge(v, h)).collect();
        a.sort_unstable();
        a
    };
    let free: Vec<bool> = (0..n)
        .map(|v| !on_hole[v] && attachments(v).is_empty())
        .collect();
    for i in 0..k {
        let (x1, x2) = (hole[i], hole[(i + 1) % k]);
        for j in i + 2..k {
            if (j + 1) % k == i {
                continue;
            }
            let (y1, y2) = (hole[j], hole[(j + 1) % k]);
            let mut want_x = [x1, x2];
            want_x.sort_unstable();
            let mut want_y = [y1, y2];
            want_y.sort_unstable();
            let sources: Vec<usize> = (0..n)
                .filter(|&v| !on_hole[v] && attachments(v) == want_x)
                .collect();
            if sources.is_empty() {
                continue;
            }
            let targets: Vec<bool> = (0..n)
                .map(|v| !on_hole[v] && attachments(v) == want_y)
                .collect();
            if let Some(path) = shortest_path(g, &sources, &targets, &free) {
                let mut w = hole.to_vec();
                w.extend_from_slice(&path);
                return Some(w);
            }
        }
    }
    None
}

/// Checks a witness by definition on the induced subgraph it names.
pub fn verify_witness(g: &Graph, w: &ForbiddenWitness) -> bool {
    let vs = &w.vertices;
    let mut sorted = vs.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != vs.len() || vs.iter().any(|&v| v >= g.n()) {
        return false;
    }
    match w.kind {
        ForbiddenKind::Triangle => vs.len() == 3 && g.is_clique(vs),
        ForbiddenKind::FourHole => vs.len() == 4 && is_hole(g, vs),
        ForbiddenKind::EvenHole => vs.len().is_multiple_of(2) && is_hole(g, vs),
        ForbiddenKind::Cap | ForbiddenKind::EvenWheel => {
            let Some((&x, hole)) = vs.split_last() else {
                return false;
            };
            if !is_hole(g, hole) {
                return false;
            }
            let k = hole.len();
            let hits: Vec<usize> = (0..k).filter(|&i| g.has_edge(x, hole[i])).collect();
            if w.kind == ForbiddenKind::Cap {
                hits.len() == 2 && (hits[1] == hits[0] + 1 || (hits[0] == 0 && hits[1] == k - 1))
            } else {
                // Neighbours on a cycle cut it into as many sectors as there are neighbours.
                hits.len() >= 4 && hits.len().is_multiple_of(2)
            }
        }
        ForbiddenKind::Theta => is_theta(g, vs),
        ForbiddenKind::Prism => is_prism(g, vs),
    }
}

fn local_degrees(g: &Graph, vs: &[usize]) -> Vec<usize> {
    vs.iter()
        .map(|&v| vs.iter().filter(|&&u| g.has_edge(u, v)).count())
        .collect()
}

/// Components of the induced subgraph on `vs` after deleting `cut`, as positions into `vs`.
fn local_components(g: &Graph, vs: &[usize], cut: &[usize]) -> Vec<Vec<usize>> {
    let keep: Vec<usize> = (0..vs.len()).filter(|i| !cut.contains(&vs[*i])).collect();
    let mut seen = vec![false; vs.len()];
    let mut out = Vec::new();
    for &s in &keep {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let a = comp[i];
            i += 1;
            for &b in &keep {
                if !seen[b] && g.has_edge(vs[a], vs[b]) {
                    seen[b] = true;
                    comp.push(b);
                }
            }
        }
        out.push(comp);
    }
    out
}

fn is_theta(g: &Graph, vs: &[usize]) -> bool {
    let deg = local_degrees(g, vs);
    let ends: Vec<usize> = (0..vs.len())
        .filter(|&i| deg[i] == 3)
        .map(|i| vs[i])
        .collect();
    if ends.len() != 2 || deg.iter().any(|&d| d != 2 && d != 3) || g.has_edge(ends[0], ends[1]) {
        return false;
    }
    let comps = local_components(g, vs, &ends);
    comps.len() == 3
        && comps.iter().all(|c| {
            let to = |e: usize| c.iter().filter(|&&i| g.has_edge(vs[i], e)).count();
            to(ends[0]) == 1 && to(ends[1]) == 1
        })
}

fn is_prism(g: &Graph, vs: &[usize]) -> bool {
    let deg = local_degrees(g, vs);
    if deg.iter().any(|&d| d != 2 && d != 3) {
        return false;
    }
    let cubic: Vec<usize> = (0..vs.len())
        .filter(|&i| deg[i] == 3)
        .map(|i| vs[i])
        .collect();
    if cubic.len() != 6 {
        return false;
    }
    // Split the cubic vertices into two triangles; one-edge rungs can make
    // the split ambiguous, so every split is tried.
    for a in 1..6 {
        for b in a + 1..6 {
            let t1 = vec![cubic[0], cubic[a], cubic[b]];
            let t2: Vec<usize> = cubic.iter().copied().filter(|v| !t1.contains(v)).collect();
            if g.is_clique(&t1) && g.is_clique(&t2) && prism_rungs(g, vs, &t1, &t2) {
                return true;
            }
        }
    }
    false
}

/// With the triangle edges removed, `vs` must fall apart into three paths each joining `t1` to `t2`.
fn prism_rungs(g: &Graph, vs: &[usize], t1: &[usize], t2: &[usize]) -> bool {
    let same_triangle = |a: usize, b: usize| {
        (t1.contains(&a) && t1.contains(&b)) || (t2.contains(&a) && t2.contains(&b))
    };
    let n_local = vs.len();
    let mut seen = vec![false; n_local];
    let mut paths = 0;
    for s in 0..n_local {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let a = comp[i];
            i += 1;
            for b in 0..n_local {
                if !seen[b] && g.has_edge(vs[a], vs[b]) && !same_triangle(vs[a], vs[b]) {
                    seen[b] = true;
                    comp.push(b);
                }
            }
        }
        let in_t1 = comp.iter().filter(|&&i| t1.contains(&vs[i])).count();
        let in_t2 = comp.iter().filter(|&&i| t2.contains(&vs[i])).count();
        let edges: usize = comp
            .iter()
            .map(|&a| {
                comp.iter()
                    .filter(|&&b| g.has_edge(vs[a], vs[b]) && !same_triangle(vs[a], vs[b]))
                    .count()
            })
            .sum::<usize>()
            / 2;
        if in_t1 != 1 || in_t2 != 1 || edges + 1 != comp.len() {
            return false;
        }
        paths += 1;
    }
    paths == 3
}
