//! Simple undirected graphs with optional vertex weights.
//!
//! Vertices are dense `0..n` internally. The text format is 1-based:
//!
//! ```text
//! c optional comment
//! p <n> <m>
//! e <u> <v>          (m lines, 1 <= u < v <= n)
//! w <v> <weight>     (optional, nonnegative, default 1)
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::ops::Deref;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).copied().collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(
            self.iter()
                .copied()
                .filter(|&v| !other.contains(v))
                .collect(),
        )
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(
            self.iter()
                .copied()
                .filter(|&v| other.contains(v))
                .collect(),
        )
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|&v| other.contains(v))
    }
}

impl Deref for VertexSet {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(ids: Vec<usize>) -> Self {
        VertexSet::new(ids)
    }
}

/// Immutable simple undirected graph.
///
/// Neighbor lists are sorted ascending; an adjacency bit-row per vertex
/// gives constant-time edge queries. Weights are `None` when every vertex
/// has weight 1.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    rows: Vec<FixedBitSet>,
    weights: Option<Vec<i64>>,
    edge_count: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj && self.weights == other.weights
    }
}

impl Eq for Graph {}

/// Accumulates edges before freezing them into a [`Graph`]. Repeated edges are merged.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    adj: Vec<BTreeSet<usize>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Adds `uv`; returns false if it was already present. Panics on loops or bad ids.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "loop at vertex {u}");
        assert!(
            u < self.adj.len() && v < self.adj.len(),
            "edge {u}-{v} out of range"
        );
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        fresh
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Adds all edges inside `set`.
    pub fn add_clique(&mut self, set: &[usize]) {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                self.add_edge(u, v);
            }
        }
    }

    pub fn build(self) -> Graph {
        Graph::from_sorted_adjacency(
            self.adj
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        )
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph::from_sorted_adjacency(vec![Vec::new(); n])
    }

    fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        let mut rows = Vec::with_capacity(n);
        let mut twice = 0;
        for list in &adj {
            let mut row = FixedBitSet::with_capacity(n);
            for &u in list {
                row.insert(u);
            }
            twice += list.len();
            rows.push(row);
        }
        Graph {
            adj,
            rows,
            weights: None,
            edge_count: twice / 2,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and bad ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
            }
            if !b.add_edge(u, v) {
                return Err(Error::InvalidParameter(format!("duplicate edge {u}-{v}")));
            }
        }
        Ok(b.build())
    }

    /// Attaches vertex weights. All-ones weights are normalised away.
    pub fn with_weights(mut self, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != self.n() {
            return Err(Error::InvalidParameter(format!(
                "{} weights for {} vertices",
                weights.len(),
                self.n()
            )));
        }
        self.weights = if weights.iter().all(|&w| w == 1) {
            None
        } else {
            Some(weights)
        };
        Ok(self)
    }

    pub fn without_weights(mut self) -> Self {
        self.weights = None;
        self
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn weight(&self, v: usize) -> i64 {
        self.weights.as_ref().map_or(1, |w| w[v])
    }

    /// Per-vertex weights, materialising the implicit unit weights.
    pub fn weight_vec(&self) -> Vec<i64> {
        self.weights.clone().unwrap_or_else(|| vec![1; self.n()])
    }

    pub fn weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// `N[v]` as a sorted vector.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.adj[v].clone();
        let pos = out.binary_search(&v).unwrap_err();
        out.insert(pos, v);
        out
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_stable(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|l| l.len() + 1 == n)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    /// Connected components of `G \ removed`, each sorted, ordered by least vertex.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = removed.to_vec();
        seen.resize(n, false);
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&[])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Induced subgraph on `set`, relabelled `0..|set|` in ascending order.
    ///
    /// Returns the subgraph and the map from new ids to old ids.
    pub fn induced_subgraph(&self, set: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let set = VertexSet::new(set.to_vec());
        if let Some(&bad) = set.iter().find(|&&v| v >= self.n()) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                n: self.n(),
            });
        }
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in set.iter().enumerate() {
            index[v] = i;
        }
        let adj = set
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&u| index[u] != usize::MAX)
                    .map(|&u| index[u])
                    .collect()
            })
            .collect();
        let mut g = Graph::from_sorted_adjacency(adj);
        g.weights = self
            .weights
            .as_ref()
            .map(|w| set.iter().map(|&v| w[v]).collect());
        if let Some(w) = &g.weights {
            if w.iter().all(|&x| x == 1) {
                g.weights = None;
            }
        }
        Ok((g, set.into_vec()))
    }

    /// Substitutes a clique of `sizes[v]` vertices for every vertex `v`.
    ///
    /// Block for `v` occupies a contiguous id range, blocks in vertex order.
    pub fn blow_up(&self, sizes: &[usize]) -> Result<Graph> {
        if sizes.len() != self.n() {
            return Err(Error::InvalidParameter(format!(
                "{} block sizes for {} vertices",
                sizes.len(),
                self.n()
            )));
        }
        if let Some(v) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidParameter(format!(
                "block size 0 for vertex {v}"
            )));
        }
        let blocks = block_ranges(sizes);
        let total = blocks.last().map_or(0, |r| r.end);
        let mut b = GraphBuilder::new(total);
        for v in self.vertices() {
            let block: Vec<usize> = blocks[v].clone().collect();
            b.add_clique(&block);
            for &u in self.neighbors(v).iter().filter(|&&u| u > v) {
                for x in blocks[v].clone() {
                    for y in blocks[u].clone() {
                        b.add_edge(x, y);
                    }
                }
            }
        }
        Ok(b.build())
    }

    /// Appends `t` vertices forming a clique complete to the whole graph.
    pub fn add_universal_clique(&self, t: usize) -> Graph {
        let n = self.n();
        let mut b = GraphBuilder::new(n + t);
        for (u, v) in self.edges() {
            b.add_edge(u, v);
        }
        for x in n..n + t {
            for y in 0..x {
                b.add_edge(x, y);
            }
        }
        b.build()
    }

    /// Canonical text form: header, edges in lexicographic order, then non-unit weights.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p {} {}", self.n(), self.m()).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        if let Some(w) = &self.weights {
            for (v, &x) in w.iter().enumerate().filter(|(_, &x)| x != 1) {
                writeln!(out, "w {} {}", v + 1, x).unwrap();
            }
        }
        out
    }

    /// Parses the text format; every error carries its 1-based line number.
    pub fn parse(text: &str) -> Result<Graph> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut header: Option<(usize, usize)> = None;
        let mut builder: Option<GraphBuilder> = None;
        let mut weights: Vec<Option<i64>> = Vec::new();
        let mut edges_seen = 0usize;
        let mut last_line = 0;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            if raw.trim().is_empty() || raw == "c" || raw.starts_with("c ") {
                continue;
            }
            let fields: Vec<&str> = raw.split_whitespace().collect();
            let num = |s: &str, what: &str| -> Result<usize> {
                s.parse::<usize>()
                    .map_err(|_| err(line, format!("bad {what} '{s}'")))
            };
            match fields[0] {
                "p" => {
                    if header.is_some() {
                        return Err(err(line, "second header line".into()));
                    }
                    if fields.len() != 3 {
                        return Err(err(line, "header must be 'p <n> <m>'".into()));
                    }
                    let n = num(fields[1], "vertex count")?;
                    let m = num(fields[2], "edge count")?;
                    header = Some((n, m));
                    builder = Some(GraphBuilder::new(n));
                    weights = vec![None; n];
                }
                "e" => {
                    let (n, _) = header.ok_or_else(|| err(line, "edge before header".into()))?;
                    if fields.len() != 3 {
                        return Err(err(line, "edge must be 'e <u> <v>'".into()));
                    }
                    let u = num(fields[1], "vertex id")?;
                    let v = num(fields[2], "vertex id")?;
                    for x in [u, v] {
                        if x == 0 || x > n {
                            return Err(err(line, format!("vertex id {x} out of range 1..={n}")));
                        }
                    }
                    if u == v {
                        return Err(err(line, format!("loop at vertex {u}")));
                    }
                    let b = builder.as_mut().unwrap();
                    if !b.add_edge(u - 1, v - 1) {
                        return Err(err(line, format!("duplicate edge {u}-{v}")));
                    }
                    edges_seen += 1;
                }
                "w" => {
                    let (n, _) = header.ok_or_else(|| err(line, "weight before header".into()))?;
                    if fields.len() != 3 {
                        return Err(err(line, "weight must be 'w <v> <weight>'".into()));
                    }
                    let v = num(fields[1], "vertex id")?;
                    if v == 0 || v > n {
                        return Err(err(line, format!("vertex id {v} out of range 1..={n}")));
                    }
                    let w = fields[2].parse::<u32>().map_err(|_| {
                        err(
                            line,
                            format!("weight '{}' is not a nonnegative integer", fields[2]),
                        )
                    })?;
                    if weights[v - 1].replace(i64::from(w)).is_some() {
                        return Err(err(line, format!("second weight for vertex {v}")));
                    }
                }
                other => return Err(err(line, format!("unknown line type '{other}'"))),
            }
        }

        let (_, m) =
            header.ok_or_else(|| err(last_line.max(1), "missing 'p <n> <m>' header".into()))?;
        if edges_seen != m {
            return Err(err(
                last_line.max(1),
                format!("header declares {m} edges, found {edges_seen}"),
            ));
        }
        let g = builder.unwrap().build();
        if weights.iter().any(Option::is_some) {
            let w = weights.into_iter().map(|w| w.unwrap_or(1)).collect();
            g.with_weights(w)
        } else {
            Ok(g)
        }
    }
}

/// Contiguous id ranges for blocks of the given sizes.
pub fn block_ranges(sizes: &[usize]) -> Vec<std::ops::Range<usize>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let r = start..start + s;
            start += s;
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn parses_five_hole() {
        let g = Graph::parse("c a hole\np 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.m(), 5);
        assert_eq!(g, c5());
    }

    #[test]
    fn parses_single_vertex() {
        let g = Graph::parse("p 1 0\n").unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
    }

    #[test]
    fn rejects_loop_with_line_number() {
        let e = Graph::parse("p 2 1\ne 1 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("e 1 2\n", 1),
            ("p 2\n", 1),
            ("p 3 1\ne 1 4\n", 2),
            ("p 3 2\ne 1 2\ne 2 1\n", 3),
            ("p 3 2\ne 1 2\n", 2),
            ("p 3 0\nw 1 -4\n", 2),
            ("p 3 0\nw 1 4\nw 1 5\n", 3),
            ("p 3 0\nx 1\n", 2),
        ];
        for (text, line) in cases {
            match Graph::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn serialization_is_canonical() {
        let g = Graph::parse("p 3 2\ne 3 2\ne 2 1\nw 2 7\n").unwrap();
        assert_eq!(g.to_text(), "p 3 2\ne 1 2\ne 2 3\nw 2 7\n");
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn blow_up_of_five_hole() {
        let g = c5().blow_up(&[2; 5]).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.m(), 25);
        assert_eq!(c5().blow_up(&[1; 5]).unwrap(), c5());
        assert!(c5().blow_up(&[1, 0, 1, 1, 1]).is_err());
    }

    #[test]
    fn universal_clique() {
        let w = c5().add_universal_clique(1);
        assert_eq!(w.n(), 6);
        assert_eq!(w.degree(5), 5);
        assert_eq!(c5().add_universal_clique(0), c5());
        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(k3.add_universal_clique(2).is_complete());
        assert_eq!(k3.add_universal_clique(2).n(), 5);
    }

    #[test]
    fn induced_subgraphs() {
        let (e, map) = c5().induced_subgraph(&[]).unwrap();
        assert_eq!((e.n(), map.len()), (0, 0));
        let (p4, map) = c5().induced_subgraph(&[0, 1, 2, 3]).unwrap();
        assert_eq!(p4.m(), 3);
        assert_eq!(map, vec![0, 1, 2, 3]);
        assert_eq!(p4.degree(0), 1);
        let k5 = Graph::empty(5).add_universal_clique(0);
        let k5 = k5.add_universal_clique(0);
        assert_eq!(k5.m(), 0);
        let k5 = Graph::empty(0).add_universal_clique(5);
        let (k3, _) = k5.induced_subgraph(&[4, 0, 2]).unwrap();
        assert!(k3.is_complete() && k3.n() == 3);
        assert!(c5().induced_subgraph(&[7]).is_err());
    }

    #[test]
    fn weights_carry_through_induced_subgraphs() {
        let g = c5().with_weights(vec![1, 2, 3, 4, 5]).unwrap();
        let (h, _) = g.induced_subgraph(&[1, 3]).unwrap();
        assert_eq!(h.weight_vec(), vec![2, 4]);
        let (h, _) = g.induced_subgraph(&[0]).unwrap();
        assert_eq!(h.weights(), None);
    }
}
