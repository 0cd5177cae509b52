use serde_json::{json, Value};

use crate::construct::validate_good_ear;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::limits::Limits;
use crate::oracles::is_hole;

/// One ear: a chordless path from `path[0]` to its last vertex whose interior
/// is new, attached to the hole `host` around the apex between the two ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ear {
    /// The hole the ear was added to, in cycle order.
    pub host: Vec<usize>,
    pub path: Vec<usize>,
    pub apex: usize,
}

impl Ear {
    pub fn x(&self) -> usize {
        self.path[0]
    }

    pub fn z(&self) -> usize {
        *self.path.last().unwrap()
    }

    pub fn interior(&self) -> &[usize] {
        &self.path[1..self.path.len() - 1]
    }

    /// The hole made of the path and the host minus the apex, in cycle order.
    pub fn augmented_hole(&self) -> Vec<usize> {
        let k = self.host.len();
        let zi = self.host.iter().position(|&v| v == self.z()).unwrap();
        let step = if self.host[(zi + 1) % k] == self.apex {
            k - 1
        } else {
            1
        };
        let mut out = self.path.clone();
        let mut i = (zi + step) % k;
        while self.host[i] != self.x() {
            out.push(self.host[i]);
            i = (i + step) % k;
        }
        out
    }
}

/// A base hole and the ears added to it, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EarSequence {
    pub base: Vec<usize>,
    pub ears: Vec<Ear>,
}

impl EarSequence {
    pub fn to_json(&self) -> Value {
        let ids = |s: &[usize]| s.iter().map(|v| v + 1).collect::<Vec<_>>();
        json!({
            "base": ids(&self.base),
            "ears": self.ears.iter().map(|e| json!({
                "host": ids(&e.host),
                "path": ids(&e.path),
                "apex": e.apex + 1,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Chordal supergraph of `f` built from its ears.
///
/// For every ear, its two ends and its apex are joined to the whole interior
/// and the ends are joined to each other; the first edge `uv` of the base
/// hole is then joined to every base vertex. Each ear is first checked to be
/// a good ear of the graph built so far.
pub fn triangulation_from_ears(f: &Graph, es: &EarSequence, limits: &Limits) -> Result<Graph> {
    let n = f.n();
    let mut present = vec![false; n];
    if es.base.len() < 4 || !is_hole(f, &es.base) {
        return Err(Error::InvalidEar("base is not a hole".into()));
    }
    for &v in &es.base {
        present[v] = true;
    }
    for (i, ear) in es.ears.iter().enumerate() {
        if ear.path.len() < 3 || ear.interior().iter().any(|&v| v >= n || present[v]) {
            return Err(Error::InvalidEar(format!(
                "ear {i} does not bring new interior vertices"
            )));
        }
        let before: Vec<usize> = (0..n).filter(|&v| present[v]).collect();
        if let Some(defect) = validate_good_ear(f, &before, &ear.host, &ear.path, ear.apex, limits)?
        {
            return Err(Error::InvalidEar(format!("ear {i} is not good: {defect}")));
        }
        for &v in ear.interior() {
            present[v] = true;
        }
    }
    if let Some(v) = present.iter().position(|p| !p) {
        return Err(Error::InvalidEar(format!(
            "vertex {v} is on neither the base nor an ear"
        )));
    }
    let mut b = GraphBuilder::new(n);
    for (u, v) in f.edges() {
        b.add_edge(u, v);
    }
    for ear in &es.ears {
        for &p in ear.interior() {
            for s in [ear.x(), ear.apex, ear.z()] {
                b.add_edge(s, p);
            }
        }
        b.add_edge(ear.x(), ear.z());
    }
    let (u, v) = (es.base[0], es.base[1]);
    for &w in &es.base[2..] {
        b.add_edge(u, w);
        b.add_edge(v, w);
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::treewidth::{clique_tree, is_chordal};

    fn omega(t: &Graph) -> usize {
        clique_tree(t)
            .unwrap()
            .bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap()
    }

    #[test]
    fn bare_holes() {
        let c7 = named::hole(7).unwrap();
        let t = triangulation_from_ears(
            &c7,
            &EarSequence {
                base: (0..7).collect(),
                ears: vec![],
            },
            &Limits::default(),
        )
        .unwrap();
        assert!(is_chordal(&t));
        assert!(omega(&t) <= 5);
        let c5 = named::hole(5).unwrap();
        let t = triangulation_from_ears(
            &c5,
            &EarSequence {
                base: (0..5).collect(),
                ears: vec![],
            },
            &Limits::default(),
        )
        .unwrap();
        assert!(is_chordal(&t));
        assert_eq!(omega(&t), 4);
    }

    /// Five-hole 0..5 with apex 0 between 1 and 4, and ear 1-5-6-7-8-9-10-4
    /// where 0 sees the middle vertex 7... plus the ends: three neighbours on the path.
    fn one_ear() -> (Graph, EarSequence) {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let path = vec![1, 5, 6, 7, 8, 9, 4];
        edges.extend(path.windows(2).map(|w| (w[0], w[1])));
        edges.push((0, 7));
        let g = Graph::from_edges(10, edges).unwrap();
        let ear = Ear {
            host: (0..5).collect(),
            path,
            apex: 0,
        };
        (
            g,
            EarSequence {
                base: (0..5).collect(),
                ears: vec![ear],
            },
        )
    }

    #[test]
    fn one_good_ear() {
        let (g, es) = one_ear();
        let t = triangulation_from_ears(&g, &es, &Limits::default()).unwrap();
        assert!(is_chordal(&t));
        assert!(omega(&t) <= 6);
        assert!(g.edges().all(|(u, v)| t.has_edge(u, v)));
        assert_eq!(es.ears[0].augmented_hole(), vec![1, 5, 6, 7, 8, 9, 4, 3, 2]);
    }

    #[test]
    fn bad_ears_are_refused() {
        let (g, mut es) = one_ear();
        es.ears[0].apex = 2;
        assert!(triangulation_from_ears(&g, &es, &Limits::default()).is_err());
        let mut es2 = one_ear().1;
        es2.base = vec![0, 1, 2, 3];
        assert!(triangulation_from_ears(&g, &es2, &Limits::default()).is_err());
    }
}
