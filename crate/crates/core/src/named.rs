//! Named graph families and fixtures.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

/// Generator shared by every seeded routine: xoshiro256** seeded through SplitMix64.
pub type Prng = Xoshiro256StarStar;

pub fn prng(seed: u64) -> Prng {
    Xoshiro256StarStar::seed_from_u64(seed)
}

/// Chordless cycle on `k >= 3` vertices, `0-1-...-(k-1)-0`.
pub fn hole(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "hole needs k >= 3, got {k}"
        )));
    }
    Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k)))
}

pub fn complete(n: usize) -> Graph {
    Graph::empty(0).add_universal_clique(n)
}

/// Path on `k >= 1` vertices.
pub fn path(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "path needs at least one vertex".into(),
        ));
    }
    Graph::from_edges(k, (1..k).map(|i| (i - 1, i)))
}

/// `K_{4,4}` minus a perfect matching: `a_i ~ b_j` iff `i != j`, with `a = 0..4`, `b = 4..8`.
pub fn cube() -> Graph {
    let edges = (0..4).flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, 4 + j)));
    Graph::from_edges(8, edges).unwrap()
}

/// Five-hole `v1..v5` with `v6 ~ {v1, v2, v3}` and `v7 ~ {v1, v4, v5}` (0-based ids).
pub fn hajos() -> Graph {
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 0),
        (5, 0),
        (5, 1),
        (5, 2),
        (6, 0),
        (6, 3),
        (6, 4),
    ];
    Graph::from_edges(7, edges).unwrap()
}

/// `G(n, p)`: pairs `u < v` in lexicographic order, each kept when a uniform
/// `f64` draw from xoshiro256** falls below `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut rng = prng(seed);
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                b.add_edge(u, v);
            }
        }
    }
    Ok(b.build())
}

/// Hole `0..k` plus hub `k` adjacent to every rim vertex.
pub fn wheel(k: usize) -> Result<Graph> {
    Ok(hole(k)?.add_universal_clique(1))
}

/// Four-hole `0-1-2-3` with apex `4` on the edge `0-1`.
pub fn house() -> Graph {
    Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1)]).unwrap()
}

/// Two triangles `{0,1,2}` and `{3,4,5}` matched by `i ~ i+3`.
pub fn triangular_prism() -> Graph {
    Graph::from_edges(
        6,
        [
            (0, 1),
            (1, 2),
            (0, 2),
            (3, 4),
            (4, 5),
            (3, 5),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
    .unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j)))).unwrap()
}

/// `G_k`: a five-hole with every vertex replaced by a clique of size `2k`.
pub fn blown_five_hole(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    hole(5)?.blow_up(&[2 * k; 5])
}

/// A named construction as accepted on the command line, e.g. `hole:5`, `gnp:12:0.4:7`.
#[derive(Clone, Debug, PartialEq)]
pub enum Named {
    Hole(usize),
    Complete(usize),
    Path(usize),
    Cube,
    Hajos,
    Wheel(usize),
    House,
    Prism,
    Bipartite(usize, usize),
    /// `G_k`.
    Blown(usize),
    Gnp {
        n: usize,
        p: f64,
        seed: u64,
    },
}

impl Named {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            Named::Hole(k) => hole(k),
            Named::Complete(n) => Ok(complete(n)),
            Named::Path(k) => path(k),
            Named::Cube => Ok(cube()),
            Named::Hajos => Ok(hajos()),
            Named::Wheel(k) => wheel(k),
            Named::House => Ok(house()),
            Named::Prism => Ok(triangular_prism()),
            Named::Bipartite(a, b) => Ok(complete_bipartite(a, b)),
            Named::Blown(k) => blown_five_hole(k),
            Named::Gnp { n, p, seed } => gnp(n, p, seed),
        }
    }
}

impl FromStr for Named {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidParameter(format!("unrecognised construction '{s}'"));
        let int = |x: &str| x.parse::<usize>().map_err(|_| bad());
        match parts.as_slice() {
            ["hole", k] => Ok(Named::Hole(int(k)?)),
            ["complete", n] => Ok(Named::Complete(int(n)?)),
            ["path", k] => Ok(Named::Path(int(k)?)),
            ["cube"] => Ok(Named::Cube),
            ["hajos"] => Ok(Named::Hajos),
            ["wheel", k] => Ok(Named::Wheel(int(k)?)),
            ["house"] => Ok(Named::House),
            ["prism"] => Ok(Named::Prism),
            ["bipartite", a, b] => Ok(Named::Bipartite(int(a)?, int(b)?)),
            ["blown", k] => Ok(Named::Blown(int(k)?)),
            ["gnp", n, p, seed] => Ok(Named::Gnp {
                n: int(n)?,
                p: p.parse().map_err(|_| bad())?,
                seed: seed.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees_desc(g: &Graph) -> Vec<usize> {
        let mut d: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    #[test]
    fn hole_and_cube_shapes() {
        let h = hole(5).unwrap();
        assert_eq!((h.n(), h.m()), (5, 5));
        let c = cube();
        assert_eq!((c.n(), c.m()), (8, 12));
        assert!(c.vertices().all(|v| c.degree(v) == 3));
        assert!(hole(2).is_err());
    }

    #[test]
    fn hajos_degree_sequence() {
        // Counted from the adjacency: v1 has four neighbours, every other vertex three.
        let g = hajos();
        assert_eq!((g.n(), g.m()), (7, 11));
        assert_eq!(degrees_desc(&g), vec![4, 3, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn gnp_is_reproducible() {
        let a = gnp(30, 0.3, 42).unwrap();
        let b = gnp(30, 0.3, 42).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_ne!(a.to_text(), gnp(30, 0.3, 43).unwrap().to_text());
        assert_eq!(gnp(10, 0.0, 1).unwrap().m(), 0);
        assert_eq!(gnp(10, 1.0, 1).unwrap().m(), 45);
        assert!(gnp(5, 1.5, 0).is_err());
    }

    #[test]
    fn parses_names() {
        assert_eq!("hole:7".parse::<Named>().unwrap(), Named::Hole(7));
        assert_eq!(
            "gnp:12:0.4:9".parse::<Named>().unwrap(),
            Named::Gnp {
                n: 12,
                p: 0.4,
                seed: 9
            }
        );
        assert!("nonsense".parse::<Named>().is_err());
        assert_eq!("path:4".parse::<Named>().unwrap().build().unwrap().m(), 3);
    }

    #[test]
    fn blown_five_hole_sizes() {
        let g = blown_five_hole(2).unwrap();
        assert_eq!(g.n(), 20);
    }
}
