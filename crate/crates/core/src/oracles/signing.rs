use std::collections::BTreeMap;
use std::ops::ControlFlow;

use super::cycles::visit_chordless_cycles;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

/// A 0/1 value on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signing {
    values: BTreeMap<(usize, usize), u8>,
}

impl Signing {
    pub fn value(&self, u: usize, v: usize) -> Option<u8> {
        self.values.get(&(u.min(v), u.max(v))).copied()
    }

    /// Edges `(u, v, value)` in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        self.values.iter().map(|(&(u, v), &x)| (u, v, x))
    }

    /// True when the signing covers exactly `E(g)` and every chordless cycle has odd weight.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.values.len() != g.m() || g.edges().any(|(u, v)| self.value(u, v).is_none()) {
            return false;
        }
        let mut ok = true;
        let _ = visit_chordless_cycles(g, 3, None, None, |c| {
            let k = c.len();
            let parity = (0..k)
                .map(|i| self.value(c[i], c[(i + 1) % k]).unwrap())
                .fold(0, |a, b| a ^ b);
            if parity == 1 {
                ControlFlow::Continue(())
            } else {
                ok = false;
                ControlFlow::Break(())
            }
        });
        ok
    }
}

/// Incremental GF(2) system with rows reduced against pivots on their lowest bit.
struct Gf2System {
    words: usize,
    pivots: BTreeMap<usize, (Vec<u64>, bool)>,
}

impl Gf2System {
    fn new(vars: usize) -> Self {
        Gf2System {
            words: vars.div_ceil(64).max(1),
            pivots: BTreeMap::new(),
        }
    }

    fn lowest(row: &[u64]) -> Option<usize> {
        row.iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Adds `row . x = rhs`; returns false if the system became inconsistent.
    fn add(&mut self, mut row: Vec<u64>, mut rhs: bool) -> bool {
        while let Some(col) = Self::lowest(&row) {
            match self.pivots.get(&col) {
                Some((prow, prhs)) => {
                    for (a, b) in row.iter_mut().zip(prow) {
                        *a ^= b;
                    }
                    rhs ^= prhs;
                }
                None => {
                    self.pivots.insert(col, (row, rhs));
                    return true;
                }
            }
        }
        !rhs
    }

    /// Back substitution with free variables set to 0.
    fn solve(&self) -> Vec<u64> {
        let mut x = vec![0u64; self.words];
        for (&col, (row, rhs)) in self.pivots.iter().rev() {
            let mut bit = *rhs;
            for (i, &w) in row.iter().enumerate() {
                let mut rest = w & x[i];
                if i == col / 64 {
                    rest &= !(1u64 << (col % 64));
                }
                bit ^= rest.count_ones() % 2 == 1;
            }
            if bit {
                x[col / 64] |= 1 << (col % 64);
            }
        }
        x
    }
}

/// Finds a signing making every chordless cycle odd, or `None` when none exists.
///
/// One equation per chordless cycle (sum of its edge variables = 1) is fed
/// to an incremental elimination; the first inconsistent cycle ends the search.
pub fn odd_signable_signing(g: &Graph, limits: &Limits) -> Result<Option<Signing>> {
    if g.n() > limits.oracle_vertices {
        return Err(Error::TooLarge {
            what: "odd-signability oracle",
            size: g.n(),
            limit: limits.oracle_vertices,
        });
    }
    let edge_ids: BTreeMap<(usize, usize), usize> =
        g.edges().enumerate().map(|(i, e)| (e, i)).collect();
    let mut system = Gf2System::new(edge_ids.len());
    let mut consistent = true;
    visit_chordless_cycles(g, 3, None, Some(limits.cycle_budget), |c| {
        let mut row = vec![0u64; system.words];
        let k = c.len();
        for i in 0..k {
            let (a, b) = (c[i], c[(i + 1) % k]);
            let id = edge_ids[&(a.min(b), a.max(b))];
            row[id / 64] ^= 1 << (id % 64);
        }
        if system.add(row, true) {
            ControlFlow::Continue(())
        } else {
            consistent = false;
            ControlFlow::Break(())
        }
    })?;
    if !consistent {
        return Ok(None);
    }
    let x = system.solve();
    let values = edge_ids
        .into_iter()
        .map(|(e, id)| (e, ((x[id / 64] >> (id % 64)) & 1) as u8))
        .collect();
    Ok(Some(Signing { values }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn sign(g: &Graph) -> Option<Signing> {
        odd_signable_signing(g, &Limits::default()).unwrap()
    }

    #[test]
    fn four_hole_is_signable() {
        let g = named::hole(4).unwrap();
        let s = sign(&g).expect("a single cycle is always signable");
        assert!(s.verify(&g));
        assert_eq!(s.iter().map(|(_, _, x)| x as usize).sum::<usize>() % 2, 1);
    }

    #[test]
    fn even_wheel_is_not_signable() {
        assert!(sign(&named::wheel(4).unwrap()).is_none());
    }

    #[test]
    fn theta_is_not_signable() {
        assert!(sign(&named::complete_bipartite(2, 3)).is_none());
    }

    #[test]
    fn prism_is_not_signable() {
        assert!(sign(&named::triangular_prism()).is_none());
    }

    #[test]
    fn odd_structures_are_signable() {
        for g in [
            named::hajos(),
            named::wheel(5).unwrap(),
            named::hole(6).unwrap(),
            named::complete(5),
        ] {
            let s = sign(&g).unwrap();
            assert!(s.verify(&g));
        }
    }

    #[test]
    fn verify_rejects_bad_signing() {
        let g = named::hole(5).unwrap();
        let mut s = sign(&g).unwrap();
        let first = *s.values.keys().next().unwrap();
        *s.values.get_mut(&first).unwrap() ^= 1;
        assert!(!s.verify(&g));
    }

    #[test]
    fn gf2_back_substitution() {
        // x0 + x1 = 1, x1 + x2 = 0, x2 = 1  =>  x = (0, 1, 1)
        let mut sys = Gf2System::new(3);
        assert!(sys.add(vec![0b011], true));
        assert!(sys.add(vec![0b110], false));
        assert!(sys.add(vec![0b100], true));
        assert_eq!(sys.solve(), vec![0b110]);
        assert!(!sys.add(vec![0b001], true));
    }
}
