use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Walks every chordless cycle of length in `min_len..=max_len`.
///
/// Cycles are produced in canonical form: they start at their least vertex
/// and the second vertex is smaller than the last. Paths grow from the
/// least vertex `s` through larger vertices only; a counter per vertex
/// tracks adjacency to the path interior so chordlessness is kept
/// incrementally. `budget` caps the number of path extensions. The walk
/// stops early when `visit` breaks.
pub(crate) fn visit_chordless_cycles<F>(
    g: &Graph,
    min_len: usize,
    max_len: Option<usize>,
    budget: Option<u64>,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.n();
    let max_len = max_len.unwrap_or(n).min(n);
    if max_len < 3 {
        return Ok(());
    }
    let mut walk = Walk {
        g,
        min_len: min_len.max(3),
        max_len,
        path: Vec::with_capacity(n),
        on_path: vec![false; n],
        interior_hits: vec![0u32; n],
        steps: 0,
        budget,
    };
    for s in 0..n {
        walk.path.push(s);
        walk.on_path[s] = true;
        for &p1 in g.neighbors(s).iter().filter(|&&p| p > s) {
            walk.path.push(p1);
            walk.on_path[p1] = true;
            let flow = walk.extend(&mut visit)?;
            walk.on_path[p1] = false;
            walk.path.pop();
            if flow.is_break() {
                return Ok(());
            }
        }
        walk.on_path[s] = false;
        walk.path.pop();
    }
    Ok(())
}

struct Walk<'g> {
    g: &'g Graph,
    min_len: usize,
    max_len: usize,
    path: Vec<usize>,
    on_path: Vec<bool>,
    /// For each vertex, how many of `p_1 .. p_{j-1}` it is adjacent to.
    interior_hits: Vec<u32>,
    steps: u64,
    budget: Option<u64>,
}

impl Walk<'_> {
    fn extend<F>(&mut self, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let g = self.g;
        let s = self.path[0];
        let last = *self.path.last().unwrap();
        let len = self.path.len();
        if len + 1 > self.max_len {
            return Ok(ControlFlow::Continue(()));
        }
        for &x in g.neighbors(last) {
            if x <= s || self.on_path[x] || self.interior_hits[x] > 0 {
                continue;
            }
            self.steps += 1;
            if let Some(b) = self.budget {
                if self.steps > b {
                    return Err(Error::BudgetExhausted {
                        what: "chordless cycle enumeration",
                        budget: b,
                    });
                }
            }
            if g.has_edge(x, s) {
                // Closing; x cannot be extended past since x-s would be a chord.
                if self.path[1] < x && len + 1 >= self.min_len {
                    self.path.push(x);
                    let flow = visit(&self.path);
                    self.path.pop();
                    if flow.is_break() {
                        return Ok(flow);
                    }
                }
                continue;
            }
            if len + 2 > self.max_len {
                continue;
            }
            // `last` becomes interior once x is appended.
            if len >= 2 {
                for &u in g.neighbors(last) {
                    self.interior_hits[u] += 1;
                }
            }
            self.path.push(x);
            self.on_path[x] = true;
            let flow = self.extend(visit);
            self.on_path[x] = false;
            self.path.pop();
            if len >= 2 {
                for &u in g.neighbors(last) {
                    self.interior_hits[u] -= 1;
                }
            }
            if flow?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Every chordless cycle of length at least 3 (at most `max_len` when given),
/// each once, in canonical form.
///
/// Exponential in general; intended for graphs of about twenty vertices.
pub fn enumerate_chordless_cycles(g: &Graph, max_len: Option<usize>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let _ = visit_chordless_cycles(g, 3, max_len, None, |c| {
        out.push(c.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// Holes (chordless cycles of length at least 4), with a work budget.
pub fn holes_bounded(g: &Graph, budget: u64) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    visit_chordless_cycles(g, 4, None, Some(budget), |c| {
        out.push(c.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// True when `cycle` lists the vertices of an induced cycle of length at least 3 in order.
pub fn is_chordless_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 3 {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k || sorted.iter().any(|&v| v >= g.n()) {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

pub fn is_hole(g: &Graph, cycle: &[usize]) -> bool {
    cycle.len() >= 4 && is_chordless_cycle(g, cycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    /// Independent count: vertex subsets inducing a connected 2-regular graph.
    fn count_by_subsets(g: &Graph) -> Vec<usize> {
        let n = g.n();
        let mut by_len = vec![0; n + 1];
        for mask in 1u32..(1 << n) {
            let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if verts.len() < 3 {
                continue;
            }
            let two_regular = verts
                .iter()
                .all(|&v| verts.iter().filter(|&&u| g.has_edge(u, v)).count() == 2);
            if !two_regular {
                continue;
            }
            let (sub, _) = g.induced_subgraph(&verts).unwrap();
            if sub.is_connected() {
                by_len[verts.len()] += 1;
            }
        }
        by_len
    }

    fn count_by_enumeration(g: &Graph) -> Vec<usize> {
        let mut by_len = vec![0; g.n() + 1];
        for c in enumerate_chordless_cycles(g, None) {
            assert!(is_chordless_cycle(g, &c));
            by_len[c.len()] += 1;
        }
        by_len
    }

    #[test]
    fn five_hole_has_one_cycle() {
        let cycles = enumerate_chordless_cycles(&named::hole(5).unwrap(), None);
        assert_eq!(cycles, vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn complete_four_has_only_triangles() {
        let cycles = enumerate_chordless_cycles(&named::complete(4), None);
        assert_eq!(cycles.len(), 4);
        assert!(cycles.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn cube_chordless_cycles() {
        // Subset count on the 8-vertex cube: six 4-holes and four 6-holes.
        let g = named::cube();
        let expected = count_by_subsets(&g);
        assert_eq!(expected[4], 6);
        assert_eq!(expected[6], 4);
        assert_eq!(count_by_enumeration(&g), expected);
        let fours = enumerate_chordless_cycles(&g, Some(4));
        assert_eq!(fours.len(), 6);
    }

    #[test]
    fn agrees_with_subset_enumeration_on_random_graphs() {
        for seed in 0..40 {
            let g = named::gnp(11, [0.25, 0.4, 0.6][seed as usize % 3], seed).unwrap();
            assert_eq!(
                count_by_enumeration(&g),
                count_by_subsets(&g),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn canonical_form() {
        let g = named::hajos();
        for c in enumerate_chordless_cycles(&g, None) {
            assert_eq!(c[0], *c.iter().min().unwrap());
            assert!(c[1] < *c.last().unwrap());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = named::gnp(20, 0.3, 5).unwrap();
        assert!(holes_bounded(&g, 10).is_err());
    }
}
