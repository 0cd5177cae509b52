//! Desk-scale guards for the exponential routines.
//!
//! Every brute-force oracle and exact search consults a [`Limits`] value
//! instead of a hard-coded constant, so tests and the CLI `--budget` flag can
//! move the guards without touching the algorithms.

/// Size and work caps for oracles and exact searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest graph handed to the chordless-cycle based oracles
    /// (hole, cap, wheel, theta, prism search and odd-signability).
    pub oracle_vertices: usize,
    /// Maximum number of path extensions a single chordless-cycle enumeration may perform.
    pub cycle_budget: u64,
    /// Largest graph for brute-force chromatic number.
    pub chromatic_vertices: usize,
    /// Largest graph for brute-force maximum weight stable set.
    pub mwss_vertices: usize,
    /// Largest graph for brute-force maximum clique.
    pub clique_vertices: usize,
    /// Largest graph for brute-force clique cutset search.
    pub cutset_vertices: usize,
    /// Node cap for the exact small-width treewidth search.
    pub treewidth_nodes: u64,
}

/// Bitmask-based brute force cannot go past one machine word.
pub const BRUTE_FORCE_CEILING: usize = 64;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            oracle_vertices: 48,
            cycle_budget: 20_000_000,
            chromatic_vertices: 16,
            mwss_vertices: 24,
            clique_vertices: 24,
            cutset_vertices: 16,
            treewidth_nodes: 2_000_000,
        }
    }
}

impl Limits {
    /// Sets every vertex-count guard to `n`; work budgets keep their defaults.
    pub fn uniform(n: usize) -> Self {
        Limits {
            oracle_vertices: n,
            chromatic_vertices: n,
            mwss_vertices: n,
            clique_vertices: n,
            cutset_vertices: n,
            ..Limits::default()
        }
    }
}
