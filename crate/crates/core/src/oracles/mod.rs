//! Slow, independent reference implementations used to cross-check the fast algorithms.

pub mod brute;
pub mod cycles;
pub mod forbidden;
pub mod signing;

pub use brute::{
    brute_chromatic, brute_clique_cutset, brute_max_clique, brute_mwss, is_proper_coloring,
    Certificate,
};
pub use cycles::{enumerate_chordless_cycles, holes_bounded, is_chordless_cycle, is_hole};
pub use forbidden::{find_forbidden_induced, verify_witness, ForbiddenKind, ForbiddenWitness};
pub use signing::{odd_signable_signing, Signing};
