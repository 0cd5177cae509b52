//! Colouring and maximum weight stable set on top of the clique cutset
//! decomposition, the skeletons of the atoms and their tree decompositions.

mod coloring;
mod stable;

pub use coloring::{
    atom_chromatic, chromatic_number, combine_colorings, greedy_color, q_color, Coloring,
};
pub use stable::{
    clique_number, mwss, mwss_with_trace, reduce_to_skeleton_weights, stable_set_dp, MwssTrace,
    StableSetResult,
};
