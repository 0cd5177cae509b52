//! Tree decompositions: the ear triangulation of a skeleton, the decomposition
//! of a generated graph, and its nice form.
//!
//! `cargo run --example treewidth`

use capfree::construct::{random_skeleton, GeneratorParams};
use capfree::recognition::GraphClass;
use capfree::treewidth::{
    is_chordal, nice_decomposition, tree_decomposition, triangulation_from_ears,
};
use capfree::Limits;

fn main() -> capfree::Result<()> {
    let limits = Limits::default();
    let params = GeneratorParams {
        seed: 11,
        ears: 5,
        max_ear_len: 7,
        class: GraphClass::CapFourHoleOddSignable,
        ..Default::default()
    };
    let (f, ears) = random_skeleton(&params)?;
    let tri = triangulation_from_ears(&f, &ears, &limits)?;
    println!(
        "skeleton: {} vertices, base hole {:?}, {} ears",
        f.n(),
        ears.base,
        ears.ears.len()
    );
    println!(
        "triangulation chordal: {}, extra edges: {}",
        is_chordal(&tri),
        tri.m() - f.m()
    );

    let td = tree_decomposition(&f, &limits)?;
    td.validate(&f)?;
    println!("skeleton width {} with {} bags", td.width(), td.bags.len());

    let nice = nice_decomposition(&td, &f)?;
    nice.validate(&f)?;
    println!(
        "nice form: {} nodes, width {}",
        nice.nodes.len(),
        nice.width()
    );
    Ok(())
}
