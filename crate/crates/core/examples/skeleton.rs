//! Universal clique, twin classes and the triangle-free skeleton of an atom.
//!
//! `cargo run --example skeleton`

use capfree::named;
use capfree::skeleton::{
    clique_number_via_skeleton, extract_skeleton, reconstruct_atom, SkeletonOutcome,
};

fn main() -> capfree::Result<()> {
    let atom = named::hole(7)?
        .blow_up(&[3, 1, 2, 1, 2, 1, 1])?
        .add_universal_clique(2);
    match extract_skeleton(&atom) {
        SkeletonOutcome::Skeleton(sd) => {
            println!("universal {:?}", sd.universal.as_ref());
            for (i, k) in sd.cliques.iter().enumerate() {
                println!("skeleton vertex {i}: clique {:?}", k.as_ref());
            }
            println!(
                "skeleton edges {:?}",
                sd.skeleton.edges().collect::<Vec<_>>()
            );
            println!("clique number {}", clique_number_via_skeleton(&sd));
            assert_eq!(reconstruct_atom(&sd), atom);
        }
        other => println!("{other:?}"),
    }
    Ok(())
}
