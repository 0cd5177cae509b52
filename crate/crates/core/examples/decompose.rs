//! Clique cutset decomposition of two blown-up five-holes sharing an edge.
//!
//! `cargo run --example decompose`

use capfree::construct::{glue_atoms, Joint};
use capfree::decomposition::clique_cutset_tree;
use capfree::named;

fn main() -> capfree::Result<()> {
    let blown = named::hole(5)?.blow_up(&[2, 1, 1, 1, 1])?;
    let joint = Joint {
        atoms: (0, 1),
        left: vec![0, 1],
        right: vec![0, 1],
    };
    let (g, _) = glue_atoms(&[blown.clone(), blown], &[joint])?;
    let tree = clique_cutset_tree(&g);
    tree.validate(&g)?;
    println!(
        "{} vertices, {} edges, {} atoms",
        g.n(),
        g.m(),
        tree.leaf_count()
    );
    for cut in tree.cutsets() {
        println!("cutset {:?}", cut.as_ref());
    }
    for atom in tree.atoms() {
        println!("atom   {:?}", atom.as_ref());
    }
    println!("{}", tree.to_dot());
    Ok(())
}
