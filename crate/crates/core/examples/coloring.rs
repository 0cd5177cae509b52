//! Greedy colouring against the exact `q`-colouring dynamic program.
//!
//! `cargo run --example coloring`

use capfree::named;
use capfree::solvers::{clique_number, greedy_color, q_color};
use capfree::treewidth::tree_decomposition;
use capfree::Limits;

fn main() -> capfree::Result<()> {
    let limits = Limits::default();
    for (name, g) in [
        ("Hajos graph", named::hajos()),
        ("seven-hole", named::hole(7)?),
        ("cube", named::cube()),
    ] {
        let (omega, _) = clique_number(&g, &limits)?;
        let greedy = greedy_color(&g);
        let td = tree_decomposition(&g, &limits)?;
        let mut q = 1;
        let exact = loop {
            if let Some(c) = q_color(&g, &td, q)? {
                break c;
            }
            q += 1;
        };
        println!(
            "{name}: omega {omega}, greedy {}, exact {} {:?}",
            greedy.num_colors(),
            q,
            exact.colors
        );
    }
    Ok(())
}
