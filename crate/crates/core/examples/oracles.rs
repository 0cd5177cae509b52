//! The exhaustive reference routines on small graphs.
//!
//! `cargo run --example oracles`

use capfree::named;
use capfree::oracles::{
    brute_chromatic, enumerate_chordless_cycles, find_forbidden_induced, odd_signable_signing,
    ForbiddenKind,
};
use capfree::Limits;

fn main() -> capfree::Result<()> {
    let limits = Limits::default();
    let cube = named::cube();
    println!(
        "cube chordless cycles: {}",
        enumerate_chordless_cycles(&cube, None).len()
    );
    println!("cube chromatic: {:?}", brute_chromatic(&cube, &limits)?);
    for (name, g) in [
        ("prism", named::triangular_prism()),
        ("K2,3", named::complete_bipartite(2, 3)),
        ("wheel 4", named::wheel(4)?),
        ("seven-hole", named::hole(7)?),
    ] {
        let signable = odd_signable_signing(&g, &limits)?.is_some();
        let found: Vec<&str> = [
            ForbiddenKind::Theta,
            ForbiddenKind::Prism,
            ForbiddenKind::EvenWheel,
            ForbiddenKind::EvenHole,
        ]
        .into_iter()
        .filter_map(|k| {
            find_forbidden_induced(&g, k, &limits)
                .ok()
                .flatten()
                .map(|_| k.name())
        })
        .collect();
        println!("{name}: odd-signable {signable}, contains {found:?}");
    }
    Ok(())
}
