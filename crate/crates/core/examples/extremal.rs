//! The blown-up five-hole: chromatic number meets one and a half times the clique number.
//!
//! `cargo run --example extremal`

use capfree::named;
use capfree::solvers::{chromatic_number, clique_number, mwss};
use capfree::Limits;

fn main() -> capfree::Result<()> {
    let limits = Limits::default();
    for k in 1..=3 {
        let g = named::blown_five_hole(k)?;
        let (omega, _) = clique_number(&g, &limits)?;
        let alpha = mwss(&g, &limits)?.weight;
        let (chi, _) = chromatic_number(&g, &limits)?;
        println!(
            "k={k}: n {}, omega {omega}, alpha {alpha}, chi {chi}, ceil(3 omega / 2) {}",
            g.n(),
            (3 * omega).div_ceil(2)
        );
    }
    Ok(())
}
