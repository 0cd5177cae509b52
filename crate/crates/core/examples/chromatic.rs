//! Chromatic numbers of generated instances next to their clique numbers.
//!
//! `cargo run --example chromatic`

use capfree::construct::{generate_instance, GeneratorParams};
use capfree::recognition::GraphClass;
use capfree::solvers::chromatic_number;
use capfree::Limits;

fn main() -> capfree::Result<()> {
    let limits = Limits::default();
    for seed in 1..=8 {
        let class = if seed % 2 == 0 {
            GraphClass::CapEvenHoleFree
        } else {
            GraphClass::CapFourHoleOddSignable
        };
        let params = GeneratorParams {
            seed,
            class,
            ears: 2,
            max_ear_len: 8,
            ..Default::default()
        };
        let inst = generate_instance(&params)?;
        let (chi, c) = chromatic_number(&inst.graph, &limits)?;
        assert!(c.is_proper(&inst.graph));
        println!(
            "seed {seed}: {} vertices, omega {}, chi {chi}",
            inst.graph.n(),
            inst.provenance.omega
        );
    }
    Ok(())
}
