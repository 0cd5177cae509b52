//! Maximum weight stable set through the clique cutset tree, with the
//! count of reweighted cutset vertices.
//!
//! `cargo run --example mwss`

use capfree::construct::{generate_instance, GeneratorParams};
use capfree::named;
use capfree::solvers::mwss_with_trace;
use capfree::Limits;
use rand::Rng;

fn main() -> capfree::Result<()> {
    let limits = Limits::default();
    let mut rng = named::prng(5);
    for seed in 1..=5 {
        let inst = generate_instance(&GeneratorParams {
            seed,
            glue: 2,
            ..Default::default()
        })?;
        let w: Vec<i64> = (0..inst.graph.n())
            .map(|_| rng.random_range(1..=50))
            .collect();
        let g = inst.graph.with_weights(w)?;
        let (r, trace) = mwss_with_trace(&g, &limits)?;
        println!(
            "seed {seed}: {} vertices, weight {} on {:?}",
            g.n(),
            r.weight,
            r.set
        );
        println!("        {trace:?}");
    }
    Ok(())
}
