//! Random class members with their construction records.
//!
//! `cargo run --example generate -- 42`

use capfree::construct::{generate_instance, GeneratorParams};
use capfree::recognition::GraphClass;

fn main() -> capfree::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let params = GeneratorParams {
        seed,
        ears: 3,
        max_ear_len: 9,
        glue: 2,
        class: GraphClass::CapEvenHoleFree,
        ..Default::default()
    };
    let inst = generate_instance(&params)?;
    println!(
        "{} vertices, {} edges, {} ears placed",
        inst.graph.n(),
        inst.graph.m(),
        inst.provenance.ears_placed().0
    );
    print!("{}", inst.graph.to_text());
    println!(
        "{}",
        serde_json::to_string_pretty(&inst.provenance.to_json()).unwrap()
    );
    Ok(())
}
