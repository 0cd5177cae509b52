//! Class membership with certificates on both sides.
//!
//! `cargo run --example recognize`

use capfree::named;
use capfree::recognition::{recognize, GraphClass, Verdict};
use capfree::{Graph, Limits};

fn main() -> capfree::Result<()> {
    let limits = Limits::default();
    let graphs: Vec<(&str, Graph)> = vec![
        ("five-hole", named::hole(5)?),
        ("six-hole", named::hole(6)?),
        ("house", named::house()),
        ("prism", named::triangular_prism()),
        ("four-wheel", named::wheel(4)?),
        ("blown five-hole", named::blown_five_hole(1)?),
    ];
    for (name, g) in &graphs {
        for class in [
            GraphClass::CapEvenHoleFree,
            GraphClass::CapFourHoleOddSignable,
        ] {
            let v = recognize(g, class, &limits)?;
            let what = match &v.verdict {
                Verdict::Accepted(cert) => format!("accepted, {} atom(s)", cert.atoms.len()),
                Verdict::Rejected(_) => match v.witness() {
                    Some(w) => format!("rejected, {} on {:?}", w.kind.name(), w.vertices),
                    None => "rejected".to_string(),
                },
                Verdict::Undecided { reason, .. } => format!("undecided: {reason}"),
            };
            assert!(v.check(g));
            println!("{name:>16} | {class:<22} | {what}");
        }
    }
    Ok(())
}
