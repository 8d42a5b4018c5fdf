//! Writes a Promela model with one LTL claim per invariant. With SPIN:
//!
//! ```text
//! spin -a -N inv0 fire.pml && cc -o pan pan.c && ./pan -a
//! ```

use sccadl::verify::{emit_promela, parse_invariants};

fn main() {
    let compiled = sccadl::compile(include_str!("../tests/fixtures/valid/fire.scc"));
    let model = compiled.checked_model().unwrap();
    let invariants = parse_invariants(
        "publish(smokeLevel) leadsto activate(FireRisk)\nnever invoke(*, Alarm.stop)",
        model,
    )
    .unwrap();
    let text = emit_promela(model, &invariants);
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(&path, text).expect("writable path"),
        None => print!("{text}"),
    }
}
