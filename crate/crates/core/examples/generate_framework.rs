//! Generates the Rust framework for the fire alarm into a temporary
//! directory and shows what the developer has to implement.

use sccadl::codegen;

fn main() {
    let compiled = sccadl::compile(include_str!("../tests/fixtures/valid/fire.scc"));
    let model = compiled.checked_model().unwrap();

    let out = std::env::temp_dir().join("sccadl-example");
    let files = codegen::generate_with_descriptor(model, &out).expect("writable temp dir");
    println!(
        "wrote {} files under {}",
        files.files.len(),
        files.dir.display()
    );

    let rendered = codegen::render_skeletons(model).unwrap();
    print!("{}", rendered["fire_risk.rs"]);

    // Callbacks, as recorded for drift detection.
    for op in model.operator_ids() {
        for sig in codegen::map_contract(model, op) {
            println!("{}::{}", model.operator_name(op), sig.name);
        }
    }
}
