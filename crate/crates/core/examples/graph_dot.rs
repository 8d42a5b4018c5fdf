//! Prints the interaction graph of a file (default: the HVAC fixture) as
//! Graphviz DOT. Pipe into `dot -Tsvg` to render.

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable file"),
        None => include_str!("../tests/fixtures/valid/hvac.scc").to_string(),
    };
    let compiled = sccadl::compile(&text);
    let Some(model) = compiled.checked_model() else {
        for d in &compiled.diagnostics {
            eprintln!("{d}");
        }
        std::process::exit(1);
    };
    print!(
        "{}",
        sccadl::dataflow::to_dot(&sccadl::dataflow::build_graph(model))
    );
}
