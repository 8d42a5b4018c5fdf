//! May/must impact and activators for the fire alarm architecture.

use sccadl::dataflow::{self, build_graph};

fn main() {
    let compiled = sccadl::compile(include_str!("../tests/fixtures/valid/fire.scc"));
    let model = compiled.checked_model().unwrap();
    let g = build_graph(model);

    let smoke = g.lookup("SmokeDetector.smokeLevel").unwrap();
    println!("may:   {:?}", g.names(&dataflow::may_impact(&g, smoke)));
    println!("must:  {:?}", g.names(&dataflow::must_impact(&g, smoke)));

    let alarm = g.lookup("Alarm.activate").unwrap();
    println!(
        "activators of Alarm.activate: {:?}",
        g.names(&dataflow::activators_of(&g, alarm))
    );

    for (element, code) in dataflow::dead_elements(&g) {
        println!("{code} {}", g.name(element));
    }
}
