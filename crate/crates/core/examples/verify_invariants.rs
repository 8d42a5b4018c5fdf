//! Checks a few interaction invariants and prints counterexamples.

use sccadl::verify::{self, parse_invariants, TransitionSystem};

const INVARIANTS: &str = "\
# the controller never stops the alarm
never invoke(*, Alarm.stop)
publish(FireRisk) precedes activate(FireController)
publish(smokeLevel) leadsto invoke(FireController, Alarm.activate)
";

fn main() {
    let compiled = sccadl::compile(include_str!("../tests/fixtures/valid/fire.scc"));
    let model = compiled.checked_model().unwrap();
    let invariants = parse_invariants(INVARIANTS, model).unwrap();

    let ts = TransitionSystem::new(model);
    println!("{} reachable states", ts.count_states(usize::MAX).unwrap());
    let outcome = verify::check(&ts, &invariants, verify::state_limit_from_env()).unwrap();
    print!(
        "{}",
        verify::render_report(model, &invariants, &outcome.verdicts)
    );
}
