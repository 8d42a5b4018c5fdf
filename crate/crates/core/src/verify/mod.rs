//! Invariant checking over the finite per-stimulus semantics, plus
//! Promela export.

mod checker;
mod invariant;
mod promela;
mod ts;

pub use checker::{
    check, state_limit_from_env, CheckOutcome, Verdict, DEFAULT_STATE_LIMIT, STATE_LIMIT_ENV,
};
pub use invariant::{parse_invariants, EventPattern, InvariantSpec, Pattern};
pub use promela::emit_promela;
pub use ts::{Event, EventDisplay, Phase, ReplayError, Step, SystemState, TransitionSystem};

use serde_json::{json, Value};

use crate::model::ArchitectureModel;

/// `HOLDS <inv>` or `VIOLATED <inv>` per invariant, each violation followed
/// by its trace, one indented event per line.
pub fn render_report(
    model: &ArchitectureModel,
    invariants: &[InvariantSpec],
    verdicts: &[Verdict],
) -> String {
    let mut out = String::new();
    for (inv, verdict) in invariants.iter().zip(verdicts) {
        match verdict {
            Verdict::Holds => out.push_str(&format!("HOLDS {inv}\n")),
            Verdict::Violated(trace) => {
                out.push_str(&format!("VIOLATED {inv}\n"));
                for e in trace {
                    out.push_str(&format!("  {}\n", e.display(model)));
                }
            }
        }
    }
    out
}

pub fn report_json(
    model: &ArchitectureModel,
    invariants: &[InvariantSpec],
    verdicts: &[Verdict],
) -> Value {
    let verdicts: Vec<Value> = invariants
        .iter()
        .zip(verdicts)
        .map(|(inv, v)| match v {
            Verdict::Holds => json!({"invariant": inv.text, "verdict": "HOLDS"}),
            Verdict::Violated(trace) => json!({
                "invariant": inv.text,
                "verdict": "VIOLATED",
                "trace": trace.iter().map(|e| e.to_json(model)).collect::<Vec<_>>(),
            }),
        })
        .collect();
    json!({ "verdicts": verdicts })
}
