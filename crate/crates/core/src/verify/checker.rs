//! Explicit-state checking of invariants over the product of the
//! transition system with a per-stimulus monitor.

use std::collections::{HashMap, HashSet, VecDeque};

use super::invariant::{InvariantSpec, Pattern};
use super::ts::{Event, SystemState, TransitionSystem};
use crate::diagnostics::{Code, Diagnostic, Span};

pub const DEFAULT_STATE_LIMIT: usize = 1_000_000;
pub const STATE_LIMIT_ENV: &str = "SCCADL_STATE_LIMIT";

/// The cap from `SCCADL_STATE_LIMIT`, or the default when unset or invalid.
pub fn state_limit_from_env() -> usize {
    std::env::var(STATE_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n >= 1)
        .unwrap_or(DEFAULT_STATE_LIMIT)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// A shortest trace from a stimulus to `Quiesce` violating the pattern.
    Violated(Vec<Event>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub verdicts: Vec<Verdict>,
    /// Largest product state space explored for a single invariant.
    pub max_states: usize,
}

/// Monitor state. `flag` is "a seen" for precedes and "obligation open" for
/// leadsto.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
struct Monitor {
    violated: bool,
    flag: bool,
}

impl Monitor {
    /// Advances on `event`; returns whether a `Quiesce` closes a violating
    /// trace.
    fn step(&mut self, pattern: Pattern, event: Event) -> bool {
        if event == Event::Quiesce {
            let bad = self.violated || matches!(pattern, Pattern::LeadsTo(..)) && self.flag;
            *self = Monitor::default();
            return bad;
        }
        match pattern {
            Pattern::Never(e) => self.violated |= e.matches(event),
            Pattern::Precedes(a, b) => {
                self.flag |= a.matches(event);
                self.violated |= b.matches(event) && !self.flag;
            }
            Pattern::LeadsTo(a, b) => {
                if a.matches(event) {
                    self.flag = true;
                }
                if b.matches(event) {
                    self.flag = false;
                }
            }
        }
        false
    }
}

type Node = (SystemState, Monitor);

fn limit_error(limit: usize) -> Diagnostic {
    Diagnostic::new(
        Code::StateLimitExceeded,
        Span::default(),
        format!("state space exceeds the limit of {limit} states"),
    )
}

/// Depth-first search for any violation. Returns the number of states
/// visited and whether a violation exists.
fn explore(
    ts: &TransitionSystem<'_>,
    pattern: Pattern,
    limit: usize,
) -> Result<(usize, bool), Diagnostic> {
    let start: Node = (ts.initial(), Monitor::default());
    let mut seen: HashSet<Node> = HashSet::from([start.clone()]);
    let mut stack = vec![start];
    let mut violated = false;
    while let Some((state, monitor)) = stack.pop() {
        for (event, next) in ts.successors(&state) {
            let mut m = monitor;
            if m.step(pattern, event) {
                violated = true;
            }
            let node = (next, m);
            if !seen.contains(&node) {
                if seen.len() >= limit {
                    return Err(limit_error(limit));
                }
                seen.insert(node.clone());
                stack.push(node);
            }
        }
    }
    Ok((seen.len(), violated))
}

/// Breadth-first search for a shortest violating stimulus trace.
fn shortest_counterexample(ts: &TransitionSystem<'_>, pattern: Pattern) -> Option<Vec<Event>> {
    let start: Node = (ts.initial(), Monitor::default());
    let mut parent: HashMap<Node, (Node, Event)> = HashMap::new();
    let mut queue = VecDeque::from([start.clone()]);
    let mut seen: HashSet<Node> = HashSet::from([start.clone()]);
    while let Some(node) = queue.pop_front() {
        for (event, next) in ts.successors(&node.0) {
            let mut m = node.1;
            if m.step(pattern, event) {
                let mut trace = vec![event];
                let mut cur = &node;
                while let Some((prev, ev)) = parent.get(cur) {
                    trace.push(*ev);
                    cur = prev;
                }
                trace.reverse();
                return Some(trace);
            }
            // Every other Quiesce returns to the start node, so no path
            // through it can be shorter.
            let child = (next, m);
            if seen.insert(child.clone()) {
                parent.insert(child.clone(), (node.clone(), event));
                queue.push_back(child);
            }
        }
    }
    None
}

/// Checks each invariant exhaustively over all stimuli, interleavings and
/// choices.
pub fn check(
    ts: &TransitionSystem<'_>,
    invariants: &[InvariantSpec],
    state_limit: usize,
) -> Result<CheckOutcome, Diagnostic> {
    let mut verdicts = Vec::with_capacity(invariants.len());
    let mut max_states = 0;
    for inv in invariants {
        let (states, violated) = explore(ts, inv.pattern, state_limit)?;
        max_states = max_states.max(states);
        verdicts.push(if violated {
            Verdict::Violated(
                shortest_counterexample(ts, inv.pattern)
                    .expect("a violation found by the search has a witness"),
            )
        } else {
            Verdict::Holds
        });
    }
    Ok(CheckOutcome {
        verdicts,
        max_states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{resolve, ArchitectureModel};
    use crate::syntax::parse;
    use crate::verify::parse_invariants;

    fn fire() -> ArchitectureModel {
        resolve(&parse(include_str!("../../tests/fixtures/valid/fire.scc")).0).unwrap()
    }

    fn verdicts(m: &ArchitectureModel, text: &str) -> Vec<Verdict> {
        let ts = TransitionSystem::new(m);
        let invs = parse_invariants(text, m).unwrap();
        check(&ts, &invs, DEFAULT_STATE_LIMIT).unwrap().verdicts
    }

    fn show(m: &ArchitectureModel, trace: &[Event]) -> Vec<String> {
        trace.iter().map(|e| e.display(m).to_string()).collect()
    }

    #[test]
    fn stop_is_never_invoked() {
        assert_eq!(
            verdicts(&fire(), "never invoke(*, Alarm.stop)"),
            [Verdict::Holds]
        );
    }

    #[test]
    fn leadsto_counterexample_skips_publication() {
        let m = fire();
        let v = verdicts(
            &m,
            "publish(smokeLevel) leadsto invoke(FireController, Alarm.activate)",
        );
        let Verdict::Violated(trace) = &v[0] else {
            panic!("expected a violation");
        };
        assert_eq!(
            show(&m, trace),
            [
                "PublishSource(SmokeDetector.smokeLevel)",
                "Activate(SmokePresence)",
                "Publish(SmokePresence)",
                "Activate(FireRisk)",
                "PullFrom(FireRisk, Thermometer.temperature)",
                "SkipPublish(FireRisk)",
                "Quiesce",
            ]
        );
        TransitionSystem::new(&m).replay(trace).unwrap();
    }

    #[test]
    fn activation_precedes_invocation() {
        assert_eq!(
            verdicts(
                &fire(),
                "activate(FireController) precedes invoke(FireController, Alarm.activate)"
            ),
            [Verdict::Holds]
        );
    }

    #[test]
    fn never_violation_is_shortest() {
        let m = fire();
        let v = verdicts(&m, "never activate(*)");
        let Verdict::Violated(trace) = &v[0] else {
            panic!("expected a violation");
        };
        assert_eq!(
            show(&m, trace),
            [
                "PublishSource(SmokeDetector.smokeLevel)",
                "Activate(SmokePresence)",
                "Publish(SmokePresence)",
                "Activate(FireRisk)",
                "PullFrom(FireRisk, Thermometer.temperature)",
                "SkipPublish(FireRisk)",
                "Quiesce",
            ]
        );
    }

    #[test]
    fn state_limit_is_enforced() {
        let m = fire();
        let ts = TransitionSystem::new(&m);
        let invs = parse_invariants("never activate(*)", &m).unwrap();
        let err = check(&ts, &invs, 3).unwrap_err();
        assert_eq!(err.code, Code::StateLimitExceeded);
        assert!(check(&ts, &invs, 1000).is_ok());
    }

    #[test]
    fn empty_model_holds_everything() {
        let m = ArchitectureModel::default();
        let ts = TransitionSystem::new(&m);
        assert!(check(&ts, &[], 10).unwrap().verdicts.is_empty());
    }
}
