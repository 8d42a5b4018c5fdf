//! Explicit-state semantics of an architecture.
//!
//! Values are abstracted away. The environment picks one source to publish,
//! activation tokens propagate along push edges, and the reaction runs to
//! completion before the next stimulus. One operator runs at a time; which
//! pending operator runs next is chosen nondeterministically.

use std::fmt;

use serde_json::{json, Value};

use crate::model::{
    ArchitectureModel, ContextId, ControllerId, MethodRef, OperatorId, Publication, Publisher,
    SourceId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Event {
    PublishSource(SourceId),
    Activate(OperatorId),
    PullFrom(OperatorId, Publisher),
    Publish(ContextId),
    SkipPublish(ContextId),
    InvokeAction(ControllerId, MethodRef),
    Quiesce,
}

impl Event {
    pub fn kind(self) -> &'static str {
        match self {
            Event::PublishSource(_) => "PublishSource",
            Event::Activate(_) => "Activate",
            Event::PullFrom(..) => "PullFrom",
            Event::Publish(_) => "Publish",
            Event::SkipPublish(_) => "SkipPublish",
            Event::InvokeAction(..) => "InvokeAction",
            Event::Quiesce => "Quiesce",
        }
    }

    pub fn display(self, model: &ArchitectureModel) -> EventDisplay<'_> {
        EventDisplay { event: self, model }
    }

    pub fn to_json(self, model: &ArchitectureModel) -> Value {
        let kind = self.kind();
        match self {
            Event::PublishSource(s) => json!({"kind": kind, "source": model.source_name(s)}),
            Event::Activate(op) => json!({"kind": kind, "operator": model.operator_name(op)}),
            Event::PullFrom(op, t) => json!({
                "kind": kind,
                "operator": model.operator_name(op),
                "target": model.publisher_name(t),
            }),
            Event::Publish(c) | Event::SkipPublish(c) => {
                json!({"kind": kind, "context": model.context(c).name})
            }
            Event::InvokeAction(c, m) => json!({
                "kind": kind,
                "controller": model.controller(c).name,
                "method": model.method_name(m),
            }),
            Event::Quiesce => json!({"kind": kind}),
        }
    }
}

pub struct EventDisplay<'m> {
    event: Event,
    model: &'m ArchitectureModel,
}

impl fmt::Display for EventDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.model;
        match self.event {
            Event::PublishSource(s) => write!(f, "PublishSource({})", m.source_name(s)),
            Event::Activate(op) => write!(f, "Activate({})", m.operator_name(op)),
            Event::PullFrom(op, t) => write!(
                f,
                "PullFrom({}, {})",
                m.operator_name(op),
                m.publisher_name(t)
            ),
            Event::Publish(c) => write!(f, "Publish({})", m.context(c).name),
            Event::SkipPublish(c) => write!(f, "SkipPublish({})", m.context(c).name),
            Event::InvokeAction(c, meth) => write!(
                f,
                "InvokeAction({}, {})",
                m.controller(c).name,
                m.method_name(meth)
            ),
            Event::Quiesce => f.write_str("Quiesce"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    Idle,
    Reacting(SourceId),
}

/// Progress of the operator currently running.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// Context operator; the argument is the next data requirement, and
    /// equals the requirement count once only the emission is left.
    Context(usize),
    /// Controller; methods before the argument can no longer be invoked.
    Controller(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SystemState {
    pub phase: Phase,
    /// Pending activation tokens, indexed like
    /// [`ArchitectureModel::operator_ids`].
    pub pending: Vec<u32>,
    pub running: Option<(usize, Step)>,
}

impl SystemState {
    pub fn is_idle(&self) -> bool {
        self.phase == Phase::Idle
    }
}

struct OpInfo {
    id: OperatorId,
    requirements: Vec<Publisher>,
    publication: Publication,
    /// Operator indices activated by this operator's publication.
    consumers: Vec<usize>,
    methods: Vec<MethodRef>,
}

pub struct TransitionSystem<'m> {
    model: &'m ArchitectureModel,
    ops: Vec<OpInfo>,
    sources: Vec<(SourceId, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("event {index} cannot occur here")]
pub struct ReplayError {
    /// Position of the first event without a matching transition.
    pub index: usize,
}

impl<'m> TransitionSystem<'m> {
    /// Builds the system for a model that passed every check.
    pub fn new(model: &'m ArchitectureModel) -> Self {
        let ids: Vec<OperatorId> = model.operator_ids().collect();
        let index = |op: OperatorId| ids.iter().position(|&x| x == op).unwrap();
        let consumers =
            |p: Publisher| -> Vec<usize> { model.consumers_of(p).into_iter().map(index).collect() };
        let ops = ids
            .iter()
            .map(|&id| {
                let contract = model.contract(id);
                OpInfo {
                    id,
                    requirements: contract.requirements.iter().map(|r| r.target).collect(),
                    publication: contract.emission.publish,
                    consumers: match id {
                        OperatorId::Context(c) => consumers(Publisher::Context(c)),
                        OperatorId::Controller(_) => Vec::new(),
                    },
                    methods: contract.emission.invokes.iter().map(|i| i.method).collect(),
                }
            })
            .collect();
        let sources = model
            .source_ids()
            .map(|s| (s, consumers(Publisher::Source(s))))
            .collect();
        TransitionSystem {
            model,
            ops,
            sources,
        }
    }

    pub fn model(&self) -> &'m ArchitectureModel {
        self.model
    }

    pub fn initial(&self) -> SystemState {
        SystemState {
            phase: Phase::Idle,
            pending: vec![0; self.ops.len()],
            running: None,
        }
    }

    /// Every transition out of `state`. No two share the same event.
    pub fn successors(&self, state: &SystemState) -> Vec<(Event, SystemState)> {
        let mut out = Vec::new();
        match (state.phase, state.running) {
            (Phase::Idle, _) => {
                for (s, consumers) in &self.sources {
                    let mut next = state.clone();
                    next.phase = Phase::Reacting(*s);
                    for &c in consumers {
                        next.pending[c] += 1;
                    }
                    out.push((Event::PublishSource(*s), next));
                }
            }
            (Phase::Reacting(_), None) => self.schedule(state, &mut out),
            (Phase::Reacting(_), Some((i, step))) => {
                let op = &self.ops[i];
                match step {
                    Step::Context(k) if k < op.requirements.len() => {
                        let mut next = state.clone();
                        next.running = Some((i, Step::Context(k + 1)));
                        out.push((Event::PullFrom(op.id, op.requirements[k]), next));
                    }
                    Step::Context(_) => {
                        let OperatorId::Context(c) = op.id else {
                            unreachable!("context step on a controller")
                        };
                        let mut published = state.clone();
                        published.running = None;
                        for &n in &op.consumers {
                            published.pending[n] += 1;
                        }
                        out.push((Event::Publish(c), published));
                        if op.publication == Publication::Maybe {
                            let mut skipped = state.clone();
                            skipped.running = None;
                            out.push((Event::SkipPublish(c), skipped));
                        }
                    }
                    Step::Controller(k) => {
                        let OperatorId::Controller(c) = op.id else {
                            unreachable!("controller step on a context")
                        };
                        for (j, &m) in op.methods.iter().enumerate().skip(k) {
                            let mut next = state.clone();
                            next.running = Some((i, Step::Controller(j + 1)));
                            out.push((Event::InvokeAction(c, m), next));
                        }
                        // Finishing emits nothing, so it is folded into
                        // whatever follows.
                        let mut done = state.clone();
                        done.running = None;
                        self.schedule(&done, &mut out);
                    }
                }
            }
        }
        out
    }

    fn schedule(&self, state: &SystemState, out: &mut Vec<(Event, SystemState)>) {
        let mut any = false;
        for (i, &n) in state.pending.iter().enumerate() {
            if n == 0 {
                continue;
            }
            any = true;
            let mut next = state.clone();
            next.pending[i] -= 1;
            next.running = Some((
                i,
                match self.ops[i].id {
                    OperatorId::Context(_) => Step::Context(0),
                    OperatorId::Controller(_) => Step::Controller(0),
                },
            ));
            out.push((Event::Activate(self.ops[i].id), next));
        }
        if !any {
            out.push((Event::Quiesce, self.initial()));
        }
    }

    /// Follows `trace` from the initial state.
    pub fn replay(&self, trace: &[Event]) -> Result<SystemState, ReplayError> {
        let mut state = self.initial();
        for (index, ev) in trace.iter().enumerate() {
            state = self
                .successors(&state)
                .into_iter()
                .find(|(e, _)| e == ev)
                .map(|(_, s)| s)
                .ok_or(ReplayError { index })?;
        }
        Ok(state)
    }

    /// Number of states reachable from the initial state, up to `limit`.
    pub fn count_states(&self, limit: usize) -> Option<usize> {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.initial()];
        seen.insert(self.initial());
        while let Some(s) = stack.pop() {
            for (_, n) in self.successors(&s) {
                if seen.insert(n.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    stack.push(n);
                }
            }
        }
        Some(seen.len())
    }
}
