//! Brute-force enumeration of maximal per-stimulus traces, straight from the
//! contracts, with invariants evaluated directly on each finite trace.
//!
//! Events are plain strings in the report format, so comparisons with the
//! checker go through rendering only.

use std::collections::{BTreeMap, BTreeSet};

use sccadl::model::{ArchitectureModel, OperatorId, Publication, Publisher};
use sccadl::verify::{EventPattern, Pattern};

pub type Trace = Vec<String>;

fn consumers(model: &ArchitectureModel, p: Publisher) -> Vec<String> {
    // Deliberately not `ArchitectureModel::consumers_of`.
    let mut out = Vec::new();
    for c in &model.contexts {
        if c.contract.activation.disjuncts.iter().any(|d| d.event == p) {
            out.push(c.name.clone());
        }
    }
    for k in &model.controllers {
        if k.contract.activation.disjuncts.iter().any(|d| d.event == p) {
            out.push(k.name.clone());
        }
    }
    out
}

fn operator(model: &ArchitectureModel, name: &str) -> OperatorId {
    if let Some(i) = model.contexts.iter().position(|c| c.name == name) {
        OperatorId::Context(sccadl::model::ContextId(i))
    } else {
        let i = model
            .controllers
            .iter()
            .position(|c| c.name == name)
            .unwrap();
        OperatorId::Controller(sccadl::model::ControllerId(i))
    }
}

fn publisher_name(model: &ArchitectureModel, p: Publisher) -> String {
    match p {
        Publisher::Source(s) => format!(
            "{}.{}",
            model.devices[s.device.0].name, model.devices[s.device.0].sources[s.index].name
        ),
        Publisher::Context(c) => model.contexts[c.0].name.clone(),
    }
}

fn walk(
    model: &ArchitectureModel,
    pending: BTreeMap<String, usize>,
    prefix: &mut Trace,
    out: &mut Vec<Trace>,
    cap: usize,
) {
    if out.len() > cap {
        return;
    }
    if pending.is_empty() {
        prefix.push("Quiesce".into());
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for name in pending.keys() {
        let mut rest = pending.clone();
        *rest.get_mut(name).unwrap() -= 1;
        if rest[name] == 0 {
            rest.remove(name);
        }
        let mark = prefix.len();
        prefix.push(format!("Activate({name})"));
        match operator(model, name) {
            OperatorId::Context(c) => {
                let ctx = &model.contexts[c.0];
                for r in &ctx.contract.requirements {
                    prefix.push(format!(
                        "PullFrom({name}, {})",
                        publisher_name(model, r.target)
                    ));
                }
                let mut published = rest.clone();
                for n in consumers(model, Publisher::Context(c)) {
                    *published.entry(n).or_default() += 1;
                }
                prefix.push(format!("Publish({name})"));
                walk(model, published, prefix, out, cap);
                prefix.pop();
                if ctx.contract.emission.publish == Publication::Maybe {
                    prefix.push(format!("SkipPublish({name})"));
                    walk(model, rest.clone(), prefix, out, cap);
                    prefix.pop();
                }
            }
            OperatorId::Controller(k) => {
                let methods: Vec<String> = model.controllers[k.0]
                    .contract
                    .emission
                    .invokes
                    .iter()
                    .map(|i| {
                        let iface = &model.interfaces[i.method.interface.0];
                        format!("{}.{}", iface.name, iface.methods[i.method.index].name)
                    })
                    .collect();
                for mask in 0u32..(1 << methods.len()) {
                    let before = prefix.len();
                    for (j, m) in methods.iter().enumerate() {
                        if mask & (1 << j) != 0 {
                            prefix.push(format!("InvokeAction({name}, {m})"));
                        }
                    }
                    walk(model, rest.clone(), prefix, out, cap);
                    prefix.truncate(before);
                }
            }
        }
        prefix.truncate(mark);
    }
}

/// All maximal traces starting with a publication of each source, keyed by
/// qualified source name.
pub fn maximal_traces(model: &ArchitectureModel) -> BTreeMap<String, Vec<Trace>> {
    maximal_traces_capped(model, usize::MAX).expect("uncapped")
}

/// Like [`maximal_traces`], giving up once a source has more than `cap`
/// traces.
pub fn maximal_traces_capped(
    model: &ArchitectureModel,
    cap: usize,
) -> Option<BTreeMap<String, Vec<Trace>>> {
    let mut all = BTreeMap::new();
    for (di, d) in model.devices.iter().enumerate() {
        for (si, s) in d.sources.iter().enumerate() {
            let src = Publisher::Source(sccadl::model::SourceId {
                device: sccadl::model::DeviceId(di),
                index: si,
            });
            let name = format!("{}.{}", d.name, s.name);
            let mut pending = BTreeMap::new();
            for c in consumers(model, src) {
                *pending.entry(c).or_default() += 1;
            }
            let mut out = Vec::new();
            walk(
                model,
                pending,
                &mut vec![format!("PublishSource({name})")],
                &mut out,
                cap,
            );
            if out.len() > cap {
                return None;
            }
            all.insert(name, out);
        }
    }
    Some(all)
}

/// Operators activated and action methods invoked somewhere in the trace.
pub fn activated(trace: &Trace) -> BTreeSet<String> {
    trace
        .iter()
        .filter_map(|e| {
            if let Some(op) = e.strip_prefix("Activate(") {
                Some(op.trim_end_matches(')').to_string())
            } else {
                e.strip_prefix("InvokeAction(").map(|rest| {
                    rest.split(", ")
                        .nth(1)
                        .unwrap()
                        .trim_end_matches(')')
                        .to_string()
                })
            }
        })
        .collect()
}

/// Union and intersection of [`activated`] over all traces.
pub fn impact_sets(traces: &[Trace]) -> (BTreeSet<String>, BTreeSet<String>) {
    let sets: Vec<BTreeSet<String>> = traces.iter().map(activated).collect();
    let union = sets.iter().flatten().cloned().collect();
    let inter = sets
        .iter()
        .skip(1)
        .fold(sets.first().cloned().unwrap_or_default(), |acc, s| {
            acc.intersection(s).cloned().collect()
        });
    (union, inter)
}

/// Predicate on rendered events, with the expected strings built once.
fn matcher(model: &ArchitectureModel, p: EventPattern) -> impl Fn(&str) -> bool {
    enum M {
        Exact(String),
        Prefix(String),
        PrefixSuffix(String, String),
    }
    let m = match p {
        EventPattern::Publish(src @ Publisher::Source(_)) => {
            M::Exact(format!("PublishSource({})", publisher_name(model, src)))
        }
        EventPattern::Publish(Publisher::Context(c)) => {
            M::Exact(format!("Publish({})", model.contexts[c.0].name))
        }
        EventPattern::Activate(None) => M::Prefix("Activate(".into()),
        EventPattern::Activate(Some(op)) => {
            M::Exact(format!("Activate({})", model.operator_name(op)))
        }
        EventPattern::Invoke(None, m) => M::PrefixSuffix(
            "InvokeAction(".into(),
            format!(", {})", model.method_name(m)),
        ),
        EventPattern::Invoke(Some(c), m) => M::Exact(format!(
            "InvokeAction({}, {})",
            model.controllers[c.0].name,
            model.method_name(m)
        )),
    };
    move |event: &str| match &m {
        M::Exact(s) => event == s,
        M::Prefix(p) => event.starts_with(p.as_str()),
        M::PrefixSuffix(p, s) => event.starts_with(p.as_str()) && event.ends_with(s.as_str()),
    }
}

/// Direct finite-trace evaluation of a pattern.
pub fn satisfies(model: &ArchitectureModel, pattern: Pattern, trace: &Trace) -> bool {
    Evaluator::new(model, pattern).satisfies(trace)
}

struct Evaluator<A, B> {
    pattern: Pattern,
    a: A,
    b: B,
}

impl Evaluator<Box<dyn Fn(&str) -> bool>, Box<dyn Fn(&str) -> bool>> {
    fn new(model: &ArchitectureModel, pattern: Pattern) -> Self {
        let (a, b) = match pattern {
            Pattern::Never(e) => (e, e),
            Pattern::Precedes(a, b) | Pattern::LeadsTo(a, b) => (a, b),
        };
        Evaluator {
            pattern,
            a: Box::new(matcher(model, a)),
            b: Box::new(matcher(model, b)),
        }
    }

    fn satisfies(&self, trace: &Trace) -> bool {
        let hits = |f: &dyn Fn(&str) -> bool| -> Vec<usize> {
            trace
                .iter()
                .enumerate()
                .filter(|(_, ev)| f(ev))
                .map(|(i, _)| i)
                .collect()
        };
        match self.pattern {
            Pattern::Never(_) => hits(&self.a).is_empty(),
            Pattern::Precedes(..) => {
                let a = hits(&self.a);
                hits(&self.b).iter().all(|&i| a.iter().any(|&j| j <= i))
            }
            Pattern::LeadsTo(..) => {
                let b = hits(&self.b);
                hits(&self.a).iter().all(|&i| b.iter().any(|&j| j >= i))
            }
        }
    }
}

/// `None` when the pattern holds on every trace, else the length of the
/// shortest violating trace.
pub fn shortest_violation(
    model: &ArchitectureModel,
    pattern: Pattern,
    traces: &BTreeMap<String, Vec<Trace>>,
) -> Option<usize> {
    let eval = Evaluator::new(model, pattern);
    traces
        .values()
        .flatten()
        .filter(|t| !eval.satisfies(t))
        .map(Vec::len)
        .min()
}

/// A battery of invariants over every element of `model`: for each
/// operator and invoked method, never/precedes/leadsto forms in several
/// combinations.
pub fn invariant_battery(model: &ArchitectureModel) -> String {
    let mut lines = Vec::new();
    let mut publishers: Vec<String> = Vec::new();
    for d in &model.devices {
        for s in &d.sources {
            publishers.push(format!("{}.{}", d.name, s.name));
        }
    }
    publishers.extend(model.contexts.iter().map(|c| c.name.clone()));
    let operators: Vec<String> = model
        .contexts
        .iter()
        .map(|c| c.name.clone())
        .chain(model.controllers.iter().map(|c| c.name.clone()))
        .collect();
    let mut invokes: Vec<String> = Vec::new();
    for k in &model.controllers {
        for i in &k.contract.emission.invokes {
            let iface = &model.interfaces[i.method.interface.0];
            invokes.push(format!(
                "invoke({}, {}.{})",
                k.name, iface.name, iface.methods[i.method.index].name
            ));
            invokes.push(format!(
                "invoke(*, {}.{})",
                iface.name, iface.methods[i.method.index].name
            ));
        }
    }
    for iface in &model.interfaces {
        for m in &iface.methods {
            lines.push(format!("never invoke(*, {}.{})", iface.name, m.name));
        }
    }
    let mut events: Vec<String> = publishers.iter().map(|p| format!("publish({p})")).collect();
    events.extend(operators.iter().map(|o| format!("activate({o})")));
    events.push("activate(*)".into());
    events.extend(invokes);
    for e in &events {
        lines.push(format!("never {e}"));
    }
    for a in &events {
        for b in &events {
            if a != b {
                lines.push(format!("{a} precedes {b}"));
                lines.push(format!("{a} leadsto {b}"));
            }
        }
    }
    lines.join("\n")
}
