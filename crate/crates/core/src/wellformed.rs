//! Style and contract rules over a resolved model.
//!
//! Each check is a pure function of the model; running them in any order
//! yields the same diagnostics.

use std::collections::BTreeMap;

use crate::codegen::{self, FrameworkDescriptor};
use crate::diagnostics::{has_errors, sort_diagnostics, Code, Diagnostic};
use crate::model::{ArchitectureModel, ContextId, OperatorId, Publication, Publisher};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub diagnostics: Vec<Diagnostic>,
    pub ok: bool,
}

impl CheckReport {
    pub fn new(mut diagnostics: Vec<Diagnostic>) -> Self {
        sort_diagnostics(&mut diagnostics);
        let ok = !has_errors(&diagnostics);
        CheckReport { diagnostics, ok }
    }

    pub fn merge(reports: impl IntoIterator<Item = CheckReport>) -> Self {
        CheckReport::new(reports.into_iter().flat_map(|r| r.diagnostics).collect())
    }
}

/// Layer rules: contexts never invoke actions, controllers never publish,
/// controllers are only activated by contexts and pull nothing.
///
/// Sources have no contract in the model, so "a source consumes something"
/// cannot be represented and needs no check here.
pub fn check_layering(model: &ArchitectureModel) -> CheckReport {
    let mut diags = Vec::new();
    for ctx in &model.contexts {
        for inv in &ctx.contract.emission.invokes {
            diags.push(Diagnostic::new(
                Code::LayeringViolation,
                inv.span,
                format!(
                    "context `{}` cannot invoke `{}`; only controllers command actions",
                    ctx.name,
                    model.method_name(inv.method)
                ),
            ));
        }
    }
    for ctl in &model.controllers {
        let contract = &ctl.contract;
        if contract.emission.publish != Publication::Never {
            diags.push(Diagnostic::new(
                Code::LayeringViolation,
                contract.emission.publish_span.unwrap_or(ctl.span),
                format!("controller `{}` cannot publish", ctl.name),
            ));
        }
        for d in &contract.activation.disjuncts {
            if let Publisher::Source(s) = d.event {
                diags.push(Diagnostic::new(
                    Code::LayeringViolation,
                    d.span,
                    format!(
                        "controller `{}` is activated by source `{}`; controllers may only \
                         be activated by context operators",
                        ctl.name,
                        model.source_name(s)
                    ),
                ));
            }
        }
        for r in &contract.requirements {
            diags.push(Diagnostic::new(
                Code::ControllerDataRequirement,
                r.span,
                format!(
                    "controller `{}` cannot require `{}`; pull data in a context operator",
                    ctl.name,
                    model.publisher_name(r.target)
                ),
            ));
        }
    }
    CheckReport::new(diags)
}

/// Requirement annotations must match their target (E002) and all
/// activation disjuncts of one operator must carry the same type (E013).
pub fn check_types(model: &ArchitectureModel) -> CheckReport {
    let mut diags = Vec::new();
    for op in model.operator_ids() {
        let contract = model.contract(op);
        for r in &contract.requirements {
            if let Some((declared, span)) = &r.declared {
                if *declared != r.value_type {
                    diags.push(Diagnostic::new(
                        Code::TypeMismatch,
                        *span,
                        format!(
                            "`{}` is declared as {declared} but `{}` provides {}",
                            model.operator_name(op),
                            model.publisher_name(r.target),
                            r.value_type
                        ),
                    ));
                }
            }
        }
        let mut disjuncts = contract.activation.disjuncts.iter();
        if let Some(first) = disjuncts.next() {
            let expected = model.publisher_type(first.event);
            for d in disjuncts {
                let ty = model.publisher_type(d.event);
                if ty != expected {
                    diags.push(Diagnostic::new(
                        Code::HeterogeneousActivation,
                        d.span,
                        format!(
                            "`{}` is activated by `{}` ({expected}) and `{}` ({ty}); \
                             activation disjuncts must share one type",
                            model.operator_name(op),
                            model.publisher_name(first.event),
                            model.publisher_name(d.event)
                        ),
                    ));
                }
            }
        }
    }
    CheckReport::new(diags)
}

/// Compares regenerated callback signatures with a previously emitted
/// descriptor and warns (W020) for every callback whose shape changed,
/// appeared or disappeared.
pub fn check_signature_drift(
    model: &ArchitectureModel,
    baseline: &FrameworkDescriptor,
) -> CheckReport {
    let current = codegen::descriptor(model);
    let index = |d: &FrameworkDescriptor| {
        d.operators
            .iter()
            .flat_map(|o| {
                o.callbacks
                    .iter()
                    .map(move |c| ((o.name.clone(), c.name.clone()), c.clone()))
            })
            .collect::<BTreeMap<_, _>>()
    };
    let before = index(baseline);
    let after = index(&current);
    let mut diags = Vec::new();
    for op in model.operator_ids() {
        let name = model.operator_name(op);
        let changed: Vec<&str> = before
            .keys()
            .chain(after.keys())
            .filter(|(o, _)| o == name)
            .map(|(_, cb)| cb.as_str())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .filter(|cb| {
                let key = (name.to_string(), cb.to_string());
                before.get(&key) != after.get(&key)
            })
            .collect();
        for cb in changed {
            diags.push(Diagnostic::new(
                Code::SignatureDrift,
                model.operator_span(op),
                format!(
                    "callback `{cb}` of `{name}` differs from the baseline framework; \
                     existing implementations must be updated"
                ),
            ));
        }
    }
    CheckReport::new(diags)
}

/// Rejects cycles over push edges (publisher → activated operator). One
/// witness cycle is reported per strongly connected group.
pub fn check_push_acyclicity(model: &ArchitectureModel) -> CheckReport {
    // Only contexts both publish and get activated, so cycles live among them.
    let n = model.contexts.len();
    let succ: Vec<Vec<(ContextId, crate::diagnostics::Span)>> = model
        .context_ids()
        .map(|producer| {
            model
                .context_ids()
                .filter_map(|consumer| {
                    model
                        .context(consumer)
                        .contract
                        .activation
                        .disjuncts
                        .iter()
                        .find(|d| d.event == Publisher::Context(producer))
                        .map(|d| (consumer, d.span))
                })
                .collect()
        })
        .collect();

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        OnStack,
        Done,
    }
    let mut mark = vec![Mark::New; n];
    let mut in_cycle = vec![false; n];
    let mut diags = Vec::new();

    fn dfs(
        v: usize,
        succ: &[Vec<(ContextId, crate::diagnostics::Span)>],
        mark: &mut [Mark],
        in_cycle: &mut [bool],
        stack: &mut Vec<usize>,
        found: &mut Vec<(Vec<usize>, crate::diagnostics::Span)>,
    ) {
        mark[v] = Mark::OnStack;
        stack.push(v);
        for &(w, span) in &succ[v] {
            match mark[w.0] {
                Mark::New => dfs(w.0, succ, mark, in_cycle, stack, found),
                Mark::OnStack => {
                    let from = stack.iter().position(|&x| x == w.0).unwrap();
                    let cycle: Vec<usize> = stack[from..].to_vec();
                    if !cycle.iter().any(|&x| in_cycle[x]) {
                        for &x in &cycle {
                            in_cycle[x] = true;
                        }
                        found.push((cycle, span));
                    }
                }
                Mark::Done => {}
            }
        }
        stack.pop();
        mark[v] = Mark::Done;
    }

    let mut found = Vec::new();
    for v in 0..n {
        if mark[v] == Mark::New {
            dfs(
                v,
                &succ,
                &mut mark,
                &mut in_cycle,
                &mut Vec::new(),
                &mut found,
            );
        }
    }
    for (cycle, span) in found {
        let mut names: Vec<&str> = cycle
            .iter()
            .map(|&c| model.context(ContextId(c)).name.as_str())
            .collect();
        names.push(names[0]);
        diags.push(Diagnostic::new(
            Code::CycleDetected,
            span,
            format!("push cycle: {}", names.join(" -> ")),
        ));
    }
    CheckReport::new(diags)
}

/// Witness cycles reported by [`check_push_acyclicity`], as operator names.
pub fn push_cycles(model: &ArchitectureModel) -> Vec<Vec<String>> {
    check_push_acyclicity(model)
        .diagnostics
        .iter()
        .map(|d| {
            d.message
                .trim_start_matches("push cycle: ")
                .split(" -> ")
                .map(str::to_string)
                .collect()
        })
        .collect()
}

/// Runs every wellformedness check.
pub fn check_all(model: &ArchitectureModel) -> CheckReport {
    CheckReport::merge([
        check_layering(model),
        check_types(model),
        check_push_acyclicity(model),
    ])
}

/// Longest push chain from any source, counted in operators. Bounded by
/// the operator count whenever [`check_push_acyclicity`] passes.
pub fn longest_push_chain(model: &ArchitectureModel) -> usize {
    fn depth(
        model: &ArchitectureModel,
        op: OperatorId,
        memo: &mut BTreeMap<OperatorId, usize>,
        guard: usize,
    ) -> usize {
        if let Some(&d) = memo.get(&op) {
            return d;
        }
        if guard > model.operator_count() {
            return guard;
        }
        let below = match op {
            OperatorId::Context(c) => model
                .consumers_of(Publisher::Context(c))
                .into_iter()
                .map(|next| depth(model, next, memo, guard + 1))
                .max()
                .unwrap_or(0),
            OperatorId::Controller(_) => 0,
        };
        memo.insert(op, below + 1);
        below + 1
    }
    let mut memo = BTreeMap::new();
    model
        .source_ids()
        .flat_map(|s| model.consumers_of(Publisher::Source(s)))
        .map(|op| depth(model, op, &mut memo, 1))
        .max()
        .unwrap_or(0)
}
