//! Promela export for SPIN.
//!
//! Every event is a single assignment to `ev`, so LTL claims observe
//! complete events. One process per operator receives activation tokens on
//! one channel per push edge and runs its reaction atomically. The
//! environment publishes one source, waits for `pending` to drain, then
//! records `Quiesce`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::invariant::{EventPattern, InvariantSpec, Pattern};
use crate::model::{ArchitectureModel, OperatorId, Publication, Publisher, SourceId};

const KINDS: &[&str] = &[
    "EV_NONE",
    "EV_PUBLISH_SOURCE",
    "EV_ACTIVATE",
    "EV_PULL",
    "EV_PUBLISH",
    "EV_SKIP",
    "EV_INVOKE",
    "EV_QUIESCE",
];

struct Ids<'m> {
    model: &'m ArchitectureModel,
}

impl Ids<'_> {
    fn source(&self, s: SourceId) -> String {
        format!(
            "SRC_{}_{}",
            self.model.device(s.device).name,
            self.model.source(s).name
        )
    }

    fn op(&self, op: OperatorId) -> String {
        format!("OP_{}", self.model.operator_name(op))
    }

    fn publisher(&self, p: Publisher) -> String {
        match p {
            Publisher::Source(s) => self.source(s),
            Publisher::Context(c) => self.op(OperatorId::Context(c)),
        }
    }

    fn method(&self, m: crate::model::MethodRef) -> String {
        format!(
            "ACT_{}_{}",
            self.model.interface(m.interface).name,
            self.model.method(m).name
        )
    }

    fn channel(&self, from: Publisher, to: OperatorId) -> String {
        format!(
            "push_{}__{}",
            self.publisher(from).split_once('_').unwrap().1,
            self.model.operator_name(to)
        )
    }
}

/// Largest number of activation tokens a single stimulus can route to each
/// publisher, i.e. the number of push paths from the worst source.
fn token_bounds(model: &ArchitectureModel) -> BTreeMap<Publisher, u64> {
    let mut bound = BTreeMap::new();
    for s in model.source_ids() {
        let mut paths: BTreeMap<Publisher, u64> = BTreeMap::new();
        paths.insert(Publisher::Source(s), 1);
        // Contexts form a DAG; relax until stable.
        for _ in 0..=model.contexts.len() {
            for c in model.context_ids() {
                let n: u64 = model.contexts[c.0]
                    .contract
                    .activation
                    .disjuncts
                    .iter()
                    .map(|d| paths.get(&d.event).copied().unwrap_or(0))
                    .fold(0u64, u64::saturating_add);
                paths.insert(Publisher::Context(c), n);
            }
        }
        for (p, n) in paths {
            let e = bound.entry(p).or_insert(0);
            *e = (*e).max(n);
        }
    }
    bound
}

fn ev(kind: &str, who: &str, arg: &str) -> String {
    format!("ev = EV({kind}, {who}, {arg})")
}

fn pattern_expr(ids: &Ids<'_>, p: EventPattern) -> String {
    match p {
        EventPattern::Publish(Publisher::Source(s)) => {
            format!("(ev == EV(EV_PUBLISH_SOURCE, {}, 0))", ids.source(s))
        }
        EventPattern::Publish(Publisher::Context(c)) => {
            format!(
                "(ev == EV(EV_PUBLISH, {}, 0))",
                ids.op(OperatorId::Context(c))
            )
        }
        EventPattern::Activate(None) => "(KIND(ev) == EV_ACTIVATE)".into(),
        EventPattern::Activate(Some(op)) => format!("(ev == EV(EV_ACTIVATE, {}, 0))", ids.op(op)),
        EventPattern::Invoke(None, m) => {
            format!("(KIND(ev) == EV_INVOKE && ARG(ev) == {})", ids.method(m))
        }
        EventPattern::Invoke(Some(c), m) => format!(
            "(ev == EV(EV_INVOKE, {}, {}))",
            ids.op(OperatorId::Controller(c)),
            ids.method(m)
        ),
    }
}

/// Self-contained Promela model with one `ltl` claim per invariant.
pub fn emit_promela(model: &ArchitectureModel, invariants: &[InvariantSpec]) -> String {
    let mut out = String::from("/* Generated by sccadl. */\n");
    if model.is_empty() {
        out.push_str("\ninit { skip }\n");
        return out;
    }
    let ids = Ids { model };
    out.push('\n');
    for (i, k) in KINDS.iter().enumerate() {
        writeln!(out, "#define {k} {i}").unwrap();
    }
    out.push_str(
        "\n#define EV(k, w, a) ((k) * 1000000 + (w) * 1000 + (a))\n\
         #define KIND(e) ((e) / 1000000)\n\
         #define ARG(e) ((e) % 1000)\n\n",
    );
    let mut next_id = 1;
    let mut define = |out: &mut String, name: String| {
        writeln!(out, "#define {name} {next_id}").unwrap();
        next_id += 1;
    };
    for s in model.source_ids() {
        define(&mut out, ids.source(s));
    }
    for op in model.operator_ids() {
        define(&mut out, ids.op(op));
    }
    let mut methods: Vec<crate::model::MethodRef> = model
        .operator_ids()
        .flat_map(|op| model.contract(op).emission.invokes.iter().map(|i| i.method))
        .collect();
    methods.sort();
    methods.dedup();
    for &m in &methods {
        define(&mut out, ids.method(m));
    }

    out.push_str("\nint ev = EV(EV_NONE, 0, 0);\nint pending = 0;\n\n");
    let bounds = token_bounds(model);
    for op in model.operator_ids() {
        for d in &model.contract(op).activation.disjuncts {
            let cap = bounds.get(&d.event).copied().unwrap_or(0).clamp(1, 255);
            writeln!(
                out,
                "chan {} = [{cap}] of {{ bit }};",
                ids.channel(d.event, op)
            )
            .unwrap();
        }
    }

    let publish = |out: &mut String, p: Publisher, indent: &str| {
        let consumers = model.consumers_of(p);
        if !consumers.is_empty() {
            writeln!(out, "{indent}pending = pending + {};", consumers.len()).unwrap();
        }
        for c in consumers {
            writeln!(out, "{indent}{}!1;", ids.channel(p, c)).unwrap();
        }
    };

    for op in model.operator_ids() {
        let contract = model.contract(op);
        let me = ids.op(op);
        writeln!(
            out,
            "\nactive proctype {}() {{\nend:\n  do",
            model.operator_name(op)
        )
        .unwrap();
        for d in &contract.activation.disjuncts {
            writeln!(
                out,
                "  :: atomic {{\n       {}?_ ->",
                ids.channel(d.event, op)
            )
            .unwrap();
            let ind = "       ";
            writeln!(out, "{ind}{};", ev("EV_ACTIVATE", &me, "0")).unwrap();
            for r in &contract.requirements {
                writeln!(
                    out,
                    "{ind}{};",
                    ev("EV_PULL", &me, &ids.publisher(r.target))
                )
                .unwrap();
            }
            match op {
                OperatorId::Context(c) => {
                    let p = Publisher::Context(c);
                    match contract.emission.publish {
                        Publication::Maybe => {
                            let mut branch =
                                format!("{ind}if\n{ind}:: {};\n", ev("EV_PUBLISH", &me, "0"));
                            publish(&mut branch, p, &format!("{ind}   "));
                            out.push_str(branch.trim_end().trim_end_matches(';'));
                            writeln!(out, "\n{ind}:: {}\n{ind}fi;", ev("EV_SKIP", &me, "0"))
                                .unwrap();
                        }
                        _ => {
                            writeln!(out, "{ind}{};", ev("EV_PUBLISH", &me, "0")).unwrap();
                            publish(&mut out, p, ind);
                        }
                    }
                }
                OperatorId::Controller(_) => {
                    for inv in &contract.emission.invokes {
                        writeln!(
                            out,
                            "{ind}if\n{ind}:: {}\n{ind}:: skip\n{ind}fi;",
                            ev("EV_INVOKE", &me, &ids.method(inv.method))
                        )
                        .unwrap();
                    }
                }
            }
            writeln!(out, "{ind}pending = pending - 1\n     }}").unwrap();
        }
        out.push_str("  od\n}\n");
    }

    out.push_str("\nactive proctype environment() {\n");
    if model.source_ids().next().is_some() {
        out.push_str("  if\n");
        for s in model.source_ids() {
            writeln!(
                out,
                "  :: atomic {{\n       {};",
                ev("EV_PUBLISH_SOURCE", &ids.source(s), "0")
            )
            .unwrap();
            let mut body = String::new();
            publish(&mut body, Publisher::Source(s), "       ");
            if body.is_empty() {
                body.push_str("       skip\n");
            } else {
                // Drop the trailing `;` of the last statement.
                body.truncate(body.len() - 2);
                body.push('\n');
            }
            out.push_str(&body);
            out.push_str("     }\n");
        }
        out.push_str("  fi;\n  (pending == 0);\n");
    }
    writeln!(out, "  {}\n}}", ev("EV_QUIESCE", "0", "0")).unwrap();

    for (i, inv) in invariants.iter().enumerate() {
        let formula = match inv.pattern {
            Pattern::Never(e) => format!("[] !{}", pattern_expr(&ids, e)),
            Pattern::Precedes(a, b) => {
                let (a, b) = (pattern_expr(&ids, a), pattern_expr(&ids, b));
                format!("([] !{b}) || (!{b} U {a})")
            }
            Pattern::LeadsTo(a, b) => format!(
                "[] ({} -> <> {})",
                pattern_expr(&ids, a),
                pattern_expr(&ids, b)
            ),
        };
        writeln!(out, "\n/* {} */\nltl inv{i} {{ {formula} }}", inv.text).unwrap();
    }
    out
}
