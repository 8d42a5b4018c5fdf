//! Design-time dataflow facts derived from interaction contracts.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::diagnostics::{Code, Diagnostic, Span};
use crate::model::{
    ArchitectureModel, ContextId, ControllerId, MethodRef, OperatorId, Publication, Publisher,
    SourceId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Source(SourceId),
    Context(ContextId),
    Controller(ControllerId),
    Action(MethodRef),
}

impl Element {
    pub fn kind(self) -> &'static str {
        match self {
            Element::Source(_) => "source",
            Element::Context(_) => "context",
            Element::Controller(_) => "controller",
            Element::Action(_) => "action",
        }
    }

    pub fn operator(self) -> Option<OperatorId> {
        match self {
            Element::Context(c) => Some(OperatorId::Context(c)),
            Element::Controller(c) => Some(OperatorId::Controller(c)),
            _ => None,
        }
    }
}

impl From<Publisher> for Element {
    fn from(p: Publisher) -> Self {
        match p {
            Publisher::Source(s) => Element::Source(s),
            Publisher::Context(c) => Element::Context(c),
        }
    }
}

impl From<OperatorId> for Element {
    fn from(op: OperatorId) -> Self {
        match op {
            OperatorId::Context(c) => Element::Context(c),
            OperatorId::Controller(c) => Element::Controller(c),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    /// `guaranteed` unless the producer is a `maybe publish` context.
    Push {
        guaranteed: bool,
    },
    Pull,
    Invoke,
}

impl EdgeKind {
    fn label(self) -> &'static str {
        match self {
            EdgeKind::Push { .. } => "push",
            EdgeKind::Pull => "pull",
            EdgeKind::Invoke => "invoke",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: Element,
    pub to: Element,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InteractionGraph {
    names: BTreeMap<Element, String>,
    spans: BTreeMap<Element, Span>,
    edges: Vec<Edge>,
}

impl InteractionGraph {
    /// Nodes in lexicographic name order.
    pub fn nodes(&self) -> Vec<Element> {
        let mut nodes: Vec<Element> = self.names.keys().copied().collect();
        nodes.sort_by(|a, b| self.names[a].cmp(&self.names[b]));
        nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, e: Element) -> bool {
        self.names.contains_key(&e)
    }

    pub fn name(&self, e: Element) -> &str {
        &self.names[&e]
    }

    /// Resolves a node by name: `Device.source`, a source name unique
    /// across devices, an operator name, or `Interface.method`.
    pub fn find(&self, name: &str) -> Option<Element> {
        if let Some((&e, _)) = self.names.iter().find(|(_, n)| *n == name) {
            return Some(e);
        }
        let mut unqualified = self.names.iter().filter(|(e, n)| {
            matches!(e, Element::Source(_)) && n.split_once('.').map(|(_, s)| s) == Some(name)
        });
        match (unqualified.next(), unqualified.next()) {
            (Some((&e, _)), None) => Some(e),
            _ => None,
        }
    }

    /// Like [`find`](Self::find), reporting E001 for unknown names.
    pub fn lookup(&self, name: &str) -> Result<Element, Diagnostic> {
        self.find(name).ok_or_else(|| {
            Diagnostic::new(
                Code::UnknownReference,
                Span::default(),
                format!("unknown element `{name}`"),
            )
        })
    }

    pub fn names(&self, set: &BTreeSet<Element>) -> Vec<String> {
        let mut v: Vec<String> = set.iter().map(|&e| self.name(e).to_string()).collect();
        v.sort();
        v
    }

    fn out_edges(&self, e: Element) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |x| x.from == e)
    }
}

pub fn build_graph(model: &ArchitectureModel) -> InteractionGraph {
    let mut g = InteractionGraph::default();
    for s in model.source_ids() {
        g.names.insert(Element::Source(s), model.source_name(s));
        g.spans.insert(Element::Source(s), model.source(s).span);
    }
    for op in model.operator_ids() {
        g.names
            .insert(op.into(), model.operator_name(op).to_string());
        g.spans.insert(op.into(), model.operator_span(op));
    }
    for op in model.operator_ids() {
        let contract = model.contract(op);
        for d in &contract.activation.disjuncts {
            let guaranteed = match d.event {
                Publisher::Source(_) => true,
                Publisher::Context(c) => {
                    model.context(c).contract.emission.publish == Publication::Always
                }
            };
            g.edges.push(Edge {
                from: d.event.into(),
                to: op.into(),
                kind: EdgeKind::Push { guaranteed },
            });
        }
        for r in &contract.requirements {
            g.edges.push(Edge {
                from: op.into(),
                to: r.target.into(),
                kind: EdgeKind::Pull,
            });
        }
        for inv in &contract.emission.invokes {
            let action = Element::Action(inv.method);
            g.names.insert(action, model.method_name(inv.method));
            g.spans.insert(action, model.method(inv.method).span);
            g.edges.push(Edge {
                from: op.into(),
                to: action,
                kind: EdgeKind::Invoke,
            });
        }
    }
    g
}

fn closure(start: Element, next: impl Fn(Element) -> Vec<Element>) -> BTreeSet<Element> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([start]);
    while let Some(e) = queue.pop_front() {
        for n in next(e) {
            if n != start && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen
}

/// Elements possibly activated by one publication of `source`.
pub fn may_impact(g: &InteractionGraph, source: Element) -> BTreeSet<Element> {
    closure(source, |e| {
        g.out_edges(e)
            .filter(|x| matches!(x.kind, EdgeKind::Push { .. } | EdgeKind::Invoke))
            .map(|x| x.to)
            .collect()
    })
}

/// Elements activated by every reaction to a publication of `source`.
pub fn must_impact(g: &InteractionGraph, source: Element) -> BTreeSet<Element> {
    closure(source, |e| {
        g.out_edges(e)
            .filter(|x| x.kind == EdgeKind::Push { guaranteed: true })
            .map(|x| x.to)
            .collect()
    })
}

/// Everything with a push or invoke path into `element`.
pub fn activators_of(g: &InteractionGraph, element: Element) -> BTreeSet<Element> {
    closure(element, |e| {
        g.edges
            .iter()
            .filter(|x| x.to == e && matches!(x.kind, EdgeKind::Push { .. } | EdgeKind::Invoke))
            .map(|x| x.from)
            .collect()
    })
}

/// Unreachable operators and actions (W030) and sources nobody consumes or
/// pulls (W031), in lexicographic order.
pub fn dead_elements(g: &InteractionGraph) -> Vec<(Element, Code)> {
    let sources: Vec<Element> = g
        .names
        .keys()
        .copied()
        .filter(|e| matches!(e, Element::Source(_)))
        .collect();
    let mut live: BTreeSet<Element> = sources.iter().copied().collect();
    for &s in &sources {
        live.extend(may_impact(g, s));
    }
    let mut dead = Vec::new();
    for e in g.nodes() {
        if !live.contains(&e) {
            dead.push((e, Code::UnreachableElement));
        } else if matches!(e, Element::Source(_))
            && !g.edges.iter().any(|x| {
                (x.from == e && matches!(x.kind, EdgeKind::Push { .. }))
                    || (x.to == e && x.kind == EdgeKind::Pull)
            })
        {
            dead.push((e, Code::UnusedSource));
        }
    }
    dead
}

pub fn dead_element_diagnostics(g: &InteractionGraph) -> Vec<Diagnostic> {
    dead_elements(g)
        .into_iter()
        .map(|(e, code)| {
            let name = g.name(e);
            let message = match code {
                Code::UnusedSource => {
                    format!("source `{name}` is neither consumed nor pulled")
                }
                _ => format!("{} `{name}` can never be activated", e.kind()),
            };
            Diagnostic::new(code, g.spans.get(&e).copied().unwrap_or_default(), message)
        })
        .collect()
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering with deterministic ordering.
pub fn to_dot(g: &InteractionGraph) -> String {
    let mut out = String::from("digraph architecture {\n  rankdir=LR;\n");
    for e in g.nodes() {
        let shape = match e {
            Element::Source(_) => "shape=invhouse",
            Element::Context(_) => "shape=ellipse",
            Element::Controller(_) => "shape=box",
            Element::Action(_) => "shape=box, style=rounded",
        };
        writeln!(out, "  {} [{shape}];", quote(g.name(e))).unwrap();
    }
    for (from, to, kind) in sorted_edges(g) {
        let style = match kind {
            EdgeKind::Push { guaranteed: true } => "solid",
            EdgeKind::Push { guaranteed: false } => "dashed",
            EdgeKind::Pull => "dotted",
            EdgeKind::Invoke => "bold",
        };
        writeln!(out, "  {} -> {} [style={style}];", quote(from), quote(to)).unwrap();
    }
    out.push_str("}\n");
    out
}

fn sorted_edges(g: &InteractionGraph) -> Vec<(&str, &str, EdgeKind)> {
    let mut edges: Vec<(&str, &str, EdgeKind)> = g
        .edges
        .iter()
        .map(|x| (g.name(x.from), g.name(x.to), x.kind))
        .collect();
    edges.sort();
    edges
}

pub fn graph_json(g: &InteractionGraph) -> Value {
    let nodes: Vec<Value> = g
        .nodes()
        .into_iter()
        .map(|e| json!({"name": g.name(e), "kind": e.kind()}))
        .collect();
    let edges: Vec<Value> = sorted_edges(g)
        .into_iter()
        .map(|(from, to, kind)| {
            let mut v = json!({"from": from, "to": to, "kind": kind.label()});
            if let EdgeKind::Push { guaranteed } = kind {
                v["guaranteed"] = json!(guaranteed);
            }
            v
        })
        .collect();
    json!({"nodes": nodes, "edges": edges})
}
