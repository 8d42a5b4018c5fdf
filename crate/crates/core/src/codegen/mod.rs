//! Projection of interaction contracts onto framework callbacks.
//!
//! Each activation disjunct of an operator becomes one callback named
//! `onNew<Disjunct>`. The callback receives the triggering value first,
//! then one pull capability per data requirement, then one invoke
//! capability per licensed action method. Its return kind encodes the
//! publication obligation: a mandatory value for `always publish`, an
//! optional value for `maybe publish`, nothing for controllers.

mod descriptor;
mod rust;

pub use descriptor::{
    descriptor, emit_descriptor, CallbackEntry, FrameworkDescriptor, InterfaceEntry, InvokeEntry,
    MethodEntry, OperatorEntry, ParamEntry, PullEntry, ReturnEntry, SourceEntry, TypeDesc,
    DESCRIPTOR_VERSION,
};
pub use rust::{
    generate_skeletons, generate_with_descriptor, render_skeletons, GenerateError, GeneratedFiles,
};

use crate::model::{ArchitectureModel, DataType, MethodRef, OperatorId, Publication, Publisher};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReturnKind {
    Value(DataType),
    OptionalValue(DataType),
    Nothing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullParam {
    pub name: String,
    pub target: Publisher,
    /// Type handed out by the capability. Pulling a context yields its most
    /// recent publication, which may not exist yet.
    pub value_type: DataType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvokeParam {
    pub name: String,
    pub method: MethodRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CallbackSignature {
    pub owner: OperatorId,
    pub name: String,
    pub trigger: Publisher,
    pub activation_param: (String, DataType),
    pub pull_params: Vec<PullParam>,
    pub invoke_params: Vec<InvokeParam>,
    pub return_kind: ReturnKind,
}

pub(crate) fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

pub(crate) fn decapitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_lowercase().chain(chars).collect(),
        None => String::new(),
    }
}

fn qualified_short(model: &ArchitectureModel, p: Publisher) -> String {
    match p {
        Publisher::Source(s) => format!(
            "{}{}",
            capitalize(&model.device(s.device).name),
            capitalize(&model.source(s).name)
        ),
        Publisher::Context(c) => capitalize(&model.context(c).name),
    }
}

/// Short names for a list of publishers; entries whose short name clashes
/// with another entry fall back to the device-qualified form.
fn publisher_labels(model: &ArchitectureModel, ps: &[Publisher]) -> Vec<String> {
    let short: Vec<String> = ps
        .iter()
        .map(|&p| capitalize(model.publisher_short_name(p)))
        .collect();
    ps.iter()
        .zip(&short)
        .map(|(&p, s)| {
            if short.iter().filter(|x| *x == s).count() > 1 {
                qualified_short(model, p)
            } else {
                s.clone()
            }
        })
        .collect()
}

fn dedup(names: &mut [String]) {
    for i in 0..names.len() {
        let mut n = 2;
        let base = names[i].clone();
        while names[..i].contains(&names[i]) {
            names[i] = format!("{base}{n}");
            n += 1;
        }
    }
}

/// Callback signatures for one operator, in disjunct declaration order.
pub fn map_contract(model: &ArchitectureModel, op: OperatorId) -> Vec<CallbackSignature> {
    let contract = model.contract(op);
    let triggers: Vec<Publisher> = contract
        .activation
        .disjuncts
        .iter()
        .map(|d| d.event)
        .collect();
    let labels = publisher_labels(model, &triggers);

    let pull_targets: Vec<Publisher> = contract.requirements.iter().map(|r| r.target).collect();
    let pull_labels = publisher_labels(model, &pull_targets);
    let mut param_names: Vec<String> = std::iter::once("value".to_string())
        .chain(pull_labels.iter().map(|l| decapitalize(l)))
        .chain(contract.emission.invokes.iter().map(|i| {
            format!(
                "{}On{}",
                decapitalize(&model.method(i.method).name),
                capitalize(&model.interface(i.method.interface).name)
            )
        }))
        .collect();
    dedup(&mut param_names);
    let mut names = param_names.into_iter();
    let value_name = names.next().unwrap();

    let pull_params: Vec<PullParam> = contract
        .requirements
        .iter()
        .zip(names.by_ref())
        .map(|(r, name)| PullParam {
            name,
            target: r.target,
            value_type: r.value_type.clone(),
        })
        .collect();
    let invoke_params: Vec<InvokeParam> = contract
        .emission
        .invokes
        .iter()
        .zip(names)
        .map(|(i, name)| InvokeParam {
            name,
            method: i.method,
        })
        .collect();
    let return_kind = match op {
        OperatorId::Controller(_) => ReturnKind::Nothing,
        OperatorId::Context(c) => {
            let out = model.context(c).output_type.clone();
            match model.context(c).contract.emission.publish {
                Publication::Always => ReturnKind::Value(out),
                Publication::Maybe => ReturnKind::OptionalValue(out),
                Publication::Never => ReturnKind::Nothing,
            }
        }
    };
    triggers
        .iter()
        .zip(labels)
        .map(|(&trigger, label)| CallbackSignature {
            owner: op,
            name: format!("onNew{label}"),
            trigger,
            activation_param: (value_name.clone(), model.publisher_type(trigger).clone()),
            pull_params: pull_params.clone(),
            invoke_params: invoke_params.clone(),
            return_kind: return_kind.clone(),
        })
        .collect()
}
