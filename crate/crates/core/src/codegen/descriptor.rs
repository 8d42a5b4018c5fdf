//! Language-neutral description of the generated framework.
//!
//! The descriptor is the regeneration contract: two runs on the same model
//! produce byte-identical documents, and comparing an old descriptor with a
//! new one reveals which callbacks changed shape.

use serde::{Deserialize, Serialize};

use super::{map_contract, ReturnKind};
use crate::model::{ArchitectureModel, DataType, OperatorId, Publication, Publisher};

pub const DESCRIPTOR_VERSION: &str = "sccadl-fw/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum TypeDesc {
    Bool,
    Int,
    Enum { name: String, literals: Vec<String> },
    Opaque { name: String },
}

impl From<&DataType> for TypeDesc {
    fn from(ty: &DataType) -> Self {
        match ty {
            DataType::Bool => TypeDesc::Bool,
            DataType::Int => TypeDesc::Int,
            DataType::Enum { name, literals } => TypeDesc::Enum {
                name: name.clone(),
                literals: literals.clone(),
            },
            DataType::Opaque(name) => TypeDesc::Opaque { name: name.clone() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamEntry {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: TypeDesc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullEntry {
    pub name: String,
    pub target: String,
    #[serde(rename = "type")]
    pub ty: TypeDesc,
    /// `true` when the target is a context, whose latest value may be absent.
    pub optional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvokeEntry {
    pub name: String,
    pub method: String,
    pub params: Vec<ParamEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReturnEntry {
    /// `value`, `optionalValue` or `nothing`
    pub kind: String,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub ty: Option<TypeDesc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CallbackEntry {
    pub name: String,
    pub trigger: String,
    pub activation: ParamEntry,
    pub pulls: Vec<PullEntry>,
    pub invokes: Vec<InvokeEntry>,
    pub returns: ReturnEntry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OperatorEntry {
    pub name: String,
    /// `context` or `controller`
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_type: Option<TypeDesc>,
    /// `always`, `maybe` or `invoke`
    pub emission: String,
    pub callbacks: Vec<CallbackEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceEntry {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: TypeDesc,
    pub publish: String,
    pub pulled: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodEntry {
    pub name: String,
    pub params: Vec<ParamEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InterfaceEntry {
    pub name: String,
    pub methods: Vec<MethodEntry>,
    pub provided_by: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FrameworkDescriptor {
    pub version: String,
    pub operators: Vec<OperatorEntry>,
    pub sources: Vec<SourceEntry>,
    pub action_interfaces: Vec<InterfaceEntry>,
}

impl FrameworkDescriptor {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Canonical text: sorted keys, two-space indentation, trailing LF.
    pub fn to_canonical_json(&self) -> String {
        // serde_json's map is ordered by key, so going through `Value`
        // sorts every object.
        let value = serde_json::to_value(self).expect("descriptor is always serializable");
        let mut text = serde_json::to_string_pretty(&value).expect("value serializes");
        text.push('\n');
        text
    }
}

pub(crate) fn publish_entry_name(model: &ArchitectureModel, p: Publisher) -> String {
    match p {
        Publisher::Source(s) => format!(
            "publish{}{}",
            super::capitalize(&model.device(s.device).name),
            super::capitalize(&model.source(s).name)
        ),
        Publisher::Context(c) => format!("publish{}", super::capitalize(&model.context(c).name)),
    }
}

fn params(method: &crate::model::ActionMethod) -> Vec<ParamEntry> {
    method
        .params
        .iter()
        .map(|p| ParamEntry {
            name: p.name.clone(),
            ty: (&p.ty).into(),
        })
        .collect()
}

pub fn descriptor(model: &ArchitectureModel) -> FrameworkDescriptor {
    let operators = model
        .operator_ids()
        .map(|op| {
            let callbacks = map_contract(model, op)
                .into_iter()
                .map(|sig| CallbackEntry {
                    name: sig.name,
                    trigger: model.publisher_name(sig.trigger),
                    activation: ParamEntry {
                        name: sig.activation_param.0,
                        ty: (&sig.activation_param.1).into(),
                    },
                    pulls: sig
                        .pull_params
                        .iter()
                        .map(|p| PullEntry {
                            name: p.name.clone(),
                            target: model.publisher_name(p.target),
                            ty: (&p.value_type).into(),
                            optional: matches!(p.target, Publisher::Context(_)),
                        })
                        .collect(),
                    invokes: sig
                        .invoke_params
                        .iter()
                        .map(|i| InvokeEntry {
                            name: i.name.clone(),
                            method: model.method_name(i.method),
                            params: params(model.method(i.method)),
                        })
                        .collect(),
                    returns: match sig.return_kind {
                        ReturnKind::Value(t) => ReturnEntry {
                            kind: "value".into(),
                            ty: Some((&t).into()),
                        },
                        ReturnKind::OptionalValue(t) => ReturnEntry {
                            kind: "optionalValue".into(),
                            ty: Some((&t).into()),
                        },
                        ReturnKind::Nothing => ReturnEntry {
                            kind: "nothing".into(),
                            ty: None,
                        },
                    },
                })
                .collect();
            let (kind, output_type, emission) = match op {
                OperatorId::Context(c) => {
                    let ctx = model.context(c);
                    let emission = match ctx.contract.emission.publish {
                        Publication::Always => "always",
                        Publication::Maybe => "maybe",
                        Publication::Never => "never",
                    };
                    ("context", Some((&ctx.output_type).into()), emission)
                }
                OperatorId::Controller(_) => ("controller", None, "invoke"),
            };
            OperatorEntry {
                name: model.operator_name(op).to_string(),
                kind: kind.into(),
                output_type,
                emission: emission.into(),
                callbacks,
            }
        })
        .collect();
    let pulled: Vec<Publisher> = model
        .operator_ids()
        .flat_map(|op| model.contract(op).requirements.iter().map(|r| r.target))
        .collect();
    let sources = model
        .source_ids()
        .map(|s| SourceEntry {
            name: model.source_name(s),
            ty: (&model.source(s).value_type).into(),
            publish: publish_entry_name(model, Publisher::Source(s)),
            pulled: pulled.contains(&Publisher::Source(s)),
        })
        .collect();
    let action_interfaces = model
        .interfaces
        .iter()
        .enumerate()
        .map(|(i, iface)| InterfaceEntry {
            name: iface.name.clone(),
            methods: iface
                .methods
                .iter()
                .map(|m| MethodEntry {
                    name: m.name.clone(),
                    params: params(m),
                })
                .collect(),
            provided_by: model
                .devices
                .iter()
                .filter(|d| d.provided_actions.contains(&crate::model::InterfaceId(i)))
                .map(|d| d.name.clone())
                .collect(),
        })
        .collect();
    FrameworkDescriptor {
        version: DESCRIPTOR_VERSION.into(),
        operators,
        sources,
        action_interfaces,
    }
}

/// Canonical JSON descriptor for `model`.
pub fn emit_descriptor(model: &ArchitectureModel) -> String {
    descriptor(model).to_canonical_json()
}
