//! Resolved architecture model.
//!
//! A model is organised in the four SCC layers: device classes expose
//! sources (bottom) and provide action interfaces (top); context operators
//! refine publications; controllers turn context publications into action
//! invocations. Every operator carries exactly one [`InteractionContract`].
//!
//! Cross references are typed indices into the owning [`ArchitectureModel`],
//! so a resolved model has no dangling names by construction. Values are
//! immutable after [`resolve`](crate::model::resolve) and can be shared
//! across threads.

mod resolve;

pub use resolve::resolve;

use std::fmt;

use crate::diagnostics::Span;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DataType {
    Bool,
    Int,
    Enum { name: String, literals: Vec<String> },
    Opaque(String),
}

impl DataType {
    /// Builds an enumeration, rejecting empty or repeated literal lists.
    pub fn enumeration<S: Into<String>>(
        name: impl Into<String>,
        literals: impl IntoIterator<Item = S>,
    ) -> Result<DataType, String> {
        let ty = DataType::Enum {
            name: name.into(),
            literals: literals.into_iter().map(Into::into).collect(),
        };
        ty.validate().map(|()| ty)
    }

    pub fn validate(&self) -> Result<(), String> {
        if let DataType::Enum { name, literals } = self {
            if literals.is_empty() {
                return Err(format!("enumeration `{name}` has no literals"));
            }
            for (i, lit) in literals.iter().enumerate() {
                if literals[..i].contains(lit) {
                    return Err(format!("enumeration `{name}` repeats literal `{lit}`"));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        match self {
            DataType::Bool => "Bool",
            DataType::Int => "Int",
            DataType::Enum { name, .. } | DataType::Opaque(name) => name,
        }
    }
}

impl fmt::Display for DataType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeviceId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceId {
    pub device: DeviceId,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InterfaceId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MethodRef {
    pub interface: InterfaceId,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContextId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ControllerId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OperatorId {
    Context(ContextId),
    Controller(ControllerId),
}

/// Something whose publications can activate an operator or be pulled:
/// a source or a context operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Publisher {
    Source(SourceId),
    Context(ContextId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Source {
    pub name: String,
    pub value_type: DataType,
    pub owner: DeviceId,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub ty: DataType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionMethod {
    pub name: String,
    pub params: Vec<Param>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionInterface {
    pub name: String,
    pub methods: Vec<ActionMethod>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeviceClass {
    pub name: String,
    pub sources: Vec<Source>,
    pub provided_actions: Vec<InterfaceId>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disjunct {
    pub event: Publisher,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActivationCondition {
    pub disjuncts: Vec<Disjunct>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DataRequirement {
    pub target: Publisher,
    /// Output type of `target`.
    pub value_type: DataType,
    /// Type written at the use site (`get X as T`), if any.
    pub declared: Option<(DataType, Span)>,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Publication {
    Always,
    Maybe,
    Never,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub method: MethodRef,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Emission {
    pub publish: Publication,
    pub publish_span: Option<Span>,
    /// Licensed action methods, in declaration order.
    pub invokes: Vec<Invocation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionContract {
    pub activation: ActivationCondition,
    pub requirements: Vec<DataRequirement>,
    pub emission: Emission,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextOperator {
    pub name: String,
    pub output_type: DataType,
    pub contract: InteractionContract,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlOperator {
    pub name: String,
    pub contract: InteractionContract,
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArchitectureModel {
    pub devices: Vec<DeviceClass>,
    pub interfaces: Vec<ActionInterface>,
    pub contexts: Vec<ContextOperator>,
    pub controllers: Vec<ControlOperator>,
}

impl ArchitectureModel {
    pub fn is_empty(&self) -> bool {
        self.devices.is_empty()
            && self.interfaces.is_empty()
            && self.contexts.is_empty()
            && self.controllers.is_empty()
    }

    pub fn source(&self, id: SourceId) -> &Source {
        &self.devices[id.device.0].sources[id.index]
    }

    pub fn device(&self, id: DeviceId) -> &DeviceClass {
        &self.devices[id.0]
    }

    pub fn interface(&self, id: InterfaceId) -> &ActionInterface {
        &self.interfaces[id.0]
    }

    pub fn method(&self, m: MethodRef) -> &ActionMethod {
        &self.interfaces[m.interface.0].methods[m.index]
    }

    pub fn context(&self, id: ContextId) -> &ContextOperator {
        &self.contexts[id.0]
    }

    pub fn controller(&self, id: ControllerId) -> &ControlOperator {
        &self.controllers[id.0]
    }

    /// All sources in declaration order.
    pub fn source_ids(&self) -> impl Iterator<Item = SourceId> + '_ {
        self.devices.iter().enumerate().flat_map(|(d, dev)| {
            (0..dev.sources.len()).map(move |index| SourceId {
                device: DeviceId(d),
                index,
            })
        })
    }

    pub fn context_ids(&self) -> impl Iterator<Item = ContextId> {
        (0..self.contexts.len()).map(ContextId)
    }

    pub fn controller_ids(&self) -> impl Iterator<Item = ControllerId> {
        (0..self.controllers.len()).map(ControllerId)
    }

    /// Contexts first, then controllers, each in declaration order.
    pub fn operator_ids(&self) -> impl Iterator<Item = OperatorId> {
        self.context_ids()
            .map(OperatorId::Context)
            .chain(self.controller_ids().map(OperatorId::Controller))
    }

    pub fn operator_count(&self) -> usize {
        self.contexts.len() + self.controllers.len()
    }

    pub fn contract(&self, op: OperatorId) -> &InteractionContract {
        match op {
            OperatorId::Context(c) => &self.context(c).contract,
            OperatorId::Controller(c) => &self.controller(c).contract,
        }
    }

    pub fn operator_name(&self, op: OperatorId) -> &str {
        match op {
            OperatorId::Context(c) => &self.context(c).name,
            OperatorId::Controller(c) => &self.controller(c).name,
        }
    }

    pub fn operator_span(&self, op: OperatorId) -> Span {
        match op {
            OperatorId::Context(c) => self.context(c).span,
            OperatorId::Controller(c) => self.controller(c).span,
        }
    }

    /// `Device.source`
    pub fn source_name(&self, id: SourceId) -> String {
        format!("{}.{}", self.device(id.device).name, self.source(id).name)
    }

    /// `Interface.method`
    pub fn method_name(&self, m: MethodRef) -> String {
        format!(
            "{}.{}",
            self.interface(m.interface).name,
            self.method(m).name
        )
    }

    pub fn publisher_name(&self, p: Publisher) -> String {
        match p {
            Publisher::Source(s) => self.source_name(s),
            Publisher::Context(c) => self.context(c).name.clone(),
        }
    }

    /// Short name used to derive callback and parameter names: the bare
    /// source name or the context name.
    pub fn publisher_short_name(&self, p: Publisher) -> &str {
        match p {
            Publisher::Source(s) => &self.source(s).name,
            Publisher::Context(c) => &self.context(c).name,
        }
    }

    pub fn publisher_type(&self, p: Publisher) -> &DataType {
        match p {
            Publisher::Source(s) => &self.source(s).value_type,
            Publisher::Context(c) => &self.context(c).output_type,
        }
    }

    /// Operators with `p` among their activation disjuncts, contexts first.
    pub fn consumers_of(&self, p: Publisher) -> Vec<OperatorId> {
        self.operator_ids()
            .filter(|&op| {
                self.contract(op)
                    .activation
                    .disjuncts
                    .iter()
                    .any(|d| d.event == p)
            })
            .collect()
    }

    pub fn find_context(&self, name: &str) -> Option<ContextId> {
        self.contexts
            .iter()
            .position(|c| c.name == name)
            .map(ContextId)
    }

    pub fn find_controller(&self, name: &str) -> Option<ControllerId> {
        self.controllers
            .iter()
            .position(|c| c.name == name)
            .map(ControllerId)
    }

    pub fn find_interface(&self, name: &str) -> Option<InterfaceId> {
        self.interfaces
            .iter()
            .position(|i| i.name == name)
            .map(InterfaceId)
    }

    pub fn find_device(&self, name: &str) -> Option<DeviceId> {
        self.devices
            .iter()
            .position(|d| d.name == name)
            .map(DeviceId)
    }

    pub fn find_source(&self, device: &str, source: &str) -> Option<SourceId> {
        let d = self.find_device(device)?;
        self.device(d)
            .sources
            .iter()
            .position(|s| s.name == source)
            .map(|index| SourceId { device: d, index })
    }

    /// Looks a source up by its bare name; `None` when absent or ambiguous.
    pub fn find_unqualified_source(&self, source: &str) -> Option<SourceId> {
        let mut hits = self.source_ids().filter(|&s| self.source(s).name == source);
        let first = hits.next()?;
        hits.next().is_none().then_some(first)
    }

    pub fn find_method(&self, interface: &str, method: &str) -> Option<MethodRef> {
        let i = self.find_interface(interface)?;
        self.interface(i)
            .methods
            .iter()
            .position(|m| m.name == method)
            .map(|index| MethodRef {
                interface: i,
                index,
            })
    }

    pub fn find_operator(&self, name: &str) -> Option<OperatorId> {
        self.find_context(name)
            .map(OperatorId::Context)
            .or_else(|| self.find_controller(name).map(OperatorId::Controller))
    }

    /// Resolves `Device.source`, a bare unambiguous source name, or a
    /// context name.
    pub fn find_publisher(&self, name: &str) -> Option<Publisher> {
        if let Some((dev, src)) = name.split_once('.') {
            return self.find_source(dev, src).map(Publisher::Source);
        }
        self.find_context(name)
            .map(Publisher::Context)
            .or_else(|| self.find_unqualified_source(name).map(Publisher::Source))
    }
}
