//! Name resolution from raw declarations to a typed [`ArchitectureModel`].

use std::collections::HashMap;

use super::*;
use crate::diagnostics::{sort_diagnostics, Code, Diagnostic};
use crate::syntax::ast::{self, Decl, Ident, OperatorKind, PublishMode, Ref, TypeRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Device(usize),
    Interface(usize),
    Context(usize),
    Controller(usize),
}

impl Kind {
    fn describe(self) -> &'static str {
        match self {
            Kind::Device(_) => "a device class",
            Kind::Interface(_) => "an action interface",
            Kind::Context(_) => "a context operator",
            Kind::Controller(_) => "a controller",
        }
    }
}

struct Resolver<'a> {
    raw: &'a ast::RawModel,
    names: HashMap<&'a str, (Kind, Span)>,
    devices: Vec<&'a ast::DeviceDecl>,
    interfaces: Vec<&'a ast::InterfaceDecl>,
    contexts: Vec<&'a ast::OperatorDecl>,
    controllers: Vec<&'a ast::OperatorDecl>,
    diags: Vec<Diagnostic>,
}

/// Binds every reference in `raw` to its declaration.
///
/// Reports unknown names (E001), duplicates (E005), empty devices and
/// interfaces (E006, E007), repeated or self-referencing contract entries
/// (E008), wrong publication/invocation counts (E009) and invalid
/// enumerations (E014). Layering and typing rules are checked afterwards
/// on the resolved model by [`crate::wellformed`].
pub fn resolve(raw: &ast::RawModel) -> Result<ArchitectureModel, Vec<Diagnostic>> {
    let mut r = Resolver {
        raw,
        names: HashMap::new(),
        devices: Vec::new(),
        interfaces: Vec::new(),
        contexts: Vec::new(),
        controllers: Vec::new(),
        diags: Vec::new(),
    };
    r.declare();
    let interfaces = r.interfaces();
    let devices = r.devices();
    let contexts = r.contexts();
    let controllers = r.controllers();
    if r.diags.is_empty() {
        Ok(ArchitectureModel {
            devices,
            interfaces,
            contexts,
            controllers,
        })
    } else {
        sort_diagnostics(&mut r.diags);
        Err(r.diags)
    }
}

impl<'a> Resolver<'a> {
    fn error(&mut self, code: Code, span: Span, msg: impl Into<String>) {
        self.diags.push(Diagnostic::new(code, span, msg));
    }

    fn declare(&mut self) {
        for decl in &self.raw.decls {
            let (name, kind) = match decl {
                Decl::Device(d) => (&d.name, Kind::Device(self.devices.len())),
                Decl::Interface(i) => (&i.name, Kind::Interface(self.interfaces.len())),
                Decl::Operator(o) if o.is_context() => {
                    (&o.name, Kind::Context(self.contexts.len()))
                }
                Decl::Operator(o) => (&o.name, Kind::Controller(self.controllers.len())),
            };
            if let Some(&(prev, prev_span)) = self.names.get(name.name.as_str()) {
                self.error(
                    Code::DuplicateName,
                    name.span,
                    format!(
                        "duplicate name `{}`; already declared as {} at {}:{}",
                        name.name,
                        prev.describe(),
                        prev_span.start.line,
                        prev_span.start.col
                    ),
                );
                continue;
            }
            self.names.insert(&name.name, (kind, name.span));
            match decl {
                Decl::Device(d) => self.devices.push(d),
                Decl::Interface(i) => self.interfaces.push(i),
                Decl::Operator(o) if o.is_context() => self.contexts.push(o),
                Decl::Operator(o) => self.controllers.push(o),
            }
        }
    }

    fn check_type(&mut self, t: &TypeRef) -> DataType {
        if let Err(msg) = t.ty.validate() {
            self.error(Code::InvalidEnum, t.span, msg);
        }
        t.ty.clone()
    }

    fn duplicate_in<'i>(&mut self, idents: impl IntoIterator<Item = &'i Ident>, what: &str) {
        let mut seen: HashMap<&str, Span> = HashMap::new();
        for id in idents {
            if let Some(first) = seen.get(id.name.as_str()) {
                let msg = format!(
                    "duplicate {what} `{}`; first declared at {}:{}",
                    id.name, first.start.line, first.start.col
                );
                self.error(Code::DuplicateName, id.span, msg);
            } else {
                seen.insert(&id.name, id.span);
            }
        }
    }

    fn interfaces(&mut self) -> Vec<ActionInterface> {
        let decls = self.interfaces.clone();
        decls
            .into_iter()
            .map(|i| {
                if i.methods.is_empty() {
                    self.error(
                        Code::EmptyActionInterface,
                        i.name.span,
                        format!("action interface `{}` declares no method", i.name.name),
                    );
                }
                self.duplicate_in(i.methods.iter().map(|m| &m.name), "method");
                let methods = i
                    .methods
                    .iter()
                    .map(|m| {
                        self.duplicate_in(m.params.iter().map(|p| &p.name), "parameter");
                        ActionMethod {
                            name: m.name.name.clone(),
                            params: m
                                .params
                                .iter()
                                .map(|p| Param {
                                    name: p.name.name.clone(),
                                    ty: self.check_type(&p.ty),
                                })
                                .collect(),
                            span: m.name.span,
                        }
                    })
                    .collect();
                ActionInterface {
                    name: i.name.name.clone(),
                    methods,
                    span: i.name.span,
                }
            })
            .collect()
    }

    fn lookup_interface(&mut self, id: &Ident) -> Option<InterfaceId> {
        match self.names.get(id.name.as_str()) {
            Some(&(Kind::Interface(i), _)) => Some(InterfaceId(i)),
            Some(&(other, _)) => {
                let msg = format!(
                    "`{}` is {}, not an action interface",
                    id.name,
                    other.describe()
                );
                self.error(Code::UnknownReference, id.span, msg);
                None
            }
            None => {
                let msg = format!("unknown action interface `{}`", id.name);
                self.error(Code::UnknownReference, id.span, msg);
                None
            }
        }
    }

    fn devices(&mut self) -> Vec<DeviceClass> {
        let decls = self.devices.clone();
        decls
            .into_iter()
            .enumerate()
            .map(|(d, dev)| {
                if dev.sources.is_empty() && dev.provides.is_empty() {
                    self.error(
                        Code::EmptyDevice,
                        dev.name.span,
                        format!(
                            "device class `{}` has neither sources nor provided actions",
                            dev.name.name
                        ),
                    );
                }
                self.duplicate_in(dev.sources.iter().map(|s| &s.name), "source");
                self.duplicate_in(dev.provides.iter(), "provided interface");
                let sources = dev
                    .sources
                    .iter()
                    .map(|s| Source {
                        name: s.name.name.clone(),
                        value_type: self.check_type(&s.ty),
                        owner: DeviceId(d),
                        span: s.name.span,
                    })
                    .collect();
                let provided_actions = dev
                    .provides
                    .iter()
                    .filter_map(|p| self.lookup_interface(p))
                    .collect();
                DeviceClass {
                    name: dev.name.name.clone(),
                    sources,
                    provided_actions,
                    span: dev.name.span,
                }
            })
            .collect()
    }

    fn source_type(&self, s: SourceId) -> DataType {
        self.devices[s.device.0].sources[s.index].ty.ty.clone()
    }

    fn publisher_type(&self, p: Publisher) -> DataType {
        match p {
            Publisher::Source(s) => self.source_type(s),
            Publisher::Context(c) => match &self.contexts[c.0].kind {
                OperatorKind::Context { output } => output.ty.clone(),
                OperatorKind::Controller => unreachable!("contexts list holds contexts"),
            },
        }
    }

    fn resolve_publisher(&mut self, r: &Ref) -> Option<Publisher> {
        if let Some(member) = &r.member {
            let dev = match self.names.get(r.head.name.as_str()) {
                Some(&(Kind::Device(d), _)) => d,
                Some(&(other, _)) => {
                    let msg = format!(
                        "`{}` is {}, not a device class",
                        r.head.name,
                        other.describe()
                    );
                    self.error(Code::UnknownReference, r.head.span, msg);
                    return None;
                }
                None => {
                    let msg = format!("unknown reference `{}`", r.head.name);
                    self.error(Code::UnknownReference, r.head.span, msg);
                    return None;
                }
            };
            return match self.devices[dev]
                .sources
                .iter()
                .position(|s| s.name.name == member.name)
            {
                Some(index) => Some(Publisher::Source(SourceId {
                    device: DeviceId(dev),
                    index,
                })),
                None => {
                    let msg = format!(
                        "device class `{}` has no source `{}`",
                        r.head.name, member.name
                    );
                    self.error(Code::UnknownReference, member.span, msg);
                    None
                }
            };
        }
        let name = &r.head;
        match self.names.get(name.name.as_str()) {
            Some(&(Kind::Context(c), _)) => Some(Publisher::Context(ContextId(c))),
            Some(&(Kind::Controller(_), _)) => {
                let msg = format!(
                    "`{}` is a controller; controllers publish nothing, only sources and \
                     contexts can be subscribed to or pulled",
                    name.name
                );
                self.error(Code::LayeringViolation, name.span, msg);
                None
            }
            Some(&(other, _)) => {
                let msg = format!(
                    "`{}` is {}; expected a context or a `Device.source` reference",
                    name.name,
                    other.describe()
                );
                self.error(Code::UnknownReference, name.span, msg);
                None
            }
            None => {
                let owners: Vec<&str> = self
                    .devices
                    .iter()
                    .filter(|d| d.sources.iter().any(|s| s.name.name == name.name))
                    .map(|d| d.name.name.as_str())
                    .collect();
                let hint = match owners.as_slice() {
                    [] => String::new(),
                    [d] => format!(" (did you mean `{d}.{}`?)", name.name),
                    _ => " (sources must be qualified by their device class)".to_string(),
                };
                let msg = format!("unknown reference `{}`{hint}", name.name);
                self.error(Code::UnknownReference, name.span, msg);
                None
            }
        }
    }

    fn contract(
        &mut self,
        op: &ast::OperatorDecl,
        self_id: Option<ContextId>,
    ) -> InteractionContract {
        if op.activation.is_empty() {
            let msg = format!("`{}` has no activation condition", op.name.name);
            self.error(Code::SyntaxError, op.name.span, msg);
        }
        let mut disjuncts: Vec<Disjunct> = Vec::new();
        for r in &op.activation {
            if let Some(event) = self.resolve_publisher(r) {
                if disjuncts.iter().any(|d| d.event == event) {
                    let msg = format!("`{}` appears twice in the activation condition", r.text());
                    self.error(Code::DuplicateContractEntry, r.span(), msg);
                } else {
                    disjuncts.push(Disjunct {
                        event,
                        span: r.span(),
                    });
                }
            }
        }
        let mut requirements: Vec<DataRequirement> = Vec::new();
        for g in &op.gets {
            let declared = g.declared.as_ref().map(|t| (self.check_type(t), t.span));
            let Some(target) = self.resolve_publisher(&g.target) else {
                continue;
            };
            if Some(target) == self_id.map(Publisher::Context) {
                let msg = format!("`{}` cannot require its own output", op.name.name);
                self.error(Code::DuplicateContractEntry, g.span, msg);
                continue;
            }
            if requirements.iter().any(|q| q.target == target) {
                let msg = format!("`{}` is required twice", g.target.text());
                self.error(Code::DuplicateContractEntry, g.span, msg);
                continue;
            }
            requirements.push(DataRequirement {
                target,
                value_type: self.publisher_type(target),
                declared,
                span: g.span,
            });
        }
        let mut invokes: Vec<Invocation> = Vec::new();
        for i in &op.invokes {
            let Some(iface) = self.lookup_interface(&i.interface) else {
                continue;
            };
            let decl = self.interfaces[iface.0];
            let Some(index) = decl
                .methods
                .iter()
                .position(|m| m.name.name == i.method.name)
            else {
                let msg = format!(
                    "action interface `{}` has no method `{}`",
                    decl.name.name, i.method.name
                );
                self.error(Code::UnknownReference, i.method.span, msg);
                continue;
            };
            let method = MethodRef {
                interface: iface,
                index,
            };
            if invokes.iter().any(|x| x.method == method) {
                let msg = format!(
                    "`{}` on `{}` is licensed twice",
                    i.method.name, i.interface.name
                );
                self.error(Code::DuplicateContractEntry, i.span, msg);
                continue;
            }
            invokes.push(Invocation {
                method,
                span: i.span,
            });
        }
        if op.publishes.len() > 1 {
            let msg = format!("`{}` declares more than one publication", op.name.name);
            self.error(Code::EmissionArity, op.publishes[1].span, msg);
        }
        let publish = match op.publishes.first().map(|p| p.mode) {
            Some(PublishMode::Always) => Publication::Always,
            Some(PublishMode::Maybe) => Publication::Maybe,
            None => Publication::Never,
        };
        InteractionContract {
            activation: ActivationCondition {
                disjuncts,
                span: op.when_span,
            },
            requirements,
            emission: Emission {
                publish,
                publish_span: op.publishes.first().map(|p| p.span),
                invokes,
            },
        }
    }

    fn contexts(&mut self) -> Vec<ContextOperator> {
        let decls = self.contexts.clone();
        decls
            .into_iter()
            .enumerate()
            .map(|(c, op)| {
                let OperatorKind::Context { output } = &op.kind else {
                    unreachable!("contexts list holds contexts")
                };
                let output_type = self.check_type(output);
                if op.publishes.is_empty() {
                    let msg = format!(
                        "context `{}` never publishes; add `always publish` or `maybe publish`",
                        op.name.name
                    );
                    self.error(Code::EmissionArity, op.name.span, msg);
                }
                ContextOperator {
                    name: op.name.name.clone(),
                    output_type,
                    contract: self.contract(op, Some(ContextId(c))),
                    span: op.name.span,
                }
            })
            .collect()
    }

    fn controllers(&mut self) -> Vec<ControlOperator> {
        let decls = self.controllers.clone();
        decls
            .into_iter()
            .map(|op| {
                if op.invokes.is_empty() {
                    let msg = format!(
                        "controller `{}` invokes no action; add a `do METHOD on INTERFACE` clause",
                        op.name.name
                    );
                    self.error(Code::EmissionArity, op.name.span, msg);
                }
                ControlOperator {
                    name: op.name.name.clone(),
                    contract: self.contract(op, None),
                    span: op.name.span,
                }
            })
            .collect()
    }
}

impl ArchitectureModel {
    /// Lowers back to raw declarations: interfaces, devices, contexts,
    /// controllers, each group in model order. Spans are preserved.
    pub fn to_raw(&self) -> ast::RawModel {
        let mut decls = Vec::new();
        for i in &self.interfaces {
            decls.push(Decl::Interface(ast::InterfaceDecl {
                name: Ident::new(&i.name, i.span),
                methods: i
                    .methods
                    .iter()
                    .map(|m| ast::MethodDecl {
                        name: Ident::new(&m.name, m.span),
                        params: m
                            .params
                            .iter()
                            .map(|p| ast::ParamDecl {
                                name: Ident::new(&p.name, m.span),
                                ty: TypeRef {
                                    ty: p.ty.clone(),
                                    span: m.span,
                                },
                            })
                            .collect(),
                    })
                    .collect(),
            }));
        }
        for d in &self.devices {
            decls.push(Decl::Device(ast::DeviceDecl {
                name: Ident::new(&d.name, d.span),
                sources: d
                    .sources
                    .iter()
                    .map(|s| ast::SourceDecl {
                        name: Ident::new(&s.name, s.span),
                        ty: TypeRef {
                            ty: s.value_type.clone(),
                            span: s.span,
                        },
                    })
                    .collect(),
                provides: d
                    .provided_actions
                    .iter()
                    .map(|&i| Ident::new(&self.interface(i).name, d.span))
                    .collect(),
            }));
        }
        for c in &self.contexts {
            decls.push(Decl::Operator(self.lower_operator(
                OperatorKind::Context {
                    output: TypeRef {
                        ty: c.output_type.clone(),
                        span: c.span,
                    },
                },
                &c.name,
                c.span,
                &c.contract,
            )));
        }
        for k in &self.controllers {
            decls.push(Decl::Operator(self.lower_operator(
                OperatorKind::Controller,
                &k.name,
                k.span,
                &k.contract,
            )));
        }
        ast::RawModel { decls }
    }

    fn publisher_ref(&self, p: Publisher, span: Span) -> Ref {
        match p {
            Publisher::Source(s) => Ref {
                head: Ident::new(&self.device(s.device).name, span),
                member: Some(Ident::new(&self.source(s).name, span)),
            },
            Publisher::Context(c) => Ref {
                head: Ident::new(&self.context(c).name, span),
                member: None,
            },
        }
    }

    fn lower_operator(
        &self,
        kind: OperatorKind,
        name: &str,
        span: Span,
        contract: &InteractionContract,
    ) -> ast::OperatorDecl {
        let publishes = match contract.emission.publish {
            Publication::Always => vec![PublishMode::Always],
            Publication::Maybe => vec![PublishMode::Maybe],
            Publication::Never => vec![],
        };
        let publish_span = contract.emission.publish_span.unwrap_or(span);
        ast::OperatorDecl {
            kind,
            name: Ident::new(name, span),
            activation: contract
                .activation
                .disjuncts
                .iter()
                .map(|d| self.publisher_ref(d.event, d.span))
                .collect(),
            when_span: contract.activation.span,
            gets: contract
                .requirements
                .iter()
                .map(|r| ast::GetDecl {
                    target: self.publisher_ref(r.target, r.span),
                    declared: r.declared.as_ref().map(|(ty, span)| TypeRef {
                        ty: ty.clone(),
                        span: *span,
                    }),
                    span: r.span,
                })
                .collect(),
            publishes: publishes
                .into_iter()
                .map(|mode| ast::PublishDecl {
                    mode,
                    span: publish_span,
                })
                .collect(),
            invokes: contract
                .emission
                .invokes
                .iter()
                .map(|i| ast::InvokeDecl {
                    method: Ident::new(&self.method(i.method).name, i.span),
                    interface: Ident::new(&self.interface(i.method.interface).name, i.span),
                    span: i.span,
                })
                .collect(),
        }
    }
}
