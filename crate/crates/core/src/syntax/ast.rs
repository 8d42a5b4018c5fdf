//! Raw (unresolved) declarations as written in the source text.
//!
//! The parser is deliberately more permissive than the architectural style:
//! a context may carry `do` clauses and a controller may `get` or `publish`.
//! Those shapes are rejected later with layering diagnostics that point at
//! the offending clause.

use crate::diagnostics::Span;
use crate::model::DataType;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl Ident {
    pub fn new(name: impl Into<String>, span: Span) -> Self {
        Ident {
            name: name.into(),
            span,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeRef {
    pub ty: DataType,
    pub span: Span,
}

/// `ID` or `ID.ID`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ref {
    pub head: Ident,
    pub member: Option<Ident>,
}

impl Ref {
    pub fn span(&self) -> Span {
        match &self.member {
            Some(m) => self.head.span.to(m.span),
            None => self.head.span,
        }
    }

    pub fn text(&self) -> String {
        match &self.member {
            Some(m) => format!("{}.{}", self.head.name, m.name),
            None => self.head.name.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawModel {
    pub decls: Vec<Decl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Device(DeviceDecl),
    Interface(InterfaceDecl),
    Operator(OperatorDecl),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeviceDecl {
    pub name: Ident,
    pub sources: Vec<SourceDecl>,
    pub provides: Vec<Ident>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceDecl {
    pub name: Ident,
    pub ty: TypeRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterfaceDecl {
    pub name: Ident,
    pub methods: Vec<MethodDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MethodDecl {
    pub name: Ident,
    pub params: Vec<ParamDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamDecl {
    pub name: Ident,
    pub ty: TypeRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Context { output: TypeRef },
    Controller,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PublishMode {
    Always,
    Maybe,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GetDecl {
    pub target: Ref,
    pub declared: Option<TypeRef>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublishDecl {
    pub mode: PublishMode,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvokeDecl {
    pub method: Ident,
    pub interface: Ident,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorDecl {
    pub kind: OperatorKind,
    pub name: Ident,
    pub activation: Vec<Ref>,
    pub when_span: Span,
    pub gets: Vec<GetDecl>,
    pub publishes: Vec<PublishDecl>,
    pub invokes: Vec<InvokeDecl>,
}

impl OperatorDecl {
    pub fn is_context(&self) -> bool {
        matches!(self.kind, OperatorKind::Context { .. })
    }
}

impl RawModel {
    /// Copy with every span zeroed, for comparisons that must ignore layout.
    pub fn erase_spans(&self) -> RawModel {
        let z = Span::default();
        let id = |i: &Ident| Ident::new(i.name.clone(), z);
        let ty = |t: &TypeRef| TypeRef {
            ty: t.ty.clone(),
            span: z,
        };
        let rf = |r: &Ref| Ref {
            head: id(&r.head),
            member: r.member.as_ref().map(id),
        };
        let decls = self
            .decls
            .iter()
            .map(|d| match d {
                Decl::Device(dev) => Decl::Device(DeviceDecl {
                    name: id(&dev.name),
                    sources: dev
                        .sources
                        .iter()
                        .map(|s| SourceDecl {
                            name: id(&s.name),
                            ty: ty(&s.ty),
                        })
                        .collect(),
                    provides: dev.provides.iter().map(id).collect(),
                }),
                Decl::Interface(i) => Decl::Interface(InterfaceDecl {
                    name: id(&i.name),
                    methods: i
                        .methods
                        .iter()
                        .map(|m| MethodDecl {
                            name: id(&m.name),
                            params: m
                                .params
                                .iter()
                                .map(|p| ParamDecl {
                                    name: id(&p.name),
                                    ty: ty(&p.ty),
                                })
                                .collect(),
                        })
                        .collect(),
                }),
                Decl::Operator(op) => Decl::Operator(OperatorDecl {
                    kind: match &op.kind {
                        OperatorKind::Context { output } => {
                            OperatorKind::Context { output: ty(output) }
                        }
                        OperatorKind::Controller => OperatorKind::Controller,
                    },
                    name: id(&op.name),
                    activation: op.activation.iter().map(rf).collect(),
                    when_span: z,
                    gets: op
                        .gets
                        .iter()
                        .map(|g| GetDecl {
                            target: rf(&g.target),
                            declared: g.declared.as_ref().map(ty),
                            span: z,
                        })
                        .collect(),
                    publishes: op
                        .publishes
                        .iter()
                        .map(|p| PublishDecl {
                            mode: p.mode,
                            span: z,
                        })
                        .collect(),
                    invokes: op
                        .invokes
                        .iter()
                        .map(|i| InvokeDecl {
                            method: id(&i.method),
                            interface: id(&i.interface),
                            span: z,
                        })
                        .collect(),
                }),
            })
            .collect();
        RawModel { decls }
    }

    /// Structural equality: same declarations, ignoring positions.
    pub fn structurally_eq(&self, other: &RawModel) -> bool {
        self.erase_spans() == other.erase_spans()
    }
}
