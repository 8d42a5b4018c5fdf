//! Canonical text rendering.
//!
//! Devices and action interfaces print on one line each; operators print
//! one clause per line in the order `when`, `get`, publication, `do`.

use std::fmt::Write;

use super::ast::*;
use crate::model::ArchitectureModel;

pub fn pretty(model: &RawModel) -> String {
    let mut out = String::new();
    for decl in &model.decls {
        match decl {
            Decl::Device(d) => device(&mut out, d),
            Decl::Interface(i) => interface(&mut out, i),
            Decl::Operator(o) => operator(&mut out, o),
        }
    }
    out
}

/// Renders a resolved model through its raw form.
pub fn pretty_model(model: &ArchitectureModel) -> String {
    pretty(&model.to_raw())
}

fn device(out: &mut String, d: &DeviceDecl) {
    write!(out, "device {} {{", d.name.name).unwrap();
    for s in &d.sources {
        write!(out, " source {} as {};", s.name.name, s.ty.ty).unwrap();
    }
    for p in &d.provides {
        write!(out, " provides {};", p.name).unwrap();
    }
    out.push_str(" }\n");
}

fn interface(out: &mut String, i: &InterfaceDecl) {
    write!(out, "actioninterface {} {{", i.name.name).unwrap();
    for m in &i.methods {
        let params = m
            .params
            .iter()
            .map(|p| format!("{} as {}", p.name.name, p.ty.ty))
            .collect::<Vec<_>>()
            .join(", ");
        write!(out, " method {}({});", m.name.name, params).unwrap();
    }
    out.push_str(" }\n");
}

fn operator(out: &mut String, o: &OperatorDecl) {
    match &o.kind {
        OperatorKind::Context { output } => {
            writeln!(out, "context {} as {} {{", o.name.name, output.ty).unwrap()
        }
        OperatorKind::Controller => writeln!(out, "controller {} {{", o.name.name).unwrap(),
    }
    if !o.activation.is_empty() {
        let disjuncts = o
            .activation
            .iter()
            .map(|r| format!("provided {}", r.text()))
            .collect::<Vec<_>>()
            .join(" or ");
        writeln!(out, "  when {disjuncts}").unwrap();
    }
    for g in &o.gets {
        match &g.declared {
            Some(t) => writeln!(out, "  get {} as {}", g.target.text(), t.ty).unwrap(),
            None => writeln!(out, "  get {}", g.target.text()).unwrap(),
        }
    }
    for p in &o.publishes {
        let mode = match p.mode {
            PublishMode::Always => "always",
            PublishMode::Maybe => "maybe",
        };
        writeln!(out, "  {mode} publish").unwrap();
    }
    for i in &o.invokes {
        writeln!(out, "  do {} on {}", i.method.name, i.interface.name).unwrap();
    }
    out.push_str("}\n");
}
