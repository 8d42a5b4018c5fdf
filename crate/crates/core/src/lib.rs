//! Compiler, dataflow analyzer and invariant checker for SCC
//! (Sense/Compute/Control) architecture descriptions.
//!
//! The usual pipeline is [`compile`] (parse, resolve, check), then any of
//! [`dataflow`], [`codegen`] or [`verify`] on the resulting model.

pub mod cli;
pub mod codegen;
pub mod dataflow;
pub mod diagnostics;
pub mod model;
pub mod syntax;
pub mod verify;
pub mod wellformed;

use diagnostics::{has_errors, sort_diagnostics, Diagnostic};
use model::ArchitectureModel;

/// Result of the front end.
#[derive(Clone, Debug)]
pub struct Compiled {
    /// Present whenever name resolution succeeded, even if later checks
    /// reported errors.
    pub model: Option<ArchitectureModel>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Compiled {
    pub fn ok(&self) -> bool {
        self.model.is_some() && !has_errors(&self.diagnostics)
    }

    /// The model, if no error was reported.
    pub fn checked_model(&self) -> Option<&ArchitectureModel> {
        if self.ok() {
            self.model.as_ref()
        } else {
            None
        }
    }
}

/// Parses, resolves and checks `text`. Dead-element warnings are added when
/// the model is otherwise error-free.
pub fn compile(text: &str) -> Compiled {
    let (raw, mut diagnostics) = syntax::parse(text);
    if has_errors(&diagnostics) {
        sort_diagnostics(&mut diagnostics);
        return Compiled {
            model: None,
            diagnostics,
        };
    }
    let model = match model::resolve(&raw) {
        Ok(m) => m,
        Err(mut errs) => {
            diagnostics.append(&mut errs);
            sort_diagnostics(&mut diagnostics);
            return Compiled {
                model: None,
                diagnostics,
            };
        }
    };
    let report = wellformed::check_all(&model);
    diagnostics.extend(report.diagnostics);
    if !has_errors(&diagnostics) {
        let graph = dataflow::build_graph(&model);
        diagnostics.extend(dataflow::dead_element_diagnostics(&graph));
    }
    sort_diagnostics(&mut diagnostics);
    Compiled {
        model: Some(model),
        diagnostics,
    }
}
