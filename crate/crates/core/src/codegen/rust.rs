//! Rust skeleton generation.
//!
//! Layout under `<out>/generated/`:
//!
//! * `mod.rs`: runtime glue (`Runtime`, `Components`, `Pull`, named types)
//! * one module per operator holding the trait developers implement
//! * `source_<device>_<source>.rs`: publish entry point, plus a `Driver`
//!   trait when some operator pulls the source
//! * `action_<interface>.rs`: method table trait and one invoke capability
//!   per method
//!
//! Capabilities can only be constructed inside the generated module tree,
//! so a developer completing a skeleton can perform exactly the
//! interactions its contract licenses.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::{capitalize, map_contract, CallbackSignature, ReturnKind};
use crate::diagnostics::Code;
use crate::model::{ArchitectureModel, DataType, InterfaceId, OperatorId, Publisher, SourceId};

const HEADER: &str =
    "// @generated by sccadl from the architecture description. Regenerate instead of editing.\n";
const GLUE_ITEMS: &[&str] = &["Pull", "Components", "Runtime", "Token", "Latest"];
const RUNTIME_FIELDS: &[&str] = &["latest_published", "token_queue"];
pub(crate) const DESCRIPTOR_FILE: &str = "framework.json";

#[derive(Debug, thiserror::Error)]
pub enum GenerateError {
    #[error("cannot write `{}`: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("generated names collide: {0}")]
    Conflict(String),
}

impl GenerateError {
    pub fn code(&self) -> Code {
        match self {
            GenerateError::Io { .. } => Code::IoError,
            GenerateError::Conflict(_) => Code::GenerationConflict,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedFiles {
    /// `<out>/generated`
    pub dir: PathBuf,
    /// File names inside `dir`, sorted.
    pub files: Vec<String>,
}

const RUST_KEYWORDS: &[&str] = &[
    "abstract", "as", "async", "await", "become", "box", "break", "const", "continue", "crate",
    "do", "dyn", "else", "enum", "extern", "false", "final", "fn", "for", "gen", "if", "impl",
    "in", "let", "loop", "macro", "match", "mod", "move", "mut", "override", "priv", "pub", "ref",
    "return", "self", "Self", "static", "struct", "super", "trait", "true", "try", "type",
    "typeof", "unsafe", "unsized", "use", "virtual", "where", "while", "yield",
];

pub(crate) fn rust_ident(s: &str) -> String {
    if matches!(s, "self" | "Self" | "super" | "crate") {
        format!("{s}_")
    } else if RUST_KEYWORDS.contains(&s) {
        format!("r#{s}")
    } else {
        s.to_string()
    }
}

pub(crate) fn snake(s: &str) -> String {
    let mut out = String::new();
    let mut prev_lower = false;
    for c in s.chars() {
        if c.is_uppercase() {
            if prev_lower {
                out.push('_');
            }
            out.extend(c.to_lowercase());
            prev_lower = false;
        } else {
            out.push(c);
            prev_lower = c.is_lowercase() || c.is_ascii_digit();
        }
    }
    out
}

struct Names<'m> {
    model: &'m ArchitectureModel,
}

impl Names<'_> {
    fn operator(&self, op: OperatorId) -> String {
        rust_ident(&snake(self.model.operator_name(op)))
    }

    fn source(&self, s: SourceId) -> String {
        format!(
            "source_{}_{}",
            snake(&self.model.device(s.device).name),
            snake(&self.model.source(s).name)
        )
    }

    fn action(&self, i: InterfaceId) -> String {
        format!("action_{}", snake(&self.model.interface(i).name))
    }

    fn publish_fn(&self, s: SourceId) -> String {
        format!(
            "publish_{}_{}",
            snake(&self.model.device(s.device).name),
            snake(&self.model.source(s).name)
        )
    }

    fn token(&self, op: OperatorId, cb: &CallbackSignature) -> String {
        format!("{}_{}", self.model.operator_name(op), cb.name)
    }

    fn invoke_struct(&self, m: crate::model::MethodRef) -> String {
        format!("Invoke{}", capitalize(&self.model.method(m).name))
    }
}

fn rust_type(ty: &DataType, child: bool) -> String {
    match ty {
        DataType::Bool => "bool".into(),
        DataType::Int => "i64".into(),
        DataType::Enum { name, .. } | DataType::Opaque(name) => {
            if child {
                format!("super::{}", rust_ident(name))
            } else {
                rust_ident(name)
            }
        }
    }
}

fn pull_type(model: &ArchitectureModel, target: Publisher, child: bool) -> String {
    let inner = rust_type(model.publisher_type(target), child);
    match target {
        Publisher::Source(_) => inner,
        Publisher::Context(_) => format!("::core::option::Option<{inner}>"),
    }
}

fn named_types(model: &ArchitectureModel) -> Result<BTreeMap<String, DataType>, GenerateError> {
    let mut all: Vec<&DataType> = Vec::new();
    for s in model.source_ids() {
        all.push(&model.source(s).value_type);
    }
    for c in &model.contexts {
        all.push(&c.output_type);
    }
    for i in &model.interfaces {
        for m in &i.methods {
            all.extend(m.params.iter().map(|p| &p.ty));
        }
    }
    let mut named: BTreeMap<String, DataType> = BTreeMap::new();
    for ty in all {
        let (DataType::Enum { name, .. } | DataType::Opaque(name)) = ty else {
            continue;
        };
        if GLUE_ITEMS.contains(&name.as_str()) {
            return Err(GenerateError::Conflict(format!(
                "type `{name}` clashes with a runtime item"
            )));
        }
        match named.get(name) {
            Some(prev) if prev != ty => {
                return Err(GenerateError::Conflict(format!(
                    "type `{name}` is used with two different definitions"
                )))
            }
            _ => {
                named.insert(name.clone(), ty.clone());
            }
        }
    }
    Ok(named)
}

/// Renders every generated file, keyed by file name inside `generated/`.
pub fn render_skeletons(
    model: &ArchitectureModel,
) -> Result<BTreeMap<String, String>, GenerateError> {
    let names = Names { model };
    let types = named_types(model)?;

    let pulled_sources: BTreeSet<SourceId> = model
        .operator_ids()
        .flat_map(|op| model.contract(op).requirements.iter().map(|r| r.target))
        .filter_map(|t| match t {
            Publisher::Source(s) => Some(s),
            Publisher::Context(_) => None,
        })
        .collect();
    let invoked: BTreeSet<InterfaceId> = model
        .operator_ids()
        .flat_map(|op| {
            model
                .contract(op)
                .emission
                .invokes
                .iter()
                .map(|i| i.method.interface)
        })
        .collect();
    let signatures: Vec<(OperatorId, Vec<CallbackSignature>)> = model
        .operator_ids()
        .map(|op| (op, map_contract(model, op)))
        .collect();

    let mut modules: Vec<String> = Vec::new();
    modules.extend(model.operator_ids().map(|op| names.operator(op)));
    modules.extend(model.source_ids().map(|s| names.source(s)));
    modules.extend((0..model.interfaces.len()).map(|i| names.action(InterfaceId(i))));
    let mut seen = BTreeSet::new();
    for m in modules
        .iter()
        .map(String::as_str)
        .chain(RUNTIME_FIELDS.iter().copied())
    {
        if m == "mod" || !seen.insert(m) {
            return Err(GenerateError::Conflict(format!(
                "two elements map to the Rust name `{m}`"
            )));
        }
    }

    let mut files = BTreeMap::new();
    for (op, sigs) in &signatures {
        files.insert(
            format!("{}.rs", names.operator(*op).trim_start_matches("r#")),
            operator_file(model, &names, *op, sigs),
        );
    }
    for s in model.source_ids() {
        files.insert(
            format!("{}.rs", names.source(s)),
            source_file(model, &names, s, &signatures, pulled_sources.contains(&s)),
        );
    }
    for i in 0..model.interfaces.len() {
        let id = InterfaceId(i);
        files.insert(
            format!("{}.rs", names.action(id)),
            action_file(model, id, &names),
        );
    }
    files.insert(
        "mod.rs".to_string(),
        glue_file(
            model,
            &names,
            &types,
            &modules,
            &signatures,
            &pulled_sources,
            &invoked,
        ),
    );
    Ok(files)
}

fn operator_file(
    model: &ArchitectureModel,
    names: &Names<'_>,
    op: OperatorId,
    sigs: &[CallbackSignature],
) -> String {
    let name = model.operator_name(op);
    let kind = match op {
        OperatorId::Context(_) => "context operator",
        OperatorId::Controller(_) => "controller",
    };
    let mut out = String::from(HEADER);
    writeln!(out, "//! Skeleton for {kind} `{name}`.\n").unwrap();
    writeln!(
        out,
        "/// Behaviour of `{name}`. Implement it outside the generated directory."
    )
    .unwrap();
    writeln!(out, "pub trait {} {{", rust_ident(name)).unwrap();
    for (i, sig) in sigs.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        writeln!(
            out,
            "    /// Called when `{}` publishes.",
            model.publisher_name(sig.trigger)
        )
        .unwrap();
        if matches!(sig.return_kind, ReturnKind::OptionalValue(_)) {
            out.push_str("    /// Return `None` to skip publication.\n");
        }
        writeln!(out, "    fn {}(", rust_ident(&snake(&sig.name))).unwrap();
        out.push_str("        &mut self,\n");
        writeln!(
            out,
            "        {}: {},",
            rust_ident(&snake(&sig.activation_param.0)),
            rust_type(&sig.activation_param.1, true)
        )
        .unwrap();
        for p in &sig.pull_params {
            writeln!(
                out,
                "        {}: &mut super::Pull<'_, {}>,",
                rust_ident(&snake(&p.name)),
                pull_type(model, p.target, true)
            )
            .unwrap();
        }
        for p in &sig.invoke_params {
            writeln!(
                out,
                "        {}: &super::{}::{}<'_>,",
                rust_ident(&snake(&p.name)),
                names.action(p.method.interface),
                names.invoke_struct(p.method)
            )
            .unwrap();
        }
        match &sig.return_kind {
            ReturnKind::Value(t) => writeln!(out, "    ) -> {};", rust_type(t, true)).unwrap(),
            ReturnKind::OptionalValue(t) => writeln!(
                out,
                "    ) -> ::core::option::Option<{}>;",
                rust_type(t, true)
            )
            .unwrap(),
            ReturnKind::Nothing => out.push_str("    );\n"),
        }
    }
    out.push_str("}\n");
    out
}

fn source_file(
    model: &ArchitectureModel,
    names: &Names<'_>,
    s: SourceId,
    signatures: &[(OperatorId, Vec<CallbackSignature>)],
    pulled: bool,
) -> String {
    let qualified = model.source_name(s);
    let ty = rust_type(&model.source(s).value_type, true);
    let mut out = String::from(HEADER);
    writeln!(out, "//! Entry points for source `{qualified}`.\n").unwrap();
    if pulled {
        writeln!(
            out,
            "/// Device-side read access, used when an operator pulls `{qualified}`."
        )
        .unwrap();
        out.push_str("pub trait Driver {\n");
        writeln!(out, "    fn read(&mut self) -> {ty};").unwrap();
        out.push_str("}\n\n");
    }
    out.push_str("impl super::Runtime {\n");
    writeln!(
        out,
        "    /// Publishes a new `{qualified}` value and runs the reaction to completion."
    )
    .unwrap();
    writeln!(
        out,
        "    pub fn {}(&mut self, value: {ty}) {{",
        names.publish_fn(s)
    )
    .unwrap();
    for (op, sigs) in signatures {
        for sig in sigs
            .iter()
            .filter(|sig| sig.trigger == Publisher::Source(s))
        {
            writeln!(
                out,
                "        self.token_queue.push_back(super::Token::{}(value.clone()));",
                names.token(*op, sig)
            )
            .unwrap();
        }
    }
    out.push_str("        self.run_to_completion();\n    }\n}\n");
    out
}

fn action_file(model: &ArchitectureModel, id: InterfaceId, names: &Names<'_>) -> String {
    let iface = model.interface(id);
    let trait_name = rust_ident(&iface.name);
    let params = |m: &crate::model::ActionMethod| {
        m.params
            .iter()
            .map(|p| {
                format!(
                    "{}: {}",
                    rust_ident(&snake(&p.name)),
                    rust_type(&p.ty, true)
                )
            })
            .collect::<Vec<_>>()
    };
    let mut out = String::from(HEADER);
    writeln!(
        out,
        "//! Method table for action interface `{}`.\n",
        iface.name
    )
    .unwrap();
    writeln!(
        out,
        "/// Implemented by the device classes providing `{}`.",
        iface.name
    )
    .unwrap();
    writeln!(out, "pub trait {trait_name} {{").unwrap();
    for m in &iface.methods {
        let ps = params(m);
        let sep = if ps.is_empty() { "" } else { ", " };
        writeln!(
            out,
            "    fn {}(&mut self{sep}{});",
            rust_ident(&snake(&m.name)),
            ps.join(", ")
        )
        .unwrap();
    }
    out.push_str("}\n");
    for (index, m) in iface.methods.iter().enumerate() {
        let cap = names.invoke_struct(crate::model::MethodRef {
            interface: id,
            index,
        });
        let ps = params(m);
        let sep = if ps.is_empty() { "" } else { ", " };
        let args = m
            .params
            .iter()
            .map(|p| rust_ident(&snake(&p.name)))
            .collect::<Vec<_>>()
            .join(", ");
        writeln!(
            out,
            "\n/// Permission to invoke `{}.{}`.",
            iface.name, m.name
        )
        .unwrap();
        writeln!(out, "pub struct {cap}<'a> {{").unwrap();
        writeln!(
            out,
            "    pub(super) target: &'a ::core::cell::RefCell<::std::boxed::Box<dyn {trait_name}>>,"
        )
        .unwrap();
        out.push_str("}\n\n");
        writeln!(out, "impl {cap}<'_> {{").unwrap();
        writeln!(out, "    pub fn call(&self{sep}{}) {{", ps.join(", ")).unwrap();
        writeln!(
            out,
            "        self.target.borrow_mut().{}({args});",
            rust_ident(&snake(&m.name))
        )
        .unwrap();
        out.push_str("    }\n}\n");
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn glue_file(
    model: &ArchitectureModel,
    names: &Names<'_>,
    types: &BTreeMap<String, DataType>,
    modules: &[String],
    signatures: &[(OperatorId, Vec<CallbackSignature>)],
    pulled_sources: &BTreeSet<SourceId>,
    invoked: &BTreeSet<InterfaceId>,
) -> String {
    let mut out = String::from(HEADER);
    out.push_str("//! Runtime glue: reactions run to completion, one stimulus at a time.\n\n");
    out.push_str(
        "#![allow(dead_code, unused_variables, unused_mut, non_camel_case_types, non_snake_case)]\n",
    );
    let mut sorted: Vec<&String> = modules.iter().collect();
    sorted.sort();
    if !sorted.is_empty() {
        out.push('\n');
    }
    for m in sorted {
        writeln!(out, "pub mod {m};").unwrap();
    }

    for (name, ty) in types {
        out.push('\n');
        match ty {
            DataType::Enum { literals, .. } => {
                out.push_str("#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]\n");
                writeln!(out, "pub enum {} {{", rust_ident(name)).unwrap();
                for l in literals {
                    writeln!(out, "    {},", rust_ident(l)).unwrap();
                }
                out.push_str("}\n");
            }
            _ => {
                writeln!(out, "/// Opaque `{name}` payload.").unwrap();
                out.push_str("#[derive(Clone, Debug, PartialEq)]\n");
                writeln!(
                    out,
                    "pub struct {}(pub ::std::string::String);",
                    rust_ident(name)
                )
                .unwrap();
            }
        }
    }

    out.push_str(
        "
/// Capability to read one declared data requirement.
pub struct Pull<'a, T> {
    read: &'a mut dyn ::core::ops::FnMut() -> T,
}

impl<'a, T> Pull<'a, T> {
    fn new(read: &'a mut dyn ::core::ops::FnMut() -> T) -> Self {
        Pull { read }
    }

    pub fn get(&mut self) -> T {
        (self.read)()
    }
}
",
    );

    // (field, boxed type) for everything the runtime drives.
    let mut components: Vec<(String, String)> = Vec::new();
    for op in model.operator_ids() {
        components.push((
            names.operator(op),
            format!(
                "{}::{}",
                names.operator(op),
                rust_ident(model.operator_name(op))
            ),
        ));
    }
    for &s in pulled_sources {
        components.push((names.source(s), format!("{}::Driver", names.source(s))));
    }
    for &i in invoked {
        components.push((
            names.action(i),
            format!(
                "{}::{}",
                names.action(i),
                rust_ident(&model.interface(i).name)
            ),
        ));
    }

    out.push_str("\n/// Implementations supplied by the application.\npub struct Components {\n");
    for (field, ty) in &components {
        writeln!(out, "    pub {field}: ::std::boxed::Box<dyn {ty}>,").unwrap();
    }
    out.push_str("}\n");

    out.push_str("\nenum Token {\n");
    for (op, sigs) in signatures {
        for sig in sigs {
            writeln!(
                out,
                "    {}({}),",
                names.token(*op, sig),
                rust_type(&sig.activation_param.1, false)
            )
            .unwrap();
        }
    }
    out.push_str("}\n");

    out.push_str("\n#[derive(Default)]\nstruct Latest {\n");
    for c in model.context_ids() {
        let op = OperatorId::Context(c);
        writeln!(
            out,
            "    {}: ::core::option::Option<{}>,",
            names.operator(op),
            rust_type(&model.context(c).output_type, false)
        )
        .unwrap();
    }
    out.push_str("}\n");

    out.push_str("\n/// Dispatches publications along the architecture's push edges.\npub struct Runtime {\n");
    for (field, ty) in &components {
        if field.starts_with("action_") && invoked.iter().any(|&i| names.action(i) == *field) {
            writeln!(
                out,
                "    {field}: ::core::cell::RefCell<::std::boxed::Box<dyn {ty}>>,"
            )
            .unwrap();
        } else {
            writeln!(out, "    {field}: ::std::boxed::Box<dyn {ty}>,").unwrap();
        }
    }
    out.push_str(
        "    latest_published: Latest,\n    token_queue: ::std::collections::VecDeque<Token>,\n}\n",
    );

    out.push_str(
        "\nimpl Runtime {\n    pub fn new(components: Components) -> Self {\n        Runtime {\n",
    );
    for (field, _) in &components {
        if invoked.iter().any(|&i| names.action(i) == *field) {
            writeln!(
                out,
                "            {field}: ::core::cell::RefCell::new(components.{field}),"
            )
            .unwrap();
        } else {
            writeln!(out, "            {field}: components.{field},").unwrap();
        }
    }
    out.push_str(
        "            latest_published: Latest::default(),
            token_queue: ::std::collections::VecDeque::new(),
        }
    }

    fn run_to_completion(&mut self) {
        while let ::core::option::Option::Some(token) = self.token_queue.pop_front() {
            self.dispatch(token);
        }
    }

    fn dispatch(&mut self, token: Token) {
        match token {
",
    );
    for (op, sigs) in signatures {
        for sig in sigs {
            dispatch_arm(&mut out, names, *op, sig, signatures);
        }
    }
    out.push_str("        }\n    }\n}\n");
    out
}

fn dispatch_arm(
    out: &mut String,
    names: &Names<'_>,
    op: OperatorId,
    sig: &CallbackSignature,
    signatures: &[(OperatorId, Vec<CallbackSignature>)],
) {
    // Fields are bound to fixed local names so element names never shadow
    // one another.
    let op_field = names.operator(op);
    let mut bindings = vec![format!("{op_field}: op")];
    let mut actions: Vec<String> = Vec::new();
    for (k, p) in sig.pull_params.iter().enumerate() {
        if let Publisher::Source(s) = p.target {
            bindings.push(format!("{}: driver_{k}", names.source(s)));
        }
    }
    for p in &sig.invoke_params {
        let f = names.action(p.method.interface);
        if !actions.contains(&f) {
            bindings.push(format!("{f}: action_{}", actions.len()));
            actions.push(f);
        }
    }
    let publishes = !matches!(sig.return_kind, ReturnKind::Nothing);
    let pulls_context = sig
        .pull_params
        .iter()
        .any(|p| matches!(p.target, Publisher::Context(_)));
    if publishes || pulls_context {
        bindings.push("latest_published: latest".into());
    }
    if publishes {
        bindings.push("token_queue: queue".into());
    }
    writeln!(
        out,
        "            Token::{}(value) => {{",
        names.token(op, sig)
    )
    .unwrap();
    writeln!(
        out,
        "                let Runtime {{ {}, .. }} = self;",
        bindings.join(", ")
    )
    .unwrap();

    let mut args = vec!["value".to_string()];
    for (k, p) in sig.pull_params.iter().enumerate() {
        match p.target {
            Publisher::Source(_) => writeln!(
                out,
                "                let mut read_{k} = || driver_{k}.read();"
            )
            .unwrap(),
            Publisher::Context(c) => writeln!(
                out,
                "                let mut read_{k} = || latest.{}.clone();",
                names.operator(OperatorId::Context(c))
            )
            .unwrap(),
        }
        writeln!(
            out,
            "                let mut pull_{k} = Pull::new(&mut read_{k});"
        )
        .unwrap();
        args.push(format!("&mut pull_{k}"));
    }
    for (k, p) in sig.invoke_params.iter().enumerate() {
        let field = names.action(p.method.interface);
        let a = actions.iter().position(|f| *f == field).unwrap();
        writeln!(
            out,
            "                let invoke_{k} = {field}::{} {{ target: &*action_{a} }};",
            names.invoke_struct(p.method),
        )
        .unwrap();
        args.push(format!("&invoke_{k}"));
    }
    let call = format!("op.{}({})", rust_ident(&snake(&sig.name)), args.join(", "));
    let publish_block = |out: &mut String, indent: &str| {
        let OperatorId::Context(c) = op else {
            return;
        };
        writeln!(
            out,
            "{indent}latest.{op_field} = ::core::option::Option::Some(output.clone());"
        )
        .unwrap();
        for (consumer, csigs) in signatures {
            for csig in csigs.iter().filter(|s| s.trigger == Publisher::Context(c)) {
                writeln!(
                    out,
                    "{indent}queue.push_back(Token::{}(output.clone()));",
                    names.token(*consumer, csig)
                )
                .unwrap();
            }
        }
    };
    match &sig.return_kind {
        ReturnKind::Value(_) => {
            writeln!(out, "                let output = {call};").unwrap();
            publish_block(out, "                ");
        }
        ReturnKind::OptionalValue(_) => {
            writeln!(
                out,
                "                if let ::core::option::Option::Some(output) = {call} {{"
            )
            .unwrap();
            publish_block(out, "                    ");
            out.push_str("                }\n");
        }
        ReturnKind::Nothing => writeln!(out, "                {call};").unwrap(),
    }
    out.push_str("            }\n");
}

/// Writes the skeletons to `<out_dir>/generated/`, replacing previously
/// generated files there. Nothing outside that directory is touched.
pub fn generate_skeletons(
    model: &ArchitectureModel,
    out_dir: &Path,
) -> Result<GeneratedFiles, GenerateError> {
    let files = render_skeletons(model)?;
    write_generated(out_dir, files)
}

/// Like [`generate_skeletons`], also writing the descriptor as
/// `generated/framework.json`.
pub fn generate_with_descriptor(
    model: &ArchitectureModel,
    out_dir: &Path,
) -> Result<GeneratedFiles, GenerateError> {
    let mut files = render_skeletons(model)?;
    files.insert(DESCRIPTOR_FILE.to_string(), super::emit_descriptor(model));
    write_generated(out_dir, files)
}

fn write_generated(
    out_dir: &Path,
    files: BTreeMap<String, String>,
) -> Result<GeneratedFiles, GenerateError> {
    let dir = out_dir.join("generated");
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| GenerateError::Io { path, source }
    };
    fs::create_dir_all(&dir).map_err(io(&dir))?;
    for entry in fs::read_dir(&dir).map_err(io(&dir))? {
        let path = entry.map_err(io(&dir))?.path();
        let stale = path.is_file()
            && path.file_name().and_then(|n| n.to_str()).is_some_and(|n| {
                (n.ends_with(".rs") || n == DESCRIPTOR_FILE) && !files.contains_key(n)
            });
        if stale {
            fs::remove_file(&path).map_err(io(&path))?;
        }
    }
    for (name, content) in &files {
        let path = dir.join(name);
        fs::write(&path, content).map_err(io(&path))?;
    }
    Ok(GeneratedFiles {
        dir,
        files: files.into_keys().collect(),
    })
}
