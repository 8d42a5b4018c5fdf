//! Test-side oracles, kept independent of the library's semantics.
#![allow(dead_code)]

pub mod enumerate;
pub mod gen;

use std::path::{Path, PathBuf};

use sccadl::model::ArchitectureModel;

pub fn fixture_dir(kind: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(kind)
}

/// `(file name, contents)` for every `.scc` file in a fixture directory,
/// sorted by name.
pub fn fixtures(kind: &str) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(fixture_dir(kind))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "scc"))
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read_to_string(&p).unwrap(),
            )
        })
        .collect();
    out.sort();
    out
}

pub fn checked(text: &str) -> ArchitectureModel {
    let c = sccadl::compile(text);
    assert!(c.ok(), "fixture does not compile: {:?}", c.diagnostics);
    c.model.unwrap()
}

/// Parses the `// expect: CODE line:col` header of an invalid fixture.
pub fn expectation(text: &str) -> (String, u32, u32) {
    let header = text
        .lines()
        .next()
        .and_then(|l| l.strip_prefix("// expect: "))
        .expect("invalid fixtures start with an expect header");
    let (code, pos) = header.split_once(' ').unwrap();
    let (line, col) = pos.trim().split_once(':').unwrap();
    (
        code.to_string(),
        line.parse().unwrap(),
        col.parse().unwrap(),
    )
}

/// Generates the framework for `scc` into `dir/generated/`, copies the
/// developer program `app` next to it and compiles it with rustc.
pub fn build_app(dir: &Path, scc: &str, app: &str) -> std::process::Output {
    let model = checked(scc);
    sccadl::codegen::generate_skeletons(&model, dir).unwrap();
    std::fs::write(dir.join("main.rs"), app).unwrap();
    let rustc = std::env::var_os("RUSTC").unwrap_or_else(|| "rustc".into());
    std::process::Command::new(rustc)
        .current_dir(dir)
        .args(["--edition", "2021", "--crate-type", "bin", "main.rs", "-o"])
        .arg(dir.join("app"))
        .output()
        .expect("rustc runs")
}

pub fn conformance(name: &str) -> String {
    std::fs::read_to_string(fixture_dir("conformance").join(name)).unwrap()
}
