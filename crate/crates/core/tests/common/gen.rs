//! Seeded generator of valid architecture descriptions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Ty {
    Bool,
    Int,
}

impl Ty {
    fn name(self) -> &'static str {
        match self {
            Ty::Bool => "Bool",
            Ty::Int => "Int",
        }
    }
}

/// A random model that passes every check, with at most `max_decls`
/// top-level declarations and at most eight operators.
pub fn random_model(seed: u64, max_decls: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_decls = max_decls.max(2);
    let n_devices = rng.gen_range(1..=3.min(max_decls - 1));
    let budget = max_decls - n_devices;
    let n_ifaces = rng.gen_range(0..=2.min(budget.saturating_sub(1)));
    let budget = budget - n_ifaces;
    let n_contexts = rng.gen_range(0..=budget.min(5));
    let n_controllers = if n_ifaces > 0 && n_contexts > 0 {
        rng.gen_range(0..=(budget - n_contexts).min(3))
    } else {
        0
    };

    let mut out = String::new();
    // (name, type) of everything that publishes, in declaration order
    let mut publishers: Vec<(String, Ty)> = Vec::new();
    for d in 0..n_devices {
        let n_sources = rng.gen_range(1..=2);
        let mut body = String::new();
        for s in 0..n_sources {
            let ty = if rng.gen_bool(0.5) { Ty::Bool } else { Ty::Int };
            body.push_str(&format!("source s{s} as {}; ", ty.name()));
            publishers.push((format!("D{d}.s{s}"), ty));
        }
        if n_ifaces > 0 && rng.gen_bool(0.3) {
            body.push_str(&format!("provides I{}; ", rng.gen_range(0..n_ifaces)));
        }
        out.push_str(&format!("device D{d} {{ {body}}}\n"));
    }
    let mut methods: Vec<String> = Vec::new();
    for i in 0..n_ifaces {
        let n = rng.gen_range(1..=2);
        let mut body = String::new();
        for m in 0..n {
            if rng.gen_bool(0.5) {
                body.push_str(&format!("method m{m}(p as Int); "));
            } else {
                body.push_str(&format!("method m{m}(); "));
            }
            methods.push(format!("m{m} on I{i}"));
        }
        out.push_str(&format!("actioninterface I{i} {{ {body}}}\n"));
    }

    let source_count = publishers.len();
    let mut contexts: Vec<(String, Ty)> = Vec::new();
    for c in 0..n_contexts {
        let name = format!("C{c}");
        // Activation only from earlier publishers keeps the push graph acyclic.
        let ty = publishers.choose(&mut rng).unwrap().1;
        let candidates: Vec<&(String, Ty)> = publishers.iter().filter(|p| p.1 == ty).collect();
        let k = rng.gen_range(1..=2.min(candidates.len()));
        let when: Vec<String> = candidates
            .choose_multiple(&mut rng, k)
            .map(|p| format!("provided {}", p.0))
            .collect();
        let mut gets: Vec<String> = Vec::new();
        for _ in 0..rng.gen_range(0..=2) {
            let pick = rng.gen_range(0..source_count + contexts.len());
            let target = if pick < source_count {
                publishers[pick].0.clone()
            } else {
                contexts[pick - source_count].0.clone()
            };
            if !gets.contains(&target) {
                gets.push(target);
            }
        }
        let out_ty = if rng.gen_bool(0.5) { Ty::Bool } else { Ty::Int };
        let mode = if rng.gen_bool(0.5) { "always" } else { "maybe" };
        out.push_str(&format!(
            "context {name} as {} {{\n  when {}\n",
            out_ty.name(),
            when.join(" or ")
        ));
        for g in &gets {
            out.push_str(&format!("  get {g}\n"));
        }
        out.push_str(&format!("  {mode} publish\n}}\n"));
        publishers.push((name.clone(), out_ty));
        contexts.push((name, out_ty));
    }
    for k in 0..n_controllers {
        let ty = contexts.choose(&mut rng).unwrap().1;
        let candidates: Vec<&(String, Ty)> = contexts.iter().filter(|c| c.1 == ty).collect();
        let n = rng.gen_range(1..=2.min(candidates.len()));
        let when: Vec<String> = candidates
            .choose_multiple(&mut rng, n)
            .map(|c| format!("provided {}", c.0))
            .collect();
        let n_do = rng.gen_range(1..=2.min(methods.len()));
        let dos: Vec<&String> = methods.choose_multiple(&mut rng, n_do).collect();
        out.push_str(&format!(
            "controller K{k} {{\n  when {}\n",
            when.join(" or ")
        ));
        for d in dos {
            out.push_str(&format!("  do {d}\n"));
        }
        out.push_str("}\n");
    }
    out
}
