//! Compiles a description with a mistake in it and prints the diagnostics,
//! then prints the fixed model in canonical form.

const BROKEN: &str = "\
device Lamp { source level as Int; source hours as Int; }
actioninterface Switch { method on_off(state as Bool); }
context Bright as Bool {
  when provided Lamp.lvl
  always publish
}
";

fn main() {
    let compiled = sccadl::compile(BROKEN);
    for d in &compiled.diagnostics {
        println!("{}", d.clone().in_file("lamp.scc"));
    }

    let fixed = BROKEN.replace("Lamp.lvl", "Lamp.level");
    let compiled = sccadl::compile(&fixed);
    let model = compiled.checked_model().expect("fixed model compiles");
    // Warnings do not stop compilation: nothing reads Lamp.hours.
    for d in &compiled.diagnostics {
        println!("{d}");
    }
    print!("{}", sccadl::syntax::pretty_model(model));
}
