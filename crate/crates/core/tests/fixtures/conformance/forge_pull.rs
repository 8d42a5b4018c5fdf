// Tries to mint a pull capability outside the runtime.
#[path = "generated/mod.rs"]
mod generated;

use generated::Pull;

fn main() {
    let mut read = || 1i64;
    let mut pull = Pull::new(&mut read);
    let _ = pull.get();
}
