// Tries to mint an invoke permission outside the runtime.
#[path = "generated/mod.rs"]
mod generated;

use std::cell::RefCell;

use generated::action_alarm::{Alarm, InvokeActivate};

struct Siren;
impl Alarm for Siren {
    fn activate(&mut self, _: i64) {}
    fn stop(&mut self) {}
}

fn main() {
    let target: RefCell<Box<dyn Alarm>> = RefCell::new(Box::new(Siren));
    let invoke = InvokeActivate { target: &target };
    invoke.call(1);
}
