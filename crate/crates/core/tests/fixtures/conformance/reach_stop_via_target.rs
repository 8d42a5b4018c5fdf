// Tries to reach the whole Alarm object behind an invoke permission.
#[path = "generated/mod.rs"]
mod generated;

use generated::action_alarm::InvokeActivate;

pub fn misuse(activate_on_alarm: &InvokeActivate<'_>) {
    activate_on_alarm.target.borrow_mut().stop();
}

fn main() {}
