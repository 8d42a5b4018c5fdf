// Tries to stop the alarm through the only permission the controller holds.
#[path = "generated/mod.rs"]
mod generated;

use generated::action_alarm::InvokeActivate;

pub fn misuse(activate_on_alarm: &InvokeActivate<'_>) {
    activate_on_alarm.stop();
}

fn main() {}
