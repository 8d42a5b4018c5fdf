// Developer code for fire.scc, written against the generated framework.
#[path = "generated/mod.rs"]
mod generated;

use std::cell::RefCell;
use std::rc::Rc;

use generated::action_alarm::{Alarm, InvokeActivate};
use generated::fire_controller::FireController;
use generated::fire_risk::FireRisk;
use generated::smoke_presence::SmokePresence;
use generated::source_thermometer_temperature::Driver;
use generated::{Components, Pull, Runtime};

struct Smoke;
impl SmokePresence for Smoke {
    fn on_new_smoke_level(&mut self, value: i64) -> bool {
        value > 50
    }
}

struct Risk;
impl FireRisk for Risk {
    fn on_new_smoke_presence(&mut self, value: bool, temperature: &mut Pull<'_, i64>) -> Option<bool> {
        if value {
            Some(temperature.get() > 40)
        } else {
            None
        }
    }
}

struct Control;
impl FireController for Control {
    fn on_new_fire_risk(&mut self, value: bool, activate_on_alarm: &InvokeActivate<'_>) {
        if value {
            activate_on_alarm.call(3);
        }
    }
}

struct Thermo;
impl Driver for Thermo {
    fn read(&mut self) -> i64 {
        70
    }
}

struct Siren(Rc<RefCell<Vec<i64>>>);
impl Alarm for Siren {
    fn activate(&mut self, intensity: i64) {
        self.0.borrow_mut().push(intensity);
    }
    fn stop(&mut self) {}
}

fn main() {
    let rang = Rc::new(RefCell::new(Vec::new()));
    let mut rt = Runtime::new(Components {
        smoke_presence: Box::new(Smoke),
        fire_risk: Box::new(Risk),
        fire_controller: Box::new(Control),
        source_thermometer_temperature: Box::new(Thermo),
        action_alarm: Box::new(Siren(rang.clone())),
    });
    rt.publish_smoke_detector_smoke_level(80);
    assert_eq!(*rang.borrow(), vec![3]);
    println!("alarm activated");
}
