// @generated by sccadl from the architecture description. Regenerate instead of editing.
//! Runtime glue: reactions run to completion, one stimulus at a time.

#![allow(dead_code, unused_variables, unused_mut, non_camel_case_types, non_snake_case)]

pub mod action_alarm;
pub mod fire_controller;
pub mod fire_risk;
pub mod smoke_presence;
pub mod source_smoke_detector_smoke_level;
pub mod source_thermometer_temperature;

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

/// Implementations supplied by the application.
pub struct Components {
    pub smoke_presence: ::std::boxed::Box<dyn smoke_presence::SmokePresence>,
    pub fire_risk: ::std::boxed::Box<dyn fire_risk::FireRisk>,
    pub fire_controller: ::std::boxed::Box<dyn fire_controller::FireController>,
    pub source_thermometer_temperature: ::std::boxed::Box<dyn source_thermometer_temperature::Driver>,
    pub action_alarm: ::std::boxed::Box<dyn action_alarm::Alarm>,
}

enum Token {
    SmokePresence_onNewSmokeLevel(i64),
    FireRisk_onNewSmokePresence(bool),
    FireController_onNewFireRisk(bool),
}

#[derive(Default)]
struct Latest {
    smoke_presence: ::core::option::Option<bool>,
    fire_risk: ::core::option::Option<bool>,
}

/// Dispatches publications along the architecture's push edges.
pub struct Runtime {
    smoke_presence: ::std::boxed::Box<dyn smoke_presence::SmokePresence>,
    fire_risk: ::std::boxed::Box<dyn fire_risk::FireRisk>,
    fire_controller: ::std::boxed::Box<dyn fire_controller::FireController>,
    source_thermometer_temperature: ::std::boxed::Box<dyn source_thermometer_temperature::Driver>,
    action_alarm: ::core::cell::RefCell<::std::boxed::Box<dyn action_alarm::Alarm>>,
    latest_published: Latest,
    token_queue: ::std::collections::VecDeque<Token>,
}

impl Runtime {
    pub fn new(components: Components) -> Self {
        Runtime {
            smoke_presence: components.smoke_presence,
            fire_risk: components.fire_risk,
            fire_controller: components.fire_controller,
            source_thermometer_temperature: components.source_thermometer_temperature,
            action_alarm: ::core::cell::RefCell::new(components.action_alarm),
            latest_published: Latest::default(),
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
            Token::SmokePresence_onNewSmokeLevel(value) => {
                let Runtime { smoke_presence: op, latest_published: latest, token_queue: queue, .. } = self;
                let output = op.on_new_smoke_level(value);
                latest.smoke_presence = ::core::option::Option::Some(output.clone());
                queue.push_back(Token::FireRisk_onNewSmokePresence(output.clone()));
            }
            Token::FireRisk_onNewSmokePresence(value) => {
                let Runtime { fire_risk: op, source_thermometer_temperature: driver_0, latest_published: latest, token_queue: queue, .. } = self;
                let mut read_0 = || driver_0.read();
                let mut pull_0 = Pull::new(&mut read_0);
                if let ::core::option::Option::Some(output) = op.on_new_smoke_presence(value, &mut pull_0) {
                    latest.fire_risk = ::core::option::Option::Some(output.clone());
                    queue.push_back(Token::FireController_onNewFireRisk(output.clone()));
                }
            }
            Token::FireController_onNewFireRisk(value) => {
                let Runtime { fire_controller: op, action_alarm: action_0, .. } = self;
                let invoke_0 = action_alarm::InvokeActivate { target: &*action_0 };
                op.on_new_fire_risk(value, &invoke_0);
            }
        }
    }
}
