// @generated by sccadl from the architecture description. Regenerate instead of editing.
//! Method table for action interface `Alarm`.

/// Implemented by the device classes providing `Alarm`.
pub trait Alarm {
    fn activate(&mut self, intensity: i64);
    fn stop(&mut self);
}

/// Permission to invoke `Alarm.activate`.
pub struct InvokeActivate<'a> {
    pub(super) target: &'a ::core::cell::RefCell<::std::boxed::Box<dyn Alarm>>,
}

impl InvokeActivate<'_> {
    pub fn call(&self, intensity: i64) {
        self.target.borrow_mut().activate(intensity);
    }
}

/// Permission to invoke `Alarm.stop`.
pub struct InvokeStop<'a> {
    pub(super) target: &'a ::core::cell::RefCell<::std::boxed::Box<dyn Alarm>>,
}

impl InvokeStop<'_> {
    pub fn call(&self) {
        self.target.borrow_mut().stop();
    }
}
