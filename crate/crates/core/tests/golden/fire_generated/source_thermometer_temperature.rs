// @generated by sccadl from the architecture description. Regenerate instead of editing.
//! Entry points for source `Thermometer.temperature`.

/// Device-side read access, used when an operator pulls `Thermometer.temperature`.
pub trait Driver {
    fn read(&mut self) -> i64;
}

impl super::Runtime {
    /// Publishes a new `Thermometer.temperature` value and runs the reaction to completion.
    pub fn publish_thermometer_temperature(&mut self, value: i64) {
        self.run_to_completion();
    }
}
