// @generated by sccadl from the architecture description. Regenerate instead of editing.
//! Entry points for source `SmokeDetector.smokeLevel`.

impl super::Runtime {
    /// Publishes a new `SmokeDetector.smokeLevel` value and runs the reaction to completion.
    pub fn publish_smoke_detector_smoke_level(&mut self, value: i64) {
        self.token_queue.push_back(super::Token::SmokePresence_onNewSmokeLevel(value.clone()));
        self.run_to_completion();
    }
}
