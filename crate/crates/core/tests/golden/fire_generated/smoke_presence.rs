// @generated by sccadl from the architecture description. Regenerate instead of editing.
//! Skeleton for context operator `SmokePresence`.

/// Behaviour of `SmokePresence`. Implement it outside the generated directory.
pub trait SmokePresence {
    /// Called when `SmokeDetector.smokeLevel` publishes.
    fn on_new_smoke_level(
        &mut self,
        value: i64,
    ) -> bool;
}
