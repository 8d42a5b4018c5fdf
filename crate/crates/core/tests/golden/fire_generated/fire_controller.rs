// @generated by sccadl from the architecture description. Regenerate instead of editing.
//! Skeleton for controller `FireController`.

/// Behaviour of `FireController`. Implement it outside the generated directory.
pub trait FireController {
    /// Called when `FireRisk` publishes.
    fn on_new_fire_risk(
        &mut self,
        value: bool,
        activate_on_alarm: &super::action_alarm::InvokeActivate<'_>,
    );
}
