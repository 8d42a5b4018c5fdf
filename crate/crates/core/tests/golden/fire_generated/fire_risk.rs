// @generated by sccadl from the architecture description. Regenerate instead of editing.
//! Skeleton for context operator `FireRisk`.

/// Behaviour of `FireRisk`. Implement it outside the generated directory.
pub trait FireRisk {
    /// Called when `SmokePresence` publishes.
    /// Return `None` to skip publication.
    fn on_new_smoke_presence(
        &mut self,
        value: bool,
        temperature: &mut super::Pull<'_, i64>,
    ) -> ::core::option::Option<bool>;
}
