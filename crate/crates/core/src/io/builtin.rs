//! Worked-example instances shipped with the crate.

use crate::model::GameInstance;

use super::document::load_instance;

/// Five players, twelve coalitions, ten action profiles, plus the payoff matrix
/// printed alongside the example. Shares are kept exactly as printed, so
/// coalition (1,4,2) sums to 5/4.
pub const EXAMPLE_JSON: &str = include_str!("../../data/example.json");

/// Five players with four equal-share coalitions and the 16-arc network `g`.
pub const SMALL_EXAMPLE_JSON: &str = include_str!("../../data/small_example.json");

pub fn builtin_example() -> GameInstance {
    load_instance(EXAMPLE_JSON).expect("embedded example is valid")
}

pub fn builtin_small_example() -> GameInstance {
    load_instance(SMALL_EXAMPLE_JSON).expect("embedded small example is valid")
}

/// Looks up a built-in instance by name (`example` or `small`).
pub fn builtin(name: &str) -> Option<GameInstance> {
    match name {
        "example" => Some(builtin_example()),
        "small" => Some(builtin_small_example()),
        _ => None,
    }
}
