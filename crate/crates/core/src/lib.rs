//! Network formation games with additive coalition payoffs.
//!
//! Players form a directed network from offer and acceptance matrices. Each
//! 2- or 3-player coalition present in the network pays its members a fixed
//! share of its income. On top of that the crate decides stability under
//! unilateral link-breaking, runs the disjoint-coalition fast criterion, and
//! selects min-max regret compromise profiles.
//!
//! ```
//! use netform::{builtin_example, form_network, payoff_vector, ActivationRule, Rational};
//!
//! let game = builtin_example();
//! let g4 = form_network(&game.profiles[3]).unwrap();
//! let h = payoff_vector(&game, &g4, ActivationRule::Linked);
//! assert_eq!(h.0[0], Rational::integer(-1));
//! ```

pub mod compromise;
pub mod error;
pub mod formation;
pub mod io;
pub mod model;
pub mod payoff;
pub mod rational;
pub mod stability;

pub use compromise::{compromise_solution, ideal_vector, regret_vectors, CompromiseReport, PayoffMatrix};
pub use error::{Error, Result};
pub use formation::{form_network, incident_arcs, remove_arcs, Arc, Network, OfferProfile};
pub use io::{builtin_example, builtin_small_example, load_instance, random_instance, save_instance};
pub use model::{validate_instance, ActivationRule, CoalitionSpec, GameInstance, NamedNetwork, PlayerId, ValidationReport};
pub use payoff::{active_coalitions, is_active, payoff_table, payoff_vector, ActiveCoalitionSet, PayoffVector};
pub use rational::Rational;
pub use stability::{
    check_disjoint_stability, enumerate_deviations, is_stable, restricted_equilibria, stability_reports, Deviation,
    ReachableDeviation, RestrictedReport, StabilityReport,
};
