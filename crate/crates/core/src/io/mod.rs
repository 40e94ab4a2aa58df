//! Instance documents, CSV matrices, built-in datasets and the random generator.

mod builtin;
mod document;
mod export;
mod generate;

pub use builtin::{builtin, builtin_example, builtin_small_example, EXAMPLE_JSON, SMALL_EXAMPLE_JSON};
pub use document::{
    load_instance, load_instance_with, save_instance, Bit, CoalitionDocument, InstanceDocument, NetworkDocument,
    ProfileDocument, SCHEMA_VERSION,
};
pub use export::{matrix_from_csv, matrix_to_csv, regrets_to_csv};
pub use generate::{max_disjoint_coalitions, random_instance, random_network};
