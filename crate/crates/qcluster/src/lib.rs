pub mod basic_quiver;
pub mod dilog_series;
pub mod error;
pub mod labels;
pub mod lie_data;
pub mod mutation_engine;
pub mod polarization;
pub mod qtorus;
pub mod relations_suite;
pub mod seed_quiver;

pub use error::{Error, Result};
