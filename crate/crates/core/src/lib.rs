//! Exact and numerical analysis of perfect, pretty good and pointwise
//! subspace state transfer in arc-reversal coined quantum walks with
//! reflection coins.

pub mod coin;
pub mod cospec;
pub mod decider;
pub mod error;
pub mod exactalg;
pub mod families;
pub mod graph;
pub mod numeric;
pub mod rational;
pub mod reduction;
pub mod walk;

pub use error::{Error, Result};
