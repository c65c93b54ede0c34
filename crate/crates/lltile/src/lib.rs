//! Labelled-graph simulations and finite-window tiling problems on the
//! lamplighter group and Diestel-Leader graphs.

pub mod error;
pub mod graph;
pub mod lamplighter;
pub mod reduction;
pub mod sat;
pub mod sim;
pub mod tiles;
pub mod verify;

pub use error::{Error, Result};
