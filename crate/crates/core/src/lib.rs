//! Flag vectors of Eulerian and half-Eulerian posets, the interval-system
//! constructions that generate extreme rays of their closed cone, and the
//! linear inequalities that bound it.

pub mod cli;
pub mod cone;
pub mod constructions;
pub mod error;
pub mod expr;
pub mod flag;
pub mod forms;
pub mod index;
pub mod poset;
pub mod rational;
pub mod subset;
pub mod systems;
pub mod transforms;

pub use error::{Error, Result};
