//! Long thin covers, sizes for angles, coarse flow spaces, cone covers and
//! relative Rips complexes on finite graph models.
//!
//! Every construction works on a finite simple [`graph::Graph`] acted on by
//! a finite [`symmetry::GroupModel`]. Boundary points are modeled by far
//! vertices, so all statements become finite and are checked exhaustively.

pub mod corpus;
pub mod error;
pub mod graph;
pub mod half;
pub mod symmetry;
pub mod angles;
pub mod battery;
pub mod cone;
pub mod cover;
pub mod flow;
pub mod model;
pub mod rips;
pub mod io;
pub mod dot;
pub mod pipeline;

pub use error::{Error, Result};
pub use half::Half;
