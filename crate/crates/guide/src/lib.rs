//! The guide's chapters, compiled so that their code samples run as
//! doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}

#[doc = include_str!("../../../book/src/symmetry.md")]
pub mod symmetry {}

#[doc = include_str!("../../../book/src/angles.md")]
pub mod angles {}

#[doc = include_str!("../../../book/src/covers.md")]
pub mod covers {}

#[doc = include_str!("../../../book/src/coarse_flow.md")]
pub mod coarse_flow {}

#[doc = include_str!("../../../book/src/cone_covers.md")]
pub mod cone_covers {}

#[doc = include_str!("../../../book/src/rips.md")]
pub mod rips {}

#[doc = include_str!("../../../book/src/pipeline.md")]
pub mod pipeline {}
