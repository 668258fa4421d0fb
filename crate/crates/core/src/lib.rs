//! Species of structures and cyclic operads.
//!
//! The crate models species as evaluable expression trees, builds the
//! canonical natural isomorphisms between them, and presents cyclic operads
//! both componentially (partial compositions indexed by labels) and
//! algebraically (natural maps between species). Every presentation comes
//! with an exhaustive law checker over a bounded label pool, and the
//! translations between the presentations are implemented constructively so
//! that round trips can be compared structure by structure.

pub mod algebraic;
pub mod bounds;
pub mod cli;
pub mod componential;
pub mod controls;
pub mod error;
pub mod format;
pub mod isos;
pub mod labels;
pub mod natural;
pub mod report;
pub mod species;
pub mod structure;
pub mod translations;
pub mod zoo;

pub use bounds::Bounds;
pub use error::{Error, Result};
pub use labels::{Bijection, FiniteSet, Label};
pub use natural::{Iso, NaturalMap};
pub use report::{Report, Violation};
pub use species::Species;
pub use structure::{Structure, Term};
