//! Finite crossed modules and butterflies: the weak-morphism calculus of
//! 2-groups over a point, with exhaustive oracles at small finite scale.

pub mod abelian;
pub mod braid;
pub mod budget;
pub mod butterfly;
pub mod cli;
pub mod doc;
pub mod error;
pub mod functor;
pub mod group;
pub mod nerve;
pub mod oracle;
pub mod samples;
pub mod xmod;

pub use budget::Budget;
pub use error::{Error, Result};
