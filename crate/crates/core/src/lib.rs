//! Split systems, circular orderings, 1-nested phylogenetic networks and
//! Buneman graphs.
//!
//! Taxa are dense indices `0..n` into a [`TaxaSet`]; a [`Split`] stores the
//! side containing taxon 0. Everything is an immutable value.

pub mod buneman;
pub mod closure;
pub mod error;
pub mod graph;
pub mod incompat;
pub mod io;
pub mod network;
pub mod oracle;
pub mod ordering;
pub mod random;
pub mod split;
pub mod synthesis;
pub mod taxa;

pub use error::{Error, Result};
pub use network::{Network, NetworkBuilder};
pub use ordering::CircularOrdering;
pub use split::{Split, SplitSystem};
pub use taxa::TaxaSet;
