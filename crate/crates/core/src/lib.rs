//! Exact arithmetic for lattices over truncated ramified discrete valuation
//! rings, group-algebra modules, stable homomorphism categories, and the
//! syzygy/cosyzygy machinery used by the `stablemod` verification CLI.

pub mod arlab;
pub mod dvr;
pub mod error;
pub mod fpalg;
pub mod groups;
pub mod linalg;
pub mod repmod;
pub mod scenario;
pub mod stable;

pub use error::{Error, Result};
