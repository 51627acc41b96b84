//! Exact integer hulls, two-halfspace closures, split closures and
//! Chvátal–Gomory cuts for rational polyhedra.

pub mod closures;
pub mod corpus;
pub mod error;
pub mod hull2d;
pub mod io;
pub mod latfree;
pub mod lattice;
pub mod oracle;
pub mod poly;
pub mod ratmath;

pub use error::{Error, Result};
