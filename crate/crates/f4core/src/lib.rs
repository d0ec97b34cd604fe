//! Exact computations in the exceptional group F4: roots and Weyl group,
//! a Chevalley basis with its adjoint group, nilpotent orbits and their
//! tori, stabilizer computations, descent dimension data and root exchange.

pub mod acceptance;
pub mod chevalley;
pub mod descent;
pub mod error;
pub mod exchange;
pub mod linalg;
pub mod orbits;
pub mod rootsys;
pub mod stabilizers;
pub mod tori;

pub use error::{Error, Result};
