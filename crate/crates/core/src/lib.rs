//! Hermitian Maass lifts of level-one cusp forms, their pullback periods and the
//! central Rankin–Selberg values they detect.

pub mod arith;
pub mod chartools;
pub mod coeff;
pub mod eigenforms;
pub mod lvalue;
pub mod maasslift;
pub mod error;
pub mod pullback;
pub mod quadfield;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
