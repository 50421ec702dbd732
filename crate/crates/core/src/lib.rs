pub mod error;
pub mod finite_field;

pub use error::{Error, Result};
pub mod curve;
pub mod hp;
pub mod intpoly;
pub mod output;
pub mod zeta;
pub mod rmt;
pub mod li;
pub mod mertens;
pub mod ensemble;
