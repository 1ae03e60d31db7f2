pub mod compat;
pub mod error;
pub mod explorer;
pub mod laurent;
pub mod matrix;
pub mod parse;
pub mod pattern;
pub mod rank2;
pub mod rootsys;
pub mod verify;

pub use error::{Error, Result};
