#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod charthy;
pub mod cli;
pub mod construct;
pub mod error;
pub mod grp;
pub mod matalg;
pub mod oracle;
pub mod ring;

pub use error::{Error, Result};
