pub mod cli;
pub mod dynamics;
pub mod error;
mod fsutil;
pub mod phasespace;
pub mod polyalg;
pub mod spectra;
pub mod variational;

pub use error::{Error, Result};
