//! File formats, the floating-point Hilbert–Chow map and the command-line
//! front end for [`adhm_core`].

pub mod approx;
pub mod cli;
pub mod error;
pub mod format;

pub use error::{AppError, AppResult};
