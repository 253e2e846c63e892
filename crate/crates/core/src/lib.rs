pub mod config;
pub mod error;
pub mod gpt;
pub mod io;
pub mod linalg;
pub mod montecarlo;
pub mod quantum;
pub mod spaces;
pub mod tensornorms;
pub mod witnesses;

pub use error::{Error, Result};
