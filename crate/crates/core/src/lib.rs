pub mod curve;
pub mod error;
pub mod exact;
pub mod net;
pub mod numeric;
pub mod scroll;

pub use error::{Error, Result};
