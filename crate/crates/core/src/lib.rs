pub mod boson;
pub mod cli;
pub mod contour;
pub mod error;
pub mod measures;
pub mod partition;
pub mod qseries;
pub mod scalar;
pub mod sixvertex;
pub mod skew;
pub mod symfunc;
pub mod wfunc;

pub use error::{Error, Result};
pub use partition::Partition;
pub use scalar::Scalar;
