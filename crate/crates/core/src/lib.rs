pub mod bounds;
pub mod cli;
pub mod combinatorics;
pub mod eigen;
pub mod error;
pub mod hall;
pub mod oracle;
pub mod quotient;
pub mod zeros;

pub use combinatorics::BigCount;
pub use error::{Error, Result};
