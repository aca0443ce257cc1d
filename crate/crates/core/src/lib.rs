pub mod basis;
pub mod diagnostics;
pub mod eigenfunctions;
pub mod error;
pub mod oracle;
pub mod par;
pub mod quadrature;
pub mod reference;
pub mod solver;

pub use error::{Error, Result};
