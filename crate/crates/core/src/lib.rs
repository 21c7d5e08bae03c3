pub mod cyclotomic;
pub mod error;
pub mod fp;
pub mod fusion_basis;
pub mod prime;
pub mod suites;
pub mod symplectic_mod;
pub mod twist_rep;

pub use error::{Error, Result};
pub use prime::Prime;
