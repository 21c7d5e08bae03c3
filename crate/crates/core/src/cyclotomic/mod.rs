//! Exact arithmetic in Z[zeta_p], h-adic truncation and matrices over both rings.

mod elem;
mod filtration;
mod matrix;
mod trunc;

pub use elem::{bareiss_det, CycloElem, Valuation};
pub use filtration::{filtration_check, unipotent_lift, FiltrationReport};
pub use matrix::{CycloMatrix, Matrix, RingElem, TruncMatrix};
pub use trunc::TruncElem;
