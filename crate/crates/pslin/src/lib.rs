//! Constructive search for solutions of `y = ax + b` inside Piatetski-Shapiro
//! sequences `PS(alpha) = { floor(n^alpha) : n >= 1 }`, together with the
//! supporting machinery: certified floor arithmetic, continued-fraction
//! convergents and approximation witnesses, exact discrepancy computation,
//! and the discrepancy bound shapes that drive the window scan.

pub mod certreal;
pub mod cli;
pub mod dioph;
pub mod disc;
pub mod error;
pub mod pscore;
pub mod solver;
pub mod sums;

pub use certreal::{AlphaForm, AlphaSpec, CertifiedReal, FloorResult, PrecisionPolicy};
pub use error::{Error, Result};
