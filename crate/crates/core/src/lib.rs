//! Inner and outer capacity bounds for the compound Gaussian channel with
//! correlated dirty-paper state, plus the numerical machinery used to check them:
//! a Gaussian mutual-information oracle, a linear deterministic approximation,
//! and a deterministic sweep harness that reports gaps between bounds.
//!
//! Every rate is in bits per channel use (base-2 logs) and is clamped at zero.

pub mod bounds_ccdp_es;
pub mod bounds_wrdp;
pub mod bounds_wsfd;
pub mod channel_model;
pub mod error;
pub mod gaussian_oracle;
pub mod harness;
pub mod lindet;
pub mod rate;

pub use error::{Error, Result};
pub use rate::{Branch, FormulaSource, RateBound, Scheme};
