//! Exact computer algebra for the twist quantization of the centerless
//! super-Virasoro algebra.
//!
//! The crate builds PBW canonical forms in `U(𝓛)`, truncated power series in
//! the deformation parameter `t`, the twist elements `F_a`, `𝓕_a`, `u_a`,
//! `v_a`, and the deformed coproduct and antipode, and checks the identities
//! relating them degree by degree with exact arithmetic in `ℚ[α]`.

pub mod cli;
pub mod error;
pub mod liealg;
pub mod pbw;
pub mod scalars;
pub mod tensor;
pub mod tseries;
pub mod twist;
pub mod verify;

pub use error::{Error, Result};
