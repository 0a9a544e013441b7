//! Fully explicit Pólya–Vinogradov constant machinery and its verification suite.
//!
//! The crate has two halves that check each other:
//!
//! * an *analytic* half ([`constants`], [`burgess`], [`optimizer`]) that evaluates
//!   the explicit constant stack for the Pólya–Vinogradov inequality — the
//!   Montgomery–Vaughan-style partial Gaussian sum constants, the Burgess-type
//!   feasibility search over (m, g, h), and the (γ, E) optimization that produces
//!   the final h₁/h₂ tables.  Everything q-dependent is a function of
//!   (log q, log log q) only, carried in sign/log-magnitude form so that moduli
//!   with log log q ≈ 2·10⁴ are handled exactly like desk-scale ones;
//! * an *empirical* half ([`characters`], [`verify`]) that brute-force checks every
//!   small lemma the constant stack consumes — prime sums with rigorous tail
//!   brackets, divisor/totient inequalities, congruence counts, character fourth
//!   moments, Gauss sum moduli, and the classical explicit Pólya–Vinogradov bounds
//!   against every primitive character of desk-scale modulus.

pub mod burgess;
pub mod characters;
pub mod constants;
pub mod error;
pub mod numerics;
pub mod optimizer;
pub mod verify;

pub use error::{Error, Result};
