//! Polynomial eigenstates of quasi-exactly solvable (QES) Schrödinger
//! systems and their first-order, state-deleting SUSY partners.
//!
//! * [`poly`] — monic polynomials, Wronskians and root sums.
//! * [`odeform`] — the gauged ODE `P4 φ'' + P3 φ' + (E − V1) φ = 0` and its
//!   QES constraints.
//! * [`bethe`] — the `n+1` polynomial eigenstates via algebraization,
//!   certified against the Bethe ansatz equations.
//! * [`catalog`] — the twelve QES cases with their physical-axis maps and
//!   closed-form `n = 1` data.
//! * [`susy`] — supercharges, partner potentials and partner wavefunctions.
//! * [`verify`] — finite-difference residuals, singularity scans and the
//!   full identity suite producing a [`verify::VerificationReport`].

pub mod bethe;
pub mod catalog;
pub mod error;
pub mod odeform;
pub mod poly;
pub mod susy;
pub mod verify;

pub use error::{QesError, Result};
