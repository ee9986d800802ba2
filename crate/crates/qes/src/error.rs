//! Error type shared by every module of the engine.

use num_complex::Complex64;
use thiserror::Error;

/// Failures raised by the numerical engine.
///
/// Variants carry enough context (indices, locations, magnitudes) for a
/// caller to report the problem without re-running the computation.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum QesError {
    /// An argument was malformed (non-finite value, wrong length, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The evaluation point coincides with a root of a polynomial.
    #[error("pole: evaluation point coincides with root #{index} ({root})")]
    Pole { index: usize, root: Complex64 },

    /// The number of supplied roots does not match the sought degree.
    #[error("root count mismatch: expected {expected}, got {got}")]
    RootCountMismatch { expected: usize, got: usize },

    /// The operator does not leave the polynomial space of degree n invariant.
    #[error(
        "not quasi-exactly solvable at degree {n}: overflow coefficient {overflow:e} on z^{power}"
    )]
    NotQes {
        n: usize,
        power: usize,
        overflow: f64,
    },

    /// Two eigenvalues coincide or an eigenvector is ill-conditioned.
    #[error("degenerate spectrum: eigenvalue {eigenvalue} has condition number {condition:e}")]
    DegenerateSpectrum {
        eigenvalue: Complex64,
        condition: f64,
    },

    /// An eigenvector has a vanishing z^n coefficient and cannot be made monic.
    #[error("degree drop: eigenvector for E={energy} has leading coefficient {leading:e} relative to its norm")]
    DegreeDrop { energy: Complex64, leading: f64 },

    /// The leading coefficient P4 vanishes at a Bethe root.
    #[error("singular weight: P4 vanishes at root #{index} ({root})")]
    SingularWeight { index: usize, root: Complex64 },

    /// Two Bethe roots merged during refinement.
    #[error("root collision: roots #{i} and #{j} are separated by {separation:e}")]
    RootCollision { i: usize, j: usize, separation: f64 },

    /// A case parameter set violates the case's validity constraints.
    #[error("invalid parameters for {case}: {reason}")]
    InvalidParameter { case: String, reason: String },

    /// A point lies outside the physical domain of the case.
    #[error("domain violation: {0}")]
    Domain(String),

    /// The case is only available in its algebraic variable.
    #[error("case {0} is algebraic-only; physical-axis maps are not available")]
    AlgebraicOnly(String),

    /// The square-root branch of P4 is undefined for real-mode evaluation.
    #[error("branch error: P4({z}) = {p4} is negative under real-mode evaluation")]
    Branch { z: f64, p4: f64 },

    /// The Wronskian of seed and other state vanishes.
    #[error("Wronskian node at z = {z}")]
    WronskianNode { z: Complex64 },

    /// P4 vanishes where it must be divided by.
    #[error("singular coefficient: P4 vanishes at z = {z}")]
    SingularCoefficient { z: Complex64 },

    /// A grid point is too close to a pole for finite differences.
    #[error(
        "pole proximity: grid point x = {x} lies within the finite-difference stencil of a pole"
    )]
    PoleProximity { x: f64 },

    /// Input function is identically zero, so relative residuals are undefined.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, QesError>;
