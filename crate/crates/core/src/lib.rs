//! Transformations of sets of pure quantum states.
//!
//! Given initial states `{|ψ_j¹⟩}` and targets `{|ψ_j²⟩}`, a probabilistic
//! transformation succeeding on state `j` with probability `p_j` exists when an
//! `N × N` matrix `Π` is positive, has diagonal `p`, and leaves
//! `Γ₁ − Π ∘ Γ₂` positive, where `Γ` are Gram matrices and `∘` the Hadamard
//! product. For linearly independent initial states the conditions are also
//! sufficient, and [`transform::kraus_from_pi`] builds the Kraus operators.
//!
//! The crate also covers the mixing side of quantum operations:
//!
//! - [`channel`]: Kraus sets, POVM elements, unitality, and the eigenbasis
//!   transfer matrix that maps input spectra to output spectra.
//! - [`majorize`]: the majorization preorder, doubly stochastic witnesses,
//!   Hadamard-product majorization, and the ensemble-spectrum check for
//!   deterministic transformations.
//! - [`states`]: Gram matrices, reciprocal vectors and ensemble density operators.
//! - [`linalg`]: the dense complex linear algebra underneath.
//!
//! ```
//! use pureset::states::PureStateSet;
//! use pureset::transform::usd_max_uniform;
//!
//! let pair = PureStateSet::from_real(&[vec![1.0, 0.0], vec![0.5, 0.75f64.sqrt()]]).unwrap();
//! let p = usd_max_uniform(&pair).unwrap();
//! assert!((p - 0.5).abs() < 1e-12);
//! ```

// `!(x >= 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod majorize;
pub mod random;
pub mod selftest;
pub mod states;
pub mod transform;

pub use error::{Error, Result};

use serde::Serialize;

/// A boolean verdict together with the number it was judged on.
///
/// `witness` is whatever the test compares against `tol`: a minimum
/// eigenvalue, a defect norm or a maximum deviation, as documented by the
/// producing operation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub passed: bool,
    pub witness: f64,
    pub tol: f64,
}

impl Verdict {
    /// Passes when `witness <= tol` (defects and deviations).
    pub fn at_most(witness: f64, tol: f64) -> Self {
        Self { passed: witness <= tol, witness, tol }
    }

    /// Passes when `witness >= -tol` (minimum eigenvalues).
    pub fn non_negative(witness: f64, tol: f64) -> Self {
        Self { passed: witness >= -tol, witness, tol }
    }
}
pub use linalg::{ComplexMatrix, HermitianMatrix, C64};
pub use states::{DensityOperator, Ensemble, PureStateSet};
