//! Nonsymmetric dependence measures for discrete random variables.
//!
//! The central quantity is the squared dependence of a target Y on a
//! conditioning variable X,
//!
//! ```text
//! τ(X,Y)² = 6 Σ_{i,j} [F(j|i) − F(j)]² P(i) P(j)
//! ```
//!
//! built from the conditional and unconditional cumulative distributions of
//! Y along a declared ordering of its support. It is zero exactly when X and
//! Y are independent and reaches its distribution-dependent maximum exactly
//! when Y is a function of X. Entropy (Rényi, Tsallis and their `α → 1`
//! limit), convex-φ, group-on-group and conditional variants share the same
//! construction. Symmetric baselines (mutual information, Linfoot's
//! coefficient, the Bhattacharya–Hellinger–Matusita distance) are included
//! for comparison.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use depmeter_core::{JointTable, tau_squared};
//!
//! let t = JointTable::from_matrix(&[vec![0.4, 0.1], vec![0.1, 0.4]]).unwrap();
//! let r = tau_squared(&t);
//! assert!((r.value - 0.27).abs() < 1e-15);
//! assert!((r.upper_bound.unwrap() - 0.75).abs() < 1e-15);
//! ```
#![no_std]

extern crate alloc;

pub mod cdf;
pub mod circle;
pub mod conditional;
pub mod error;
pub mod markov;
pub mod measures;
pub mod multitable;
pub mod multivariate;
pub mod permutation;
pub mod random;
pub mod sum;
pub mod support;
pub mod table;

pub use cdf::{conditional_cdf, CdfCells, CondCdf};
pub use conditional::{tau_conditional, tau_conditional_max, tau_conditional_squared, TripleTable};
pub use error::{Error, Result};
pub use markov::{
    check_dpi, compose, joint_from_chain, transition_from_joint, DpiReport, Endpoints, MarkovChain3,
    TransitionMatrix, DPI_TOLERANCE,
};
pub use measures::{
    bhm_distance, limit_measure, limit_upper, linfoot_coefficient, mutual_information, phi_measure,
    renyi_alpha, renyi_upper, tau_max_squared, tau_squared, tsallis_alpha, tsallis_upper, ConvexPhi,
    MeasureId, MeasureReport, MeasureSpec,
};
pub use multitable::{multi_conditional_cdf, MultiTable, DEFAULT_CELL_BUDGET};
pub use multivariate::{
    check_dpi_mv, compose_mv, limit_mv, phi_mv, renyi_mv, tau_max_mv, tau_squared_mv, tsallis_mv,
    MvChain, MvDpiReport, TransitionTensor,
};
pub use permutation::{permutation_pvalue, PermutationTest};
pub use support::{DiscreteSupport, OrderingPolicy};
pub use table::{JointTable, ProbVector, Samples, EPS_NORM};
