//! Zeta-regularized spectral invariants for sequences of spectral type.
//!
//! The crate models positive real eigenvalue sequences whose associated
//! log-Gamma function admits a power-log asymptotic expansion, and computes
//! from the expansion coefficients the classical zeta invariants: pole
//! locations and residues, values at non-positive integers, zeta(0) and
//! zeta'(0). On top of that sits a decomposition engine for sums of two
//! sequences (double eigenvalue sequences of the form lambda_m + mu_n),
//! producing zeta(0) and zeta'(0) of the sum together with the regularized
//! double product that appears in the derivative. Applications include the
//! Epstein zeta expansion at the origin with the Kronecker limit constant,
//! Dedekind eta and its generalization with the functional equation, and
//! zeta determinants of product manifolds.
//!
//! Every closed-form path is backed by an independent brute-force oracle
//! (direct summation and Mellin subtract-and-continue), see [`oracle`].

pub mod applications;
pub mod error;
pub mod gammaseq;
pub mod invariants;
pub mod oracle;
pub mod parallel;
pub mod quad;
pub mod seqcore;
pub mod specfun;
pub mod sumzeta;

pub use error::{Error, Result};
pub use invariants::{LaurentExpansion, ZetaInvariants};
pub use seqcore::{SectorDescriptor, SequenceDescriptor};
pub use sumzeta::DecompositionPlan;
pub use specfun::SpecialValue;
