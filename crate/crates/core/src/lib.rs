//! Exact arithmetic for slope families certified by binary quadratic forms.
//!
//! The pipeline: Legendre symbols and factorization ([`arith`]), reduction and
//! enumeration of positive-definite binary quadratic forms ([`forms`]), proper
//! representation enumeration with closed-form counts ([`reps`]), boundary-slope
//! bookkeeping ([`slopes`]), and construction of families {(p_i, q_i)} with equal
//! p_i^2 + 12 q_i^2 together with the invariant sequences n_k, D_k ([`family`]).
//!
//! All arithmetic is exact; D_k values exceed 64-bit range at moderate inputs and
//! are carried as arbitrary-precision integers throughout.

pub mod arith;
pub mod cli;
pub mod error;
pub mod family;
pub mod forms;
pub mod reps;
pub mod slopes;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
