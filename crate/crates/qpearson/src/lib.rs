//! Exact calculus for the Askey-Wilson and Hahn divided-difference operators.
//!
//! Everything is computed over an exact coefficient field `K`: plain
//! rationals, or rational functions in a transcendental `t` standing for
//! `q^(1/2)` (Askey-Wilson) or `q` itself (Hahn). There is no floating
//! point anywhere; every check in this crate is an exact identity.
//!
//! The main pieces:
//!
//! - [`scalar`]: the field `K`, contexts fixing `t`/`q`, and the scalar
//!   literal grammar.
//! - [`poly`]: dense polynomials in `x` and the symmetric Laurent
//!   representation `x = (z + 1/z)/2` the operators act through.
//! - [`awops`]: the operators `D_q` and `S_q` on polynomials and the
//!   operational identities relating them.
//! - [`linform`]: linear forms as truncated moment sequences, with the
//!   transposed operators and the `(x-c)^{-1}`/`delta_c` algebra.
//! - [`opseq`]: orthogonal polynomial sequences from three-term
//!   recurrences; moments, norms, basis expansion, recurrence recovery.
//! - [`pearson`]: Pearson equations `D_q(phi u) = S_q(psi u)`, the
//!   regularity criterion, admissibility, and the normal form
//!   `Phi D_q u = Psi S_q u` with its class count.
//! - [`structure`]: banded structure relations `phi D_q P_n = sum a_{n,j} P_j`
//!   and the constructive equivalences between bands and Pearson pairs.
//! - [`hahn`]: the same program for Hahn's operator `D_{q,omega}`,
//!   including the Al-Salam-Carlitz classifier.
//! - [`suites`]: end-to-end verification suites with golden values.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod report;
pub mod scalar;
pub mod poly;
pub mod awops;
pub mod linform;
pub mod opseq;
pub mod pearson;
pub mod structure;
pub mod hahn;
pub mod suites;

pub use error::Error;
pub use poly::Poly;
pub use scalar::{Mode, QContext, Scalar};
