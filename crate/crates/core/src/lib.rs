//! Fixed-precision p-adic arithmetic and the two-variable p-adic l_q-function.
//!
//! The crate is organized around five layers:
//!
//! - [`padic`]: elements of Q_p at finite precision with explicit precision
//!   propagation, Teichmüller lifts, the principal-unit projection `⟨a+pt⟩`,
//!   and p-adic binomial series.
//! - [`dirichlet`]: Dirichlet characters with odd squarefree modulus whose
//!   values lie in Z_p, built from prime-modulus cyclic factors.
//! - [`qeuler`]: q-Euler numbers E*_{n,q}, q-Euler polynomials, and the
//!   generalized polynomials attached to a character, over both an exact
//!   rational backend and a p-adic backend.
//! - [`qmeasure`]: finite-level approximations of the fermionic p-adic
//!   q-integral and its functional equations.
//! - [`lfunc`]: series evaluation of l_{p,q}(s,t,χ) with a rigorous
//!   truncation budget, and the interpolation identity at s = -n.
//!
//! The core is `no_std` (with `alloc`); IO, CLI, and file formats live in the
//! companion `padic-lq-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dirichlet;
pub mod lfunc;
pub mod padic;
pub mod qeuler;
pub mod qmeasure;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
