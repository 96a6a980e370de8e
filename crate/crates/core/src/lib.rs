//! Exact eigenmode solution of the damped Jaynes-Cummings master equation in
//! the diagonal (photon-number-conserving) sector.
//!
//! The density matrix elements `g_n`, `e_n` and the coherences
//! `<e,n|rho|g,n+1>` are packaged into generating functions in `u = 1 - z`.
//! Their time evolution is a sum of eigenmodes, each a polynomial in `u`
//! proportional to a terminating generalised hypergeometric function. Weights
//! of the eigenmodes are fitted to an initial state through a biorthogonal
//! family of adjoint modes, realised as residues of Laurent products in
//! `x = a/u`.
//!
//! The crate is `no_std` (with `alloc`); the `std` feature only adds
//! `std::error::Error` support.
//!
//! Module map:
//!
//! - [`params`], [`poly`]: model parameters, `PolyU` and `LaurentX`.
//! - [`hyper`]: generalised hypergeometric coefficient streams.
//! - [`modes`]: eigenvalues and eigenmode triples.
//! - [`adjoint`]: adjoint modes, normalisation constants, residue pairings.
//! - [`projection`]: initial states and spectral coefficients.
//! - [`evolve`]: generating functions, density matrix elements, moments.
//! - [`oracle`]: brute-force RK4 on the truncated photon-number ladder.
//! - [`checks`]: the aggregate verification report used by the CLI.
//!
//! ```
//! use jcmodes_core::{evolve, projection, InitialState, ModelParams};
//!
//! let params = ModelParams::new(5.0)?;
//! let decomp = projection::project(&params, &InitialState::fock_ground(6))?;
//! let slice = evolve::state_at(&decomp, 1.0, 20)?;
//! assert!((slice.trace() - 1.0).abs() < 1e-10);
//! # Ok::<(), jcmodes_core::Error>(())
//! ```
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod adjoint;
pub mod checks;
pub mod error;
pub mod evolve;
pub mod hyper;
pub mod modes;
pub mod oracle;
pub mod params;
pub mod poly;
pub mod projection;

pub use num_complex::Complex64;

pub use crate::adjoint::{AdjointConstants, AdjointTriple};
pub use crate::error::{Error, Result};
pub use crate::evolve::{FactorialMoments, GeneratingSet, StateSlice};
pub use crate::hyper::HyperSpec;
pub use crate::modes::{Branch, BranchRoots, ModeLabel, ModeTriple};
pub use crate::params::ModelParams;
pub use crate::poly::{LaurentX, PolyU};
pub use crate::projection::{InitialGenerating, InitialState, SpectralDecomposition};
