//! Spectral calculus for circulant matrices and for matrices partitioned into
//! circulant blocks, together with the structured nonnegative inverse
//! eigenvalue machinery built on top of it.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function over immutable inputs; IO, file formats and the command-line front
//! end live in the `circblock` companion crate.
//!
//! Module map:
//!
//! | module        | contents                                                        |
//! |---------------|-----------------------------------------------------------------|
//! | [`dft`]       | roots of unity, Fourier matrices, first-row ⇄ eigenvalue maps    |
//! | [`spectra`]   | spectrum lists, conjugation closure, necessary NIEP conditions   |
//! | [`poly`]      | characteristic polynomials, simultaneous root iteration          |
//! | [`circulant`] | circulant matrices and the conjugate-pair Perron bound           |
//! | [`block`]     | `S_k` / `L_k` families, block assembly and spectrum union        |
//! | [`structure`] | block-diagonal / block-circulant / permutative / symmetric tests |
//! | [`guo`]       | minimal Perron root of circulant realizations                    |
//! | [`ematrix`]   | eigenvalue layouts `E`, `Φ`, block realizations and their search |
//! | [`exact`]     | exact arithmetic over cyclotomic fields for rational inputs      |
//!
//! Index conventions: position `k` of a circulant spectrum is always the
//! eigenvalue attached to the harmonic vector `e_k = (1, ω^k, …, ω^{(m-1)k})`.
//! Nothing in the crate reorders spectra implicitly.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod block;
pub mod circulant;
pub mod dft;
pub mod ematrix;
mod error;
pub mod exact;
pub mod guo;
mod math;
pub mod matrix;
pub mod poly;
pub mod spectra;
pub mod structure;

pub use error::{Error, Result};
pub use matrix::CMatrix;
pub use num_complex::Complex64;

/// Scalar type used throughout: an `f64` complex number.
pub type Scalar = Complex64;

/// Default entrywise nonnegativity tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
