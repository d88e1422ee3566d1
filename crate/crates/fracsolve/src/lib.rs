//! Solver library for Cauchy problems of time-fractional pseudo-differential
//! equations on periodic spatial domains:
//!
//! ```text
//! D_*^a u(t,x) = A(D_x) u(t,x) + f(t,x),   d^k u/dt^k (0,x) = phi_k(x)
//! ```
//!
//! with a Caputo time derivative of order `a` (m-1 < a <= m) and an operator
//! `A(D_x)` acting by multiplication with a symbol `A(xi)` on the Fourier
//! side. Homogeneous problems are solved mesh-free through Mittag-Leffler
//! operator functions; inhomogeneous problems through the fractional Duhamel
//! construction, cross-checked by an independent Neumann-series oracle and a
//! variation-of-constants oracle.
//!
//! The crate splits into scalar kernels ([`gamma`], [`mittag_leffler`]),
//! fractional calculus on time grids ([`frac_time`]), the spectral
//! representation of fields and symbols ([`spectral`]), the solver paths
//! ([`duhamel`]), and the CLI plumbing ([`expr`], [`config`], [`csvio`],
//! [`cli`]).

mod dd;

pub mod cli;
pub mod config;
pub mod csvio;
pub mod duhamel;
pub mod expr;
pub mod frac_time;
pub mod gamma;
pub mod mittag_leffler;
pub mod spectral;

pub use gamma::{gamma, rgamma, GammaError};
pub use mittag_leffler::{ml, ml_map, MlError};
