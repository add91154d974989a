//! Symmetry-breaking bifurcations of the capillary-gravity Whitham equation.
//!
//! Periodic travelling waves of `u_t + (M_T u + u^2)_x = 0` are sought in the
//! scaled steady form `J(u; c, kappa, T) = (M_{T,kappa} - c) u + u^2 = 0` on a
//! `2*pi`-periodic domain. Small asymmetric waves can only emanate from double
//! bifurcation points `(c0, kappa0, T)` whose wave-number pair `(k1, k2)`
//! satisfies a symmetry-breaking condition `phi(T; k1, k2) = 0`.
//!
//! The crate is organised bottom-up:
//!
//! - [`symbol`]: the dispersion symbol `m_T`, its turning point and the
//!   double bifurcation points `(c0, kappa0)`.
//! - [`coeff`]: the resolvent multiplier `ell(k)` and the multi-index
//!   Taylor–Fourier recursion, evaluated numerically, at endpoint limits, or
//!   symbolically as integer-weighted monomials.
//! - [`symbreak`]: the symmetry-breaking function `phi`, its limits and roots,
//!   and the classification of wave-number pairs.
//! - [`wave`]: a truncated Fourier solver that builds `u = v + w` by a fixed
//!   point for `w` and a Newton iteration on `(c, kappa, T)`.
//! - [`io`]: run configuration and CSV / JSON / SVG emitters used by the
//!   `cwhitham` binary.
//!
//! The runnable programs under `examples/` walk through each capability.

pub mod coeff;
pub mod error;
pub mod io;
pub mod roots;
pub mod symbol;
pub mod symbreak;
pub mod wave;

pub use error::{Error, Result};
pub use symbol::{BifurcationPoint, SurfaceTension, WaveNumberPair};
