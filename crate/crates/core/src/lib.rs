//! Time-fractional diffusion from the superposition of delayed travelling waves.
//!
//! A ramified medium of `N` branches with power-law lengths delays copies of a
//! travelling wave `f(x, t) = f_o((x - c t) / L)`. Averaged at the end of the
//! medium, the delayed copies converge to
//!
//! ```text
//! u(t) = T^{-(2-s)} ∫_0^{T^{2-s}} f(t - ϑ^{1/(2-s)}) dϑ,     T = L / c,
//! ```
//!
//! and for a slightly perturbed concave parabola `u` satisfies the Caputo
//! equation `D^s_t u = κ c^s L^{2-s} ∂²_x u` at the scale `(L, T)`, up to an
//! `O(μ / T^s)` remainder.
//!
//! Modules:
//! - [`fractional`]: Caputo derivative by two independent quadrature routes.
//! - [`medium`]: branch geometry, delay errors `ε_N` and their explicit bound.
//! - [`wave`]: travelling profiles and the discrete delayed superposition.
//! - [`limit`]: the continuum superposition `u`, `κ`, and the residual `𝓛u`.
//! - [`studies`]: sweeps that emit CSV tables, driven by the `fracwave` CLI.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fractional;
pub mod gamma;
pub mod limit;
pub mod medium;
pub mod quadrature;
pub mod studies;
pub mod wave;

mod summation;

pub use error::{Error, Result};
pub use fractional::{
    caputo_direct, caputo_ibp, scaling_constant, AnalyticFn, FractionalOrder, TimeFunction,
};
pub use gamma::gamma_fn;
pub use limit::{ResidualReport, ScaleParams};
pub use medium::{epsilon_upper_bound, DelayErrorReport, MediumGeometry, MediumSpec};
pub use quadrature::{Quadrature, QuadratureSpec, Scheme};
pub use wave::{Perturbation, TravellingWave, WaveProfile};
