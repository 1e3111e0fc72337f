//! Continuum limit of the delayed superposition and the fractional residual.
//!
//! For large `N` the averaged signal at the end of the medium is
//!
//! ```text
//! u(x, t) = T^{-(2-s)} ∫_0^{T^{2-s}} f_o((x - c t + c ϑ^β) / L) dϑ,   β = 1/(2-s),
//! ```
//!
//! and the residual of `D^s_t u = κ c^s L^{2-s} ∂²_x u`, written with the
//! rescaled derivative `∂^s_t`, is
//! `𝓛u = ∂^s_t u - κ c^s L^{2-s} ∂²_x u`. At `(L, T)` the quantity `T^s 𝓛u`
//! no longer depends on `L`, `c` or `T`. For the unperturbed parabola it
//! vanishes exactly when `κ` is given by [`kappa`].

use log::warn;

use crate::error::{Error, Result};
use crate::fractional::{caputo_ibp, FractionalOrder, TimeFunction};
use crate::quadrature::Quadrature;
use crate::wave::WaveProfile;

/// Characteristic scales `T = L / c` and `δ = T^{-s}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleParams {
    length: f64,
    speed: f64,
    time: f64,
    delta: f64,
}

impl ScaleParams {
    pub fn new(length: f64, speed: f64, ord: FractionalOrder) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::domain("length", format!("L = {length} must be > 0")));
        }
        if !(speed > 0.0) || !speed.is_finite() {
            return Err(Error::domain("speed", format!("c = {speed} must be > 0")));
        }
        let time = length / speed;
        if !(time > 0.0) || !time.is_finite() {
            return Err(Error::domain("characteristic time", format!("T = {time}")));
        }
        Ok(ScaleParams {
            length,
            speed,
            time,
            delta: time.powf(-ord.s()),
        })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    /// `T = L / c`.
    pub fn time(&self) -> f64 {
        self.time
    }

    /// `δ = T^{-s}`.
    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Which function of the continuum superposition to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContinuumDerivative {
    /// `u`
    Value,
    /// `∂_t u`, prefactor `-c/L` on `f_o'`
    Dt,
    /// `∂²_t u`, prefactor `c²/L²` on `f_o''`
    Dtt,
    /// `∂_x u`, prefactor `1/L` on `f_o'`
    Dx,
    /// `∂²_x u`, prefactor `1/L²` on `f_o''`
    Dxx,
}

/// `u(x, t)` or one of its derivatives, by graded quadrature over
/// `ϑ ∈ [0, T^{2-s}]`.
pub fn continuum_u_derivative(
    p: &WaveProfile,
    ord: FractionalOrder,
    scales: &ScaleParams,
    x: f64,
    t: f64,
    which: ContinuumDerivative,
    q: &Quadrature,
) -> f64 {
    let (l, c, big_t) = (scales.length, scales.speed, scales.time);
    let beta = ord.beta();
    let span = big_t.powf(ord.two_minus_s());
    let shift = x - c * t;
    let arg = |theta: f64| (shift + c * theta.powf(beta)) / l;
    let (prefactor, integral) = match which {
        ContinuumDerivative::Value => (1.0, q.integrate_graded(0.0, span, |th| p.value(arg(th)))),
        ContinuumDerivative::Dt => (-c / l, q.integrate_graded(0.0, span, |th| p.deriv1(arg(th)))),
        ContinuumDerivative::Dx => (1.0 / l, q.integrate_graded(0.0, span, |th| p.deriv1(arg(th)))),
        ContinuumDerivative::Dtt => (
            c * c / (l * l),
            q.integrate_graded(0.0, span, |th| p.deriv2(arg(th))),
        ),
        ContinuumDerivative::Dxx => (
            1.0 / (l * l),
            q.integrate_graded(0.0, span, |th| p.deriv2(arg(th))),
        ),
    };
    prefactor * integral / span
}

/// The continuum superposition `u(x, t)`.
pub fn continuum_u(
    p: &WaveProfile,
    ord: FractionalOrder,
    scales: &ScaleParams,
    x: f64,
    t: f64,
    q: &Quadrature,
) -> f64 {
    continuum_u_derivative(p, ord, scales, x, t, ContinuumDerivative::Value, q)
}

/// `κ = (2-s)(a2/a3 - 1) - (2-s)²/(3-s) + 1`, the diffusion coefficient that
/// cancels the leading residual for the parabola with slope `a2` and
/// curvature `a3`.
pub fn kappa(ord: FractionalOrder, a2: f64, a3: f64) -> Result<f64> {
    if !(a3 > 0.0) || !a3.is_finite() {
        return Err(Error::domain("curvature", format!("a3 = {a3} must be > 0")));
    }
    let tms = ord.two_minus_s();
    let k = tms * (a2 / a3 - 1.0) - tms * tms / (3.0 - ord.s()) + 1.0;
    if k <= 0.0 {
        warn!("kappa = {k} is not positive (a2 = {a2}, a3 = {a3}, s = {})", ord.s());
    }
    Ok(k)
}

/// The three dimensionless contributions to `T^s 𝓛u(L, T)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// `-(2-s) ∫_0^1 f_o'(1 + ϑ^β) dϑ`
    pub term_boundary: f64,
    /// `∫_0^1 ∫_0^1 f_o''(ϑ^β + τ^β) dϑ dτ`
    pub term_double: f64,
    /// `-κ ∫_0^1 f_o''(ϑ^β) dϑ`
    pub term_diffusion: f64,
    pub total: f64,
    pub kappa_used: f64,
    pub mu: f64,
}

/// `T^s 𝓛u(L, T)` as the sum of three dimensionless integrals.
pub fn scaled_residual_at_lt(
    p: &WaveProfile,
    ord: FractionalOrder,
    kap: f64,
    q: &Quadrature,
) -> ResidualReport {
    let beta = ord.beta();
    let term_boundary =
        -ord.two_minus_s() * q.integrate_graded(0.0, 1.0, |th| p.deriv1(1.0 + th.powf(beta)));
    let term_double =
        q.integrate_graded_2d(1.0, 1.0, |tau, th| p.deriv2(th.powf(beta) + tau.powf(beta)));
    let term_diffusion = -kap * q.integrate_graded(0.0, 1.0, |th| p.deriv2(th.powf(beta)));
    ResidualReport {
        term_boundary,
        term_double,
        term_diffusion,
        total: term_boundary + term_double + term_diffusion,
        kappa_used: kap,
        mu: p.mu,
    }
}

/// `𝓛u(x, t)` in physical units.
pub fn residual_general(
    p: &WaveProfile,
    ord: FractionalOrder,
    kap: f64,
    scales: &ScaleParams,
    x: f64,
    t: f64,
    q: &Quadrature,
) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain("time", format!("t = {t} must be > 0")));
    }
    let s = ord.s();
    let beta = ord.beta();
    let big_t = scales.time;
    let xs = x / scales.length;
    let ts = t / big_t;
    let t_pow_s = big_t.powf(s);

    let boundary = -ord.two_minus_s() * t.powf(1.0 - s) / big_t
        * q.integrate_graded(0.0, 1.0, |th| p.deriv1(xs + th.powf(beta)));
    let tau_max = ts.powf(ord.two_minus_s());
    let double = q.integrate_graded_2d(tau_max, 1.0, |tau, th| {
        p.deriv2(xs - ts + th.powf(beta) + tau.powf(beta))
    }) / t_pow_s;
    let diffusion =
        -kap / t_pow_s * q.integrate_graded(0.0, 1.0, |th| p.deriv2(xs - ts + th.powf(beta)));
    Ok(boundary + double + diffusion)
}

/// `∂^s_t u(x, T)` from two routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaputoCrossCheck {
    /// `(2-s) T^{1-s} u̇(0) + ∫_0^{T^{2-s}} ü(T - ϑ^β) dϑ` with `u̇(0)` and the
    /// `ü` double integral written out in closed integral form.
    pub assembled: f64,
    /// [`caputo_ibp`] applied to `t ↦ u(x, t)` with propagated derivatives.
    pub via_ibp: f64,
    pub abs_diff: f64,
}

/// `t ↦ u(x, t)` as a [`TimeFunction`].
pub struct ContinuumInTime<'a> {
    pub profile: &'a WaveProfile,
    pub order: FractionalOrder,
    pub scales: &'a ScaleParams,
    pub x: f64,
    pub quadrature: &'a Quadrature,
}

impl ContinuumInTime<'_> {
    fn eval(&self, t: f64, which: ContinuumDerivative) -> f64 {
        continuum_u_derivative(
            self.profile,
            self.order,
            self.scales,
            self.x,
            t,
            which,
            self.quadrature,
        )
    }
}

impl TimeFunction for ContinuumInTime<'_> {
    fn value(&self, t: f64) -> f64 {
        self.eval(t, ContinuumDerivative::Value)
    }

    fn deriv1(&self, t: f64) -> f64 {
        self.eval(t, ContinuumDerivative::Dt)
    }

    fn deriv2(&self, t: f64) -> f64 {
        self.eval(t, ContinuumDerivative::Dtt)
    }
}

/// `u̇(0) = -c/(L T^{2-s}) ∫_0^{T^{2-s}} f_o'((x + c ϑ^β)/L) dϑ`.
pub fn u_dot_at_zero(
    p: &WaveProfile,
    ord: FractionalOrder,
    scales: &ScaleParams,
    x: f64,
    q: &Quadrature,
) -> f64 {
    let (l, c) = (scales.length, scales.speed);
    let span = scales.time.powf(ord.two_minus_s());
    let beta = ord.beta();
    -c / (l * span) * q.integrate_graded(0.0, span, |th| p.deriv1((x + c * th.powf(beta)) / l))
}

pub fn caputo_of_u_crosscheck(
    p: &WaveProfile,
    ord: FractionalOrder,
    scales: &ScaleParams,
    x: f64,
    q: &Quadrature,
) -> Result<CaputoCrossCheck> {
    let big_t = scales.time;
    let beta = ord.beta();
    let xs = x / scales.length;

    let boundary = ord.two_minus_s() * big_t.powf(1.0 - ord.s()) * u_dot_at_zero(p, ord, scales, x, q);
    let double = q.integrate_graded_2d(1.0, 1.0, |tau, th| {
        p.deriv2(xs - 1.0 + th.powf(beta) + tau.powf(beta))
    }) / big_t.powf(ord.s());
    let assembled = boundary + double;

    let u = ContinuumInTime {
        profile: p,
        order: ord,
        scales,
        x,
        quadrature: q,
    };
    let via_ibp = caputo_ibp(&u, ord, big_t, q)?;
    Ok(CaputoCrossCheck {
        assembled,
        via_ibp,
        abs_diff: (assembled - via_ibp).abs(),
    })
}

/// `x̃ = x / L`, `t̃ = t / T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessMap {
    length: f64,
    time: f64,
    s: f64,
}

pub fn dimensionless_transform(scales: &ScaleParams, ord: FractionalOrder) -> DimensionlessMap {
    DimensionlessMap {
        length: scales.length,
        time: scales.time,
        s: ord.s(),
    }
}

impl DimensionlessMap {
    pub fn forward(&self, x: f64, t: f64) -> (f64, f64) {
        (x / self.length, t / self.time)
    }

    pub fn inverse(&self, xt: f64, tt: f64) -> (f64, f64) {
        (xt * self.length, tt * self.time)
    }

    /// Converts a dimensionless residual back to `𝓛u` (multiplies by `T^{-s}`).
    pub fn to_physical_residual(&self, dimensionless: f64) -> f64 {
        dimensionless * self.time.powf(-self.s)
    }
}

/// Residual of `D^s_{t̃} ũ = κ ∂²_{x̃} ũ` (rescaled derivative) at `(x̃, t̃)`.
/// Equals `T^s 𝓛u(L x̃, T t̃)` for every choice of `L` and `c`.
pub fn dimensionless_residual(
    p: &WaveProfile,
    ord: FractionalOrder,
    kap: f64,
    xt: f64,
    tt: f64,
    q: &Quadrature,
) -> Result<f64> {
    if !(tt > 0.0) || !tt.is_finite() {
        return Err(Error::domain("time", format!("t̃ = {tt} must be > 0")));
    }
    let beta = ord.beta();
    let tms = ord.two_minus_s();
    let boundary = -tms
        * tt.powf(1.0 - ord.s())
        * q.integrate_graded(0.0, 1.0, |th| p.deriv1(xt + th.powf(beta)));
    let double = q.integrate_graded_2d(tt.powf(tms), 1.0, |tau, th| {
        p.deriv2(xt - tt + th.powf(beta) + tau.powf(beta))
    });
    let diffusion = -kap * q.integrate_graded(0.0, 1.0, |th| p.deriv2(xt - tt + th.powf(beta)));
    Ok(boundary + double + diffusion)
}

/// `∫_0^1 ϑ^{1/(2-s)} dϑ`; the closed form is `(2-s)/(3-s)`.
pub fn power_integral(ord: FractionalOrder, q: &Quadrature) -> f64 {
    let beta = ord.beta();
    q.integrate_graded(0.0, 1.0, |th| th.powf(beta))
}
