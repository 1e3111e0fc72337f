//! Caputo fractional derivative of order `s ∈ (0, 1)`.
//!
//! Two independent routes are provided:
//!
//! * [`caputo_direct`] evaluates
//!   `D^s_t u(t) = Γ(1-s)^{-1} ∫_0^t u̇(τ) (t-τ)^{-s} dτ`
//!   after the substitution `w = (t-τ)^{1-s}`, which removes the kernel:
//!   `∫_0^t u̇(τ)(t-τ)^{-s} dτ = (1-s)^{-1} ∫_0^{t^{1-s}} u̇(t - w^{1/(1-s)}) dw`.
//! * [`caputo_ibp`] evaluates the rescaled operator
//!   `∂^s_t u = (2-s)(1-s)Γ(1-s) D^s_t u` in its integrated-by-parts form
//!   `(2-s) t^{1-s} u̇(0) + ∫_0^{t^{2-s}} ü(t - ϑ^β) dϑ`, `β = 1/(2-s)`.

use crate::error::{Error, Result};
use crate::gamma::gamma_fn;
use crate::quadrature::Quadrature;

/// Fractional order `s` with the derived exponents `β = 1/(2-s)` and
/// `α = (1-s)/(2-s) = 1 - β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder {
    s: f64,
    alpha: f64,
    beta: f64,
}

impl FractionalOrder {
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::InvalidOrder(s));
        }
        let beta = 1.0 / (2.0 - s);
        Ok(FractionalOrder {
            s,
            alpha: (1.0 - s) / (2.0 - s),
            beta,
        })
    }

    #[inline]
    pub fn s(&self) -> f64 {
        self.s
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `2 - s`, the exponent that recurs throughout.
    #[inline]
    pub fn two_minus_s(&self) -> f64 {
        2.0 - self.s
    }
}

/// A smooth function of time with analytic first and second derivatives.
pub trait TimeFunction {
    fn value(&self, t: f64) -> f64;
    fn deriv1(&self, t: f64) -> f64;
    fn deriv2(&self, t: f64) -> f64;
}

/// [`TimeFunction`] assembled from three closures.
#[derive(Clone, Copy)]
pub struct AnalyticFn<V, D1, D2> {
    value: V,
    deriv1: D1,
    deriv2: D2,
}

impl<V, D1, D2> AnalyticFn<V, D1, D2>
where
    V: Fn(f64) -> f64,
    D1: Fn(f64) -> f64,
    D2: Fn(f64) -> f64,
{
    pub fn new(value: V, deriv1: D1, deriv2: D2) -> Self {
        AnalyticFn {
            value,
            deriv1,
            deriv2,
        }
    }
}

impl<V, D1, D2> TimeFunction for AnalyticFn<V, D1, D2>
where
    V: Fn(f64) -> f64,
    D1: Fn(f64) -> f64,
    D2: Fn(f64) -> f64,
{
    fn value(&self, t: f64) -> f64 {
        (self.value)(t)
    }

    fn deriv1(&self, t: f64) -> f64 {
        (self.deriv1)(t)
    }

    fn deriv2(&self, t: f64) -> f64 {
        (self.deriv2)(t)
    }
}

/// Checks the supplied derivatives against central differences with step `h`
/// at each sample point.
///
/// Fails on the first point where either derivative deviates by more than
/// `tol * (1 + |derivative|)`.
pub fn check_derivatives<U: TimeFunction + ?Sized>(
    u: &U,
    points: &[f64],
    h: f64,
    tol: f64,
) -> Result<()> {
    for &t in points {
        let (um, u0, up) = (u.value(t - h), u.value(t), u.value(t + h));
        let d1 = (up - um) / (2.0 * h);
        let d2 = (up - 2.0 * u0 + um) / (h * h);
        let (a1, a2) = (u.deriv1(t), u.deriv2(t));
        if (d1 - a1).abs() > tol * (1.0 + a1.abs()) {
            return Err(Error::domain(
                "first derivative",
                format!("at t = {t}: analytic {a1}, finite difference {d1}"),
            ));
        }
        if (d2 - a2).abs() > tol * (1.0 + a2.abs()) {
            return Err(Error::domain(
                "second derivative",
                format!("at t = {t}: analytic {a2}, finite difference {d2}"),
            ));
        }
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain("time", format!("t = {t} must be > 0")));
    }
    Ok(())
}

/// Caputo derivative `D^s_t u(t)` by direct quadrature of the desingularized
/// kernel.
pub fn caputo_direct<U: TimeFunction + ?Sized>(
    u: &U,
    ord: FractionalOrder,
    t: f64,
    q: &Quadrature,
) -> Result<f64> {
    check_time(t)?;
    let one_minus_s = 1.0 - ord.s();
    let exponent = 1.0 / one_minus_s;
    let upper = t.powf(one_minus_s);
    // w = 0 is τ = t, where w^{1/(1-s)} is not smooth.
    let integral = q.integrate_graded(0.0, upper, |w| u.deriv1(t - w.powf(exponent)));
    Ok(integral / (one_minus_s * gamma_fn(one_minus_s)?))
}

/// Rescaled Caputo derivative `∂^s_t u(t)` by the integrated-by-parts form.
pub fn caputo_ibp<U: TimeFunction + ?Sized>(
    u: &U,
    ord: FractionalOrder,
    t: f64,
    q: &Quadrature,
) -> Result<f64> {
    check_time(t)?;
    let two_minus_s = ord.two_minus_s();
    let beta = ord.beta();
    let boundary = two_minus_s * t.powf(1.0 - ord.s()) * u.deriv1(0.0);
    let upper = t.powf(two_minus_s);
    let bulk = q.integrate_graded(0.0, upper, |theta| u.deriv2(t - theta.powf(beta)));
    Ok(boundary + bulk)
}

/// `(2-s)(1-s)Γ(1-s)`, the factor relating [`caputo_ibp`] to [`caputo_direct`].
pub fn scaling_constant(ord: FractionalOrder) -> f64 {
    let s = ord.s();
    // Γ on (0, 1) cannot fail
    (2.0 - s) * (1.0 - s) * gamma_fn(1.0 - s).expect("1 - s lies in (0, 1)")
}
