//! Travelling profiles and their delayed superposition over the medium.

use log::warn;

use crate::error::{Error, Result};
use crate::medium::MediumGeometry;
use crate::summation::pairwise_sum;

/// Smooth bounded perturbation `φ` with analytic derivatives.
#[derive(Clone, Copy)]
pub struct Perturbation {
    name: &'static str,
    value: fn(f64) -> f64,
    deriv1: fn(f64) -> f64,
    deriv2: fn(f64) -> f64,
}

impl Perturbation {
    pub fn new(
        name: &'static str,
        value: fn(f64) -> f64,
        deriv1: fn(f64) -> f64,
        deriv2: fn(f64) -> f64,
    ) -> Self {
        Perturbation {
            name,
            value,
            deriv1,
            deriv2,
        }
    }

    /// `φ(r) = sin r`, the default.
    pub fn sin() -> Self {
        Perturbation::new("sin", f64::sin, f64::cos, |r| -r.sin())
    }

    pub fn zero() -> Self {
        Perturbation::new("zero", |_| 0.0, |_| 0.0, |_| 0.0)
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    #[inline]
    pub fn value(&self, r: f64) -> f64 {
        (self.value)(r)
    }

    #[inline]
    pub fn deriv1(&self, r: f64) -> f64 {
        (self.deriv1)(r)
    }

    #[inline]
    pub fn deriv2(&self, r: f64) -> f64 {
        (self.deriv2)(r)
    }
}

impl Default for Perturbation {
    fn default() -> Self {
        Perturbation::sin()
    }
}

impl std::fmt::Debug for Perturbation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("Perturbation").field(&self.name).finish()
    }
}

/// Where a profile sits relative to the concave, weakly curved regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `a2 > 0`, `a3 > 0` and `a2 / a3 >= 2`.
    Concave,
    /// `0 < a3 < a2` but `a2 / a3 < 2`.
    SmallMargin,
    /// Outside the regime (`a2 <= 0`, `a3 <= 0` or `a3 >= a2`).
    Outside,
}

/// Perturbed parabola `f_o(r) = a1 + a2 r - (a3/2) r² + μ φ(r)`.
#[derive(Debug, Clone, Copy)]
pub struct WaveProfile {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub mu: f64,
    pub phi: Perturbation,
}

impl WaveProfile {
    pub fn new(a1: f64, a2: f64, a3: f64, mu: f64, phi: Perturbation) -> Result<Self> {
        for (name, v) in [("a1", a1), ("a2", a2), ("a3", a3), ("mu", mu)] {
            if !v.is_finite() {
                return Err(Error::Config(format!("profile coefficient {name} = {v}")));
            }
        }
        if !(0.0..1.0).contains(&mu) {
            return Err(Error::Config(format!("mu = {mu} must lie in [0, 1)")));
        }
        Ok(WaveProfile {
            a1,
            a2,
            a3,
            mu,
            phi,
        })
    }

    /// Unperturbed parabola (`μ = 0`).
    pub fn parabola(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        WaveProfile::new(a1, a2, a3, 0.0, Perturbation::zero())
    }

    pub fn with_mu(self, mu: f64) -> Result<Self> {
        WaveProfile::new(self.a1, self.a2, self.a3, mu, self.phi)
    }

    pub fn regime(&self) -> Regime {
        if !(self.a2 > 0.0 && self.a3 > 0.0 && self.a3 < self.a2) {
            Regime::Outside
        } else if self.a2 / self.a3 < 2.0 {
            Regime::SmallMargin
        } else {
            Regime::Concave
        }
    }

    /// Logs a warning when the profile is not a weakly curved concave parabola.
    pub fn warn_if_outside_regime(&self) -> Regime {
        let regime = self.regime();
        match regime {
            Regime::Concave => {}
            Regime::SmallMargin => warn!(
                "curvature a3 = {} is not small against slope a2 = {} (a2/a3 < 2)",
                self.a3, self.a2
            ),
            Regime::Outside => warn!(
                "profile (a2 = {}, a3 = {}) is outside the concave regime 0 < a3 < a2",
                self.a2, self.a3
            ),
        }
        regime
    }

    #[inline]
    pub fn value(&self, r: f64) -> f64 {
        self.a1 + self.a2 * r - 0.5 * self.a3 * r * r + self.mu * self.phi.value(r)
    }

    #[inline]
    pub fn deriv1(&self, r: f64) -> f64 {
        self.a2 - self.a3 * r + self.mu * self.phi.deriv1(r)
    }

    #[inline]
    pub fn deriv2(&self, r: f64) -> f64 {
        -self.a3 + self.mu * self.phi.deriv2(r)
    }

    /// `f_o`, `f_o'` or `f_o''` at `r` for `order` 0, 1, 2.
    pub fn eval(&self, r: f64, order: u8) -> Result<f64> {
        match order {
            0 => Ok(self.value(r)),
            1 => Ok(self.deriv1(r)),
            2 => Ok(self.deriv2(r)),
            _ => Err(Error::domain("derivative order", format!("{order} not in {{0, 1, 2}}"))),
        }
    }
}

/// Free-function form of [`WaveProfile::eval`].
pub fn profile_eval(p: &WaveProfile, r: f64, order: u8) -> Result<f64> {
    p.eval(r, order)
}

/// `f(x, t) = f_o((x - c t) / L)`.
#[derive(Debug, Clone, Copy)]
pub struct TravellingWave {
    profile: WaveProfile,
    speed: f64,
    length: f64,
}

impl TravellingWave {
    pub fn new(profile: WaveProfile, speed: f64, length: f64) -> Result<Self> {
        if !(speed > 0.0) || !speed.is_finite() {
            return Err(Error::Config(format!("speed c = {speed} must be positive")));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::Config(format!("length L = {length} must be positive")));
        }
        Ok(TravellingWave {
            profile,
            speed,
            length,
        })
    }

    pub fn profile(&self) -> &WaveProfile {
        &self.profile
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    #[inline]
    pub fn phase(&self, x: f64, t: f64) -> f64 {
        (x - self.speed * t) / self.length
    }

    #[inline]
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        self.profile.value(self.phase(x, t))
    }

    /// Central-difference estimate of `∂²_t f - c² ∂²_x f` with step `h`.
    pub fn wave_equation_residual(&self, x: f64, t: f64, h: f64) -> Result<f64> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::domain("step", format!("h = {h} must be > 0")));
        }
        let f0 = self.eval(x, t);
        let ftt = (self.eval(x, t + h) - 2.0 * f0 + self.eval(x, t - h)) / (h * h);
        let fxx = (self.eval(x + h, t) - 2.0 * f0 + self.eval(x - h, t)) / (h * h);
        Ok(ftt - self.speed * self.speed * fxx)
    }

    /// `(1/N) Σ_{k=1..N} f(x, t - λ_{k-1}/c)`, the equal-weight average of the
    /// copies delayed by the branches of `geom`.
    pub fn discrete_superposition(&self, geom: &MediumGeometry, x: f64, t: f64) -> Result<f64> {
        let gl = geom.base_length();
        if (gl - self.length).abs() > 1e-12 * self.length.max(gl) {
            return Err(Error::Config(format!(
                "medium length L = {gl} does not match wave length L = {}",
                self.length
            )));
        }
        let n = geom.branch_count();
        let lambda = geom.lambda();
        let c = self.speed;
        let sum = pairwise_sum(0, n, &|k| self.eval(x, t - lambda[k] / c));
        Ok(sum / n as f64)
    }
}
