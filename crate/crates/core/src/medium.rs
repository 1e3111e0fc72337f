//! Geometry of the ramified medium and its delay-error analysis.
//!
//! Branch `S_k` has length `L + λ_{k-1}` where
//! `λ_k = Σ_{j≤k} ℓ_j`, `ℓ_k = L / (k^α b_N)` and `b_N = Σ_{k≤N} k^{-α}`.
//! The normalization makes `λ_N = L`. The designed delays track the power
//! law `L (k/N)^{1-α}` with error `η_{k,N}`, whose supremum `ε_N` vanishes
//! as `N → ∞`.

use crate::error::{Error, Result};
use crate::fractional::FractionalOrder;
use crate::summation::CompensatedSum;

/// Guard against accidental huge allocations.
pub const MAX_BRANCHES: usize = 100_000_000;

/// Relative slack for the sandwich comparisons, which are tight up to
/// rounding in a handful of cases.
const SANDWICH_SLACK: f64 = 8.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumSpec {
    branch_count: usize,
    base_length: f64,
    order: FractionalOrder,
}

impl MediumSpec {
    pub fn new(branch_count: usize, base_length: f64, order: FractionalOrder) -> Result<Self> {
        if branch_count == 0 {
            return Err(Error::Config("branch count N must be >= 1".into()));
        }
        if branch_count > MAX_BRANCHES {
            return Err(Error::Config(format!(
                "branch count N = {branch_count} exceeds the limit {MAX_BRANCHES}"
            )));
        }
        if !(base_length > 0.0) || !base_length.is_finite() {
            return Err(Error::Config(format!(
                "base length L = {base_length} must be positive"
            )));
        }
        Ok(MediumSpec {
            branch_count,
            base_length,
            order,
        })
    }

    pub fn branch_count(&self) -> usize {
        self.branch_count
    }

    pub fn base_length(&self) -> f64 {
        self.base_length
    }

    pub fn order(&self) -> FractionalOrder {
        self.order
    }
}

/// Immutable branch data. Arrays are 0-based: `ell()[k-1]` is `ℓ_k`,
/// `lambda()[k]` is `λ_k` (with `λ_0 = 0`), `branch_length()[k-1]` is `|S_k|`.
#[derive(Debug, Clone)]
pub struct MediumGeometry {
    spec: MediumSpec,
    b_n: f64,
    ell: Vec<f64>,
    lambda: Vec<f64>,
    branch_length: Vec<f64>,
}

impl MediumGeometry {
    pub fn build(spec: &MediumSpec) -> Self {
        let n = spec.branch_count;
        let l = spec.base_length;
        let alpha = spec.order.alpha();

        let powers: Vec<f64> = (1..=n).map(|k| (k as f64).powf(-alpha)).collect();

        // Partial sums S_k with compensation; b_N = S_N.
        let mut partial = Vec::with_capacity(n + 1);
        partial.push(0.0);
        let mut acc = CompensatedSum::default();
        for &p in &powers {
            acc.add(p);
            partial.push(acc.value());
        }
        let b_n = partial[n];

        let ell: Vec<f64> = powers.iter().map(|p| l * p / b_n).collect();
        // λ_k = L S_k / b_N; identical to Σ ℓ_j in exact arithmetic and
        // telescopes to λ_N = L exactly in floating point.
        let lambda: Vec<f64> = partial.iter().map(|s| l * (s / b_n)).collect();
        let branch_length = (0..n).map(|k| l + lambda[k]).collect();

        MediumGeometry {
            spec: *spec,
            b_n,
            ell,
            lambda,
            branch_length,
        }
    }

    pub fn spec(&self) -> &MediumSpec {
        &self.spec
    }

    pub fn branch_count(&self) -> usize {
        self.spec.branch_count
    }

    pub fn base_length(&self) -> f64 {
        self.spec.base_length
    }

    pub fn b_n(&self) -> f64 {
        self.b_n
    }

    pub fn ell(&self) -> &[f64] {
        &self.ell
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn branch_length(&self) -> &[f64] {
        &self.branch_length
    }

    /// `η_{k,N} = L (k/N)^{1-α} - λ_{k-1}` for every branch and its supremum.
    pub fn eta_errors(&self) -> DelayErrorReport {
        let n = self.spec.branch_count;
        let l = self.spec.base_length;
        let expo = 1.0 - self.spec.order.alpha();
        let nf = n as f64;
        let eta: Vec<f64> = (1..=n)
            .map(|k| l * (k as f64 / nf).powf(expo) - self.lambda[k - 1])
            .collect();
        let epsilon_n = eta.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        let upper_bound = if n >= 2 {
            epsilon_upper_bound(n, self.spec.order, l).ok()
        } else {
            None
        };
        DelayErrorReport {
            eta,
            epsilon_n,
            upper_bound,
        }
    }

    /// Per-branch check of
    /// `(k^{1-α}-1)/(N^{1-α}-α) ≤ λ_{k-1}/L ≤ ((k-1)^{1-α}-α)/((N+1)^{1-α}-1)`.
    pub fn sandwich_report(&self) -> SandwichReport {
        let n = self.spec.branch_count;
        let l = self.spec.base_length;
        let alpha = self.spec.order.alpha();
        let e = 1.0 - alpha;
        let nf = n as f64;
        let lower_den = nf.powf(e) - alpha;
        let upper_den = (nf + 1.0).powf(e) - 1.0;

        let mut rows = Vec::with_capacity(n);
        for k in 1..=n {
            let kf = k as f64;
            let ratio = self.lambda[k - 1] / l;
            let lower = (kf.powf(e) - 1.0) / lower_den;
            let upper = ((kf - 1.0).powf(e) - alpha) / upper_den;
            rows.push(SandwichRow {
                k,
                lower,
                ratio,
                upper,
            });
        }
        SandwichReport { rows }
    }

    /// `true` iff every branch satisfies the sandwich bounds.
    ///
    /// For `k = 1` the sum behind `λ_0` is empty, so the bound there is the
    /// exact value 0. The integral comparison behind the closed-form upper
    /// bound needs at least one term and goes negative at `k = 1`.
    pub fn lambda_sandwich_check(&self) -> bool {
        if self.spec.branch_count < 2 {
            return false;
        }
        self.sandwich_report().holds()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichRow {
    pub k: usize,
    pub lower: f64,
    pub ratio: f64,
    pub upper: f64,
}

impl SandwichRow {
    pub fn holds(&self) -> bool {
        let slack = SANDWICH_SLACK * self.ratio.abs().max(1e-300);
        if self.k == 1 {
            return self.ratio == 0.0 && self.lower <= slack;
        }
        self.lower <= self.ratio + slack && self.ratio <= self.upper + slack
    }
}

#[derive(Debug, Clone)]
pub struct SandwichReport {
    pub rows: Vec<SandwichRow>,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(SandwichRow::holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &SandwichRow> {
        self.rows.iter().filter(|r| !r.holds())
    }
}

#[derive(Debug, Clone)]
pub struct DelayErrorReport {
    /// `η_{k,N}` for `k = 1..=N` (index `k-1`).
    pub eta: Vec<f64>,
    pub epsilon_n: f64,
    /// Explicit bound on `ε_N`; undefined for `N = 1`.
    pub upper_bound: Option<f64>,
}

/// Explicit upper bound on `ε_N`:
///
/// `L [3 N^{-(1-α)/2} + |1 - (1 - N^{-(1-α)/2}) / (1 - α N^{-(1-α)})|
///     + |(1 - α N^{-(1-α)}) / (1 - N^{-(1-α)}) - 1|]`.
pub fn epsilon_upper_bound(n: usize, ord: FractionalOrder, base_length: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(
            "branch count",
            format!("N = {n}; the bound needs N >= 2"),
        ));
    }
    let alpha = ord.alpha();
    let e = 1.0 - alpha;
    let nf = n as f64;
    let inv_half = nf.powf(-0.5 * e);
    let inv_full = nf.powf(-e);
    let first = 3.0 * inv_half;
    let second = (1.0 - (1.0 - inv_half) / (1.0 - alpha * inv_full)).abs();
    let third = ((1.0 - alpha * inv_full) / (1.0 - inv_full) - 1.0).abs();
    Ok(base_length * (first + second + third))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(n: usize, l: f64, s: f64) -> MediumGeometry {
        let spec = MediumSpec::new(n, l, FractionalOrder::new(s).unwrap()).unwrap();
        MediumGeometry::build(&spec)
    }

    #[test]
    fn spec_validation() {
        let ord = FractionalOrder::new(0.5).unwrap();
        assert!(MediumSpec::new(0, 1.0, ord).is_err());
        assert!(MediumSpec::new(1, 0.0, ord).is_err());
        assert!(MediumSpec::new(1, -2.0, ord).is_err());
        assert!(MediumSpec::new(MAX_BRANCHES + 1, 1.0, ord).is_err());
    }

    #[test]
    fn single_branch() {
        let g = geom(1, 1.0, 0.5);
        assert_eq!(g.b_n(), 1.0);
        assert_eq!(g.ell(), &[1.0]);
        assert_eq!(g.lambda(), &[0.0, 1.0]);
        assert_eq!(g.branch_length(), &[1.0]);
        let r = g.eta_errors();
        assert_eq!(r.eta, vec![1.0]);
        assert_eq!(r.epsilon_n, 1.0);
        assert!(r.upper_bound.is_none());
    }

    #[test]
    fn two_branches() {
        let g = geom(2, 1.0, 0.5);
        // 1 + 2^{-1/3}
        assert!((g.b_n() - 1.793_700_525_984_099_7).abs() < 1e-15);
        assert!((g.branch_length()[1] - (1.0 + g.ell()[0])).abs() < 1e-15);
        assert!(g.lambda_sandwich_check());
    }

    #[test]
    fn ell_decreasing_and_branch_lengths() {
        let g = geom(1000, 2.5, 0.3);
        assert!(g.ell().windows(2).all(|w| w[0] > w[1]));
        assert_eq!(g.branch_length()[0], 2.5);
        for k in 2..=1000 {
            assert_eq!(g.branch_length()[k - 1], 2.5 + g.lambda()[k - 1]);
        }
        let mut acc = 0.0;
        for k in 1..=1000 {
            acc += g.ell()[k - 1];
            assert!((acc - g.lambda()[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn telescoping_is_exact() {
        for &(n, l, s) in &[(1, 1.0, 0.5), (7, 3.0, 0.1), (1000, 0.2, 0.9), (100_000, 5.0, 0.5)] {
            let g = geom(n, l, s);
            assert!((g.lambda()[n] - l).abs() <= n as f64 * f64::EPSILON * l);
        }
    }

    #[test]
    fn epsilon_decays() {
        let eps: Vec<f64> = [10, 100, 10_000]
            .iter()
            .map(|&n| geom(n, 1.0, 0.5).eta_errors().epsilon_n)
            .collect();
        assert!(eps[1] < eps[0] && eps[2] < eps[1]);
    }

    #[test]
    fn bound_examples() {
        let ord = FractionalOrder::new(0.5).unwrap();
        let b2 = epsilon_upper_bound(2, ord, 1.0).unwrap();
        assert!(b2.is_finite() && b2 > 0.0);
        let b10 = epsilon_upper_bound(10, ord, 1.0).unwrap();
        let b1k = epsilon_upper_bound(1000, ord, 1.0).unwrap();
        let b1m = epsilon_upper_bound(1_000_000, ord, 1.0).unwrap();
        assert!(b1m < b1k && b1k < b10);
        assert!(epsilon_upper_bound(1, ord, 1.0).is_err());
        assert!(epsilon_upper_bound(0, ord, 1.0).is_err());
    }

    #[test]
    fn sandwich_grid() {
        assert!(geom(500, 3.0, 0.25).lambda_sandwich_check());
        assert!(geom(500, 1.0, 0.75).lambda_sandwich_check());
        assert!(!geom(1, 1.0, 0.5).lambda_sandwich_check());
    }

    #[test]
    fn literal_upper_bound_is_negative_at_first_branch() {
        let g = geom(50, 1.0, 0.5);
        let first = g.sandwich_report().rows[0];
        assert!(first.upper < 0.0);
        assert_eq!(first.ratio, 0.0);
        assert_eq!(first.lower, 0.0);
    }
}
