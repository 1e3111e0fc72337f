//! One-dimensional quadrature rules shared by every integral in the crate.
//!
//! Two tables are built per [`QuadratureSpec`]:
//!
//! * a plain rule with `node_count` nodes on `[0, 1]`;
//! * an endpoint-graded composite rule. Panels shrink geometrically (ratio
//!   [`GRADING_RATIO`]) toward the left endpoint, and each carries the base
//!   scheme. It integrates functions such as `w^γ g(w)` with non-integer `γ`
//!   to near machine precision, which the plain rule cannot.
//!
//! The tables are immutable once built, so a [`Quadrature`] can be shared
//! across threads.

use crate::error::{Error, Result};

/// Geometric ratio between successive panels of the graded rule.
pub const GRADING_RATIO: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    GaussLegendre,
    Midpoint,
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gauss_legendre" | "gauss-legendre" | "gl" => Ok(Scheme::GaussLegendre),
            "midpoint" => Ok(Scheme::Midpoint),
            other => Err(Error::Config(format!("unknown quadrature scheme `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    node_count: usize,
    scheme: Scheme,
    abs_tol: f64,
}

impl QuadratureSpec {
    pub const DEFAULT_NODES: usize = 256;
    pub const DEFAULT_ABS_TOL: f64 = 1e-10;

    pub fn new(node_count: usize, scheme: Scheme, abs_tol: f64) -> Result<Self> {
        if node_count < 2 {
            return Err(Error::Config(format!(
                "quadrature node_count = {node_count} must be >= 2"
            )));
        }
        if !(abs_tol > 0.0) || !abs_tol.is_finite() {
            return Err(Error::Config(format!(
                "quadrature abs_tol = {abs_tol} must be positive"
            )));
        }
        Ok(QuadratureSpec {
            node_count,
            scheme,
            abs_tol,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    /// Nodes per panel of the graded rule.
    pub fn panel_nodes(&self) -> usize {
        (self.node_count / 16).max(8)
    }

    /// Number of geometric panels, chosen so the innermost one is narrower
    /// than `abs_tol * 1e-3`.
    pub fn panel_count(&self) -> usize {
        let target = self.abs_tol * 1e-3;
        (target.ln() / GRADING_RATIO.ln()).ceil().max(1.0) as usize
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            node_count: Self::DEFAULT_NODES,
            scheme: Scheme::GaussLegendre,
            abs_tol: Self::DEFAULT_ABS_TOL,
        }
    }
}

/// Nodes and weights on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    pub fn new(scheme: Scheme, n: usize) -> Self {
        match scheme {
            Scheme::GaussLegendre => gauss_legendre_unit(n),
            Scheme::Midpoint => {
                let h = 1.0 / n as f64;
                Rule {
                    nodes: (0..n).map(|i| (i as f64 + 0.5) * h).collect(),
                    weights: vec![h; n],
                }
            }
        }
    }

    /// Composite rule on `[0, 1]` graded toward 0.
    pub fn graded(scheme: Scheme, per_panel: usize, panels: usize) -> Self {
        let base = Rule::new(scheme, per_panel);
        let mut nodes = Vec::with_capacity(per_panel * (panels + 1));
        let mut weights = Vec::with_capacity(per_panel * (panels + 1));
        // Innermost panel [0, q^panels] first, then outward.
        let mut lo = 0.0;
        for level in (0..=panels).rev() {
            let hi = GRADING_RATIO.powi(level as i32);
            let width = hi - lo;
            for (x, w) in base.nodes.iter().zip(&base.weights) {
                nodes.push(lo + width * x);
                weights.push(width * w);
            }
            lo = hi;
        }
        Rule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// ∫_a^b f, mapping the unit rule affinely (node 0 ↦ a).
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let width = b - a;
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(a + width * x);
        }
        acc * width
    }
}

/// Gauss-Legendre nodes and weights mapped to `[0, 1]`.
fn gauss_legendre_unit(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..m {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x is the i-th largest root on [-1, 1]
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        nodes[i] = 0.5 * (1.0 - x);
        weights[n - 1 - i] = 0.5 * w;
        weights[i] = 0.5 * w;
    }
    Rule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A realized [`QuadratureSpec`]: precomputed plain and graded tables.
#[derive(Debug, Clone)]
pub struct Quadrature {
    spec: QuadratureSpec,
    plain: Rule,
    graded: Rule,
}

impl Quadrature {
    pub fn new(spec: QuadratureSpec) -> Self {
        Quadrature {
            plain: Rule::new(spec.scheme, spec.node_count),
            graded: Rule::graded(spec.scheme, spec.panel_nodes(), spec.panel_count()),
            spec,
        }
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    pub fn plain_rule(&self) -> &Rule {
        &self.plain
    }

    pub fn graded_rule(&self) -> &Rule {
        &self.graded
    }

    /// ∫_a^b f with the plain rule; for integrands smooth on the closed interval.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        self.plain.integrate(a, b, f)
    }

    /// ∫_a^b f with panels graded toward `a`, for integrands that are only
    /// Hölder-continuous (or have a power singularity) at `a`.
    pub fn integrate_graded<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        self.graded.integrate(a, b, f)
    }

    /// ∫_0^{b1} ∫_0^{b2} f(x, y) dy dx, tensor product of graded rules.
    pub fn integrate_graded_2d<F: FnMut(f64, f64) -> f64>(
        &self,
        b1: f64,
        b2: f64,
        mut f: F,
    ) -> f64 {
        let rule = &self.graded;
        let mut acc = 0.0;
        for (x, wx) in rule.nodes.iter().zip(&rule.weights) {
            let xx = b1 * x;
            let mut inner = 0.0;
            for (y, wy) in rule.nodes.iter().zip(&rule.weights) {
                inner += wy * f(xx, b2 * y);
            }
            acc += wx * inner;
        }
        acc * b1 * b2
    }
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature::new(QuadratureSpec::default())
    }
}
