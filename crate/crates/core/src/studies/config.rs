//! Study configuration: a flat TOML file plus command-line overrides.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fractional::FractionalOrder;
use crate::quadrature::{QuadratureSpec, Scheme};
use crate::wave::{Perturbation, WaveProfile};

pub const DEFAULT_S_VALUES: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];
pub const DEFAULT_N_VALUES: [usize; 4] = [10, 100, 1000, 10_000];
pub const DEFAULT_MU_VALUES: [f64; 4] = [0.0, 0.01, 0.02, 0.04];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Study {
    Geometry,
    EpsilonSweep,
    SuperposeConvergence,
    CaputoCheck,
    ResidualSweep,
    VerifyPde,
}

impl Study {
    pub const ALL: [Study; 6] = [
        Study::Geometry,
        Study::EpsilonSweep,
        Study::SuperposeConvergence,
        Study::CaputoCheck,
        Study::ResidualSweep,
        Study::VerifyPde,
    ];

    /// CLI subcommand name.
    pub fn command(&self) -> &'static str {
        match self {
            Study::Geometry => "geometry",
            Study::EpsilonSweep => "epsilon-sweep",
            Study::SuperposeConvergence => "superpose",
            Study::CaputoCheck => "caputo-check",
            Study::ResidualSweep => "residual",
            Study::VerifyPde => "verify-pde",
        }
    }
}

impl fmt::Display for Study {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.command())
    }
}

/// Contents of a configuration file. Every key is optional.
#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub s_values: Option<Vec<f64>>,
    pub n_values: Option<Vec<usize>>,
    pub big_l: Option<f64>,
    pub c: Option<f64>,
    pub a1: Option<f64>,
    pub a2: Option<f64>,
    pub a3: Option<f64>,
    pub mu_values: Option<Vec<f64>>,
    pub quad_nodes: Option<usize>,
    pub quad_scheme: Option<String>,
    pub abs_tol: Option<f64>,
    pub kappa: Option<f64>,
    pub out: Option<PathBuf>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(format!("invalid config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        ConfigFile::parse(&text)
    }

    /// Keys set in `other` replace keys in `self`.
    pub fn merge(self, other: ConfigFile) -> ConfigFile {
        ConfigFile {
            s_values: other.s_values.or(self.s_values),
            n_values: other.n_values.or(self.n_values),
            big_l: other.big_l.or(self.big_l),
            c: other.c.or(self.c),
            a1: other.a1.or(self.a1),
            a2: other.a2.or(self.a2),
            a3: other.a3.or(self.a3),
            mu_values: other.mu_values.or(self.mu_values),
            quad_nodes: other.quad_nodes.or(self.quad_nodes),
            quad_scheme: other.quad_scheme.or(self.quad_scheme),
            abs_tol: other.abs_tol.or(self.abs_tol),
            kappa: other.kappa.or(self.kappa),
            out: other.out.or(self.out),
        }
    }
}

#[derive(Debug, Clone)]
pub struct StudyConfig {
    pub study: Study,
    pub s_values: Vec<f64>,
    pub n_values: Vec<usize>,
    pub big_l: f64,
    pub c: f64,
    pub profile: WaveProfile,
    pub mu_values: Vec<f64>,
    pub quad: QuadratureSpec,
    /// Overrides the formula value of κ in the residual studies.
    pub kappa: Option<f64>,
    /// `None` writes to standard output.
    pub output_path: Option<PathBuf>,
}

impl StudyConfig {
    pub fn with_defaults(study: Study) -> Self {
        StudyConfig::resolve(study, ConfigFile::default()).expect("defaults are valid")
    }

    /// Fills unset keys with defaults and validates the result.
    pub fn resolve(study: Study, file: ConfigFile) -> Result<Self> {
        let s_values = canonical_f64(file.s_values.unwrap_or_else(|| DEFAULT_S_VALUES.to_vec()));
        let mut n_values = file.n_values.unwrap_or_else(|| DEFAULT_N_VALUES.to_vec());
        n_values.sort_unstable();
        n_values.dedup();
        let mu_values =
            canonical_f64(file.mu_values.unwrap_or_else(|| DEFAULT_MU_VALUES.to_vec()));

        if s_values.is_empty() {
            return Err(Error::Config("s_values is empty".into()));
        }
        if n_values.is_empty() {
            return Err(Error::Config("n_values is empty".into()));
        }
        if mu_values.is_empty() {
            return Err(Error::Config("mu_values is empty".into()));
        }
        for &s in &s_values {
            FractionalOrder::new(s).map_err(|e| Error::Config(e.to_string()))?;
        }
        if n_values[0] == 0 {
            return Err(Error::Config("every N must be >= 1".into()));
        }

        let big_l = file.big_l.unwrap_or(1.0);
        let c = file.c.unwrap_or(1.0);
        if !(big_l > 0.0 && big_l.is_finite()) {
            return Err(Error::Config(format!("L = {big_l} must be positive")));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Config(format!("c = {c} must be positive")));
        }

        let profile = WaveProfile::new(
            file.a1.unwrap_or(0.0),
            file.a2.unwrap_or(10.0),
            file.a3.unwrap_or(1.0),
            0.0,
            Perturbation::sin(),
        )?;
        for &mu in &mu_values {
            profile.with_mu(mu)?;
        }

        let scheme = match file.quad_scheme.as_deref() {
            Some(name) => name.parse()?,
            None => Scheme::GaussLegendre,
        };
        let quad = QuadratureSpec::new(
            file.quad_nodes.unwrap_or(QuadratureSpec::DEFAULT_NODES),
            scheme,
            file.abs_tol.unwrap_or(QuadratureSpec::DEFAULT_ABS_TOL),
        )?;

        if let Some(k) = file.kappa {
            if !k.is_finite() {
                return Err(Error::Config(format!("kappa = {k} must be finite")));
            }
        }

        Ok(StudyConfig {
            study,
            s_values,
            n_values,
            big_l,
            c,
            profile,
            mu_values,
            quad,
            kappa: file.kappa,
            output_path: file.out,
        })
    }
}

/// Sorted, deduplicated; NaN is kept so validation can reject it.
fn canonical_f64(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.total_cmp(b));
    v.dedup();
    v
}
