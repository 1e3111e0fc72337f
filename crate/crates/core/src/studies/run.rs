//! Study runners. Each sweeps its grid in parallel and returns the rows in
//! canonical order (grid values sorted ascending, outer loop first).

use rayon::prelude::*;

use super::config::{Study, StudyConfig};
use super::table::{Cell, Table};
use crate::error::{Error, Result};
use crate::fractional::{caputo_direct, caputo_ibp, scaling_constant, AnalyticFn, FractionalOrder};
use crate::gamma::gamma_fn;
use crate::limit::{self, ScaleParams};
use crate::medium::{epsilon_upper_bound, MediumGeometry, MediumSpec};
use crate::quadrature::Quadrature;
use crate::wave::TravellingWave;

/// Times at which the Caputo routes are compared.
pub const CAPUTO_TIMES: [f64; 3] = [0.5, 1.0, 2.0];

/// Neighbourhood of `(L, T)` for the residual sweep, in units of `L` and `T`.
pub const RESIDUAL_OFFSETS: [f64; 3] = [0.9, 1.0, 1.1];

pub fn run_study(cfg: &StudyConfig) -> Result<Table> {
    match cfg.study {
        Study::Geometry => run_geometry(cfg),
        Study::EpsilonSweep => run_epsilon_sweep(cfg),
        Study::SuperposeConvergence => run_superpose_convergence(cfg),
        Study::CaputoCheck => run_caputo_check(cfg),
        Study::ResidualSweep => run_residual_sweep(cfg),
        Study::VerifyPde => run_verify_pde(cfg),
    }
}

fn orders(cfg: &StudyConfig) -> Result<Vec<FractionalOrder>> {
    cfg.s_values.iter().map(|&s| FractionalOrder::new(s)).collect()
}

fn grid<A: Copy + Send + Sync, B: Copy + Send + Sync>(a: &[A], b: &[B]) -> Vec<(A, B)> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect()
}

fn collect_rows(table: &mut Table, rows: Vec<Result<Vec<Vec<Cell>>>>) -> Result<()> {
    for chunk in rows {
        for row in chunk? {
            table.push(row);
        }
    }
    Ok(())
}

pub fn run_geometry(cfg: &StudyConfig) -> Result<Table> {
    let mut table = Table::new([
        "s",
        "alpha",
        "N",
        "b_N",
        "ell_first",
        "ell_last",
        "lambda_N",
        "telescoping_error",
        "sandwich_holds",
    ]);
    let cells = grid(&orders(cfg)?, &cfg.n_values);
    let rows: Vec<_> = cells
        .par_iter()
        .map(|&(ord, n)| {
            let g = MediumGeometry::build(&MediumSpec::new(n, cfg.big_l, ord)?);
            let lambda_n = g.lambda()[n];
            Ok(vec![vec![
                ord.s().into(),
                ord.alpha().into(),
                n.into(),
                g.b_n().into(),
                g.ell()[0].into(),
                g.ell()[n - 1].into(),
                lambda_n.into(),
                (lambda_n - cfg.big_l).abs().into(),
                g.lambda_sandwich_check().into(),
            ]])
        })
        .collect();
    collect_rows(&mut table, rows)?;
    Ok(table)
}

pub fn run_epsilon_sweep(cfg: &StudyConfig) -> Result<Table> {
    if cfg.n_values.iter().any(|&n| n < 2) {
        return Err(Error::Config("epsilon-sweep needs every N >= 2".into()));
    }
    let mut table = Table::new(["s", "alpha", "N", "epsilon_N", "upper_bound", "ratio"]);
    let cells = grid(&orders(cfg)?, &cfg.n_values);
    let rows: Vec<_> = cells
        .par_iter()
        .map(|&(ord, n)| {
            let g = MediumGeometry::build(&MediumSpec::new(n, cfg.big_l, ord)?);
            let eps = g.eta_errors().epsilon_n;
            let bound = epsilon_upper_bound(n, ord, cfg.big_l)?;
            Ok(vec![vec![
                ord.s().into(),
                ord.alpha().into(),
                n.into(),
                eps.into(),
                bound.into(),
                (eps / bound).into(),
            ]])
        })
        .collect();
    collect_rows(&mut table, rows)?;
    Ok(table)
}

pub fn run_superpose_convergence(cfg: &StudyConfig) -> Result<Table> {
    let q = Quadrature::new(cfg.quad);
    let mut table = Table::new([
        "s",
        "mu",
        "N",
        "discrete",
        "continuum",
        "abs_error",
        "epsilon_N",
    ]);
    let cells: Vec<_> = grid(&grid(&orders(cfg)?, &cfg.mu_values), &cfg.n_values);
    let rows: Vec<_> = cells
        .par_iter()
        .map(|&((ord, mu), n)| {
            let profile = cfg.profile.with_mu(mu)?;
            let scales = ScaleParams::new(cfg.big_l, cfg.c, ord)?;
            let wave = TravellingWave::new(profile, cfg.c, cfg.big_l)?;
            let g = MediumGeometry::build(&MediumSpec::new(n, cfg.big_l, ord)?);
            let (x, t) = (scales.length(), scales.time());
            let discrete = wave.discrete_superposition(&g, x, t)?;
            let continuum = limit::continuum_u(&profile, ord, &scales, x, t, &q);
            Ok(vec![vec![
                ord.s().into(),
                mu.into(),
                n.into(),
                discrete.into(),
                continuum.into(),
                (discrete - continuum).abs().into(),
                g.eta_errors().epsilon_n.into(),
            ]])
        })
        .collect();
    collect_rows(&mut table, rows)?;
    Ok(table)
}

/// Test functions for the Caputo comparison: name, `u̇`, `ü`, and the power
/// `p` when `u = t^p`.
type CaputoCase = (&'static str, fn(f64) -> f64, fn(f64) -> f64, Option<i32>);

const CAPUTO_CASES: [CaputoCase; 4] = [
    ("t", |_| 1.0, |_| 0.0, Some(1)),
    ("t^2", |t| 2.0 * t, |_| 2.0, Some(2)),
    ("t^3", |t| 3.0 * t * t, |t| 6.0 * t, Some(3)),
    ("t^2+0.1sin(t)", |t| 2.0 * t + 0.1 * t.cos(), |t| 2.0 - 0.1 * t.sin(), None),
];

/// `Γ(p+1)/Γ(p+1-s) t^{p-s}`, the Caputo derivative of `t^p`.
pub fn monomial_caputo(p: i32, s: f64, t: f64) -> Result<f64> {
    let pf = p as f64;
    Ok(gamma_fn(pf + 1.0)? / gamma_fn(pf + 1.0 - s)? * t.powf(pf - s))
}

pub fn run_caputo_check(cfg: &StudyConfig) -> Result<Table> {
    let q = Quadrature::new(cfg.quad);
    let mut table = Table::new([
        "function",
        "s",
        "t",
        "direct",
        "ibp",
        "scaled_direct",
        "abs_diff",
        "monomial_oracle",
    ]);
    let cases: Vec<usize> = (0..CAPUTO_CASES.len()).collect();
    let cells = grid(&grid(&cases, &orders(cfg)?), &CAPUTO_TIMES);
    let rows: Vec<_> = cells
        .par_iter()
        .map(|&((case, ord), t)| {
            let (name, d1, d2, power) = CAPUTO_CASES[case];
            // value is not used by either route
            let u = AnalyticFn::new(|_| f64::NAN, d1, d2);
            let direct = caputo_direct(&u, ord, t, &q)?;
            let ibp = caputo_ibp(&u, ord, t, &q)?;
            let scaled = scaling_constant(ord) * direct;
            let oracle = match power {
                Some(p) => monomial_caputo(p, ord.s(), t)?,
                None => f64::NAN,
            };
            Ok(vec![vec![
                name.into(),
                ord.s().into(),
                t.into(),
                direct.into(),
                ibp.into(),
                scaled.into(),
                (ibp - scaled).abs().into(),
                oracle.into(),
            ]])
        })
        .collect();
    collect_rows(&mut table, rows)?;
    Ok(table)
}

fn kappa_for(cfg: &StudyConfig, ord: FractionalOrder) -> Result<f64> {
    match cfg.kappa {
        Some(k) => Ok(k),
        None => limit::kappa(ord, cfg.profile.a2, cfg.profile.a3)
            .map_err(|e| Error::Config(e.to_string())),
    }
}

pub fn run_residual_sweep(cfg: &StudyConfig) -> Result<Table> {
    let q = Quadrature::new(cfg.quad);
    let mut table = Table::new(["s", "mu", "kappa", "x", "t", "residual", "scaled_residual"]);
    let cells = grid(&orders(cfg)?, &cfg.mu_values);
    let rows: Vec<_> = cells
        .par_iter()
        .map(|&(ord, mu)| {
            let profile = cfg.profile.with_mu(mu)?;
            let scales = ScaleParams::new(cfg.big_l, cfg.c, ord)?;
            let kap = kappa_for(cfg, ord)?;
            let t_pow_s = scales.time().powf(ord.s());
            let mut out = Vec::new();
            for &fx in &RESIDUAL_OFFSETS {
                for &ft in &RESIDUAL_OFFSETS {
                    let x = fx * scales.length();
                    let t = ft * scales.time();
                    let r = limit::residual_general(&profile, ord, kap, &scales, x, t, &q)?;
                    out.push(vec![
                        ord.s().into(),
                        mu.into(),
                        kap.into(),
                        x.into(),
                        t.into(),
                        r.into(),
                        (t_pow_s * r).into(),
                    ]);
                }
            }
            Ok(out)
        })
        .collect();
    collect_rows(&mut table, rows)?;
    Ok(table)
}

pub fn run_verify_pde(cfg: &StudyConfig) -> Result<Table> {
    let q = Quadrature::new(cfg.quad);
    let mut table = Table::new([
        "s",
        "mu",
        "kappa",
        "total",
        "term_boundary",
        "term_double",
        "term_diffusion",
    ]);
    let cells = grid(&orders(cfg)?, &cfg.mu_values);
    let rows: Vec<_> = cells
        .par_iter()
        .map(|&(ord, mu)| {
            let profile = cfg.profile.with_mu(mu)?;
            let kap = kappa_for(cfg, ord)?;
            let r = limit::scaled_residual_at_lt(&profile, ord, kap, &q);
            Ok(vec![vec![
                ord.s().into(),
                mu.into(),
                kap.into(),
                r.total.into(),
                r.term_boundary.into(),
                r.term_double.into(),
                r.term_diffusion.into(),
            ]])
        })
        .collect();
    collect_rows(&mut table, rows)?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::studies::config::ConfigFile;

    fn cfg(study: Study, toml: &str) -> StudyConfig {
        StudyConfig::resolve(study, ConfigFile::parse(toml).unwrap()).unwrap()
    }

    #[test]
    fn epsilon_sweep_rows() {
        let c = cfg(Study::EpsilonSweep, "s_values = [0.5]\nn_values = [10, 100, 1000]");
        let t = run_study(&c).unwrap();
        assert_eq!(t.len(), 3);
        let eps = t.column_f64("epsilon_N").unwrap();
        assert!(eps.windows(2).all(|w| w[1] < w[0]));
        assert!(t.column_f64("ratio").unwrap().iter().all(|&r| r <= 1.0));
    }

    #[test]
    fn epsilon_sweep_rejects_single_branch() {
        let c = cfg(Study::EpsilonSweep, "n_values = [1, 10]");
        assert!(matches!(run_study(&c), Err(Error::Config(_))));
    }

    #[test]
    fn superpose_single_constant_branch() {
        let c = cfg(
            Study::SuperposeConvergence,
            "s_values = [0.5]\nn_values = [1]\na1 = 2.0\na2 = 0.0\na3 = 0.0\nmu_values = [0.0]",
        );
        let t = run_study(&c).unwrap();
        assert!(t.column_f64("abs_error").unwrap()[0] <= 2.0 * f64::EPSILON * 2.0);
    }

    #[test]
    fn superpose_error_decays() {
        let c = cfg(
            Study::SuperposeConvergence,
            "s_values = [0.5]\nn_values = [100, 1000, 10000]\nmu_values = [0.0]",
        );
        let err = run_study(&c).unwrap().column_f64("abs_error").unwrap();
        assert!(err[1] < err[0] && err[2] < err[1]);
        assert!(err[2] < err[0] / 3.0);
    }

    #[test]
    fn verify_pde_rows() {
        let c = cfg(Study::VerifyPde, "s_values = [0.25, 0.5]");
        let t = run_study(&c).unwrap();
        assert_eq!(t.len(), 8);
        let s = t.column_f64("s").unwrap();
        let mu = t.column_f64("mu").unwrap();
        let total = t.column_f64("total").unwrap();
        let kap = t.column_f64("kappa").unwrap();
        for i in 0..t.len() {
            let ord = FractionalOrder::new(s[i]).unwrap();
            let want = limit::kappa(ord, 10.0, 1.0).unwrap();
            assert!((kap[i] - want).abs() <= 1e-12);
            if mu[i] == 0.0 {
                assert!(total[i].abs() <= 10.0 * 1e-10);
            }
        }
    }

    #[test]
    fn kappa_override() {
        let c = cfg(Study::VerifyPde, "s_values = [0.5]\nmu_values = [0.0]\nkappa = 14.6");
        let t = run_study(&c).unwrap();
        let total = t.column_f64("total").unwrap()[0];
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn caputo_and_residual_tables() {
        let c = cfg(Study::CaputoCheck, "s_values = [0.5]");
        let t = run_study(&c).unwrap();
        assert_eq!(t.len(), 12);
        assert!(t.column_f64("abs_diff").unwrap().iter().all(|&d| d < 1e-8));

        let c = cfg(Study::ResidualSweep, "s_values = [0.5]\nmu_values = [0.0]");
        let t = run_study(&c).unwrap();
        assert_eq!(t.len(), 9);
    }

    #[test]
    fn geometry_table() {
        let c = cfg(Study::Geometry, "s_values = [0.5]\nn_values = [1, 2, 50]");
        let t = run_study(&c).unwrap();
        assert_eq!(t.column_f64("sandwich_holds").unwrap(), vec![0.0, 1.0, 1.0]);
        assert!(t.column_f64("telescoping_error").unwrap().iter().all(|&e| e < 1e-13));
    }
}
