//! Invariants checked over randomized or gridded inputs.

use approx::assert_relative_eq;
use proptest::prelude::*;

use fracwave::limit::{
    self, caputo_of_u_crosscheck, dimensionless_transform, kappa, scaled_residual_at_lt,
    ContinuumDerivative, ContinuumInTime, ScaleParams,
};
use fracwave::{
    caputo_direct, caputo_ibp, fractional::check_derivatives, scaling_constant, AnalyticFn,
    FractionalOrder, MediumGeometry, MediumSpec, Perturbation, Quadrature, TravellingWave,
    WaveProfile,
};

fn ord(s: f64) -> FractionalOrder {
    FractionalOrder::new(s).unwrap()
}

fn cubic(c: [f64; 4]) -> impl fracwave::TimeFunction {
    AnalyticFn::new(
        move |t: f64| c[0] + c[1] * t + c[2] * t * t + c[3] * t * t * t,
        move |t: f64| c[1] + 2.0 * c[2] * t + 3.0 * c[3] * t * t,
        move |t: f64| 2.0 * c[2] + 6.0 * c[3] * t,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scaling_equivalence_for_cubics(
        c in prop::array::uniform4(-3.0f64..3.0),
        s in 0.05f64..0.95,
        t in 0.1f64..3.0,
    ) {
        let q = Quadrature::default();
        let u = cubic(c);
        let o = ord(s);
        let ibp = caputo_ibp(&u, o, t, &q).unwrap();
        let direct = caputo_direct(&u, o, t, &q).unwrap();
        prop_assert!((ibp - scaling_constant(o) * direct).abs() <= 1e-8 * (1.0 + ibp.abs()));
    }

    #[test]
    fn caputo_is_linear(
        a in -5.0f64..5.0,
        b in -5.0f64..5.0,
        s in 0.05f64..0.95,
        t in 0.1f64..3.0,
    ) {
        let q = Quadrature::default();
        let o = ord(s);
        let u = AnalyticFn::new(f64::sin, f64::cos, |t: f64| -t.sin());
        let v = cubic([1.0, -2.0, 0.5, 0.25]);
        let w = AnalyticFn::new(
            |t: f64| a * t.sin() + b * v_val(t),
            |t: f64| a * t.cos() + b * (-2.0 + t + 0.75 * t * t),
            |t: f64| -a * t.sin() + b * (1.0 + 1.5 * t),
        );
        let lhs = caputo_direct(&w, o, t, &q).unwrap();
        let rhs = a * caputo_direct(&u, o, t, &q).unwrap() + b * caputo_direct(&v, o, t, &q).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
    }

    #[test]
    fn geometry_is_homogeneous_in_length(
        n in 1usize..400,
        s in 0.05f64..0.95,
        l in 0.01f64..100.0,
    ) {
        let o = ord(s);
        let g1 = MediumGeometry::build(&MediumSpec::new(n, l, o).unwrap());
        let g2 = MediumGeometry::build(&MediumSpec::new(n, 2.0 * l, o).unwrap());
        for k in 0..n {
            prop_assert_eq!(g2.ell()[k], 2.0 * g1.ell()[k]);
        }
        for k in 0..=n {
            prop_assert_eq!(g2.lambda()[k], 2.0 * g1.lambda()[k]);
        }
        let (e1, e2) = (g1.eta_errors(), g2.eta_errors());
        for k in 0..n {
            prop_assert!((e2.eta[k] - 2.0 * e1.eta[k]).abs() <= 4.0 * f64::EPSILON * l);
        }
        prop_assert!((e2.epsilon_n - 2.0 * e1.epsilon_n).abs() <= 4.0 * f64::EPSILON * l);
    }

    #[test]
    fn travelling_wave_translation(
        x in -5.0f64..5.0,
        t in -5.0f64..5.0,
        h in -5.0f64..5.0,
        c in 0.1f64..4.0,
    ) {
        let p = WaveProfile::new(0.2, 3.0, 1.0, 0.1, Perturbation::sin()).unwrap();
        let w = TravellingWave::new(p, c, 1.5).unwrap();
        let a = w.eval(x + c * h, t + h);
        let b = w.eval(x, t);
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()) * (1.0 + (c * h).abs()));
    }

    #[test]
    fn dimensionless_round_trip_within_ulps(
        l in 0.01f64..100.0,
        c in 0.01f64..100.0,
        x in -100.0f64..100.0,
        t in 0.0f64..100.0,
    ) {
        let o = ord(0.5);
        let m = dimensionless_transform(&ScaleParams::new(l, c, o).unwrap(), o);
        let (a, b) = m.forward(x, t);
        let (x2, t2) = m.inverse(a, b);
        prop_assert!((x2 - x).abs() <= 2.0 * f64::EPSILON * x.abs());
        prop_assert!((t2 - t).abs() <= 2.0 * f64::EPSILON * t.abs());
    }
}

fn v_val(t: f64) -> f64 {
    1.0 - 2.0 * t + 0.5 * t * t + 0.25 * t * t * t
}

#[test]
fn dimensionless_round_trip_is_exact_for_binary_scales() {
    let o = ord(0.3);
    let m = dimensionless_transform(&ScaleParams::new(4.0, 0.5, o).unwrap(), o);
    for &(x, t) in &[(0.1, 0.7), (3.3, 1e-3), (-2.5, 17.25)] {
        let (a, b) = m.forward(x, t);
        assert_eq!(m.inverse(a, b), (x, t));
    }
    assert_eq!(m.forward(4.0, 8.0), (1.0, 1.0));
}

#[test]
fn superposition_is_linear_in_profile() {
    let o = ord(0.4);
    let g = MediumGeometry::build(&MediumSpec::new(500, 2.0, o).unwrap());
    let p1 = WaveProfile::new(1.0, 3.0, 0.5, 0.2, Perturbation::sin()).unwrap();
    let p2 = WaveProfile::parabola(-0.5, 1.0, 2.0).unwrap();
    let sum = WaveProfile::new(0.5, 4.0, 2.5, 0.2, Perturbation::sin()).unwrap();
    let at = |p: WaveProfile| {
        TravellingWave::new(p, 1.3, 2.0)
            .unwrap()
            .discrete_superposition(&g, 1.7, 0.9)
            .unwrap()
    };
    assert_relative_eq!(at(sum), at(p1) + at(p2), max_relative = 1e-13);
}

#[test]
fn delays_are_nondecreasing() {
    let g = MediumGeometry::build(&MediumSpec::new(2000, 1.0, ord(0.7)).unwrap());
    assert_eq!(g.lambda()[0], 0.0);
    assert!(g.lambda().windows(2).all(|w| w[1] >= w[0]));
}

/// |discrete - continuum| ≤ K (ε_N/c + 1/N) with K steady across N.
#[test]
fn superposition_converges_with_stable_constant() {
    let q = Quadrature::default();
    for (s, c) in [(0.5, 1.0), (0.25, 2.0), (0.75, 0.5)] {
        let o = ord(s);
        let l = 1.5;
        let p = WaveProfile::new(0.0, 10.0, 1.0, 0.05, Perturbation::sin()).unwrap();
        let sc = ScaleParams::new(l, c, o).unwrap();
        let w = TravellingWave::new(p, c, l).unwrap();
        let cont = limit::continuum_u(&p, o, &sc, l, sc.time(), &q);
        let ks: Vec<f64> = [100usize, 1000, 10_000]
            .iter()
            .map(|&n| {
                let g = MediumGeometry::build(&MediumSpec::new(n, l, o).unwrap());
                let err = (w.discrete_superposition(&g, l, sc.time()).unwrap() - cont).abs();
                let eps = g.eta_errors().epsilon_n;
                err / (eps / c + 1.0 / n as f64)
            })
            .collect();
        let (lo, hi) = ks.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &k| (a.min(k), b.max(k)));
        assert!(hi / lo < 2.0, "s = {s}: K = {ks:?}");
    }
}

#[test]
fn superposition_within_derivative_bound() {
    let q = Quadrature::default();
    let o = ord(0.5);
    let p = WaveProfile::parabola(0.0, 10.0, 1.0).unwrap();
    let sc = ScaleParams::new(1.0, 1.0, o).unwrap();
    let w = TravellingWave::new(p, 1.0, 1.0).unwrap();
    let g = MediumGeometry::build(&MediumSpec::new(1000, 1.0, o).unwrap());
    let err = (w.discrete_superposition(&g, 1.0, 1.0).unwrap()
        - limit::continuum_u(&p, o, &sc, 1.0, 1.0, &q))
    .abs();
    // sup |f_o'| on [0, 1] is a2
    assert!(err <= 10.0 * g.eta_errors().epsilon_n / 1.0, "{err}");
}

#[test]
fn continuum_derivatives_match_finite_differences() {
    let q = Quadrature::default();
    let o = ord(0.6);
    let p = WaveProfile::new(0.5, 4.0, 1.0, 0.1, Perturbation::sin()).unwrap();
    let sc = ScaleParams::new(2.0, 1.5, o).unwrap();
    let u = ContinuumInTime {
        profile: &p,
        order: o,
        scales: &sc,
        x: 1.7,
        quadrature: &q,
    };
    check_derivatives(&u, &[0.3, 1.0, 2.2], 1e-4, 1e-6).unwrap();

    let x0 = 1.1;
    let ux = |x: f64| limit::continuum_u(&p, o, &sc, x, 0.8, &q);
    let h = 1e-4;
    let dx = (ux(x0 + h) - ux(x0 - h)) / (2.0 * h);
    let dxx = (ux(x0 + h) - 2.0 * ux(x0) + ux(x0 - h)) / (h * h);
    let an = |which| limit::continuum_u_derivative(&p, o, &sc, x0, 0.8, which, &q);
    assert!((dx - an(ContinuumDerivative::Dx)).abs() < 1e-7);
    assert!((dxx - an(ContinuumDerivative::Dxx)).abs() < 1e-5);
}

#[test]
fn caputo_crosscheck_routes_agree() {
    let q = Quadrature::default();
    let o = ord(0.5);
    let sc = ScaleParams::new(1.0, 1.0, o).unwrap();
    let lin = WaveProfile::parabola(0.0, 1.0, 0.0).unwrap();
    let r = caputo_of_u_crosscheck(&lin, o, &sc, 1.0, &q).unwrap();
    assert!(r.abs_diff <= 1e-8, "{r:?}");
    // u(t) = ∫_0^1 ((1 - t) + ϑ^β) dϑ is linear in t with u̇ = -1, so ∂^s_t u(1) = -(2-s).
    assert!((r.via_ibp + 1.5).abs() < 1e-10, "{r:?}");

    for s in [0.25, 0.5, 0.75] {
        let o = ord(s);
        let p = WaveProfile::new(0.0, 10.0, 1.0, 0.05, Perturbation::sin()).unwrap();
        for (l, c) in [(1.0, 1.0), (2.0, 0.5)] {
            let sc = ScaleParams::new(l, c, o).unwrap();
            let r = caputo_of_u_crosscheck(&p, o, &sc, l, &q).unwrap();
            assert!(r.abs_diff <= 1e-6, "s = {s}: {r:?}");
        }
    }
}

#[test]
fn caputo_of_u_matches_direct_route() {
    let q = Quadrature::default();
    let o = ord(0.35);
    let p = WaveProfile::new(0.0, 6.0, 1.0, 0.05, Perturbation::sin()).unwrap();
    let sc = ScaleParams::new(1.0, 1.0, o).unwrap();
    let u = ContinuumInTime {
        profile: &p,
        order: o,
        scales: &sc,
        x: 1.0,
        quadrature: &q,
    };
    let r = caputo_of_u_crosscheck(&p, o, &sc, 1.0, &q).unwrap();
    let direct = caputo_direct(&u, o, sc.time(), &q).unwrap();
    assert!((r.assembled - scaling_constant(o) * direct).abs() < 1e-8);
}

#[test]
fn residual_is_affine_in_kappa() {
    let q = Quadrature::default();
    for s in [0.2, 0.6] {
        let o = ord(s);
        let p = WaveProfile::parabola(0.0, 5.0, 0.5).unwrap();
        let totals: Vec<f64> = [0.0, 1.0, 2.0, 5.0]
            .iter()
            .map(|&k| scaled_residual_at_lt(&p, o, k, &q).total)
            .collect();
        for (k, t) in [0.0, 1.0, 2.0, 5.0].iter().zip(&totals) {
            assert!((t - totals[0] - k * 0.5).abs() < 1e-12);
        }
    }
}

#[test]
fn mu_remainder_ratio_converges() {
    let q = Quadrature::default();
    let o = ord(0.5);
    let k = kappa(o, 10.0, 1.0).unwrap();
    let base = WaveProfile::new(0.0, 10.0, 1.0, 0.0, Perturbation::sin()).unwrap();
    let ratios: Vec<f64> = (1..=8)
        .map(|i| {
            let mu = 0.5f64.powi(i);
            scaled_residual_at_lt(&base.with_mu(mu).unwrap(), o, k, &q).total / mu
        })
        .collect();
    assert!(ratios.iter().all(|r| r.is_finite() && r.abs() < 100.0));
    for w in ratios.windows(2) {
        assert!((w[1] - w[0]).abs() < 1e-10, "{ratios:?}");
    }
}

#[test]
fn residual_adimensional_under_joint_scaling() {
    let q = Quadrature::default();
    let o = ord(0.45);
    let p = WaveProfile::new(0.0, 5.0, 1.0, 0.02, Perturbation::sin()).unwrap();
    let k = kappa(o, 5.0, 1.0).unwrap();
    let reference = scaled_residual_at_lt(&p, o, k, &q).total;
    for sigma in [0.5, 2.0, 10.0] {
        let sc = ScaleParams::new(3.0 * sigma, 1.2 * sigma, o).unwrap();
        let r = limit::residual_general(&p, o, k, &sc, sc.length(), sc.time(), &q).unwrap();
        assert!((sc.time().powf(0.45) * r - reference).abs() < 1e-10);
    }
}
