//! Euler Gamma function on the positive real axis.
#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

// Lanczos approximation, g = 671/128 in the shifted form, 14 terms.
const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_092;
const LANCZOS_COEF: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_TWO_PI: f64 = 2.506_628_274_631_000_502_4;

/// Largest argument with a finite `f64` result.
const MAX_ARG: f64 = 171.624_376_956_302_7;

/// Γ(x) for `x > 0`, relative error below 1e-13.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("gamma argument", format!("x = {x} must be > 0")));
    }
    if x > MAX_ARG {
        return Ok(f64::INFINITY);
    }
    if x <= 21.0 && x.fract() == 0.0 {
        return Ok(factorial(x as u32 - 1));
    }
    if x < 0.5 {
        // Γ(x) = Γ(x + 1) / x keeps the Lanczos sum away from its pole region.
        return Ok(lanczos(x + 1.0) / x);
    }
    Ok(lanczos(x))
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn lanczos(x: f64) -> f64 {
    let mut ser = LANCZOS_C0;
    let mut y = x;
    for c in LANCZOS_COEF {
        y += 1.0;
        ser += c / y;
    }
    let tmp = x + LANCZOS_G;
    // Split the power so tmp^(x + 1/2) does not overflow before e^{-tmp} scales it.
    let half = tmp.powf(0.5 * (x + 0.5));
    SQRT_TWO_PI * ser / x * half * (half * (-tmp).exp())
}
