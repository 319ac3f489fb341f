//! `F(x) = Im Li₂(i eˣ)`, the special function of the orthogonal circle
//! pattern functional. `F'(x) = arctan eˣ`, `F(−∞) = 0`, `F(0) = G` (Catalan).

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

/// Catalan's constant.
pub const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

const GL_ORDER: usize = 24;

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
fn gauss_legendre() -> &'static [(f64, f64); GL_ORDER] {
    static RULE: OnceLock<[(f64, f64); GL_ORDER]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut rule = [(0.0, 0.0); GL_ORDER];
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            rule[i] = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        rule
    })
}

/// `Σ_{j≥0} (−1)^j e^{(2j+1)x} / (2j+1)²`, for `x ≤ −1`.
fn series(x: f64) -> f64 {
    let q = x.exp();
    let q2 = q * q;
    let mut pow = q;
    let mut sum = 0.0;
    let mut sign = 1.0;
    let mut k = 1.0;
    while pow > 1e-20 * q {
        sum += sign * pow / (k * k);
        pow *= q2;
        sign = -sign;
        k += 2.0;
    }
    sum
}

fn value_at_minus_one() -> f64 {
    static V: OnceLock<f64> = OnceLock::new();
    *V.get_or_init(|| series(-1.0))
}

/// `∫_a^b arctan(eᵗ) dt` by a single 24-point Gauss–Legendre panel.
fn integral_arctan_exp(a: f64, b: f64) -> f64 {
    let (m, h) = (0.5 * (a + b), 0.5 * (b - a));
    let mut s = 0.0;
    for &(x, w) in gauss_legendre() {
        s += w * (m + h * x).exp().atan();
    }
    s * h
}

/// `Im Li₂(i eˣ)`.
pub fn im_li2_i_exp(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= -1.0 {
        series(x)
    } else if x >= 1.0 {
        // F(x) − F(−x) has derivative arctan eˣ + arctan e⁻ˣ = π/2 and vanishes at 0
        series(-x) + FRAC_PI_2 * x
    } else {
        value_at_minus_one() + integral_arctan_exp(-1.0, x)
    }
}
