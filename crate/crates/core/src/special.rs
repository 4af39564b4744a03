//! Small numerics toolbox: Lanczos gamma and adaptive Simpson quadrature.

use std::f64::consts::PI;

// Lanczos approximation, g = 7, 9 coefficients. Relative error is well below
// 1e-12 on the positive half-integers this crate evaluates.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Gamma function for positive real arguments (reflection handles x < 0.5).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Adaptive Simpson integration of `f` over `[a, b]` to the given relative
/// tolerance.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    let eps = rel_tol * whole.abs().max(f64::MIN_POSITIVE);
    adaptive(&f, a, b, fa, fm, fb, whole, eps, 50)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        left + right + delta / 15.0
    } else {
        adaptive(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
            + adaptive(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
    }
}

/// Floor of n^(1/d) in exact integer arithmetic.
pub fn integer_root(n: u64, d: u32) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).powf(1.0 / d as f64).round() as u64;
    while r.checked_pow(d).is_none_or(|p| p > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(d).is_some_and(|p| p <= n) {
        r += 1;
    }
    r
}

/// Exact value of floor(2n - 2*sqrt(n)) for integer n, via integer square
/// roots: 2*sqrt(n) = sqrt(4n), and floor(2n - x) = 2n - ceil(x) for x >= 0
/// not an integer; when 4n is a perfect square the value is exact anyway.
pub fn planar_max_contacts(n: u64) -> u64 {
    let s = integer_root(4 * n, 2);
    let ceil = if s * s == 4 * n { s } else { s + 1 };
    2 * n - ceil
}
