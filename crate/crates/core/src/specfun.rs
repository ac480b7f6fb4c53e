//! Self-contained real-argument special functions: Euler Gamma and its
//! logarithmic derivatives, the Riemann zeta function and its first
//! derivative, and the constant `k(l)` entering the Laurent data of the
//! log-ladder kernel functions.
//!
//! Everything is plain `f64` with certified absolute error bounds of at
//! most 1e-13 on `[-30, 30]` (at least 1e-3 away from poles), which is all
//! the coefficient calculus requires.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Bernoulli numbers B_2, B_4, ..., B_30.
pub(crate) const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// A function value together with a conservative absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialValue {
    pub value: f64,
    pub abs_error_bound: f64,
}

impl SpecialValue {
    fn new(value: f64, abs_error_bound: f64) -> Self {
        SpecialValue {
            value,
            abs_error_bound,
        }
    }
}

/// Members of the Gamma family selectable through [`gamma_family`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaKind {
    Gamma,
    LogGamma,
    Digamma,
    Trigamma,
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && (x - x.round()).abs() < 1e-12
}

/// Natural log of Gamma for strictly positive argument (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    // Coefficients from the GNU Scientific Library's g=7, n=9 Lanczos fit.
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
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    if x < 0.5 {
        // log reflection keeps accuracy near 0
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + 7.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Euler Gamma for any real non-pole argument.
pub fn gamma(x: f64) -> f64 {
    if x > 0.0 {
        ln_gamma(x).exp()
    } else {
        assert!(
            !is_nonpositive_integer(x),
            "gamma pole at non-positive integer {x}"
        );
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        PI / ((PI * x).sin() * gamma(1.0 - x))
    }
}

/// Reciprocal Gamma, finite everywhere (zero at the poles of Gamma).
pub fn recip_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

/// Digamma function psi(x) for non-pole real x.
pub fn digamma(x: f64) -> f64 {
    assert!(!is_nonpositive_integer(x), "digamma pole at {x}");
    if x < 0.0 {
        return digamma(1.0 - x) - PI / (PI * x).tan();
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 8.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut series = 0.0;
    let mut p = inv2;
    for (k, b) in BERNOULLI_EVEN.iter().take(7).enumerate() {
        series += b / (2.0 * (k as f64 + 1.0)) * p;
        p *= inv2;
    }
    acc + x.ln() - 0.5 / x - series
}

/// Trigamma function psi'(x) for non-pole real x.
pub fn trigamma(x: f64) -> f64 {
    assert!(!is_nonpositive_integer(x), "trigamma pole at {x}");
    if x < 0.0 {
        let s = (PI * x).sin();
        return PI * PI / (s * s) - trigamma(1.0 - x);
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 8.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv * inv2;
    for (k, b) in BERNOULLI_EVEN.iter().take(7).enumerate() {
        let _ = k;
        series += b * p;
        p *= inv2;
    }
    acc + inv + 0.5 * inv2 + series
}

/// Gamma-family entry point with error bounds, per the module contract.
pub fn gamma_family(x: f64, which: GammaKind) -> Result<SpecialValue> {
    let pole = match which {
        GammaKind::Trigamma => is_nonpositive_integer(x),
        _ => is_nonpositive_integer(x),
    };
    if pole {
        return Err(Error::Domain(format!(
            "{which:?} has a pole at non-positive integer {x}"
        )));
    }
    let v = match which {
        GammaKind::Gamma => gamma(x),
        GammaKind::LogGamma => {
            if x <= 0.0 {
                return Err(Error::Domain(format!(
                    "log_gamma requires positive argument, got {x}"
                )));
            }
            ln_gamma(x)
        }
        GammaKind::Digamma => digamma(x),
        GammaKind::Trigamma => trigamma(x),
    };
    Ok(SpecialValue::new(v, (1e-15 * v.abs()).max(1e-14)))
}

// Euler-Maclaurin evaluation of zeta and zeta' for s >= 0.5, s != 1.
fn zeta_em(s: f64) -> (f64, f64) {
    debug_assert!(s > -0.5 && s != 1.0);
    const N: usize = 24;
    const K: usize = 13;
    let nf = N as f64;
    let mut z = 0.0;
    let mut dz = 0.0;
    for n in 1..N {
        let nn = n as f64;
        let term = nn.powf(-s);
        z += term;
        dz -= nn.ln() * term;
    }
    let ln_n = nf.ln();
    let npow = nf.powf(-s); // N^{-s}
    // integral term N^{1-s}/(s-1)
    let int = npow * nf / (s - 1.0);
    z += int;
    dz += -ln_n * int - npow * nf / ((s - 1.0) * (s - 1.0));
    // half term
    z += 0.5 * npow;
    dz += -0.5 * ln_n * npow;
    // correction terms B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    let mut fact = 1.0f64; // (2k)!
    for k in 1..=K {
        fact *= (2 * k - 1) as f64 * (2 * k) as f64;
        let mut poch = 1.0;
        let mut dpoch = 0.0; // derivative of the Pochhammer product
        for i in 0..(2 * k - 1) {
            let f = s + i as f64;
            dpoch = dpoch * f + poch;
            poch *= f;
        }
        let scale = BERNOULLI_EVEN[k - 1] / fact * nf.powf(-s - 2.0 * k as f64 + 1.0);
        z += scale * poch;
        dz += scale * (dpoch - ln_n * poch);
    }
    (z, dz)
}

fn reflection_factor(s: f64) -> (f64, f64) {
    // chi(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s), returned with its derivative.
    let a = 2.0f64.powf(s) * PI.powf(s - 1.0);
    let g = gamma(1.0 - s);
    let sn = (PI * s / 2.0).sin();
    let cs = (PI * s / 2.0).cos();
    let chi = a * sn * g;
    let dchi = a * g * (((2.0 * PI).ln() - digamma(1.0 - s)) * sn + PI / 2.0 * cs);
    (chi, dchi)
}

/// Riemann zeta (order 0) or its derivative (order 1) at real s != 1.
pub fn riemann_zeta(s: f64, derivative_order: u8) -> Result<SpecialValue> {
    if s == 1.0 {
        return Err(Error::Domain(
            "Riemann zeta has a simple pole at s = 1 (residue 1)".into(),
        ));
    }
    let (z, dz) = if s > -0.5 {
        zeta_em(s)
    } else {
        let (z1, dz1) = zeta_em(1.0 - s);
        let (chi, dchi) = reflection_factor(s);
        (chi * z1, dchi * z1 - chi * dz1)
    };
    let v = match derivative_order {
        0 => z,
        1 => dz,
        _ => {
            return Err(Error::Domain(format!(
                "derivative_order must be 0 or 1, got {derivative_order}"
            )))
        }
    };
    let bound = (1e-15 * v.abs()).max(1e-14) / (s - 1.0).abs().min(1.0).max(1e-3);
    Ok(SpecialValue::new(v, bound))
}

/// Residue of the Riemann zeta function at its unique pole s = 1.
pub const RIEMANN_ZETA_RESIDUE_AT_1: f64 = 1.0;

/// Finite part of the Laurent expansion of zeta at s = 1 (the Euler constant).
pub fn riemann_zeta_finite_part_at_1() -> f64 {
    EULER_GAMMA
}

/// Convenience wrapper returning the bare value of zeta.
pub fn zeta(s: f64) -> f64 {
    riemann_zeta(s, 0).expect("zeta pole").value
}

/// Convenience wrapper returning the bare value of zeta'.
pub fn zeta_deriv(s: f64) -> f64 {
    riemann_zeta(s, 1).expect("zeta pole").value
}

/// Tail sum over k >= n0 of k^{-s}, for s > 1 (Euler-Maclaurin).
pub(crate) fn zeta_tail(s: f64, n0: u64) -> f64 {
    debug_assert!(s > 1.0);
    let start = n0.max(1);
    let mut direct = 0.0;
    let n = start + 8;
    for k in start..n {
        direct += (k as f64).powf(-s);
    }
    let nf = n as f64;
    let mut tail = nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s);
    let mut fact = 1.0f64;
    for k in 1..=8usize {
        fact *= (2 * k - 1) as f64 * (2 * k) as f64;
        let mut poch = 1.0;
        for i in 0..(2 * k - 1) {
            poch *= s + i as f64;
        }
        tail += BERNOULLI_EVEN[k - 1] / fact * poch * nf.powf(-s - 2.0 * k as f64 + 1.0);
    }
    direct + tail
}

/// The constant `k(l)` entering the constant Laurent coefficient of the
/// log-ladder kernel at a non-negative integer index `l`.
pub fn k_of_l(l: u32) -> SpecialValue {
    let lf = l as f64;
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
    let fact = gamma(lf + 1.0);
    let psi = digamma(lf + 1.0);
    let psi1 = trigamma(lf + 1.0);
    let v = sign / (2.0 * fact) * (PI * PI / 3.0 + psi * psi + psi1);
    SpecialValue::new(v, 1e-13)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!(
            (a - b).abs() <= tol,
            "expected {b:.17e}, got {a:.17e} (diff {:.3e} > {tol:.1e})",
            (a - b).abs()
        );
    }

    #[test]
    fn gamma_basics() {
        assert_close(gamma(1.0), 1.0, 1e-15);
        assert_close(gamma(0.5), PI.sqrt(), 1e-14);
        assert_close(gamma(-0.5), -2.0 * PI.sqrt(), 1e-13);
        assert_close(gamma(5.0), 24.0, 1e-12);
    }

    #[test]
    fn digamma_oracles() {
        // psi(1) = -gamma, checked against the series limit H_n - log n.
        let mut h = 0.0;
        let n = 200_000u64;
        for k in (1..=n).rev() {
            h += 1.0 / k as f64;
        }
        let gamma_series = h - (n as f64).ln() - 0.5 / n as f64;
        assert_close(digamma(1.0), -gamma_series, 1e-9);
        assert_close(digamma(1.0), -EULER_GAMMA, 1e-14);
        // recurrence psi(2) = psi(1) + 1
        assert_close(digamma(2.0), 1.0 - EULER_GAMMA, 1e-14);
        assert_close(digamma(0.5), -EULER_GAMMA - 2.0 * 2.0f64.ln(), 1e-13);
    }

    #[test]
    fn trigamma_oracles() {
        // psi'(1) = sum 1/n^2 = pi^2/6, via direct summation with tail.
        let mut s = 0.0;
        let n = 100_000u64;
        for k in (1..=n).rev() {
            s += 1.0 / (k as f64 * k as f64);
        }
        s += 1.0 / n as f64; // integral tail
        assert_close(trigamma(1.0), s, 1e-9);
        assert_close(trigamma(1.0), PI * PI / 6.0, 1e-13);
        assert_close(trigamma(2.0), PI * PI / 6.0 - 1.0, 1e-13);
        // reflection: psi'(x) + psi'(1-x) = pi^2 / sin^2(pi x)
        assert_close(trigamma(-0.5) + trigamma(1.5), PI * PI, 1e-12);
    }

    #[test]
    fn zeta_special_points() {
        assert_close(zeta(0.0), -0.5, 1e-14);
        assert_close(zeta(-1.0), -1.0 / 12.0, 1e-14);
        assert_close(zeta(2.0), PI * PI / 6.0, 1e-14);
        assert_close(zeta(4.0), PI.powi(4) / 90.0, 1e-14);
        assert_close(zeta(-2.0), 0.0, 1e-14);
        assert_close(zeta_deriv(0.0), -0.5 * (2.0 * PI).ln(), 1e-13);
    }

    #[test]
    fn zeta_direct_summation_oracle() {
        // zeta(2) by direct summation plus integral tail
        let n = 200_000u64;
        let mut s = 0.0;
        for k in (1..=n).rev() {
            s += (k as f64).powi(-2);
        }
        s += 1.0 / n as f64 - 0.5 / (n as f64).powi(2);
        assert_close(zeta(2.0), s, 1e-10);
    }

    #[test]
    fn zeta_pole_is_reported() {
        assert!(riemann_zeta(1.0, 0).is_err());
        assert_eq!(RIEMANN_ZETA_RESIDUE_AT_1, 1.0);
        assert_close(riemann_zeta_finite_part_at_1(), EULER_GAMMA, 0.0);
    }

    #[test]
    fn zeta_reflection_identity() {
        for &s in &[-2.5, -0.5, 0.25] {
            let lhs = zeta(s);
            let rhs = 2.0f64.powf(s) * PI.powf(s - 1.0) * (PI * s / 2.0).sin() * gamma(1.0 - s)
                * zeta(1.0 - s);
            assert_close(lhs, rhs, 1e-12 * rhs.abs().max(1.0));
        }
    }

    #[test]
    fn zeta_derivative_matches_finite_differences() {
        for &s in &[-2.5, -0.5, 0.3, 2.0, 5.5] {
            let h = 1e-5;
            let fd = (zeta(s + h) - zeta(s - h)) / (2.0 * h);
            assert_close(zeta_deriv(s), fd, 1e-7);
        }
    }

    #[test]
    fn gamma_recurrences_on_grid() {
        let mut x = 0.1;
        while x < 20.0 {
            assert_close(gamma(x + 1.0), x * gamma(x), 1e-13 * gamma(x + 1.0).abs());
            assert_close(digamma(x + 1.0), digamma(x) + 1.0 / x, 1e-13 * digamma(x + 1.0).abs().max(1.0));
            x += 0.73;
        }
    }

    #[test]
    fn k_of_l_values() {
        // k(0) with psi(1) = -gamma, psi'(1) = pi^2/6 substituted.
        let expected0 = 0.5 * (PI * PI / 3.0 + EULER_GAMMA * EULER_GAMMA + PI * PI / 6.0);
        assert_close(k_of_l(0).value, expected0, 1e-13);
        // k(1) from the recurrences psi(2) = 1 - gamma, psi'(2) = pi^2/6 - 1.
        let g = EULER_GAMMA;
        let expected1 = -0.5 * (PI * PI / 3.0 + (1.0 - g) * (1.0 - g) + PI * PI / 6.0 - 1.0);
        assert_close(k_of_l(1).value, expected1, 1e-13);
        // sign alternation for fixed positive bracket
        for l in 0..6u32 {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            assert!(k_of_l(l).value * sign > 0.0);
        }
    }

    #[test]
    fn zeta_tail_consistency() {
        for &(s, n0) in &[(2.0, 10u64), (3.0, 5), (7.5, 3), (2.0, 1)] {
            let mut partial = 0.0;
            for k in 1..n0 {
                partial += (k as f64).powf(-s);
            }
            assert_close(partial + zeta_tail(s, n0), zeta(s), 1e-13);
        }
    }
}
