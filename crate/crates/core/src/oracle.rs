//! Independent brute-force verification paths: direct (double) series with
//! Euler-Maclaurin tails, Mellin subtract-and-continue analytic
//! continuation for zeta and zeta' near zero, Richardson finite
//! differences, and numeric contour quadrature for the closed-form kernel
//! integrals.
//!
//! Nothing here reads the log-Gamma coefficient ladder or the assembly
//! formulas: the only shared ingredients are eigenvalue generation, the
//! heat ladder used as the subtraction template, and the scalar special
//! functions. Agreement between this module and the coefficient calculus
//! is the acceptance gate of the crate.

use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_to_inf};
use crate::seqcore::{EigenvalueSource, Neumaier, SequenceDescriptor, LADDER_SNAP};
use crate::specfun::{digamma, gamma, recip_gamma, zeta_tail, EULER_GAMMA};
use num_complex::Complex64;
use std::f64::consts::PI;

/// What the oracle is pointed at: one sequence or a sum pair.
#[derive(Debug, Clone, Copy)]
pub enum OracleTarget<'a> {
    Single(&'a SequenceDescriptor),
    Pair(&'a SequenceDescriptor, &'a SequenceDescriptor),
}

impl<'a> OracleTarget<'a> {
    fn exponent(&self) -> f64 {
        match self {
            OracleTarget::Single(d) => d.exponent,
            OracleTarget::Pair(a, b) => a.exponent + b.exponent,
        }
    }

    fn min_eigenvalue(&self) -> f64 {
        match self {
            OracleTarget::Single(d) => d.first_eigenvalue().unwrap_or(1.0),
            OracleTarget::Pair(a, b) => {
                a.first_eigenvalue().unwrap_or(1.0) + b.first_eigenvalue().unwrap_or(1.0)
            }
        }
    }

    /// f(t) - 1 together with its certified tail bound.
    fn heat_minus_one(&self, t: f64) -> Result<(f64, f64)> {
        match self {
            OracleTarget::Single(d) => d.heat_sum_bounded(t),
            OracleTarget::Pair(a, b) => {
                // product identity for the double sequence heat function
                let (fa, ea) = a.heat_sum_bounded(t)?;
                let (fb, eb) = b.heat_sum_bounded(t)?;
                Ok((fa * fb, ea * fb.abs() + eb * fa.abs() + ea * eb))
            }
        }
    }

    /// Heat expansion entries (exponent gamma, coefficient), descending,
    /// with a bound on the first omitted order on (0, 1].
    fn subtraction_ladder(&self) -> Result<(Vec<(f64, f64)>, f64)> {
        match self {
            OracleTarget::Single(d) => {
                let entries: Vec<(f64, f64)> = d
                    .heat
                    .entries()
                    .iter()
                    .map(|e| (e.alpha, e.k0))
                    .collect();
                let bound = match d.order {
                    None => 1e-18,
                    Some(_) => entries.last().map(|&(_, c)| 10.0 * c.abs()).unwrap_or(0.0),
                };
                Ok((entries, bound))
            }
            OracleTarget::Pair(a, b) => {
                // convolve the two ladders: gamma = alpha + beta
                let mut conv: Vec<(f64, f64)> = Vec::new();
                for ea in a.heat.entries() {
                    for eb in b.heat.entries() {
                        let g = ea.alpha + eb.alpha;
                        let c = ea.k0 * eb.k0;
                        if let Some(slot) = conv.iter_mut().find(|(x, _)| (*x - g).abs() < LADDER_SNAP)
                        {
                            slot.1 += c;
                        } else {
                            conv.push((g, c));
                        }
                    }
                }
                conv.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
                // omitted orders: products with one factor beyond a finite ladder
                let mut bound = 0.0f64;
                for (d1, d2) in [(a, b), (b, a)] {
                    if d1.order.is_some() {
                        let last = d1.heat.entries().last().map(|e| e.k0.abs()).unwrap_or(0.0);
                        let top = d2.heat.entries().first().map(|e| e.k0.abs()).unwrap_or(0.0);
                        bound = bound.max(10.0 * last * top);
                    }
                }
                Ok((conv, bound.max(1e-18)))
            }
        }
    }
}

/// Truncated (double) series for zeta(s) in the convergent half-plane,
/// with midpoint Euler-Maclaurin tail corrections in place of the crude
/// integral comparison.
pub fn zeta_direct(target: OracleTarget<'_>, s: f64) -> Result<f64> {
    let margin = target.exponent() + 0.25;
    if s <= margin {
        return Err(Error::Domain(format!(
            "zeta_direct needs s > exponent + 1/4 = {margin}, got {s}"
        )));
    }
    match target {
        OracleTarget::Single(d) => power_sum(d, 0.0, s),
        OracleTarget::Pair(a, b) => {
            let inner = |x: f64| power_sum(b, x, s);
            sum_over(a, inner)
        }
    }
}

/// sum_n m_n (x + lambda_n)^{-s} for x >= 0.
fn power_sum(d: &SequenceDescriptor, x: f64, s: f64) -> Result<f64> {
    match &d.source {
        EigenvalueSource::Rule {
            family,
            scale,
            multiplicity,
        } => {
            let m = *multiplicity as f64;
            let q = family.power();
            if x == 0.0 {
                // pure zeta tail, exact Euler-Maclaurin
                let head: f64 = (1..60u64).map(|n| (scale * (n as f64).powf(q)).powf(-s)).sum();
                return Ok(m * (head + scale.powf(-s) * zeta_tail(q * s, 60)));
            }
            let n_head = 60u64.max((2.0 * (x / scale).powf(1.0 / q)) as u64);
            let mut head = Neumaier::default();
            for n in 1..=n_head {
                head.add((x + scale * (n as f64).powf(q)).powf(-s));
            }
            let f = |t: f64| (x + scale * t.powf(q)) .powf(-s);
            let tail = midpoint_tail(&f, n_head as f64 + 1.0, q * s)?;
            Ok(m * (head.value() + tail))
        }
        EigenvalueSource::List(list) => {
            let mut acc = Neumaier::default();
            for &(v, mult) in list {
                acc.add(mult as f64 * (x + v).powf(-s));
            }
            Ok(acc.value())
        }
        EigenvalueSource::Sum(a, b) => {
            let inner = |y: f64| power_sum(b, x + y, s);
            sum_over(a, inner)
        }
    }
}

/// sum over the spectrum of `d` of multiplicity * g(lambda_n), for g with
/// power-law decay; explicit head plus midpoint Euler-Maclaurin tail.
fn sum_over(d: &SequenceDescriptor, g: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    match &d.source {
        EigenvalueSource::Rule {
            family,
            scale,
            multiplicity,
        } => {
            let m = *multiplicity as f64;
            let q = family.power();
            let n_head = 60u64;
            let mut head = Neumaier::default();
            for n in 1..=n_head {
                head.add(g(scale * (n as f64).powf(q))?);
            }
            let f = |t: f64| g(scale * t.powf(q)).unwrap_or(0.0);
            // decay exponent only guides the integration transform
            let tail = midpoint_tail(&f, n_head as f64 + 1.0, 2.0)?;
            Ok(m * (head.value() + tail))
        }
        EigenvalueSource::List(list) => {
            let mut acc = Neumaier::default();
            for &(v, mult) in list {
                acc.add(mult as f64 * g(v)?);
            }
            Ok(acc.value())
        }
        EigenvalueSource::Sum(_, _) => Err(Error::Domain(
            "triple sums are reduced by iterated pairing".into(),
        )),
    }
}

/// Midpoint Euler-Maclaurin tail: sum_{n >= a} F(n) ~ int_{a-1/2}^inf F
/// + F'(a-1/2)/24, for smooth F with power-law decay (the exponent hint
/// sets up the 1/t transform of the improper integral).
fn midpoint_tail(f: &dyn Fn(f64) -> f64, a: f64, _decay_hint: f64) -> Result<f64> {
    let lo = a - 0.5;
    // u = 1/t: int_lo^inf F dt = int_0^{1/lo} F(1/u) / u^2 du
    let g = |u: f64| {
        if u <= 0.0 {
            0.0
        } else {
            f(1.0 / u) / (u * u)
        }
    };
    let (integral, ierr) = integrate(&g, 0.0, 1.0 / lo, 1e-13);
    let h = 1e-3;
    let deriv = (f(lo + h) - f(lo - h)) / (2.0 * h);
    let v = integral + deriv / 24.0;
    if ierr > 1e-9 * (1.0 + v.abs()) {
        return Err(Error::Precision {
            what: "tail integral".into(),
            achieved: ierr,
        });
    }
    Ok(v)
}

/// Result of the Mellin subtract-and-continue evaluation.
#[derive(Debug, Clone, Copy)]
pub struct ContinuationResult {
    pub s: f64,
    pub value: f64,
    pub error_estimate: f64,
    /// (subtracted pole sum, lower integral, upper integral)
    pub pieces: (f64, f64, f64),
}

/// Analytic continuation of zeta(s) (or zeta'(s), `derivative_order` = 1)
/// through the split Mellin representation
/// `Gamma(s) zeta(s) = sum_g c_g/(s-g) + int_0^1 t^{s-1}(F(t) - sum_g c_g t^{-g}) dt
///                     + int_1^inf t^{s-1} F(t) dt`,
/// where F = f - 1 for a single sequence and the heat product for a pair.
pub fn zeta_continued(
    target: OracleTarget<'_>,
    s: f64,
    derivative_order: u8,
) -> Result<ContinuationResult> {
    let (ladder, omitted_coeff) = target.subtraction_ladder()?;
    if ladder.is_empty() {
        return Err(Error::MissingCoefficient(
            "continuation needs heat expansion data".into(),
        ));
    }
    let depth = ladder.last().unwrap().0;
    if depth > s.min(0.0) - 0.25 && omitted_coeff > 1e-14 {
        return Err(Error::Precision {
            what: format!("expansion depth {depth} insufficient for continuation at s = {s}"),
            achieved: omitted_coeff,
        });
    }
    let mut err = 0.0;
    // remainder R(t) = F(t) - sum c_g t^{-g}
    let remainder = |t: f64| -> f64 {
        let (f, _) = target.heat_minus_one(t).unwrap_or((f64::NAN, 0.0));
        let mut acc = Neumaier::default();
        acc.add(f);
        for &(g, c) in &ladder {
            acc.add(-c * t.powf(-g));
        }
        acc.value()
    };
    // lower cutoff: halve from 1/2 until the remainder sits at working
    // zero; it decays super-polynomially for complete ladders and like the
    // first omitted order otherwise, so everything below t_lo is bounded
    // by the value at t_lo (reported in the error estimate)
    let scale_ref = 1.0 + target.heat_minus_one(1.0)?.0.abs();
    let mut t_lo = 0.5;
    loop {
        // stop at the cancellation floor of F(t) minus its expansion: below
        // it the remainder evaluation is pure round-off
        let f_mag = target.heat_minus_one(t_lo)?.0.abs();
        let floor = (8.0 * f64::EPSILON * f_mag).max(1e-17 * scale_ref);
        if remainder(t_lo).abs() <= floor || t_lo <= 1e-6 {
            break;
        }
        t_lo *= 0.5;
    }
    // lower integral and, for the derivative, its log-kernel companion
    let (i_low, e_low) = integrate(&|t: f64| t.powf(s - 1.0) * remainder(t), t_lo, 1.0, 1e-12);
    err += e_low + remainder(t_lo).abs() * (1.0 + t_lo.ln().abs());
    err += omitted_coeff / (s - depth + 1.0).max(0.25);
    let lam_min = target.min_eigenvalue();
    let (i_high, e_high) = integrate_to_inf(
        &|t: f64| t.powf(s - 1.0) * target.heat_minus_one(t).map(|p| p.0).unwrap_or(0.0),
        1.0,
        lam_min,
        1e-12,
    );
    err += e_high;
    // subtracted pole sum; the g = 0 term joins 1/Gamma(s) analytically
    let c0 = ladder
        .iter()
        .find(|&&(g, _)| g.abs() < LADDER_SNAP)
        .map(|&(_, c)| c)
        .unwrap_or(0.0);
    // a ladder point colliding with s is a genuine pole off the
    // non-positive integers; at s = -m the bracket's pole cancels against
    // the zero of 1/Gamma(s)
    let colliding = ladder
        .iter()
        .find(|&&(g, _)| g.abs() >= LADDER_SNAP && (s - g).abs() < 1e-9)
        .copied();
    if let Some((g, c)) = colliding {
        if !((g - g.round()).abs() < LADDER_SNAP && g < 0.0) {
            return Err(Error::Domain(format!(
                "continuation requested at the pole s = {g}"
            )));
        }
        let m = (-g.round()) as u32;
        let a1 = if m % 2 == 0 { 1.0 } else { -1.0 } * gamma(m as f64 + 1.0);
        let mut b = Neumaier::default();
        for &(g2, c2) in &ladder {
            if (g2 - g).abs() < LADDER_SNAP {
                continue;
            }
            b.add(c2 / (s - g2));
        }
        b.add(i_low);
        b.add(i_high);
        let value = match derivative_order {
            0 => a1 * c,
            1 => a1 * (digamma(m as f64 + 1.0) * c + b.value()),
            _ => return Err(Error::Domain("derivative_order must be 0 or 1".into())),
        };
        return Ok(ContinuationResult {
            s,
            value,
            error_estimate: (err * a1.abs()).max(1e-14),
            pieces: (b.value() - i_low - i_high, i_low, i_high),
        });
    }
    let mut p_reg = Neumaier::default(); // P(s) - c0/s
    let mut dp_reg = Neumaier::default();
    for &(g, c) in &ladder {
        if g.abs() < LADDER_SNAP {
            continue;
        }
        p_reg.add(c / (s - g));
        dp_reg.add(-c / ((s - g) * (s - g)));
    }
    let near_zero = s.abs() < 1e-9;
    let (value, e_val);
    if near_zero {
        // zeta(s) = (1/Gamma(s)) (c0/s + B(s)), 1/Gamma(s) = s (1 + gamma s + ...)
        let b0 = p_reg.value() + i_low + i_high;
        match derivative_order {
            0 => {
                value = c0;
                e_val = 1e-15 * c0.abs();
            }
            1 => {
                value = EULER_GAMMA * c0 + b0;
                e_val = err;
            }
            _ => return Err(Error::Domain("derivative_order must be 0 or 1".into())),
        }
    } else {
        let bracket = c0 / s + p_reg.value() + i_low + i_high;
        let rg = recip_gamma(s);
        match derivative_order {
            0 => {
                value = rg * bracket;
                e_val = err * rg.abs();
            }
            1 => {
                let (il_log, el) = integrate(
                    &|t: f64| t.powf(s - 1.0) * t.ln() * remainder(t),
                    t_lo,
                    1.0,
                    1e-12,
                );
                let (ih_log, eh) = integrate_to_inf(
                    &|t: f64| {
                        t.powf(s - 1.0)
                            * t.ln()
                            * target.heat_minus_one(t).map(|p| p.0).unwrap_or(0.0)
                    },
                    1.0,
                    lam_min,
                    1e-12,
                );
                let dbracket = -c0 / (s * s) + dp_reg.value() + il_log + ih_log;
                // d/ds [1/Gamma(s)] = -psi(s)/Gamma(s), with the finite limit
                // (-1)^m m! at the non-positive integers
                let drg = if (s - s.round()).abs() < 1e-9 && s <= 0.0 {
                    let m = (-s.round()) as u32;
                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                    sign * gamma(m as f64 + 1.0)
                } else {
                    -digamma(s) * rg
                };
                value = drg * bracket + rg * dbracket;
                e_val = (err + el + eh) * (rg.abs() + drg.abs());
            }
            _ => return Err(Error::Domain("derivative_order must be 0 or 1".into())),
        }
    }
    Ok(ContinuationResult {
        s,
        value,
        error_estimate: e_val.max(1e-14),
        pieces: (c0 / if near_zero { 1.0 } else { s } + p_reg.value(), i_low, i_high),
    })
}

/// Richardson-extrapolated central difference, step 1e-3 halved twice.
pub fn finite_difference_deriv(f: &dyn Fn(f64) -> Result<f64>, s0: f64) -> Result<f64> {
    let h = 1e-3;
    let d = |h: f64| -> Result<f64> { Ok((f(s0 + h)? - f(s0 - h)?) / (2.0 * h)) };
    let d1 = d(h)?;
    let d2 = d(h / 2.0)?;
    let d3 = d(h / 4.0)?;
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d3 - d2) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}

/// The kernel identities verified by contour quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AppendixIdentity {
    B1,
    B2,
    B4,
    B5,
    B7,
}

const CONTOUR_THETA: f64 = PI / 2.0;
const CONTOUR_C: f64 = 0.5;

/// (1/2 pi i) * integral over the sector boundary through `vertex`, for an
/// integrand analytic off the real axis beyond the vertex. The boundary is
/// traversed upper-ray inward, lower-ray outward; conjugate symmetry of
/// the integrand reduces it to -1/pi times the imaginary part on the upper
/// ray.
fn contour_integral(vertex: f64, f: impl Fn(Complex64) -> Complex64, cutoff: f64) -> f64 {
    let dir = Complex64::from_polar(1.0, CONTOUR_THETA / 2.0);
    let g = |u: f64| (dir * f(vertex + u * dir)).im;
    let (v, _) = integrate(&g, 0.0, cutoff, 1e-12);
    -v / PI
}

/// Inner lambda-integral of the double kernels, with the ray parameter
/// scaled by 1/t so the exponential cutoff is uniform in t.
fn inner_lambda_integral(t: f64, f: impl Fn(Complex64) -> Complex64) -> f64 {
    let dir = Complex64::from_polar(1.0, CONTOUR_THETA / 2.0);
    let scale = 1.0 / t;
    let g = |v: f64| {
        let lam = Complex64::new(CONTOUR_C, 0.0) + (v * scale) * dir;
        (dir * ((-lam * t).exp() * f(lam) / (-lam))).im * scale
    };
    let cutoff = 50.0 / (CONTOUR_THETA / 2.0).cos();
    let (v, _) = integrate(&g, 0.0, cutoff, 1e-12);
    -v / PI
}

/// Double integral int_0^inf t^{s-1} (1/2 pi i) int e^{-lambda t}/(-lambda)
/// f(lambda) d lambda dt, by panels in t.
fn double_kernel_integral(s: f64, f: impl Fn(Complex64) -> Complex64 + Copy) -> f64 {
    let inner = |t: f64| t.powf(s - 1.0) * inner_lambda_integral(t, f);
    let mut total = 0.0;
    // dyadic panels on (delta, 1]
    let mut hi = 1.0f64;
    while hi > 1e-12 {
        let lo = hi / 2.0;
        let (v, _) = integrate(&inner, lo, hi, 1e-11);
        total += v;
        hi = lo;
    }
    let (v, _) = integrate_to_inf(&inner, 1.0, CONTOUR_C, 1e-11);
    total + v
}

/// Numerically reproduce one closed-form kernel integral; returns
/// |numeric - closed form|.
pub fn verify_appendix(which: AppendixIdentity, a: f64, s: f64) -> Result<f64> {
    match which {
        AppendixIdentity::B1 | AppendixIdentity::B2 => {
            // single lambda-integral over the boundary through -c
            let with_log = which == AppendixIdentity::B2;
            let f = |lam: Complex64| {
                let w = -lam;
                let p = w.powf(a);
                if with_log {
                    p * w.ln()
                } else {
                    p
                }
            };
            let integrand = |lam: Complex64| (-lam).exp() * f(lam);
            let cutoff = (60.0 + 20.0 * a.abs()) / (CONTOUR_THETA / 2.0).cos();
            let numeric = contour_integral(-CONTOUR_C, integrand, cutoff);
            let closed = if with_log {
                -digamma(-a) * recip_gamma(-a)
            } else {
                -recip_gamma(-a)
            };
            Ok((numeric - closed).abs())
        }
        AppendixIdentity::B4 => {
            if !(s > 0.0 && a > 0.0) {
                return Err(Error::Domain("b4 needs s > 0 and a > 0".into()));
            }
            let numeric = double_kernel_integral(s, move |lam| {
                (Complex64::new(1.0, 0.0) - lam).powf(-a)
            });
            let closed = gamma(s + a) / (gamma(a) * s);
            Ok((numeric - closed).abs())
        }
        AppendixIdentity::B5 => {
            if !(s > 0.0 && a > 0.0) {
                return Err(Error::Domain("b5 needs s > 0 and a > 0".into()));
            }
            let numeric = double_kernel_integral(s, move |lam| {
                let w = Complex64::new(1.0, 0.0) - lam;
                w.powf(-a) * w.ln()
            });
            let closed = gamma(s + a) / (gamma(a) * s) * (digamma(a) - digamma(s + a));
            Ok((numeric - closed).abs())
        }
        AppendixIdentity::B7 => {
            if !(s > 0.0) {
                return Err(Error::Domain("b7 needs s > 0".into()));
            }
            let numeric = double_kernel_integral(s, move |lam| {
                let w = Complex64::new(1.0, 0.0) - lam;
                (Complex64::new(1.0, 0.0) + w.sqrt()).ln()
            });
            let closed = -0.5 / PI.sqrt() * gamma(s + 0.5) / (s * s);
            Ok((numeric - closed).abs())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sumzeta;

    fn squares() -> SequenceDescriptor {
        SequenceDescriptor::squares(1.0, 1)
    }

    fn integers() -> SequenceDescriptor {
        SequenceDescriptor::integers(1.0, 1)
    }

    #[test]
    fn direct_single_squares() {
        // zeta(2, {n^2}) = zeta_R(4) = pi^4/90
        let v = zeta_direct(OracleTarget::Single(&squares()), 2.0).unwrap();
        assert!((v - PI.powi(4) / 90.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn direct_pair_integers() {
        // sum (m+n)^{-3} = sum_k (k-1) k^{-3} = zeta_R(2) - zeta_R(3)
        let v = zeta_direct(OracleTarget::Pair(&integers(), &integers()), 3.0).unwrap();
        let want = crate::specfun::zeta(2.0) - crate::specfun::zeta(3.0);
        assert!((v - want).abs() < 1e-10, "{v} vs {want}");
    }

    #[test]
    fn direct_monotone_in_s() {
        let d = squares();
        let v1 = zeta_direct(OracleTarget::Single(&d), 1.0).unwrap();
        let v2 = zeta_direct(OracleTarget::Single(&d), 2.0).unwrap();
        let v3 = zeta_direct(OracleTarget::Single(&d), 3.0).unwrap();
        assert!(v1 > v2 && v2 > v3);
        assert!(zeta_direct(OracleTarget::Single(&d), 0.6).is_err());
    }

    #[test]
    fn continued_matches_direct_in_convergent_region() {
        let d = squares();
        for &s in &[1.0f64, 1.5, 2.0] {
            let c = zeta_continued(OracleTarget::Single(&d), s, 0).unwrap();
            let v = zeta_direct(OracleTarget::Single(&d), s).unwrap();
            assert!((c.value - v).abs() < 1e-9, "s {s}: {} vs {v}", c.value);
        }
    }

    #[test]
    fn continued_squares_at_zero() {
        let d = squares();
        let z0 = zeta_continued(OracleTarget::Single(&d), 0.0, 0).unwrap();
        assert!((z0.value - -0.5).abs() < 1e-9, "{}", z0.value);
        let d0 = zeta_continued(OracleTarget::Single(&d), 0.0, 1).unwrap();
        assert!(
            (d0.value - -(2.0 * PI).ln()).abs() < 1e-7,
            "{} vs {}",
            d0.value,
            -(2.0 * PI).ln()
        );
        assert!(d0.error_estimate < 1e-6);
    }

    #[test]
    fn continued_integers_negative_point() {
        // zeta_R(-1) = -1/12 via the continuation
        let d = integers();
        let z = zeta_continued(OracleTarget::Single(&d), -1.0, 0).unwrap();
        assert!((z.value - -1.0 / 12.0).abs() < 1e-8, "{}", z.value);
    }

    #[test]
    fn continued_pair_squares_zero_value() {
        let s1 = squares().scaled(1.0).unwrap();
        let z = zeta_continued(OracleTarget::Pair(&s1, &squares()), 0.0, 0).unwrap();
        assert!((z.value - 0.25).abs() < 1e-7, "{}", z.value);
    }

    #[test]
    fn continued_pair_derivative_matches_engine() {
        let s1 = squares().scaled(4.0).unwrap();
        let sq = squares();
        let d = zeta_continued(OracleTarget::Pair(&s1, &sq), 0.0, 1).unwrap();
        let engine = sumzeta::sum_zeta_deriv_at_zero(&s1, &sq).unwrap();
        assert!(
            (d.value - engine).abs() < 1e-5,
            "oracle {} vs engine {engine}",
            d.value
        );
    }

    #[test]
    fn finite_difference_on_riemann_zeta() {
        let f = |s: f64| crate::specfun::riemann_zeta(s, 0).map(|v| v.value);
        let d = finite_difference_deriv(&f, 0.0).unwrap();
        assert!((d - -0.5 * (2.0 * PI).ln()).abs() < 1e-7, "{d}");
        // linear functions come out exactly
        let lin = |s: f64| -> Result<f64> { Ok(3.0 * s - 1.0) };
        assert!((finite_difference_deriv(&lin, 0.7).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn appendix_b1_values() {
        // a = -1: closed form -1/Gamma(1) = -1
        let r = verify_appendix(AppendixIdentity::B1, -1.0, 0.0).unwrap();
        assert!(r < 1e-6, "{r}");
        let r = verify_appendix(AppendixIdentity::B1, -0.5, 0.0).unwrap();
        assert!(r < 1e-6, "{r}");
        let r = verify_appendix(AppendixIdentity::B1, 0.75, 0.0).unwrap();
        assert!(r < 1e-6, "{r}");
    }

    #[test]
    fn appendix_b2_values() {
        for &a in &[-1.0f64, -0.5, 0.75] {
            let r = verify_appendix(AppendixIdentity::B2, a, 0.0).unwrap();
            assert!(r < 1e-6, "a = {a}: {r}");
        }
    }

    #[test]
    fn appendix_b4_spot() {
        // a = 1/2, s = 1: Gamma(3/2)/(Gamma(1/2) * 1) = 1/2
        let r = verify_appendix(AppendixIdentity::B4, 0.5, 1.0).unwrap();
        assert!(r < 1e-6, "{r}");
    }

    #[test]
    fn appendix_b5_spot() {
        // a = 1, s = 1: psi(1) - psi(2) = -1
        let r = verify_appendix(AppendixIdentity::B5, 1.0, 1.0).unwrap();
        assert!(r < 1e-6, "{r}");
    }

    #[test]
    fn appendix_b7_spot() {
        let r = verify_appendix(AppendixIdentity::B7, 0.0, 1.0).unwrap();
        assert!(r < 1e-6, "{r}");
    }
}
