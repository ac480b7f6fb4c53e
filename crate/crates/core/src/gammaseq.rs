//! The Gamma function of a sequence: genus-regularized Weierstrass canonical
//! product, the resolvent-trace functions r_k, and the E-coefficients of the
//! sum-decomposition calculus.
//!
//! All series are evaluated with Kummer-style acceleration: the head of the
//! sequence is summed literally, and from the first index where
//! `x / lambda_n` is small the deviation terms are expanded in powers of
//! `1/lambda_n` and resummed through exact Euler-Maclaurin zeta tails. This
//! keeps the cost at O(sqrt(x)) terms for the built-in rules instead of the
//! hopeless O(x / tolerance) of the plain tail.

use crate::error::{Error, Result};
use crate::seqcore::{EigenvalueSource, Neumaier, RuleFamily, SequenceDescriptor};
use crate::specfun::zeta_tail;

/// Value of log Gamma(-lambda, S) with truncation bookkeeping.
#[derive(Debug, Clone, Copy)]
pub struct CanonicalProductValue {
    pub log_value: f64,
    pub truncation_terms: usize,
    pub tail_bound: f64,
}

/// Tail sum over n >= n0 (1-based) of lambda_n^{-s}; needs s*q > 1 for rules.
pub(crate) fn power_tail(d: &SequenceDescriptor, s: f64, n0: u64) -> Result<f64> {
    match &d.source {
        EigenvalueSource::Rule {
            family,
            scale,
            multiplicity,
        } => {
            let qs = family.power() * s;
            if qs <= 1.0 {
                return Err(Error::Domain(format!(
                    "power tail diverges: exponent {s} too small for this rule"
                )));
            }
            Ok(*multiplicity as f64 * scale.powf(-s) * zeta_tail(qs, n0))
        }
        EigenvalueSource::List(list) => {
            let mut acc = Neumaier::default();
            for &(v, m) in list.iter().skip(n0 as usize - 1) {
                acc.add(m as f64 * v.powf(-s));
            }
            Ok(acc.value())
        }
        EigenvalueSource::Sum(_, _) => Err(Error::Domain(
            "power tails of sum sequences go through the decomposition engine".into(),
        )),
    }
}

/// First 1-based index with lambda_n >= bound (rules only).
fn rule_index_above(family: RuleFamily, scale: f64, bound: f64) -> u64 {
    let n = (bound / scale).max(0.0).powf(1.0 / family.power()).ceil() as u64;
    n.max(1)
}

/// log Gamma(-lambda, S) for lambda on the closed negative real axis.
///
/// With x = -lambda >= 0 this is
/// `-sum_n [ log(1 + x/lambda_n) + sum_{j=1}^{g} ((-1)^j / j) (x/lambda_n)^j ]`.
/// `log_gamma_seq(0, S) = 0` holds exactly. Sum sources are rejected; their
/// regularized product lives in the decomposition engine. For list sources
/// the product over the listed spectrum is computed exactly; the omitted
/// tail of a truncated spectrum is the caller's responsibility (see the
/// descriptor's truncation note).
pub fn log_gamma_seq(lambda: f64, d: &SequenceDescriptor) -> Result<CanonicalProductValue> {
    if lambda > 0.0 {
        return Err(Error::Domain(format!(
            "log_gamma_seq is restricted to the negative real axis, got lambda = {lambda}"
        )));
    }
    let x = -lambda;
    if x == 0.0 {
        return Ok(CanonicalProductValue {
            log_value: 0.0,
            truncation_terms: 0,
            tail_bound: 0.0,
        });
    }
    let g = d.genus as i64;
    let deviation = |u: f64| -> f64 {
        // log(1+u) + sum_{j=1}^{g} (-1)^j u^j / j
        let mut v = u.ln_1p();
        let mut p = 1.0;
        for j in 1..=g {
            p *= u;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            v += sign * p / j as f64;
        }
        v
    };
    match &d.source {
        EigenvalueSource::Rule {
            family,
            scale,
            multiplicity,
        } => {
            let m = *multiplicity as f64;
            let n_acc = rule_index_above(*family, *scale, 4.0 * x).max(8);
            let mut head = Neumaier::default();
            for n in 1..n_acc {
                let lam = scale * (n as f64).powf(family.power());
                head.add(m * deviation(x / lam));
            }
            // accelerated tail: deviation(u) = sum_{j>g} (-1)^{j+1} u^j / j
            let mut tail = Neumaier::default();
            let u0 = x / (scale * (n_acc as f64).powf(family.power()));
            let mut j = g + 1;
            let mut bound;
            loop {
                let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
                let t = power_tail(d, j as f64, n_acc)?;
                tail.add(sign * x.powf(j as f64) * t / j as f64);
                bound = u0.powi(j as i32 + 1) / (j as f64 + 1.0) * (n_acc as f64 + 1.0 / u0);
                if bound < 1e-18 * (1.0 + head.value().abs()) || j > 80 {
                    break;
                }
                j += 1;
            }
            Ok(CanonicalProductValue {
                log_value: -(head.value() + tail.value()),
                truncation_terms: n_acc as usize,
                tail_bound: bound.abs(),
            })
        }
        EigenvalueSource::List(list) => {
            let mut acc = Neumaier::default();
            for &(v, mult) in list {
                acc.add(mult as f64 * deviation(x / v));
            }
            Ok(CanonicalProductValue {
                log_value: -acc.value(),
                truncation_terms: list.len(),
                tail_bound: 0.0,
            })
        }
        EigenvalueSource::Sum(_, _) => Err(Error::Domain(
            "the double Weierstrass product of a sum sequence is regularized in sumzeta".into(),
        )),
    }
}

/// Resolvent-trace function
/// `r_k(lambda, S) = k! sum_n [ (-1)^k (lambda - lambda_n)^{-k-1}
///                   + sum_{j=0}^{g-k-1} C(j+k, j) lambda^j lambda_n^{-j-k-1} ]`,
/// equal to minus the (k+1)-st lambda-derivative of log Gamma(-lambda, S).
pub fn r_k(lambda: f64, k: u32, d: &SequenceDescriptor) -> Result<f64> {
    let g = d.genus;
    if k > g {
        return Err(Error::Domain(format!(
            "r_k is defined for k <= genus ({g}), got k = {k}"
        )));
    }
    let l1 = d
        .first_eigenvalue()
        .ok_or_else(|| Error::InvalidDescriptor("empty spectrum".into()))?;
    if lambda >= l1 - 1e-12 {
        return Err(Error::Domain(format!(
            "lambda = {lambda} is not to the left of the spectrum (lambda_1 = {l1})"
        )));
    }
    let kf = k as f64;
    let sign_k = if k % 2 == 0 { 1.0 } else { -1.0 };
    let jmax = g as i64 - k as i64 - 1;
    let comp_terms = |lam_n: f64| -> f64 {
        let mut s = sign_k / (lambda - lam_n).powi(k as i32 + 1);
        let mut c = 1.0; // C(j+k, j)
        let mut lp = 1.0; // lambda^j
        let mut j = 0i64;
        while j <= jmax {
            if j > 0 {
                c = c * (j as f64 + kf) / j as f64;
                lp *= lambda;
            }
            s += c * lp / lam_n.powi((j + k as i64 + 1) as i32);
            j += 1;
        }
        s
    };
    let factorial: f64 = (1..=k as u64).map(|i| i as f64).product::<f64>().max(1.0);
    match &d.source {
        EigenvalueSource::Rule {
            family,
            scale,
            multiplicity,
        } => {
            let m = *multiplicity as f64;
            let n_acc = rule_index_above(*family, *scale, 4.0 * lambda.abs().max(1.0)).max(8);
            let mut head = Neumaier::default();
            for n in 1..n_acc {
                let lam_n = scale * (n as f64).powf(family.power());
                head.add(m * comp_terms(lam_n));
            }
            // tail: -(sum_{j >= g-k} C(k+j, j) lambda^j lambda_n^{-j-k-1}), resummed
            let mut tail = Neumaier::default();
            let lam_acc = scale * (n_acc as f64).powf(family.power());
            let u0 = lambda.abs() / lam_acc;
            let start = (g - k) as i64;
            let mut j = start;
            let mut c = binomial_f(k as i64 + j, j);
            loop {
                let t = power_tail(d, (j + k as i64 + 1) as f64, n_acc)?;
                tail.add(-c * lambda.powi(j as i32) * t);
                let bound = c * u0.powi(j as i32 + 1) * lam_acc.powi(-(k as i32) - 1)
                    * (n_acc as f64 + 1.0);
                if bound < 1e-18 * (1.0 + head.value().abs()) || j > start + 90 {
                    break;
                }
                j += 1;
                c = c * (k as i64 + j) as f64 / j as f64;
            }
            Ok(factorial * (head.value() + tail.value()))
        }
        EigenvalueSource::List(list) => {
            let mut acc = Neumaier::default();
            for &(v, mult) in list {
                acc.add(mult as f64 * comp_terms(v));
            }
            Ok(factorial * acc.value())
        }
        EigenvalueSource::Sum(_, _) => Err(Error::Domain(
            "r_k of a sum sequence goes through the decomposition engine".into(),
        )),
    }
}

fn binomial_f(n: i64, k: i64) -> f64 {
    let mut v = 1.0;
    for i in 0..k {
        v = v * (n - i) as f64 / (k - i) as f64;
    }
    v
}

/// E-coefficient of the sum-decomposition calculus:
///
/// for k > p:  `E^p_k(a) = ((-1)^k / k) sum_n a^k / (a + lambda_n)^k`,
/// for k <= p: the same with the compensating binomial sums
/// `- sum_{j=k}^{p} ((-1)^j / j) C(j, k) a^j lambda_n^{-j}` inside each term.
///
/// `p` must be the genus of the sequence; `a > 0`.
pub fn e_coeff(k: u32, p: u32, a: f64, d: &SequenceDescriptor) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("e_coeff needs k >= 1".into()));
    }
    if p != d.genus {
        return Err(Error::Domain(format!(
            "p = {p} does not match the genus {} of the sequence (missing genus data)",
            d.genus
        )));
    }
    if !(a > 0.0) {
        return Err(Error::Domain(format!("e_coeff needs a > 0, got {a}")));
    }
    let ki = k as i64;
    let sign_k = if k % 2 == 0 { 1.0 } else { -1.0 };
    let term = |lam: f64| -> f64 {
        let mut v = sign_k / k as f64 * (a / (a + lam)).powi(k as i32);
        for j in k..=p {
            let sign_j = if j % 2 == 0 { 1.0 } else { -1.0 };
            v -= sign_j / j as f64 * binomial_f(j as i64, ki) * (a / lam).powi(j as i32);
        }
        v
    };
    match &d.source {
        EigenvalueSource::Rule {
            family,
            scale,
            multiplicity,
        } => {
            let m = *multiplicity as f64;
            let n_acc = rule_index_above(*family, *scale, 4.0 * a).max(8);
            let mut head = Neumaier::default();
            for n in 1..n_acc {
                head.add(m * term(scale * (n as f64).powf(family.power())));
            }
            // tail coefficients of lambda^{-k-i}: ((-1)^k/k) C(k+i-1, i) (-a)^i a^k,
            // cancellation leaves i >= p-k+1
            let lam_acc = scale * (n_acc as f64).powf(family.power());
            let u0 = a / lam_acc;
            let mut tail = Neumaier::default();
            let start = if ki > p as i64 { 0 } else { p as i64 - ki + 1 };
            let mut i = start;
            loop {
                let c = binomial_f(ki + i - 1, i);
                let sign_i = if i % 2 == 0 { 1.0 } else { -1.0 };
                let t = power_tail(d, (ki + i) as f64, n_acc)?;
                tail.add(sign_k / k as f64 * c * sign_i * a.powi((ki + i) as i32) * t);
                let bound = c * u0.powi(i as i32 + 1) * (n_acc as f64 + 1.0);
                if bound < 1e-18 * (1.0 + head.value().abs() + tail.value().abs()) || i > start + 90
                {
                    break;
                }
                i += 1;
            }
            Ok(head.value() + tail.value())
        }
        EigenvalueSource::List(list) => {
            let mut acc = Neumaier::default();
            for &(v, mult) in list {
                acc.add(mult as f64 * term(v));
            }
            Ok(acc.value())
        }
        EigenvalueSource::Sum(_, _) => Err(Error::Domain(
            "E-coefficients of sum sequences go through the decomposition engine".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::EULER_GAMMA;
    use std::f64::consts::PI;

    fn squares() -> SequenceDescriptor {
        SequenceDescriptor::squares(1.0, 1)
    }

    fn integers() -> SequenceDescriptor {
        SequenceDescriptor::integers(1.0, 1)
    }

    #[test]
    fn log_gamma_squares_closed_form() {
        // log Gamma(-lambda, {n^2}) = -log( sinh(pi sqrt(-lambda)) / (pi sqrt(-lambda)) )
        for &x in &[0.3, 1.0, 2.5, 10.0, 100.0] {
            let got = log_gamma_seq(-x, &squares()).unwrap();
            let want = -((PI * x.sqrt()).sinh() / (PI * x.sqrt())).ln();
            assert!(
                (got.log_value - want).abs() < 1e-11 * want.abs().max(1.0),
                "x = {x}: {} vs {want}",
                got.log_value
            );
            assert!(got.tail_bound < 1e-12);
        }
    }

    #[test]
    fn log_gamma_at_zero_is_zero() {
        assert_eq!(log_gamma_seq(0.0, &squares()).unwrap().log_value, 0.0);
        assert_eq!(log_gamma_seq(0.0, &integers()).unwrap().log_value, 0.0);
    }

    #[test]
    fn log_gamma_integers_euler_product() {
        // prod (1 + 1/n) e^{-1/n} = e^{-gamma}, so log Gamma(-(-1)... ) at x=1 is gamma.
        // More generally log Gamma(x, {n}) = ln Gamma_Euler(x+1) + gamma x.
        let partial: f64 = {
            // partial products as an independent oracle
            let mut acc = 0.0;
            for n in 1..200_000u64 {
                let u = 1.0 / n as f64;
                acc += (1.0 + u).ln() - u;
            }
            acc
        };
        let got = log_gamma_seq(-1.0, &integers()).unwrap().log_value;
        assert!((got - EULER_GAMMA).abs() < 1e-10, "{got}");
        assert!((-partial - got).abs() < 1e-5); // slow oracle converges like 1/N
        for &x in &[0.5, 2.0, 7.3] {
            let got = log_gamma_seq(-x, &integers()).unwrap().log_value;
            let want = crate::specfun::ln_gamma(x + 1.0) + EULER_GAMMA * x;
            assert!((got - want).abs() < 1e-11 * want.abs().max(1.0), "x={x}");
        }
    }

    #[test]
    fn log_gamma_asymptotic_matches_ladder() {
        // log Gamma(-lambda, squares) - [-pi sqrt(x) + (1/2) log x + log 2pi] -> 0
        let x = 400.0;
        let got = log_gamma_seq(-x, &squares()).unwrap().log_value;
        let asym = -PI * x.sqrt() + 0.5 * x.ln() + (2.0 * PI).ln();
        assert!((got - asym).abs() <= 1e-10, "residual {}", got - asym);
    }

    #[test]
    fn log_gamma_rejects_positive_lambda() {
        assert!(log_gamma_seq(0.5, &squares()).is_err());
    }

    #[test]
    fn r_k_matches_closed_derivative_squares() {
        // With x = -lambda and s = sqrt(x):
        //   log Gamma(-lambda, squares) = -log sinh(pi s) + log(pi s),
        // and r_0 = -d/dlambda log Gamma = +d/dx log Gamma
        //         = -pi coth(pi s)/(2 s) + 1/(2 x).
        for &x in &[0.5f64, 2.0, 10.0] {
            let s = x.sqrt();
            let want = -(PI * (PI * s).cosh() / (PI * s).sinh() / (2.0 * s)) + 1.0 / (2.0 * x);
            let got = r_k(-x, 0, &squares()).unwrap();
            assert!((got - want).abs() < 1e-11 * want.abs().max(1.0), "x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn r_k_is_minus_derivative_of_log_gamma() {
        // central differences with one Richardson level, step 1e-4
        let d = integers();
        for &x in &[0.5, 2.0, 10.0] {
            let h = 1e-4;
            let f = |y: f64| log_gamma_seq(y, &d).unwrap().log_value;
            let d1 = |h: f64| (f(-x + h) - f(-x - h)) / (2.0 * h);
            let fd = (4.0 * d1(h / 2.0) - d1(h)) / 3.0;
            let got = r_k(-x, 0, &d).unwrap();
            assert!((-fd - got).abs() < 1e-6, "x={x}: {got} vs {}", -fd);
        }
    }

    #[test]
    fn r_genus_tends_to_zero_far_left() {
        let v = r_k(-1e8, 0, &squares()).unwrap();
        assert!(v.abs() < 1e-3, "{v}");
        let v = r_k(-1e8, 1, &integers()).unwrap();
        assert!(v.abs() < 1e-3, "{v}");
    }

    #[test]
    fn r_k_domain_errors() {
        assert!(r_k(-1.0, 1, &squares()).is_err()); // k > genus
        assert!(r_k(2.0, 0, &squares()).is_err()); // on/right of spectrum
    }

    #[test]
    fn e_coeff_squares_direct_sum() {
        // E^0_1(1) = -sum 1/(1+n^2) = -(pi coth pi - 1)/2
        let want = -(PI / PI.tanh() - 1.0) / 2.0;
        let got = e_coeff(1, 0, 1.0, &squares()).unwrap();
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }

    #[test]
    fn e_coeff_integers_p1_k1() {
        // E^1_1(a) = sum a^2/(n (a + n))
        let a = 1.5;
        let n_max = 2_000_000u64;
        let mut brute = 0.0;
        for n in (1..=n_max).rev() {
            let nf = n as f64;
            brute += a * a / (nf * (a + nf));
        }
        // midpoint-rule tail for the omitted terms
        brute += a * (a / (n_max as f64 + 0.5)).ln_1p();
        let got = e_coeff(1, 1, a, &integers()).unwrap();
        assert!((got - brute).abs() < 1e-9, "{got} vs {brute}");
    }

    #[test]
    fn e_coeff_agrees_with_derivative_identity() {
        // E^p_k(a) = ((-1)^{k+1} / k!) a^k r_{k-1}(-a, S)
        for &(k, a) in &[(1u32, 0.7f64), (1, 2.0)] {
            let d = squares();
            let via_r = (if (k + 1) % 2 == 0 { 1.0 } else { -1.0 })
                / crate::specfun::gamma(k as f64 + 1.0)
                * a.powi(k as i32)
                * r_k(-a, k - 1, &d).unwrap();
            let direct = e_coeff(k, 0, a, &d).unwrap();
            assert!((via_r - direct).abs() < 1e-9, "k={k} a={a}: {via_r} vs {direct}");
        }
        for &(k, a) in &[(1u32, 1.0f64), (2, 0.5), (2, 3.0)] {
            let d = integers();
            let via_r = (if (k + 1) % 2 == 0 { 1.0 } else { -1.0 })
                / crate::specfun::gamma(k as f64 + 1.0)
                * a.powi(k as i32)
                * r_k(-a, k - 1, &d).unwrap();
            let direct = e_coeff(k, d.genus, a, &d).unwrap();
            assert!((via_r - direct).abs() < 1e-9, "k={k} a={a}: {via_r} vs {direct}");
        }
    }

    #[test]
    fn e_coeff_vanishes_at_zero_argument() {
        let got = e_coeff(1, 0, 1e-12, &squares()).unwrap();
        assert!(got.abs() < 1e-11);
    }

    #[test]
    fn e_coeff_argument_checks() {
        assert!(e_coeff(0, 0, 1.0, &squares()).is_err());
        assert!(e_coeff(1, 1, 1.0, &squares()).is_err()); // wrong genus
        assert!(e_coeff(1, 0, -1.0, &squares()).is_err());
    }
}
