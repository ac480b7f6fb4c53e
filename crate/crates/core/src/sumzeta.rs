//! The decomposition engine for sum sequences: given two totally regular
//! sequences S1, S2, the double sequence { lambda_m + mu_n } decomposes
//! over S1 with power 1, and its zeta function is regular at s = 0 with
//! zeta(0) and zeta'(0) assembled from the parts.
//!
//! Every quantity with two printed forms is computed twice and
//! cross-asserted:
//!
//! * zeta(0): the heat-coefficient pairing
//!   `sum_h c_{(1),-alpha_h,0} c_{(2),alpha_h,0}` against the
//!   invariant form built from zeta values and residues of the parts;
//! * zeta'(0): the coefficient form (log-Gamma coefficients of S2 paired
//!   with zeta data of S1, plus the regularized double product) against
//!   the pure-invariant form whose subtractions are expressed through
//!   residues and special values of S2.
//!
//! The generic spectral-decomposition assembly (arbitrary kernel Laurent
//! data and power kappa) is exposed as [`sdl_assemble`] so that the
//! abstract result stays testable beyond the sum-sequence specialization.

use crate::error::{Error, Result};
use crate::gammaseq::{log_gamma_seq, power_tail};
use crate::invariants::{descriptor_invariants, ClosedFormZeta, LaurentExpansion, ZetaInvariants};
use crate::seqcore::{Neumaier, SequenceDescriptor, LADDER_SNAP};
use crate::specfun::{digamma, gamma, k_of_l, EULER_GAMMA};
use std::f64::consts::PI;

/// Laurent data at s = 0 of the kernel function attached to one ladder
/// point sigma_h (the combined power-kernel and log-kernel parts).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiLaurent {
    pub sigma: f64,
    pub res2: f64,
    pub res1: f64,
    pub res0: f64,
}

/// A planned decomposition of S1 + S2 over S1.
#[derive(Debug, Clone)]
pub struct DecompositionPlan {
    /// Power of the decomposition; always 1 for sum sequences.
    pub kappa: f64,
    /// Length: the largest index along the ladder with -alpha_h <= e(S1).
    pub length: usize,
    /// sigma_h = -alpha_{(2),h} for h = 0..=length, ascending in h.
    pub sigma_ladder: Vec<f64>,
    /// rho_l = l - p2 for l = 0..=p2 (indices of the log terms).
    pub rho_ladder: Vec<f64>,
    /// Kernel Laurent triples aligned with `sigma_ladder`.
    pub phi: Vec<PhiLaurent>,
    /// A_{0,1}(0); vanishes identically in sum mode.
    pub a01_at_zero: f64,
    /// A'_{0,1}(0); vanishes identically in sum mode.
    pub a01_deriv_at_zero: f64,
}

/// Point data of the zeta function of the base sequence U, queried at the
/// ladder points during assembly.
pub trait ZetaPointData {
    fn laurent_at(&self, s0: f64) -> Result<LaurentExpansion>;
}

impl ZetaPointData for ClosedFormZeta {
    fn laurent_at(&self, s0: f64) -> Result<LaurentExpansion> {
        Ok(ClosedFormZeta::laurent_at(self, s0))
    }
}

/// Explicitly tabulated Laurent data (file spectra, oracle-fed values).
#[derive(Debug, Clone, Default)]
pub struct TabulatedZeta {
    pub entries: Vec<LaurentExpansion>,
}

impl ZetaPointData for TabulatedZeta {
    fn laurent_at(&self, s0: f64) -> Result<LaurentExpansion> {
        self.entries
            .iter()
            .find(|e| (e.point - s0).abs() < LADDER_SNAP)
            .copied()
            .ok_or_else(|| {
                Error::MissingCoefficient(format!("no tabulated zeta data at s = {s0}"))
            })
    }
}

fn snap_nonneg_integer(alpha: f64) -> Option<i64> {
    let r = alpha.round();
    if (alpha - r).abs() < LADDER_SNAP && r >= 0.0 {
        Some(r as i64)
    } else {
        None
    }
}

fn order_value(d: &SequenceDescriptor) -> f64 {
    d.order.unwrap_or(f64::NEG_INFINITY)
}

/// Check the decomposition hypotheses and build the sigma ladder and the
/// kernel Laurent data for S0 = S1 + S2 decomposed over S1.
pub fn plan_decomposition(
    s1: &SequenceDescriptor,
    s2: &SequenceDescriptor,
) -> Result<DecompositionPlan> {
    s1.validate()?;
    s2.validate()?;
    let p2 = s2.genus;
    // hypotheses of the decomposition theorem
    let o1 = order_value(s1);
    if !(o1 < -(p2 as f64) - 1.0) {
        return Err(Error::Hypothesis(format!(
            "order of S1 ({o1}) must lie below -p2 - 1 = {}",
            -(p2 as f64) - 1.0
        )));
    }
    let o2 = order_value(s2);
    if !(-o2 >= s1.exponent) {
        return Err(Error::Hypothesis(format!(
            "-order of S2 ({}) must reach the exponent of S1 ({})",
            -o2, s1.exponent
        )));
    }
    let top = s2
        .gamma
        .top_alpha()
        .ok_or_else(|| Error::InvalidDescriptor("S2 carries no gamma expansion data".into()))?;
    let step = s2.ladder_step();
    // abstract ladder grid alpha_h = top - h*step, h = 0..=length, where
    // length is the largest h with -alpha_h <= e(S1)
    let mut sigma_ladder = Vec::new();
    let mut alpha = top;
    while -alpha <= s1.exponent + LADDER_SNAP {
        sigma_ladder.push(-alpha);
        alpha -= step;
        if sigma_ladder.len() > 10_000 {
            return Err(Error::InvalidDescriptor(
                "ladder grid did not terminate; check exponent and ladder step".into(),
            ));
        }
    }
    let length = sigma_ladder.len() - 1;
    let mut phi = Vec::with_capacity(sigma_ladder.len());
    for &sigma in &sigma_ladder {
        let a = -sigma;
        let mut res2 = 0.0;
        let mut res1 = 0.0;
        let mut res0 = 0.0;
        // power-kernel part: zero at natural alpha, else (0, a0, psi(-a) a0)
        if snap_nonneg_integer(a).is_none() {
            let a0 = s2.gamma_coefficient(a, 0)?;
            res1 += a0;
            res0 += digamma(-a) * a0;
        }
        // log-kernel part at sigma = -l, 0 <= l <= p2
        if let Some(l) = snap_nonneg_integer(-sigma) {
            if l as u32 <= p2 {
                let a1 = s2.gamma_coefficient(l as f64, 1)?;
                res2 += -a1;
                res1 += -digamma(l as f64 + 1.0) * a1;
                res0 += -k_of_l(l as u32).value * a1;
            }
        }
        phi.push(PhiLaurent {
            sigma,
            res2,
            res1,
            res0,
        });
    }
    let rho_ladder = (0..=p2).map(|l| l as f64 - p2 as f64).collect();
    Ok(DecompositionPlan {
        kappa: 1.0,
        length,
        sigma_ladder,
        rho_ladder,
        phi,
        a01_at_zero: 0.0,
        a01_deriv_at_zero: 0.0,
    })
}

/// Pick the orientation whose base sequence has a closed-form zeta
/// evaluator; sums are symmetric so either order is valid.
fn orient<'a>(
    s1: &'a SequenceDescriptor,
    s2: &'a SequenceDescriptor,
) -> Result<(&'a SequenceDescriptor, &'a SequenceDescriptor, ClosedFormZeta)> {
    match ClosedFormZeta::for_descriptor(s1) {
        Ok(z) => Ok((s1, s2, z)),
        Err(_) => {
            let z = ClosedFormZeta::for_descriptor(s2).map_err(|_| {
                Error::Domain(
                    "neither summand has a closed-form zeta evaluator; supply point data explicitly"
                        .into(),
                )
            })?;
            Ok((s2, s1, z))
        }
    }
}

fn cross_check(what: &str, lhs: f64, rhs: f64, tol: f64) -> Result<f64> {
    let residual = (lhs - rhs).abs();
    if residual > tol * lhs.abs().max(1.0) {
        return Err(Error::CrossCheck {
            what: what.into(),
            lhs,
            rhs,
            residual,
            tol,
        });
    }
    Ok(lhs)
}

/// Both printed forms of zeta(0, S1 + S2): the heat-coefficient pairing
/// and the invariant formula.
pub fn sum_zeta_zero_routes(
    s1: &SequenceDescriptor,
    s2: &SequenceDescriptor,
) -> Result<(f64, f64)> {
    let (u, v, zu) = orient(s1, s2)?;
    let plan = plan_decomposition(u, v)?;
    let pairing = zeta_zero_pairing(u, v, &plan)?;
    let invariant = zeta_zero_invariant_form(u, v, &zu)?;
    Ok((pairing, invariant))
}

/// zeta(0, S1 + S2), computed by the heat-coefficient pairing and by the
/// invariant formula; the two routes must agree to 1e-12.
pub fn sum_zeta_at_zero(s1: &SequenceDescriptor, s2: &SequenceDescriptor) -> Result<f64> {
    let (pairing, invariant) = sum_zeta_zero_routes(s1, s2)?;
    cross_check("zeta(0) pairing vs invariant form", pairing, invariant, 1e-12)
}

/// Heat-pairing form: sum over the ladder of c_{(1),-a,0} c_{(2),a,0}.
fn zeta_zero_pairing(
    u: &SequenceDescriptor,
    v: &SequenceDescriptor,
    plan: &DecompositionPlan,
) -> Result<f64> {
    let mut acc = Neumaier::default();
    for &sigma in &plan.sigma_ladder {
        let a = -sigma;
        let cu = u.heat_coefficient(sigma, 0)?;
        let cv = v.heat_coefficient(a, 0)?;
        acc.add(cu * cv);
    }
    Ok(acc.value())
}

/// Residue of zeta at a point, from a local pole table.
fn residue_at(inv: &ZetaInvariants, s0: f64) -> f64 {
    inv.poles
        .iter()
        .find(|p| (p.point - s0).abs() < LADDER_SNAP)
        .map(|p| p.res1)
        .unwrap_or(0.0)
}

/// Invariant form of zeta(0, S0):
/// `zeta(0,U) zeta(0,V) + sum_{j=1..p_v} ((-1)^j/j) zeta(-j,U) Res_1 zeta(j,V)
///  + sum_{l=1..p_u} ((-1)^l/l) zeta(-l,V) Res_1 zeta(l,U)
///  + sum_{alpha not in Z} Gamma(alpha) Gamma(-alpha) Res_1 zeta(-alpha,U) Res_1 zeta(alpha,V)`.
fn zeta_zero_invariant_form(
    u: &SequenceDescriptor,
    v: &SequenceDescriptor,
    zu: &dyn ZetaPointData,
) -> Result<f64> {
    let iu = descriptor_invariants(u)?;
    let iv = descriptor_invariants(v)?;
    let mut total = iu.value_at_zero * iv.value_at_zero;
    for j in 1..=v.genus {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let zneg = iu
            .values_at_negative_integers
            .get(&j)
            .copied()
            .ok_or_else(|| {
                Error::MissingCoefficient(format!("zeta(-{j}, S1) not determined by the ladder"))
            })?;
        total += sign / j as f64 * zneg * residue_at(&iv, j as f64);
    }
    for l in 1..=u.genus {
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        let zneg = iv
            .values_at_negative_integers
            .get(&l)
            .copied()
            .ok_or_else(|| {
                Error::MissingCoefficient(format!("zeta(-{l}, S2) not determined by the ladder"))
            })?;
        total += sign / l as f64 * zneg * residue_at(&iu, l as f64);
    }
    for p in &iv.poles {
        let a = p.point;
        if (a - a.round()).abs() < LADDER_SNAP {
            continue;
        }
        let res_u = zu.laurent_at(-a)?.res1;
        total += gamma(a) * gamma(-a) * res_u * p.res1;
    }
    Ok(total)
}

/// Shared driver for the regularized double product: sums multiplicity
/// times `bracket(lambda)` over the base spectrum with a certified
/// truncation, then applies the tail corrections from the listed ladder
/// entries of V lying below the subtraction grid. The per-term stop bound
/// targets the remainder *after* those corrections, i.e. the first omitted
/// expansion order past the listed ladder.
fn summed_product(
    u: &SequenceDescriptor,
    below: &[(f64, f64)],
    bracket: impl Fn(f64) -> Result<(f64, f64)> + Sync,
) -> Result<f64> {
    let mut stream = u.eigenvalues();
    let mut acc = Neumaier::default();
    let floor_scale = {
        let (x0, m0) = stream
            .get(0)
            .ok_or_else(|| Error::InvalidDescriptor("empty base spectrum".into()))?;
        1.0 + (m0 as f64 * bracket(x0)?.0).abs()
    };
    let last_index;
    if let Some(&(a_last, c_last)) = below.last() {
        // power-decay case: the truncation index follows from coefficient
        // bounds alone (the estimated first omitted order, one step past
        // the listed ladder with a safety factor), so the term count never
        // depends on computed values and the block sum stays deterministic
        let mut idx = 0usize;
        let n_terms = loop {
            let Some((x, _)) = stream.get(idx) else { break idx };
            if idx >= 7 && 10.0 * c_last.abs() * x.powf(a_last - 1.0) < 1e-16 * floor_scale {
                break idx + 1;
            }
            idx += 1;
            if idx >= 1_000_000 {
                return Err(Error::Precision {
                    what: "regularized product truncation cap reached".into(),
                    achieved: 10.0 * c_last.abs(),
                });
            }
        };
        let mut points = Vec::with_capacity(n_terms);
        for i in 0..n_terms {
            points.push(stream.get(i).unwrap());
        }
        let total = crate::parallel::block_sum(&points, |&(x, m)| {
            bracket(x).map(|p| m as f64 * p.0).unwrap_or(f64::NAN)
        });
        if total.is_nan() {
            return Err(Error::Domain(
                "bracket evaluation failed inside the regularized product".into(),
            ));
        }
        acc.add(total);
        last_index = n_terms;
    } else {
        // complete ladder: brackets decay faster than any power, so the
        // computed value bottoms out at the cancellation noise floor of
        // the subtraction; three consecutive hits end the sum
        let mut idx = 0usize;
        let mut small_streak = 0u32;
        last_index = loop {
            let Some((x, m)) = stream.get(idx) else {
                break idx; // finite base spectrum: the sum simply ends
            };
            let (b, magnitude) = bracket(x)?;
            acc.add(m as f64 * b);
            let noise = 64.0 * f64::EPSILON * magnitude;
            if b.abs() <= noise.max(1e-16 * floor_scale) {
                small_streak += 1;
                if small_streak >= 3 {
                    break idx + 1;
                }
            } else {
                small_streak = 0;
            }
            idx += 1;
            if idx >= 1_000_000 {
                return Err(Error::Precision {
                    what: "regularized product truncation cap reached".into(),
                    achieved: b.abs(),
                });
            }
        };
    }
    // bracket(x) = -sum_{alpha below grid} a_{alpha,0} x^alpha + smaller
    let mut tail_bound: f64 = 0.0;
    for &(a, c) in below {
        match power_tail(u, -a, last_index as u64 + 1) {
            Ok(t) => {
                acc.add(-c * t);
                tail_bound = tail_bound.max(1e-15 * (c * t).abs());
            }
            Err(_) => {} // finite list exhausted: nothing beyond the end
        }
    }
    if let Some(&(a_last, c_last)) = below.last() {
        // bound the first unknown order past the listed ladder
        if let Ok(t) = power_tail(u, -a_last + 1.0, last_index as u64 + 1) {
            tail_bound = tail_bound.max(10.0 * c_last.abs() * t);
        }
    }
    if tail_bound > 1e-10 * (1.0 + acc.value().abs()) {
        return Err(Error::Precision {
            what: "regularized product tail".into(),
            achieved: tail_bound,
        });
    }
    Ok(acc.value())
}

/// Listed gamma ladder entries of `v` strictly below the subtraction grid.
fn entries_below_grid(v: &SequenceDescriptor, plan: &DecompositionPlan) -> Vec<(f64, f64)> {
    let grid_bottom = -plan.sigma_ladder.last().copied().unwrap_or(0.0);
    v.gamma
        .entries()
        .iter()
        .filter(|e| e.alpha < grid_bottom - LADDER_SNAP && e.k0 != 0.0)
        .map(|e| (e.alpha, e.k0))
        .collect()
}

/// The regularized double Weierstrass product A_{0,0}(0): the sum over the
/// base spectrum of
/// `-log Gamma(lambda, S2) + sum_l a_{(2),l,1} lambda^l log lambda
///  + sum_h a_{(2),alpha_h,0} lambda^{alpha_h}`.
pub fn regularized_log_product(
    s1: &SequenceDescriptor,
    s2: &SequenceDescriptor,
    plan: &DecompositionPlan,
) -> Result<f64> {
    let mut power_subtractions = Vec::new();
    for &sigma in &plan.sigma_ladder {
        let a0 = s2.gamma_coefficient(-sigma, 0)?;
        if a0 != 0.0 {
            power_subtractions.push((-sigma, a0));
        }
    }
    let mut log_subtractions = Vec::new();
    for l in 0..=s2.genus {
        let a1 = s2.gamma_coefficient(l as f64, 1)?;
        if a1 != 0.0 {
            log_subtractions.push((l as f64, a1));
        }
    }
    let below = entries_below_grid(s2, plan);
    summed_product(s1, &below, |x| {
        let lg = log_gamma_seq(-x, s2)?;
        let mut b = -lg.log_value;
        let mut magnitude = lg.log_value.abs();
        let ln_x = x.ln();
        for &(l, a1) in &log_subtractions {
            let t = a1 * x.powf(l) * ln_x;
            b += t;
            magnitude += t.abs();
        }
        for &(a, a0) in &power_subtractions {
            let t = a0 * x.powf(a);
            b += t;
            magnitude += t.abs();
        }
        Ok((b, magnitude))
    })
}

/// zeta'(0, S1 + S2) by the coefficient form (including the regularized
/// double product), cross-asserted against the pure-invariant form.
pub fn sum_zeta_deriv_at_zero(s1: &SequenceDescriptor, s2: &SequenceDescriptor) -> Result<f64> {
    let (u, v, zu) = orient(s1, s2)?;
    sum_zeta_deriv_oriented(u, v, &zu)
}

/// Both printed forms of zeta'(0, S1 + S2).
pub fn sum_zeta_deriv_routes(
    s1: &SequenceDescriptor,
    s2: &SequenceDescriptor,
) -> Result<(f64, f64)> {
    let (u, v, zu) = orient(s1, s2)?;
    let plan = plan_decomposition(u, v)?;
    let a00 = regularized_log_product(u, v, &plan)?;
    let coeff_form = deriv_coefficient_form(u, v, &zu, &plan, a00)?;
    let invariant_form = deriv_invariant_form(u, v, &zu, &plan)?;
    Ok((coeff_form, invariant_form))
}

/// Derivative assembly with an explicit base-sequence zeta source (used
/// when the base sequence is a file spectrum whose point data comes from
/// the continuation or from user input).
pub fn sum_zeta_deriv_oriented(
    u: &SequenceDescriptor,
    v: &SequenceDescriptor,
    zu: &dyn ZetaPointData,
) -> Result<f64> {
    let plan = plan_decomposition(u, v)?;
    let a00 = regularized_log_product(u, v, &plan)?;
    let coeff_form = deriv_coefficient_form(u, v, zu, &plan, a00)?;
    let invariant_form = deriv_invariant_form(u, v, zu, &plan)?;
    cross_check(
        "zeta'(0) coefficient vs invariant form",
        coeff_form,
        invariant_form,
        1e-10,
    )
}

/// The coefficient form:
/// `-sum_{l=0..p_v} a_{(2),l,1} (zeta'(-l,U) + (gamma + psi(l+1)) zeta(-l,U))
///  + sum_{alpha_h not natural} a_{(2),alpha_h,0}
///        (FP zeta(-alpha_h,U) + (gamma + psi(-alpha_h)) Res_1 zeta(-alpha_h,U))
///  - A_{0,0}(0)`.
fn deriv_coefficient_form(
    u: &SequenceDescriptor,
    v: &SequenceDescriptor,
    zu: &dyn ZetaPointData,
    plan: &DecompositionPlan,
    a00: f64,
) -> Result<f64> {
    let _ = u;
    let mut total = -a00;
    for l in 0..=v.genus {
        let a1 = v.gamma_coefficient(l as f64, 1)?;
        if a1 == 0.0 {
            continue;
        }
        let lu = zu.laurent_at(-(l as f64))?;
        total -= a1 * (lu.res_minus1 + (EULER_GAMMA + digamma(l as f64 + 1.0)) * lu.res0);
    }
    for &sigma in &plan.sigma_ladder {
        let a = -sigma;
        if snap_nonneg_integer(a).is_some() {
            continue;
        }
        let a0 = v.gamma_coefficient(a, 0)?;
        if a0 == 0.0 {
            continue;
        }
        let lu = zu.laurent_at(sigma)?;
        total += a0 * (lu.res0 + (EULER_GAMMA + digamma(-a)) * lu.res1);
    }
    Ok(total)
}

/// The pure-invariant form: every subtraction expressed through residues
/// and special values of V's zeta function, with the double product summed
/// against those subtractions.
fn deriv_invariant_form(
    u: &SequenceDescriptor,
    v: &SequenceDescriptor,
    zu: &dyn ZetaPointData,
    plan: &DecompositionPlan,
) -> Result<f64> {
    let iv = descriptor_invariants(v)?;
    let mut total = 0.0;
    // zeta(0,V) zeta'(0,U)
    total += iv.value_at_zero * zu.laurent_at(0.0)?.res_minus1;
    // non-integer ladder residues of V paired with U's point data
    for p in &iv.poles {
        let a = p.point;
        if (a - a.round()).abs() < LADDER_SNAP {
            continue;
        }
        let lu = zu.laurent_at(-a)?;
        total +=
            gamma(a) * gamma(-a) * p.res1 * (lu.res0 + (EULER_GAMMA + digamma(-a)) * lu.res1);
    }
    // negative-integer values of V's zeta against U's integer-point data
    for l in 1..=u.genus {
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        let zv = iv
            .values_at_negative_integers
            .get(&l)
            .copied()
            .ok_or_else(|| {
                Error::MissingCoefficient(format!("zeta(-{l}, S2) not determined by the ladder"))
            })?;
        if zv == 0.0 {
            continue;
        }
        let lu = zu.laurent_at(l as f64)?;
        total += sign / l as f64 * zv * (lu.res0 + (EULER_GAMMA + digamma(l as f64)) * lu.res1);
    }
    // positive-integer residues of V against U's values at -l
    for l in 1..=v.genus {
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        let r = residue_at(&iv, l as f64);
        if r == 0.0 {
            continue;
        }
        let lu = zu.laurent_at(-(l as f64))?;
        total += sign / l as f64
            * r
            * (lu.res_minus1 + (EULER_GAMMA + digamma(l as f64 + 1.0)) * lu.res0);
    }
    // regularized product with invariant-expressed subtractions
    total -= invariant_form_product(u, v, &iv, plan)?;
    Ok(total)
}

/// The double product of the invariant form: subtractions rebuilt from
/// residues and values of V's zeta. Algebraically identical to the
/// coefficient-side product; evaluated independently as a cross-check.
fn invariant_form_product(
    u: &SequenceDescriptor,
    v: &SequenceDescriptor,
    iv: &ZetaInvariants,
    plan: &DecompositionPlan,
) -> Result<f64> {
    let mut power_terms: Vec<(f64, f64)> = Vec::new();
    let mut log_terms: Vec<(f64, f64)> = Vec::new();
    // alpha = 0: -zeta(0,V) log lambda - zeta'(0,V)
    log_terms.push((0.0, -iv.value_at_zero));
    power_terms.push((0.0, -iv.derivative_at_zero));
    for l in 1..=v.genus {
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        let r1 = residue_at(iv, l as f64);
        let fp = iv
            .poles
            .iter()
            .find(|p| (p.point - l as f64).abs() < LADDER_SNAP)
            .map(|p| p.res0)
            .unwrap_or(0.0);
        if r1 != 0.0 || fp != 0.0 {
            log_terms.push((l as f64, -sign / l as f64 * r1));
            power_terms.push((l as f64, -sign / l as f64 * (fp - r1 / l as f64)));
        }
    }
    for p in &iv.poles {
        let a = p.point;
        if (a - a.round()).abs() >= LADDER_SNAP {
            power_terms.push((a, gamma(a) * gamma(-a) * p.res1));
        }
    }
    for &sigma in &plan.sigma_ladder {
        let a = -sigma;
        if let Some(j) = snap_nonneg_integer(-a) {
            if j >= 1 {
                let zv = iv
                    .values_at_negative_integers
                    .get(&(j as u32))
                    .copied()
                    .unwrap_or(0.0);
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                if zv != 0.0 {
                    power_terms.push((a, sign / j as f64 * zv));
                }
            }
        }
    }
    let below = entries_below_grid(v, plan);
    summed_product(u, &below, |x| {
        let lg = log_gamma_seq(-x, v)?;
        let mut b = -lg.log_value;
        let mut magnitude = lg.log_value.abs();
        let ln_x = x.ln();
        for &(l, c) in &log_terms {
            let t = c * x.powf(l) * ln_x;
            b += t;
            magnitude += t.abs();
        }
        for &(a, c) in &power_terms {
            let t = c * x.powf(a);
            b += t;
            magnitude += t.abs();
        }
        Ok((b, magnitude))
    })
}

/// Input block for the generic spectral-decomposition assembly.
#[derive(Debug, Clone, Copy)]
pub struct SdlInput<'a> {
    pub kappa: f64,
    pub phi: &'a [PhiLaurent],
    pub a00_at_zero: f64,
    pub a01_at_zero: f64,
    pub a01_deriv_at_zero: f64,
}

/// Literal evaluation of the spectral decomposition assembly: the Laurent
/// data of zeta(s, S) at s = 0 from kernel triples and the base zeta data
/// at the ladder points. The returned expansion carries Res_1 zeta(0) in
/// `res1`, zeta(0) in `res0` and zeta'(0) in `res_minus1`.
pub fn sdl_assemble(input: SdlInput<'_>, zeta_u: &[LaurentExpansion]) -> Result<LaurentExpansion> {
    if input.phi.len() != zeta_u.len() {
        return Err(Error::Domain(
            "kernel data and base zeta data must align on the ladder".into(),
        ));
    }
    let k = input.kappa;
    let g = EULER_GAMMA;
    let mut res1 = 0.0;
    let mut value = -input.a01_at_zero;
    let mut deriv = -input.a00_at_zero - input.a01_deriv_at_zero;
    for (phi, zu) in input.phi.iter().zip(zeta_u) {
        res1 += phi.res2 * zu.res1 / k;
        value += phi.res2 * zu.res0 + zu.res1 * (phi.res1 + g * phi.res2) / k;
        deriv += (g * g / 2.0 - PI * PI / 12.0) / k * phi.res2 * zu.res1
            + g / k * phi.res1 * zu.res1
            + g * phi.res2 * zu.res0
            + phi.res0 * zu.res1 / k
            + k * phi.res2 * zu.res_minus1
            + phi.res1 * zu.res0;
    }
    Ok(LaurentExpansion {
        point: 0.0,
        res2: 0.0,
        res1,
        res0: value,
        res_minus1: deriv,
    })
}

/// Sum-mode wrapper around [`sdl_assemble`]: builds the kernel data and the
/// base zeta data for S1 + S2 over S1 and assembles zeta(0) and zeta'(0).
pub fn sum_zeta_via_sdl(
    s1: &SequenceDescriptor,
    s2: &SequenceDescriptor,
) -> Result<LaurentExpansion> {
    let (u, v, zu) = orient(s1, s2)?;
    let plan = plan_decomposition(u, v)?;
    let a00 = regularized_log_product(u, v, &plan)?;
    let mut zeta_data = Vec::with_capacity(plan.phi.len());
    for &sigma in &plan.sigma_ladder {
        zeta_data.push(ZetaPointData::laurent_at(&zu, sigma)?);
    }
    sdl_assemble(
        SdlInput {
            kappa: plan.kappa,
            phi: &plan.phi,
            a00_at_zero: a00,
            a01_at_zero: plan.a01_at_zero,
            a01_deriv_at_zero: plan.a01_deriv_at_zero,
        },
        &zeta_data,
    )
}
