//! Applications of the decomposition engine: the Epstein zeta expansion at
//! the origin with the Kronecker limit constant, the Dedekind eta function
//! and its spectral generalization with the functional equation, and zeta
//! determinants of product manifolds.
//!
//! Normalization. The generalized eta function of a sequence S is defined
//! through the expansion of the sum-sequence zeta function,
//!
//! ```text
//! zeta'(0, S + y^2 S) = -zeta(0, S + y^2 S) log y^2 - log eta(iy, S),
//! ```
//!
//! and evaluates, for S = {n^2}, to
//! `eta(iy, S) = (2 pi)^{-1/2} e^{-pi y/12} prod (1 - e^{-2 pi y n})
//!             = (2 pi)^{-1/2} eta_D(iy)`.
//! Both normalizations are exposed in log form so no silent 2 pi factors
//! can drift in.

use crate::error::{Error, Result};
use crate::invariants::{descriptor_invariants, ClosedFormZeta, LaurentExpansion};
use crate::seqcore::{Neumaier, SequenceDescriptor, LADDER_SNAP};
use crate::specfun::{digamma, zeta_deriv, EULER_GAMMA};
use crate::sumzeta::{
    plan_decomposition, regularized_log_product, sum_zeta_at_zero, sum_zeta_deriv_at_zero,
    sum_zeta_deriv_oriented, TabulatedZeta, ZetaPointData,
};
use std::f64::consts::PI;

/// Logarithm of an eta-type value, tagged with its argument.
#[derive(Debug, Clone)]
pub struct EtaValue {
    pub log_value: f64,
    pub y: f64,
    pub sequence_tag: String,
}

/// log eta_D(iy) for the classical Dedekind eta function,
/// `eta_D(iy) = e^{-pi y / 12} prod_{n >= 1} (1 - e^{-2 pi y n})`.
pub fn dedekind_eta(y: f64) -> Result<EtaValue> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("eta needs y > 0, got {y}")));
    }
    let q = (-2.0 * PI * y).exp();
    let mut acc = Neumaier::default();
    let mut qn = q;
    let mut n = 1u32;
    while qn > 1e-300 {
        let term = (1.0 - qn).ln();
        acc.add(term);
        if qn < 1e-18 * (1.0 + acc.value().abs()) {
            break;
        }
        qn *= q;
        n += 1;
        if n > 100_000 {
            break;
        }
    }
    Ok(EtaValue {
        log_value: -PI * y / 12.0 + acc.value(),
        y,
        sequence_tag: "dedekind".into(),
    })
}

/// log eta(iy, S), the generalized Dedekind eta function of a totally
/// regular sequence, evaluated from the closed display: the two invariant
/// prefactors of S plus the regularized double product of (y^2 S, S).
pub fn generalized_eta(d: &SequenceDescriptor, y: f64) -> Result<EtaValue> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("eta needs y > 0, got {y}")));
    }
    let scaled = d.scaled(y * y)?;
    let plan = plan_decomposition(&scaled, d)?;
    let a00 = regularized_log_product(&scaled, d, &plan)?;
    let z = ClosedFormZeta::for_descriptor(d)?;
    let big_y = y * y;
    let mut log_eta = a00;
    for l in 0..=d.genus {
        let a1 = d.gamma_coefficient(l as f64, 1)?;
        if a1 == 0.0 {
            continue;
        }
        let lu = z.laurent_at(-(l as f64));
        log_eta += a1
            * (lu.res_minus1 + (EULER_GAMMA + digamma(l as f64 + 1.0)) * lu.res0)
            * big_y.powi(l as i32);
    }
    for &sigma in &plan.sigma_ladder {
        let alpha = -sigma;
        if (alpha - alpha.round()).abs() < LADDER_SNAP && alpha.round() >= 0.0 {
            continue;
        }
        let a0 = d.gamma_coefficient(alpha, 0)?;
        if a0 == 0.0 {
            continue;
        }
        let lu = z.laurent_at(sigma);
        log_eta -= a0
            * (lu.res0 + (EULER_GAMMA + digamma(-alpha)) * lu.res1)
            * big_y.powf(alpha);
    }
    Ok(EtaValue {
        log_value: log_eta,
        y,
        sequence_tag: d.tag.clone(),
    })
}

/// Residual of the functional equation for the generalized eta function:
/// `|log eta(i/y, S) - 2 zeta(0, S + y^2 S) log y - log eta(iy, S)|`.
pub fn eta_functional_equation_residual(d: &SequenceDescriptor, y: f64) -> Result<f64> {
    let lhs = generalized_eta(d, 1.0 / y)?.log_value;
    let z0 = sum_zeta_at_zero(&d.scaled(y * y)?, d)?;
    let rhs = 2.0 * z0 * y.ln() + generalized_eta(d, y)?.log_value;
    Ok((lhs - rhs).abs())
}

/// Expansion of the Epstein zeta function
/// `zeta(s, 0, y) = sum'_{(m,n)} (y^2 m^2 + n^2)^{-s}` at s = 0, assembled
/// from `2 y^{-2s} zeta_R(2s) + 2 zeta_R(2s) + 4 zeta(s, y^2 S + S)`.
/// Returns `(zeta(0,0,y), zeta'(0,0,y))`; the value is exactly -1 and the
/// derivative carries the Kronecker limit constant
/// `-2 (log 2 pi + 2 log eta_D(iy))`.
pub fn epstein_expansion(y: f64) -> Result<(f64, f64)> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("epstein expansion needs y > 0, got {y}")));
    }
    let squares = SequenceDescriptor::squares(1.0, 1);
    let scaled = squares.scaled(y * y)?;
    let sum0 = sum_zeta_at_zero(&scaled, &squares)?;
    let sum1 = sum_zeta_deriv_at_zero(&scaled, &squares)?;
    let zr0 = -0.5; // zeta_R(0)
    let zr0d = zeta_deriv(0.0);
    let value = 2.0 * zr0 + 2.0 * zr0 + 4.0 * sum0;
    let deriv = 2.0 * (-2.0 * y.ln() * zr0 + 2.0 * zr0d) + 4.0 * zr0d + 4.0 * sum1;
    Ok((value, deriv))
}

/// A closed manifold as the decomposition engine sees it: the positive
/// Laplacian spectrum, kernel dimension, and the zeta point data the
/// assemblies consume.
#[derive(Debug, Clone)]
pub struct ManifoldData {
    pub spectrum: SequenceDescriptor,
    pub dim_ker: u32,
    pub zeta0: f64,
    pub zeta_deriv0: f64,
    /// Laurent data of zeta(s, Sp+ Delta) at s = -1/2 (value and residue).
    pub at_minus_half: LaurentExpansion,
}

impl ManifoldData {
    /// The circle of radius r: eigenvalues (n/r)^2 with multiplicity 2 and
    /// a one-dimensional kernel.
    pub fn circle(radius: f64) -> Result<ManifoldData> {
        let spectrum = SequenceDescriptor::circle(radius);
        let inv = descriptor_invariants(&spectrum)?;
        let z = ClosedFormZeta::for_descriptor(&spectrum)?;
        Ok(ManifoldData {
            spectrum,
            dim_ker: 1,
            zeta0: inv.value_at_zero,
            zeta_deriv0: inv.derivative_at_zero,
            at_minus_half: z.laurent_at(-0.5),
        })
    }

    fn point_data(&self) -> TabulatedZeta {
        TabulatedZeta {
            entries: vec![
                LaurentExpansion::regular(0.0, self.zeta0, self.zeta_deriv0),
                self.at_minus_half,
            ],
        }
    }
}

/// Zeta determinant from zeta'(0).
pub fn det_zeta(zeta_deriv0: f64) -> f64 {
    (-zeta_deriv0).exp()
}

/// Determinant of the product manifold:
/// `det M1 x M2 = det M1 * det M2 * exp(-zeta'(0, Sp+ D1 + Sp+ D2))`.
/// `sum_deriv0` is the derivative produced by the decomposition engine for
/// the sum of the two positive spectra (multiplicities included).
pub fn det_product(m1: &ManifoldData, m2: &ManifoldData, sum_deriv0: f64) -> f64 {
    det_zeta(m1.zeta_deriv0) * det_zeta(m2.zeta_deriv0) * (-sum_deriv0).exp()
}

/// Determinant of S^1_{1/y} x M by the closed display:
/// `(4 pi^2 / y^2) exp((2 pi / y)(FP zeta(-1/2, M) + (2 - 2 log 2) Res_1 zeta(-1/2, M)))
///  * prod_k (1 - e^{-(2 pi / y) sqrt(lambda_k)})^2`.
pub fn det_circle_times_m(y: f64, m: &ManifoldData) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("needs y > 0, got {y}")));
    }
    if !m.at_minus_half.res0.is_finite() {
        return Err(Error::MissingCoefficient(
            "determinant display needs zeta data of M at s = -1/2".into(),
        ));
    }
    let mut stream = m.spectrum.eigenvalues();
    let mut log_product = Neumaier::default();
    let mut idx = 0;
    while let Some((lam, mult)) = stream.get(idx) {
        let e = (-(2.0 * PI / y) * lam.sqrt()).exp();
        if e < 1e-18 {
            break;
        }
        log_product.add(mult as f64 * (1.0 - e).ln());
        idx += 1;
        if idx > 1_000_000 {
            return Err(Error::Precision {
                what: "determinant spectral product".into(),
                achieved: e,
            });
        }
    }
    let exponent = (2.0 * PI / y)
        * (m.at_minus_half.res0 + (2.0 - 2.0 * 2.0f64.ln()) * m.at_minus_half.res1);
    Ok(4.0 * PI * PI / (y * y) * exponent.exp() * (2.0 * log_product.value()).exp())
}

/// The same determinant through the engine route: decompose the cross part
/// of the product spectrum over M and combine with the factor determinants.
/// Used as the internal cross-check of [`det_circle_times_m`].
pub fn det_circle_times_m_engine(y: f64, m: &ManifoldData) -> Result<f64> {
    let circle_single = SequenceDescriptor::squares(y * y, 1);
    let zu = m.point_data();
    let cross = sum_zeta_deriv_oriented(&m.spectrum, &circle_single, &zu)?;
    // circle of radius 1/y: zeta = 2 y^{-2s} zeta_R(2s)
    let circle_deriv0 = 2.0 * y.ln() - 2.0 * (2.0 * PI).ln();
    Ok(det_zeta(m.zeta_deriv0) * det_zeta(circle_deriv0) * (-2.0 * cross).exp())
}

/// Kronecker limit constant check value: `-2 (log 2 pi + 2 log eta_D(iy))`.
pub fn kronecker_constant(y: f64) -> Result<f64> {
    Ok(-2.0 * ((2.0 * PI).ln() + 2.0 * dedekind_eta(y)?.log_value))
}

impl ZetaPointData for ManifoldData {
    fn laurent_at(&self, s0: f64) -> Result<LaurentExpansion> {
        self.point_data().laurent_at(s0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squares() -> SequenceDescriptor {
        SequenceDescriptor::squares(1.0, 1)
    }

    #[test]
    fn epstein_value_is_exactly_minus_one() {
        for &y in &[0.5f64, 1.0, 2.0] {
            let (v, _) = epstein_expansion(y).unwrap();
            assert_eq!(v, -1.0, "y = {y}");
        }
        assert!(epstein_expansion(-1.0).is_err());
    }

    #[test]
    fn epstein_derivative_matches_kronecker_formula() {
        for &y in &[0.5f64, 1.0, 2.0] {
            let (_, d) = epstein_expansion(y).unwrap();
            let k = kronecker_constant(y).unwrap();
            assert!((d - k).abs() < 1e-9, "y = {y}: {d} vs {k}");
        }
    }

    #[test]
    fn dedekind_eta_at_i() {
        // eta_D(i) = Gamma(1/4) / (2 pi^{3/4})
        let eta = dedekind_eta(1.0).unwrap();
        let want = (crate::specfun::gamma(0.25) / (2.0 * PI.powf(0.75))).ln();
        assert!((eta.log_value - want).abs() < 1e-12, "{} vs {want}", eta.log_value);
        assert!((eta.log_value.exp() - 0.768_225_4).abs() < 1e-7);
    }

    #[test]
    fn dedekind_eta_large_argument() {
        // product factors tend to 1: log eta_D(iy) ~ -pi y / 12
        let eta = dedekind_eta(50.0).unwrap();
        assert!((eta.log_value - -PI * 50.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn generalized_eta_squares_closed_product() {
        // eta(iy, {n^2}) = (2 pi)^{-1/2} eta_D(iy)
        for &y in &[0.3f64, 0.7, 1.0, 1.5, 3.0] {
            let g = generalized_eta(&squares(), y).unwrap();
            let want = -0.5 * (2.0 * PI).ln() + dedekind_eta(y).unwrap().log_value;
            assert!(
                (g.log_value - want).abs() < 1e-11,
                "y = {y}: {} vs {want}",
                g.log_value
            );
        }
    }

    #[test]
    fn generalized_eta_defining_identity() {
        // zeta'(0, S + y^2 S) = -zeta(0,..) log y^2 - log eta(iy, S)
        for &y in &[0.7f64, 1.0, 2.0] {
            let s1 = squares().scaled(y * y).unwrap();
            let d = sum_zeta_deriv_at_zero(&s1, &squares()).unwrap();
            let z0 = sum_zeta_at_zero(&s1, &squares()).unwrap();
            let eta = generalized_eta(&squares(), y).unwrap().log_value;
            assert!(
                (d - (-z0 * (y * y).ln() - eta)).abs() < 1e-11,
                "y = {y}"
            );
        }
    }

    #[test]
    fn functional_equation_residuals() {
        for &y in &[0.3f64, 0.7, 1.5, 3.0] {
            let r = eta_functional_equation_residual(&squares(), y).unwrap();
            assert!(r <= 1e-10, "y = {y}: residual {r}");
        }
        // y = 1 is exact by symmetry
        let r = eta_functional_equation_residual(&squares(), 1.0).unwrap();
        assert!(r < 1e-14, "{r}");
    }

    #[test]
    fn classical_functional_equation() {
        // eta_D(i/y) = sqrt(y) eta_D(iy)
        for &y in &[0.3f64, 3.0] {
            let lhs = dedekind_eta(1.0 / y).unwrap().log_value;
            let rhs = 0.5 * y.ln() + dedekind_eta(y).unwrap().log_value;
            assert!((lhs - rhs).abs() < 1e-10, "y = {y}");
        }
    }

    #[test]
    fn circle_determinant_is_four_pi_squared() {
        let c = ManifoldData::circle(1.0).unwrap();
        assert!((det_zeta(c.zeta_deriv0) - 4.0 * PI * PI).abs() < 1e-10 * 4.0 * PI * PI);
        // Res data at -1/2: value 2 zeta_R(-1) = -1/6, residue 0
        assert!((c.at_minus_half.res0 - -1.0 / 6.0).abs() < 1e-13);
        assert_eq!(c.at_minus_half.res1, 0.0);
    }

    #[test]
    fn torus_determinant_display_vs_engine() {
        for &y in &[0.5f64, 1.0, 2.0] {
            let m = ManifoldData::circle(1.0).unwrap();
            let display = det_circle_times_m(y, &m).unwrap();
            let engine = det_circle_times_m_engine(y, &m).unwrap();
            assert!(
                ((display - engine) / display).abs() < 1e-9,
                "y = {y}: {display} vs {engine}"
            );
            // closed form: 4 pi^2 eta_D(iy)^4
            let closed = 4.0 * PI * PI * (4.0 * dedekind_eta(y).unwrap().log_value).exp();
            assert!(
                ((display - closed) / closed).abs() < 1e-9,
                "y = {y}: {display} vs closed {closed}"
            );
        }
    }

    #[test]
    fn det_product_structure() {
        // one factor with det 1 contributes only through the sum term
        let m1 = ManifoldData {
            spectrum: squares(),
            dim_ker: 0,
            zeta0: 0.0,
            zeta_deriv0: 0.0,
            at_minus_half: LaurentExpansion::regular(-0.5, 0.0, 0.0),
        };
        let m2 = ManifoldData::circle(1.0).unwrap();
        let d = det_product(&m1, &m2, 0.25);
        assert!((d - det_zeta(m2.zeta_deriv0) * (-0.25f64).exp()).abs() < 1e-12);
    }
}
