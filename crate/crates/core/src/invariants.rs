//! The coefficient calculus: conversions between heat coefficients,
//! log-Gamma expansion coefficients, and zeta invariants (pole/residue
//! tables, values at non-positive integers, zeta(0), zeta'(0)), plus the
//! Laplacian heat-trace dictionary.
//!
//! Conventions. For a totally regular sequence the two expansions read
//!
//! ```text
//! log Gamma(-lambda, S) = sum_j a_{alpha_j,0} (-lambda)^{alpha_j}
//!                       + sum_{j in [0,g]} a_{j,1} (-lambda)^j log(-lambda) + ...
//! f(t, S) - 1           = sum_j c_{alpha_j,0} t^{-alpha_j} + ...
//! ```
//!
//! and the associated zeta function has at most simple poles on the ladder.
//! The finite part of zeta at a *non-integer* pole is a global quantity and
//! cannot come out of finitely many local coefficients; such entries are
//! reported as NaN here and are supplied by closed-form evaluators (or the
//! numeric continuation) where they are genuinely needed.

use crate::error::{Error, Result};
use crate::seqcore::{
    CoeffEntry, EigenvalueSource, ExpansionCoefficients, SequenceDescriptor, LADDER_SNAP,
};
use crate::specfun::{self, digamma, gamma, recip_gamma, EULER_GAMMA};
use std::collections::BTreeMap;

/// Stieltjes constant gamma_1: zeta(1+u) = 1/u + gamma - gamma_1 u + O(u^2).
const STIELTJES_GAMMA_1: f64 = -0.072_815_845_483_676_72;

/// Laurent data of a spectral function at a point:
/// `res2/(s-s0)^2 + res1/(s-s0) + res0 + res_minus1 (s-s0) + O((s-s0)^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaurentExpansion {
    pub point: f64,
    pub res2: f64,
    pub res1: f64,
    pub res0: f64,
    /// Coefficient of (s - s0)^1.
    pub res_minus1: f64,
}

impl LaurentExpansion {
    pub fn regular(point: f64, value: f64, derivative: f64) -> Self {
        LaurentExpansion {
            point,
            res2: 0.0,
            res1: 0.0,
            res0: value,
            res_minus1: derivative,
        }
    }
}

/// The zeta invariants of a totally regular sequence that are determined by
/// its expansion coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaInvariants {
    /// Simple poles, strictly decreasing locations. Non-integer pole entries
    /// carry NaN finite parts (not determined by local data).
    pub poles: Vec<LaurentExpansion>,
    pub value_at_zero: f64,
    pub derivative_at_zero: f64,
    /// k -> zeta(-k), down to the certified depth of the ladder.
    pub values_at_negative_integers: BTreeMap<u32, f64>,
}

fn snap_integer(alpha: f64) -> Option<i64> {
    let r = alpha.round();
    if (alpha - r).abs() < LADDER_SNAP {
        Some(r as i64)
    } else {
        None
    }
}

/// External zeta data needed to invert the heat-side coefficients at the
/// integer ladder points (finite parts at the positive-integer poles and
/// the derivative at zero).
#[derive(Debug, Clone, Default)]
pub struct IntegerPointData {
    /// j -> finite part of zeta at s = j, for integer j in (0, genus].
    pub finite_part_at_positive_integers: BTreeMap<u32, f64>,
    /// zeta'(0, S).
    pub derivative_at_zero: Option<f64>,
}

/// Forward map (log-Gamma coefficients to heat coefficients):
/// `c_{a,0} = (a_{a,0} + psi(-a) a_{a,1}) / Gamma(-a)`,
/// `c_{a,1} = -a_{a,1} / Gamma(-a)`,
/// with the integer-point limits `c_{m,0} = (-1)^{m+1} m! a_{m,1}` built in.
pub fn gamma_to_heat(gamma_coeffs: &ExpansionCoefficients) -> Result<ExpansionCoefficients> {
    let mut out = Vec::new();
    for e in gamma_coeffs.entries() {
        let alpha = e.alpha;
        let (c0, c1) = match snap_integer(alpha) {
            Some(m) if m >= 0 => {
                // 1/Gamma(-m) = 0 while psi(-a)/Gamma(-a) -> (-1)^{m+1} m!
                let mf = gamma(m as f64 + 1.0);
                let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
                (sign * mf * e.k1, 0.0)
            }
            _ => {
                let rg = recip_gamma(-alpha);
                ((e.k0 + digamma(-alpha) * e.k1) * rg, -e.k1 * rg)
            }
        };
        out.push(CoeffEntry {
            alpha,
            k0: c0,
            k1: c1,
        });
    }
    ExpansionCoefficients::new(out)
}

/// Inverse map (heat coefficients to log-Gamma coefficients), totally
/// regular case. The branches at integer alpha in [0, genus] require the
/// zeta data of [`IntegerPointData`]; asking for them without the data is
/// an error, mirroring the fact that the conversion is only invertible off
/// the naturals.
pub fn heat_to_gamma(
    heat: &ExpansionCoefficients,
    genus: u32,
    data: &IntegerPointData,
) -> Result<ExpansionCoefficients> {
    let mut out = Vec::new();
    for e in heat.entries() {
        if e.k1 != 0.0 {
            return Err(Error::InvalidDescriptor(
                "totally regular sequences have no heat log coefficients".into(),
            ));
        }
        let alpha = e.alpha;
        let entry = match snap_integer(alpha) {
            Some(0) => {
                let d0 = data.derivative_at_zero.ok_or_else(|| {
                    Error::MissingCoefficient(
                        "inversion at alpha = 0 needs zeta'(0) (not a local quantity)".into(),
                    )
                })?;
                CoeffEntry {
                    alpha,
                    k0: -d0,
                    k1: -e.k0,
                }
            }
            Some(m) if m > 0 && m as u32 <= genus => {
                let fp = data
                    .finite_part_at_positive_integers
                    .get(&(m as u32))
                    .copied()
                    .ok_or_else(|| {
                        Error::MissingCoefficient(format!(
                            "inversion at alpha = {m} needs the finite part of zeta there"
                        ))
                    })?;
                let mf = gamma(m as f64 + 1.0);
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                CoeffEntry {
                    alpha,
                    k0: sign / m as f64 * (e.k0 / mf - fp),
                    k1: -sign / mf * e.k0,
                }
            }
            Some(m) if m > 0 => {
                return Err(Error::InvalidDescriptor(format!(
                    "heat ladder point {m} exceeds the genus {genus}"
                )))
            }
            _ => CoeffEntry {
                alpha,
                k0: gamma(-alpha) * e.k0,
                k1: 0.0,
            },
        };
        out.push(entry);
    }
    ExpansionCoefficients::new(out)
}

/// Pole/residue table and special values from the log-Gamma coefficients
/// (simple poles only; the sequence must have order <= 0 so that s = 0 is
/// a regular point).
pub fn zeta_invariants_from_gamma(
    gamma_coeffs: &ExpansionCoefficients,
    genus: u32,
    order: Option<f64>,
) -> Result<ZetaInvariants> {
    if let Some(o) = order {
        if o > LADDER_SNAP {
            return Err(Error::Domain(format!(
                "zeta(0) is defined only for order <= 0, got order {o}"
            )));
        }
    }
    let mut poles = Vec::new();
    let mut negatives = BTreeMap::new();
    let mut value_at_zero = 0.0;
    let mut derivative_at_zero = 0.0;
    for e in gamma_coeffs.entries() {
        match snap_integer(e.alpha) {
            None => {
                // simple pole with residue a_{a,0} / (Gamma(a) Gamma(-a))
                let res1 = e.k0 * recip_gamma(e.alpha) * recip_gamma(-e.alpha);
                if res1 != 0.0 {
                    poles.push(LaurentExpansion {
                        point: e.alpha,
                        res2: 0.0,
                        res1,
                        res0: f64::NAN,
                        res_minus1: f64::NAN,
                    });
                }
            }
            Some(j) if j > 0 && j as u32 <= genus => {
                let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
                let res1 = sign * j as f64 * e.k1;
                let res0 = sign * (j as f64 * e.k0 + e.k1);
                if res1 != 0.0 || res0 != 0.0 {
                    poles.push(LaurentExpansion {
                        point: e.alpha,
                        res2: 0.0,
                        res1,
                        res0,
                        res_minus1: f64::NAN,
                    });
                }
            }
            Some(0) => {
                value_at_zero = -e.k1;
                derivative_at_zero = -e.k0;
            }
            Some(j) if j < 0 => {
                let k = (-j) as u32;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                negatives.insert(k, sign * k as f64 * e.k0);
            }
            Some(j) => {
                return Err(Error::InvalidDescriptor(format!(
                    "gamma ladder point {j} exceeds the genus {genus}"
                )))
            }
        }
    }
    // certified zeros: zeta(-k) = 0 for unlisted integers down to the order
    let depth = match order {
        Some(o) => (-o).floor() as u32,
        None => gamma_coeffs
            .min_alpha()
            .map(|a| (-a).floor().max(0.0) as u32)
            .unwrap_or(0),
    };
    for k in 1..=depth {
        negatives.entry(k).or_insert(0.0);
    }
    Ok(ZetaInvariants {
        poles,
        value_at_zero,
        derivative_at_zero,
        values_at_negative_integers: negatives,
    })
}

/// Pole table straight from the heat coefficients:
/// residue `c_{a,0} / Gamma(a)` at each ladder point off the non-positive
/// integers, `zeta(0) = c_{0,0}`, and `zeta(-k) = (-1)^k k! c_{-k,0}` at
/// the negative integers (returned as regular points, zero residue).
/// Double-pole data (nonzero `c_{a,1}`) is rejected: only totally regular
/// sequences are supported end to end.
pub fn zeta_poles_from_heat(heat: &ExpansionCoefficients) -> Result<Vec<LaurentExpansion>> {
    let mut out = Vec::new();
    for e in heat.entries() {
        if e.k1 != 0.0 {
            return Err(Error::InvalidDescriptor(format!(
                "nonzero heat log coefficient at alpha = {} (double pole) rejected in totally regular mode",
                e.alpha
            )));
        }
        match snap_integer(e.alpha) {
            Some(0) => out.push(LaurentExpansion::regular(0.0, e.k0, f64::NAN)),
            Some(j) if j < 0 => {
                let k = -j;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let kfact = gamma(k as f64 + 1.0);
                out.push(LaurentExpansion::regular(
                    e.alpha,
                    sign * kfact * e.k0,
                    f64::NAN,
                ));
            }
            _ => {
                let res1 = e.k0 * recip_gamma(e.alpha);
                out.push(LaurentExpansion {
                    point: e.alpha,
                    res2: 0.0,
                    res1,
                    res0: f64::NAN,
                    res_minus1: f64::NAN,
                });
            }
        }
    }
    Ok(out)
}

/// Full Laurent data of the zeta function of a descriptor at any real
/// point, for descriptors whose zeta function is known in closed form
/// (the built-in rules: `zeta(s) = m scale^{-s} zeta_R(q s)`).
#[derive(Debug, Clone, Copy)]
pub struct ClosedFormZeta {
    mult: f64,
    scale: f64,
    power: f64,
}

impl ClosedFormZeta {
    pub fn for_descriptor(d: &SequenceDescriptor) -> Result<ClosedFormZeta> {
        match &d.source {
            EigenvalueSource::Rule {
                family,
                scale,
                multiplicity,
            } => Ok(ClosedFormZeta {
                mult: *multiplicity as f64,
                scale: *scale,
                power: family.power(),
            }),
            _ => Err(Error::Domain(
                "no closed-form zeta evaluator for this eigenvalue source".into(),
            )),
        }
    }

    /// Laurent expansion at `s0` through the linear term.
    pub fn laurent_at(&self, s0: f64) -> LaurentExpansion {
        let q = self.power;
        let ln_c = self.scale.ln();
        let pref = self.mult * self.scale.powf(-s0);
        if (q * s0 - 1.0).abs() < LADDER_SNAP {
            // pole of zeta_R(q s) at s0 = 1/q; zeta_R(1+u) = 1/u + g0 - g1 u + ...
            let g0 = EULER_GAMMA;
            let g1 = STIELTJES_GAMMA_1;
            LaurentExpansion {
                point: s0,
                res2: 0.0,
                res1: pref / q,
                res0: pref * (g0 - ln_c / q),
                res_minus1: pref * (-g1 * q - ln_c * g0 + ln_c * ln_c / (2.0 * q)),
            }
        } else {
            let z = specfun::zeta(q * s0);
            let dz = specfun::zeta_deriv(q * s0);
            LaurentExpansion::regular(s0, pref * z, pref * (q * dz - ln_c * z))
        }
    }
}

/// Laplacian dictionary: from the heat-trace coefficients `e_j` of a closed
/// manifold of dimension `m` (trace = sum_j e_j t^{(j-m)/2}, kernel of
/// dimension `dim_ker`) to the heat ladder, the log-Gamma ladder and the
/// zeta invariants of the positive spectrum.
///
/// `data` supplies the non-local integer-point values needed by the
/// inversion in even dimensions; for odd m with the usual vanishing odd
/// coefficients nothing extra is needed.
pub fn laplacian_dictionary(
    heat_trace_coeffs: &[f64],
    dim: u32,
    dim_ker: u32,
    data: &IntegerPointData,
) -> Result<(ExpansionCoefficients, ExpansionCoefficients, ZetaInvariants)> {
    if dim == 0 {
        return Err(Error::Domain("manifold dimension must be >= 1".into()));
    }
    if heat_trace_coeffs.len() <= dim as usize {
        return Err(Error::InvalidDescriptor(format!(
            "need heat trace coefficients at least through index m = {dim} (got {})",
            heat_trace_coeffs.len()
        )));
    }
    let mut heat_entries = Vec::new();
    for (h, &e) in heat_trace_coeffs.iter().enumerate() {
        let alpha = (dim as f64 - h as f64) / 2.0;
        let c = if h as u32 == dim { e - dim_ker as f64 } else { e };
        if c != 0.0 || alpha == 0.0 {
            heat_entries.push(CoeffEntry {
                alpha,
                k0: c,
                k1: 0.0,
            });
        }
    }
    let order = (dim as f64 - (heat_trace_coeffs.len() as f64 - 1.0)) / 2.0;
    let heat = ExpansionCoefficients::new(heat_entries)?;
    // gamma side, with NaN marking the entries that need non-local data
    // (zeta'(0) and the finite parts at the positive-integer poles)
    let mut gamma_entries = Vec::new();
    for e in heat.entries() {
        let entry = match snap_integer(e.alpha) {
            Some(0) => CoeffEntry {
                alpha: e.alpha,
                k0: data.derivative_at_zero.map_or(f64::NAN, |d| -d),
                k1: -e.k0,
            },
            Some(m) if m > 0 => {
                let mf = gamma(m as f64 + 1.0);
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let fp = data.finite_part_at_positive_integers.get(&(m as u32));
                CoeffEntry {
                    alpha: e.alpha,
                    k0: fp.map_or(f64::NAN, |fp| sign / m as f64 * (e.k0 / mf - fp)),
                    k1: -sign / mf * e.k0,
                }
            }
            _ => CoeffEntry {
                alpha: e.alpha,
                k0: gamma(-e.alpha) * e.k0,
                k1: 0.0,
            },
        };
        gamma_entries.push(entry);
    }
    let gamma_coeffs = ExpansionCoefficients::new(gamma_entries)?;
    // invariants straight from the heat side (all local except zeta'(0))
    let mut poles = Vec::new();
    let mut negatives = BTreeMap::new();
    let mut value_at_zero = 0.0;
    for e in heat.entries() {
        match snap_integer(e.alpha) {
            Some(0) => value_at_zero = e.k0,
            Some(j) if j < 0 => {
                let k = (-j) as u32;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                negatives.insert(k, sign * gamma(k as f64 + 1.0) * e.k0);
            }
            _ => {
                let res1 = e.k0 * recip_gamma(e.alpha);
                if res1 != 0.0 {
                    poles.push(LaurentExpansion {
                        point: e.alpha,
                        res2: 0.0,
                        res1,
                        res0: f64::NAN,
                        res_minus1: f64::NAN,
                    });
                }
            }
        }
    }
    for k in 1..=(-order.min(0.0)).floor() as u32 {
        negatives.entry(k).or_insert(0.0);
    }
    let invariants = ZetaInvariants {
        poles,
        value_at_zero,
        derivative_at_zero: data.derivative_at_zero.unwrap_or(f64::NAN),
        values_at_negative_integers: negatives,
    };
    Ok((heat, gamma_coeffs, invariants))
}

/// Convenience: invariants of a descriptor straight from its own ladder.
pub fn descriptor_invariants(d: &SequenceDescriptor) -> Result<ZetaInvariants> {
    zeta_invariants_from_gamma(&d.gamma, d.genus, d.order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::SequenceDescriptor;
    use std::f64::consts::PI;

    #[test]
    fn squares_heat_to_gamma_and_back() {
        let s = SequenceDescriptor::squares(1.0, 1);
        // forward: a_{1/2,0} = Gamma(-1/2) sqrt(pi)/2 = -pi
        let data = IntegerPointData {
            finite_part_at_positive_integers: BTreeMap::new(),
            derivative_at_zero: Some(-(2.0 * PI).ln()),
        };
        let g = heat_to_gamma(&s.heat, 0, &data).unwrap();
        assert!((g.entry_at(0.5).unwrap().k0 - -PI).abs() < 1e-13);
        assert!((g.entry_at(0.0).unwrap().k1 - 0.5).abs() < 1e-15);
        assert!((g.entry_at(0.0).unwrap().k0 - (2.0 * PI).ln()).abs() < 1e-15);
        let h = gamma_to_heat(&g).unwrap();
        assert!((h.entry_at(0.5).unwrap().k0 - PI.sqrt() / 2.0).abs() < 1e-14);
        assert!((h.entry_at(0.0).unwrap().k0 - -0.5).abs() < 1e-15);
    }

    #[test]
    fn inversion_at_integer_points_requires_data() {
        let s = SequenceDescriptor::integers(1.0, 1);
        let err = heat_to_gamma(&s.heat, 1, &IntegerPointData::default());
        assert!(err.is_err());
        // with the data (finite part of zeta_R at 1 is gamma, zeta_R'(0) = -log(2pi)/2)
        let mut fp = BTreeMap::new();
        fp.insert(1u32, EULER_GAMMA);
        let data = IntegerPointData {
            finite_part_at_positive_integers: fp,
            derivative_at_zero: Some(-0.5 * (2.0 * PI).ln()),
        };
        let g = heat_to_gamma(&s.heat, 1, &data).unwrap();
        assert!((g.entry_at(1.0).unwrap().k0 - (EULER_GAMMA - 1.0)).abs() < 1e-14);
        assert!((g.entry_at(1.0).unwrap().k1 - 1.0).abs() < 1e-15);
        assert!((g.entry_at(0.0).unwrap().k0 - 0.5 * (2.0 * PI).ln()).abs() < 1e-15);
        assert!((g.entry_at(-1.0).unwrap().k0 - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn roundtrip_on_non_integer_ladder_is_identity() {
        let entries = ExpansionCoefficients::new(vec![
            CoeffEntry {
                alpha: 1.3,
                k0: 2.0,
                k1: 0.0,
            },
            CoeffEntry {
                alpha: 0.4,
                k0: -0.7,
                k1: 0.0,
            },
            CoeffEntry {
                alpha: -0.9,
                k0: 0.123456789,
                k1: 0.0,
            },
        ])
        .unwrap();
        let g = heat_to_gamma(&entries, 1, &IntegerPointData::default()).unwrap();
        let h = gamma_to_heat(&g).unwrap();
        for (a, b) in entries.entries().iter().zip(h.entries()) {
            assert!((a.k0 - b.k0).abs() <= 1e-14 * a.k0.abs());
        }
        // zero maps to zero at a negative integer point
        let z = ExpansionCoefficients::new(vec![CoeffEntry {
            alpha: -1.0,
            k0: 0.0,
            k1: 0.0,
        }])
        .unwrap();
        let g = heat_to_gamma(&z, 0, &IntegerPointData::default()).unwrap();
        assert_eq!(g.entry_at(-1.0).unwrap().k0, 0.0);
    }

    #[test]
    fn squares_invariants() {
        let s = SequenceDescriptor::squares(1.0, 1);
        let inv = descriptor_invariants(&s).unwrap();
        assert_eq!(inv.value_at_zero, -0.5);
        assert!((inv.derivative_at_zero - -(2.0 * PI).ln()).abs() < 1e-15);
        // single pole at 1/2 with residue 1/2 (the residue of zeta_R(2s))
        assert_eq!(inv.poles.len(), 1);
        let p = &inv.poles[0];
        assert_eq!(p.point, 0.5);
        assert!((p.res1 - 0.5).abs() < 1e-13, "{}", p.res1);
    }

    #[test]
    fn integers_invariants_match_riemann_zeta() {
        let s = SequenceDescriptor::integers(1.0, 1);
        let inv = descriptor_invariants(&s).unwrap();
        assert_eq!(inv.value_at_zero, -0.5);
        assert!((inv.derivative_at_zero - -0.5 * (2.0 * PI).ln()).abs() < 1e-15);
        let p = &inv.poles[0];
        assert_eq!(p.point, 1.0);
        assert!((p.res1 - 1.0).abs() < 1e-15);
        assert!((p.res0 - EULER_GAMMA).abs() < 1e-14, "finite part at 1");
        assert!((inv.values_at_negative_integers[&1] - -1.0 / 12.0).abs() < 1e-15);
        assert_eq!(inv.values_at_negative_integers[&2], 0.0);
        assert!((inv.values_at_negative_integers[&3] - 1.0 / 120.0).abs() < 1e-15);
    }

    #[test]
    fn all_zero_coefficients_give_trivial_invariants() {
        let z = ExpansionCoefficients::new(vec![
            CoeffEntry {
                alpha: 0.5,
                k0: 0.0,
                k1: 0.0,
            },
            CoeffEntry {
                alpha: 0.0,
                k0: 0.0,
                k1: 0.0,
            },
        ])
        .unwrap();
        let inv = zeta_invariants_from_gamma(&z, 0, None).unwrap();
        assert_eq!(inv.value_at_zero, 0.0);
        assert_eq!(inv.derivative_at_zero, 0.0);
        assert!(inv.poles.is_empty());
    }

    #[test]
    fn heat_pole_table_matches_gamma_route() {
        for d in [
            SequenceDescriptor::squares(1.0, 1),
            SequenceDescriptor::integers(1.0, 1),
            SequenceDescriptor::squares(1.0, 1).scaled(4.0).unwrap(),
        ] {
            let from_heat = zeta_poles_from_heat(&d.heat).unwrap();
            let from_gamma = descriptor_invariants(&d).unwrap();
            for p in &from_heat {
                if p.res1 != 0.0 {
                    let q = from_gamma
                        .poles
                        .iter()
                        .find(|q| (q.point - p.point).abs() < 1e-12)
                        .expect("pole sets agree");
                    assert!(
                        (p.res1 - q.res1).abs() <= 1e-12 * p.res1.abs(),
                        "residue mismatch at {}",
                        p.point
                    );
                }
                if p.point == 0.0 {
                    assert!((p.res0 - from_gamma.value_at_zero).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn closed_form_laurent_matches_special_functions() {
        let s = SequenceDescriptor::squares(1.0, 1).scaled(4.0).unwrap();
        let z = ClosedFormZeta::for_descriptor(&s).unwrap();
        // zeta(s) = 4^{-s} zeta_R(2s); at s = -1/2: 4^{1/2} zeta_R(-1) = -1/6
        let l = z.laurent_at(-0.5);
        assert!((l.res0 - 2.0 * (-1.0 / 12.0)).abs() < 1e-14);
        // derivative via finite differences of the closed form
        let f = |s: f64| 4.0f64.powf(-s) * specfun::zeta(2.0 * s);
        let h = 1e-6;
        let fd = (f(-0.5 + h) - f(-0.5 - h)) / (2.0 * h);
        assert!((l.res_minus1 - fd).abs() < 1e-8);
        // pole at 1/2: residue (1/2) * 4^{-1/2} = 1/4
        let p = z.laurent_at(0.5);
        assert!((p.res1 - 0.25).abs() < 1e-15);
        // finite part check by numeric limit: zeta(s) - res1/(s - 1/2) near 1/2
        let near = f(0.5 + 1e-6) - 0.25 / 1e-6;
        assert!((p.res0 - near).abs() < 1e-4, "{} vs {near}", p.res0);
    }

    #[test]
    fn circle_dictionary() {
        // S^1 of radius 1: trace coefficients e_0 = sqrt(pi), e_j = 0 (m = 1),
        // kernel dimension 1; zeta(0) = e_m - dim ker = -1.
        let (heat, _gamma, inv) = laplacian_dictionary(
            &[PI.sqrt(), 0.0, 0.0, 0.0],
            1,
            1,
            &IntegerPointData::default(),
        )
        .unwrap();
        assert_eq!(inv.value_at_zero, -1.0);
        assert!((heat.entry_at(0.5).unwrap().k0 - PI.sqrt()).abs() < 1e-15);
        // zeta(-k) = (-1)^k k! e_{m+2k}: all zero here
        assert_eq!(inv.values_at_negative_integers[&1], 0.0);
        // against the closed form zeta(s) = 2 zeta_R(2s): residue at 1/2 is 1
        let p = &inv.poles[0];
        assert!((p.res1 - 1.0).abs() < 1e-13);
        // the multiplicity-2 descriptor describes the same positive spectrum:
        // the dictionary's dim-ker shift removes the kernel from the trace
        let c = SequenceDescriptor::circle(1.0);
        let ci = descriptor_invariants(&c).unwrap();
        assert_eq!(ci.value_at_zero, inv.value_at_zero);
    }

    #[test]
    fn dictionary_negative_integer_values() {
        // fabricated trace with nonzero e_{m+2}: zeta(-1) = (-1)^1 1! e_{m+2}
        let (_, _, inv) = laplacian_dictionary(
            &[1.0, 0.25, 0.0, 0.125],
            1,
            0,
            &IntegerPointData::default(),
        )
        .unwrap();
        assert!((inv.values_at_negative_integers[&1] - -0.125).abs() < 1e-15);
        assert!((inv.value_at_zero - 0.25).abs() < 1e-15);
    }

    #[test]
    fn dictionary_input_validation() {
        assert!(laplacian_dictionary(&[1.0], 1, 0, &IntegerPointData::default()).is_err());
        assert!(laplacian_dictionary(&[1.0, 0.0], 0, 0, &IntegerPointData::default()).is_err());
    }
}
