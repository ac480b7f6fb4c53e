//! Sequences of spectral type as data: positive eigenvalue sequences with
//! their exponent, genus, sector and the two coefficient families of the
//! small-t heat expansion and the large-lambda log-Gamma expansion.
//!
//! A descriptor either generates its eigenvalues by a closed-form rule
//! (`n`, `n^2`, scaled, with a uniform multiplicity), carries an explicit
//! finite list with multiplicities (file spectra), or is the formal sum of
//! two descriptors (the double sequence `lambda_m + mu_n`). Coefficient
//! lists for sums are deliberately not synthesized here; the decomposition
//! engine produces sum invariants from the parts.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::path::Path;

/// Snap tolerance for ladder-point classification (integer membership,
/// coefficient lookup). Built-in ladders are exact dyadic rationals, so the
/// snap only matters for file descriptors.
pub const LADDER_SNAP: f64 = 1e-9;

/// Sector containing the sequence: vertex `c > 0`, opening angle `theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorDescriptor {
    pub theta: f64,
    pub c: f64,
}

/// Closed-form eigenvalue rules available as built-ins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleFamily {
    /// lambda_n = scale * n
    Integers,
    /// lambda_n = scale * n^2
    Squares,
}

impl RuleFamily {
    pub(crate) fn power(self) -> f64 {
        match self {
            RuleFamily::Integers => 1.0,
            RuleFamily::Squares => 2.0,
        }
    }
}

/// Where the eigenvalues of a descriptor come from.
#[derive(Debug, Clone, PartialEq)]
pub enum EigenvalueSource {
    Rule {
        family: RuleFamily,
        scale: f64,
        multiplicity: u32,
    },
    /// Explicit (value, multiplicity) pairs, strictly positive, ascending.
    List(Vec<(f64, u32)>),
    /// Formal double sequence lambda_m + mu_n.
    Sum(Box<SequenceDescriptor>, Box<SequenceDescriptor>),
}

/// One ladder entry: the coefficient of `t^{-alpha}` (heat side) or
/// `(-lambda)^alpha` (Gamma side), split into the plain part `k0` and the
/// logarithmic part `k1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub alpha: f64,
    pub k0: f64,
    pub k1: f64,
}

/// A strictly decreasing exponent ladder with its coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExpansionCoefficients {
    entries: Vec<CoeffEntry>,
}

impl ExpansionCoefficients {
    pub fn new(mut entries: Vec<CoeffEntry>) -> Result<Self> {
        entries.sort_by(|a, b| b.alpha.partial_cmp(&a.alpha).unwrap());
        for w in entries.windows(2) {
            if w[0].alpha - w[1].alpha < LADDER_SNAP {
                return Err(Error::InvalidDescriptor(format!(
                    "ladder not strictly decreasing near alpha = {}",
                    w[0].alpha
                )));
            }
        }
        Ok(ExpansionCoefficients { entries })
    }

    pub fn entries(&self) -> &[CoeffEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn top_alpha(&self) -> Option<f64> {
        self.entries.first().map(|e| e.alpha)
    }

    pub fn min_alpha(&self) -> Option<f64> {
        self.entries.last().map(|e| e.alpha)
    }

    /// Exact entry lookup with snap tolerance.
    pub fn entry_at(&self, alpha: f64) -> Option<&CoeffEntry> {
        self.entries
            .iter()
            .find(|e| (e.alpha - alpha).abs() < LADDER_SNAP)
    }

    /// Coefficient at `alpha`; missing entries are certified zero down to
    /// `order` (`None` means the expansion is complete: zero at every
    /// unlisted point).
    pub fn coefficient(&self, alpha: f64, log_order: usize, order: Option<f64>) -> Result<f64> {
        if let Some(e) = self.entry_at(alpha) {
            return Ok(if log_order == 0 { e.k0 } else { e.k1 });
        }
        match order {
            None => Ok(0.0),
            Some(o) if alpha > o - LADDER_SNAP => Ok(0.0),
            Some(o) => Err(Error::MissingCoefficient(format!(
                "coefficient at alpha = {alpha} lies below the known order {o}"
            ))),
        }
    }

    fn map(&self, f: impl Fn(&CoeffEntry) -> CoeffEntry) -> Self {
        ExpansionCoefficients {
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

/// A sequence of spectral type.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceDescriptor {
    pub source: EigenvalueSource,
    /// Exponent of convergence e(S).
    pub exponent: f64,
    /// Genus g(S) = [e(S)].
    pub genus: u32,
    pub sector: SectorDescriptor,
    /// Heat-expansion coefficients c_{alpha,k}.
    pub heat: ExpansionCoefficients,
    /// Log-Gamma expansion coefficients a_{alpha,k}.
    pub gamma: ExpansionCoefficients,
    /// Order of the expansion: `None` for a complete ladder (every unlisted
    /// coefficient vanishes, remainder exponentially small), `Some(alpha_n)`
    /// when the expansion is only known down to `alpha_n`.
    pub order: Option<f64>,
    /// Documented tail bound for file spectra.
    pub truncation_note: Option<String>,
    /// Short name used in reports.
    pub tag: String,
}

fn entries(v: &[(f64, f64, f64)]) -> Result<ExpansionCoefficients> {
    ExpansionCoefficients::new(
        v.iter()
            .map(|&(alpha, k0, k1)| CoeffEntry { alpha, k0, k1 })
            .collect(),
    )
}

impl SequenceDescriptor {
    /// The positive integers n with lambda_n = scale * n (multiplicity per
    /// entry). Its heat ladder is the Bernoulli expansion of 1/(e^t - 1);
    /// the ladder is carried down to alpha = -11.
    pub fn integers(scale: f64, multiplicity: u32) -> SequenceDescriptor {
        let m = multiplicity as f64;
        // c_{1-2k,0} = B_{2k}/(2k)! and a_{1-2k,0} = B_{2k}/((2k)(2k-1)) for k >= 1
        let heat = vec![
            (1.0, m * 1.0, 0.0),
            (0.0, m * -0.5, 0.0),
            (-1.0, m / 12.0, 0.0),
            (-3.0, m * (-1.0 / 720.0), 0.0),
            (-5.0, m / 30240.0, 0.0),
            (-7.0, m * (-1.0 / 1209600.0), 0.0),
            (-9.0, m / 47900160.0, 0.0),
            (-11.0, m * (-691.0 / 1307674368000.0), 0.0),
        ];
        let gamma_entries = vec![
            (1.0, m * (crate::specfun::EULER_GAMMA - 1.0), m * 1.0),
            (0.0, m * 0.5 * (2.0 * PI).ln(), m * 0.5),
            (-1.0, m / 12.0, 0.0),
            (-3.0, m * (-1.0 / 360.0), 0.0),
            (-5.0, m / 1260.0, 0.0),
            (-7.0, m * (-1.0 / 1680.0), 0.0),
            (-9.0, m / 1188.0, 0.0),
            (-11.0, m * (-691.0 / 360360.0), 0.0),
        ];
        let d = SequenceDescriptor {
            source: EigenvalueSource::Rule {
                family: RuleFamily::Integers,
                scale: 1.0,
                multiplicity,
            },
            exponent: 1.0,
            genus: 1,
            sector: SectorDescriptor {
                theta: PI / 2.0,
                c: 0.5,
            },
            heat: entries(&heat).unwrap(),
            gamma: entries(&gamma_entries).unwrap(),
            order: Some(-11.0),
            truncation_note: None,
            tag: format!("integers{}", mult_tag(multiplicity)),
        };
        if scale != 1.0 {
            d.scaled(scale).unwrap()
        } else {
            d
        }
    }

    /// The squares n^2 with lambda_n = scale * n^2. Heat remainder beyond
    /// the listed ladder is exponentially small, so the ladder is complete.
    pub fn squares(scale: f64, multiplicity: u32) -> SequenceDescriptor {
        let m = multiplicity as f64;
        let heat = vec![(0.5, m * PI.sqrt() / 2.0, 0.0), (0.0, m * -0.5, 0.0)];
        let gamma_entries = vec![
            (0.5, m * -PI, 0.0),
            (0.0, m * (2.0 * PI).ln(), m * 0.5),
        ];
        let d = SequenceDescriptor {
            source: EigenvalueSource::Rule {
                family: RuleFamily::Squares,
                scale: 1.0,
                multiplicity,
            },
            exponent: 0.5,
            genus: 0,
            sector: SectorDescriptor {
                theta: PI / 2.0,
                c: 0.5,
            },
            heat: entries(&heat).unwrap(),
            gamma: entries(&gamma_entries).unwrap(),
            order: None,
            truncation_note: None,
            tag: format!("squares{}", mult_tag(multiplicity)),
        };
        if scale != 1.0 {
            d.scaled(scale).unwrap()
        } else {
            d
        }
    }

    /// Positive Laplacian spectrum of the circle of radius `r`:
    /// eigenvalues (n/r)^2 with multiplicity 2 (kernel dimension 1).
    pub fn circle(radius: f64) -> SequenceDescriptor {
        let mut d = SequenceDescriptor::squares(1.0 / (radius * radius), 2);
        d.tag = format!("circle(r={radius})");
        d
    }

    /// Explicit finite spectrum with required expansion data.
    /// Coefficients are input data here: inferring asymptotics from a finite
    /// list is ill-posed and out of scope.
    #[allow(clippy::too_many_arguments)]
    pub fn from_list(
        eigenvalues: Vec<(f64, u32)>,
        exponent: f64,
        genus: u32,
        sector: SectorDescriptor,
        heat: Vec<(f64, f64, f64)>,
        gamma: Vec<(f64, f64, f64)>,
        order: Option<f64>,
        truncation_note: Option<String>,
    ) -> Result<SequenceDescriptor> {
        let d = SequenceDescriptor {
            source: EigenvalueSource::List(eigenvalues),
            exponent,
            genus,
            sector,
            heat: entries(&heat)?,
            gamma: entries(&gamma)?,
            order,
            truncation_note,
            tag: "file".into(),
        };
        d.validate()?;
        Ok(d)
    }

    /// Structural validation of every invariant the type promises.
    pub fn validate(&self) -> Result<()> {
        if !(self.sector.theta > 0.0 && self.sector.theta < PI) {
            return Err(Error::InvalidDescriptor(format!(
                "sector angle must lie in (0, pi), got {}",
                self.sector.theta
            )));
        }
        if self.sector.c <= 0.0 {
            return Err(Error::InvalidDescriptor("sector vertex must be positive".into()));
        }
        match &self.source {
            EigenvalueSource::List(list) => {
                if list.is_empty() {
                    return Err(Error::InvalidDescriptor(
                        "empty eigenvalue list: a sequence of spectral type accumulates at infinity"
                            .into(),
                    ));
                }
                let mut prev = 0.0;
                for &(v, m) in list {
                    if !(v > 0.0) || !v.is_finite() {
                        return Err(Error::InvalidDescriptor(format!(
                            "non-positive eigenvalue {v}"
                        )));
                    }
                    if v < prev {
                        return Err(Error::InvalidDescriptor(
                            "eigenvalues must be non-decreasing".into(),
                        ));
                    }
                    if m == 0 {
                        return Err(Error::InvalidDescriptor("zero multiplicity".into()));
                    }
                    prev = v;
                }
                if self.heat.is_empty() || self.gamma.is_empty() {
                    return Err(Error::InvalidDescriptor(
                        "file spectra must supply heat and gamma coefficient lists".into(),
                    ));
                }
            }
            EigenvalueSource::Rule { scale, multiplicity, .. } => {
                if !(*scale > 0.0) {
                    return Err(Error::InvalidDescriptor("rule scale must be positive".into()));
                }
                if *multiplicity == 0 {
                    return Err(Error::InvalidDescriptor("zero multiplicity".into()));
                }
            }
            EigenvalueSource::Sum(a, b) => {
                a.validate()?;
                b.validate()?;
            }
        }
        if self.genus != self.exponent.floor() as u32 && !matches!(self.source, EigenvalueSource::Sum(_, _)) {
            return Err(Error::InvalidDescriptor(format!(
                "genus {} does not equal [exponent] = {}",
                self.genus,
                self.exponent.floor()
            )));
        }
        if let Some(a0) = self.gamma.top_alpha() {
            if a0 > self.exponent + LADDER_SNAP {
                return Err(Error::InvalidDescriptor(format!(
                    "leading gamma exponent {a0} exceeds the exponent of convergence {}",
                    self.exponent
                )));
            }
            if a0 >= self.genus as f64 + 1.0 {
                return Err(Error::InvalidDescriptor(format!(
                    "leading gamma exponent {a0} must be below genus + 1"
                )));
            }
        }
        // totally regular: log coefficients only at integer alpha in [0, genus]
        for e in self.gamma.entries() {
            if e.k1 != 0.0 {
                let snapped = e.alpha.round();
                let integer = (e.alpha - snapped).abs() < LADDER_SNAP;
                if !integer || snapped < -LADDER_SNAP || snapped > self.genus as f64 + LADDER_SNAP {
                    return Err(Error::InvalidDescriptor(format!(
                        "log coefficient at alpha = {} violates total regularity",
                        e.alpha
                    )));
                }
            }
        }
        for e in self.heat.entries() {
            if e.k1 != 0.0 {
                return Err(Error::InvalidDescriptor(
                    "heat log coefficients must vanish for totally regular sequences".into(),
                ));
            }
        }
        if let Some(l1) = self.first_eigenvalue() {
            if self.sector.c >= l1 {
                return Err(Error::InvalidDescriptor(format!(
                    "sector vertex {} must lie below the first eigenvalue {l1}",
                    self.sector.c
                )));
            }
        }
        Ok(())
    }

    /// Smallest eigenvalue.
    pub fn first_eigenvalue(&self) -> Option<f64> {
        match &self.source {
            EigenvalueSource::Rule { family, scale, .. } => Some(*scale * 1.0f64.powf(family.power())),
            EigenvalueSource::List(l) => l.first().map(|&(v, _)| v),
            EigenvalueSource::Sum(a, b) => Some(a.first_eigenvalue()? + b.first_eigenvalue()?),
        }
    }

    /// Multiply every eigenvalue by `y > 0`. Exponent, genus and order are
    /// unchanged; the sector vertex and both coefficient ladders transform
    /// by the scaling laws
    /// `c'_{a,0} = y^-a (c_{a,0} + c_{a,1} ln y)`,
    /// `a'_{a,0} = y^-a (a_{a,0} - a_{a,1} ln y)`,
    /// `k1` rows by `y^-a` alone.
    pub fn scaled(&self, y: f64) -> Result<SequenceDescriptor> {
        if !(y > 0.0) || !y.is_finite() {
            return Err(Error::Domain(format!("scale factor must be positive, got {y}")));
        }
        let ln_y = y.ln();
        let heat = self.heat.map(|e| CoeffEntry {
            alpha: e.alpha,
            k0: y.powf(-e.alpha) * (e.k0 + e.k1 * ln_y),
            k1: y.powf(-e.alpha) * e.k1,
        });
        let gamma = self.gamma.map(|e| CoeffEntry {
            alpha: e.alpha,
            k0: y.powf(-e.alpha) * (e.k0 - e.k1 * ln_y),
            k1: y.powf(-e.alpha) * e.k1,
        });
        let source = match &self.source {
            EigenvalueSource::Rule {
                family,
                scale,
                multiplicity,
            } => EigenvalueSource::Rule {
                family: *family,
                scale: scale * y,
                multiplicity: *multiplicity,
            },
            EigenvalueSource::List(l) => {
                EigenvalueSource::List(l.iter().map(|&(v, m)| (v * y, m)).collect())
            }
            EigenvalueSource::Sum(a, b) => {
                EigenvalueSource::Sum(Box::new(a.scaled(y)?), Box::new(b.scaled(y)?))
            }
        };
        Ok(SequenceDescriptor {
            source,
            exponent: self.exponent,
            genus: self.genus,
            sector: SectorDescriptor {
                theta: self.sector.theta,
                c: self.sector.c * y,
            },
            heat,
            gamma,
            order: self.order,
            truncation_note: self.truncation_note.clone(),
            tag: if (y - 1.0).abs() < 1e-15 {
                self.tag.clone()
            } else {
                format!("{}*{y}", self.tag)
            },
        })
    }

    /// Formal sum sequence lambda_m + mu_n. Exponents add, the sector takes
    /// the wider angle and the smaller vertex, and the coefficient lists are
    /// left empty: sum invariants come out of the decomposition engine.
    pub fn sum(&self, other: &SequenceDescriptor) -> Result<SequenceDescriptor> {
        self.validate()?;
        other.validate()?;
        let exponent = self.exponent + other.exponent;
        let order = match (self.order, other.order) {
            (None, None) => None,
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (Some(a), Some(b)) => Some(a.max(b)),
        };
        Ok(SequenceDescriptor {
            source: EigenvalueSource::Sum(Box::new(self.clone()), Box::new(other.clone())),
            exponent,
            genus: exponent.floor() as u32,
            sector: SectorDescriptor {
                theta: self.sector.theta.max(other.sector.theta),
                c: self.sector.c.min(other.sector.c),
            },
            heat: ExpansionCoefficients::default(),
            gamma: ExpansionCoefficients::default(),
            order,
            truncation_note: None,
            tag: format!("{}+{}", self.tag, other.tag),
        })
    }

    /// Heat coefficient c_{alpha,k} with certified-absence semantics.
    pub fn heat_coefficient(&self, alpha: f64, log_order: usize) -> Result<f64> {
        self.heat.coefficient(alpha, log_order, self.order)
    }

    /// Gamma coefficient a_{alpha,k} with certified-absence semantics.
    pub fn gamma_coefficient(&self, alpha: f64, log_order: usize) -> Result<f64> {
        self.gamma.coefficient(alpha, log_order, self.order)
    }

    /// The heat function f(t, S) = 1 + sum exp(-t lambda_n), with a
    /// certified geometric tail bound. For sum sequences the product
    /// identity f - 1 = prod (f_i - 1) is used, which is exact.
    pub fn heat_function(&self, t: f64) -> Result<f64> {
        Ok(1.0 + self.heat_sum_bounded(t)?.0)
    }

    /// sum exp(-t lambda_n) together with the certified tail bound.
    pub fn heat_sum_bounded(&self, t: f64) -> Result<(f64, f64)> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("heat function needs t > 0, got {t}")));
        }
        match &self.source {
            EigenvalueSource::Rule {
                family,
                scale,
                multiplicity,
            } => {
                let q = family.power();
                let m = *multiplicity as f64;
                let mut sum = Neumaier::default();
                let mut n = 1u64;
                loop {
                    let lam = scale * (n as f64).powf(q);
                    let term = (-t * lam).exp();
                    sum.add(m * term);
                    // ratio of successive terms is at most exp(-t*scale*((n+1)^q - n^q))
                    let gap = scale * ((n as f64 + 1.0).powf(q) - (n as f64).powf(q));
                    let r = (-t * gap).exp();
                    let tail = m * term * r / (1.0 - r);
                    if tail < 1e-18 * sum.value().max(1e-300) || tail < 1e-300 {
                        return Ok((sum.value(), tail));
                    }
                    n += 1;
                    if n > 100_000_000 {
                        return Err(Error::Precision {
                            what: format!("heat sum at t = {t}"),
                            achieved: tail,
                        });
                    }
                }
            }
            EigenvalueSource::List(list) => {
                let mut sum = Neumaier::default();
                for &(v, m) in list {
                    sum.add(m as f64 * (-t * v).exp());
                }
                let last = list.last().unwrap().0;
                let omitted = (-t * last).exp();
                if omitted > 1e-16 {
                    return Err(Error::Precision {
                        what: format!(
                            "heat tail beyond the listed spectrum is not certifiable at t = {t}"
                        ),
                        achieved: omitted,
                    });
                }
                Ok((sum.value(), omitted))
            }
            EigenvalueSource::Sum(a, b) => {
                let (fa, ea) = a.heat_sum_bounded(t)?;
                let (fb, eb) = b.heat_sum_bounded(t)?;
                Ok((fa * fb, ea * fb.abs() + eb * fa.abs() + ea * eb))
            }
        }
    }

    /// Ascending stream of (eigenvalue, multiplicity) pairs.
    pub fn eigenvalues(&self) -> EigenvalueStream {
        EigenvalueStream::new(self)
    }

    /// Smallest positive gap of the listed gamma ladder; used to lay out the
    /// abstract ladder grid when a decomposition plan is reported.
    pub fn ladder_step(&self) -> f64 {
        let e = self.gamma.entries();
        let mut step = f64::INFINITY;
        for w in e.windows(2) {
            step = step.min(w[0].alpha - w[1].alpha);
        }
        if !step.is_finite() {
            0.5
        } else {
            step
        }
    }

    // ---- file format ----

    pub fn to_json(&self) -> Result<String> {
        let file = DescriptorFile::try_from(self)?;
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<SequenceDescriptor> {
        let file: DescriptorFile = serde_json::from_str(text)?;
        let d = file.into_descriptor()?;
        d.validate()?;
        Ok(d)
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    pub fn read_file(path: &Path) -> Result<SequenceDescriptor> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        SequenceDescriptor::from_json(&text)
    }
}

fn mult_tag(m: u32) -> String {
    if m == 1 {
        String::new()
    } else {
        format!("(x{m})")
    }
}

/// Neumaier-compensated accumulator; keeps long sums at working precision
/// and makes block summation order-independent of thread count.
#[derive(Debug, Default, Clone, Copy)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

// ---- ascending enumeration of eigenvalues ----

#[derive(Debug)]
enum StreamState {
    Rule {
        family: RuleFamily,
        scale: f64,
        multiplicity: u32,
        next_n: u64,
    },
    List {
        items: Vec<(f64, u32)>,
        next: usize,
    },
    /// Value-ordered merge of the double sequence through a bounded frontier
    /// of index pairs (the classic sorted X+Y expansion).
    Sum {
        left: Box<EigenvalueStream>,
        right: Box<EigenvalueStream>,
        heap: BinaryHeap<FrontierEntry>,
    },
}

#[derive(Debug, PartialEq)]
struct FrontierEntry {
    value: f64,
    mult: u64,
    i: usize,
    j: usize,
}

impl Eq for FrontierEntry {}

impl Ord for FrontierEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // min-heap by value; ties broken by indices for determinism
        other
            .value
            .partial_cmp(&self.value)
            .unwrap()
            .then(other.i.cmp(&self.i))
            .then(other.j.cmp(&self.j))
    }
}

impl PartialOrd for FrontierEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ascending (value, multiplicity) stream with random access by index.
#[derive(Debug)]
pub struct EigenvalueStream {
    produced: Vec<(f64, u64)>,
    state: StreamState,
    exhausted: bool,
}

impl EigenvalueStream {
    fn new(d: &SequenceDescriptor) -> Self {
        let state = match &d.source {
            EigenvalueSource::Rule {
                family,
                scale,
                multiplicity,
            } => StreamState::Rule {
                family: *family,
                scale: *scale,
                multiplicity: *multiplicity,
                next_n: 1,
            },
            EigenvalueSource::List(items) => StreamState::List {
                items: items.clone(),
                next: 0,
            },
            EigenvalueSource::Sum(a, b) => {
                let left = Box::new(a.eigenvalues());
                let right = Box::new(b.eigenvalues());
                StreamState::Sum {
                    left,
                    right,
                    heap: BinaryHeap::new(),
                }
            }
        };
        let mut s = EigenvalueStream {
            produced: Vec::new(),
            state,
            exhausted: false,
        };
        if let StreamState::Sum { left, right, heap } = &mut s.state {
            if let (Some((lv, lm)), Some((rv, rm))) = (left.get(0), right.get(0)) {
                heap.push(FrontierEntry {
                    value: lv + rv,
                    mult: lm * rm,
                    i: 0,
                    j: 0,
                });
            }
        }
        s
    }

    /// (value, multiplicity) of the idx-th distinct eigenvalue, ascending.
    pub fn get(&mut self, idx: usize) -> Option<(f64, u64)> {
        while self.produced.len() <= idx && !self.exhausted {
            self.advance();
        }
        self.produced.get(idx).copied()
    }

    fn advance(&mut self) {
        match &mut self.state {
            StreamState::Rule {
                family,
                scale,
                multiplicity,
                next_n,
            } => {
                let v = *scale * (*next_n as f64).powf(family.power());
                self.produced.push((v, *multiplicity as u64));
                *next_n += 1;
            }
            StreamState::List { items, next } => {
                if *next >= items.len() {
                    self.exhausted = true;
                } else {
                    let (v, m) = items[*next];
                    self.produced.push((v, m as u64));
                    *next += 1;
                }
            }
            StreamState::Sum { left, right, heap } => {
                let Some(top) = heap.pop() else {
                    self.exhausted = true;
                    return;
                };
                // merge equal values produced by different index pairs
                let mut value = top.value;
                let mut mult = top.mult;
                push_neighbors(left, right, heap, top.i, top.j);
                while let Some(peek) = heap.peek() {
                    if peek.value == value {
                        let e = heap.pop().unwrap();
                        mult += e.mult;
                        push_neighbors(left, right, heap, e.i, e.j);
                    } else {
                        break;
                    }
                }
                let _ = &mut value;
                self.produced.push((value, mult));
            }
        }
    }
}

fn push_neighbors(
    left: &mut EigenvalueStream,
    right: &mut EigenvalueStream,
    heap: &mut BinaryHeap<FrontierEntry>,
    i: usize,
    j: usize,
) {
    if j == 0 {
        if let (Some((lv, lm)), Some((rv, rm))) = (left.get(i + 1), right.get(0)) {
            heap.push(FrontierEntry {
                value: lv + rv,
                mult: lm * rm,
                i: i + 1,
                j: 0,
            });
        }
    }
    if let (Some((lv, lm)), Some((rv, rm))) = (left.get(i), right.get(j + 1)) {
        heap.push(FrontierEntry {
            value: lv + rv,
            mult: lm * rm,
            i,
            j: j + 1,
        });
    }
}

// ---- serialized form ----

#[derive(Debug, Serialize, Deserialize)]
struct RuleSpec {
    family: RuleFamily,
    scale: f64,
    #[serde(default = "one")]
    multiplicity: u32,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum OrderField {
    Infinite(String),
    Finite(f64),
}

#[derive(Debug, Serialize, Deserialize)]
struct DescriptorFile {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    rule: Option<RuleSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenvalues: Option<Vec<(f64, u32)>>,
    exponent: f64,
    genus: u32,
    sector: SectorDescriptor,
    heat_coeffs: Vec<(f64, f64, f64)>,
    gamma_coeffs: Vec<(f64, f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<OrderField>,
    #[serde(skip_serializing_if = "Option::is_none")]
    truncation_note: Option<String>,
}

impl TryFrom<&SequenceDescriptor> for DescriptorFile {
    type Error = Error;

    fn try_from(d: &SequenceDescriptor) -> Result<DescriptorFile> {
        let (kind, rule, eigenvalues) = match &d.source {
            EigenvalueSource::Rule {
                family,
                scale,
                multiplicity,
            } => (
                "rule".to_string(),
                Some(RuleSpec {
                    family: *family,
                    scale: *scale,
                    multiplicity: *multiplicity,
                }),
                None,
            ),
            EigenvalueSource::List(l) => ("list".to_string(), None, Some(l.clone())),
            EigenvalueSource::Sum(_, _) => {
                return Err(Error::InvalidDescriptor(
                    "sum descriptors are in-memory combinators and are not serialized".into(),
                ))
            }
        };
        Ok(DescriptorFile {
            kind,
            rule,
            eigenvalues,
            exponent: d.exponent,
            genus: d.genus,
            sector: d.sector,
            heat_coeffs: d.heat.entries().iter().map(|e| (e.alpha, e.k0, e.k1)).collect(),
            gamma_coeffs: d.gamma.entries().iter().map(|e| (e.alpha, e.k0, e.k1)).collect(),
            order: Some(match d.order {
                None => OrderField::Infinite("infinite".into()),
                Some(o) => OrderField::Finite(o),
            }),
            truncation_note: d.truncation_note.clone(),
        })
    }
}

impl DescriptorFile {
    fn into_descriptor(self) -> Result<SequenceDescriptor> {
        let source = match self.kind.as_str() {
            "rule" => {
                let r = self.rule.ok_or_else(|| {
                    Error::InvalidDescriptor("kind \"rule\" requires a rule object".into())
                })?;
                EigenvalueSource::Rule {
                    family: r.family,
                    scale: r.scale,
                    multiplicity: r.multiplicity,
                }
            }
            "list" => EigenvalueSource::List(self.eigenvalues.ok_or_else(|| {
                Error::InvalidDescriptor("kind \"list\" requires an eigenvalues array".into())
            })?),
            other => {
                return Err(Error::InvalidDescriptor(format!(
                    "unknown descriptor kind {other:?}"
                )))
            }
        };
        let order = match self.order {
            None => self.heat_coeffs.iter().map(|e| e.0).fold(None, |acc: Option<f64>, a| {
                Some(acc.map_or(a, |b| b.min(a)))
            }),
            Some(OrderField::Finite(o)) => Some(o),
            Some(OrderField::Infinite(s)) if s == "infinite" => None,
            Some(OrderField::Infinite(s)) => {
                return Err(Error::InvalidDescriptor(format!("bad order field {s:?}")))
            }
        };
        Ok(SequenceDescriptor {
            source,
            exponent: self.exponent,
            genus: self.genus,
            sector: self.sector,
            heat: entries(&self.heat_coeffs)?,
            gamma: entries(&self.gamma_coeffs)?,
            order,
            truncation_note: self.truncation_note,
            tag: "file".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_squares_coefficients_match_tabulated_values() {
        let s = SequenceDescriptor::squares(1.0, 1);
        assert_eq!(s.heat_coefficient(0.5, 0).unwrap(), PI.sqrt() / 2.0);
        assert_eq!(s.heat_coefficient(0.0, 0).unwrap(), -0.5);
        assert_eq!(s.gamma_coefficient(0.5, 0).unwrap(), -PI);
        assert_eq!(s.gamma_coefficient(0.0, 1).unwrap(), 0.5);
        assert_eq!(s.gamma_coefficient(0.0, 0).unwrap(), (2.0 * PI).ln());
        // complete ladder: certified zero below
        assert_eq!(s.heat_coefficient(-0.5, 0).unwrap(), 0.0);
        s.validate().unwrap();
    }

    #[test]
    fn builtin_integers_ladder_from_bernoulli_expansion() {
        // sum exp(-nt) = 1/(e^t - 1) = t^-1 - 1/2 + t/12 - t^3/720 + ...
        let s = SequenceDescriptor::integers(1.0, 1);
        assert_eq!(s.heat_coefficient(1.0, 0).unwrap(), 1.0);
        assert_eq!(s.heat_coefficient(0.0, 0).unwrap(), -0.5);
        assert_eq!(s.heat_coefficient(-1.0, 0).unwrap(), 1.0 / 12.0);
        assert_eq!(s.heat_coefficient(-2.0, 0).unwrap(), 0.0);
        assert_eq!(s.heat_coefficient(-3.0, 0).unwrap(), -1.0 / 720.0);
        assert!(s.heat_coefficient(-13.0, 0).is_err());
        s.validate().unwrap();
    }

    #[test]
    fn empty_list_is_rejected() {
        let r = SequenceDescriptor::from_list(
            vec![],
            0.5,
            0,
            SectorDescriptor { theta: PI / 2.0, c: 0.5 },
            vec![(0.5, 1.0, 0.0)],
            vec![(0.5, 1.0, 0.0)],
            Some(0.0),
            None,
        );
        assert!(r.is_err());
    }

    #[test]
    fn nonpositive_eigenvalue_is_rejected() {
        let r = SequenceDescriptor::from_list(
            vec![(-1.0, 1)],
            0.5,
            0,
            SectorDescriptor { theta: PI / 2.0, c: 0.5 },
            vec![(0.5, 1.0, 0.0)],
            vec![(0.5, 1.0, 0.0)],
            Some(0.0),
            None,
        );
        assert!(r.is_err());
    }

    #[test]
    fn scaling_transforms_coefficients() {
        // c'_{1/2,0} = y^{-1/2} sqrt(pi)/2 at y = 4
        let s = SequenceDescriptor::squares(1.0, 1).scaled(4.0).unwrap();
        assert!((s.heat_coefficient(0.5, 0).unwrap() - PI.sqrt() / 4.0).abs() < 1e-15);
        // zeta(0) data unchanged: a_{0,1} stays 1/2
        assert_eq!(s.gamma_coefficient(0.0, 1).unwrap(), 0.5);
        // zeta'(0) shifts: a'_{0,0} = log 2pi - (1/2) log y
        let expect = (2.0 * PI).ln() - 0.5 * 4.0f64.ln();
        assert!((s.gamma_coefficient(0.0, 0).unwrap() - expect).abs() < 1e-15);
        // identity scaling is the identity
        let id = SequenceDescriptor::squares(1.0, 1).scaled(1.0).unwrap();
        assert_eq!(id, SequenceDescriptor::squares(1.0, 1));
        assert!(SequenceDescriptor::squares(1.0, 1).scaled(-2.0).is_err());
    }

    #[test]
    fn heat_function_squares_direct_value() {
        // sum exp(-n^2) to machine tail
        let s = SequenceDescriptor::squares(1.0, 1);
        let mut direct = 0.0;
        for n in (1..=12u32).rev() {
            direct += (-((n * n) as f64)).exp();
        }
        let f = s.heat_function(1.0).unwrap();
        assert!((f - 1.0 - direct).abs() < 1e-15, "{}", f - 1.0 - direct);
        assert!((f - 1.0 - 0.386_318_6).abs() < 1e-6);
    }

    #[test]
    fn heat_function_large_t_tends_to_one() {
        let s = SequenceDescriptor::integers(1.0, 1);
        assert!((s.heat_function(700.0).unwrap() - 1.0).abs() < 1e-300);
        assert!(s.heat_function(0.0).is_err());
        assert!(s.heat_function(-1.0).is_err());
    }

    #[test]
    fn heat_product_identity_for_sum_source() {
        // f(t, S1+S2) - 1 = (f1-1)(f2-1); the sum source uses the identity,
        // the reference here is a brute-force double sum over the enumerator.
        let s = SequenceDescriptor::squares(1.0, 1);
        let sum = s.sum(&s).unwrap();
        let t = 0.7;
        let f = sum.heat_function(t).unwrap() - 1.0;
        let mut stream = sum.eigenvalues();
        let mut brute = 0.0;
        let mut idx = 0;
        while let Some((v, m)) = stream.get(idx) {
            if t * v > 45.0 {
                break;
            }
            brute += m as f64 * (-t * v).exp();
            idx += 1;
        }
        assert!((f - brute).abs() < 1e-14, "{f} vs {brute}");
    }

    #[test]
    fn sum_descriptor_structure() {
        let s = SequenceDescriptor::squares(1.0, 1);
        let sum = s.sum(&s).unwrap();
        assert_eq!(sum.exponent, 1.0);
        assert_eq!(sum.genus, 1);
        let y2 = s.scaled(0.25).unwrap();
        let sum2 = y2.sum(&s).unwrap();
        assert_eq!(sum2.sector.c, 0.125); // min(0.5 * 0.25, 0.5)
        assert!(sum2.heat.is_empty());
    }

    #[test]
    fn integer_pair_enumeration_counts_multiplicity() {
        // {m+n}: value k has multiplicity k-1
        let s = SequenceDescriptor::integers(1.0, 1);
        let sum = s.sum(&s).unwrap();
        let mut stream = sum.eigenvalues();
        for idx in 0..40usize {
            let (v, m) = stream.get(idx).unwrap();
            assert_eq!(v, (idx + 2) as f64);
            assert_eq!(m, (idx + 1) as u64);
        }
    }

    #[test]
    fn descriptor_roundtrip_is_bit_exact() {
        let s = SequenceDescriptor::squares(1.0, 2).scaled(1.7).unwrap();
        let json = s.to_json().unwrap();
        let back = SequenceDescriptor::from_json(&json).unwrap();
        assert_eq!(back.heat, s.heat);
        assert_eq!(back.gamma, s.gamma);
        assert_eq!(back.exponent, s.exponent);
        assert_eq!(back.order, s.order);
        let l = SequenceDescriptor::from_list(
            vec![(1.0, 2), (4.0, 2), (9.0, 2)],
            0.5,
            0,
            SectorDescriptor { theta: PI / 2.0, c: 0.5 },
            vec![(0.5, PI.sqrt(), 0.0), (0.0, -1.0, 0.0)],
            vec![(0.5, -2.0 * PI, 0.0), (0.0, 2.0 * (2.0 * PI).ln(), 1.0)],
            None,
            Some("exact circle spectrum head".into()),
        )
        .unwrap();
        let back = SequenceDescriptor::from_json(&l.to_json().unwrap()).unwrap();
        assert_eq!(back.source, l.source);
        assert_eq!(back.heat, l.heat);
    }

    #[test]
    fn malformed_json_is_an_error() {
        assert!(SequenceDescriptor::from_json("{\"kind\": \"rule\"}").is_err());
        assert!(SequenceDescriptor::from_json("not json").is_err());
    }
}
