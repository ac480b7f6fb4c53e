//! Command-line front end for the spectral-zeta library: invariant tables,
//! sum-sequence decomposition, eta functions, determinants and the
//! brute-force verification suite.

mod report;

use clap::{Parser, Subcommand};
use report::RunReport;
use spectral_zeta::applications::{
    dedekind_eta, det_circle_times_m, det_circle_times_m_engine, det_product, det_zeta,
    epstein_expansion, eta_functional_equation_residual, generalized_eta, kronecker_constant,
    ManifoldData,
};
use spectral_zeta::invariants::descriptor_invariants;
use spectral_zeta::oracle::{self, AppendixIdentity, OracleTarget};
use spectral_zeta::sumzeta::{plan_decomposition, sum_zeta_deriv_routes, sum_zeta_zero_routes};
use spectral_zeta::{Error, SequenceDescriptor};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_PARSE: u8 = 2;
const EXIT_CROSS_CHECK: u8 = 3;
const EXIT_PRECISION: u8 = 4;

/// Zeta-regularized spectral invariants of eigenvalue sequences.
///
/// Sequence arguments accept either a descriptor JSON file or a built-in
/// name: `squares`, `integers`, `circle:<radius>`.
#[derive(Parser)]
#[command(name = "spectral-zeta", version, about)]
struct Cli {
    /// Write the report as RFC-4180 CSV (17 significant digits) as well.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,

    /// Override every cross-check tolerance in this run.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Worker threads for the deterministic block summations
    /// (SPECTRAL_ZETA_THREADS is the fallback; results are identical for
    /// any thread count).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// zeta(0), zeta'(0) and the pole table of one sequence.
    Invariants {
        seq: String,
        /// Also run the Mellin continuation oracle and cross-check.
        #[arg(long)]
        oracle: bool,
    },
    /// zeta(0) and zeta'(0) of the sum sequence S1 + y^2 S2.
    Sum {
        seq1: String,
        seq2: String,
        /// Extra eigenvalue scaling y^2 applied to the second sequence.
        #[arg(long, default_value_t = 1.0)]
        y: f64,
        /// Also run the continuation oracle on the pair and cross-check.
        #[arg(long)]
        oracle: bool,
    },
    /// Dedekind eta and the generalized eta function of a sequence.
    Eta {
        #[arg(long)]
        y: f64,
        /// Sequence for the generalized eta (default: squares).
        #[arg(long)]
        seq: Option<String>,
    },
    /// Epstein zeta expansion at 0 and the Kronecker limit constant.
    Kronecker {
        #[arg(long)]
        y: f64,
    },
    /// Zeta determinant of a product manifold from two manifold arguments.
    DetProduct { m1: String, m2: String },
    /// Determinant of S^1_{1/y} x M by the closed display, engine-checked.
    DetCircle {
        #[arg(long)]
        y: f64,
        m: String,
    },
    /// Reproduce the closed-form kernel integrals by contour quadrature.
    VerifyAppendix,
    /// Write a built-in sequence descriptor to a JSON file.
    WriteDescriptor {
        name: String,
        #[arg(short, long)]
        out: PathBuf,
    },
}

fn load_descriptor(arg: &str) -> Result<SequenceDescriptor, Error> {
    match arg {
        "squares" => Ok(SequenceDescriptor::squares(1.0, 1)),
        "integers" => Ok(SequenceDescriptor::integers(1.0, 1)),
        _ => {
            if let Some(r) = arg.strip_prefix("circle:") {
                let radius: f64 = r
                    .parse()
                    .map_err(|_| Error::Io(format!("bad circle radius {r:?}")))?;
                Ok(SequenceDescriptor::circle(radius))
            } else {
                SequenceDescriptor::read_file(PathBuf::from(arg).as_path())
            }
        }
    }
}

fn load_manifold(arg: &str) -> Result<ManifoldData, Error> {
    if let Some(r) = arg.strip_prefix("circle:") {
        let radius: f64 = r
            .parse()
            .map_err(|_| Error::Io(format!("bad circle radius {r:?}")))?;
        return ManifoldData::circle(radius);
    }
    // manifold files are sequence descriptors of the positive spectrum;
    // the zeta data at 0 comes from the ladder and the data at -1/2 from
    // the numeric continuation
    let spectrum = load_descriptor(arg)?;
    let inv = descriptor_invariants(&spectrum)?;
    let half = oracle::zeta_continued(OracleTarget::Single(&spectrum), -0.5, 0)?;
    let half_deriv = oracle::zeta_continued(OracleTarget::Single(&spectrum), -0.5, 1)?;
    Ok(ManifoldData {
        dim_ker: 1,
        zeta0: inv.value_at_zero,
        zeta_deriv0: inv.derivative_at_zero,
        at_minus_half: spectral_zeta::LaurentExpansion::regular(
            -0.5,
            half.value,
            half_deriv.value,
        ),
        spectrum,
    })
}

fn run(cli: &Cli) -> Result<RunReport, Error> {
    let tol = |default: f64| cli.tol.unwrap_or(default);
    match &cli.cmd {
        Cmd::Invariants {
            seq,
            oracle: with_oracle,
        } => {
            let d = load_descriptor(seq)?;
            let inv = descriptor_invariants(&d)?;
            let mut rep = RunReport::new("invariants");
            rep.input("sequence", &d.tag);
            rep.result("zeta(0)", inv.value_at_zero, "coefficient ladder");
            rep.result("zeta'(0)", inv.derivative_at_zero, "coefficient ladder");
            for p in &inv.poles {
                rep.result(
                    &format!("Res_1 zeta({})", p.point),
                    p.res1,
                    "coefficient ladder",
                );
                if p.res0.is_finite() {
                    rep.result(
                        &format!("FP zeta({})", p.point),
                        p.res0,
                        "coefficient ladder",
                    );
                }
            }
            for (k, v) in &inv.values_at_negative_integers {
                rep.result(&format!("zeta(-{k})"), *v, "coefficient ladder");
            }
            if *with_oracle {
                let z0 = oracle::zeta_continued(OracleTarget::Single(&d), 0.0, 0)?;
                let d0 = oracle::zeta_continued(OracleTarget::Single(&d), 0.0, 1)?;
                rep.result_with_bound(
                    "zeta(0)",
                    z0.value,
                    "oracle continuation",
                    z0.error_estimate,
                );
                rep.result_with_bound(
                    "zeta'(0)",
                    d0.value,
                    "oracle continuation",
                    d0.error_estimate,
                );
                rep.check(
                    "zeta(0) ladder vs oracle",
                    inv.value_at_zero,
                    z0.value,
                    tol(1e-7),
                );
                rep.check(
                    "zeta'(0) ladder vs oracle",
                    inv.derivative_at_zero,
                    d0.value,
                    tol(1e-6),
                );
            }
            Ok(rep)
        }
        Cmd::Sum {
            seq1,
            seq2,
            y,
            oracle: with_oracle,
        } => {
            let s1 = load_descriptor(seq1)?;
            let s2 = load_descriptor(seq2)?.scaled(y * y)?;
            let plan = plan_decomposition(&s1, &s2).or_else(|_| plan_decomposition(&s2, &s1))?;
            let (z_pair, z_inv) = sum_zeta_zero_routes(&s1, &s2)?;
            let (d_coeff, d_inv) = sum_zeta_deriv_routes(&s1, &s2)?;
            let mut rep = RunReport::new("sum");
            rep.input("S1", &s1.tag);
            rep.input("S2", &s2.tag);
            rep.input("kappa", plan.kappa);
            rep.input("length", plan.length);
            rep.input(
                "sigma ladder",
                plan.sigma_ladder
                    .iter()
                    .map(|s| format!("{}", s + 0.0))
                    .collect::<Vec<_>>()
                    .join(", "),
            );
            rep.result("zeta(0)", z_pair, "heat pairing");
            rep.result("zeta(0)", z_inv, "invariant form");
            rep.result("zeta'(0)", d_coeff, "coefficient form");
            rep.result("zeta'(0)", d_inv, "invariant form");
            rep.check("zeta(0) pairing vs invariants", z_pair, z_inv, tol(1e-12));
            rep.check(
                "zeta'(0) coefficients vs invariants",
                d_coeff,
                d_inv,
                tol(1e-10),
            );
            if *with_oracle {
                let z0 = oracle::zeta_continued(OracleTarget::Pair(&s1, &s2), 0.0, 0)?;
                let d0 = oracle::zeta_continued(OracleTarget::Pair(&s1, &s2), 0.0, 1)?;
                rep.result_with_bound(
                    "zeta(0)",
                    z0.value,
                    "oracle continuation",
                    z0.error_estimate,
                );
                rep.result_with_bound(
                    "zeta'(0)",
                    d0.value,
                    "oracle continuation",
                    d0.error_estimate,
                );
                rep.check("zeta(0) formula vs oracle", z_pair, z0.value, tol(1e-6));
                rep.check("zeta'(0) formula vs oracle", d_coeff, d0.value, tol(1e-5));
            }
            Ok(rep)
        }
        Cmd::Eta { y, seq } => {
            let d = match seq {
                Some(s) => load_descriptor(s)?,
                None => SequenceDescriptor::squares(1.0, 1),
            };
            let mut rep = RunReport::new("eta");
            rep.input("y", y);
            rep.input("sequence", &d.tag);
            let classical = dedekind_eta(*y)?;
            rep.result("log eta_D(iy)", classical.log_value, "q-product");
            rep.result("eta_D(iy)", classical.log_value.exp(), "q-product");
            let gen = generalized_eta(&d, *y)?;
            rep.result("log eta(iy, S)", gen.log_value, "invariant display");
            let resid = eta_functional_equation_residual(&d, *y)?;
            rep.check("functional equation", resid, 0.0, tol(1e-10));
            Ok(rep)
        }
        Cmd::Kronecker { y } => {
            let (value, deriv) = epstein_expansion(*y)?;
            let k = kronecker_constant(*y)?;
            let mut rep = RunReport::new("kronecker");
            rep.input("y", y);
            rep.result("zeta(0, 0, y)", value, "assembled");
            rep.result("s-coefficient", deriv, "assembled");
            rep.result("-2(log 2pi + 2 log eta_D)", k, "closed form");
            rep.check("zeta(0,0,y) = -1", value, -1.0, tol(1e-14));
            rep.check("Kronecker limit constant", deriv, k, tol(1e-9));
            Ok(rep)
        }
        Cmd::DetProduct { m1, m2 } => {
            let a = load_manifold(m1)?;
            let b = load_manifold(m2)?;
            let sum_deriv =
                spectral_zeta::sumzeta::sum_zeta_deriv_at_zero(&a.spectrum, &b.spectrum)?;
            let det = det_product(&a, &b, sum_deriv);
            let mut rep = RunReport::new("det-product");
            rep.input("M1", &a.spectrum.tag);
            rep.input("M2", &b.spectrum.tag);
            rep.result("det M1", det_zeta(a.zeta_deriv0), "exp(-zeta'(0))");
            rep.result("det M2", det_zeta(b.zeta_deriv0), "exp(-zeta'(0))");
            rep.result("zeta'(0, S1+S2)", sum_deriv, "decomposition engine");
            rep.result("det M1 x M2", det, "product formula");
            Ok(rep)
        }
        Cmd::DetCircle { y, m } => {
            let m = load_manifold(m)?;
            let display = det_circle_times_m(*y, &m)?;
            let engine = det_circle_times_m_engine(*y, &m)?;
            let mut rep = RunReport::new("det-circle");
            rep.input("y", y);
            rep.input("M", &m.spectrum.tag);
            rep.result("det S^1_(1/y) x M", display, "closed display");
            rep.result("det S^1_(1/y) x M", engine, "decomposition engine");
            rep.check("display vs engine", display, engine, tol(1e-8));
            Ok(rep)
        }
        Cmd::VerifyAppendix => {
            let mut rep = RunReport::new("verify-appendix");
            let t = tol(1e-6);
            for &a in &[-1.0, -0.5, 0.75] {
                let r = oracle::verify_appendix(AppendixIdentity::B1, a, 0.0)?;
                rep.check(&format!("b1 a={a}"), r, 0.0, t);
                let r = oracle::verify_appendix(AppendixIdentity::B2, a, 0.0)?;
                rep.check(&format!("b2 a={a}"), r, 0.0, t);
            }
            for &a in &[0.5, 1.0, 1.5] {
                for &s in &[0.5, 1.0, 1.5] {
                    let r = oracle::verify_appendix(AppendixIdentity::B4, a, s)?;
                    rep.check(&format!("b4 a={a} s={s}"), r, 0.0, t);
                    let r = oracle::verify_appendix(AppendixIdentity::B5, a, s)?;
                    rep.check(&format!("b5 a={a} s={s}"), r, 0.0, t);
                }
            }
            for &s in &[0.75, 1.0, 1.5] {
                let r = oracle::verify_appendix(AppendixIdentity::B7, 0.0, s)?;
                rep.check(&format!("b7 s={s}"), r, 0.0, t);
            }
            Ok(rep)
        }
        Cmd::WriteDescriptor { name, out } => {
            let d = load_descriptor(name)?;
            d.write_file(out)?;
            let mut rep = RunReport::new("write-descriptor");
            rep.input("name", name);
            rep.input("out", out.display());
            Ok(rep)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .or_else(|| {
            std::env::var("SPECTRAL_ZETA_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1);
    spectral_zeta::parallel::set_threads(threads);
    match run(&cli) {
        Ok(rep) => {
            rep.print_table();
            if let Some(path) = &cli.csv {
                if let Err(e) = rep.write_csv(path) {
                    eprintln!("error: cannot write csv: {e}");
                    return ExitCode::from(EXIT_PARSE);
                }
            }
            if rep.all_passed() {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: cross-checks failed tolerance");
                ExitCode::from(EXIT_CROSS_CHECK)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CrossCheck { .. } => ExitCode::from(EXIT_CROSS_CHECK),
                Error::Precision { .. } => ExitCode::from(EXIT_PRECISION),
                _ => ExitCode::from(EXIT_PARSE),
            }
        }
    }
}
