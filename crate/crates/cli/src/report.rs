//! Run reports: result rows tagged with the evaluation method, cross-check
//! rows with residuals and tolerances, an aligned text table on stdout and
//! an optional RFC-4180 CSV with 17-significant-digit decimals.

use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone)]
pub struct ResultRow {
    pub name: String,
    pub value: f64,
    pub method: String,
    pub error_bound: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct CheckRow {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
}

impl CheckRow {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    pub fn passed(&self) -> bool {
        self.residual() <= self.tolerance * self.lhs.abs().max(1.0)
    }
}

#[derive(Debug, Default)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub results: Vec<ResultRow>,
    pub cross_checks: Vec<CheckRow>,
}

fn num(v: f64) -> String {
    if v.is_nan() {
        "-".to_string()
    } else {
        format!("{v:.16e}")
    }
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.push((key.to_string(), value.to_string()));
    }

    pub fn result(&mut self, name: &str, value: f64, method: &str) {
        self.results.push(ResultRow {
            name: name.to_string(),
            value,
            method: method.to_string(),
            error_bound: None,
        });
    }

    pub fn result_with_bound(&mut self, name: &str, value: f64, method: &str, bound: f64) {
        self.results.push(ResultRow {
            name: name.to_string(),
            value,
            method: method.to_string(),
            error_bound: Some(bound),
        });
    }

    pub fn check(&mut self, name: &str, lhs: f64, rhs: f64, tolerance: f64) {
        self.cross_checks.push(CheckRow {
            name: name.to_string(),
            lhs,
            rhs,
            tolerance,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.cross_checks.iter().all(|c| c.passed())
    }

    pub fn print_table(&self) {
        println!("command: {}", self.command);
        for (k, v) in &self.inputs {
            println!("  {k}: {v}");
        }
        if !self.results.is_empty() {
            let w = self.results.iter().map(|r| r.name.len()).max().unwrap_or(4);
            println!("{:-<1$}", "", w + 50);
            for r in &self.results {
                match r.error_bound {
                    Some(b) => println!("{:w$}  {:>24}  [{}] +-{:.2e}", r.name, num(r.value), r.method, b),
                    None => println!("{:w$}  {:>24}  [{}]", r.name, num(r.value), r.method),
                }
            }
        }
        if !self.cross_checks.is_empty() {
            let w = self
                .cross_checks
                .iter()
                .map(|c| c.name.len())
                .max()
                .unwrap_or(5);
            println!("{:-<1$}", "", w + 50);
            for c in &self.cross_checks {
                println!(
                    "{:w$}  residual {:.3e}  tol {:.1e}  {}",
                    c.name,
                    c.residual(),
                    c.tolerance,
                    if c.passed() { "pass" } else { "FAIL" }
                );
            }
        }
    }

    pub fn to_csv(&self) -> String {
        fn field(s: &str) -> String {
            if s.contains(',') || s.contains('"') || s.contains('\n') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        }
        let mut out = String::new();
        out.push_str("kind,name,value,method,error_bound,lhs,rhs,residual,tolerance,pass\r\n");
        for r in &self.results {
            let _ = writeln!(
                out,
                "result,{},{},{},{},,,,,\r",
                field(&r.name),
                num(r.value),
                field(&r.method),
                r.error_bound.map(num).unwrap_or_default(),
            );
        }
        for c in &self.cross_checks {
            let _ = writeln!(
                out,
                "check,{},,,,{},{},{},{},{}\r",
                field(&c.name),
                num(c.lhs),
                num(c.rhs),
                num(c.residual()),
                num(c.tolerance),
                c.passed()
            );
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_csv())
    }
}
