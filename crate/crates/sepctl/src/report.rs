use std::collections::BTreeMap;
use std::fmt::Write as _;

use sepball::conegeo::rho::RhoRow;
use serde::Serialize;

use crate::cli::Format;

/// Column order for `--format csv` on campaign reports.
pub const CHECK_CSV_HEADER: &str = "kind,name,value,bound,relation,trials,violations,passed,detail";
/// Column order for `--format csv` on `bounds`.
pub const BOUNDS_CSV_HEADER: &str =
    "k,rho_closed,rho_recursion,rho_sq_exact,prior_rho,prior_rho_sq_exact,radius_ratio,squared_ratio";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Extremum {
    pub name: String,
    pub value: f64,
    pub argmax: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "in")]
    Within,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Within => "in",
        }
    }
}

/// One audited claim: the worst value seen over `trials`, the bound it is
/// held to, and how many trials broke it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub relation: Relation,
    pub trials: usize,
    pub violations: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn at_most(name: &str, value: f64, bound: f64, trials: usize, violations: usize) -> Self {
        Self::new(name, value, bound, Relation::AtMost, trials, violations)
    }

    pub fn at_least(name: &str, value: f64, bound: f64, trials: usize, violations: usize) -> Self {
        Self::new(name, value, bound, Relation::AtLeast, trials, violations)
    }

    /// `|value − target| ≤ tol`, recorded with `bound = target`.
    pub fn near(name: &str, value: f64, target: f64, tol: f64) -> Self {
        let bad = usize::from(!((value - target).abs() <= tol));
        Self::new(name, value, target, Relation::Within, 1, bad).with_detail(format!("tolerance {tol:e}"))
    }

    pub fn flag(name: &str, ok: bool) -> Self {
        Self::new(name, f64::from(u8::from(ok)), 1.0, Relation::AtLeast, 1, usize::from(!ok))
    }

    fn new(name: &str, value: f64, bound: f64, relation: Relation, trials: usize, violations: usize) -> Self {
        Self { name: name.into(), value, bound, relation, trials, violations, passed: violations == 0, detail: String::new() }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertReport {
    pub command: String,
    pub version: String,
    pub seed: u64,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    pub tolerances: BTreeMap<String, f64>,
    pub extrema: Vec<Extremum>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<RhoRow>,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
    pub violations: usize,
    pub passed: bool,
    pub wall_clock_ms: u64,
}

impl CertReport {
    pub fn new(command: &str, seed: u64, trials: usize, restarts: Option<usize>) -> Self {
        Self {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed,
            trials,
            restarts,
            tolerances: BTreeMap::new(),
            extrema: Vec::new(),
            checks: Vec::new(),
            table: Vec::new(),
            notes: Vec::new(),
            warnings: Vec::new(),
            violations: 0,
            passed: true,
            wall_clock_ms: 0,
        }
    }

    pub fn tolerance(&mut self, name: &str, v: f64) {
        self.tolerances.insert(name.into(), v);
    }

    pub fn extremum(&mut self, name: &str, value: f64, argmax: impl Into<String>) {
        self.extrema.push(Extremum { name: name.into(), value, argmax: argmax.into() });
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// Totals the violations and sets `passed`.
    pub fn finish(&mut self, wall_clock_ms: u64) {
        self.violations = self.checks.iter().map(|c| c.violations).sum();
        self.passed = self.violations == 0;
        self.wall_clock_ms = wall_clock_ms;
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        if !self.table.is_empty() {
            out.push_str(BOUNDS_CSV_HEADER);
            out.push('\n');
            for r in &self.table {
                let _ = writeln!(
                    out,
                    "{},{:e},{:e},{},{:e},{},{:e},{:e}",
                    r.k,
                    r.rho_closed,
                    r.rho_recursion,
                    r.rho_sq_exact.as_deref().unwrap_or(""),
                    r.prior_rho,
                    r.prior_rho_sq_exact.as_deref().unwrap_or(""),
                    r.radius_ratio,
                    r.squared_ratio
                );
            }
            return out;
        }
        out.push_str(CHECK_CSV_HEADER);
        out.push('\n');
        for e in &self.extrema {
            let _ = writeln!(out, "extremum,{},{:e},,,,,,{}", e.name, e.value, csv_field(&e.argmax));
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "check,{},{:e},{:e},{},{},{},{},{}",
                c.name,
                c.value,
                c.bound,
                c.relation.symbol(),
                c.trials,
                c.violations,
                c.passed,
                csv_field(&c.detail)
            );
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning,,,,,,,,{}", csv_field(w));
        }
        let _ = writeln!(out, "summary,violations,{},,,,{},{},", self.violations, self.violations, self.passed);
        out
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "sepctl {} {} (seed {}, trials {})", self.version, self.command, self.seed, self.trials);
        for r in &self.table {
            let _ = writeln!(
                out,
                "  k={:>2}  rho={:.15}  rho^2={}  prior={:.15}  ratio={:.12}  ratio^2={:.12}",
                r.k,
                r.rho_closed,
                r.rho_sq_exact.as_deref().unwrap_or("-"),
                r.prior_rho,
                r.radius_ratio,
                r.squared_ratio
            );
        }
        for e in &self.extrema {
            let _ = writeln!(out, "  max {:<28} {:.15}  at {}", e.name, e.value, e.argmax);
        }
        for c in &self.checks {
            let status = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(
                out,
                "  [{status}] {:<32} {:.6e} {} {:.6e}  ({} trials, {} violations)",
                c.name,
                c.value,
                c.relation.symbol(),
                c.bound,
                c.trials,
                c.violations
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "  warning: {w}");
        }
        let _ = writeln!(out, "{} ({} violations, {} ms)", if self.passed { "PASS" } else { "FAIL" }, self.violations, self.wall_clock_ms);
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
