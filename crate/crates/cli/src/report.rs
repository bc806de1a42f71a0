use std::fmt::Write as _;

use modinv_core::engine::{DegreeRecord, GradedReport, Status, Verdict};
use modinv_core::field::format_bit_poly;
use modinv_core::FieldContext;
use serde::Serialize;

use crate::config::{Format, RunConfig};

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct ConfigEcho {
    pub command: &'static str,
    pub q_exp: u32,
    pub m: usize,
    pub group: &'static str,
    pub max_degree: Option<usize>,
    pub modulus: Option<String>,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct FieldInfo {
    pub q: u32,
    pub modulus: String,
    pub primitive: String,
    pub w: String,
}

impl FieldInfo {
    pub fn of(field: &FieldContext) -> FieldInfo {
        FieldInfo {
            q: field.q(),
            modulus: format_bit_poly(field.modulus()),
            primitive: field.primitive().to_string(),
            w: field.w().to_string(),
        }
    }
}

#[derive(Serialize, Debug, Clone, Default, PartialEq, Eq)]
pub struct DegreeRow {
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_invariants: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_closure: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_decomposables: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_generators: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series_coefficient: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_span: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_ideal_generators: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_ideal_invariants: Option<usize>,
}

impl From<&DegreeRecord> for DegreeRow {
    fn from(r: &DegreeRecord) -> DegreeRow {
        DegreeRow {
            d: r.d,
            dim_invariants: r.dim_invariants,
            dim_closure: r.dim_closure,
            dim_decomposables: r.dim_decomposables,
            minimal_generators: r.minimal_generators,
            series_coefficient: r.series_coefficient,
            dim_span: r.dim_span,
            product_count: r.product_count,
            dim_ideal_generators: r.dim_ideal_generators,
            dim_ideal_invariants: r.dim_ideal_invariants,
        }
    }
}

impl DegreeRow {
    fn columns(&self) -> [(&'static str, Option<i64>); 9] {
        let u = |v: Option<usize>| v.map(|x| x as i64);
        [
            ("dim_inv", u(self.dim_invariants)),
            ("closure", u(self.dim_closure)),
            ("decomp", u(self.dim_decomposables)),
            ("minimal", u(self.minimal_generators)),
            ("series", self.series_coefficient),
            ("span", u(self.dim_span)),
            ("products", u(self.product_count)),
            ("ideal_gen", u(self.dim_ideal_generators)),
            ("ideal_inv", u(self.dim_ideal_invariants)),
        ]
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    /// The claim under test, in words.
    pub anchor: String,
    pub status: &'static str,
    pub detail: String,
    pub degrees: Vec<DegreeRow>,
    pub witnesses: Vec<String>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, status: Status, detail: impl Into<String>) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            anchor: anchor.into(),
            status: status.name(),
            detail: detail.into(),
            degrees: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn from_verdict(suite: &str, v: &Verdict, degrees: &[DegreeRow]) -> CheckRecord {
        CheckRecord {
            name: format!("{suite}.{}", v.name),
            anchor: v.claim.clone(),
            status: v.status.name(),
            detail: v.detail.clone(),
            degrees: degrees.to_vec(),
            witnesses: v.witnesses.iter().map(|p| p.to_string()).collect(),
        }
    }

    /// One record per verdict, each carrying the suite's degree table.
    pub fn from_report(suite: &str, report: &GradedReport) -> Vec<CheckRecord> {
        let rows: Vec<DegreeRow> = report.degrees.iter().map(DegreeRow::from).collect();
        report.verdicts.iter().map(|v| CheckRecord::from_verdict(suite, v, &rows)).collect()
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Timing {
    pub total_ms: f64,
    pub suites: Vec<SuiteTime>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct SuiteTime {
    pub suite: String,
    pub ms: f64,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ReportDocument {
    pub config: ConfigEcho,
    pub field: FieldInfo,
    pub checks: Vec<CheckRecord>,
    pub timing: Timing,
}

impl ReportDocument {
    pub fn echo(config: &RunConfig) -> ConfigEcho {
        ConfigEcho {
            command: config.task.name(),
            q_exp: config.s,
            m: config.m,
            group: config.group.name(),
            max_degree: config.cutoff,
            modulus: config.modulus.map(format_bit_poly),
        }
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail.name())
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The JSON document without the timing field, for comparing runs.
    pub fn to_json_untimed(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timing");
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let f = &self.field;
        let _ = writeln!(
            out,
            "modinv {}: q = {} (modulus {}, primitive {}, w = {}), m = {}, group {}",
            c.command, f.q, f.modulus, f.primitive, f.w, c.m, c.group
        );
        let mut last_table: Option<&Vec<DegreeRow>> = None;
        for check in &self.checks {
            let _ = writeln!(out, "\n{:<8} {}", check.status.to_uppercase(), check.name);
            let _ = writeln!(out, "         claim:  {}", check.anchor);
            let _ = writeln!(out, "         result: {}", check.detail);
            for w in check.witnesses.iter().take(4) {
                let _ = writeln!(out, "         witness: {w}");
            }
            if !check.degrees.is_empty() && last_table != Some(&check.degrees) {
                out.push_str(&degree_table(&check.degrees));
                last_table = Some(&check.degrees);
            }
        }
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s.name()).count();
        let _ = writeln!(
            out,
            "\n{} checks: {} pass, {} fail, {} reported ({:.1} ms)",
            self.checks.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Reported),
            self.timing.total_ms
        );
        out
    }
}

fn degree_table(rows: &[DegreeRow]) -> String {
    let present: Vec<usize> = (0..9)
        .filter(|&k| rows.iter().any(|r| r.columns()[k].1.is_some()))
        .collect();
    if present.is_empty() {
        return String::new();
    }
    let mut out = String::from("         d");
    for &k in &present {
        let _ = write!(out, " {:>10}", rows[0].columns()[k].0);
    }
    out.push('\n');
    for r in rows {
        let _ = write!(out, "  {:>8}", r.d);
        let cols = r.columns();
        for &k in &present {
            match cols[k].1 {
                Some(v) => {
                    let _ = write!(out, " {v:>10}");
                }
                None => out.push_str(&format!(" {:>10}", "-")),
            }
        }
        out.push('\n');
    }
    out
}
