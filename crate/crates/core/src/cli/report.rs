use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(String),
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn label(&self) -> String {
        match self {
            Verdict::Pass => "PASS".into(),
            Verdict::Fail => "FAIL".into(),
            Verdict::Skipped(why) => format!("SKIPPED({why})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// What was checked, printed before the verdict.
    pub subject: Option<String>,
    pub verdict: Verdict,
    /// Printed after the verdict.
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &str, verdict: Verdict) -> Self {
        Self {
            name: name.into(),
            subject: None,
            verdict,
            detail: None,
        }
    }

    pub fn subject(mut self, s: impl Into<String>) -> Self {
        self.subject = Some(s.into());
        self
    }

    pub fn detail(mut self, s: impl Into<String>) -> Self {
        self.detail = Some(s.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deformation {
    pub t: String,
    pub b1: String,
    pub b2: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub schema_version: u32,
    pub command: String,
    pub m: usize,
    pub field: String,
    pub char: u64,
    pub q: Vec<String>,
    pub zeta: String,
    /// Multiplicative order of zeta, `inf` when it is not a root of unity.
    pub d: String,
    pub max_degree: usize,
    pub seed: u64,
    pub deformation: Option<Deformation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub length: usize,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub n: usize,
    pub solver_dim: usize,
    pub hilbert_dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub instance: Instance,
    pub case: String,
    pub generators: Vec<Generator>,
    pub epsilon: Option<String>,
    pub relation: Option<String>,
    pub dims: Vec<DimRow>,
    pub checks: Vec<Check>,
    /// Microseconds per stage; empty unless timing was requested.
    pub timing: BTreeMap<String, u64>,
}

impl Report {
    pub fn any_fail(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.any_fail())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serialises");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("n,solver_dim,hilbert_dim\n");
            for r in &report.dims {
                writeln!(s, "{},{},{}", r.n, r.solver_dim, r.hilbert_dim).unwrap();
            }
            s
        }
        Format::Text => render_text(report),
    }
}

fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let i = &r.instance;
    writeln!(s, "command: {}", i.command).unwrap();
    writeln!(s, "m: {}", i.m).unwrap();
    writeln!(s, "field: {} (char {})", i.field, i.char).unwrap();
    writeln!(s, "q: ({})", i.q.join(", ")).unwrap();
    writeln!(s, "zeta: {} (order {})", i.zeta, i.d).unwrap();
    if let Some(dp) = &i.deformation {
        writeln!(s, "deformation: t = {}, b1 = {}, b2 = {}", dp.t, dp.b1, dp.b2).unwrap();
    }
    writeln!(s, "case: {}", r.case).unwrap();
    for g in &r.generators {
        writeln!(s, "{} (length {}) = {}", g.name, g.length, g.element).unwrap();
    }
    if let Some(e) = &r.epsilon {
        writeln!(s, "epsilon: {e}").unwrap();
    }
    if !r.dims.is_empty() {
        writeln!(s).unwrap();
        let w = r.dims.last().map_or(1, |d| d.n.to_string().len()).max(1);
        let ws = r.dims.iter().map(|d| d.solver_dim.to_string().len()).max().unwrap_or(1).max(6);
        writeln!(s, "{:>w$}  {:>ws$}  hilbert", "n", "solver").unwrap();
        for d in &r.dims {
            writeln!(s, "{:>w$}  {:>ws$}  {:>7}", d.n, d.solver_dim, d.hilbert_dim).unwrap();
        }
    }
    if !r.checks.is_empty() {
        writeln!(s).unwrap();
    }
    for c in &r.checks {
        let mut line = format!("{}: ", c.name);
        if let Some(sub) = &c.subject {
            write!(line, "{sub} ").unwrap();
        }
        line.push_str(&c.verdict.label());
        if let Some(d) = &c.detail {
            write!(line, " ({d})").unwrap();
        }
        writeln!(s, "{line}").unwrap();
    }
    if !r.timing.is_empty() {
        writeln!(s).unwrap();
        for (k, v) in &r.timing {
            writeln!(s, "time {k}: {v} us").unwrap();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            instance: Instance {
                schema_version: SCHEMA_VERSION,
                command: "structure".into(),
                m: 1,
                field: "Q".into(),
                char: 0,
                q: vec!["-1".into()],
                zeta: "-1".into(),
                d: "2".into(),
                max_degree: 2,
                seed: 0,
                deformation: None,
            },
            case: "odd_d_2mod4".into(),
            generators: vec![],
            epsilon: Some("1".into()),
            relation: Some("w^2 = x*y".into()),
            dims: vec![DimRow { n: 0, solver_dim: 1, hilbert_dim: 1 }],
            checks: vec![
                Check::new("relation", Verdict::Pass).subject("w^2 = x*y"),
                Check::new("structure-theorem", Verdict::Pass).detail("N=12"),
                Check::new("krull", Verdict::Skipped("range too short".into())),
            ],
            timing: BTreeMap::new(),
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back: Report = serde_json::from_str(&render(&r, Format::Json)).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&render(&r, Format::Json)).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        let mut want = ["instance", "case", "generators", "epsilon", "relation", "dims", "checks", "timing"];
        want.sort();
        assert_eq!(keys, want);
    }

    #[test]
    fn text_lines() {
        let t = render(&sample(), Format::Text);
        assert!(t.contains("\nrelation: w^2 = x*y PASS\n"));
        assert!(t.contains("\nstructure-theorem: PASS (N=12)\n"));
        assert!(t.contains("\nkrull: SKIPPED(range too short)\n"));
        assert_eq!(render(&sample(), Format::Csv), "n,solver_dim,hilbert_dim\n0,1,1\n");
    }
}
