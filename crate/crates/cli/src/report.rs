//! Run reports and their JSON, CSV and text serializations.

use std::fmt::Write as _;

use serde::Serialize;

/// JSON schema identifier carried by every report.
pub const SCHEMA: &str = "reslab-report/1";

/// Outcome class of a command or a whole run, from best to worst.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Clean,
    /// A resource limit stopped a computation.
    Indeterminate,
    /// The command could not run: a failed precondition or bad input.
    Error,
    /// A verifier produced the signal that contradicts a proven property.
    Defect,
}

impl Status {
    /// Process exit code: 0 clean, 1 defect, 2 indeterminate, 3 usage or input error.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Clean => 0,
            Status::Defect => 1,
            Status::Indeterminate => 2,
            Status::Error => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Clean => "clean",
            Status::Indeterminate => "indeterminate",
            Status::Error => "error",
            Status::Defect => "defect",
        }
    }
}

/// Effective configuration of a run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub field: String,
    pub order: String,
    pub degree_guard: u32,
    pub saturation_cap: usize,
    pub macaulay_threshold: usize,
    pub jobs: Option<usize>,
    pub timeout_secs: Option<f64>,
}

/// One cell of a resurgence grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridCell {
    pub m: u32,
    pub r: u32,
    pub contained: Option<bool>,
    pub inferred: bool,
    pub ratio: String,
    pub method: String,
    pub witness: Option<String>,
    pub elapsed_ms: f64,
}

/// The result payload of a command, by command kind.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Check {
        contained: Option<bool>,
        witness: Option<String>,
        witness_degree: Option<u32>,
        method: String,
        confirmed_by: Vec<String>,
    },
    Grid {
        ideal: String,
        m_max: u32,
        r_max: u32,
        cells: Vec<GridCell>,
        rho_lower_bound: Option<String>,
        extremal_cells: Vec<(u32, u32)>,
        reference: Option<String>,
        consistent_upper_witnessed: Option<bool>,
        violations: Vec<String>,
        indeterminate: usize,
    },
    UnionGb {
        holds: bool,
    },
    ProductWitness {
        member: bool,
        method: String,
    },
    Binomial {
        equal: bool,
    },
    Kfold {
        noncontained: bool,
        power: u32,
        symbolic: u32,
        method: String,
        lower_bound: String,
    },
    Bound {
        quantity: String,
        value: String,
        rule: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandReport {
    /// 1-based position among the session's commands.
    pub index: usize,
    /// Canonical text of the command.
    pub command: String,
    pub status: Status,
    pub elapsed_ms: f64,
    pub result: Option<Outcome>,
    /// Why the command is indeterminate, an error, or a defect.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: String,
    pub library_version: String,
    pub config: ConfigEcho,
    /// Canonical session text; parsing it reproduces the run.
    pub session: String,
    pub results: Vec<CommandReport>,
    pub status: Status,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

/// Output formats of `emit_report`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Serializes a report. CSV covers grid tables only and fails when the
/// session ran no grid.
pub fn emit_report(report: &Report, format: Format) -> Result<String, String> {
    match format {
        Format::Json => serde_json::to_string_pretty(report)
            .map(|mut s| {
                s.push('\n');
                s
            })
            .map_err(|e| e.to_string()),
        Format::Csv => emit_csv(report),
        Format::Text => Ok(emit_text(report)),
    }
}

fn emit_csv(report: &Report) -> Result<String, String> {
    let grids: Vec<&Vec<GridCell>> = report
        .results
        .iter()
        .filter_map(|c| match &c.result {
            Some(Outcome::Grid { cells, .. }) => Some(cells),
            _ => None,
        })
        .collect();
    if grids.is_empty() {
        return Err("CSV output covers grid tables only, and the session ran no grid".into());
    }
    let mut out = String::new();
    for (i, cells) in grids.into_iter().enumerate() {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["m", "r", "contained", "inferred", "ratio"]).map_err(|e| e.to_string())?;
        for c in cells {
            let contained = c.contained.map_or(String::new(), |b| b.to_string());
            w.write_record([
                c.m.to_string(),
                c.r.to_string(),
                contained,
                c.inferred.to_string(),
                c.ratio.clone(),
            ])
            .map_err(|e| e.to_string())?;
        }
        if i > 0 {
            out.push('\n');
        }
        let bytes = w.into_inner().map_err(|e| e.to_string())?;
        out.push_str(&String::from_utf8(bytes).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

fn yes_no(v: Option<bool>, yes: &str, no: &str) -> String {
    match v {
        Some(true) => yes.to_string(),
        Some(false) => no.to_string(),
        None => "indeterminate".to_string(),
    }
}

fn emit_text(report: &Report) -> String {
    let mut s = String::new();
    let c = &report.config;
    let _ = writeln!(s, "reslab {} ({}, library {})", report.version, report.schema, report.library_version);
    let _ = writeln!(
        s,
        "config: field {}, order {}, degree guard {}, saturation cap {}, macaulay threshold {}",
        c.field, c.order, c.degree_guard, c.saturation_cap, c.macaulay_threshold
    );
    s.push('\n');
    let mut bounds = Vec::new();
    for cmd in &report.results {
        let _ = writeln!(s, "[{}] {}", cmd.index, cmd.command);
        match &cmd.result {
            Some(Outcome::Check { contained, witness, witness_degree, method, confirmed_by }) => {
                let _ = writeln!(s, "    {} (method {method})", yes_no(*contained, "contained", "not contained"));
                if let (Some(w), Some(d)) = (witness, witness_degree) {
                    let _ = writeln!(s, "    witness (degree {d}): {w}");
                    let _ = writeln!(s, "    confirmed by: {}", confirmed_by.join(", "));
                }
            }
            Some(Outcome::Grid { m_max, r_max, cells, rho_lower_bound, extremal_cells, reference, consistent_upper_witnessed, violations, indeterminate, .. }) => {
                let _ = write!(s, "    m\\r");
                for r in 1..=*r_max {
                    let _ = write!(s, " {r:>3}");
                }
                s.push('\n');
                for m in 1..=*m_max {
                    let _ = write!(s, "    {m:>3}");
                    for r in 1..=*r_max {
                        let mark = cells.iter().find(|x| x.m == m && x.r == r).map_or("?", |x| {
                            match (x.contained, x.inferred) {
                                (Some(true), false) => "yes",
                                (Some(true), true) => "(y)",
                                (Some(false), false) => "NO",
                                (Some(false), true) => "(n)",
                                (None, _) => "?",
                            }
                        });
                        let _ = write!(s, " {mark:>3}");
                    }
                    s.push('\n');
                }
                let cells_text: Vec<String> = extremal_cells.iter().map(|(m, r)| format!("({m},{r})")).collect();
                match rho_lower_bound {
                    Some(b) => {
                        let _ = writeln!(s, "    rho lower bound: {b} at {}", cells_text.join(", "));
                    }
                    None => {
                        let _ = writeln!(s, "    rho lower bound: none (no failure with m >= r)");
                    }
                }
                if let (Some(q), Some(ok)) = (reference, consistent_upper_witnessed) {
                    let verdict = if *ok { "no failing ratio exceeds it" } else { "a failing ratio exceeds it" };
                    let _ = writeln!(s, "    reference {q}: {verdict}");
                }
                if *indeterminate > 0 {
                    let _ = writeln!(s, "    indeterminate cells: {indeterminate}");
                }
                for v in violations {
                    let _ = writeln!(s, "    monotonicity violation: {v}");
                }
            }
            Some(Outcome::UnionGb { holds }) => {
                let _ = writeln!(s, "    union of bases is a Groebner basis: {holds}");
            }
            Some(Outcome::ProductWitness { member, method }) => {
                let _ = writeln!(s, "    product lies in the power: {member} (method {method})");
            }
            Some(Outcome::Binomial { equal }) => {
                let _ = writeln!(s, "    both sides equal: {equal}");
            }
            Some(Outcome::Kfold { noncontained, power, symbolic, method, lower_bound }) => {
                let _ = writeln!(
                    s,
                    "    product witness in symbolic power {symbolic}, outside ordinary power {power}: {noncontained} (method {method})"
                );
                if *noncontained {
                    let _ = writeln!(s, "    resurgence lower bound: {lower_bound}");
                }
            }
            Some(Outcome::Bound { quantity, value, rule }) => {
                let _ = writeln!(s, "    {quantity} {value}");
                bounds.push((quantity, value, rule));
            }
            None => {}
        }
        if let Some(d) = &cmd.detail {
            let _ = writeln!(s, "    {}: {d}", cmd.status.name());
        }
        let _ = writeln!(s, "    status {}, {:.1} ms", cmd.status.name(), cmd.elapsed_ms);
    }
    if !bounds.is_empty() {
        s.push('\n');
        let qw = bounds.iter().map(|b| b.0.len()).max().unwrap_or(0).max("quantity".len());
        let vw = bounds.iter().map(|b| b.1.len()).max().unwrap_or(0).max("value".len());
        let _ = writeln!(s, "{:<qw$}  {:<vw$}  rule", "quantity", "value");
        for (q, v, r) in bounds {
            let _ = writeln!(s, "{q:<qw$}  {v:<vw$}  {r}");
        }
    }
    let _ = writeln!(s, "\nstatus: {}", report.status.name());
    s
}
