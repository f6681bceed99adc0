use std::fmt::Write as _;

use serde::Serialize;

use super::Format;
use crate::error::Error;
use crate::finset::FiniteFn;
use crate::iteration::Stage;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    BudgetExceeded,
    Failed,
    Error,
}

/// A function as `{dom, cod, table}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapJson {
    pub dom: usize,
    pub cod: usize,
    pub table: Vec<usize>,
}

impl From<&FiniteFn> for MapJson {
    fn from(f: &FiniteFn) -> Self {
        MapJson {
            dom: f.dom().size(),
            cod: f.cod().size(),
            table: f.table().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub(crate) fn new(name: &str, cases: usize, failure: Option<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: failure.is_none(),
            cases,
            detail: failure,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CommandReport {
    pub command: String,
    pub line: usize,
    pub target: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<String>,
    pub stages: Vec<Stage>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stationary_at: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stationarity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub carrier: Option<usize>,
    /// Structure map `F(μ) -> μ` of an initial or free algebra.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iota: Option<MapJson>,
    /// Structure map `ν -> F(ν)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coalgebra: Option<MapJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cata: Option<MapJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trees: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckResult>>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
}

impl CommandReport {
    pub(crate) fn new(command: &str, line: usize, target: &str) -> Self {
        CommandReport {
            command: command.to_string(),
            line,
            target: target.to_string(),
            size: None,
            stages: Vec::new(),
            stationary_at: None,
            stationarity: None,
            carrier: None,
            iota: None,
            coalgebra: None,
            cata: None,
            trees: None,
            checks: None,
            status: Status::Ok,
            error: None,
        }
    }

    pub(crate) fn fail(&mut self, e: &Error) {
        self.status = match e {
            Error::BudgetExceeded { stages, .. } => {
                if self.stages.len() < stages.len() {
                    self.stages = stages.clone();
                }
                Status::BudgetExceeded
            }
            Error::Invariant(_) => Status::Failed,
            _ => Status::Error,
        };
        self.error = Some(ErrorReport::from_error(e, Some(self.line)));
    }

    fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, |e| e.exit_code)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub col: Option<usize>,
    #[serde(skip)]
    pub exit_code: i32,
}

impl ErrorReport {
    pub fn from_error(e: &Error, line: Option<usize>) -> Self {
        let kind = match e {
            Error::NonFunctorialDiagram(_) => "non_functorial_diagram",
            Error::NotDirected(_) => "not_directed",
            Error::NoSuchIndex(_) => "no_such_index",
            Error::IllTypedArrow(_) => "ill_typed_arrow",
            Error::IndexMismatch(_) => "index_mismatch",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::NonInvertibleGroupoidArrow(_) => "non_invertible_groupoid_arrow",
            Error::NoAlgebra(_) => "no_algebra",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::Invariant(_) => "invariant",
            Error::Syntax { .. } => "syntax",
            Error::Name { .. } => "name",
        };
        let (line, col) = match e {
            Error::Syntax { line, col, .. } | Error::Name { line, col, .. } if *line > 0 => {
                (Some(*line), Some(*col))
            }
            _ => (line, None),
        };
        let message = match e {
            Error::Syntax { msg, .. } | Error::Name { msg, .. } => msg.clone(),
            other => other.to_string(),
        };
        ErrorReport {
            kind: kind.to_string(),
            message,
            line,
            col,
            exit_code: e.exit_code(),
        }
    }
}

/// Everything a run produced. `error` is set when the script failed outside
/// a command (parsing or a declaration).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub results: Vec<CommandReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    pub exit_code: i32,
}

impl RunReport {
    pub(crate) fn ok(results: Vec<CommandReport>) -> Self {
        RunReport {
            results,
            error: None,
            exit_code: 0,
        }
    }

    pub(crate) fn stopped(results: Vec<CommandReport>) -> Self {
        let exit_code = results.last().map_or(0, CommandReport::exit_code);
        RunReport {
            results,
            error: None,
            exit_code,
        }
    }

    pub(crate) fn failed(results: Vec<CommandReport>, error: ErrorReport) -> Self {
        RunReport {
            results,
            exit_code: error.exit_code,
            error: Some(error),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let _ = write!(out, "{} {}", r.command, r.target);
            if let Some(s) = &r.size {
                let _ = write!(out, " [{s}]");
            }
            out.push('\n');
            for st in &r.stages {
                let _ = writeln!(out, "  stage {}: {}", st.index, st.size);
            }
            if let Some(s) = &r.stationary_at {
                let _ = writeln!(out, "  stationary at {s}");
            }
            if let Some(s) = &r.stationarity {
                let _ = writeln!(out, "  ({s})");
            }
            if let Some(c) = r.carrier {
                let _ = writeln!(out, "  carrier: {c} element(s)");
            }
            for (label, m) in [
                ("iota", &r.iota),
                ("coalgebra", &r.coalgebra),
                ("cata", &r.cata),
            ] {
                if let Some(m) = m {
                    let cells: Vec<String> = m.table.iter().map(usize::to_string).collect();
                    let _ = writeln!(
                        out,
                        "  {label}: {} -> {} [{}]",
                        m.dom,
                        m.cod,
                        cells.join(" ")
                    );
                }
            }
            if let Some(ts) = &r.trees {
                let _ = writeln!(out, "  {} tree(s)", ts.len());
                for t in ts {
                    let _ = writeln!(out, "  {t}");
                }
            }
            for c in r.checks.iter().flatten() {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                let _ = write!(out, "  {mark} {:<22} {} case(s)", c.name, c.cases);
                if let Some(d) = &c.detail {
                    let _ = write!(out, ": {d}");
                }
                out.push('\n');
            }
            if let Some(e) = &r.error {
                let _ = writeln!(out, "  error ({}): {}", e.kind, e.message);
            }
        }
        if let Some(e) = &self.error {
            let _ = write!(out, "error ({})", e.kind);
            match (e.line, e.col) {
                (Some(l), Some(c)) => {
                    let _ = write!(out, " at {l}:{c}");
                }
                (Some(l), None) => {
                    let _ = write!(out, " at line {l}");
                }
                _ => {}
            }
            let _ = writeln!(out, ": {}", e.message);
        }
        out
    }
}
