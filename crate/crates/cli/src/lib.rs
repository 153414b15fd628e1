//! Library side of the `toricres` command-line tool.
//!
//! Every command returns its payload as data; `main` only parses arguments,
//! writes files and maps [`CliError`] to an exit code.

pub mod svg;
pub mod sweep;

use std::fmt;

use serde::Serialize;
use toricres::classify::{is_gorenstein, is_terminal, match_class, semi_unimodular_generators};
use toricres::fujiki_oka::{fujiki_oka_traced, preferred_choice};
use toricres::ghilb::{fan_of_g_with_budget, ChartJson, GStats};
use toricres::{
    discrepancies, is_hilb_desingularization, iterated_fo, Error, Fan, GroupAction, JuniorStats,
    Lattice, LatticePoint, Report,
};

pub use svg::{render_svg, LabelMode, RenderSpec};
pub use sweep::{sweep_rows, write_sweep_csv, SweepRow};

/// Largest order accepted by `ghilb`.
pub const GHILB_MAX_ORDER: i64 = 40;
/// Largest `--rmax` accepted by `sweep`.
pub const SWEEP_MAX_ORDER: i64 = 60;

pub const EXIT_OTHER: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PRECONDITION,
            message: message.into(),
        }
    }

    pub fn budget(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_BUDGET,
            message: message.into(),
        }
    }

    pub fn other(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_OTHER,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ZeroOrder(_)
            | Error::WeightOutOfRange { .. }
            | Error::NotFaithful(_)
            | Error::NotInLattice(_)
            | Error::NotPrimitive(_)
            | Error::Degenerate
            | Error::OutsideSupport(_)
            | Error::FanCondition(..)
            | Error::SupportNotOctant
            | Error::Euler(_)
            | Error::Malformed(_) => EXIT_INPUT,
            Error::NoSemiUnimodularGenerator(_)
            | Error::NotCanonical(_)
            | Error::BadGeneratorChoice { .. }
            | Error::NoDecomposition(_) => EXIT_PRECONDITION,
            Error::Budget(_) => EXIT_BUDGET,
            _ => EXIT_OTHER,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::other(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            CliError::other(e.to_string())
        } else {
            CliError::input(e.to_string())
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::other(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Validates `1/r(a1, a2, a3)` as a faithful action with `0 <= ai < r`.
pub fn parse_group(r: i64, weights: [i64; 3]) -> CliResult<GroupAction> {
    let g = GroupAction::new(r, weights)?;
    Lattice::new(&g)?;
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyVerdict {
    pub group: GroupAction,
    pub class: String,
    pub canonical: bool,
    pub terminal: bool,
    pub gorenstein: bool,
    /// The quotient `C^3 / G` is itself smooth.
    pub smooth: bool,
    pub semi_unimodular_generators: Vec<GroupAction>,
}

pub fn cmd_classify(g: &GroupAction) -> CliResult<ClassifyVerdict> {
    let class = match_class(g);
    Ok(ClassifyVerdict {
        group: *g,
        class: class.to_string(),
        canonical: class.is_canonical(),
        terminal: is_terminal(g),
        gorenstein: is_gorenstein(g),
        smooth: Fan::positive_octant(g)?.is_smooth(),
        semi_unimodular_generators: semi_unimodular_generators(g),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Fo,
    Iterated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResolveSummary {
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "E")]
    pub e: usize,
    #[serde(rename = "F")]
    pub f: usize,
    pub s: usize,
    pub smooth: bool,
    pub crepant: bool,
    pub hilbert: bool,
}

impl ResolveSummary {
    pub fn of(fan: &Fan) -> CliResult<ResolveSummary> {
        let JuniorStats { v, e, f, s } = fan.junior_stats()?;
        Ok(ResolveSummary {
            v,
            e,
            f,
            s,
            smooth: fan.is_smooth(),
            crepant: discrepancies(fan).crepant,
            hilbert: is_hilb_desingularization(fan).is_yes(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct Resolution {
    pub fan: Fan,
    pub summary: ResolveSummary,
    /// Human-readable construction steps.
    pub trace: Vec<String>,
    pub report: Option<Report>,
}

pub fn cmd_resolve(g: &GroupAction, method: Method) -> CliResult<Resolution> {
    let (fan, trace, report) = match method {
        Method::Fo => {
            let choice = preferred_choice(g)?;
            let (fan, steps) = fujiki_oka_traced(g, &choice)?;
            let mut trace = vec![format!("generator {choice}")];
            trace.extend(steps.iter().map(ToString::to_string));
            (fan, trace, None)
        }
        Method::Iterated => {
            let (fan, report) = iterated_fo(g)?;
            (fan, iterated_trace(&report), Some(report))
        }
    };
    let summary = ResolveSummary::of(&fan)?;
    Ok(Resolution {
        fan,
        summary,
        trace,
        report,
    })
}

fn iterated_trace(report: &Report) -> Vec<String> {
    let mut out = vec![format!("class {}", report.class)];
    match report.subgroup {
        Some(h) => out.push(format!("subgroup {h}")),
        None => out.push("no subgroup step".to_string()),
    }
    for res in &report.residuals {
        let [a, b, c] = res.cone;
        out.push(format!("residual {} at cone ({a}, {b}, {c})", res.kind));
    }
    for (p, age) in &report.non_hilbert_rays {
        out.push(format!("non-Hilbert ray {p} age {age}"));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GhilbSummary {
    pub num_max_cones: usize,
    pub smooth: bool,
    pub non_hilbert_generators: Vec<LatticePoint>,
    pub stats: GStats,
}

pub struct GhilbOutput {
    pub summary: GhilbSummary,
    pub charts: Vec<ChartJson>,
}

pub fn cmd_ghilb(g: &GroupAction, budget: u64) -> CliResult<GhilbOutput> {
    if g.order() > GHILB_MAX_ORDER {
        return Err(CliError::budget(format!(
            "G-graph enumeration is limited to r <= {GHILB_MAX_ORDER}, got {}",
            g.order()
        )));
    }
    let gfan = fan_of_g_with_budget(g, budget)?;
    Ok(GhilbOutput {
        summary: GhilbSummary {
            num_max_cones: gfan.num_max_cones(),
            smooth: gfan.is_smooth(),
            non_hilbert_generators: gfan.non_hilbert_generators(),
            stats: gfan.stats(),
        },
        charts: gfan.charts_json(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn fan_from_json(text: &str) -> CliResult<Fan> {
    let json: toricres::fan::FanJson = serde_json::from_str(text)?;
    Ok(Fan::from_json(&json)?)
}
