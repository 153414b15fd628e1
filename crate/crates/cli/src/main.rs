use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toricres::ghilb::DEFAULT_BUDGET;
use toricres::hilbert::hilbert_basis;
use toricres::GroupAction;
use toricres_cli::{
    cmd_classify, cmd_ghilb, cmd_resolve, fan_from_json, parse_group, render_svg, sweep_rows,
    to_json, write_sweep_csv, CliError, CliResult, LabelMode, Method, RenderSpec,
};

#[derive(Parser)]
#[command(
    name = "toricres",
    version,
    about = "Toric resolutions of 3-dimensional cyclic quotient singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArgs {
    /// Group order r.
    #[arg(allow_negative_numbers = true)]
    r: i64,
    /// Weights a1 a2 a3 of the generator, each in [0, r).
    #[arg(num_args = 3, allow_negative_numbers = true)]
    weights: Vec<i64>,
}

impl GroupArgs {
    fn group(&self) -> CliResult<GroupAction> {
        parse_group(self.r, [self.weights[0], self.weights[1], self.weights[2]])
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Fo,
    Iterated,
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelArg {
    None,
    Coords,
    Ages,
}

impl From<LabelArg> for LabelMode {
    fn from(l: LabelArg) -> Self {
        match l {
            LabelArg::None => LabelMode::None,
            LabelArg::Coords => LabelMode::Coords,
            LabelArg::Ages => LabelMode::Ages,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify 1/r(a1,a2,a3) and print a JSON verdict.
    Classify(GroupArgs),
    /// Build a resolution and print its counts and verdicts.
    Resolve {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "fo")]
        method: MethodArg,
        /// Write the fan as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write an SVG of the junior simplex triangulation.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the full iterated report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Print construction steps to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Compute Fan(G) from the G-graphs of the group.
    Ghilb {
        #[command(flatten)]
        group: GroupArgs,
        /// Write the chart list as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Search-node budget for G-graph enumeration.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Tabulate verdicts for every canonical group with r <= rmax.
    Sweep {
        #[arg(long)]
        rmax: i64,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a fan JSON file as SVG.
    Render {
        fan: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 480)]
        size: u32,
        #[arg(long, value_enum, default_value = "none")]
        labels: LabelArg,
        /// Mark rays outside the Hilbert basis.
        #[arg(long)]
        highlight_non_hilbert: bool,
    },
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::other(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, contents: &str) -> CliResult<()> {
    match path {
        Some(p) => write(p, contents),
        None => Ok(io::stdout().write_all(contents.as_bytes())?),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Classify(args) => {
            let verdict = cmd_classify(&args.group()?)?;
            emit(None, &to_json(&verdict)?)
        }
        Command::Resolve {
            group,
            method,
            out,
            svg,
            report,
            trace,
        } => {
            let method = match method {
                MethodArg::Fo => Method::Fo,
                MethodArg::Iterated => Method::Iterated,
            };
            if report.is_some() && method != Method::Iterated {
                return Err(CliError::input("--report needs --method iterated"));
            }
            let res = cmd_resolve(&group.group()?, method)?;
            if trace {
                let mut err = io::stderr().lock();
                for line in &res.trace {
                    writeln!(err, "{line}")?;
                }
            }
            if let Some(p) = out {
                write(&p, &to_json(&res.fan.to_json())?)?;
            }
            if let Some(p) = svg {
                write(&p, &render_svg(&res.fan, &RenderSpec::default()))?;
            }
            if let (Some(p), Some(rep)) = (report, &res.report) {
                write(&p, &to_json(rep)?)?;
            }
            emit(None, &to_json(&res.summary)?)
        }
        Command::Ghilb { group, out, budget } => {
            let res = cmd_ghilb(&group.group()?, budget)?;
            if let Some(p) = out {
                write(&p, &to_json(&res.charts)?)?;
            }
            emit(None, &to_json(&res.summary)?)
        }
        Command::Sweep { rmax, out } => {
            let rows = sweep_rows(rmax)?;
            let mut buf = Vec::new();
            write_sweep_csv(&rows, &mut buf)?;
            emit(
                out.as_deref(),
                &String::from_utf8(buf).expect("csv is utf-8"),
            )
        }
        Command::Render {
            fan,
            out,
            size,
            labels,
            highlight_non_hilbert,
        } => {
            let text = fs::read_to_string(&fan)
                .map_err(|e| CliError::input(format!("{}: {e}", fan.display())))?;
            let f = fan_from_json(&text)?;
            let highlight = highlight_non_hilbert.then(|| {
                let hilb = hilbert_basis(f.lattice());
                f.gen_set()
                    .into_iter()
                    .filter(|p| !hilb.contains(p))
                    .collect()
            });
            let spec = RenderSpec::new(size, labels.into(), highlight)?;
            emit(out.as_deref(), &render_svg(&f, &spec))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
