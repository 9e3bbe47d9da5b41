//! `atanforge`: verify single identities, run parameter sweeps and the full
//! acceptance suite.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use atanforge_core::registry::{self, IdentityInfo};
use atanforge_core::report::format_scalar;
use atanforge_core::suite::{self, SuiteConfig};
use atanforge_core::sweep::{self, SweepSummary};
use atanforge_core::{Error, IdentityReport, PrecisionContext};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "atanforge", version, about = "Arbitrary-precision verification of arctangent identities")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct RunConfig {
    /// Reporting precision in decimal digits.
    #[arg(long, global = true, env = "ATANFORGE_DIGITS", default_value_t = 60)]
    digits: u32,

    /// Residual tolerance; defaults to the tier for `--digits`.
    #[arg(long, global = true)]
    tolerance: Option<String>,

    /// Target for certified series tail bounds.
    #[arg(long, global = true)]
    tail_target: Option<String>,

    /// Term cap for infinite series.
    #[arg(long, global = true)]
    max_terms: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for randomized lemma draws.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List identities with their anchors and parameters.
    List {
        /// Machine-readable schema.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate one identity.
    Verify {
        identity: String,
        #[command(flatten)]
        params: ParamFlags,
    },
    /// Evaluate an identity over a cartesian grid; each parameter takes
    /// `start:stop[:step]` or a comma list.
    Sweep {
        identity: String,
        #[command(flatten)]
        params: ParamFlags,
    },
    /// Run the acceptance matrix and record the findings.
    Suite {
        /// Random draws per lemma.
        #[arg(long, default_value_t = 100)]
        draws: usize,
        /// Skip the 100-digit precision-scaling rerun.
        #[arg(long)]
        no_scaling: bool,
    },
}

#[derive(Args, Debug, Default)]
struct ParamFlags {
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    j: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    phi: Option<String>,
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    z: Option<String>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    mode: Option<String>,
}

impl ParamFlags {
    fn pairs(&self) -> Vec<(String, String)> {
        let all = [
            ("n", &self.n),
            ("m", &self.m),
            ("j", &self.j),
            ("alpha", &self.alpha),
            ("theta", &self.theta),
            ("phi", &self.phi),
            ("x", &self.x),
            ("y", &self.y),
            ("a", &self.a),
            ("z", &self.z),
            ("s", &self.s),
            ("k", &self.k),
            ("mode", &self.mode),
        ];
        all.into_iter().filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone()))).collect()
    }
}

impl RunConfig {
    fn context(&self) -> Result<PrecisionContext, Error> {
        let mut ctx = PrecisionContext::new(self.digits)?;
        if let Some(t) = &self.tolerance {
            let tol = ctx.parse(t)?;
            ctx = ctx.with_tolerance(tol)?;
        }
        if let Some(t) = &self.tail_target {
            let target = ctx.parse(t)?;
            ctx = ctx.with_tail_target(target)?;
        }
        if let Some(n) = self.max_terms {
            ctx = ctx.with_max_terms(n)?;
        }
        Ok(ctx)
    }

    fn sink(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

fn report_json(r: &IdentityReport, seed: u64) -> Value {
    let mut v = r.to_json();
    v["seed"] = json!(seed);
    v
}

fn write_reports_csv(out: &mut dyn Write, reports: &[IdentityReport], seed: u64) -> Result<(), Error> {
    let io_err = |e: csv::Error| Error::Parse(format!("csv write failed: {e}"));
    let mut w = csv::Writer::from_writer(out);
    let mut header = IdentityReport::CSV_HEADER.to_vec();
    header.push("seed");
    w.write_record(&header).map_err(io_err)?;
    for r in reports {
        let mut row = r.csv_record();
        row.push(seed.to_string());
        w.write_record(&row).map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::Parse(format!("csv flush failed: {e}")))
}

fn schema_json(info: &IdentityInfo) -> Value {
    json!({
        "id": info.id,
        "paper_anchor": info.anchor,
        "summary": info.summary,
        "params": info.params,
    })
}

fn cmd_list(json: bool, cfg: &RunConfig, out: &mut dyn Write) -> io::Result<u8> {
    if json || cfg.format == Format::Json {
        let all: Vec<Value> = registry::registry().iter().map(schema_json).collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&all)?)?;
        return Ok(0);
    }
    for info in registry::registry() {
        let params: Vec<String> = info
            .params
            .iter()
            .map(|p| match p.default {
                Some(d) => format!("--{} <{:?}, default {d}>", p.name, p.kind).to_lowercase(),
                None => format!("--{} <{:?}>", p.name, p.kind).to_lowercase(),
            })
            .collect();
        writeln!(out, "{:<18} {:<36} {}", info.id, info.anchor, params.join(" "))?;
        writeln!(out, "{:<18} {}", "", info.summary)?;
    }
    Ok(0)
}

fn cmd_verify(id: &str, params: &ParamFlags, cfg: &RunConfig, ctx: &PrecisionContext, out: &mut dyn Write) -> Result<u8, Error> {
    let report = registry::verify(id, &params.pairs(), ctx)?;
    let io = |e: io::Error| Error::Parse(format!("write failed: {e}"));
    match cfg.format {
        Format::Json => {
            let doc = serde_json::to_string_pretty(&report_json(&report, cfg.seed)).expect("report serializes");
            writeln!(out, "{doc}").map_err(io)?;
        }
        Format::Csv => write_reports_csv(out, std::slice::from_ref(&report), cfg.seed)?,
        Format::Text => {
            writeln!(out, "{}", report.text_line()).map_err(io)?;
            writeln!(out, "lhs      = {}", format_scalar(&report.lhs)).map_err(io)?;
            writeln!(out, "rhs      = {}", format_scalar(&report.rhs)).map_err(io)?;
            writeln!(out, "residual = {}", format_scalar(&report.residual)).map_err(io)?;
        }
    }
    Ok(report.status.exit_code() as u8)
}

fn cmd_sweep(id: &str, params: &ParamFlags, cfg: &RunConfig, ctx: &PrecisionContext, out: &mut dyn Write) -> Result<u8, Error> {
    let info = registry::lookup(id)?;
    let reports = sweep::run(info, &params.pairs(), ctx)?;
    let summary = SweepSummary::of(&reports, ctx);
    let io = |e: io::Error| Error::Parse(format!("write failed: {e}"));
    match cfg.format {
        Format::Json => {
            let doc = json!({
                "identity": info.id,
                "digits": ctx.digits(),
                "seed": cfg.seed,
                "reports": reports.iter().map(|r| report_json(r, cfg.seed)).collect::<Vec<_>>(),
                "summary": {
                    "count": summary.count,
                    "failures": summary.failures,
                    "max_residual": format_scalar(&summary.max_residual),
                    "status": summary.status,
                },
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("sweep serializes")).map_err(io)?;
        }
        Format::Csv => write_reports_csv(out, &reports, cfg.seed)?,
        Format::Text => {
            for r in &reports {
                writeln!(out, "{}", r.text_line()).map_err(io)?;
            }
            writeln!(out, "{}", summary.footer()).map_err(io)?;
        }
    }
    if cfg.format != Format::Text && cfg.out.is_some() {
        eprintln!("{}", summary.footer());
    }
    Ok(summary.status.exit_code() as u8)
}

fn cmd_suite(draws: usize, scaling: bool, cfg: &RunConfig, ctx: &PrecisionContext, out: &mut dyn Write) -> Result<u8, Error> {
    let config = SuiteConfig { draws, scaling, ..SuiteConfig::new(ctx.clone(), cfg.seed) };
    let report = suite::run(&config);
    let io = |e: io::Error| Error::Parse(format!("write failed: {e}"));
    match cfg.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report.to_json()).expect("suite serializes")).map_err(io)?,
        Format::Csv => report.write_csv(out)?,
        Format::Text => write!(out, "{}", report.text()).map_err(io)?,
    }
    if cfg.format != Format::Text || cfg.out.is_some() {
        for s in report.summaries() {
            eprintln!("criterion {}: {}", s.criterion, if s.passed { "PASS" } else { "FAIL" });
        }
    }
    Ok(report.exit_code() as u8)
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let cfg = &cli.run;
    let ctx = cfg.context()?;
    let mut out = cfg.sink().map_err(|e| Error::Parse(format!("cannot open output: {e}")))?;
    let code = match &cli.command {
        Command::List { json } => cmd_list(*json, cfg, &mut out).map_err(|e| Error::Parse(format!("write failed: {e}")))?,
        Command::Verify { identity, params } => cmd_verify(identity, params, cfg, &ctx, &mut out)?,
        Command::Sweep { identity, params } => cmd_sweep(identity, params, cfg, &ctx, &mut out)?,
        Command::Suite { draws, no_scaling } => cmd_suite(*draws, !no_scaling, cfg, &ctx, &mut out)?,
    };
    out.flush().map_err(|e| Error::Parse(format!("write failed: {e}")))?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("atanforge: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
