//! The `albx` command line: `analyze`, `chow`, `symbol` and `verify`.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chow::{chow_report, ZeroCycle};
use crate::curve::CurveConfig;
use crate::error::{Error, Result};
use crate::funcfield::{format_rat, parse_ratfunc, Point};
use crate::infdiv::divisor_group;
use crate::motive::{albanese, divisor_motive, dualize};
use crate::symbols::{local_symbol, reciprocity_check, SymbolTag};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILURE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "albx", version, about = "Generalized Albanese of rational singular curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Divisor group bases, Albanese structure and the 1-motive with its dual.
    Analyze { curve: PathBuf },
    /// Abel-Jacobi coordinates of a 0-cycle and its equivalence verdict.
    Chow {
        curve: PathBuf,
        /// e.g. "C0:2=+1,C0:3=-1"
        #[arg(long, allow_hyphen_values = true)]
        cycle: String,
    },
    /// A local symbol at one point, or the full reciprocity table.
    Symbol {
        #[arg(long)]
        tag: String,
        #[arg(long, allow_hyphen_values = true)]
        psi: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Run the property suites on a curve (or the built-in fixtures).
    Verify {
        curve: Option<PathBuf>,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Rendered output and exit status of one invocation.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn load(path: &Path) -> Result<CurveConfig> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    CurveConfig::from_json(&src)
}

fn render(format: Format, value: &Value, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => text(),
    }
}

pub fn analyze(path: &Path, format: Format) -> Result<String> {
    let config = load(path)?;
    let group = divisor_group(&config)?;
    let motive = divisor_motive(&config)?;
    let dual = dualize(&motive)?;
    let alb = albanese(&config)?;
    let value = json!({
        "truncation": config.truncation(),
        "divisor_group": group.to_json(),
        "albanese": alb.to_json(),
        "motive": motive.to_string(),
        "dual_motive": dual.to_string(),
    });
    Ok(render(format, &value, || {
        let mut out = String::new();
        out.push_str(&format!("truncation      {}\n", config.truncation()));
        out.push_str(&format!("albanese        {}\n", alb.group));
        out.push_str(&format!("torus_rank      {}\n", alb.group.torus_rank));
        out.push_str(&format!("vectorial_dim   {}\n", alb.group.vectorial_dim));
        out.push_str(&format!("motive          {motive}\n"));
        out.push_str(&format!("dual motive     {dual}\n"));
        for d in &alb.etale_basis {
            out.push_str(&format!("etale           {d}\n"));
        }
        for d in &alb.lie_basis {
            out.push_str(&format!("lie             {d}\n"));
        }
        let bp: Vec<String> = alb.base_points.iter().map(|p| p.to_string()).collect();
        out.push_str(&format!("base points     {}\n", bp.join(", ")));
        out
    }))
}

pub fn chow(path: &Path, cycle: &str, format: Format) -> Result<String> {
    let config = load(path)?;
    let d = ZeroCycle::parse(cycle, &config)?;
    let report = chow_report(&d, &config)?;
    Ok(render(format, &report.to_json(), || {
        let coords = report
            .coordinates
            .as_ref()
            .map_or("undefined (nonzero degree)".to_string(), |c| c.to_string());
        format!(
            "cycle        {}\ncoordinates  {coords}\nequivalent   {}\n",
            if report.cycle.is_zero() { "0".to_string() } else { report.cycle.to_string() },
            report.equivalent
        )
    }))
}

/// Returns the rendered report and whether reciprocity held.
pub fn symbol(tag: &str, psi: &str, f: &str, point: Option<&str>, format: Format) -> Result<(String, bool)> {
    let tag: SymbolTag = tag.parse()?;
    let psi = parse_ratfunc(psi)?;
    let f = parse_ratfunc(f)?;
    match point {
        Some(p) => {
            let p: Point = p.parse()?;
            let v = local_symbol(tag, &psi, &f, &p)?;
            let value = json!({
                "tag": tag.to_string(),
                "point": p.to_string(),
                "value": format_rat(&v.value),
            });
            Ok((render(format, &value, || format!("({psi}, {f})_{p} = {v}\n")), true))
        }
        None => {
            let r = reciprocity_check(&psi, &f, tag)?;
            let text = || {
                let mut out = String::new();
                for (p, v) in &r.values {
                    out.push_str(&format!("{:<8} {}\n", p.to_string(), format_rat(v)));
                }
                let agg = if tag == SymbolTag::Gm { "product" } else { "sum" };
                out.push_str(&format!("{agg:<8} {}\n", format_rat(&r.aggregate)));
                out
            };
            Ok((render(format, &r.to_json(), text), r.holds()))
        }
    }
}

pub fn verify_command(path: Option<&Path>, trials: usize, seed: u64, format: Format) -> Result<(String, bool)> {
    let curves = match path {
        Some(p) => {
            let name = p.file_stem().map_or("curve".into(), |s| s.to_string_lossy().into_owned());
            vec![(name, load(p)?)]
        }
        None => verify::fixture_curves()?,
    };
    let report = verify::run(&curves, trials, seed);
    Ok((render(format, &report.to_json(), || report.to_text()), report.passed()))
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Analyze { curve } => analyze(curve, cli.format).map(|s| (s, true)),
        Command::Chow { curve, cycle } => chow(curve, cycle, cli.format).map(|s| (s, true)),
        Command::Symbol { tag, psi, f, point } => symbol(tag, psi, f, point.as_deref(), cli.format),
        Command::Verify { curve, trials, seed } => {
            verify_command(curve.as_deref(), *trials as usize, *seed, cli.format)
        }
    };
    match result {
        Ok((stdout, true)) => Outcome { stdout, code: EXIT_OK },
        Ok((stdout, false)) => Outcome {
            stdout,
            code: EXIT_PROPERTY_FAILURE,
        },
        Err(e) => {
            eprintln!("error: {e}");
            Outcome {
                stdout: String::new(),
                code: EXIT_INPUT_ERROR,
            }
        }
    }
}

/// Parses the process arguments, runs, prints, and returns the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
        }
    };
    let out = execute(&cli);
    print!("{}", out.stdout);
    out.code
}
