//! Command line surface for SL2-tilings and strip triangulations.
//!
//! Data goes to stdout, diagnostics to stderr.  Exit codes: 0 when the
//! requested operation is clean, 1 when a semantic check fails, 2 on input
//! errors.  File arguments accept `-` for stdin.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use strip_tilings::fixtures;
use strip_tilings::frieze::FriezeGrid;
use strip_tilings::io::{
    emit_frieze, emit_patch, emit_spec, emit_window, parse_column, parse_polygon, parse_seeds,
    parse_spec, parse_window, WindowStyle,
};
use strip_tilings::phi::{phi_window, verify_window};
use strip_tilings::psi::{psi_window, roundtrip_check};
use strip_tilings::tiling::{
    determinant_fill, ptolemy_report, LinearizationError, PtolemyError, PtolemyOptions,
    TilingWindow,
};

#[derive(Parser)]
#[command(
    name = "striptile",
    version,
    about = "Exact SL2-tilings and triangulations of the infinite strip"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StyleArg {
    /// Tab-separated machine format; parses back byte-exactly.
    Tsv,
    /// Right-aligned matrix with coordinate rulers.
    Ascii,
}

impl From<StyleArg> for WindowStyle {
    fn from(s: StyleArg) -> WindowStyle {
        match s {
            StyleArg::Tsv => WindowStyle::Tsv,
            StyleArg::Ascii => WindowStyle::Ascii,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate the tiling window of a spec.
    Tile {
        /// Spec document (`-` for stdin).
        #[arg(long, default_value = "-")]
        spec: String,
        /// Row range, inclusive.
        #[arg(long, num_args = 2, value_names = ["I0", "I1"], allow_negative_numbers = true, required = true)]
        rows: Vec<i64>,
        /// Column range, inclusive.
        #[arg(long, num_args = 2, value_names = ["J0", "J1"], allow_negative_numbers = true, required = true)]
        cols: Vec<i64>,
        /// Re-check every entry against the per-cell polygon semantics.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = StyleArg::Tsv)]
        style: StyleArg,
    },
    /// Recover the triangulation patch visible in a window.
    Extract {
        /// Window document (`-` for stdin).
        #[arg(long, default_value = "-")]
        window: String,
    },
    /// Run the structural checks on a window.
    Check {
        /// Window document (`-` for stdin).
        #[arg(long, default_value = "-")]
        window: String,
        /// Keep running after the first failing check.
        #[arg(long)]
        all: bool,
        /// Per-family cap on checked Ptolemy tuples (sampled beyond it).
        #[arg(long)]
        cap: Option<u64>,
        /// Seed for Ptolemy tuple sampling.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Complete a window from seed entries by the determinant rule.
    Fill {
        /// Seed document of `i j value` lines (`-` for stdin).
        #[arg(long, default_value = "-")]
        seed: String,
        #[arg(long, num_args = 2, value_names = ["I0", "I1"], allow_negative_numbers = true, required = true)]
        rows: Vec<i64>,
        #[arg(long, num_args = 2, value_names = ["J0", "J1"], allow_negative_numbers = true, required = true)]
        cols: Vec<i64>,
        #[arg(long, value_enum, default_value_t = StyleArg::Tsv)]
        style: StyleArg,
    },
    /// Propagate a frieze from a boundary column or a polygon.
    #[command(group(ArgGroup::new("source").required(true).args(["column", "polygon"])))]
    Frieze {
        /// Whitespace-separated boundary column, e.g. "1 3 2 1".
        #[arg(long)]
        column: Option<String>,
        /// Polygon document (`-` for stdin).
        #[arg(long)]
        polygon: Option<String>,
    },
    /// Round-trip a spec through its window and back.
    Roundtrip {
        /// Spec document (`-` for stdin).
        #[arg(long, default_value = "-")]
        spec: String,
        #[arg(long, num_args = 2, value_names = ["I0", "I1"], allow_negative_numbers = true, required = true)]
        rows: Vec<i64>,
        #[arg(long, num_args = 2, value_names = ["J0", "J1"], allow_negative_numbers = true, required = true)]
        cols: Vec<i64>,
    },
    /// Print a bundled example.
    Demo {
        #[arg(value_enum)]
        which: DemoArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DemoArg {
    /// 11x11 window of a tiling with enough ones.
    Figure2,
    /// 11x11 window of the tiling with a single 1.
    Figure4,
    /// The period-2 staircase spec.
    Staircase,
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn pair(v: &[i64]) -> (i64, i64) {
    (v[0], v[1])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// `Err` is an input problem (exit 2); `Ok` carries the semantic verdict.
fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Tile {
            spec,
            rows,
            cols,
            verify,
            style,
        } => {
            let spec = parse_spec(&read_input(&spec)?).map_err(|e| e.to_string())?;
            let (rows, cols) = (pair(&rows), pair(&cols));
            if rows.0 > rows.1 || cols.0 > cols.1 {
                return Err("empty row or column range".into());
            }
            let window = phi_window(&spec, rows, cols);
            if verify {
                if let Err(m) = verify_window(&spec, &window) {
                    eprintln!("verification failed: {m}");
                    return Ok(ExitCode::from(1));
                }
                eprintln!("verified {} cells against per-cell evaluation", {
                    let (i0, i1) = window.row_range();
                    let (j0, j1) = window.col_range();
                    (i1 - i0 + 1) * (j1 - j0 + 1)
                });
            }
            print!("{}", emit_window(&window, style.into()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Extract { window } => {
            let window = parse_window(&read_input(&window)?).map_err(|e| e.to_string())?;
            match psi_window(&window) {
                Ok(patch) => {
                    print!("{}", emit_patch(&patch));
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("extraction failed: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Check {
            window,
            all,
            cap,
            seed,
        } => {
            let window = parse_window(&read_input(&window)?).map_err(|e| e.to_string())?;
            let mut options = PtolemyOptions::default();
            if let Some(cap) = cap {
                options.cap = if cap == 0 { None } else { Some(cap) };
            }
            if let Some(seed) = seed {
                options.seed = seed;
            }
            Ok(run_checks(&window, all, &options))
        }
        Command::Fill {
            seed,
            rows,
            cols,
            style,
        } => {
            let seeds = parse_seeds(&read_input(&seed)?).map_err(|e| e.to_string())?;
            let window =
                determinant_fill(&seeds, pair(&rows), pair(&cols)).map_err(|e| e.to_string())?;
            print!("{}", emit_window(&window, style.into()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Frieze { column, polygon } => {
            let grid = if let Some(text) = column {
                let values = parse_column(&text).map_err(|e| e.to_string())?;
                FriezeGrid::from_boundary_column(&values).map_err(|e| e.to_string())?
            } else {
                let text = read_input(polygon.as_deref().expect("clap enforces the group"))?;
                let pt = parse_polygon(&text).map_err(|e| e.to_string())?;
                FriezeGrid::from_polygon(&pt)
            };
            print!("{}", emit_frieze(&grid));
            Ok(ExitCode::SUCCESS)
        }
        Command::Roundtrip { spec, rows, cols } => {
            let spec = parse_spec(&read_input(&spec)?).map_err(|e| e.to_string())?;
            let (rows, cols) = (pair(&rows), pair(&cols));
            if rows.0 > rows.1 || cols.0 > cols.1 {
                return Err("empty row or column range".into());
            }
            let report = roundtrip_check(&spec, rows, cols);
            println!("{report}");
            if report.is_clean() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Demo { which } => {
            match which {
                DemoArg::Figure2 => print!(
                    "{}",
                    emit_window(&fixtures::figure2_window(), WindowStyle::Tsv)
                ),
                DemoArg::Figure4 => print!(
                    "{}",
                    emit_window(&fixtures::figure4_window(), WindowStyle::Tsv)
                ),
                DemoArg::Staircase => print!("{}", emit_spec(&fixtures::staircase_spec())),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Runs the five window checks, printing one status line each.  Stops at
/// the first failure unless `all` is set.
fn run_checks(window: &TilingWindow, all: bool, options: &PtolemyOptions) -> ExitCode {
    let mut clean = true;
    let mut finish = |name: &str, ok: bool, detail: String| {
        if ok {
            println!("{name}: ok{detail}");
        } else {
            println!("{name}: FAILED{detail}");
            clean = false;
        }
        ok
    };

    let violations = window.check_determinants();
    let ok = finish(
        "determinants",
        violations.is_empty(),
        if violations.is_empty() {
            String::new()
        } else {
            format!(" ({} block(s))", violations.len())
        },
    );
    for v in &violations {
        eprintln!("  {v}");
    }
    if !ok && !all {
        return ExitCode::from(1);
    }

    let violations = window.ones_quadrant_check();
    let ok = finish(
        "quadrants",
        violations.is_empty(),
        if violations.is_empty() {
            String::new()
        } else {
            format!(" ({} pair(s))", violations.len())
        },
    );
    for ((a, b), (c, d)) in &violations {
        eprintln!("  ones at ({a}, {b}) and ({c}, {d}) are strictly comparable");
    }
    if !ok && !all {
        return ExitCode::from(1);
    }

    let violations = window.repeated_value_check();
    let ok = finish(
        "repeated-values",
        violations.is_empty(),
        if violations.is_empty() {
            String::new()
        } else {
            format!(" ({} pair(s))", violations.len())
        },
    );
    for v in &violations {
        eprintln!("  {v}");
    }
    if !ok && !all {
        return ExitCode::from(1);
    }

    match ptolemy_report(window, options) {
        Ok(report) => {
            let total: u64 = report.checked.iter().map(|(_, n)| n).sum();
            let ok = finish(
                "ptolemy",
                report.is_clean(),
                format!(
                    " ({total} tuple(s) across {} families)",
                    report.checked.len()
                ),
            );
            for v in &report.violations {
                eprintln!("  {v}");
            }
            if !ok && !all {
                return ExitCode::from(1);
            }
        }
        Err(PtolemyError::TooSmall) => {
            println!("ptolemy: skipped (window too small)");
        }
        Err(e) => {
            finish("ptolemy", false, format!(" ({e})"));
            if !all {
                return ExitCode::from(1);
            }
        }
    }

    match window.linearization() {
        Ok(lin) => {
            finish(
                "linearization",
                true,
                format!(
                    " ({} row and {} column coefficient(s))",
                    lin.row.len(),
                    lin.column.len()
                ),
            );
        }
        Err(LinearizationError::TooSmall) => {
            println!("linearization: skipped (window too small)");
        }
        Err(e) => {
            finish("linearization", false, String::new());
            eprintln!("  {e}");
        }
    }

    if clean {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
