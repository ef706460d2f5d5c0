//! `thermolam` command-line tool.
//!
//! Exit status: 0 on success, 1 when `verify` finds a failing check, 2 on
//! invalid input, 3 when the laminate is singular.

mod commands;
mod render;
mod report;

use std::io::{self, BufWriter, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use thermolam::polar::DEFAULT_TOL;
use thermolam::search::Dedup;
use thermolam::{Error, KelvinVec, MaterialCatalog, Predicate, Result, ThermalLoad};

use commands::{DeformArgs, SearchArgs};
use render::{render, Doc, Format};

#[derive(Parser)]
#[command(
    name = "thermolam",
    version,
    about = "Thermoelastic analysis of anisotropic laminates by the polar method"
)]
struct Cli {
    /// Output format; pretty on a terminal, json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// JSON material catalog merged over the built-in materials.
    #[arg(long, global = true, env = "THERMOLAM_MATERIALS")]
    materials: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stiffness, compliance and homogeneity tensors of a laminate file.
    Analyze {
        file: PathBuf,
        /// Add the dense-inverse and alternative-form checks.
        #[arg(long)]
        verify: bool,
    },
    /// Coupling, homogeneity and special-case classification.
    Classify {
        #[arg(required_unless_present = "from_report")]
        file: Option<PathBuf>,
        /// Read the stiffness tensors from an `analyze --format json` report.
        #[arg(long, conflicts_with = "file")]
        from_report: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Free or loaded deformation under a thermal load.
    Deform {
        file: PathBuf,
        /// Uniform temperature change, °C.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t: f64,
        /// Through-thickness temperature gradient, °C/mm.
        #[arg(long = "grad-t", default_value_t = 0.0, allow_negative_numbers = true)]
        grad_t: f64,
        /// Membrane forces `N1,N2,N6` in N/mm (Kelvin components).
        #[arg(long = "N", value_parser = parse_vec, allow_hyphen_values = true)]
        n: Option<KelvinVec>,
        /// Moments `M1,M2,M6` in N (Kelvin components).
        #[arg(long = "M", value_parser = parse_vec, allow_hyphen_values = true)]
        m: Option<KelvinVec>,
        /// Sample the deflected midplane over a `WxH` mm plate.
        #[arg(long, value_parser = parse_plate)]
        plate: Option<(f64, f64)>,
        /// Points per side of the surface sample.
        #[arg(long, default_value_t = 21)]
        grid: usize,
    },
    /// Enumerate stacking sequences satisfying exact predicates (JSON lines).
    Search {
        /// Number of plies.
        #[arg(long)]
        n: usize,
        /// Admissible orientations in degrees.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "0,90"
        )]
        orientations: Vec<f64>,
        /// Predicates to satisfy: B_zero, V_zero, C_zero, B_nonzero, R1B_zero,
        /// warp_free, extension_free, balanced_crossply.
        #[arg(long = "predicate", value_delimiter = ',', required = true)]
        predicates: Vec<Predicate>,
        /// Stop after this many sequences.
        #[arg(long)]
        max_results: Option<usize>,
        /// none, reversal, swap or reversal-swap.
        #[arg(long, default_value = "none")]
        dedup: Dedup,
        /// Material used for numeric re-verification.
        #[arg(long, default_value = "T300/5208")]
        material: String,
        /// Report exact matches without the numeric cross-check.
        #[arg(long)]
        skip_verify: bool,
    },
    /// `θ, value` rows of one component of a tensor over a full turn.
    PolarPlot {
        file: PathBuf,
        /// A B D C U V W Y, or a b d u v1 v2 w for the compliances.
        #[arg(long)]
        tensor: String,
        /// Kelvin indices, e.g. 11, 16, 66 (or 1, 2, 6 for vectors).
        #[arg(long, default_value = "11")]
        component: String,
        /// Angular step, degrees.
        #[arg(long, default_value_t = 1.0)]
        step: f64,
    },
    /// Numeric self-checks, optionally with predicates.
    Verify {
        file: PathBuf,
        #[arg(long = "predicate", value_delimiter = ',')]
        predicates: Vec<Predicate>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn parse_vec(s: &str) -> std::result::Result<KelvinVec, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match parts[..] {
        [a, b, c] => Ok(KelvinVec::new(a, b, c)),
        _ => Err(format!(
            "expected three comma-separated components, got {}",
            parts.len()
        )),
    }
}

fn parse_plate(s: &str) -> std::result::Result<(f64, f64), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got `{s}`"))?;
    let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}"));
    Ok((num(w)?, num(h)?))
}

fn catalog(path: Option<&PathBuf>) -> Result<MaterialCatalog> {
    match path {
        Some(p) => MaterialCatalog::load(p)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display()))),
        None => Ok(MaterialCatalog::builtin()),
    }
}

fn run(cli: Cli, format: Format) -> Result<(Doc, bool)> {
    let cat = catalog(cli.materials.as_ref())?;
    let ok = |d: Doc| Ok((d, true));
    match cli.command {
        Command::Analyze { file, verify } => ok(commands::analyze(&file, verify, &cat)?),
        Command::Classify {
            file,
            from_report,
            tol,
        } => ok(commands::classify(
            file.as_deref(),
            from_report.as_deref(),
            tol,
            &cat,
        )?),
        Command::Deform {
            file,
            t,
            grad_t,
            n,
            m,
            plate,
            grid,
        } => {
            let args = DeformArgs {
                load: ThermalLoad { t, grad_t },
                n: n.unwrap_or_default(),
                m: m.unwrap_or_default(),
                plate,
                grid,
            };
            ok(commands::deform(&file, &args, format, &cat)?)
        }
        Command::Search {
            n,
            orientations,
            predicates,
            max_results,
            dedup,
            material,
            skip_verify,
        } => {
            let args = SearchArgs {
                n,
                orientations,
                predicates,
                max_results,
                dedup,
                material,
                skip_verify,
            };
            ok(commands::search(args, &cat)?)
        }
        Command::PolarPlot {
            file,
            tensor,
            component,
            step,
        } => ok(commands::polar_plot(
            &file, &tensor, &component, step, &cat,
        )?),
        Command::Verify {
            file,
            predicates,
            tol,
        } => commands::verify(&file, &predicates, tol, &cat),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.unwrap_or(if io::stdout().is_terminal() {
        Format::Pretty
    } else {
        Format::Json
    });
    match run(cli, format) {
        Ok((doc, passed)) => {
            let mut out = BufWriter::new(io::stdout().lock());
            let written = render(doc, format, &mut out).and_then(|_| out.flush());
            match written {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                _ if !passed => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_singular() { 3 } else { 2 })
        }
    }
}
