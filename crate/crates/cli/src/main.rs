//! `wallcross`: exact disc potentials and wall-crossing for toric
//! compactifications of `C^n`.
//!
//! Exit codes: 0 on success, 1 for a domain error, 2 for usage, parse or I/O errors.

mod input;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wallcross::base::{classify_point, monodromy_matrix, BaseError, CYFanRays, ChamberPoint};
use wallcross::fan::{validate_fan, EnergyValues, FanError, FanSpec, RelClass};
use wallcross::novikov::{assign_energies, evaluate, NovikovError, NovikovScalar};
use wallcross::series::{ClassSeries, GammaDegree, SeriesError};
use wallcross::wallcross::{
    apply_gluing, chekanov_superpotential, clifford_superpotential, closed_form_invariant,
    invariant_table, wall_crossing_factor, Ambient, ClosedForm, F1Class, GluingDirection,
    ProductBranch, Superpotential, WallcrossError,
};
use wallcross::{format_rational, Rational};

use render::Format;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input. Exit code 2.
    Usage(String),
    /// The input is well formed but the computation is undefined. Exit code 1.
    Domain(String),
}

macro_rules! domain_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        }
    )*};
}

domain_errors!(
    WallcrossError,
    BaseError,
    NovikovError,
    FanError,
    SeriesError
);

#[derive(Debug, Parser)]
#[command(
    name = "wallcross",
    version,
    about = "Exact disc potentials and wall-crossing for toric compactifications of C^n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FormatArg {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ChamberArg {
    /// Clifford chamber: the classes `β_1..β_n`.
    Plus,
    /// Chekanov chamber: the class `β̂`.
    Minus,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AmbientArg {
    Open,
    Compact,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DirectionArg {
    PlusToMinus,
    MinusToPlus,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BranchArg {
    H1,
    H2,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check primitivity, smoothness, completeness and the Fano condition.
    Validate {
        /// Fan spec JSON, or `-` for standard input.
        file: PathBuf,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Print the disc potential of one chamber.
    Superpotential {
        file: PathBuf,
        #[arg(long, value_enum)]
        chamber: ChamberArg,
        #[arg(long, value_enum)]
        ambient: AmbientArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Print the Maslov-2 counts of the compact Chekanov chamber.
    Invariants {
        file: PathBuf,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Apply the wall-crossing map to a series given as JSON records.
    Glue {
        file: PathBuf,
        /// Series records, as printed by `--format json`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        /// Keep terms of γ-degree at most this.
        #[arg(long, default_value_t = GammaDegree::DEFAULT.0)]
        truncate: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Locate a base point `(λ, q2)` relative to the walls.
    Classify {
        #[arg(long)]
        n: usize,
        /// Comma-separated rationals `λ_1,…,λ_{n−1}`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        q2: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Monodromy of a loop through wall components `i` then `j` (0-based rays).
    Monodromy {
        /// JSON with `rays`, `m0` and optional `constants`.
        #[arg(
            long,
            required_unless_present = "affine_cn",
            conflicts_with = "affine_cn"
        )]
        rays: Option<PathBuf>,
        /// Use the fan of C^N in adapted coordinates.
        #[arg(long, value_name = "N")]
        affine_cn: Option<usize>,
        #[arg(long = "i")]
        i: usize,
        #[arg(long = "j")]
        j: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Evaluate a potential at a point of (Λ^*)^n.
    Eval {
        file: PathBuf,
        /// Comma-separated `E(β̂), E(γ_1..γ_{n−1}), E(H_1..H_m)`; the H part may be
        /// omitted for the open ambient. Defaults to the file's energies.
        #[arg(long, allow_hyphen_values = true)]
        energies: Option<String>,
        /// Comma-separated Novikov scalars such as `T^1/2` or `2 + T + O(T^3)`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Cutoff applied to every coordinate, needed to invert non-monomials.
        #[arg(long, allow_hyphen_values = true)]
        cutoff: Option<String>,
        #[arg(long, value_enum, default_value_t = ChamberArg::Minus)]
        chamber: ChamberArg,
        #[arg(long, value_enum, default_value_t = AmbientArg::Compact)]
        ambient: AmbientArg,
        /// Evaluate these series records instead of a chamber potential.
        #[arg(long, conflicts_with_all = ["chamber", "ambient"])]
        input: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Closed-form counts for CP^n, CP^r × CP^{n−r} and F_1.
    Oracle {
        #[command(subcommand)]
        family: OracleFamily,
    },
}

#[derive(Debug, Subcommand)]
enum OracleFamily {
    /// The class `H − nβ̂ + Σ k_i γ_i` in CP^n.
    Cpn {
        #[arg(long)]
        n: usize,
        /// Comma-separated `k_1,…,k_{n−1}`.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        k: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// The class `H_1 − rβ̂ + Σ k_i γ_i` or `H_2 − (n−r)β̂ + Σ k_i γ_i`.
    CpProduct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum)]
        branch: BranchArg,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        k: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// A named class of F_1, such as `H_1 − 2β̂ + γ_1`.
    F1 {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[command(flatten)]
        format: FormatArg,
    },
}

fn potential(
    spec: &FanSpec,
    chamber: ChamberArg,
    ambient: AmbientArg,
) -> Result<Superpotential, CliError> {
    let ambient = match ambient {
        AmbientArg::Open => Ambient::Open,
        AmbientArg::Compact => Ambient::Compact,
    };
    Ok(match chamber {
        ChamberArg::Plus => clifford_superpotential(spec, ambient)?,
        ChamberArg::Minus => chekanov_superpotential(spec, ambient)?,
    })
}

/// Splits a flat energy list by the fan's dimensions.
fn energy_values(spec: &FanSpec, flag: &str) -> Result<EnergyValues, CliError> {
    let values = input::rational_list(flag, "--energies")?;
    let (n, m) = spec.dims();
    if values.len() != n && values.len() != n + m {
        return Err(CliError::Usage(format!(
            "--energies: expected {n} or {} values, found {}",
            n + m,
            values.len()
        )));
    }
    Ok(EnergyValues {
        beta_hat: values[0].clone(),
        gamma: values[1..n].to_vec(),
        h: values[n..].to_vec(),
    })
}

fn oracle(family: OracleFamily) -> Result<String, CliError> {
    let (query, format) = match family {
        OracleFamily::Cpn { n, k, format } => (
            ClosedForm::Cpn {
                n,
                k: input::integer_list(&k, "--k")?,
            },
            format,
        ),
        OracleFamily::CpProduct {
            n,
            r,
            branch,
            k,
            format,
        } => {
            let branch = match branch {
                BranchArg::H1 => ProductBranch::H1,
                BranchArg::H2 => ProductBranch::H2,
            };
            let k = input::integer_list(&k, "--k")?;
            (ClosedForm::CpProduct { n, r, branch, k }, format)
        }
        OracleFamily::F1 { class, format } => {
            let tag: F1Class = class
                .parse()
                .map_err(|e: WallcrossError| CliError::Usage(format!("--class: {e}")))?;
            (ClosedForm::F1(tag), format)
        }
    };
    let class: RelClass = query.class().map_err(|e| CliError::Usage(e.to_string()))?;
    let value = closed_form_invariant(&query)?;
    let rows = vec![
        vec!["class".to_string(), class.pretty()],
        vec!["n_beta".to_string(), format_rational(&value)],
    ];
    render::fields(rows, format.format)
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Validate { file, format } => {
            let spec = input::parse_fan_spec(&file)?;
            render::report(&validate_fan(&spec)?, format.format)
        }
        Command::Superpotential {
            file,
            chamber,
            ambient,
            format,
        } => {
            let spec = input::parse_fan_spec(&file)?;
            let w = potential(&spec, chamber, ambient)?;
            render::series(&spec, w.series(), format.format)
        }
        Command::Invariants { file, format } => {
            let spec = input::parse_fan_spec(&file)?;
            let table = invariant_table(&chekanov_superpotential(&spec, Ambient::Compact)?)?;
            let (n, m) = spec.dims();
            let series =
                ClassSeries::from_terms(n, m, table.rows.into_iter().map(|r| (r.class, r.n_beta)))?;
            render::series(&spec, &series, format.format)
        }
        Command::Glue {
            file,
            input,
            direction,
            truncate,
            format,
        } => {
            let spec = input::parse_fan_spec(&file)?;
            let (n, m) = spec.dims();
            let s = input::parse_series(&input, n, m)?;
            let direction = match direction {
                DirectionArg::PlusToMinus => GluingDirection::PlusToMinus,
                DirectionArg::MinusToPlus => GluingDirection::MinusToPlus,
            };
            let gd = wall_crossing_factor(&spec)
                .with_direction(direction)
                .with_trunc(GammaDegree(truncate));
            let glued = apply_gluing(&spec, &s, &gd)?;
            if glued.incomplete {
                eprintln!("warning: terms beyond γ-degree {truncate} were dropped; the result is a truncation");
            }
            render::series(&spec, &glued.series, format.format)
        }
        Command::Classify {
            n,
            lambda,
            q2,
            format,
        } => {
            let point = ChamberPoint::new(
                input::rational_list(&lambda, "--lambda")?,
                input::rational(&q2, "--q2")?,
            );
            let chamber = classify_point(n, &point)?;
            match format.format {
                Format::Table => Ok(format!("{chamber}\n")),
                f => render::fields(vec![vec!["chamber".to_string(), chamber.to_string()]], f),
            }
        }
        Command::Monodromy {
            rays,
            affine_cn,
            i,
            j,
            format,
        } => {
            let rays = match (rays, affine_cn) {
                (Some(path), _) => input::parse_rays(&path)?,
                (None, Some(n)) if n >= 1 => CYFanRays::affine_cn(n),
                _ => {
                    return Err(CliError::Usage(
                        "--affine-cn: N must be at least 1".to_string(),
                    ))
                }
            };
            render::matrix(&monodromy_matrix(&rays, i, j)?, format.format)
        }
        Command::Eval {
            file,
            energies,
            point,
            cutoff,
            chamber,
            ambient,
            input,
            format,
        } => {
            let spec = input::parse_fan_spec(&file)?;
            let values = match (&energies, spec.energies()) {
                (Some(flag), _) => energy_values(&spec, flag)?,
                (None, Some(e)) => e.clone(),
                (None, None) => {
                    return Err(CliError::Usage(
                        "eval needs energies: pass --energies or add an \"energies\" key"
                            .to_string(),
                    ))
                }
            };
            let cutoff: Option<Rational> = cutoff
                .map(|c| input::rational(&c, "--cutoff"))
                .transpose()?;
            let coords = point
                .split(',')
                .map(|t| {
                    let z: NovikovScalar = t
                        .trim()
                        .parse()
                        .map_err(|e: NovikovError| CliError::Usage(format!("--point: {e}")))?;
                    Ok(match &cutoff {
                        Some(c) => z.with_cutoff(c.clone()),
                        None => z,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let series = match input {
                Some(path) => {
                    let (n, m) = spec.dims();
                    input::parse_series(&path, n, m)?
                }
                None => potential(&spec, chamber, ambient)?.series().clone(),
            };
            let ea = assign_energies(&spec, &values)?;
            render::scalar(&evaluate(&spec, &series, &ea, &coords)?, format.format)
        }
        Command::Oracle { family } => oracle(family),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
