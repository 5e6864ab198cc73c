//! `polyadj`: adjunction invariants of lattice polytopes from the command line.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 parse error,
//! 4 invalid input, 5 internal inconsistency.

mod census;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use polyadj_core::adjunction;
use polyadj_core::format::{parse_normals, parse_polytope, write_polytope};
use polyadj_core::generators;
use polyadj_core::ratmath::{format_rational, parse_rational};
use polyadj_core::spectrum::{codegree_step, spectrum_superset, CoreNormalConfig};
use polyadj_core::{HPolytope, Rational};

const DEFAULT_MAX_DIM: usize = 8;

#[derive(Parser)]
#[command(
    name = "polyadj",
    version,
    about = "Exact adjunction invariants of lattice polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for a polytope file.
    Analyze {
        file: PathBuf,
        /// Lower bound for candidate codegrees.
        #[arg(long, default_value = "1/2", value_parser = rational)]
        epsilon: Rational,
        /// Canonicity level assumed by the lattice-point check.
        #[arg(long, value_parser = rational)]
        alpha: Option<Rational>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes a polytope from a named family.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Analyzes COUNT seeded random polytopes of dimension DIM.
    Census {
        count: u64,
        dim: usize,
        #[arg(long, value_parser = rational)]
        alpha: Option<Rational>,
        #[arg(long, default_value = "1/2", value_parser = rational)]
        epsilon: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Points per instance; defaults to DIM + 3.
        #[arg(long)]
        points: Option<usize>,
        /// Half-width of the sampling box.
        #[arg(long = "box", default_value_t = 5)]
        half_width: i64,
        /// CSV destination; without it the CSV goes to stdout and the
        /// summary to stderr.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Step and candidate codegrees of a core-normal configuration.
    Spectrum {
        /// Normals-only file.
        #[arg(required_unless_present = "from", conflicts_with = "from")]
        config: Option<PathBuf>,
        /// Use the core normals of this polytope instead.
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long, default_value = "1/2", value_parser = rational)]
        epsilon: Rational,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// conv(0, a e_1, e_2, ..., e_d).
    SimplexScaled { d: usize, a: u64 },
    /// [0, 1]^d.
    Cube { d: usize },
    /// The pentagon -y <= 0, -x <= 0, x - y <= 4, y <= 3, x <= 5.
    #[command(name = "fig1", alias = "pentagon")]
    Pentagon,
    /// Hull of N points drawn from a box, seeded.
    Random {
        d: usize,
        n: usize,
        seed: u64,
        #[arg(long = "box", default_value_t = 5)]
        half_width: i64,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("expected an integer or p/q, got `{s}`"))
}

/// Rejected arguments that parse fine but fall outside what is supported.
#[derive(Debug)]
struct Invalid(String);

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

fn max_dim() -> Result<usize> {
    match std::env::var("POLYADJ_MAX_DIM") {
        Ok(v) => v.parse().map_err(|_| {
            Invalid(format!(
                "POLYADJ_MAX_DIM must be a positive integer, got `{v}`"
            ))
            .into()
        }),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

fn check_dim(d: usize) -> Result<()> {
    let cap = max_dim()?;
    if d > cap {
        return Err(Invalid(format!(
            "dimension {d} exceeds the cap of {cap} (set POLYADJ_MAX_DIM to raise it)"
        ))
        .into());
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn load_polytope(path: &Path) -> Result<(polyadj_core::format::PolytopeInput, HPolytope)> {
    let input =
        parse_polytope(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    check_dim(input.dim())?;
    let p = input.to_polytope()?;
    Ok((input, p))
}

fn cmd_analyze(
    file: &Path,
    epsilon: &Rational,
    alpha: Option<&Rational>,
    format: Format,
    out: Option<&Path>,
) -> Result<()> {
    let (input, p) = load_polytope(file)?;
    let doc = report::analyze(&input, &p, alpha, epsilon)?;
    let text = match format {
        Format::Json => json(&doc)?,
        Format::Text => report::to_text(&doc),
    };
    emit(out, &text)
}

fn cmd_gen(family: &Family, out: Option<&Path>) -> Result<()> {
    let (p, header) = match *family {
        Family::SimplexScaled { d, a } => {
            check_dim(d)?;
            (
                generators::simplex_scaled(d, a)?,
                vec![format!("simplex-scaled {d} {a}")],
            )
        }
        Family::Cube { d } => {
            check_dim(d)?;
            (generators::cube(d)?, vec![format!("cube {d}")])
        }
        Family::Pentagon => (generators::pentagon(), vec!["fig1".to_string()]),
        Family::Random {
            d,
            n,
            seed,
            half_width,
        } => {
            check_dim(d)?;
            (
                generators::random(d, n, seed, half_width)?,
                vec![
                    format!("random {d} {n} {seed} --box {half_width}"),
                    format!(
                        "seed {seed} (splitmix64), points from [-{half_width}, {half_width}]^{d}"
                    ),
                ],
            )
        }
    };
    emit(out, &write_polytope(&p, &header))
}

#[derive(Serialize)]
struct SpectrumOutput {
    epsilon: String,
    step: String,
    candidates: Vec<String>,
}

fn cmd_spectrum(
    config: Option<&Path>,
    from: Option<&Path>,
    epsilon: &Rational,
    format: Format,
    out: Option<&Path>,
) -> Result<()> {
    let (dim, normals) = match (config, from) {
        (Some(path), _) => {
            let parsed = parse_normals(&read(path)?)
                .with_context(|| format!("parsing {}", path.display()))?;
            check_dim(parsed.0)?;
            parsed
        }
        (None, Some(path)) => {
            let (_, p) = load_polytope(path)?;
            (p.dim(), adjunction::analyze(&p)?.core_normals)
        }
        (None, None) => unreachable!("clap requires one source"),
    };
    let cfg = CoreNormalConfig::new(dim, normals)?;
    let step = codegree_step(&cfg)?.step;
    let candidates = spectrum_superset(&cfg, epsilon)?;
    let doc = SpectrumOutput {
        epsilon: format_rational(epsilon),
        step: format_rational(&step),
        candidates: candidates.iter().map(format_rational).collect(),
    };
    let text = match format {
        Format::Json => json(&doc)?,
        Format::Text => {
            let mut t = format!("step {}\n", doc.step);
            for c in &doc.candidates {
                t.push_str(c);
                t.push('\n');
            }
            t
        }
    };
    emit(out, &text)
}

fn cmd_census(settings: census::Settings, out: Option<&Path>) -> Result<()> {
    check_dim(settings.dim)?;
    let summary = match out {
        Some(path) => {
            let file =
                fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let summary = census::run(&settings, io::BufWriter::new(file))?;
            io::stdout().write_all(json(&summary)?.as_bytes())?;
            summary
        }
        None => {
            let summary = census::run(&settings, io::stdout().lock())?;
            io::stderr().write_all(json(&summary)?.as_bytes())?;
            summary
        }
    };
    if summary.lemma_failures + summary.superset_misses + summary.dilation_failures > 0 {
        return Err(polyadj_core::Error::Internal(format!(
            "census found {} lemma failures, {} superset misses, {} dilation failures",
            summary.lemma_failures, summary.superset_misses, summary.dilation_failures
        ))
        .into());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze {
            file,
            epsilon,
            alpha,
            format,
            out,
        } => cmd_analyze(&file, &epsilon, alpha.as_ref(), format, out.as_deref()),
        Command::Gen { family, out } => cmd_gen(&family, out.as_deref()),
        Command::Census {
            count,
            dim,
            alpha,
            epsilon,
            seed,
            points,
            half_width,
            out,
        } => cmd_census(
            census::Settings {
                count,
                dim,
                points: points.unwrap_or(dim + 3),
                half_width,
                seed,
                alpha,
                epsilon,
            },
            out.as_deref(),
        ),
        Command::Spectrum {
            config,
            from,
            epsilon,
            format,
            out,
        } => cmd_spectrum(
            config.as_deref(),
            from.as_deref(),
            &epsilon,
            format,
            out.as_deref(),
        ),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<polyadj_core::Error>() {
            return match e {
                polyadj_core::Error::Parse { .. } => 3,
                polyadj_core::Error::Internal(_) => 5,
                _ => 4,
            };
        }
        if cause.is::<Invalid>() {
            return 4;
        }
        if cause.is::<io::Error>() || cause.is::<csv::Error>() || cause.is::<serde_json::Error>() {
            return 1;
        }
    }
    5
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
