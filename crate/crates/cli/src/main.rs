//! Command-line front end: constellation catalog, probability transform,
//! low-GMI parameters, FOO checks, and GMI evaluation/sweeps over JSON and
//! CSV files.
//!
//! Exit codes: 0 success, 1 malformed input, 2 numeric failure, 3 negative
//! `foo-check` verdict (so shell pipelines can branch on it).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use bicm_shaping::foo::{is_foo, DEFAULT_TOL};
use bicm_shaping::gmi::{gmi_point, gmi_sweep, snr_grid_db, QuadratureSpec};
use bicm_shaping::{
    catalog, transform, Alphabet, BitProbabilities, Constellation, ConstellationDoc, Error,
    Family, LabelingKind,
};

#[derive(Parser)]
#[command(name = "bicm-shaping", version, about = "Low-SNR analysis of shaped BICM constellations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LabelingArg {
    Nbc,
    Brgc,
}

impl From<LabelingArg> for LabelingKind {
    fn from(l: LabelingArg) -> Self {
        match l {
            LabelingArg::Nbc => LabelingKind::Nbc,
            LabelingArg::Brgc => LabelingKind::Brgc,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit a catalog constellation as a JSON document.
    Catalog {
        /// Family: pam, qam_square, psk, ampm8, or star8qam.
        #[arg(long)]
        name: String,
        /// Bits per symbol.
        #[arg(long)]
        m: u32,
        /// Comma-separated zero-bit probabilities (default: uniform).
        #[arg(long)]
        bits: Option<String>,
        #[arg(long, value_enum, default_value = "nbc")]
        labeling: LabelingArg,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the probability transform (or its inverse) to a document.
    Transform {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Invert instead; requires --bits with the original probabilities,
        /// since transformed documents carry uniform bit_probs.
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        bits: Option<String>,
    },
    /// Print the low-GMI parameters of a document.
    Params {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// First-order-optimality check; exits 0 if FOO, 3 if not.
    FooCheck {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Evaluate CM-MI and BICM-GMI at one SNR point.
    Gmi {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "snr-db", allow_negative_numbers = true)]
        snr_db: f64,
        /// Gauss-Hermite order per dimension.
        #[arg(long, default_value_t = QuadratureSpec::DEFAULT_ORDER)]
        quad: usize,
    },
    /// Sweep an SNR grid and write the curve as CSV.
    Sweep {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = -35.0, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, default_value_t = 25.0, allow_negative_numbers = true)]
        to: f64,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = QuadratureSpec::DEFAULT_ORDER)]
        quad: usize,
    },
    /// Sweep a family of shaped distributions b = [0.5, p, ..., p] over a
    /// Gray-labeled catalog constellation, one CSV per p.
    SweepShaping {
        /// Constellation id such as pam8-brgc (family, size, labeling).
        #[arg(long)]
        name: String,
        #[arg(long = "p-list")]
        p_list: String,
        #[arg(long = "out-dir", default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = -35.0, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, default_value_t = 25.0, allow_negative_numbers = true)]
        to: f64,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
        #[arg(long, default_value_t = QuadratureSpec::DEFAULT_ORDER)]
        quad: usize,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self {
            code: if e.is_input_error() { 1 } else { 2 },
            message: e.to_string(),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn parse_probs(s: &str) -> CliResult<BitProbabilities> {
    let values = s
        .split(',')
        .map(|tok| tok.trim().parse::<f64>())
        .collect::<Result<Vec<f64>, _>>()
        .map_err(|e| CliError::input(format!("bad probability list {s:?}: {e}")))?;
    Ok(BitProbabilities::new(values)?)
}

fn read_doc(path: &Path) -> CliResult<Constellation> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(ConstellationDoc::from_json(&text)?.to_constellation()?)
}

fn emit(doc: &ConstellationDoc, out: Option<&Path>) -> CliResult {
    let json = doc.to_json_pretty();
    match out {
        Some(path) => fs::write(path, json + "\n")
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

/// Parse identifiers like `pam8-brgc` or `psk8` into a catalog request.
fn parse_constellation_id(id: &str) -> CliResult<(Family, u32, LabelingKind)> {
    let (body, labeling) = match id.rsplit_once('-') {
        Some((body, "brgc")) => (body, LabelingKind::Brgc),
        Some((body, "nbc")) => (body, LabelingKind::Nbc),
        _ => (id, LabelingKind::Nbc),
    };
    let split = body.find(|c: char| c.is_ascii_digit());
    let (family, size) = match split {
        Some(pos) if pos > 0 => body.split_at(pos),
        _ => (body, ""),
    };
    // Names like ampm8 and star8qam are complete family ids on their own.
    if let Ok(f) = Family::from_str(body) {
        let m = 3;
        return Ok((f, m, labeling));
    }
    let family = Family::from_str(family)?;
    let points: usize = size
        .parse()
        .map_err(|_| CliError::input(format!("cannot parse constellation size in {id:?}")))?;
    if points < 2 || !points.is_power_of_two() {
        return Err(CliError::input(format!(
            "constellation size {points} is not a power of two"
        )));
    }
    Ok((family, points.trailing_zeros(), labeling))
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Catalog {
            name,
            m,
            bits,
            labeling,
            out,
        } => {
            let family = Family::from_str(&name)?;
            let bits = bits.as_deref().map(parse_probs).transpose()?;
            let c = catalog(family, m, labeling.into(), bits)?;
            emit(&ConstellationDoc::from_constellation(&c), out.as_deref())
        }

        Command::Transform {
            input,
            out,
            inverse,
            bits,
        } => {
            let c = read_doc(&input)?.normalize_to_nbc();
            let doc = if inverse {
                let b = bits
                    .as_deref()
                    .map(parse_probs)
                    .transpose()?
                    .ok_or_else(|| {
                        CliError::input(
                            "--inverse needs --bits with the original probabilities \
                             (transformed documents carry uniform bit_probs)",
                        )
                    })?;
                let x = transform::inverse(c.alphabet().points(), &b)?;
                let restored = Constellation::nbc(Alphabet::new(x)?, b)?;
                ConstellationDoc::from_constellation(&restored)
            } else {
                let x = transform::forward(c.alphabet().points(), c.bits())?;
                let transformed =
                    Constellation::nbc(Alphabet::new(x)?, BitProbabilities::uniform(c.m()))?;
                ConstellationDoc::from_constellation(&transformed)
            };
            emit(&doc, out.as_deref())
        }

        Command::Params { input } => {
            let c = read_doc(&input)?;
            let p = c.low_gmi_params()?;
            let out = serde_json::json!({
                "mu": p.mu,
                "es": p.es,
                "alpha": p.alpha,
                "alpha_inv_db": p.alpha_inv_db(),
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            Ok(())
        }

        Command::FooCheck { input, tol } => {
            let c = read_doc(&input)?.normalize_to_nbc();
            let report = is_foo(c.alphabet().points(), c.bits(), tol)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
            if report.is_foo {
                Ok(())
            } else {
                Err(CliError {
                    code: 3,
                    message: String::new(),
                })
            }
        }

        Command::Gmi {
            input,
            snr_db,
            quad,
        } => {
            let c = read_doc(&input)?;
            let quad = QuadratureSpec::new(quad)?;
            let point = gmi_point(&c, snr_db, &quad)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&point).expect("serializable")
            );
            Ok(())
        }

        Command::Sweep {
            input,
            from,
            to,
            step,
            out,
            quad,
        } => {
            let c = read_doc(&input)?;
            let quad = QuadratureSpec::new(quad)?;
            let grid = snr_grid_db(from, to, step)?;
            let label = out
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "sweep".into());
            let curve = gmi_sweep(&c, &grid, &quad, &label)?;
            let mut buf = Vec::new();
            curve.write_csv(&mut buf).expect("in-memory write");
            fs::write(&out, buf)
                .map_err(|e| CliError::input(format!("cannot write {}: {e}", out.display())))?;
            eprintln!("wrote {} points to {}", curve.points.len(), out.display());
            Ok(())
        }

        Command::SweepShaping {
            name,
            p_list,
            out_dir,
            from,
            to,
            step,
            quad,
        } => {
            let (family, m, labeling) = parse_constellation_id(&name)?;
            let quad = QuadratureSpec::new(quad)?;
            let grid = snr_grid_db(from, to, step)?;
            let ps = p_list
                .split(',')
                .map(|tok| tok.trim().parse::<f64>())
                .collect::<Result<Vec<f64>, _>>()
                .map_err(|e| CliError::input(format!("bad p list {p_list:?}: {e}")))?;
            fs::create_dir_all(&out_dir).map_err(|e| {
                CliError::input(format!("cannot create {}: {e}", out_dir.display()))
            })?;

            let mut summary = Vec::new();
            for &p in &ps {
                let mut probs = vec![p; m as usize];
                probs[0] = 0.5;
                let b = BitProbabilities::new(probs)?;
                let c = catalog(family, m, labeling, Some(b))?;
                let params = c.low_gmi_params()?;
                let label = format!("{name}_p{p}");
                let curve = gmi_sweep(&c, &grid, &quad, &label)?;
                let path = out_dir.join(format!("{label}.csv"));
                let mut buf = Vec::new();
                curve.write_csv(&mut buf).expect("in-memory write");
                fs::write(&path, buf).map_err(|e| {
                    CliError::input(format!("cannot write {}: {e}", path.display()))
                })?;
                summary.push(serde_json::json!({
                    "p": p,
                    "alpha": params.alpha,
                    "ebno_endpoint_db": params.alpha_inv_db(),
                    "csv": path.to_string_lossy(),
                }));
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "name": name,
                    "curves": summary,
                }))
                .expect("serializable")
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    // Map usage errors to exit code 1; clap's default of 2 is reserved for
    // numeric failures here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.message.is_empty() {
                eprintln!("error: {}", e.message);
            }
            ExitCode::from(e.code)
        }
    }
}
