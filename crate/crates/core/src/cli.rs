//! Command-line front end.
//!
//! Flags override values from `--config FILE`, which override defaults. The
//! cache directory comes from `--cache-dir`, then `GEODESIC_CACHE_DIR`, then
//! the config file, then `./geodesic-cache`. Exit status is 0 on success, 1
//! on user error and 2 on internal failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::asymptotics::{compare, default_queries, empirical_model, AsymptoticModel, Query};
use crate::census::{self, Census, EnumerateOptions};
use crate::counting::{truncation_window, CountRow, CountValue, Counter, PairOptions, PairQuery};
use crate::error::{Error, Result};
use crate::hyperbolic::{Representation, DEFAULT_PRECISION};
use crate::surface_group::{HomologyVector, NormKind};

pub const CACHE_ENV: &str = "GEODESIC_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "geodesic-census", version, about = "Census and counting of closed geodesics on hyperbolic surfaces")]
pub struct Cli {
    #[command(flatten)]
    pub opts: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default, Clone)]
pub struct ConfigArgs {
    /// TOML file with any of the options below.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Preset name ("bolza") or path to a representation file.
    #[arg(long, visible_alias = "representation", global = true)]
    pub preset: Option<String>,
    /// Working precision in bits (at least 64).
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Word-length bound of the census.
    #[arg(short = 'L', long = "word-length", global = true)]
    pub word_length: Option<usize>,
    #[arg(long, global = true)]
    pub shards: Option<usize>,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// "default", "empirical" or a path to a model JSON file.
    #[arg(long, global = true)]
    pub model: Option<String>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<OutputFormat>,
    /// Exclude γ₁ = γ₂ from β = 0 pair counts.
    #[arg(long, global = true)]
    pub no_diagonal: bool,
    #[arg(long, value_enum, global = true)]
    pub norm: Option<NormKind>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a census and write it to the cache.
    Census,
    /// Evaluate one counting function from a cached census.
    Count(CountArgs),
    /// Compare counts with predictors and write a report.
    Compare {
        /// TOML file of [[query]] tables; the default set when omitted.
        #[arg(long)]
        queries: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(value_enum)]
    pub function: CountFunction,
    /// Comma-separated homology vector of length 2g.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long)]
    pub x1: Option<f64>,
    #[arg(long)]
    pub x2: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub k: f64,
    /// Homology window for truncated-r2; defaults to √(log x)·log log x.
    #[arg(long)]
    pub window: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountFunction {
    Pi,
    PiBeta,
    RBeta,
    Pair,
    R2,
    P2,
    TruncatedR2,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelSource {
    Default,
    Empirical,
    File(PathBuf),
}

/// Fully resolved configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub representation: String,
    pub precision: u32,
    pub word_length: usize,
    pub shards: usize,
    pub cache_dir: PathBuf,
    pub model: ModelSource,
    pub format: OutputFormat,
    pub include_diagonal: bool,
    pub norm: NormKind,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ConfigFile {
    preset: Option<String>,
    representation: Option<String>,
    precision: Option<u32>,
    word_length: Option<usize>,
    shards: Option<usize>,
    cache_dir: Option<PathBuf>,
    model: Option<String>,
    format: Option<OutputFormat>,
    include_diagonal: Option<bool>,
    norm: Option<NormKind>,
}

impl Config {
    /// Merges flags, the environment and the config file.
    pub fn resolve(args: &ConfigArgs, env_cache_dir: Option<PathBuf>) -> Result<Config> {
        let file = match &args.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
                toml::from_str::<ConfigFile>(&text)
                    .map_err(|e| Error::Config(format!("{}: {e}", p.display())))?
            }
            None => ConfigFile::default(),
        };
        let representation = args
            .preset
            .clone()
            .or(file.preset)
            .or(file.representation)
            .unwrap_or_else(|| "bolza".into());
        let precision = args.precision.or(file.precision).unwrap_or(DEFAULT_PRECISION);
        if precision < 64 {
            return Err(Error::Config(format!("precision {precision} is below 64 bits")));
        }
        let word_length = args.word_length.or(file.word_length).unwrap_or(6);
        if word_length < 1 {
            return Err(Error::Config("word-length bound L must be at least 1".into()));
        }
        let shards = args.shards.or(file.shards).unwrap_or(1);
        if shards < 1 {
            return Err(Error::Config("shard count must be at least 1".into()));
        }
        let cache_dir = args
            .cache_dir
            .clone()
            .or(env_cache_dir)
            .or(file.cache_dir)
            .unwrap_or_else(|| PathBuf::from("geodesic-cache"));
        let model = match args.model.clone().or(file.model).as_deref() {
            None | Some("default") => ModelSource::Default,
            Some("empirical") => ModelSource::Empirical,
            Some(path) => ModelSource::File(PathBuf::from(path)),
        };
        Ok(Config {
            representation,
            precision,
            word_length,
            shards,
            cache_dir,
            model,
            format: args.format.or(file.format).unwrap_or_default(),
            include_diagonal: !args.no_diagonal && file.include_diagonal.unwrap_or(true),
            norm: args.norm.or(file.norm).unwrap_or_default(),
        })
    }

    pub fn representation(&self) -> Result<Representation> {
        Representation::load(&self.representation, self.precision)
    }

    pub fn cache_path(&self, rep: &Representation) -> PathBuf {
        self.cache_dir
            .join(census::census_file_name(rep, self.word_length))
    }

    fn pair_options(&self) -> PairOptions {
        PairOptions {
            include_diagonal: self.include_diagonal,
            norm: self.norm,
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let env_dir = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    let result = Config::resolve(&cli.opts, env_dir).and_then(|cfg| match &cli.command {
        Command::Census => cmd_census(&cfg, out),
        Command::Count(a) => cmd_count(&cfg, a, out),
        Command::Compare { queries } => cmd_compare(&cfg, queries.as_deref(), out),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// 1 for problems with the user's input, 2 for internal failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted(_) | Error::NotHyperbolic | Error::Io { .. } => 2,
        _ => 1,
    }
}

pub fn cmd_census(cfg: &Config, out: &mut dyn Write) -> Result<()> {
    let rep = cfg.representation()?;
    let opts = EnumerateOptions {
        shards: cfg.shards,
        ..Default::default()
    };
    let c = census::enumerate_with(&rep, cfg.word_length, &opts)?;
    std::fs::create_dir_all(&cfg.cache_dir).map_err(|e| Error::io(&cfg.cache_dir, e))?;
    let path = cfg.cache_path(&rep);
    census::save(&c, &path)?;
    let w = |e: std::io::Error| Error::io("<stdout>", e);
    writeln!(out, "wrote {} ({} classes)", path.display(), c.len()).map_err(w)?;
    writeln!(out, "word_length,classes,primitive,shortest_length").map_err(w)?;
    for (wl, n) in c.counts_by_word_length().iter().enumerate().skip(1) {
        let at: Vec<_> = c.classes().iter().filter(|k| k.word_length == wl).collect();
        let prim = at.iter().filter(|k| k.primitive).count();
        let shortest = at
            .iter()
            .map(|k| k.length_f64())
            .fold(f64::INFINITY, f64::min);
        writeln!(out, "{wl},{n},{prim},{shortest:.10}").map_err(w)?;
    }
    let lstar = c.completeness_length()?;
    writeln!(out, "completeness length l* = {}", lstar.to_decimal(20)).map_err(w)?;
    Ok(())
}

fn load_census(cfg: &Config) -> Result<(Representation, Census)> {
    let rep = cfg.representation()?;
    let path = cfg.cache_path(&rep);
    if !path.is_file() {
        return Err(Error::Config(format!(
            "no cached census at {}; run `geodesic-census census -L {}` first",
            path.display(),
            cfg.word_length
        )));
    }
    let c = census::load_for(&path, &rep)?;
    Ok((rep, c))
}

pub fn cmd_count(cfg: &Config, a: &CountArgs, out: &mut dyn Write) -> Result<()> {
    let (_, c) = load_census(cfg)?;
    let counter = Counter::new(&c).with_options(cfg.pair_options());
    let beta = match &a.beta {
        Some(b) => Some(HomologyVector::parse_for_genus(b, c.genus)?),
        None => None,
    };
    let need_beta = || {
        beta.clone()
            .ok_or_else(|| Error::InvalidQuery(format!("{:?} needs --beta", a.function)))
    };
    let single_x = || {
        a.x.ok_or_else(|| Error::InvalidQuery("this function needs --x".into()))
    };
    let pair = || -> Result<PairQuery> {
        let (x1, x2) = match (a.x, a.x1, a.x2) {
            (Some(x), None, None) => (x, x),
            (None, Some(x1), Some(x2)) => (x1, x2),
            _ => return Err(Error::InvalidQuery("give either --x or both --x1 and --x2".into())),
        };
        let b = beta.clone().unwrap_or_else(|| HomologyVector::zero(c.genus));
        PairQuery::new(b, x1, x2, a.k)
    };
    let name = a.function.to_possible_value().unwrap().get_name().to_string();
    let row = match a.function {
        CountFunction::Pi | CountFunction::PiBeta | CountFunction::RBeta => {
            let x = single_x()?;
            if !(x > 0.0) {
                return Err(Error::InvalidQuery(format!("x = {x} must be positive")));
            }
            let (b, value) = match a.function {
                CountFunction::Pi => (None, CountValue::Int(counter.pi(x))),
                CountFunction::PiBeta => {
                    let b = need_beta()?;
                    let v = counter.pi_beta(&b, x);
                    (Some(b), CountValue::Int(v))
                }
                _ => {
                    let b = need_beta()?;
                    let v = counter.r_beta(&b, x);
                    (Some(b), CountValue::Real(v))
                }
            };
            CountRow {
                function: name,
                beta: b,
                x1: x,
                x2: None,
                value,
                complete: counter.is_complete(x),
            }
        }
        _ => {
            let q = pair()?;
            let value = match a.function {
                CountFunction::Pair => CountValue::Int(counter.pair_count(&q)),
                CountFunction::R2 => CountValue::Real(counter.r2_beta(&q)),
                CountFunction::P2 => CountValue::Real(counter.p2_beta(&q)),
                _ => {
                    let u = a.window.unwrap_or_else(|| truncation_window(q.x1.max(q.x2)));
                    CountValue::Real(counter.truncated_r2(&q, u))
                }
            };
            CountRow {
                function: name,
                complete: counter.is_complete(q.x1.max(q.x2)),
                beta: Some(q.beta),
                x1: q.x1,
                x2: Some(q.x2),
                value,
            }
        }
    };
    let w = |e: std::io::Error| Error::io("<stdout>", e);
    match cfg.format {
        OutputFormat::Csv => {
            writeln!(out, "{}", CountRow::CSV_HEADER).map_err(w)?;
            writeln!(out, "{}", row.to_csv()).map_err(w)?;
        }
        OutputFormat::Json => {
            writeln!(out, "{}", serde_json::to_string(&[&row]).expect("row serializes")).map_err(w)?;
        }
    }
    Ok(())
}

fn model_for(cfg: &Config, c: &Census) -> Result<AsymptoticModel> {
    match &cfg.model {
        ModelSource::Default => Ok(AsymptoticModel::default_for_genus(c.genus)),
        ModelSource::Empirical => {
            let l = c.completeness_length_f64().ok_or_else(|| {
                Error::InsufficientData("census has no completeness length".into())
            })?;
            empirical_model(c, (l / 2.0, l))
        }
        ModelSource::File(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            let m = AsymptoticModel::from_json(&text)?;
            if m.genus != c.genus {
                return Err(Error::GenusMismatch {
                    expected: c.genus,
                    found: m.genus,
                });
            }
            Ok(m)
        }
    }
}

pub fn cmd_compare(cfg: &Config, queries: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let (_, c) = load_census(cfg)?;
    let qs = match queries {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            Query::parse_file(&text)?
        }
        None => default_queries(&c),
    };
    let model = model_for(cfg, &c)?;
    let counter = Counter::new(&c).with_options(cfg.pair_options());
    let report = compare(&counter, &model, &qs)?;
    let incomplete = report.rows.iter().filter(|r| !r.complete).count();
    if incomplete > 0 {
        log::warn!("{incomplete} row(s) exceed the completeness length");
    }
    let text = match cfg.format {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => report.to_json() + "\n",
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))
}
