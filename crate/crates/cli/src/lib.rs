//! Command-line surface of `wlplab`.
//!
//! Exit status: 0 for success or a true verdict, 1 for a false verdict or a
//! failed reproduction, 2 for usage and input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use wlplab::catalog::{self, FamilyKind};
use wlplab::{
    hilbert_quotient, indpoly_rec, parse_family, unimodality_report, CertifyMode, Characteristic,
    IntPolynomial, WlpOptions, WlpVerdict,
};

mod cache;
mod reproduce;

pub use cache::{Cache, CacheEntry};
pub use reproduce::{CaseResult, ReproductionReport, Target};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "wlplab",
    version,
    about = "Independence polynomials and the weak Lefschetz property of A(G)"
)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, env = "WLPLAB_FORMAT", value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Field characteristic: 0 or a prime below 2^63
    #[arg(long = "char", global = true, env = "WLPLAB_CHAR", default_value = "0", value_parser = parse_char)]
    pub characteristic: Characteristic,

    /// How characteristic-zero ranks are certified
    #[arg(long, global = true, env = "WLPLAB_CERTIFY", default_value = "auto", value_parser = parse_certify)]
    pub certify: CertifyMode,

    /// Seed for random primes
    #[arg(long, global = true, env = "WLPLAB_SEED")]
    pub seed: Option<u64>,

    /// Largest basis size for certifying a rank deficiency (0 = no limit)
    #[arg(long, global = true, env = "WLPLAB_MAX_BASIS", default_value_t = wlplab::algebra::DEFAULT_MAX_BASIS)]
    pub max_basis: usize,

    /// Worker threads (default: all cores)
    #[arg(long, global = true, env = "WLPLAB_THREADS")]
    pub threads: Option<usize>,

    /// Append-only JSON-lines cache of WLP verdicts
    #[arg(long, global = true, env = "WLPLAB_CACHE")]
    pub cache: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Independence polynomial I(G;t)
    Indpoly { spec: String },
    /// Mode of I(G;t)
    Mode { spec: String },
    /// Decide the WLP of A(G) for each spec
    Wlp {
        #[arg(required = true)]
        specs: Vec<String>,
    },
    /// Hilbert series of A(G)/lA(G)
    Quotient { spec: String },
    /// Re-run a classification or example and compare with the known result
    Reproduce {
        #[arg(value_enum)]
        target: Target,
        /// Upper end of the n range
        #[arg(long, env = "WLPLAB_MAX_N")]
        max_n: Option<usize>,
    },
    /// Known classifications as data
    Catalog,
}

fn parse_char(s: &str) -> Result<Characteristic, String> {
    let c: u64 = s.parse().map_err(|e| format!("{e}"))?;
    Characteristic::from_u64(c).map_err(|e| e.to_string())
}

fn parse_certify(s: &str) -> Result<CertifyMode, String> {
    match s {
        "auto" => Ok(CertifyMode::Auto),
        "exact" => Ok(CertifyMode::Exact),
        "fast" => Ok(CertifyMode::Fast),
        _ => Err(format!("expected one of auto, exact, fast; got '{s}'")),
    }
}

/// Shared state for one invocation.
pub struct Engine {
    pub options: WlpOptions,
    pub certify: CertifyMode,
    cache: Option<Cache>,
}

impl Engine {
    pub fn new(cli: &Cli) -> Result<Self, String> {
        let options = WlpOptions {
            characteristic: cli.characteristic,
            certify: cli.certify,
            seed: cli.seed,
            max_basis: (cli.max_basis > 0).then_some(cli.max_basis),
        };
        let cache = match &cli.cache {
            Some(path) => Some(Cache::open(path).map_err(|e| e.to_string())?),
            None => None,
        };
        Ok(Self {
            options,
            certify: cli.certify,
            cache,
        })
    }

    pub fn with_options(options: WlpOptions) -> Self {
        Self {
            options,
            certify: options.certify,
            cache: None,
        }
    }

    /// WLP verdict for a spec, served from the cache when possible.
    pub fn verdict(&self, spec: &str) -> wlplab::Result<WlpVerdict> {
        self.verdict_in(spec, self.options.characteristic)
    }

    /// Same as [`Engine::verdict`] over another characteristic.
    pub fn verdict_in(
        &self,
        spec: &str,
        characteristic: Characteristic,
    ) -> wlplab::Result<WlpVerdict> {
        let family = parse_family(spec)?;
        let canonical = family.to_string();
        let key = Cache::key(&canonical, characteristic, self.certify);
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(&key)) {
            return Ok(hit);
        }
        let g = wlplab::make_family(&family)?;
        let options = self.options.with_characteristic(characteristic);
        let verdict = wlplab::wlp_check(&g, &options)?.with_spec(canonical);
        if let Some(cache) = &self.cache {
            // a cache write failure must not lose the computed answer
            if let Err(e) = cache.append(&key, &verdict) {
                eprintln!("warning: cache not updated: {e}");
            }
        }
        Ok(verdict)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    // output is buffered so the command can run inside the pool
    let mut buffer = Vec::new();
    let result = pool.install(|| execute(&cli, &mut buffer));
    if let Err(e) = out.write_all(&buffer).and_then(|_| out.flush()) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    match result {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, String> {
    let engine = Engine::new(cli)?;
    let fail = |e: wlplab::Error| e.to_string();
    let io = |e: std::io::Error| e.to_string();
    match &cli.command {
        Command::Indpoly { spec } => {
            let g = wlplab::parse_spec(spec).map_err(fail)?;
            let p = indpoly_rec(&g);
            write_polynomial(out, cli.format, spec, &p, true).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Mode { spec } => {
            let g = wlplab::parse_spec(spec).map_err(fail)?;
            let report = unimodality_report(&indpoly_rec(&g));
            match cli.format {
                Format::Table => match report.mode {
                    Some(m) => writeln!(out, "{m}"),
                    None => writeln!(out, "not unimodal"),
                },
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({ "spec": spec, "is_unimodal": report.is_unimodal, "mode": report.mode })
                ),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["spec", "is_unimodal", "mode"])
                        .map_err(|e| e.to_string())?;
                    let mode = report.mode.map_or(String::new(), |m| m.to_string());
                    w.write_record([spec.as_str(), &report.is_unimodal.to_string(), &mode])
                        .map_err(|e| e.to_string())?;
                    out.write_all(&w.into_inner().map_err(|e| e.to_string())?)
                }
            }
            .map_err(io)?;
            Ok(if report.is_unimodal {
                EXIT_OK
            } else {
                EXIT_FALSE
            })
        }
        Command::Wlp { specs } => {
            let verdicts = specs
                .par_iter()
                .map(|s| engine.verdict(s))
                .collect::<wlplab::Result<Vec<_>>>()
                .map_err(fail)?;
            write_verdicts(out, cli.format, &verdicts).map_err(io)?;
            Ok(if verdicts.iter().all(|v| v.has_wlp) {
                EXIT_OK
            } else {
                EXIT_FALSE
            })
        }
        Command::Quotient { spec } => {
            let g = wlplab::parse_spec(spec).map_err(fail)?;
            let q = hilbert_quotient(&g, &engine.options).map_err(fail)?;
            write_polynomial(out, cli.format, spec, &q, false).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Reproduce { target, max_n } => {
            let report = reproduce::reproduce(*target, *max_n, &engine).map_err(fail)?;
            report.write(out, cli.format).map_err(io)?;
            Ok(if report.pass { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Catalog => {
            write_catalog(out, cli.format).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

fn csv_bytes<F>(header: &[&str], fill: F) -> std::io::Result<Vec<u8>>
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    fill(&mut w)?;
    w.into_inner().map_err(|e| e.into_error())
}

fn write_polynomial(
    out: &mut dyn Write,
    format: Format,
    spec: &str,
    p: &IntPolynomial,
    with_mode: bool,
) -> std::io::Result<()> {
    match format {
        Format::Table => writeln!(out, "{p}"),
        Format::Json => {
            let mut doc = json!({ "spec": spec, "coefficients": p });
            if with_mode {
                let r = unimodality_report(p);
                doc["is_unimodal"] = json!(r.is_unimodal);
                doc["mode"] = json!(r.mode);
            }
            writeln!(out, "{doc}")
        }
        Format::Csv => {
            let bytes = csv_bytes(&["spec", "k", "coefficient"], |w| {
                for (k, c) in p.coeffs().iter().enumerate() {
                    w.write_record([spec, &k.to_string(), &c.to_string()])?;
                }
                Ok(())
            })?;
            out.write_all(&bytes)
        }
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "FAIL"
    } else {
        "ok"
    }
}

fn write_verdicts(
    out: &mut dyn Write,
    format: Format,
    verdicts: &[WlpVerdict],
) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let doc = if verdicts.len() == 1 {
                serde_json::to_string(&verdicts[0])?
            } else {
                serde_json::to_string(verdicts)?
            };
            writeln!(out, "{doc}")
        }
        Format::Csv => {
            let header = [
                "spec",
                "characteristic",
                "has_wlp",
                "k",
                "h_k",
                "h_k1",
                "rank",
                "injective_fail",
                "surjective_fail",
                "method",
                "certified",
            ];
            let bytes = csv_bytes(&header, |w| {
                for v in verdicts {
                    let spec = v.spec.clone().unwrap_or_default();
                    for r in &v.records {
                        w.write_record([
                            spec.clone(),
                            v.characteristic.to_string(),
                            v.has_wlp.to_string(),
                            r.k.to_string(),
                            r.h_k.to_string(),
                            r.h_k1.to_string(),
                            r.rank.to_string(),
                            r.injective_fail.to_string(),
                            r.surjective_fail.to_string(),
                            r.method.as_str().to_string(),
                            r.certified.to_string(),
                        ])?;
                    }
                }
                Ok(())
            })?;
            out.write_all(&bytes)
        }
        Format::Table => {
            for v in verdicts {
                writeln!(
                    out,
                    "{}: has_wlp = {} (char {}, socle degree {})",
                    v.spec.as_deref().unwrap_or("?"),
                    v.has_wlp,
                    v.characteristic,
                    v.socle_degree
                )?;
                writeln!(
                    out,
                    "  {:>3} {:>8} {:>8} {:>8}  {:<4} {:<4} method",
                    "k", "h_k", "h_k+1", "rank", "inj", "surj"
                )?;
                for r in &v.records {
                    let deficient = if r.has_max_rank() {
                        ""
                    } else {
                        "  <- not maximal rank"
                    };
                    let certified = if r.certified { "" } else { " (uncertified)" };
                    writeln!(
                        out,
                        "  {:>3} {:>8} {:>8} {:>8}  {:<4} {:<4} {}{certified}{deficient}",
                        r.k,
                        r.h_k,
                        r.h_k1,
                        r.rank,
                        if r.h_k1 == 0 {
                            "-"
                        } else {
                            flag(r.injective_fail)
                        },
                        flag(r.surjective_fail),
                        r.method.as_str()
                    )?;
                }
            }
            Ok(())
        }
    }
}

fn write_catalog(out: &mut dyn Write, format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&catalog::catalog_json())?
        ),
        Format::Csv => {
            let bytes = csv_bytes(
                &["kind", "n", "mode", "expected_wlp", "expected_failures"],
                |w| {
                    for kind in FamilyKind::ALL {
                        let (min, max) = kind.listed_range();
                        for n in min..=max {
                            let Ok(e) = catalog::classification(kind, n) else {
                                continue;
                            };
                            let failures: Vec<String> =
                                e.expected_failures.iter().map(|f| f.to_string()).collect();
                            let mode = kind.mode(n).map_or(String::new(), |m| m.to_string());
                            w.write_record([
                                kind.name(),
                                &n.to_string(),
                                &mode,
                                &e.expected_wlp.to_string(),
                                &failures.join("; "),
                            ])?;
                        }
                    }
                    Ok(())
                },
            )?;
            out.write_all(&bytes)
        }
        Format::Table => {
            for kind in FamilyKind::ALL {
                let (min, max) = kind.listed_range();
                let wlp: Vec<String> = (min..=max)
                    .filter(|&n| catalog::expected_wlp(kind, n).unwrap_or(false))
                    .map(|n| n.to_string())
                    .collect();
                writeln!(
                    out,
                    "{kind}: WLP exactly for n in {{{}}}; failures listed for {min} <= n <= {max} (degrees relative to {})",
                    wlp.join(","),
                    kind.mode_symbol()
                )?;
                for n in min..=max {
                    let Ok(e) = catalog::classification(kind, n) else {
                        writeln!(out, "  n = {n:>2}: listing not resolvable")?;
                        continue;
                    };
                    if e.expected_failures.is_empty() {
                        continue;
                    }
                    let failures: Vec<String> =
                        e.expected_failures.iter().map(|f| f.to_string()).collect();
                    writeln!(out, "  n = {n:>2}: {}", failures.join(", "))?;
                }
            }
            Ok(())
        }
    }
}
