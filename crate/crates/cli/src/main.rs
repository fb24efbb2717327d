//! `catrel`: generalized Catalan sequences, cumulants, convolutions and
//! positivity verdicts from the command line. All numeric output is JSON (or
//! CSV for the region grid); exact rationals serialize as `p/q` strings.
//!
//! Exit codes: 2 usage, 3 domain violation, 4 numeric failure, 5 network.

mod config;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde_json::{json, Value};

use catrel::cumulants::{cumulants, free_power_moments};
use catrel::density::{moment_by_quadrature, DensitySpec};
use catrel::error::Error;
use catrel::hankel::hankel_dets;
use catrel::moments::{moments_r3, moments_recurrence, moments_via_reversion, MomentTable};
use catrel::oeis::{compare, fetch_oeis, load_fixture, FetchConfig, SequenceFixture};
use catrel::oracle::{labeled_path_count, weighted_tree_sum};
use catrel::params::ParamVec;
use catrel::positivity::{
    critical_values, region_grid, region_grid_csv, verdict, Certificate, Status,
    DEFAULT_HANKEL_DEPTH, DEFAULT_NSET_TOL,
};
use catrel::rational::{format_rational, is_integer, parse_rational, to_f64, Rational};
use catrel::roots::DEFAULT_ROOT_TOL;
use config::{parse_bool, Config};

const EXIT_DOMAIN: u8 = 3;
const EXIT_NUMERIC: u8 = 4;
const EXIT_NETWORK: u8 = 5;

#[derive(Parser)]
#[command(
    name = "catrel",
    version,
    about = "Generalized Catalan sequences: exact moments, cumulants, convolutions and positivity"
)]
struct Cli {
    /// Optional key = value file mirroring the flags (flags win).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recurrence,
    Reversion,
    #[value(name = "closed-r3")]
    ClosedR3,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Moment sequence c_0..c_N as a JSON array of rationals.
    Gen {
        #[arg(long, value_parser = parse_params, allow_hyphen_values = true)]
        params: ParamList,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Skip the automatic recurrence/reversion cross-check (N <= 12).
        #[arg(long)]
        no_crosscheck: bool,
    },
    /// Free cumulants kappa_1..kappa_N.
    Cumulants {
        #[arg(long, value_parser = parse_params, allow_hyphen_values = true)]
        params: ParamList,
        #[arg(long)]
        n: usize,
    },
    /// Moments of the free convolution power with exponent t > 0.
    Freepow {
        #[arg(long, value_parser = parse_params, allow_hyphen_values = true)]
        params: ParamList,
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        t: Rational,
        #[arg(long)]
        n: usize,
    },
    /// Monotonic convolution of two parameter vectors.
    Monoconv {
        #[arg(long, value_parser = parse_params, allow_hyphen_values = true)]
        left: ParamList,
        #[arg(long, value_parser = parse_params, allow_hyphen_values = true)]
        right: ParamList,
    },
    /// Positive-definiteness verdict with a machine-checkable certificate.
    Verdict {
        #[arg(long, value_parser = parse_params, allow_hyphen_values = true)]
        params: ParamList,
        #[arg(long)]
        hankel_depth: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Numeric critical-value set of P_a.
    Nset {
        #[arg(long, value_parser = parse_params, allow_hyphen_values = true)]
        params: ParamList,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Exact Hankel determinants H_1..H_depth.
    Hankel {
        #[arg(long, value_parser = parse_params, allow_hyphen_values = true)]
        params: ParamList,
        #[arg(long)]
        depth: usize,
    },
    /// Engine moments vs brute-force enumeration.
    OracleCheck {
        #[arg(long, value_parser = parse_params, allow_hyphen_values = true)]
        params: ParamList,
        #[arg(long)]
        n: usize,
    },
    /// Quadrature moments of a named density vs the exact values.
    DensityCheck {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        reltol: Option<f64>,
    },
    /// Compare engine moments against an integer-sequence fixture.
    OeisCheck {
        #[arg(long, value_parser = parse_params, allow_hyphen_values = true)]
        params: ParamList,
        #[arg(long)]
        id: String,
        #[arg(long)]
        offline: bool,
    },
    /// Fetch and cache a b-file (the only networked verb).
    OeisFetch {
        #[arg(long)]
        id: String,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Timeout in seconds.
        #[arg(long)]
        timeout: Option<u64>,
    },
    /// Exact CSV grid of the r = 4 positivity conditions.
    RegionGrid {
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        e: Rational,
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        a_min: Rational,
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        a_max: Rational,
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        b_min: Rational,
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        b_max: Rational,
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        step: Rational,
    },
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Syntactically parsed coefficient list; domain validation (nonzero
/// vector) happens in the command so it maps to the domain exit code.
#[derive(Clone)]
struct ParamList(Vec<Rational>);

fn parse_params(s: &str) -> Result<ParamList, String> {
    s.split(',')
        .map(|part| parse_rational(part).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, String>>()
        .map(ParamList)
}

impl ParamList {
    fn into_vec(self) -> Result<ParamVec, Failure> {
        ParamVec::new(self.0).map_err(Failure::from)
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Network { .. } | Error::OfflineMiss(_) => EXIT_NETWORK,
            Error::RootFinding { .. } | Error::Quadrature { .. } => EXIT_NUMERIC,
            _ => EXIT_DOMAIN,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match &cli.config {
        None => Config::empty(),
        Some(path) => match Config::load(path) {
            Ok(cfg) => cfg,
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(EXIT_DOMAIN);
            }
        },
    };
    match run(cli.command, &cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, cfg: &Config) -> Result<(), Failure> {
    match command {
        Command::Gen {
            params,
            n,
            method,
            no_crosscheck,
        } => cmd_gen(cfg, params, n, method, no_crosscheck),
        Command::Cumulants { params, n } => {
            if n < 1 {
                return Err(Failure::new(EXIT_DOMAIN, "cumulants need --n >= 1"));
            }
            let k = cumulants(&params.into_vec()?, n);
            print_rational_array(&k.terms);
            Ok(())
        }
        Command::Freepow { params, t, n } => {
            let m = free_power_moments(&params.into_vec()?, &t, n).map_err(Failure::from)?;
            print_rational_array(&m.terms);
            Ok(())
        }
        Command::Monoconv { left, right } => {
            let composed =
                catrel::convolution::mono_conv(&left.into_vec()?, &right.into_vec()?);
            print_rational_array(composed.coeffs());
            Ok(())
        }
        Command::Verdict {
            params,
            hankel_depth,
            tol,
        } => cmd_verdict(cfg, params, hankel_depth, tol),
        Command::Nset { params, tol } => cmd_nset(cfg, params, tol),
        Command::Hankel { params, depth } => {
            let params = params.into_vec()?;
            let c = moments_recurrence(&params, 2 * depth.saturating_sub(1).max(1));
            let dets = hankel_dets(&c.terms, depth).map_err(Failure::from)?;
            print_rational_array(&dets);
            Ok(())
        }
        Command::OracleCheck { params, n } => cmd_oracle_check(params, n),
        Command::DensityCheck { spec, n, reltol } => cmd_density_check(cfg, &spec, n, reltol),
        Command::OeisCheck {
            params,
            id,
            offline,
        } => cmd_oeis_check(cfg, params, &id, offline),
        Command::OeisFetch {
            id,
            cache_dir,
            timeout,
        } => cmd_oeis_fetch(cfg, &id, cache_dir, timeout),
        Command::RegionGrid {
            e,
            a_min,
            a_max,
            b_min,
            b_max,
            step,
        } => {
            let cells =
                region_grid(&e, &a_min, &a_max, &b_min, &b_max, &step).map_err(Failure::from)?;
            print!("{}", region_grid_csv(&cells));
            Ok(())
        }
    }
}

fn cmd_gen(
    cfg: &Config,
    params: ParamList,
    n: usize,
    method: Option<Method>,
    no_crosscheck: bool,
) -> Result<(), Failure> {
    let params = params.into_vec()?;
    let method = match method {
        Some(m) => m,
        None => match cfg.get("method") {
            Some("recurrence") => Method::Recurrence,
            Some("reversion") => Method::Reversion,
            Some("closed-r3") => Method::ClosedR3,
            Some(other) => {
                return Err(Failure::new(EXIT_DOMAIN, format!("unknown method `{other}`")))
            }
            None => Method::Recurrence,
        },
    };
    let no_crosscheck = no_crosscheck
        || cfg
            .parse("no-crosscheck", parse_bool)
            .map_err(|m| Failure::new(EXIT_DOMAIN, m))?
            .unwrap_or(false);
    let table: MomentTable = match method {
        Method::Recurrence => {
            let t = moments_recurrence(&params, n);
            if n <= 12 && !no_crosscheck {
                let check = moments_via_reversion(&params, n);
                if check.terms != t.terms {
                    return Err(Failure::new(
                        EXIT_NUMERIC,
                        "recurrence/reversion cross-check failed",
                    ));
                }
            }
            t
        }
        Method::Reversion => moments_via_reversion(&params, n),
        Method::ClosedR3 => {
            let Some((a, b)) = params.as_r3() else {
                return Err(Failure::new(
                    EXIT_DOMAIN,
                    "closed-r3 applies only to vectors with r <= 3",
                ));
            };
            moments_r3(&a, &b, n)
        }
    };
    print_rational_array(&table.terms);
    Ok(())
}

fn cmd_verdict(
    cfg: &Config,
    params: ParamList,
    hankel_depth: Option<usize>,
    tol: Option<f64>,
) -> Result<(), Failure> {
    let params = params.into_vec()?;
    let depth = resolve(cfg, hankel_depth, "hankel-depth", DEFAULT_HANKEL_DEPTH, |s| {
        s.parse().map_err(|e| format!("{e}"))
    })?;
    let tol = resolve(cfg, tol, "tol", DEFAULT_NSET_TOL, |s| {
        s.parse().map_err(|e| format!("{e}"))
    })?;
    let v = verdict(&params, depth, tol).map_err(Failure::from)?;
    let status = match v.status {
        Status::PositiveDefinite => "PositiveDefinite",
        Status::NotPositiveDefinite => "NotPositiveDefinite",
        Status::Unknown => "Unknown",
    };
    let certificate = match &v.certificate {
        None => Value::Null,
        Some(c) => certificate_json(c),
    };
    let out = json!({
        "status": status,
        "rigorous": v.rigorous,
        "certificate": certificate,
    });
    print_json(&out)
}

fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::IffCriterionR3 => json!({"type": "IffCriterionR3"}),
        Certificate::SturmAllRealRoots => json!({"type": "SturmAllRealRoots"}),
        Certificate::NumericNsetReal { tol } => json!({"type": "NumericNsetReal", "tol": tol}),
        Certificate::SpecialSubclassR4 => json!({"type": "SpecialSubclassR4"}),
        Certificate::SymmetricR5 => json!({"type": "SymmetricR5"}),
        Certificate::SymmetricR7 => json!({"type": "SymmetricR7"}),
        Certificate::HankelNegative { order, determinant } => json!({
            "type": "HankelNegative",
            "order": order,
            "determinant": format_rational(determinant),
        }),
        Certificate::NecessaryR4Violated => json!({"type": "NecessaryR4Violated"}),
        Certificate::R3CriterionViolated => json!({"type": "R3CriterionViolated"}),
    }
}

fn cmd_nset(cfg: &Config, params: ParamList, tol: Option<f64>) -> Result<(), Failure> {
    let params = params.into_vec()?;
    let tol = resolve(cfg, tol, "tol", DEFAULT_ROOT_TOL, |s| {
        s.parse().map_err(|e| format!("{e}"))
    })?;
    let set = critical_values(&params, tol).map_err(Failure::from)?;
    let pairs: Vec<Value> = set
        .pairs
        .iter()
        .map(|p| {
            json!({
                "w0": [p.w0.re, p.w0.im],
                "z0": [p.z0.re, p.z0.im],
                "residual": p.residual,
            })
        })
        .collect();
    let distinct: Vec<Value> = set
        .distinct_z()
        .iter()
        .map(|z| json!([z.re, z.im]))
        .collect();
    print_json(&json!({
        "tol": tol,
        "pairs": pairs,
        "distinct_z": distinct,
    }))
}

fn cmd_oracle_check(params: ParamList, n: usize) -> Result<(), Failure> {
    let params = params.into_vec()?;
    let engine = moments_recurrence(&params, n).terms[n].clone();
    let tree = weighted_tree_sum(&params, n).map_err(Failure::from)?;
    let integral = params.coeffs().iter().all(|c| is_integer(c) && !c.is_negative());
    let path_value = if integral {
        Some(labeled_path_count(&params, n).map_err(Failure::from)?)
    } else {
        None
    };
    let tree_matches = tree == engine;
    let path_matches = path_value
        .as_ref()
        .map(|p| Rational::from_integer(p.clone()) == engine);
    print_json(&json!({
        "params": params.to_string(),
        "n": n,
        "engine": format_rational(&engine),
        "tree_sum": format_rational(&tree),
        "path_count": path_value.as_ref().map(|p| p.to_string()),
        "match": tree_matches && path_matches.unwrap_or(true),
    }))
}

fn cmd_density_check(cfg: &Config, spec: &str, n: u32, reltol: Option<f64>) -> Result<(), Failure> {
    let reltol = resolve(cfg, reltol, "reltol", 1e-8, |s| {
        s.parse().map_err(|e| format!("{e}"))
    })?;
    let spec = DensitySpec::parse(spec).map_err(Failure::from)?;
    let exact = spec.exact_moments(n as usize).map_err(Failure::from)?;
    let mut rows = Vec::new();
    let mut max_rel = 0.0f64;
    for k in 0..=n {
        let q = moment_by_quadrature(&spec, k, reltol).map_err(Failure::from)?;
        let e = to_f64(&exact[k as usize]);
        let abs_err = (q - e).abs();
        let rel_err = abs_err / e.abs().max(1.0);
        max_rel = max_rel.max(rel_err);
        rows.push(json!({
            "n": k,
            "exact": format_rational(&exact[k as usize]),
            "quadrature": q,
            "rel_err": rel_err,
        }));
    }
    print_json(&json!({
        "spec": format!("{spec:?}"),
        "reltol": reltol,
        "rows": rows,
        "max_rel_err": max_rel,
        "pass": max_rel <= reltol * 10.0,
    }))
}

fn oeis_fetch_config(
    cfg: &Config,
    cache_dir: Option<PathBuf>,
    timeout: Option<u64>,
    offline: bool,
) -> Result<FetchConfig, Failure> {
    let dir = cache_dir
        .or_else(|| cfg.get("cache-dir").map(PathBuf::from))
        .or_else(|| std::env::var_os("OEIS_CACHE_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(".oeis-cache"));
    let timeout = match timeout {
        Some(t) => t,
        None => resolve(cfg, None, "timeout", 10u64, |s| {
            s.parse().map_err(|e| format!("{e}"))
        })?,
    };
    let offline = offline
        || cfg
            .parse("offline", parse_bool)
            .map_err(|m| Failure::new(EXIT_DOMAIN, m))?
            .unwrap_or(false)
        || std::env::var("OEIS_OFFLINE").map(|v| !v.is_empty() && v != "0").unwrap_or(false);
    Ok(FetchConfig {
        cache_dir: dir,
        timeout: Duration::from_secs(timeout),
        offline,
    })
}

fn cmd_oeis_check(cfg: &Config, params: ParamList, id: &str, offline: bool) -> Result<(), Failure> {
    let params = params.into_vec()?;
    let (fixture, source): (SequenceFixture, &str) = match load_fixture(id) {
        Ok(f) => (f, "embedded"),
        Err(_) => {
            let fc = oeis_fetch_config(cfg, None, None, offline)?;
            (fetch_oeis(id, &fc).map_err(Failure::from)?, "oeis-fetched")
        }
    };
    let depth = (fixture.terms.len() + 2).min(32);
    let engine = moments_recurrence(&params, depth.saturating_sub(1));
    let report = compare(&engine.terms, &fixture).map_err(Failure::from)?;
    print_json(&json!({
        "id": id,
        "source": source,
        "match": report.matched,
        "shift": report.shift,
        "first_mismatch": report.first_mismatch,
        "overlap": report.overlap,
        "agreed": report.agreed,
    }))
}

fn cmd_oeis_fetch(
    cfg: &Config,
    id: &str,
    cache_dir: Option<PathBuf>,
    timeout: Option<u64>,
) -> Result<(), Failure> {
    let fc = oeis_fetch_config(cfg, cache_dir, timeout, false)?;
    let fixture = fetch_oeis(id, &fc).map_err(Failure::from)?;
    print_json(&json!({
        "id": fixture.id,
        "offset": fixture.offset,
        "terms": fixture.terms.len(),
        "provenance": fixture.provenance.to_string(),
        "cache_dir": fc.cache_dir.display().to_string(),
    }))
}

fn resolve<T, F>(
    cfg: &Config,
    flag: Option<T>,
    key: &str,
    default: T,
    parse: F,
) -> Result<T, Failure>
where
    F: Fn(&str) -> Result<T, String>,
{
    if let Some(v) = flag {
        return Ok(v);
    }
    cfg.parse(key, parse)
        .map_err(|m| Failure::new(EXIT_DOMAIN, m))
        .map(|opt| opt.unwrap_or(default))
}

fn print_rational_array(terms: &[Rational]) {
    let values: Vec<Value> = terms.iter().map(|t| json!(format_rational(t))).collect();
    println!("{}", Value::Array(values));
}

fn print_json(value: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string(value)
        .map_err(|e| Failure::new(EXIT_NUMERIC, format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}
