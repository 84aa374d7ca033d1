use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::One;

use convlab::input::{
    cache_dir, expansion, parse_algebraic, parse_bound, parse_polynomial, parse_recurrence, witness_expansion,
};
use convlab::scan::{
    approx_violation_scan, digit_growth_scan, divisor_bound_scan, intersect_scan, sharpness_scan, spart_scan,
    terms_for_bound, DivisorVariant, SpartParams, DEFAULT_SCAN_CAP_BITS,
};
use convlab::{ScanReport, Verdict};
use convlab_core::cfrac::cache::ConvergentCache;
use convlab_core::cfrac::{expand_quadratic, period_matrix_trace, QuadraticSurd};
use convlab_core::construct::{alternating_build, em_build, em_verify, EMConfig, EMWitness};
use convlab_core::numeric::{parse_int, parse_rational};
use convlab_core::recurrence::{classify, decompose};
use convlab_core::smooth::PrimeSet;
use convlab_core::Error;

const EXIT_INVALID: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "convlab", version, about = "Exact experiments with convergents, recurrences and smooth numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certified continued fraction expansion of a real algebraic number.
    Expand {
        #[command(flatten)]
        xi: XiArgs,
        #[arg(long)]
        terms: usize,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, default_value_t = convlab_core::algebraic::DEFAULT_CAP_BITS)]
        precision_cap: u64,
    },
    /// Periodic expansion of (P + sqrt D) / Q and the period trace identity.
    Quad {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        d: String,
        #[arg(long, default_value_t = 200)]
        check_window: usize,
    },
    /// Degeneracy, admissibility and decomposition of a linear recurrence.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true)]
        init: String,
    },
    /// Run an experiment scan and emit JSON lines.
    Scan(ScanArgs),
    /// Smooth-numerator construction.
    Em {
        #[command(subcommand)]
        action: EmAction,
    },
    /// Alternating powers of 2 and 3 among convergent denominators.
    Alt {
        #[command(subcommand)]
        action: AltAction,
    },
}

#[derive(Args, Clone)]
struct XiArgs {
    /// Coefficients, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    minpoly: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    iso_lo: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    iso_hi: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanKind {
    Approx,
    Sharpness,
    Intersect,
    Spart,
    Digits,
    Divisor,
}

#[derive(Args)]
struct ScanArgs {
    kind: ScanKind,
    #[command(flatten)]
    xi: XiArgs,
    /// Recurrence coefficients c_1..c_t.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Initial terms u_1..u_t.
    #[arg(long, allow_hyphen_values = true)]
    init: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long, default_value = "1")]
    lambda: String,
    /// Irrationality exponent, or "unknown" for report-only S-part scans.
    #[arg(long)]
    mu: Option<String>,
    #[arg(long, default_value_t = 10)]
    base: u32,
    #[arg(long, default_value = "2,3,5")]
    primes: String,
    #[arg(long)]
    max_k: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    min_n: Option<usize>,
    #[arg(long, default_value = "10^40")]
    bound: String,
    /// Hard limit on recurrence indices in intersect scans.
    #[arg(long, default_value_t = 10_000_000)]
    n_cap: usize,
    #[arg(long, default_value = "sparse1")]
    variant: String,
    /// EM witness backing an S-part scan.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: bool,
    #[arg(long, default_value_t = DEFAULT_SCAN_CAP_BITS)]
    precision_cap: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum EmAction {
    Build {
        #[arg(long, default_value = "2,3")]
        s_primes: String,
        #[arg(long, default_value = "5")]
        t_primes: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        bit_budget: Option<u64>,
        #[arg(long)]
        max_attempts: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Verify {
        #[arg(long)]
        witness: PathBuf,
    },
}

#[derive(Subcommand)]
enum AltAction {
    Build {
        #[arg(long)]
        c0: u64,
        #[arg(long)]
        d0: u64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure of a command: the message and its exit code.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::PrecisionExhausted { .. }
            | Error::GammaSearchExhausted { .. }
            | Error::StageSelectionExhausted { .. }
            | Error::ResourceLimit(_) => EXIT_EXHAUSTED,
            Error::IdentityViolation { .. } => EXIT_VERIFY,
            _ => EXIT_INVALID,
        };
        Failure(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(EXIT_INVALID, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(EXIT_INVALID, e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("convlab: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Expand {
            xi,
            terms,
            cache,
            precision_cap,
        } => cmd_expand(&xi, terms, cache, precision_cap),
        Command::Quad { p, q, d, check_window } => cmd_quad(&p, &q, &d, check_window),
        Command::Classify { coeffs, init } => cmd_classify(&coeffs, &init),
        Command::Scan(args) => cmd_scan(args),
        Command::Em { action } => match action {
            EmAction::Build {
                s_primes,
                t_primes,
                depth,
                seed,
                bit_budget,
                max_attempts,
                out,
            } => {
                let mut cfg = EMConfig::new(PrimeSet::parse(&s_primes)?, PrimeSet::parse(&t_primes)?, depth, seed)?;
                if let Some(b) = bit_budget {
                    cfg.bit_budget = b;
                }
                if let Some(a) = max_attempts {
                    cfg.max_stage_attempts = a;
                }
                let w = em_build(&cfg)?;
                write_json(out.as_deref(), &w)?;
                Ok(0)
            }
            EmAction::Verify { witness } => {
                let text = std::fs::read_to_string(&witness)?;
                let w: EMWitness = serde_json::from_str(&text)?;
                let report = em_verify(&w, &w.config);
                write_json(None, &report)?;
                Ok(if report.passed { 0 } else { EXIT_VERIFY })
            }
        },
        Command::Alt {
            action: AltAction::Build { c0, d0, steps, out },
        } => {
            let w = alternating_build(c0, d0, steps)?;
            write_json(out.as_deref(), &w)?;
            if let Some(reason) = &w.stop_reason {
                eprintln!("convlab: stopped after {} of {} steps: {reason}", w.completed_steps(), steps);
                return Ok(EXIT_EXHAUSTED);
            }
            Ok(0)
        }
    }
}

fn write_json<T: serde::Serialize>(out: Option<&Path>, v: &T) -> Result<(), Failure> {
    match out {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p)?);
            serde_json::to_writer_pretty(&mut f, v)?;
            f.write_all(b"\n")?;
            f.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut h = stdout.lock();
            serde_json::to_writer_pretty(&mut h, v)?;
            h.write_all(b"\n")?;
        }
    }
    Ok(())
}

fn open_cache(explicit: Option<PathBuf>, disabled: bool) -> Option<ConvergentCache> {
    if disabled {
        return None;
    }
    cache_dir(explicit).map(ConvergentCache::new)
}

fn cmd_expand(xi: &XiArgs, terms: usize, cache: Option<PathBuf>, cap: u64) -> CmdResult {
    let x = algebraic(xi)?;
    let cache = open_cache(cache, false);
    let cfe = expansion(&x, terms, cap, cache.as_ref())?;
    let stdout = io::stdout();
    let mut h = BufWriter::new(stdout.lock());
    for k in 0..cfe.len() {
        let row = serde_json::json!({
            "k": k,
            "a": cfe.a()[k].to_string(),
            "p": cfe.p()[k].to_string(),
            "q": cfe.q()[k].to_string(),
        });
        serde_json::to_writer(&mut h, &row)?;
        h.write_all(b"\n")?;
    }
    h.flush()?;
    Ok(0)
}

fn cmd_quad(p: &str, q: &str, d: &str, window: usize) -> CmdResult {
    let surd = QuadraticSurd::new(parse_int(p)?, parse_int(q)?, parse_int(d)?)?;
    let pcf = expand_quadratic(&surd);
    let trace = period_matrix_trace(&pcf, window)?;
    write_json(None, &serde_json::json!({ "expansion": pcf, "trace_check": trace }))?;
    Ok(0)
}

fn cmd_classify(coeffs: &str, init: &str) -> CmdResult {
    let rec = parse_recurrence(coeffs, init)?;
    let cls = classify(&rec)?;
    let branches = decompose(&rec)?;
    write_json(None, &serde_json::json!({ "classification": cls, "branches": branches }))?;
    Ok(0)
}

fn algebraic(xi: &XiArgs) -> Result<convlab_core::algebraic::AlgebraicReal, Failure> {
    let minpoly = xi
        .minpoly
        .as_deref()
        .ok_or_else(|| Failure(EXIT_INVALID, "--minpoly is required".into()))?;
    Ok(parse_algebraic(minpoly, xi.iso_lo.as_deref(), xi.iso_hi.as_deref())?)
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, Failure> {
    v.as_deref()
        .ok_or_else(|| Failure(EXIT_INVALID, format!("--{flag} is required for this scan")))
}

fn cmd_scan(args: ScanArgs) -> CmdResult {
    if let Some(j) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| Failure(EXIT_INVALID, e.to_string()))?;
    }
    let cache = open_cache(args.cache.clone(), args.no_cache);
    let cap = args.precision_cap;
    let lambda = parse_rational(&args.lambda)?;
    let epsilon = |default: &str| parse_rational(args.epsilon.as_deref().unwrap_or(default));
    let mut report = match args.kind {
        ScanKind::Approx => {
            let x = algebraic(&args.xi)?;
            let rec = parse_recurrence(required(&args.coeffs, "coeffs")?, required(&args.init, "init")?)?;
            approx_violation_scan(&x, &rec, &epsilon("1/10")?, args.max_n.unwrap_or(2000), cap)?
        }
        ScanKind::Sharpness => {
            let f = parse_polynomial(required(&args.xi.minpoly, "minpoly")?)?;
            sharpness_scan(&f, args.min_n.unwrap_or(10), args.max_n.unwrap_or(400), cap)?
        }
        ScanKind::Intersect => {
            let x = algebraic(&args.xi)?;
            let rec = parse_recurrence(required(&args.coeffs, "coeffs")?, required(&args.init, "init")?)?;
            let bound = parse_bound(&args.bound)?;
            let cfe = expansion(&x, terms_for_bound(&bound), cap, cache.as_ref())?;
            intersect_scan(cfe.q(), &rec, &bound, args.n_cap)?
        }
        ScanKind::Spart => {
            let k_max = args.max_k.unwrap_or(300);
            let (cfe, default_mu) = match &args.witness {
                Some(path) => {
                    let w: EMWitness = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    (witness_expansion(&w, k_max + 1)?, "unknown")
                }
                None => (expansion(&algebraic(&args.xi)?, k_max + 1, cap, cache.as_ref())?, "2"),
            };
            let mu = match args.mu.as_deref().unwrap_or(default_mu) {
                "unknown" => None,
                s => Some(parse_rational(s)?),
            };
            if let Some(m) = &mu {
                if m < &(BigRational::one() + BigRational::one()) {
                    return Err(Failure(EXIT_INVALID, "mu must be at least 2".into()));
                }
            }
            // a witness prefix may be shorter than requested
            let k_max = k_max.min(cfe.last_index().saturating_sub(1));
            let params = SpartParams {
                primes: PrimeSet::parse(&args.primes)?,
                mu,
                epsilon: epsilon("1/20")?,
                k_max,
            };
            spart_scan(&cfe, &params)?
        }
        ScanKind::Digits => {
            let x = algebraic(&args.xi)?;
            let k_max = args.max_k.unwrap_or(500);
            let cfe = expansion(&x, k_max, cap, cache.as_ref())?;
            digit_growth_scan(&cfe, args.base, k_max, x.degree() == 2)?
        }
        ScanKind::Divisor => {
            let x = algebraic(&args.xi)?;
            let k_max = args.max_k.unwrap_or(300);
            let variant: DivisorVariant = args.variant.parse()?;
            let cfe = expansion(&x, k_max, cap, cache.as_ref())?;
            divisor_bound_scan(&cfe, args.base, variant, &lambda, &epsilon("1/10")?, k_max)?
        }
    };
    report.set_config("seed", args.seed);
    emit(&report, args.out.as_deref(), args.csv)?;
    Ok(scan_exit_code(&report))
}

fn scan_exit_code(report: &ScanReport) -> u8 {
    let flagged = report
        .records
        .iter()
        .any(|r| r.flags.iter().any(|f| f == "dk_not_dividing_a" || f == "consecutive_not_coprime"));
    let inconsistent = report.experiment == "digits" && report.count(Verdict::Violates) > 0;
    if flagged || inconsistent {
        EXIT_VERIFY
    } else if report.count(Verdict::Undecided) > 0 {
        EXIT_EXHAUSTED
    } else {
        0
    }
}

fn emit(report: &ScanReport, out: Option<&Path>, csv: bool) -> Result<(), Failure> {
    match out {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p)?);
            report.write_jsonl(&mut f)?;
            f.flush()?;
            if csv {
                let mut c = BufWriter::new(File::create(p.with_extension("csv"))?);
                report.write_csv(&mut c)?;
                c.flush()?;
            }
        }
        None => {
            let stdout = io::stdout();
            let mut h = BufWriter::new(stdout.lock());
            if csv {
                report.write_csv(&mut h)?;
            } else {
                report.write_jsonl(&mut h)?;
            }
            h.flush()?;
        }
    }
    Ok(())
}
