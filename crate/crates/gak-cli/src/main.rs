//! `gak` - apply rotor operations to JSON multivectors, run the seeded
//! property suites, and benchmark the fast kernels against the generic
//! engine.
//!
//! Exit codes: 0 success, 1 parse/usage error, 2 mathematical failure
//! (singular input, branch point, unsupported decomposition).

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use gak::doc::{self, AlgebraTag, DocError};
use gak::kernels::{self, count_ops, lift, lower, Counted, OpCounts, BIVECTOR_R301, EVEN_4D, EVEN_R301, EVEN_R41};
use gak::rotor::{
    decompose_trireflection, exp_bivector, invariant_split, log_rotor, normalize,
    rotor_condition_residual, rotor_power, Rotor,
};
use gak::study::{Branch, StudyNumber};
use gak::suites;
use gak::{GaError, Multivector};

#[derive(Parser)]
#[command(name = "gak", version, about = "Geometric-algebra rotor kit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operation to a JSON-encoded multivector
    Apply(ApplyArgs),
    /// Run a seeded property suite
    Check(CheckArgs),
    /// Benchmark a kernel against the generic engine
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ApplyOp {
    Normalize,
    Sqrt,
    Exp,
    Log,
    Split,
    Power,
    Trirefl,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Engine {
    Auto,
    Generic,
    Fast,
}

#[derive(Args)]
struct ApplyArgs {
    #[arg(value_enum)]
    op: ApplyOp,
    /// Input document; reads stdin when omitted or "-"
    input: Option<String>,
    /// Algebra tag: r3, r4, r31, r301, r41 or custom:p,q,r
    #[arg(long)]
    algebra: Option<String>,
    /// Which implementation to use where both exist
    #[arg(long, value_enum, default_value = "auto")]
    engine: Engine,
    /// Rotor-condition tolerance for validating rotor inputs
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Exponent for the power operation
    #[arg(long, default_value_t = 0.5)]
    t: f64,
    /// Probe vector document for trireflection decomposition
    #[arg(long)]
    probe: Option<String>,
    /// Emit coefficients as a dense packed array instead of a label map
    #[arg(long)]
    dense: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Suite name: rotor, roundtrip, split, ortho4 or kernels
    suite: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Samples per algebra; defaults to the suite's acceptance count
    #[arg(long)]
    count: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    /// Operation: normalize, sqrt, exp or log
    op: String,
    /// Algebra tag (kernels exist for r4, r31, r301, r41; exp/log r301 only)
    algebra: String,
    #[arg(long, default_value_t = 1_000_000)]
    iterations: u64,
    /// Report exact operation counts instead of timings
    #[arg(long)]
    count_ops: bool,
}

enum CliError {
    Usage(String),
    Parse(DocError),
    Math(GaError),
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        CliError::Parse(e)
    }
}
impl From<GaError> for CliError {
    fn from(e: GaError) -> Self {
        CliError::Math(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Apply(args) => cmd_apply(args),
        Command::Check(args) => cmd_check(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let (kind, message, code) = match e {
                CliError::Usage(m) => ("usage", m, 1),
                CliError::Parse(err) => ("parse", err.to_string(), 1),
                CliError::Math(err) => ("math", err.to_string(), 2),
            };
            let doc = json!({ "error": { "kind": kind, "message": message } });
            eprintln!("{doc}");
            ExitCode::from(code)
        }
    }
}

fn read_input(arg: &Option<String>) -> Result<String, CliError> {
    match arg.as_deref() {
        Some("-") | None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
        Some(text) => Ok(text.to_string()),
    }
}

fn branch_name(branch: Branch) -> &'static str {
    match branch {
        Branch::CPlus => "c+",
        Branch::CMinus => "c-",
        Branch::PseudoscalarAxis => "pseudoscalar-axis",
    }
}

fn coeffs_value(tag: AlgebraTag, mv: &Multivector, dense: bool) -> Result<Value, CliError> {
    if !mv.is_finite() {
        return Err(CliError::Math(GaError::NonFinite));
    }
    Ok(if dense {
        doc::coeffs_dense(tag, mv)
    } else {
        doc::coeffs_map(tag, mv)
    })
}

/// Fast normalize through the packed kernel of the tag, if one exists.
fn fast_normalize(tag: AlgebraTag, x: &Multivector) -> Option<Result<Multivector, GaError>> {
    let sig = tag.signature();
    match tag {
        AlgebraTag::R4 => Some(EVEN_4D.pack(x).and_then(|p| {
            kernels::r4::normalize(&p).map(|out| EVEN_4D.unpack(sig, &out))
        })),
        AlgebraTag::R31 => Some(EVEN_4D.pack(x).and_then(|p| {
            kernels::r31::normalize(&p).map(|out| EVEN_4D.unpack(sig, &out))
        })),
        AlgebraTag::R301 => Some(EVEN_R301.pack(x).and_then(|p| {
            kernels::r301::normalize(&p).map(|out| EVEN_R301.unpack(sig, &out))
        })),
        AlgebraTag::R41 => Some(EVEN_R41.pack(x).and_then(|p| {
            kernels::r41::normalize(&p).map(|out| EVEN_R41.unpack(sig, &out))
        })),
        _ => None,
    }
}

fn pick_engine(requested: Engine, available: bool, what: &str) -> Result<bool, CliError> {
    match requested {
        Engine::Auto => Ok(available),
        Engine::Generic => Ok(false),
        Engine::Fast => {
            if available {
                Ok(true)
            } else {
                Err(CliError::Usage(format!("no fast kernel for {what}")))
            }
        }
    }
}

fn cmd_apply(args: ApplyArgs) -> Result<ExitCode, CliError> {
    let flag = match &args.algebra {
        Some(s) => Some(s.parse::<AlgebraTag>()?),
        None => None,
    };
    let text = read_input(&args.input)?;
    let (tag, input) = doc::parse_doc(&text, flag)?;
    if !input.is_finite() {
        return Err(CliError::Parse(DocError::BadValue("input".into())));
    }
    let sig = tag.signature();

    let mut body = Map::new();
    body.insert("algebra".into(), Value::String(tag.to_string()));
    let mut diag = Map::new();

    match args.op {
        ApplyOp::Normalize | ApplyOp::Sqrt => {
            let x = if matches!(args.op, ApplyOp::Sqrt) {
                // principal square root of a rotor is the normalization of 1 + R
                let r = Rotor::try_new(input.clone(), args.tol)?;
                r.as_multivector() + &Multivector::scalar(sig, 1.0)
            } else {
                input.clone()
            };
            let use_fast = pick_engine(
                args.engine,
                tag.has_fast_normalize(),
                &format!("normalize in {tag}"),
            )?;
            let (rotor, scale, branch) = if use_fast {
                let out = fast_normalize(tag, &x).expect("kernel availability checked")?;
                (out, None, None)
            } else {
                let parts = normalize(&x)?;
                (
                    parts.rotor.into_multivector(),
                    Some(parts.scale),
                    Some(parts.branch),
                )
            };
            diag.insert(
                "engine".into(),
                Value::String(if use_fast { "fast" } else { "generic" }.into()),
            );
            diag.insert(
                "rotor_residual".into(),
                json!(rotor_condition_residual(&rotor)),
            );
            if let Some(scale) = scale {
                if matches!(args.op, ApplyOp::Normalize) {
                    body.insert("scale".into(), coeffs_value(tag, &scale.to_multivector(), args.dense)?);
                }
                diag.insert("study_norm".into(), json!(scale.norm().ok()));
            } else {
                // kernels follow the principal branch by construction
                let s2 = StudyNumber::from_multivector(&x.gp(&x.reverse()), gak::DEFAULT_TOL)?;
                diag.insert("study_norm".into(), json!(s2.norm().ok().map(f64::sqrt)));
            }
            if let Some(branch) = branch {
                diag.insert("branch".into(), Value::String(branch_name(branch).into()));
            }
            body.insert("coeffs".into(), coeffs_value(tag, &rotor, args.dense)?);
        }
        ApplyOp::Exp => {
            let use_fast = pick_engine(
                args.engine,
                tag == AlgebraTag::R301,
                &format!("exp in {tag}"),
            )?;
            let rotor = if use_fast {
                let packed = BIVECTOR_R301.pack(&input).map_err(CliError::Math)?;
                EVEN_R301.unpack(sig, &kernels::r301::exp(&packed))
            } else {
                exp_bivector(&input)?.into_multivector()
            };
            let split_info = invariant_split(&input).ok();
            diag.insert(
                "engine".into(),
                Value::String(if use_fast { "fast" } else { "generic" }.into()),
            );
            diag.insert("rotor_residual".into(), json!(rotor_condition_residual(&rotor)));
            if let Some(split) = split_info {
                diag.insert("degenerate".into(), json!(split.degenerate));
            }
            body.insert("coeffs".into(), coeffs_value(tag, &rotor, args.dense)?);
        }
        ApplyOp::Log => {
            let rotor = Rotor::try_new(input.clone(), args.tol)?;
            let use_fast = pick_engine(
                args.engine,
                tag == AlgebraTag::R301,
                &format!("log in {tag}"),
            )?;
            let b = if use_fast {
                let packed = EVEN_R301.pack(rotor.as_multivector()).map_err(CliError::Math)?;
                let out = kernels::r301::log(&packed)?;
                BIVECTOR_R301.unpack(sig, &out)
            } else {
                log_rotor(&rotor)?
            };
            diag.insert(
                "engine".into(),
                Value::String(if use_fast { "fast" } else { "generic" }.into()),
            );
            body.insert("coeffs".into(), coeffs_value(tag, &b, args.dense)?);
        }
        ApplyOp::Split => {
            if args.engine == Engine::Fast {
                return Err(CliError::Usage("no fast kernel for split".into()));
            }
            let split = invariant_split(&input)?;
            diag.insert("engine".into(), Value::String("generic".into()));
            diag.insert("degenerate".into(), json!(split.degenerate));
            body.insert("b_plus".into(), coeffs_value(tag, &split.b_plus, args.dense)?);
            body.insert("b_minus".into(), coeffs_value(tag, &split.b_minus, args.dense)?);
            body.insert("lambda_plus".into(), json!(split.lambda_plus));
            body.insert("lambda_minus".into(), json!(split.lambda_minus));
        }
        ApplyOp::Power => {
            if args.engine == Engine::Fast {
                return Err(CliError::Usage("no fast kernel for power".into()));
            }
            let rotor = Rotor::try_new(input.clone(), args.tol)?;
            let out = rotor_power(&rotor, args.t)?;
            diag.insert("engine".into(), Value::String("generic".into()));
            diag.insert("t".into(), json!(args.t));
            diag.insert(
                "rotor_residual".into(),
                json!(out.condition_residual()),
            );
            body.insert("coeffs".into(), coeffs_value(tag, out.as_multivector(), args.dense)?);
        }
        ApplyOp::Trirefl => {
            if args.engine == Engine::Fast {
                return Err(CliError::Usage("no fast kernel for trirefl".into()));
            }
            let probe = match &args.probe {
                Some(text) => Some(doc::parse_doc(text, Some(tag))?.1),
                None => None,
            };
            let (r, big_r) = decompose_trireflection(&input, probe.as_ref())?;
            diag.insert("engine".into(), Value::String("generic".into()));
            diag.insert(
                "rotor_residual".into(),
                json!(big_r.condition_residual()),
            );
            body.insert("reflection".into(), coeffs_value(tag, &r, args.dense)?);
            body.insert("rotor".into(), coeffs_value(tag, big_r.as_multivector(), args.dense)?);
        }
    }

    body.insert("diagnostics".into(), Value::Object(diag));
    println!("{}", Value::Object(body));
    Ok(ExitCode::SUCCESS)
}

fn default_count(suite: &str) -> usize {
    match suite {
        "roundtrip" | "ortho4" => 1000,
        _ => 10000,
    }
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode, CliError> {
    let count = args.count.unwrap_or_else(|| default_count(&args.suite));
    let report = suites::run_suite(&args.suite, args.seed, count).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown suite {:?} (expected rotor, roundtrip, split, ortho4 or kernels)",
            args.suite
        ))
    })?;
    println!("{report}");
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Deterministic representative inputs for benchmarking.
fn bench_input(tag: AlgebraTag) -> Multivector {
    let mut rng = suites::seeded_rng(42);
    let mut rejections = 0;
    suites::sample_nonsingular_even(&mut rng, tag.signature(), &mut rejections)
}

fn bench_rotor(tag: AlgebraTag) -> Multivector {
    let mut rng = suites::seeded_rng(42);
    let b = suites::sample_principal_bivector(&mut rng, tag.signature());
    exp_bivector(&b).expect("principal bivector exponentiates").into_multivector()
}

fn time_ns(mut f: impl FnMut(), iterations: u64) -> f64 {
    // warm up
    for _ in 0..iterations.min(1000) {
        f();
    }
    let start = std::time::Instant::now();
    for _ in 0..iterations {
        f();
    }
    start.elapsed().as_nanos() as f64 / iterations as f64
}

fn report_counts(op: &str, algebra: &str, counts: OpCounts) {
    println!("{op} {algebra}: {counts}");
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode, CliError> {
    let tag: AlgebraTag = args.algebra.parse()?;
    let iterations = args.iterations.max(1);
    match (args.op.as_str(), tag) {
        ("normalize", _) | ("sqrt", _) if tag.has_fast_normalize() => {
            let x = if args.op == "sqrt" { bench_rotor(tag) } else { bench_input(tag) };
            let shifted = if args.op == "sqrt" {
                &x + &Multivector::scalar(tag.signature(), 1.0)
            } else {
                x.clone()
            };
            if args.count_ops {
                let counts = match tag {
                    AlgebraTag::R301 => {
                        let p = lift::<Counted, 8>(&EVEN_R301.pack(&shifted).unwrap());
                        count_ops(|| kernels::r301::normalize(&p).unwrap()).1
                    }
                    AlgebraTag::R31 => {
                        let p = lift::<Counted, 8>(&EVEN_4D.pack(&shifted).unwrap());
                        count_ops(|| kernels::r31::normalize(&p).unwrap()).1
                    }
                    AlgebraTag::R4 => {
                        let p = lift::<Counted, 8>(&EVEN_4D.pack(&shifted).unwrap());
                        count_ops(|| kernels::r4::normalize(&p).unwrap()).1
                    }
                    AlgebraTag::R41 => {
                        let p = lift::<Counted, 16>(&EVEN_R41.pack(&shifted).unwrap());
                        count_ops(|| kernels::r41::normalize(&p).unwrap()).1
                    }
                    _ => unreachable!(),
                };
                report_counts(&args.op, &args.algebra, counts);
                return Ok(ExitCode::SUCCESS);
            }
            let fast_ns = match tag {
                AlgebraTag::R301 => {
                    let p = EVEN_R301.pack(&shifted).unwrap();
                    time_ns(
                        || {
                            let out = kernels::r301::normalize(std::hint::black_box(&p)).unwrap();
                            std::hint::black_box(out);
                        },
                        iterations,
                    )
                }
                AlgebraTag::R31 => {
                    let p = EVEN_4D.pack(&shifted).unwrap();
                    time_ns(
                        || {
                            let out = kernels::r31::normalize(std::hint::black_box(&p)).unwrap();
                            std::hint::black_box(out);
                        },
                        iterations,
                    )
                }
                AlgebraTag::R4 => {
                    let p = EVEN_4D.pack(&shifted).unwrap();
                    time_ns(
                        || {
                            let out = kernels::r4::normalize(std::hint::black_box(&p)).unwrap();
                            std::hint::black_box(out);
                        },
                        iterations,
                    )
                }
                AlgebraTag::R41 => {
                    let p = EVEN_R41.pack(&shifted).unwrap();
                    time_ns(
                        || {
                            let out = kernels::r41::normalize(std::hint::black_box(&p)).unwrap();
                            std::hint::black_box(out);
                        },
                        iterations,
                    )
                }
                _ => unreachable!(),
            };
            let generic_iters = iterations.min(200_000);
            let generic_ns = time_ns(
                || {
                    let out = normalize(std::hint::black_box(&shifted)).unwrap();
                    std::hint::black_box(out);
                },
                generic_iters,
            );
            println!(
                "bench {} {}: fast {:.1} ns/op, generic {:.1} ns/op, ratio {:.1}x",
                args.op,
                args.algebra,
                fast_ns,
                generic_ns,
                generic_ns / fast_ns
            );
            Ok(ExitCode::SUCCESS)
        }
        ("exp", AlgebraTag::R301) => {
            let mut rng = suites::seeded_rng(42);
            let b = suites::sample_principal_bivector(&mut rng, tag.signature());
            let packed = BIVECTOR_R301.pack(&b).unwrap();
            if args.count_ops {
                let p = lift::<Counted, 6>(&packed);
                let (_, counts) = count_ops(|| kernels::r301::exp(&p));
                report_counts("exp", &args.algebra, counts);
                return Ok(ExitCode::SUCCESS);
            }
            let fast_ns = time_ns(
                || {
                    let out = kernels::r301::exp(std::hint::black_box(&packed));
                    std::hint::black_box(out);
                },
                iterations,
            );
            let generic_iters = iterations.min(200_000);
            let generic_ns = time_ns(
                || {
                    let out = exp_bivector(std::hint::black_box(&b)).unwrap();
                    std::hint::black_box(out);
                },
                generic_iters,
            );
            println!(
                "bench exp {}: fast {:.1} ns/op, generic {:.1} ns/op, ratio {:.1}x",
                args.algebra,
                fast_ns,
                generic_ns,
                generic_ns / fast_ns
            );
            Ok(ExitCode::SUCCESS)
        }
        ("log", AlgebraTag::R301) => {
            let r = bench_rotor(tag);
            let packed = EVEN_R301.pack(&r).unwrap();
            if args.count_ops {
                let p = lift::<Counted, 8>(&packed);
                let (out, counts) = count_ops(|| kernels::r301::log(&p).unwrap());
                let _ = lower(&out);
                report_counts("log", &args.algebra, counts);
                return Ok(ExitCode::SUCCESS);
            }
            let rotor = Rotor::try_new(r.clone(), 1e-8).expect("bench rotor");
            let fast_ns = time_ns(
                || {
                    let out = kernels::r301::log(std::hint::black_box(&packed)).unwrap();
                    std::hint::black_box(out);
                },
                iterations,
            );
            let generic_iters = iterations.min(200_000);
            let generic_ns = time_ns(
                || {
                    let out = log_rotor(std::hint::black_box(&rotor)).unwrap();
                    std::hint::black_box(out);
                },
                generic_iters,
            );
            println!(
                "bench log {}: fast {:.1} ns/op, generic {:.1} ns/op, ratio {:.1}x",
                args.algebra,
                fast_ns,
                generic_ns,
                generic_ns / fast_ns
            );
            Ok(ExitCode::SUCCESS)
        }
        _ => Err(CliError::Usage(format!(
            "no kernel for op {:?} in algebra {:?} (normalize/sqrt: r4, r31, r301, r41; exp/log: r301)",
            args.op, args.algebra
        ))),
    }
}
