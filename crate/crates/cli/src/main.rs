//! Batch command-line surface: moment computations with ground-truth checks,
//! invariant verification suites, scaling benchmarks, twirl demos, and
//! permutation-oracle checks. Reports are JSON (complex numbers as
//! [re, im]); benches are CSV. Exit codes: 0 pass, 1 tolerance failure,
//! 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use cgoracle::error::Error;
use cgoracle::finite::{builtin_group, haar_average_finite};
use cgoracle::haar::{entry_moment_for_script, haar_moment_unitary, rational_to_f64};
use cgoracle::oracle::{moment_tensor, Backend, MomentSpec};
use cgoracle::perm::Perm;
use cgoracle::query::QueryType;
use cgoracle::twirl::{comb_from_json, verify_twirl, Comb};
use cgoracle::verify as suites;
use cgoracle::C64;

#[derive(Parser)]
#[command(name = "cgoracle", version, about = "Compressed-oracle simulator and verifier")]
struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Byte-stable reports: fixed default seeds and zeroed timings.
    #[arg(long, global = true)]
    deterministic: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute oracle moments, optionally checking them against ground truth.
    Moments {
        /// Backend: "u" for U(d), or a finite group name (s3, s4, z5, ...).
        #[arg(long, default_value = "u")]
        backend: String,
        /// Dimension d for the U(d) backend.
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// Number of queries (used when --types is not given: all forward).
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Query-type script, e.g. "FF", "FI", "FCT".
        #[arg(long)]
        types: Option<String>,
        /// Compare each entry against the exact ground truth.
        #[arg(long)]
        check: bool,
        /// Number of random index assignments (0 = exhaustive when small).
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        /// Engine for U(d): auto, fast, dense.
        #[arg(long, default_value = "auto")]
        engine: String,
    },
    /// Run named invariant suites.
    Verify {
        /// Suite: all, repcore, gtcompress, cg, units, moments, weingarten,
        /// permoracle.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        boxes: usize,
        #[arg(long, default_value_t = 5)]
        d: usize,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[arg(long, default_value_t = 0.0)]
        tolerance: f64,
    },
    /// Forward-query scaling benchmark on the compressed backend (CSV).
    Bench {
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Comma-separated exponents: d = 2^e per entry.
        #[arg(long, default_value = "4,8,12,16,20")]
        d_exps: String,
    },
    /// Twirl an approximate unitary-inversion comb and verify the
    /// depolarised-inverse theorem.
    Twirl {
        /// Comb: identity, through, perfect, or a path to a comb JSON file.
        #[arg(long, default_value = "identity")]
        comb: String,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Check the permutation-oracle equivalences exactly.
    Permute {
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Permutation in cycle notation with 1-based symbols, e.g. "(1 2)".
        #[arg(long)]
        g: Option<String>,
        /// Additionally check this many random permutations at sizes <= d.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 11)]
        seed: u64,
    },
}

fn c_pair(v: C64) -> [f64; 2] {
    [v.re, v.im]
}

/// Dense U(d) backend honouring the CGORACLE_CACHE_DIR table cache.
fn dense_backend(d: u32) -> Backend {
    match std::env::var_os("CGORACLE_CACHE_DIR") {
        Some(dir) if !dir.is_empty() => Backend::u_dense_with_cache(d, dir.into()),
        _ => Backend::u_dense(d),
    }
}

#[derive(Serialize)]
struct MomentEntry {
    xy: Vec<(u32, u32)>,
    xy_hat: Vec<(u32, u32)>,
    value: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    truth: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_error: Option<f64>,
}

#[derive(Serialize)]
struct MomentsReport {
    backend: String,
    engine: String,
    d: u32,
    t: usize,
    query_types: String,
    checked: bool,
    entries: Vec<MomentEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_abs_error: Option<f64>,
    runtime_ms: f64,
}

#[derive(Serialize)]
struct VerifyReport {
    suites: Vec<suites::SuiteReport>,
    passed: bool,
    runtime_ms: f64,
}

#[derive(Serialize)]
struct TwirlCliReport {
    comb: String,
    d: usize,
    tolerance: f64,
    #[serde(flatten)]
    inner: cgoracle::twirl::TwirlReport,
    passed: bool,
    runtime_ms: f64,
}

#[derive(Serialize)]
struct PermuteReport {
    d: usize,
    checked: Vec<String>,
    all_exact: bool,
    runtime_ms: f64,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn all_assignments(t: usize, d: u32) -> Vec<(Vec<(u32, u32)>, Vec<(u32, u32)>)> {
    // Every (x, y, x^, y^) combination, flattened per query.
    let mut out = vec![(Vec::new(), Vec::new())];
    for _ in 0..t {
        let mut next = Vec::new();
        for (xy, xy_hat) in &out {
            for x in 0..d {
                for y in 0..d {
                    for xh in 0..d {
                        for yh in 0..d {
                            let mut a = xy.clone();
                            let mut b = xy_hat.clone();
                            a.push((x, y));
                            b.push((xh, yh));
                            next.push((a, b));
                        }
                    }
                }
            }
        }
        out = next;
    }
    out
}

fn cmd_moments(
    cli_backend: &str,
    d: u32,
    t: usize,
    types: Option<String>,
    check: bool,
    samples: usize,
    seed: u64,
    tolerance: f64,
    engine: &str,
    deterministic: bool,
) -> Result<(String, bool), Error> {
    let start = std::time::Instant::now();
    let spec = match &types {
        Some(s) => MomentSpec::parse(s)?,
        None => MomentSpec::forward(t),
    };
    let t = spec.len();
    let all_forward = spec.types.iter().all(|&q| q == QueryType::Forward);
    let (backend, work_d, finite_rep) = if cli_backend.eq_ignore_ascii_case("u") {
        let engine = match engine {
            "auto" => {
                if all_forward {
                    "fast"
                } else {
                    "dense"
                }
            }
            other => other,
        };
        let b = match engine {
            "fast" => {
                if !all_forward {
                    return Err(Error::UnsupportedQueryType(
                        "the fast engine computes forward moments; use --engine dense".into(),
                    ));
                }
                Backend::u_fast(d)
            }
            "dense" => dense_backend(d),
            other => return Err(Error::Shape(format!("unknown engine {other}"))),
        };
        (b, d, None)
    } else {
        // Builtin group name, or a path to a group-definition JSON file.
        let rep = if cli_backend.ends_with(".json") {
            cgoracle::finite::group_from_json(&std::fs::read_to_string(cli_backend)?)?
        } else {
            builtin_group(cli_backend)?
        };
        let wd = rep.rep_dim() as u32;
        (Backend::finite(rep.clone()), wd, Some(rep))
    };
    let engine_tag = match &backend {
        Backend::UFast { .. } => "fast",
        Backend::UDense { .. } => "dense",
        Backend::Finite { .. } => "finite",
    };

    let total: u128 = (work_d as u128).pow(4 * t as u32);
    let assignments = if samples == 0 && total <= 4096 {
        all_assignments(t, work_d)
    } else {
        let n = if samples == 0 { 50 } else { samples };
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let xy: Vec<(u32, u32)> = (0..t)
                    .map(|_| (rng.gen_range(0..work_d), rng.gen_range(0..work_d)))
                    .collect();
                let xy_hat: Vec<(u32, u32)> = (0..t)
                    .map(|_| (rng.gen_range(0..work_d), rng.gen_range(0..work_d)))
                    .collect();
                (xy, xy_hat)
            })
            .collect()
    };

    let mut entries = Vec::with_capacity(assignments.len());
    let mut max_err: Option<f64> = None;
    for (xy, xy_hat) in assignments {
        let value = moment_tensor(&backend, &spec, &xy, &xy_hat)?;
        let (truth, err) = if check {
            let truth = match &finite_rep {
                Some(rep) => {
                    let q: Vec<(QueryType, u32, u32)> = spec
                        .types
                        .iter()
                        .zip(&xy)
                        .map(|(&qt, &(x, y))| (qt, x, y))
                        .collect();
                    let qh: Vec<(QueryType, u32, u32)> = spec
                        .types
                        .iter()
                        .zip(&xy_hat)
                        .map(|(&qt, &(x, y))| (qt, x, y))
                        .collect();
                    haar_average_finite(rep, &q, &qh)?
                }
                None => {
                    let entry = entry_moment_for_script(&spec.types, &xy, &xy_hat);
                    C64::new(rational_to_f64(&haar_moment_unitary(&entry, work_d)?), 0.0)
                }
            };
            let err = (value - truth).norm();
            max_err = Some(max_err.unwrap_or(0.0).max(err));
            (Some(c_pair(truth)), Some(err))
        } else {
            (None, None)
        };
        entries.push(MomentEntry {
            xy,
            xy_hat,
            value: c_pair(value),
            truth,
            abs_error: err,
        });
    }
    let passed = max_err.map(|e| e <= tolerance).unwrap_or(true);
    let report = MomentsReport {
        backend: cli_backend.to_string(),
        engine: engine_tag.to_string(),
        d: work_d,
        t,
        query_types: spec.types.iter().map(|q| q.tag()).collect(),
        checked: check,
        entries,
        max_abs_error: max_err,
        runtime_ms: if deterministic {
            0.0
        } else {
            start.elapsed().as_secs_f64() * 1e3
        },
    };
    Ok((serde_json::to_string_pretty(&report).expect("serialisable"), passed))
}

fn cmd_verify(
    suite: &str,
    boxes: usize,
    d: usize,
    t: usize,
    tolerance: f64,
    deterministic: bool,
) -> Result<(String, bool), Error> {
    let start = std::time::Instant::now();
    let names: Vec<&str> = if suite == "all" {
        vec![
            "repcore",
            "gtcompress",
            "weingarten",
            "cg",
            "units",
            "moments",
            "permoracle",
        ]
    } else {
        vec![suite]
    };
    let mut reports = Vec::new();
    for name in names {
        let tol = if tolerance > 0.0 {
            tolerance
        } else {
            suites::default_tolerance(name)
        };
        reports.push(suites::run_named_suite(name, boxes, d, t, tol)?);
    }
    let passed = reports.iter().all(|r| r.passed);
    let report = VerifyReport {
        suites: reports,
        passed,
        runtime_ms: if deterministic {
            0.0
        } else {
            start.elapsed().as_secs_f64() * 1e3
        },
    };
    Ok((serde_json::to_string_pretty(&report).expect("serialisable"), passed))
}

fn cmd_bench(t: usize, d_exps: &str) -> Result<(String, bool), Error> {
    let exps: Vec<u32> = d_exps
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Error::Shape(format!("bad --d-exps: {e}")))?;
    let d_list: Vec<u64> = exps.iter().map(|&e| 1u64 << e).collect();
    let rows = suites::bench_forward(t, &d_list)?;
    let scaling = suites::scaling_report(&rows);
    let mut csv = String::from("d,t,wall_ms,peak_key_bits,keys\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{:.3},{},{}\n",
            r.d, r.t, r.wall_ms, r.peak_key_bits, r.keys
        ));
    }
    Ok((csv, scaling.passed))
}

fn cmd_twirl(
    comb_name: &str,
    d: usize,
    tolerance: f64,
    deterministic: bool,
) -> Result<(String, bool), Error> {
    let start = std::time::Instant::now();
    let comb = match comb_name {
        "identity" => Comb::identity_comb(d),
        "through" => Comb::through_comb(d),
        "perfect" => Comb::PerfectInverterStub { d },
        path => comb_from_json(&std::fs::read_to_string(path)?)?,
    };
    if comb.d() != d {
        return Err(Error::DimensionMismatch(format!(
            "comb dimension {} vs --d {d}",
            comb.d()
        )));
    }
    let backend = Backend::u_fast(d as u32);
    let h = {
        let s = 1.0 / 2f64.sqrt();
        DMatrix::from_row_slice(2, 2, &[
            C64::new(s, 0.0),
            C64::new(s, 0.0),
            C64::new(s, 0.0),
            C64::new(-s, 0.0),
        ])
    };
    let phase = DMatrix::from_row_slice(2, 2, &[
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(
            (std::f64::consts::PI / 4.0).cos(),
            (std::f64::consts::PI / 4.0).sin(),
        ),
    ]);
    let us = if d == 2 {
        vec![DMatrix::<C64>::identity(2, 2), h, phase]
    } else {
        vec![DMatrix::<C64>::identity(d, d)]
    };
    let inner = verify_twirl(&comb, &us, &backend)?;
    let passed = inner.max_dev_oracle_vs_target <= tolerance
        && inner.max_dev_reference_vs_target <= tolerance
        && inner.max_dev_oracle_vs_reference <= tolerance;
    let report = TwirlCliReport {
        comb: comb_name.to_string(),
        d,
        tolerance,
        inner,
        passed,
        runtime_ms: if deterministic {
            0.0
        } else {
            start.elapsed().as_secs_f64() * 1e3
        },
    };
    Ok((serde_json::to_string_pretty(&report).expect("serialisable"), passed))
}

/// Parses cycle notation with 1-based symbols, e.g. "(1 2)(3 4)".
fn parse_cycles(text: &str, d: usize) -> Result<Perm, Error> {
    let mut images: Vec<usize> = (0..d).collect();
    let cleaned = text.replace(',', " ");
    for cycle in cleaned.split(')') {
        let cycle = cycle.trim().trim_start_matches('(').trim();
        if cycle.is_empty() {
            continue;
        }
        let symbols: Vec<usize> = cycle
            .split_whitespace()
            .map(|s| s.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Error::Shape(format!("bad cycle entry: {e}")))?;
        if symbols.iter().any(|&s| s == 0 || s > d) {
            return Err(Error::IndexOutOfRange(format!(
                "cycle symbols must lie in 1..={d}"
            )));
        }
        for w in 0..symbols.len() {
            let from = symbols[w] - 1;
            let to = symbols[(w + 1) % symbols.len()] - 1;
            images[from] = to;
        }
    }
    Perm::new(images)
}

fn cmd_permute(
    d: usize,
    g: Option<String>,
    random: usize,
    seed: u64,
    deterministic: bool,
) -> Result<(String, bool), Error> {
    let start = std::time::Instant::now();
    let mut checked = Vec::new();
    let mut all_exact = true;
    let mut run = |perm: &Perm, label: String| {
        let ok = cgoracle::finite::permoracle::check_equivalences(perm);
        all_exact &= ok;
        checked.push(format!("{label}: {}", if ok { "exact" } else { "MISMATCH" }));
    };
    match g {
        Some(text) => {
            let perm = parse_cycles(&text, d)?;
            run(&perm, format!("{text} on [{d}]"));
        }
        None => {
            for perm in Perm::all(d.min(4)) {
                run(&perm, format!("{perm}"));
            }
        }
    }
    if random > 0 {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        for _ in 0..random {
            let size = rng.gen_range(2..=d.max(2));
            let mut images: Vec<usize> = (0..size).collect();
            for i in (1..size).rev() {
                images.swap(i, rng.gen_range(0..=i));
            }
            let perm = Perm::new(images)?;
            run(&perm, format!("random {perm}"));
        }
    }
    let report = PermuteReport {
        d,
        checked,
        all_exact,
        runtime_ms: if deterministic {
            0.0
        } else {
            start.elapsed().as_secs_f64() * 1e3
        },
    };
    Ok((
        serde_json::to_string_pretty(&report).expect("serialisable"),
        all_exact,
    ))
}

fn run(cli: Cli) -> Result<bool, Error> {
    let (text, passed) = match cli.command {
        Command::Moments {
            ref backend,
            d,
            t,
            ref types,
            check,
            samples,
            seed,
            tolerance,
            ref engine,
        } => cmd_moments(
            backend,
            d,
            t,
            types.clone(),
            check,
            samples,
            seed,
            tolerance,
            engine,
            cli.deterministic,
        )?,
        Command::Verify {
            ref suite,
            boxes,
            d,
            t,
            tolerance,
        } => cmd_verify(suite, boxes, d, t, tolerance, cli.deterministic)?,
        Command::Bench { t, ref d_exps } => cmd_bench(t, d_exps)?,
        Command::Twirl {
            ref comb,
            d,
            tolerance,
        } => cmd_twirl(comb, d, tolerance, cli.deterministic)?,
        Command::Permute {
            d,
            ref g,
            random,
            seed,
        } => cmd_permute(d, g.clone(), random, seed, cli.deterministic)?,
    };
    emit(&cli.out, &text)?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
