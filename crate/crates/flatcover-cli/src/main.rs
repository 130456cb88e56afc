//! Batch front door: construct, verify, compute exact values, tabulate
//! bounds, and dump code weight distributions, with reproducible JSON
//! reports.
//!
//! Exit codes: 0 success / property holds, 1 property fails,
//! 2 infeasible or over budget, 64 usage.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flatcover::bounds;
use flatcover::codes::{dual_bch, simplex_code, weight_stats, LinearCode};
use flatcover::constructions::{
    complete_bch, complete_simplex, nonblocking_balanced, nonblocking_multiblock,
    nonblocking_prime, sum3_complete, ConstructionKind, ConstructionRecord, SetProperty,
};
use flatcover::error::Error;
use flatcover::exact::{exact_beta, exact_gamma, SearchOptions};
use flatcover::flatset::{read_flatset_file, write_flatset_file, FlatsetMode};
use flatcover::verify::{
    check_witnesses, is_complete, is_complete_sampled, is_nonblocking, is_nonblocking_sampled,
    CheckMode, VerifyOptions, VerifyReport, DEFAULT_BUDGET, DEFAULT_SAMPLE_SEED,
};
use flatcover::Dim;

const EXIT_OK: i32 = 0;
const EXIT_FAILS: i32 = 1;
const EXIT_INFEASIBLE: i32 = 2;
const EXIT_USAGE: i32 = 64;

#[derive(Parser)]
#[command(
    name = "flatcover",
    version,
    about = "complete and non-blocking subsets of F_2^r"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a construction, write the set file and a JSON sidecar.
    Construct(ConstructArgs),
    /// Decide d-completeness / d-non-blocking for a set file.
    Verify(VerifyArgs),
    /// Exact gamma/beta values by search.
    Exact(ExactArgs),
    /// Closed-form bounds at (r, d), or the full comparison matrix.
    Bounds(BoundsArgs),
    /// Table of exact values over a range of r.
    Table(TableArgs),
    /// Weight distribution of a simplex or dual-BCH code.
    Code(CodeArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Balanced,
    Prime,
    Multiblock,
    Simplex,
    Bch,
    Sum3,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Points,
    Hexmask,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Complete,
    Nonblocking,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuantityArg {
    Gamma,
    Beta,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Md,
    Csv,
    Json,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(long)]
    r: u32,
    /// Flat dimension / codimension (ignored for sum3, which is always d=2).
    #[arg(long, default_value_t = 2)]
    d: u32,
    /// Parts for --method multiblock, as r1:d1,r2:d2,...
    #[arg(long)]
    parts: Option<String>,
    /// Field degree override for --method bch.
    #[arg(long)]
    m: Option<u32>,
    /// Error parameter override for --method bch.
    #[arg(long)]
    e: Option<u32>,
    #[arg(long)]
    out: PathBuf,
    /// Sidecar path (defaults to <out>.json).
    #[arg(long)]
    sidecar: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Points)]
    format: FormatArg,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    set: PathBuf,
    #[arg(long)]
    d: u32,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Exhaustive subspace search (the default).
    #[arg(long, conflicts_with = "sample")]
    exhaustive: bool,
    /// Sampled witness verification with this many points (requires --witness).
    #[arg(long)]
    sample: Option<u64>,
    /// Sidecar of a construction whose witness map should be checked
    /// against the set file.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_SAMPLE_SEED)]
    seed: u64,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    d: u32,
    #[arg(long, value_enum)]
    quantity: QuantityArg,
    #[arg(long)]
    budget: Option<u64>,
    /// Result cache file; entries are re-verified on load.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, required_unless_present = "r_max", conflicts_with = "r_max")]
    r: Option<u32>,
    #[arg(long, requires = "r")]
    d: Option<u32>,
    #[arg(long)]
    json: bool,
    /// Emit the comparison matrix for all 2 <= r <= r-max instead.
    #[arg(long)]
    r_max: Option<u32>,
    #[arg(long, value_enum, default_value_t = TableFormat::Md)]
    format: TableFormat,
}

#[derive(Args)]
struct TableArgs {
    /// Range of r as lo:hi (inclusive).
    #[arg(long)]
    r: String,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct CodeArgs {
    /// Simplex code dimension d.
    #[arg(long, conflicts_with = "dual_bch")]
    simplex: Option<u32>,
    /// Dual-BCH parameters m e.
    #[arg(long, num_args = 2, value_names = ["M", "E"])]
    dual_bch: Option<Vec<u32>>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let started = Instant::now();
    let code = match run(cli, started) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Parameter(_) | Error::InvalidDimension { .. } => EXIT_USAGE,
                _ => EXIT_INFEASIBLE,
            }
        }
    };
    std::process::exit(code);
}

fn budget_or_default(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("FLATCOVER_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_BUDGET)
}

fn report(command: &str, seed: Option<u64>, started: Instant, result: Value) -> Value {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    json!({
        "command": command,
        "echo": echo,
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "wall_ms": started.elapsed().as_millis() as u64,
        "result": result,
    })
}

fn print_report(rep: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(rep).expect("serializable")
    );
}

fn run(cli: Cli, started: Instant) -> Result<i32, Error> {
    match cli.cmd {
        Cmd::Construct(args) => cmd_construct(args, started),
        Cmd::Verify(args) => cmd_verify(args, started),
        Cmd::Exact(args) => cmd_exact(args, started),
        Cmd::Bounds(args) => cmd_bounds(args, started),
        Cmd::Table(args) => cmd_table(args, started),
        Cmd::Code(args) => cmd_code(args, started),
    }
}

fn parse_parts(text: &str) -> Result<Vec<(u32, u32)>, Error> {
    text.split(',')
        .map(|piece| {
            let (a, b) = piece
                .split_once(':')
                .ok_or_else(|| Error::parameter(format!("bad part {piece:?}, want r:d")))?;
            let ri = a
                .trim()
                .parse()
                .map_err(|_| Error::parameter(format!("bad part dimension {a:?}")))?;
            let di = b
                .trim()
                .parse()
                .map_err(|_| Error::parameter(format!("bad part weight {b:?}")))?;
            Ok((ri, di))
        })
        .collect()
}

fn build_record(
    method: MethodArg,
    r: Dim,
    d: u32,
    parts: Option<&str>,
    m: Option<u32>,
    e: Option<u32>,
) -> Result<ConstructionRecord, Error> {
    match method {
        MethodArg::Balanced => nonblocking_balanced(r, d),
        MethodArg::Prime => nonblocking_prime(r, d),
        MethodArg::Multiblock => {
            let parts =
                parts.ok_or_else(|| Error::parameter("--method multiblock needs --parts"))?;
            nonblocking_multiblock(r, d, &parse_parts(parts)?)
        }
        MethodArg::Simplex => complete_simplex(r, d),
        MethodArg::Bch => {
            let over = match (m, e) {
                (Some(m), Some(e)) => Some((m, e)),
                (None, None) => None,
                _ => return Err(Error::parameter("--m and --e go together")),
            };
            complete_bch(r, d, over)
        }
        MethodArg::Sum3 => sum3_complete(r),
    }
}

fn sidecar_value(rec: &ConstructionRecord) -> Value {
    let r = rec.ambient().get();
    let d = rec.d();
    let (bound_lower, bound_upper): (Value, Value) = match rec.property() {
        SetProperty::Complete => {
            let floor = bounds::gamma_lower_binomial(r as u64, d as u64).to_string();
            let upper = match rec.kind() {
                ConstructionKind::Simplex if d >= 3 => {
                    json!(bounds::gamma_upper_simplex(r, d))
                }
                ConstructionKind::Bch if d >= 3 => {
                    json!(bounds::gamma_upper_bch(r, d, bounds::BCH_K_DEFAULT))
                }
                ConstructionKind::GenericCode => match (rec.meta().n, rec.meta().mu) {
                    (Some(n), Some(mu)) => json!(bounds::gamma_upper_generic(r, n, mu, d)),
                    _ => Value::Null,
                },
                _ => Value::Null,
            };
            (json!(floor), upper)
        }
        SetProperty::NonBlocking => (
            json!(rec.size().to_string()),
            json!(bounds::beta_upper_sum(r as u64, d as u64).to_string()),
        ),
    };
    json!({
        "r": r,
        "d": d,
        "kind": rec.kind(),
        "size": rec.size().to_string(),
        "meta": rec.meta(),
        "bound_lower": bound_lower,
        "bound_upper": bound_upper,
    })
}

fn cmd_construct(args: ConstructArgs, started: Instant) -> Result<i32, Error> {
    let r = Dim::new(args.r)?;
    let rec = build_record(
        args.method,
        r,
        args.d,
        args.parts.as_deref(),
        args.m,
        args.e,
    )?;
    let set = rec.points().ok_or_else(|| {
        Error::infeasible(format!(
            "r={} set cannot be materialized for file output",
            args.r
        ))
    })?;
    let mode = match args.format {
        FormatArg::Points => FlatsetMode::Points,
        FormatArg::Hexmask => FlatsetMode::Hexmask,
    };
    write_flatset_file(&args.out, set, mode)?;
    let sidecar = sidecar_value(&rec);
    let sidecar_path = args
        .sidecar
        .unwrap_or_else(|| args.out.with_extension("json"));
    std::fs::write(
        &sidecar_path,
        serde_json::to_string_pretty(&sidecar).expect("serializable"),
    )?;
    let rep = report(
        "construct",
        None,
        started,
        json!({
            "out": args.out,
            "sidecar": sidecar_path,
            "record": sidecar,
        }),
    );
    print_report(&rep);
    Ok(EXIT_OK)
}

fn rebuild_from_sidecar(sidecar: &Value) -> Result<ConstructionRecord, Error> {
    let r = Dim::new(
        sidecar["r"]
            .as_u64()
            .ok_or_else(|| Error::parameter("sidecar missing r"))? as u32,
    )?;
    let d = sidecar["d"]
        .as_u64()
        .ok_or_else(|| Error::parameter("sidecar missing d"))? as u32;
    let kind = sidecar["kind"]
        .as_str()
        .ok_or_else(|| Error::parameter("sidecar missing kind"))?;
    match kind {
        "balanced" => nonblocking_balanced(r, d),
        "prime" => nonblocking_prime(r, d),
        "multiblock" => {
            let parts: Vec<(u32, u32)> =
                serde_json::from_value(sidecar["meta"]["parts"].clone())
                    .map_err(|e| Error::parameter(format!("sidecar parts: {e}")))?;
            nonblocking_multiblock(r, d, &parts)
        }
        "simplex" => complete_simplex(r, d),
        "bch" => {
            let m = sidecar["meta"]["m"].as_u64().map(|v| v as u32);
            let e = sidecar["meta"]["e"].as_u64().map(|v| v as u32);
            complete_bch(r, d, m.zip(e))
        }
        "sum3" => sum3_complete(r),
        other => Err(Error::parameter(format!(
            "cannot rebuild a {other:?} record from a sidecar"
        ))),
    }
}

fn verify_report_value(rep: &VerifyReport) -> Value {
    json!({
        "property": rep.property,
        "d": rep.d,
        "holds": rep.holds,
        "counterexample": rep.counterexample.map(|p| p.bits()),
        "checked": rep.checked,
        "tests_used": rep.tests_used,
    })
}

fn cmd_verify(args: VerifyArgs, started: Instant) -> Result<i32, Error> {
    let set = read_flatset_file(&args.set)?;
    let budget = budget_or_default(args.budget);
    let seed = args.sample.is_some().then_some(args.seed);

    let rep: VerifyReport = if let Some(witness_path) = &args.witness {
        let sidecar: Value = serde_json::from_str(&std::fs::read_to_string(witness_path)?)
            .map_err(|e| Error::parameter(format!("sidecar parse: {e}")))?;
        let rec = rebuild_from_sidecar(&sidecar)?;
        let rebuilt = rec
            .points()
            .ok_or_else(|| Error::infeasible("witness record cannot be materialized at this r"))?;
        if rebuilt != &set {
            let rep = report(
                "verify",
                seed,
                started,
                json!({
                    "holds": false,
                    "reason": "set file does not match the rebuilt construction",
                }),
            );
            print_report(&rep);
            return Ok(EXIT_FAILS);
        }
        let mode = match args.sample {
            Some(count) => CheckMode::Sampled {
                count,
                seed: args.seed,
            },
            None => CheckMode::Full,
        };
        check_witnesses(&rec, mode)
    } else {
        let opts = VerifyOptions {
            budget,
            collect_witnesses: false,
        };
        match (args.mode, args.sample) {
            (ModeArg::Complete, None) => is_complete(&set, args.d, &opts)?,
            (ModeArg::Nonblocking, None) => is_nonblocking(&set, args.d, &opts)?,
            (ModeArg::Complete, Some(count)) => {
                is_complete_sampled(&set, args.d, count, args.seed, &opts)?
            }
            (ModeArg::Nonblocking, Some(count)) => {
                is_nonblocking_sampled(&set, args.d, count, args.seed, &opts)?
            }
        }
    };

    let holds = rep.holds;
    let out = report("verify", seed, started, verify_report_value(&rep));
    print_report(&out);
    Ok(if holds { EXIT_OK } else { EXIT_FAILS })
}

fn cmd_exact(args: ExactArgs, started: Instant) -> Result<i32, Error> {
    let r = Dim::new(args.r)?;
    let opts = SearchOptions {
        budget: budget_or_default(args.budget),
        cache: args.cache,
    };
    let result = match args.quantity {
        QuantityArg::Gamma => exact_gamma(r, args.d, &opts)?,
        QuantityArg::Beta => exact_beta(r, args.d, &opts)?,
    };
    let rep = report(
        "exact",
        None,
        started,
        json!({
            "r": args.r,
            "d": args.d,
            "quantity": result.quantity,
            "value": result.value,
            "method": result.method,
            "optimal_set": result
                .optimal_set
                .iter()
                .map(|p| p.to_bit_string(r))
                .collect::<Vec<_>>(),
        }),
    );
    print_report(&rep);
    Ok(EXIT_OK)
}

fn bound_display(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn bounds_row_markdown(row: &bounds::BoundsRow) -> String {
    let fmt = |list: &[bounds::NamedBound]| {
        list.iter()
            .map(|b| format!("{}={}", b.name, bound_display(&b.value)))
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "| {} | {} | {} | {} | {} | {} |",
        row.r,
        row.d,
        fmt(&row.gamma_lower),
        fmt(&row.gamma_upper),
        fmt(&row.beta_lower),
        fmt(&row.beta_upper)
    )
}

fn cmd_bounds(args: BoundsArgs, started: Instant) -> Result<i32, Error> {
    if let Some(r_max) = args.r_max {
        let mut rows = Vec::new();
        for r in 2..=r_max {
            for d in 0..=r {
                rows.push(bounds::bounds_row(r, d));
            }
        }
        match args.format {
            TableFormat::Json => {
                let rep = report(
                    "bounds",
                    None,
                    started,
                    serde_json::to_value(&rows).expect("serializable"),
                );
                print_report(&rep);
            }
            TableFormat::Md => {
                println!("| r | d | gamma lower | gamma upper | beta lower | beta upper |");
                println!("|---|---|-------------|-------------|------------|------------|");
                for row in &rows {
                    println!("{}", bounds_row_markdown(row));
                }
            }
            TableFormat::Csv => {
                println!("r,d,side,name,value,strict");
                for row in &rows {
                    for (side, list) in [
                        ("gamma_lower", &row.gamma_lower),
                        ("gamma_upper", &row.gamma_upper),
                        ("beta_lower", &row.beta_lower),
                        ("beta_upper", &row.beta_upper),
                    ] {
                        for b in list {
                            println!(
                                "{},{},{},{},{},{}",
                                row.r, row.d, side, b.name, b.value, b.strict
                            );
                        }
                    }
                }
            }
        }
        return Ok(EXIT_OK);
    }
    let r = args.r.expect("clap enforces r");
    let d = args
        .d
        .ok_or_else(|| Error::parameter("--d is required with --r"))?;
    if d > r {
        return Err(Error::parameter(format!("d={d} exceeds r={r}")));
    }
    let row = bounds::bounds_row(r, d);
    if args.json {
        let rep = report(
            "bounds",
            None,
            started,
            serde_json::to_value(&row).expect("serializable"),
        );
        print_report(&rep);
    } else {
        println!("bounds at r={r}, d={d}");
        for (side, list) in [
            ("gamma lower", &row.gamma_lower),
            ("gamma upper", &row.gamma_upper),
            ("beta lower", &row.beta_lower),
            ("beta upper", &row.beta_upper),
        ] {
            for b in list {
                let rel = if b.strict { "strict" } else { "weak" };
                println!(
                    "  {side:12} {:18} {} ({rel})",
                    b.name,
                    bound_display(&b.value)
                );
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_table(args: TableArgs, started: Instant) -> Result<i32, Error> {
    let (lo, hi) = args
        .r
        .split_once(':')
        .and_then(|(a, b)| Some((a.parse::<u32>().ok()?, b.parse::<u32>().ok()?)))
        .ok_or_else(|| Error::parameter(format!("bad range {:?}, want lo:hi", args.r)))?;
    if lo < 1 || hi < lo {
        return Err(Error::parameter(format!("bad range {lo}:{hi}")));
    }
    let budget = budget_or_default(args.budget);
    let mut cells = Vec::new();
    for r in lo..=hi {
        let rdim = Dim::new(r)?;
        for d in 0..=r {
            let opts = SearchOptions {
                budget,
                cache: None,
            };
            let gamma = exact_gamma(rdim, d, &opts);
            let beta = exact_beta(rdim, d, &opts);
            cells.push((r, d, gamma, beta));
        }
    }
    if args.json {
        let rows: Vec<Value> = cells
            .iter()
            .map(|(r, d, g, b)| {
                let pack = |res: &Result<flatcover::exact::ExactResult, Error>| match res {
                    Ok(v) => json!({
                        "value": v.value,
                        "method": v.method,
                        "set": v
                            .optimal_set
                            .iter()
                            .map(|p| p.to_bit_string(v.r))
                            .collect::<Vec<_>>(),
                    }),
                    Err(e) => json!({ "infeasible": e.to_string() }),
                };
                json!({ "r": r, "d": d, "gamma": pack(g), "beta": pack(b) })
            })
            .collect();
        let rep = report("table", None, started, Value::Array(rows));
        print_report(&rep);
    } else {
        println!("| r | d | gamma_r(d) | beta_r(d) |");
        println!("|---|---|------------|-----------|");
        for (r, d, g, b) in &cells {
            let show = |res: &Result<flatcover::exact::ExactResult, Error>| match res {
                Ok(v) => v.value.to_string(),
                Err(_) => "-".to_string(),
            };
            println!("| {r} | {d} | {} | {} |", show(g), show(b));
        }
    }
    Ok(EXIT_OK)
}

fn code_value(code: &LinearCode) -> Result<Value, Error> {
    let stats = weight_stats(code)?;
    let weights: serde_json::Map<String, Value> = stats
        .distribution
        .iter()
        .map(|(w, c)| (w.to_string(), json!(c)))
        .collect();
    Ok(json!({
        "n": code.n(),
        "k": code.k(),
        "weights": weights,
        "min_nonzero": stats.min_nonzero,
        "max": stats.max,
    }))
}

fn cmd_code(args: CodeArgs, started: Instant) -> Result<i32, Error> {
    let value = match (args.simplex, args.dual_bch) {
        (Some(d), None) => {
            let code = simplex_code(d)?;
            code_value(&code)?
        }
        (None, Some(me)) => {
            let (m, e) = (me[0], me[1]);
            let code = dual_bch(m, e)?;
            let mut v = code_value(&code)?;
            v["carlitz_uchiyama"] = json!(flatcover::codes::carlitz_uchiyama_check(&code, m, e)?);
            v
        }
        _ => {
            return Err(Error::parameter(
                "pass exactly one of --simplex D or --dual-bch M E",
            ))
        }
    };
    let rep = report("code", None, started, value);
    print_report(&rep);
    Ok(EXIT_OK)
}
