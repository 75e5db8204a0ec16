use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qtor_core::fock::tangent_char;
use qtor_core::scalars::{derive_seed, PrimeField, RationalField};
use qtor_core::verify::{run, sample_space};
use qtor_core::young::{addable_removable, enumerate};
use qtor_core::{CurrentKind, GammaWeight};
use serde_json::json;

mod config;

use config::{read_file, Settings};

/// Exact verification of the current relations on truncated Fock spaces.
#[derive(Parser)]
#[command(name = "qtor", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites and write a JSON report.
    ///
    /// Exits 0 when every selected suite passes, 1 when one fails, 2 on
    /// invalid configuration. The report is written in every case.
    Verify(VerifyArgs),
    /// Print one operator matrix as JSON.
    Dump(DumpArgs),
    /// Print the fixed-point table as CSV.
    Enumerate(EnumerateArgs),
}

#[derive(Args, Clone)]
struct ModelArgs {
    /// Order of the cyclic group (at least 3) [default: 3]
    #[arg(long)]
    n: Option<u32>,
    /// Framing rank [default: number of colors]
    #[arg(long)]
    w: Option<usize>,
    /// Framing colors, comma separated [default: 0 repeated w times]
    #[arg(long)]
    colors: Option<String>,
    /// Seed for parameter sampling [default: 42]
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Flat key=value file; flags take precedence over its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Box bound N for tested basis vectors [default: 5]
    #[arg(long)]
    trunc: Option<u32>,
    /// Box bound for the exact checks [default: 6]
    #[arg(long)]
    exact_boxes: Option<u32>,
    /// Mode window S [default: 2]
    #[arg(long)]
    modes: Option<i64>,
    /// Series order M, at least 2S+2 [default: max(6, 2S+2)]
    #[arg(long)]
    order: Option<usize>,
    /// Evaluate at prime-field points only
    #[arg(long, conflicts_with = "rational")]
    prime: bool,
    /// Evaluate at rational points only
    #[arg(long)]
    rational: bool,
    /// Prime modulus, above 2^60 [default: 2^61-1]
    #[arg(long)]
    modulus: Option<u64>,
    /// Number of prime points (or rational points with --rational) [default: 3]
    #[arg(long)]
    points: Option<usize>,
    /// Rational points added to the prime points when no backend flag is given [default: 1]
    #[arg(long)]
    rational_points: Option<usize>,
    /// Comma-separated suites: boundary, cross-check, currents, presentation, residue, structural, grading [default: all]
    #[arg(long)]
    suites: Option<String>,
    /// Report path [default: $QTOR_OUT_DIR/qtor-report.json]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads [default: all cores]
    #[arg(long)]
    jobs: Option<usize>,
    /// Record per-suite wall-clock times (reports are then not byte-stable)
    #[arg(long)]
    timing: bool,
    /// Default directory for reports
    #[arg(
        long,
        env = "QTOR_OUT_DIR",
        default_value = ".",
        hide_default_value = true
    )]
    out_dir: PathBuf,
}

#[derive(Args)]
struct DumpArgs {
    /// Generator: x+, x-, h+, h-, eps
    #[arg(long, value_parser = parse_kind)]
    kind: CurrentKind,
    /// Color index
    #[arg(long)]
    k: u32,
    /// Mode
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    s: i64,
    /// Box bound of the source block
    #[arg(long, default_value_t = 2)]
    trunc: u32,
    /// Apply the sign twists of the presentation
    #[arg(long)]
    twisted: bool,
    /// Evaluate at a rational point instead of a prime-field point
    #[arg(long)]
    rational: bool,
    /// Output path [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Box bound
    #[arg(long, default_value_t = 4)]
    boxes: u32,
    /// Output path [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    model: ModelArgs,
}

fn parse_kind(s: &str) -> Result<CurrentKind, String> {
    CurrentKind::parse(s)
        .ok_or_else(|| format!("unknown generator `{s}` (expected x+, x-, h+, h-, eps)"))
}

fn model_settings(m: &ModelArgs) -> Settings {
    let mut s = Settings::default();
    s.set("n", m.n.map(|v| v.to_string()));
    s.set("w", m.w.map(|v| v.to_string()));
    s.set("colors", m.colors.clone());
    s.set("seed", m.seed.map(|v| v.to_string()));
    s
}

fn usage(err: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(2)
}

fn write_output(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(p, text)
        }
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn verify(args: VerifyArgs) -> ExitCode {
    let mut settings = Settings::default();
    if let Some(path) = &args.config {
        match read_file(path) {
            Ok(values) => settings.values = values,
            Err(e) => return usage(e),
        }
    }
    let flags = model_settings(&args.model);
    settings.values.extend(flags.values);
    settings.set("trunc", args.trunc.map(|v| v.to_string()));
    settings.set("exact-boxes", args.exact_boxes.map(|v| v.to_string()));
    settings.set("modes", args.modes.map(|v| v.to_string()));
    settings.set("order", args.order.map(|v| v.to_string()));
    settings.set("modulus", args.modulus.map(|v| v.to_string()));
    settings.set("points", args.points.map(|v| v.to_string()));
    settings.set(
        "rational-points",
        args.rational_points.map(|v| v.to_string()),
    );
    settings.set("suites", args.suites.clone());
    settings.set("out", args.out.as_ref().map(|p| p.display().to_string()));
    settings.set("jobs", args.jobs.map(|v| v.to_string()));
    if args.prime {
        settings.set("backend", Some("prime".into()));
    }
    if args.rational {
        settings.set("backend", Some("rational".into()));
    }
    if args.timing {
        settings.set("timing", Some("true".into()));
    }

    let cfg = match settings.verify_config() {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    match settings.jobs() {
        Ok(Some(j)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build_global()
            {
                return usage(e);
            }
        }
        Ok(None) => {}
        Err(e) => return usage(e),
    }
    let out = settings
        .out()
        .unwrap_or_else(|| args.out_dir.join("qtor-report.json"));

    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    if let Err(e) = write_output(Some(&out), &report.to_json()) {
        eprintln!("error: cannot write {}: {e}", out.display());
        return ExitCode::from(3);
    }
    for s in &report.suites {
        let status = if s.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} {:<13} instances={} failures={}",
            s.name, s.instances, s.failure_count
        );
        for f in s.failed_families() {
            println!("     {} ({} mismatches)", f.name, f.mismatches);
        }
    }
    println!("report: {}", out.display());
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn dump(args: DumpArgs) -> ExitCode {
    let settings = model_settings(&args.model);
    let mut cfg = match settings.verify_config() {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    if args.k >= cfg.model.n() {
        return usage(format!(
            "color {} out of range for n = {}",
            args.k,
            cfg.model.n()
        ));
    }
    cfg.truncation = args.trunc;
    cfg.order = cfg.order.max(args.s.unsigned_abs() as usize);
    let seed = derive_seed(cfg.seed, 0);
    let result = if args.rational {
        sample_space(&cfg, &RationalField::default(), 0, seed).and_then(|(sp, info)| {
            Ok((
                sp.matrix(args.kind, args.k, args.s, args.twisted, args.trunc)?,
                info,
            ))
        })
    } else {
        PrimeField::new(cfg.prime)
            .map_err(Into::into)
            .and_then(|f| sample_space(&cfg, &f, 0, seed))
            .and_then(|(sp, info)| {
                Ok((
                    sp.matrix(args.kind, args.k, args.s, args.twisted, args.trunc)?,
                    info,
                ))
            })
    };
    let (matrix, info) = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let doc = json!({ "point": info, "matrix": matrix });
    let text = serde_json::to_string_pretty(&doc).expect("matrices serialize") + "\n";
    match write_output(args.out.as_deref(), &text) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn enumerate_table(args: EnumerateArgs) -> ExitCode {
    let model = match model_settings(&args.model).model() {
        Ok(m) => m,
        Err(e) => return usage(e),
    };
    let n = model.n();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["lambda".to_string(), "v".to_string(), "dim_t".to_string()];
    for k in 0..n {
        header.push(format!("addable_{k}"));
        header.push(format!("removable_{k}"));
    }
    let mut rows = vec![header];
    for lam in enumerate(&model, args.boxes) {
        let v = lam.residue_vector(&model);
        let mut row = vec![
            lam.to_string(),
            v.iter().map(i64::to_string).collect::<Vec<_>>().join(" "),
            tangent_char(&model, &lam).dim_i64().to_string(),
        ];
        for k in 0..n {
            let (a, r) = addable_removable(&lam, &model, GammaWeight::new(k as i64, n));
            row.push(a.len().to_string());
            row.push(r.len().to_string());
        }
        rows.push(row);
    }
    for row in rows {
        if let Err(e) = w.write_record(&row) {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let bytes = match w.into_inner() {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    match write_output(
        args.out.as_deref(),
        &String::from_utf8(bytes).expect("csv is utf-8"),
    ) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(a) => verify(a),
        Command::Dump(a) => dump(a),
        Command::Enumerate(a) => enumerate_table(a),
    }
}
