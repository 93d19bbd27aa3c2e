//! Thin command-line front end. All algorithmic work lives in the library;
//! this binary only parses flags, moves JSON/SVG bytes and sets exit codes:
//! 0 success, 1 usage or I/O error, 2 verification or certificate failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use polychrome::experiment::corpus;
use polychrome::experiment::svg::{render, Overlay, SvgOptions};
use polychrome::experiment::{
    evaluate_on, run_experiment, to_json_line, write_reports, AlgorithmId, AlgorithmOutput,
    ExperimentConfig, TrialOutput, VerificationLevel,
};
use polychrome::geometry::{
    enumerate_hyperedges, random_point_set, random_unit_height_point_set, PointSet, RangeFamily,
};
use polychrome::lowerbounds::{
    bound_chain_holds, certify_no_polychromatic_edge_coloring, certify_no_shallow_hitting,
    complete_t_subset_gadget, counting_threshold, embed_to_points, embedding_is_consecutive,
    ColoringCertificate, ShallowHittingCertificate,
};
use polychrome::strips::search::SearchBudget;
use polychrome::verify::{check_balanced, check_polychromatic, VerificationReport};

#[derive(Parser)]
#[command(
    name = "polychrome",
    version,
    about = "Shallow hitting sets and polychromatic colorings of geometric range hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a point-set instance file
    Gen(GenArgs),
    /// Run one algorithm over an instance file and write a report
    Run(RunArgs),
    /// Re-check a previously written report against its instance
    Verify(VerifyArgs),
    /// Build the subset gadget and emit impossibility certificates
    Gadget(GadgetArgs),
    /// Seeded batch of trials with per-trial reports and a summary
    Bench(BenchArgs),
    /// Render an instance, optionally overlaying a report, as SVG
    Plot(PlotArgs),
    /// End-to-end strips pipeline on a freshly generated instance
    Strips(StripsArgs),
}

fn parse_from_str<T: FromStr>(s: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e: T::Err| e.to_string())
}

#[derive(Args)]
struct GenArgs {
    /// Range family the instance targets (drives the generator)
    #[arg(long, default_value = "bottomless", value_parser = parse_from_str::<RangeFamily>)]
    family: RangeFamily,
    /// Named adversarial preset; overrides --family
    #[arg(long)]
    preset: Option<String>,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Integer slab count for unit-height instances
    #[arg(long, default_value_t = 3)]
    slabs: usize,
    #[arg(long, default_value = "points.json")]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value = "points.json")]
    input: PathBuf,
    #[arg(long, value_parser = parse_from_str::<AlgorithmId>)]
    alg: AlgorithmId,
    /// Edge size (hitting-set algorithms and strips-coloring)
    #[arg(long)]
    m: Option<usize>,
    /// Color count (coloring algorithms)
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "edges", value_parser = parse_from_str::<VerificationLevel>)]
    verify: VerificationLevel,
    #[arg(long, default_value = "report.json")]
    out: PathBuf,
    /// Also render the result to this SVG path
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Search restarts (strips algorithms)
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    /// Search seed (strips algorithms)
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "points.json")]
    input: PathBuf,
    #[arg(long, default_value = "report.json")]
    report: PathBuf,
}

#[derive(Args)]
struct GadgetArgs {
    /// Gadget parameter: 2t vertices, all t-subsets as edges
    #[arg(long)]
    t: usize,
    /// Color count for the coloring certificate
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Which certificates to compute: shallow, coloring or both
    #[arg(long, default_value = "both")]
    certify: String,
    /// Output format (json)
    #[arg(long, default_value = "json")]
    emit: String,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_parser = parse_from_str::<AlgorithmId>)]
    alg: AlgorithmId,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 3)]
    slabs: usize,
    #[arg(long, default_value = "edges", value_parser = parse_from_str::<VerificationLevel>)]
    verify: VerificationLevel,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    #[arg(long = "out-dir", default_value = "bench-out")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long, default_value = "points.json")]
    input: PathBuf,
    /// Report whose hitting set or coloring to overlay
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value = "plot.svg")]
    out: PathBuf,
}

#[derive(Args)]
struct StripsArgs {
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 200)]
    n: usize,
    #[arg(long, default_value_t = 12)]
    m: usize,
    /// When set, run the polychromatic coloring instead of the hitting set
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Search restarts
    #[arg(long, default_value_t = 8)]
    budget: usize,
    #[arg(long, default_value = "edges", value_parser = parse_from_str::<VerificationLevel>)]
    verify: VerificationLevel,
    /// Output format: json or svg
    #[arg(long, default_value = "json")]
    emit: String,
    /// Output path; stdout for json when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    // Route clap errors through our exit protocol: bad usage is 1,
    // not clap's default 2, which is reserved for verification failures.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let failed = e.use_stderr();
            let _ = e.print();
            return if failed { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

const VERIFY_FAIL: u8 = 2;

fn dispatch(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.cmd {
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Run(args) => cmd_run(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Gadget(args) => cmd_gadget(args),
        Cmd::Bench(args) => cmd_bench(args),
        Cmd::Plot(args) => cmd_plot(args),
        Cmd::Strips(args) => cmd_strips(args),
    }
}

fn read_points(path: &Path) -> anyhow::Result<PointSet> {
    let data = std::fs::read_to_string(path)
        .with_context(|| format!("reading instance {}", path.display()))?;
    serde_json::from_str(&data).with_context(|| format!("parsing {}", path.display()))
}

fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Prints one line per check and returns whether all passed. The first
/// failing witness goes to stderr as JSON.
fn report_checks(checks: &[VerificationReport]) -> anyhow::Result<bool> {
    for c in checks {
        println!("[{}] {}", if c.pass { "ok" } else { "FAIL" }, c.property);
    }
    if let Some(fail) = checks.iter().find(|c| !c.pass) {
        eprintln!("{}", to_json_line(fail)?.trim_end());
        return Ok(false);
    }
    Ok(true)
}

fn cmd_gen(args: GenArgs) -> anyhow::Result<ExitCode> {
    let ps = match &args.preset {
        Some(name) => corpus::build_preset(name, args.n, args.seed)?,
        None => match args.family {
            RangeFamily::UnitHeight => {
                random_unit_height_point_set(args.n, args.slabs, args.seed)?
            }
            RangeFamily::StripsAxisAligned => random_point_set(args.dim, args.n, args.seed)?,
            _ => random_point_set(2, args.n, args.seed)?,
        },
    };
    write_text(&args.out, &to_json_line(&ps)?)?;
    println!("wrote {} ({} points, dim {})", args.out.display(), ps.len(), ps.dim());
    Ok(ExitCode::SUCCESS)
}

fn single_run_config(
    ps: &PointSet,
    alg: AlgorithmId,
    m: Option<usize>,
    k: Option<usize>,
    verify: VerificationLevel,
    restarts: usize,
    seed: u64,
) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(alg, ps.len(), seed);
    cfg.dim = ps.dim();
    cfg.m = m;
    cfg.k = k;
    cfg.verification = verify;
    cfg.budget = SearchBudget { restarts, seed, ..SearchBudget::default() };
    cfg
}

fn cmd_run(args: RunArgs) -> anyhow::Result<ExitCode> {
    let ps = read_points(&args.input)?;
    let cfg = single_run_config(&ps, args.alg, args.m, args.k, args.verify, args.restarts, args.seed);
    let (output, checks, pass) = evaluate_on(&ps, &cfg)?;
    let trial = TrialOutput { trial: 0, seed: args.seed, n: ps.len(), output, checks, pass };
    write_text(&args.out, &to_json_line(&trial)?)?;
    if let Some(svg_path) = &args.svg {
        write_text(svg_path, &render_overlay(&ps, &trial.output))?;
    }
    match &trial.output {
        AlgorithmOutput::Hitting { report } => println!(
            "{}: |X| = {}, guarantee {} ({:?} regime), achieved {:?}",
            args.alg,
            report.x.len(),
            report.guarantee,
            report.trace.regime,
            report.achieved
        ),
        AlgorithmOutput::Coloring { report } => println!(
            "{}: k = {}, m_used = {}, construction {}",
            args.alg, report.k, report.m_used, report.construction
        ),
    }
    let ok = report_checks(&trial.checks)? && pass;
    println!("wrote {}", args.out.display());
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(VERIFY_FAIL) })
}

fn render_overlay(ps: &PointSet, output: &AlgorithmOutput) -> String {
    let opts = SvgOptions::default();
    match output {
        AlgorithmOutput::Hitting { report } => render(ps, Overlay::Hitting(&report.x), &opts),
        AlgorithmOutput::Coloring { report } => {
            let coloring = report.to_coloring();
            render(ps, Overlay::Coloring(&coloring), &opts)
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let ps = read_points(&args.input)?;
    let data = std::fs::read_to_string(&args.report)
        .with_context(|| format!("reading report {}", args.report.display()))?;
    let value: serde_json::Value = serde_json::from_str(&data)?;
    let output: AlgorithmOutput = if value.get("output").is_some() {
        serde_json::from_value::<TrialOutput>(value)?.output
    } else if value.get("X").is_some() {
        AlgorithmOutput::Hitting { report: serde_json::from_value(value)? }
    } else if value.get("colors").is_some() {
        AlgorithmOutput::Coloring { report: serde_json::from_value(value)? }
    } else {
        bail!("unrecognized report shape in {}", args.report.display());
    };
    let (checks, guarantee_ok) = run_output_checks(&ps, output)?;
    let ok = report_checks(&checks)? && guarantee_ok;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(VERIFY_FAIL) })
}

/// Re-derives every claim check for a deserialized report.
fn run_output_checks(
    ps: &PointSet,
    output: AlgorithmOutput,
) -> anyhow::Result<(Vec<VerificationReport>, bool)> {
    match output {
        AlgorithmOutput::Hitting { mut report } => {
            let checks = report.verify_against(ps)?;
            let ok = report.guarantee_respected();
            Ok((checks, ok))
        }
        AlgorithmOutput::Coloring { report } => {
            let (h, _) = enumerate_hyperedges(ps, report.family, report.m_used)?;
            let coloring = report.to_coloring();
            let mut checks = vec![check_polychromatic(&h, &coloring)?];
            if let Some(bt) = report.balanced_t {
                checks.push(check_balanced(&h, &coloring, bt)?);
            }
            Ok((checks, true))
        }
    }
}

#[derive(Serialize)]
struct GadgetReport {
    t: usize,
    r: usize,
    vertices: usize,
    edge_instances: usize,
    /// `4^t >= C(2t, t)`, the inequality behind the size-vs-depth chain.
    bound_chain_holds: bool,
    /// `t * floor(k/2)` edges available against `t + 1` needed per color.
    counting_threshold: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    no_shallow_hitting: Option<ShallowHittingCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    no_polychromatic_coloring: Option<ColoringCertificate>,
    /// Dual gadget embedded as points: incidences consecutive on every axis.
    embedding_consecutive: bool,
}

fn cmd_gadget(args: GadgetArgs) -> anyhow::Result<ExitCode> {
    if args.emit != "json" {
        bail!("unsupported emit format {:?}; only json", args.emit);
    }
    let want_shallow = matches!(args.certify.as_str(), "shallow" | "both");
    let want_coloring = matches!(args.certify.as_str(), "coloring" | "both");
    if !want_shallow && !want_coloring {
        bail!("unknown certify mode {:?}; known: shallow, coloring, both", args.certify);
    }
    let gadget = complete_t_subset_gadget(args.t)?;
    gadget.check_structure()?;

    let shallow_cert = if want_shallow {
        Some(certify_no_shallow_hitting(&gadget.primal, args.t - 1)?)
    } else {
        None
    };
    let coloring_cert = if want_coloring {
        let blown = gadget.blow_up(args.k)?;
        Some(certify_no_polychromatic_edge_coloring(&blown, args.k)?)
    } else {
        None
    };
    let embedded = embed_to_points(&gadget.dual)?;
    let consecutive = embedding_is_consecutive(&gadget.dual, &embedded)?;

    let mut ok = consecutive;
    if let Some(c) = &shallow_cert {
        println!(
            "no {}-shallow hitting set: {} ({} subsets checked)",
            args.t - 1,
            if c.holds() { "certified" } else { "REFUTED" },
            c.subsets_checked
        );
        ok &= c.holds();
    }
    if let Some(c) = &coloring_cert {
        println!(
            "no polychromatic {}-edge-coloring: {}{}",
            args.k,
            if c.infeasible { "certified" } else { "NOT certified" },
            match (&c.exhaustive, &c.counting) {
                (Some(e), _) => format!(" (exhaustive, {} assignments)", e.assignments_checked),
                (None, Some(n)) if n.applies =>
                    format!(" (counting: {} instances < {} required)", c.instances, n.required_instances),
                _ => String::new(),
            }
        );
        ok &= c.infeasible;
    }
    println!("embedding consecutive on all axes: {consecutive}");

    let report = GadgetReport {
        t: args.t,
        r: gadget.r,
        vertices: gadget.primal.vertex_count(),
        edge_instances: gadget.primal.instance_count(),
        bound_chain_holds: bound_chain_holds(args.t),
        counting_threshold: counting_threshold(args.t, args.k),
        no_shallow_hitting: shallow_cert,
        no_polychromatic_coloring: coloring_cert,
        embedding_consecutive: consecutive,
    };
    let text = to_json_line(&report)?;
    match &args.out {
        Some(path) => {
            write_text(path, &text)?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(VERIFY_FAIL) })
}

fn cmd_bench(args: BenchArgs) -> anyhow::Result<ExitCode> {
    let mut cfg = ExperimentConfig::new(args.alg, args.n, args.seed);
    cfg.dim = args.dim;
    cfg.m = args.m;
    cfg.k = args.k;
    cfg.trials = args.trials;
    cfg.verification = args.verify;
    cfg.slabs = args.slabs;
    cfg.budget = SearchBudget { restarts: args.restarts, seed: args.seed, ..SearchBudget::default() };
    let (outputs, summary) = run_experiment(&cfg)?;
    write_reports(&args.out_dir, &outputs, &summary)?;
    println!(
        "{}: {}/{} trials passed; max achieved {:?}{}",
        args.alg,
        summary.passes,
        summary.trials,
        summary.max_achieved,
        summary.max_t_prime.map_or(String::new(), |t| format!("; max t' = {t}")),
    );
    println!("wrote {}", args.out_dir.display());
    if summary.all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        for out in outputs.iter().filter(|o| !o.pass) {
            if let Some(fail) = out.checks.iter().find(|c| !c.pass) {
                eprintln!("trial {}: {}", out.trial, to_json_line(fail)?.trim_end());
            }
        }
        Ok(ExitCode::from(VERIFY_FAIL))
    }
}

fn cmd_plot(args: PlotArgs) -> anyhow::Result<ExitCode> {
    let ps = read_points(&args.input)?;
    let overlay_data: Option<AlgorithmOutput> = match &args.report {
        None => None,
        Some(path) => {
            let data = std::fs::read_to_string(path)
                .with_context(|| format!("reading report {}", path.display()))?;
            let value: serde_json::Value = serde_json::from_str(&data)?;
            Some(if value.get("output").is_some() {
                serde_json::from_value::<TrialOutput>(value)?.output
            } else if value.get("X").is_some() {
                AlgorithmOutput::Hitting { report: serde_json::from_value(value)? }
            } else if value.get("colors").is_some() {
                AlgorithmOutput::Coloring { report: serde_json::from_value(value)? }
            } else {
                bail!("unrecognized report shape in {}", path.display());
            })
        }
    };
    let svg = match &overlay_data {
        None => render(&ps, Overlay::None, &SvgOptions::default()),
        Some(output) => render_overlay(&ps, output),
    };
    write_text(&args.out, &svg)?;
    println!("wrote {}", args.out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_strips(args: StripsArgs) -> anyhow::Result<ExitCode> {
    let ps = random_point_set(args.dim, args.n, args.seed)?;
    let alg = if args.k.is_some() { AlgorithmId::StripsColoring } else { AlgorithmId::StripsShallow };
    let cfg =
        single_run_config(&ps, alg, Some(args.m), args.k, args.verify, args.budget, args.seed);
    let (output, checks, pass) = evaluate_on(&ps, &cfg)?;
    let trial = TrialOutput { trial: 0, seed: args.seed, n: ps.len(), output, checks, pass };
    match args.emit.as_str() {
        "json" => {
            let text = to_json_line(&trial)?;
            match &args.out {
                Some(path) => {
                    write_text(path, &text)?;
                    println!("wrote {}", path.display());
                }
                None => print!("{text}"),
            }
        }
        "svg" => {
            let path = args.out.clone().unwrap_or_else(|| PathBuf::from("strips.svg"));
            write_text(&path, &render_overlay(&ps, &trial.output))?;
            println!("wrote {}", path.display());
        }
        other => bail!("unsupported emit format {other:?}; known: json, svg"),
    }
    let ok = report_checks(&trial.checks)? && pass;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(VERIFY_FAIL) })
}
