//! `stagehand`: compile plot scripts into choreography timelines, trace the
//! emotional dynamics, replay timelines on the tick executor, validate the
//! knowledge bases, and build experimental baselines.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stagehand_core::plan::diff_timelines;
use stagehand_core::*;

const EXIT_OK: u8 = 0;
const EXIT_DIAGNOSTIC: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "stagehand", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a script into a timeline JSON document.
    Compile(CompileArgs),
    /// Emit the per-step valence/context/delta/connective trace as CSV.
    Trace(TraceArgs),
    /// Compile and replay a script on the tick executor.
    Simulate(SimulateArgs),
    /// Validate the action KB and gesture DB (and optionally a script).
    Validate(ValidateArgs),
    /// Compile coherent and incoherent timelines side by side with a diff.
    Baseline(BaselineArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliMode {
    Coherent,
    IncoherentSpatial,
    IncoherentGesture,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Mode {
        match m {
            CliMode::Coherent => Mode::Coherent,
            CliMode::IncoherentSpatial => Mode::IncoherentSpatial,
            CliMode::IncoherentGesture => Mode::IncoherentGesture,
        }
    }
}

/// Options shared by every pipeline subcommand. Config file values apply
/// first; individual flags win.
#[derive(Args)]
struct PipelineArgs {
    /// Action knowledge base (JSON).
    #[arg(long)]
    kb: PathBuf,
    /// Gesture database (JSON).
    #[arg(long)]
    gestures: PathBuf,
    /// Engine config file (JSON, same fields as the defaults).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Selection RNG seed override.
    #[arg(long)]
    seed: Option<u64>,
    /// Context decay weight override, in (0, 1).
    #[arg(long)]
    beta: Option<f64>,
    /// Step significance threshold override.
    #[arg(long)]
    tau: Option<f64>,
}

#[derive(Args)]
struct CompileArgs {
    /// Plot script to compile.
    script: PathBuf,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Experimental condition.
    #[arg(long, value_enum, default_value = "coherent")]
    mode: CliMode,
    /// Also write the interpretation trace JSON to this path.
    #[arg(long)]
    emit_trace: Option<PathBuf>,
    /// Timeline output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TraceArgs {
    script: PathBuf,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// CSV output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    script: PathBuf,
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[arg(long, value_enum, default_value = "coherent")]
    mode: CliMode,
    /// Execution trace output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    kb: PathBuf,
    #[arg(long)]
    gestures: PathBuf,
    /// Script to validate against the KB.
    script: Option<PathBuf>,
}

#[derive(Args)]
struct BaselineArgs {
    script: PathBuf,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Incoherent condition to pair with the coherent plan.
    #[arg(long, value_enum, default_value = "incoherent-spatial")]
    mode: CliMode,
    /// Output path prefix; writes `<out>.coherent.json` and
    /// `<out>.<mode>.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Errors carrying their intended process exit code.
struct CmdError {
    code: u8,
    message: String,
}

impl CmdError {
    fn usage(message: impl Into<String>) -> CmdError {
        CmdError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn diagnostic(message: impl Into<String>) -> CmdError {
        CmdError {
            code: EXIT_DIAGNOSTIC,
            message: message.into(),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CmdError> {
    std::fs::read_to_string(path)
        .map_err(|e| CmdError::usage(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CmdError> {
    match path {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CmdError::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

struct Pipeline {
    kb: ActionKB,
    db: GestureDB,
    cfg: EngineConfig,
}

fn load_pipeline(args: &PipelineArgs) -> Result<Pipeline, CmdError> {
    let kb = load_action_kb(&read_file(&args.kb)?)
        .map_err(|e| CmdError::diagnostic(format!("action kb: {e}")))?;
    let db = load_gesture_db(&read_file(&args.gestures)?)
        .map_err(|e| CmdError::diagnostic(format!("gesture db: {e}")))?;
    let mut cfg = match &args.config {
        Some(path) => serde_json::from_str(&read_file(path)?)
            .map_err(|e| CmdError::diagnostic(format!("config: {e}")))?,
        None => EngineConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.rng_seed = seed;
    }
    if let Some(beta) = args.beta {
        cfg.decay_weight = beta;
    }
    if let Some(tau) = args.tau {
        cfg.step_threshold = tau;
    }
    cfg.validate()
        .map_err(|e| CmdError::diagnostic(format!("config: {e}")))?;
    Ok(Pipeline { kb, db, cfg })
}

fn load_script(path: &Path, kb: &ActionKB) -> Result<Script, CmdError> {
    let script =
        parse_script(&read_file(path)?).map_err(|e| CmdError::diagnostic(e.to_string()))?;
    let diagnostics = validate_script(&script, kb);
    let mut failed = false;
    for d in &diagnostics {
        if d.severity == Severity::Error {
            failed = true;
        }
        eprintln!("{:?} (line {}): {}", d.severity, d.line, d.message);
    }
    if failed {
        return Err(CmdError::diagnostic("script failed validation"));
    }
    Ok(script)
}

fn plan(script: &Script, pipeline: &Pipeline, mode: Mode) -> Result<PlanOutcome, CmdError> {
    let out = plan_performance(script, &pipeline.kb, &pipeline.db, &pipeline.cfg, mode)
        .map_err(|e| CmdError::diagnostic(e.to_string()))?;
    for warning in &out.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(out)
}

fn timeline_json(timeline: &Timeline) -> String {
    let mut json = serde_json::to_string_pretty(timeline).expect("timeline serializes");
    json.push('\n');
    json
}

fn compile_cmd(args: &CompileArgs) -> Result<(), CmdError> {
    let pipeline = load_pipeline(&args.pipeline)?;
    let script = load_script(&args.script, &pipeline.kb)?;
    let out = plan(&script, &pipeline, args.mode.into())?;
    write_output(args.out.as_deref(), &timeline_json(&out.timeline))?;
    if let Some(trace_path) = &args.emit_trace {
        let mut json = serde_json::to_string_pretty(&out.interpretation).expect("trace serializes");
        json.push('\n');
        write_output(Some(trace_path), &json)?;
    }
    Ok(())
}

fn trace_csv(rows: &[TraceRow]) -> String {
    let mut csv = String::from(
        "slot,character,role,action,valence,context,delta,significant,direction,connective\n",
    );
    for row in rows {
        let direction = match row.direction {
            StepDirection::Toward => "toward",
            StepDirection::Away => "away",
            StepDirection::None => "none",
        };
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            row.slot,
            row.character,
            row.role.label(),
            row.action_id,
            row.valence,
            row.context,
            row.delta,
            row.significant,
            direction,
            row.connective.keyword()
        ));
    }
    csv
}

fn trace_cmd(args: &TraceArgs) -> Result<(), CmdError> {
    let pipeline = load_pipeline(&args.pipeline)?;
    let script = load_script(&args.script, &pipeline.kb)?;
    let out = plan(&script, &pipeline, Mode::Coherent)?;
    write_output(args.out.as_deref(), &trace_csv(&out.trace_rows))
}

fn simulate_cmd(args: &SimulateArgs) -> Result<(), CmdError> {
    let pipeline = load_pipeline(&args.pipeline)?;
    let script = load_script(&args.script, &pipeline.kb)?;
    let out = plan(&script, &pipeline, args.mode.into())?;
    let trace = run_timeline(&out.timeline).map_err(|e| CmdError::diagnostic(e.to_string()))?;
    write_output(args.out.as_deref(), &trace.to_csv())?;
    let initial = StageState::new(out.timeline.initial_poses.clone());
    for actor in &trace.final_stage.poses {
        println!(
            "final {}: x={:.3} y={:.3} heading={:.3}",
            actor.actor, actor.pose.x, actor.pose.y, actor.pose.heading
        );
    }
    println!(
        "distance: initial={:.3} final={:.3} ({} ticks)",
        initial.distance_m, trace.final_stage.distance_m, trace.total_ticks
    );
    Ok(())
}

fn validate_cmd(args: &ValidateArgs) -> Result<(), CmdError> {
    let kb = load_action_kb(&read_file(&args.kb)?)
        .map_err(|e| CmdError::diagnostic(format!("action kb: {e}")))?;
    let db = load_gesture_db(&read_file(&args.gestures)?)
        .map_err(|e| CmdError::diagnostic(format!("gesture db: {e}")))?;
    check_closure(&kb, &db, &PlatformProfile::default())
        .map_err(|e| CmdError::diagnostic(format!("closure: {e}")))?;
    if let Some(script_path) = &args.script {
        load_script(script_path, &kb)?;
    }
    println!(
        "ok: {} actions, {} gestures, closure holds",
        kb.len(),
        db.len()
    );
    Ok(())
}

fn baseline_cmd(args: &BaselineArgs) -> Result<(), CmdError> {
    let pipeline = load_pipeline(&args.pipeline)?;
    let script = load_script(&args.script, &pipeline.kb)?;
    let mode: Mode = args.mode.into();
    let coherent = plan(&script, &pipeline, Mode::Coherent)?;
    let variant = plan(&script, &pipeline, mode)?;
    if let Some(prefix) = &args.out {
        let suffix = match mode {
            Mode::Coherent => "coherent",
            Mode::IncoherentSpatial => "incoherent_spatial",
            Mode::IncoherentGesture => "incoherent_gesture",
        };
        let coherent_path = prefix.with_extension("coherent.json");
        let variant_path = prefix.with_extension(format!("{suffix}.json"));
        write_output(Some(&coherent_path), &timeline_json(&coherent.timeline))?;
        write_output(Some(&variant_path), &timeline_json(&variant.timeline))?;
    }
    let diffs = diff_timelines(&coherent.timeline, &variant.timeline);
    if diffs.is_empty() {
        println!("no differences");
    } else {
        println!("{} changed events:", diffs.len());
        for line in &diffs {
            println!("  {line}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compile(args) => compile_cmd(args),
        Command::Trace(args) => trace_cmd(args),
        Command::Simulate(args) => simulate_cmd(args),
        Command::Validate(args) => validate_cmd(args),
        Command::Baseline(args) => baseline_cmd(args),
    };
    match result {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
