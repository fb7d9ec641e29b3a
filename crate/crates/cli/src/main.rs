//! `kpp` — partition/broker planning for a single Kafka topic.
//!
//! Four subcommands: `plan` runs one planning method, `check` evaluates a
//! given plan, `compare` tabulates every method at one configuration
//! point, and `sweep` varies one parameter and emits CSV.
//!
//! Configuration precedence is total: command-line flags override the
//! `--config` file (also reachable via `KPP_CONFIG`), which overrides the
//! built-in defaults. The same effective configuration and seed always
//! produce the same output bytes.
//!
//! Exit codes make feasibility scriptable: `0` means a feasible plan,
//! `2` means the search completed and none exists (or the checked plan
//! violates a constraint), `1` means the invocation itself was bad.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use kpp_core::experiments::{
    aggregate_mscnfl, McAggregate, RowData, SweepAxis, SweepSpec,
};
use kpp_core::io::{load_config, render_config, sig6, write_csv, ConfigError, LoadedConfig};
use kpp_core::model::{
    evaluate_plan, min_partitions, InvalidInput, MeasuredInputs, Plan, PlanMetrics, Requirements,
};
use kpp_core::solvers::{
    bromax, bromin, lp_relax, ms_cnfl, ConfluentCap, LpRelaxation, Method, SolveOutcome,
};

/// Exit codes. Infeasibility is a first-class result — a pipeline must be
/// able to branch on it — so it is kept apart from genuine errors.
mod exit {
    /// Feasible plan found / report completed.
    pub const FEASIBLE: u8 = 0;
    /// Bad flags, bad config, unreadable files.
    pub const USAGE_ERROR: u8 = 1;
    /// Search completed: no feasible plan (or the checked plan fails).
    pub const INFEASIBLE: u8 = 2;
}

const NO_FEASIBLE: &str = "No feasible solution found.";

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Invalid(#[from] InvalidInput),
    #[error("cannot access {path}: {source}")]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser)]
#[command(
    name = "kpp",
    version,
    about = "Partition and broker planning for a Kafka topic",
    after_help = "Exit codes: 0 feasible, 2 no feasible plan, 1 usage or config error."
)]
struct Cli {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(subcommand)]
    command: Command,
}

/// The effective instance, assembled from flags, config file, defaults —
/// in that order of precedence. Every flag mirrors a config key.
#[derive(Args)]
struct InstanceArgs {
    /// Target aggregate throughput, MB/s
    #[arg(long = "throughput-mbps", global = true, value_name = "MBPS")]
    throughput_mbps: Option<f64>,

    /// Consumers reading the topic in one group
    #[arg(long, global = true, value_name = "N")]
    consumers: Option<u64>,

    /// Copies kept of every partition
    #[arg(long, global = true, value_name = "R")]
    replication_factor: Option<u64>,

    /// Replication-latency budget, ms
    #[arg(long = "latency-max-ms", global = true, value_name = "MS")]
    latency_max_ms: Option<f64>,

    /// Failover-unavailability budget, ms
    #[arg(long = "unavailability-max-ms", global = true, value_name = "MS")]
    unavailability_max_ms: Option<f64>,

    /// Brokers available to this topic
    #[arg(long = "brokers-available", global = true, value_name = "B")]
    brokers_available: Option<u64>,

    /// Measured per-partition producer throughput, MB/s
    #[arg(long = "producer-throughput-mbps", global = true, value_name = "MBPS")]
    producer_throughput_mbps: Option<f64>,

    /// Measured per-partition consumer throughput, MB/s
    #[arg(long = "consumer-throughput-mbps", global = true, value_name = "MBPS")]
    consumer_throughput_mbps: Option<f64>,

    /// Open file handles one broker tolerates
    #[arg(long = "max-open-file-handles", global = true, value_name = "N")]
    max_open_file_handles: Option<u64>,

    /// Measured per-partition replication latency, ms
    #[arg(long = "replication-latency-ms", global = true, value_name = "MS")]
    replication_latency_ms: Option<f64>,

    /// Measured leader election time per partition, ms
    #[arg(long = "leader-election-ms", global = true, value_name = "MS")]
    leader_election_ms: Option<f64>,

    /// TOML config file (flags override it)
    #[arg(long, global = true, env = "KPP_CONFIG", value_name = "PATH")]
    config: Option<PathBuf>,

    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Aligned human-readable table
    Table,
    /// A JSON document on stdout
    #[value(name = "json-like", alias = "json")]
    JsonLike,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a plan with one method
    Plan(PlanArgs),
    /// Evaluate a given (partitions, brokers) pair against the constraints
    Check(CheckArgs),
    /// Run every method at one configuration point and tabulate them
    Compare(CompareArgs),
    /// Vary one parameter and emit the full results table as CSV
    Sweep(SweepArgs),
}

#[derive(Args)]
struct PlanArgs {
    /// Planning method
    #[arg(long, value_enum, default_value_t = PlanMethod::Bromin)]
    method: PlanMethod,
    /// Seed for the randomized method
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlanMethod {
    /// Fewest brokers that fit every constraint
    Bromin,
    /// Most partitions the broker pool supports
    Bromax,
    /// Real-valued relaxation, floored
    Lp,
    /// One draw of the randomized rule-of-thumb baseline
    Mscnfl,
}

#[derive(Args)]
struct CheckArgs {
    /// Partition count to evaluate
    #[arg(long, value_name = "P")]
    partitions: u64,
    /// Broker count to evaluate
    #[arg(long, value_name = "B")]
    brokers: u64,
}

#[derive(Args)]
struct CompareArgs {
    /// Trials for the randomized baseline's aggregate row
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Master seed for the randomized baseline
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SweepArgs {
    /// Parameter to vary (defaults to the config file's [sweep] table)
    #[arg(long, value_enum)]
    axis: Option<AxisArg>,
    /// First axis value (default: the standard range of the axis)
    #[arg(long, requires = "to")]
    from: Option<u64>,
    /// Last axis value
    #[arg(long, requires = "from")]
    to: Option<u64>,
    /// Axis increment
    #[arg(long, requires = "from")]
    step: Option<u64>,
    /// Trials per point for the randomized baseline
    #[arg(long)]
    trials: Option<u64>,
    /// Master seed for per-point seed derivation
    #[arg(long)]
    seed: Option<u64>,
    /// Write the CSV here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Print the effective configuration as TOML and exit
    #[arg(long)]
    print_config: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    Consumers,
    Brokers,
    Replication,
}

impl From<AxisArg> for SweepAxis {
    fn from(axis: AxisArg) -> Self {
        match axis {
            AxisArg::Consumers => SweepAxis::Consumers,
            AxisArg::Brokers => SweepAxis::AvailableBrokers,
            AxisArg::Replication => SweepAxis::ReplicationFactor,
        }
    }
}

/// Flags applied on top of config on top of defaults.
struct Effective {
    requirements: Requirements,
    measured: MeasuredInputs,
    sweep: Option<SweepSpec>,
}

fn effective(args: &InstanceArgs) -> Result<Effective, CliError> {
    let loaded = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::File {
                path: path.clone(),
                source,
            })?;
            load_config(&text)?
        }
        None => LoadedConfig {
            requirements: Requirements::default(),
            measured: MeasuredInputs::default(),
            sweep: None,
        },
    };

    let mut requirements = loaded.requirements;
    let mut measured = loaded.measured;
    if let Some(v) = args.throughput_mbps {
        requirements.target_throughput = v;
    }
    if let Some(v) = args.consumers {
        requirements.consumers = v;
    }
    if let Some(v) = args.replication_factor {
        requirements.replication_factor = v;
    }
    if let Some(v) = args.latency_max_ms {
        requirements.max_replication_latency = v;
    }
    if let Some(v) = args.unavailability_max_ms {
        requirements.max_unavailability = v;
    }
    if let Some(v) = args.brokers_available {
        requirements.available_brokers = v;
    }
    if let Some(v) = args.producer_throughput_mbps {
        measured.producer_throughput_per_partition = v;
    }
    if let Some(v) = args.consumer_throughput_mbps {
        measured.consumer_throughput_per_partition = v;
    }
    if let Some(v) = args.max_open_file_handles {
        measured.max_open_file_handles = v;
    }
    if let Some(v) = args.replication_latency_ms {
        measured.replication_latency_per_partition = v;
    }
    if let Some(v) = args.leader_election_ms {
        measured.leader_election_time = v;
    }
    requirements.validate()?;
    measured.validate()?;

    // Flag overrides rebase a config-file sweep onto the effective
    // instance, keeping precedence total for sweeps too.
    let sweep = loaded.sweep.map(|mut spec| {
        spec.base_requirements = requirements;
        spec.base_measured = measured;
        spec
    });

    Ok(Effective {
        requirements,
        measured,
        sweep,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

/// The constraint block shared by `plan` and `check` tables.
fn print_constraints(plan: &Plan, req: &Requirements, meas: &MeasuredInputs, m: &PlanMetrics) {
    let c = &m.per_constraint_pass;
    println!("constraint       verdict  detail");
    println!(
        "throughput       {:<8} {} partitions >= {} required",
        pass_fail(c.throughput),
        plan.partitions,
        min_partitions(req, meas)
    );
    println!(
        "os-load          {:<8} {} handles/broker <= {} budget",
        pass_fail(c.os_load),
        sig6(m.handles_per_broker),
        meas.max_open_file_handles
    );
    println!(
        "latency          {:<8} {} ms <= {} ms budget",
        pass_fail(c.latency),
        sig6(m.replication_latency),
        sig6(req.max_replication_latency)
    );
    println!(
        "unavailability   {:<8} {} ms <= {} ms budget",
        pass_fail(c.unavailability),
        sig6(m.unavailability),
        sig6(req.max_unavailability)
    );
    println!(
        "broker-bound     {:<8} {} <= {} brokers <= {}",
        pass_fail(c.broker_bound),
        req.replication_factor,
        plan.brokers,
        req.available_brokers
    );
}

fn print_capacity(m: &PlanMetrics) {
    println!(
        "capacity         {} MB/s in, {} MB/s out, {} partitions/broker",
        sig6(m.producer_capacity),
        sig6(m.consumer_capacity),
        sig6(m.partitions_per_broker)
    );
}

fn metrics_json(m: &PlanMetrics) -> serde_json::Value {
    serde_json::to_value(m).expect("metrics serialize")
}

/// Report one concrete plan; exit code reflects its feasibility.
fn report_plan(
    format: Format,
    method: &str,
    plan: &Plan,
    req: &Requirements,
    meas: &MeasuredInputs,
    real: Option<&LpRelaxation>,
) -> u8 {
    let m = evaluate_plan(plan, req, meas);
    let feasible = m.per_constraint_pass.all();
    match format {
        Format::Table => {
            println!("method           {method}");
            if let Some(lp) = real {
                println!(
                    "real optimum     {} partitions on {} brokers",
                    sig6(lp.real.partitions),
                    sig6(lp.real.brokers)
                );
            }
            println!("partitions       {}", plan.partitions);
            println!("brokers          {}", plan.brokers);
            println!("feasible         {}", yes_no(feasible));
            println!();
            print_constraints(plan, req, meas, &m);
            print_capacity(&m);
        }
        Format::JsonLike => {
            let mut doc = serde_json::json!({
                "method": method,
                "feasible": feasible,
                "plan": plan,
                "metrics": metrics_json(&m),
            });
            if let Some(lp) = real {
                doc["real"] = serde_json::to_value(lp.real).expect("real plan serializes");
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    if feasible {
        exit::FEASIBLE
    } else {
        exit::INFEASIBLE
    }
}

/// Report a completed search that found nothing, or a structurally
/// impossible instance; always exits infeasible.
fn report_no_plan(format: Format, method: &str, message: &str) -> u8 {
    match format {
        Format::Table => {
            println!("method           {method}");
            println!("feasible         no");
            println!();
            println!("{message}");
        }
        Format::JsonLike => {
            let doc = serde_json::json!({
                "method": method,
                "feasible": false,
                "error": message,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    exit::INFEASIBLE
}

fn cmd_plan(eff: &Effective, args: &PlanArgs, format: Format) -> u8 {
    let req = &eff.requirements;
    let meas = &eff.measured;
    match args.method {
        PlanMethod::Bromin | PlanMethod::Bromax => {
            let (name, result) = match args.method {
                PlanMethod::Bromin => ("bromin", bromin(req, meas)),
                _ => ("bromax", bromax(req, meas)),
            };
            match result {
                Err(err) => report_no_plan(format, name, &err.to_string()),
                Ok(SolveOutcome { plan: None, .. }) => report_no_plan(format, name, NO_FEASIBLE),
                Ok(SolveOutcome {
                    plan: Some(plan), ..
                }) => report_plan(format, name, &plan, req, meas, None),
            }
        }
        PlanMethod::Mscnfl => match ms_cnfl(req, args.seed) {
            Err(err) => report_no_plan(format, "mscnfl", &err.to_string()),
            Ok(outcome) => {
                let plan = outcome.plan.expect("the baseline always draws a plan");
                report_plan(format, "mscnfl", &plan, req, meas, None)
            }
        },
        PlanMethod::Lp => match lp_relax(req, meas) {
            Err(err) => report_no_plan(format, "lp-relax", &err.to_string()),
            Ok(lp) => report_plan(format, "lp-relax", &lp.rounded, req, meas, Some(&lp)),
        },
    }
}

fn cmd_check(eff: &Effective, args: &CheckArgs, format: Format) -> Result<u8, CliError> {
    let plan = Plan::new(args.partitions, args.brokers)?;
    Ok(report_plan(
        format,
        "check",
        &plan,
        &eff.requirements,
        &eff.measured,
        None,
    ))
}

/// One comparison row: a method name, what it produced, and an optional
/// note (the message of a search that produced nothing).
struct CompareRow {
    method: Method,
    data: RowData,
    note: Option<String>,
}

fn compare_rows(eff: &Effective, trials: u64, seed: u64) -> Vec<CompareRow> {
    let req = &eff.requirements;
    let meas = &eff.measured;
    let exact = |method: Method, result| match result {
        Err(err) => CompareRow {
            method,
            data: RowData::Gap,
            note: Some(format!("{err}")),
        },
        Ok(SolveOutcome { plan: None, .. }) => CompareRow {
            method,
            data: RowData::Gap,
            note: Some(NO_FEASIBLE.to_string()),
        },
        Ok(SolveOutcome {
            plan: Some(plan), ..
        }) => CompareRow {
            method,
            data: RowData::Exact {
                plan,
                metrics: evaluate_plan(&plan, req, meas),
            },
            note: None,
        },
    };

    let mscnfl_row = match aggregate_mscnfl(req, meas, trials, seed) {
        Err(err) => CompareRow {
            method: Method::MsCnfl,
            data: RowData::Gap,
            note: Some(format!("{err}")),
        },
        Ok(agg) => CompareRow {
            method: Method::MsCnfl,
            data: RowData::Aggregate(agg),
            note: None,
        },
    };

    let lp_row = match lp_relax(req, meas) {
        Err(err) => CompareRow {
            method: Method::LpRelax,
            data: RowData::Gap,
            note: Some(format!("{err}")),
        },
        Ok(lp) => CompareRow {
            method: Method::LpRelax,
            data: RowData::Exact {
                plan: lp.rounded,
                metrics: evaluate_plan(&lp.rounded, req, meas),
            },
            note: None,
        },
    };

    vec![
        exact(Method::BroMin, bromin(req, meas)),
        exact(Method::BroMax, bromax(req, meas)),
        mscnfl_row,
        lp_row,
    ]
}

fn print_compare_table(rows: &[CompareRow]) {
    println!(
        "{:<10} {:<9} {:>11} {:>8} {:>11} {:>12} {:>11} {:>20}  note",
        "method",
        "feasible",
        "partitions",
        "brokers",
        "latency_ms",
        "unavail_ms",
        "handles_pb",
        "viol(lat,unav,os)"
    );
    for row in rows {
        let name = row.method.name();
        let note = row.note.as_deref().unwrap_or("");
        let line = match &row.data {
            RowData::Gap => format!(
                "{name:<10} {:<9} {:>11} {:>8} {:>11} {:>12} {:>11} {:>20}  {note}",
                "no", "-", "-", "-", "-", "-", "-"
            ),
            RowData::Exact { plan, metrics } => {
                let c = &metrics.per_constraint_pass;
                format!(
                    "{name:<10} {:<9} {:>11} {:>8} {:>11} {:>12} {:>11} {:>20}  {note}",
                    yes_no(c.all()),
                    plan.partitions,
                    plan.brokers,
                    sig6(metrics.replication_latency),
                    sig6(metrics.unavailability),
                    sig6(metrics.handles_per_broker),
                    format!(
                        "{},{},{}",
                        u8::from(!c.latency),
                        u8::from(!c.unavailability),
                        u8::from(!c.os_load)
                    ),
                )
            }
            RowData::Aggregate(a) => format!(
                "{name:<10} {:<9} {:>11} {:>8} {:>11} {:>12} {:>11} {:>20}  {note}",
                "mean",
                sig6(a.mean_partitions),
                sig6(a.mean_brokers),
                sig6(a.mean_replication_latency),
                sig6(a.mean_unavailability),
                sig6(a.mean_handles_per_broker),
                format!(
                    "{},{},{}",
                    sig6(a.latency_violation_rate),
                    sig6(a.unavailability_violation_rate),
                    sig6(a.os_violation_rate)
                ),
            ),
        };
        println!("{}", line.trim_end());
    }
}

fn compare_json(rows: &[CompareRow]) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            let mut doc = match &row.data {
                RowData::Gap => serde_json::json!({
                    "method": row.method.name(),
                    "feasible": false,
                }),
                RowData::Exact { plan, metrics } => serde_json::json!({
                    "method": row.method.name(),
                    "feasible": metrics.per_constraint_pass.all(),
                    "plan": plan,
                    "metrics": metrics_json(metrics),
                }),
                RowData::Aggregate(a) => serde_json::json!({
                    "method": row.method.name(),
                    "aggregate": serde_json::to_value::<&McAggregate>(a).expect("aggregate serializes"),
                }),
            };
            if let Some(note) = &row.note {
                doc["note"] = serde_json::Value::String(note.clone());
            }
            doc
        })
        .collect();
    serde_json::json!({ "rows": rows })
}

fn cmd_compare(eff: &Effective, args: &CompareArgs, format: Format) -> Result<u8, CliError> {
    if args.trials < 1 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let rows = compare_rows(eff, args.trials, args.seed);
    match format {
        Format::Table => print_compare_table(&rows),
        Format::JsonLike => println!(
            "{}",
            serde_json::to_string_pretty(&compare_json(&rows)).expect("json")
        ),
    }
    // The exact planners decide the verdict: if neither found a plan, the
    // instance has none.
    let heuristics_found = rows
        .iter()
        .filter(|r| matches!(r.method, Method::BroMin | Method::BroMax))
        .any(|r| !matches!(r.data, RowData::Gap));
    Ok(if heuristics_found {
        exit::FEASIBLE
    } else {
        exit::INFEASIBLE
    })
}

/// Axis values from an explicit `--from/--to/--step` triple, if given.
fn range_values(args: &SweepArgs) -> Result<Option<Vec<u64>>, CliError> {
    match (args.from, args.to) {
        (None, None) => Ok(None),
        (Some(from), Some(to)) => {
            if from > to {
                return Err(CliError::Usage(format!(
                    "empty sweep range: --from {from} exceeds --to {to}"
                )));
            }
            let step = args.step.unwrap_or(1);
            if step == 0 {
                return Err(CliError::Usage("--step must be at least 1".into()));
            }
            Ok(Some((from..=to).step_by(step as usize).collect()))
        }
        // clap's `requires` already rejects one without the other.
        _ => Err(CliError::Usage(
            "--from and --to must be given together".into(),
        )),
    }
}

fn cmd_sweep(eff: &Effective, args: &SweepArgs) -> Result<u8, CliError> {
    let explicit_values = range_values(args)?;
    let mut spec = match (args.axis, &eff.sweep) {
        (Some(axis), _) => {
            let axis: SweepAxis = axis.into();
            let standard = SweepSpec::default_for_axis(axis);
            SweepSpec {
                axis,
                axis_values: explicit_values
                    .clone()
                    .unwrap_or(standard.axis_values),
                base_requirements: eff.requirements,
                base_measured: eff.measured,
                methods: standard.methods,
                mscnfl_trials: standard.mscnfl_trials,
                master_seed: standard.master_seed,
                confluent_cap: ConfluentCap::PerBroker,
            }
        }
        (None, Some(spec)) => {
            let mut spec = spec.clone();
            if let Some(values) = explicit_values.clone() {
                spec.axis_values = values;
            }
            spec
        }
        (None, None) => {
            return Err(CliError::Usage(
                "sweep needs --axis or a config file with a [sweep] table".into(),
            ))
        }
    };
    if let Some(trials) = args.trials {
        spec.mscnfl_trials = trials;
    }
    if let Some(seed) = args.seed {
        spec.master_seed = seed;
    }

    if args.print_config {
        print!(
            "{}",
            render_config(&spec.base_requirements, &spec.base_measured, Some(&spec))
        );
        return Ok(exit::FEASIBLE);
    }

    let result = kpp_core::experiments::run_sweep(&spec)?;
    let csv = write_csv(&result);
    match &args.out {
        Some(path) => std::fs::write(path, &csv).map_err(|source| CliError::File {
            path: path.clone(),
            source,
        })?,
        None => print!("{csv}"),
    }
    Ok(exit::FEASIBLE)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let eff = effective(&cli.instance)?;
    let format = cli.instance.format;
    match &cli.command {
        Command::Plan(args) => Ok(cmd_plan(&eff, args, format)),
        Command::Check(args) => cmd_check(&eff, args, format),
        Command::Compare(args) => cmd_compare(&eff, args, format),
        Command::Sweep(args) => cmd_sweep(&eff, args),
    }
}

fn main() -> ExitCode {
    // Rust ignores SIGPIPE, which turns `kpp sweep | head` into an EPIPE
    // panic inside println!. Restore the default disposition so a closed
    // pipe ends the process quietly, the way every other filter behaves.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap exits 2 on usage errors by default; this tool reserves
            // 2 for "no feasible plan", so remap: help/version are 0,
            // everything else is a usage error.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => exit::FEASIBLE,
                _ => exit::USAGE_ERROR,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit::USAGE_ERROR)
        }
    }
}
