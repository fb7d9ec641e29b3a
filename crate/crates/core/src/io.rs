//! Configuration files and result serialization.
//!
//! Configuration is TOML with three optional tables — `[measured]`,
//! `[requirements]`, `[sweep]` — whose keys mirror the model field names.
//! Unknown keys are rejected (a typo should fail loudly, not silently
//! fall back to a default); missing keys fall back to the built-in
//! defaults with a logged notice. Sweep results serialize to CSV with a
//! fixed column set, LF line endings, and floats at six significant
//! digits, so repeated runs diff cleanly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::experiments::{RowData, SweepAxis, SweepResult, SweepSpec};
use crate::model::{InvalidInput, MeasuredInputs, Requirements};
use crate::solvers::{ConfluentCap, Method};

/// Why a configuration document was rejected.
#[derive(Debug, Error)]
pub enum ConfigError {
    /// Not valid TOML, or a key that does not exist.
    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),
    /// Parsed fine, but a value violates its domain invariant.
    #[error("invalid config: {0}")]
    Invalid(#[from] InvalidInput),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasuredSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    producer_throughput_per_partition: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    consumer_throughput_per_partition: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_open_file_handles: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    replication_latency_per_partition: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    leader_election_time: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RequirementsSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target_throughput: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    consumers: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    replication_factor: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_replication_latency: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_unavailability: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    available_brokers: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    axis: String,
    /// Explicit axis values; defaults to the standard range of the axis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    axis_values: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    methods: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mscnfl_trials: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    master_seed: Option<u64>,
    /// Sample under the replica-counting partition cap instead of the
    /// plain per-broker one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mscnfl_include_replicas: Option<bool>,
}

/// On-disk configuration document. All tables optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    measured: Option<MeasuredSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    requirements: Option<RequirementsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sweep: Option<SweepSection>,
}

/// A loaded configuration: the instance, plus a sweep description when
/// the document carried a `[sweep]` table.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedConfig {
    pub requirements: Requirements,
    pub measured: MeasuredInputs,
    pub sweep: Option<SweepSpec>,
}

fn fill<T>(slot: Option<T>, default: T, key: &'static str, missing: &mut Vec<&'static str>) -> T {
    match slot {
        Some(v) => v,
        None => {
            missing.push(key);
            default
        }
    }
}

/// Parses a TOML configuration document and validates every value.
///
/// Missing keys take the built-in defaults (one `info`-level notice lists
/// them); unknown keys are an error. A `[sweep]` table yields a
/// [`SweepSpec`] whose baseline is the loaded instance and whose omitted
/// knobs take the standard values for its axis.
pub fn load_config(text: &str) -> Result<LoadedConfig, ConfigError> {
    let doc: ConfigDocument = toml::from_str(text)?;
    let mut missing = Vec::new();

    let m = doc.measured.unwrap_or_default();
    let md = MeasuredInputs::default();
    let measured = MeasuredInputs {
        producer_throughput_per_partition: fill(
            m.producer_throughput_per_partition,
            md.producer_throughput_per_partition,
            "measured.producer_throughput_per_partition",
            &mut missing,
        ),
        consumer_throughput_per_partition: fill(
            m.consumer_throughput_per_partition,
            md.consumer_throughput_per_partition,
            "measured.consumer_throughput_per_partition",
            &mut missing,
        ),
        max_open_file_handles: fill(
            m.max_open_file_handles,
            md.max_open_file_handles,
            "measured.max_open_file_handles",
            &mut missing,
        ),
        replication_latency_per_partition: fill(
            m.replication_latency_per_partition,
            md.replication_latency_per_partition,
            "measured.replication_latency_per_partition",
            &mut missing,
        ),
        leader_election_time: fill(
            m.leader_election_time,
            md.leader_election_time,
            "measured.leader_election_time",
            &mut missing,
        ),
    };

    let r = doc.requirements.unwrap_or_default();
    let rd = Requirements::default();
    let requirements = Requirements {
        target_throughput: fill(
            r.target_throughput,
            rd.target_throughput,
            "requirements.target_throughput",
            &mut missing,
        ),
        consumers: fill(r.consumers, rd.consumers, "requirements.consumers", &mut missing),
        replication_factor: fill(
            r.replication_factor,
            rd.replication_factor,
            "requirements.replication_factor",
            &mut missing,
        ),
        max_replication_latency: fill(
            r.max_replication_latency,
            rd.max_replication_latency,
            "requirements.max_replication_latency",
            &mut missing,
        ),
        max_unavailability: fill(
            r.max_unavailability,
            rd.max_unavailability,
            "requirements.max_unavailability",
            &mut missing,
        ),
        available_brokers: fill(
            r.available_brokers,
            rd.available_brokers,
            "requirements.available_brokers",
            &mut missing,
        ),
    };

    if !missing.is_empty() {
        log::info!("config omits {}; using built-in defaults", missing.join(", "));
    }
    measured.validate()?;
    requirements.validate()?;

    let sweep = match doc.sweep {
        None => None,
        Some(section) => {
            let axis: SweepAxis = section.axis.parse().map_err(|e: InvalidInput| {
                InvalidInput {
                    field: "sweep.axis",
                    reason: e.reason,
                }
            })?;
            let standard = SweepSpec::default_for_axis(axis);
            let methods = match section.methods {
                None => standard.methods.clone(),
                Some(names) => names
                    .iter()
                    .map(|n| {
                        n.parse().map_err(|e: InvalidInput| InvalidInput {
                            field: "sweep.methods",
                            reason: e.reason,
                        })
                    })
                    .collect::<Result<Vec<Method>, _>>()?,
            };
            let spec = SweepSpec {
                axis,
                axis_values: section.axis_values.unwrap_or(standard.axis_values),
                base_requirements: requirements,
                base_measured: measured,
                methods,
                mscnfl_trials: section.mscnfl_trials.unwrap_or(standard.mscnfl_trials),
                master_seed: section.master_seed.unwrap_or(standard.master_seed),
                confluent_cap: match section.mscnfl_include_replicas {
                    Some(true) => ConfluentCap::PerBrokerReplicas,
                    _ => ConfluentCap::PerBroker,
                },
            };
            spec.validate()?;
            Some(spec)
        }
    };

    Ok(LoadedConfig {
        requirements,
        measured,
        sweep,
    })
}

/// Renders an instance (and optionally a sweep) as a TOML document that
/// [`load_config`] reads back to exactly the same values.
pub fn render_config(
    requirements: &Requirements,
    measured: &MeasuredInputs,
    sweep: Option<&SweepSpec>,
) -> String {
    let doc = ConfigDocument {
        measured: Some(MeasuredSection {
            producer_throughput_per_partition: Some(measured.producer_throughput_per_partition),
            consumer_throughput_per_partition: Some(measured.consumer_throughput_per_partition),
            max_open_file_handles: Some(measured.max_open_file_handles),
            replication_latency_per_partition: Some(measured.replication_latency_per_partition),
            leader_election_time: Some(measured.leader_election_time),
        }),
        requirements: Some(RequirementsSection {
            target_throughput: Some(requirements.target_throughput),
            consumers: Some(requirements.consumers),
            replication_factor: Some(requirements.replication_factor),
            max_replication_latency: Some(requirements.max_replication_latency),
            max_unavailability: Some(requirements.max_unavailability),
            available_brokers: Some(requirements.available_brokers),
        }),
        sweep: sweep.map(|s| SweepSection {
            axis: s.axis.name().to_string(),
            axis_values: Some(s.axis_values.clone()),
            methods: Some(s.methods.iter().map(|m| m.name().to_string()).collect()),
            mscnfl_trials: Some(s.mscnfl_trials),
            master_seed: Some(s.master_seed),
            mscnfl_include_replicas: Some(matches!(
                s.confluent_cap,
                ConfluentCap::PerBrokerReplicas
            )),
        }),
    };
    toml::to_string(&doc).expect("config document serializes")
}

/// Column set of the sweep CSV, in emission order.
pub const CSV_HEADER: &str = "axis,axis_value,method,feasible,partitions,brokers,latency_ms,\
unavailability_ms,handles_per_broker,partitions_per_broker,latency_violation_rate,\
unavail_violation_rate,os_violation_rate";

/// Formats `x` with six significant digits and no trailing zeros: `200`,
/// `333.333`, `66.6667`, `0.588`. Plain decimal notation throughout — CSV
/// consumers should never need to parse exponents.
pub fn sig6(x: f64) -> String {
    format_sig(x, 6)
}

fn format_sig(x: f64, sig_digits: usize) -> String {
    assert!(sig_digits >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let negative = x < 0.0;
    // `{:.*e}` gives exactly `sig_digits` mantissa digits; reassemble
    // them as plain decimal around the exponent.
    let sci = format!("{:.*e}", sig_digits - 1, x.abs());
    let (mantissa, exponent) = sci.split_once('e').expect("scientific notation has an 'e'");
    let exponent: i32 = exponent.parse().expect("exponent is an integer");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();

    let mut out = String::new();
    if exponent >= 0 {
        let integer_len = exponent as usize + 1;
        if integer_len >= digits.len() {
            out.push_str(&digits);
            out.push_str(&"0".repeat(integer_len - digits.len()));
        } else {
            out.push_str(&digits[..integer_len]);
            out.push('.');
            out.push_str(&digits[integer_len..]);
        }
    } else {
        out.push_str("0.");
        out.push_str(&"0".repeat((-exponent - 1) as usize));
        out.push_str(&digits);
    }
    if out.contains('.') {
        let trimmed = out.trim_end_matches('0').trim_end_matches('.');
        out.truncate(trimmed.len());
    }
    if negative {
        out.insert(0, '-');
    }
    out
}

/// Serializes a sweep as CSV: header, then one line per row, LF endings.
/// Gap rows keep their identity columns and leave every metric cell
/// empty. Exact rows report zero violation rates — plans from the exact
/// planners satisfy the constraints by construction.
pub fn write_csv(result: &SweepResult) -> String {
    use std::fmt::Write;

    let mut out = String::with_capacity(64 * (result.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &result.rows {
        write!(
            out,
            "{},{},{},{}",
            result.axis.name(),
            row.axis_value,
            row.method.name(),
            row.feasible()
        )
        .expect("writing to a String cannot fail");
        match &row.data {
            RowData::Gap => out.push_str(",,,,,,,,,"),
            RowData::Exact { plan, metrics } => {
                write!(
                    out,
                    ",{},{},{},{},{},{},0,0,0",
                    plan.partitions,
                    plan.brokers,
                    sig6(metrics.replication_latency),
                    sig6(metrics.unavailability),
                    sig6(metrics.handles_per_broker),
                    sig6(metrics.partitions_per_broker),
                )
                .expect("writing to a String cannot fail");
            }
            RowData::Aggregate(a) => {
                write!(
                    out,
                    ",{},{},{},{},{},{},{},{},{}",
                    sig6(a.mean_partitions),
                    sig6(a.mean_brokers),
                    sig6(a.mean_replication_latency),
                    sig6(a.mean_unavailability),
                    sig6(a.mean_handles_per_broker),
                    sig6(a.mean_partitions_per_broker),
                    sig6(a.latency_violation_rate),
                    sig6(a.unavailability_violation_rate),
                    sig6(a.os_violation_rate),
                )
                .expect("writing to a String cannot fail");
            }
        }
        out.push('\n');
    }
    out
}
