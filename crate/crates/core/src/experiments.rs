//! Sweep harness: runs a set of planning methods across one varied
//! parameter axis and tabulates the results point by point.
//!
//! Exact planners contribute their plan and its metrics; the randomized
//! baseline contributes means and violation rates over a block of seeded
//! trials. Points where a method produces nothing become explicit gap
//! rows rather than disappearing, so downstream plots show where a method
//! ran out of feasible plans.
//!
//! Randomness is budgeted for reproducibility: point `i` of a sweep uses
//! the seed stream `derive_seed(master_seed, i)`, and trial `t` within a
//! point uses `derive_seed(point_seed, t)`. Results are therefore
//! byte-identical across runs, thread counts, and the
//! sequential/parallel execution paths.

use serde::Serialize;

use crate::model::{evaluate_plan, InvalidInput, MeasuredInputs, Plan, PlanMetrics, Requirements};
use crate::rng::derive_seed;
use crate::solvers::{
    bromax, bromin, ms_cnfl_with, ConfluentCap, Method, SolveError, SolveOutcome,
};

/// The parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepAxis {
    /// Consumer-group size.
    #[serde(rename = "consumers")]
    Consumers,
    /// Broker pool size.
    #[serde(rename = "brokers")]
    AvailableBrokers,
    /// Replication factor.
    #[serde(rename = "replication")]
    ReplicationFactor,
}

impl SweepAxis {
    /// Stable name used in CSV and CLI flags.
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::Consumers => "consumers",
            SweepAxis::AvailableBrokers => "brokers",
            SweepAxis::ReplicationFactor => "replication",
        }
    }
}

impl std::fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SweepAxis {
    type Err = InvalidInput;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "consumers" => Ok(SweepAxis::Consumers),
            "brokers" => Ok(SweepAxis::AvailableBrokers),
            "replication" => Ok(SweepAxis::ReplicationFactor),
            _ => Err(InvalidInput {
                field: "axis",
                reason: "unknown axis name (expected consumers, brokers, or replication)",
            }),
        }
    }
}

/// Full description of one sweep: the axis and its values, the fixed
/// baseline instance, the methods to run, and the randomness budget.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    /// Which parameter varies.
    pub axis: SweepAxis,
    /// The values it takes, in strictly increasing order.
    pub axis_values: Vec<u64>,
    /// Requirements at every point, except the swept field.
    pub base_requirements: Requirements,
    /// Measured inputs at every point.
    pub base_measured: MeasuredInputs,
    /// Methods to tabulate; sweeps support the two greedy planners and
    /// the randomized baseline.
    pub methods: Vec<Method>,
    /// Trials per point for the randomized baseline.
    pub mscnfl_trials: u64,
    /// Root of the per-point seed derivation.
    pub master_seed: u64,
    /// Which rule-of-thumb cap the randomized baseline samples under.
    pub confluent_cap: ConfluentCap,
}

impl SweepSpec {
    /// The standard sweep for an axis: default baseline instance with the
    /// conventional fixed values, the conventional range of the varied
    /// parameter, all three comparison methods, 1000 trials, seed 0.
    ///
    /// Fixed values per axis: consumer sweeps hold 20 brokers available at
    /// replication 3; broker sweeps hold 100 consumers at replication 3;
    /// replication sweeps hold 100 consumers and 20 brokers.
    pub fn default_for_axis(axis: SweepAxis) -> SweepSpec {
        let mut base = Requirements::default();
        let axis_values: Vec<u64> = match axis {
            SweepAxis::Consumers => {
                base.available_brokers = 20;
                base.replication_factor = 3;
                (50..=1000).step_by(50).collect()
            }
            SweepAxis::AvailableBrokers => {
                base.consumers = 100;
                base.replication_factor = 3;
                (3..=50).collect()
            }
            SweepAxis::ReplicationFactor => {
                base.consumers = 100;
                base.available_brokers = 20;
                (2..=15).collect()
            }
        };
        SweepSpec {
            axis,
            axis_values,
            base_requirements: base,
            base_measured: MeasuredInputs::default(),
            methods: vec![Method::BroMin, Method::BroMax, Method::MsCnfl],
            mscnfl_trials: 1000,
            master_seed: 0,
            confluent_cap: ConfluentCap::PerBroker,
        }
    }

    /// Checks the spec: valid baseline, nonempty strictly increasing axis
    /// values (all within each field's own invariant), supported methods,
    /// and a nonzero trial budget when the randomized baseline is listed.
    pub fn validate(&self) -> Result<(), InvalidInput> {
        self.base_requirements.validate()?;
        self.base_measured.validate()?;
        if self.axis_values.is_empty() {
            return Err(InvalidInput {
                field: "axis_values",
                reason: "must be nonempty",
            });
        }
        if self.axis_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(InvalidInput {
                field: "axis_values",
                reason: "must be strictly increasing",
            });
        }
        if self.axis_values[0] < 1 {
            return Err(InvalidInput {
                field: "axis_values",
                reason: "must be at least 1",
            });
        }
        if self.methods.is_empty() {
            return Err(InvalidInput {
                field: "methods",
                reason: "must be nonempty",
            });
        }
        for m in &self.methods {
            if !matches!(m, Method::BroMin | Method::BroMax | Method::MsCnfl) {
                return Err(InvalidInput {
                    field: "methods",
                    reason: "sweeps support bromin, bromax, and mscnfl",
                });
            }
        }
        if self.methods.contains(&Method::MsCnfl) && self.mscnfl_trials < 1 {
            return Err(InvalidInput {
                field: "mscnfl_trials",
                reason: "must be at least 1",
            });
        }
        Ok(())
    }

    /// The instance at one axis value: the baseline with the swept field
    /// replaced.
    fn requirements_at(&self, value: u64) -> Requirements {
        let mut req = self.base_requirements;
        match self.axis {
            SweepAxis::Consumers => req.consumers = value,
            SweepAxis::AvailableBrokers => req.available_brokers = value,
            SweepAxis::ReplicationFactor => req.replication_factor = value,
        }
        req
    }
}

/// Aggregate of a block of randomized-baseline trials at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McAggregate {
    pub mean_partitions: f64,
    pub mean_brokers: f64,
    /// Mean replication latency across trials, ms.
    pub mean_replication_latency: f64,
    /// Mean failover unavailability across trials, ms.
    pub mean_unavailability: f64,
    pub mean_handles_per_broker: f64,
    pub mean_partitions_per_broker: f64,
    /// Fraction of trials violating the replication-latency budget.
    pub latency_violation_rate: f64,
    /// Fraction of trials violating the unavailability budget.
    pub unavailability_violation_rate: f64,
    /// Fraction of trials violating the open-file-handle budget.
    pub os_violation_rate: f64,
}

/// What one method produced at one axis point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RowData {
    /// Nothing: the search exhausted itself, the broker range was empty,
    /// or the sampling range was degenerate. Metric cells stay blank.
    Gap,
    /// A concrete plan with its metrics.
    Exact { plan: Plan, metrics: PlanMetrics },
    /// Trial means and violation rates from the randomized baseline.
    Aggregate(McAggregate),
}

/// One row of the sweep table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    /// Value of the swept parameter at this point.
    pub axis_value: u64,
    pub method: Method,
    pub data: RowData,
}

impl SweepRow {
    /// Whether the method produced anything here (the `feasible` CSV
    /// column).
    pub fn feasible(&self) -> bool {
        !matches!(self.data, RowData::Gap)
    }
}

/// A completed sweep: every (point, method) combination, points in axis
/// order and methods in name order within a point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub axis: SweepAxis,
    pub rows: Vec<SweepRow>,
}

/// Seeded mean-and-violation-rate aggregation of the randomized baseline
/// with the plain per-broker cap; see [`aggregate_mscnfl_with`].
pub fn aggregate_mscnfl(
    req: &Requirements,
    meas: &MeasuredInputs,
    trials: u64,
    seed: u64,
) -> Result<McAggregate, SolveError> {
    aggregate_mscnfl_with(req, meas, trials, seed, ConfluentCap::PerBroker)
}

/// Runs the randomized baseline `trials` times — trial `t` seeded with
/// `derive_seed(seed, t)` — and returns per-metric means plus the
/// fraction of trials violating each of the latency, unavailability, and
/// OS-load budgets.
///
/// Trials are accumulated in index order with one sequential `f64`
/// stream, so the aggregate is bitwise deterministic.
///
/// # Panics
///
/// Panics if `trials` is zero.
pub fn aggregate_mscnfl_with(
    req: &Requirements,
    meas: &MeasuredInputs,
    trials: u64,
    seed: u64,
    cap: ConfluentCap,
) -> Result<McAggregate, SolveError> {
    assert!(trials >= 1, "mean of zero trials is undefined");
    let mut sum = McAggregate {
        mean_partitions: 0.0,
        mean_brokers: 0.0,
        mean_replication_latency: 0.0,
        mean_unavailability: 0.0,
        mean_handles_per_broker: 0.0,
        mean_partitions_per_broker: 0.0,
        latency_violation_rate: 0.0,
        unavailability_violation_rate: 0.0,
        os_violation_rate: 0.0,
    };
    for t in 0..trials {
        let outcome = ms_cnfl_with(req, derive_seed(seed, t), cap)?;
        let plan = outcome.plan.expect("randomized baseline always draws a plan");
        let m = evaluate_plan(&plan, req, meas);
        sum.mean_partitions += plan.partitions as f64;
        sum.mean_brokers += plan.brokers as f64;
        sum.mean_replication_latency += m.replication_latency;
        sum.mean_unavailability += m.unavailability;
        sum.mean_handles_per_broker += m.handles_per_broker;
        sum.mean_partitions_per_broker += m.partitions_per_broker;
        sum.latency_violation_rate += f64::from(!m.per_constraint_pass.latency);
        sum.unavailability_violation_rate += f64::from(!m.per_constraint_pass.unavailability);
        sum.os_violation_rate += f64::from(!m.per_constraint_pass.os_load);
    }
    let n = trials as f64;
    Ok(McAggregate {
        mean_partitions: sum.mean_partitions / n,
        mean_brokers: sum.mean_brokers / n,
        mean_replication_latency: sum.mean_replication_latency / n,
        mean_unavailability: sum.mean_unavailability / n,
        mean_handles_per_broker: sum.mean_handles_per_broker / n,
        mean_partitions_per_broker: sum.mean_partitions_per_broker / n,
        latency_violation_rate: sum.latency_violation_rate / n,
        unavailability_violation_rate: sum.unavailability_violation_rate / n,
        os_violation_rate: sum.os_violation_rate / n,
    })
}

fn exact_row(
    result: Result<SolveOutcome, SolveError>,
    req: &Requirements,
    meas: &MeasuredInputs,
) -> RowData {
    match result {
        Ok(SolveOutcome { plan: Some(plan), .. }) => RowData::Exact {
            plan,
            metrics: evaluate_plan(&plan, req, meas),
        },
        // Exhausted search or an empty broker range: a gap either way.
        Ok(SolveOutcome { plan: None, .. }) | Err(_) => RowData::Gap,
    }
}

/// All rows of one sweep point, methods deduplicated and in name order.
fn point_rows(spec: &SweepSpec, point_index: u64, axis_value: u64) -> Vec<SweepRow> {
    let req = spec.requirements_at(axis_value);
    let meas = &spec.base_measured;
    let mut methods = spec.methods.clone();
    methods.sort_by_key(Method::name);
    methods.dedup();
    methods
        .into_iter()
        .map(|method| {
            let data = match method {
                Method::BroMin => exact_row(bromin(&req, meas), &req, meas),
                Method::BroMax => exact_row(bromax(&req, meas), &req, meas),
                Method::MsCnfl => {
                    let point_seed = derive_seed(spec.master_seed, point_index);
                    aggregate_mscnfl_with(
                        &req,
                        meas,
                        spec.mscnfl_trials,
                        point_seed,
                        spec.confluent_cap,
                    )
                    .map_or(RowData::Gap, RowData::Aggregate)
                }
                other => unreachable!("validate() rejects {other} in sweeps"),
            };
            SweepRow {
                axis_value,
                method,
                data,
            }
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn map_points(spec: &SweepSpec) -> Vec<Vec<SweepRow>> {
    use rayon::prelude::*;
    spec.axis_values
        .par_iter()
        .enumerate()
        .map(|(i, &value)| point_rows(spec, i as u64, value))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn map_points(spec: &SweepSpec) -> Vec<Vec<SweepRow>> {
    spec.axis_values
        .iter()
        .enumerate()
        .map(|(i, &value)| point_rows(spec, i as u64, value))
        .collect()
}

fn assemble(spec: &SweepSpec, per_point: Vec<Vec<SweepRow>>) -> SweepResult {
    let mut rows: Vec<SweepRow> = per_point.into_iter().flatten().collect();
    // Already in order by construction; sort anyway so emission order is
    // a stated property, not an accident of the execution path.
    rows.sort_by_key(|row| (row.axis_value, row.method.name()));
    SweepResult {
        axis: spec.axis,
        rows,
    }
}

/// Runs a sweep, one instance per axis value, every method at every
/// point. Points are evaluated on the rayon pool when the `parallel`
/// feature is on; the output is identical either way. Per-point failures
/// become [`RowData::Gap`] rows — the only error is an invalid spec.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult, InvalidInput> {
    spec.validate()?;
    Ok(assemble(spec, map_points(spec)))
}

/// [`run_sweep`] on a plain sequential iterator, regardless of features.
/// Exists so the parallel path has an in-tree reference to be compared
/// and benchmarked against.
pub fn run_sweep_sequential(spec: &SweepSpec) -> Result<SweepResult, InvalidInput> {
    spec.validate()?;
    let per_point: Vec<Vec<SweepRow>> = spec
        .axis_values
        .iter()
        .enumerate()
        .map(|(i, &value)| point_rows(spec, i as u64, value))
        .collect();
    Ok(assemble(spec, per_point))
}
