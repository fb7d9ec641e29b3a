//! Domain model: measured cluster characteristics, application
//! requirements, candidate plans, and the constraint predicates a plan
//! must satisfy.
//!
//! Rates are MB/s throughout; durations are milliseconds. Constraint
//! comparisons are computed in wide integer arithmetic whenever the
//! measured values are whole numbers, so a plan sitting exactly on a
//! threshold (replication latency of 200 ms against a 200 ms budget, say)
//! is always classified as feasible — never lost to floating-point
//! rounding. Fractional measurements fall back to `f64` comparison with
//! no tolerance band.

use serde::Serialize;
use thiserror::Error;

/// A value that violates its domain invariant, with the offending field
/// named so configuration errors point somewhere actionable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{field} {reason}")]
pub struct InvalidInput {
    /// Name of the offending field.
    pub field: &'static str,
    /// The invariant that failed.
    pub reason: &'static str,
}

fn ensure(ok: bool, field: &'static str, reason: &'static str) -> Result<(), InvalidInput> {
    if ok {
        Ok(())
    } else {
        Err(InvalidInput { field, reason })
    }
}

fn positive_finite(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

/// Empirically measured characteristics of the target cluster.
///
/// These are properties of the hardware and the broker software, obtained
/// by benchmarking a single partition and a single broker; they do not
/// depend on the application being sized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasuredInputs {
    /// Write throughput one partition sustains, MB/s.
    pub producer_throughput_per_partition: f64,
    /// Read throughput one partition sustains, MB/s.
    pub consumer_throughput_per_partition: f64,
    /// Open file handles a single broker tolerates.
    pub max_open_file_handles: u64,
    /// Time to replicate one partition to one follower, ms.
    pub replication_latency_per_partition: f64,
    /// Time to elect a new leader for one partition, ms.
    pub leader_election_time: f64,
}

impl Default for MeasuredInputs {
    /// Benchmark figures for a commodity cluster: 10 MB/s in, 20 MB/s out
    /// per partition, 10 000 handles per broker, 1 ms to replicate a
    /// partition, 5 ms to elect a leader.
    fn default() -> Self {
        Self {
            producer_throughput_per_partition: 10.0,
            consumer_throughput_per_partition: 20.0,
            max_open_file_handles: 10_000,
            replication_latency_per_partition: 1.0,
            leader_election_time: 5.0,
        }
    }
}

impl MeasuredInputs {
    /// Checks every field against its invariant (rates and durations
    /// strictly positive and finite, handle budget nonzero).
    pub fn validate(&self) -> Result<(), InvalidInput> {
        ensure(
            positive_finite(self.producer_throughput_per_partition),
            "producer_throughput_per_partition",
            "must be positive and finite",
        )?;
        ensure(
            positive_finite(self.consumer_throughput_per_partition),
            "consumer_throughput_per_partition",
            "must be positive and finite",
        )?;
        ensure(
            self.max_open_file_handles >= 1,
            "max_open_file_handles",
            "must be at least 1",
        )?;
        ensure(
            positive_finite(self.replication_latency_per_partition),
            "replication_latency_per_partition",
            "must be positive and finite",
        )?;
        ensure(
            positive_finite(self.leader_election_time),
            "leader_election_time",
            "must be positive and finite",
        )
    }
}

/// What the application demands of the topic, plus the two cluster-side
/// knobs (replication factor, broker budget) the operator has fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Requirements {
    /// Target aggregate throughput for the topic, MB/s.
    pub target_throughput: f64,
    /// Consumers reading in one group; each needs its own partition.
    pub consumers: u64,
    /// Copies kept of every partition.
    pub replication_factor: u64,
    /// Replication latency the application tolerates, ms.
    pub max_replication_latency: f64,
    /// Leader-failover unavailability the application tolerates, ms.
    pub max_unavailability: f64,
    /// Brokers the deployment can spend on this topic.
    pub available_brokers: u64,
}

impl Default for Requirements {
    /// A mid-size deployment: 100 MB/s, 100 consumers, 3-way replication,
    /// 200 ms replication budget, 2 s failover budget, 10 brokers.
    fn default() -> Self {
        Self {
            target_throughput: 100.0,
            consumers: 100,
            replication_factor: 3,
            max_replication_latency: 200.0,
            max_unavailability: 2000.0,
            available_brokers: 10,
        }
    }
}

impl Requirements {
    /// Checks every field against its invariant. Note `replication_factor`
    /// may legitimately exceed `available_brokers`: that combination is a
    /// *structurally infeasible* instance, not an invalid one.
    pub fn validate(&self) -> Result<(), InvalidInput> {
        ensure(
            positive_finite(self.target_throughput),
            "target_throughput",
            "must be positive and finite",
        )?;
        ensure(self.consumers >= 1, "consumers", "must be at least 1")?;
        ensure(
            self.replication_factor >= 1,
            "replication_factor",
            "must be at least 1",
        )?;
        ensure(
            positive_finite(self.max_replication_latency),
            "max_replication_latency",
            "must be positive and finite",
        )?;
        ensure(
            positive_finite(self.max_unavailability),
            "max_unavailability",
            "must be positive and finite",
        )?;
        ensure(
            self.available_brokers >= 1,
            "available_brokers",
            "must be at least 1",
        )
    }
}

/// A candidate sizing: partition count and broker count, both at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Plan {
    /// Partitions to create for the topic.
    pub partitions: u64,
    /// Brokers the partitions (and their replicas) are spread over.
    pub brokers: u64,
}

impl Plan {
    /// Builds a plan, rejecting zero counts.
    pub fn new(partitions: u64, brokers: u64) -> Result<Self, InvalidInput> {
        ensure(partitions >= 1, "partitions", "must be at least 1")?;
        ensure(brokers >= 1, "brokers", "must be at least 1")?;
        Ok(Self {
            partitions,
            brokers,
        })
    }
}

/// Verdict of each constraint predicate for one plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstraintChecks {
    /// Partition count covers the throughput target and the consumer group.
    pub throughput: bool,
    /// Replica handles fit the brokers' open-file budget.
    pub os_load: bool,
    /// Replication completes within the latency budget.
    pub latency: bool,
    /// Leader failover completes within the unavailability budget.
    pub unavailability: bool,
    /// Broker count between replication factor and the available pool.
    pub broker_bound: bool,
}

impl ConstraintChecks {
    /// True when every constraint holds.
    pub fn all(&self) -> bool {
        self.throughput && self.os_load && self.latency && self.unavailability && self.broker_bound
    }
}

/// Derived per-plan quantities, with each constraint's verdict attached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanMetrics {
    /// Time to replicate one broker's share of the partitions, ms:
    /// `partitions * replication_factor * replication_latency_per_partition
    /// / brokers`.
    pub replication_latency: f64,
    /// Unavailability when a broker fails and its partition leaders are
    /// re-elected, ms: `partitions * leader_election_time / brokers`.
    pub unavailability: f64,
    /// Average open file handles per broker:
    /// `partitions * replication_factor / brokers`.
    pub handles_per_broker: f64,
    /// Average partitions per broker: `partitions / brokers`.
    pub partitions_per_broker: f64,
    /// Aggregate write capacity, MB/s:
    /// `partitions * producer_throughput_per_partition`.
    pub producer_capacity: f64,
    /// Aggregate read capacity, MB/s:
    /// `partitions * consumer_throughput_per_partition`.
    pub consumer_capacity: f64,
    /// Outcome of every constraint predicate for this plan.
    pub per_constraint_pass: ConstraintChecks,
}

/// Whole numbers small enough that `f64` represents them exactly, so
/// casting to an integer loses nothing.
fn exactly_integral(x: f64) -> bool {
    (0.0..9_007_199_254_740_992.0).contains(&x) && x.fract() == 0.0
}

/// `lhs_count * lhs_weight <= rhs_count * rhs_weight` with no rounding
/// surprises: when both weights are exactly-representable whole numbers
/// the products are formed in 128-bit integers, otherwise in `f64`.
fn weighted_le(lhs_count: u128, lhs_weight: f64, rhs_count: u128, rhs_weight: f64) -> bool {
    if exactly_integral(lhs_weight) && exactly_integral(rhs_weight) {
        lhs_count.saturating_mul(lhs_weight as u128) <= rhs_count.saturating_mul(rhs_weight as u128)
    } else {
        (lhs_count as f64) * lhs_weight <= (rhs_count as f64) * rhs_weight
    }
}

/// `ceil(numerator / denominator)`, exact for whole inputs, saturating at
/// `u64::MAX`.
fn ceil_ratio(numerator: f64, denominator: f64) -> u64 {
    if exactly_integral(numerator) && exactly_integral(denominator) && denominator >= 1.0 {
        let q = (numerator as u128).div_ceil(denominator as u128);
        u64::try_from(q).unwrap_or(u64::MAX)
    } else {
        let q = (numerator / denominator).ceil();
        if q <= 0.0 {
            0
        } else if q >= u64::MAX as f64 {
            u64::MAX
        } else {
            q as u64
        }
    }
}

/// Smallest partition count that can carry the workload: enough partitions
/// for the producers, enough for the consumers, and one per consumer in
/// the group —
/// `ceil(max(target/producer_rate, target/consumer_rate, consumers))`.
pub fn min_partitions(req: &Requirements, meas: &MeasuredInputs) -> u64 {
    ceil_ratio(
        req.target_throughput,
        meas.producer_throughput_per_partition,
    )
    .max(ceil_ratio(
        req.target_throughput,
        meas.consumer_throughput_per_partition,
    ))
    .max(req.consumers)
}

/// Largest partition count the open-file-handle budget admits on `brokers`
/// brokers: `floor(brokers * max_open_file_handles / replication_factor)`.
///
/// Every partition costs one handle per replica, and the cluster-wide
/// handle budget grows linearly with the broker count.
pub fn max_partitions_os(brokers: u64, req: &Requirements, meas: &MeasuredInputs) -> u64 {
    let budget = (brokers as u128) * (meas.max_open_file_handles as u128);
    u64::try_from(budget / req.replication_factor as u128).unwrap_or(u64::MAX)
}

/// Throughput constraint: the plan has at least [`min_partitions`].
pub fn check_throughput(plan: &Plan, req: &Requirements, meas: &MeasuredInputs) -> bool {
    plan.partitions >= min_partitions(req, meas)
}

/// OS-load constraint: total replica handles fit the brokers' budget —
/// `partitions * replication_factor <= brokers * max_open_file_handles`.
pub fn check_os_load(plan: &Plan, req: &Requirements, meas: &MeasuredInputs) -> bool {
    (plan.partitions as u128).saturating_mul(req.replication_factor as u128)
        <= (plan.brokers as u128).saturating_mul(meas.max_open_file_handles as u128)
}

/// Latency constraint: replicating one broker's share of the partitions
/// stays within budget — `partitions * replication_factor *
/// replication_latency_per_partition / brokers <= max_replication_latency`,
/// evaluated in product form so exact threshold hits stay exact.
pub fn check_latency(plan: &Plan, req: &Requirements, meas: &MeasuredInputs) -> bool {
    weighted_le(
        (plan.partitions as u128).saturating_mul(req.replication_factor as u128),
        meas.replication_latency_per_partition,
        plan.brokers as u128,
        req.max_replication_latency,
    )
}

/// Unavailability constraint: re-electing leaders for one failed broker's
/// partitions stays within budget — `partitions * leader_election_time /
/// brokers <= max_unavailability`, evaluated in product form.
pub fn check_unavailability(plan: &Plan, req: &Requirements, meas: &MeasuredInputs) -> bool {
    weighted_le(
        plan.partitions as u128,
        meas.leader_election_time,
        plan.brokers as u128,
        req.max_unavailability,
    )
}

/// Broker-count constraint: at least one broker per replica, at most the
/// available pool — `replication_factor <= brokers <= available_brokers`.
pub fn check_broker_bound(plan: &Plan, req: &Requirements) -> bool {
    req.replication_factor <= plan.brokers && plan.brokers <= req.available_brokers
}

/// Conjunction of all five constraint predicates.
pub fn is_feasible(plan: &Plan, req: &Requirements, meas: &MeasuredInputs) -> bool {
    check_throughput(plan, req, meas)
        && check_os_load(plan, req, meas)
        && check_latency(plan, req, meas)
        && check_unavailability(plan, req, meas)
        && check_broker_bound(plan, req)
}

/// Computes every derived metric of a plan, together with each
/// constraint's verdict. The verdicts come from the same predicates
/// [`is_feasible`] uses, so a metric printed as passing never disagrees
/// with the feasibility decision.
pub fn evaluate_plan(plan: &Plan, req: &Requirements, meas: &MeasuredInputs) -> PlanMetrics {
    let p = plan.partitions as f64;
    let b = plan.brokers as f64;
    let r = req.replication_factor as f64;
    PlanMetrics {
        replication_latency: p * r * meas.replication_latency_per_partition / b,
        unavailability: p * meas.leader_election_time / b,
        handles_per_broker: p * r / b,
        partitions_per_broker: p / b,
        producer_capacity: p * meas.producer_throughput_per_partition,
        consumer_capacity: p * meas.consumer_throughput_per_partition,
        per_constraint_pass: ConstraintChecks {
            throughput: check_throughput(plan, req, meas),
            os_load: check_os_load(plan, req, meas),
            latency: check_latency(plan, req, meas),
            unavailability: check_unavailability(plan, req, meas),
            broker_bound: check_broker_bound(plan, req),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn defaults() -> (Requirements, MeasuredInputs) {
        (Requirements::default(), MeasuredInputs::default())
    }

    #[test]
    fn min_partitions_is_tightest_of_three_floors() {
        let (mut req, meas) = defaults();
        // 100 MB/s needs 10 producer-side and 5 consumer-side partitions;
        // the 100-strong consumer group dominates.
        assert_eq!(min_partitions(&req, &meas), 100);
        req.consumers = 1;
        assert_eq!(min_partitions(&req, &meas), 10);
        req.target_throughput = 10_000.0;
        assert_eq!(min_partitions(&req, &meas), 1000);
        // Fractional rate: 100 / 0.4 = 250 exactly, then consumer side
        // 100 / 20 = 5, so the producer floor wins.
        req.target_throughput = 100.0;
        let meas = MeasuredInputs {
            producer_throughput_per_partition: 0.4,
            ..meas
        };
        assert_eq!(min_partitions(&req, &meas), 250);
    }

    #[test]
    fn min_partitions_rounds_up() {
        let (mut req, meas) = defaults();
        req.consumers = 1;
        req.target_throughput = 101.0; // 101/10 = 10.1 -> 11
        assert_eq!(min_partitions(&req, &meas), 11);
    }

    #[test]
    fn os_cap_scales_with_brokers() {
        let (req, meas) = defaults();
        // floor(b * 10000 / 3)
        assert_eq!(max_partitions_os(1, &req, &meas), 3333);
        assert_eq!(max_partitions_os(3, &req, &meas), 10_000);
        assert_eq!(max_partitions_os(10, &req, &meas), 33_333);
    }

    #[test]
    fn default_plan_metrics_are_exact() {
        let (req, meas) = defaults();
        let plan = Plan::new(200, 3).unwrap();
        let m = evaluate_plan(&plan, &req, &meas);
        assert_eq!(m.replication_latency, 200.0);
        assert!((m.unavailability - 1000.0 / 3.0).abs() < 1e-9);
        assert_eq!(m.handles_per_broker, 200.0);
        assert!((m.partitions_per_broker - 200.0 / 3.0).abs() < 1e-9);
        assert_eq!(m.producer_capacity, 2000.0);
        assert_eq!(m.consumer_capacity, 4000.0);
        assert!(m.per_constraint_pass.all());
        assert!(is_feasible(&plan, &req, &meas));
    }

    #[test]
    fn ten_broker_plan_metrics_are_exact() {
        let (req, meas) = defaults();
        let plan = Plan::new(666, 10).unwrap();
        let m = evaluate_plan(&plan, &req, &meas);
        assert!((m.replication_latency - 199.8).abs() < 1e-9);
        assert!((m.unavailability - 333.0).abs() < 1e-9);
        assert!((m.handles_per_broker - 199.8).abs() < 1e-9);
        assert!(m.per_constraint_pass.all());
    }

    #[test]
    fn boundary_equality_counts_as_feasible() {
        let (req, meas) = defaults();
        // Replication latency is exactly 200 ms at (200, 3): on the budget.
        assert!(check_latency(&Plan::new(200, 3).unwrap(), &req, &meas));
        assert!(!check_latency(&Plan::new(201, 3).unwrap(), &req, &meas));
        // Handle budget hit exactly: 10000 * 3 = 3 * 10000... use b=3,
        // P = 10000 -> 30000 handles vs 30000 budget.
        assert!(check_os_load(&Plan::new(10_000, 3).unwrap(), &req, &meas));
        assert!(!check_os_load(&Plan::new(10_001, 3).unwrap(), &req, &meas));
    }

    #[test]
    fn fractional_weights_compare_in_f64() {
        let (mut req, meas) = defaults();
        req.max_replication_latency = 0.5;
        // P * 3 * 1.0 / b <= 0.5  =>  P <= b / 6.
        assert!(check_latency(&Plan::new(1, 6).unwrap(), &req, &meas));
        assert!(!check_latency(&Plan::new(2, 6).unwrap(), &req, &meas));
    }

    #[test]
    fn broker_bound_brackets_replication_and_pool() {
        let (req, _) = defaults();
        assert!(!check_broker_bound(&Plan::new(1, 2).unwrap(), &req));
        assert!(check_broker_bound(&Plan::new(1, 3).unwrap(), &req));
        assert!(check_broker_bound(&Plan::new(1, 10).unwrap(), &req));
        assert!(!check_broker_bound(&Plan::new(1, 11).unwrap(), &req));
    }

    #[test]
    fn validation_rejects_nonpositive_values() {
        let (req, meas) = defaults();
        assert!(req.validate().is_ok());
        assert!(meas.validate().is_ok());

        let bad = Requirements {
            target_throughput: 0.0,
            ..req
        };
        assert_eq!(bad.validate().unwrap_err().field, "target_throughput");
        let bad = Requirements {
            consumers: 0,
            ..req
        };
        assert_eq!(bad.validate().unwrap_err().field, "consumers");
        let bad = MeasuredInputs {
            leader_election_time: f64::NAN,
            ..meas
        };
        assert_eq!(bad.validate().unwrap_err().field, "leader_election_time");
        assert!(Plan::new(0, 1).is_err());
        assert!(Plan::new(1, 0).is_err());
    }

    #[test]
    fn replication_factor_may_exceed_broker_pool() {
        // Structural infeasibility is a property of the instance, not a
        // validation error; solvers report it, validation accepts it.
        let req = Requirements {
            replication_factor: 12,
            available_brokers: 10,
            ..Requirements::default()
        };
        assert!(req.validate().is_ok());
    }

    prop_compose! {
        /// Weights that are whole half the time, quarter-fractional the
        /// other half, to drive both comparison paths.
        fn weight()(n in 1u32..=8000, quarters in proptest::bool::ANY) -> f64 {
            if quarters { n as f64 / 4.0 } else { n as f64 }
        }
    }

    prop_compose! {
        fn instance()(
            throughput in weight(),
            consumers in 1u64..=2000,
            replication in 1u64..=12,
            latency_budget in weight(),
            unavail_budget in weight(),
            extra_brokers in 0u64..=40,
            handles in 1u64..=100_000,
            prod in weight(),
            cons in weight(),
            repl_lat in weight(),
            election in weight(),
        ) -> (Requirements, MeasuredInputs) {
            (
                Requirements {
                    target_throughput: throughput,
                    consumers,
                    replication_factor: replication,
                    max_replication_latency: latency_budget,
                    max_unavailability: unavail_budget,
                    available_brokers: replication + extra_brokers,
                },
                MeasuredInputs {
                    producer_throughput_per_partition: prod,
                    consumer_throughput_per_partition: cons,
                    max_open_file_handles: handles,
                    replication_latency_per_partition: repl_lat,
                    leader_election_time: election,
                },
            )
        }
    }

    proptest! {
        /// The verdicts embedded in the metrics always agree with the
        /// standalone predicates and with the overall decision.
        #[test]
        fn metrics_verdicts_match_predicates(
            (req, meas) in instance(),
            partitions in 1u64..=50_000,
            brokers in 1u64..=60,
        ) {
            let plan = Plan { partitions, brokers };
            let m = evaluate_plan(&plan, &req, &meas);
            prop_assert_eq!(m.per_constraint_pass.throughput, check_throughput(&plan, &req, &meas));
            prop_assert_eq!(m.per_constraint_pass.os_load, check_os_load(&plan, &req, &meas));
            prop_assert_eq!(m.per_constraint_pass.latency, check_latency(&plan, &req, &meas));
            prop_assert_eq!(m.per_constraint_pass.unavailability, check_unavailability(&plan, &req, &meas));
            prop_assert_eq!(m.per_constraint_pass.broker_bound, check_broker_bound(&plan, &req));
            prop_assert_eq!(m.per_constraint_pass.all(), is_feasible(&plan, &req, &meas));
        }

        /// Latency, unavailability, and OS load only get worse with more
        /// partitions, and only get better with more brokers.
        #[test]
        fn predicates_are_monotone(
            (req, meas) in instance(),
            partitions in 1u64..=50_000,
            brokers in 1u64..=60,
            more in 1u64..=1000,
        ) {
            let plan = Plan { partitions, brokers };
            let more_parts = Plan { partitions: partitions + more, brokers };
            let more_brokers = Plan { partitions, brokers: brokers + more };
            for check in [check_os_load, check_latency, check_unavailability] {
                if !check(&plan, &req, &meas) {
                    prop_assert!(!check(&more_parts, &req, &meas));
                }
                if check(&plan, &req, &meas) {
                    prop_assert!(check(&more_brokers, &req, &meas));
                }
            }
        }

        /// A feasible plan stays feasible when given more brokers, as long
        /// as the pool allows it.
        #[test]
        fn feasibility_is_monotone_in_brokers(
            (req, meas) in instance(),
            partitions in 1u64..=50_000,
            brokers in 1u64..=60,
            more in 1u64..=10,
        ) {
            let plan = Plan { partitions, brokers };
            let bigger = Plan { partitions, brokers: brokers + more };
            if is_feasible(&plan, &req, &meas) && bigger.brokers <= req.available_brokers {
                prop_assert!(is_feasible(&bigger, &req, &meas));
            }
        }

        /// The closed-form OS cap agrees with the predicate at the
        /// boundary: the cap passes, the cap plus one fails.
        #[test]
        fn os_cap_is_the_predicate_boundary(
            (req, meas) in instance(),
            brokers in 1u64..=60,
        ) {
            let cap = max_partitions_os(brokers, &req, &meas);
            let at_cap = Plan { partitions: cap, brokers };
            let above_cap = Plan { partitions: cap + 1, brokers };
            if cap >= 1 {
                prop_assert!(check_os_load(&at_cap, &req, &meas));
            }
            prop_assert!(!check_os_load(&above_cap, &req, &meas));
        }

        /// min_partitions is the throughput-predicate boundary.
        #[test]
        fn min_partitions_is_the_predicate_boundary((req, meas) in instance()) {
            let floor = min_partitions(&req, &meas);
            let at = Plan { partitions: floor, brokers: 1 };
            prop_assert!(check_throughput(&at, &req, &meas));
            if floor > 1 {
                let below = Plan { partitions: floor - 1, brokers: 1 };
                prop_assert!(!check_throughput(&below, &req, &meas));
            }
        }
    }
}
