//! Planning strategies.
//!
//! Two greedy scans of the broker range solve the sizing problem exactly:
//! [`bromin`] spends as few brokers as possible, [`bromax`] spends the
//! whole pool to maximize partitions. [`brute_force_max`] and
//! [`brute_force_min_brokers`] enumerate every candidate pair and serve as
//! ground truth for the greedy planners. [`ms_cnfl`] is the randomized
//! baseline built from published sizing rules of thumb, and [`lp_relax`]
//! solves the real-valued relaxation and floors it — both exist to be
//! measured against the exact planners, not to be trusted.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::model::{
    check_latency, check_unavailability, is_feasible, max_partitions_os, min_partitions,
    MeasuredInputs, Plan, Requirements,
};
use crate::rng::SplitMix64;

/// Planning method identifiers, spelled the way reports and CSV name them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Method {
    /// Greedy scan preferring the fewest brokers.
    #[serde(rename = "bromin")]
    BroMin,
    /// Greedy scan preferring the most partitions.
    #[serde(rename = "bromax")]
    BroMax,
    /// Randomized rule-of-thumb baseline.
    #[serde(rename = "mscnfl")]
    MsCnfl,
    /// Exhaustive search maximizing partitions.
    #[serde(rename = "brute-force-max")]
    BruteForceMax,
    /// Exhaustive search minimizing brokers.
    #[serde(rename = "brute-force-min-brokers")]
    BruteForceMinBrokers,
    /// Real-valued relaxation, floored.
    #[serde(rename = "lp-relax")]
    LpRelax,
}

impl Method {
    /// Stable lowercase name used in CSV, tables, and CLI flags.
    pub fn name(&self) -> &'static str {
        match self {
            Method::BroMin => "bromin",
            Method::BroMax => "bromax",
            Method::MsCnfl => "mscnfl",
            Method::BruteForceMax => "brute-force-max",
            Method::BruteForceMinBrokers => "brute-force-min-brokers",
            Method::LpRelax => "lp-relax",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = crate::model::InvalidInput;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bromin" => Ok(Method::BroMin),
            "bromax" => Ok(Method::BroMax),
            "mscnfl" => Ok(Method::MsCnfl),
            "brute-force-max" => Ok(Method::BruteForceMax),
            "brute-force-min-brokers" => Ok(Method::BruteForceMinBrokers),
            "lp-relax" => Ok(Method::LpRelax),
            _ => Err(crate::model::InvalidInput {
                field: "method",
                reason: "unknown method name",
            }),
        }
    }
}

/// Why a solver could not even search the instance.
///
/// Note that an exhausted search is *not* an error: it yields a
/// [`SolveOutcome`] whose `plan` is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SolveError {
    /// No broker count satisfies `replication_factor <= b <=
    /// available_brokers`; the search range itself is empty.
    #[error(
        "structurally infeasible: replication factor {replication_factor} \
         exceeds the {available_brokers} available broker(s)"
    )]
    StructuralInfeasibility {
        replication_factor: u64,
        available_brokers: u64,
    },
    /// The rule-of-thumb partition range `[1, floor(1000 *
    /// available_brokers / replication_factor)]` is empty, so there is
    /// nothing to sample.
    #[error(
        "degenerate sampling range: floor(1000 * {available_brokers} / \
         {replication_factor}) < 1"
    )]
    DegenerateSamplingRange {
        available_brokers: u64,
        replication_factor: u64,
    },
    /// Even with integrality dropped, the relaxation's feasible region is
    /// empty.
    #[error("infeasible even as a real-valued relaxation")]
    RealInfeasible,
}

/// What one solver run produced. `plan: None` means the search completed
/// and proved that no candidate satisfies every constraint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolveOutcome {
    pub method: Method,
    pub plan: Option<Plan>,
}

fn ensure_broker_range(req: &Requirements) -> Result<(), SolveError> {
    if req.replication_factor > req.available_brokers {
        Err(SolveError::StructuralInfeasibility {
            replication_factor: req.replication_factor,
            available_brokers: req.available_brokers,
        })
    } else {
        Ok(())
    }
}

/// Largest `p` in `[0, cap]` satisfying `pred`, by binary search.
///
/// Requires `pred` to be downward closed (true at some `p` implies true at
/// every smaller `p`) and true at 0, which holds for the latency and
/// unavailability predicates at fixed broker count. Searching the exact
/// predicate instead of evaluating a floating-point closed form keeps
/// boundary candidates (the ones greedy scans return) exactly right.
fn max_p_satisfying(cap: u64, pred: impl Fn(u64) -> bool) -> u64 {
    let (mut lo, mut hi) = (0u64, cap);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// The plan a greedy scan settles on at a fixed broker count: the largest
/// partition count within the OS-load cap that also passes the latency
/// and unavailability checks — or `None` when even that falls short of
/// the throughput floor.
///
/// This is the closed form of "walk `p` downward from the OS cap and stop
/// at the first pass": all three limiting predicates are downward closed
/// in `p`, so the first pass going down is the least of their three
/// boundaries.
fn best_plan_at(brokers: u64, req: &Requirements, meas: &MeasuredInputs) -> Option<Plan> {
    let cap = max_partitions_os(brokers, req, meas);
    let fits_latency = max_p_satisfying(cap, |p| {
        check_latency(&Plan { partitions: p, brokers }, req, meas)
    });
    let fits_unavailability = max_p_satisfying(cap, |p| {
        check_unavailability(&Plan { partitions: p, brokers }, req, meas)
    });
    let partitions = fits_latency.min(fits_unavailability);
    (partitions >= min_partitions(req, meas)).then_some(Plan { partitions, brokers })
}

/// Broker-minimizing planner.
///
/// Walks the broker count upward from the replication factor and returns
/// the first count at which any admissible partition count is feasible,
/// paired with the largest such partition count. The result is the
/// feasible plan with the fewest brokers (ties broken toward more
/// partitions); it errors only when the broker range itself is empty.
pub fn bromin(req: &Requirements, meas: &MeasuredInputs) -> Result<SolveOutcome, SolveError> {
    ensure_broker_range(req)?;
    let plan = (req.replication_factor..=req.available_brokers)
        .find_map(|b| best_plan_at(b, req, meas));
    Ok(SolveOutcome {
        method: Method::BroMin,
        plan,
    })
}

/// Partition-maximizing planner.
///
/// Walks the broker count downward from the full pool; at the first
/// (largest) broker count with any feasible partition count it returns
/// the largest one. Because every per-broker cap grows with the broker
/// count, the first hit maximizes partitions over the whole region.
pub fn bromax(req: &Requirements, meas: &MeasuredInputs) -> Result<SolveOutcome, SolveError> {
    ensure_broker_range(req)?;
    let plan = (req.replication_factor..=req.available_brokers)
        .rev()
        .find_map(|b| best_plan_at(b, req, meas));
    Ok(SolveOutcome {
        method: Method::BroMax,
        plan,
    })
}

/// Applies `per_broker` to every broker count in the admissible range,
/// in parallel when the `parallel` feature is on, preserving order.
#[cfg(feature = "parallel")]
fn map_broker_range<T: Send>(
    req: &Requirements,
    per_broker: impl Fn(u64) -> T + Sync + Send,
) -> Vec<T> {
    use rayon::prelude::*;
    (req.replication_factor..=req.available_brokers)
        .into_par_iter()
        .map(per_broker)
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn map_broker_range<T>(req: &Requirements, per_broker: impl Fn(u64) -> T) -> Vec<T> {
    (req.replication_factor..=req.available_brokers)
        .map(per_broker)
        .collect()
}

/// Best feasible plan at one broker count, found by checking the full
/// feasibility conjunction on every candidate partition count. Shares no
/// search logic with [`best_plan_at`] on purpose — this is the ground
/// truth the greedy planners are tested against.
fn enumerate_best_at(brokers: u64, req: &Requirements, meas: &MeasuredInputs) -> Option<Plan> {
    let cap = max_partitions_os(brokers, req, meas);
    (1..=cap)
        .map(|partitions| Plan { partitions, brokers })
        .filter(|plan| is_feasible(plan, req, meas))
        .max_by_key(|plan| plan.partitions)
}

/// Exhaustive reference solver: evaluates every candidate pair and keeps
/// the feasible plan with the most partitions, ties broken toward more
/// brokers. Semantics match [`bromax`]; the implementation deliberately
/// does not.
pub fn brute_force_max(
    req: &Requirements,
    meas: &MeasuredInputs,
) -> Result<SolveOutcome, SolveError> {
    ensure_broker_range(req)?;
    let plan = map_broker_range(req, |b| enumerate_best_at(b, req, meas))
        .into_iter()
        .flatten()
        .max_by_key(|plan| (plan.partitions, plan.brokers));
    Ok(SolveOutcome {
        method: Method::BruteForceMax,
        plan,
    })
}

/// Exhaustive reference solver: the feasible plan with the fewest
/// brokers, ties broken toward more partitions. Semantics match
/// [`bromin`]; the implementation deliberately does not.
pub fn brute_force_min_brokers(
    req: &Requirements,
    meas: &MeasuredInputs,
) -> Result<SolveOutcome, SolveError> {
    ensure_broker_range(req)?;
    // Per-broker results come back ordered by broker count; the first
    // hit is the minimum, and enumerate_best_at already maximized
    // partitions within it.
    let plan = map_broker_range(req, |b| enumerate_best_at(b, req, meas))
        .into_iter()
        .flatten()
        .next();
    Ok(SolveOutcome {
        method: Method::BruteForceMinBrokers,
        plan,
    })
}

/// Which rule-of-thumb partition cap the randomized baseline samples
/// under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConfluentCap {
    /// At most 100 partitions per available broker.
    #[serde(rename = "per-broker")]
    PerBroker,
    /// At most 100 partitions per available broker, counting every
    /// replica as a partition.
    #[serde(rename = "per-broker-replicas")]
    PerBrokerReplicas,
}

/// Randomized industry-practice baseline with the plain per-broker cap.
/// See [`ms_cnfl_with`].
pub fn ms_cnfl(req: &Requirements, seed: u64) -> Result<SolveOutcome, SolveError> {
    ms_cnfl_with(req, seed, ConfluentCap::PerBroker)
}

/// Randomized industry-practice baseline.
///
/// Stands in for an operator who follows the widely circulated sizing
/// rules instead of solving the constraints: draw a candidate under the
/// handles rule of thumb (at most `1000 * available_brokers /
/// replication_factor` partitions), draw another under the
/// partitions-per-broker rule (at most `100 * available_brokers`), keep
/// the smaller, and pick a broker count anywhere in `[1,
/// available_brokers]` — in that draw order, one [`SplitMix64`] stream
/// per call.
///
/// The draw ignores the workload entirely, so the returned plan may
/// violate any constraint, including `brokers >= replication_factor`;
/// measuring how often is the baseline's whole purpose. The only error is
/// a degenerate handles range (`floor(1000 * available_brokers /
/// replication_factor) < 1`).
pub fn ms_cnfl_with(
    req: &Requirements,
    seed: u64,
    cap: ConfluentCap,
) -> Result<SolveOutcome, SolveError> {
    let handles_cap =
        1000u128 * req.available_brokers as u128 / req.replication_factor as u128;
    if handles_cap < 1 {
        return Err(SolveError::DegenerateSamplingRange {
            available_brokers: req.available_brokers,
            replication_factor: req.replication_factor,
        });
    }
    let broker_cap = match cap {
        ConfluentCap::PerBroker => 100u128 * req.available_brokers as u128,
        ConfluentCap::PerBrokerReplicas => {
            100u128 * req.available_brokers as u128 * req.replication_factor as u128
        }
    };
    let mut rng = SplitMix64::new(seed);
    let by_handles = rng.uniform_inclusive(u64::try_from(handles_cap).unwrap_or(u64::MAX));
    let by_count = rng.uniform_inclusive(u64::try_from(broker_cap).unwrap_or(u64::MAX));
    let brokers = rng.uniform_inclusive(req.available_brokers);
    Ok(SolveOutcome {
        method: Method::MsCnfl,
        plan: Some(Plan {
            partitions: by_handles.min(by_count),
            brokers,
        }),
    })
}

/// Optimum of the real-valued relaxation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RealPlan {
    pub partitions: f64,
    pub brokers: f64,
}

/// Result of solving the relaxation and rounding it back to integers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LpRelaxation {
    /// The real optimum: every available broker in use, partitions at the
    /// tightest of the three per-broker ceilings.
    pub real: RealPlan,
    /// The real optimum with both coordinates floored.
    pub rounded: Plan,
    /// Whether the rounded plan still satisfies the integer constraints —
    /// flooring can and does land outside the feasible region.
    pub rounded_feasible: bool,
}

impl LpRelaxation {
    /// The rounded plan as a solver outcome (reported even when
    /// infeasible; check [`LpRelaxation::rounded_feasible`]).
    pub fn outcome(&self) -> SolveOutcome {
        SolveOutcome {
            method: Method::LpRelax,
            plan: Some(self.rounded),
        }
    }
}

/// Drops integrality and solves the relaxation in closed form.
///
/// With real variables, every per-broker cap is loosest at the full pool,
/// so the optimum sits at `brokers = available_brokers` and `partitions =
/// available_brokers * min(handles, latency, unavailability per-broker
/// ceilings)`. Errors with [`SolveError::RealInfeasible`] when that
/// optimum still misses the throughput floor (or the broker interval is
/// empty); otherwise floors both coordinates and re-checks the result
/// against the integer constraints.
pub fn lp_relax(req: &Requirements, meas: &MeasuredInputs) -> Result<LpRelaxation, SolveError> {
    if req.replication_factor > req.available_brokers {
        return Err(SolveError::RealInfeasible);
    }
    let pool = req.available_brokers as f64;
    let r = req.replication_factor as f64;
    let per_broker_ceiling = (meas.max_open_file_handles as f64 / r)
        .min(req.max_replication_latency / (r * meas.replication_latency_per_partition))
        .min(req.max_unavailability / meas.leader_election_time);
    let partitions = pool * per_broker_ceiling;
    let throughput_floor = (req.target_throughput / meas.producer_throughput_per_partition)
        .max(req.target_throughput / meas.consumer_throughput_per_partition)
        .max(req.consumers as f64);
    if partitions < throughput_floor {
        return Err(SolveError::RealInfeasible);
    }
    let rounded = Plan {
        partitions: (partitions.floor() as u64).max(1),
        brokers: req.available_brokers,
    };
    Ok(LpRelaxation {
        real: RealPlan {
            partitions,
            brokers: pool,
        },
        rounded,
        rounded_feasible: is_feasible(&rounded, req, meas),
    })
}
