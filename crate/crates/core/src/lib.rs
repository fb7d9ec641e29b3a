//! Capacity planning for a single Kafka topic: how many partitions to
//! create and how many brokers to spread them over.
//!
//! The planning problem takes two kinds of input: [`model::MeasuredInputs`],
//! benchmark figures for the cluster at hand (per-partition producer and
//! consumer throughput, the per-broker open-file budget, per-partition
//! replication latency, leader election time), and
//! [`model::Requirements`], what the application demands (target
//! throughput, consumer-group size, replication factor, latency and
//! availability budgets, broker pool). A [`model::Plan`] — a partition
//! count and a broker count — is *feasible* when it clears the throughput
//! floor and stays within the OS-load, replication-latency,
//! unavailability, and broker-pool limits.
//!
//! Over that feasible region the crate offers:
//!
//! - [`solvers::bromin`] / [`solvers::bromax`] — exact greedy planners
//!   minimizing the broker count and maximizing the partition count,
//!   respectively;
//! - [`solvers::brute_force_max`] / [`solvers::brute_force_min_brokers`]
//!   — exhaustive reference solvers the greedy planners are tested
//!   against;
//! - [`solvers::ms_cnfl`] — a randomized baseline standing in for
//!   rule-of-thumb sizing, which routinely violates the constraints and
//!   is aggregated over seeded trials to measure how often;
//! - [`solvers::lp_relax`] — the real-valued relaxation, floored, which
//!   demonstrates why rounding a relaxation is not a substitute for
//!   solving the integer problem;
//! - [`experiments::run_sweep`] — a harness that varies one parameter at
//!   a time and tabulates every method for CSV export
//!   ([`io::write_csv`]).
//!
//! Sweeps evaluate their points on a rayon pool when the default
//! `parallel` feature is enabled, and fall back to plain iteration
//! without it; either way the output is byte-identical, because all
//! randomness flows from explicit seeds and aggregation order is fixed.
//!
//! ```
//! use kpp_core::model::{MeasuredInputs, Requirements};
//! use kpp_core::solvers::bromin;
//!
//! let measured = MeasuredInputs::default();
//! let requirements = Requirements {
//!     consumers: 500,
//!     ..Requirements::default()
//! };
//! let outcome = bromin(&requirements, &measured).unwrap();
//! let plan = outcome.plan.expect("a feasible plan exists");
//! assert_eq!((plan.partitions, plan.brokers), (533, 8));
//! ```

#![forbid(unsafe_code)]

pub mod experiments;
pub mod io;
pub mod model;
pub mod rng;
pub mod solvers;

pub use experiments::{run_sweep, run_sweep_sequential, SweepAxis, SweepResult, SweepSpec};
pub use model::{evaluate_plan, is_feasible, MeasuredInputs, Plan, PlanMetrics, Requirements};
pub use solvers::{bromax, bromin, lp_relax, ms_cnfl, Method, SolveError, SolveOutcome};
