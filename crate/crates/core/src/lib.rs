//! Covert communication over AWGN channels aided by a probabilistic
//! friendly jammer.
//!
//! Alice hides a low-power transmission from a power-averaging warden by
//! riding under artificial noise that a jammer emits with probability
//! `p_j`, uniformly distributed in power over `[P_min, P_max]`. The crate
//! provides:
//!
//! - [`detection`]: the warden's optimal radiometer threshold and minimum
//!   total detection error in closed form;
//! - [`covertness`]: the covertness and average-power constraint set and
//!   its feasible-region geometry;
//! - [`throughput`]: outage probability and effective covert throughput
//!   of the Alice-to-Bob link;
//! - [`optimize`]: closed-form throughput-maximizing designs from the
//!   jammer's, Alice's, and the global perspective, plus the
//!   continuous-jamming baseline;
//! - [`simulate`]: Monte Carlo estimators that validate the closed forms
//!   at finite sample sizes;
//! - [`oracle`]: brute-force references (dense grids, bisection) used by
//!   the test suite;
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod covertness;
pub mod detection;
pub mod optimize;
pub mod oracle;
pub mod simulate;
pub mod throughput;
pub mod types;

pub use covertness::{
    alice_feasible_region, average_power_ok, covertness_ok, jammer_feasible_region, AliceFeasible,
    FeasibleRegion, Infeasible,
};
pub use detection::{eta, min_detection_error, total_error_at};
pub use optimize::{
    continuous_baseline, optimize_alice, optimize_global, optimize_jammer, rho_star,
};
pub use simulate::{simulate_detection, simulate_outage, SimConfig};
pub use throughput::{capacities, covert_throughput, outage, profile};
pub use types::{
    DesignCase, DesignSolution, DetectionCase, DetectionResult, Error, Interval, SystemParams,
    ThroughputProfile,
};
