//! Covert throughput: outage-capacity thresholds, the jamming outage
//! probability, and the effective throughput `omega = R (1 - lambda)`.

use crate::types::{SystemParams, ThroughputProfile};

/// The capacity landmarks that partition the rate axis, together with the
/// two reference rates used by the jammer-side optimizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Capacities {
    /// Capacity under the strongest jamming power `P_max`.
    pub c_n: f64,
    /// Capacity under the weakest nonzero jamming power `P_min`.
    pub c_j: f64,
    /// Jamming-free capacity.
    pub c_f: f64,
    /// Capacity at the corner design where the covertness constraints pin
    /// the jamming band to `[P_a, P_a/eps]`.
    pub c_eps: f64,
    /// Capacity when the jamming power equals Alice's own power.
    pub c_a: f64,
}

pub fn capacities(params: &SystemParams) -> Capacities {
    let pa = params.pa;
    let s = params.sigma_b2;
    let e = params.epsilon;
    Capacities {
        c_n: (1.0 + pa / (s + params.pmax)).log2(),
        c_j: (1.0 + pa / (s + params.pmin)).log2(),
        c_f: (1.0 + pa / s).log2(),
        c_eps: (1.0 + e * pa / (e * s + pa)).log2(),
        c_a: (1.0 + pa / (s + pa)).log2(),
    }
}

/// The jamming power above which the channel to Bob is in outage at rate
/// `R`: `P_a / (2^R - 1) - sigma_b^2`. Infinite at `R = 0` (no jamming
/// power can cause an outage).
pub fn outage_power(params: &SystemParams) -> f64 {
    if params.rate == 0.0 {
        f64::INFINITY
    } else {
        params.pa / ((2.0f64).powf(params.rate) - 1.0) - params.sigma_b2
    }
}

/// Outage probability of the rate-`R` transmission under probabilistic
/// uniform jamming: piecewise in `R` across the capacity landmarks.
pub fn outage(params: &SystemParams) -> f64 {
    let c = capacities(params);
    let r = params.rate;
    if r <= c.c_n {
        0.0
    } else if r <= c.c_j {
        params.pj * (params.pmax - outage_power(params)) / params.pl()
    } else if r <= c.c_f {
        params.pj
    } else {
        1.0
    }
}

/// Effective covert throughput `omega = R (1 - lambda)`.
pub fn covert_throughput(params: &SystemParams) -> f64 {
    params.rate * (1.0 - outage(params))
}

/// The throughput-maximizing rate for fixed powers: the maximum over the
/// rate axis is always attained at `C_n` (zero outage) or `C_f` (outage
/// `p_j`); ties go to the lower, outage-free rate.
pub fn best_rate(params: &SystemParams) -> (f64, f64) {
    let c = capacities(params);
    let omega_n = c.c_n;
    let omega_f = params.qj() * c.c_f;
    if omega_f > omega_n {
        (c.c_f, omega_f)
    } else {
        (c.c_n, omega_n)
    }
}

/// Everything the rate analysis produces for one parameter point.
pub fn profile(params: &SystemParams) -> ThroughputProfile {
    let c = capacities(params);
    ThroughputProfile {
        c_n: c.c_n,
        c_j: c.c_j,
        c_f: c.c_f,
        c_eps: c.c_eps,
        c_a: c.c_a,
        p_r: outage_power(params),
        lambda: outage(params),
        omega: covert_throughput(params),
    }
}
