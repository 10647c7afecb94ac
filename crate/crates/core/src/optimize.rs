//! Closed-form throughput-maximizing designs from the three perspectives
//! (jammer, Alice, global) plus the continuous-jamming baseline.

use rand::Rng;

use crate::covertness::{alice_feasible_region, jammer_feasible_region, Infeasible};
use crate::types::{DesignCase, DesignSolution, Interval, ParamValue, SystemParams};

/// Relative tolerance for classifying the rate as exactly the critical
/// value `C_a`, where the mid-rate and high-rate solution sets meet.
const RATE_CASE_TOL: f64 = 1e-12;

fn point(name: &str, x: f64) -> (String, ParamValue) {
    (name.to_string(), ParamValue::Point(x))
}

fn range(name: &str, lo: f64, hi: f64) -> (String, ParamValue) {
    if (hi - lo).abs() <= 1e-15 * hi.abs().max(1.0) {
        point(name, lo)
    } else {
        (name.to_string(), ParamValue::Range(Interval::closed(lo, hi)))
    }
}

/// Jammer-side design: choose `(p_j, P_min, P_max)` minimizing the outage
/// probability for Alice's fixed `(P_a, R)`.
///
/// The solution set splits into four cases on the rate axis. Reported
/// ranges are the slice of the (generally coupled) solution set at the
/// canonical `p_j = 1 - eps`; [`sample_jammer_optimal`] walks the full
/// coupled set. The representative point `p_j = 1 - eps`, `P_min = P_a`,
/// `P_max = P_a / eps` is optimal in every case and uses the lowest
/// average jamming power, `(1 - eps^2) / (2 eps) * P_a`.
pub fn optimize_jammer(
    pa: f64,
    rate: f64,
    epsilon: f64,
    pm: f64,
    sigma_b2: f64,
) -> Result<DesignSolution, Infeasible> {
    let region = jammer_feasible_region(pa, rate, epsilon, pm, sigma_b2)?;
    let pjr = region.pj_range();
    let e = epsilon;
    let c_eps = (1.0 + e * pa / (e * sigma_b2 + pa)).log2();
    let c_a = (1.0 + pa / (sigma_b2 + pa)).log2();
    let p_r = if rate == 0.0 {
        f64::INFINITY
    } else {
        pa / (2.0f64.powf(rate) - 1.0) - sigma_b2
    };

    let critical = (rate - c_a).abs() <= RATE_CASE_TOL * c_a;
    let (case, omega_star) = if critical {
        (DesignCase::JammerCriticalRate, e * rate)
    } else if rate <= c_eps {
        (DesignCase::JammerLowRate, rate)
    } else if rate < c_a {
        (DesignCase::JammerMidRate, e * rate * p_r / pa)
    } else {
        (DesignCase::JammerHighRate, e * rate)
    };

    // Slice of the solution set at pj = 1 - eps. In the low/mid/critical
    // cases that slice pins (pmin, pmax) to the canonical point; in the
    // high-rate case a genuine box remains.
    let assignments = match case {
        DesignCase::JammerHighRate => {
            let pmin_hi = pm / (1.0 - e) - (1.0 - e) / (2.0 * e) * pa;
            vec![
                point("pj", 1.0 - e),
                range("pmin", pa, pmin_hi),
                range("pmax", (1.0 - e) / e * pa + pa, 2.0 * pm / (1.0 - e) - pa),
            ]
        }
        _ => vec![
            range("pj", pjr.lo, pjr.hi),
            point("pmin", pa),
            point("pmax", pa / e),
        ],
    };

    let representative = vec![
        ("pa".to_string(), pa),
        ("pj".to_string(), 1.0 - e),
        ("pmin".to_string(), pa),
        ("pmax".to_string(), pa / e),
        ("rate".to_string(), rate),
    ];
    Ok(DesignSolution { assignments, representative, omega_star, case })
}

/// Draw `n` points from the full coupled jammer-side optimal set, nested
/// bounds re-derived per draw. Every returned parameter set is feasible
/// and attains the case's maximum throughput.
pub fn sample_jammer_optimal<R: Rng>(
    pa: f64,
    rate: f64,
    epsilon: f64,
    pm: f64,
    sigma_b2: f64,
    n: usize,
    rng: &mut R,
) -> Result<Vec<SystemParams>, Infeasible> {
    let sol = optimize_jammer(pa, rate, epsilon, pm, sigma_b2)?;
    let region = jammer_feasible_region(pa, rate, epsilon, pm, sigma_b2)?;
    let pjr = region.pj_range();
    let e = epsilon;
    let p_r = if rate == 0.0 {
        f64::INFINITY
    } else {
        pa / (2.0f64.powf(rate) - 1.0) - sigma_b2
    };

    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (pj, pmin, pmax) = match sol.case {
            DesignCase::JammerLowRate => {
                let pj = rng.gen_range(pjr.lo..=pjr.hi);
                let bx = region.pmax_bounds(pj).expect("feasible pj slice");
                let hi = bx.hi.min(p_r);
                if hi < bx.lo {
                    continue;
                }
                let pmax = rng.gen_range(bx.lo..=hi);
                let bn = region.pmin_bounds(pj, pmax).expect("feasible pmax slice");
                (pj, rng.gen_range(bn.lo..=bn.hi), pmax)
            }
            DesignCase::JammerMidRate => {
                let pj = rng.gen_range(pjr.lo..=pjr.hi);
                (pj, (1.0 - pj) / e * pa, pa / e)
            }
            DesignCase::JammerCriticalRate => {
                let pj = rng.gen_range(pjr.lo..=pjr.hi);
                let bx = region.pmax_bounds(pj).expect("feasible pj slice");
                let hi = if pj + e - 1.0 > 0.0 {
                    bx.hi.min(pj / (pj + e - 1.0) * pa)
                } else {
                    bx.hi
                };
                let pmax = rng.gen_range(bx.lo..=hi);
                (pj, region.covertness_line(pj, pmax), pmax)
            }
            DesignCase::JammerHighRate => {
                let pj = 1.0 - e;
                let pmin = rng.gen_range(pa..=pm / (1.0 - e) - (1.0 - e) / (2.0 * e) * pa);
                let pmax =
                    rng.gen_range((1.0 - e) / e * pa + pmin..=2.0 * pm / (1.0 - e) - pmin);
                (pj, pmin, pmax)
            }
            _ => unreachable!("jammer optimizer only emits jammer cases"),
        };
        out.push(SystemParams {
            pa,
            pmin,
            pmax,
            pj,
            sigma_w2: 1.0,
            sigma_b2,
            epsilon,
            pm,
            rate,
        });
    }
    Ok(out)
}

/// Alice-side design: transmit at the covertness-limited maximum power
/// `P_au` and pick the better of the two candidate rates; ties go to the
/// jamming-free rate `C_f`.
pub fn optimize_alice(
    pj: f64,
    pmin: f64,
    pmax: f64,
    epsilon: f64,
    pm: f64,
    sigma_b2: f64,
) -> Result<DesignSolution, Infeasible> {
    let bounds = alice_feasible_region(pj, pmin, pmax, epsilon, pm, sigma_b2)?;
    let pa = bounds.pa_max;
    let c_n = (1.0 + pa / (sigma_b2 + pmax)).log2();
    let c_f = (1.0 + pa / sigma_b2).log2();
    let omega_f = (1.0 - pj) * c_f;
    let (rate, omega_star) = if omega_f >= c_n { (c_f, omega_f) } else { (c_n, c_n) };
    let representative = vec![
        ("pa".to_string(), pa),
        ("pj".to_string(), pj),
        ("pmin".to_string(), pmin),
        ("pmax".to_string(), pmax),
        ("rate".to_string(), rate),
    ];
    Ok(DesignSolution {
        assignments: vec![point("pa", pa), point("rate", rate)],
        representative,
        omega_star,
        case: DesignCase::Alice,
    })
}

/// The rate-comparison function whose unique positive root `rho*` decides
/// the globally optimal rate: positive iff the jamming-free rate wins at
/// `rho = pm / sigma_b^2`.
pub fn rate_gap(epsilon: f64, rho: f64) -> f64 {
    let e2 = 1.0 - epsilon * epsilon;
    epsilon * (1.0 + 2.0 * epsilon * rho / e2).ln()
        - (1.0 + 2.0 * epsilon * rho / (e2 + 2.0 * rho)).ln()
}

/// The power ratio `pm / sigma_b^2` above which the globally optimal rate
/// switches from `C_n` to `C_f`, found by bisection from the analytic
/// minimum of [`rate_gap`] at `rho_1`.
pub fn rho_star(epsilon: f64) -> f64 {
    let rho1 = 0.25 * (1.0 - epsilon * epsilon) * ((1.0 + 4.0 / epsilon).sqrt() - 1.0);
    let mut lo = rho1;
    while rate_gap(epsilon, lo) >= 0.0 {
        lo *= 0.5;
    }
    let mut hi = 2.0 * lo;
    while rate_gap(epsilon, hi) <= 0.0 {
        hi *= 2.0;
    }
    while hi - lo > 1e-10 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if rate_gap(epsilon, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Global design: the unique power allocation `P_a = P_min = 2 eps pm /
/// (1 - eps^2)`, `p_j = 1 - eps`, `P_max = 2 pm / (1 - eps^2)`, with the
/// rate decided by `pm / sigma_b^2` against `rho*`.
pub fn optimize_global(epsilon: f64, pm: f64, sigma_b2: f64) -> DesignSolution {
    let e2 = 1.0 - epsilon * epsilon;
    let pa = 2.0 * epsilon * pm / e2;
    let pmax = 2.0 * pm / e2;
    let c_n = (1.0 + pa / (sigma_b2 + pmax)).log2();
    let c_f = (1.0 + pa / sigma_b2).log2();
    let (rate, omega_star) = if pm / sigma_b2 >= rho_star(epsilon) {
        (c_f, epsilon * c_f)
    } else {
        (c_n, c_n)
    };
    let representative = vec![
        ("pa".to_string(), pa),
        ("pj".to_string(), 1.0 - epsilon),
        ("pmin".to_string(), pa),
        ("pmax".to_string(), pmax),
        ("rate".to_string(), rate),
    ];
    DesignSolution {
        assignments: vec![
            point("pa", pa),
            point("pj", 1.0 - epsilon),
            point("pmin", pa),
            point("pmax", pmax),
            point("rate", rate),
        ],
        representative,
        omega_star,
        case: DesignCase::Global,
    }
}

/// Always-on jamming baseline (`p_j = 1`): the best design spreads the
/// jamming power over `[0, 2 pm]`, Alice transmits at `2 eps pm`, and the
/// optimal rate is the zero-outage rate `C_n`.
pub fn continuous_baseline(epsilon: f64, pm: f64, sigma_b2: f64) -> DesignSolution {
    let pa = 2.0 * epsilon * pm;
    let rate = (1.0 + pa / (sigma_b2 + 2.0 * pm)).log2();
    let representative = vec![
        ("pa".to_string(), pa),
        ("pj".to_string(), 1.0),
        ("pmin".to_string(), 0.0),
        ("pmax".to_string(), 2.0 * pm),
        ("rate".to_string(), rate),
    ];
    DesignSolution {
        assignments: vec![
            point("pa", pa),
            point("pj", 1.0),
            point("pmin", 0.0),
            point("pmax", 2.0 * pm),
            point("rate", rate),
        ],
        representative,
        omega_star: rate,
        case: DesignCase::ContinuousJamming,
    }
}

/// Turn a design's representative point into a full parameter set,
/// filling in the analysis-side defaults for the noise floors.
pub fn representative_params(
    sol: &DesignSolution,
    epsilon: f64,
    pm: f64,
    sigma_w2: f64,
    sigma_b2: f64,
) -> SystemParams {
    let get = |name: &str| sol.representative_value(name).expect("representative field");
    SystemParams {
        pa: get("pa"),
        pmin: get("pmin"),
        pmax: get("pmax"),
        pj: get("pj"),
        sigma_w2,
        sigma_b2,
        epsilon,
        pm,
        rate: get("rate"),
    }
}
