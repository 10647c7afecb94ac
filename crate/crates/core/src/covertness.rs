//! Covertness-constraint checking and feasible-region computation for the
//! three optimization views.
//!
//! The covertness requirement (minimum detection error at least `1 - eps`)
//! reduces to three closed-form inequalities on `(p_j, P_min, P_max, P_a)`.
//! Combined with the jammer's average-power budget they carve out, for
//! each `p_j`, a polygon in the `(P_max, P_min)` plane bounded by three
//! lines: the covertness lower line `l1`, the support-width line `l2`, and
//! the power-budget line `l3`.

use serde::{Deserialize, Serialize};

use crate::types::{Interval, SystemParams};

/// A constraint system with no solution. Carries the condition that failed
/// so sweep drivers can tabulate infeasible cells; this is a result value,
/// not an error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Infeasible {
    /// Alice's power exceeds what the jamming budget can cover.
    PowerBudget { pa: f64, limit: f64 },
    /// The rate exceeds the jamming-free capacity; throughput is zero.
    RateAboveCf { rate: f64, c_f: f64 },
    /// Jamming probability below the covertness floor `1 - eps`.
    PjBelowCovertness { pj: f64, floor: f64 },
    /// At the covertness floor exactly, the minimum jamming power must be
    /// strictly positive.
    PminMustBePositive,
    /// Minimum jamming power already exhausts the average-power budget.
    PminBudget { pmin: f64, limit: f64 },
    /// Maximum jamming power breaks the average-power budget.
    PmaxBudget { pmax: f64, limit: f64 },
    /// Degenerate jamming power support.
    EmptySupport { pmin: f64, pmax: f64 },
}

impl std::fmt::Display for Infeasible {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Infeasible::PowerBudget { pa, limit } => {
                write!(f, "power infeasible: pa = {pa} exceeds 2*eps/(1-eps^2)*pm = {limit}")
            }
            Infeasible::RateAboveCf { rate, c_f } => {
                write!(f, "rate infeasible: rate = {rate} exceeds jamming-free capacity {c_f}")
            }
            Infeasible::PjBelowCovertness { pj, floor } => {
                write!(f, "pj = {pj} below the covertness floor 1-eps = {floor}")
            }
            Infeasible::PminMustBePositive => {
                write!(f, "pmin must be strictly positive when pj equals 1-eps")
            }
            Infeasible::PminBudget { pmin, limit } => {
                write!(f, "pmin = {pmin} must stay below pm/pj = {limit}")
            }
            Infeasible::PmaxBudget { pmax, limit } => {
                write!(f, "pmax = {pmax} exceeds the power-budget bound {limit}")
            }
            Infeasible::EmptySupport { pmin, pmax } => {
                write!(f, "empty jamming power support: pmin = {pmin}, pmax = {pmax}")
            }
        }
    }
}

/// True iff the closed-form covertness constraint holds: `p_j >= 1 - eps`,
/// the support is wide enough, and the point lies above the covertness
/// line `l1`.
pub fn covertness_ok(params: &SystemParams) -> bool {
    let e = params.epsilon;
    let pj = params.pj;
    pj >= 1.0 - e
        && params.pl() >= pj / e * params.pa
        && (pj / (1.0 - e) - 1.0) * params.pmax + params.pmin >= pj / (1.0 - e) * params.pa
}

/// True iff the jammer's average transmit power `p_j (P_min + P_max) / 2`
/// stays within the budget.
pub fn average_power_ok(params: &SystemParams) -> bool {
    0.5 * params.pj * (params.pmin + params.pmax) <= params.pm
}

/// A labeled corner of the per-`p_j` feasible polygon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub label: &'static str,
    pub pmax: f64,
    pub pmin: f64,
}

/// The jammer-side feasible set for fixed `(P_a, R)`: a range of `p_j`
/// and, per `p_j`, closed-form bounds on `P_max` and then `P_min`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibleRegion {
    pa: f64,
    epsilon: f64,
    pm: f64,
    pj_range: Interval,
}

impl FeasibleRegion {
    pub fn pj_range(&self) -> Interval {
        self.pj_range
    }

    /// Highest feasible jamming probability.
    pub fn pj_upper(&self) -> f64 {
        self.pj_range.hi
    }

    /// Feasible `P_max` range at the given `p_j`, or `None` when the slice
    /// is empty.
    pub fn pmax_bounds(&self, pj: f64) -> Option<Interval> {
        let e = self.epsilon;
        let lo = self.pa / e;
        let budget_corner =
            (2.0 * (1.0 - e) * self.pm - pj * pj * self.pa) / (2.0 * (1.0 - e) * pj - pj * pj);
        let hi = budget_corner.min(2.0 * self.pm / pj);
        (lo <= hi).then(|| Interval::closed(lo, hi))
    }

    /// Feasible `P_min` range at the given `(p_j, P_max)`, or `None` when
    /// the slice is empty.
    pub fn pmin_bounds(&self, pj: f64, pmax: f64) -> Option<Interval> {
        let e = self.epsilon;
        let lo = self.covertness_line(pj, pmax).max(0.0);
        let hi = (pmax - pj / e * self.pa).min(2.0 * self.pm / pj - pmax);
        (lo <= hi).then(|| Interval::closed(lo, hi))
    }

    /// The covertness line `l1` solved for `P_min` at the given `P_max`.
    pub fn covertness_line(&self, pj: f64, pmax: f64) -> f64 {
        let e = self.epsilon;
        (1.0 - e - pj) / (1.0 - e) * pmax + pj / (1.0 - e) * self.pa
    }

    /// The labeled corner points of the constraint polygon at the given
    /// `p_j`, in `(P_max, P_min)` coordinates. The covertness-line x-axis
    /// intercept only exists above the covertness floor.
    pub fn vertices(&self, pj: f64) -> Vec<Vertex> {
        let e = self.epsilon;
        let pa = self.pa;
        let pm = self.pm;
        let denom = 2.0 * (1.0 - e) * pj - pj * pj;
        let mut v = vec![
            Vertex { label: "P0", pmax: pa, pmin: pa },
            Vertex { label: "P1", pmax: pa / e, pmin: (1.0 - pj) / e * pa },
            Vertex {
                label: "P2",
                pmax: pm / pj + pj / (2.0 * e) * pa,
                pmin: pm / pj - pj / (2.0 * e) * pa,
            },
            Vertex {
                label: "P3",
                pmax: (2.0 * (1.0 - e) * pm - pj * pj * pa) / denom,
                pmin: (2.0 * (1.0 - e - pj) * pm + pj * pj * pa) / denom,
            },
            Vertex { label: "P4", pmax: pa / e, pmin: 2.0 * pm / pj - pa / e },
            Vertex { label: "P6", pmax: 2.0 * pm / pj, pmin: 0.0 },
        ];
        if pj + e - 1.0 > 0.0 {
            v.push(Vertex { label: "P5", pmax: pj / (pj + e - 1.0) * pa, pmin: 0.0 });
        }
        v
    }
}

/// Jammer-side feasibility for fixed `(P_a, R)`.
///
/// Feasible iff `P_a` fits the power budget `2 eps/(1 - eps^2) pm` and the
/// rate stays below the jamming-free capacity; the returned region then
/// spans `p_j` from the covertness floor up to the budget-limited maximum.
pub fn jammer_feasible_region(
    pa: f64,
    rate: f64,
    epsilon: f64,
    pm: f64,
    sigma_b2: f64,
) -> Result<FeasibleRegion, Infeasible> {
    let pa_limit = 2.0 * epsilon / (1.0 - epsilon * epsilon) * pm;
    if pa > pa_limit {
        return Err(Infeasible::PowerBudget { pa, limit: pa_limit });
    }
    let c_f = (1.0 + pa / sigma_b2).log2();
    if rate > c_f {
        return Err(Infeasible::RateAboveCf { rate, c_f });
    }
    let pj_upper = if pa <= 2.0 * epsilon * pm {
        1.0
    } else {
        // the feasibility check above guarantees this stays at or above
        // the covertness floor; clamp away the last-ulp rounding
        (1.0 - (1.0 - 2.0 * epsilon * pm / pa).sqrt()).max(1.0 - epsilon)
    };
    Ok(FeasibleRegion {
        pa,
        epsilon,
        pm,
        pj_range: Interval::closed(1.0 - epsilon, pj_upper),
    })
}

/// Alice-side feasible bounds: her maximum transmit power and the rate
/// ceiling (the jamming-free capacity at that power).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AliceFeasible {
    pub pa_max: f64,
    pub rate_max: f64,
}

/// Alice-side feasibility for fixed jammer parameters.
///
/// `p_j` must clear the covertness floor (strictly, unless `P_min > 0`),
/// and the jamming parameters themselves must fit the average-power
/// budget. The power cap switches branch on `P_min/P_max` against
/// `1 - p_j`; both branches agree at the switch.
pub fn alice_feasible_region(
    pj: f64,
    pmin: f64,
    pmax: f64,
    epsilon: f64,
    pm: f64,
    sigma_b2: f64,
) -> Result<AliceFeasible, Infeasible> {
    let floor = 1.0 - epsilon;
    if pj < floor {
        return Err(Infeasible::PjBelowCovertness { pj, floor });
    }
    if pj == floor && pmin <= 0.0 {
        return Err(Infeasible::PminMustBePositive);
    }
    if pmax <= pmin {
        return Err(Infeasible::EmptySupport { pmin, pmax });
    }
    if pmin >= pm / pj {
        return Err(Infeasible::PminBudget { pmin, limit: pm / pj });
    }
    let pmax_limit = 2.0 * pm / pj - pmin;
    if pmax > pmax_limit {
        return Err(Infeasible::PmaxBudget { pmax, limit: pmax_limit });
    }

    let pa_max = if pmin / pmax <= 1.0 - pj {
        (1.0 - floor / pj) * pmax + floor / pj * pmin
    } else {
        epsilon / pj * (pmax - pmin)
    };
    let rate_max = (1.0 + pa_max / sigma_b2).log2();
    Ok(AliceFeasible { pa_max, rate_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detection;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn params(pa: f64, pmin: f64, pmax: f64, pj: f64, epsilon: f64, pm: f64) -> SystemParams {
        SystemParams {
            pa,
            pmin,
            pmax,
            pj,
            sigma_w2: 1.0,
            sigma_b2: 1.0,
            epsilon,
            pm,
            rate: 0.1,
        }
    }

    #[test]
    fn covertness_boundary_case_passes() {
        let p = params(1.0, 1.0, 5.0, 0.8, 0.2, 100.0);
        assert!(covertness_ok(&p));
        // cross-check against the detection closed form: exactly at 1 - eps
        let xi = detection::min_detection_error(&p).xi_star;
        assert!((xi - 0.8).abs() < 1e-12);
    }

    #[test]
    fn covertness_fails_on_low_pj() {
        let p = params(1.0, 1.0, 5.0, 0.7, 0.2, 100.0);
        assert!(!covertness_ok(&p));
    }

    #[test]
    fn covertness_fails_below_the_line() {
        let p = params(1.0, 0.0, 5.0, 0.8, 0.2, 100.0);
        assert!(!covertness_ok(&p));
        assert!(detection::min_detection_error(&p).xi_star < 0.8);
    }

    #[test]
    fn average_power_boundary() {
        // binary-exact boundary: 0.5 * 0.5 * (1 + 3) = 1
        assert!(average_power_ok(&params(1.0, 1.0, 3.0, 0.5, 0.2, 1.0)));
        assert!(average_power_ok(&params(0.4, 0.0, 2.0, 1.0, 0.2, 1.0)));
        assert!(!average_power_ok(&params(1.0, 1.0, 5.0, 0.8, 0.2, 2.3)));
    }

    #[test]
    fn jammer_region_boundary_power_collapses_pj_range() {
        let pa = 2.0 * 0.2 / (1.0 - 0.04); // exactly the budget limit for pm = 1
        let region = jammer_feasible_region(pa, 0.01, 0.2, 1.0, 1.0).unwrap();
        let r = region.pj_range();
        assert!((r.lo - 0.8).abs() < 1e-12);
        assert!((r.hi - 0.8).abs() < 1e-9, "pj upper = {}", r.hi);
    }

    #[test]
    fn jammer_region_small_pa_allows_continuous_jamming() {
        let region = jammer_feasible_region(0.3, 0.01, 0.2, 1.0, 1.0).unwrap();
        assert_eq!(region.pj_upper(), 1.0);
    }

    #[test]
    fn jammer_region_power_infeasible() {
        let err = jammer_feasible_region(0.5, 0.01, 0.2, 1.0, 1.0).unwrap_err();
        assert!(matches!(err, Infeasible::PowerBudget { .. }));
    }

    #[test]
    fn jammer_region_rate_infeasible() {
        let err = jammer_feasible_region(0.3, 2.0, 0.2, 1.0, 1.0).unwrap_err();
        assert!(matches!(err, Infeasible::RateAboveCf { .. }));
    }

    #[test]
    fn alice_bound_branch_boundary() {
        // pmin/pmax = 0.2 equals 1 - pj: both branches give P_au = 1
        let a = alice_feasible_region(0.8, 1.0, 5.0, 0.2, 10.0, 1.0).unwrap();
        assert!((a.pa_max - 1.0).abs() < 1e-12);
    }

    #[test]
    fn alice_bound_first_branch() {
        let a = alice_feasible_region(0.9, 0.0, 4.0, 0.2, 2.0, 1.0).unwrap();
        assert!((a.pa_max - (1.0 - 0.8 / 0.9) * 4.0).abs() < 1e-12);
    }

    #[test]
    fn alice_floor_pj_needs_positive_pmin() {
        let err = alice_feasible_region(0.8, 0.0, 4.0, 0.2, 2.0, 1.0).unwrap_err();
        assert_eq!(err, Infeasible::PminMustBePositive);
    }

    #[test]
    fn alice_bound_matches_bisection_oracle() {
        let mut rng = StdRng::seed_from_u64(3);
        let mut checked = 0;
        while checked < 300 {
            let epsilon = rng.gen_range(0.05..0.45);
            let pj = rng.gen_range(1.0 - epsilon..1.0);
            let pmin = rng.gen_range(0.0..2.0);
            let pmax = pmin + rng.gen_range(0.5..4.0);
            let pm = 0.5 * pj * (pmin + pmax) * rng.gen_range(1.0..2.0);
            let Ok(a) = alice_feasible_region(pj, pmin, pmax, epsilon, pm, 1.0) else {
                continue;
            };
            let oracle = crate::oracle::max_covert_pa(pj, pmin, pmax, epsilon);
            assert!(
                (a.pa_max - oracle).abs() < 1e-9,
                "closed form {} vs bisection {oracle}",
                a.pa_max
            );
            checked += 1;
        }
    }

    #[test]
    fn covertness_matches_detection_threshold() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..10_000 {
            let epsilon = rng.gen_range(0.01..0.49);
            let pmin = rng.gen_range(0.0..5.0);
            let pmax = pmin + rng.gen_range(0.01..5.0);
            let pa = rng.gen_range(0.001..10.0);
            let pj = rng.gen_range(0.0..=1.0);
            let p = params(pa, pmin, pmax, pj, epsilon, 1.0);
            let closed = covertness_ok(&p);
            let via_detection = detection::min_detection_error(&p).xi_star >= 1.0 - epsilon;
            assert_eq!(closed, via_detection, "{p:?}");
        }
    }

    #[test]
    fn region_samples_are_feasible_and_faces_are_tight() {
        let mut rng = StdRng::seed_from_u64(9);
        let mut inside = 0;
        while inside < 2000 {
            let epsilon = rng.gen_range(0.05..0.45);
            let pm = rng.gen_range(0.5..3.0);
            let pa = rng.gen_range(0.05..1.0) * 2.0 * epsilon / (1.0 - epsilon * epsilon) * pm;
            let Ok(region) = jammer_feasible_region(pa, 0.0, epsilon, pm, 1.0) else {
                continue;
            };
            let pjr = region.pj_range();
            let pj = rng.gen_range(pjr.lo..=pjr.hi);
            let Some(bx) = region.pmax_bounds(pj) else { continue };
            let pmax = rng.gen_range(bx.lo..=bx.hi);
            let Some(bn) = region.pmin_bounds(pj, pmax) else { continue };
            let pmin = rng.gen_range(bn.lo..=bn.hi);

            let p = params(pa, pmin, pmax, pj, epsilon, pm);
            assert!(covertness_ok(&p) && average_power_ok(&p), "interior point failed: {p:?}");
            inside += 1;

            let delta = 1e-6;
            let feasible = |pmin: f64, pmax: f64| {
                let q = params(pa, pmin, pmax, pj, epsilon, pm);
                pmin >= 0.0 && pmax > pmin && covertness_ok(&q) && average_power_ok(&q)
            };
            // pmin faces
            assert!(!feasible(bn.hi + delta, pmax), "above pmin ceiling");
            if bn.lo > delta {
                assert!(!feasible(bn.lo - delta, pmax), "below covertness line");
            }
            // pmax faces; re-derive the pmin window at the shifted pmax
            let below = bx.lo - delta;
            let pmin_at = region.covertness_line(pj, below).max(0.0);
            assert!(!feasible(pmin_at, below), "below pmax floor");
            let above = bx.hi + delta;
            let pmin_at = region.covertness_line(pj, above).max(0.0);
            assert!(!feasible(pmin_at, above), "above pmax ceiling");
        }
    }

    #[test]
    fn vertices_sit_on_their_defining_lines() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..500 {
            let epsilon = rng.gen_range(0.05..0.45);
            let pm = rng.gen_range(0.5..3.0);
            let pa = rng.gen_range(0.1..0.95) * 2.0 * epsilon / (1.0 - epsilon * epsilon) * pm;
            let region = jammer_feasible_region(pa, 0.0, epsilon, pm, 1.0).unwrap();
            let pjr = region.pj_range();
            let pj = rng.gen_range(pjr.lo..=pjr.hi);

            let on_l1 = |v: &Vertex| (v.pmin - region.covertness_line(pj, v.pmax)).abs() < 1e-9;
            let on_l2 = |v: &Vertex| (v.pmax - v.pmin - pj / epsilon * pa).abs() < 1e-9;
            let on_l3 = |v: &Vertex| (v.pmin + v.pmax - 2.0 * pm / pj).abs() < 1e-9;

            for v in region.vertices(pj) {
                match v.label {
                    "P0" => {
                        assert!((v.pmin - v.pmax).abs() < 1e-9 && on_l1(&v));
                    }
                    "P1" => assert!(on_l1(&v) && on_l2(&v), "{v:?}"),
                    "P2" => assert!(on_l2(&v) && on_l3(&v), "{v:?}"),
                    "P3" => assert!(on_l1(&v) && on_l3(&v), "{v:?}"),
                    "P4" => assert!(on_l3(&v) && (v.pmax - pa / epsilon).abs() < 1e-9, "{v:?}"),
                    "P5" => assert!(on_l1(&v) && v.pmin == 0.0, "{v:?}"),
                    "P6" => assert!(on_l3(&v) && v.pmin == 0.0, "{v:?}"),
                    other => panic!("unexpected vertex label {other}"),
                }
            }
        }
    }
}
