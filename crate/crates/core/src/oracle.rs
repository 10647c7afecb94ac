//! Brute-force reference implementations used to validate the closed
//! forms: dense threshold grids for the detection problem, refined grid
//! search over the feasible design space, and bisection for boundary
//! quantities. Slow by design; only tests should call these.

use rayon::prelude::*;

use crate::covertness::{self, jammer_feasible_region};
use crate::detection;
use crate::throughput;
use crate::types::SystemParams;

/// Minimum total detection error found by scanning detection thresholds on
/// a dense grid.
///
/// The decision window `[gamma - P_a, gamma)` is scanned by its left edge
/// `a = sigma_w^2 + k * (P_a / steps_per_pa)`, so that the atom boundary
/// (`a` exactly at the noise floor) is hit without rounding. Each window
/// is also evaluated nudged right by a few ulps to cover optima that sit
/// just past an open endpoint.
pub fn min_error_grid(params: &SystemParams, steps_per_pa: u32) -> f64 {
    let pa = params.pa;
    let step = pa / steps_per_pa as f64;
    let lo_k = -2 * steps_per_pa as i64;
    let hi_k = ((params.pmax / pa) * steps_per_pa as f64).ceil() as i64 + 1;
    (lo_k..=hi_k)
        .into_par_iter()
        .map(|k| {
            let a = params.sigma_w2 + k as f64 * step;
            let gamma = a + pa;
            let nudged = gamma + 4.0 * f64::EPSILON * gamma.abs();
            detection::total_error_at(params, gamma).min(detection::total_error_at(params, nudged))
        })
        .reduce(|| f64::INFINITY, f64::min)
}

/// Largest Alice power that still satisfies the covertness constraint for
/// fixed jammer parameters, found by bisection to absolute tolerance
/// `1e-12` on the bracket width.
pub fn max_covert_pa(pj: f64, pmin: f64, pmax: f64, epsilon: f64) -> f64 {
    let ok = |pa: f64| {
        let p = SystemParams {
            pa,
            pmin,
            pmax,
            pj,
            sigma_w2: 1.0,
            sigma_b2: 1.0,
            epsilon,
            pm: f64::INFINITY,
            rate: 0.0,
        };
        covertness::covertness_ok(&p)
    };
    let mut lo = 0.0;
    let mut hi = pmax.max(1.0);
    while ok(hi) {
        hi *= 2.0;
    }
    while hi - lo > 1e-12 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Refined grid search for the maximum of `f` over the unit cube.
///
/// Each round lays a uniform `pts`-per-dimension grid over the current
/// box, then shrinks the box to a third of its width around the best
/// point. Ties break toward the lexicographically smallest grid index so
/// the result is deterministic under parallel evaluation.
pub fn refine_max_unit<F>(dims: usize, pts: usize, rounds: usize, f: F) -> (f64, Vec<f64>)
where
    F: Fn(&[f64]) -> Option<f64> + Sync,
{
    let mut lo = vec![0.0; dims];
    let mut hi = vec![1.0; dims];
    let mut best_val = f64::NEG_INFINITY;
    let mut best_pt = vec![0.0; dims];
    for _ in 0..rounds {
        let total = pts.pow(dims as u32);
        let (val, idx) = (0..total)
            .into_par_iter()
            .map(|flat| {
                let mut x = vec![0.0; dims];
                let mut rem = flat;
                for d in (0..dims).rev() {
                    let i = rem % pts;
                    rem /= pts;
                    x[d] = lo[d] + (hi[d] - lo[d]) * i as f64 / (pts - 1) as f64;
                }
                (f(&x).unwrap_or(f64::NEG_INFINITY), flat)
            })
            .reduce(
                || (f64::NEG_INFINITY, usize::MAX),
                |a, b| {
                    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                        b
                    } else {
                        a
                    }
                },
            );
        let mut x = vec![0.0; dims];
        let mut rem = idx;
        for d in (0..dims).rev() {
            let i = rem % pts;
            rem /= pts;
            x[d] = lo[d] + (hi[d] - lo[d]) * i as f64 / (pts - 1) as f64;
        }
        if val > best_val {
            best_val = val;
            best_pt = x.clone();
        }
        for d in 0..dims {
            let w = (hi[d] - lo[d]) / 3.0;
            lo[d] = (x[d] - 0.5 * w).max(0.0);
            hi[d] = (x[d] + 0.5 * w).min(1.0);
        }
    }
    (best_val, best_pt)
}

fn lerp(lo: f64, hi: f64, t: f64) -> f64 {
    lo + (hi - lo) * t
}

/// Grid-search the jammer's design space `(p_j, P_max, P_min)` for the
/// throughput-maximizing point at fixed `(P_a, R)`. The unit cube is
/// mapped through the nested closed-form bounds of the feasible region,
/// so every probe is feasible.
pub fn max_omega_jammer(
    pa: f64,
    rate: f64,
    epsilon: f64,
    pm: f64,
    sigma_b2: f64,
    pts: usize,
    rounds: usize,
) -> Option<f64> {
    let region = jammer_feasible_region(pa, rate, epsilon, pm, sigma_b2).ok()?;
    let pjr = region.pj_range();
    let eval = |x: &[f64]| -> Option<f64> {
        let pj = lerp(pjr.lo, pjr.hi, x[0]);
        let bx = region.pmax_bounds(pj)?;
        let pmax = lerp(bx.lo, bx.hi, x[1]);
        let bn = region.pmin_bounds(pj, pmax)?;
        let pmin = lerp(bn.lo, bn.hi, x[2]);
        if pmax <= pmin {
            return None;
        }
        let p = SystemParams {
            pa,
            pmin,
            pmax,
            pj,
            sigma_w2: 1.0,
            sigma_b2,
            epsilon,
            pm,
            rate,
        };
        Some(throughput::covert_throughput(&p))
    };
    let (val, _) = refine_max_unit(3, pts, rounds, eval);
    val.is_finite().then_some(val)
}

/// Grid-search the full design space `(P_a, p_j, P_max, P_min)` with the
/// rate chosen optimally per point, for the global throughput maximum.
pub fn max_omega_global(
    epsilon: f64,
    pm: f64,
    sigma_b2: f64,
    pts: usize,
    rounds: usize,
) -> Option<f64> {
    let pa_limit = 2.0 * epsilon / (1.0 - epsilon * epsilon) * pm;
    let eval = |x: &[f64]| -> Option<f64> {
        let pa = lerp(1e-9 * pa_limit, pa_limit, x[0]);
        let region = jammer_feasible_region(pa, 0.0, epsilon, pm, sigma_b2).ok()?;
        let pjr = region.pj_range();
        let pj = lerp(pjr.lo, pjr.hi, x[1]);
        let bx = region.pmax_bounds(pj)?;
        let pmax = lerp(bx.lo, bx.hi, x[2]);
        let bn = region.pmin_bounds(pj, pmax)?;
        let pmin = lerp(bn.lo, bn.hi, x[3]);
        if pmax <= pmin {
            return None;
        }
        let p = SystemParams {
            pa,
            pmin,
            pmax,
            pj,
            sigma_w2: 1.0,
            sigma_b2,
            epsilon,
            pm,
            rate: 0.0,
        };
        Some(throughput::best_rate(&p).1)
    };
    let (val, _) = refine_max_unit(4, pts, rounds, eval);
    val.is_finite().then_some(val)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refine_finds_smooth_maximum() {
        let (val, pt) = refine_max_unit(2, 30, 4, |x| {
            Some(-(x[0] - 0.37).powi(2) - (x[1] - 0.81).powi(2))
        });
        assert!(val > -1e-4);
        assert!((pt[0] - 0.37).abs() < 1e-2 && (pt[1] - 0.81).abs() < 1e-2);
    }

    #[test]
    fn bisection_recovers_known_bound() {
        // pj = 1: covertness needs pmax - pmin >= pa/eps and pmin >= pa,
        // so the cap is min(eps (pmax - pmin), ...) branch two: pmin/pmax > 1 - pj = 0
        let pa = max_covert_pa(1.0, 1.0, 6.0, 0.2);
        assert!((pa - 1.0).abs() < 1e-9, "pa = {pa}");
    }
}
