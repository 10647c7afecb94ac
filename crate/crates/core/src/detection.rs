//! Willie's radiometer detection: the mixed test-statistic laws under both
//! hypotheses, the total-error objective as a function of the threshold,
//! and the closed-form optimal threshold set with its minimum total
//! detection error probability.
//!
//! The minimum error is `1 - eta*`, where `eta(gamma)` is the probability
//! mass the silent-hypothesis law places on the half-open window
//! `[gamma - P_a, gamma)`. The closed forms dispatch on five regimes of
//! `P_a` against the jamming power support, each split by a threshold on
//! `p_j`; ties on the `p_j` threshold return the union of both optimal
//! threshold intervals.

use crate::types::{DetectionCase, DetectionResult, Interval, MixedDistribution, SystemParams};

/// The two hypotheses of Willie's test: Alice silent or transmitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    H0,
    H1,
}

/// The test-statistic law under one hypothesis.
///
/// The alternative-hypothesis law is the null law translated right by
/// `P_a`; both share the atom mass `1 - p_j` and segment mass `p_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypothesisLaw {
    pub hypothesis: Hypothesis,
    pub law: MixedDistribution,
}

/// The distribution of the warden's average received power under the given
/// hypothesis: an atom at the noise floor (jammer silent) plus a uniform
/// segment over the jamming band, shifted by `P_a` under H1.
pub fn law_under(params: &SystemParams, hypothesis: Hypothesis) -> HypothesisLaw {
    let shift = match hypothesis {
        Hypothesis::H0 => 0.0,
        Hypothesis::H1 => params.pa,
    };
    let law = MixedDistribution {
        atom_location: params.sigma_w2 + shift,
        atom_mass: params.qj(),
        segment_lo: params.sigma_w2 + params.pmin + shift,
        segment_hi: params.sigma_w2 + params.pmax + shift,
        segment_mass: params.pj,
    };
    HypothesisLaw { hypothesis, law }
}

/// Null-hypothesis mass of the half-open window `[gamma - P_a, gamma)`.
///
/// The atom is counted when it sits at exactly `gamma - P_a` and excluded
/// at exactly `gamma` (the left-limit convention). A small relative
/// tolerance absorbs the rounding of `gamma - P_a` when `gamma` itself was
/// produced by adding `P_a` to a support point.
pub fn eta(params: &SystemParams, gamma: f64) -> f64 {
    let law = law_under(params, Hypothesis::H0).law;
    let atom_tol = 1e-9 * (params.sigma_w2 + params.pa);
    law.mass_on_half_open(gamma - params.pa, gamma, atom_tol)
}

/// Total detection error probability `P_FA + P_MD` at threshold `gamma`,
/// equal to `1 - eta(gamma)`.
pub fn total_error_at(params: &SystemParams, gamma: f64) -> f64 {
    1.0 - eta(params, gamma)
}

/// Closed-form minimum total detection error probability and the full set
/// of optimal thresholds.
///
/// Regime boundaries on `P_a` are resolved in table row order; a `p_j`
/// exactly on a condition threshold yields the union of both branch
/// threshold intervals (the two error expressions coincide there).
pub fn min_detection_error(params: &SystemParams) -> DetectionResult {
    let s = params.sigma_w2;
    let pa = params.pa;
    let pmin = params.pmin;
    let pmax = params.pmax;
    let pl = params.pl();
    let pj = params.pj;
    let qj = params.qj();

    // Threshold intervals reused across rows; built lazily because each
    // is only well-ordered in the rows that use it.
    let atom_window = || Interval::new(s, s + pa, true, false);
    let inside_band = || Interval::closed(s + pmin + pa, s + pmax);
    let covers_band = || Interval::closed(s + pmax, s + pmin + pa);
    let band_edge = || Interval::point(s + pa);

    if pa >= pmax {
        return if pj == 1.0 {
            DetectionResult {
                xi_star: 0.0,
                gamma_star: vec![Interval::closed(s + pmax, s + pmin + pa)],
                case: DetectionCase::AliceOverpowersContinuousJammer,
            }
        } else {
            DetectionResult {
                xi_star: 0.0,
                gamma_star: vec![Interval::closed(s + pmax, s + pa)],
                case: DetectionCase::AliceOverpowersJammer,
            }
        };
    }

    // (condition threshold on p_j, low-branch ξ*, low γ*, low case,
    //  high-branch ξ*, high γ*, high case)
    let (threshold, xi_low, g_low, case_low, xi_high, g_high, case_high) =
        if pa <= pmin.min(pl) {
            (
                pl / (pl + pa),
                pj,
                atom_window(),
                DetectionCase::SmallAliceAtomWindow,
                1.0 - pj * pa / pl,
                inside_band(),
                DetectionCase::SmallAliceBandWindow,
            )
        } else if pmin < pa && pa <= pl {
            (
                pl / pmax,
                pj * (pmax - pa) / pl,
                band_edge(),
                DetectionCase::MidAliceMixedWindow,
                1.0 - pj * pa / pl,
                inside_band(),
                DetectionCase::MidAliceBandWindow,
            )
        } else if pl < pa && pa <= pmin {
            (
                0.5,
                pj,
                atom_window(),
                DetectionCase::NarrowBandAtomWindow,
                qj,
                covers_band(),
                DetectionCase::NarrowBandFullBandWindow,
            )
        } else {
            (
                pl / (pl + pmax - pa),
                pj * (pmax - pa) / pl,
                band_edge(),
                DetectionCase::LargeAliceMixedWindow,
                qj,
                covers_band(),
                DetectionCase::LargeAliceFullBandWindow,
            )
        };

    if pj < threshold {
        DetectionResult { xi_star: xi_low, gamma_star: vec![g_low], case: case_low }
    } else if pj > threshold {
        DetectionResult { xi_star: xi_high, gamma_star: vec![g_high], case: case_high }
    } else {
        // Exact tie: both expressions agree; report the union of thresholds.
        let mut gammas = vec![g_low, g_high];
        gammas.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        DetectionResult { xi_star: xi_low, gamma_star: gammas, case: case_low }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn params(pa: f64, pmin: f64, pmax: f64, pj: f64, sigma_w2: f64) -> SystemParams {
        SystemParams {
            pa,
            pmin,
            pmax,
            pj,
            sigma_w2,
            sigma_b2: 1.0,
            epsilon: 0.2,
            pm: 10.0,
            rate: 0.5,
        }
        .validated()
        .unwrap()
    }

    #[test]
    fn continuous_jammer_has_no_atom() {
        let p = params(1.0, 2.0, 5.0, 1.0, 1.0);
        let h0 = law_under(&p, Hypothesis::H0).law;
        assert_eq!(h0.atom_mass, 0.0);
        assert_eq!(h0.segment_mass, 1.0);
    }

    #[test]
    fn null_law_structure() {
        let p = params(1.0, 2.0, 5.0, 0.8, 1.0);
        let h0 = law_under(&p, Hypothesis::H0).law;
        assert_eq!(h0.atom_location, 1.0);
        assert!((h0.atom_mass - 0.2).abs() < 1e-15);
        assert_eq!((h0.segment_lo, h0.segment_hi), (3.0, 6.0));
        assert_eq!(h0.segment_mass, 0.8);
    }

    #[test]
    fn alternative_law_is_shift_of_null() {
        let p = params(1.0, 2.0, 5.0, 0.8, 1.0);
        let h0 = law_under(&p, Hypothesis::H0).law;
        let h1 = law_under(&p, Hypothesis::H1).law;
        assert_eq!(h1, h0.shifted(p.pa));
        assert_eq!(h1.atom_location, 2.0);
        assert_eq!((h1.segment_lo, h1.segment_hi), (4.0, 7.0));
    }

    #[test]
    fn eta_below_support_is_zero() {
        let p = params(1.0, 2.0, 5.0, 0.8, 1.0);
        assert_eq!(eta(&p, 0.9), 0.0);
        assert_eq!(eta(&p, 1.0), 0.0); // window [0, 1) excludes the atom at 1
    }

    #[test]
    fn eta_captures_atom_only() {
        let p = params(1.0, 2.0, 5.0, 0.8, 1.0);
        assert!((eta(&p, 1.5) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn eta_segment_overlap() {
        let p = params(1.0, 2.0, 5.0, 0.8, 1.0);
        // window [4, 5) overlaps (3, 6) over one unit
        assert!((eta(&p, 5.0) - 0.8 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn min_error_alice_overpowers() {
        let p = params(6.0, 2.0, 5.0, 0.8, 1.0);
        let r = min_detection_error(&p);
        assert_eq!(r.xi_star, 0.0);
        assert_eq!(r.gamma_star, vec![Interval::closed(6.0, 7.0)]);
        assert_eq!(r.case, DetectionCase::AliceOverpowersJammer);
    }

    #[test]
    fn min_error_small_alice_high_pj() {
        let p = params(1.0, 2.0, 5.0, 0.8, 1.0);
        let r = min_detection_error(&p);
        assert!((r.xi_star - (1.0 - 0.8 / 3.0)).abs() < 1e-12);
        assert_eq!(r.case, DetectionCase::SmallAliceBandWindow);
        assert_eq!(r.gamma_star, vec![Interval::closed(4.0, 6.0)]);
    }

    #[test]
    fn min_error_mid_alice_low_pj() {
        let p = params(2.0, 1.0, 4.0, 0.6, 1.0);
        let r = min_detection_error(&p);
        assert!((r.xi_star - 0.4).abs() < 1e-12);
        assert_eq!(r.gamma_star, vec![Interval::point(3.0)]);
        assert_eq!(r.case, DetectionCase::MidAliceMixedWindow);
    }

    #[test]
    fn total_error_limits() {
        let p = params(1.0, 2.0, 5.0, 0.8, 1.0);
        assert_eq!(total_error_at(&p, -1e12), 1.0);
        assert_eq!(total_error_at(&p, 1e12), 1.0);
        let r = min_detection_error(&p);
        let g = r.gamma_representative();
        assert!((total_error_at(&p, g) - r.xi_star).abs() < 1e-12);
    }

    #[test]
    fn no_jamming_means_perfect_detection() {
        for (pa, pmin, pmax) in [(1.0, 2.0, 5.0), (2.0, 1.0, 4.0), (3.0, 4.0, 5.0), (4.5, 2.0, 5.0)] {
            let p = params(pa, pmin, pmax, 0.0, 1.0);
            assert_eq!(min_detection_error(&p).xi_star, 0.0, "pa={pa}");
        }
    }

    #[test]
    fn condition_tie_returns_union() {
        // row `P_a <= min(P_min, P_L)` with p_j exactly P_L/(P_L + P_a)
        let p = params(1.0, 2.0, 5.0, 3.0 / 4.0, 1.0);
        let r = min_detection_error(&p);
        assert_eq!(r.gamma_star.len(), 2);
        assert!((r.xi_star - 0.75).abs() < 1e-12);
        for iv in &r.gamma_star {
            for g in iv.sample(5) {
                assert!((total_error_at(&p, g) - r.xi_star).abs() < 1e-12, "gamma={g}");
            }
        }
    }

    #[test]
    fn every_optimal_threshold_attains_the_minimum() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..500 {
            let p = random_params(&mut rng);
            let r = min_detection_error(&p);
            for iv in &r.gamma_star {
                for g in iv.sample(10) {
                    let xi = total_error_at(&p, g);
                    assert!(
                        (xi - r.xi_star).abs() < 1e-12,
                        "{p:?} case {:?}: xi({g}) = {xi}, xi* = {}",
                        r.case,
                        r.xi_star
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_grid_oracle() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..300 {
            let p = random_params(&mut rng);
            let r = min_detection_error(&p);
            let grid = oracle::min_error_grid(&p, 1 << 14);
            assert!(
                (grid - r.xi_star).abs() < 1e-6,
                "{p:?} case {:?}: grid {grid} vs closed form {}",
                r.case,
                r.xi_star
            );
        }
    }

    fn random_params(rng: &mut StdRng) -> SystemParams {
        let sigma_w2 = rng.gen_range(0.5..2.0);
        let pmin = rng.gen_range(0.0..3.0);
        let pmax = pmin + rng.gen_range(0.2..3.0);
        let pa = rng.gen_range(0.05..1.3) * pmax;
        let pj = rng.gen_range(0.0..=1.0);
        params(pa, pmin, pmax, pj, sigma_w2)
    }
}
