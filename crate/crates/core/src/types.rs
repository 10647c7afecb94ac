//! Domain types shared by every other module: system parameters and their
//! validation, intervals with endpoint-openness flags, the warden's mixed
//! discrete/continuous test-statistic law, and the result records returned
//! by the detection and optimization layers.
//!
//! All powers are linear (watts), never dB. The CLI converts dB inputs at
//! its boundary; nothing below it ever does dB arithmetic.

use serde::{Deserialize, Serialize};

/// Errors raised by parameter validation.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {detail}")]
    InvalidParameter { name: &'static str, detail: String },
}

fn invalid(name: &'static str, detail: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        detail: detail.into(),
    }
}

/// The full system parameter tuple, in linear power units.
///
/// * `pa` — Alice's transmit power.
/// * `pmin`, `pmax` — support of the jammer's uniform power distribution.
/// * `pj` — jammer transmission probability.
/// * `sigma_w2`, `sigma_b2` — noise variances at Willie and Bob.
/// * `epsilon` — covertness level, strictly inside (0, 1/2).
/// * `pm` — the jammer's maximum average transmit power.
/// * `rate` — Alice's fixed transmission rate in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub pa: f64,
    pub pmin: f64,
    pub pmax: f64,
    pub pj: f64,
    pub sigma_w2: f64,
    pub sigma_b2: f64,
    pub epsilon: f64,
    pub pm: f64,
    pub rate: f64,
}

impl SystemParams {
    /// Width of the jamming power support, `P_max - P_min`.
    pub fn pl(&self) -> f64 {
        self.pmax - self.pmin
    }

    /// Probability that the jammer stays silent, `1 - p_j`.
    pub fn qj(&self) -> f64 {
        1.0 - self.pj
    }

    /// Checks every type invariant and returns the parameters unchanged on
    /// success. The error names the violated invariant.
    pub fn validated(self) -> Result<Self, Error> {
        let finite = |name: &'static str, v: f64| -> Result<(), Error> {
            if v.is_finite() {
                Ok(())
            } else {
                Err(invalid(name, format!("must be finite, got {v}")))
            }
        };
        finite("pa", self.pa)?;
        finite("pmin", self.pmin)?;
        finite("pmax", self.pmax)?;
        finite("pj", self.pj)?;
        finite("sigma_w2", self.sigma_w2)?;
        finite("sigma_b2", self.sigma_b2)?;
        finite("epsilon", self.epsilon)?;
        finite("pm", self.pm)?;
        finite("rate", self.rate)?;

        if self.pa <= 0.0 {
            return Err(invalid("pa", format!("must be > 0, got {}", self.pa)));
        }
        if self.pmin < 0.0 {
            return Err(invalid("pmin", format!("must be >= 0, got {}", self.pmin)));
        }
        if self.pmax <= self.pmin {
            return Err(invalid(
                "pmax",
                format!("must exceed pmin ({} <= {})", self.pmax, self.pmin),
            ));
        }
        if !(0.0..=1.0).contains(&self.pj) {
            return Err(invalid("pj", format!("must lie in [0, 1], got {}", self.pj)));
        }
        if self.sigma_w2 <= 0.0 {
            return Err(invalid("sigma_w2", format!("must be > 0, got {}", self.sigma_w2)));
        }
        if self.sigma_b2 <= 0.0 {
            return Err(invalid("sigma_b2", format!("must be > 0, got {}", self.sigma_b2)));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 0.5) {
            return Err(invalid(
                "epsilon",
                format!("must lie strictly inside (0, 1/2), got {}", self.epsilon),
            ));
        }
        if self.pm <= 0.0 {
            return Err(invalid("pm", format!("must be > 0, got {}", self.pm)));
        }
        if self.rate < 0.0 {
            return Err(invalid("rate", format!("must be >= 0, got {}", self.rate)));
        }
        Ok(self)
    }
}

/// A real interval with endpoint-openness flags. A degenerate interval
/// (`lo == hi`, both closed) is a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_open: bool, hi_open: bool) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi, lo_open, hi_open }
    }

    /// Closed interval `[lo, hi]`.
    pub fn closed(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, false, false)
    }

    /// Degenerate point interval `{x}`.
    pub fn point(x: f64) -> Self {
        Self::new(x, x, false, false)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi && !self.lo_open && !self.hi_open
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below
    }

    /// A canonical member of the interval: the point itself when degenerate,
    /// otherwise the midpoint (always interior, so openness never matters).
    pub fn representative(&self) -> f64 {
        if self.is_point() {
            self.lo
        } else {
            0.5 * (self.lo + self.hi)
        }
    }

    /// `n` members of the interval, endpoints included only when closed.
    /// Open endpoints are replaced by points a relative hair inside.
    pub fn sample(&self, n: usize) -> Vec<f64> {
        if self.is_point() || n <= 1 {
            return vec![self.representative()];
        }
        let shrink = self.width() * 1e-6;
        let lo = if self.lo_open { self.lo + shrink } else { self.lo };
        let hi = if self.hi_open { self.hi - shrink } else { self.hi };
        (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect()
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo);
        }
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{}{}, {}{}", l, self.lo, self.hi, r)
    }
}

/// The law of the warden's test statistic under one hypothesis: a single
/// discrete atom plus a uniform density segment. The impulse is never
/// evaluated numerically; the law is stored structurally.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedDistribution {
    pub atom_location: f64,
    pub atom_mass: f64,
    pub segment_lo: f64,
    pub segment_hi: f64,
    pub segment_mass: f64,
}

impl MixedDistribution {
    pub fn new(
        atom_location: f64,
        atom_mass: f64,
        segment_lo: f64,
        segment_hi: f64,
        segment_mass: f64,
    ) -> Result<Self, Error> {
        if segment_hi <= segment_lo {
            return Err(invalid(
                "segment",
                format!("support must be non-degenerate ({segment_lo} >= {segment_hi})"),
            ));
        }
        let total = atom_mass + segment_mass;
        if (total - 1.0).abs() > 1e-12 {
            return Err(invalid("mass", format!("atom + segment mass = {total}, expected 1")));
        }
        Ok(MixedDistribution {
            atom_location,
            atom_mass,
            segment_lo,
            segment_hi,
            segment_mass,
        })
    }

    /// Uniform density on the segment.
    pub fn density(&self) -> f64 {
        self.segment_mass / (self.segment_hi - self.segment_lo)
    }

    /// The same law translated right by `dx`.
    pub fn shifted(&self, dx: f64) -> Self {
        MixedDistribution {
            atom_location: self.atom_location + dx,
            segment_lo: self.segment_lo + dx,
            segment_hi: self.segment_hi + dx,
            ..*self
        }
    }

    /// Probability mass on the half-open window `[lo, hi)`.
    ///
    /// The atom is counted when it sits at exactly `lo` and excluded at
    /// exactly `hi`, mirroring the left-limit construction of the error
    /// probability integral. `atom_tol` absorbs float rounding in window
    /// endpoints that were produced by `gamma - pa` round trips; pass 0.0
    /// for exact comparisons.
    pub fn mass_on_half_open(&self, lo: f64, hi: f64, atom_tol: f64) -> f64 {
        let mut mass = 0.0;
        if lo <= self.atom_location + atom_tol && hi > self.atom_location + atom_tol {
            mass += self.atom_mass;
        }
        let overlap = (hi.min(self.segment_hi) - lo.max(self.segment_lo)).max(0.0);
        mass + self.density() * overlap
    }
}

/// The ten branches of the optimal-threshold table, one per
/// (power-regime, transmission-probability) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetectionCase {
    /// `P_a >= P_max`, `p_j < 1`: the window swallows the whole law.
    AliceOverpowersJammer,
    /// `P_a >= P_max`, `p_j = 1`: no atom, band fully covered.
    AliceOverpowersContinuousJammer,
    /// `P_a <= min(P_min, P_L)`, low `p_j`: window sits on the noise atom.
    SmallAliceAtomWindow,
    /// `P_a <= min(P_min, P_L)`, high `p_j`: window inside the jamming band.
    SmallAliceBandWindow,
    /// `P_min < P_a <= P_L`, low `p_j`: window catches atom plus band edge.
    MidAliceMixedWindow,
    /// `P_min < P_a <= P_L`, high `p_j`: window inside the jamming band.
    MidAliceBandWindow,
    /// `P_L < P_a <= P_min`, low `p_j`: window on the noise atom.
    NarrowBandAtomWindow,
    /// `P_L < P_a <= P_min`, high `p_j`: window covers the whole band.
    NarrowBandFullBandWindow,
    /// `max(P_min, P_L) < P_a < P_max`, low `p_j`: atom plus band edge.
    LargeAliceMixedWindow,
    /// `max(P_min, P_L) < P_a < P_max`, high `p_j`: whole band covered.
    LargeAliceFullBandWindow,
}

impl DetectionCase {
    pub fn label(&self) -> &'static str {
        match self {
            DetectionCase::AliceOverpowersJammer => "alice-overpowers-jammer",
            DetectionCase::AliceOverpowersContinuousJammer => "alice-overpowers-continuous-jammer",
            DetectionCase::SmallAliceAtomWindow => "small-alice-atom-window",
            DetectionCase::SmallAliceBandWindow => "small-alice-band-window",
            DetectionCase::MidAliceMixedWindow => "mid-alice-mixed-window",
            DetectionCase::MidAliceBandWindow => "mid-alice-band-window",
            DetectionCase::NarrowBandAtomWindow => "narrow-band-atom-window",
            DetectionCase::NarrowBandFullBandWindow => "narrow-band-full-band-window",
            DetectionCase::LargeAliceMixedWindow => "large-alice-mixed-window",
            DetectionCase::LargeAliceFullBandWindow => "large-alice-full-band-window",
        }
    }
}

impl std::fmt::Display for DetectionCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Minimum total detection error probability together with the full set of
/// optimal thresholds.
///
/// `gamma_star` usually holds a single interval. At condition ties where
/// the two branch expressions coincide it holds the union of both branch
/// intervals (two disjoint intervals, sorted by lower endpoint).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionResult {
    pub xi_star: f64,
    pub gamma_star: Vec<Interval>,
    pub case: DetectionCase,
}

impl DetectionResult {
    /// A canonical optimal threshold.
    pub fn gamma_representative(&self) -> f64 {
        self.gamma_star[0].representative()
    }
}

/// Capacities, effective power, outage, and throughput at one parameter
/// point, all in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThroughputProfile {
    /// Capacity under maximum jamming power.
    pub c_n: f64,
    /// Capacity under minimum jamming power.
    pub c_j: f64,
    /// Jamming-free capacity.
    pub c_f: f64,
    /// Capacity at the covertness-limited power ratio.
    pub c_eps: f64,
    /// Capacity when the interference power equals Alice's own power.
    pub c_a: f64,
    /// Effective interference headroom `P_a/(2^R - 1) - sigma_b2`;
    /// `+inf` at rate 0, may be negative at high rates.
    pub p_r: f64,
    /// Transmission outage probability.
    pub lambda: f64,
    /// Covert throughput `R (1 - lambda)`.
    pub omega: f64,
}

/// A single optimizer output parameter: either pinned to a point or free
/// over an interval of equally optimal values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ParamValue {
    Point(f64),
    Range(Interval),
}

impl ParamValue {
    /// Lower end of the value set; this is the canonical representative
    /// for free parameters.
    pub fn lower(&self) -> f64 {
        match self {
            ParamValue::Point(x) => *x,
            ParamValue::Range(iv) => iv.lo,
        }
    }
}

/// Which optimizer branch produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DesignCase {
    /// Jammer view, rate below the covertness-limited capacity: outage 0.
    JammerLowRate,
    /// Jammer view, rate between the covertness-limited and self-interference capacities.
    JammerMidRate,
    /// Jammer view, rate exactly at the self-interference capacity.
    JammerCriticalRate,
    /// Jammer view, rate above the self-interference capacity.
    JammerHighRate,
    /// Alice view: maximum feasible power, endpoint rate.
    Alice,
    /// Joint design over all five parameters.
    Global,
    /// Always-on jamming baseline.
    ContinuousJamming,
}

impl DesignCase {
    pub fn label(&self) -> &'static str {
        match self {
            DesignCase::JammerLowRate => "jammer-low-rate",
            DesignCase::JammerMidRate => "jammer-mid-rate",
            DesignCase::JammerCriticalRate => "jammer-critical-rate",
            DesignCase::JammerHighRate => "jammer-high-rate",
            DesignCase::Alice => "alice",
            DesignCase::Global => "global",
            DesignCase::ContinuousJamming => "continuous-jamming",
        }
    }
}

impl std::fmt::Display for DesignCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// An optimizer output: per-parameter values or value sets, the canonical
/// representative point, the achieved covert throughput, and the branch
/// that fired.
///
/// Some solution sets couple parameters (a free `pj` determines `pmin`,
/// or `pmin` rides a line in `pmax`); `assignments` then reports each
/// parameter's overall extent while the coupled sampling lives with the
/// optimizer that produced the solution. `representative` is always a
/// concrete feasible point with every free parameter at its lower bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignSolution {
    pub assignments: Vec<(String, ParamValue)>,
    pub representative: Vec<(String, f64)>,
    pub omega_star: f64,
    pub case: DesignCase,
}

impl DesignSolution {
    pub fn representative_value(&self, name: &str) -> Option<f64> {
        self.representative
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }
}
