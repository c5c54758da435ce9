//! Rate values tagged with the regime that produced them.

use serde::{Deserialize, Serialize};

/// Regime of a piecewise bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Expression without a regime split.
    Single,
    /// Zero state gain.
    NoState,
    /// Capped by the interference-free rate ½log(1+P).
    PointToPoint,
    WeakState,
    ModerateState,
    StrongState,
    WeakFading,
    MediumFading,
    /// Large fading spread, c²a² ≤ P+1.
    StrongFadingLow,
    /// Large fading spread, c²a² > P+1.
    StrongFadingHigh,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Single => "single",
            Branch::NoState => "no_state",
            Branch::PointToPoint => "point_to_point",
            Branch::WeakState => "weak_state",
            Branch::ModerateState => "moderate_state",
            Branch::StrongState => "strong_state",
            Branch::WeakFading => "weak_fading",
            Branch::MediumFading => "medium_fading",
            Branch::StrongFadingLow => "strong_fading_low",
            Branch::StrongFadingHigh => "strong_fading_high",
        }
    }
}

/// Whether a bound follows the statement as printed or the form that its
/// derivation actually supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaSource {
    Printed,
    Canonical,
}

/// Achievable scheme that attains an inner bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Common codeword precoded against the state plus time-shared private layers.
    Superposition,
    TreatAsNoise,
    /// Dirty-paper coding for the first receiver, decoded under mismatch by the rest.
    MismatchedPrecoding,
    TimeSharing,
    /// Superposition with the split α = a − 1.
    MediumFading,
    /// Superposition, binning on the common layer, optimized over α.
    SuperpositionBinning,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Superposition => "superposition",
            Scheme::TreatAsNoise => "treat_as_noise",
            Scheme::MismatchedPrecoding => "mismatched_precoding",
            Scheme::TimeSharing => "time_sharing",
            Scheme::MediumFading => "medium_fading",
            Scheme::SuperpositionBinning => "superposition_binning",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateBound {
    pub value: f64,
    pub branch: Branch,
    pub source: FormulaSource,
    /// The raw expression was negative and the value was clamped to 0.
    pub clamped: bool,
}

impl RateBound {
    pub fn new(raw: f64, branch: Branch, source: FormulaSource) -> Self {
        let clamped = raw < 0.0;
        RateBound {
            value: if clamped { 0.0 } else { raw },
            branch,
            source,
            clamped,
        }
    }

    pub fn printed(raw: f64, branch: Branch) -> Self {
        Self::new(raw, branch, FormulaSource::Printed)
    }

    pub fn canonical(raw: f64, branch: Branch) -> Self {
        Self::new(raw, branch, FormulaSource::Canonical)
    }
}

#[inline]
pub(crate) fn lg(x: f64) -> f64 {
    x.log2()
}

/// ½log(1+P), the interference-free rate.
#[inline]
pub fn point_to_point(p: f64) -> f64 {
    0.5 * (1.0 + p).log2()
}
