//! Bounds for a single state seen through per-receiver fading gains
//! (`Σ_S = a aᵀ`). Two-receiver functions take the scalar `a` of the gain
//! vector `[1, a]`.

use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, require_nonneg, Error, Result};
use crate::rate::{lg, point_to_point, Branch, RateBound, Scheme};

/// Fading coefficients, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct FadingVector(Vec<f64>);

impl FadingVector {
    pub fn new(mut a: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(invalid("a", f64::NAN, "fading vector is empty"));
        }
        if let Some(&bad) = a.iter().find(|v| !v.is_finite()) {
            return Err(invalid("a", bad, "fading coefficients must be finite"));
        }
        a.sort_by(f64::total_cmp);
        Ok(FadingVector(a))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<f64>> for FadingVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        FadingVector::new(v)
    }
}

impl From<FadingVector> for Vec<f64> {
    fn from(f: FadingVector) -> Vec<f64> {
        f.0
    }
}

fn check(p: f64, c2: f64, a: f64) -> Result<()> {
    require_nonneg("P", p)?;
    require_nonneg("c2", c2)?;
    if !a.is_finite() {
        return Err(invalid("a", a, "must be finite"));
    }
    Ok(())
}

fn check_large_fading(a: f64) -> Result<()> {
    if a.abs() < 1.0 {
        return Err(invalid("a", a, "requires |a| >= 1"));
    }
    Ok(())
}

/// Effective state power after the monotonicity reduction: `min{c², (1+P)/a²}` for `|a| ≥ 1`.
fn reduced_c2(p: f64, c2: f64, a: f64) -> f64 {
    if a.abs() >= 1.0 {
        c2.min((1.0 + p) / (a * a))
    } else {
        c2
    }
}

/// Two-receiver converse before branch simplification.
pub fn wsfd_outer_raw_2(p: f64, c2: f64, a: f64) -> Result<RateBound> {
    check(p, c2, a)?;
    Ok(outer_raw_unchecked(p, c2, a))
}

fn outer_raw_unchecked(p: f64, c2: f64, a: f64) -> RateBound {
    let ch = reduced_c2(p, c2, a);
    let d = a - 1.0;
    RateBound::canonical(
        0.25 * lg(p + ch + 1.0) + 0.25 * lg(p + ch * a * a + 1.0) - 0.25 * lg(ch * d * d + 1.0) + 0.5,
        Branch::Single,
    )
}

/// The raw converse intersected with the interference-free bound ½log(1+P).
pub fn wsfd_outer_canonical_2(p: f64, c2: f64, a: f64) -> Result<RateBound> {
    check(p, c2, a)?;
    Ok(outer_canonical_unchecked(p, c2, a))
}

fn outer_canonical_unchecked(p: f64, c2: f64, a: f64) -> RateBound {
    let raw = outer_raw_unchecked(p, c2, a);
    let cap = point_to_point(p);
    if raw.value >= cap {
        RateBound::canonical(cap, Branch::PointToPoint)
    } else {
        raw
    }
}

/// Four-branch statement, evaluated in its printed priority order.
pub fn wsfd_outer_2(p: f64, c2: f64, a: f64) -> Result<RateBound> {
    check(p, c2, a)?;
    check_large_fading(a)?;
    let d = a - 1.0;
    let edge = 1.0 + 1.0 / p.sqrt().min(c2.sqrt());
    Ok(if a >= 1.0 && a < edge {
        RateBound::printed(0.5 * lg(p + 1.0), Branch::WeakFading)
    } else if a >= 1.0 && a <= 2.0 {
        RateBound::printed(
            0.25 * lg(p + 1.0) + 0.25 * lg(p.min(c2) * d * d + 1.0),
            Branch::MediumFading,
        )
    } else if c2 * a * a <= p + 1.0 {
        let inner = p + 2.0 * c2 * d * d;
        RateBound::printed(
            0.5 * lg(inner * inner) - 0.25 * lg(c2 * d * d + 1.0),
            Branch::StrongFadingLow,
        )
    } else {
        RateBound::printed(0.25 * lg(p + 1.0) + 0.5, Branch::StrongFadingHigh)
    })
}

/// Superposition with binning on the common layer, for split `α ∈ [0, 1)`.
pub fn wsfd_inner_rcr_2(p: f64, c2: f64, a: f64, alpha: f64) -> Result<RateBound> {
    check(p, c2, a)?;
    if !(0.0..1.0).contains(&alpha) {
        return Err(invalid("alpha", alpha, "must lie in [0, 1)"));
    }
    Ok(RateBound::canonical(rcr_raw(p, c2, a, alpha), Branch::Single))
}

#[inline]
fn rcr_raw(p: f64, c2: f64, a: f64, alpha: f64) -> f64 {
    let d = 1.0 - a;
    let ab = 1.0 - alpha;
    let ap = alpha * p;
    0.5 * lg((ap + 1.0) / (ap * c2 * d * d / (p + c2 + 1.0) + 1.0 + ab * p) + 1.0)
        + 0.25 * lg(ab * p)
        - 1.0
}

/// Dirty-paper coding matched to the first receiver; rate seen by the second.
pub fn wsfd_inner_wdp_2(p: f64, c2: f64, a: f64) -> Result<RateBound> {
    check(p, c2, a)?;
    Ok(RateBound::canonical(wdp_raw(p, c2, a), Branch::Single))
}

#[inline]
fn wdp_raw(p: f64, c2: f64, a: f64) -> f64 {
    let d = 1.0 - a;
    0.5 * lg(p + 1.0) - 0.5 * lg(p * c2 * d * d / (p + c2 + 1.0) + 1.0)
}

/// Superposition at `α = a - 1`, valid for `1 < a ≤ 2` and `P > 3`.
pub fn wsfd_inner_medium_2(p: f64, a: f64) -> Result<RateBound> {
    require_nonneg("P", p)?;
    if !(a > 1.0 && a <= 2.0) {
        return Err(invalid("a", a, "requires 1 < a <= 2"));
    }
    if p <= 3.0 {
        return Err(invalid("P", p, "requires P > 3"));
    }
    Ok(RateBound::canonical(medium_raw(p, a), Branch::MediumFading))
}

fn medium_raw(p: f64, a: f64) -> f64 {
    let s = a - 1.0;
    let den = p * (-s * s * s + s * s + s) + 1.0;
    0.25 * lg(p) + 0.25 * lg(p * (s * p + 1.0) / (den * den))
}

/// 512-point split grid on `[0, 1)`, log-spaced towards both ends.
pub fn rcr_alpha_grid() -> &'static [f64] {
    static GRID: LazyLock<Vec<f64>> = LazyLock::new(|| {
        let n = 256;
        let (lo, hi) = (-9.0_f64, 0.5_f64.log10());
        let u: Vec<f64> = (0..n)
            .map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / (n - 1) as f64))
            .collect();
        let mut g = vec![0.0];
        g.extend(&u);
        g.extend(u[..n - 1].iter().rev().map(|t| 1.0 - t));
        g
    });
    &GRID
}

/// Best scheme of the two-receiver portfolio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PortfolioRate {
    pub bound: RateBound,
    pub scheme: Scheme,
    /// Split used by the winning scheme, when it has one.
    pub alpha: Option<f64>,
}

/// Maximum over treat-as-noise, mismatched dirty-paper coding, time sharing,
/// the medium-fading split and the binning scheme on [`rcr_alpha_grid`].
pub fn wsfd_inner_2(p: f64, c2: f64, a: f64) -> Result<PortfolioRate> {
    check(p, c2, a)?;
    Ok(inner_portfolio_unchecked(p, c2, a))
}

fn inner_portfolio_unchecked(p: f64, c2: f64, a: f64) -> PortfolioRate {
    let mut best = (0.5 * lg(1.0 + p / (c2 * (a * a).max(1.0) + 1.0)), Scheme::TreatAsNoise, None);
    let mut offer = |v: f64, s: Scheme, al: Option<f64>| {
        if v > best.0 {
            best = (v, s, al);
        }
    };
    offer(wdp_raw(p, c2, a), Scheme::MismatchedPrecoding, None);
    offer(0.25 * lg(1.0 + p), Scheme::TimeSharing, None);
    if a > 1.0 && a <= 2.0 && p > 3.0 {
        offer(medium_raw(p, a), Scheme::MediumFading, Some(a - 1.0));
    }
    for &al in rcr_alpha_grid() {
        offer(rcr_raw(p, c2, a, al), Scheme::SuperpositionBinning, Some(al));
    }
    PortfolioRate {
        bound: RateBound::canonical(best.0, Branch::Single),
        scheme: best.1,
        alpha: best.2,
    }
}

fn check_strong_inputs(p: f64, c2: f64, a: &FadingVector) -> Result<()> {
    require_nonneg("P", p)?;
    require_nonneg("c2", c2)?;
    if a.len() < 2 {
        return Err(invalid("M", a.len() as f64, "need at least two receivers"));
    }
    Ok(())
}

/// Strong-fading regime: `a₁ = 0`, `c²a₂² > P+1`, `a_m²/a_{m-1}² ≥ P+1` for m ≥ 3.
/// The error names the first violated condition.
pub fn strong_fading_check(p: f64, c2: f64, a: &FadingVector) -> Result<()> {
    check_strong_inputs(p, c2, a)?;
    let a = a.as_slice();
    if a[0] != 0.0 {
        return Err(Error::StrongFading(format!("a_1 = {} must be 0", a[0])));
    }
    let s = c2 * a[1] * a[1];
    if !(s > p + 1.0) {
        return Err(Error::StrongFading(format!(
            "c^2 a_2^2 = {s} must exceed P+1 = {}",
            p + 1.0
        )));
    }
    for m in 2..a.len() {
        let r = (a[m] * a[m]) / (a[m - 1] * a[m - 1]);
        if !(r >= p + 1.0) {
            return Err(Error::StrongFading(format!(
                "a_{}^2 / a_{}^2 = {r} must be at least P+1 = {}",
                m + 1,
                m,
                p + 1.0
            )));
        }
    }
    Ok(())
}

/// Generalized strong-fading regime for arbitrary `a₁`, with `Δ_m = a_m - a₁`:
/// `c²Δ₂² > max{P+1, a₂²}`; `c²Δ_i² > 1` for i > 2; and for m ≥ 3
/// `Σ_{i=2}^{m-1} Δ_i² ≥ γ a_m²` and `Δ_m² ≥ γP Σ_{i=2}^{m-1} Δ_i²`.
pub fn strong_fading_check_v2(p: f64, c2: f64, a: &FadingVector, gamma: f64) -> Result<()> {
    check_strong_inputs(p, c2, a)?;
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(invalid("gamma", gamma, "must be positive"));
    }
    let a = a.as_slice();
    let delta: Vec<f64> = a.iter().map(|v| v - a[0]).collect();
    let s = c2 * delta[1] * delta[1];
    let floor = (p + 1.0).max(a[1] * a[1]);
    if !(s > floor) {
        return Err(Error::StrongFading(format!(
            "c^2 Delta_2^2 = {s} must exceed max(P+1, a_2^2) = {floor}"
        )));
    }
    for (i, d) in delta.iter().enumerate().skip(2) {
        if !(c2 * d * d > 1.0) {
            return Err(Error::StrongFading(format!(
                "c^2 Delta_{}^2 = {} must exceed 1",
                i + 1,
                c2 * d * d
            )));
        }
    }
    let mut partial = 0.0;
    for m in 2..a.len() {
        partial += delta[m - 1] * delta[m - 1];
        if !(partial >= gamma * a[m] * a[m]) {
            return Err(Error::StrongFading(format!(
                "sum of Delta_i^2 below m = {} is {partial}, less than gamma a_{}^2 = {}",
                m + 1,
                m + 1,
                gamma * a[m] * a[m]
            )));
        }
        if !(delta[m] * delta[m] >= gamma * p * partial) {
            return Err(Error::StrongFading(format!(
                "Delta_{}^2 = {} is less than gamma P times the earlier sum = {}",
                m + 1,
                delta[m] * delta[m],
                gamma * p * partial
            )));
        }
    }
    Ok(())
}

fn strong_outer_value(p: f64, mf: f64) -> f64 {
    lg(1.0 + p) / (2.0 * mf) + 0.5 * lg(mf) + 2.0
}

/// Converse under [`strong_fading_check`]: `(1/2M)log(1+P) + ½log M + 2`.
pub fn wsfd_outer_strong(p: f64, c2: f64, a: &FadingVector) -> Result<RateBound> {
    strong_fading_check(p, c2, a)?;
    Ok(RateBound::canonical(
        strong_outer_value(p, a.len() as f64),
        Branch::StrongState,
    ))
}

/// Converse under [`strong_fading_check_v2`], looser by `½log γ`.
pub fn wsfd_outer_strong_v2(p: f64, c2: f64, a: &FadingVector, gamma: f64) -> Result<RateBound> {
    strong_fading_check_v2(p, c2, a, gamma)?;
    Ok(RateBound::canonical(
        strong_outer_value(p, a.len() as f64) + 0.5 * lg(gamma),
        Branch::StrongState,
    ))
}

/// Time sharing with dirty-paper coding for each receiver: `(1/2M)log(1+P)`.
pub fn wsfd_inner_timeshare(p: f64, m: usize) -> Result<RateBound> {
    require_nonneg("P", p)?;
    if m == 0 {
        return Err(invalid("M", 0.0, "need at least one receiver"));
    }
    Ok(RateBound::canonical(lg(1.0 + p) / (2.0 * m as f64), Branch::StrongState))
}

/// Two receivers with antipodal gains `±1`.
pub fn wffd_outer_antipodal(p: f64, c2: f64) -> Result<RateBound> {
    require_nonneg("P", p)?;
    require_nonneg("c2", c2)?;
    Ok(if c2 <= 1.0 {
        RateBound::printed(0.5 * lg(p + 1.0), Branch::WeakState)
    } else if c2 < p + 1.0 {
        RateBound::printed(
            0.5 * lg(p + c2 + 1.0) - 0.25 * lg(c2 + 1.0) + 1.5,
            Branch::ModerateState,
        )
    } else {
        RateBound::printed(0.25 * lg(p + 1.0) + 2.0, Branch::StrongState)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const EPS: f64 = 1e-12;

    fn fv(a: &[f64]) -> FadingVector {
        FadingVector::new(a.to_vec()).unwrap()
    }

    #[test]
    fn fading_vector_sorts() {
        assert_eq!(fv(&[3.0, -1.0, 0.0]).as_slice(), &[-1.0, 0.0, 3.0]);
        assert!(FadingVector::new(vec![]).is_err());
        let json = serde_json::to_string(&fv(&[2.0, 1.0])).unwrap();
        assert_eq!(json, "[1.0,2.0]");
        let back: FadingVector = serde_json::from_str("[5.0,0.0]").unwrap();
        assert_eq!(back.as_slice(), &[0.0, 5.0]);
    }

    #[test]
    fn raw_outer_values() {
        assert_abs_diff_eq!(wsfd_outer_raw_2(15.0, 16.0, -1.0).unwrap().value, 1.494408046742886372, epsilon = EPS);
        assert_abs_diff_eq!(wsfd_outer_raw_2(3.0, 0.0, 1.0).unwrap().value, 1.5, epsilon = EPS);
        assert_abs_diff_eq!(wsfd_outer_raw_2(15.0, 16.0, 1.5).unwrap().value, 2.514145882091591872, epsilon = EPS);
        assert_abs_diff_eq!(wsfd_outer_raw_2(100.0, 4.0, 0.5).unwrap().value, 3.596667714909404556, epsilon = EPS);
        let c = wsfd_outer_canonical_2(3.0, 1.0, 1.0).unwrap();
        assert_eq!((c.value, c.branch), (1.0, Branch::PointToPoint));
    }

    #[test]
    fn printed_outer_branches() {
        let r = wsfd_outer_2(3.0, 5.0, 1.0).unwrap();
        assert_eq!((r.value, r.branch), (1.0, Branch::WeakFading));
        let r = wsfd_outer_2(4.0, 4.0, 2.0).unwrap();
        assert_eq!(r.branch, Branch::MediumFading);
        assert_abs_diff_eq!(r.value, 1.160964047443681173, epsilon = EPS);
        let r = wsfd_outer_2(15.0, 1.0, 3.0).unwrap();
        assert_eq!(r.branch, Branch::StrongFadingLow);
        assert_abs_diff_eq!(r.value, 3.943079932335172285, epsilon = EPS);
        let r = wsfd_outer_2(15.0, 17.0, -1.0).unwrap();
        assert_eq!((r.value, r.branch), (1.5, Branch::StrongFadingHigh));
        // No state: everything with a ≥ 1 falls in the first branch.
        assert_eq!(wsfd_outer_2(15.0, 0.0, 30.0).unwrap().branch, Branch::WeakFading);
        assert!(wsfd_outer_2(15.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn inner_scheme_values() {
        assert_abs_diff_eq!(wsfd_inner_rcr_2(15.0, 16.0, 1.5, 0.5).unwrap().value, 0.189973742577434079, epsilon = EPS);
        assert_abs_diff_eq!(wsfd_inner_rcr_2(15.0, 16.0, 1.0, 0.0).unwrap().value, 0.020454069527299336, epsilon = EPS);
        assert!(wsfd_inner_rcr_2(15.0, 16.0, 1.5, 1.0).is_err());
        assert!(wsfd_inner_rcr_2(0.0, 16.0, 1.5, 0.5).unwrap().clamped);
        assert_abs_diff_eq!(wsfd_inner_wdp_2(3.0, 3.0, 1.5).unwrap().value, 0.798950778214327162, epsilon = EPS);
        assert_abs_diff_eq!(wsfd_inner_wdp_2(3.0, 3.0, 1.0).unwrap().value, 1.0, epsilon = EPS);
        assert_abs_diff_eq!(wsfd_inner_medium_2(16.0, 1.5).unwrap().value, 1.062765441041922462, epsilon = EPS);
        assert_abs_diff_eq!(wsfd_inner_medium_2(16.0, 2.0).unwrap().value, 0.978134289687415142, epsilon = EPS);
        assert_abs_diff_eq!(medium_raw(16.0, 1.0 + 1e-12), 2.0, epsilon = 1e-9);
        assert!(wsfd_inner_medium_2(3.0, 1.5).is_err());
        assert!(wsfd_inner_medium_2(16.0, 2.5).is_err());
    }

    #[test]
    fn portfolio_picks_winner() {
        let r = wsfd_inner_2(3.0, 1.0, 1.0).unwrap();
        assert_eq!(r.scheme, Scheme::MismatchedPrecoding);
        assert_abs_diff_eq!(r.bound.value, 1.0, epsilon = EPS);
        let r = wsfd_inner_2(15.0, 1e6, 30.0).unwrap();
        assert_eq!(r.scheme, Scheme::TimeSharing);
        let r = wsfd_inner_2(15.0, 16.0, 1.5).unwrap();
        assert!(r.bound.value >= 0.245493176256071189);
        assert_eq!(rcr_alpha_grid().len(), 512);
        assert!(rcr_alpha_grid().windows(2).all(|w| w[0] < w[1]));
        assert!(*rcr_alpha_grid().last().unwrap() < 1.0);
    }

    #[test]
    fn strong_fading_checks() {
        strong_fading_check(3.0, 16.0, &fv(&[0.0, 1.0, 2.0])).unwrap();
        let e = strong_fading_check(3.0, 16.0, &fv(&[0.0, 1.0, 1.5])).unwrap_err().to_string();
        assert!(e.contains("a_3^2 / a_2^2"), "{e}");
        let e = strong_fading_check(3.0, 16.0, &fv(&[0.5, 1.0])).unwrap_err().to_string();
        assert!(e.contains("a_1"), "{e}");
        let e = strong_fading_check(3.0, 1.0, &fv(&[0.0, 1.0])).unwrap_err().to_string();
        assert!(e.contains("c^2 a_2^2"), "{e}");

        let a = fv(&[0.0, 1.0, 2.0]);
        let o = wsfd_outer_strong(3.0, 16.0, &a).unwrap().value;
        let i = wsfd_inner_timeshare(3.0, 3).unwrap().value;
        assert_abs_diff_eq!(o - i, 0.5 * 3f64.log2() + 2.0, epsilon = EPS);
        assert_abs_diff_eq!(i, 1.0 / 3.0, epsilon = EPS);
    }

    #[test]
    fn generalized_strong_fading() {
        let e = strong_fading_check_v2(3.0, 16.0, &fv(&[1.0, 2.0, 5.0]), 1.0).unwrap_err().to_string();
        assert!(e.contains("sum of Delta_i^2 below m = 3"), "{e}");
        let e = strong_fading_check_v2(3.0, 1.0, &fv(&[1.0, 2.0, 5.0]), 1.0).unwrap_err().to_string();
        assert!(e.contains("Delta_2"), "{e}");
        strong_fading_check_v2(3.0, 16.0, &fv(&[0.0, 1.0]), 1.0).unwrap();
        // Negative a_1 gives Δ large relative to a.
        strong_fading_check_v2(3.0, 100.0, &fv(&[-10.0, -9.0, 0.5]), 1.0).unwrap();
        let o = wsfd_outer_strong_v2(3.0, 100.0, &fv(&[-10.0, -9.0, 0.5]), 2.0).unwrap().value;
        let i = wsfd_inner_timeshare(3.0, 3).unwrap().value;
        assert_abs_diff_eq!(o - i, 0.5 * 3f64.log2() + 2.0 + 0.5, epsilon = EPS);
        assert!(strong_fading_check_v2(3.0, 100.0, &fv(&[0.0, 1.0]), 0.0).is_err());
    }

    #[test]
    fn antipodal_outer() {
        assert_eq!(wffd_outer_antipodal(15.0, 0.5).unwrap().value, 2.0);
        assert_abs_diff_eq!(wffd_outer_antipodal(15.0, 4.0).unwrap().value, 3.080482023721840586, epsilon = EPS);
        assert_eq!(wffd_outer_antipodal(15.0, 100.0).unwrap().value, 3.0);
    }

    proptest! {
        #[test]
        fn portfolio_below_raw_outer(
            lp in -1.0f64..20.0, lc in -4.0f64..24.0,
            a in prop::sample::select(vec![1.0, 1.1, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0, 30.0]),
            neg in any::<bool>(),
        ) {
            let (p, c2, a) = (2f64.powf(lp), 2f64.powf(lc), if neg { -a } else { a });
            let inner = wsfd_inner_2(p, c2, a).unwrap().bound.value;
            prop_assert!(inner <= wsfd_outer_raw_2(p, c2, a).unwrap().value + 1e-9);
            prop_assert!(inner <= wsfd_outer_canonical_2(p, c2, a).unwrap().value + 1e-9);
        }

        #[test]
        fn antipodal_printed_gap_to_fading_strong_state(lp in -1.0f64..20.0, lc in 0.0f64..4.0) {
            // Only where the state dominates do both statements reduce to ¼log(P+1) + const.
            let p = 2f64.powf(lp);
            let c2 = (p + 1.0) * 2f64.powf(lc) * (1.0 + 1e-9);
            let d = wsfd_outer_2(p, c2, -1.0).unwrap().value - wffd_outer_antipodal(p, c2).unwrap().value;
            prop_assert!(d.abs() <= 1.5 + 1e-9, "difference {}", d);
        }

        #[test]
        fn precoding_rate_in_weak_fading(lp in 0.0f64..20.0, c2 in 0.0f64..1.0, a in 1.0f64..2.0) {
            let p = 2f64.powf(lp);
            // Weak fading: (a-1)² c² ≤ 1.
            prop_assume!((a - 1.0) * (a - 1.0) * c2 <= 1.0);
            let v = wsfd_inner_wdp_2(p, c2, a).unwrap().value;
            prop_assert!(v >= 0.5 * (p + 1.0).log2() - 0.5 - 1e-12);
        }
    }
}
