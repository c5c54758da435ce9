//! Bounds for receivers with independent states (`Σ_S = I`).
//!
//! All functions take the state power `c2 = c²`.

use crate::error::{invalid, require_nonneg, require_unit, Result};
use crate::rate::{lg, point_to_point, Branch, RateBound};

fn check(p: f64, c2: f64) -> Result<()> {
    require_nonneg("P", p)?;
    require_nonneg("c2", c2)?;
    Ok(())
}

fn check_m(m: usize) -> Result<f64> {
    if m < 2 {
        return Err(invalid("M", m as f64, "need at least two receivers"));
    }
    Ok(m as f64)
}

/// Earlier two-receiver converse with gain `c` known up to its sign, split at `c² = 4`.
pub fn lapidoth_outer_2(p: f64, c2: f64) -> Result<RateBound> {
    check(p, c2)?;
    let cross = 1.0 + p + c2 + 2.0 * (c2 * p).sqrt();
    Ok(if c2 < 4.0 {
        let d = c2 / 4.0 + 1.0;
        RateBound::printed(
            0.25 * lg((1.0 + p) / d) + 0.25 * lg(cross / d),
            if c2 == 0.0 { Branch::NoState } else { Branch::ModerateState },
        )
    } else {
        RateBound::printed(
            0.25 * lg(1.0 + p) + 0.25 * lg(cross) - 0.25 * lg(c2),
            Branch::StrongState,
        )
    })
}

/// Earlier two-receiver achievable rate, split on `c²/2`.
pub fn lapidoth_inner_2(p: f64, c2: f64) -> Result<RateBound> {
    check(p, c2)?;
    let h = c2 / 2.0;
    Ok(if h <= 1.0 {
        RateBound::printed(0.5 * lg(1.0 + p / (h + 1.0)), Branch::WeakState)
    } else if h < p + 1.0 {
        RateBound::printed(
            0.5 * lg((p + h + 1.0) / c2) + 0.25 * lg(h),
            Branch::ModerateState,
        )
    } else {
        RateBound::printed(0.25 * lg(p + 1.0), Branch::StrongState)
    })
}

/// Earlier M-receiver converse; capped at ½log(1+P).
pub fn lapidoth_outer_m(p: f64, c2: f64, m: usize) -> Result<RateBound> {
    check(p, c2)?;
    let mf = check_m(m)?;
    let cap = point_to_point(p);
    if c2 == 0.0 {
        return Ok(RateBound::printed(cap, Branch::NoState));
    }
    let excess = (lg(c2 / (mf * (p + 1.0))) / (2.0 * mf)).max(0.0);
    let v = 0.5 * lg(p + c2 + 2.0 * (c2 * p).sqrt())
        - (mf - 1.0) / (2.0 * mf) * lg(c2)
        - lg(mf) / (2.0 * mf)
        - excess;
    Ok(if v > cap {
        RateBound::printed(cap, Branch::PointToPoint)
    } else {
        RateBound::printed(v, Branch::Single)
    })
}

/// Two-receiver outer bound.
pub fn wrdp_outer_2(p: f64, c2: f64) -> Result<RateBound> {
    check(p, c2)?;
    Ok(wrdp_outer_2_unchecked(p, c2))
}

pub(crate) fn wrdp_outer_2_unchecked(p: f64, c2: f64) -> RateBound {
    if c2 <= 1.0 {
        RateBound::canonical(0.5 * lg(p + 1.0), Branch::WeakState)
    } else if c2 < p + 1.0 {
        RateBound::canonical(
            0.5 * lg(p + c2 + 1.0) - 0.25 * lg(c2 + 1.0) + 0.5,
            Branch::ModerateState,
        )
    } else {
        RateBound::canonical(0.25 * lg(p + 1.0) + 1.0, Branch::StrongState)
    }
}

/// Superposition rate with common power `αP`.
pub fn wrdp_inner_param_2(p: f64, c2: f64, alpha: f64) -> Result<f64> {
    wrdp_inner_param_m(p, c2, 2, alpha)
}

/// Two-receiver inner bound: the superposition rate at its optimal split `ᾱP = c² - 1`.
pub fn wrdp_inner_2(p: f64, c2: f64) -> Result<RateBound> {
    check(p, c2)?;
    Ok(wrdp_inner_2_unchecked(p, c2))
}

pub(crate) fn wrdp_inner_2_unchecked(p: f64, c2: f64) -> RateBound {
    if c2 < 1.0 {
        RateBound::canonical(0.5 * lg(1.0 + p / (c2 + 1.0)), Branch::WeakState)
    } else if c2 < p + 1.0 {
        RateBound::canonical(
            0.5 * lg(1.0 + c2 + p) - 0.25 * lg(c2) - 0.5,
            Branch::ModerateState,
        )
    } else {
        RateBound::canonical(0.25 * lg(p + 1.0), Branch::StrongState)
    }
}

/// M-receiver outer bound as stated, with its additive constants.
pub fn wrdp_outer_m_printed(p: f64, c2: f64, m: usize) -> Result<RateBound> {
    check(p, c2)?;
    let mf = check_m(m)?;
    Ok(if mf - 1.0 > c2 {
        RateBound::printed(0.5 * lg(1.0 + p / (1.0 + c2)) + 2.25, Branch::WeakState)
    } else if c2 < (mf - 1.0) * (p + 1.0) {
        RateBound::printed(
            lg(1.0 + p) / (2.0 * mf) + (mf - 1.0) / (2.0 * mf) * lg(c2) + 1.5,
            Branch::ModerateState,
        )
    } else {
        RateBound::printed(lg(1.0 + p) / (2.0 * mf) + 2.0, Branch::StrongState)
    })
}

/// M-receiver outer bound in the form its derivation gives:
/// `min{½log(1+P), ½log(1+P+ĉ²) - (M-1)/(2M)·log ĉ² + 3/2}` with
/// `ĉ² = min{max(c², 1), (M-1)(P+1)}`.
pub fn wrdp_outer_m(p: f64, c2: f64, m: usize) -> Result<RateBound> {
    check(p, c2)?;
    let mf = check_m(m)?;
    Ok(wrdp_outer_m_unchecked(p, c2, mf))
}

pub(crate) fn wrdp_outer_m_unchecked(p: f64, c2: f64, mf: f64) -> RateBound {
    let cap = point_to_point(p);
    let top = (mf - 1.0) * (p + 1.0);
    let ch = c2.max(1.0).min(top);
    let v = 0.5 * lg(1.0 + p + ch) - (mf - 1.0) / (2.0 * mf) * lg(ch) + 1.5;
    if v >= cap {
        return RateBound::canonical(cap, Branch::PointToPoint);
    }
    let branch = if mf - 1.0 > c2 {
        Branch::WeakState
    } else if c2 < top {
        Branch::ModerateState
    } else {
        Branch::StrongState
    };
    RateBound::canonical(v, branch)
}

/// Optimal private-power fraction `ᾱ* = clamp((c²+1-M)/(P(M-1)), 0, 1)`.
pub fn wrdp_alpha_star_m(p: f64, c2: f64, m: usize) -> Result<f64> {
    check(p, c2)?;
    let mf = check_m(m)?;
    if p == 0.0 {
        return Ok(0.0);
    }
    Ok(((c2 + 1.0 - mf) / (p * (mf - 1.0))).clamp(0.0, 1.0))
}

/// Common codeword of power `αP` treating the state as noise, private layers
/// precoded against their own state and time-shared over the M receivers.
pub fn wrdp_inner_param_m(p: f64, c2: f64, m: usize, alpha: f64) -> Result<f64> {
    check(p, c2)?;
    let mf = check_m(m)?;
    require_unit("alpha", alpha)?;
    Ok(inner_param_unchecked(p, c2, mf, alpha))
}

#[inline]
pub(crate) fn inner_param_unchecked(p: f64, c2: f64, mf: f64, alpha: f64) -> f64 {
    let ab = 1.0 - alpha;
    0.5 * lg(1.0 + alpha * p / (c2 + ab * p + 1.0)) + lg(1.0 + ab * p) / (2.0 * mf)
}

/// M-receiver inner bound.
pub fn wrdp_inner_m(p: f64, c2: f64, m: usize) -> Result<RateBound> {
    check(p, c2)?;
    let mf = check_m(m)?;
    Ok(wrdp_inner_m_unchecked(p, c2, mf))
}

pub(crate) fn wrdp_inner_m_unchecked(p: f64, c2: f64, mf: f64) -> RateBound {
    if mf - 1.0 > c2 {
        RateBound::canonical(0.5 * lg(1.0 + p / (1.0 + c2)), Branch::WeakState)
    } else if c2 <= (mf - 1.0) * (p + 1.0) {
        RateBound::canonical(
            0.5 * lg(p + c2 + 1.0) - (mf - 1.0) / (2.0 * mf) * lg(c2) - 0.5,
            Branch::ModerateState,
        )
    } else {
        RateBound::canonical(lg(1.0 + p) / (2.0 * mf), Branch::StrongState)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const EPS: f64 = 1e-12;
    const OUT_MID: f64 = 7.312176412979092000;

    fn grid_max(p: f64, c2: f64, m: usize, n: usize) -> f64 {
        (0..n)
            .map(|i| wrdp_inner_param_m(p, c2, m, i as f64 / (n - 1) as f64).unwrap())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn earlier_two_receiver_bounds() {
        assert_abs_diff_eq!(lapidoth_outer_2(15.0, 0.0).unwrap().value, 2.0, epsilon = EPS);
        assert_abs_diff_eq!(
            lapidoth_outer_2(15.0, 16.0).unwrap().value,
            1.494227606620520881,
            epsilon = EPS
        );
        assert_abs_diff_eq!(
            lapidoth_outer_2(15.0, 1.0).unwrap().value,
            1.996316326697159519,
            epsilon = EPS
        );
        assert_abs_diff_eq!(
            lapidoth_inner_2(15.0, 16.0).unwrap().value,
            1.042481250360578090,
            epsilon = EPS
        );
        assert_abs_diff_eq!(lapidoth_inner_2(15.0, 40.0).unwrap().value, 1.0, epsilon = EPS);
        let r = lapidoth_inner_2(3.0, 2.0).unwrap();
        assert_abs_diff_eq!(r.value, 0.660964047443681173, epsilon = EPS);
        assert_eq!(r.branch, Branch::WeakState);
    }

    #[test]
    fn earlier_m_receiver_bound() {
        assert_abs_diff_eq!(
            lapidoth_outer_m(15.0, 16.0, 2).unwrap().value,
            1.726910426482083526,
            epsilon = EPS
        );
        assert_abs_diff_eq!(
            lapidoth_outer_m(15.0, 1000.0, 3).unwrap().value,
            0.833349320812501181,
            epsilon = EPS
        );
        assert_eq!(lapidoth_outer_m(15.0, 0.0, 3).unwrap().value, 2.0);
        assert_eq!(lapidoth_outer_m(15.0, 1e-12, 3).unwrap().branch, Branch::PointToPoint);
    }

    #[test]
    fn two_receiver_examples() {
        assert_abs_diff_eq!(wrdp_outer_2(7.0, 4.0).unwrap().value, 1.711999226638737503, epsilon = EPS);
        assert_abs_diff_eq!(wrdp_inner_2(7.0, 4.0).unwrap().value, 0.792481250360578090, epsilon = EPS);
        assert_eq!(wrdp_outer_2(7.0, 0.0).unwrap().branch, Branch::WeakState);
        assert_eq!(wrdp_inner_2(7.0, 0.0).unwrap().value, 1.5);
        assert_abs_diff_eq!(
            wrdp_inner_param_2(15.0, 16.0, 1.0 / 3.0).unwrap(),
            0.987414153577590041,
            epsilon = EPS
        );
        assert!(wrdp_inner_param_2(15.0, 16.0, 1.2).is_err());
        assert!(wrdp_inner_param_2(15.0, 16.0, -0.1).is_err());
    }

    #[test]
    fn m_receiver_examples() {
        let o = wrdp_outer_m_printed(15.0, 2.0, 4).unwrap();
        assert_abs_diff_eq!(o.value, 0.5 * 6f64.log2() + 2.25, epsilon = EPS);
        assert_eq!(o.branch, Branch::WeakState);
        // The first regime is strict: c² = M-1 is already the middle one.
        let o = wrdp_outer_m_printed(15.0, 3.0, 4).unwrap();
        assert_eq!(o.branch, Branch::ModerateState);
        assert_abs_diff_eq!(o.value, 2.0 + 0.375 * 3f64.log2(), epsilon = EPS);
        assert_abs_diff_eq!(wrdp_outer_m_printed(15.0, 20.0, 4).unwrap().value, 3.620723035582760880, epsilon = EPS);
        assert_abs_diff_eq!(wrdp_outer_m_printed(15.0, 64.0, 4).unwrap().value, 2.5, epsilon = EPS);
        assert_abs_diff_eq!(wrdp_inner_m(15.0, 64.0, 4).unwrap().value, 0.5, epsilon = EPS);
        // Middle regime with the formula below ½log(1+P): the gap is exactly 2.
        let o = wrdp_outer_m(1e5, 1024.0, 2).unwrap();
        let i = wrdp_inner_m(1e5, 1024.0, 2).unwrap();
        assert_eq!((o.branch, i.branch), (Branch::ModerateState, Branch::ModerateState));
        assert_abs_diff_eq!(o.value, OUT_MID, epsilon = EPS);
        assert_abs_diff_eq!(i.value, OUT_MID - 2.0, epsilon = EPS);
        // At P = 63 the formula exceeds ½log(1+P) and the cap applies.
        let o = wrdp_outer_m(63.0, 30.0, 2).unwrap();
        assert_eq!((o.value, o.branch), (3.0, Branch::PointToPoint));
        // At P = 15 the same c² is beyond (M-1)(P+1) = 16.
        assert_eq!(wrdp_inner_m(15.0, 30.0, 2).unwrap().value, 1.0);
        assert_eq!(wrdp_outer_m(15.0, 30.0, 2).unwrap().value, 2.0);
        assert_abs_diff_eq!(wrdp_inner_m(15.0, 1.0, 2).unwrap().value, 0.5 * 8.5f64.log2(), epsilon = EPS);
        assert_abs_diff_eq!(
            wrdp_inner_param_m(15.0, 16.0, 3, 1.0 / 3.0).unwrap(),
            0.699128185357815270,
            epsilon = EPS
        );
    }

    #[test]
    fn alpha_star_values() {
        assert_eq!(wrdp_alpha_star_m(15.0, 16.0, 2).unwrap(), 1.0);
        assert_eq!(wrdp_alpha_star_m(15.0, 0.5, 3).unwrap(), 0.0);
        assert_abs_diff_eq!(wrdp_alpha_star_m(15.0, 8.0, 3).unwrap(), 0.2, epsilon = EPS);
    }

    #[test]
    fn two_receiver_inner_is_the_grid_optimum() {
        for &(p, c2) in &[(7.0, 4.0), (100.0, 2.0), (15.0, 15.9), (3.0, 0.5), (1000.0, 2000.0)] {
            let g = grid_max(p, c2, 2, 10_001);
            let v = wrdp_inner_2(p, c2).unwrap().value;
            assert!(v <= g + 1e-4 && v >= g - 1e-4, "P={p} c2={c2}: {v} vs {g}");
        }
    }

    #[test]
    fn printed_m_inner_rises_at_strong_threshold() {
        // Beyond M = 2 the middle branch undershoots the strong branch at
        // c² = (M-1)(P+1) by ½log M - (M-1)/(2M)·log(M-1) - ½.
        for m in [3usize, 4, 8, 16] {
            let (p, mf) = (1e6, m as f64);
            let t = (mf - 1.0) * (p + 1.0);
            let below = wrdp_inner_m(p, t, m).unwrap().value;
            let above = wrdp_inner_m(p, t * (1.0 + 1e-12), m).unwrap().value;
            let jump = 0.5 - 0.5 * mf.log2() + (mf - 1.0) / (2.0 * mf) * (mf - 1.0).log2();
            assert_abs_diff_eq!(above - below, jump, epsilon = 1e-9);
            assert!(jump > 0.0);
        }
    }

    proptest! {
        #[test]
        fn two_receiver_inner_nonincreasing_in_c(p in 0.01f64..1e6, c2a in 0.0f64..1e6, d in 0.0f64..1e3) {
            let lo = wrdp_inner_2(p, c2a).unwrap().value;
            let hi = wrdp_inner_2(p, c2a + d).unwrap().value;
            prop_assert!(hi <= lo + 1e-12);
        }

        #[test]
        fn m_inner_nonincreasing_within_branches(
            p in 0.01f64..1e6, c2a in 0.0f64..1e6, d in 0.0f64..1e3, m in 2usize..17,
        ) {
            let a = wrdp_inner_m(p, c2a, m).unwrap();
            let b = wrdp_inner_m(p, c2a + d, m).unwrap();
            if a.branch == b.branch || m == 2 {
                prop_assert!(b.value <= a.value + 1e-12);
            }
        }

        #[test]
        fn inner_below_outer(p in 0.01f64..1e6, c2 in 0.0f64..1e7, m in 2usize..17) {
            prop_assert!(wrdp_inner_2(p, c2).unwrap().value <= wrdp_outer_2(p, c2).unwrap().value + 1e-9);
            prop_assert!(wrdp_inner_m(p, c2, m).unwrap().value <= wrdp_outer_m(p, c2, m).unwrap().value + 1e-9);
            prop_assert!(lapidoth_inner_2(p, c2).unwrap().value <= lapidoth_outer_2(p, c2).unwrap().value + 1e-9);
        }

        #[test]
        fn two_receiver_gap_at_most_one(p in 0.01f64..1e6, c2 in 0.0f64..1e7) {
            let g = wrdp_outer_2(p, c2).unwrap().value - wrdp_inner_2(p, c2).unwrap().value;
            prop_assert!(g <= 1.0 + 1e-9);
        }

        #[test]
        fn alpha_star_is_a_grid_maximizer(p in 0.1f64..1e4, c2 in 0.0f64..1e5, m in 2usize..9) {
            let n = 2001;
            let star = 1.0 - wrdp_alpha_star_m(p, c2, m).unwrap();
            let at_star = wrdp_inner_param_m(p, c2, m, star).unwrap();
            let g = grid_max(p, c2, m, n);
            prop_assert!(at_star >= g - 1e-12);
            let closed = wrdp_inner_m(p, c2, m).unwrap().value;
            prop_assert!(closed <= at_star + 1e-9 && closed >= at_star - 0.5);
        }
    }
}
