//! Bounds for equicorrelated states, `Σ_S = (1-ρ)I + ρ11ᵀ`, and for two
//! receivers with unequal state variances.
//!
//! A positive correlation splits each state into a common part that can be
//! precoded against and an independent residual of variance `1-ρ`, so most
//! bounds here are the independent-state bounds at the effective power
//! `c²ρ̄⁺` with `ρ̄⁺ = 1 - max{0, ρ}`.

use nalgebra::{DMatrix, Matrix2};

use crate::bounds_wrdp::{
    wrdp_inner_2_unchecked, wrdp_inner_m_unchecked, wrdp_outer_2_unchecked, wrdp_outer_m_unchecked,
};
use crate::bounds_wsfd::PortfolioRate;
use crate::channel_model::{ccdp_es_feasible, ccdp_es_range};
use crate::error::{invalid, require_nonneg, Error, Result};
use crate::rate::{lg, Branch, FormulaSource, RateBound, Scheme};

/// `1 - max{0, ρ}`.
pub fn rho_bar_plus(rho: f64) -> f64 {
    1.0 - rho.max(0.0)
}

/// Residual state power `c²ρ̄⁺` left after removing the common part.
pub fn effective_c2(c2: f64, rho: f64) -> f64 {
    c2 * rho_bar_plus(rho)
}

fn check(p: f64, c2: f64, rho: f64, m: usize) -> Result<()> {
    require_nonneg("P", p)?;
    require_nonneg("c2", c2)?;
    if m < 2 {
        return Err(invalid("M", m as f64, "need at least two receivers"));
    }
    if !ccdp_es_feasible(m, rho) {
        let (lo, hi) = ccdp_es_range(m);
        return Err(Error::InfeasibleCorrelation { m, rho, lo, hi });
    }
    Ok(())
}

fn relabel(b: RateBound, source: FormulaSource) -> RateBound {
    RateBound { source, ..b }
}

/// Two-receiver outer bound as stated: regimes decided on `c²ρ̄⁺`, values in raw `c²`.
pub fn ccdpes_outer_2_printed(p: f64, c2: f64, rho: f64) -> Result<RateBound> {
    check(p, c2, rho, 2)?;
    let x = effective_c2(c2, rho);
    Ok(if x <= 1.0 {
        RateBound::printed(0.5 * lg(p + 1.0), Branch::WeakState)
    } else if x < p + 1.0 {
        RateBound::printed(
            0.5 * lg(p + c2 + 1.0) - 0.25 * lg(c2) + 0.5,
            Branch::ModerateState,
        )
    } else {
        RateBound::printed(0.25 * lg(p + 1.0) + 0.5, Branch::StrongState)
    })
}

/// Two-receiver outer bound: the independent-state bound at power `c²ρ̄⁺`.
pub fn ccdpes_outer_2(p: f64, c2: f64, rho: f64) -> Result<RateBound> {
    check(p, c2, rho, 2)?;
    Ok(wrdp_outer_2_unchecked(p, effective_c2(c2, rho)))
}

/// Two-receiver inner bound: common part precoded away, residual handled as
/// independent states of power `c²ρ̄⁺`.
pub fn ccdpes_inner_2(p: f64, c2: f64, rho: f64) -> Result<RateBound> {
    check(p, c2, rho, 2)?;
    Ok(wrdp_inner_2_unchecked(p, effective_c2(c2, rho)))
}

/// M-receiver outer bound as stated.
pub fn ccdpes_outer_m_printed(p: f64, c2: f64, rho: f64, m: usize) -> Result<RateBound> {
    check(p, c2, rho, m)?;
    let mf = m as f64;
    let x = effective_c2(c2, rho);
    Ok(if mf - 1.0 >= x {
        RateBound::printed(0.5 * lg(1.0 + p / (1.0 + c2)) + 2.25, Branch::WeakState)
    } else if x <= (mf - 1.0) * (p + 1.0) {
        RateBound::printed(
            lg(1.0 + p) / (2.0 * mf) + (mf - 1.0) / (2.0 * mf) * lg(c2) + 1.5,
            Branch::ModerateState,
        )
    } else {
        RateBound::printed(lg(1.0 + p) / (2.0 * mf) + 2.0, Branch::StrongState)
    })
}

/// M-receiver outer bound at power `c²ρ̄⁺`.
pub fn ccdpes_outer_m(p: f64, c2: f64, rho: f64, m: usize) -> Result<RateBound> {
    check(p, c2, rho, m)?;
    Ok(relabel(
        wrdp_outer_m_unchecked(p, effective_c2(c2, rho), m as f64),
        FormulaSource::Canonical,
    ))
}

/// M-receiver inner bound at power `c²ρ̄⁺`.
pub fn ccdpes_inner_m(p: f64, c2: f64, rho: f64, m: usize) -> Result<RateBound> {
    check(p, c2, rho, m)?;
    Ok(wrdp_inner_m_unchecked(p, effective_c2(c2, rho), m as f64))
}

/// `S₁ = κ S_c + √(1-κ²) S̃₁`, `S₂ = √Q (ρ/κ S_c + √(1-ρ²/κ²) S̃₂)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommonDecomposition {
    pub kappa: f64,
    /// Row m holds receiver m's (common, private) coefficients.
    pub coefficients: [[f64; 2]; 2],
}

impl CommonDecomposition {
    pub fn covariance(&self) -> Matrix2<f64> {
        let c = &self.coefficients;
        Matrix2::from_fn(|i, j| c[i][0] * c[j][0] + if i == j { c[i][1] * c[i][1] } else { 0.0 })
    }
}

/// `max{√ρ, ρ}`, the split used when none is given.
pub fn default_kappa(rho: f64) -> f64 {
    rho.sqrt().max(rho)
}

/// Common/private split of two states with correlation `ρ ≥ 0` and variances `1`, `Q`.
pub fn decompose_common(rho: f64, q: f64, kappa: Option<f64>) -> Result<CommonDecomposition> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(invalid("rho", rho, "common decomposition needs 0 <= rho <= 1"));
    }
    if !(q > 0.0) || !q.is_finite() {
        return Err(invalid("Q", q, "must be positive"));
    }
    let kappa = kappa.unwrap_or_else(|| default_kappa(rho));
    if !(kappa >= rho && kappa <= 1.0) {
        return Err(invalid("kappa", kappa, format!("must lie in [{rho}, 1]")));
    }
    let ratio = if rho == 0.0 { 0.0 } else { rho / kappa };
    let sq = q.sqrt();
    Ok(CommonDecomposition {
        kappa,
        coefficients: [
            [kappa, (1.0 - kappa * kappa).max(0.0).sqrt()],
            [sq * ratio, sq * (1.0 - ratio * ratio).max(0.0).sqrt()],
        ],
    })
}

/// Pairwise decomposition for `ρ < 0`: one source per receiver pair `j < m`
/// entering `S_j` with `+√|ρ|` and `S_m` with `-√|ρ|`, plus a private source per receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativeDecomposition {
    /// Source labels; `(j, m)` with `j < m` for pair sources, `(m, m)` for private ones.
    pub sources: Vec<(usize, usize)>,
    /// `M × sources.len()` coefficient table.
    pub coefficients: DMatrix<f64>,
}

impl NegativeDecomposition {
    pub fn covariance(&self) -> DMatrix<f64> {
        &self.coefficients * self.coefficients.transpose()
    }
}

pub fn decompose_negative(m: usize, rho: f64) -> Result<NegativeDecomposition> {
    if m < 2 {
        return Err(invalid("M", m as f64, "need at least two receivers"));
    }
    let (lo, _) = ccdp_es_range(m);
    if !(rho < 0.0 && rho >= lo) {
        return Err(Error::InfeasibleCorrelation { m, rho, lo, hi: 0.0 });
    }
    let r = (-rho).sqrt();
    let mut sources = Vec::new();
    for j in 0..m {
        for k in j + 1..m {
            sources.push((j, k));
        }
    }
    sources.extend((0..m).map(|k| (k, k)));
    let own = (1.0 + (m as f64 - 1.0) * rho).max(0.0).sqrt();
    let coefficients = DMatrix::from_fn(m, sources.len(), |row, col| {
        let (j, k) = sources[col];
        if j == k {
            if row == j {
                own
            } else {
                0.0
            }
        } else if row == j {
            r
        } else if row == k {
            -r
        } else {
            0.0
        }
    });
    Ok(NegativeDecomposition {
        sources,
        coefficients,
    })
}

fn check_unequal(p: f64, c2: f64, q: f64) -> Result<()> {
    require_nonneg("P", p)?;
    require_nonneg("c2", c2)?;
    if !(q > 0.0) || !q.is_finite() {
        return Err(invalid("Q", q, "must be positive"));
    }
    Ok(())
}

/// Two receivers with state variances 1 and `Q`, split on `c²√Q`.
pub fn ccdp_unequal_outer_2(p: f64, c2: f64, q: f64) -> Result<RateBound> {
    check_unequal(p, c2, q)?;
    let x = c2 * q.sqrt();
    Ok(if x <= 1.0 {
        RateBound::printed(0.5 * lg(p + 1.0), Branch::WeakState)
    } else if x < p + 1.0 {
        RateBound::printed(
            0.25 * lg(1.0 + p + c2) + 0.25 * lg(1.0 + p + c2 * q) - 0.25 * lg(c2 * (1.0 + q) + 1.0) + 1.5,
            Branch::ModerateState,
        )
    } else {
        RateBound::printed(0.25 * lg(p + 1.0) + 2.0, Branch::StrongState)
    })
}

/// Best of treating the stronger state as noise and time sharing.
pub fn ccdp_unequal_inner_2(p: f64, c2: f64, q: f64) -> Result<PortfolioRate> {
    check_unequal(p, c2, q)?;
    let tan = 0.5 * lg(1.0 + p / (c2 * q.max(1.0) + 1.0));
    let ts = 0.25 * lg(1.0 + p);
    let (v, scheme) = if ts > tan {
        (ts, Scheme::TimeSharing)
    } else {
        (tan, Scheme::TreatAsNoise)
    };
    Ok(PortfolioRate {
        bound: RateBound::canonical(v, Branch::Single),
        scheme,
        alpha: None,
    })
}
