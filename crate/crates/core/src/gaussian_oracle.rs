//! Exact entropies and mutual informations of jointly Gaussian vectors, and
//! the achievable rates of linear Gelfand–Pinsker assignments built from them.
//!
//! Conditional covariances are Schur complements; log-determinants come from
//! symmetric eigenvalues so near-singular blocks are handled by a pseudo-inverse.

use std::f64::consts::{E, PI};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::channel_model::{
    sample_covariance, sample_inputs, sample_outputs, sample_states, ChannelSpec, CovarianceMatrix,
    NoiseMode,
};
use crate::error::{invalid, require_nonneg, Error, Result};
use crate::rate::lg;

/// Eigenvalues below this fraction of the largest are treated as zero.
const RANK_TOL: f64 = 1e-13;

/// Named jointly Gaussian vector with zero mean.
#[derive(Debug, Clone)]
pub struct JointGaussian {
    pub names: Vec<String>,
    pub cov: CovarianceMatrix,
}

impl JointGaussian {
    pub fn new(names: Vec<String>, cov: CovarianceMatrix) -> Result<Self> {
        if names.len() != cov.dim() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} names", cov.dim()),
                found: names.len().to_string(),
            });
        }
        Ok(JointGaussian { names, cov })
    }

    /// Variables `V = L·W` of independent sources `W_j ~ N(0, var_j)`; row i of
    /// `loadings` defines variable `names[i]`.
    pub fn from_sources(names: &[&str], loadings: DMatrix<f64>, var: &[f64]) -> Result<Self> {
        if loadings.ncols() != var.len() || loadings.nrows() != names.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{} loadings", names.len(), var.len()),
                found: format!("{}x{}", loadings.nrows(), loadings.ncols()),
            });
        }
        let d = DMatrix::from_diagonal(&DVector::from_column_slice(var));
        let cov = CovarianceMatrix::symmetric(&loadings * d * loadings.transpose())?;
        Self::new(names.iter().map(|s| s.to_string()).collect(), cov)
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| invalid("variable", f64::NAN, format!("unknown variable `{name}`")))
    }

    fn indices(&self, names: &[&str]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.index(n)).collect()
    }

    fn block(&self, r: &[usize], c: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(r.len(), c.len(), |i, j| self.cov.get(r[i], c[j]))
    }

    /// `Σ_AA - Σ_AB Σ_BB⁺ Σ_BA`.
    pub fn conditional_covariance(&self, a: &[&str], given: &[&str]) -> Result<DMatrix<f64>> {
        let (ia, ib) = (self.indices(a)?, self.indices(given)?);
        let saa = self.block(&ia, &ia);
        if ib.is_empty() {
            return Ok(saa);
        }
        let sab = self.block(&ia, &ib);
        let sbb = self.block(&ib, &ib);
        let schur = saa - &sab * pseudo_inverse(&sbb) * sab.transpose();
        Ok((&schur + schur.transpose()) * 0.5)
    }

    pub fn entropy(&self, a: &[&str]) -> Result<f64> {
        self.conditional_entropy(a, &[])
    }

    pub fn conditional_entropy(&self, a: &[&str], given: &[&str]) -> Result<f64> {
        gaussian_entropy(&self.conditional_covariance(a, given)?)
    }

    /// `I(A;B) = h(A) - h(A|B)`.
    pub fn mutual_information(&self, a: &[&str], b: &[&str]) -> Result<f64> {
        Ok(self.entropy(a)? - self.conditional_entropy(a, b)?)
    }
}

fn pseudo_inverse(m: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(m.clone());
    let lmax = eig.eigenvalues.amax();
    let n = m.nrows();
    let mut out = DMatrix::zeros(n, n);
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        if l > RANK_TOL * lmax {
            let v = eig.eigenvectors.column(i);
            out += (v * v.transpose()) / l;
        }
    }
    out
}

/// Differential entropy `½log₂((2πe)ⁿ det Σ)` in bits.
pub fn gaussian_entropy(cov: &DMatrix<f64>) -> Result<f64> {
    let n = cov.nrows();
    if n == 0 {
        return Ok(0.0);
    }
    let eig = cov.clone().symmetric_eigenvalues();
    let lmax = eig.amax();
    let mut logdet = 0.0;
    for &l in eig.iter() {
        if !(l > RANK_TOL * lmax) || lmax == 0.0 {
            return Err(Error::Singular(format!(
                "covariance is singular (eigenvalue {l:e}); differential entropy is -inf"
            )));
        }
        logdet += lg(l);
    }
    Ok(0.5 * (n as f64 * lg(2.0 * PI * E) + logdet))
}

/// Auxiliary `U = X_c + k·(c·S)` where `X_c` carries power `αP` and the remaining
/// `(1-α)P` is sent in independent layers. `k` multiplies the state as it enters
/// an output with unit fading, so `k = αP/(αP+1)` is the dirty-paper choice there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearAssignment {
    pub k: f64,
    pub alpha: f64,
}

impl LinearAssignment {
    pub fn costa(p: f64) -> Self {
        LinearAssignment {
            k: p / (p + 1.0),
            alpha: 1.0,
        }
    }
}

/// Joint law of `(X, S, U, Y_1..Y_M)` with sources `X_c, X_p, S, Z_1..Z_M`.
fn assignment_law(p: f64, c2: f64, a: &[f64], asg: LinearAssignment) -> Result<JointGaussian> {
    require_nonneg("P", p)?;
    require_nonneg("c2", c2)?;
    if !(0.0..=1.0).contains(&asg.alpha) {
        return Err(invalid("alpha", asg.alpha, "must lie in [0, 1]"));
    }
    if !asg.k.is_finite() {
        return Err(invalid("k", asg.k, "must be finite"));
    }
    let c = c2.sqrt();
    let m = a.len();
    let mut names = vec!["X".to_string(), "S".to_string(), "U".to_string()];
    names.extend((1..=m).map(|i| format!("Y{i}")));
    let cols = 3 + m;
    let mut l = DMatrix::zeros(3 + m, cols);
    l[(0, 0)] = 1.0;
    l[(0, 1)] = 1.0;
    l[(1, 2)] = 1.0;
    l[(2, 0)] = 1.0;
    l[(2, 2)] = asg.k * c;
    for (i, &ai) in a.iter().enumerate() {
        l[(3 + i, 0)] = 1.0;
        l[(3 + i, 1)] = 1.0;
        l[(3 + i, 2)] = c * ai;
        l[(3 + i, 3 + i)] = 1.0;
    }
    let mut var = vec![asg.alpha * p, (1.0 - asg.alpha) * p, 1.0];
    var.extend(std::iter::repeat(1.0).take(m));
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    JointGaussian::from_sources(&refs, l, &var)
}

/// `I(Y;U) - I(U;S)` for a single output `Y = X + cS + Z`.
pub fn gp_rate_gaussian(p: f64, c2: f64, asg: LinearAssignment) -> Result<f64> {
    let law = assignment_law(p, c2, &[1.0], asg)?;
    Ok(law.mutual_information(&["Y1"], &["U"])? - law.mutual_information(&["U"], &["S"])?)
}

/// Plug-in estimate of `I(Y;U) - I(U;S)` from `n` seeded channel uses: the
/// sample covariance of `(X, S, U, Y)` replaces the exact one.
pub fn gp_rate_empirical(p: f64, c2: f64, asg: LinearAssignment, n: usize, seed: u64) -> Result<f64> {
    require_nonneg("P", p)?;
    require_nonneg("c2", c2)?;
    if n < 8 {
        return Err(invalid("n", n as f64, "need at least 8 samples"));
    }
    let spec = ChannelSpec::new(1, p, c2.sqrt(), CovarianceMatrix::identity(1))?;
    let x = sample_inputs(p, n, seed);
    let s = sample_states(&spec, n, seed.wrapping_add(1))?;
    let y = sample_outputs(&spec, &x, &s, seed.wrapping_add(2), NoiseMode::Independent)?;
    let kc = asg.k * spec.c;
    let data = DMatrix::from_fn(n, 4, |i, j| match j {
        0 => x[i],
        1 => s[(i, 0)],
        2 => x[i] + kc * s[(i, 0)],
        _ => y[(i, 0)],
    });
    let cov = CovarianceMatrix::symmetric(sample_covariance(&data))?;
    let law = JointGaussian::new(["X", "S", "U", "Y"].map(String::from).to_vec(), cov)?;
    Ok(law.mutual_information(&["Y"], &["U"])? - law.mutual_information(&["U"], &["S"])?)
}

/// Common-message rate `h(U|S) - max_m h(U|Y_m)` when receiver m sees gain `c·a_m`.
pub fn compound_common_rate(p: f64, c2: f64, a: &[f64], asg: LinearAssignment) -> Result<f64> {
    if a.is_empty() {
        return Err(invalid("a", f64::NAN, "need at least one receiver"));
    }
    let law = assignment_law(p, c2, a, asg)?;
    let h_us = law.conditional_entropy(&["U"], &["S"])?;
    let mut worst = f64::NEG_INFINITY;
    for i in 1..=a.len() {
        worst = worst.max(law.conditional_entropy(&["U"], &[&format!("Y{i}")])?);
    }
    Ok(h_us - worst)
}

/// Superposition rate for independent states: common codeword decoded under
/// state and private interference, private layers dirty-paper coded and time-shared.
pub fn wrdp_superposition_rate(p: f64, c2: f64, m: usize, alpha: f64) -> Result<f64> {
    if m == 0 {
        return Err(invalid("M", 0.0, "need at least one receiver"));
    }
    let common = if alpha * p > 0.0 {
        let law = assignment_law(p, c2, &[1.0], LinearAssignment { k: 0.0, alpha })?;
        law.mutual_information(&["U"], &["Y1"])?
    } else {
        0.0
    };
    let pp = (1.0 - alpha) * p;
    let private = if pp > 0.0 {
        gp_rate_gaussian(pp, c2, LinearAssignment::costa(pp))?
    } else {
        0.0
    };
    Ok(common + private / m as f64)
}

/// Best point of an exhaustive `(α, k)` search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleOptimum {
    pub rate: f64,
    pub alpha: f64,
    pub k: f64,
    pub common: f64,
    pub private: f64,
}

/// Two-layer scheme for fading gains `a`: common layer via
/// [`compound_common_rate`], private layer `(1/2M)log(1+(1-α)P)`.
pub fn optimize_inner_2wsfd(
    p: f64,
    c2: f64,
    a: &[f64],
    alpha_grid: &[f64],
    k_grid: &[f64],
) -> Result<OracleOptimum> {
    if alpha_grid.is_empty() || k_grid.is_empty() {
        return Err(invalid("grid", 0.0, "alpha and k grids must be non-empty"));
    }
    let mf = a.len() as f64;
    let mut best: Option<OracleOptimum> = None;
    for &alpha in alpha_grid {
        let private = lg(1.0 + (1.0 - alpha) * p) / (2.0 * mf);
        let mut cand = Vec::with_capacity(k_grid.len());
        if alpha * p > 0.0 {
            for &k in k_grid {
                cand.push((k, compound_common_rate(p, c2, a, LinearAssignment { k, alpha })?));
            }
        } else {
            cand.push((0.0, 0.0));
        }
        for (k, common) in cand {
            let rate = common + private;
            if best.is_none_or(|b| rate > b.rate) {
                best = Some(OracleOptimum {
                    rate,
                    alpha,
                    k,
                    common,
                    private,
                });
            }
        }
    }
    Ok(best.expect("grids are non-empty"))
}

/// Default search grid for `k`: 401 points spanning `[min(0, a_min) - ½, max(1, a_max) + ½]`.
pub fn default_k_grid(a: &[f64]) -> Vec<f64> {
    let lo = a.iter().copied().fold(0.0, f64::min) - 0.5;
    let hi = a.iter().copied().fold(1.0, f64::max) + 0.5;
    let n = 401;
    let mut g: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    g.push(0.0);
    g.sort_by(f64::total_cmp);
    g.dedup();
    g
}

/// Conditional variance of the m-th difference given the first m-1 under the
/// tridiagonal covariance with 2 on the diagonal and -1 beside it: `(m+1)/m`.
pub fn tridiag_cond_variance(m: usize) -> Result<f64> {
    if m == 0 {
        return Err(invalid("m", 0.0, "must be at least 1"));
    }
    Ok((m as f64 + 1.0) / m as f64)
}

/// The tridiagonal matrix itself, for numerical checks.
pub fn tridiag_difference_cov(m: usize) -> DMatrix<f64> {
    DMatrix::from_fn(m, m, |i, j| match i.abs_diff(j) {
        0 => 2.0,
        1 => -1.0,
        _ => 0.0,
    })
}

fn check_mrc(c2: f64, a: &[f64], m: usize) -> Result<()> {
    require_nonneg("c2", c2)?;
    if m < 3 || m > a.len() {
        return Err(invalid("m", m as f64, format!("must lie in [3, {}]", a.len())));
    }
    Ok(())
}

/// `Σ_{j=2}^{m-1} c²a_j²` with 1-based receiver indices.
fn mrc_sum(c2: f64, a: &[f64], m: usize) -> f64 {
    a[1..m - 1].iter().map(|v| c2 * v * v).sum()
}

/// Error variance of the maximum-ratio estimate of `S` from receivers 2..m-1.
pub fn mrc_sigma_hat(c2: f64, a: &[f64], m: usize) -> Result<f64> {
    check_mrc(c2, a, m)?;
    let s = mrc_sum(c2, a, m);
    if s == 0.0 {
        return Err(Error::Singular("no state energy at receivers 2..m-1".into()));
    }
    Ok(1.0 / s)
}

/// Per-receiver slack term of the strong-fading converse.
pub fn kappa_m(p: f64, c2: f64, a: &[f64], m: usize) -> Result<f64> {
    require_nonneg("P", p)?;
    check_mrc(c2, a, m)?;
    let s = mrc_sum(c2, a, m);
    if s == 0.0 {
        return Err(Error::Singular("no state energy at receivers 2..m-1".into()));
    }
    let am2 = c2 * a[m - 1] * a[m - 1];
    Ok(0.5 * lg((s + 1.0) / s * ((p + 1.0) * s + am2) / (s + am2)) + 0.5 * lg(m as f64 - 1.0))
}

fn strong_beta(c2: f64, a2: f64) -> f64 {
    let t = c2 * a2 * a2;
    t / (t + 2.0)
}

/// Residual output power at receiver 3 given receiver 2's observation, as a
/// function of the input–state correlation `ρ_XS`.
pub fn strong_conditional_power(p: f64, c2: f64, a2: f64, a3: f64, rho_xs: f64) -> f64 {
    let c = c2.sqrt();
    let lin = rho_xs * p.sqrt() + c * a3;
    p + c2 * a3 * a3 + 2.0 * c * a3 * rho_xs * p.sqrt() + 1.0 - strong_beta(c2, a2) * lin * lin
}

/// `½log(2πe · power)` for [`strong_conditional_power`].
pub fn strong_conditional_entropy(p: f64, c2: f64, a2: f64, a3: f64, rho_xs: f64) -> f64 {
    0.5 * lg(strong_conditional_power(p, c2, a2, a3, rho_xs)) + 0.5 * lg(2.0 * PI * E)
}

/// Maximizing correlation `2a₃/(c√P a₂²)`.
pub fn rho_xs_star(p: f64, c2: f64, a2: f64, a3: f64) -> f64 {
    2.0 * a3 / (c2.sqrt() * p.sqrt() * a2 * a2)
}

/// Maximum of [`strong_conditional_entropy`] over unconstrained `ρ_XS`.
pub fn strong_conditional_entropy_max(p: f64, a2: f64, a3: f64) -> f64 {
    0.5 * lg(p + 1.0 + 2.0 * a3 * a3 / (a2 * a2)) + 0.5 * lg(2.0 * PI * E)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds_wrdp::wrdp_inner_param_m;
    use crate::bounds_wsfd::{rcr_alpha_grid, wsfd_inner_rcr_2, wsfd_inner_wdp_2};
    use crate::channel_model::{det_ccdp_es_principal, equicorrelated};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn unit_variance_entropy() {
        let h = gaussian_entropy(&DMatrix::identity(1, 1)).unwrap();
        assert_abs_diff_eq!(h, 2.047095585180641, epsilon = 1e-12);
        assert!(gaussian_entropy(&DMatrix::zeros(1, 1)).is_err());
    }

    #[test]
    fn dirty_paper_choice_recovers_clean_rate() {
        for &p in &[0.1, 1.0, 15.0, 1e3, 1e6] {
            for &c in &[0.1, 1.0, 10.0] {
                let r = gp_rate_gaussian(p, c * c, LinearAssignment::costa(p)).unwrap();
                assert_abs_diff_eq!(r, 0.5 * (1.0 + p).log2(), epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn zero_k_treats_state_as_noise() {
        let r = gp_rate_gaussian(3.0, 1.0, LinearAssignment { k: 0.0, alpha: 1.0 }).unwrap();
        assert_abs_diff_eq!(r, 0.660964047443681173, epsilon = 1e-12);
        let full = gp_rate_gaussian(3.0, 4.0, LinearAssignment { k: 1.0, alpha: 1.0 }).unwrap();
        assert!(full <= 1.0 + 1e-12);
    }

    #[test]
    fn compound_rate_reduces_to_single_receiver() {
        let asg = LinearAssignment { k: 0.4, alpha: 1.0 };
        let a = compound_common_rate(5.0, 2.0, &[1.0], asg).unwrap();
        let b = gp_rate_gaussian(5.0, 2.0, asg).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-12);
    }

    #[test]
    fn mismatched_precoding_loses_against_second_receiver() {
        let (p, c2, a) = (15.0, 16.0, 1.5);
        let r = compound_common_rate(p, c2, &[1.0, a], LinearAssignment::costa(p)).unwrap();
        assert!(r < 2.0);
        assert!(r >= wsfd_inner_wdp_2(p, c2, a).unwrap().value - 1e-12);
        // For antipodal gains the closed form is exact.
        let r = compound_common_rate(100.0, 5.0, &[-1.0, 1.0], LinearAssignment::costa(100.0)).unwrap();
        assert_abs_diff_eq!(r, wsfd_inner_wdp_2(100.0, 5.0, -1.0).unwrap().value, epsilon = 1e-9);
    }

    #[test]
    fn superposition_oracle_matches_closed_form() {
        for &(p, c2, m, al) in &[(15.0, 16.0, 2, 0.3), (7.0, 4.0, 2, 0.9), (100.0, 50.0, 4, 0.5), (3.0, 0.5, 3, 1.0), (3.0, 0.5, 3, 0.0)] {
            let o = wrdp_superposition_rate(p, c2, m, al).unwrap();
            assert_abs_diff_eq!(o, wrdp_inner_param_m(p, c2, m, al).unwrap(), epsilon = 1e-9);
        }
    }

    #[test]
    fn oracle_search_dominates_closed_forms() {
        let alpha: Vec<f64> = (0..=40).map(|i| i as f64 / 40.0).collect();
        for &(p, c2, a) in &[(15.0, 16.0, 1.5), (100.0, 10.0, -1.0), (3.0, 1.0, 1.1)] {
            let best = optimize_inner_2wsfd(p, c2, &[1.0, a], &alpha, &default_k_grid(&[1.0, a])).unwrap();
            let rcr = alpha
                .iter()
                .filter(|&&al| al < 1.0)
                .map(|&al| wsfd_inner_rcr_2(p, c2, a, al).unwrap().value)
                .fold(0.0, f64::max);
            assert!(best.rate >= rcr - 1e-9, "{best:?} vs {rcr}");
        }
        let best = optimize_inner_2wsfd(15.0, 16.0, &[1.0, 1.0], &alpha, &default_k_grid(&[1.0])).unwrap();
        assert!(best.rate >= 2.0 - 1e-3);
        let best = optimize_inner_2wsfd(15.0, 0.0, &[1.0, 3.0], &alpha, &[0.0, 0.7]).unwrap();
        assert_abs_diff_eq!(best.rate, 2.0, epsilon = 1e-12);
        assert!(rcr_alpha_grid().len() == 512);
    }

    #[test]
    fn monte_carlo_estimate_converges() {
        let (p, c2) = (3.0, 4.0);
        for asg in [LinearAssignment::costa(p), LinearAssignment { k: 0.3, alpha: 1.0 }] {
            let exact = gp_rate_gaussian(p, c2, asg).unwrap();
            let reps: Vec<f64> = (0..12u64)
                .map(|s| gp_rate_empirical(p, c2, asg, 100_000, 1000 + 7 * s).unwrap())
                .collect();
            let mean = reps.iter().sum::<f64>() / reps.len() as f64;
            let sd = (reps.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (reps.len() - 1) as f64).sqrt();
            assert!((reps[0] - exact).abs() <= 3.0 * sd, "{} vs {exact} (sd {sd})", reps[0]);
            assert!((mean - exact).abs() <= 3.0 * sd / (reps.len() as f64).sqrt() + 1e-4);
        }
    }

    #[test]
    fn tridiagonal_conditional_variance() {
        for m in 1..=12usize {
            let cov = tridiag_difference_cov(m);
            let names: Vec<String> = (0..m).map(|i| format!("D{i}")).collect();
            let jg = JointGaussian::new(names.clone(), CovarianceMatrix::new(cov).unwrap()).unwrap();
            let given: Vec<&str> = names[..m - 1].iter().map(String::as_str).collect();
            let v = jg.conditional_covariance(&[&names[m - 1]], &given).unwrap()[(0, 0)];
            assert_abs_diff_eq!(v, tridiag_cond_variance(m).unwrap(), epsilon = 1e-10);
        }
    }

    #[test]
    fn mrc_and_kappa_values() {
        assert_abs_diff_eq!(mrc_sigma_hat(4.0, &[0.0, 1.0, 2.0], 3).unwrap(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(kappa_m(3.0, 4.0, &[0.0, 1.0, 2.0], 3).unwrap(), 1.0, epsilon = 1e-12);
        assert!(kappa_m(3.0, 4.0, &[0.0, 1.0], 2).is_err());
    }

    #[test]
    fn strong_correlation_maximizer() {
        let (p, c2, a2, a3) = (3.0, 16.0, 1.0, 2.0);
        let star = rho_xs_star(p, c2, a2, a3);
        assert!(star.abs() < 1.0);
        let n = 200_001;
        let (mut best, mut arg) = (f64::NEG_INFINITY, 0.0);
        for i in 0..n {
            let r = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
            let h = strong_conditional_entropy(p, c2, a2, a3, r);
            if h > best {
                (best, arg) = (h, r);
            }
        }
        assert!((arg - star).abs() <= 2.0 / (n - 1) as f64);
        assert_abs_diff_eq!(best, strong_conditional_entropy_max(p, a2, a3), epsilon = 1e-6);
    }

    proptest! {
        #[test]
        fn principal_determinant_via_eigenvalues(m in 1usize..=8, rho in -0.14f64..0.999) {
            let det: f64 = equicorrelated(m, rho).symmetric_eigenvalues().iter().product();
            let closed = det_ccdp_es_principal(m, rho).unwrap();
            prop_assert!((det - closed).abs() <= 1e-9 * closed.abs());
        }

        #[test]
        fn conditioning_reduces_entropy(p in 0.1f64..100.0, c2 in 0.0f64..100.0, k in -1.0f64..2.0) {
            let law = assignment_law(p, c2, &[1.0, 2.0], LinearAssignment { k, alpha: 1.0 }).unwrap();
            let h = law.entropy(&["U"]).unwrap();
            prop_assert!(law.conditional_entropy(&["U"], &["Y1"]).unwrap() <= h + 1e-12);
            prop_assert!(law.conditional_entropy(&["U"], &["Y1", "Y2"]).unwrap()
                <= law.conditional_entropy(&["U"], &["Y1"]).unwrap() + 1e-9);
        }

        #[test]
        fn costa_is_best_linear_choice(p in 0.1f64..100.0, c2 in 0.01f64..100.0, k in -1.0f64..2.0) {
            let best = gp_rate_gaussian(p, c2, LinearAssignment::costa(p)).unwrap();
            let r = gp_rate_gaussian(p, c2, LinearAssignment { k, alpha: 1.0 }).unwrap();
            prop_assert!(r <= best + 1e-9);
        }
    }
}
