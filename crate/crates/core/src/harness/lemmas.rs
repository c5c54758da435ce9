//! Monte Carlo checks of the channel reduction and the state-gain split, and the
//! capacity-sandwich consequence of the split at the level of the bounds.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds_ccdp_es::{ccdpes_inner_2, ccdpes_outer_2};
use crate::bounds_wrdp::{wrdp_inner_2, wrdp_inner_m, wrdp_outer_2, wrdp_outer_m};
use crate::bounds_wsfd::{wsfd_inner_2, wsfd_outer_canonical_2};
use crate::channel_model::{
    cov_wrdp, reduce_generalized, sample_covariance, sample_inputs, sample_outputs, sample_states,
    split_state_gain, ChannelSpec, CovarianceMatrix, GeneralizedChannelSpec, NoiseMode,
};
use crate::error::{invalid, Result};

/// Largest |z| at which a statistical check still passes.
pub const Z_LIMIT: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZCheck {
    pub name: String,
    /// |z| of every mean and covariance entry compared.
    pub z: Vec<f64>,
    pub z_max: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SandwichCheck {
    pub checked: usize,
    /// Points where an inner bound at gain c beats an outer bound at the smaller gain.
    pub violations: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub seed: u64,
    pub n: usize,
    pub checks: Vec<ZCheck>,
    pub sandwich: SandwichCheck,
    pub pass: bool,
}

/// z-scores of sample means and covariances against a Gaussian model with
/// the given mean and covariance. Under Gaussianity
/// `Var(Σ̂_ij) ≈ (Σ_ii Σ_jj + Σ_ij²)/n`.
pub fn z_scores(data: &DMatrix<f64>, mean: &[f64], cov: &DMatrix<f64>) -> Vec<f64> {
    let n = data.nrows() as f64;
    let d = data.ncols();
    let mut z = Vec::new();
    let means = data.row_mean();
    for j in 0..d {
        z.push(((means[j] - mean[j]) / (cov[(j, j)] / n).sqrt()).abs());
    }
    let s = sample_covariance(data);
    for i in 0..d {
        for j in i..d {
            let sd = ((cov[(i, i)] * cov[(j, j)] + cov[(i, j)].powi(2)) / n).sqrt();
            z.push(((s[(i, j)] - cov[(i, j)]) / sd).abs());
        }
    }
    z
}

fn zcheck(name: &str, z: Vec<f64>) -> ZCheck {
    let z_max = z.iter().copied().fold(0.0, f64::max);
    ZCheck {
        name: name.into(),
        pass: z_max < Z_LIMIT,
        z,
        z_max,
    }
}

/// Generalized channel drawn from the seed: M = 3, nonzero means, noise level
/// and a random full-rank state covariance.
pub fn random_generalized(seed: u64) -> Result<GeneralizedChannelSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = 3;
    let b = DMatrix::from_fn(m, m, |_, _| rng.random_range(-1.5..1.5));
    let cov = &b * b.transpose() + DMatrix::identity(m, m) * 0.5;
    Ok(GeneralizedChannelSpec {
        m,
        p_prime: rng.random_range(1.0..20.0),
        mu_z: (0..m).map(|_| rng.random_range(-3.0..3.0)).collect(),
        sigma2: rng.random_range(0.5..4.0),
        mu_s: (0..m).map(|_| rng.random_range(-3.0..3.0)).collect(),
        sigma_s_prime: CovarianceMatrix::symmetric(cov)?,
    })
}

fn generalized_outputs(g: &GeneralizedChannelSpec, n: usize, seed: u64) -> Result<DMatrix<f64>> {
    let m = g.m;
    let shape = ChannelSpec::new(m, g.p_prime, 1.0, g.sigma_s_prime.clone())?;
    let x = sample_inputs(g.p_prime, n, seed);
    let s = sample_states(&shape, n, seed + 1)?;
    let sd = g.sigma2.sqrt();
    let z = sample_states(&ChannelSpec::new(m, 0.0, 1.0, CovarianceMatrix::identity(m))?, n, seed + 2)?;
    Ok(DMatrix::from_fn(n, m, |i, j| {
        x[i] + g.mu_s[j] + s[(i, j)] + g.mu_z[j] + sd * z[(i, j)]
    }))
}

fn generalized_covariance(g: &GeneralizedChannelSpec) -> DMatrix<f64> {
    let m = g.m;
    DMatrix::from_element(m, m, g.p_prime) + g.sigma_s_prime.matrix() + DMatrix::identity(m, m) * g.sigma2
}

/// Generalized outputs mapped forward match the reduced channel; reduced
/// outputs mapped back match the generalized channel.
pub fn validate_reduction(g: &GeneralizedChannelSpec, n: usize, seed: u64) -> Result<Vec<ZCheck>> {
    let (spec, map) = reduce_generalized(g)?;
    let m = g.m;
    let y_prime = generalized_outputs(g, n, seed)?;
    let fwd = DMatrix::from_fn(n, m, |i, j| map.forward(j, y_prime[(i, j)]));
    let z1 = z_scores(&fwd, &vec![0.0; m], &spec.output_covariance());

    let x = sample_inputs(spec.p, n, seed + 10);
    let s = sample_states(&spec, n, seed + 11)?;
    let y = sample_outputs(&spec, &x, &s, seed + 12, NoiseMode::Independent)?;
    let back = DMatrix::from_fn(n, m, |i, j| map.inverse(j, y[(i, j)]));
    let mean: Vec<f64> = (0..m).map(|j| g.mu_s[j] + g.mu_z[j]).collect();
    let z2 = z_scores(&back, &mean, &generalized_covariance(g));
    Ok(vec![zcheck("reduction_forward", z1), zcheck("reduction_inverse", z2)])
}

/// With `S = √γ S₁ + √(1-γ) S₂`, the output with the revealed part removed,
/// `Y - c√(1-γ)S₂`, has the statistics of the channel with gain `c√γ`.
pub fn validate_gain_split(spec: &ChannelSpec, gamma: f64, n: usize, seed: u64) -> Result<ZCheck> {
    let split = split_state_gain(spec, gamma)?;
    let m = spec.m;
    let x = sample_inputs(spec.p, n, seed);
    let s1 = sample_states(spec, n, seed + 1)?;
    let s2 = sample_states(spec, n, seed + 2)?;
    let s = s1 * gamma.sqrt() + &s2 * (1.0 - gamma).sqrt();
    let y = sample_outputs(spec, &x, &s, seed + 3, NoiseMode::Independent)?;
    let g = spec.c * (1.0 - gamma).sqrt();
    let resid = DMatrix::from_fn(n, m, |i, j| y[(i, j)] - g * s2[(i, j)]);
    let z = z_scores(&resid, &vec![0.0; m], &split.reduced.output_covariance());
    Ok(zcheck(&format!("gain_split_gamma_{gamma}"), z))
}

/// Inner bounds at gain c never exceed canonical outer bounds at `c√γ`, γ ≤ 1.
pub fn sandwich_check() -> Result<SandwichCheck> {
    let ps = [0.5, 1.0, 3.0, 15.0, 100.0, 1e4];
    let cs = [0.1, 0.5, 1.0, 2.0, 4.0, 16.0, 100.0, 1e4, 1e6];
    let gammas = [0.01, 0.1, 0.25, 0.5, 0.9, 1.0];
    let mut checked = 0;
    let mut violations = Vec::new();
    for &p in &ps {
        for &c2 in &cs {
            for &g in &gammas {
                let lo = c2 * g;
                let mut pairs: Vec<(&str, f64, f64)> = vec![
                    ("wrdp_2", wrdp_inner_2(p, c2)?.value, wrdp_outer_2(p, lo)?.value),
                    ("wrdp_m3", wrdp_inner_m(p, c2, 3)?.value, wrdp_outer_m(p, lo, 3)?.value),
                    ("ccdpes_2", ccdpes_inner_2(p, c2, 0.3)?.value, ccdpes_outer_2(p, lo, 0.3)?.value),
                ];
                for a in [-1.0, 1.5, 3.0] {
                    pairs.push(("wsfd_2", wsfd_inner_2(p, c2, a)?.bound.value, wsfd_outer_canonical_2(p, lo, a)?.value));
                }
                for (name, inner, outer) in pairs {
                    checked += 1;
                    if inner > outer + 1e-9 {
                        violations.push(format!("{name} P={p} c2={c2} gamma={g}: {inner} > {outer}"));
                    }
                }
            }
        }
    }
    Ok(SandwichCheck {
        checked,
        pass: violations.is_empty(),
        violations,
    })
}

/// All statistical lemma checks at one seed and sample size (n ≥ 10⁴).
pub fn lemma_validation(seed: u64, n: usize) -> Result<LemmaReport> {
    if n < 10_000 {
        return Err(invalid("n", n as f64, "need at least 10^4 samples"));
    }
    let mut checks = validate_reduction(&random_generalized(seed)?, n, seed.wrapping_mul(31).wrapping_add(1))?;
    let wrdp = ChannelSpec::new(2, 4.0, 2.0, cov_wrdp(2)?)?;
    for (k, gamma) in [0.25, 0.6, 1.0].into_iter().enumerate() {
        checks.push(validate_gain_split(&wrdp, gamma, n, seed.wrapping_mul(31).wrapping_add(100 + 10 * k as u64))?);
    }
    let sandwich = sandwich_check()?;
    let pass = sandwich.pass && checks.iter().all(|c| c.pass);
    Ok(LemmaReport {
        seed,
        n,
        checks,
        sandwich,
        pass,
    })
}
