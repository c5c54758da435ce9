//! Channel descriptions, state covariance families and seeded sampling.
//!
//! Receiver m observes `Y_m = X + c·S_m + Z_m` with `E[X²] ≤ P`, unit-variance
//! noise and a zero-mean Gaussian state vector `S ~ N(0, Σ_S)`.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, require_nonneg, require_unit, Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;
/// Eigenvalues down to `-PSD_TOL · λmax` count as zero.
pub const PSD_TOL: f64 = 1e-9;

/// Symmetric positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix(DMatrix<f64>);

impl CovarianceMatrix {
    /// Checks squareness, finiteness, symmetry (relative 1e-12) and PSD.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        let cov = Self::symmetric(m)?;
        cov.check_psd()?;
        Ok(cov)
    }

    /// Like [`CovarianceMatrix::new`] but skips the PSD check.
    pub fn symmetric(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::ShapeMismatch {
                expected: "square matrix".into(),
                found: format!("{}x{}", m.nrows(), m.ncols()),
            });
        }
        if m.iter().any(|v| !v.is_finite()) {
            return Err(invalid("covariance", f64::NAN, "entries must be finite"));
        }
        let scale = m.amax().max(f64::MIN_POSITIVE);
        let asym = (&m - m.transpose()).amax();
        if asym > SYMMETRY_TOL * scale {
            return Err(Error::NotSymmetric { asymmetry: asym });
        }
        let sym = (&m + m.transpose()) * 0.5;
        Ok(CovarianceMatrix(sym))
    }

    pub fn identity(n: usize) -> Self {
        CovarianceMatrix(DMatrix::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn scaled(&self, s: f64) -> Self {
        CovarianceMatrix(&self.0 * s)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.0.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn is_psd(&self) -> bool {
        self.check_psd().is_ok()
    }

    fn check_psd(&self) -> Result<()> {
        if self.dim() == 0 {
            return Ok(());
        }
        let ev = self.eigenvalues();
        let (lo, hi) = (ev[0], ev[ev.len() - 1]);
        if lo < -PSD_TOL * hi.abs().max(lo.abs()).max(f64::MIN_POSITIVE) || hi < 0.0 {
            return Err(Error::NotPsd {
                min_eigenvalue: lo,
                max_eigenvalue: hi,
            });
        }
        Ok(())
    }

    /// Symmetric square root `V Λ^½ Vᵀ`; slightly negative eigenvalues are clipped.
    pub fn sqrt_factor(&self) -> Result<DMatrix<f64>> {
        let n = self.dim();
        let eig = SymmetricEigen::new(self.0.clone());
        let lmax = eig.eigenvalues.iter().fold(0.0_f64, |a, &b| a.max(b));
        let mut root = DMatrix::zeros(n, n);
        for (i, &l) in eig.eigenvalues.iter().enumerate() {
            if l < -PSD_TOL * lmax {
                return Err(Error::NotPsd {
                    min_eigenvalue: l,
                    max_eigenvalue: lmax,
                });
            }
            let s = l.max(0.0).sqrt();
            if s == 0.0 {
                continue;
            }
            let v = eig.eigenvectors.column(i);
            root += (v * v.transpose()) * s;
        }
        Ok(root)
    }
}

/// Compound channel with `m` receivers.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec {
    pub m: usize,
    pub p: f64,
    pub c: f64,
    pub sigma_s: CovarianceMatrix,
}

impl ChannelSpec {
    pub fn new(m: usize, p: f64, c: f64, sigma_s: CovarianceMatrix) -> Result<Self> {
        if m == 0 {
            return Err(invalid("M", 0.0, "need at least one receiver"));
        }
        require_nonneg("P", p)?;
        require_nonneg("c", c)?;
        if sigma_s.dim() != m {
            return Err(Error::ShapeMismatch {
                expected: format!("{m}x{m} state covariance"),
                found: format!("{0}x{0}", sigma_s.dim()),
            });
        }
        sigma_s.check_psd()?;
        Ok(ChannelSpec { m, p, c, sigma_s })
    }

    pub fn c2(&self) -> f64 {
        self.c * self.c
    }

    /// Covariance of `(Y_1..Y_M)` for Gaussian `X` of power `P` and independent noise.
    pub fn output_covariance(&self) -> DMatrix<f64> {
        let m = self.m;
        DMatrix::from_element(m, m, self.p)
            + self.sigma_s.matrix() * self.c2()
            + DMatrix::<f64>::identity(m, m)
    }
}

/// Identity state covariance: independent states at the receivers.
pub fn cov_wrdp(m: usize) -> Result<CovarianceMatrix> {
    if m == 0 {
        return Err(invalid("M", 0.0, "need at least one receiver"));
    }
    Ok(CovarianceMatrix::identity(m))
}

/// Rank-one covariance `a aᵀ` of a single faded state; `a` is sorted first.
pub fn cov_wsfd(a: &[f64]) -> Result<CovarianceMatrix> {
    if a.is_empty() {
        return Err(invalid("a", f64::NAN, "fading vector is empty"));
    }
    if let Some(&bad) = a.iter().find(|v| !v.is_finite()) {
        return Err(invalid("a", bad, "fading coefficients must be finite"));
    }
    let mut s = a.to_vec();
    s.sort_by(f64::total_cmp);
    let v = nalgebra::DVector::from_vec(s);
    Ok(CovarianceMatrix(&v * v.transpose()))
}

/// Feasible correlation range `[lo, hi]` of the equicorrelated family.
pub fn ccdp_es_range(m: usize) -> (f64, f64) {
    if m <= 1 {
        (-1.0, 1.0)
    } else {
        (-1.0 / (m as f64 - 1.0), 1.0)
    }
}

pub fn ccdp_es_feasible(m: usize, rho: f64) -> bool {
    let (lo, hi) = ccdp_es_range(m);
    m >= 1 && rho >= lo && rho <= hi
}

/// Equicorrelated covariance `(1-ρ)I + ρ11ᵀ`.
pub fn cov_ccdp_es(m: usize, rho: f64) -> Result<CovarianceMatrix> {
    if m == 0 {
        return Err(invalid("M", 0.0, "need at least one receiver"));
    }
    if !ccdp_es_feasible(m, rho) {
        let (lo, hi) = ccdp_es_range(m);
        return Err(Error::InfeasibleCorrelation { m, rho, lo, hi });
    }
    Ok(CovarianceMatrix(equicorrelated(m, rho)))
}

pub(crate) fn equicorrelated(m: usize, rho: f64) -> DMatrix<f64> {
    DMatrix::from_fn(m, m, |i, j| if i == j { 1.0 } else { rho })
}

/// Determinant of the leading m×m block of the equicorrelated covariance,
/// `(1-ρ)^m (1 + mρ/(1-ρ))`.
pub fn det_ccdp_es_principal(m: usize, rho: f64) -> Result<f64> {
    if rho == 1.0 {
        return Err(Error::Singular(
            "rho = 1: closed form divides by 1 - rho".into(),
        ));
    }
    let q = 1.0 - rho;
    Ok(q.powi(m as i32) * (1.0 + m as f64 * rho / q))
}

/// Channel with arbitrary input power, noise level and state/noise means.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedChannelSpec {
    pub m: usize,
    pub p_prime: f64,
    pub mu_z: Vec<f64>,
    pub sigma2: f64,
    pub mu_s: Vec<f64>,
    pub sigma_s_prime: CovarianceMatrix,
}

/// Per-receiver affine map `Y_m = (Y'_m - offset_m) / scale` between a
/// generalized channel and its reduced form.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    pub offset: Vec<f64>,
    pub scale: f64,
}

impl AffineMap {
    pub fn forward(&self, m: usize, y_prime: f64) -> f64 {
        (y_prime - self.offset[m]) / self.scale
    }

    pub fn inverse(&self, m: usize, y: f64) -> f64 {
        y * self.scale + self.offset[m]
    }
}

/// Reduces a generalized channel to unit noise and a state covariance whose
/// smallest diagonal entry is 1: `P = P'/σ²`, `c = √(var_min/σ²)`.
pub fn reduce_generalized(g: &GeneralizedChannelSpec) -> Result<(ChannelSpec, AffineMap)> {
    let m = g.m;
    if g.mu_z.len() != m || g.mu_s.len() != m || g.sigma_s_prime.dim() != m {
        return Err(Error::ShapeMismatch {
            expected: format!("length-{m} means and {m}x{m} covariance"),
            found: format!(
                "mu_z {}, mu_s {}, covariance {}",
                g.mu_z.len(),
                g.mu_s.len(),
                g.sigma_s_prime.dim()
            ),
        });
    }
    if !(g.sigma2 > 0.0) || !g.sigma2.is_finite() {
        return Err(invalid("sigma2", g.sigma2, "noise variance must be positive"));
    }
    require_nonneg("P'", g.p_prime)?;
    let diag: Vec<f64> = (0..m).map(|i| g.sigma_s_prime.get(i, i)).collect();
    if let Some(index) = diag.iter().position(|&v| v <= 0.0) {
        return Err(Error::DegenerateState { index });
    }
    let var_min = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let spec = ChannelSpec::new(
        m,
        g.p_prime / g.sigma2,
        (var_min / g.sigma2).sqrt(),
        g.sigma_s_prime.scaled(1.0 / var_min),
    )?;
    let map = AffineMap {
        offset: g.mu_s.iter().zip(&g.mu_z).map(|(s, z)| s + z).collect(),
        scale: g.sigma2.sqrt(),
    };
    Ok((spec, map))
}

/// Splits the state `c·S = c√γ·S₁ + c√(1-γ)·S₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct GainSplit {
    /// Same channel with gain `c√γ`.
    pub reduced: ChannelSpec,
    /// Covariance `(1-γ)c²Σ_S` of the part revealed to the receivers.
    pub genie_cov: CovarianceMatrix,
}

pub fn split_state_gain(spec: &ChannelSpec, gamma: f64) -> Result<GainSplit> {
    require_unit("gamma", gamma)?;
    let reduced = ChannelSpec {
        c: spec.c * gamma.sqrt(),
        ..spec.clone()
    };
    let genie_cov = spec.sigma_s.scaled((1.0 - gamma) * spec.c2());
    Ok(GainSplit { reduced, genie_cov })
}

/// Whether the receivers see independent noise draws or one shared draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseMode {
    #[default]
    Independent,
    Identical,
}

fn standard_normals(rows: usize, cols: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Row-major fill keeps row i identical when `rows` changes.
    let mut out = DMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            out[(i, j)] = rng.sample::<f64, _>(StandardNormal);
        }
    }
    out
}

/// `n` draws of the state vector, one per row.
pub fn sample_states(spec: &ChannelSpec, n: usize, seed: u64) -> Result<DMatrix<f64>> {
    let root = spec.sigma_s.sqrt_factor()?;
    Ok(standard_normals(n, spec.m, seed) * root)
}

/// `n` i.i.d. Gaussian inputs of power `P`.
pub fn sample_inputs(p: f64, n: usize, seed: u64) -> Vec<f64> {
    let sd = p.sqrt();
    standard_normals(n, 1, seed).iter().map(|z| z * sd).collect()
}

/// Outputs `Y = x + c·S + Z`, one row per channel use.
pub fn sample_outputs(
    spec: &ChannelSpec,
    x: &[f64],
    states: &DMatrix<f64>,
    seed: u64,
    noise: NoiseMode,
) -> Result<DMatrix<f64>> {
    let n = x.len();
    if states.nrows() != n || states.ncols() != spec.m {
        return Err(Error::ShapeMismatch {
            expected: format!("{n}x{} states", spec.m),
            found: format!("{}x{}", states.nrows(), states.ncols()),
        });
    }
    let z = match noise {
        NoiseMode::Independent => standard_normals(n, spec.m, seed),
        NoiseMode::Identical => {
            let col = standard_normals(n, 1, seed);
            DMatrix::from_fn(n, spec.m, |i, _| col[(i, 0)])
        }
    };
    Ok(DMatrix::from_fn(n, spec.m, |i, j| {
        x[i] + spec.c * states[(i, j)] + z[(i, j)]
    }))
}

/// Sample covariance (divisor n) of the columns of `data`.
pub fn sample_covariance(data: &DMatrix<f64>) -> DMatrix<f64> {
    let n = data.nrows() as f64;
    let means = data.row_mean();
    let centered = DMatrix::from_fn(data.nrows(), data.ncols(), |i, j| data[(i, j)] - means[j]);
    centered.transpose() * &centered / n
}
