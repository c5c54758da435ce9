//! Gap sweeps: evaluate an inner/outer pair on every grid point and compare the
//! worst gap with the claimed constant.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::{StrongSpec, SweepGrid};
use super::report::{GapRecord, GapReport, FLAG_LOW_POWER, FLAG_OUTSIDE, GAP_SLACK};
use crate::bounds_ccdp_es::{
    ccdp_unequal_inner_2, ccdp_unequal_outer_2, ccdpes_inner_2, ccdpes_inner_m, ccdpes_outer_2,
    ccdpes_outer_2_printed, ccdpes_outer_m, ccdpes_outer_m_printed,
};
use crate::bounds_wrdp::{
    lapidoth_inner_2, lapidoth_outer_2, wrdp_inner_2, wrdp_inner_m, wrdp_outer_2, wrdp_outer_m,
    wrdp_outer_m_printed,
};
use crate::bounds_wsfd::{
    strong_fading_check, strong_fading_check_v2, wffd_outer_antipodal, wsfd_inner_2, wsfd_inner_timeshare,
    wsfd_outer_2, wsfd_outer_canonical_2, wsfd_outer_raw_2, wsfd_outer_strong, wsfd_outer_strong_v2,
    FadingVector,
};
use crate::channel_model::ccdp_es_feasible;
use crate::error::{invalid, Error, Result};
use crate::rate::{lg, RateBound, Scheme};

pub const WRDP_2: &str = "wrdp_2";
pub const WRDP_M: &str = "wrdp_m";
pub const WSFD_2: &str = "wsfd_2";
pub const WSFD_STRONG: &str = "wsfd_strong";
pub const CCDPES_2: &str = "ccdpes_2";
pub const CCDPES_M: &str = "ccdpes_m";
pub const CCDP_UNEQUAL_2: &str = "ccdp_unequal_2";

fn pc2_points(grid: &SweepGrid) -> Result<Vec<(f64, f64)>> {
    grid.validate()?;
    let (ps, cs) = (grid.p.values(), grid.c2.values());
    Ok(ps.iter().flat_map(|&p| cs.iter().map(move |&c| (p, c))).collect())
}

fn fill(mut r: GapRecord, inner: RateBound, outer: RateBound) -> GapRecord {
    r.inner = inner.value;
    r.outer = outer.value;
    r.gap = outer.value - inner.value;
    r.branch_in = inner.branch;
    r.branch_out = outer.branch;
    r
}

/// Two receivers, independent states; claimed gap 1.
pub fn gap_sweep_wrdp2(grid: &SweepGrid) -> Result<GapReport> {
    let recs: Vec<GapRecord> = pc2_points(grid)?
        .into_par_iter()
        .map(|(p, c2)| -> Result<GapRecord> {
            let mut r = GapRecord::new(WRDP_2, p, c2);
            r.m = Some(2);
            r.scheme = Some(Scheme::Superposition);
            Ok(fill(r, wrdp_inner_2(p, c2)?, wrdp_outer_2(p, c2)?))
        })
        .collect::<Result<_>>()?;
    Ok(GapReport::assemble(WRDP_2, grid.describe(), Some(1.0), recs, |_| 1.0))
}

/// M receivers, independent states; claimed gap 2.25. Printed outer recorded only.
pub fn gap_sweep_wrdp_m(grid: &SweepGrid) -> Result<GapReport> {
    let pts = pc2_points(grid)?;
    let jobs: Vec<(usize, f64, f64)> = grid
        .m
        .iter()
        .flat_map(|&m| pts.iter().map(move |&(p, c)| (m, p, c)))
        .collect();
    let recs: Vec<GapRecord> = jobs
        .into_par_iter()
        .map(|(m, p, c2)| -> Result<GapRecord> {
            let mut r = GapRecord::new(WRDP_M, p, c2);
            r.m = Some(m);
            r.scheme = Some(Scheme::Superposition);
            let r = fill(r, wrdp_inner_m(p, c2, m)?, wrdp_outer_m(p, c2, m)?);
            Ok(r.with_printed(wrdp_outer_m_printed(p, c2, m)?.value, 2.25))
        })
        .collect::<Result<_>>()?;
    Ok(GapReport::assemble(WRDP_M, grid.describe(), Some(2.25), recs, |_| 2.25))
}

/// Two receivers, state gains 1 and `a`; claimed gap 4 against the canonical outer
/// bound `min{raw converse, ½log(1+P)}`. Points with |a| < 1 are skipped.
pub fn gap_sweep_wsfd2(grid: &SweepGrid) -> Result<GapReport> {
    let pts = pc2_points(grid)?;
    let jobs: Vec<(f64, f64, f64)> = grid
        .a
        .values()
        .into_iter()
        .filter(|a| a.abs() >= 1.0)
        .flat_map(|a| pts.iter().map(move |&(p, c)| (a, p, c)))
        .collect();
    if jobs.is_empty() {
        return Err(invalid("a", f64::NAN, "no fading value with |a| >= 1 in the grid"));
    }
    let recs: Vec<GapRecord> = jobs
        .into_par_iter()
        .map(|(a, p, c2)| -> Result<GapRecord> {
            let mut r = GapRecord::new(WSFD_2, p, c2);
            r.a = Some(vec![1.0, a]);
            r.m = Some(2);
            let inner = wsfd_inner_2(p, c2, a)?;
            r.scheme = Some(inner.scheme);
            let mut r = fill(r, inner.bound, wsfd_outer_canonical_2(p, c2, a)?);
            // The raw converse is what the printed branches simplify.
            let raw = wsfd_outer_raw_2(p, c2, a)?.value;
            let printed = wsfd_outer_2(p, c2, a)?.value;
            r = r.with_printed(printed, 4.0);
            if r.flag.is_none() && raw - r.inner > 4.0 + GAP_SLACK {
                r.flag = Some(super::report::FLAG_PRINTED.into());
            }
            if r.flag.is_none() && (p <= 3.0 || c2 <= 3.0) && r.gap > 4.0 + GAP_SLACK {
                r.flag = Some(FLAG_LOW_POWER.into());
            }
            Ok(r)
        })
        .collect::<Result<_>>()?;
    Ok(GapReport::assemble(WSFD_2, grid.describe(), Some(4.0), recs, |_| 4.0))
}

/// `½log M + 2`, plus `½log γ` under the generalized conditions.
pub fn strong_threshold(m: usize, gamma: Option<f64>) -> f64 {
    0.5 * lg(m as f64) + 2.0 + gamma.map_or(0.0, |g| 0.5 * lg(g))
}

/// Checks one spec against its condition set.
pub fn check_strong_spec(s: &StrongSpec) -> Result<()> {
    match s.gamma {
        Some(g) => strong_fading_check_v2(s.p, s.c2, &s.a, g),
        None => strong_fading_check(s.p, s.c2, &s.a),
    }
}

/// Strong-fading converse against time sharing. Any spec violating its
/// conditions rejects the whole sweep with the violated condition.
pub fn gap_sweep_strong(specs: &[StrongSpec]) -> Result<GapReport> {
    if specs.is_empty() {
        return Err(invalid("specs", 0.0, "no strong-fading specs to sweep"));
    }
    for (i, s) in specs.iter().enumerate() {
        check_strong_spec(s).map_err(|e| match e {
            Error::StrongFading(msg) => Error::StrongFading(format!("spec {}: {msg}", i + 1)),
            other => other,
        })?;
    }
    let recs: Vec<GapRecord> = specs
        .par_iter()
        .map(|s| -> Result<GapRecord> {
            let m = s.a.len();
            let outer = match s.gamma {
                Some(g) => wsfd_outer_strong_v2(s.p, s.c2, &s.a, g)?,
                None => wsfd_outer_strong(s.p, s.c2, &s.a)?,
            };
            let mut r = GapRecord::new(WSFD_STRONG, s.p, s.c2);
            r.a = Some(s.a.as_slice().to_vec());
            r.m = Some(m);
            r.gamma = s.gamma;
            r.scheme = Some(Scheme::TimeSharing);
            Ok(fill(r, wsfd_inner_timeshare(s.p, m)?, outer))
        })
        .collect::<Result<_>>()?;
    Ok(GapReport::assemble(WSFD_STRONG, format!("{} specs", specs.len()), None, recs, |r| {
        strong_threshold(r.m.unwrap_or(2), r.gamma)
    }))
}

/// `count` seeded specs satisfying the basic strong-fading conditions, M ∈ {2..5}.
pub fn random_strong_specs(seed: u64, count: usize) -> Vec<StrongSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = rng.random_range(2..=5usize);
        let p = 2f64.powf(rng.random_range(-1.0..14.0));
        let a2 = 2f64.powf(rng.random_range(-3.0..3.0));
        let c2 = (p + 1.0) / (a2 * a2) * (1.0 + 1e-6 + rng.random_range(0.0..8.0));
        let mut a = vec![0.0, a2];
        for _ in 2..m {
            let prev: f64 = *a.last().unwrap();
            a.push(prev * (p + 1.0).sqrt() * (1.0 + 1e-6 + rng.random_range(0.0..2.0)));
        }
        let Ok(a) = FadingVector::new(a) else { continue };
        let s = StrongSpec { p, c2, a, gamma: None };
        if check_strong_spec(&s).is_ok() {
            out.push(s);
        }
    }
    out
}

/// `count` seeded specs for the generalized conditions with γ ∈ [0.5, 4], M ∈ {2, 3}.
pub fn random_strong_specs_v2(seed: u64, count: usize) -> Vec<StrongSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let gamma: f64 = rng.random_range(0.5..=4.0);
        let p = 2f64.powf(rng.random_range(-1.0..12.0f64));
        let m = rng.random_range(2..=3usize);
        let d2 = 2f64.powf(rng.random_range(-2.0..2.0));
        let a = if m == 2 {
            let a1 = rng.random_range(-20.0..20.0);
            vec![a1, a1 + d2]
        } else {
            // |a_3| small next to Δ_2, Δ_3 large next to Δ_2.
            let a3 = rng.random_range(-1.0..1.0) * d2 / gamma.sqrt();
            let d3 = ((gamma * p).sqrt() * d2).max(d2) * (1.0 + 1e-6 + rng.random_range(0.0..3.0));
            let a1 = a3 - d3;
            vec![a1, a1 + d2, a3]
        };
        let floor = (p + 1.0).max(a[1] * a[1]) / (d2 * d2);
        let c2 = floor * (1.0 + 1e-6 + rng.random_range(0.0..8.0));
        let Ok(a) = FadingVector::new(a) else { continue };
        let s = StrongSpec {
            p,
            c2,
            a,
            gamma: Some(gamma),
        };
        if check_strong_spec(&s).is_ok() {
            out.push(s);
        }
    }
    out
}

/// Equicorrelated states: two-receiver (claimed gap 1), M-receiver (2.25), and
/// unequal variances (2, claimed only for `c²√Q ≥ P+1`). Canonical outer bounds
/// gate; printed forms are recorded and flagged when they break the claim.
pub fn gap_sweep_ccdpes(grid: &SweepGrid) -> Result<Vec<GapReport>> {
    let pts = pc2_points(grid)?;
    let pts = &pts;
    let desc = grid.describe();

    let jobs2: Vec<(f64, f64, f64)> = grid
        .rho_values(2)
        .into_iter()
        .filter(|&r| ccdp_es_feasible(2, r))
        .flat_map(|rho| pts.iter().map(move |&(p, c)| (rho, p, c)))
        .collect();
    let two: Vec<GapRecord> = jobs2
        .into_par_iter()
        .map(|(rho, p, c2)| -> Result<GapRecord> {
            let mut r = GapRecord::new(CCDPES_2, p, c2);
            r.rho = Some(rho);
            r.m = Some(2);
            r.scheme = Some(Scheme::Superposition);
            let r = fill(r, ccdpes_inner_2(p, c2, rho)?, ccdpes_outer_2(p, c2, rho)?);
            Ok(r.with_printed(ccdpes_outer_2_printed(p, c2, rho)?.value, 1.0))
        })
        .collect::<Result<_>>()?;

    let jobs_m: Vec<(usize, f64, f64, f64)> = grid
        .m
        .iter()
        .filter(|&&m| m >= 2)
        .flat_map(|&m| {
            grid.rho_values(m)
                .into_iter()
                .filter(move |&r| ccdp_es_feasible(m, r))
                .flat_map(move |rho| pts.iter().map(move |&(p, c)| (m, rho, p, c)))
        })
        .collect();
    let many: Vec<GapRecord> = jobs_m
        .into_par_iter()
        .map(|(m, rho, p, c2)| -> Result<GapRecord> {
            let mut r = GapRecord::new(CCDPES_M, p, c2);
            r.rho = Some(rho);
            r.m = Some(m);
            r.scheme = Some(Scheme::Superposition);
            let r = fill(r, ccdpes_inner_m(p, c2, rho, m)?, ccdpes_outer_m(p, c2, rho, m)?);
            Ok(r.with_printed(ccdpes_outer_m_printed(p, c2, rho, m)?.value, 2.25))
        })
        .collect::<Result<_>>()?;

    let qs = grid.q.values();
    let jobs_q: Vec<(f64, f64, f64)> = qs
        .iter()
        .flat_map(|&q| pts.iter().map(move |&(p, c)| (q, p, c)))
        .collect();
    let uneq: Vec<GapRecord> = jobs_q
        .into_par_iter()
        .map(|(q, p, c2)| -> Result<GapRecord> {
            let mut r = GapRecord::new(CCDP_UNEQUAL_2, p, c2);
            r.q = Some(q);
            r.m = Some(2);
            let inner = ccdp_unequal_inner_2(p, c2, q)?;
            r.scheme = Some(inner.scheme);
            let outer = ccdp_unequal_outer_2(p, c2, q)?;
            let mut r = fill(r, inner.bound, outer);
            r.printed_outer = Some(outer.value);
            r.printed_gap = Some(r.gap);
            if c2 * q.sqrt() < p + 1.0 {
                r.asserted = false;
                if r.gap > 2.0 + GAP_SLACK {
                    r.flag = Some(FLAG_OUTSIDE.into());
                }
            }
            Ok(r)
        })
        .collect::<Result<_>>()?;

    Ok(vec![
        GapReport::assemble(CCDPES_2, desc.clone(), Some(1.0), two, |_| 1.0),
        GapReport::assemble(CCDPES_M, desc.clone(), Some(2.25), many, |_| 2.25),
        GapReport::assemble(CCDP_UNEQUAL_2, desc, Some(2.0), uneq, |_| 2.0),
    ])
}

/// Channel family selector shared with the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Wrdp,
    Wsfd,
    CcdpEs,
    CcdpUneq,
    Wffd,
    Lapidoth,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub pairing: String,
    pub params: String,
    pub inner: f64,
    pub outer: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub model: Model,
    pub checked: usize,
    pub violations: Vec<Violation>,
    pub pass: bool,
}

/// One inner/outer pairing at one point.
pub struct Pairing {
    pub name: String,
    pub params: String,
    pub inner: f64,
    pub outer: f64,
}

/// `inner ≤ outer + 1e-9` for every pairing.
pub fn check_pairings(model: Model, pairs: Vec<Pairing>) -> ConsistencyReport {
    let checked = pairs.len();
    let violations: Vec<Violation> = pairs
        .into_iter()
        .filter(|x| !(x.inner <= x.outer + GAP_SLACK))
        .map(|x| Violation {
            pairing: x.name,
            params: x.params,
            inner: x.inner,
            outer: x.outer,
        })
        .collect();
    ConsistencyReport {
        model,
        checked,
        pass: violations.is_empty(),
        violations,
    }
}

fn pairings(model: Model, grid: &SweepGrid, p: f64, c2: f64) -> Result<Vec<Pairing>> {
    let mut v = Vec::new();
    let mut push = |name: &str, params: String, inner: f64, outer: f64| {
        v.push(Pairing {
            name: name.into(),
            params,
            inner,
            outer,
        })
    };
    let at = format!("P={p} c2={c2}");
    match model {
        Model::Wrdp => {
            push(WRDP_2, at.clone(), wrdp_inner_2(p, c2)?.value, wrdp_outer_2(p, c2)?.value);
            for &m in grid.m.iter().filter(|&&m| m >= 2) {
                push(WRDP_M, format!("{at} M={m}"), wrdp_inner_m(p, c2, m)?.value, wrdp_outer_m(p, c2, m)?.value);
            }
        }
        Model::Lapidoth => {
            push("lapidoth_2", at.clone(), lapidoth_inner_2(p, c2)?.value, lapidoth_outer_2(p, c2)?.value);
        }
        Model::Wsfd => {
            for a in grid.a.values().into_iter().filter(|a| a.abs() >= 1.0) {
                let inner = wsfd_inner_2(p, c2, a)?.bound.value;
                push(WSFD_2, format!("{at} a={a}"), inner, wsfd_outer_canonical_2(p, c2, a)?.value);
            }
        }
        Model::Wffd => {
            let inner = wsfd_inner_2(p, c2, -1.0)?.bound.value;
            push("wffd_antipodal", at.clone(), inner, wffd_outer_antipodal(p, c2)?.value);
        }
        Model::CcdpEs => {
            for rho in grid.rho_values(2).into_iter().filter(|&r| ccdp_es_feasible(2, r)) {
                push(
                    CCDPES_2,
                    format!("{at} rho={rho}"),
                    ccdpes_inner_2(p, c2, rho)?.value,
                    ccdpes_outer_2(p, c2, rho)?.value,
                );
            }
            for &m in grid.m.iter().filter(|&&m| m >= 2) {
                for rho in grid.rho_values(m).into_iter().filter(|&r| ccdp_es_feasible(m, r)) {
                    push(
                        CCDPES_M,
                        format!("{at} rho={rho} M={m}"),
                        ccdpes_inner_m(p, c2, rho, m)?.value,
                        ccdpes_outer_m(p, c2, rho, m)?.value,
                    );
                }
            }
        }
        Model::CcdpUneq => {
            for q in grid.q.values() {
                push(
                    CCDP_UNEQUAL_2,
                    format!("{at} Q={q}"),
                    ccdp_unequal_inner_2(p, c2, q)?.bound.value,
                    ccdp_unequal_outer_2(p, c2, q)?.value,
                );
            }
        }
    }
    Ok(v)
}

/// Achievable rates never exceed converse bounds, for every canonical pairing of `model`.
pub fn consistency_sweep(grid: &SweepGrid, model: Model) -> Result<ConsistencyReport> {
    let per_point: Vec<Vec<Pairing>> = pc2_points(grid)?
        .into_par_iter()
        .map(|(p, c2)| pairings(model, grid, p, c2))
        .collect::<Result<_>>()?;
    Ok(check_pairings(model, per_point.into_iter().flatten().collect()))
}
