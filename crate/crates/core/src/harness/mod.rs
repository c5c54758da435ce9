//! Parameter sweeps, gap verification, lemma validation and report emission.
//!
//! Grid points are evaluated in parallel but collected in grid order, so reports
//! are byte-identical across runs and thread counts.

pub mod grid;
pub mod lemmas;
pub mod report;
pub mod sweeps;

pub use grid::{Axis, Scale, StrongSpec, SweepGrid};
pub use lemmas::{lemma_validation, LemmaReport, ZCheck};
pub use report::{emit_report, render, Format, GapRecord, GapReport};
pub use sweeps::{
    consistency_sweep, gap_sweep_ccdpes, gap_sweep_strong, gap_sweep_wrdp2, gap_sweep_wrdp_m, gap_sweep_wsfd2,
    random_strong_specs, random_strong_specs_v2, ConsistencyReport, Model,
};

/// Environment variable capping sweep parallelism.
pub const THREADS_ENV: &str = "CCDP_THREADS";

/// Runs `f` on a pool limited by `CCDP_THREADS` when set to a positive integer,
/// otherwise on the global pool.
pub fn with_thread_limit<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let limit = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    match limit.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}
