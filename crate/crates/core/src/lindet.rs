//! Binary linear-deterministic picture of the fading-dirt channel.
//!
//! Receiver m sees `Y = S̄^{k-n_p} x ⊕ S̄^{k-n_a,m} s` over GF(2), where `S̄`
//! shifts a bit vector down by one position. Bits are indexed 1 (most
//! significant) to k. Negative gains lose their sign: counts use `|c·a_m|`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// How signal levels are converted to bit counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BitUnits {
    /// `n_p = ⌈log₂P⌉`, `n_a = ⌈log₂|c·a|⌉`: input as power, state as amplitude.
    #[default]
    Printed,
    /// `n_p = ⌈½log₂P⌉`: input and state both measured in amplitude.
    Amplitude,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinDetSpec {
    pub n_p: u32,
    pub n_a: Vec<u32>,
    pub k: u32,
}

impl LinDetSpec {
    pub fn new(n_p: u32, n_a: Vec<u32>) -> Self {
        let k = n_a.iter().copied().fold(n_p, u32::max);
        LinDetSpec { n_p, n_a, k }
    }
}

/// Bits, most significant first.
pub type BitVector = Vec<u8>;

fn ceil_bits(x: f64) -> u32 {
    if x <= 0.0 {
        0
    } else {
        // Exact powers of two must not round up through float noise.
        (x - 1e-12).ceil().max(0.0) as u32
    }
}

pub fn lindet_params(p: f64, c: f64, a: &[f64]) -> Result<LinDetSpec> {
    lindet_params_with(p, c, a, BitUnits::Printed)
}

pub fn lindet_params_with(p: f64, c: f64, a: &[f64], units: BitUnits) -> Result<LinDetSpec> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(invalid("P", p, "must be positive"));
    }
    if !c.is_finite() || a.iter().any(|v| !v.is_finite()) {
        return Err(invalid("c", c, "gains must be finite"));
    }
    let lp = match units {
        BitUnits::Printed => p.log2(),
        BitUnits::Amplitude => 0.5 * p.log2(),
    };
    let n_a = a
        .iter()
        .map(|&am| {
            let g = (c * am).abs();
            if g <= 1.0 {
                0
            } else {
                ceil_bits(g.log2())
            }
        })
        .collect();
    Ok(LinDetSpec::new(ceil_bits(lp), n_a))
}

/// Keep the top `n` bits of `v` and move them to the bottom of a length-k vector.
fn shift_down(v: &[u8], n: u32) -> impl Iterator<Item = u8> + '_ {
    let k = v.len();
    let n = n as usize;
    (0..k).map(move |i| if i + n >= k { v[i + n - k] } else { 0 })
}

pub fn lindet_output(x: &[u8], s: &[u8], spec: &LinDetSpec, m: usize) -> Result<BitVector> {
    let k = spec.k as usize;
    for v in [x, s] {
        if v.len() != k {
            return Err(Error::ShapeMismatch {
                expected: format!("{k} bits"),
                found: v.len().to_string(),
            });
        }
        if v.iter().any(|&b| b > 1) {
            return Err(invalid("bit", f64::NAN, "entries must be 0 or 1"));
        }
    }
    let na = *spec
        .n_a
        .get(m)
        .ok_or_else(|| invalid("m", m as f64, format!("receiver index must be below {}", spec.n_a.len())))?;
    Ok(shift_down(x, spec.n_p).zip(shift_down(s, na)).map(|(a, b)| a ^ b).collect())
}

/// Inclusive range of state bit indices (1 = most significant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitWindow {
    pub lo: u32,
    pub hi: u32,
}

impl BitWindow {
    fn overlaps(&self, o: &BitWindow) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapReport {
    /// Per receiver, the state bits landing on the same levels as input bits.
    pub windows: Vec<Option<BitWindow>>,
    /// Receiver pairs (0-based) whose windows share a state bit.
    pub collisions: Vec<(usize, usize)>,
    pub disjoint: bool,
}

/// State bit j of receiver m lands on output level `j + k - n_a`; input bits occupy
/// the bottom `n_p` levels, so the colliding state bits are `[n_a-n_p+1, n_a]`.
pub fn lindet_overlap(spec: &LinDetSpec) -> OverlapReport {
    let windows: Vec<Option<BitWindow>> = spec
        .n_a
        .iter()
        .map(|&na| {
            (na > 0 && spec.n_p > 0).then(|| BitWindow {
                lo: na.saturating_sub(spec.n_p) + 1,
                hi: na,
            })
        })
        .collect();
    let mut collisions = Vec::new();
    for i in 0..windows.len() {
        for j in i + 1..windows.len() {
            if let (Some(a), Some(b)) = (windows[i], windows[j]) {
                if a.overlaps(&b) {
                    collisions.push((i, j));
                }
            }
        }
    }
    let disjoint = collisions.is_empty();
    OverlapReport {
        windows,
        collisions,
        disjoint,
    }
}

/// Column diagram: one column per receiver, one row per output level.
/// `x` input only, `s` state only, `*` both, `.` empty.
pub fn lindet_diagram(spec: &LinDetSpec) -> String {
    let k = spec.k;
    let mut out = String::new();
    let _ = writeln!(out, "n_p = {}, k = {}", spec.n_p, k);
    out.push_str("level");
    for m in 0..spec.n_a.len() {
        let _ = write!(out, "  Y{:<3}", m + 1);
    }
    out.truncate(out.trim_end().len());
    out.push('\n');
    for level in 1..=k {
        let _ = write!(out, "{level:>5}");
        for &na in &spec.n_a {
            let inp = level > k - spec.n_p;
            let st = level > k - na;
            let c = match (inp, st) {
                (true, true) => '*',
                (true, false) => 'x',
                (false, true) => 's',
                _ => '.',
            };
            let _ = write!(out, "  {c:<4}");
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    let rep = lindet_overlap(spec);
    out.push_str(if rep.disjoint {
        "collision windows disjoint\n"
    } else {
        "collision windows overlap\n"
    });
    out
}
