//! Sweep grids and the plain-text grid file format.
//!
//! ```text
//! # comment
//! P  = log 0.5 1048576 43
//! c2 = 1 4 16
//! a  = lin 1 3 5
//! M  = 2 3 4
//! spec = 3 16 0,1,2
//! spec = 15 100 -10,-9,0.5 2
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bounds_wsfd::FadingVector;
use crate::channel_model::ccdp_es_range;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Range {
        min: f64,
        max: f64,
        points: usize,
        scale: Scale,
    },
    List(Vec<f64>),
}

impl Axis {
    pub fn log(min: f64, max: f64, points: usize) -> Self {
        Axis::Range {
            min,
            max,
            points,
            scale: Scale::Log,
        }
    }

    pub fn lin(min: f64, max: f64, points: usize) -> Self {
        Axis::Range {
            min,
            max,
            points,
            scale: Scale::Linear,
        }
    }

    fn validate(&self, name: &str) -> std::result::Result<(), String> {
        match self {
            Axis::List(v) if v.is_empty() => Err(format!("axis {name} is empty")),
            Axis::List(v) if v.iter().any(|x| !x.is_finite()) => Err(format!("axis {name} has a non-finite value")),
            Axis::List(_) => Ok(()),
            Axis::Range { min, max, points, scale } => {
                if *points == 0 {
                    return Err(format!("axis {name} has zero points"));
                }
                if !min.is_finite() || !max.is_finite() || max < min {
                    return Err(format!("axis {name} needs finite min <= max"));
                }
                if *scale == Scale::Log && *min <= 0.0 {
                    return Err(format!("log axis {name} must be strictly positive"));
                }
                Ok(())
            }
        }
    }

    /// Points in ascending order. Log axes interpolate the base-2 exponent, so
    /// powers of two at integer exponents come out exact.
    pub fn values(&self) -> Vec<f64> {
        match self {
            Axis::List(v) => v.clone(),
            Axis::Range { min, max, points, scale } => {
                let n = *points;
                if n == 1 {
                    return vec![*min];
                }
                let t = |i: usize| i as f64 / (n - 1) as f64;
                match scale {
                    Scale::Linear => (0..n).map(|i| min + (max - min) * t(i)).collect(),
                    Scale::Log => {
                        let (lo, hi) = (min.log2(), max.log2());
                        (0..n).map(|i| (lo + (hi - lo) * t(i)).exp2()).collect()
                    }
                }
            }
        }
    }
}

/// Strong-fading instance; `gamma` selects the generalized condition set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrongSpec {
    pub p: f64,
    pub c2: f64,
    pub a: FadingVector,
    pub gamma: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub p: Axis,
    pub c2: Axis,
    pub a: Axis,
    /// `None` uses 17 evenly spaced feasible correlations per M, plus ρ = 0.
    pub rho: Option<Axis>,
    pub q: Axis,
    pub m: Vec<usize>,
    pub specs: Vec<StrongSpec>,
}

/// Fading values `±{1, 1.1, 1.25, 1.5, 2, 3, 5, 10, 30}`.
pub const DEFAULT_A: [f64; 9] = [1.0, 1.1, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0, 30.0];
pub const DEFAULT_M: [usize; 5] = [2, 3, 4, 8, 16];
pub const DEFAULT_Q: [f64; 6] = [1.0, 1.5, 2.0, 4.0, 10.0, 100.0];

impl Default for SweepGrid {
    fn default() -> Self {
        let mut a: Vec<f64> = DEFAULT_A.iter().flat_map(|&v| [-v, v]).collect();
        a.sort_by(f64::total_cmp);
        SweepGrid {
            p: Axis::log(0.5, 1048576.0, 43),
            c2: Axis::log(0.0625, 16777216.0, 57),
            a: Axis::List(a),
            rho: None,
            q: Axis::List(DEFAULT_Q.to_vec()),
            m: DEFAULT_M.to_vec(),
            specs: Vec::new(),
        }
    }
}

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        let err = |message: String| Error::GridSyntax { line: 0, message };
        for (name, ax) in [("P", &self.p), ("c2", &self.c2), ("a", &self.a), ("Q", &self.q)] {
            ax.validate(name).map_err(err)?;
        }
        if let Some(r) = &self.rho {
            r.validate("rho").map_err(err)?;
        }
        if self.m.is_empty() {
            return Err(err("axis M is empty".into()));
        }
        Ok(())
    }

    /// Correlations swept for `m` receivers.
    pub fn rho_values(&self, m: usize) -> Vec<f64> {
        match &self.rho {
            Some(ax) => ax.values(),
            None => {
                let (lo, hi) = ccdp_es_range(m);
                let mut v = Axis::lin(lo, hi, 17).values();
                v.push(0.0);
                v.sort_by(f64::total_cmp);
                v.dedup();
                v
            }
        }
    }

    /// Short description stored in reports.
    pub fn describe(&self) -> String {
        fn ax(a: &Axis) -> String {
            match a {
                Axis::List(v) => format!("list({})", v.len()),
                Axis::Range { min, max, points, scale } => {
                    let s = if *scale == Scale::Log { "log" } else { "lin" };
                    format!("{s}({min},{max},{points})")
                }
            }
        }
        let rho = self.rho.as_ref().map_or("feasible(17)".to_string(), ax);
        format!(
            "P={} c2={} a={} rho={} Q={} M={:?} specs={}",
            ax(&self.p),
            ax(&self.c2),
            ax(&self.a),
            rho,
            ax(&self.q),
            self.m,
            self.specs.len()
        )
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Parses a grid file; missing axes keep their defaults. `M` accepts a list only.
    pub fn parse(text: &str) -> Result<Self> {
        let mut g = SweepGrid::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let fail = |message: String| Error::GridSyntax { line, message };
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, val) = body
                .split_once('=')
                .ok_or_else(|| fail(format!("expected `key = value`, got `{body}`")))?;
            let (key, val) = (key.trim(), val.trim());
            match key {
                "P" => g.p = parse_axis(val).map_err(fail)?,
                "c2" => g.c2 = parse_axis(val).map_err(fail)?,
                "a" => g.a = parse_axis(val).map_err(fail)?,
                "rho" => g.rho = Some(parse_axis(val).map_err(fail)?),
                "Q" => g.q = parse_axis(val).map_err(fail)?,
                "M" => {
                    g.m = numbers(val)
                        .map_err(fail)?
                        .into_iter()
                        .map(|v| {
                            if v >= 1.0 && v.fract() == 0.0 {
                                Ok(v as usize)
                            } else {
                                Err(fail(format!("M must be a positive integer, got {v}")))
                            }
                        })
                        .collect::<Result<_>>()?
                }
                "spec" => g.specs.push(parse_spec(val).map_err(fail)?),
                other => return Err(fail(format!("unknown key `{other}`"))),
            }
            let check = |ax: &Axis, name| ax.validate(name).map_err(fail);
            match key {
                "P" => check(&g.p, "P")?,
                "c2" => check(&g.c2, "c2")?,
                "a" => check(&g.a, "a")?,
                "Q" => check(&g.q, "Q")?,
                "rho" => check(g.rho.as_ref().unwrap(), "rho")?,
                "M" if g.m.is_empty() => return Err(fail("axis M is empty".into())),
                _ => {}
            }
        }
        Ok(g)
    }
}

fn numbers(s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| format!("`{t}` is not a number")))
        .collect()
}

fn parse_axis(s: &str) -> std::result::Result<Axis, String> {
    let mut words = s.split_whitespace();
    let scale = match words.next() {
        Some("log") => Scale::Log,
        Some("lin") => Scale::Linear,
        Some(_) => return Ok(Axis::List(numbers(s)?)),
        None => return Err("empty value".into()),
    };
    let rest: Vec<&str> = words.collect();
    if rest.len() != 3 {
        return Err(format!("range needs `min max points`, got {} fields", rest.len()));
    }
    let f = |t: &str| t.parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
    let points = rest[2]
        .parse::<usize>()
        .map_err(|_| format!("`{}` is not a point count", rest[2]))?;
    Ok(Axis::Range {
        min: f(rest[0])?,
        max: f(rest[1])?,
        points,
        scale,
    })
}

fn parse_spec(s: &str) -> std::result::Result<StrongSpec, String> {
    let w: Vec<&str> = s.split_whitespace().collect();
    if !(3..=4).contains(&w.len()) {
        return Err("spec needs `P c2 a1,a2,... [gamma]`".into());
    }
    let f = |t: &str| t.parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
    let a = FadingVector::new(numbers(w[2])?).map_err(|e| e.to_string())?;
    Ok(StrongSpec {
        p: f(w[0])?,
        c2: f(w[1])?,
        a,
        gamma: w.get(3).map(|t| f(t)).transpose()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_axes() {
        let g = SweepGrid::default();
        let p = g.p.values();
        assert_eq!(p.len(), 43);
        assert_eq!(p[0], 0.5);
        assert_eq!(p[2], 1.0);
        assert_eq!(p[42], 1048576.0);
        let c = g.c2.values();
        assert_eq!(c.len(), 57);
        assert_eq!(c[8], 1.0);
        assert_eq!(g.a.values().len(), 18);
        assert_eq!(g.rho_values(2).len(), 17);
        assert!(g.rho_values(3).contains(&0.0));
        assert_eq!(g.rho_values(3)[0], -0.5);
    }

    #[test]
    fn parse_file() {
        let g = SweepGrid::parse(
            "# grid\nP = log 0.5 1048576 43\nc2 = 1, 4 16\nM = 2 3\nspec = 3 16 0,1,2\nspec = 15 100 -10,-9,0.5 2\n",
        )
        .unwrap();
        assert_eq!(g.p.values().len(), 43);
        assert_eq!(g.c2.values(), vec![1.0, 4.0, 16.0]);
        assert_eq!(g.m, vec![2, 3]);
        assert_eq!(g.specs.len(), 2);
        assert_eq!(g.specs[1].gamma, Some(2.0));
    }

    #[test]
    fn parse_errors_carry_line() {
        for (text, line) in [
            ("P = 1\nc2 = log 0 1 3\n", 2),
            ("\n\nfoo = 1\n", 3),
            ("P = log 1 2\n", 1),
            ("M = 2.5\n", 1),
            ("P 1 2\n", 1),
            ("c2 = 1 x\n", 1),
        ] {
            match SweepGrid::parse(text) {
                Err(Error::GridSyntax { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
