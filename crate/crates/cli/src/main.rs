use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ccdp::bounds_ccdp_es::{
    ccdp_unequal_inner_2, ccdp_unequal_outer_2, ccdpes_inner_2, ccdpes_inner_m, ccdpes_outer_2,
    ccdpes_outer_2_printed, ccdpes_outer_m, ccdpes_outer_m_printed,
};
use ccdp::bounds_wrdp::{
    lapidoth_inner_2, lapidoth_outer_2, lapidoth_outer_m, wrdp_alpha_star_m, wrdp_inner_2, wrdp_inner_m,
    wrdp_inner_param_m, wrdp_outer_2, wrdp_outer_m, wrdp_outer_m_printed,
};
use ccdp::bounds_wsfd::{
    strong_fading_check, wffd_outer_antipodal, wsfd_inner_2, wsfd_inner_timeshare, wsfd_outer_2,
    wsfd_outer_canonical_2, wsfd_outer_raw_2, wsfd_outer_strong, wsfd_outer_strong_v2, FadingVector,
};
use ccdp::channel_model::{
    cov_ccdp_es, cov_wrdp, cov_wsfd, sample_inputs, sample_outputs, sample_states, ChannelSpec, NoiseMode,
};
use ccdp::gaussian_oracle::{
    default_k_grid, gp_rate_gaussian, optimize_inner_2wsfd, wrdp_superposition_rate, LinearAssignment,
};
use ccdp::harness::lemmas::z_scores;
use ccdp::harness::report::{sig10, FLAG_PRINTED};
use ccdp::harness::sweeps::{check_strong_spec, Model};
use ccdp::harness::{
    consistency_sweep, gap_sweep_ccdpes, gap_sweep_strong, gap_sweep_wrdp2, gap_sweep_wrdp_m, gap_sweep_wsfd2,
    lemma_validation, render, with_thread_limit, Format, GapReport, SweepGrid,
};
use ccdp::lindet::{lindet_diagram, lindet_overlap, lindet_params_with, BitUnits};
use ccdp::{Error, RateBound};

/// Capacity bounds, gap sweeps and oracles for compound dirty-paper channels.
#[derive(Parser)]
#[command(name = "ccdp", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inner and outer bounds at one parameter point.
    Bounds(Params),
    /// Run the sweeps for a model and write the full report.
    Sweep(SweepArgs),
    /// Like `sweep`, but exit 1 when a canonical gap claim fails.
    Gap(SweepArgs),
    /// Brute-force Gaussian rate computations.
    Oracle(Params),
    /// Linear deterministic picture of the fading-dirt channel.
    Lindet(LindetArgs),
    /// Monte Carlo checks of the channel statistics and the reduction lemmas.
    Simulate(Params),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Wrdp,
    Wsfd,
    CcdpEs,
    CcdpUneq,
    Wffd,
    Lapidoth,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Wrdp => Model::Wrdp,
            ModelArg::Wsfd => Model::Wsfd,
            ModelArg::CcdpEs => Model::CcdpEs,
            ModelArg::CcdpUneq => Model::CcdpUneq,
            ModelArg::Wffd => Model::Wffd,
            ModelArg::Lapidoth => Model::Lapidoth,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct Params {
    #[arg(long, value_enum, default_value = "wrdp")]
    model: ModelArg,
    #[arg(long = "P", default_value_t = 1.0)]
    p: f64,
    /// State power c².
    #[arg(long = "c2", default_value_t = 1.0)]
    c2: f64,
    #[arg(long = "M", default_value_t = 2)]
    m: usize,
    /// Comma-separated fading gains; a single value v means a = [1, v].
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    rho: f64,
    #[arg(long = "Q", default_value_t = 1.0)]
    q: f64,
    #[arg(long)]
    gamma: Option<f64>,
    /// Comma-separated power splits.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<f64>,
    #[arg(long)]
    printed: bool,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    n: usize,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "wrdp")]
    model: ModelArg,
    /// Grid file; axes it does not set keep their defaults.
    #[arg(long)]
    grid: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// List the records whose printed formula breaks the claim.
    #[arg(long)]
    printed: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitsArg {
    Printed,
    Amplitude,
}

#[derive(Args)]
struct LindetArgs {
    #[arg(long = "P")]
    p: f64,
    /// State gain c (not squared).
    #[arg(long)]
    c: f64,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, value_enum, default_value = "printed")]
    units: UnitsArg,
    #[arg(long)]
    out: Option<PathBuf>,
    /// `json` for a machine-readable report; the text diagram otherwise.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

enum Failure {
    /// A canonical claim does not hold.
    Claim(String),
    /// Bad input or a violated precondition.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out = Result<(), Failure>;

/// Rounds every float to 10 significant digits.
fn tidy(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => json!(sig10(n.as_f64().unwrap())),
        Value::Array(a) => Value::Array(a.into_iter().map(tidy).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, tidy(v))).collect()),
        other => other,
    }
}

fn print_json(v: Value) {
    let s = serde_json::to_string_pretty(&tidy(v)).expect("values serialize");
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{s}");
}

fn parse_list(s: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| Failure::Usage(format!("`{t}` is not a number"))))
        .collect()
}

fn bound_json(b: &RateBound) -> Value {
    json!({ "value": b.value, "branch": b.branch.as_str(), "clamped": b.clamped })
}

fn pair(model: &str, params: Value, inner: RateBound, outer: RateBound, extra: Value) -> Value {
    let mut v = json!({
        "model": model,
        "params": params,
        "inner": bound_json(&inner),
        "outer": bound_json(&outer),
        "gap": outer.value - inner.value,
    });
    if let (Value::Object(o), Value::Object(e)) = (&mut v, extra) {
        o.extend(e);
    }
    v
}

fn printed_extra(printed: RateBound, inner: f64, canonical: f64, force: bool) -> Value {
    if force || printed.value != canonical {
        json!({ "printed_outer": bound_json(&printed), "printed_gap": printed.value - inner })
    } else {
        json!({})
    }
}

fn fading_gains(a: &Option<String>) -> Result<Vec<f64>, Failure> {
    let a = a.as_deref().ok_or_else(|| Failure::Usage("--a is required for this model".into()))?;
    let v = parse_list(a)?;
    Ok(if v.len() == 1 { vec![1.0, v[0]] } else { v })
}

fn cmd_bounds(p: &Params) -> Out {
    let (pp, c2, m) = (p.p, p.c2, p.m);
    let v = match p.model {
        ModelArg::Wrdp => {
            let params = json!({ "P": pp, "c2": c2, "M": m });
            if m == 2 {
                let (i, o) = (wrdp_inner_2(pp, c2)?, wrdp_outer_2(pp, c2)?);
                pair("wrdp", params, i, o, json!({ "scheme": "superposition" }))
            } else {
                let (i, o) = (wrdp_inner_m(pp, c2, m)?, wrdp_outer_m(pp, c2, m)?);
                let extra = printed_extra(wrdp_outer_m_printed(pp, c2, m)?, i.value, o.value, p.printed);
                pair("wrdp", params, i, o, extra)
            }
        }
        ModelArg::Wsfd => {
            let a = fading_gains(&p.a)?;
            if a.len() == 2 && a[0] == 1.0 && p.gamma.is_none() {
                let av = a[1];
                let inner = wsfd_inner_2(pp, c2, av)?;
                let outer = wsfd_outer_canonical_2(pp, c2, av)?;
                let raw = wsfd_outer_raw_2(pp, c2, av)?;
                let mut extra = json!({ "scheme": inner.scheme.as_str(), "alpha": inner.alpha, "raw_outer": raw.value });
                if av.abs() >= 1.0 {
                    let pe = printed_extra(wsfd_outer_2(pp, c2, av)?, inner.bound.value, outer.value, p.printed);
                    if let (Value::Object(o), Value::Object(e)) = (&mut extra, pe) {
                        o.extend(e);
                    }
                }
                pair("wsfd", json!({ "P": pp, "c2": c2, "a": a }), inner.bound, outer, extra)
            } else {
                let fv = FadingVector::new(a)?;
                let outer = match p.gamma {
                    Some(g) => wsfd_outer_strong_v2(pp, c2, &fv, g)?,
                    None => wsfd_outer_strong(pp, c2, &fv)?,
                };
                let inner = wsfd_inner_timeshare(pp, fv.len())?;
                let params = json!({ "P": pp, "c2": c2, "a": fv.as_slice(), "gamma": p.gamma });
                pair("wsfd", params, inner, outer, json!({ "scheme": "time_sharing" }))
            }
        }
        ModelArg::CcdpEs => {
            let params = json!({ "P": pp, "c2": c2, "rho": p.rho, "M": m });
            let (i, o, pr) = if m == 2 {
                (ccdpes_inner_2(pp, c2, p.rho)?, ccdpes_outer_2(pp, c2, p.rho)?, ccdpes_outer_2_printed(pp, c2, p.rho)?)
            } else {
                (
                    ccdpes_inner_m(pp, c2, p.rho, m)?,
                    ccdpes_outer_m(pp, c2, p.rho, m)?,
                    ccdpes_outer_m_printed(pp, c2, p.rho, m)?,
                )
            };
            let extra = printed_extra(pr, i.value, o.value, p.printed);
            pair("ccdp-es", params, i, o, extra)
        }
        ModelArg::CcdpUneq => {
            let inner = ccdp_unequal_inner_2(pp, c2, p.q)?;
            let outer = ccdp_unequal_outer_2(pp, c2, p.q)?;
            let claimed = c2 * p.q.sqrt() >= pp + 1.0;
            let extra = json!({ "scheme": inner.scheme.as_str(), "in_claimed_regime": claimed });
            pair("ccdp-uneq", json!({ "P": pp, "c2": c2, "Q": p.q }), inner.bound, outer, extra)
        }
        ModelArg::Wffd => {
            let inner = wsfd_inner_2(pp, c2, -1.0)?;
            let outer = wffd_outer_antipodal(pp, c2)?;
            let extra = json!({ "scheme": inner.scheme.as_str() });
            pair("wffd", json!({ "P": pp, "c2": c2 }), inner.bound, outer, extra)
        }
        ModelArg::Lapidoth => {
            let params = json!({ "P": pp, "c2": c2, "M": m });
            if m == 2 {
                pair("lapidoth", params, lapidoth_inner_2(pp, c2)?, lapidoth_outer_2(pp, c2)?, json!({}))
            } else {
                json!({ "model": "lapidoth", "params": params, "outer": bound_json(&lapidoth_outer_m(pp, c2, m)?) })
            }
        }
    };
    print_json(v);
    Ok(())
}

fn load_grid(path: &Option<PathBuf>) -> Result<SweepGrid, Failure> {
    match path {
        Some(p) => SweepGrid::from_file(p).map_err(|e| match e {
            Error::GridSyntax { line, message } => {
                Failure::Usage(format!("{}:{line}: {message}", p.display()))
            }
            other => Failure::Usage(format!("{}: {other}", p.display())),
        }),
        None => Ok(SweepGrid::default()),
    }
}

fn run_sweeps(model: ModelArg, grid: &SweepGrid) -> Result<Vec<GapReport>, Failure> {
    Ok(match model {
        ModelArg::Wrdp => vec![gap_sweep_wrdp2(grid)?, gap_sweep_wrdp_m(grid)?],
        ModelArg::Wsfd => {
            let mut v = vec![gap_sweep_wsfd2(grid)?];
            if !grid.specs.is_empty() {
                v.push(gap_sweep_strong(&grid.specs)?);
            }
            v
        }
        ModelArg::CcdpEs => {
            let mut r = gap_sweep_ccdpes(grid)?;
            r.truncate(2);
            r
        }
        ModelArg::CcdpUneq => vec![gap_sweep_ccdpes(grid)?.pop().expect("three reports")],
        ModelArg::Wffd | ModelArg::Lapidoth => Vec::new(),
    })
}

fn summary(r: &GapReport) -> Value {
    let worst = r.worst().map(|w| {
        json!({ "P": w.p, "c2": w.c2, "a": w.a, "rho": w.rho, "Q": w.q, "M": w.m, "gamma": w.gamma, "gap": w.gap })
    });
    json!({
        "theorem": r.theorem,
        "points": r.records.len(),
        "threshold": r.threshold,
        "max_gap": r.max_gap,
        "argmax": worst,
        "flagged": r.flagged,
        "pass": r.pass,
    })
}

fn pick_format(f: Option<FormatArg>, out: &Option<PathBuf>) -> Format {
    match f {
        Some(FormatArg::Csv) => Format::Csv,
        Some(FormatArg::Json) => Format::Json,
        None if out.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "csv")) => Format::Csv,
        None => Format::Json,
    }
}

fn write_out(path: &Path, bytes: &[u8]) -> Out {
    fs::write(path, bytes).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_sweep(s: &SweepArgs, gate: bool) -> Out {
    let grid = load_grid(&s.grid)?;
    let format = pick_format(s.format, &s.out);
    if matches!(s.model, ModelArg::Wffd | ModelArg::Lapidoth) {
        let rep = with_thread_limit(|| consistency_sweep(&grid, s.model.into()))?;
        let v = serde_json::to_value(&rep).expect("report serializes");
        if let Some(path) = &s.out {
            write_out(path, serde_json::to_string(&v).expect("value serializes").as_bytes())?;
        }
        print_json(json!({ "consistency": { "checked": rep.checked, "violations": rep.violations.len(), "pass": rep.pass } }));
        return if gate && !rep.pass {
            Err(Failure::Claim("inner bound exceeds outer bound".into()))
        } else {
            Ok(())
        };
    }
    let reports = with_thread_limit(|| run_sweeps(s.model, &grid))?;
    let bytes = render(&reports, format)?;
    match &s.out {
        Some(path) => write_out(path, &bytes)?,
        None if !gate => {
            let _ = std::io::stdout().lock().write_all(&bytes);
        }
        None => {}
    }
    if gate || s.out.is_some() {
        let mut v = json!({ "reports": reports.iter().map(summary).collect::<Vec<_>>() });
        if s.printed {
            let flagged: Vec<Value> = reports
                .iter()
                .flat_map(|r| &r.records)
                .filter(|x| x.flag.as_deref() == Some(FLAG_PRINTED))
                .map(|x| json!({ "theorem": x.theorem, "P": x.p, "c2": x.c2, "rho": x.rho, "M": x.m, "printed_gap": x.printed_gap }))
                .collect();
            v["printed_discrepancies"] = json!(flagged);
        }
        print_json(v);
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.theorem.as_str()).collect();
    if gate && !failed.is_empty() {
        return Err(Failure::Claim(format!("gap claim violated: {}", failed.join(", "))));
    }
    Ok(())
}

fn alpha_list(p: &Params) -> Result<Vec<f64>, Failure> {
    match &p.alpha {
        Some(s) => parse_list(s),
        None => Ok((0..=100).map(|i| i as f64 / 100.0).collect()),
    }
}

fn cmd_oracle(p: &Params) -> Out {
    let v = match p.model {
        ModelArg::Wsfd => {
            let a = fading_gains(&p.a)?;
            let k_grid = match p.k {
                Some(k) => vec![k],
                None => default_k_grid(&a),
            };
            let best = optimize_inner_2wsfd(p.p, p.c2, &a, &alpha_list(p)?, &k_grid)?;
            let mut v = json!({
                "model": "wsfd",
                "params": { "P": p.p, "c2": p.c2, "a": a },
                "rate": best.rate, "alpha": best.alpha, "k": best.k,
                "common": best.common, "private": best.private,
            });
            if a.len() == 2 && a[0] == 1.0 {
                v["closed_form_inner"] = json!(wsfd_inner_2(p.p, p.c2, a[1])?.bound.value);
            }
            v
        }
        ModelArg::Wrdp => {
            let alphas = match &p.alpha {
                Some(s) => parse_list(s)?,
                None => vec![1.0 - wrdp_alpha_star_m(p.p, p.c2, p.m)?],
            };
            let rows: Vec<Value> = alphas
                .iter()
                .map(|&al| -> Result<Value, Failure> {
                    Ok(json!({
                        "alpha": al,
                        "oracle": wrdp_superposition_rate(p.p, p.c2, p.m, al)?,
                        "closed_form": wrdp_inner_param_m(p.p, p.c2, p.m, al)?,
                    }))
                })
                .collect::<Result<_, _>>()?;
            let asg = LinearAssignment {
                k: p.k.unwrap_or(p.p / (p.p + 1.0)),
                alpha: 1.0,
            };
            json!({
                "model": "wrdp",
                "params": { "P": p.p, "c2": p.c2, "M": p.m },
                "superposition": rows,
                "single_receiver": { "k": asg.k, "rate": gp_rate_gaussian(p.p, p.c2, asg)? },
            })
        }
        _ => return Err(Failure::Usage("oracle supports --model wrdp or wsfd".into())),
    };
    print_json(v);
    Ok(())
}

fn cmd_lindet(l: &LindetArgs) -> Out {
    let a = parse_list(&l.a)?;
    let units = match l.units {
        UnitsArg::Printed => BitUnits::Printed,
        UnitsArg::Amplitude => BitUnits::Amplitude,
    };
    let spec = lindet_params_with(l.p, l.c, &a, units)?;
    let overlap = lindet_overlap(&spec);
    let verdict = FadingVector::new(a.clone())
        .map_err(Failure::from)
        .map(|fv| strong_fading_check(l.p, l.c * l.c, &fv))
        .map(|r| match r {
            Ok(()) => "PASS".to_string(),
            Err(e) => format!("FAIL ({e})"),
        })?;
    let text = match l.format {
        Some(FormatArg::Json) => {
            let v = json!({ "spec": spec, "overlap": overlap, "strong_fading": verdict });
            serde_json::to_string_pretty(&v).expect("serializes") + "\n"
        }
        _ => format!("{}strong fading: {verdict}\n", lindet_diagram(&spec)),
    };
    match &l.out {
        Some(path) => write_out(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_simulate(p: &Params) -> Out {
    let (m, cov) = match p.model {
        ModelArg::Wrdp => (p.m, cov_wrdp(p.m)?),
        ModelArg::CcdpEs => (p.m, cov_ccdp_es(p.m, p.rho)?),
        ModelArg::Wsfd => {
            let a = fading_gains(&p.a)?;
            (a.len(), cov_wsfd(&a)?)
        }
        _ => return Err(Failure::Usage("simulate supports --model wrdp, wsfd or ccdp-es".into())),
    };
    let spec = ChannelSpec::new(m, p.p, p.c2.sqrt(), cov)?;
    let x = sample_inputs(p.p, p.n, p.seed);
    let s = sample_states(&spec, p.n, p.seed.wrapping_add(1))?;
    let y = sample_outputs(&spec, &x, &s, p.seed.wrapping_add(2), NoiseMode::Independent)?;
    let z = z_scores(&y, &vec![0.0; m], &spec.output_covariance());
    let z_max = z.iter().copied().fold(0.0, f64::max);
    let lemmas = lemma_validation(p.seed, p.n)?;
    let pass = lemmas.pass && z_max < ccdp::harness::lemmas::Z_LIMIT;
    let checks: Vec<Value> = lemmas.checks.iter().map(|c| json!({ "name": c.name, "z_max": c.z_max, "pass": c.pass })).collect();
    print_json(json!({
        "model": Model::from(p.model),
        "params": { "P": p.p, "c2": p.c2, "M": m, "n": p.n, "seed": p.seed },
        "output_covariance": { "z_max": z_max, "pass": z_max < ccdp::harness::lemmas::Z_LIMIT },
        "lemmas": checks,
        "sandwich": { "checked": lemmas.sandwich.checked, "violations": lemmas.sandwich.violations.len() },
        "pass": pass,
    }));
    if pass {
        Ok(())
    } else {
        Err(Failure::Claim("statistical check failed".into()))
    }
}

fn check_strong_grid(grid: &SweepGrid) -> Out {
    for (i, s) in grid.specs.iter().enumerate() {
        check_strong_spec(s).map_err(|e| Failure::Usage(format!("spec {}: {e}", i + 1)))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Bounds(p) => cmd_bounds(p),
        Cmd::Sweep(s) => load_grid(&s.grid).and_then(|g| check_strong_grid(&g)).and_then(|_| cmd_sweep(s, false)),
        Cmd::Gap(s) => load_grid(&s.grid).and_then(|g| check_strong_grid(&g)).and_then(|_| cmd_sweep(s, true)),
        Cmd::Oracle(p) => cmd_oracle(p),
        Cmd::Lindet(l) => cmd_lindet(l),
        Cmd::Simulate(p) => cmd_simulate(p),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claim(msg)) => {
            eprintln!("ccdp: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("ccdp: {msg}");
            ExitCode::from(2)
        }
    }
}
