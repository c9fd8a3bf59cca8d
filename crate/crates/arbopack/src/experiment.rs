//! Seeded sweeps over the random model: one record per sampled digraph,
//! one summary row per size, both written as CSV.
//!
//! Reproducibility contract: every cell `(n, trial)` draws from its own
//! stream keyed by `(master_seed, n, trial)`, trials run in parallel but
//! are written in trial order, and all floating-point fields are printed
//! with twelve significant digits. Two runs of the same config produce
//! byte-identical files except for the trailing `wall_time_ms` column.

use crate::digraph::Direction;
use crate::frank::{tau_exact_with_limit, TauCertificate};
use crate::lambda::lambda_of;
use crate::pack::{max_pack, EffortBudget};
use crate::random::{sample_with, trial_rng, RandomError, Regime};
use crate::stats::{delta_star, light_report, StatsError};
use crate::{Scalar, Seed};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config line {line}: {reason}")]
    Config { line: usize, reason: String },
    #[error("config: {0}")]
    ConfigValue(String),
    #[error(transparent)]
    Random(#[from] RandomError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// A sweep description, parsed from `key = value` lines (`#` starts a
/// comment). Required keys: `regime.kind`, its regime parameter where one
/// applies, `n_values`, and `trials_per_n`; everything else has defaults.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub regime: Regime,
    /// Sizes to sweep, strictly increasing.
    pub n_values: Vec<usize>,
    pub trials_per_n: usize,
    pub master_seed: Seed,
    pub epsilon_light: Scalar,
    /// Run the exact enumeration only for `n` up to this bound.
    pub oracle_limit: usize,
    pub budget: EffortBudget,
    pub records_out: PathBuf,
    pub summary_out: PathBuf,
    pub charts_out: Option<PathBuf>,
}

const KNOWN_KEYS: &[&str] = &[
    "regime.kind",
    "regime.h_scale",
    "regime.phi",
    "regime.psi_scale",
    "regime.p_explicit",
    "n_values",
    "trials_per_n",
    "master_seed",
    "epsilon_light",
    "oracle_limit",
    "budget.restarts",
    "budget.exhaustive_limit",
    "records_out",
    "summary_out",
    "charts_out",
];

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ExperimentError> {
        let mut raw: BTreeMap<&'static str, String> = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((key, value)) = body.split_once('=') else {
                return Err(ExperimentError::Config {
                    line: line_no,
                    reason: format!("expected key = value, got {body:?}"),
                });
            };
            let key = key.trim();
            let Some(&known) = KNOWN_KEYS.iter().find(|&&k| k == key) else {
                return Err(ExperimentError::Config {
                    line: line_no,
                    reason: format!("unknown key {key:?}"),
                });
            };
            if raw.insert(known, value.trim().to_string()).is_some() {
                return Err(ExperimentError::Config {
                    line: line_no,
                    reason: format!("duplicate key {key:?}"),
                });
            }
        }
        Self::from_entries(raw)
    }

    pub fn from_file(path: &Path) -> Result<Self, ExperimentError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    fn from_entries(mut raw: BTreeMap<&'static str, String>) -> Result<Self, ExperimentError> {
        fn bad(key: &str, value: &str, want: &str) -> ExperimentError {
            ExperimentError::ConfigValue(format!("{key} = {value:?} is not {want}"))
        }
        fn num<T: std::str::FromStr>(
            raw: &mut BTreeMap<&'static str, String>,
            key: &str,
            want: &str,
        ) -> Result<Option<T>, ExperimentError> {
            match raw.remove(key) {
                None => Ok(None),
                Some(v) => v.parse().map(Some).map_err(|_| bad(key, &v, want)),
            }
        }

        let kind = raw
            .remove("regime.kind")
            .ok_or_else(|| ExperimentError::ConfigValue("regime.kind is required".into()))?;
        let h_scale: Option<Scalar> = num(&mut raw, "regime.h_scale", "a number")?;
        let phi: Option<Scalar> = num(&mut raw, "regime.phi", "a number")?;
        let psi_scale: Option<Scalar> = num(&mut raw, "regime.psi_scale", "a number")?;
        let p_explicit: Option<Scalar> = num(&mut raw, "regime.p_explicit", "a number")?;

        let require = |param: Option<Scalar>, key: &str| {
            param.ok_or_else(|| {
                ExperimentError::ConfigValue(format!("regime.kind = {kind} requires {key}"))
            })
        };
        let forbid = |param: &Option<Scalar>, key: &str| {
            if param.is_some() {
                Err(ExperimentError::ConfigValue(format!(
                    "{key} does not apply to regime.kind = {kind}"
                )))
            } else {
                Ok(())
            }
        };
        let regime = match kind.as_str() {
            "subcritical_a" | "critical_b" | "nearcritical_c" => {
                forbid(&phi, "regime.phi")?;
                forbid(&psi_scale, "regime.psi_scale")?;
                forbid(&p_explicit, "regime.p_explicit")?;
                let h_scale = h_scale.unwrap_or(0.0);
                match kind.as_str() {
                    "subcritical_a" => Regime::SubcriticalA { h_scale },
                    "critical_b" => Regime::CriticalB { h_scale },
                    _ => Regime::NearcriticalC { h_scale },
                }
            }
            "constant_factor" => {
                forbid(&h_scale, "regime.h_scale")?;
                forbid(&psi_scale, "regime.psi_scale")?;
                forbid(&p_explicit, "regime.p_explicit")?;
                Regime::ConstantFactor { phi: require(phi, "regime.phi")? }
            }
            "dense" => {
                forbid(&h_scale, "regime.h_scale")?;
                forbid(&phi, "regime.phi")?;
                forbid(&p_explicit, "regime.p_explicit")?;
                Regime::Dense { psi_scale: require(psi_scale, "regime.psi_scale")? }
            }
            "explicit" => {
                forbid(&h_scale, "regime.h_scale")?;
                forbid(&phi, "regime.phi")?;
                forbid(&psi_scale, "regime.psi_scale")?;
                Regime::Explicit { p: require(p_explicit, "regime.p_explicit")? }
            }
            other => {
                return Err(ExperimentError::ConfigValue(format!(
                    "unknown regime.kind {other:?}"
                )))
            }
        };

        let n_values_raw = raw
            .remove("n_values")
            .ok_or_else(|| ExperimentError::ConfigValue("n_values is required".into()))?;
        let n_values = n_values_raw
            .split(',')
            .map(|tok| tok.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad("n_values", &n_values_raw, "a comma-separated list of sizes"))?;
        if n_values.is_empty() || n_values.iter().any(|&n| n == 0) {
            return Err(bad("n_values", &n_values_raw, "a nonempty list of positive sizes"));
        }
        if n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("n_values", &n_values_raw, "strictly increasing"));
        }

        let trials_per_n = num(&mut raw, "trials_per_n", "a positive count")?
            .ok_or_else(|| ExperimentError::ConfigValue("trials_per_n is required".into()))?;
        if trials_per_n == 0 {
            return Err(ExperimentError::ConfigValue("trials_per_n must be at least 1".into()));
        }

        let master_seed: Seed = num(&mut raw, "master_seed", "an unsigned seed")?.unwrap_or(0);
        let epsilon_light: Scalar = num(&mut raw, "epsilon_light", "a number")?.unwrap_or(0.05);
        if !(epsilon_light > 0.0) {
            return Err(ExperimentError::ConfigValue(format!(
                "epsilon_light must be positive, got {epsilon_light}"
            )));
        }
        let oracle_limit =
            num(&mut raw, "oracle_limit", "a size")?.unwrap_or(crate::frank::DEFAULT_VERTEX_LIMIT);

        let defaults = EffortBudget::default();
        let budget = EffortBudget {
            restarts: num(&mut raw, "budget.restarts", "a count")?.unwrap_or(defaults.restarts),
            exhaustive_limit: num(&mut raw, "budget.exhaustive_limit", "a count")?
                .unwrap_or(defaults.exhaustive_limit),
            seed: master_seed,
        };

        let path_or = |raw: &mut BTreeMap<&'static str, String>, key, default: &str| {
            PathBuf::from(raw.remove(key).unwrap_or_else(|| default.to_string()))
        };
        let records_out = path_or(&mut raw, "records_out", "records.csv");
        let summary_out = path_or(&mut raw, "summary_out", "summary.csv");
        let charts_out = raw.remove("charts_out").map(PathBuf::from);

        debug_assert!(raw.is_empty(), "all known keys consumed");
        Ok(ExperimentConfig {
            regime,
            n_values,
            trials_per_n,
            master_seed,
            epsilon_light,
            oracle_limit,
            budget,
            records_out,
            summary_out,
            charts_out,
        })
    }
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

/// Formats with twelve significant digits (fixed-point, no exponent);
/// exact zero prints as `0`.
pub fn fmt_sig12(x: Scalar) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (11 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

pub const RECORDS_HEADER: &str = "n,p,seed_index,arc_count,delta_in,delta_out,delta_star,\
lambda,lambda_window_hit,tau_exact,packed_k,tau_eq_lambda,in_light_conflicts,\
out_light_conflicts,wall_time_ms";

/// One sampled digraph, measured. Booleans print as `0`/`1`; a skipped
/// exact enumeration (or the single-vertex unbounded case) prints as an
/// empty field.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub n: usize,
    pub p: Scalar,
    pub seed_index: u64,
    pub arc_count: usize,
    pub delta_in: usize,
    pub delta_out: usize,
    pub delta_star: usize,
    pub lambda: usize,
    /// Whether `lambda` landed in `{delta_in, delta_in + 1}`.
    pub lambda_window_hit: bool,
    pub tau_exact: Option<usize>,
    pub packed_k: usize,
    /// Whether the packing (or the enumeration) matched `lambda` exactly.
    pub tau_eq_lambda: bool,
    pub in_light_conflicts: usize,
    pub out_light_conflicts: usize,
    pub wall_time_ms: u64,
}

impl TrialRecord {
    pub fn to_csv_row(&self) -> String {
        let opt = |o: Option<usize>| o.map_or_else(String::new, |v| v.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            fmt_sig12(self.p),
            self.seed_index,
            self.arc_count,
            self.delta_in,
            self.delta_out,
            self.delta_star,
            self.lambda,
            self.lambda_window_hit as u8,
            opt(self.tau_exact),
            self.packed_k,
            self.tau_eq_lambda as u8,
            self.in_light_conflicts,
            self.out_light_conflicts,
            self.wall_time_ms,
        )
    }
}

/// Samples cell `(n, trial)` of the sweep keyed by `master_seed` and
/// measures everything the records file reports.
pub fn run_trial(
    n: usize,
    p: Scalar,
    master_seed: Seed,
    trial: u64,
    epsilon_light: Scalar,
    oracle_limit: usize,
    budget: &EffortBudget,
) -> Result<TrialRecord, ExperimentError> {
    let start = Instant::now();
    let d = sample_with(n, p, &mut trial_rng(master_seed, n, trial))?;
    let delta_in = d.min_degree(Direction::In);
    let delta_out = d.min_degree(Direction::Out);
    let delta_star = delta_star(n, p)?.value;
    let lambda = lambda_of(&d).value;
    let lambda_window_hit = lambda == delta_in || lambda == delta_in + 1;
    let tau_exact = if n <= oracle_limit {
        match tau_exact_with_limit(&d, oracle_limit).expect("guarded by oracle_limit") {
            TauCertificate::Bounded { tau, .. } => Some(tau),
            TauCertificate::Unbounded => None,
        }
    } else {
        None
    };
    let packed_k = max_pack(&d, budget).k;
    let tau_eq_lambda = packed_k == lambda || tau_exact == Some(lambda);
    // `p = 0` yields no arcs and therefore no conflicts, but sits outside
    // the light-census domain; report the exact zeroes directly.
    let (in_light_conflicts, out_light_conflicts) = if p > 0.0 {
        let report = light_report(&d, epsilon_light, p)?;
        (report.in_conflict_pairs, report.out_conflict_pairs)
    } else {
        (0, 0)
    };
    debug_assert!(packed_k <= lambda);
    debug_assert!(tau_exact.is_none_or(|t| t <= lambda));
    Ok(TrialRecord {
        n,
        p,
        seed_index: trial,
        arc_count: d.arc_count(),
        delta_in,
        delta_out,
        delta_star,
        lambda,
        lambda_window_hit,
        tau_exact,
        packed_k,
        tau_eq_lambda,
        in_light_conflicts,
        out_light_conflicts,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

// ---------------------------------------------------------------------------
// Summaries
// ---------------------------------------------------------------------------

pub const SUMMARY_HEADER: &str = "n,p,trials,fraction_lambda_zero,\
fraction_lambda_in_deltain_window,mean_lambda_over_deltain,fraction_tau_equals_lambda,\
fraction_deltain_in_deltastar_window,mean_deltain_over_pn";

/// Aggregates for one size. `p` is the printed-and-reparsed density, so the
/// summary is a pure function of the records file. The two means are `None`
/// (printed empty) when their denominators vanish: no trial with positive
/// minimum in-degree, or `p (n - 1) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub n: usize,
    pub p: Scalar,
    pub trials: usize,
    pub fraction_lambda_zero: Scalar,
    pub fraction_lambda_in_deltain_window: Scalar,
    pub mean_lambda_over_deltain: Option<Scalar>,
    pub fraction_tau_equals_lambda: Scalar,
    pub fraction_deltain_in_deltastar_window: Scalar,
    pub mean_deltain_over_pn: Option<Scalar>,
}

impl SummaryRow {
    pub fn to_csv_row(&self) -> String {
        let opt = |o: Option<Scalar>| o.map_or_else(String::new, fmt_sig12);
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            fmt_sig12(self.p),
            self.trials,
            fmt_sig12(self.fraction_lambda_zero),
            fmt_sig12(self.fraction_lambda_in_deltain_window),
            opt(self.mean_lambda_over_deltain),
            fmt_sig12(self.fraction_tau_equals_lambda),
            fmt_sig12(self.fraction_deltain_in_deltastar_window),
            opt(self.mean_deltain_over_pn),
        )
    }
}

fn summarize(n: usize, p: Scalar, rows: &[TrialRecord]) -> SummaryRow {
    let trials = rows.len();
    let p_used: Scalar = fmt_sig12(p).parse().expect("fixed-point floats reparse");
    let frac = |hits: usize| hits as Scalar / trials as Scalar;
    let in_window =
        |r: &TrialRecord| r.delta_in + 1 >= r.delta_star && r.delta_in <= r.delta_star + 1;
    let ratios: Vec<Scalar> = rows
        .iter()
        .filter(|r| r.delta_in > 0)
        .map(|r| r.lambda as Scalar / r.delta_in as Scalar)
        .collect();
    let scale = p_used * (n as Scalar - 1.0);
    SummaryRow {
        n,
        p: p_used,
        trials,
        fraction_lambda_zero: frac(rows.iter().filter(|r| r.lambda == 0).count()),
        fraction_lambda_in_deltain_window: frac(
            rows.iter().filter(|r| r.lambda_window_hit).count(),
        ),
        mean_lambda_over_deltain: (!ratios.is_empty())
            .then(|| ratios.iter().sum::<Scalar>() / ratios.len() as Scalar),
        fraction_tau_equals_lambda: frac(rows.iter().filter(|r| r.tau_eq_lambda).count()),
        fraction_deltain_in_deltastar_window: frac(rows.iter().filter(|r| in_window(r)).count()),
        mean_deltain_over_pn: (scale > 0.0).then(|| {
            rows.iter().map(|r| r.delta_in as Scalar / scale).sum::<Scalar>() / trials as Scalar
        }),
    }
}

// ---------------------------------------------------------------------------
// The sweep
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct SweepOutput {
    pub records: Vec<TrialRecord>,
    pub summary: Vec<SummaryRow>,
}

/// Runs the configured sweep. Trials of one size run in parallel; records
/// and the summary row are flushed after each size, so partial output
/// survives an interrupted run.
pub fn sweep(config: &ExperimentConfig) -> Result<SweepOutput, ExperimentError> {
    let mut records_file = BufWriter::new(File::create(&config.records_out)?);
    writeln!(records_file, "{RECORDS_HEADER}")?;
    let mut summary_file = BufWriter::new(File::create(&config.summary_out)?);
    writeln!(summary_file, "{SUMMARY_HEADER}")?;

    let mut records = Vec::new();
    let mut summary = Vec::new();
    for &n in &config.n_values {
        let p = config.regime.p_of(n)?;
        let rows = (0..config.trials_per_n as u64)
            .into_par_iter()
            .map(|trial| {
                run_trial(
                    n,
                    p,
                    config.master_seed,
                    trial,
                    config.epsilon_light,
                    config.oracle_limit,
                    &config.budget,
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        for row in &rows {
            writeln!(records_file, "{}", row.to_csv_row())?;
        }
        records_file.flush()?;
        let row = summarize(n, p, &rows);
        writeln!(summary_file, "{}", row.to_csv_row())?;
        summary_file.flush()?;
        summary.push(row);
        records.extend(rows);
    }

    if let Some(path) = &config.charts_out {
        std::fs::write(path, render_charts(&summary))?;
    }
    Ok(SweepOutput { records, summary })
}

// ---------------------------------------------------------------------------
// Charts
// ---------------------------------------------------------------------------

/// A small hand-rolled SVG: the four fraction metrics as polylines over
/// the swept sizes (evenly spaced), with a legend and a `[0, 1]` axis.
fn render_charts(summary: &[SummaryRow]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const LEFT: f64 = 50.0;
    const RIGHT: f64 = 180.0;
    const TOP: f64 = 20.0;
    const BOTTOM: f64 = 40.0;
    let series: [(&str, &str, fn(&SummaryRow) -> Scalar); 4] = [
        ("fraction_lambda_zero", "#c44", |r| r.fraction_lambda_zero),
        ("fraction_lambda_in_deltain_window", "#46a", |r| {
            r.fraction_lambda_in_deltain_window
        }),
        ("fraction_tau_equals_lambda", "#483", |r| r.fraction_tau_equals_lambda),
        ("fraction_deltain_in_deltastar_window", "#a70", |r| {
            r.fraction_deltain_in_deltastar_window
        }),
    ];
    let x = |i: usize| {
        let steps = (summary.len().max(2) - 1) as f64;
        LEFT + (W - LEFT - RIGHT) * i as f64 / steps
    };
    let y = |v: f64| TOP + (H - TOP - BOTTOM) * (1.0 - v);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\" font-family=\"monospace\" font-size=\"11\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n\
         <line x1=\"{LEFT}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n\
         <line x1=\"{LEFT}\" y1=\"{}\" x2=\"{LEFT}\" y2=\"{TOP}\" stroke=\"black\"/>\n",
        y(0.0),
        W - RIGHT,
        y(0.0),
        y(0.0),
    ));
    for tick in [0.0, 0.5, 1.0] {
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{tick}</text>\n",
            LEFT - 6.0,
            y(tick) + 4.0
        ));
    }
    for (i, row) in summary.iter().enumerate() {
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">n={}</text>\n",
            x(i),
            H - BOTTOM + 18.0,
            row.n
        ));
    }
    for (s, (name, color, metric)) in series.iter().enumerate() {
        let points: Vec<String> = summary
            .iter()
            .enumerate()
            .map(|(i, row)| format!("{:.1},{:.1}", x(i), y(metric(row))))
            .collect();
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            points.join(" ")
        ));
        let ly = TOP + 14.0 * s as f64;
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" \
             stroke-width=\"1.5\"/><text x=\"{}\" y=\"{}\">{name}</text>\n",
            W - RIGHT + 8.0,
            W - RIGHT + 24.0,
            W - RIGHT + 28.0,
            ly + 4.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
