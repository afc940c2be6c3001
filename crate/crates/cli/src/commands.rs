// SPDX-License-Identifier: MIT OR Apache-2.0

use std::time::Instant;

use serde::Serialize;

use msfpop::simulate::{
    estimate_sigma_mad, run_bench, run_calibration, run_study, BenchRow, CalibrationRow, MetricsReport, ScenarioKind,
};
use msfpop::{
    msfpop_segment, pelt_segment, PenaltyKind, PenaltyModel, PruningBound, PruningMode, SamplerSpec, SamplingMode,
};

use crate::config::{self, BenchConfig, CalibrateConfig, SimulateConfig};
use crate::error::{usage, CliError, CliResult};
use crate::input::{read_series, read_text, write_output};
use crate::{PenaltyArg, PruningArg, SegmentArgs, SolverArg, StudyArgs};

#[derive(Clone, Copy, Debug, PartialEq)]
enum Variance {
    Fixed(f64),
    Mad,
}

fn parse_variance(s: &str) -> CliResult<Variance> {
    if s.eq_ignore_ascii_case("mad") {
        return Ok(Variance::Mad);
    }
    match s.strip_prefix("fixed:").map(str::parse::<f64>) {
        Some(Ok(v)) if v.is_finite() && v > 0.0 => Ok(Variance::Fixed(v)),
        _ => usage(format!("--variance must be 'mad' or 'fixed:<v>' with v > 0, got '{s}'")),
    }
}

#[derive(Debug, Serialize)]
struct SolverDoc {
    name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    sampling: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pruning: Option<&'static str>,
    seed: u64,
}

#[derive(Debug, Serialize)]
struct PenaltyDoc {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<f64>,
    alpha: f64,
}

/// Result document of `segment`. Changepoints are 1-based: each is the last
/// index of the segment to its left. Means are on the input scale; the
/// objective is the penalized cost of the variance-normalised series.
#[derive(Debug, Serialize)]
struct SegmentDoc {
    changepoints: Vec<usize>,
    means: Vec<f64>,
    objective: f64,
    solver: SolverDoc,
    penalty: PenaltyDoc,
    runtime_s: f64,
    sigma_hat: f64,
}

fn pruning_mode(p: PruningArg) -> PruningMode {
    match p {
        PruningArg::None => PruningMode::None,
        PruningArg::Constant => PruningMode::Constant,
        PruningArg::Adaptive => PruningMode::Adaptive,
    }
}

fn pruning_name(p: PruningMode) -> &'static str {
    match p {
        PruningMode::None => "none",
        PruningMode::Constant => "constant",
        PruningMode::Adaptive => "adaptive",
    }
}

fn check_flags(args: &SegmentArgs) -> CliResult<()> {
    match args.penalty {
        PenaltyArg::Multiscale if args.alpha.is_some() => {
            return usage("--alpha applies to --penalty bic; the multiscale penalty takes --gamma and --beta")
        }
        PenaltyArg::Bic if args.beta.is_some() || args.gamma.is_some() => {
            return usage("--beta and --gamma apply to --penalty multiscale; the bic penalty takes --alpha")
        }
        _ => {}
    }
    if args.sampling.is_some() && args.solver != SolverArg::Msfpop {
        return usage("--sampling applies to --solver msfpop");
    }
    if args.pruning.is_some() && args.solver != SolverArg::Mspelt {
        return usage("--pruning applies to --solver mspelt");
    }
    Ok(())
}

pub fn segment(args: &SegmentArgs) -> CliResult<()> {
    check_flags(args)?;
    let variance = parse_variance(&args.variance)?;
    let sampling: SamplingMode = match &args.sampling {
        Some(s) => s.parse().map_err(CliError::usage)?,
        None => SamplingMode::Rand(1),
    };
    let series = read_series(&args.input)?;
    let n = series.len();
    let model = match args.penalty {
        PenaltyArg::Multiscale => PenaltyModel::multiscale(n, args.beta.unwrap_or(2.25), args.gamma.unwrap_or(9.0)),
        PenaltyArg::Bic => PenaltyModel::bic(n, args.alpha),
    }
    .map_err(CliError::usage)?;

    let sigma = match variance {
        Variance::Fixed(v) => v.sqrt(),
        Variance::Mad => {
            let est = estimate_sigma_mad(&series).map_err(CliError::data)?;
            if est.degenerate {
                return Err(CliError::Data(
                    "noise estimate is zero (first differences have zero spread); use --variance fixed:<v>".into(),
                ));
            }
            est.sigma
        }
    };
    let scaled = if sigma == 1.0 {
        series.clone()
    } else {
        series.scaled(1.0 / sigma).map_err(CliError::data)?
    };

    let (solver, result) = {
        let start = Instant::now();
        let (doc, seg) = match args.solver {
            SolverArg::Msfpop => {
                let spec = SamplerSpec {
                    mode: sampling,
                    seed: args.seed,
                };
                let doc = SolverDoc {
                    name: "msfpop",
                    sampling: Some(sampling.to_string()),
                    pruning: None,
                    seed: args.seed,
                };
                (doc, msfpop_segment(&scaled, &model, spec))
            }
            SolverArg::Mspelt => {
                let mode = args.pruning.map_or(PruningMode::Adaptive, pruning_mode);
                let bound = PruningBound {
                    mode,
                    general_constant: false,
                };
                let doc = SolverDoc {
                    name: "mspelt",
                    sampling: None,
                    pruning: Some(pruning_name(mode)),
                    seed: args.seed,
                };
                (doc, pelt_segment(&scaled, &model, bound))
            }
            SolverArg::Op => {
                let doc = SolverDoc {
                    name: "op",
                    sampling: None,
                    pruning: Some("none"),
                    seed: args.seed,
                };
                (doc, pelt_segment(&scaled, &model, PruningBound::none()))
            }
        };
        (doc, seg.map(|s| (s, start.elapsed().as_secs_f64())))
    };
    let (seg, runtime_s) = result.map_err(CliError::data)?;

    let doc = SegmentDoc {
        changepoints: seg.changepoints.clone(),
        means: seg.means.iter().map(|m| m * sigma).collect(),
        objective: seg.objective,
        solver,
        penalty: PenaltyDoc {
            kind: model.kind().as_str(),
            beta: (model.kind() == PenaltyKind::Multiscale).then(|| model.beta()),
            gamma: (model.kind() == PenaltyKind::Multiscale).then(|| model.gamma()),
            alpha: model.alpha(),
        },
        runtime_s,
        sigma_hat: sigma,
    };
    let mut bytes = serde_json::to_vec_pretty(&doc).map_err(CliError::data)?;
    bytes.push(b'\n');
    write_output(args.output.as_deref(), &bytes)
}

fn csv_bytes<R>(header: &[&str], rows: &[R], record: impl Fn(&R) -> Vec<String>) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(CliError::data)?;
    for r in rows {
        w.write_record(record(r)).map_err(CliError::data)?;
    }
    w.into_inner().map_err(CliError::data)
}

pub const CALIBRATE_HEADER: [&str; 5] = ["gamma", "beta", "n", "replicates", "r_gt0"];

pub fn calibrate(args: &StudyArgs) -> CliResult<()> {
    let cfg: CalibrateConfig = config::parse(&read_text(&args.config)?)?;
    let rows = run_calibration(&cfg.plan(args.seed)?).map_err(CliError::usage)?;
    let bytes = csv_bytes(&CALIBRATE_HEADER, &rows, |r: &CalibrationRow| {
        vec![
            r.gamma.to_string(),
            r.beta.to_string(),
            r.n.to_string(),
            r.replicates.to_string(),
            r.r_gt0.to_string(),
        ]
    })?;
    write_output(args.output.as_deref(), &bytes)
}

pub const BENCH_HEADER: [&str; 6] = ["method", "n", "d", "replicate", "seconds", "changes"];

pub fn bench(args: &StudyArgs) -> CliResult<()> {
    let cfg: BenchConfig = config::parse(&read_text(&args.config)?)?;
    let rows = run_bench(&cfg.plan(args.seed)?).map_err(CliError::usage)?;
    let bytes = csv_bytes(&BENCH_HEADER, &rows, |r: &BenchRow| {
        vec![
            r.method.clone(),
            r.n.to_string(),
            r.d.to_string(),
            r.replicate.to_string(),
            format!("{:.6}", r.seconds),
            r.n_changes.to_string(),
        ]
    })?;
    write_output(args.output.as_deref(), &bytes)
}

pub const SIMULATE_HEADER: [&str; 16] = [
    "scenario",
    "n",
    "tau1",
    "true_changes",
    "method",
    "replicates",
    "r_gt0",
    "r_2",
    "mean_changes",
    "mean_delta_d",
    "mean_mse",
    "mean_ari",
    "ae_delta_d",
    "ae_mse",
    "ae_ari",
    "mean_runtime_s",
];

fn scenario_fields(kind: &ScenarioKind) -> (&'static str, String) {
    match kind {
        ScenarioKind::Null => ("null", String::new()),
        ScenarioKind::Alternating { .. } => ("alternating", String::new()),
        ScenarioKind::Hat { tau1 } => ("hat", tau1.to_string()),
        ScenarioKind::Step { tau1 } => ("step", tau1.to_string()),
        ScenarioKind::Custom { .. } => ("custom", String::new()),
    }
}

pub fn simulate(args: &StudyArgs) -> CliResult<()> {
    let cfg: SimulateConfig = config::parse(&read_text(&args.config)?)?;
    let reports = run_study(&cfg.study(args.seed)?).map_err(CliError::usage)?;
    let rows: Vec<(&MetricsReport, usize)> = reports
        .iter()
        .flat_map(|r| (0..r.methods.len()).map(move |m| (r, m)))
        .collect();
    let bytes = csv_bytes(&SIMULATE_HEADER, &rows, |&(report, m)| {
        let s = &report.methods[m];
        let (name, tau1) = scenario_fields(&report.scenario.kind);
        let true_changes = report.scenario.truth().map_or(0, |t| t.n_changes());
        let mean_changes = s.n_changes.iter().sum::<usize>() as f64 / s.n_changes.len() as f64;
        vec![
            name.to_string(),
            report.scenario.n.to_string(),
            tau1,
            true_changes.to_string(),
            s.label.clone(),
            report.replicates.to_string(),
            s.r_gt0.to_string(),
            s.r_2.to_string(),
            mean_changes.to_string(),
            s.mean_delta_d().to_string(),
            s.mean_mse().to_string(),
            s.mean_ari().to_string(),
            s.ae_delta_d.to_string(),
            s.ae_mse.to_string(),
            s.ae_ari.to_string(),
            format!("{:.6}", s.mean_runtime()),
        ]
    })?;
    write_output(args.output.as_deref(), &bytes)
}
