//! Subcommand implementations.

use crate::config::{parse_angle, parse_f64, parse_list, parse_u64, parse_usize, ConfigMap};
use crate::output::{Cell, Table};
use crate::{CliError, CommonContext};
use coarse_metrology::frequency::{
    crossover_delta, default_delta_grid, precision_curve, DephasingKind, DephasingModel,
    FrequencyProbe, FrequencySetup, PrecisionCurve,
};
use coarse_metrology::numerics::QuadratureSpec;
use coarse_metrology::oracle::{ProbeStateKind, ProbeStateSpec, ReferenceKind};
use coarse_metrology::phase::{
    fisher_phase, optimal_particles, resolution_phase, PhasePoint, PhaseScenario,
};
use coarse_metrology::verify::{
    mc_crb_check, oracle_equivalence_grid, state_kind_name, McCase, EQUIVALENCE_TOLERANCE,
};

fn computation(e: coarse_metrology::Error) -> CliError {
    CliError::Computation(e.to_string())
}

fn parse_state_kind(s: &str) -> Result<ProbeStateKind, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "ghz" => Ok(ProbeStateKind::Ghz),
        "product" => Ok(ProbeStateKind::Product),
        "alternating" => Ok(ProbeStateKind::Alternating),
        other => Err(CliError::Usage(format!(
            "unknown state '{other}' (expected ghz, product, or alternating)"
        ))),
    }
}

fn parse_reference(s: &str) -> Result<ReferenceKind, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "perfect" => Ok(ReferenceKind::Perfect),
        "common" => Ok(ReferenceKind::Common),
        "independent" => Ok(ReferenceKind::Independent),
        other => Err(CliError::Usage(format!(
            "unknown reference '{other}' (expected perfect, common, or independent)"
        ))),
    }
}

fn parse_dephasing(s: &str) -> Result<DephasingKind, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "markov" | "markovian" => Ok(DephasingKind::Markovian),
        "nonmarkov" | "non-markovian" | "nonmarkovian" => Ok(DephasingKind::NonMarkovian),
        other => Err(CliError::Usage(format!(
            "unknown dephasing model '{other}' (expected markov or nonmarkov)"
        ))),
    }
}

pub struct PhaseFisherParams {
    pub state: Option<String>,
    pub reference: Option<String>,
    pub n: Option<String>,
    pub delta: Option<String>,
    pub phi: Option<String>,
    pub experiments: Option<u64>,
}

pub fn phase_fisher(params: &PhaseFisherParams, ctx: &CommonContext) -> Result<(), CliError> {
    let cfg: &ConfigMap = &ctx.config;
    let state = parse_state_kind(&cfg.resolve(
        params.state.clone(),
        "state",
        |s| Ok(s.to_string()),
        "ghz".to_string(),
    )?)?;
    let reference = parse_reference(&cfg.resolve(
        params.reference.clone(),
        "reference",
        |s| Ok(s.to_string()),
        "common".to_string(),
    )?)?;
    let ns = parse_list(
        &cfg.resolve_required(params.n.clone(), "n", |s| Ok(s.to_string()))?,
        parse_usize,
    )?;
    let deltas = parse_list(
        &cfg.resolve_required(params.delta.clone(), "delta", |s| Ok(s.to_string()))?,
        parse_f64,
    )?;
    let phis = parse_list(
        &cfg.resolve_required(params.phi.clone(), "phi", |s| Ok(s.to_string()))?,
        parse_angle,
    )?;
    let experiments = cfg.resolve(params.experiments, "experiments", parse_u64, 1)?;
    for &n in &ns {
        if n < 1 {
            return Err(CliError::Usage("n must be at least 1".into()));
        }
    }
    for &d in &deltas {
        if !(d >= 0.0) || !d.is_finite() {
            return Err(CliError::Usage(format!("delta must be >= 0, got {d}")));
        }
    }
    if experiments < 1 {
        return Err(CliError::Usage("experiments must be at least 1".into()));
    }

    let mut table = Table::new(&["n", "delta", "phi", "fisher", "dphi"]);
    for &n in &ns {
        for &delta in &deltas {
            for &phi in &phis {
                let scenario = PhaseScenario::new(
                    ProbeStateSpec::new(state, n, phi).map_err(computation)?,
                    reference,
                    delta,
                    experiments,
                )
                .map_err(computation)?;
                let fisher = fisher_phase(&scenario, phi).map_err(computation)?;
                let dphi =
                    resolution_phase(&scenario, PhasePoint::At(phi)).map_err(computation)?;
                table.push(vec![
                    Cell::Int(n as u64),
                    Cell::Float(delta),
                    Cell::Float(phi),
                    Cell::Float(fisher),
                    Cell::Float(dphi),
                ]);
            }
        }
    }
    table.write(ctx.format, ctx.output.as_ref())
}

pub struct OptimalNParams {
    pub reference: Option<String>,
    pub delta: Option<f64>,
    pub n_max: Option<u32>,
    pub experiments: Option<u64>,
}

pub fn optimal_n(params: &OptimalNParams, ctx: &CommonContext) -> Result<(), CliError> {
    let cfg = &ctx.config;
    let reference = parse_reference(&cfg.resolve_required(
        params.reference.clone(),
        "reference",
        |s| Ok(s.to_string()),
    )?)?;
    let delta = cfg.resolve_required(params.delta, "delta", parse_f64)?;
    let n_max = cfg.resolve(params.n_max, "n-max", |s| {
        parse_usize(s).map(|v| v as u32)
    }, 1000)?;
    let experiments = cfg.resolve(params.experiments, "experiments", parse_u64, 1)?;

    let result = optimal_particles(reference, delta, n_max).map_err(computation)?;
    if result.at_cap {
        eprintln!(
            "warning: the optimum sits at the scan cap n = {n_max}; raise --n-max to be sure"
        );
    }
    let scenario = PhaseScenario::new(
        ProbeStateSpec::new(ProbeStateKind::Ghz, result.n as usize, 0.0).map_err(computation)?,
        reference,
        delta,
        experiments,
    )
    .map_err(computation)?;
    let dphi = resolution_phase(&scenario, PhasePoint::Optimal).map_err(computation)?;

    let mut table = Table::new(&["reference", "delta", "n_integer", "n_continuous", "dphi"]);
    table.push(vec![
        Cell::Text(reference.to_string()),
        Cell::Float(delta),
        Cell::Int(result.n as u64),
        Cell::Float(result.continuous),
        Cell::Float(dphi),
    ]);
    table.write(ctx.format, ctx.output.as_ref())
}

pub struct FreqCurveParams {
    pub n: Option<u64>,
    pub gamma0: Option<f64>,
    pub total_time: Option<f64>,
    pub grid_points: Option<usize>,
    pub delta_min: Option<f64>,
    pub delta_max: Option<f64>,
    pub scale_ghz_markov: Option<f64>,
}

struct FourCurves {
    product_markov: PrecisionCurve,
    ghz_markov: PrecisionCurve,
    product_nonmarkov: PrecisionCurve,
    ghz_nonmarkov: PrecisionCurve,
}

fn curve_setups(n: u64, gamma0: f64, total_time: f64) -> Result<[(&'static str, FrequencySetup); 4], CliError> {
    let markov = DephasingModel::new(gamma0, DephasingKind::Markovian).map_err(computation)?;
    let nonmarkov =
        DephasingModel::new(gamma0, DephasingKind::NonMarkovian).map_err(computation)?;
    Ok([
        (
            "dw2_product_markov",
            FrequencySetup::new(FrequencyProbe::Product, n, markov, total_time),
        ),
        (
            "dw2_ghz_markov",
            FrequencySetup::new(FrequencyProbe::Ghz, n, markov, total_time),
        ),
        (
            "dw2_product_nonmarkov",
            FrequencySetup::new(FrequencyProbe::Product, n, nonmarkov, total_time),
        ),
        (
            "dw2_ghz_nonmarkov",
            FrequencySetup::new(FrequencyProbe::Ghz, n, nonmarkov, total_time),
        ),
    ])
}

fn resolve_grid(
    gamma0: f64,
    points: usize,
    delta_min: Option<f64>,
    delta_max: Option<f64>,
) -> Result<Vec<f64>, CliError> {
    if points < 2 {
        return Err(CliError::Usage("grid-points must be at least 2".into()));
    }
    match (delta_min, delta_max) {
        (None, None) => default_delta_grid(gamma0, points).map_err(computation),
        (min, max) => {
            let upper = match max {
                Some(v) if v > 0.0 && v.is_finite() => v,
                Some(v) => {
                    return Err(CliError::Usage(format!("delta-max must be positive, got {v}")))
                }
                None => {
                    let t0 = (1.0 / (2.0 * gamma0)).max(1.0 / (2.0 * gamma0.sqrt()));
                    4.0 * t0
                }
            };
            let lower = match min {
                Some(v) if v > 0.0 && v < upper => v,
                Some(v) => {
                    return Err(CliError::Usage(format!(
                        "delta-min must satisfy 0 < delta-min < delta-max, got {v}"
                    )))
                }
                None => 1e-4 * upper,
            };
            let ratio = (upper / lower).ln();
            let mut grid = Vec::with_capacity(points + 1);
            grid.push(0.0);
            for i in 0..points {
                let f = i as f64 / (points - 1) as f64;
                grid.push(lower * (ratio * f).exp());
            }
            Ok(grid)
        }
    }
}

pub fn freq_curve(params: &FreqCurveParams, ctx: &CommonContext) -> Result<(), CliError> {
    let cfg = &ctx.config;
    let n = cfg.resolve(params.n, "n", parse_u64, 10_000)?;
    let gamma0 = cfg.resolve(params.gamma0, "gamma0", parse_f64, 1.0)?;
    let total_time = cfg.resolve(params.total_time, "total-time", parse_f64, 1.0)?;
    let points = cfg.resolve(params.grid_points, "grid-points", parse_usize, 60)?;
    let delta_min = match params.delta_min {
        Some(v) => Some(v),
        None => cfg.get("delta-min").map(parse_f64).transpose()?,
    };
    let delta_max = match params.delta_max {
        Some(v) => Some(v),
        None => cfg.get("delta-max").map(parse_f64).transpose()?,
    };
    let scale = match params.scale_ghz_markov {
        Some(v) => Some(v),
        None => cfg.get("scale-ghz-markov").map(parse_f64).transpose()?,
    };
    if !(gamma0 > 0.0) {
        return Err(CliError::Usage(format!("gamma0 must be positive, got {gamma0}")));
    }
    if !(total_time > 0.0) {
        return Err(CliError::Usage(format!(
            "total-time must be positive, got {total_time}"
        )));
    }

    let grid = resolve_grid(gamma0, points, delta_min, delta_max)?;
    let quad = QuadratureSpec::default();
    let setups = curve_setups(n, gamma0, total_time)?;
    let mut curves = Vec::with_capacity(4);
    for (name, setup) in &setups {
        let curve = precision_curve(setup, &grid, &quad)
            .map_err(|e| CliError::Computation(format!("curve {name}: {e}")))?;
        curves.push(curve);
    }
    let four = FourCurves {
        product_markov: curves.remove(0),
        ghz_markov: curves.remove(0),
        product_nonmarkov: curves.remove(0),
        ghz_nonmarkov: curves.remove(0),
    };

    let mut columns = vec![
        "delta",
        "dw2_product_markov",
        "dw2_ghz_markov",
        "dw2_product_nonmarkov",
        "dw2_ghz_nonmarkov",
    ];
    if scale.is_some() {
        columns.push("dw2_ghz_markov_scaled");
    }
    let mut table = Table::new(&columns);
    for (i, &delta) in grid.iter().enumerate() {
        let mut row = vec![
            Cell::Float(delta),
            Cell::Float(four.product_markov.rows[i].dw2),
            Cell::Float(four.ghz_markov.rows[i].dw2),
            Cell::Float(four.product_nonmarkov.rows[i].dw2),
            Cell::Float(four.ghz_nonmarkov.rows[i].dw2),
        ];
        if let Some(factor) = scale {
            // Display scaling only; the stored column stays unscaled.
            row.push(Cell::Float(four.ghz_markov.rows[i].dw2 * factor));
        }
        table.push(row);
    }
    table.write(ctx.format, ctx.output.as_ref())
}

pub struct CrossoverParams {
    pub model: Option<String>,
    pub n: Option<u64>,
    pub gamma0: Option<f64>,
    pub total_time: Option<f64>,
    pub bracket_lo: Option<f64>,
    pub bracket_hi: Option<f64>,
}

pub fn crossover(params: &CrossoverParams, ctx: &CommonContext) -> Result<(), CliError> {
    let cfg = &ctx.config;
    let model = parse_dephasing(&cfg.resolve_required(params.model.clone(), "model", |s| {
        Ok(s.to_string())
    })?)?;
    let n = cfg.resolve(params.n, "n", parse_u64, 10_000)?;
    let gamma0 = cfg.resolve(params.gamma0, "gamma0", parse_f64, 1.0)?;
    let total_time = cfg.resolve(params.total_time, "total-time", parse_f64, 1.0)?;
    let bracket_lo = cfg.resolve(params.bracket_lo, "bracket-lo", parse_f64, 0.0)?;
    let default_hi = 4.0 * (1.0 / (2.0 * gamma0)).max(1.0 / (2.0 * gamma0.sqrt()));
    let bracket_hi = cfg.resolve(params.bracket_hi, "bracket-hi", parse_f64, default_hi)?;
    if !(gamma0 > 0.0) {
        return Err(CliError::Usage(format!("gamma0 must be positive, got {gamma0}")));
    }

    let dephasing = DephasingModel::new(gamma0, model).map_err(computation)?;
    let ghz = FrequencySetup::new(FrequencyProbe::Ghz, n, dephasing, total_time);
    let product = FrequencySetup::new(FrequencyProbe::Product, n, dephasing, total_time);
    let result = crossover_delta(&ghz, &product, (bracket_lo, bracket_hi), &QuadratureSpec::default())
        .map_err(computation)?;

    let mut table = Table::new(&["model", "bracket_lo", "bracket_hi", "delta_star"]);
    table.push(vec![
        Cell::Text(model.to_string()),
        Cell::Float(bracket_lo),
        Cell::Float(bracket_hi),
        match result {
            Some(star) => Cell::Float(star),
            None => Cell::Text("none".into()),
        },
    ]);
    table.write(ctx.format, ctx.output.as_ref())?;
    if result.is_none() {
        eprintln!("no crossover in bracket [{bracket_lo}, {bracket_hi}]");
    }
    Ok(())
}

pub struct OracleVerifyParams {
    pub n: Option<usize>,
    pub delta: Option<String>,
}

pub fn oracle_verify(params: &OracleVerifyParams, ctx: &CommonContext) -> Result<(), CliError> {
    let cfg = &ctx.config;
    let n_max = cfg.resolve(params.n, "n", parse_usize, 8)?;
    let deltas = parse_list(
        &cfg.resolve(params.delta.clone(), "delta", |s| Ok(s.to_string()), "0,0.1,0.3".into())?,
        parse_f64,
    )?;

    let summaries = oracle_equivalence_grid(n_max, &deltas, &QuadratureSpec::default())
        .map_err(computation)?;

    let mut table = Table::new(&[
        "state",
        "reference",
        "max_deviation",
        "worst_n",
        "worst_delta",
        "worst_phi",
    ]);
    for s in &summaries {
        table.push(vec![
            Cell::Text(state_kind_name(s.state).into()),
            Cell::Text(s.reference.to_string()),
            Cell::Float(s.max_deviation),
            Cell::Int(s.worst_n as u64),
            Cell::Float(s.worst_delta),
            Cell::Float(s.worst_phi),
        ]);
    }
    table.write(ctx.format, ctx.output.as_ref())?;

    for s in &summaries {
        if s.max_deviation > EQUIVALENCE_TOLERANCE {
            return Err(CliError::Computation(format!(
                "oracle deviates from the closed form: state={} reference={} n={} delta={} \
                 phi={} deviation={:.3e} exceeds {EQUIVALENCE_TOLERANCE:.0e}",
                state_kind_name(s.state),
                s.reference,
                s.worst_n,
                s.worst_delta,
                s.worst_phi,
                s.max_deviation
            )));
        }
    }
    Ok(())
}

pub struct McVerifyParams {
    pub shots: Option<u64>,
    pub repetitions: Option<u64>,
}

pub fn mc_verify(params: &McVerifyParams, ctx: &CommonContext) -> Result<(), CliError> {
    let cfg = &ctx.config;
    let shots = cfg.resolve(params.shots, "shots", parse_u64, 100_000)?;
    let repetitions = cfg.resolve(params.repetitions, "reps", parse_u64, 200)?;
    if shots < 10_000 {
        return Err(CliError::Usage(format!(
            "shots must be at least 10000, got {shots}"
        )));
    }
    if repetitions < 100 {
        return Err(CliError::Usage(format!(
            "reps must be at least 100, got {repetitions}"
        )));
    }

    let mut table = Table::new(&[
        "n",
        "delta",
        "phi",
        "shots",
        "repetitions",
        "variance",
        "crb",
        "ratio",
        "status",
    ]);
    let mut failures = Vec::new();
    for case in McCase::standard_cases() {
        let result = mc_crb_check(&case, shots, repetitions, ctx.seed).map_err(computation)?;
        let ok = result.within_band();
        table.push(vec![
            Cell::Int(case.n as u64),
            Cell::Float(case.delta),
            Cell::Float(case.phi),
            Cell::Int(shots),
            Cell::Int(repetitions),
            Cell::Float(result.variance),
            Cell::Float(result.cr_bound),
            Cell::Float(result.ratio),
            Cell::Text(if ok { "pass".into() } else { "fail".into() }),
        ]);
        if !ok {
            failures.push(format!(
                "n={} delta={}: ratio {:.4} outside [0.9, 1.2]",
                case.n, case.delta, result.ratio
            ));
        }
    }
    table.write(ctx.format, ctx.output.as_ref())?;
    if !failures.is_empty() {
        return Err(CliError::Computation(format!(
            "estimator variance off the Cramér–Rao bound: {}",
            failures.join("; ")
        )));
    }
    Ok(())
}
