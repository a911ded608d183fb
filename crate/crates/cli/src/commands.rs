use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use stackprod_core::gen::{generate, random_leader_strategy, rng_from_seed};
use stackprod_core::oracle::{
    follower_oracle_with_limit, leader_grid_oracle_with_limit, leader_subset_oracle_with_limit, OracleLimits, Witness,
};
use stackprod_core::{
    best_response, classify, destruction_ratios, evaluate, solve, validate_instance, FollowerStrategy, Instance,
    LeaderStrategy, OracleVerdict, Ratio, StrategyClass, StrategyKind,
};

use crate::input::{load_instance, load_raw, load_strategy};
use crate::report::{EvaluateRow, InstanceSummary, Payload, RunReport, TraceRow, TrialRow};
use crate::{CliError, OracleKind};

pub const EXIT_DISAGREE: u8 = 3;

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

fn describe(inst: &Instance, class: &StrategyClass) -> String {
    let support = class.support.to_ids(inst);
    match class.kind {
        StrategyKind::Balanced => format!("balanced on {support:?}"),
        StrategyKind::SeriedBalanced => format!("seried-balanced on {support:?}"),
        StrategyKind::SemiBalanced => format!(
            "semi-balanced on {support:?} with residual facility {}",
            inst.id_of(class.residual.expect("semi-balanced has a residual"))
        ),
        StrategyKind::Other => "none of balanced, semi-balanced, seried-balanced".to_string(),
    }
}

pub fn cmd_solve(command: Vec<String>, path: &Path) -> Result<RunReport, CliError> {
    let inst = load_instance(path)?;
    let start = Instant::now();
    let report = solve(&inst);
    let timing_ms = elapsed_ms(start);
    let class = classify(&inst, &report.strategy);
    Ok(RunReport {
        command,
        result: Payload::Solve {
            strategy: report.strategy.to_original(&inst),
            support: report.support.to_ids(&inst),
            rate: report.rate,
            value: report.value,
            classification: describe(&inst, &class),
            trace: report
                .trace
                .iter()
                .map(|row| TraceRow {
                    size: row.size,
                    added: inst.id_of(row.size - 1),
                    rate: row.rate.clone(),
                })
                .collect(),
            stopped_at: report.stopped_at.map(|pos| inst.id_of(pos)),
        },
        instance: Some(InstanceSummary::new(&inst)),
        timing_ms,
    })
}

fn leader_from_arg(inst: &Instance, arg: &str) -> Result<LeaderStrategy, CliError> {
    LeaderStrategy::from_original(inst, load_strategy(arg)?).map_err(CliError::from)
}

pub fn cmd_follower(command: Vec<String>, path: &Path, x_arg: &str) -> Result<RunReport, CliError> {
    let inst = load_instance(path)?;
    let x = leader_from_arg(&inst, x_arg)?;
    let start = Instant::now();
    let br = best_response(&inst, &x);
    let timing_ms = elapsed_ms(start);
    let class = classify(&inst, &x);
    Ok(RunReport {
        command,
        result: Payload::Follower {
            x: x.to_original(&inst),
            destruction_ratios: inst.to_original_order(&destruction_ratios(&inst, &x)),
            order: br.order.iter().map(|&pos| inst.id_of(pos)).collect(),
            threshold: inst.id_of(br.threshold),
            destroyed: br.destroyed.to_ids(&inst),
            y: br.y.to_original(&inst),
            value: br.worst_case_value,
            classification: describe(&inst, &class),
        },
        instance: Some(InstanceSummary::new(&inst)),
        timing_ms,
    })
}

pub fn cmd_evaluate(command: Vec<String>, path: &Path, x_arg: &str, y_arg: &str) -> Result<RunReport, CliError> {
    let inst = load_instance(path)?;
    let x = leader_from_arg(&inst, x_arg)?;
    let y = FollowerStrategy::from_original(&inst, load_strategy(y_arg)?)?;
    let start = Instant::now();
    let value = evaluate(&inst, &x, &y);
    let timing_ms = elapsed_ms(start);
    let mut rows: Vec<EvaluateRow> = (0..inst.len())
        .map(|pos| {
            let production = inst.p(pos) * x.get(pos);
            let reduction = &production * y.get(pos) / inst.a(pos);
            EvaluateRow {
                id: inst.id_of(pos),
                production,
                reduction,
            }
        })
        .collect();
    rows.sort_by_key(|row| row.id);
    Ok(RunReport {
        command,
        instance: Some(InstanceSummary::new(&inst)),
        timing_ms,
        result: Payload::Evaluate {
            total_production: rows.iter().map(|r| &r.production).sum(),
            total_reduction: rows.iter().map(|r| &r.reduction).sum(),
            rows,
            value,
        },
    })
}

pub struct CheckArgs<'a> {
    pub path: Option<&'a Path>,
    pub oracle: OracleKind,
    pub seed: u64,
    pub trials: usize,
    pub resolution: u32,
    pub max_n: Option<usize>,
}

fn original(inst: &Instance, witness: &Option<Witness>) -> Option<Vec<Ratio>> {
    witness.as_ref().map(|w| match w {
        Witness::Leader(x) => x.to_original(inst),
        Witness::Follower(y) => y.to_original(inst),
    })
}

fn trial_row(inst: &Instance, seed: Option<u64>, x: Option<&LeaderStrategy>, verdict: OracleVerdict) -> TrialRow {
    TrialRow {
        seed,
        n: inst.len(),
        witness: original(inst, &verdict.witness),
        x: x.map(|x| x.to_original(inst)),
        instance: (!verdict.agree).then(|| inst.to_raw()),
        oracle_value: verdict.oracle_value,
        solver_value: verdict.solver_value,
        gap: verdict.gap,
        agree: verdict.agree,
    }
}

/// Runs the oracle on `inst`. The follower oracle needs a leader strategy,
/// which is drawn from `seed`.
fn run_oracle(
    args: &CheckArgs,
    limits: OracleLimits,
    inst: &Instance,
    seed: u64,
    origin: Option<u64>,
) -> Result<TrialRow, CliError> {
    Ok(match args.oracle {
        OracleKind::Follower => {
            let x = random_leader_strategy(&mut rng_from_seed(seed), inst);
            let verdict = follower_oracle_with_limit(inst, &x, limits.follower)?;
            trial_row(inst, origin, Some(&x), verdict)
        }
        OracleKind::Subset => trial_row(
            inst,
            origin,
            None,
            leader_subset_oracle_with_limit(inst, limits.subset)?,
        ),
        OracleKind::Grid => trial_row(
            inst,
            origin,
            None,
            leader_grid_oracle_with_limit(inst, args.resolution, limits.grid)?,
        ),
    })
}

pub fn cmd_check(command: Vec<String>, args: &CheckArgs) -> Result<(RunReport, u8), CliError> {
    let limits = OracleLimits::default();
    let limit = match args.oracle {
        OracleKind::Follower => limits.follower,
        OracleKind::Subset => limits.subset,
        OracleKind::Grid => limits.grid,
    };
    let mut trials = Vec::new();
    let mut instance = None;
    let start = Instant::now();
    match args.path {
        Some(path) => {
            let inst = load_instance(path)?;
            // Only the follower oracle has anything to vary between trials.
            let count = if args.oracle == OracleKind::Follower {
                args.trials.max(1)
            } else {
                1
            };
            for t in 0..count {
                trials.push(run_oracle(args, limits, &inst, args.seed.wrapping_add(t as u64), None)?);
            }
            instance = Some(InstanceSummary::new(&inst));
        }
        None => {
            let default_n = match args.oracle {
                OracleKind::Follower => 5,
                OracleKind::Subset => 8,
                OracleKind::Grid => 3,
            };
            let max_n = args.max_n.unwrap_or(default_n);
            if max_n == 0 {
                return Err(CliError::Usage("--max-n must be at least 1".into()));
            }
            if max_n > limit {
                return Err(CliError::Validation(format!(
                    "--max-n {max_n} exceeds the {} oracle limit of {limit}",
                    args.oracle.name()
                )));
            }
            for t in 0..args.trials {
                let seed = args.seed.wrapping_add(t as u64);
                let n = 1 + (seed % max_n as u64) as usize;
                let inst = validate_instance(&generate(n, seed))?;
                trials.push(run_oracle(args, limits, &inst, seed, Some(seed))?);
            }
        }
    }
    let timing_ms = elapsed_ms(start);
    let agreed = trials.iter().filter(|t| t.agree).count();
    let code = if agreed == trials.len() { 0 } else { EXIT_DISAGREE };
    let report = RunReport {
        command,
        instance,
        result: Payload::Check {
            oracle: args.oracle.name().to_string(),
            resolution: (args.oracle == OracleKind::Grid).then_some(args.resolution),
            agreed,
            total: trials.len(),
            trials,
        },
        timing_ms,
    };
    Ok((report, code))
}

/// Writes the instance for `(n, seed)`. Without an output path the instance
/// JSON itself goes to stdout and no report is produced.
pub fn cmd_generate(
    command: Vec<String>,
    n: usize,
    seed: u64,
    output: Option<&PathBuf>,
) -> Result<Option<RunReport>, CliError> {
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let start = Instant::now();
    let raw = generate(n, seed);
    let text = raw.to_json_pretty() + "\n";
    let timing_ms = elapsed_ms(start);
    let Some(path) = output else {
        print!("{text}");
        return Ok(None);
    };
    fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    // Re-read what was written so the summary reflects the file.
    let inst = validate_instance(&load_raw(path)?)?;
    Ok(Some(RunReport {
        command,
        instance: Some(InstanceSummary::new(&inst)),
        result: Payload::Generate {
            n,
            seed,
            output: path.display().to_string(),
        },
        timing_ms,
    }))
}
