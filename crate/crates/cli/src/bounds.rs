//! Parallel drivers for the classical bounds.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use quditbell_core::bounds::{
    best_response_bob, better_outcome, heuristic_restart, normalized_candidate_count, normalized_prefixes, BoundKind, BoundResult, MaxVisitor,
    SearchKernel, SearchStats, DEFAULT_PATIENCE,
};
use quditbell_core::{DeterministicStrategy, GameParams};

use crate::error::{Error, Result};

/// Largest `d` searched exhaustively without the long-run override.
pub const FEASIBILITY_CEILING: usize = 11;

/// Single-core kernel throughput used for runtime estimates.
const LEAVES_PER_SECOND: f64 = 4e7;

/// Prefix tasks are split until there are at least this many.
const MIN_TASKS: usize = 128;

pub fn estimated_seconds(params: &GameParams) -> f64 {
    normalized_candidate_count(params) as f64 / LEAVES_PER_SECOND
}

pub fn human_duration(seconds: f64) -> String {
    match seconds {
        s if s < 120.0 => format!("{s:.0} s"),
        s if s < 7200.0 => format!("{:.0} min", s / 60.0),
        s if s < 172_800.0 => format!("{:.1} h", s / 3600.0),
        s => format!("{:.1} days", s / 86_400.0),
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ExactOptions {
    pub time_limit: Option<Duration>,
    pub long_run: bool,
}

fn task_prefixes(params: &GameParams) -> Vec<quditbell_core::bounds::Prefix> {
    let d = params.d();
    let mut split = 3;
    let mut prefixes = normalized_prefixes(params, split);
    while prefixes.len() < MIN_TASKS && split < d.saturating_sub(1) {
        split += 1;
        prefixes = normalized_prefixes(params, split);
    }
    prefixes
}

/// Exhaustive `Δmax` over normalized Alice strategies, parallel over prefixes.
///
/// The result is independent of the worker count: the maximum is reduced in
/// prefix order, keeping the first (lexicographically smallest) Alice. Past the
/// time limit, unstarted prefixes are skipped and the result is flagged
/// incomplete, so `value` is only a lower bound.
pub fn exact_delta_max(params: &GameParams, options: &ExactOptions) -> Result<BoundResult> {
    let d = params.d();
    if d > FEASIBILITY_CEILING && !options.long_run {
        return Err(Error::Infeasible {
            d,
            estimate: human_duration(estimated_seconds(params)),
        });
    }
    let start = Instant::now();
    let deadline = options.time_limit.map(|t| start + t);
    let stopped = AtomicBool::new(false);
    let prefixes = task_prefixes(params);
    let partial: Vec<Option<(MaxVisitor, u64)>> = prefixes
        .par_iter()
        .enumerate()
        .map_init(
            || SearchKernel::new(params),
            |kernel, (i, prefix)| {
                if i > 0 && (stopped.load(Ordering::Relaxed) || deadline.is_some_and(|t| Instant::now() > t)) {
                    stopped.store(true, Ordering::Relaxed);
                    return None;
                }
                let before = kernel.leaves();
                let mut visitor = MaxVisitor::default();
                kernel.run(prefix, &mut visitor);
                Some((visitor, kernel.leaves() - before))
            },
        )
        .collect();
    let complete = partial.iter().all(Option::is_some);
    let mut best = MaxVisitor::default();
    let mut candidates = 0;
    for (visitor, leaves) in partial.into_iter().flatten() {
        candidates += leaves;
        if best.alice.is_none() || visitor.best > best.best {
            best = visitor;
        }
    }
    let alice = best.alice.expect("the first prefix always runs");
    let (bob, value) = best_response_bob(params, &alice);
    debug_assert_eq!(value, best.best);
    if !complete {
        log::warn!("d = {d}: time limit reached, {value} is a lower bound only");
    }
    Ok(BoundResult {
        d,
        kind: BoundKind::ExactMax,
        value,
        witness: DeterministicStrategy::new(params, alice, bob)?,
        stats: SearchStats {
            candidates,
            seconds: start.elapsed().as_secs_f64(),
            restarts: 0,
            seed: 0,
            complete,
        },
    })
}

/// Alternating best-response heuristic over restarts `0..restarts`, parallel.
/// Restart `i` always uses stream `i` of `seed`, and ties are broken by the
/// smaller strategy, so the result does not depend on the worker count.
pub fn heuristic_delta_lb(params: &GameParams, restarts: u64, seed: u64) -> Result<BoundResult> {
    if restarts == 0 {
        return Err(Error::Config("restarts must be positive".into()));
    }
    let start = Instant::now();
    let (best, evaluations) = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let out = heuristic_restart(params, seed, i, DEFAULT_PATIENCE);
            let evaluations = out.evaluations;
            (out, evaluations)
        })
        .reduce_with(|(a, ea), (b, eb)| (better_outcome(a, b), ea + eb))
        .expect("restarts >= 1");
    Ok(BoundResult {
        d: params.d(),
        kind: BoundKind::HeuristicLb,
        value: best.value,
        witness: best.strategy,
        stats: SearchStats {
            candidates: evaluations,
            seconds: start.elapsed().as_secs_f64(),
            restarts,
            seed,
            complete: true,
        },
    })
}

/// Distinct strategies reaching `target` among heuristic restarts `0..restarts`,
/// in restart order.
pub fn heuristic_hits(params: &GameParams, restarts: u64, seed: u64, target: usize) -> Vec<DeterministicStrategy> {
    let hits: Vec<DeterministicStrategy> = (0..restarts)
        .into_par_iter()
        .filter_map(|i| {
            let out = heuristic_restart(params, seed, i, DEFAULT_PATIENCE);
            (out.value == target).then_some(out.strategy)
        })
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    hits.into_iter().filter(|s| seen.insert(s.clone())).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyReport {
    pub d: usize,
    pub zeros: usize,
    /// `zeros / d²`
    pub s: f64,
    /// `d·zeros − d²`
    pub s_ji: i64,
}

pub fn strategy_report(s: &DeterministicStrategy) -> StrategyReport {
    let d = s.d();
    let zeros = s.zero_count();
    StrategyReport {
        d,
        zeros,
        s: zeros as f64 / (d * d) as f64,
        s_ji: (d * zeros) as i64 - (d * d) as i64,
    }
}

pub fn verify_strategy_file(path: &std::path::Path) -> Result<StrategyReport> {
    let text = crate::formats::read_to_string(path)?;
    Ok(strategy_report(&crate::formats::parse_strategy(&text)?))
}

/// JSON record for a bound result.
#[derive(Debug, Clone, Serialize)]
pub struct BoundRecord {
    pub d: usize,
    pub kind: &'static str,
    pub value: usize,
    pub witness_oa: Vec<u8>,
    pub witness_ob: Vec<u8>,
    pub candidates: u64,
    pub seconds: f64,
    pub seed: u64,
    pub complete: bool,
}

impl From<&BoundResult> for BoundRecord {
    fn from(r: &BoundResult) -> Self {
        Self {
            d: r.d,
            kind: r.kind.as_str(),
            value: r.value,
            witness_oa: r.witness.alice().to_vec(),
            witness_ob: r.witness.bob().to_vec(),
            candidates: r.stats.candidates,
            seconds: r.stats.seconds,
            seed: r.stats.seed,
            complete: r.stats.complete,
        }
    }
}
