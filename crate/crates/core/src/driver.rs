//! Top-level solver loop and multi-run batches.
//!
//! A run builds an initial solution, then alternates tabu-search phases with
//! perturbations of each phase's best until the budget is spent. A round
//! budget always lets the phase in flight complete; a time budget also cuts
//! the running phase short once the deadline passes.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rayon::prelude::*;

use crate::descent::initial_solution;
use crate::error::{Error, Result};
use crate::instance::{Instance, SelectionVector};
use crate::learning::{
    PerturbationPolicy, ProbabilityVector, DEFAULT_PENALTY_FACTOR, DEFAULT_REWARD_FACTOR,
};
use crate::rng::SolverRng;
use crate::state::SearchState;
use crate::stats::summarize;
use crate::tabu::{tabu_search, SearchObserver, TsParams};

pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(600);
pub const DEFAULT_RUNS: usize = 30;

/// When a run stops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    /// Wall-clock limit. Not reproducible across machines.
    Time(Duration),
    /// Fixed number of tabu-search phases; fully deterministic. At least one
    /// phase always runs.
    Rounds(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub budget: Budget,
    pub reward_factor: f64,
    pub penalty_factor: f64,
    pub depth_override: Option<u64>,
    pub tenure_override: Option<u64>,
    pub perturbation: PerturbationPolicy,
    /// Keep the learned probabilities across phases instead of resetting
    /// them to 0.5 before each phase.
    pub carry_probability: bool,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            budget: Budget::Time(DEFAULT_TIME_LIMIT),
            reward_factor: DEFAULT_REWARD_FACTOR,
            penalty_factor: DEFAULT_PENALTY_FACTOR,
            depth_override: None,
            tenure_override: None,
            perturbation: PerturbationPolicy::Probability,
            carry_probability: false,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if let Budget::Time(limit) = self.budget {
            if limit.is_zero() {
                return Err(Error::Config("time limit must be positive".into()));
            }
        }
        for (name, v) in [
            ("reward factor", self.reward_factor),
            ("penalization factor", self.penalty_factor),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Config(format!("{name} {v} outside (0, 1)")));
            }
        }
        if self.depth_override == Some(0) || self.tenure_override == Some(0) {
            return Err(Error::Config("depth and tenure overrides must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_selection: SelectionVector,
    pub best_objective: u64,
    pub best_weight: u64,
    /// Time from the start of the run until the best solution was found.
    pub time_to_best: Duration,
    /// Number of tabu-search phases executed.
    pub rounds: u64,
    pub seed: u64,
}

impl RunResult {
    /// Same result ignoring timing, which is not reproducible.
    pub fn same_outcome(&self, other: &Self) -> bool {
        self.best_selection == other.best_selection
            && self.best_objective == other.best_objective
            && self.best_weight == other.best_weight
            && self.rounds == other.rounds
            && self.seed == other.seed
    }
}

/// Observes a whole run: every accepted tabu move plus every phase start.
pub trait RunObserver: SearchObserver {
    fn on_phase_start(&mut self, _state: &SearchState<'_>) {}
    fn on_new_best(&mut self, _best: &SearchState<'_>) {}
}

impl RunObserver for () {}

pub fn solve(inst: &Instance, cfg: &SolverConfig) -> Result<RunResult> {
    solve_observed(inst, cfg, &mut ())
}

pub fn solve_observed<O: RunObserver + ?Sized>(
    inst: &Instance,
    cfg: &SolverConfig,
    observer: &mut O,
) -> Result<RunResult> {
    cfg.validate()?;
    let mut params = TsParams::for_instance(inst, cfg.depth_override, cfg.tenure_override)?;
    let mut prob = ProbabilityVector::new(inst.item_count(), cfg.reward_factor, cfg.penalty_factor)?;
    let mut rng = SolverRng::seed_from_u64(cfg.seed);
    let start = Instant::now();
    if let Budget::Time(limit) = cfg.budget {
        params.deadline = start.checked_add(limit);
    }

    let mut current = initial_solution(inst, &mut rng);
    let mut best = current.clone();
    let mut time_to_best = start.elapsed();
    observer.on_new_best(&best);
    let mut rounds = 0u64;

    loop {
        let exhausted = match cfg.budget {
            Budget::Time(limit) => start.elapsed() > limit,
            Budget::Rounds(n) => rounds >= n,
        };
        if rounds > 0 && exhausted {
            break;
        }
        if rounds == 0 || !cfg.carry_probability {
            prob.reset();
        }
        observer.on_phase_start(&current);
        let phase_best = tabu_search(current, &mut prob, &params, &mut rng, observer);
        rounds += 1;
        if phase_best.objective() > best.objective() {
            best.clone_from(&phase_best);
            time_to_best = start.elapsed();
            observer.on_new_best(&best);
        }
        let next = cfg.perturbation.perturb(&phase_best, &prob, &mut rng);
        current = SearchState::new(inst, next).expect("perturbations keep solutions feasible");
    }

    Ok(RunResult {
        best_objective: best.objective(),
        best_weight: best.total_weight(),
        best_selection: best.into_selection(),
        time_to_best,
        rounds,
        seed: cfg.seed,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchSummary {
    pub f_best: u64,
    pub f_avg: f64,
    /// Population standard deviation of the run bests.
    pub std: f64,
    /// Mean time-to-best in seconds.
    pub t_avg: f64,
    pub per_run: Vec<RunResult>,
}

impl BatchSummary {
    pub fn from_runs(per_run: Vec<RunResult>) -> Result<Self> {
        if per_run.is_empty() {
            return Err(Error::Config("a batch needs at least one run".into()));
        }
        let values: Vec<f64> = per_run.iter().map(|r| r.best_objective as f64).collect();
        let times: Vec<f64> = per_run.iter().map(|r| r.time_to_best.as_secs_f64()).collect();
        let summary = summarize(&values);
        Ok(Self {
            f_best: per_run.iter().map(|r| r.best_objective).max().unwrap_or(0),
            f_avg: summary.mean,
            std: summary.std,
            t_avg: summarize(&times).mean,
            per_run,
        })
    }
}

fn run_seed(base: u64, run: usize) -> u64 {
    base.wrapping_add(run as u64)
}

/// `runs` independent solves with seeds `seed, seed + 1, ...`, executed on
/// the rayon pool. Results are ordered by run index.
pub fn batch(inst: &Instance, cfg: &SolverConfig, runs: usize) -> Result<BatchSummary> {
    if runs == 0 {
        return Err(Error::Config("runs must be at least 1".into()));
    }
    let per_run = (0..runs)
        .into_par_iter()
        .map(|k| {
            let cfg = SolverConfig {
                seed: run_seed(cfg.seed, k),
                ..cfg.clone()
            };
            solve(inst, &cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    BatchSummary::from_runs(per_run)
}

/// Like [`batch`] but on the calling thread.
pub fn batch_serial(inst: &Instance, cfg: &SolverConfig, runs: usize) -> Result<BatchSummary> {
    if runs == 0 {
        return Err(Error::Config("runs must be at least 1".into()));
    }
    let per_run = (0..runs)
        .map(|k| {
            let cfg = SolverConfig {
                seed: run_seed(cfg.seed, k),
                ..cfg.clone()
            };
            solve(inst, &cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    BatchSummary::from_runs(per_run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::tiny1;

    fn rounds(n: u64, seed: u64) -> SolverConfig {
        SolverConfig {
            budget: Budget::Rounds(n),
            seed,
            ..SolverConfig::default()
        }
    }

    fn fake_run(objective: u64) -> RunResult {
        RunResult {
            best_selection: SelectionVector::empty(1),
            best_objective: objective,
            best_weight: 0,
            time_to_best: Duration::from_millis(objective),
            rounds: 1,
            seed: 0,
        }
    }

    #[test]
    fn tiny_solve_hits_optimum() {
        let inst = tiny1();
        let cfg = SolverConfig {
            budget: Budget::Time(Duration::from_millis(200)),
            seed: 7,
            ..SolverConfig::default()
        };
        let r = solve(&inst, &cfg).unwrap();
        assert_eq!(r.best_objective, 12);
        assert_eq!(inst.full_objective(&r.best_selection), 12);
        assert!(r.best_weight <= 10);
        assert!(r.rounds >= 1);
    }

    #[test]
    fn zero_rounds_forces_one() {
        let r = solve(&tiny1(), &rounds(0, 3)).unwrap();
        assert_eq!(r.rounds, 1);
        assert_eq!(r.best_objective, 12);
    }

    #[test]
    fn config_validation() {
        let inst = tiny1();
        let bad = SolverConfig {
            reward_factor: 1.0,
            ..rounds(1, 0)
        };
        assert!(matches!(solve(&inst, &bad), Err(Error::Config(_))));
        let bad = SolverConfig {
            budget: Budget::Time(Duration::ZERO),
            ..SolverConfig::default()
        };
        assert!(solve(&inst, &bad).is_err());
        let bad = SolverConfig {
            depth_override: Some(0),
            ..rounds(1, 0)
        };
        assert!(solve(&inst, &bad).is_err());
    }

    #[test]
    fn large_instances_need_a_depth() {
        let inst = Instance::new(
            5,
            vec![1; 1100],
            vec![1],
            vec![vec![0]; 1100],
        )
        .unwrap();
        assert!(matches!(solve(&inst, &rounds(1, 0)), Err(Error::Config(_))));
        let cfg = SolverConfig {
            depth_override: Some(10),
            ..rounds(1, 0)
        };
        assert_eq!(solve(&inst, &cfg).unwrap().best_objective, 1);
    }

    #[test]
    fn summary_statistics() {
        let s = BatchSummary::from_runs(vec![fake_run(70677); 30]).unwrap();
        assert_eq!((s.f_best, format!("{:.2}", s.f_avg), format!("{:.2}", s.std)), (70677, "70677.00".into(), "0.00".into()));

        let s = BatchSummary::from_runs(vec![fake_run(1), fake_run(2), fake_run(3)]).unwrap();
        assert_eq!(s.f_best, 3);
        assert_eq!(s.f_avg, 2.0);
        assert!((s.std - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!((s.t_avg - 0.002).abs() < 1e-12);

        let s = BatchSummary::from_runs(vec![fake_run(5)]).unwrap();
        assert_eq!((s.f_best as f64, s.std), (s.f_avg, 0.0));
        assert!(BatchSummary::from_runs(vec![]).is_err());
    }

    #[test]
    fn batch_seeds_and_order() {
        let inst = tiny1();
        let s = batch(&inst, &rounds(2, 100), 4).unwrap();
        let seeds: Vec<u64> = s.per_run.iter().map(|r| r.seed).collect();
        assert_eq!(seeds, vec![100, 101, 102, 103]);
        assert_eq!(s.f_best, 12);
        assert!(batch(&inst, &rounds(1, 0), 0).is_err());
    }
}
