//! The kernel-Mallows estimation of distribution algorithm.
//!
//! Each iteration keeps the best half of the population as kernel centers,
//! turns the scheduled expected distance into a concentration `θ`, samples
//! half a population from the kernel mixture and keeps the best individuals
//! of the old population and the samples together.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mallows::{theta_for_expected_distance, HammingMallows, KernelSet};
use crate::perm::{CountTables, Permutation};
use crate::qap::{Objective, QapInstance};

/// Population size used when none is given.
pub const DEFAULT_POPULATION: usize = 972;
/// Schedule intensity used when none is given.
pub const DEFAULT_GAMMA: f64 = 5.14;
/// Initial expected distance as a fraction of `n`.
pub const DEFAULT_EK_START_FRACTION: f64 = 0.5;
/// Final expected distance.
pub const DEFAULT_EK_END: f64 = 0.25;
/// The evaluation budget is this multiple of `n²`.
pub const DEFAULT_BUDGET_MULTIPLIER: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleKind {
    Exponential,
    Linear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelMode {
    /// One kernel per selected individual.
    Kernels,
    /// A single Mallows model centered at the incumbent best.
    BestOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalStrategy {
    /// Full O(n²) evaluation of every sample.
    Full,
    /// Chain O(n) swap updates from the kernel center when the sample is
    /// close enough for that to be cheaper.
    DeltaChain,
}

/// Target expected distance per iteration, decreasing from `ek_start` at
/// `t = 0` to `ek_end` at `t = t_max`. With progress `p = t / t_max` the
/// exponential kind has travelled a fraction `δ(p)` of the way, so most of the
/// decrease happens early and late iterations stay close to `ek_end`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub ek_start: f64,
    pub ek_end: f64,
    pub gamma: f64,
    pub t_max: u64,
    pub kind: ScheduleKind,
}

/// `δ(q) = (e^{−γq} − 1) / (e^{−γ} − 1)`; `δ(0) = 0`, `δ(1) = 1`.
pub fn exponential_progress(gamma: f64, q: f64) -> f64 {
    (-gamma * q).exp_m1() / (-gamma).exp_m1()
}

impl Schedule {
    pub fn new(ek_start: f64, ek_end: f64, gamma: f64, t_max: u64, kind: ScheduleKind) -> Result<Self> {
        if !(ek_end > 0.0 && ek_start > ek_end && ek_start.is_finite()) {
            return Err(Error::Config(format!(
                "schedule needs ek_start > ek_end > 0, got {} and {}",
                ek_start, ek_end
            )));
        }
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Config(format!("gamma must be positive, got {}", gamma)));
        }
        if t_max == 0 {
            return Err(Error::Config("schedule needs at least one iteration".into()));
        }
        Ok(Schedule {
            ek_start,
            ek_end,
            gamma,
            t_max,
            kind,
        })
    }

    pub fn target(&self, t: u64) -> Result<f64> {
        if t > self.t_max {
            return Err(Error::InvalidArgument(format!(
                "iteration {} beyond t_max = {}",
                t, self.t_max
            )));
        }
        if t == 0 {
            return Ok(self.ek_start);
        }
        if t == self.t_max {
            return Ok(self.ek_end);
        }
        let progress = t as f64 / self.t_max as f64;
        let travelled = match self.kind {
            ScheduleKind::Exponential => exponential_progress(self.gamma, progress),
            ScheduleKind::Linear => progress,
        };
        Ok(self.ek_start - travelled * (self.ek_start - self.ek_end))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdaConfig {
    pub population_size: usize,
    pub gamma: f64,
    /// `E[K]₀ = ek_start_fraction · n`.
    pub ek_start_fraction: f64,
    pub ek_end: f64,
    /// Budget as a multiple of `n²`, used when `eval_budget` is unset.
    pub budget_multiplier: u64,
    pub eval_budget: Option<u64>,
    pub seed: u64,
    pub schedule_kind: ScheduleKind,
    pub kernel_mode: KernelMode,
    pub eval_strategy: EvalStrategy,
}

impl Default for EdaConfig {
    fn default() -> Self {
        EdaConfig {
            population_size: DEFAULT_POPULATION,
            gamma: DEFAULT_GAMMA,
            ek_start_fraction: DEFAULT_EK_START_FRACTION,
            ek_end: DEFAULT_EK_END,
            budget_multiplier: DEFAULT_BUDGET_MULTIPLIER,
            eval_budget: None,
            seed: 0,
            schedule_kind: ScheduleKind::Exponential,
            kernel_mode: KernelMode::Kernels,
            eval_strategy: EvalStrategy::Full,
        }
    }
}

impl EdaConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn budget_for(&self, n: usize) -> u64 {
        self.eval_budget
            .unwrap_or_else(|| self.budget_multiplier.saturating_mul((n * n) as u64))
    }

    /// Number of sampling iterations the budget affords.
    pub fn iterations_for(&self, n: usize) -> Result<u64> {
        self.validate()?;
        let budget = self.budget_for(n);
        let pop = self.population_size as u64;
        let t_max = budget.saturating_sub(pop) / (pop / 2);
        if budget < pop || t_max < 1 {
            return Err(Error::BudgetTooSmall {
                budget,
                population: self.population_size,
            });
        }
        Ok(t_max)
    }

    pub fn schedule_for(&self, n: usize) -> Result<Schedule> {
        let ek_start = self.ek_start_fraction * n as f64;
        if ek_start > n as f64 - 1.0 {
            return Err(Error::Config(format!(
                "initial expected distance {} exceeds n - 1 = {}",
                ek_start,
                n - 1
            )));
        }
        Schedule::new(
            ek_start,
            self.ek_end,
            self.gamma,
            self.iterations_for(n)?,
            self.schedule_kind,
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 || !self.population_size.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "population size must be even and at least 2, got {}",
                self.population_size
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iteration: u64,
    pub target_expected_distance: f64,
    pub theta: f64,
    pub best_objective: Objective,
    pub mean_objective: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub instance: String,
    pub seed: u64,
    pub best_permutation: Permutation,
    pub best_objective: Objective,
    pub evaluations_used: u64,
    pub iterations: u64,
    pub wall_seconds: f64,
    pub trace: Vec<TraceRecord>,
}

#[derive(Clone)]
struct Individual {
    perm: Permutation,
    objective: Objective,
}

fn sort_by_objective(pop: &mut [Individual]) {
    // stable: among equal objectives earlier (older) entries stay first
    pop.sort_by_key(|ind| ind.objective);
}

/// Concentration for a target expected distance; the upper end `n − 1` is
/// only reached by the uniform law `θ = 0`.
fn theta_for_target(tables: &CountTables, target: f64) -> Result<f64> {
    if target >= tables.n() as f64 - 1.0 {
        Ok(0.0)
    } else {
        theta_for_expected_distance(tables, target)
    }
}

/// Objective of `sample` starting from a known center objective, chaining
/// O(n) swap updates when fewer than `n/4` swaps are needed.
fn evaluate_from_center(
    inst: &QapInstance,
    center: &Individual,
    sample: &Permutation,
    strategy: EvalStrategy,
) -> Objective {
    if strategy == EvalStrategy::DeltaChain {
        let swaps = center
            .perm
            .transpositions_to(sample)
            .expect("sample and center share a size");
        if 4 * swaps.len() < inst.n() {
            let mut current = center.perm.as_slice().to_vec();
            let mut f = center.objective;
            for (i, j) in swaps {
                f = inst.delta_swap_unchecked(&current, f, i, j);
                current.swap(i, j);
            }
            return f;
        }
    }
    inst.evaluate_unchecked(sample.as_slice())
}

/// Runs the algorithm on `inst` until the evaluation budget is spent.
pub fn run(inst: &QapInstance, cfg: &EdaConfig) -> Result<RunResult> {
    let start = Instant::now();
    let n = inst.n();
    let schedule = cfg.schedule_for(n)?;
    let tables = CountTables::build(n)?;
    let pop_size = cfg.population_size;
    let half = pop_size / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut population = (0..pop_size)
        .map(|_| {
            let perm = Permutation::random(n, &mut rng)?;
            let objective = inst.evaluate_unchecked(perm.as_slice());
            Ok(Individual { perm, objective })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut evaluations = pop_size as u64;
    sort_by_objective(&mut population);

    let mut trace = Vec::with_capacity(schedule.t_max as usize);
    let mut offspring: Vec<Individual> = Vec::with_capacity(half);
    for t in 1..=schedule.t_max {
        let selected = match cfg.kernel_mode {
            KernelMode::Kernels => &population[..half],
            KernelMode::BestOnly => &population[..1],
        };
        let kernels = KernelSet::new(selected.iter().map(|ind| ind.perm.clone()).collect())?;
        let target = schedule.target(t)?;
        let theta = theta_for_target(&tables, target)?;
        let model = HammingMallows::with_tables(&tables, theta, true)?;

        offspring.clear();
        for _ in 0..half {
            let draw = kernels.sample(&model, &mut rng)?;
            let objective =
                evaluate_from_center(inst, &selected[draw.center], &draw.permutation, cfg.eval_strategy);
            offspring.push(Individual {
                perm: draw.permutation,
                objective,
            });
        }
        evaluations += half as u64;

        population.append(&mut offspring);
        sort_by_objective(&mut population);
        population.truncate(pop_size);

        let mean = population.iter().map(|ind| ind.objective as f64).sum::<f64>() / pop_size as f64;
        trace.push(TraceRecord {
            iteration: t,
            target_expected_distance: target,
            theta,
            best_objective: population[0].objective,
            mean_objective: mean,
        });
    }

    let best = &population[0];
    Ok(RunResult {
        instance: inst.name().to_string(),
        seed: cfg.seed,
        best_permutation: best.perm.clone(),
        best_objective: best.objective,
        evaluations_used: evaluations,
        iterations: schedule.t_max,
        wall_seconds: start.elapsed().as_secs_f64(),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sched(kind: ScheduleKind) -> Schedule {
        Schedule::new(13.0, 0.25, 5.14, 1000, kind).unwrap()
    }

    #[test]
    fn progress_closed_form() {
        let direct = ((-2.57f64).exp() - 1.0) / ((-5.14f64).exp() - 1.0);
        assert!((exponential_progress(5.14, 0.5) - direct).abs() < 1e-15);
        assert!((exponential_progress(5.14, 0.5) - 0.928_905_695_9).abs() < 1e-9);
        assert_eq!(exponential_progress(5.14, 0.0), 0.0);
        assert!((exponential_progress(5.14, 1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn schedule_boundaries_and_order() {
        for kind in [ScheduleKind::Exponential, ScheduleKind::Linear] {
            let s = sched(kind);
            assert_eq!(s.target(0).unwrap(), 13.0);
            assert_eq!(s.target(1000).unwrap(), 0.25);
            assert!(s.target(1001).is_err());
            let v: Vec<f64> = (0..=1000).map(|t| s.target(t).unwrap()).collect();
            assert!(v.windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn exponential_schedule_front_loads_the_decrease() {
        let s = sched(ScheduleKind::Exponential);
        let mid = 13.0 - exponential_progress(5.14, 0.5) * (13.0 - 0.25);
        assert!((s.target(500).unwrap() - mid).abs() < 1e-12);
        assert!((s.target(500).unwrap() - 1.1565).abs() < 1e-3);
        assert!((sched(ScheduleKind::Linear).target(500).unwrap() - 6.625).abs() < 1e-12);
    }

    #[test]
    fn schedule_validation() {
        assert!(Schedule::new(1.0, 2.0, 5.0, 10, ScheduleKind::Linear).is_err());
        assert!(Schedule::new(2.0, 0.0, 5.0, 10, ScheduleKind::Linear).is_err());
        assert!(Schedule::new(2.0, 1.0, 0.0, 10, ScheduleKind::Linear).is_err());
        assert!(Schedule::new(2.0, 1.0, 1.0, 0, ScheduleKind::Linear).is_err());
    }

    #[test]
    fn config_budget_and_iterations() {
        let cfg = EdaConfig::default();
        assert_eq!(cfg.budget_for(10), 100_000);
        assert_eq!(cfg.iterations_for(10).unwrap(), (100_000 - 972) / 486);
        let tight = EdaConfig {
            eval_budget: Some(972),
            ..EdaConfig::default()
        };
        assert!(matches!(tight.iterations_for(10), Err(Error::BudgetTooSmall { .. })));
        let odd = EdaConfig {
            population_size: 7,
            ..EdaConfig::default()
        };
        assert!(odd.validate().is_err());
    }

    #[test]
    fn start_fraction_bounded_by_n() {
        let cfg = EdaConfig {
            ek_start_fraction: 0.95,
            ..EdaConfig::default()
        };
        assert!(cfg.schedule_for(10).is_err());
    }
}
