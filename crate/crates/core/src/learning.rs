//! Probability learning and the two perturbation policies.
//!
//! Every item carries a selection probability. Tabu search rewards an item
//! each time it enters the knapsack and punishes it each time it leaves
//! (linear reward-penalty learning automaton). The probability perturbation
//! then ejects likely items and admits unlikely ones to push the search
//! towards unexplored regions.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, SelectionVector};
use crate::rng::open_unit;
use crate::state::SearchState;

pub const INITIAL_PROBABILITY: f64 = 0.5;
pub const DEFAULT_REWARD_FACTOR: f64 = 0.5;
pub const DEFAULT_PENALTY_FACTOR: f64 = 0.5;

fn check_factor(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} {value} outside (0, 1)")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    prob: Vec<f64>,
    reward_factor: f64,
    penalty_factor: f64,
}

impl ProbabilityVector {
    /// All entries start at 0.5.
    pub fn new(item_count: usize, reward_factor: f64, penalty_factor: f64) -> Result<Self> {
        Self::from_values(
            vec![INITIAL_PROBABILITY; item_count],
            reward_factor,
            penalty_factor,
        )
    }

    pub fn with_defaults(item_count: usize) -> Self {
        Self::new(item_count, DEFAULT_REWARD_FACTOR, DEFAULT_PENALTY_FACTOR)
            .expect("default factors are valid")
    }

    /// Arbitrary starting values in `[0, 1]`.
    pub fn from_values(values: Vec<f64>, reward_factor: f64, penalty_factor: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Config("probability vector needs at least one item".into()));
        }
        check_factor("reward factor", reward_factor)?;
        check_factor("penalization factor", penalty_factor)?;
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::Config(format!("probability {v} outside [0, 1]")));
        }
        Ok(Self {
            prob: values,
            reward_factor,
            penalty_factor,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.prob.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.prob.is_empty()
    }

    #[inline]
    pub fn get(&self, item: usize) -> f64 {
        self.prob[item]
    }

    pub fn values(&self) -> &[f64] {
        &self.prob
    }

    pub fn reward_factor(&self) -> f64 {
        self.reward_factor
    }

    pub fn penalty_factor(&self) -> f64 {
        self.penalty_factor
    }

    /// Back to 0.5 everywhere, keeping the factors.
    pub fn reset(&mut self) {
        self.prob.fill(INITIAL_PROBABILITY);
    }

    /// `p_i <- beta + (1 - beta) * p_i`
    #[inline]
    pub fn reward(&mut self, item: usize) {
        let p = &mut self.prob[item];
        *p = self.reward_factor + (1.0 - self.reward_factor) * *p;
    }

    /// `p_i <- (1 - gamma) * p_i`
    #[inline]
    pub fn punish(&mut self, item: usize) {
        self.prob[item] *= 1.0 - self.penalty_factor;
    }
}

/// How the next tabu-search start is derived from the last phase's best.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PerturbationPolicy {
    /// Drop and pick items by their learned probabilities (PLTS).
    #[default]
    Probability,
    /// Drop half of the selected items uniformly, then refill (PLTS0).
    Random,
}

impl PerturbationPolicy {
    pub fn perturb<R: Rng + ?Sized>(
        self,
        best: &SearchState<'_>,
        prob: &ProbabilityVector,
        rng: &mut R,
    ) -> SelectionVector {
        match self {
            PerturbationPolicy::Probability => probability_perturbation(best, prob, rng),
            PerturbationPolicy::Random => random_perturbation(best, rng),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PerturbationPolicy::Probability => "PLTS",
            PerturbationPolicy::Random => "PLTS0",
        }
    }
}

impl fmt::Display for PerturbationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PerturbationPolicy::Probability => "probability",
            PerturbationPolicy::Random => "random",
        })
    }
}

impl FromStr for PerturbationPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "probability" | "plts" => Ok(PerturbationPolicy::Probability),
            "random" | "plts0" => Ok(PerturbationPolicy::Random),
            other => Err(Error::Config(format!("unknown perturbation policy `{other}`"))),
        }
    }
}

/// Drops each selected item with its probability, then visits the unselected
/// items in random order and picks each with the complementary probability.
/// The pick scan stops at the first item that no longer fits.
pub fn probability_perturbation<R: Rng + ?Sized>(
    best: &SearchState<'_>,
    prob: &ProbabilityVector,
    rng: &mut R,
) -> SelectionVector {
    let inst = best.instance();
    let mut selection = best.selection().clone();
    let weight = drop_by_probability(inst, &mut selection, best.total_weight(), prob, rng);
    pick_by_probability(inst, &mut selection, weight, prob, rng);
    selection
}

/// Deselects every selected item `i` for which a draw `u` in (0, 1)
/// satisfies `u <= p_i`. Returns the new weight.
pub(crate) fn drop_by_probability<R: Rng + ?Sized>(
    inst: &Instance,
    selection: &mut SelectionVector,
    mut weight: u64,
    prob: &ProbabilityVector,
    rng: &mut R,
) -> u64 {
    for i in selection.items() {
        if open_unit(rng) <= prob.get(i) {
            selection.set(i, false);
            weight -= inst.weight(i);
        }
    }
    weight
}

fn pick_by_probability<R: Rng + ?Sized>(
    inst: &Instance,
    selection: &mut SelectionVector,
    mut weight: u64,
    prob: &ProbabilityVector,
    rng: &mut R,
) -> u64 {
    let mut candidates: Vec<usize> = selection.iter_unselected().collect();
    candidates.shuffle(rng);
    for j in candidates {
        if weight + inst.weight(j) > inst.capacity() {
            break;
        }
        if open_unit(rng) > prob.get(j) {
            selection.set(j, true);
            weight += inst.weight(j);
        }
    }
    weight
}

/// Removes a uniform random half (rounded down) of the selected items, then
/// adds random unselected items until the first one that does not fit.
pub fn random_perturbation<R: Rng + ?Sized>(best: &SearchState<'_>, rng: &mut R) -> SelectionVector {
    let inst = best.instance();
    let mut selection = best.selection().clone();
    let weight = drop_random_half(inst, &mut selection, best.total_weight(), rng);
    fill_until_misfit(inst, &mut selection, weight, rng);
    selection
}

/// Deselects a uniform random subset of `floor(k / 2)` of the `k` selected
/// items. Returns the new weight.
pub(crate) fn drop_random_half<R: Rng + ?Sized>(
    inst: &Instance,
    selection: &mut SelectionVector,
    mut weight: u64,
    rng: &mut R,
) -> u64 {
    let selected = selection.items();
    for &i in selected.choose_multiple(rng, selected.len() / 2) {
        selection.set(i, false);
        weight -= inst.weight(i);
    }
    weight
}

/// Adds unselected items in uniformly random order, stopping at the first
/// one that would exceed the capacity. Returns the new weight.
pub(crate) fn fill_until_misfit<R: Rng + ?Sized>(
    inst: &Instance,
    selection: &mut SelectionVector,
    mut weight: u64,
    rng: &mut R,
) -> u64 {
    let mut candidates: Vec<usize> = selection.iter_unselected().collect();
    candidates.shuffle(rng);
    for j in candidates {
        let w = inst.weight(j);
        if weight + w > inst.capacity() {
            break;
        }
        selection.set(j, true);
        weight += w;
    }
    weight
}
