//! Dual-neighbourhood tabu search.
//!
//! Each iteration scans every feasible flip and every feasible swap, moves
//! to the best admissible neighbour (even if it is worse than the current
//! solution), marks the moved items tabu and feeds the probability vector.
//! A phase ends after `depth` consecutive iterations without improving the
//! phase best.

use std::time::Instant;

use rand::Rng;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::learning::ProbabilityVector;
use crate::state::{Move, MoveDelta, SearchState};

/// `4 + floor(max(m, n) / 100)`
pub fn tabu_tenure(item_count: usize, element_count: usize) -> u64 {
    4 + (item_count.max(element_count) / 100) as u64
}

/// `(1100 - m) * 20`, defined for `1 <= m < 1100` only.
pub fn tabu_depth(item_count: usize) -> Result<u64> {
    if item_count == 0 || item_count >= 1100 {
        return Err(Error::Config(format!(
            "no default tabu depth for m = {item_count}; set an explicit depth"
        )));
    }
    Ok((1100 - item_count as u64) * 20)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TsParams {
    /// Consecutive non-improving iterations before a phase stops.
    pub depth: u64,
    pub tenure: u64,
    /// Wall-clock cut-off; a phase still running at this instant stops
    /// early and returns its best so far.
    pub deadline: Option<Instant>,
}

impl TsParams {
    pub fn new(depth: u64, tenure: u64) -> Result<Self> {
        if depth == 0 || tenure == 0 {
            return Err(Error::Config("tabu depth and tenure must be positive".into()));
        }
        Ok(Self { depth, tenure, deadline: None })
    }

    /// Default rules, with optional overrides.
    pub fn for_instance(
        inst: &Instance,
        depth: Option<u64>,
        tenure: Option<u64>,
    ) -> Result<Self> {
        let depth = match depth {
            Some(d) => d,
            None => tabu_depth(inst.item_count())?,
        };
        let tenure = tenure.unwrap_or_else(|| tabu_tenure(inst.item_count(), inst.element_count()));
        Self::new(depth, tenure)
    }
}

/// Per-item expiry iterations. Iterations are numbered from 1; an item
/// marked at iteration `t` is tabu during `t + 1 ..= t + tenure`.
#[derive(Debug, Clone)]
pub struct TabuList {
    expiry: Vec<u64>,
    tenure: u64,
    iteration: u64,
}

impl TabuList {
    pub fn new(item_count: usize, tenure: u64) -> Self {
        Self {
            expiry: vec![0; item_count],
            tenure,
            iteration: 1,
        }
    }

    #[inline]
    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    pub fn tenure(&self) -> u64 {
        self.tenure
    }

    #[inline]
    pub fn expiry(&self, item: usize) -> u64 {
        self.expiry[item]
    }

    #[inline]
    pub fn is_tabu(&self, item: usize) -> bool {
        self.expiry[item] >= self.iteration
    }

    pub fn mark(&mut self, item: usize) {
        self.expiry[item] = self.iteration + self.tenure;
    }

    pub fn advance(&mut self) {
        self.iteration += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveChoice {
    pub mv: Move,
    pub delta: MoveDelta,
    /// Feasible moves examined, admissible or not.
    pub scanned: usize,
}

/// Keeps the maximum, breaking ties uniformly at random (reservoir of one).
struct BestPicker {
    value: i64,
    ties: u32,
    choice: Option<(Move, MoveDelta)>,
}

impl BestPicker {
    fn new() -> Self {
        Self {
            value: i64::MIN,
            ties: 0,
            choice: None,
        }
    }

    #[inline]
    fn offer<R: Rng + ?Sized>(&mut self, value: i64, mv: Move, delta: MoveDelta, rng: &mut R) {
        if value > self.value {
            self.value = value;
            self.ties = 1;
            self.choice = Some((mv, delta));
        } else if value == self.value {
            self.ties += 1;
            if rng.gen_range(0..self.ties) == 0 {
                self.choice = Some((mv, delta));
            }
        }
    }
}

/// Best admissible move of `N1 ∪ N2`, or `None` when no feasible admissible
/// move exists. A move touching a tabu item is admissible only when its
/// result strictly beats `best_so_far`.
pub fn select_move<R: Rng + ?Sized>(
    state: &SearchState<'_>,
    tabu: &TabuList,
    best_so_far: u64,
    rng: &mut R,
) -> Option<MoveChoice> {
    let inst = state.instance();
    let m = inst.item_count();
    let objective = state.objective() as i64;
    let residual = state.residual_capacity() as i64;
    let best_so_far = best_so_far as i64;

    // loss for selected items, gain for unselected ones
    let mut marginal = Vec::with_capacity(m);
    let mut selected = Vec::new();
    let mut unselected = Vec::new();
    for i in 0..m {
        if state.is_selected(i) {
            marginal.push(state.removal_loss(i) as i64);
            selected.push(i);
        } else {
            marginal.push(state.insertion_gain(i) as i64);
            unselected.push(i);
        }
    }

    let mut picker = BestPicker::new();
    let mut scanned = 0;
    let admissible = |value: i64, tabu_hit: bool| !tabu_hit || value > best_so_far;

    for &p in &selected {
        let delta = MoveDelta {
            delta_objective: -marginal[p],
            delta_weight: -(inst.weight(p) as i64),
            feasible: true,
        };
        scanned += 1;
        let value = objective + delta.delta_objective;
        if admissible(value, tabu.is_tabu(p)) {
            picker.offer(value, Move::Flip(p), delta, rng);
        }
    }
    for &q in &unselected {
        let w = inst.weight(q) as i64;
        if w > residual {
            continue;
        }
        let delta = MoveDelta {
            delta_objective: marginal[q],
            delta_weight: w,
            feasible: true,
        };
        scanned += 1;
        let value = objective + delta.delta_objective;
        if admissible(value, tabu.is_tabu(q)) {
            picker.offer(value, Move::Flip(q), delta, rng);
        }
    }

    for &p in &selected {
        let wp = inst.weight(p) as i64;
        let loss = marginal[p];
        let p_tabu = tabu.is_tabu(p);
        for &q in &unselected {
            let delta_weight = inst.weight(q) as i64 - wp;
            if delta_weight > residual {
                continue;
            }
            scanned += 1;
            // the swap gains at most insertion_gain(q)
            if objective + marginal[q] < picker.value {
                continue;
            }
            let recovered = if loss > 0 {
                state.shared_unique_profit(p, q) as i64
            } else {
                0
            };
            let delta_objective = marginal[q] + recovered - loss;
            let value = objective + delta_objective;
            if admissible(value, p_tabu || tabu.is_tabu(q)) {
                let delta = MoveDelta {
                    delta_objective,
                    delta_weight,
                    feasible: true,
                };
                picker.offer(value, Move::Swap { remove: p, add: q }, delta, rng);
            }
        }
    }

    picker
        .choice
        .map(|(mv, delta)| MoveChoice { mv, delta, scanned })
}

/// Called after every accepted move.
pub trait SearchObserver {
    fn on_move(&mut self, _state: &SearchState<'_>, _mv: Move) {}
}

impl SearchObserver for () {}

/// Runs one tabu-search phase from `state` and returns the best state seen.
/// The tabu list starts empty. Items entering the knapsack are rewarded in
/// `prob`, items leaving it are punished.
pub fn tabu_search<'a, R, O>(
    mut state: SearchState<'a>,
    prob: &mut ProbabilityVector,
    params: &TsParams,
    rng: &mut R,
    observer: &mut O,
) -> SearchState<'a>
where
    R: Rng + ?Sized,
    O: SearchObserver + ?Sized,
{
    let mut tabu = TabuList::new(state.instance().item_count(), params.tenure);
    let mut best = state.clone();
    let mut non_improving = 0;
    let mut iterations = 0u64;

    while non_improving < params.depth {
        iterations += 1;
        if iterations.is_multiple_of(64) && params.deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
        let Some(choice) = select_move(&state, &tabu, best.objective(), rng) else {
            break;
        };
        state
            .apply(choice.mv)
            .expect("select_move only returns feasible moves");
        for item in choice.mv.items() {
            if state.is_selected(item) {
                prob.reward(item);
            } else {
                prob.punish(item);
            }
            tabu.mark(item);
        }
        observer.on_move(&state, choice.mv);

        if state.objective() > best.objective() {
            best.clone_from(&state);
            non_improving = 0;
        } else {
            non_improving += 1;
        }
        tabu.advance();
    }
    best
}
