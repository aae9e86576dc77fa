//! Initial solution: random fill followed by a swap-based descent.

use rand::Rng;

use crate::instance::{Instance, SelectionVector};
use crate::learning::fill_until_misfit;
use crate::state::{Move, SearchState};

/// Adds random unselected items while they fit; stops at the first misfit.
pub fn random_fill<R: Rng + ?Sized>(inst: &Instance, rng: &mut R) -> SelectionVector {
    let mut selection = SelectionVector::empty(inst.item_count());
    fill_until_misfit(inst, &mut selection, 0, rng);
    selection
}

/// Best strictly improving feasible 1-for-1 exchange, ties broken uniformly.
pub fn best_improving_swap<R: Rng + ?Sized>(state: &SearchState<'_>, rng: &mut R) -> Option<Move> {
    let inst = state.instance();
    let residual = state.residual_capacity() as i64;
    let selected = state.selection().items();
    let unselected: Vec<usize> = state.selection().iter_unselected().collect();
    let gains: Vec<i64> = unselected
        .iter()
        .map(|&q| state.insertion_gain(q) as i64)
        .collect();

    let mut best_delta = 0i64;
    let mut ties = 0u32;
    let mut choice = None;
    for &p in &selected {
        let loss = state.removal_loss(p) as i64;
        let wp = inst.weight(p) as i64;
        for (&q, &gain) in unselected.iter().zip(&gains) {
            // a swap gains at most insertion_gain(q)
            if gain <= 0 || gain < best_delta || inst.weight(q) as i64 - wp > residual {
                continue;
            }
            let recovered = if loss > 0 {
                state.shared_unique_profit(p, q) as i64
            } else {
                0
            };
            let delta = gain + recovered - loss;
            if delta <= 0 || delta < best_delta {
                continue;
            }
            if delta > best_delta {
                best_delta = delta;
                ties = 1;
                choice = Some(Move::Swap { remove: p, add: q });
            } else {
                ties += 1;
                if rng.gen_range(0..ties) == 0 {
                    choice = Some(Move::Swap { remove: p, add: q });
                }
            }
        }
    }
    choice
}

/// Applies best improving exchanges until none is left.
pub fn descent_local_search<'a, R: Rng + ?Sized>(
    mut state: SearchState<'a>,
    rng: &mut R,
) -> SearchState<'a> {
    while let Some(mv) = best_improving_swap(&state, rng) {
        state
            .apply(mv)
            .expect("improving swaps are checked for feasibility");
    }
    state
}

pub fn initial_solution<'a, R: Rng + ?Sized>(inst: &'a Instance, rng: &mut R) -> SearchState<'a> {
    let selection = random_fill(inst, rng);
    let state = SearchState::new(inst, selection).expect("random fill respects the capacity");
    descent_local_search(state, rng)
}
