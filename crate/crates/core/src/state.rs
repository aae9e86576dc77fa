//! Incrementally evaluated search state.
//!
//! [`SearchState`] keeps, next to the selection, the coverage count `H_j` of
//! every element, the total weight and the objective. Move deltas are read
//! off the counts in `O(|E_q|)`; applying a move updates everything in place.

use std::fmt;

use crate::error::{Error, Result};
use crate::instance::{Instance, SelectionVector};

/// A neighbourhood move: toggle one item, or exchange a selected item for an
/// unselected one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Flip(usize),
    Swap { remove: usize, add: usize },
}

impl Move {
    /// Items whose status changes.
    pub fn items(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match *self {
            Move::Flip(q) => (q, None),
            Move::Swap { remove, add } => (remove, Some(add)),
        };
        std::iter::once(a).chain(b)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Flip(q) => write!(f, "flip({})", q + 1),
            Move::Swap { remove, add } => write!(f, "swap({} -> {})", remove + 1, add + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveDelta {
    pub delta_objective: i64,
    pub delta_weight: i64,
    pub feasible: bool,
}

#[derive(Clone)]
pub struct SearchState<'a> {
    inst: &'a Instance,
    selection: SelectionVector,
    coverage: Vec<u32>,
    /// Bit `j` set iff `coverage[j] == 1`.
    unique: Vec<u64>,
    weight: u64,
    objective: u64,
}

impl fmt::Debug for SearchState<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SearchState")
            .field("selection", &self.selection.items())
            .field("weight", &self.weight)
            .field("objective", &self.objective)
            .finish()
    }
}

impl PartialEq for SearchState<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.inst, other.inst)
            && self.selection == other.selection
            && self.coverage == other.coverage
            && self.weight == other.weight
            && self.objective == other.objective
    }
}

impl Eq for SearchState<'_> {}

impl<'a> SearchState<'a> {
    /// Builds the state of a feasible selection from scratch.
    pub fn new(inst: &'a Instance, selection: SelectionVector) -> Result<Self> {
        if selection.len() != inst.item_count() {
            return Err(Error::InvalidInput(format!(
                "selection has {} bits, instance has {} items",
                selection.len(),
                inst.item_count()
            )));
        }
        let weight = inst.total_weight(&selection);
        if weight > inst.capacity() {
            return Err(Error::Infeasible {
                weight,
                capacity: inst.capacity(),
            });
        }
        let mut coverage = vec![0u32; inst.element_count()];
        for i in selection.iter_selected() {
            for &e in inst.row(i) {
                coverage[e as usize] += 1;
            }
        }
        let mut unique = vec![0u64; inst.words_per_row()];
        let mut objective = 0;
        for (j, &h) in coverage.iter().enumerate() {
            if h > 0 {
                objective += inst.profit(j);
            }
            if h == 1 {
                unique[j / 64] |= 1 << (j % 64);
            }
        }
        Ok(Self {
            inst,
            selection,
            coverage,
            unique,
            weight,
            objective,
        })
    }

    pub fn empty(inst: &'a Instance) -> Self {
        Self::new(inst, SelectionVector::empty(inst.item_count()))
            .expect("the empty selection is always feasible")
    }

    #[inline]
    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    #[inline]
    pub fn selection(&self) -> &SelectionVector {
        &self.selection
    }

    pub fn into_selection(self) -> SelectionVector {
        self.selection
    }

    #[inline]
    pub fn coverage(&self) -> &[u32] {
        &self.coverage
    }

    #[inline]
    pub fn total_weight(&self) -> u64 {
        self.weight
    }

    #[inline]
    pub fn objective(&self) -> u64 {
        self.objective
    }

    #[inline]
    pub fn is_selected(&self, item: usize) -> bool {
        self.selection.is_selected(item)
    }

    #[inline]
    pub fn residual_capacity(&self) -> u64 {
        self.inst.capacity() - self.weight
    }

    /// Profit lost if the selected `item` leaves: elements it alone covers.
    #[inline]
    pub fn removal_loss(&self, item: usize) -> u64 {
        self.inst
            .row(item)
            .iter()
            .filter(|&&e| self.coverage[e as usize] == 1)
            .map(|&e| self.inst.profit(e as usize))
            .sum()
    }

    /// Profit gained if the unselected `item` enters: elements nobody covers.
    #[inline]
    pub fn insertion_gain(&self, item: usize) -> u64 {
        self.inst
            .row(item)
            .iter()
            .filter(|&&e| self.coverage[e as usize] == 0)
            .map(|&e| self.inst.profit(e as usize))
            .sum()
    }

    /// Profit of elements covered only by `remove` that `add` also covers.
    /// This is what a swap recovers on top of `insertion_gain(add)`.
    #[inline]
    pub fn shared_unique_profit(&self, remove: usize, add: usize) -> u64 {
        let a = self.inst.row_bits(remove);
        let b = self.inst.row_bits(add);
        let mut total = 0;
        for (w, ((x, y), u)) in a.iter().zip(b).zip(&self.unique).enumerate() {
            let mut word = x & y & u;
            while word != 0 {
                let bit = word.trailing_zeros() as usize;
                total += self.inst.profit(w * 64 + bit);
                word &= word - 1;
            }
        }
        total
    }

    #[inline]
    fn fits(&self, delta_weight: i64) -> bool {
        self.weight as i64 + delta_weight <= self.inst.capacity() as i64
    }

    pub fn flip_delta(&self, item: usize) -> MoveDelta {
        let w = self.inst.weight(item) as i64;
        let (delta_objective, delta_weight) = if self.is_selected(item) {
            (-(self.removal_loss(item) as i64), -w)
        } else {
            (self.insertion_gain(item) as i64, w)
        };
        MoveDelta {
            delta_objective,
            delta_weight,
            feasible: self.fits(delta_weight),
        }
    }

    /// Delta of exchanging selected `remove` for unselected `add`.
    pub fn swap_delta(&self, remove: usize, add: usize) -> Result<MoveDelta> {
        if !self.is_selected(remove) || self.is_selected(add) {
            return Err(Error::InvalidMove(format!(
                "swap needs item {} selected and item {} unselected",
                remove + 1,
                add + 1
            )));
        }
        Ok(self.swap_delta_unchecked(remove, add))
    }

    #[inline]
    pub(crate) fn swap_delta_unchecked(&self, remove: usize, add: usize) -> MoveDelta {
        let delta_objective = self.insertion_gain(add) as i64
            + self.shared_unique_profit(remove, add) as i64
            - self.removal_loss(remove) as i64;
        let delta_weight = self.inst.weight(add) as i64 - self.inst.weight(remove) as i64;
        MoveDelta {
            delta_objective,
            delta_weight,
            feasible: self.fits(delta_weight),
        }
    }

    pub fn delta(&self, mv: Move) -> Result<MoveDelta> {
        self.check_bounds(mv)?;
        match mv {
            Move::Flip(q) => Ok(self.flip_delta(q)),
            Move::Swap { remove, add } => self.swap_delta(remove, add),
        }
    }

    fn check_bounds(&self, mv: Move) -> Result<()> {
        let m = self.inst.item_count();
        if let Some(i) = mv.items().find(|&i| i >= m) {
            return Err(Error::InvalidMove(format!(
                "item {} out of range (m = {m})",
                i + 1
            )));
        }
        Ok(())
    }

    /// Applies a feasible move and returns its delta.
    pub fn apply(&mut self, mv: Move) -> Result<MoveDelta> {
        let delta = self.delta(mv)?;
        if !delta.feasible {
            return Err(Error::Infeasible {
                weight: (self.weight as i64 + delta.delta_weight) as u64,
                capacity: self.inst.capacity(),
            });
        }
        match mv {
            Move::Flip(q) => {
                if self.is_selected(q) {
                    self.remove_item(q)
                } else {
                    self.add_item(q)
                }
            }
            Move::Swap { remove, add } => {
                self.remove_item(remove);
                self.add_item(add);
            }
        }
        debug_assert!(self.weight <= self.inst.capacity());
        Ok(delta)
    }

    fn add_item(&mut self, item: usize) {
        let inst = self.inst;
        for &e in inst.row(item) {
            let e = e as usize;
            let h = &mut self.coverage[e];
            *h += 1;
            match *h {
                1 => {
                    self.objective += inst.profit(e);
                    self.unique[e / 64] |= 1 << (e % 64);
                }
                2 => self.unique[e / 64] &= !(1 << (e % 64)),
                _ => {}
            }
        }
        self.selection.set(item, true);
        self.weight += inst.weight(item);
    }

    fn remove_item(&mut self, item: usize) {
        let inst = self.inst;
        for &e in inst.row(item) {
            let e = e as usize;
            let h = &mut self.coverage[e];
            *h -= 1;
            match *h {
                0 => {
                    self.objective -= inst.profit(e);
                    self.unique[e / 64] &= !(1 << (e % 64));
                }
                1 => self.unique[e / 64] |= 1 << (e % 64),
                _ => {}
            }
        }
        self.selection.set(item, false);
        self.weight -= inst.weight(item);
    }

    /// True iff every cached quantity matches a rebuild from the selection.
    pub fn is_consistent(&self) -> bool {
        match SearchState::new(self.inst, self.selection.clone()) {
            Ok(fresh) => fresh == *self && fresh.unique == self.unique,
            Err(_) => false,
        }
    }
}
