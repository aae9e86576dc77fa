//! Problem data for the budgeted maximum coverage problem.
//!
//! An [`Instance`] holds `m` weighted items and `n` profitable elements. Item
//! `i` covers the element set `E_i`; selecting a subset of items under the
//! capacity earns the profit of every element covered at least once.
//!
//! Indices are 0-based throughout the API. The text format (see
//! [`crate::format`]) is the only place where 1-based indices appear.

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// Immutable problem data. Cheap to share across threads by reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    capacity: u64,
    weights: Vec<u64>,
    profits: Vec<u64>,
    rows: Vec<Vec<u32>>,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Instance {
    /// Builds an instance from 0-based incidence rows. Each row must be
    /// strictly ascending with indices below `profits.len()`.
    pub fn new(
        capacity: u64,
        weights: Vec<u64>,
        profits: Vec<u64>,
        rows: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let m = weights.len();
        let n = profits.len();
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(
                "an instance needs at least one item and one element".into(),
            ));
        }
        if rows.len() != m {
            return Err(Error::InvalidInput(format!(
                "{} incidence rows for {} items",
                rows.len(),
                m
            )));
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidInput(format!("item {} has zero weight", i + 1)));
        }
        if let Some(j) = profits.iter().position(|&p| p == 0) {
            return Err(Error::InvalidInput(format!("element {} has zero profit", j + 1)));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInput(format!(
                    "row of item {} is not strictly ascending",
                    i + 1
                )));
            }
            if let Some(&e) = row.last() {
                if e as usize >= n {
                    return Err(Error::InvalidInput(format!(
                        "row of item {} references element {} (n = {})",
                        i + 1,
                        e as usize + 1,
                        n
                    )));
                }
            }
        }

        let words_per_row = n.div_ceil(WORD_BITS);
        let mut bits = vec![0u64; words_per_row * m];
        for (i, row) in rows.iter().enumerate() {
            let base = i * words_per_row;
            for &e in row {
                let e = e as usize;
                bits[base + e / WORD_BITS] |= 1u64 << (e % WORD_BITS);
            }
        }

        Ok(Self {
            capacity,
            weights,
            profits,
            rows,
            words_per_row,
            bits,
        })
    }

    #[inline]
    pub fn item_count(&self) -> usize {
        self.weights.len()
    }

    #[inline]
    pub fn element_count(&self) -> usize {
        self.profits.len()
    }

    #[inline]
    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    #[inline]
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    #[inline]
    pub fn profits(&self) -> &[u64] {
        &self.profits
    }

    #[inline]
    pub fn weight(&self, item: usize) -> u64 {
        self.weights[item]
    }

    #[inline]
    pub fn profit(&self, element: usize) -> u64 {
        self.profits[element]
    }

    /// Elements covered by `item`, ascending.
    #[inline]
    pub fn row(&self, item: usize) -> &[u32] {
        &self.rows[item]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Packed incidence bits of `item`, `n.div_ceil(64)` words.
    #[inline]
    pub fn row_bits(&self, item: usize) -> &[u64] {
        let base = item * self.words_per_row;
        &self.bits[base..base + self.words_per_row]
    }

    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.words_per_row
    }

    #[inline]
    pub fn covers(&self, item: usize, element: usize) -> bool {
        self.row_bits(item)[element / WORD_BITS] >> (element % WORD_BITS) & 1 == 1
    }

    /// Same instance with a different budget.
    pub fn with_capacity(&self, capacity: u64) -> Self {
        Self {
            capacity,
            ..self.clone()
        }
    }

    /// Number of ones in the incidence matrix.
    pub fn incidence_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Fraction of ones in the incidence matrix.
    pub fn density(&self) -> f64 {
        self.incidence_count() as f64 / (self.item_count() as f64 * self.element_count() as f64)
    }

    /// 0-based items whose row is empty.
    pub fn empty_rows(&self) -> Vec<usize> {
        (0..self.item_count())
            .filter(|&i| self.rows[i].is_empty())
            .collect()
    }

    /// 0-based elements that no item covers.
    pub fn uncovered_elements(&self) -> Vec<usize> {
        let mut seen = vec![false; self.element_count()];
        for row in &self.rows {
            for &e in row {
                seen[e as usize] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| !s)
            .map(|(j, _)| j)
            .collect()
    }

    /// Sum of the profits of elements covered by at least one selected item.
    pub fn full_objective(&self, selection: &SelectionVector) -> u64 {
        debug_assert_eq!(selection.len(), self.item_count());
        let mut union = vec![0u64; self.words_per_row];
        for i in selection.iter_selected() {
            for (acc, w) in union.iter_mut().zip(self.row_bits(i)) {
                *acc |= w;
            }
        }
        let mut total = 0;
        for (wi, mut word) in union.into_iter().enumerate() {
            while word != 0 {
                let b = word.trailing_zeros() as usize;
                total += self.profits[wi * WORD_BITS + b];
                word &= word - 1;
            }
        }
        total
    }

    pub fn total_weight(&self, selection: &SelectionVector) -> u64 {
        debug_assert_eq!(selection.len(), self.item_count());
        selection.iter_selected().map(|i| self.weights[i]).sum()
    }

    pub fn is_feasible(&self, selection: &SelectionVector) -> bool {
        self.total_weight(selection) <= self.capacity
    }
}

/// One bit per item: `true` means the item is in the knapsack.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SelectionVector(Vec<bool>);

impl SelectionVector {
    pub fn empty(item_count: usize) -> Self {
        Self(vec![false; item_count])
    }

    pub fn full(item_count: usize) -> Self {
        Self(vec![true; item_count])
    }

    /// Selection of the given 0-based items.
    pub fn from_items(item_count: usize, items: &[usize]) -> Result<Self> {
        let mut sel = Self::empty(item_count);
        for &i in items {
            if i >= item_count {
                return Err(Error::InvalidInput(format!(
                    "item index {} out of range (m = {})",
                    i + 1,
                    item_count
                )));
            }
            sel.0[i] = true;
        }
        Ok(sel)
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn is_selected(&self, item: usize) -> bool {
        self.0[item]
    }

    #[inline]
    pub fn set(&mut self, item: usize, selected: bool) {
        self.0[item] = selected;
    }

    #[inline]
    pub fn toggle(&mut self, item: usize) {
        self.0[item] = !self.0[item];
    }

    pub fn as_bits(&self) -> &[bool] {
        &self.0
    }

    pub fn iter_selected(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn iter_unselected(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| !b).map(|(i, _)| i)
    }

    pub fn selected_count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Selected items as 0-based indices, ascending.
    pub fn items(&self) -> Vec<usize> {
        self.iter_selected().collect()
    }
}
