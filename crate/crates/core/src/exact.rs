//! Exhaustive optimum for small instances, used as a test oracle.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::instance::{Instance, SelectionVector};

pub const MAX_EXACT_ITEMS: usize = 25;

/// Lexicographic order on the ascending index lists of two selections.
fn index_list_cmp(a: &[bool], b: &[bool]) -> Ordering {
    let mut ia = a.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i);
    let mut ib = b.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i);
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x != y => return x.cmp(&y),
            _ => {}
        }
    }
}

/// Maximum objective over all feasible selections by enumerating all `2^m`
/// subsets in Gray-code order. Among optimal selections the one whose
/// ascending index list is lexicographically smallest is returned.
pub fn exact_optimum(inst: &Instance) -> Result<(u64, SelectionVector)> {
    let m = inst.item_count();
    if m > MAX_EXACT_ITEMS {
        return Err(Error::TooLarge(format!(
            "exact enumeration supports m <= {MAX_EXACT_ITEMS}, got {m}"
        )));
    }
    let mut coverage = vec![0u32; inst.element_count()];
    let mut bits = vec![false; m];
    let mut weight = 0u64;
    let mut objective = 0u64;
    let mut best = (0u64, bits.clone());

    for step in 1u64..(1u64 << m) {
        let item = step.trailing_zeros() as usize;
        if bits[item] {
            bits[item] = false;
            weight -= inst.weight(item);
            for &e in inst.row(item) {
                let h = &mut coverage[e as usize];
                *h -= 1;
                if *h == 0 {
                    objective -= inst.profit(e as usize);
                }
            }
        } else {
            bits[item] = true;
            weight += inst.weight(item);
            for &e in inst.row(item) {
                let h = &mut coverage[e as usize];
                if *h == 0 {
                    objective += inst.profit(e as usize);
                }
                *h += 1;
            }
        }
        if weight > inst.capacity() {
            continue;
        }
        if objective > best.0
            || (objective == best.0 && index_list_cmp(&bits, &best.1) == Ordering::Less)
        {
            best = (objective, bits.clone());
        }
    }
    Ok((best.0, SelectionVector::from_bits(best.1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::{sel, tiny1};

    #[test]
    fn tiny1_optimum() {
        assert_eq!(exact_optimum(&tiny1()).unwrap(), (12, sel(3, &[1, 2])));
    }

    #[test]
    fn zero_capacity() {
        assert_eq!(
            exact_optimum(&tiny1().with_capacity(0)).unwrap(),
            (0, SelectionVector::empty(3))
        );
    }

    #[test]
    fn single_covering_item() {
        let inst = Instance::new(5, vec![5], vec![1, 2, 3], vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(exact_optimum(&inst).unwrap(), (6, sel(1, &[1])));
    }

    #[test]
    fn lexicographic_tie_break() {
        assert_eq!(index_list_cmp(&[true, false, true], &[true, true, false]), Ordering::Greater);
        assert_eq!(index_list_cmp(&[true, false, false], &[true, true, false]), Ordering::Less);
        assert_eq!(index_list_cmp(&[false; 3], &[false, false, true]), Ordering::Less);
        // two disjoint items of equal profit: {1} beats {2}
        let inst = Instance::new(1, vec![1, 1], vec![4, 4], vec![vec![0], vec![1]]).unwrap();
        assert_eq!(exact_optimum(&inst).unwrap(), (4, sel(2, &[1])));
    }

    #[test]
    fn too_many_items() {
        let inst = Instance::new(1, vec![1; 26], vec![1], vec![vec![0]; 26]).unwrap();
        assert!(matches!(exact_optimum(&inst), Err(Error::TooLarge(_))));
    }
}
