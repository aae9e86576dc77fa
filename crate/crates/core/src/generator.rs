//! Random instance generator.
//!
//! Each incidence `M_ij` is set independently with probability `density`.
//! Afterwards every empty row gets one uniformly chosen element and every
//! uncovered element gets one uniformly chosen item, so all items are useful
//! and every element can be covered.

use std::ops::RangeInclusive;

use rand::Rng;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rng::SolverRng;

pub const DEFAULT_WEIGHT_RANGE: RangeInclusive<u64> = 1..=100;
pub const DEFAULT_PROFIT_RANGE: RangeInclusive<u64> = 1..=100;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub item_count: usize,
    pub element_count: usize,
    pub density: f64,
    pub capacity: u64,
    pub weight_range: RangeInclusive<u64>,
    pub profit_range: RangeInclusive<u64>,
    pub seed: u64,
}

impl GeneratorSpec {
    /// Spec with the default `[1, 100]` weight and profit ranges.
    pub fn new(item_count: usize, element_count: usize, density: f64, capacity: u64, seed: u64) -> Self {
        Self {
            item_count,
            element_count,
            density,
            capacity,
            weight_range: DEFAULT_WEIGHT_RANGE,
            profit_range: DEFAULT_PROFIT_RANGE,
            seed,
        }
    }

    /// `bmcp_<m>_<n>_<density>_<C>`
    pub fn instance_name(&self) -> String {
        instance_name(self.item_count, self.element_count, self.density, self.capacity)
    }

    pub fn validate(&self) -> Result<()> {
        let cfg = |msg: String| Err(Error::Config(msg));
        if self.item_count == 0 || self.element_count == 0 {
            return cfg("m and n must be positive".into());
        }
        if !(self.density > 0.0 && self.density < 1.0) {
            return cfg(format!("density {} outside (0, 1)", self.density));
        }
        if self.density * (self.element_count as f64) < 1.0 {
            return cfg(format!(
                "density {} too small for n = {}: expected row would be empty",
                self.density, self.element_count
            ));
        }
        if self.capacity == 0 {
            return cfg("capacity must be positive".into());
        }
        for (name, r) in [("weight", &self.weight_range), ("profit", &self.profit_range)] {
            if *r.start() == 0 || r.start() > r.end() {
                return cfg(format!(
                    "{name} range {}..={} must be nonempty with a positive lower bound",
                    r.start(),
                    r.end()
                ));
            }
        }
        if self.element_count > u32::MAX as usize
            || self.item_count.checked_mul(self.element_count).is_none()
        {
            return Err(Error::TooLarge(format!(
                "{} x {} incidence matrix exceeds the index space",
                self.item_count, self.element_count
            )));
        }
        Ok(())
    }
}

pub fn instance_name(m: usize, n: usize, density: f64, capacity: u64) -> String {
    format!("bmcp_{m}_{n}_{density}_{capacity}")
}

pub fn generate_instance(spec: &GeneratorSpec) -> Result<Instance> {
    spec.validate()?;
    let m = spec.item_count;
    let n = spec.element_count;
    let mut rng = SolverRng::seed_from_u64(spec.seed);

    let weights: Vec<u64> = (0..m)
        .map(|_| rng.gen_range(spec.weight_range.clone()))
        .collect();
    let profits: Vec<u64> = (0..n)
        .map(|_| rng.gen_range(spec.profit_range.clone()))
        .collect();

    let mut rows: Vec<Vec<u32>> = (0..m)
        .map(|_| {
            (0..n as u32)
                .filter(|_| rng.gen_bool(spec.density))
                .collect()
        })
        .collect();

    for row in rows.iter_mut() {
        if row.is_empty() {
            row.push(rng.gen_range(0..n as u32));
        }
    }
    let mut covered = vec![false; n];
    for row in &rows {
        for &e in row {
            covered[e as usize] = true;
        }
    }
    for (j, _) in covered.iter().enumerate().filter(|(_, &c)| !c) {
        let i = rng.gen_range(0..m);
        let row = &mut rows[i];
        let pos = row.partition_point(|&e| e < j as u32);
        row.insert(pos, j as u32);
    }

    Instance::new(spec.capacity, weights, profits, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naming_follows_scheme() {
        assert_eq!(
            GeneratorSpec::new(585, 600, 0.05, 2000, 1).instance_name(),
            "bmcp_585_600_0.05_2000"
        );
        assert_eq!(
            GeneratorSpec::new(600, 600, 0.075, 1500, 1).instance_name(),
            "bmcp_600_600_0.075_1500"
        );
    }

    #[test]
    fn realized_density_near_target() {
        let inst = generate_instance(&GeneratorSpec::new(585, 600, 0.05, 2000, 11)).unwrap();
        assert!((inst.density() - 0.05).abs() <= 0.005, "{}", inst.density());
        let inst = generate_instance(&GeneratorSpec::new(600, 600, 0.075, 1500, 11)).unwrap();
        assert!((inst.density() - 0.075).abs() <= 0.0075, "{}", inst.density());
    }

    #[test]
    fn deterministic_in_seed() {
        let spec = GeneratorSpec::new(80, 90, 0.075, 1500, 42);
        assert_eq!(generate_instance(&spec).unwrap(), generate_instance(&spec).unwrap());
        let other = GeneratorSpec { seed: 43, ..spec.clone() };
        assert_ne!(generate_instance(&spec).unwrap(), generate_instance(&other).unwrap());
    }

    #[test]
    fn repaired_instances_have_no_dead_rows_or_elements() {
        for seed in 0..20 {
            let inst = generate_instance(&GeneratorSpec::new(30, 40, 0.03, 100, seed)).unwrap();
            assert!(inst.empty_rows().is_empty());
            assert!(inst.uncovered_elements().is_empty());
        }
    }

    #[test]
    fn values_stay_in_ranges() {
        let spec = GeneratorSpec {
            weight_range: 5..=9,
            profit_range: 20..=20,
            ..GeneratorSpec::new(50, 50, 0.1, 100, 3)
        };
        let inst = generate_instance(&spec).unwrap();
        assert!(inst.weights().iter().all(|w| (5..=9).contains(w)));
        assert!(inst.profits().iter().all(|&p| p == 20));
    }

    #[test]
    #[allow(clippy::reversed_empty_ranges)]
    fn invalid_specs_rejected() {
        let base = GeneratorSpec::new(10, 10, 0.5, 10, 0);
        assert!(generate_instance(&GeneratorSpec { density: 1.0, ..base.clone() }).is_err());
        assert!(generate_instance(&GeneratorSpec { density: 0.05, ..base.clone() }).is_err());
        assert!(generate_instance(&GeneratorSpec { weight_range: 0..=3, ..base.clone() }).is_err());
        assert!(generate_instance(&GeneratorSpec { profit_range: 5..=3, ..base.clone() }).is_err());
        assert!(generate_instance(&GeneratorSpec { capacity: 0, ..base.clone() }).is_err());
        let huge = GeneratorSpec::new(usize::MAX / 2, 1 << 20, 0.5, 10, 0);
        assert!(matches!(huge.validate(), Err(Error::TooLarge(_))));
    }
}
