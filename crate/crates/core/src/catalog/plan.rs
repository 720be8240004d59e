use std::collections::BTreeMap;

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::GaussianRational;

type Q = GaussianRational;

/// Real values that appear on special strata or edge labels.
pub const SPECIAL_VALUES: [(i64, i64); 17] = [
    (0, 1),
    (1, 1),
    (-1, 1),
    (-1, 2),
    (1, 2),
    (-2, 1),
    (2, 1),
    (1, 3),
    (-1, 3),
    (2, 3),
    (-2, 3),
    (3, 1),
    (-3, 1),
    (3, 2),
    (-3, 2),
    (-3, 4),
    (-4, 3),
];

/// Seeded source of parameter samples for families.
///
/// Every draw has nonzero real and imaginary parts of different absolute value, so it
/// avoids every real special value. Joint draws also keep sums, differences, products
/// and quotients of distinct parameters off the real line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationPlan {
    pub seed: u64,
    pub samples: usize,
}

impl Default for SpecializationPlan {
    fn default() -> Self {
        SpecializationPlan { seed: crate::invariants::DEFAULT_SEED, samples: 5 }
    }
}

fn stream(seed: u64, tag: &str) -> ChaCha8Rng {
    // FNV-1a keeps the per-tag stream stable across toolchains.
    let mut h: u64 = 0xcbf29ce484222325;
    for b in tag.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn draw(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let q =
            Q::complex((rng.gen_range(-9..=9), rng.gen_range(1..=4)), (rng.gen_range(-9..=9), rng.gen_range(1..=4)));
        if !q.re.is_zero() && !q.im.is_zero() && q.re.abs() != q.im.abs() {
            return q;
        }
    }
}

impl SpecializationPlan {
    pub fn new(seed: u64, samples: usize) -> Self {
        SpecializationPlan { seed, samples }
    }

    /// `samples` joint assignments of `names`, reproducible from `(seed, tag)`.
    pub fn assignments(&self, tag: &str, names: &[String]) -> Vec<BTreeMap<String, Q>> {
        if names.is_empty() {
            return vec![BTreeMap::new()];
        }
        let mut rng = stream(self.seed, tag);
        let mut out: Vec<BTreeMap<String, Q>> = Vec::new();
        while out.len() < self.samples {
            let vals: Vec<Q> = names.iter().map(|_| draw(&mut rng)).collect();
            let generic = vals.iter().enumerate().all(|(i, a)| {
                vals[i + 1..].iter().all(|b| {
                    let c = [a + b, a - b, a * b, a / b];
                    c.iter().all(|x| !x.is_real())
                })
            });
            let fresh = out.iter().all(|o| names.iter().zip(&vals).all(|(n, v)| o[n] != *v));
            if generic && fresh {
                out.push(names.iter().cloned().zip(vals).collect());
            }
        }
        out
    }

    /// Samples for a single parameter.
    pub fn values(&self, tag: &str) -> Vec<Q> {
        self.assignments(tag, &["p".to_string()]).into_iter().map(|m| m["p"].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_avoid_special_values_and_repeat() {
        let plan = SpecializationPlan::default();
        let v = plan.values("LS6");
        assert_eq!(v.len(), 5);
        for x in &v {
            for (n, d) in SPECIAL_VALUES {
                assert_ne!(*x, Q::ratio(n, d));
            }
        }
        assert_eq!(v, plan.values("LS6"));
        assert_ne!(v, plan.values("LS14"));
        assert_ne!(v, SpecializationPlan::new(1, 5).values("LS6"));
    }

    #[test]
    fn joint_samples_keep_parameters_apart() {
        let names = vec!["a".to_string(), "b".to_string()];
        for m in SpecializationPlan::default().assignments("LS13", &names) {
            assert_ne!(m["a"], m["b"]);
            assert!(!(&m["a"] + &m["b"]).is_real());
        }
    }
}
