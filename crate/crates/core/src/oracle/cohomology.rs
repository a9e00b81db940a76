//! Non-abelian `H¹(⟨σ⟩, G)` for a finite group `G` with an involution.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quaternion::{FiniteQuaternionRing, QEl};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Result {
    pub group_order: u64,
    pub cocycle_count: u64,
    pub class_count: u64,
    /// Least element of each class, sorted.
    pub representatives: Vec<QEl>,
    /// Size of each class, aligned with `representatives`.
    pub class_sizes: Vec<u64>,
    /// Whether `−1` lies outside the class of `1`.
    pub contains_minus_one_nontrivially: bool,
}

/// All `b ∈ G` with `b·σ(b) = 1`.
pub fn cocycles(ring: &FiniteQuaternionRing, group: &[QEl]) -> Vec<QEl> {
    let one = ring.one();
    group
        .par_iter()
        .copied()
        .filter(|&b| ring.mul(b, ring.sigma(b)) == one)
        .collect()
}

/// `{c⁻¹·b·σ(c) : c ∈ G}`.
pub fn orbit(ring: &FiniteQuaternionRing, group: &[QEl], b: QEl) -> HashSet<QEl> {
    group
        .par_iter()
        .map(|&c| ring.mul(ring.mul(ring.inv_norm_one(c), b), ring.sigma(c)))
        .collect()
}

/// Some `c ∈ G` with `c⁻¹·σ(c) = target`, if one exists.
pub fn coboundary_witness(ring: &FiniteQuaternionRing, group: &[QEl], target: QEl) -> Option<QEl> {
    group
        .par_iter()
        .copied()
        .filter(|&c| ring.mul(ring.inv_norm_one(c), ring.sigma(c)) == target)
        .min()
}

/// Partition the cocycles into classes.
///
/// The result does not depend on the order of `group` or `cocycles`.
pub fn h1_classes(ring: &FiniteQuaternionRing, group: &[QEl], cocycles: &[QEl]) -> H1Result {
    let mut class_of: HashMap<QEl, usize> = HashMap::with_capacity(cocycles.len());
    let mut classes: Vec<(QEl, u64)> = Vec::new();
    for &b in cocycles {
        if class_of.contains_key(&b) {
            continue;
        }
        let orb = orbit(ring, group, b);
        let id = classes.len();
        let rep = *orb.iter().min().expect("orbits are nonempty");
        for &x in &orb {
            class_of.insert(x, id);
        }
        classes.push((rep, orb.len() as u64));
    }
    assert_eq!(class_of.len(), cocycles.len(), "orbits must stay inside the cocycle set");
    let one_class = class_of.get(&ring.one()).copied();
    let minus_class = class_of.get(&ring.minus_one()).copied();
    classes.sort_unstable();
    H1Result {
        group_order: group.len() as u64,
        cocycle_count: cocycles.len() as u64,
        class_count: classes.len() as u64,
        representatives: classes.iter().map(|c| c.0).collect(),
        class_sizes: classes.iter().map(|c| c.1).collect(),
        contains_minus_one_nontrivially: one_class != minus_class,
    }
}

/// Cocycles and classes in one step.
pub fn h1(ring: &FiniteQuaternionRing, group: &[QEl]) -> H1Result {
    let z = cocycles(ring, group);
    h1_classes(ring, group, &z)
}

#[cfg(test)]
mod tests {
    use super::super::quaternion::{D0Type, Strategy, DEFAULT_GUARD};
    use super::super::ring::{ExtType, FiniteLocalRing};
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(p: u32, ext: ExtType, d0: D0Type) -> (FiniteQuaternionRing, Vec<QEl>) {
        let ring = FiniteQuaternionRing::new(FiniteLocalRing::for_ext(p, 1, ext, false).unwrap(), d0);
        let g = ring.enumerate_norm_one(Strategy::RowWise, DEFAULT_GUARD).unwrap();
        (ring, g)
    }

    #[test]
    fn split_pair_cocycles_are_pairs_of_inverses() {
        let (ring, g) = setup(3, ExtType::SplitPair, D0Type::Matrix);
        let z = cocycles(&ring, &g);
        assert_eq!(z.len(), 24);
        for b in &z {
            let first = b.map(|c| c.0);
            let second = b.map(|c| c.1);
            // Matrix product of the two components is the identity.
            let prod = [
                (first[0] * second[0] + first[1] * second[2]) % 3,
                (first[0] * second[1] + first[1] * second[3]) % 3,
                (first[2] * second[0] + first[3] * second[2]) % 3,
                (first[2] * second[1] + first[3] * second[3]) % 3,
            ];
            assert_eq!(prod, [1, 0, 0, 1]);
        }
        assert_eq!(h1_classes(&ring, &g, &z).class_count, 1);
    }

    #[test]
    fn identity_and_minus_one_are_cocycles() {
        for ext in ExtType::ALL {
            for d0 in D0Type::ALL {
                let (ring, g) = setup(3, ext, d0);
                let z: HashSet<QEl> = cocycles(&ring, &g).into_iter().collect();
                assert!(z.contains(&ring.one()) && z.contains(&ring.minus_one()));
            }
        }
    }

    #[test]
    fn class_partition_ignores_input_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (ext, d0) in [(ExtType::Ramified, D0Type::Matrix), (ExtType::Ramified, D0Type::Division), (ExtType::Unramified, D0Type::Division)] {
            let (ring, mut g) = setup(3, ext, d0);
            let mut z = cocycles(&ring, &g);
            let reference = h1_classes(&ring, &g, &z);
            for _ in 0..2 {
                g.shuffle(&mut rng);
                z.shuffle(&mut rng);
                assert_eq!(h1_classes(&ring, &g, &z), reference);
            }
            let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
            assert_eq!(single.install(|| h1_classes(&ring, &g, &z)), reference);
            assert_eq!(reference.class_sizes.iter().sum::<u64>(), reference.cocycle_count);
        }
    }
}
