//! `Λ₀ ⊗ R` for a maximal order `Λ₀` of the local quaternion algebra `D₀`,
//! and enumeration of its reduced-norm-one group.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ring::{least_irreducible_quadratic, El, FiniteLocalRing};
use crate::error::{Error, Result};

/// Default bound on the number of candidates an enumeration may visit.
pub const DEFAULT_GUARD: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum D0Type {
    Matrix,
    Division,
}

impl D0Type {
    pub const ALL: [D0Type; 2] = [D0Type::Matrix, D0Type::Division];

    pub fn is_ramified(self) -> bool {
        self == D0Type::Division
    }
}

impl fmt::Display for D0Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            D0Type::Matrix => "matrix",
            D0Type::Division => "division",
        })
    }
}

/// Four coordinates over the base ring.
///
/// Matrix model: `[[q0, q1], [q2, q3]]`.
/// Division model: `a + bω` with `a = q0 + q1ζ`, `b = q2 + q3ζ` in the unramified layer
/// `W ⊗ R`, `ω² = p`, `ωx = x̄ω`.
/// Eichler model: `[[q0, q1], [p·q2, q3]]`.
pub type QEl = [El; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuaternionModel {
    Matrix,
    Division,
    /// Level-`p` Eichler order in `M₂`, used as a cross-check.
    Eichler,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteQuaternionRing {
    pub base: FiniteLocalRing,
    pub model: QuaternionModel,
    /// `ζ² = tζ − n` for the unramified layer.
    w_poly: (u32, u32),
}

/// How the norm-one group is found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Solve for the last coordinate row by row.
    RowWise,
    /// Test every element; matrix-type models only.
    FullScan,
}

impl FiniteQuaternionRing {
    pub fn new(base: FiniteLocalRing, d0: D0Type) -> Self {
        let model = match d0 {
            D0Type::Matrix => QuaternionModel::Matrix,
            D0Type::Division => QuaternionModel::Division,
        };
        Self::with_model(base, model)
    }

    pub fn with_model(base: FiniteLocalRing, model: QuaternionModel) -> Self {
        FiniteQuaternionRing { base, model, w_poly: least_irreducible_quadratic(base.p) }
    }

    pub fn d0_type(&self) -> D0Type {
        match self.model {
            QuaternionModel::Division => D0Type::Division,
            _ => D0Type::Matrix,
        }
    }

    pub fn cardinality(&self) -> u128 {
        (self.base.cardinality() as u128).pow(4)
    }

    fn wmul(&self, a: (El, El), b: (El, El)) -> (El, El) {
        let r = &self.base;
        let (t, n) = self.w_poly;
        let yy = r.mul(a.1, b.1);
        (
            r.sub(r.mul(a.0, b.0), r.scale(n, yy)),
            r.add(r.add(r.mul(a.0, b.1), r.mul(a.1, b.0)), r.scale(t, yy)),
        )
    }

    fn wbar(&self, a: (El, El)) -> (El, El) {
        let r = &self.base;
        (r.add(a.0, r.scale(self.w_poly.0, a.1)), r.neg(a.1))
    }

    fn wnorm(&self, a: (El, El)) -> El {
        let r = &self.base;
        let (t, n) = self.w_poly;
        let cross = r.scale(t, r.mul(a.0, a.1));
        r.add(r.add(r.mul(a.0, a.0), cross), r.scale(n, r.mul(a.1, a.1)))
    }

    fn wadd(&self, a: (El, El), b: (El, El)) -> (El, El) {
        (self.base.add(a.0, b.0), self.base.add(a.1, b.1))
    }

    fn wscale_p(&self, a: (El, El)) -> (El, El) {
        let p = self.base.p;
        (self.base.scale(p, a.0), self.base.scale(p, a.1))
    }

    pub fn one(&self) -> QEl {
        let r = &self.base;
        match self.model {
            QuaternionModel::Division => [r.one(), r.zero(), r.zero(), r.zero()],
            _ => [r.one(), r.zero(), r.zero(), r.one()],
        }
    }

    pub fn minus_one(&self) -> QEl {
        self.neg(self.one())
    }

    pub fn neg(&self, x: QEl) -> QEl {
        x.map(|c| self.base.neg(c))
    }

    pub fn mul(&self, x: QEl, y: QEl) -> QEl {
        let r = &self.base;
        match self.model {
            QuaternionModel::Matrix => [
                r.add(r.mul(x[0], y[0]), r.mul(x[1], y[2])),
                r.add(r.mul(x[0], y[1]), r.mul(x[1], y[3])),
                r.add(r.mul(x[2], y[0]), r.mul(x[3], y[2])),
                r.add(r.mul(x[2], y[1]), r.mul(x[3], y[3])),
            ],
            QuaternionModel::Eichler => {
                let p = r.p;
                [
                    r.add(r.mul(x[0], y[0]), r.scale(p, r.mul(x[1], y[2]))),
                    r.add(r.mul(x[0], y[1]), r.mul(x[1], y[3])),
                    r.add(r.mul(x[2], y[0]), r.mul(x[3], y[2])),
                    r.add(r.scale(p, r.mul(x[2], y[1])), r.mul(x[3], y[3])),
                ]
            }
            QuaternionModel::Division => {
                let (a, b) = ((x[0], x[1]), (x[2], x[3]));
                let (c, d) = ((y[0], y[1]), (y[2], y[3]));
                let first = self.wadd(self.wmul(a, c), self.wscale_p(self.wmul(b, self.wbar(d))));
                let second = self.wadd(self.wmul(a, d), self.wmul(b, self.wbar(c)));
                [first.0, first.1, second.0, second.1]
            }
        }
    }

    /// Reduced norm, an element of the base ring `R`.
    pub fn nrd(&self, x: QEl) -> El {
        let r = &self.base;
        match self.model {
            QuaternionModel::Matrix => r.sub(r.mul(x[0], x[3]), r.mul(x[1], x[2])),
            QuaternionModel::Eichler => r.sub(r.mul(x[0], x[3]), r.scale(r.p, r.mul(x[1], x[2]))),
            QuaternionModel::Division => {
                r.sub(self.wnorm((x[0], x[1])), r.scale(r.p, self.wnorm((x[2], x[3]))))
            }
        }
    }

    /// Inverse of an element of reduced norm one.
    pub fn inv_norm_one(&self, x: QEl) -> QEl {
        let r = &self.base;
        match self.model {
            QuaternionModel::Matrix | QuaternionModel::Eichler => [x[3], r.neg(x[1]), r.neg(x[2]), x[0]],
            QuaternionModel::Division => {
                let a = self.wbar((x[0], x[1]));
                [a.0, a.1, r.neg(x[2]), r.neg(x[3])]
            }
        }
    }

    /// `id ⊗ σ`.
    pub fn sigma(&self, x: QEl) -> QEl {
        x.map(|c| self.base.sigma(c))
    }

    /// Number of candidates visited by an enumeration.
    pub fn search_space(&self, strategy: Strategy) -> u128 {
        let n = self.base.cardinality() as u128;
        match strategy {
            Strategy::RowWise => n.pow(3),
            Strategy::FullScan => n.pow(4),
        }
    }

    /// All elements of reduced norm one, sorted.
    pub fn enumerate_norm_one(&self, strategy: Strategy, guard: u128) -> Result<Vec<QEl>> {
        if strategy == Strategy::FullScan && self.model == QuaternionModel::Division {
            return Err(Error::Invalid("full scan is only implemented for matrix models".into()));
        }
        let requested = self.search_space(strategy);
        if requested > guard {
            return Err(Error::GuardExceeded { requested, guard });
        }
        let mut out = match (strategy, self.model) {
            (Strategy::FullScan, _) => self.full_scan(),
            (Strategy::RowWise, QuaternionModel::Division) => self.division_row_wise(),
            (Strategy::RowWise, _) => self.matrix_row_wise(),
        };
        out.par_sort_unstable();
        Ok(out)
    }

    /// `x·w = v`, bucketed by `v`.
    fn product_table(&self) -> Vec<Vec<(El, El)>> {
        let r = &self.base;
        let els = r.elements();
        let mut table = vec![Vec::new(); (r.q as usize).pow(2)];
        for &x in &els {
            for &w in &els {
                table[r.index(r.mul(x, w))].push((x, w));
            }
        }
        table
    }

    fn matrix_row_wise(&self) -> Vec<QEl> {
        let r = &self.base;
        let table = self.product_table();
        let els = r.elements();
        let off_diagonal = |y: El, z: El| match self.model {
            QuaternionModel::Eichler => r.scale(r.p, r.mul(y, z)),
            _ => r.mul(y, z),
        };
        els.par_iter()
            .flat_map_iter(|&y| {
                let table = &table;
                els.iter().flat_map(move |&z| {
                    let target = r.add(r.one(), off_diagonal(y, z));
                    table[r.index(target)].iter().map(move |&(x, w)| [x, y, z, w])
                })
            })
            .collect()
    }

    fn division_row_wise(&self) -> Vec<QEl> {
        let r = &self.base;
        let els = r.elements();
        let layer: Vec<(El, El)> = els.iter().flat_map(|&a| els.iter().map(move |&b| (a, b))).collect();
        let mut by_norm = vec![Vec::new(); (r.q as usize).pow(2)];
        for &b in &layer {
            by_norm[r.index(self.wnorm(b))].push(b);
        }
        layer
            .par_iter()
            .flat_map_iter(|&a| {
                let na = self.wnorm(a);
                let by_norm = &by_norm;
                els.iter()
                    .filter(move |&&v| r.sub(na, r.scale(r.p, v)) == r.one())
                    .flat_map(move |&v| by_norm[r.index(v)].iter().map(move |&b| [a.0, a.1, b.0, b.1]))
            })
            .collect()
    }

    fn full_scan(&self) -> Vec<QEl> {
        let els = self.base.elements();
        let one = self.base.one();
        els.par_iter()
            .flat_map_iter(|&x| {
                let els = &els;
                els.iter().flat_map(move |&y| {
                    els.iter().flat_map(move |&z| {
                        els.iter().filter_map(move |&w| {
                            let q = [x, y, z, w];
                            (self.nrd(q) == one).then_some(q)
                        })
                    })
                })
            })
            .collect()
    }
}

impl fmt::Display for FiniteQuaternionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let model = match self.model {
            QuaternionModel::Matrix => "M2",
            QuaternionModel::Division => "Lambda0",
            QuaternionModel::Eichler => "Eichler",
        };
        write!(f, "{model}({})", self.base)
    }
}

#[cfg(test)]
mod tests {
    use super::super::ring::ExtType;
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn all_rings() -> Vec<FiniteQuaternionRing> {
        let mut out = Vec::new();
        for (p, e) in [(2, 1), (2, 2), (3, 1), (5, 1)] {
            let mut bases = vec![FiniteLocalRing::base(p, e).unwrap()];
            bases.extend(ExtType::ALL.map(|x| FiniteLocalRing::for_ext(p, e, x, false).unwrap()));
            for b in bases {
                for m in [QuaternionModel::Matrix, QuaternionModel::Division, QuaternionModel::Eichler] {
                    out.push(FiniteQuaternionRing::with_model(b, m));
                }
            }
        }
        out
    }

    fn random(ring: &FiniteQuaternionRing, rng: &mut ChaCha8Rng) -> QEl {
        let els = ring.base.elements();
        [(); 4].map(|_| els[rng.gen_range(0..els.len())])
    }

    #[test]
    fn algebra_axioms_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ring in all_rings() {
            let r = &ring.base;
            for _ in 0..1000 {
                let (x, y, z) = (random(&ring, &mut rng), random(&ring, &mut rng), random(&ring, &mut rng));
                assert_eq!(ring.mul(ring.mul(x, y), z), ring.mul(x, ring.mul(y, z)), "{ring}");
                assert_eq!(ring.nrd(ring.mul(x, y)), r.mul(ring.nrd(x), ring.nrd(y)), "{ring}");
                assert_eq!(ring.nrd(ring.sigma(x)), r.sigma(ring.nrd(x)));
                assert_eq!(ring.sigma(ring.mul(x, y)), ring.mul(ring.sigma(x), ring.sigma(y)));
                assert_eq!(ring.mul(x, ring.one()), x);
            }
        }
    }

    #[test]
    fn examples() {
        let count = |base: FiniteLocalRing, d0| {
            FiniteQuaternionRing::new(base, d0).enumerate_norm_one(Strategy::RowWise, DEFAULT_GUARD).unwrap().len()
        };
        assert_eq!(count(FiniteLocalRing::base(3, 1).unwrap(), D0Type::Matrix), 24);
        assert_eq!(count(FiniteLocalRing::base(3, 1).unwrap(), D0Type::Division), 36);
        assert_eq!(count(FiniteLocalRing::unramified(3, 1).unwrap(), D0Type::Matrix), 720);
        assert_eq!(count(FiniteLocalRing::base(2, 2).unwrap(), D0Type::Matrix), 48);
    }

    #[test]
    fn row_wise_agrees_with_full_scan() {
        for ring in all_rings() {
            if ring.model == QuaternionModel::Division || ring.search_space(Strategy::FullScan) > 2_000_000 {
                continue;
            }
            let a = ring.enumerate_norm_one(Strategy::RowWise, DEFAULT_GUARD).unwrap();
            let b = ring.enumerate_norm_one(Strategy::FullScan, DEFAULT_GUARD).unwrap();
            assert_eq!(a, b, "{ring}");
        }
    }

    #[test]
    fn enumerated_elements_form_a_group() {
        for ring in all_rings() {
            let g = ring.enumerate_norm_one(Strategy::RowWise, DEFAULT_GUARD).unwrap();
            if g.len() > 4000 {
                continue;
            }
            let set: std::collections::HashSet<QEl> = g.iter().copied().collect();
            assert!(set.contains(&ring.one()) && set.contains(&ring.minus_one()));
            for &x in g.iter().step_by(1 + g.len() / 50) {
                assert_eq!(ring.mul(x, ring.inv_norm_one(x)), ring.one(), "{ring}");
                assert!(set.contains(&ring.sigma(x)));
                for &y in g.iter().step_by(1 + g.len() / 50) {
                    assert!(set.contains(&ring.mul(x, y)));
                }
            }
        }
    }

    #[test]
    fn guard_is_enforced() {
        let ring = FiniteQuaternionRing::new(FiniteLocalRing::unramified(7, 1).unwrap(), D0Type::Matrix);
        let err = ring.enumerate_norm_one(Strategy::FullScan, 1_000_000).unwrap_err();
        assert_eq!(err, Error::GuardExceeded { requested: 49u128.pow(4), guard: 1_000_000 });
    }
}
