//! Finite premon generators and the verification suites that exercise the
//! factorization into irreducibles and its consequences on concrete instances.

mod report;
mod suites;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finite::{enumerate_monoids, CayleyTable, FiniteMonoid, FiniteMonoidError};
use crate::premon::{MatrixPreorder, Premon, PreorderMatrixError};

pub use report::{Claim, Counts, Provenance, Verdict, VerificationReport};
pub use suites::{
    find_irreducible_non_quark, irreducible_non_quark_elements, verify_coincidence_puiseux,
    verify_acyclic_atomic_iff_accp, verify_factorable_iff_locally_artinian, verify_factorable_puiseux,
    verify_height_axioms, verify_implication_ladder, verify_factorization, AccpFamily, NonQuarkWitness,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TestkitError {
    #[error(transparent)]
    Monoid(#[from] FiniteMonoidError),
    #[error(transparent)]
    Preorder(#[from] PreorderMatrixError),
    #[error("invalid family parameters: {0}")]
    Family(String),
    #[error("density must lie in [0, 1], got {0}")]
    Density(f64),
    #[error("exhaustive preorder enumeration is limited to order {max}, got {requested}")]
    TooManyPreorders { requested: usize, max: usize },
}

/// Largest carrier on which every labeled preorder is enumerated.
pub const MAX_EXHAUSTIVE_PREORDER_ORDER: usize = 4;

/// How the preorder of each generated instance is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum PreorderMode {
    /// The monoid's own divisibility preorder.
    Divisibility,
    /// `count` random digraphs per monoid, each closed reflexively and
    /// transitively. `density` is the edge probability before closure.
    Random { seed: u64, density: f64 },
    /// Every labeled preorder on the carrier.
    Exhaustive,
}

/// How an instance's preorder came about, enough to rebuild it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PreorderSource {
    Divisibility,
    Random { seed: u64, density: f64, draw: usize },
    Enumerated { index: usize },
}

#[derive(Clone, Debug)]
pub struct PremonInstance {
    pub monoid: FiniteMonoid,
    pub preorder: MatrixPreorder,
    /// Position of the monoid in `enumerate_monoids(order)`.
    pub monoid_index: usize,
    pub source: PreorderSource,
}

impl PremonInstance {
    pub fn new(monoid: FiniteMonoid, preorder: MatrixPreorder, monoid_index: usize, source: PreorderSource) -> Self {
        PremonInstance { monoid, preorder, monoid_index, source }
    }

    pub fn divisibility(monoid: FiniteMonoid, monoid_index: usize) -> Self {
        let mut preorder = monoid.divisibility().to_preorder();
        preorder.set_tag("divisibility");
        PremonInstance::new(monoid, preorder, monoid_index, PreorderSource::Divisibility)
    }

    pub fn premon(&self) -> Premon<FiniteMonoid, MatrixPreorder> {
        Premon::new(self.monoid.clone(), self.preorder.clone())
    }

    pub fn order(&self) -> usize {
        self.monoid.size()
    }

    pub fn provenance(&self) -> Provenance {
        Provenance::Finite {
            order: self.order(),
            monoid_index: self.monoid_index,
            table: self.monoid.to_cayley(),
            preorder: self.preorder.rows().to_vec(),
            source: self.source.clone(),
        }
    }

    /// Rebuilds an instance from a provenance record, validating both parts.
    pub fn from_parts(
        table: CayleyTable,
        preorder: Vec<Vec<bool>>,
        monoid_index: usize,
        source: PreorderSource,
    ) -> Result<Self, TestkitError> {
        let monoid = FiniteMonoid::from_cayley(table)?;
        let preorder = MatrixPreorder::new(preorder, "materialized")?;
        Ok(PremonInstance::new(monoid, preorder, monoid_index, source))
    }
}

/// A random relation on `n` points with edge probability `density`, closed
/// into a preorder.
pub fn random_preorder(rng: &mut impl Rng, n: usize, density: f64) -> MatrixPreorder {
    let rows = (0..n)
        .map(|i| (0..n).map(|j| i == j || rng.gen_bool(density)).collect())
        .collect();
    MatrixPreorder::closure_of(rows, "random").expect("square by construction")
}

/// Every reflexive, transitive relation on `{0, …, n-1}`, in the order of
/// their off-diagonal bit patterns.
pub fn all_preorders(n: usize) -> Result<Vec<MatrixPreorder>, TestkitError> {
    if n > MAX_EXHAUSTIVE_PREORDER_ORDER {
        return Err(TestkitError::TooManyPreorders {
            requested: n,
            max: MAX_EXHAUSTIVE_PREORDER_ORDER,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let mut rows = vec![vec![false; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = true;
        }
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            rows[i][j] = mask >> bit & 1 == 1;
        }
        if let Ok(p) = MatrixPreorder::new(rows, "enumerated") {
            out.push(p);
        }
    }
    Ok(out)
}

/// The monoids of order `n` crossed with preorders chosen by `mode`.
/// `count` is the number of random preorders per monoid and is ignored by
/// the other modes. Random draws for monoid `m` come from the ChaCha stream
/// `m` of `seed`, so any instance can be replayed from its provenance.
pub fn gen_finite_premons(n: usize, mode: PreorderMode, count: usize) -> Result<Vec<PremonInstance>, TestkitError> {
    let monoids = enumerate_monoids(n)?;
    let mut out = Vec::new();
    match mode {
        PreorderMode::Divisibility => {
            for (m, monoid) in monoids.into_iter().enumerate() {
                out.push(PremonInstance::divisibility(monoid, m));
            }
        }
        PreorderMode::Random { seed, density } => {
            if !(0.0..=1.0).contains(&density) {
                return Err(TestkitError::Density(density));
            }
            for (m, monoid) in monoids.into_iter().enumerate() {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(m as u64);
                for draw in 0..count {
                    let preorder = random_preorder(&mut rng, n, density);
                    let source = PreorderSource::Random { seed, density, draw };
                    out.push(PremonInstance::new(monoid.clone(), preorder, m, source));
                }
            }
        }
        PreorderMode::Exhaustive => {
            let preorders = all_preorders(n)?;
            for (m, monoid) in monoids.into_iter().enumerate() {
                for (index, p) in preorders.iter().enumerate() {
                    let source = PreorderSource::Enumerated { index };
                    out.push(PremonInstance::new(monoid.clone(), p.clone(), m, source));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorder_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| all_preorders(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
    }

    #[test]
    fn divisibility_instances() {
        assert_eq!(gen_finite_premons(1, PreorderMode::Divisibility, 0).unwrap().len(), 1);
        assert_eq!(gen_finite_premons(2, PreorderMode::Divisibility, 0).unwrap().len(), 2);
    }

    #[test]
    fn random_instances_are_preorders_and_replayable() {
        let mode = PreorderMode::Random { seed: 1, density: 0.5 };
        let a = gen_finite_premons(2, mode, 10).unwrap();
        let b = gen_finite_premons(2, mode, 10).unwrap();
        assert_eq!(a.len(), 20);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.preorder, y.preorder);
            assert!(MatrixPreorder::new(x.preorder.rows().to_vec(), "check").is_ok());
        }
        assert!(gen_finite_premons(2, PreorderMode::Random { seed: 1, density: 1.5 }, 1).is_err());
    }
}
