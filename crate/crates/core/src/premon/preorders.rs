use thiserror::Error;

use super::{Divisible, Enumeration, Monoid, Preorder};
use crate::budget::{SearchBudget, Tri};

/// Equality as a preorder: nothing lies strictly below anything.
#[derive(Clone, Copy, Debug, Default)]
pub struct Discrete;

impl<M: Monoid> Preorder<M> for Discrete {
    fn leq(&self, monoid: &M, x: &M::Elem, y: &M::Elem, budget: &SearchBudget) -> Tri {
        monoid.equal(x, y, budget)
    }

    fn tag(&self) -> &str {
        "discrete"
    }

    fn lower_candidates(&self, _: &M, x: &M::Elem, _: &SearchBudget) -> Enumeration<M::Elem> {
        Enumeration::complete(vec![x.clone()])
    }

    fn upper_candidates(&self, _: &M, x: &M::Elem, _: &SearchBudget) -> Enumeration<M::Elem> {
        Enumeration::complete(vec![x.clone()])
    }
}

/// The full relation: every pair is related, so every element is a unit.
#[derive(Clone, Copy, Debug, Default)]
pub struct Flat;

impl<M: Monoid> Preorder<M> for Flat {
    fn leq(&self, _: &M, _: &M::Elem, _: &M::Elem, _: &SearchBudget) -> Tri {
        Tri::True
    }

    fn tag(&self) -> &str {
        "flat"
    }
}

/// `x ∣ y` iff `y ∈ HxH`, delegated to the monoid.
#[derive(Clone, Copy, Debug, Default)]
pub struct Divisibility;

impl<M: Divisible> Preorder<M> for Divisibility {
    fn leq(&self, monoid: &M, x: &M::Elem, y: &M::Elem, budget: &SearchBudget) -> Tri {
        monoid.divides(x, y, budget)
    }

    fn tag(&self) -> &str {
        "divisibility"
    }

    fn lower_candidates(&self, monoid: &M, x: &M::Elem, budget: &SearchBudget) -> Enumeration<M::Elem> {
        monoid.divisor_candidates(x, budget)
    }

    fn upper_candidates(&self, monoid: &M, x: &M::Elem, budget: &SearchBudget) -> Enumeration<M::Elem> {
        monoid.multiple_candidates(x, budget)
    }

    fn descending_chain(
        &self,
        monoid: &M,
        x: &M::Elem,
        len: usize,
        budget: &SearchBudget,
    ) -> Option<Vec<M::Elem>> {
        monoid.divisor_chain(x, len, budget)
    }

    fn descent_is_proven(&self, monoid: &M) -> bool {
        monoid.divisor_chain_is_proven()
    }

    fn artinian_criterion(&self, monoid: &M, x: &M::Elem, budget: &SearchBudget) -> Tri {
        monoid.accp_criterion(x, budget)
    }
}

/// The dual preorder `⪯^op`: principal ideals and filters swap roles.
#[derive(Clone, Copy, Debug, Default)]
pub struct Dual<P>(pub P);

impl<M: Monoid, P: Preorder<M>> Preorder<M> for Dual<P> {
    fn leq(&self, monoid: &M, x: &M::Elem, y: &M::Elem, budget: &SearchBudget) -> Tri {
        self.0.leq(monoid, y, x, budget)
    }

    fn tag(&self) -> &str {
        "dual"
    }

    fn lower_candidates(&self, monoid: &M, x: &M::Elem, budget: &SearchBudget) -> Enumeration<M::Elem> {
        self.0.upper_candidates(monoid, x, budget)
    }

    fn upper_candidates(&self, monoid: &M, x: &M::Elem, budget: &SearchBudget) -> Enumeration<M::Elem> {
        self.0.lower_candidates(monoid, x, budget)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PreorderMatrixError {
    #[error("matrix is not square: row {row} has {len} entries, expected {size}")]
    NotSquare { row: usize, len: usize, size: usize },
    #[error("not reflexive at {0}")]
    NotReflexive(usize),
    #[error("not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
}

/// A materialized preorder on `{0, …, n-1}`; `rows[x][y]` means `x ⪯ y`.
// Invariant: reflexive and transitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixPreorder {
    rows: Vec<Vec<bool>>,
    tag: String,
}

impl MatrixPreorder {
    pub fn new(rows: Vec<Vec<bool>>, tag: impl Into<String>) -> Result<Self, PreorderMatrixError> {
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(PreorderMatrixError::NotSquare { row, len: r.len(), size: n });
            }
        }
        for x in 0..n {
            if !rows[x][x] {
                return Err(PreorderMatrixError::NotReflexive(x));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !rows[x][y] {
                    continue;
                }
                for z in 0..n {
                    if rows[y][z] && !rows[x][z] {
                        return Err(PreorderMatrixError::NotTransitive(x, y, z));
                    }
                }
            }
        }
        Ok(MatrixPreorder { rows, tag: tag.into() })
    }

    /// Reflexive-transitive closure of an arbitrary relation (Warshall).
    pub fn closure_of(mut rows: Vec<Vec<bool>>, tag: impl Into<String>) -> Result<Self, PreorderMatrixError> {
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(PreorderMatrixError::NotSquare { row, len: r.len(), size: n });
            }
        }
        for (x, r) in rows.iter_mut().enumerate() {
            r[x] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !rows[i][k] {
                    continue;
                }
                for j in 0..n {
                    if rows[k][j] {
                        rows[i][j] = true;
                    }
                }
            }
        }
        Ok(MatrixPreorder { rows, tag: tag.into() })
    }

    pub fn discrete(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        MatrixPreorder { rows, tag: "discrete".into() }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn holds(&self, x: usize, y: usize) -> bool {
        self.rows[x][y]
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    pub fn set_tag(&mut self, tag: impl Into<String>) {
        self.tag = tag.into();
    }
}

impl<M: Monoid<Elem = usize>> Preorder<M> for MatrixPreorder {
    fn leq(&self, _: &M, x: &usize, y: &usize, _: &SearchBudget) -> Tri {
        match (self.rows.get(*x), self.rows.get(*y)) {
            (Some(row), Some(_)) => Tri::from(row[*y]),
            _ => Tri::False,
        }
    }

    fn tag(&self) -> &str {
        &self.tag
    }

    fn lower_candidates(&self, _: &M, x: &usize, _: &SearchBudget) -> Enumeration<usize> {
        Enumeration::complete((0..self.size()).filter(|&y| self.holds(y, *x)).collect())
    }

    fn upper_candidates(&self, _: &M, x: &usize, _: &SearchBudget) -> Enumeration<usize> {
        Enumeration::complete((0..self.size()).filter(|&y| self.holds(*x, y)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_is_a_preorder() {
        let rows = vec![
            vec![false, true, false],
            vec![false, false, true],
            vec![false, false, false],
        ];
        let p = MatrixPreorder::closure_of(rows, "random").unwrap();
        assert!(p.holds(0, 2));
        assert!(p.holds(1, 1));
        assert!(!p.holds(2, 0));
        assert!(MatrixPreorder::new(p.rows().to_vec(), "check").is_ok());
    }

    #[test]
    fn rejects_non_transitive() {
        let rows = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert_eq!(
            MatrixPreorder::new(rows, "bad"),
            Err(PreorderMatrixError::NotTransitive(0, 1, 2))
        );
    }

    #[test]
    fn rejects_non_reflexive() {
        let rows = vec![vec![true, false], vec![false, false]];
        assert_eq!(MatrixPreorder::new(rows, "bad"), Err(PreorderMatrixError::NotReflexive(1)));
    }
}
