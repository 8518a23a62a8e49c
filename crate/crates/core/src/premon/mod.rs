//! Premons: a monoid paired with a preorder on its carrier, with no
//! compatibility assumed between the two.
//!
//! The classification operations (units, quarks, degree-`s` irreducibles,
//! heights, artinian elements, factorization into irreducibles) live in
//! [`search`] and are generic over any [`Monoid`]/[`Preorder`] pair. Families
//! with infinite carriers plug in through [`Preorder::lower_candidates`] and
//! the optional chain constructor and artinian criterion hooks.

mod preorders;
mod record;
mod search;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use thiserror::Error;

use crate::budget::{SearchBudget, Tri};

pub use preorders::{Discrete, Divisibility, Dual, Flat, MatrixPreorder, PreorderMatrixError};
pub use record::{Classification, Factorization, IrreducibleCheck, Split};

pub trait Monoid {
    type Elem: Clone + Eq + Hash + Debug + Display + Send + Sync;

    fn identity(&self) -> Self::Elem;

    fn multiply(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    /// Equality of the represented monoid elements. Families whose elements
    /// are representatives of congruence classes override this with a
    /// bounded test.
    fn equal(&self, x: &Self::Elem, y: &Self::Elem, _budget: &SearchBudget) -> Tri {
        Tri::from(x == y)
    }

    /// Whether [`Monoid::equal`] coincides with `==`.
    fn exact_equality(&self) -> bool {
        true
    }

    /// The full carrier, when it is finite.
    fn carrier(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// `true` only if no product `prefix·y₁⋯yₙ` of non-units (`n ≥ 0`) can
    /// equal `target`; lets product searches prune.
    fn overshoots(&self, _prefix: &Self::Elem, _target: &Self::Elem) -> bool {
        false
    }

    fn product(&self, factors: &[Self::Elem]) -> Self::Elem {
        factors
            .iter()
            .fold(self.identity(), |acc, f| self.multiply(&acc, f))
    }
}

/// A list of elements, flagged with whether it is known to contain every
/// element it was asked for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration<E> {
    pub elements: Vec<E>,
    pub exhaustive: bool,
}

impl<E> Enumeration<E> {
    pub fn complete(elements: Vec<E>) -> Self {
        Enumeration {
            elements,
            exhaustive: true,
        }
    }

    pub fn truncated(elements: Vec<E>) -> Self {
        Enumeration {
            elements,
            exhaustive: false,
        }
    }
}

pub(crate) fn carrier_enumeration<M: Monoid + ?Sized>(monoid: &M) -> Enumeration<M::Elem> {
    match monoid.carrier() {
        Some(all) => Enumeration::complete(all),
        None => Enumeration::truncated(Vec::new()),
    }
}

pub trait Preorder<M: Monoid> {
    fn leq(&self, monoid: &M, x: &M::Elem, y: &M::Elem, budget: &SearchBudget) -> Tri;

    /// Short description such as `"divisibility"` or `"discrete"`.
    fn tag(&self) -> &str;

    /// A superset of `{y : y ⪯ x}` (when `exhaustive`), otherwise a sample.
    fn lower_candidates(
        &self,
        monoid: &M,
        _x: &M::Elem,
        _budget: &SearchBudget,
    ) -> Enumeration<M::Elem> {
        carrier_enumeration(monoid)
    }

    /// A superset of `{y : x ⪯ y}` (when `exhaustive`), otherwise a sample.
    fn upper_candidates(
        &self,
        monoid: &M,
        _x: &M::Elem,
        _budget: &SearchBudget,
    ) -> Enumeration<M::Elem> {
        carrier_enumeration(monoid)
    }

    /// Family-specific constructor for a strictly decreasing sequence
    /// starting at `x`, which extends to an infinite one. Returned chains are
    /// re-checked step by step before use.
    fn descending_chain(
        &self,
        _monoid: &M,
        _x: &M::Elem,
        _len: usize,
        _budget: &SearchBudget,
    ) -> Option<Vec<M::Elem>> {
        None
    }

    /// Whether chains from [`Preorder::descending_chain`] are known to
    /// continue forever, so that a verified prefix refutes artinianity.
    fn descent_is_proven(&self, _monoid: &M) -> bool {
        false
    }

    /// Family-specific certificate that `x` is ⪯-artinian.
    fn artinian_criterion(&self, _monoid: &M, _x: &M::Elem, _budget: &SearchBudget) -> Tri {
        Tri::Unknown
    }
}

/// Monoids that can answer `x ∣ y` (`y ∈ HxH`) themselves, and so carry a
/// [`Divisibility`] preorder.
pub trait Divisible: Monoid {
    fn divides(&self, x: &Self::Elem, y: &Self::Elem, budget: &SearchBudget) -> Tri;

    fn divisor_candidates(&self, _y: &Self::Elem, _budget: &SearchBudget) -> Enumeration<Self::Elem> {
        carrier_enumeration(self)
    }

    fn multiple_candidates(
        &self,
        _x: &Self::Elem,
        _budget: &SearchBudget,
    ) -> Enumeration<Self::Elem> {
        carrier_enumeration(self)
    }

    fn divisor_chain(
        &self,
        _x: &Self::Elem,
        _len: usize,
        _budget: &SearchBudget,
    ) -> Option<Vec<Self::Elem>> {
        None
    }

    /// See [`Preorder::descent_is_proven`].
    fn divisor_chain_is_proven(&self) -> bool {
        false
    }

    fn accp_criterion(&self, _x: &Self::Elem, _budget: &SearchBudget) -> Tri {
        Tri::Unknown
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PremonError {
    #[error("{0} is a preorder-unit")]
    NotANonUnit(String),
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("factor product does not reproduce {0}")]
    ProductMismatch(String),
}

#[derive(Clone, Debug)]
pub struct Premon<M, P> {
    pub monoid: M,
    pub preorder: P,
}

impl<M: Monoid, P: Preorder<M>> Premon<M, P> {
    pub fn new(monoid: M, preorder: P) -> Self {
        Premon { monoid, preorder }
    }

    pub fn leq(&self, x: &M::Elem, y: &M::Elem, budget: &SearchBudget) -> Tri {
        self.preorder.leq(&self.monoid, x, y, budget)
    }

    pub fn tag(&self) -> &str {
        self.preorder.tag()
    }

    /// `x ⪯ 1 ⪯ x`, as a tri-state.
    pub fn unit_status(&self, x: &M::Elem, budget: &SearchBudget) -> Tri {
        let one = self.monoid.identity();
        let below = self.leq(x, &one, budget);
        if below.is_false() {
            return Tri::False;
        }
        below.and(self.leq(&one, x, budget))
    }

    pub fn is_preorder_unit(&self, x: &M::Elem, budget: &SearchBudget) -> Result<bool, PremonError> {
        self.unit_status(x, budget)
            .as_bool()
            .ok_or_else(|| PremonError::BudgetExhausted(format!("unit test for {x}")))
    }

    /// `x ≺ y`, i.e. `x ⪯ y` and `y ⋠ x`.
    pub fn strictly_below(&self, x: &M::Elem, y: &M::Elem, budget: &SearchBudget) -> Tri {
        let forward = self.leq(x, y, budget);
        if forward.is_false() {
            return Tri::False;
        }
        forward.and(!self.leq(y, x, budget))
    }

    /// Every element of a finite carrier that is a ⪯-non-unit.
    pub fn non_units(&self, budget: &SearchBudget) -> Result<Vec<M::Elem>, PremonError> {
        let all = self.monoid.carrier().ok_or_else(|| {
            PremonError::BudgetExhausted("carrier is not finite".to_string())
        })?;
        let mut out = Vec::new();
        for x in all {
            if !self.is_preorder_unit(&x, budget)? {
                out.push(x);
            }
        }
        Ok(out)
    }

    pub fn down_set(&self, x: &M::Elem, budget: &SearchBudget) -> Result<Vec<M::Elem>, PremonError> {
        let candidates = self.preorder.lower_candidates(&self.monoid, x, budget);
        self.filter_set(candidates, |y| self.leq(y, x, budget), x, "down-set")
    }

    pub fn up_set(&self, x: &M::Elem, budget: &SearchBudget) -> Result<Vec<M::Elem>, PremonError> {
        let candidates = self.preorder.upper_candidates(&self.monoid, x, budget);
        self.filter_set(candidates, |y| self.leq(x, y, budget), x, "up-set")
    }

    fn filter_set(
        &self,
        candidates: Enumeration<M::Elem>,
        relation: impl Fn(&M::Elem) -> Tri,
        x: &M::Elem,
        what: &str,
    ) -> Result<Vec<M::Elem>, PremonError> {
        if !candidates.exhaustive {
            return Err(PremonError::BudgetExhausted(format!(
                "{what} of {x} is not enumerable within budget"
            )));
        }
        let mut out = Vec::new();
        for y in candidates.elements {
            match relation(&y) {
                Tri::True => out.push(y),
                Tri::False => {}
                Tri::Unknown => {
                    return Err(PremonError::BudgetExhausted(format!(
                        "{what} of {x}: relation to {y} undecided"
                    )))
                }
            }
        }
        Ok(out)
    }
}
