//! Cayley-table monoids, with exhaustive decision of the classical
//! predicates (cancellative, unit-cancellative, acyclic, atomic) and the
//! materialized divisibility preorder.

mod enumerate;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{SearchBudget, Tri};
use crate::premon::{Divisible, Enumeration, MatrixPreorder, Monoid};

pub use enumerate::{canonical_form, enumerate_monoids, MAX_ENUMERATION_ORDER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiniteMonoidError {
    #[error("monoid must have at least one element")]
    Empty,
    #[error("declared size {declared} but table has {rows} rows")]
    SizeMismatch { declared: usize, rows: usize },
    #[error("table is not square: row {row} has {len} entries, expected {size}")]
    NotSquare { row: usize, len: usize, size: usize },
    #[error("entry table[{row}][{col}] = {value} is out of range 0..{size}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, size: usize },
    #[error("identity index {identity} is out of range 0..{size}")]
    IdentityOutOfRange { identity: usize, size: usize },
    #[error("{identity} is not a two-sided identity: {identity}*{x} = {left}, {x}*{identity} = {right}")]
    NoIdentity { identity: usize, x: usize, left: usize, right: usize },
    #[error("not associative: ({x}*{y})*{z} = {left} but {x}*({y}*{z}) = {right}")]
    NotAssociative { x: usize, y: usize, z: usize, left: usize, right: usize },
    #[error("invalid Cayley-table JSON: {0}")]
    Json(String),
    #[error("monoid enumeration is limited to order {max}, got {requested}")]
    OrderTooLarge { requested: usize, max: usize },
}

/// The on-disk Cayley-table format: `{"size": n, "identity": e, "table": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CayleyTable {
    pub size: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

/// A finite monoid on `{0, …, n-1}` given by its multiplication table.
// Invariant: two-sided identity and associativity hold (checked in `validate`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMonoid {
    identity: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteMonoid {
    pub fn validate(table: Vec<Vec<usize>>, identity: usize) -> Result<Self, FiniteMonoidError> {
        let n = table.len();
        if n == 0 {
            return Err(FiniteMonoidError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(FiniteMonoidError::NotSquare { row, len: r.len(), size: n });
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(FiniteMonoidError::EntryOutOfRange { row, col, value, size: n });
            }
        }
        if identity >= n {
            return Err(FiniteMonoidError::IdentityOutOfRange { identity, size: n });
        }
        for x in 0..n {
            let (left, right) = (table[identity][x], table[x][identity]);
            if left != x || right != x {
                return Err(FiniteMonoidError::NoIdentity { identity, x, left, right });
            }
        }
        if let Some((x, y, z)) = associativity_violation(&table) {
            return Err(FiniteMonoidError::NotAssociative {
                x,
                y,
                z,
                left: table[table[x][y]][z],
                right: table[x][table[y][z]],
            });
        }
        Ok(FiniteMonoid { identity, table })
    }

    pub fn from_cayley(spec: CayleyTable) -> Result<Self, FiniteMonoidError> {
        if spec.size != spec.table.len() {
            return Err(FiniteMonoidError::SizeMismatch {
                declared: spec.size,
                rows: spec.table.len(),
            });
        }
        Self::validate(spec.table, spec.identity)
    }

    pub fn from_json(text: &str) -> Result<Self, FiniteMonoidError> {
        let spec: CayleyTable =
            serde_json::from_str(text).map_err(|e| FiniteMonoidError::Json(e.to_string()))?;
        Self::from_cayley(spec)
    }

    pub fn to_cayley(&self) -> CayleyTable {
        CayleyTable {
            size: self.size(),
            identity: self.identity,
            table: self.table.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_cayley()).expect("Cayley table serializes")
    }

    /// The trivial monoid `{1}`.
    pub fn trivial() -> Self {
        FiniteMonoid { identity: 0, table: vec![vec![0]] }
    }

    /// `{1, 0}` under multiplication; index 0 is `1`, index 1 is `0`.
    pub fn boolean_and() -> Self {
        Self::validate(vec![vec![0, 1], vec![1, 1]], 0).expect("valid table")
    }

    /// `(Z/n, ·)`; index `i` is the residue `i`, identity `1`.
    pub fn multiplicative_mod(n: usize) -> Self {
        assert!(n >= 2, "Z/n needs n >= 2");
        let table = (0..n).map(|x| (0..n).map(|y| x * y % n).collect()).collect();
        Self::validate(table, 1).expect("valid table")
    }

    /// `(Z/n, +)`; identity `0`.
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n >= 1, "Z/n needs n >= 1");
        let table = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        Self::validate(table, 0).expect("valid table")
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn is_unit(&self, x: usize) -> bool {
        let e = self.identity;
        self.elements().any(|y| self.mul(x, y) == e && self.mul(y, x) == e)
    }

    pub fn units(&self) -> BTreeSet<usize> {
        self.elements().filter(|&x| self.is_unit(x)).collect()
    }

    pub fn is_group(&self) -> bool {
        self.units().len() == self.size()
    }

    /// `D[x][y]` iff `y ∈ HxH`.
    pub fn divisibility(&self) -> DivisibilityMatrix {
        let n = self.size();
        let mut rows = vec![vec![false; n]; n];
        for (x, row) in rows.iter_mut().enumerate() {
            for u in self.elements() {
                let ux = self.mul(u, x);
                for v in self.elements() {
                    row[self.mul(ux, v)] = true;
                }
            }
        }
        DivisibilityMatrix { rows }
    }

    /// `x ↦ uxv` is injective for every `u, v`.
    pub fn is_cancellative(&self) -> bool {
        for u in self.elements() {
            for v in self.elements() {
                let mut hit = vec![false; self.size()];
                for x in self.elements() {
                    let img = self.mul(self.mul(u, x), v);
                    if std::mem::replace(&mut hit[img], true) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `xy ≠ x ≠ yx` whenever `y` is not a unit.
    pub fn is_unit_cancellative(&self) -> bool {
        let units = self.units();
        self.elements().all(|x| {
            self.elements()
                .filter(|y| !units.contains(y))
                .all(|y| self.mul(x, y) != x && self.mul(y, x) != x)
        })
    }

    /// `uxv ≠ x` unless `u` and `v` are both units. Returns a violating
    /// triple `(u, x, v)` if there is one.
    pub fn acyclicity_violation(&self) -> Option<(usize, usize, usize)> {
        let units = self.units();
        for u in self.elements() {
            for v in self.elements() {
                if units.contains(&u) && units.contains(&v) {
                    continue;
                }
                for x in self.elements() {
                    if self.mul(self.mul(u, x), v) == x {
                        return Some((u, x, v));
                    }
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclicity_violation().is_none()
    }

    /// Non-units that are not a product of two non-units.
    pub fn atoms(&self) -> BTreeSet<usize> {
        let units = self.units();
        let non_units: Vec<usize> = self.elements().filter(|x| !units.contains(x)).collect();
        let products: BTreeSet<usize> = non_units
            .iter()
            .flat_map(|&y| non_units.iter().map(move |&z| (y, z)))
            .map(|(y, z)| self.mul(y, z))
            .collect();
        non_units.into_iter().filter(|x| !products.contains(x)).collect()
    }

    /// Every non-unit is a product of atoms.
    pub fn is_atomic(&self) -> bool {
        let units = self.units();
        let atoms = self.atoms();
        let mut closure: BTreeSet<usize> = atoms.clone();
        let mut frontier: Vec<usize> = atoms.iter().copied().collect();
        while let Some(p) = frontier.pop() {
            for &a in &atoms {
                let q = self.mul(p, a);
                if closure.insert(q) {
                    frontier.push(q);
                }
            }
        }
        self.elements().filter(|x| !units.contains(x)).all(|x| closure.contains(&x))
    }

    /// Searches for strictly ascending chains `Hx₁H ⊊ Hx₂H ⊊ …` of principal
    /// two-sided ideals starting at `x`.
    pub fn element_satisfies_accp(&self, x: usize) -> AccpCertificate {
        let d = self.divisibility();
        let ideal = |y: usize| -> BTreeSet<usize> { d.up_set(y) };
        // Strict inclusion of ideals is a strict order on a finite family of
        // sets, so the longest chain is found by memoized DFS.
        let n = self.size();
        let mut memo: Vec<Option<Vec<usize>>> = vec![None; n];
        fn longest(
            y: usize,
            n: usize,
            ideal: &dyn Fn(usize) -> BTreeSet<usize>,
            memo: &mut Vec<Option<Vec<usize>>>,
        ) -> Vec<usize> {
            if let Some(c) = &memo[y] {
                return c.clone();
            }
            let iy = ideal(y);
            let mut best = vec![y];
            for z in 0..n {
                let iz = ideal(z);
                if iy.is_subset(&iz) && iy != iz {
                    let mut chain = vec![y];
                    chain.extend(longest(z, n, ideal, memo));
                    if chain.len() > best.len() {
                        best = chain;
                    }
                }
            }
            memo[y] = Some(best.clone());
            best
        }
        let chain = longest(x, n, &ideal, &mut memo);
        AccpCertificate {
            element: x,
            satisfied: chain.len() <= n,
            longest_chain: chain,
        }
    }
}

fn associativity_violation(table: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
    let n = table.len();
    for x in 0..n {
        for y in 0..n {
            let xy = table[x][y];
            for z in 0..n {
                if table[xy][z] != table[x][table[y][z]] {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Outcome of the ascending-chain search for one element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccpCertificate {
    pub element: usize,
    pub satisfied: bool,
    /// A longest strictly ascending chain of principal ideals from the element.
    pub longest_chain: Vec<usize>,
}

/// The divisibility preorder, materialized: `rows[x][y]` iff `y ∈ HxH`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisibilityMatrix {
    rows: Vec<Vec<bool>>,
}

impl DivisibilityMatrix {
    pub fn divides(&self, x: usize, y: usize) -> bool {
        self.rows[x][y]
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    /// `{y : x ∣ y}`, the principal two-sided ideal `HxH`.
    pub fn up_set(&self, x: usize) -> BTreeSet<usize> {
        (0..self.rows.len()).filter(|&y| self.rows[x][y]).collect()
    }

    /// `{y : y ∣ x}`.
    pub fn down_set(&self, x: usize) -> BTreeSet<usize> {
        (0..self.rows.len()).filter(|&y| self.rows[y][x]).collect()
    }

    pub fn to_preorder(&self) -> MatrixPreorder {
        MatrixPreorder::new(self.rows.clone(), "divisibility")
            .expect("divisibility is reflexive and transitive")
    }
}

impl Monoid for FiniteMonoid {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.identity
    }

    fn multiply(&self, x: &usize, y: &usize) -> usize {
        self.mul(*x, *y)
    }

    fn carrier(&self) -> Option<Vec<usize>> {
        Some(self.elements().collect())
    }
}

impl Divisible for FiniteMonoid {
    fn divides(&self, x: &usize, y: &usize, _: &SearchBudget) -> Tri {
        let hit = self
            .elements()
            .any(|u| self.elements().any(|v| self.mul(self.mul(u, *x), v) == *y));
        Tri::from(hit)
    }

    fn divisor_candidates(&self, _: &usize, _: &SearchBudget) -> Enumeration<usize> {
        Enumeration::complete(self.elements().collect())
    }

    fn accp_criterion(&self, x: &usize, _: &SearchBudget) -> Tri {
        Tri::from(self.element_satisfies_accp(*x).satisfied)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> FiniteMonoid {
        FiniteMonoid::multiplicative_mod(4)
    }

    #[test]
    fn validation_accepts_known_tables() {
        assert!(FiniteMonoid::validate(vec![vec![0, 1], vec![1, 1]], 0).is_ok());
        assert_eq!(z4().identity_index(), 1);
    }

    #[test]
    fn validation_rejects_missing_identity() {
        let err = FiniteMonoid::validate(vec![vec![0, 0], vec![1, 1]], 0).unwrap_err();
        assert!(matches!(err, FiniteMonoidError::NoIdentity { identity: 0, x: 1, .. }));
    }

    #[test]
    fn validation_reports_associativity_witness() {
        // 0 is the identity; 1*1 = 2, 1*2 = 1, 2*1 = 2, 2*2 = 1.
        let table = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 2, 1]];
        let err = FiniteMonoid::validate(table.clone(), 0).unwrap_err();
        let FiniteMonoidError::NotAssociative { x, y, z, left, right } = err else {
            panic!("expected associativity failure, got {err:?}");
        };
        assert_eq!(table[table[x][y]][z], left);
        assert_eq!(table[x][table[y][z]], right);
        assert_ne!(left, right);
    }

    #[test]
    fn validation_rejects_out_of_range_and_shape() {
        assert!(matches!(
            FiniteMonoid::validate(vec![vec![0, 2], vec![1, 1]], 0),
            Err(FiniteMonoidError::EntryOutOfRange { value: 2, .. })
        ));
        assert!(matches!(
            FiniteMonoid::validate(vec![vec![0, 1], vec![1]], 0),
            Err(FiniteMonoidError::NotSquare { row: 1, .. })
        ));
        assert!(matches!(
            FiniteMonoid::validate(vec![vec![0]], 3),
            Err(FiniteMonoidError::IdentityOutOfRange { .. })
        ));
        assert_eq!(FiniteMonoid::validate(vec![], 0), Err(FiniteMonoidError::Empty));
    }

    #[test]
    fn json_round_trip_and_size_check() {
        let m = z4();
        assert_eq!(FiniteMonoid::from_json(&m.to_json()).unwrap(), m);
        let bad = r#"{"size": 3, "identity": 0, "table": [[0,1],[1,1]]}"#;
        assert!(matches!(
            FiniteMonoid::from_json(bad),
            Err(FiniteMonoidError::SizeMismatch { declared: 3, rows: 2 })
        ));
        let unknown_key = r#"{"size": 1, "identity": 0, "table": [[0]], "extra": 1}"#;
        assert!(matches!(FiniteMonoid::from_json(unknown_key), Err(FiniteMonoidError::Json(_))));
    }

    #[test]
    fn units_and_groups() {
        assert_eq!(z4().units(), BTreeSet::from([1, 3]));
        assert_eq!(FiniteMonoid::boolean_and().units(), BTreeSet::from([0]));
        let g = FiniteMonoid::cyclic_group(5);
        assert_eq!(g.units().len(), 5);
        assert!(g.is_group());
        assert!(FiniteMonoid::cyclic_group(2).is_group());
        assert!(!FiniteMonoid::boolean_and().is_group());
        assert!(!z4().is_group());
    }

    #[test]
    fn divisibility_rows() {
        let d = z4().divisibility();
        assert_eq!(d.up_set(2), BTreeSet::from([0, 2]));
        assert_eq!(d.up_set(1), BTreeSet::from([0, 1, 2, 3]));
        let b = FiniteMonoid::boolean_and().divisibility();
        // index 1 is the element 0, index 0 the element 1
        assert!(!b.divides(1, 0));
        assert!(b.divides(0, 1));
    }

    #[test]
    fn cancellation_properties() {
        let m = z4();
        assert!(!m.is_acyclic());
        let (u, x, v) = m.acyclicity_violation().unwrap();
        assert_eq!(m.mul(m.mul(u, x), v), x);
        assert!(!(m.is_unit(u) && m.is_unit(v)));

        let g = FiniteMonoid::cyclic_group(3);
        assert!(g.is_cancellative() && g.is_unit_cancellative() && g.is_acyclic());
        assert!(!FiniteMonoid::boolean_and().is_unit_cancellative());
    }

    #[test]
    fn atoms_and_atomicity() {
        assert_eq!(z4().atoms(), BTreeSet::from([2]));
        assert!(z4().is_atomic());
        assert!(FiniteMonoid::boolean_and().atoms().is_empty());
        assert!(!FiniteMonoid::boolean_and().is_atomic());
        assert!(FiniteMonoid::cyclic_group(4).atoms().is_empty());
        assert!(FiniteMonoid::cyclic_group(4).is_atomic());
    }

    #[test]
    fn accp_on_finite_elements() {
        let m = z4();
        let cert = m.element_satisfies_accp(2);
        assert!(cert.satisfied);
        assert_eq!(cert.longest_chain.len(), 2);
        assert_eq!(cert.longest_chain[0], 2);
        assert!(m.element_satisfies_accp(m.identity_index()).satisfied);
        assert_eq!(m.element_satisfies_accp(1).longest_chain, vec![1]);
    }
}
