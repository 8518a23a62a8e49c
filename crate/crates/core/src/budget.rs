//! Tri-state verdicts and the search budgets that bound them.
//!
//! Every predicate over an infinite carrier is answered with [`Tri`]: a
//! definite `True`/`False` is a certificate, `Unknown` means the search ran
//! out of budget before it could decide. Raising a budget may resolve an
//! `Unknown`, but never flips a definite answer.

use std::fmt;
use std::ops::Not;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    pub fn is_true(self) -> bool {
        self == Tri::True
    }

    pub fn is_false(self) -> bool {
        self == Tri::False
    }

    pub fn is_definite(self) -> bool {
        self != Tri::Unknown
    }

    /// Kleene conjunction.
    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::False, _) | (_, Tri::False) => Tri::False,
            (Tri::True, Tri::True) => Tri::True,
            _ => Tri::Unknown,
        }
    }

    /// Kleene disjunction.
    pub fn or(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::True, _) | (_, Tri::True) => Tri::True,
            (Tri::False, Tri::False) => Tri::False,
            _ => Tri::Unknown,
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Tri::True => Some(true),
            Tri::False => Some(false),
            Tri::Unknown => None,
        }
    }
}

impl Not for Tri {
    type Output = Tri;

    fn not(self) -> Tri {
        match self {
            Tri::True => Tri::False,
            Tri::False => Tri::True,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::True => "true",
            Tri::False => "false",
            Tri::Unknown => "unknown",
        })
    }
}

/// A tri-state answer whose negative outcome carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision<W> {
    True,
    False(W),
    Unknown,
}

impl<W> Decision<W> {
    pub fn tri(&self) -> Tri {
        match self {
            Decision::True => Tri::True,
            Decision::False(_) => Tri::False,
            Decision::Unknown => Tri::Unknown,
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Decision::False(w) => Some(w),
            _ => None,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Decision<V> {
        match self {
            Decision::True => Decision::True,
            Decision::False(w) => Decision::False(f(w)),
            Decision::Unknown => Decision::Unknown,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BudgetError {
    #[error("budget field `{0}` must be at least 1")]
    NonPositive(&'static str),
}

/// Explicit bounds that turn semi-decidable questions into bounded ones.
///
/// `exponent_cap` bounds the generator exponents of the Puiseux family and
/// `rewrite_radius` the number of rewrite steps of the presented family;
/// together they play the role of the relation budget for `leq`/`equal`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SearchBudget {
    pub chain_depth: usize,
    pub factor_cap: usize,
    pub node_cap: usize,
    pub exponent_cap: usize,
    pub rewrite_radius: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            chain_depth: 30,
            factor_cap: 6,
            node_cap: 1_000_000,
            exponent_cap: 8,
            rewrite_radius: 6,
        }
    }
}

impl SearchBudget {
    pub fn validate(self) -> Result<Self, BudgetError> {
        let fields: [(&'static str, u64); 5] = [
            ("chain_depth", self.chain_depth as u64),
            ("factor_cap", self.factor_cap as u64),
            ("node_cap", self.node_cap as u64),
            ("exponent_cap", self.exponent_cap as u64),
            ("rewrite_radius", self.rewrite_radius as u64),
        ];
        for (name, value) in fields {
            if value == 0 {
                return Err(BudgetError::NonPositive(name));
            }
        }
        Ok(self)
    }

    /// Every field multiplied by `factor`.
    pub fn scaled(&self, factor: usize) -> Self {
        SearchBudget {
            chain_depth: self.chain_depth * factor,
            factor_cap: self.factor_cap * factor,
            node_cap: self.node_cap * factor,
            exponent_cap: self.exponent_cap * factor,
            rewrite_radius: self.rewrite_radius * factor,
        }
    }

    pub fn with_chain_depth(mut self, depth: usize) -> Self {
        self.chain_depth = depth;
        self
    }

    pub fn with_factor_cap(mut self, cap: usize) -> Self {
        self.factor_cap = cap;
        self
    }

    pub fn with_node_cap(mut self, cap: usize) -> Self {
        self.node_cap = cap;
        self
    }

    pub fn with_exponent_cap(mut self, cap: usize) -> Self {
        self.exponent_cap = cap;
        self
    }

    pub fn with_rewrite_radius(mut self, radius: usize) -> Self {
        self.rewrite_radius = radius;
        self
    }
}

/// Degree of a ⪯-irreducible: an integer `s ≥ 2`, or `∞` meaning every
/// factor count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    Finite(usize),
    Infinite,
}

impl Degree {
    pub fn finite(s: usize) -> Option<Degree> {
        (s >= 2).then_some(Degree::Finite(s))
    }

    /// Largest factor count actually searched under `cap`.
    pub fn effective(self, cap: usize) -> usize {
        match self {
            Degree::Finite(s) => s.min(cap),
            Degree::Infinite => cap,
        }
    }

    pub fn covers(self, k: usize) -> bool {
        match self {
            Degree::Finite(s) => k <= s,
            Degree::Infinite => true,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(s) => write!(f, "{s}"),
            Degree::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid degree `{0}`: expected an integer >= 2 or `inf`")]
pub struct DegreeParseError(pub String);

impl FromStr for Degree {
    type Err = DegreeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Degree::Infinite),
            other => other
                .parse::<usize>()
                .ok()
                .and_then(Degree::finite)
                .ok_or_else(|| DegreeParseError(s.to_string())),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// ⪯-height as far as it could be established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Height {
    Exact(usize),
    /// A strictly decreasing chain of this many non-units was found, but the
    /// descent tree was not exhausted.
    AtLeast(usize),
    /// An infinite strictly decreasing chain is certified; the payload is the
    /// prefix length actually checked.
    Infinite { witnessed_depth: usize },
}

impl Height {
    pub fn exact(self) -> Option<usize> {
        match self {
            Height::Exact(n) => Some(n),
            _ => None,
        }
    }

    pub fn lower_bound(self) -> usize {
        match self {
            Height::Exact(n) | Height::AtLeast(n) => n,
            Height::Infinite { witnessed_depth } => witnessed_depth,
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Exact(n) => write!(f, "{n}"),
            Height::AtLeast(n) => write!(f, ">= {n}"),
            Height::Infinite { witnessed_depth } => {
                write!(f, "infinite (chain checked to depth {witnessed_depth})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kleene_tables() {
        use Tri::*;
        assert_eq!(True.and(Unknown), Unknown);
        assert_eq!(False.and(Unknown), False);
        assert_eq!(True.or(Unknown), True);
        assert_eq!(False.or(Unknown), Unknown);
        assert_eq!(!Unknown, Unknown);
        assert_eq!(!True, False);
    }

    #[test]
    fn degree_parsing() {
        assert_eq!("2".parse::<Degree>().unwrap(), Degree::Finite(2));
        assert_eq!("inf".parse::<Degree>().unwrap(), Degree::Infinite);
        assert!("1".parse::<Degree>().is_err());
        assert!("x".parse::<Degree>().is_err());
        assert_eq!(Degree::Infinite.effective(6), 6);
        assert_eq!(Degree::Finite(3).effective(6), 3);
        assert_eq!(Degree::Finite(9).effective(6), 6);
    }

    #[test]
    fn zero_budget_fields_rejected() {
        let b = SearchBudget::default().with_node_cap(0);
        assert_eq!(b.validate(), Err(BudgetError::NonPositive("node_cap")));
        assert!(SearchBudget::default().validate().is_ok());
    }

    #[test]
    fn height_serializes_tagged() {
        let s = serde_json::to_string(&Height::AtLeast(5)).unwrap();
        assert_eq!(s, r#"{"at_least":5}"#);
        let back: Height = serde_json::from_str(&s).unwrap();
        assert_eq!(back, Height::AtLeast(5));
    }
}
