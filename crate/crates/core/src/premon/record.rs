use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::budget::{Degree, Height, Tri};

/// One step of a constructive factorization: `parent` is the product of
/// `children`, each of which is a ⪯-non-unit strictly below `parent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split<E> {
    pub parent: E,
    pub children: Vec<E>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization<E> {
    pub target: E,
    pub factors: Vec<E>,
    pub degree: Degree,
    pub splits: Vec<Split<E>>,
}

impl<E: Display> Factorization<E> {
    pub fn render(&self) -> Factorization<String> {
        let show = |v: &[E]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        Factorization {
            target: self.target.to_string(),
            factors: show(&self.factors),
            degree: self.degree,
            splits: self
                .splits
                .iter()
                .map(|s| Split {
                    parent: s.parent.to_string(),
                    children: show(&s.children),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleCheck {
    pub degree: Degree,
    pub verdict: Tri,
    /// A factorization into ⪯-non-units strictly below the element, when the
    /// verdict is `false`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

/// Everything the premon calculus says about one element, with the
/// certificates behind each definite answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub element: String,
    pub preorder: String,
    pub is_unit: bool,
    pub is_quark: Tri,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quark_witness: Option<String>,
    pub irreducible: Vec<IrreducibleCheck>,
    pub height: Height,
    pub artinian: Tri,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descending_chain: Option<Vec<String>>,
    pub strongly_artinian: Tri,
}

impl Classification {
    /// The structural invariants every record must satisfy.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.is_unit && self.height != Height::Exact(0) {
            return Err(format!("unit {} has height {}", self.element, self.height));
        }
        if self.is_quark == Tri::True {
            if self.height != Height::Exact(1) {
                return Err(format!("quark {} has height {}", self.element, self.height));
            }
            if let Some(bad) = self.irreducible.iter().find(|c| c.verdict != Tri::True) {
                return Err(format!(
                    "quark {} not certified irreducible of degree {}",
                    self.element, bad.degree
                ));
            }
        }
        Ok(())
    }
}
