//! Instance specifications accepted on the command line: a path to a JSON
//! file or the JSON itself, tagged by `family`.
//!
//! ```json
//! {"family": "finite", "size": 2, "identity": 0, "table": [[0,1],[1,1]], "preorder": "divisibility"}
//! {"family": "puiseux", "a": 2, "b": 3}
//! {"family": "presented", "h": 2, "k": 3, "sigma": "identity"}
//! {"family": "poly"}
//! ```

use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::finite::{CayleyTable, FiniteMonoid};
use crate::numeric::parse_rational;
use crate::budget::{Degree, Height, SearchBudget, Tri};
use crate::poly::{PolyDomain, RatPoly};
use crate::premon::{Divisibility, MatrixPreorder, Premon};
use crate::presented::{PresentedMonoid, Sigma, Word};
use crate::puiseux::PuiseuxMonoid;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedPreorder {
    Divisibility,
    Discrete,
    Flat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FinitePreorder {
    Named(NamedPreorder),
    /// `rows[x][y]` means `x ⪯ y`; must already be reflexive and transitive.
    Matrix(Vec<Vec<bool>>),
}

impl Default for FinitePreorder {
    fn default() -> Self {
        FinitePreorder::Named(NamedPreorder::Divisibility)
    }
}

fn default_sigma() -> Sigma {
    Sigma::Identity
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceSpec {
    Finite {
        size: usize,
        identity: usize,
        table: Vec<Vec<usize>>,
        #[serde(default)]
        preorder: FinitePreorder,
    },
    Puiseux {
        a: u64,
        b: u64,
    },
    Presented {
        h: u64,
        k: u64,
        #[serde(default = "default_sigma")]
        sigma: Sigma,
    },
    Poly {},
}

pub enum Instance {
    Finite(Premon<FiniteMonoid, MatrixPreorder>),
    Puiseux(PuiseuxMonoid),
    Presented(PresentedMonoid),
    Poly,
}

/// A parsed element of some instance.
pub enum Element {
    Finite(usize),
    Puiseux(BigRational),
    Presented(Word),
    Poly(RatPoly),
}

impl InstanceSpec {
    /// Inline JSON when the argument starts with `{`, otherwise a file path.
    pub fn from_arg(arg: &str) -> Result<Self, CliError> {
        let text = if arg.trim_start().starts_with('{') {
            arg.to_string()
        } else {
            std::fs::read_to_string(Path::new(arg))
                .map_err(|e| CliError::Input(format!("cannot read instance {arg}: {e}")))?
        };
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("invalid instance: {e}")))
    }

    pub fn build(&self) -> Result<Instance, CliError> {
        let bad = |e: &dyn std::fmt::Display| CliError::Input(e.to_string());
        Ok(match self {
            InstanceSpec::Finite { size, identity, table, preorder } => {
                let m = FiniteMonoid::from_cayley(CayleyTable {
                    size: *size,
                    identity: *identity,
                    table: table.clone(),
                })
                .map_err(|e| bad(&e))?;
                let p = match preorder {
                    FinitePreorder::Named(NamedPreorder::Divisibility) => {
                        let mut p = m.divisibility().to_preorder();
                        p.set_tag("divisibility");
                        p
                    }
                    FinitePreorder::Named(NamedPreorder::Discrete) => MatrixPreorder::discrete(*size),
                    FinitePreorder::Named(NamedPreorder::Flat) => {
                        MatrixPreorder::new(vec![vec![true; *size]; *size], "flat").map_err(|e| bad(&e))?
                    }
                    FinitePreorder::Matrix(rows) => {
                        if rows.len() != *size {
                            return Err(CliError::Input(format!(
                                "preorder has {} rows, monoid has {size} elements",
                                rows.len()
                            )));
                        }
                        MatrixPreorder::new(rows.clone(), "matrix").map_err(|e| bad(&e))?
                    }
                };
                Instance::Finite(Premon::new(m, p))
            }
            InstanceSpec::Puiseux { a, b } => Instance::Puiseux(PuiseuxMonoid::new(*a, *b).map_err(|e| bad(&e))?),
            InstanceSpec::Presented { h, k, sigma } => {
                Instance::Presented(PresentedMonoid::new(*h, *k, sigma.clone()).map_err(|e| bad(&e))?)
            }
            InstanceSpec::Poly {} => Instance::Poly,
        })
    }
}

fn mismatch() -> CliError {
    CliError::Input("element does not belong to this instance".into())
}

impl Instance {
    pub fn family(&self) -> &'static str {
        match self {
            Instance::Finite(_) => "finite",
            Instance::Puiseux(_) => "puiseux",
            Instance::Presented(_) => "presented",
            Instance::Poly => "poly",
        }
    }

    pub fn is_quark(&self, x: &Element, budget: &SearchBudget) -> Result<Tri, CliError> {
        let r = match (self, x) {
            (Instance::Finite(p), Element::Finite(i)) => p.is_quark(i, budget).map(|d| d.tri()),
            (Instance::Puiseux(h), Element::Puiseux(q)) => Premon::new(h.clone(), Divisibility).is_quark(q, budget).map(|d| d.tri()),
            (Instance::Presented(m), Element::Presented(w)) => m.premon().is_quark(w, budget).map(|d| d.tri()),
            (Instance::Poly, Element::Poly(f)) => Premon::new(PolyDomain, Divisibility).is_quark(f, budget).map(|d| d.tri()),
            _ => return Err(mismatch()),
        };
        r.map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn is_irreducible(&self, x: &Element, s: Degree, budget: &SearchBudget) -> Result<Tri, CliError> {
        let r = match (self, x) {
            (Instance::Finite(p), Element::Finite(i)) => p.is_irreducible(i, s, budget).map(|d| d.tri()),
            (Instance::Puiseux(h), Element::Puiseux(q)) => {
                Premon::new(h.clone(), Divisibility).is_irreducible(q, s, budget).map(|d| d.tri())
            }
            (Instance::Presented(m), Element::Presented(w)) => m.premon().is_irreducible(w, s, budget).map(|d| d.tri()),
            (Instance::Poly, Element::Poly(f)) => {
                Premon::new(PolyDomain, Divisibility).is_irreducible(f, s, budget).map(|d| d.tri())
            }
            _ => return Err(mismatch()),
        };
        r.map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn height(&self, x: &Element, budget: &SearchBudget) -> Result<Height, CliError> {
        Ok(match (self, x) {
            (Instance::Finite(p), Element::Finite(i)) => p.height(i, budget),
            (Instance::Puiseux(h), Element::Puiseux(q)) => Premon::new(h.clone(), Divisibility).height(q, budget),
            (Instance::Presented(m), Element::Presented(w)) => m.premon().height(w, budget),
            (Instance::Poly, Element::Poly(f)) => Premon::new(PolyDomain, Divisibility).height(f, budget),
            _ => return Err(mismatch()),
        })
    }

    /// Element syntax per family: an index, a rational such as `4/3`, a word
    /// such as `x0 y1`, or a polynomial such as `X` or `3 + (1/2)X^2`.
    pub fn parse_element(&self, text: &str) -> Result<Element, CliError> {
        let bad = |e: &dyn std::fmt::Display| CliError::Input(format!("invalid {} element {text:?}: {e}", self.family()));
        Ok(match self {
            Instance::Finite(p) => {
                let i: usize = text.trim().parse().map_err(|e| bad(&e))?;
                if i >= p.monoid.size() {
                    return Err(bad(&format!("index out of range 0..{}", p.monoid.size())));
                }
                Element::Finite(i)
            }
            Instance::Puiseux(h) => {
                let q = parse_rational(text).map_err(|e| bad(&e))?;
                Element::Puiseux(h.element(q).map_err(|e| bad(&e))?)
            }
            Instance::Presented(_) => Element::Presented(text.parse().map_err(|e| bad(&e))?),
            Instance::Poly => Element::Poly(text.parse().map_err(|e| bad(&e))?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs_parse() {
        let s = InstanceSpec::from_arg(r#"{"family":"puiseux","a":2,"b":3}"#).unwrap();
        assert_eq!(s, InstanceSpec::Puiseux { a: 2, b: 3 });
        let s = InstanceSpec::from_arg(r#"{"family":"presented","h":2,"k":3}"#).unwrap();
        assert!(matches!(s, InstanceSpec::Presented { sigma: Sigma::Identity, .. }));
        let s = InstanceSpec::from_arg(
            r#"{"family":"finite","size":2,"identity":0,"table":[[0,1],[1,1]],"preorder":[[true,true],[false,true]]}"#,
        )
        .unwrap();
        assert!(matches!(s.build().unwrap(), Instance::Finite(_)));
        assert!(InstanceSpec::from_arg(r#"{"family":"poly","x":1}"#).is_err());
        assert!(InstanceSpec::from_arg(r#"{"family":"puiseux","a":3,"b":2}"#).unwrap().build().is_err());
    }

    #[test]
    fn elements_parse() {
        let h = InstanceSpec::Puiseux { a: 2, b: 3 }.build().unwrap();
        assert!(h.parse_element("4/3").is_ok());
        assert!(h.parse_element("1/5").is_err());
        let f = InstanceSpec::Finite {
            size: 2,
            identity: 0,
            table: vec![vec![0, 1], vec![1, 1]],
            preorder: FinitePreorder::default(),
        }
        .build()
        .unwrap();
        assert!(f.parse_element("2").is_err());
        assert!(Instance::Poly.parse_element("(1/2)X").is_ok());
        assert!(Instance::Poly.parse_element("1/2").is_err());
    }
}
