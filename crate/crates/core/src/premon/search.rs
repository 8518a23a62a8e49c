//! The preorder-relative classifications, generic over any premon.
//!
//! Every search draws its candidates from [`Preorder::lower_candidates`]; a
//! `True` is returned only when that enumeration was exhaustive and every
//! relation query along the way was definite.

use std::collections::HashMap;

use indexmap::IndexMap;

use super::record::{Classification, Factorization, IrreducibleCheck, Split};
use super::{Monoid, Premon, PremonError, Preorder};
use crate::budget::{Decision, Degree, Height, SearchBudget, Tri};

/// ⪯-non-units strictly below some element.
struct StrictLower<E> {
    elements: Vec<E>,
    complete: bool,
}

impl<M: Monoid, P: Preorder<M>> Premon<M, P> {
    fn require_non_unit(&self, x: &M::Elem, budget: &SearchBudget) -> Result<(), PremonError> {
        match self.unit_status(x, budget) {
            Tri::False => Ok(()),
            Tri::True => Err(PremonError::NotANonUnit(x.to_string())),
            Tri::Unknown => Err(PremonError::BudgetExhausted(format!("unit test for {x}"))),
        }
    }

    fn strict_lower_non_units(&self, x: &M::Elem, budget: &SearchBudget) -> StrictLower<M::Elem> {
        let candidates = self.preorder.lower_candidates(&self.monoid, x, budget);
        let mut complete = candidates.exhaustive;
        let mut elements = Vec::new();
        for y in candidates.elements {
            match self.strictly_below(&y, x, budget) {
                Tri::False => continue,
                Tri::Unknown => {
                    complete = false;
                    continue;
                }
                Tri::True => {}
            }
            match self.unit_status(&y, budget) {
                Tri::False => elements.push(y),
                Tri::True => {}
                Tri::Unknown => complete = false,
            }
        }
        StrictLower { elements, complete }
    }

    /// The family chain constructor's output, re-checked step by step.
    /// Returns only a chain of exactly `len` elements with every step
    /// certified strictly decreasing.
    fn verified_chain(&self, x: &M::Elem, len: usize, budget: &SearchBudget) -> Option<Vec<M::Elem>> {
        let chain = self.preorder.descending_chain(&self.monoid, x, len, budget)?;
        if chain.len() != len || len < 2 || !self.monoid.equal(&chain[0], x, budget).is_true() {
            return None;
        }
        chain
            .windows(2)
            .all(|w| self.strictly_below(&w[1], &w[0], budget).is_true())
            .then_some(chain)
    }

    /// A ⪯-quark is a ⪯-non-unit with no ⪯-non-unit strictly below it; a
    /// `False` carries such an element.
    pub fn is_quark(&self, x: &M::Elem, budget: &SearchBudget) -> Result<Decision<M::Elem>, PremonError> {
        self.require_non_unit(x, budget)?;
        if let Some(chain) = self.verified_chain(x, 2, budget) {
            if self.unit_status(&chain[1], budget).is_false() {
                return Ok(Decision::False(chain[1].clone()));
            }
        }
        let lower = self.strict_lower_non_units(x, budget);
        Ok(match lower.elements.into_iter().next() {
            Some(y) => Decision::False(y),
            None if lower.complete => Decision::True,
            None => Decision::Unknown,
        })
    }

    /// Degree-`s` ⪯-irreducibility: `x` is not a product of `k ∈ [2, s]`
    /// ⪯-non-units all strictly below `x`. A `False` carries the first such
    /// product found in enumeration order.
    ///
    /// Products are generated layer by layer (`k` factors from `k-1`), keeping
    /// only representatives not produced before and dropping those the monoid
    /// reports as overshooting `x`. A layer that adds nothing new means every
    /// longer product has been seen, which is how `s = ∞` can still be
    /// answered definitely.
    pub fn is_irreducible(
        &self,
        x: &M::Elem,
        s: Degree,
        budget: &SearchBudget,
    ) -> Result<Decision<Vec<M::Elem>>, PremonError> {
        self.require_non_unit(x, budget)?;
        let lower = self.strict_lower_non_units(x, budget);
        let mut complete = lower.complete;
        let parts = lower.elements;
        if parts.is_empty() {
            return Ok(if complete { Decision::True } else { Decision::Unknown });
        }

        let max_k = s.effective(budget.factor_cap);
        let mut seen: IndexMap<M::Elem, ()> = IndexMap::new();
        let mut frontier: Vec<(M::Elem, Vec<M::Elem>)> =
            parts.iter().map(|p| (p.clone(), vec![p.clone()])).collect();
        let mut nodes = 0usize;
        let mut saturated = false;

        'layers: for _k in 2..=max_k {
            let mut next = Vec::new();
            for (prefix, tuple) in &frontier {
                for part in &parts {
                    nodes += 1;
                    if nodes > budget.node_cap {
                        complete = false;
                        break 'layers;
                    }
                    let product = self.monoid.multiply(prefix, part);
                    if seen.contains_key(&product) || self.monoid.overshoots(&product, x) {
                        continue;
                    }
                    let mut factors = tuple.clone();
                    factors.push(part.clone());
                    match self.monoid.equal(&product, x, budget) {
                        Tri::True => return Ok(Decision::False(factors)),
                        Tri::Unknown => complete = false,
                        Tri::False => {}
                    }
                    seen.insert(product.clone(), ());
                    next.push((product, factors));
                }
            }
            if next.is_empty() {
                saturated = true;
                break;
            }
            frontier = next;
        }

        let covered = saturated || matches!(s, Degree::Finite(k) if k <= budget.factor_cap);
        Ok(if complete && covered {
            Decision::True
        } else {
            Decision::Unknown
        })
    }

    /// ⪯-height: exact when the strict-descent tree below `x` is exhausted,
    /// infinite when the family's chain below `x` is proven to continue,
    /// otherwise the length of the longest certified chain found (at most
    /// `chain_depth`).
    pub fn height(&self, x: &M::Elem, budget: &SearchBudget) -> Height {
        match self.unit_status(x, budget) {
            Tri::True => return Height::Exact(0),
            Tri::Unknown => return Height::AtLeast(0),
            Tri::False => {}
        }
        let depth = budget.chain_depth;
        if depth >= 2 {
            if let Some(chain) = self.verified_chain(x, depth, budget) {
                if self.preorder.descent_is_proven(&self.monoid) && self.all_non_units(&chain, budget) {
                    return Height::Infinite { witnessed_depth: depth };
                }
                return Height::AtLeast(depth);
            }
        }
        let mut search = HeightSearch {
            premon: self,
            budget,
            memo: HashMap::new(),
            nodes: 0,
        };
        match search.longest_from(x, depth) {
            (h, true) => Height::Exact(h),
            (h, false) => Height::AtLeast(h),
        }
    }

    /// No strictly ⪯-decreasing sequence starts at `x`. A `False` carries a
    /// certified prefix of length `chain_depth` of an infinite one.
    pub fn is_artinian_element(&self, x: &M::Elem, budget: &SearchBudget) -> Decision<Vec<M::Elem>> {
        self.artinian_probe(x, budget).verdict
    }

    fn artinian_probe(&self, x: &M::Elem, budget: &SearchBudget) -> ArtinianProbe<M::Elem> {
        // Strict descent shrinks the principal ideal, so a finite carrier
        // admits no infinite chain.
        if self.monoid.carrier().is_some() {
            return ArtinianProbe { verdict: Decision::True, height: None, evidence: None };
        }
        let len = budget.chain_depth.max(2);
        let chain = self.verified_chain(x, len, budget);
        if let Some(chain) = chain.clone() {
            if self.preorder.descent_is_proven(&self.monoid) {
                return ArtinianProbe { verdict: Decision::False(chain), height: None, evidence: None };
            }
        }
        if self.preorder.artinian_criterion(&self.monoid, x, budget).is_true() {
            return ArtinianProbe { verdict: Decision::True, height: None, evidence: None };
        }
        let height = self.height(x, budget);
        let verdict = if height.exact().is_some() {
            Decision::True
        } else {
            Decision::Unknown
        };
        ArtinianProbe { verdict, height: Some(height), evidence: chain }
    }

    /// Finite ⪯-height. `False` when an infinite chain of non-units below a
    /// non-unit `x` is certified.
    pub fn is_strongly_artinian_element(&self, x: &M::Elem, budget: &SearchBudget) -> Tri {
        let unit = self.unit_status(x, budget);
        if unit.is_true() {
            return Tri::True;
        }
        let probe = self.artinian_probe(x, budget);
        if let Decision::False(chain) = &probe.verdict {
            if unit.is_false() && self.all_non_units(chain, budget) {
                return Tri::False;
            }
        }
        match probe.height.unwrap_or_else(|| self.height(x, budget)) {
            Height::Exact(_) => Tri::True,
            Height::Infinite { .. } => Tri::False,
            Height::AtLeast(_) => Tri::Unknown,
        }
    }

    fn all_non_units(&self, elems: &[M::Elem], budget: &SearchBudget) -> bool {
        elems.iter().all(|e| self.unit_status(e, budget).is_false())
    }

    /// Constructive factorization into degree-`s` ⪯-irreducibles: keep `x`
    /// when it is irreducible, otherwise split it along the witness found by
    /// [`Premon::is_irreducible`] and recurse on every factor. Each factor is
    /// strictly below its parent, so on an artinian element the recursion is
    /// well-founded; the node cap bounds it regardless.
    pub fn factor_into_irreducibles(
        &self,
        x: &M::Elem,
        s: Degree,
        budget: &SearchBudget,
    ) -> Result<Factorization<M::Elem>, PremonError> {
        self.require_non_unit(x, budget)?;
        let mut splits = Vec::new();
        let mut factors = Vec::new();
        let mut nodes = 0usize;
        self.factor_rec(x, s, budget, &mut nodes, &mut splits, &mut factors)?;

        if self.monoid.exact_equality() {
            let product = self.monoid.product(&factors);
            if !self.monoid.equal(&product, x, budget).is_true() {
                return Err(PremonError::ProductMismatch(x.to_string()));
            }
        }
        Ok(Factorization {
            target: x.clone(),
            factors,
            degree: s,
            splits,
        })
    }

    fn factor_rec(
        &self,
        x: &M::Elem,
        s: Degree,
        budget: &SearchBudget,
        nodes: &mut usize,
        splits: &mut Vec<Split<M::Elem>>,
        out: &mut Vec<M::Elem>,
    ) -> Result<(), PremonError> {
        *nodes += 1;
        if *nodes > budget.node_cap {
            return Err(PremonError::BudgetExhausted(format!(
                "factorization tree exceeded {} nodes",
                budget.node_cap
            )));
        }
        match self.is_irreducible(x, s, budget)? {
            Decision::True => {
                out.push(x.clone());
                Ok(())
            }
            Decision::False(children) => {
                splits.push(Split {
                    parent: x.clone(),
                    children: children.clone(),
                });
                for child in &children {
                    self.factor_rec(child, s, budget, nodes, splits, out)?;
                }
                Ok(())
            }
            Decision::Unknown => Err(PremonError::BudgetExhausted(format!(
                "irreducibility of {x} (degree {s}) undecided"
            ))),
        }
    }

    /// A factorization of `x` into at most `k` ⪯-artinian ⪯-non-units, over a
    /// finite carrier.
    pub fn local_artinian_factorization(
        &self,
        x: &M::Elem,
        k: usize,
        budget: &SearchBudget,
    ) -> Decision<()> {
        let Some(all) = self.monoid.carrier() else {
            return Decision::Unknown;
        };
        let mut parts = Vec::new();
        for y in all {
            match (self.unit_status(&y, budget), self.is_artinian_element(&y, budget).tri()) {
                (Tri::False, Tri::True) => parts.push(y),
                (Tri::Unknown, _) | (Tri::False, Tri::Unknown) => return Decision::Unknown,
                _ => {}
            }
        }
        let mut layer: Vec<M::Elem> = parts.clone();
        let mut seen: IndexMap<M::Elem, ()> = IndexMap::new();
        for step in 1..=k {
            if layer.iter().any(|p| p == x) {
                return Decision::True;
            }
            if step == k {
                break;
            }
            let mut next = Vec::new();
            for p in &layer {
                for q in &parts {
                    let prod = self.monoid.multiply(p, q);
                    if seen.insert(prod.clone(), ()).is_none() {
                        next.push(prod);
                    }
                }
            }
            layer = next;
        }
        Decision::False(())
    }

    /// Every ⪯-non-unit is a product of `k` or fewer ⪯-artinian ⪯-non-units.
    pub fn is_k_locally_artinian(&self, k: usize, budget: &SearchBudget) -> Tri {
        let Ok(non_units) = self.non_units(budget) else {
            return Tri::Unknown;
        };
        non_units.iter().fold(Tri::True, |acc, x| {
            acc.and(self.local_artinian_factorization(x, k, budget).tri())
        })
    }

    pub fn classify(&self, x: &M::Elem, budget: &SearchBudget) -> Result<Classification, PremonError> {
        let degrees = [Degree::Finite(2), Degree::Finite(3), Degree::Infinite];
        let unit = self.is_preorder_unit(x, budget)?;
        let render = |v: &[M::Elem]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        let probe = self.artinian_probe(x, budget);
        let artinian = probe.verdict;
        let known_height = probe.height;
        let descending_chain = artinian
            .witness()
            .or(probe.evidence.as_ref())
            .map(|c| render(c));

        if unit {
            return Ok(Classification {
                element: x.to_string(),
                preorder: self.tag().to_string(),
                is_unit: true,
                is_quark: Tri::False,
                quark_witness: None,
                irreducible: degrees
                    .iter()
                    .map(|&degree| IrreducibleCheck {
                        degree,
                        verdict: Tri::False,
                        witness: None,
                    })
                    .collect(),
                height: Height::Exact(0),
                artinian: artinian.tri(),
                descending_chain,
                strongly_artinian: Tri::True,
            });
        }

        let quark = self.is_quark(x, budget)?;
        let mut irreducible = Vec::new();
        for degree in degrees {
            let d = self.is_irreducible(x, degree, budget)?;
            irreducible.push(IrreducibleCheck {
                degree,
                verdict: d.tri(),
                witness: d.witness().map(|w| render(w)),
            });
        }
        let height = match &artinian {
            Decision::False(chain) if self.all_non_units(chain, budget) => Height::Infinite {
                witnessed_depth: chain.len(),
            },
            _ => known_height.unwrap_or_else(|| self.height(x, budget)),
        };
        let strongly_artinian = match height {
            Height::Exact(_) => Tri::True,
            Height::Infinite { .. } => Tri::False,
            Height::AtLeast(_) => Tri::Unknown,
        };
        Ok(Classification {
            element: x.to_string(),
            preorder: self.tag().to_string(),
            is_unit: false,
            is_quark: quark.tri(),
            quark_witness: quark.witness().map(ToString::to_string),
            irreducible,
            height,
            artinian: artinian.tri(),
            descending_chain,
            strongly_artinian,
        })
    }
}

struct ArtinianProbe<E> {
    verdict: Decision<Vec<E>>,
    height: Option<Height>,
    /// A verified strictly decreasing chain that is not known to continue.
    evidence: Option<Vec<E>>,
}

struct HeightSearch<'a, M: Monoid, P> {
    premon: &'a Premon<M, P>,
    budget: &'a SearchBudget,
    memo: HashMap<M::Elem, usize>,
    nodes: usize,
}

impl<M: Monoid, P: Preorder<M>> HeightSearch<'_, M, P> {
    /// Length of the longest strictly decreasing chain of non-units starting
    /// at the non-unit `x` and using at most `depth` elements, and whether
    /// that value is the exact height.
    fn longest_from(&mut self, x: &M::Elem, depth: usize) -> (usize, bool) {
        if let Some(&h) = self.memo.get(x) {
            return (h, true);
        }
        if depth <= 1 {
            return (1, false);
        }
        self.nodes += 1;
        if self.nodes > self.budget.node_cap {
            return (1, false);
        }
        let lower = self.premon.strict_lower_non_units(x, self.budget);
        let mut best = 1;
        let mut exact = lower.complete;
        for y in &lower.elements {
            let (h, e) = self.longest_from(y, depth - 1);
            best = best.max(h + 1);
            exact &= e;
            if best >= depth {
                return (best, false);
            }
        }
        if exact {
            self.memo.insert(x.clone(), best);
        }
        (best, exact)
    }
}
