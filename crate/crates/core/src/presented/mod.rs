//! The monoid presented by generators `X ∪ Y` and, for every `r ≥ 0`, the
//! relations
//!
//! ```text
//! x_{rh} ~ x_{rh+1} ⋯ x_{rh+h}        x_{rh} ~ y_{σ(rk)+1} ⋯ y_{σ(rk+k)}
//! ```
//!
//! Equality is explored by bounded breadth-first rewriting in both
//! directions. Every relation preserves the additive weight
//!
//! ```text
//! w(x_{rh}) = 2^{-r}    w(x_{rh+t}) = 2^{-(r+1)}/(h−1)  (0 < t < h)
//! w(y_j) = 2^{-r}/(σ(rk+k) − σ(rk))  for σ(rk) < j ≤ σ(rk+k)
//! ```
//!
//! (remaining `y_j` weigh 1), which is positive on every non-empty word. So
//! words of different weight are never equivalent, `u ∣ w` forces
//! `w(u) ≤ w(w)`, with equality only when `u ~ w`, and the empty word is
//! the only unit.

mod sigma;
mod word;

use std::collections::HashSet;
use std::fmt;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{SearchBudget, Tri};
use crate::numeric;
use crate::premon::{Divisibility, Divisible, Enumeration, Monoid, Premon};

pub use sigma::{Affine, Sigma, SigmaError};
pub use word::{Letter, Word, WordParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentedError {
    #[error("{name} must be at least 2, got {value}")]
    ParameterTooSmall { name: &'static str, value: u64 },
    #[error("sigma is undefined at {0}; give a tail rule to extend the table")]
    SigmaUndefined(u64),
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error(transparent)]
    Word(#[from] WordParseError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentedSpec {
    pub h: u64,
    pub k: u64,
    pub sigma: Sigma,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresentedMonoid {
    h: u64,
    k: u64,
    sigma: Sigma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    /// `x_{rh} ~ x_{rh+1} ⋯ x_{rh+h}`
    X,
    /// `x_{rh} ~ y_{σ(rk)+1} ⋯ y_{σ(rk+k)}`
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub index: u64,
    pub kind: RuleKind,
    pub left: Word,
    pub right: Word,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ~ {}", self.left, self.right)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Replace the single left-hand letter by the right-hand word.
    Expand,
    /// Replace an occurrence of the right-hand word by the left-hand letter.
    Contract,
}

/// One rewrite: relation `(index, kind)` applied at `position`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub position: usize,
    pub index: u64,
    pub kind: RuleKind,
    pub direction: Direction,
}

/// A sequence of rewrites taking `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub start: Word,
    pub steps: Vec<Step>,
    pub end: Word,
}

impl Trace {
    pub fn trivial(w: &Word) -> Self {
        Trace { start: w.clone(), steps: Vec::new(), end: w.clone() }
    }

    /// Applies the steps to `start` and checks that `end` comes out.
    pub fn replay(&self, m: &PresentedMonoid) -> bool {
        let mut w = self.start.clone();
        for step in &self.steps {
            match m.apply(step, &w) {
                Some(next) => w = next,
                None => return false,
            }
        }
        w == self.end
    }
}

/// Why two words are certainly inequivalent, or why one certainly does not
/// divide another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "by", rename_all = "snake_case")]
pub enum Refutation {
    Weight {
        #[serde(with = "numeric::rational")]
        left: BigRational,
        #[serde(with = "numeric::rational")]
        right: BigRational,
    },
    /// The congruence classes involved are finite and were listed in full.
    ExhaustedClass { size: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Equivalence {
    Proven { trace: Trace },
    Refuted { reason: Refutation },
    Unknown,
}

impl Equivalence {
    pub fn tri(&self) -> Tri {
        match self {
            Equivalence::Proven { .. } => Tri::True,
            Equivalence::Refuted { .. } => Tri::False,
            Equivalence::Unknown => Tri::Unknown,
        }
    }
}

/// `u ∣ w`: `u` rewrites to `factor`, `w` rewrites to `host`, and `factor`
/// occurs in `host` at `position`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisionWitness {
    pub factor_trace: Trace,
    pub host_trace: Trace,
    pub position: usize,
}

impl DivisionWitness {
    pub fn verify(&self, m: &PresentedMonoid, u: &Word, w: &Word) -> bool {
        let factor = &self.factor_trace.end;
        self.factor_trace.start == *u
            && self.host_trace.start == *w
            && self.factor_trace.replay(m)
            && self.host_trace.replay(m)
            && self
                .host_trace
                .end
                .letters()
                .get(self.position..self.position + factor.len())
                == Some(factor.letters())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Division {
    Proven { witness: DivisionWitness },
    Refuted { reason: Refutation },
    Unknown,
}

impl Division {
    pub fn tri(&self) -> Tri {
        match self {
            Division::Proven { .. } => Tri::True,
            Division::Refuted { .. } => Tri::False,
            Division::Unknown => Tri::Unknown,
        }
    }
}

/// The words reachable from a start word within a rewrite radius, with the
/// BFS tree for trace reconstruction.
#[derive(Clone, Debug)]
pub struct Closure {
    start: Word,
    nodes: IndexMap<Word, Option<(usize, Step)>>,
    /// Every word equivalent to the start word is listed.
    pub exhausted: bool,
}

impl Closure {
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.nodes.keys()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.nodes.contains_key(w)
    }

    pub fn trace_to(&self, target: &Word) -> Option<Trace> {
        let mut idx = self.nodes.get_index_of(target)?;
        let mut steps = Vec::new();
        while let Some((parent, step)) = self.nodes[idx] {
            steps.push(step);
            idx = parent;
        }
        steps.reverse();
        Some(Trace { start: self.start.clone(), steps, end: target.clone() })
    }
}

/// A strictly decreasing step `lower ≺ upper` with both directions checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLink {
    pub upper: Word,
    pub lower: Word,
    pub forward: Division,
    pub reverse: Division,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XChain {
    pub words: Vec<Word>,
    pub links: Vec<ChainLink>,
}

impl XChain {
    /// Every link has a replayable forward witness and a refuted reverse.
    pub fn is_certified(&self, m: &PresentedMonoid) -> bool {
        self.links.iter().all(|l| match &l.forward {
            Division::Proven { witness } => {
                witness.verify(m, &l.lower, &l.upper) && l.reverse.tri() == Tri::False
            }
            _ => false,
        })
    }

    pub fn is_forward_certified(&self, m: &PresentedMonoid) -> bool {
        self.links.iter().all(|l| match &l.forward {
            Division::Proven { witness } => witness.verify(m, &l.lower, &l.upper),
            _ => false,
        })
    }
}

/// `x_{rh}` written as the product of the letters of its y-block, each
/// checked to be a divisibility quark.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalArtinianWitness {
    pub target: Word,
    pub factors: Vec<Word>,
    pub trace: Trace,
    pub quark: Vec<Tri>,
}

impl LocalArtinianWitness {
    pub fn validates(&self, m: &PresentedMonoid) -> bool {
        let product = self.factors.iter().fold(Word::empty(), |acc, f| acc.concat(f));
        self.factors.len() >= 2
            && self.trace.start == self.target
            && self.trace.end == product
            && self.trace.replay(m)
            && self.quark.len() == self.factors.len()
            && self.quark.iter().all(|q| q.is_true())
    }
}

fn pow2_inv(r: u64) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(2), r as usize))
}

impl PresentedMonoid {
    pub fn new(h: u64, k: u64, sigma: Sigma) -> Result<Self, PresentedError> {
        if h < 2 {
            return Err(PresentedError::ParameterTooSmall { name: "h", value: h });
        }
        if k < 2 {
            return Err(PresentedError::ParameterTooSmall { name: "k", value: k });
        }
        Ok(PresentedMonoid { h, k, sigma })
    }

    pub fn from_spec(spec: &PresentedSpec) -> Result<Self, PresentedError> {
        Self::new(spec.h, spec.k, spec.sigma.clone())
    }

    pub fn spec(&self) -> PresentedSpec {
        PresentedSpec { h: self.h, k: self.k, sigma: self.sigma.clone() }
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn sigma(&self) -> &Sigma {
        &self.sigma
    }

    fn sigma_at(&self, n: u64) -> Result<u64, PresentedError> {
        self.sigma.eval(n).ok_or(PresentedError::SigmaUndefined(n))
    }

    /// `(σ(rk), σ(rk+k)]`, the y-indices of relation `r`.
    pub fn y_block(&self, r: u64) -> Result<(u64, u64), PresentedError> {
        Ok((self.sigma_at(r * self.k)?, self.sigma_at(r * self.k + self.k)?))
    }

    fn x_rhs(&self, r: u64) -> Word {
        Word((r * self.h + 1..=r * self.h + self.h).map(Letter::X).collect())
    }

    fn y_rhs(&self, r: u64) -> Option<Word> {
        let (lo, hi) = self.y_block(r).ok()?;
        Some(Word((lo + 1..=hi).map(Letter::Y).collect()))
    }

    /// The two relations with index `r`.
    pub fn rules(&self, r: u64) -> Result<[Relation; 2], PresentedError> {
        let left = Word::x(r * self.h);
        let (lo, hi) = self.y_block(r)?;
        Ok([
            Relation { index: r, kind: RuleKind::X, left: left.clone(), right: self.x_rhs(r) },
            Relation {
                index: r,
                kind: RuleKind::Y,
                left,
                right: Word((lo + 1..=hi).map(Letter::Y).collect()),
            },
        ])
    }

    fn rhs(&self, r: u64, kind: RuleKind) -> Option<Word> {
        match kind {
            RuleKind::X => Some(self.x_rhs(r)),
            RuleKind::Y => self.y_rhs(r),
        }
    }

    /// The relation whose y-block contains `y_j`, with that block.
    fn block_of(&self, j: u64) -> Option<(u64, u64, u64)> {
        if j <= self.sigma.eval(0)? {
            return None;
        }
        let mut r = 0;
        loop {
            let hi = self.sigma.eval(r * self.k + self.k)?;
            if j <= hi {
                return Some((r, self.sigma.eval(r * self.k)?, hi));
            }
            r += 1;
        }
    }

    pub fn letter_weight(&self, l: Letter) -> BigRational {
        match l {
            Letter::X(i) if i % self.h == 0 => pow2_inv(i / self.h),
            Letter::X(i) => pow2_inv(i / self.h + 1) / BigRational::from_integer((self.h - 1).into()),
            Letter::Y(j) => match self.block_of(j) {
                Some((r, lo, hi)) => pow2_inv(r) / BigRational::from_integer((hi - lo).into()),
                None => BigRational::one(),
            },
        }
    }

    pub fn weight(&self, w: &Word) -> BigRational {
        w.letters().iter().map(|&l| self.letter_weight(l)).sum()
    }

    pub fn apply(&self, step: &Step, w: &Word) -> Option<Word> {
        let left = Letter::X(step.index * self.h);
        let rhs = self.rhs(step.index, step.kind)?;
        let letters = w.letters();
        let p = step.position;
        let (matched, width) = match step.direction {
            Direction::Expand => (letters.get(p) == Some(&left), 1),
            Direction::Contract => (letters.get(p..p + rhs.len()) == Some(rhs.letters()), rhs.len()),
        };
        if !matched {
            return None;
        }
        let mut out = letters[..p].to_vec();
        match step.direction {
            Direction::Expand => out.extend_from_slice(rhs.letters()),
            Direction::Contract => out.push(left),
        }
        out.extend_from_slice(&letters[p + width..]);
        Some(Word(out))
    }

    /// Every single rewrite of `w`, in position order.
    pub fn neighbors(&self, w: &Word) -> Vec<(Step, Word)> {
        let mut candidates = Vec::new();
        for (p, &l) in w.letters().iter().enumerate() {
            match l {
                Letter::X(i) if i % self.h == 0 => {
                    for kind in [RuleKind::X, RuleKind::Y] {
                        candidates.push(Step { position: p, index: i / self.h, kind, direction: Direction::Expand });
                    }
                }
                Letter::X(i) if i % self.h == 1 => candidates.push(Step {
                    position: p,
                    index: i / self.h,
                    kind: RuleKind::X,
                    direction: Direction::Contract,
                }),
                Letter::Y(j) => {
                    if let Some((r, lo, _)) = self.block_of(j) {
                        if j == lo + 1 {
                            candidates.push(Step {
                                position: p,
                                index: r,
                                kind: RuleKind::Y,
                                direction: Direction::Contract,
                            });
                        }
                    }
                }
                _ => {}
            }
        }
        candidates
            .into_iter()
            .filter_map(|s| self.apply(&s, w).map(|next| (s, next)))
            .collect()
    }

    /// Breadth-first closure of `w` under at most `radius` rewrites.
    pub fn closure(&self, w: &Word, radius: usize, node_cap: usize) -> Closure {
        let mut nodes: IndexMap<Word, Option<(usize, Step)>> = IndexMap::new();
        nodes.insert(w.clone(), None);
        let mut layer = 0..1;
        let mut exhausted = false;
        for depth in 0..=radius {
            let before = nodes.len();
            let mut capped = false;
            for idx in layer.clone() {
                let current = nodes.get_index(idx).expect("in range").0.clone();
                for (step, next) in self.neighbors(&current) {
                    if nodes.contains_key(&next) {
                        continue;
                    }
                    if depth == radius || nodes.len() >= node_cap {
                        capped = true;
                        break;
                    }
                    nodes.insert(next, Some((idx, step)));
                }
                if capped {
                    break;
                }
            }
            if capped {
                break;
            }
            if nodes.len() == before {
                exhausted = true;
                break;
            }
            layer = before..nodes.len();
        }
        Closure { start: w.clone(), nodes, exhausted }
    }

    pub fn equivalent_bounded(&self, u: &Word, w: &Word, radius: usize, node_cap: usize) -> Equivalence {
        if u == w {
            return Equivalence::Proven { trace: Trace::trivial(u) };
        }
        let (wu, ww) = (self.weight(u), self.weight(w));
        if wu != ww {
            return Equivalence::Refuted { reason: Refutation::Weight { left: wu, right: ww } };
        }
        let cl = self.closure(u, radius, node_cap);
        if let Some(trace) = cl.trace_to(w) {
            return Equivalence::Proven { trace };
        }
        if cl.exhausted {
            return Equivalence::Refuted { reason: Refutation::ExhaustedClass { size: cl.len() } };
        }
        Equivalence::Unknown
    }

    pub fn divides_bounded(&self, u: &Word, w: &Word, radius: usize, node_cap: usize) -> Division {
        let (wu, ww) = (self.weight(u), self.weight(w));
        if wu > ww {
            return Division::Refuted { reason: Refutation::Weight { left: wu, right: ww } };
        }
        if wu == ww {
            return match self.equivalent_bounded(u, w, radius, node_cap) {
                Equivalence::Proven { trace } => Division::Proven {
                    witness: DivisionWitness { factor_trace: trace, host_trace: Trace::trivial(w), position: 0 },
                },
                Equivalence::Refuted { reason } => Division::Refuted { reason },
                Equivalence::Unknown => Division::Unknown,
            };
        }
        let factors = self.closure(u, radius, node_cap);
        let hosts = self.closure(w, radius, node_cap);
        let lengths: HashSet<usize> = factors.words().map(Word::len).collect();
        for host in hosts.words() {
            for &len in &lengths {
                for pos in 0..=host.len().saturating_sub(len) {
                    if pos + len > host.len() {
                        break;
                    }
                    let piece = Word(host.letters()[pos..pos + len].to_vec());
                    if let Some(factor_trace) = factors.trace_to(&piece) {
                        return Division::Proven {
                            witness: DivisionWitness {
                                factor_trace,
                                host_trace: hosts.trace_to(host).expect("listed"),
                                position: pos,
                            },
                        };
                    }
                }
            }
        }
        if factors.exhausted && hosts.exhausted {
            Division::Refuted { reason: Refutation::ExhaustedClass { size: hosts.len() } }
        } else {
            Division::Unknown
        }
    }

    /// Subwords of the words equivalent to `w`: a superset of its divisors
    /// when the class of `w` is exhausted.
    pub fn divisor_candidates_bounded(&self, w: &Word, radius: usize, node_cap: usize) -> Enumeration<Word> {
        let cl = self.closure(w, radius, node_cap);
        let mut seen: IndexMap<Word, ()> = IndexMap::new();
        for v in cl.words() {
            for s in v.subwords() {
                seen.insert(s, ());
            }
        }
        let mut elements: Vec<Word> = seen.into_keys().collect();
        elements.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        Enumeration { elements, exhaustive: cl.exhausted }
    }

    pub fn premon(&self) -> Premon<PresentedMonoid, Divisibility> {
        Premon::new(self.clone(), Divisibility)
    }

    /// The divisibility-quark test for a single letter at `radius`.
    pub fn is_quark_bounded(&self, letter: Letter, radius: usize, budget: &SearchBudget) -> Tri {
        let budget = budget.with_rewrite_radius(radius);
        self.premon()
            .is_quark(&Word::letter(letter), &budget)
            .map_or(Tri::Unknown, |d| d.tri())
    }

    /// `x_{rh}, x_{(r+1)h}, …` with each step checked in both directions.
    pub fn descending_chain_x(&self, r: u64, len: usize, radius: usize, node_cap: usize) -> XChain {
        let words: Vec<Word> = (0..len as u64).map(|m| Word::x((r + m) * self.h)).collect();
        let links = words
            .windows(2)
            .map(|p| ChainLink {
                upper: p[0].clone(),
                lower: p[1].clone(),
                forward: self.divides_bounded(&p[1], &p[0], radius, node_cap),
                reverse: self.divides_bounded(&p[0], &p[1], radius, node_cap),
            })
            .collect();
        XChain { words, links }
    }

    pub fn k_local_artinian_witness(&self, r: u64, budget: &SearchBudget) -> Result<LocalArtinianWitness, PresentedError> {
        let [_, y_rule] = self.rules(r)?;
        let target = y_rule.left.clone();
        let trace = Trace {
            start: target.clone(),
            steps: vec![Step { position: 0, index: r, kind: RuleKind::Y, direction: Direction::Expand }],
            end: y_rule.right.clone(),
        };
        let factors: Vec<Word> = y_rule.right.letters().iter().map(|&l| Word::letter(l)).collect();
        let quark = y_rule
            .right
            .letters()
            .iter()
            .map(|&l| self.is_quark_bounded(l, budget.rewrite_radius, budget))
            .collect();
        Ok(LocalArtinianWitness { target, factors, trace, quark })
    }

    /// A letter `x_{mh}` that divides `w`, found in `w` or in its closure.
    fn x_multiple_in(&self, w: &Word, radius: usize, node_cap: usize) -> Option<u64> {
        let pick = |v: &Word| {
            v.letters().iter().find_map(|l| match l {
                Letter::X(i) if i % self.h == 0 => Some(i / self.h),
                _ => None,
            })
        };
        pick(w).or_else(|| self.closure(w, radius, node_cap).words().find_map(pick))
    }
}

impl Monoid for PresentedMonoid {
    type Elem = Word;

    fn identity(&self) -> Word {
        Word::empty()
    }

    fn multiply(&self, x: &Word, y: &Word) -> Word {
        x.concat(y)
    }

    fn equal(&self, x: &Word, y: &Word, budget: &SearchBudget) -> Tri {
        self.equivalent_bounded(x, y, budget.rewrite_radius, budget.node_cap).tri()
    }

    fn exact_equality(&self) -> bool {
        false
    }

    fn overshoots(&self, prefix: &Word, target: &Word) -> bool {
        self.weight(prefix) > self.weight(target)
    }
}

impl Divisible for PresentedMonoid {
    fn divides(&self, x: &Word, y: &Word, budget: &SearchBudget) -> Tri {
        self.divides_bounded(x, y, budget.rewrite_radius, budget.node_cap).tri()
    }

    fn divisor_candidates(&self, y: &Word, budget: &SearchBudget) -> Enumeration<Word> {
        self.divisor_candidates_bounded(y, budget.rewrite_radius, budget.node_cap)
    }

    fn multiple_candidates(&self, _: &Word, _: &SearchBudget) -> Enumeration<Word> {
        Enumeration::truncated(Vec::new())
    }

    fn divisor_chain(&self, x: &Word, len: usize, budget: &SearchBudget) -> Option<Vec<Word>> {
        let m = self.x_multiple_in(x, budget.rewrite_radius, budget.node_cap)?;
        let same_weight = self.weight(x) == self.weight(&Word::x(m * self.h));
        let mut chain = vec![x.clone()];
        let mut j = if same_weight { m + 1 } else { m };
        while chain.len() < len {
            chain.push(Word::x(j * self.h));
            j += 1;
        }
        Some(chain)
    }
}
