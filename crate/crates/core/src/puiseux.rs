//! The additive monoid `H ⊆ Q≥0` generated by `1, r, r², …` for a rational
//! `r = a/b` with `0 < r < 1` in lowest terms.
//!
//! Membership is decided exactly. If `q·bⁿ` is an integer for a least `n`,
//! then every representation of `q` can be merged down (`b·r^{i+1} → a·rⁱ`)
//! to the unique one with exponents `≤ n` and `cᵢ < b` for `i ≥ 1`, which a
//! greedy pass from the top exponent recovers. Splitting the other way
//! (`a·rⁱ → b·r^{i+1}`) as far as a cap `E` allows gives the longest
//! representation at that cap; if its top coefficient is still `< a`, no
//! representation can use a larger exponent or repeat `a·rⁱ`, which is the
//! "stable" certificate used for finite length sets, exhaustive divisor
//! lists and the element-wise ACCP.

use std::fmt;

use num_bigint::{BigInt, BigUint, ToBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::budget::{SearchBudget, Tri};
use crate::numeric::{self, is_integer};
use crate::premon::{Divisibility, Divisible, Enumeration, Monoid, Premon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PuiseuxError {
    #[error("need 0 < a < b, got a = {a}, b = {b}")]
    OutOfRange { a: u64, b: u64 },
    #[error("a = {a} and b = {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },
    #[error("{0} is not an element of the monoid")]
    NotAnElement(String),
}

/// `H = ⟨1, r, r², …⟩` with `r = a/b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuiseuxMonoid {
    a: BigInt,
    b: BigInt,
    r: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PuiseuxSpec {
    pub a: u64,
    pub b: u64,
}

/// A formal sum `Σ cᵢ rⁱ`; index `i` holds `cᵢ`, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Representation {
    coefficients: Vec<BigUint>,
}

impl Representation {
    pub fn from_coefficients(mut coefficients: Vec<BigUint>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Representation { coefficients }
    }

    pub fn from_pairs(pairs: &[(usize, u64)]) -> Self {
        let top = pairs.iter().map(|p| p.0 + 1).max().unwrap_or(0);
        let mut c = vec![BigUint::zero(); top];
        for &(e, k) in pairs {
            c[e] += BigUint::from(k);
        }
        Self::from_coefficients(c)
    }

    pub fn coefficient(&self, i: usize) -> BigUint {
        self.coefficients.get(i).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    pub fn max_exponent(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    /// Number of generators used, `Σ cᵢ`.
    pub fn length(&self) -> BigUint {
        self.coefficients.iter().sum()
    }

    pub fn value(&self, h: &PuiseuxMonoid) -> BigRational {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| BigRational::from_integer(c.to_bigint().expect("natural")) * h.generator(i))
            .sum()
    }

    /// Non-zero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> Vec<(usize, BigUint)> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}·r"),
                _ => format!("{c}·r^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct Term(usize, #[serde(with = "numeric::natural")] BigUint);

impl Serialize for Representation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self.terms();
        let mut seq = s.serialize_seq(Some(terms.len()))?;
        for (e, c) in terms {
            seq.serialize_element(&Term(e, c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Representation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(d)?;
        let top = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        if top > 1 << 20 {
            return Err(D::Error::custom("exponent too large"));
        }
        let mut c = vec![BigUint::zero(); top];
        for Term(e, k) in terms {
            c[e] += k;
        }
        Ok(Representation::from_coefficients(c))
    }
}

/// `{min, min + step, …, max}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthSet {
    #[serde(with = "numeric::natural")]
    pub min: BigUint,
    #[serde(with = "numeric::natural")]
    pub max: BigUint,
    #[serde(with = "numeric::natural")]
    pub step: BigUint,
}

impl LengthSet {
    pub fn contains(&self, n: &BigUint) -> bool {
        n >= &self.min && n <= &self.max && ((n - &self.min) % &self.step).is_zero()
    }

    pub fn cardinality(&self) -> BigUint {
        (&self.max - &self.min) / &self.step + 1u32
    }

    /// The elements in increasing order, or `None` if there are more than
    /// `limit` of them.
    pub fn elements(&self, limit: usize) -> Option<Vec<BigUint>> {
        if self.cardinality() > BigUint::from(limit) {
            return None;
        }
        let mut out = Vec::new();
        let mut n = self.min.clone();
        while n <= self.max {
            out.push(n.clone());
            n += &self.step;
        }
        Some(out)
    }

    pub fn is_subset_of(&self, other: &LengthSet) -> bool {
        self.step == other.step && other.contains(&self.min) && self.max <= other.max
    }
}

impl fmt::Display for LengthSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.elements(8) {
            Some(v) => {
                let v: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "{{{}}}", v.join(", "))
            }
            None => write!(
                f,
                "{{{}, {}, …, {}}}",
                self.min,
                &self.min + &self.step,
                self.max
            ),
        }
    }
}

/// The longest representation at `cap` has top coefficient `< a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityCertificate {
    pub cap: usize,
    pub terminal: Representation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AccpVerdict {
    /// `x = a·rⁱ + h` with `h ∈ H`, so `a·rⁱ, a·r^{i+1}, …` descends below `x`.
    Violated { index: usize, remainder: Representation },
    Satisfied { certificate: StabilityCertificate },
    Unknown,
}

impl AccpVerdict {
    pub fn tri(&self) -> Tri {
        match self {
            AccpVerdict::Violated { .. } => Tri::False,
            AccpVerdict::Satisfied { .. } => Tri::True,
            AccpVerdict::Unknown => Tri::Unknown,
        }
    }
}

/// `a·rⁱ = (b−a)·r^{i+1} + a·r^{i+1}`, with the difference represented.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub index: usize,
    #[serde(with = "numeric::rational")]
    pub upper: BigRational,
    #[serde(with = "numeric::rational")]
    pub lower: BigRational,
    pub difference: Representation,
}

impl ChainStep {
    /// Re-checks the step in exact arithmetic: the identity holds, `lower`
    /// divides `upper`, and `upper` does not divide `lower`.
    pub fn verify(&self, h: &PuiseuxMonoid) -> bool {
        self.difference.value(h) + &self.lower == self.upper
            && h.contains(&self.lower)
            && h.divides(&self.lower, &self.upper).is_some()
            && h.divides(&self.upper, &self.lower).is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomCertificate {
    pub exponent: usize,
    #[serde(with = "numeric::rational")]
    pub generator: BigRational,
    pub atom: Tri,
    pub quark: Tri,
    pub irreducible: Tri,
    pub accp: Tri,
}

fn mod_inverse(x: &BigInt, m: &BigInt) -> BigInt {
    let g = x.extended_gcd(m);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(m)
}

/// Membership of `n / bᵉ` for integers `n`, with the greedy pass's powers
/// and inverses computed once.
struct ScaledMembership {
    small: Option<(i128, Vec<(i128, i128)>)>,
    b: BigInt,
    levels: Vec<(BigInt, BigInt)>,
}

impl ScaledMembership {
    fn new(h: &PuiseuxMonoid, e: usize) -> Self {
        // levels[n] = (aⁿ, (aⁿ)⁻¹ mod b)
        let mut levels = Vec::with_capacity(e + 1);
        let mut a_pow = BigInt::one();
        for _ in 0..=e {
            let inv = mod_inverse(&a_pow.mod_floor(&h.b), &h.b);
            levels.push((a_pow.clone(), inv));
            a_pow *= &h.a;
        }
        let small = (|| {
            let b = h.b.to_i128()?;
            let v = levels
                .iter()
                .map(|(p, i)| Some((p.to_i128()?, i.to_i128()?)))
                .collect::<Option<Vec<_>>>()?;
            // keep every intermediate product well inside i128
            (b < 1 << 30 && v.last()?.0 < 1 << 60).then_some((b, v))
        })();
        ScaledMembership { small, b: h.b.clone(), levels }
    }

    fn holds(&self, n: &BigInt) -> bool {
        if let (Some((b, levels)), Some(mut n)) = (&self.small, n.to_i128()) {
            if n < 1 << 60 {
                for &(a_pow, inv) in levels.iter().skip(1).rev() {
                    let c = (n.rem_euclid(*b) * inv).rem_euclid(*b);
                    n -= c * a_pow;
                    if n < 0 {
                        return false;
                    }
                    n /= b;
                }
                return true;
            }
        }
        let mut n = n.clone();
        for (a_pow, inv) in self.levels.iter().skip(1).rev() {
            let c = (n.mod_floor(&self.b) * inv).mod_floor(&self.b);
            n -= c * a_pow;
            if n.is_negative() {
                return false;
            }
            n /= &self.b;
        }
        true
    }
}

impl PuiseuxMonoid {
    pub fn new(a: u64, b: u64) -> Result<Self, PuiseuxError> {
        if a == 0 || a >= b {
            return Err(PuiseuxError::OutOfRange { a, b });
        }
        if a.gcd(&b) != 1 {
            return Err(PuiseuxError::NotCoprime { a, b });
        }
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let r = BigRational::new(a.clone(), b.clone());
        Ok(PuiseuxMonoid { a, b, r })
    }

    pub fn from_spec(spec: &PuiseuxSpec) -> Result<Self, PuiseuxError> {
        Self::new(spec.a, spec.b)
    }

    pub fn spec(&self) -> PuiseuxSpec {
        PuiseuxSpec {
            a: self.a.to_u64().expect("fits"),
            b: self.b.to_u64().expect("fits"),
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn ratio(&self) -> &BigRational {
        &self.r
    }

    /// `a ≥ 2`: the generators are exactly the atoms and `H` is atomic
    /// without satisfying the ACCP.
    pub fn is_interesting(&self) -> bool {
        self.a >= BigInt::from(2)
    }

    /// `rⁱ`.
    pub fn generator(&self, i: usize) -> BigRational {
        num_traits::pow(self.r.clone(), i)
    }

    /// `a·rⁱ`.
    pub fn chain_element(&self, i: usize) -> BigRational {
        BigRational::from_integer(self.a.clone()) * self.generator(i)
    }

    /// Validates membership, for values arriving from outside.
    pub fn element(&self, q: BigRational) -> Result<BigRational, PuiseuxError> {
        if self.contains(&q) {
            Ok(q)
        } else {
            Err(PuiseuxError::NotAnElement(q.to_string()))
        }
    }

    /// Least `n` with `q·bⁿ ∈ Z`, if any.
    pub fn denominator_exponent(&self, q: &BigRational) -> Option<usize> {
        let mut d = q.denom().abs();
        let mut n = 0;
        while !d.is_one() {
            let g = d.gcd(&self.b);
            if g.is_one() {
                return None;
            }
            d /= g;
            n += 1;
        }
        Some(n)
    }

    /// The representation with `cᵢ < b` for `i ≥ 1` and least top exponent;
    /// `None` exactly when `q ∉ H`.
    pub fn canonical(&self, q: &BigRational) -> Option<Representation> {
        if q.is_negative() {
            return None;
        }
        let n0 = self.denominator_exponent(q)?;
        let scaled = q * BigRational::from_integer(num_traits::pow(self.b.clone(), n0));
        let mut n = scaled.to_integer();
        let mut coefficients = vec![BigUint::zero(); n0 + 1];
        let mut a_pow = num_traits::pow(self.a.clone(), n0);
        for level in (1..=n0).rev() {
            let inv = mod_inverse(&a_pow.mod_floor(&self.b), &self.b);
            let c = (n.mod_floor(&self.b) * inv).mod_floor(&self.b);
            n -= &c * &a_pow;
            if n.is_negative() {
                return None;
            }
            debug_assert!((&n % &self.b).is_zero());
            n /= &self.b;
            coefficients[level] = c.to_biguint().expect("non-negative");
            a_pow /= &self.a;
        }
        coefficients[0] = n.to_biguint().expect("non-negative");
        Some(Representation::from_coefficients(coefficients))
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.canonical(q).is_some()
    }

    /// A representation using only exponents `≤ cap`, if one exists.
    pub fn member_bounded(&self, q: &BigRational, cap: usize) -> Option<Representation> {
        let rep = self.canonical(q)?;
        (rep.max_exponent().unwrap_or(0) <= cap).then_some(rep)
    }

    /// The longest representation with exponents `≤ cap`: every `a·rⁱ` below
    /// the cap split into `b·r^{i+1}`.
    pub fn terminal(&self, q: &BigRational, cap: usize) -> Option<Representation> {
        let rep = self.member_bounded(q, cap)?;
        let mut c: Vec<BigInt> = (0..=cap)
            .map(|i| rep.coefficient(i).to_bigint().expect("natural"))
            .collect();
        for i in 0..cap {
            let (t, rest) = c[i].div_rem(&self.a);
            c[i] = rest;
            c[i + 1] += t * &self.b;
        }
        Some(Representation::from_coefficients(
            c.into_iter().map(|x| x.to_biguint().expect("natural")).collect(),
        ))
    }

    pub fn stability(&self, q: &BigRational, cap: usize) -> Option<StabilityCertificate> {
        let terminal = self.terminal(q, cap)?;
        (terminal.coefficient(cap).to_bigint().expect("natural") < self.a)
            .then_some(StabilityCertificate { cap, terminal })
    }

    /// Lengths of all representations of `q` with exponents `≤ cap`: every
    /// one is reachable from the canonical one by splits, each adding `b − a`.
    pub fn length_set_bounded(&self, q: &BigRational, cap: usize) -> Option<LengthSet> {
        let min = self.member_bounded(q, cap)?.length();
        let max = self.terminal(q, cap)?.length();
        let step = (&self.b - &self.a).to_biguint().expect("b > a");
        Some(LengthSet { min, max, step })
    }

    /// `x ∣ y` iff `y − x ∈ H`; the witness represents `y − x`.
    pub fn divides(&self, x: &BigRational, y: &BigRational) -> Option<Representation> {
        self.canonical(&(y - x))
    }

    pub fn divides_bounded(&self, x: &BigRational, y: &BigRational, cap: usize) -> Tri {
        let diff = y - x;
        if diff.is_negative() || !self.contains(&diff) {
            return Tri::False;
        }
        Tri::from(self.member_bounded(&diff, cap).is_some()).or(Tri::Unknown)
    }

    /// `a, a·r, …, a·r^{len−1}`.
    pub fn decreasing_chain(&self, len: usize) -> Vec<BigRational> {
        (0..len).map(|i| self.chain_element(i)).collect()
    }

    pub fn chain_step(&self, i: usize) -> ChainStep {
        let upper = self.chain_element(i);
        let lower = self.chain_element(i + 1);
        let difference = Representation::from_coefficients({
            let mut c = vec![BigUint::zero(); i + 2];
            c[i + 1] = (&self.b - &self.a).to_biguint().expect("b > a");
            c
        });
        ChainStep { index: i, upper, lower, difference }
    }

    /// The element-wise ACCP: it fails iff `x ∈ a·rⁱ + H` for some `i`.
    pub fn satisfies_accp_element(&self, x: &BigRational, cap: usize) -> AccpVerdict {
        for i in 0..=cap {
            let rem = x - self.chain_element(i);
            if rem.is_negative() {
                continue;
            }
            if let Some(remainder) = self.member_bounded(&rem, cap) {
                return AccpVerdict::Violated { index: i, remainder };
            }
        }
        match self.stability(x, cap) {
            Some(certificate) => AccpVerdict::Satisfied { certificate },
            None => AccpVerdict::Unknown,
        }
    }

    /// Every `v ∈ H` with `x − v ∈ H`, scale by scale: first those with
    /// denominator dividing `b⁰`, then the new ones at `b¹`, and so on, so a
    /// larger budget only extends the list. Exhaustive when `x` is stable at
    /// `cap` and the scan fits in `node_cap`.
    pub fn divisors(&self, x: &BigRational, cap: usize, node_cap: usize) -> Enumeration<BigRational> {
        let stable = self.stability(x, cap);
        let last = match &stable {
            Some(cert) => cert.terminal.max_exponent().unwrap_or(0),
            None => cap,
        };
        let mut out = Vec::new();
        let mut scanned = 0usize;
        let mut previous_scale_done = false;
        let mut scale = BigInt::one();
        for e in 0..=last {
            if e > 0 {
                scale *= &self.b;
            }
            let scaled = x * BigRational::from_integer(scale.clone());
            if !is_integer(&scaled) {
                previous_scale_done = false;
                continue;
            }
            let top = scaled.to_integer();
            let test = ScaledMembership::new(self, e);
            let mut j = BigInt::zero();
            while j <= top {
                scanned += 1;
                if scanned > node_cap {
                    return Enumeration::truncated(out);
                }
                let seen = previous_scale_done && (&j % &self.b).is_zero();
                if !seen && test.holds(&j) && test.holds(&(&top - &j)) {
                    out.push(BigRational::new(j.clone(), scale.clone()));
                }
                j += 1;
            }
            previous_scale_done = true;
        }
        if stable.is_some() && is_integer(&(x * BigRational::from_integer(scale))) {
            Enumeration::complete(out)
        } else {
            Enumeration::truncated(out)
        }
    }

    /// An atom of `H` is a non-zero element with no representation of length
    /// two or more.
    pub fn is_atom(&self, x: &BigRational, cap: usize) -> Tri {
        if x.is_zero() || !self.contains(x) {
            return Tri::False;
        }
        let Some(lengths) = self.length_set_bounded(x, cap) else {
            return Tri::Unknown;
        };
        if lengths.max > BigUint::one() {
            return Tri::False;
        }
        Tri::from(self.stability(x, cap).is_some()).or(Tri::Unknown)
    }

    /// `r⁰, …, r^N` with atom, quark, irreducible and ACCP certificates.
    pub fn atoms_up_to(&self, n: usize, budget: &SearchBudget) -> Vec<AtomCertificate> {
        let premon = Premon::new(self.clone(), Divisibility);
        (0..=n)
            .map(|i| {
                let g = self.generator(i);
                let quark = premon.is_quark(&g, budget).map_or(Tri::Unknown, |d| d.tri());
                let irreducible = premon
                    .is_irreducible(&g, crate::budget::Degree::Finite(2), budget)
                    .map_or(Tri::Unknown, |d| d.tri());
                AtomCertificate {
                    exponent: i,
                    atom: self.is_atom(&g, budget.exponent_cap),
                    quark,
                    irreducible,
                    accp: self.satisfies_accp_element(&g, budget.exponent_cap).tri(),
                    generator: g,
                }
            })
            .collect()
    }

    /// A chain `x ≻ a·rⁱ ≻ a·r^{i+1} ≻ …` when `x ∈ a·rⁱ + H`.
    fn chain_below(&self, x: &BigRational, len: usize, cap: usize) -> Option<Vec<BigRational>> {
        let i = (0..=cap).find(|&i| self.divides(&self.chain_element(i), x).is_some())?;
        let mut chain = vec![x.clone()];
        let mut j = i;
        while chain.len() < len {
            let next = self.chain_element(j);
            if &next != x {
                chain.push(next);
            }
            j += 1;
        }
        Some(chain)
    }
}

impl Monoid for PuiseuxMonoid {
    type Elem = BigRational;

    fn identity(&self) -> BigRational {
        BigRational::zero()
    }

    fn multiply(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }

    fn overshoots(&self, prefix: &BigRational, target: &BigRational) -> bool {
        prefix > target
    }
}

impl Divisible for PuiseuxMonoid {
    fn divides(&self, x: &BigRational, y: &BigRational, _: &SearchBudget) -> Tri {
        Tri::from(PuiseuxMonoid::divides(self, x, y).is_some())
    }

    fn divisor_candidates(&self, y: &BigRational, budget: &SearchBudget) -> Enumeration<BigRational> {
        self.divisors(y, budget.exponent_cap, budget.node_cap)
    }

    fn multiple_candidates(&self, _: &BigRational, _: &SearchBudget) -> Enumeration<BigRational> {
        Enumeration::truncated(Vec::new())
    }

    fn divisor_chain(&self, x: &BigRational, len: usize, budget: &SearchBudget) -> Option<Vec<BigRational>> {
        self.chain_below(x, len, budget.exponent_cap)
    }

    fn divisor_chain_is_proven(&self) -> bool {
        true
    }

    fn accp_criterion(&self, x: &BigRational, budget: &SearchBudget) -> Tri {
        match self.satisfies_accp_element(x, budget.exponent_cap) {
            AccpVerdict::Satisfied { .. } => Tri::True,
            _ => Tri::Unknown,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn h23() -> PuiseuxMonoid {
        PuiseuxMonoid::new(2, 3).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(PuiseuxMonoid::new(3, 2), Err(PuiseuxError::OutOfRange { a: 3, b: 2 }));
        assert_eq!(PuiseuxMonoid::new(2, 4), Err(PuiseuxError::NotCoprime { a: 2, b: 4 }));
        assert!(h23().is_interesting());
        assert!(!PuiseuxMonoid::new(1, 2).unwrap().is_interesting());
    }

    #[test]
    fn membership_examples() {
        let h = h23();
        assert_eq!(h.member_bounded(&q("0"), 0), Some(Representation::default()));
        assert_eq!(
            h.member_bounded(&q("4/3"), 1),
            Some(Representation::from_pairs(&[(1, 2)]))
        );
        assert_eq!(h.member_bounded(&q("1/9"), 4), None);
        assert!(!h.contains(&q("1/3")));
        assert!(!h.contains(&q("1/2")));
        assert!(!h.contains(&q("5/9")));
        assert!(h.contains(&q("4/9")));
    }

    #[test]
    fn length_sets() {
        let h = h23();
        let two = h.length_set_bounded(&q("2"), 3).unwrap();
        assert_eq!(
            two.elements(10).unwrap(),
            [2u32, 3, 4, 5].map(BigUint::from).to_vec()
        );
        let one = h.length_set_bounded(&q("1"), 6).unwrap();
        assert_eq!(one.elements(10).unwrap(), vec![BigUint::one()]);
        assert_eq!(h.length_set_bounded(&q("4/9"), 2).unwrap().to_string(), "{1}");
    }

    #[test]
    fn chains_and_identity() {
        let h = h23();
        assert_eq!(h.decreasing_chain(4), vec![q("2"), q("4/3"), q("8/9"), q("16/27")]);
        assert_eq!(h.decreasing_chain(1), vec![q("2")]);
        let h35 = PuiseuxMonoid::new(3, 5).unwrap();
        assert_eq!(h35.decreasing_chain(3), vec![q("3"), q("9/5"), q("27/25")]);
        for i in 0..5 {
            assert!(h.chain_step(i).verify(&h));
        }
    }

    #[test]
    fn divisibility() {
        let h = h23();
        assert_eq!(h.divides_bounded(&q("2/3"), &q("2"), 1), Tri::True);
        assert_eq!(h.divides_bounded(&q("5/3"), &q("5/3"), 0), Tri::True);
        assert_eq!(h.divides_bounded(&q("2"), &q("1"), 8), Tri::False);
        assert_eq!(h.divides_bounded(&q("8/9"), &q("2"), 1), Tri::Unknown);
        assert_eq!(h.divides_bounded(&q("8/9"), &q("2"), 2), Tri::True);
    }

    #[test]
    fn accp_examples() {
        let h = h23();
        assert!(matches!(
            h.satisfies_accp_element(&q("2"), 8),
            AccpVerdict::Violated { index: 0, .. }
        ));
        assert!(matches!(
            h.satisfies_accp_element(&q("4/3"), 8),
            AccpVerdict::Violated { index: 1, .. }
        ));
        assert_eq!(h.satisfies_accp_element(&q("1"), 6).tri(), Tri::True);
    }

    #[test]
    fn divisors_of_small_elements() {
        let h = h23();
        let d = h.divisors(&q("1"), 8, 1000);
        assert!(d.exhaustive);
        assert_eq!(d.elements, vec![q("0"), q("1")]);
        let d = h.divisors(&q("2"), 2, 1000);
        assert!(!d.exhaustive);
        assert!(d.elements.contains(&q("4/3")));
    }

    #[test]
    fn representation_json() {
        let rep = Representation::from_pairs(&[(0, 1), (2, 3)]);
        let text = serde_json::to_string(&rep).unwrap();
        assert_eq!(text, "[[0,1],[2,3]]");
        assert_eq!(serde_json::from_str::<Representation>(&text).unwrap(), rep);
    }
}
