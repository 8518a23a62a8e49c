//! The domain `R = Z + X·Q[X]` of rational polynomials with integer constant
//! term, as the multiplicative monoid of its non-zero elements.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::budget::{SearchBudget, Tri};
use crate::numeric::{is_integer, parse_rational, RationalParseError};
use crate::premon::{Divisible, Enumeration, Monoid};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("the zero polynomial is not a monoid element")]
    Zero,
    #[error("constant term {0} is not an integer")]
    NonIntegerConstant(String),
    #[error(transparent)]
    Parse(#[from] RationalParseError),
    #[error("empty coefficient list")]
    Empty,
    #[error("cannot parse {0:?} as a polynomial")]
    Syntax(String),
}

/// A non-zero element of `R`; coefficients constant term first, no trailing
/// zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coefficients: Vec<BigRational>,
}

fn trim(mut c: Vec<BigRational>) -> Vec<BigRational> {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

fn mul_raw(f: &[BigRational], g: &[BigRational]) -> Vec<BigRational> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    trim(out)
}

/// Long division over `Q`: `(quotient, remainder)`.
fn div_rem_raw(f: &[BigRational], g: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let lead = g.last().expect("non-zero divisor").clone();
    let mut rem = f.to_vec();
    if rem.len() < g.len() {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - g.len() + 1];
    for shift in (0..quot.len()).rev() {
        let c = &rem[shift + g.len() - 1] / &lead;
        if !c.is_zero() {
            for (j, b) in g.iter().enumerate() {
                rem[shift + j] -= &c * b;
            }
        }
        quot[shift] = c;
    }
    (trim(quot), trim(rem))
}

impl RatPoly {
    pub fn new(coefficients: Vec<BigRational>) -> Result<Self, PolyError> {
        let coefficients = trim(coefficients);
        let Some(c0) = coefficients.first() else {
            return Err(PolyError::Zero);
        };
        if !is_integer(c0) {
            return Err(PolyError::NonIntegerConstant(c0.to_string()));
        }
        Ok(RatPoly { coefficients })
    }

    pub fn constant(n: i64) -> Self {
        Self::new(vec![BigRational::from_integer(BigInt::from(n))]).expect("non-zero integer")
    }

    /// `q·X` for `q ≠ 0`.
    pub fn linear(q: BigRational) -> Result<Self, PolyError> {
        Self::new(vec![BigRational::zero(), q])
    }

    pub fn x() -> Self {
        Self::linear(BigRational::one()).expect("non-zero")
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn constant_term(&self) -> &BigRational {
        &self.coefficients[0]
    }

    /// `q` when the polynomial is `q·X`.
    pub fn linear_coefficient(&self) -> Option<&BigRational> {
        (self.degree() == 1 && self.constant_term().is_zero()).then(|| &self.coefficients[1])
    }

    /// Units of `R` are `±1`: an inverse of `c ≠ ±1` would need constant
    /// term `1/c`, and non-constants have no inverse in `Q[X]`.
    pub fn is_unit(&self) -> bool {
        self.degree() == 0 && self.constant_term().abs().is_one()
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        RatPoly { coefficients: mul_raw(&self.coefficients, &other.coefficients) }
    }

    /// `g / f` when it lies in `R`.
    pub fn quotient_in_ring(f: &RatPoly, g: &RatPoly) -> Option<RatPoly> {
        let (q, r) = div_rem_raw(&g.coefficients, &f.coefficients);
        if !r.is_empty() {
            return None;
        }
        RatPoly::new(q).ok()
    }

    /// `f ∣ g` in `R`: exact division over `Q` with integral constant term.
    pub fn divides(f: &RatPoly, g: &RatPoly) -> bool {
        Self::quotient_in_ring(f, g).is_some()
    }

    pub fn scale(&self, c: &BigRational) -> Result<RatPoly, PolyError> {
        RatPoly::new(self.coefficients.iter().map(|a| a * c).collect())
    }

    /// Parses `"c0,c1,..."` with entries `p` or `p/q`.
    pub fn parse_list(text: &str) -> Result<Self, PolyError> {
        if text.trim().is_empty() {
            return Err(PolyError::Empty);
        }
        let c = text
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(c)
    }

    pub fn to_list(&self) -> String {
        self.coefficients
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let monomial = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            let coeff = if i > 0 && c.is_one() {
                String::new()
            } else if i > 0 && (-c).is_one() {
                "-".to_string()
            } else if i > 0 && !is_integer(c) {
                format!("({c})")
            } else {
                c.to_string()
            };
            parts.push(format!("{coeff}{monomial}"));
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

impl FromStr for RatPoly {
    type Err = PolyError;

    /// Either the coefficient list `"c0,c1,…"` or the displayed form, e.g.
    /// `X`, `3 + (1/2)X^2` or `-X - 4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.contains('X') {
            Self::parse_sum(s)
        } else {
            Self::parse_list(s)
        }
    }
}

impl RatPoly {
    fn parse_sum(text: &str) -> Result<Self, PolyError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || PolyError::Syntax(text.to_string());
        let mut terms = Vec::new();
        let (mut depth, mut start) = (0i32, 0usize);
        for (i, c) in s.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && i > start => {
                    terms.push(&s[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        terms.push(&s[start..]);
        let mut coefficients: Vec<BigRational> = Vec::new();
        for term in terms {
            let (negative, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term.strip_prefix('+').unwrap_or(term)),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff, degree) = match body.split_once('X') {
                None => (parse_rational(body)?, 0),
                Some((c, e)) => {
                    let degree = match e {
                        "" => 1,
                        _ => e.strip_prefix('^').and_then(|d| d.parse().ok()).ok_or_else(bad)?,
                    };
                    let c = c.strip_suffix('*').unwrap_or(c);
                    let c = c.strip_prefix('(').and_then(|c| c.strip_suffix(')')).unwrap_or(c);
                    let coeff = match c {
                        "" => BigRational::one(),
                        "-" => -BigRational::one(),
                        _ => parse_rational(c)?,
                    };
                    (coeff, degree)
                }
            };
            if coefficients.len() <= degree {
                coefficients.resize(degree + 1, BigRational::zero());
            }
            coefficients[degree] += if negative { -coeff } else { coeff };
        }
        Self::new(coefficients)
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = Vec::<String>::deserialize(d)?;
        let c = v
            .iter()
            .map(|t| parse_rational(t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        RatPoly::new(c).map_err(D::Error::custom)
    }
}

/// `q₁X ∣ q₂X` iff `q₂ = k·q₁` for an integer `k`.
pub fn divides_linear0(q1: &BigRational, q2: &BigRational) -> bool {
    !q1.is_zero() && is_integer(&(q2 / q1))
}

/// `qX, (q/2)X, …, (q/2^{len−1})X`.
pub fn descending_chain_qx(q: &BigRational, len: usize) -> Result<Vec<RatPoly>, PolyError> {
    let two = BigRational::from_integer(2.into());
    let mut out = Vec::with_capacity(len);
    let mut c = q.clone();
    for _ in 0..len {
        out.push(RatPoly::linear(c.clone())?);
        c /= &two;
    }
    Ok(out)
}

/// One step of a chain of linear monomials, checked both ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearStep {
    pub upper: RatPoly,
    pub lower: RatPoly,
    pub forward: bool,
    pub reverse: bool,
}

impl LinearStep {
    pub fn strict(&self) -> bool {
        self.forward && !self.reverse
    }
}

pub fn chain_steps(chain: &[RatPoly]) -> Vec<LinearStep> {
    chain
        .windows(2)
        .map(|p| LinearStep {
            upper: p[0].clone(),
            lower: p[1].clone(),
            forward: RatPoly::divides(&p[1], &p[0]),
            reverse: RatPoly::divides(&p[0], &p[1]),
        })
        .collect()
}

/// `qX = 2·(q/2)X` with both factors non-units of `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonAtomCertificate {
    pub element: RatPoly,
    pub factors: [RatPoly; 2],
}

impl NonAtomCertificate {
    pub fn verify(&self) -> bool {
        self.element.linear_coefficient().is_some()
            && self.factors[0].mul(&self.factors[1]) == self.element
            && self.factors.iter().all(|f| !f.is_unit())
    }
}

pub fn qx_is_never_atom(q: &BigRational) -> Result<NonAtomCertificate, PolyError> {
    let element = RatPoly::linear(q.clone())?;
    let half = q / BigRational::from_integer(2.into());
    Ok(NonAtomCertificate {
        factors: [RatPoly::constant(2), RatPoly::linear(half)?],
        element,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("the factors multiply to {0}, not X")]
    WrongProduct(String),
    #[error("factor {0} is a unit")]
    UnitFactor(usize),
}

/// For a factorization of `X` into non-units: the one factor of the form
/// `qX`, all others being non-unit integer constants, with the certificate
/// that this factor is not an atom. Hence no factorization of `X` consists
/// of atoms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorShape {
    pub linear_index: usize,
    pub linear_factor_split: NonAtomCertificate,
}

pub fn divisor_shape_of_x(factors: &[RatPoly]) -> Result<DivisorShape, ShapeError> {
    let product = factors.iter().fold(RatPoly::constant(1), |acc, f| acc.mul(f));
    if product != RatPoly::x() {
        return Err(ShapeError::WrongProduct(product.to_string()));
    }
    if let Some(i) = factors.iter().position(RatPoly::is_unit) {
        return Err(ShapeError::UnitFactor(i));
    }
    // Degrees add up to 1 and constant terms multiply to 0 with every
    // constant factor non-zero, so exactly one factor is `qX`.
    let linear: Vec<usize> = (0..factors.len()).filter(|&i| factors[i].degree() == 1).collect();
    assert_eq!(linear.len(), 1, "degree count of a factorization of X");
    let q = factors[linear[0]]
        .linear_coefficient()
        .expect("zero constant term")
        .clone();
    Ok(DivisorShape {
        linear_index: linear[0],
        linear_factor_split: qx_is_never_atom(&q).expect("q is non-zero"),
    })
}

/// The multiplicative monoid `R \ {0}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyDomain;

impl Monoid for PolyDomain {
    type Elem = RatPoly;

    fn identity(&self) -> RatPoly {
        RatPoly::constant(1)
    }

    fn multiply(&self, x: &RatPoly, y: &RatPoly) -> RatPoly {
        x.mul(y)
    }

    fn overshoots(&self, prefix: &RatPoly, target: &RatPoly) -> bool {
        prefix.degree() > target.degree()
    }
}

impl Divisible for PolyDomain {
    fn divides(&self, x: &RatPoly, y: &RatPoly, _: &SearchBudget) -> Tri {
        Tri::from(RatPoly::divides(x, y))
    }

    fn divisor_candidates(&self, _: &RatPoly, _: &SearchBudget) -> Enumeration<RatPoly> {
        Enumeration::truncated(Vec::new())
    }

    fn multiple_candidates(&self, _: &RatPoly, _: &SearchBudget) -> Enumeration<RatPoly> {
        Enumeration::truncated(Vec::new())
    }

    /// `f, f/2, f/4, …` for `f` with zero constant term.
    fn divisor_chain(&self, x: &RatPoly, len: usize, _: &SearchBudget) -> Option<Vec<RatPoly>> {
        if !x.constant_term().is_zero() {
            return None;
        }
        let half = BigRational::new(1.into(), 2.into());
        let mut out = vec![x.clone()];
        while out.len() < len {
            let next = out.last().expect("non-empty").scale(&half).ok()?;
            out.push(next);
        }
        Some(out)
    }

    fn divisor_chain_is_proven(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn p(s: &str) -> RatPoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_form_round_trips() {
        for text in ["X", "(1/2)X", "-X^2 + 3", "3 + (1/2)X^2", "-4 - X", "2X^3 - (3/7)X + 1"] {
            let f: RatPoly = text.parse().unwrap();
            assert_eq!(f.to_string().parse::<RatPoly>().unwrap(), f, "{text}");
        }
        assert_eq!(p("(1/2)X"), RatPoly::linear(q("1/2")).unwrap());
        assert_eq!(p("X - X + 2"), RatPoly::constant(2));
        assert!("X^".parse::<RatPoly>().is_err());
        assert!("1/2 + X".parse::<RatPoly>().is_err());
        assert!("X +".parse::<RatPoly>().is_err());
    }

    #[test]
    fn membership_and_units() {
        assert!(RatPoly::parse_list("1/2,1").is_err());
        assert_eq!(RatPoly::parse_list("0,0"), Err(PolyError::Zero));
        assert!(p("1").is_unit());
        assert!(p("-1").is_unit());
        assert!(!p("2").is_unit());
        assert!(!p("1,1").is_unit());
    }

    #[test]
    fn division_examples() {
        assert!(RatPoly::divides(&p("2"), &p("0,1")));
        assert!(RatPoly::divides(&p("0,1/2"), &p("0,1")));
        assert!(!RatPoly::divides(&p("0,1"), &p("0,1/2")));
        assert!(RatPoly::divides(&p("1,1"), &p("1,2,1")));
        assert!(!RatPoly::divides(&p("2"), &p("1,1")));
        assert_eq!(RatPoly::quotient_in_ring(&p("0,1/2"), &p("0,1")), Some(p("2")));
    }

    #[test]
    fn linear_criterion() {
        assert!(divides_linear0(&q("1/2"), &q("1")));
        assert!(divides_linear0(&q("1"), &q("1")));
        assert!(!divides_linear0(&q("2/3"), &q("1/3")));
    }

    #[test]
    fn chains() {
        let c = descending_chain_qx(&q("1"), 3).unwrap();
        assert_eq!(c, vec![p("0,1"), p("0,1/2"), p("0,1/4")]);
        assert!(chain_steps(&c).iter().all(LinearStep::strict));
        assert_eq!(descending_chain_qx(&q("3"), 2).unwrap(), vec![p("0,3"), p("0,3/2")]);
        assert_eq!(descending_chain_qx(&q("5"), 1).unwrap().len(), 1);
    }

    #[test]
    fn non_atom_certificates() {
        for (qs, half) in [("1", "0,1/2"), ("1/2", "0,1/4"), ("3", "0,3/2")] {
            let cert = qx_is_never_atom(&q(qs)).unwrap();
            assert!(cert.verify());
            assert_eq!(cert.factors[1], p(half));
        }
        assert_eq!(qx_is_never_atom(&q("0")), Err(PolyError::Zero));
    }

    #[test]
    fn shapes_of_x() {
        let shape = divisor_shape_of_x(&[p("2"), p("-3"), p("0,-1/6")]).unwrap();
        assert_eq!(shape.linear_index, 2);
        assert!(shape.linear_factor_split.verify());
        assert!(matches!(divisor_shape_of_x(&[p("2"), p("0,1")]), Err(ShapeError::WrongProduct(_))));
        assert_eq!(divisor_shape_of_x(&[p("-1"), p("0,-1")]), Err(ShapeError::UnitFactor(0)));
    }

    #[test]
    fn display() {
        assert_eq!(p("0,1").to_string(), "X");
        assert_eq!(p("0,1/2").to_string(), "(1/2)X");
        assert_eq!(p("3,0,-1").to_string(), "-X^2 + 3");
        assert_eq!(p("-2").to_string(), "-2");
    }
}
