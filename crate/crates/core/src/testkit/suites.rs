use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{gen_finite_premons, PremonInstance, PreorderMode, Provenance, TestkitError, VerificationReport};
use crate::budget::{Decision, Degree, Height, SearchBudget, Tri};
use crate::poly::{self, PolyDomain, RatPoly};
use crate::premon::{Divisibility, Monoid, Premon};
use crate::puiseux::{AccpVerdict, PuiseuxMonoid};

fn show(v: &[usize]) -> String {
    format!("{v:?}")
}

/// Every ⪯-non-unit factors into degree-`s` ⪯-irreducibles, for each `s`.
/// Each factorization is re-checked: the product reproduces the element,
/// every split consists of ⪯-non-units strictly below their parent, and every
/// factor is irreducible at the same degree and budget.
pub fn verify_factorization(instance: &PremonInstance, degrees: &[Degree], budget: &SearchBudget) -> VerificationReport {
    let mut report = VerificationReport::new("lemma", instance.provenance());
    let p = instance.premon();
    let non_units = match p.non_units(budget) {
        Ok(v) => v,
        Err(e) => {
            report.skip("non-units", e.to_string());
            return report;
        }
    };
    if non_units.is_empty() {
        report.pass("no non-units (vacuous)");
        return report;
    }
    for &x in &non_units {
        for &s in degrees {
            let claim = format!("factor {x} at degree {s}");
            let f = match p.factor_into_irreducibles(&x, s, budget) {
                Ok(f) => f,
                Err(e) => {
                    report.fail(claim, format!("element {x}: {e}"));
                    continue;
                }
            };
            let product = p.monoid.product(&f.factors);
            let splits_ok = f.splits.iter().all(|split| {
                p.monoid.product(&split.children) == split.parent
                    && split.children.iter().all(|c| {
                        p.strictly_below(c, &split.parent, budget).is_true()
                            && p.unit_status(c, budget).is_false()
                    })
            });
            let factors_ok = f
                .factors
                .iter()
                .all(|y| matches!(p.is_irreducible(y, s, budget), Ok(Decision::True)));
            report.check(claim, product == x && splits_ok && factors_ok, || {
                format!(
                    "element {x}: factors {} multiply to {product}, splits ok {splits_ok}, factors irreducible {factors_ok}",
                    show(&f.factors)
                )
            });
        }
    }
    report
}

/// Under the hypothesis that every ⪯-irreducible has finite ⪯-height, the
/// instance is ⪯-factorable iff it is locally ⪯-artinian. On a finite carrier
/// both sides hold, so this amounts to checking factorability; the report
/// records each side separately.
pub fn verify_factorable_iff_locally_artinian(instance: &PremonInstance, budget: &SearchBudget) -> VerificationReport {
    let mut report = VerificationReport::new("factorable", instance.provenance());
    let p = instance.premon();
    let non_units = match p.non_units(budget) {
        Ok(v) => v,
        Err(e) => {
            report.skip("non-units", e.to_string());
            return report;
        }
    };
    if non_units.is_empty() {
        report.pass("no non-units (vacuous)");
        return report;
    }

    let mut bad_height = Vec::new();
    for &x in &non_units {
        if matches!(p.is_irreducible(&x, Degree::Infinite, budget), Ok(Decision::True))
            && p.height(&x, budget).exact().is_none()
        {
            bad_height.push(x);
        }
    }
    report.check("irreducibles have finite height", bad_height.is_empty(), || {
        format!("irreducibles without exact height: {}", show(&bad_height))
    });

    let unfactored: Vec<usize> = non_units
        .iter()
        .copied()
        .filter(|x| p.factor_into_irreducibles(x, Degree::Infinite, budget).is_err())
        .collect();
    let factorable = unfactored.is_empty();
    report.check("factorable", factorable, || {
        format!("no factorization into irreducibles: {}", show(&unfactored))
    });

    let local = p.is_k_locally_artinian(budget.factor_cap, budget);
    report.check("locally artinian", local.is_true(), || {
        format!("k-local artinianity at k = {} is {local}", budget.factor_cap)
    });

    report.check("factorable iff locally artinian", Tri::from(factorable) == local, || {
        format!("factorable {factorable}, locally artinian {local}")
    });
    report
}

/// `h`-local artinianity implies `k`-local artinianity
/// for `h ≤ k`. Checks the verdicts for `k = 1..=max_k` never go from `true`
/// back to anything else.
pub fn verify_implication_ladder(instance: &PremonInstance, max_k: usize, budget: &SearchBudget) -> VerificationReport {
    let mut report = VerificationReport::new("ladder", instance.provenance());
    let p = instance.premon();
    let verdicts: Vec<Tri> = (1..=max_k).map(|k| p.is_k_locally_artinian(k, budget)).collect();
    let first = verdicts.iter().position(|t| t.is_true());
    let ok = first.is_none_or(|i| verdicts[i..].iter().all(|t| t.is_true()));
    report.check(format!("ladder up to k = {max_k}"), ok, || format!("verdicts for k = 1..: {verdicts:?}"));
    report
}

/// Height 0 exactly on ⪯-units and height 1 exactly on ⪯-quarks.
pub fn verify_height_axioms(instance: &PremonInstance, budget: &SearchBudget) -> VerificationReport {
    let mut report = VerificationReport::new("height", instance.provenance());
    let p = instance.premon();
    for x in instance.monoid.elements() {
        let height = p.height(&x, budget);
        let unit = match p.is_preorder_unit(&x, budget) {
            Ok(u) => u,
            Err(e) => {
                report.skip(format!("element {x}"), e.to_string());
                continue;
            }
        };
        report.check(format!("height({x}) = 0 iff unit"), (height == Height::Exact(0)) == unit, || {
            format!("element {x}: unit {unit}, height {height}")
        });
        if unit {
            continue;
        }
        let quark = p.is_quark(&x, budget).map(|d| d.tri()).unwrap_or(Tri::Unknown);
        match quark.as_bool() {
            Some(q) => report.check(format!("height({x}) = 1 iff quark"), (height == Height::Exact(1)) == q, || {
                format!("element {x}: quark {q}, height {height}")
            }),
            None => report.skip(format!("height({x}) = 1 iff quark"), "quark test undecided"),
        }
    }
    report
}

/// On the generators `rⁱ`, `i ≤ n`, of a Puiseux monoid: being an atom, a
/// ∣-quark and a degree-2 ∣-irreducible all hold together.
pub fn verify_coincidence_puiseux(h: &PuiseuxMonoid, n: usize, budget: &SearchBudget) -> VerificationReport {
    let mut report = VerificationReport::new("coincidence", family(h));
    for cert in h.atoms_up_to(n, budget) {
        let all = [cert.atom, cert.quark, cert.irreducible];
        report.check(
            format!("r^{} = {}: atom, quark, irreducible agree", cert.exponent, cert.generator),
            all.iter().all(|t| t.is_true()),
            || format!("atom {}, quark {}, irreducible {}", cert.atom, cert.quark, cert.irreducible),
        );
    }
    report
}

/// The factorable/locally-artinian equivalence on a Puiseux monoid, as
/// bounded evidence: the generators are quarks of height 1 and ∣-artinian,
/// and sample elements factor into generators.
pub fn verify_factorable_puiseux(h: &PuiseuxMonoid, n: usize, budget: &SearchBudget) -> VerificationReport {
    let mut report = VerificationReport::new("factorable", family(h));
    let premon = Premon::new(h.clone(), Divisibility);
    for i in 0..=n {
        let g = h.generator(i);
        let height = premon.height(&g, budget);
        report.check(format!("r^{i} has finite height"), height == Height::Exact(1), || {
            format!("height of {g} is {height}")
        });
        let artinian = premon.is_artinian_element(&g, budget).tri();
        report.check(format!("r^{i} is artinian"), artinian.is_true(), || {
            format!("artinian verdict for {g} is {artinian}")
        });
    }
    for x in puiseux_samples(h) {
        let rep = h.member_bounded(&x, budget.exponent_cap);
        let ok = rep.as_ref().is_some_and(|r| r.value(h) == x && r.max_exponent().unwrap_or(0) <= n.max(budget.exponent_cap));
        report.check(format!("{x} is a sum of generators"), ok, || format!("{x} has no representation at cap {}", budget.exponent_cap));
    }
    report
}

fn family(h: &PuiseuxMonoid) -> Provenance {
    Provenance::Family {
        description: format!("puiseux r = {}", h.ratio()),
    }
}

fn puiseux_samples(h: &PuiseuxMonoid) -> Vec<BigRational> {
    let one = BigRational::one();
    vec![
        one.clone(),
        h.chain_element(0),
        h.chain_element(1),
        &one + h.generator(1),
        h.generator(2) + h.generator(3),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum AccpFamily {
    /// The Puiseux monoid `⟨(a/b)ⁱ⟩`, checked on `r⁰, …, r^generators`.
    Puiseux { a: u64, b: u64, generators: usize },
    /// The multiplicative monoid of `Z + X·Q[X]`.
    Poly,
}

/// An acyclic monoid is atomic iff some generating set consists of elements
/// satisfying the ACCP. On a Puiseux monoid both sides are evidenced; on the
/// polynomial domain the report records that the hypothesis fails and the
/// monoid is not atomic.
pub fn verify_acyclic_atomic_iff_accp(fam: &AccpFamily, budget: &SearchBudget) -> Result<VerificationReport, TestkitError> {
    match fam {
        AccpFamily::Puiseux { a, b, generators } => {
            let h = PuiseuxMonoid::new(*a, *b).map_err(|e| TestkitError::Family(e.to_string()))?;
            Ok(acyclic_accp_puiseux(&h, *generators, budget))
        }
        AccpFamily::Poly => Ok(acyclic_accp_poly(budget)),
    }
}

fn acyclic_accp_puiseux(h: &PuiseuxMonoid, n: usize, budget: &SearchBudget) -> VerificationReport {
    let mut report = VerificationReport::new("acyclic-accp", family(h));
    let samples = puiseux_samples(h);
    // `u + x + v = x` forces `u + v = 0`, and only `0` is a unit.
    let acyclic = samples
        .iter()
        .all(|x| (1..=n).all(|i| &(x + h.generator(i)) != x));
    report.check("acyclic on samples", acyclic, || "x + r^i = x for a sample".into());
    for cert in h.atoms_up_to(n, budget) {
        report.check(format!("generator r^{} is a quark", cert.exponent), cert.quark.is_true(), || {
            format!("{}: quark {}", cert.generator, cert.quark)
        });
        report.check(format!("generator r^{} satisfies the ACCP", cert.exponent), cert.accp.is_true(), || {
            format!("{}: accp {}", cert.generator, cert.accp)
        });
    }
    for x in &samples {
        let lengths = h.length_set_bounded(x, budget.exponent_cap);
        report.check(format!("{x} has a factorization into atoms"), lengths.is_some(), || {
            format!("no length set for {x} at cap {}", budget.exponent_cap)
        });
    }
    let two = h.chain_element(0);
    let fails = matches!(h.satisfies_accp_element(&two, budget.exponent_cap), AccpVerdict::Violated { .. });
    report.check(format!("{two} fails the ACCP (atomic without the ACCP)"), fails, || {
        format!("{two} not shown to fail the ACCP")
    });
    report
}

fn acyclic_accp_poly(budget: &SearchBudget) -> VerificationReport {
    let mut report = VerificationReport::new(
        "acyclic-accp",
        Provenance::Family {
            description: "Z + XQ[X]".into(),
        },
    );
    let x = RatPoly::x();
    report.check("X is a non-unit", !x.is_unit(), || "X is a unit".into());

    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let factorizations: Vec<Vec<RatPoly>> = vec![
        vec![RatPoly::constant(2), RatPoly::linear(q(1, 2)).expect("non-zero")],
        vec![RatPoly::constant(3), RatPoly::linear(q(1, 3)).expect("non-zero")],
        vec![
            RatPoly::constant(2),
            RatPoly::constant(3),
            RatPoly::linear(q(1, 6)).expect("non-zero"),
        ],
        vec![RatPoly::constant(-5), RatPoly::linear(q(-1, 5)).expect("non-zero")],
    ];
    for f in &factorizations {
        let shown = f.iter().map(ToString::to_string).collect::<Vec<_>>().join(" · ");
        match poly::divisor_shape_of_x(f) {
            Ok(shape) => report.check(
                format!("X = {shown} has a non-atom factor qX"),
                shape.linear_factor_split.verify(),
                || format!("certificate for factor {} fails", shape.linear_index),
            ),
            Err(e) => report.fail(format!("X = {shown}"), e.to_string()),
        }
    }

    for (n, d) in [(1, 1), (1, 2), (3, 1), (-2, 7)] {
        let c = q(n, d);
        let cert = poly::qx_is_never_atom(&c).expect("non-zero");
        report.check(format!("({c})X is not an atom"), cert.verify(), || format!("{cert:?}"));
        let chain = poly::descending_chain_qx(&c, budget.chain_depth).expect("non-zero");
        let steps = poly::chain_steps(&chain);
        let strict = steps.iter().all(|s| s.strict());
        report.check(format!("({c})X fails the ACCP"), strict, || {
            let bad = steps.iter().find(|s| !s.strict()).expect("some step");
            format!("{} -> {} not strict", bad.upper, bad.lower)
        });
    }
    let premon = Premon::new(PolyDomain, Divisibility);
    let artinian = premon.is_artinian_element(&x, budget).tri();
    report.check("X is not artinian", artinian.is_false(), || format!("artinian verdict {artinian}"));
    report.pass("hypothesis fails: no generating set of ACCP elements, and the monoid is not atomic");
    report
}

#[derive(Clone, Debug)]
pub struct NonQuarkWitness {
    pub instance: PremonInstance,
    pub element: usize,
    /// A ⪯-non-unit strictly below `element`.
    pub below: usize,
}

/// Elements that are degree-2 ⪯-irreducible but not ⪯-quarks, each with a
/// non-unit strictly below it.
pub fn irreducible_non_quark_elements(instance: &PremonInstance, budget: &SearchBudget) -> Vec<(usize, usize)> {
    let p = instance.premon();
    let Ok(non_units) = p.non_units(budget) else {
        return Vec::new();
    };
    non_units
        .into_iter()
        .filter_map(|x| {
            let irreducible = matches!(p.is_irreducible(&x, Degree::Finite(2), budget), Ok(Decision::True));
            match p.is_quark(&x, budget) {
                Ok(Decision::False(y)) if irreducible => Some((x, y)),
                _ => None,
            }
        })
        .collect()
}

/// Looks for a ⪯-irreducible that is not a ⪯-quark: first among the
/// divisibility premons of every order up to `n`, then among random
/// preorders on order-`n` monoids, one per seed and monoid.
pub fn find_irreducible_non_quark(
    n: usize,
    seeds: std::ops::Range<u64>,
    density: f64,
    budget: &SearchBudget,
) -> Result<Option<NonQuarkWitness>, TestkitError> {
    for order in 1..=n {
        for instance in gen_finite_premons(order, PreorderMode::Divisibility, 0)? {
            if let Some(&(element, below)) = irreducible_non_quark_elements(&instance, budget).first() {
                return Ok(Some(NonQuarkWitness { instance, element, below }));
            }
        }
    }
    let found = seeds.into_par_iter().find_map_first(|seed| {
        let instances = gen_finite_premons(n, PreorderMode::Random { seed, density }, 1).ok()?;
        instances.into_iter().find_map(|instance| {
            let &(element, below) = irreducible_non_quark_elements(&instance, budget).first()?;
            Some(NonQuarkWitness { instance, element, below })
        })
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteMonoid;

    fn b() -> SearchBudget {
        SearchBudget::default()
    }

    fn z4() -> PremonInstance {
        PremonInstance::divisibility(FiniteMonoid::multiplicative_mod(4), 0)
    }

    #[test]
    fn factorization_on_known_monoids() {
        let degrees = [Degree::Finite(2), Degree::Finite(3), Degree::Finite(6)];
        for inst in [z4(), PremonInstance::divisibility(FiniteMonoid::boolean_and(), 0)] {
            let r = verify_factorization(&inst, &degrees, &b());
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.counts.skipped, 0);
        }
        let group = PremonInstance::divisibility(FiniteMonoid::cyclic_group(3), 0);
        let r = verify_factorization(&group, &degrees, &b());
        assert_eq!(r.claims[0].claim, "no non-units (vacuous)");
    }

    #[test]
    fn factorable_and_ladder_on_z4() {
        let r = verify_factorable_iff_locally_artinian(&z4(), &b());
        assert!(r.passed() && r.counts.pass == 4, "{r:?}");
        assert!(verify_implication_ladder(&z4(), 4, &b()).passed());
        assert!(verify_height_axioms(&z4(), &b()).passed());
    }

    #[test]
    fn poly_family_report() {
        let r = verify_acyclic_atomic_iff_accp(&AccpFamily::Poly, &b()).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn discrete_instances_have_no_irreducible_non_quark() {
        let m = FiniteMonoid::multiplicative_mod(4);
        let inst = PremonInstance::new(m, crate::premon::MatrixPreorder::discrete(4), 0, crate::testkit::PreorderSource::Enumerated { index: 0 });
        assert!(irreducible_non_quark_elements(&inst, &b()).is_empty());
    }
}
