use std::fmt::Display;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::instance::{Element, Instance, InstanceSpec};
use super::{Cli, CliError, Command, FamilyName, FiniteSelection, Format, Mode, Outcome, Suite};
use crate::budget::{Height, SearchBudget, Tri};
use crate::finite::{enumerate_monoids, CayleyTable};
use crate::poly::{PolyDomain, RatPoly};
use crate::premon::{Classification, Divisibility, Divisible, Premon, Preorder};
use crate::presented::{Letter, Word};
use crate::puiseux::{LengthSet, PuiseuxMonoid, Representation};
use crate::testkit::{self, AccpFamily, PremonInstance, PreorderMode, VerificationReport};

pub fn run(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> Result<Outcome, CliError> {
    let budget = cli.budget.resolve()?;
    match &cli.command {
        Command::Classify { instance, element } => {
            let inst = InstanceSpec::from_arg(instance)?.build()?;
            let x = inst.parse_element(element)?;
            let c = classify(&inst, &x, &budget)?;
            match cli.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&c).expect("serializable"))?,
                Format::Text => write_classification(out, &c)?,
            }
            let open = c.is_quark == Tri::Unknown
                || c.artinian == Tri::Unknown
                || c.strongly_artinian == Tri::Unknown
                || c.irreducible.iter().any(|i| i.verdict == Tri::Unknown)
                || c.height.exact().is_none() && !matches!(c.height, Height::Infinite { .. });
            Ok(if open { Outcome::Inconclusive } else { Outcome::Pass })
        }
        Command::Verify { suite } => verify(suite, &budget, cli.format, out, err),
        Command::Chain { instance, element, index, length } => {
            let inst = InstanceSpec::from_arg(instance)?.build()?;
            let chain = chain(&inst, element.as_deref(), *index, *length, &budget)?;
            match cli.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&chain).expect("serializable"))?,
                Format::Text => {
                    writeln!(out, "{}", chain.elements.join(" > "))?;
                    for s in &chain.steps {
                        let note = s.evidence.as_deref().map(|e| format!("  [{e}]")).unwrap_or_default();
                        writeln!(out, "  {} -> {}: forward {}, reverse {}{note}", s.upper, s.lower, s.forward, s.reverse)?;
                    }
                    writeln!(out, "strict: {}", chain.strict)?;
                }
            }
            Ok(if chain.strict && chain.elements.len() == *length {
                Outcome::Pass
            } else if chain.steps.iter().any(|s| s.forward.is_false() || s.reverse.is_true()) {
                Outcome::Fail
            } else {
                Outcome::Inconclusive
            })
        }
        Command::Lengths { instance, element, caps } => {
            let inst = InstanceSpec::from_arg(instance)?.build()?;
            let Instance::Puiseux(h) = &inst else {
                return Err(CliError::Input(format!("lengths needs a puiseux instance, got {}", inst.family())));
            };
            let Element::Puiseux(x) = inst.parse_element(element)? else { unreachable!() };
            let caps = if caps.is_empty() { vec![budget.exponent_cap] } else { caps.clone() };
            let mut outcome = Outcome::Pass;
            for cap in caps {
                let row = lengths_row(h, &x, cap);
                if row.length_set.is_none() {
                    outcome = Outcome::Inconclusive;
                }
                match cli.format {
                    Format::Json => writeln!(out, "{}", serde_json::to_string(&row).expect("serializable"))?,
                    Format::Text => {
                        let show = |r: &Option<Representation>| r.as_ref().map_or("-".to_string(), ToString::to_string);
                        let set = row.length_set.as_ref().map_or("not representable".into(), ToString::to_string);
                        writeln!(
                            out,
                            "cap {}: lengths {set}; shortest {}; longest {}; stable {}",
                            row.cap,
                            show(&row.canonical),
                            show(&row.terminal),
                            row.stable
                        )?;
                    }
                }
            }
            Ok(outcome)
        }
        Command::Enum { n } => {
            let monoids = enumerate_monoids(*n).map_err(|e| CliError::Input(e.to_string()))?;
            for (index, m) in monoids.iter().enumerate() {
                let row = EnumRow {
                    index,
                    table: m.to_cayley(),
                    units: m.units().into_iter().collect(),
                    group: m.is_group(),
                    cancellative: m.is_cancellative(),
                    acyclic: m.is_acyclic(),
                    atomic: m.is_atomic(),
                };
                match cli.format {
                    Format::Json => writeln!(out, "{}", serde_json::to_string(&row).expect("serializable"))?,
                    Format::Text => writeln!(
                        out,
                        "#{index}: identity {} table {:?} units {:?} group {} acyclic {} atomic {}",
                        row.table.identity, row.table.table, row.units, row.group, row.acyclic, row.atomic
                    )?,
                }
            }
            writeln!(err, "order {n}: {} monoids up to isomorphism", monoids.len())?;
            Ok(Outcome::Pass)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumRow {
    pub index: usize,
    pub table: CayleyTable,
    pub units: Vec<usize>,
    pub group: bool,
    pub cancellative: bool,
    pub acyclic: bool,
    pub atomic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthsRow {
    pub cap: usize,
    pub canonical: Option<Representation>,
    pub terminal: Option<Representation>,
    pub length_set: Option<LengthSet>,
    /// The length set no longer grows with the cap.
    pub stable: bool,
}

fn lengths_row(h: &PuiseuxMonoid, x: &num_rational::BigRational, cap: usize) -> LengthsRow {
    LengthsRow {
        cap,
        canonical: h.member_bounded(x, cap),
        terminal: h.terminal(x, cap),
        length_set: h.length_set_bounded(x, cap),
        stable: h.stability(x, cap).is_some(),
    }
}

/// Classifies `x`, which must have been parsed by `inst`.
pub fn classify(inst: &Instance, x: &Element, budget: &SearchBudget) -> Result<Classification, CliError> {
    let r = match (inst, x) {
        (Instance::Finite(p), Element::Finite(i)) => p.classify(i, budget),
        (Instance::Puiseux(h), Element::Puiseux(q)) => Premon::new(h.clone(), Divisibility).classify(q, budget),
        (Instance::Presented(m), Element::Presented(w)) => m.premon().classify(w, budget),
        (Instance::Poly, Element::Poly(f)) => Premon::new(PolyDomain, Divisibility).classify(f, budget),
        _ => return Err(CliError::Input("element does not belong to this instance".into())),
    };
    r.map_err(|e| CliError::Input(e.to_string()))
}

fn write_classification(out: &mut impl Write, c: &Classification) -> std::io::Result<()> {
    writeln!(out, "element: {}", c.element)?;
    writeln!(out, "preorder: {}", c.preorder)?;
    writeln!(out, "unit: {}", c.is_unit)?;
    match &c.quark_witness {
        Some(w) => writeln!(out, "quark: {} (non-unit {w} strictly below)", c.is_quark)?,
        None => writeln!(out, "quark: {}", c.is_quark)?,
    }
    for i in &c.irreducible {
        match &i.witness {
            Some(w) => writeln!(out, "irreducible({}): {} (= {})", i.degree, i.verdict, w.join(" * "))?,
            None => writeln!(out, "irreducible({}): {}", i.degree, i.verdict)?,
        }
    }
    writeln!(out, "height: {}", c.height)?;
    writeln!(out, "artinian: {}", c.artinian)?;
    if let Some(chain) = &c.descending_chain {
        writeln!(out, "descending chain: {}", chain.join(" > "))?;
    }
    writeln!(out, "strongly artinian: {}", c.strongly_artinian)
}

/// One link of a rendered chain: `lower ⪯ upper` (forward) and
/// `upper ⪯ lower` (reverse); the link is strict when forward is true and
/// reverse false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCertificate {
    pub upper: String,
    pub lower: String,
    pub forward: Tri,
    pub reverse: Tri,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRendering {
    pub elements: Vec<String>,
    pub steps: Vec<StepCertificate>,
    pub strict: bool,
}

impl ChainRendering {
    fn new(elements: Vec<String>, steps: Vec<StepCertificate>) -> Self {
        let strict = steps.iter().all(|s| s.forward.is_true() && s.reverse.is_false());
        ChainRendering { elements, steps, strict }
    }
}

fn show_all<T: Display>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// A strictly decreasing chain of `len` elements from `element` (or the
/// family chain at `index`), each step certified both ways.
pub fn chain(
    inst: &Instance,
    element: Option<&str>,
    index: Option<u64>,
    len: usize,
    budget: &SearchBudget,
) -> Result<ChainRendering, CliError> {
    let none = || CliError::Input("no descending chain from this element within budget".into());
    match inst {
        Instance::Puiseux(h) => {
            let elems: Vec<_> = match element {
                Some(e) => {
                    let Element::Puiseux(x) = inst.parse_element(e)? else { unreachable!() };
                    h.divisor_chain(&x, len, budget).ok_or_else(none)?
                }
                None => {
                    let i = index.unwrap_or(0) as usize;
                    (i..i + len).map(|j| h.chain_element(j)).collect()
                }
            };
            let steps = elems
                .windows(2)
                .map(|w| {
                    let diff = h.divides(&w[1], &w[0]);
                    StepCertificate {
                        upper: w[0].to_string(),
                        lower: w[1].to_string(),
                        forward: Tri::from(diff.is_some()),
                        reverse: Tri::from(h.divides(&w[0], &w[1]).is_some()),
                        evidence: diff.map(|d| format!("{} = {} + ({d})", w[0], w[1])),
                    }
                })
                .collect();
            Ok(ChainRendering::new(show_all(&elems), steps))
        }
        Instance::Poly => {
            let Element::Poly(f) = inst.parse_element(element.unwrap_or("X"))? else { unreachable!() };
            let elems = PolyDomain.divisor_chain(&f, len, budget).ok_or_else(none)?;
            let steps = elems
                .windows(2)
                .map(|w| {
                    let q = RatPoly::quotient_in_ring(&w[1], &w[0]);
                    StepCertificate {
                        upper: w[0].to_string(),
                        lower: w[1].to_string(),
                        forward: Tri::from(q.is_some()),
                        reverse: Tri::from(RatPoly::divides(&w[0], &w[1])),
                        evidence: q.map(|q| format!("{} = {q} * {}", w[0], w[1])),
                    }
                })
                .collect();
            Ok(ChainRendering::new(show_all(&elems), steps))
        }
        Instance::Presented(m) => {
            let r = match (element, index) {
                (Some(e), _) => match e.parse::<Word>().map_err(|e| CliError::Input(e.to_string()))?.letters() {
                    [Letter::X(i)] if i % m.h() == 0 => i / m.h(),
                    _ => return Err(CliError::Input(format!("presented chains start at a letter x_(rh), got {e:?}"))),
                },
                (None, i) => i.unwrap_or(0),
            };
            let c = m.descending_chain_x(r, len, budget.rewrite_radius, budget.node_cap);
            let steps = c
                .links
                .iter()
                .map(|l| StepCertificate {
                    upper: l.upper.to_string(),
                    lower: l.lower.to_string(),
                    forward: l.forward.tri(),
                    reverse: l.reverse.tri(),
                    evidence: None,
                })
                .collect();
            Ok(ChainRendering::new(show_all(&c.words), steps))
        }
        Instance::Finite(p) => {
            let Element::Finite(start) = inst.parse_element(element.ok_or_else(|| CliError::Input("finite chains need --element".into()))?)?
            else {
                unreachable!()
            };
            let mut elems = vec![start];
            while elems.len() < len {
                let top = *elems.last().expect("non-empty");
                let next = (0..p.monoid.size())
                    .filter(|y| p.strictly_below(y, &top, budget).is_true() && p.unit_status(y, budget).is_false())
                    .max_by_key(|y| p.height(y, budget).lower_bound());
                match next {
                    Some(y) => elems.push(y),
                    None => break,
                }
            }
            let steps = elems
                .windows(2)
                .map(|w| StepCertificate {
                    upper: w[0].to_string(),
                    lower: w[1].to_string(),
                    forward: p.preorder.leq(&p.monoid, &w[1], &w[0], budget),
                    reverse: p.preorder.leq(&p.monoid, &w[0], &w[1], budget),
                    evidence: None,
                })
                .collect();
            Ok(ChainRendering::new(show_all(&elems), steps))
        }
    }
}

fn finite_instances(select: &FiniteSelection) -> Result<Vec<PremonInstance>, CliError> {
    let mode = match select.mode {
        Mode::Divisibility => PreorderMode::Divisibility,
        Mode::Random => PreorderMode::Random { seed: select.seed, density: select.density },
        Mode::Exhaustive => PreorderMode::Exhaustive,
    };
    let mut all = Vec::new();
    for n in 1..=select.n {
        all.extend(testkit::gen_finite_premons(n, mode, select.count).map_err(|e| CliError::Input(e.to_string()))?);
    }
    Ok(all)
}

fn run_finite(select: &FiniteSelection, f: impl Fn(&PremonInstance) -> VerificationReport + Sync + Send) -> Result<Vec<VerificationReport>, CliError> {
    Ok(finite_instances(select)?.par_iter().map(f).collect())
}

fn verify(
    suite: &Suite,
    budget: &SearchBudget,
    format: Format,
    out: &mut impl Write,
    err: &mut impl Write,
) -> Result<Outcome, CliError> {
    let (name, reports) = match suite {
        Suite::Lemma { select, s } => ("lemma", run_finite(select, |i| testkit::verify_factorization(i, s, budget))?),
        Suite::Cor4 { select, a, b, generators } => match (a, b) {
            (Some(a), Some(b)) => {
                let h = PuiseuxMonoid::new(*a, *b).map_err(|e| CliError::Input(e.to_string()))?;
                ("cor4", vec![testkit::verify_factorable_puiseux(&h, *generators, budget)])
            }
            _ => ("cor4", run_finite(select, |i| testkit::verify_factorable_iff_locally_artinian(i, budget))?),
        },
        Suite::Cor5 { family, a, b, generators } => {
            let fam = match family {
                FamilyName::Puiseux => AccpFamily::Puiseux { a: *a, b: *b, generators: *generators },
                FamilyName::Poly => AccpFamily::Poly,
            };
            let r = testkit::verify_acyclic_atomic_iff_accp(&fam, budget).map_err(|e| CliError::Input(e.to_string()))?;
            ("cor5", vec![r])
        }
        Suite::Nonquark { n, seeds, density } => {
            let found = testkit::find_irreducible_non_quark(*n, 0..*seeds, *density, budget)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let report = match found {
                Some(w) => {
                    let mut r = VerificationReport::new("nonquark", w.instance.provenance());
                    r.pass(format!("element {} is irreducible but {} lies strictly below it", w.element, w.below));
                    r
                }
                None => {
                    let mut r = VerificationReport::new(
                        "nonquark",
                        testkit::Provenance::Family { description: format!("orders <= {n}, {seeds} seeds") },
                    );
                    r.skip("irreducible non-quark", "none found");
                    r
                }
            };
            ("nonquark", vec![report])
        }
        Suite::Heights { select } => ("heights", run_finite(select, |i| testkit::verify_height_axioms(i, budget))?),
        Suite::Ladder { select, max_k } => ("ladder", run_finite(select, |i| testkit::verify_implication_ladder(i, *max_k, budget))?),
        Suite::Coincidence { a, b, generators } => {
            let h = PuiseuxMonoid::new(*a, *b).map_err(|e| CliError::Input(e.to_string()))?;
            ("coincidence", vec![testkit::verify_coincidence_puiseux(&h, *generators, budget)])
        }
    };

    for r in &reports {
        match format {
            Format::Json => writeln!(out, "{}", r.to_json_line())?,
            Format::Text => {
                for c in r.failures() {
                    writeln!(out, "FAIL {} {}: {:?}  replay: {}", r.suite, c.claim, c.verdict, serde_json::to_string(&r.provenance).expect("serializable"))?;
                }
            }
        }
    }
    let total = VerificationReport::total(&reports);
    let summary = format!(
        "{name}: {} instances, {} claims: {} pass, {} fail, {} skipped",
        reports.len(),
        total.total(),
        total.pass,
        total.fail,
        total.skipped
    );
    match format {
        Format::Text => writeln!(out, "{summary}")?,
        Format::Json => writeln!(err, "{summary}")?,
    }
    Ok(if total.fail > 0 {
        Outcome::Fail
    } else if total.skipped > 0 {
        Outcome::Inconclusive
    } else {
        Outcome::Pass
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outcome_combination() {
        assert_eq!(Outcome::Pass.combine(Outcome::Inconclusive), Outcome::Inconclusive);
        assert_eq!(Outcome::Inconclusive.combine(Outcome::Fail), Outcome::Fail);
        assert_eq!(Outcome::Inconclusive.code(false), 0);
        assert_eq!(Outcome::Inconclusive.code(true), 3);
    }
}
