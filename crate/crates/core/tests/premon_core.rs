use premon::budget::{Decision, Degree, Height, SearchBudget, Tri};
use premon::finite::FiniteMonoid;
use premon::numeric::parse_rational;
use premon::premon::{Discrete, Divisibility, Flat, MatrixPreorder, Premon, PremonError};
use premon::presented::{PresentedMonoid, Sigma, Word};
use premon::puiseux::PuiseuxMonoid;

fn budget() -> SearchBudget {
    SearchBudget::default()
}

fn z4() -> Premon<FiniteMonoid, Divisibility> {
    Premon::new(FiniteMonoid::multiplicative_mod(4), Divisibility)
}

fn boolean() -> Premon<FiniteMonoid, Divisibility> {
    Premon::new(FiniteMonoid::boolean_and(), Divisibility)
}

#[test]
fn units_under_flat_discrete_and_divisibility() {
    let b = budget();
    let flat = Premon::new(FiniteMonoid::multiplicative_mod(4), Flat);
    assert!((0..4).all(|x| flat.is_preorder_unit(&x, &b).unwrap()));
    let discrete = Premon::new(FiniteMonoid::multiplicative_mod(4), Discrete);
    assert!(!discrete.is_preorder_unit(&0, &b).unwrap());
    assert!(discrete.is_preorder_unit(&1, &b).unwrap());
    // index 1 is the zero of the Boolean monoid
    assert!(!boolean().is_preorder_unit(&1, &b).unwrap());
}

#[test]
fn strictness_examples() {
    let b = budget();
    let discrete = Premon::new(FiniteMonoid::multiplicative_mod(4), Discrete);
    assert_eq!(discrete.strictly_below(&2, &0, &b), Tri::False);
    assert_eq!(z4().strictly_below(&2, &0, &b), Tri::True);
    let h = Premon::new(PuiseuxMonoid::new(2, 3).unwrap(), Divisibility);
    let (x, y) = (parse_rational("4/3").unwrap(), parse_rational("2").unwrap());
    assert_eq!(h.strictly_below(&x, &y, &b), Tri::True);
}

#[test]
fn quark_examples() {
    let b = budget();
    let discrete = Premon::new(FiniteMonoid::multiplicative_mod(4), Discrete);
    assert_eq!(discrete.is_quark(&2, &b).unwrap(), Decision::True);
    assert_eq!(z4().is_quark(&0, &b).unwrap(), Decision::False(2));
    assert_eq!(z4().is_quark(&2, &b).unwrap(), Decision::True);
    assert!(matches!(z4().is_quark(&1, &b), Err(PremonError::NotANonUnit(_))));
    let h = Premon::new(PuiseuxMonoid::new(2, 3).unwrap(), Divisibility);
    assert_eq!(h.is_quark(&parse_rational("1").unwrap(), &b).unwrap(), Decision::True);
}

#[test]
fn irreducible_examples() {
    let b = budget();
    assert_eq!(
        z4().is_irreducible(&0, Degree::Finite(2), &b).unwrap(),
        Decision::False(vec![2, 2])
    );
    let discrete = Premon::new(FiniteMonoid::multiplicative_mod(4), Discrete);
    assert_eq!(discrete.is_irreducible(&0, Degree::Infinite, &b).unwrap(), Decision::True);
    for s in [Degree::Finite(2), Degree::Finite(3), Degree::Infinite] {
        assert_eq!(z4().is_irreducible(&2, s, &b).unwrap(), Decision::True);
    }
}

#[test]
fn heights() {
    let b = budget();
    assert_eq!(z4().height(&1, &b), Height::Exact(0));
    assert_eq!(z4().height(&3, &b), Height::Exact(0));
    assert_eq!(z4().height(&2, &b), Height::Exact(1));
    assert_eq!(z4().height(&0, &b), Height::Exact(2));
    let m = PresentedMonoid::new(2, 3, Sigma::Identity).unwrap().premon();
    assert_eq!(
        m.height(&Word::x(0), &b.with_chain_depth(5)),
        Height::AtLeast(5)
    );
}

#[test]
fn artinian_examples() {
    let b = budget();
    assert!((0..4).all(|x| z4().is_artinian_element(&x, &b).tri() == Tri::True));
    let h = Premon::new(PuiseuxMonoid::new(2, 3).unwrap(), Divisibility);
    let two = parse_rational("2").unwrap();
    let Decision::False(chain) = h.is_artinian_element(&two, &b) else {
        panic!("2 should start a descending chain");
    };
    let expected: Vec<_> = ["2", "4/3", "8/9", "16/27"]
        .iter()
        .map(|s| parse_rational(s).unwrap())
        .collect();
    assert_eq!(chain[..4], expected[..]);
    assert_eq!(chain.len(), b.chain_depth);
    assert_eq!(h.is_artinian_element(&parse_rational("1").unwrap(), &b).tri(), Tri::True);
}

#[test]
fn strongly_artinian_examples() {
    let b = budget();
    assert_eq!(z4().is_strongly_artinian_element(&1, &b), Tri::True);
    assert_eq!(z4().is_strongly_artinian_element(&2, &b), Tri::True);
    let m = PresentedMonoid::new(2, 3, Sigma::Identity).unwrap().premon();
    assert_eq!(m.is_strongly_artinian_element(&Word::x(0), &b), Tri::Unknown);
    assert_eq!(
        m.is_strongly_artinian_element(&Word::x(0), &b.scaled(2)),
        Tri::Unknown
    );
    let h = Premon::new(PuiseuxMonoid::new(2, 3).unwrap(), Divisibility);
    assert_eq!(h.is_strongly_artinian_element(&parse_rational("1").unwrap(), &b), Tri::True);
    assert_eq!(h.is_strongly_artinian_element(&parse_rational("2").unwrap(), &b), Tri::False);
}

#[test]
fn factorization_examples() {
    let b = budget();
    let f = z4().factor_into_irreducibles(&0, Degree::Finite(2), &b).unwrap();
    assert_eq!(f.factors, vec![2, 2]);
    assert_eq!(f.splits.len(), 1);
    let f = z4().factor_into_irreducibles(&2, Degree::Finite(2), &b).unwrap();
    assert_eq!(f.factors, vec![2]);
    let discrete = Premon::new(FiniteMonoid::multiplicative_mod(4), Discrete);
    assert_eq!(
        discrete.factor_into_irreducibles(&0, Degree::Infinite, &b).unwrap().factors,
        vec![0]
    );
}

#[test]
fn down_and_up_sets() {
    let b = budget();
    let bool_premon = boolean();
    assert_eq!(bool_premon.up_set(&1, &b).unwrap(), vec![1]);
    assert_eq!(bool_premon.down_set(&1, &b).unwrap(), vec![0, 1]);
    assert_eq!(z4().up_set(&2, &b).unwrap(), vec![0, 2]);
    let h = Premon::new(PuiseuxMonoid::new(2, 3).unwrap(), Divisibility);
    assert!(matches!(
        h.up_set(&parse_rational("1").unwrap(), &b),
        Err(PremonError::BudgetExhausted(_))
    ));
}

#[test]
fn matrix_preorders_plug_in() {
    let b = budget();
    let m = FiniteMonoid::multiplicative_mod(4);
    let p = m.divisibility().to_preorder();
    let premon = Premon::new(m.clone(), p);
    let direct = z4();
    for x in 0..4 {
        assert_eq!(premon.classify(&x, &b).unwrap().height, direct.classify(&x, &b).unwrap().height);
    }
    let discrete = Premon::new(m, MatrixPreorder::discrete(4));
    assert_eq!(discrete.is_quark(&0, &b).unwrap(), Decision::True);
}

#[test]
fn classification_records() {
    let b = budget();
    let c = z4().classify(&2, &b).unwrap();
    assert_eq!(c.is_quark, Tri::True);
    assert_eq!(c.height, Height::Exact(1));
    c.check_invariants().unwrap();
    let c = z4().classify(&1, &b).unwrap();
    assert!(c.is_unit);
    c.check_invariants().unwrap();

    let h = Premon::new(PuiseuxMonoid::new(2, 3).unwrap(), Divisibility);
    let c = h.classify(&parse_rational("2").unwrap(), &b).unwrap();
    assert_eq!(c.artinian, Tri::False);
    assert_eq!(c.descending_chain.as_ref().unwrap()[1], "4/3");
    assert_eq!(c.height, Height::Infinite { witnessed_depth: b.chain_depth });

    let m = PresentedMonoid::new(2, 3, Sigma::Identity).unwrap().premon();
    let c = m.classify(&Word::x(0), &b).unwrap();
    assert_eq!(c.is_quark, Tri::False);
    assert_eq!(c.quark_witness.as_deref(), Some("x2"));
    assert_eq!(c.height, Height::AtLeast(b.chain_depth));
    let c = m.classify(&Word::y(1), &b).unwrap();
    assert_eq!(c.is_quark, Tri::True);
    assert_eq!(c.height, Height::Exact(1));
    c.check_invariants().unwrap();
}
