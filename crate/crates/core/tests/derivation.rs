use enriques_core::algebra::{FieldElement, FiniteField, Monomial, MultiPoly, PolyRing, RationalFunction, Ring};
use enriques_core::corpus::DERIVATIONS;
use enriques_core::derivation::{
    quotient_selfint, rs_deg_isolated, DerivationSpec, DivisorBookkeeping, PClosedType, VectorField,
};
use proptest::prelude::*;

#[test]
fn every_shipped_spec_verifies() {
    assert!(DERIVATIONS.len() >= 12);
    for f in DERIVATIONS {
        let spec = DerivationSpec::parse(f.text).unwrap_or_else(|e| panic!("{}: {e}", f.path));
        let report = spec.verify();
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn isolated_degree_vanishes_for_the_standard_numbers() {
    let book = DivisorBookkeeping {
        curves: vec![],
        intersections: None,
        divisor: vec![],
        canonical: vec![],
        c2: 16,
        claimed: Some((-12, -4)),
    };
    book.validate().unwrap();
    let deg = rs_deg_isolated(&book);
    assert_eq!((deg.divisor_square, deg.canonical_dot_divisor, deg.isolated_degree), (-12, -4, 0));
}

#[test]
fn isolated_degree_from_a_matrix() {
    // Two disjoint (-2)-curves and one (-1)-curve; D = C1 + C2 + 2E, K = E.
    let book = DivisorBookkeeping {
        curves: vec!["C1".into(), "C2".into(), "E".into()],
        intersections: Some(vec![vec![-2, 0, 0], vec![0, -2, 0], vec![0, 0, -1]]),
        divisor: vec![1, 1, 2],
        canonical: vec![0, 0, 1],
        c2: 10,
        claimed: None,
    };
    let deg = rs_deg_isolated(&book);
    assert_eq!(deg.divisor_square, -8);
    assert_eq!(deg.canonical_dot_divisor, -2);
    assert_eq!(deg.isolated_degree, 0);
}

#[test]
fn asymmetric_bookkeeping_is_rejected() {
    let book = DivisorBookkeeping {
        curves: vec!["A".into(), "B".into()],
        intersections: Some(vec![vec![-2, 1], vec![0, -2]]),
        divisor: vec![1, 1],
        canonical: vec![0, 0],
        c2: 0,
        claimed: None,
    };
    assert!(book.validate().is_err());
}

#[test]
fn quotient_self_intersection() {
    assert_eq!(quotient_selfint(-4, true).unwrap(), -2);
    assert_eq!(quotient_selfint(-1, false).unwrap(), -2);
    assert!(quotient_selfint(-3, true).is_err());
}

#[test]
fn uncorrected_type_vii_invariant_fails() {
    let file = DERIVATIONS.iter().find(|f| f.stem() == "type_vii").unwrap();
    let good = "\"(t + 1)*(t + a)*(t + b)*y + t*x^2\"";
    assert!(file.text.contains(good));
    let bad = file.text.replace(good, "\"(t + 1)*(t + a)*(t + b) + t*x^2\"");
    let report = DerivationSpec::parse(&bad).unwrap().verify();
    assert!(!report.passed());
    let failing: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    assert_eq!(failing.len(), 1, "{failing:?}");
}

fn plane_ring() -> Ring {
    PolyRing::new(FiniteField::new(4).unwrap(), vec!["t".into(), "x".into()])
}

fn poly(ring: &Ring, terms: &[(u32, u32, u64)]) -> RationalFunction {
    RationalFunction::from_poly(MultiPoly::from_terms(
        ring,
        terms.iter().map(|&(i, j, c)| (Monomial::from_exponents(vec![i, j]), FieldElement(c))),
    ))
}

#[test]
fn simple_fields_have_the_expected_type() {
    let ring = plane_ring();
    let one = RationalFunction::one(&ring);
    let x = RationalFunction::var(&ring, 1);
    // d/dt is additive.
    let dt = VectorField::new(vec![0], vec![one.clone()], one.clone(), None).unwrap();
    assert!(matches!(dt.p_closed_type().unwrap(), PClosedType::Additive));
    // x d/dx is multiplicative with constant 1.
    let xdx = VectorField::new(vec![1], vec![x.clone()], one.clone(), None).unwrap();
    match xdx.p_closed_type().unwrap() {
        PClosedType::MultiplicativeLike(c) => assert!(c.equals(&one)),
        other => panic!("{other:?}"),
    }
    // x d/dt + d/dx is not p-closed: D² = d/dt.
    let mixed = VectorField::new(vec![0, 1], vec![x, one.clone()], one, None).unwrap();
    assert!(matches!(mixed.p_closed_type().unwrap(), PClosedType::NotPClosed));
}

fn arb_poly() -> impl Strategy<Value = Vec<(u32, u32, u64)>> {
    proptest::collection::vec((0u32..4, 0u32..4, 0u64..16), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_rule(a in arb_poly(), b in arb_poly(), ct in arb_poly(), cx in arb_poly()) {
        let ring = plane_ring();
        let (f, g) = (poly(&ring, &a), poly(&ring, &b));
        let d = VectorField::new(vec![0, 1], vec![poly(&ring, &ct), poly(&ring, &cx)], RationalFunction::one(&ring), None).unwrap();
        let lhs = d.apply(&f.mul(&g));
        let rhs = f.mul(&d.apply(&g)).add(&g.mul(&d.apply(&f)));
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn squares_are_constants(a in arb_poly(), b in arb_poly(), ct in arb_poly(), cx in arb_poly()) {
        let ring = plane_ring();
        let (f, g) = (poly(&ring, &a), poly(&ring, &b));
        let d = VectorField::new(vec![0, 1], vec![poly(&ring, &ct), poly(&ring, &cx)], RationalFunction::one(&ring), None).unwrap();
        prop_assert!(d.apply(&f.square()).is_zero());
        prop_assert!(d.apply(&f.square().mul(&g)).equals(&f.square().mul(&d.apply(&g))));
    }

    #[test]
    fn prefactor_scales_the_field(a in arb_poly(), h in arb_poly(), ct in arb_poly()) {
        let ring = plane_ring();
        let f = poly(&ring, &a);
        let pre = poly(&ring, &h);
        prop_assume!(!pre.is_zero());
        let one = RationalFunction::one(&ring);
        let base = VectorField::new(vec![0], vec![poly(&ring, &ct)], one, None).unwrap();
        let scaled = VectorField::new(vec![0], vec![poly(&ring, &ct)], pre.clone(), None).unwrap();
        prop_assert!(scaled.apply(&f).equals(&pre.mul(&base.apply(&f))));
    }
}
