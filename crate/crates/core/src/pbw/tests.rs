use super::*;
use crate::dsl::{format, parse_element};
use crate::Rational;

fn el(text: &str, order: &OrderSpec) -> UEAElement<Rational> {
    parse_element(text, order).unwrap()
}

fn nf(ix: &[i64], order: &OrderSpec) -> String {
    format(&normal_form::<Rational>(&word(ix), order))
}

#[test]
fn normal_form_examples() {
    let asc = OrderSpec::asc();
    assert_eq!(nf(&[1, -1], &asc), "e(-1)*e(1) - 2*e(0)");
    assert_eq!(nf(&[1, -2], &asc), "e(-2)*e(1) - 3*e(-1)");
    assert_eq!(nf(&[3, 2], &asc), "e(2)*e(3) - e(5)");
    assert_eq!(nf(&[0], &asc), "e(0)");
    assert_eq!(nf(&[0], &OrderSpec::desc()), "e(0)");
    assert_eq!(nf(&[-1, 1], &OrderSpec::desc()), "e(1)*e(-1) + 2*e(0)");
}

#[test]
fn central_element_is_collected() {
    let u = normal_form::<Rational>(&[Generator::C, Generator::E(2), Generator::C], &OrderSpec::asc());
    assert_eq!(format(&u), "e(2)*c^2");
}

#[test]
fn multiply_examples() {
    let desc = OrderSpec::desc();
    let lhs = el("e(-2)", &desc);
    let rhs = el("2*e(2) - e(1)^2", &desc);
    let expected = el("2*e(2)*e(-2) + 2*e(0) - c - e(1)^2*e(-2) - 6*e(1)*e(-1)", &desc);
    assert_eq!(multiply(&lhs, &rhs, &desc), expected);
    let sq = el("e(1)^2", &desc);
    assert_eq!(
        multiply(&lhs, &sq, &desc),
        el("e(1)^2*e(-2) + 6*e(1)*e(-1) + 6*e(0)", &desc)
    );
    let one = UEAElement::one(desc.clone());
    assert_eq!(multiply(&one, &rhs, &desc), rhs);
}

#[test]
fn change_order_examples() {
    let u = el("e(-1)*e(1) - 2*e(0)", &OrderSpec::asc());
    assert_eq!(format(&change_order(&u, &OrderSpec::desc())), "e(1)*e(-1)");
    let cartan = el("3*e(0)^2 - c", &OrderSpec::asc());
    let moved = change_order(&cartan, &OrderSpec::ann(-1));
    assert_eq!(format(&moved), format(&cartan));
    let v = el("e(2)*e(-2)", &OrderSpec::desc());
    assert_eq!(format(&change_order(&v, &OrderSpec::asc())), "e(-2)*e(2) - 4*e(0) + 1/2*c");
}

#[test]
fn cubic_reduction() {
    let u = el("e(-1)^3*(e(1)^3 - 6*e(2)*e(1) + 6*e(3))", &OrderSpec::asc());
    let r = reduce_mod_left_ideal(&u, -1).unwrap();
    assert_eq!(format(&r), "48*e(0)^3 - 144*e(0)^2 + 96*e(0)");
}

#[test]
fn omega_e2_reduction() {
    let u = el("(e(1)^3 - 6*e(2)*e(1) + 6*e(3))*e(2)", &OrderSpec::asc());
    assert!(reduce_mod_left_ideal(&u, 1).unwrap().is_zero());
    let ann = OrderSpec::ann(1);
    assert_eq!(
        change_order(&u, &ann),
        el("e(2)*e(1)^3 + 3*e(3)*e(1)^2 + 6*e(4)*e(1) - 6*e(2)^2*e(1)", &ann)
    );
}

#[test]
fn quadratic_reduction_and_tail() {
    let u = el("e(-1)*(e(1)^3 - 6*e(2)*e(1) + 6*e(3))", &OrderSpec::asc());
    let r = reduce_mod_left_ideal(&u, -1).unwrap();
    let ann = OrderSpec::ann(-1);
    assert_eq!(r, el("6*e(1)^2*e(0) - 12*e(1)^2 - 12*e(2)*e(0) + 24*e(2)", &ann));
    assert_eq!(
        r,
        el("6*e(1)^2*e(0) + 6*e(1)^2 - 12*e(2)*e(0) - 18*e(1)^2 + 24*e(2)", &ann)
    );
    let one = Rational::from_int(1);
    let tail = eval_cartan_tail(&r, &one, &Rational::from_int(0)).unwrap();
    assert_eq!(tail, el("6*(2*e(2) - e(1)^2)", &ann));
}

#[test]
fn ideal_generator_reduces_to_zero() {
    let u = el("e(-1)", &OrderSpec::asc());
    assert!(reduce_mod_left_ideal(&u, -1).unwrap().is_zero());
    assert_eq!(reduce_mod_left_ideal(&u, 0), Err(PbwError::CartanIdealGenerator));
}

#[test]
fn cartan_extraction() {
    let asc = OrderSpec::asc();
    let p = cartan_polynomial(&el("48*e(0)^3 - 144*e(0)^2 + 96*e(0)", &asc)).unwrap();
    assert_eq!(
        p,
        CartanPolynomial::from_coeffs([
            ((3, 0), Rational::from_int(48)),
            ((2, 0), Rational::from_int(-144)),
            ((1, 0), Rational::from_int(96)),
        ])
    );
    assert!(cartan_polynomial(&UEAElement::<Rational>::zero(asc.clone())).unwrap().is_zero());
    let p = cartan_polynomial(&el("2*e(0) - c", &asc)).unwrap();
    assert_eq!(p.coeff(1, 0), Rational::from_int(2));
    assert_eq!(p.coeff(0, 1), Rational::from_int(-1));
    match cartan_polynomial(&el("e(1)*e(-1) + e(0)", &asc)) {
        Err(PbwError::NotCartan(bad)) => assert_eq!(bad, vec!["e(-1)*e(1)".to_string()]),
        other => panic!("{other:?}"),
    }
    let shifted: Vec<Rational> = rational_roots(&cartan_polynomial(&el("48*e(0)^3 - 144*e(0)^2 + 96*e(0)", &asc)).unwrap())
        .unwrap()
        .into_iter()
        .map(|t| t - Rational::from_int(1))
        .collect();
    assert_eq!(shifted, vec![Rational::from_int(-1), Rational::from_int(0), Rational::from_int(1)]);
}

#[test]
fn cartan_tail_examples() {
    let ann = OrderSpec::ann(-1);
    let u = el("e(0)^2", &OrderSpec::asc());
    let r = eval_cartan_tail(&u, &Rational::from_int(3), &Rational::from_int(0)).unwrap();
    assert_eq!(r, UEAElement::scalar(Rational::from_int(9), OrderSpec::asc()));
    let u = el("e(2)*e(0)", &ann);
    let r = eval_cartan_tail(&u, &Rational::from_int(-1), &Rational::from_int(7)).unwrap();
    assert_eq!(r, el("-e(2)", &ann));
    let bad = el("e(0)*e(2)", &OrderSpec::asc());
    assert!(matches!(
        eval_cartan_tail(&bad, &Rational::from_int(1), &Rational::from_int(0)),
        Err(PbwError::IncompatibleOrder { .. })
    ));
    // e(-1) sits after e(0) under ANN(-1)
    let bad = el("e(0)*e(-1)", &ann);
    assert!(eval_cartan_tail(&bad, &Rational::from_int(1), &Rational::from_int(0)).is_err());
}

#[test]
fn degree_examples() {
    let asc = OrderSpec::asc();
    let u = el("e(-1)^3*(e(1)^3 - 6*e(2)*e(1) + 6*e(3))", &asc);
    assert_eq!(degree_components(&u).keys().copied().collect::<Vec<_>>(), vec![0]);
    assert_eq!(degree_components(&el("e(2)", &asc)).keys().copied().collect::<Vec<_>>(), vec![2]);
    let v = el("e(-2)*e(1) + e(-1)", &asc);
    assert_eq!(degree_components(&v).keys().copied().collect::<Vec<_>>(), vec![-1]);
    let mixed = el("e(2) + e(-1) + c", &asc);
    let parts = degree_components(&mixed);
    assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![-1, 0, 2]);
    let back = parts.values().fold(UEAElement::zero(asc), |acc, p| acc.add(p));
    assert_eq!(back, mixed);
}

#[test]
fn support_predicates() {
    let ann = OrderSpec::ann(1);
    let pos = |g: Generator| matches!(g, Generator::E(i) if i > 0);
    let u = el("e(2)*e(1)^3 + 3*e(3)*e(1)^2 + 6*e(4)*e(1) - 6*e(2)^2*e(1)", &ann);
    assert!(is_supported_on(&u, pos));
    assert!(!is_supported_on(&el("e(-1)*e(1)", &OrderSpec::asc()), pos));
    let cubic = el("48*e(0)^3 - 144*e(0)^2 + 96*e(0)", &OrderSpec::asc());
    assert!(is_supported_on(&cubic, |g| g == Generator::E(0)));
    assert!(!is_supported_on(&el("e(0)*c", &OrderSpec::asc()), |g| g == Generator::E(0)));
}

#[test]
fn involution_examples() {
    let asc = OrderSpec::asc();
    assert_eq!(format(&involution_uea(&el("e(1)*e(2)", &asc))), "e(-2)*e(-1) - e(-3)");
    assert_eq!(involution_uea(&el("e(0)", &asc)), el("-e(0)", &asc));
    let u = el("e(1)^3 - 6*e(2)*e(1) + 6*e(3)", &asc);
    assert_eq!(involution_uea(&involution_uea(&u)), u);
}

#[test]
fn fixed_width_scalars_agree() {
    use num_rational::Ratio;
    let u: UEAElement<Ratio<i64>> =
        parse_element("e(-1)^3*(e(1)^3 - 6*e(2)*e(1) + 6*e(3))", &OrderSpec::asc()).unwrap();
    let r = reduce_mod_left_ideal(&u, -1).unwrap();
    assert_eq!(format(&r), "48*e(0)^3 - 144*e(0)^2 + 96*e(0)");
}
