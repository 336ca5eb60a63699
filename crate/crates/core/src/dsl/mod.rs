//! Text and JSON forms of algebra elements.

mod json;
mod parse;

use std::cmp::Reverse;

pub use json::{from_json, from_value, to_json, to_value, JsonError, SCHEMA_VERSION};
pub use parse::{parse, parse_with_limits, ExprTree, ParseLimits, SourceError};

use crate::lie::{Generator, LieElement, Virasoro};
use crate::pbw::{OrderSpec, PBWMonomial, Rank, UEAElement};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("literal {0} does not fit the scalar type")]
    Overflow(String),
    #[error("expression is not a linear combination of generators")]
    NotLinear,
}

/// Any failure of text-to-element conversion.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error(transparent)]
    Parse(#[from] SourceError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Evaluates a tree in `U(V)` under `order`, keeping the written factor order.
pub fn to_element<S: Scalar>(
    tree: &ExprTree,
    alg: &Virasoro<S>,
    order: &OrderSpec,
) -> Result<UEAElement<S>, EvalError> {
    let eval = |t: &ExprTree| to_element(t, alg, order);
    Ok(match tree {
        ExprTree::Sum(a, b) => eval(a)?.add(&eval(b)?),
        ExprTree::Difference(a, b) => eval(a)?.sub(&eval(b)?),
        ExprTree::Product(a, b) => alg.multiply(&eval(a)?, &eval(b)?, order),
        ExprTree::Power(a, n) => alg.power(&eval(a)?, *n, order),
        ExprTree::Gen(i) => UEAElement::generator(Generator::E(*i), order.clone()),
        ExprTree::Central => UEAElement::generator(Generator::C, order.clone()),
        ExprTree::Rational(q) => {
            let s = S::from_rational(q).ok_or_else(|| EvalError::Overflow(q.to_string()))?;
            UEAElement::scalar(s, order.clone())
        }
        ExprTree::Neg(a) => eval(a)?.neg(),
        ExprTree::Group(a) => eval(a)?,
    })
}

/// Parses and evaluates in the standard algebra.
pub fn parse_element<S: Scalar>(text: &str, order: &OrderSpec) -> Result<UEAElement<S>, DslError> {
    let tree = parse(text)?;
    Ok(to_element(&tree, &Virasoro::standard(), order)?)
}

/// Evaluates a tree that must be linear in the generators.
pub fn to_lie_element<S: Scalar>(tree: &ExprTree) -> Result<LieElement<S>, EvalError> {
    let u = to_element::<S>(tree, &Virasoro::standard(), &OrderSpec::asc())?;
    let mut out = LieElement::zero();
    for (m, s) in u.terms() {
        let g = match (m.powers(), m.central_exp()) {
            ([(i, 1)], 0) => Generator::E(*i),
            ([], 1) => Generator::C,
            _ => return Err(EvalError::NotLinear),
        };
        out.add_term(g, s.clone());
    }
    Ok(out)
}

type MonomialKey = (i64, Reverse<u32>, Reverse<u32>, Vec<(Rank, Reverse<u32>)>, Reverse<u32>);

/// Display order of terms: degree, then longer monomials first (generator
/// factors before powers of `c`), then the word compared factor by factor
/// under the element's order.
pub fn monomial_key(m: &PBWMonomial, order: &OrderSpec) -> MonomialKey {
    (
        m.degree(),
        Reverse(m.total_len()),
        Reverse(m.word_len()),
        m.powers()
            .iter()
            .map(|&(i, e)| (order.rank(i), Reverse(e)))
            .collect(),
        Reverse(m.central_exp()),
    )
}

fn join_terms<S: Scalar>(terms: impl IntoIterator<Item = (String, S)>) -> String {
    let mut out = String::new();
    for (body, s) in terms {
        let neg = s.is_negative();
        let mag = s.abs();
        let text = match (body.as_str(), mag.is_one()) {
            ("1", _) => mag.to_string(),
            (b, true) => b.to_string(),
            (b, false) => format!("{mag}*{b}"),
        };
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&text),
            (true, true) => {
                out.push('-');
                out.push_str(&text);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&text);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&text);
            }
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Canonical text form, e.g. `48*e(0)^3 - 144*e(0)^2 + 96*e(0)`.
pub fn format<S: Scalar>(u: &UEAElement<S>) -> String {
    let mut terms: Vec<(&PBWMonomial, &S)> = u.terms().collect();
    terms.sort_by_cached_key(|(m, _)| monomial_key(m, u.order()));
    join_terms(terms.into_iter().map(|(m, s)| (m.to_string(), s.clone())))
}

pub fn format_lie<S: Scalar>(x: &LieElement<S>) -> String {
    join_terms(x.terms().map(|(g, s)| (g.to_string(), s.clone())))
}
