//! The universal enveloping algebra `U(V)`: PBW normal forms under a chosen
//! generator order, products, order changes, and reduction modulo the left
//! ideals `U(V) e_g`.

mod cartan;
mod element;
mod monomial;
mod order;
pub mod rewrite;

use std::collections::BTreeMap;

pub use cartan::{
    cartan_polynomial, degree_components, eval_cartan, eval_cartan_tail, is_supported_on,
    rational_roots, CartanPolynomial,
};
pub(crate) use cartan::rational_roots_of;
pub use element::UEAElement;
pub use monomial::PBWMonomial;
pub use order::{BaseOrder, OrderError, OrderSpec, Rank};
pub use rewrite::{Leftmost, RandomSwap, RewriteStrategy};

use crate::lie::{involution_gen, Generator, Virasoro};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PbwError {
    #[error("cannot reduce modulo U(V)e(0): the ideal generator must not be Cartan")]
    CartanIdealGenerator,
    #[error("not a Cartan element; offending monomials: {}", .0.join(", "))]
    NotCartan(Vec<String>),
    #[error("polynomial involves the central element c")]
    NotUnivariate,
    #[error("the zero polynomial has every number as a root")]
    ZeroPolynomial,
    #[error("order {order} does not place e(0) after the other generators; offending monomials: {}", .offending.join(", "))]
    IncompatibleOrder {
        order: String,
        offending: Vec<String>,
    },
}

impl<S: Scalar> Virasoro<S> {
    /// Normal form of a raw generator word under `order`.
    pub fn normal_form(&self, word: &[Generator], order: &OrderSpec) -> UEAElement<S> {
        self.normal_form_with(word, order, &mut Leftmost)
    }

    /// As [`Virasoro::normal_form`] with an explicit rewriting strategy.
    pub fn normal_form_with(
        &self,
        word: &[Generator],
        order: &OrderSpec,
        strategy: &mut dyn RewriteStrategy,
    ) -> UEAElement<S> {
        let (factors, cexp) = rewrite::split_word(word);
        let terms = rewrite::normalize(self, order, [(factors, cexp, S::one())], strategy);
        UEAElement::from_normal_terms(order.clone(), terms)
    }

    /// Normal form of `coefficient * e_{word[0]} * ... ` for several words.
    pub fn normalize_words(
        &self,
        words: impl IntoIterator<Item = (Vec<i64>, u32, S)>,
        order: &OrderSpec,
    ) -> UEAElement<S> {
        let terms = rewrite::normalize(self, order, words, &mut Leftmost);
        UEAElement::from_normal_terms(order.clone(), terms)
    }

    /// Re-normalizes every monomial of `u` (in any order) under `target`.
    pub fn renormalize(
        &self,
        u: &UEAElement<S>,
        target: &OrderSpec,
        strategy: &mut dyn RewriteStrategy,
    ) -> UEAElement<S> {
        let words = u
            .terms()
            .map(|(m, s)| (m.expanded(), m.central_exp(), s.clone()));
        let terms = rewrite::normalize(self, target, words, strategy);
        UEAElement::from_normal_terms(target.clone(), terms)
    }

    pub fn multiply(&self, u: &UEAElement<S>, v: &UEAElement<S>, order: &OrderSpec) -> UEAElement<S> {
        let mut words = Vec::with_capacity(u.len() * v.len());
        for (m1, s1) in u.terms() {
            for (m2, s2) in v.terms() {
                let mut w = m1.expanded();
                w.extend(m2.expanded());
                words.push((w, m1.central_exp() + m2.central_exp(), s1.clone() * s2.clone()));
            }
        }
        self.normalize_words(words, order)
    }

    /// `u^n` under `order`.
    pub fn power(&self, u: &UEAElement<S>, n: u32, order: &OrderSpec) -> UEAElement<S> {
        let mut acc = UEAElement::one(order.clone());
        for _ in 0..n {
            acc = self.multiply(&acc, u, order);
        }
        acc
    }

    /// Same element of `U(V)`, expressed in the PBW basis of `target`.
    pub fn change_order(&self, u: &UEAElement<S>, target: &OrderSpec) -> UEAElement<S> {
        if u.order() == target {
            return u.clone();
        }
        self.renormalize(u, target, &mut Leftmost)
    }

    /// Canonical representative of `u` modulo the left ideal `U(V) e_g`.
    ///
    /// `u` is normalized under `ANN(g)`, where `e_g` is the rightmost
    /// generator, and every monomial containing `e_g` is dropped.
    pub fn reduce_mod_left_ideal(&self, u: &UEAElement<S>, g: i64) -> Result<UEAElement<S>, PbwError> {
        if g == 0 {
            return Err(PbwError::CartanIdealGenerator);
        }
        let nf = self.change_order(u, &OrderSpec::ann(g));
        Ok(nf.filter(|m| !m.contains(g)))
    }

    /// Extends the canonical involution to an algebra automorphism and re-normalizes.
    pub fn involution_uea(&self, u: &UEAElement<S>) -> UEAElement<S> {
        let words = u.terms().map(|(m, s)| {
            let w: Vec<i64> = m
                .expanded()
                .into_iter()
                .map(|i| match involution_gen(Generator::E(i)) {
                    Generator::E(j) => j,
                    Generator::C => unreachable!(),
                })
                .collect();
            let sign = if m.total_len() % 2 == 0 { S::one() } else { -S::one() };
            (w, m.central_exp(), s.clone() * sign)
        });
        self.normalize_words(words.collect::<Vec<_>>(), u.order())
    }
}

/// Normal form in the standard algebra.
pub fn normal_form<S: Scalar>(word: &[Generator], order: &OrderSpec) -> UEAElement<S> {
    Virasoro::standard().normal_form(word, order)
}

pub fn multiply<S: Scalar>(u: &UEAElement<S>, v: &UEAElement<S>, order: &OrderSpec) -> UEAElement<S> {
    Virasoro::standard().multiply(u, v, order)
}

pub fn change_order<S: Scalar>(u: &UEAElement<S>, target: &OrderSpec) -> UEAElement<S> {
    Virasoro::standard().change_order(u, target)
}

pub fn reduce_mod_left_ideal<S: Scalar>(u: &UEAElement<S>, g: i64) -> Result<UEAElement<S>, PbwError> {
    Virasoro::standard().reduce_mod_left_ideal(u, g)
}

pub fn involution_uea<S: Scalar>(u: &UEAElement<S>) -> UEAElement<S> {
    Virasoro::standard().involution_uea(u)
}

/// Raw word of generators from indices, for tests and examples.
pub fn word(indices: &[i64]) -> Vec<Generator> {
    indices.iter().map(|&i| Generator::E(i)).collect()
}

/// Builds an element from `(coefficient, word)` pairs and normalizes it.
pub fn element_from_words<S: Scalar>(
    alg: &Virasoro<S>,
    terms: &[(S, &[i64])],
    order: &OrderSpec,
) -> UEAElement<S> {
    alg.normalize_words(
        terms.iter().map(|(s, w)| (w.to_vec(), 0, s.clone())),
        order,
    )
}

pub(crate) fn group_by_degree<S: Scalar>(u: &UEAElement<S>) -> BTreeMap<i64, UEAElement<S>> {
    let mut out: BTreeMap<i64, UEAElement<S>> = BTreeMap::new();
    for (m, s) in u.terms() {
        out.entry(m.degree())
            .or_insert_with(|| UEAElement::zero(u.order().clone()))
            .add_term(m.clone(), s.clone());
    }
    out
}

#[cfg(test)]
mod tests;
