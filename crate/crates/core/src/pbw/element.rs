use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::monomial::PBWMonomial;
use super::order::OrderSpec;
use crate::lie::Generator;
use crate::scalar::Scalar;

/// An element of the universal enveloping algebra: a finite combination of
/// PBW monomials, all normalized under the same [`OrderSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UEAElement<S> {
    order: OrderSpec,
    terms: BTreeMap<PBWMonomial, S>,
}

impl<S: Scalar> UEAElement<S> {
    pub fn zero(order: OrderSpec) -> Self {
        Self {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: OrderSpec) -> Self {
        Self::scalar(S::one(), order)
    }

    pub fn scalar(s: S, order: OrderSpec) -> Self {
        let mut out = Self::zero(order);
        out.add_term(PBWMonomial::one(), s);
        out
    }

    /// A single generator; always in normal form.
    pub fn generator(g: Generator, order: OrderSpec) -> Self {
        let m = match g {
            Generator::E(i) => PBWMonomial::from_word(&[i], 0),
            Generator::C => PBWMonomial::from_word(&[], 1),
        };
        let mut out = Self::zero(order);
        out.add_term(m, S::one());
        out
    }

    /// Builds an element from monomials the caller guarantees are ordered under `order`.
    pub(crate) fn from_normal_terms(
        order: OrderSpec,
        terms: impl IntoIterator<Item = (PBWMonomial, S)>,
    ) -> Self {
        let mut out = Self::zero(order);
        for (m, s) in terms {
            out.add_term(m, s);
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: PBWMonomial, s: S) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(s);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + s;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &S)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PBWMonomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the empty monomial.
    pub fn constant_term(&self) -> S {
        self.coeff(&PBWMonomial::one())
    }

    /// Panics when the orders differ; use `change_order` first.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.order, other.order,
            "adding elements normalized under different orders"
        );
        let mut out = self.clone();
        for (m, s) in other.terms() {
            out.add_term(m.clone(), s.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::from_normal_terms(
            self.order.clone(),
            self.terms()
                .map(|(m, s)| (m.clone(), s.clone() * k.clone())),
        )
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&PBWMonomial) -> bool) -> Self {
        Self::from_normal_terms(
            self.order.clone(),
            self.terms()
                .filter(|(m, _)| keep(m))
                .map(|(m, s)| (m.clone(), s.clone())),
        )
    }
}

impl<S: Scalar> fmt::Display for UEAElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::format(self))
    }
}
