//! Normal ordering by commutator swaps.
//!
//! An out-of-order adjacent pair `e_a e_b` is replaced by `e_b e_a + [e_a, e_b]`.
//! Every swap either lowers the number of inversions at fixed word length or
//! shortens the word, so rewriting terminates; the result does not depend on
//! which pair or term is rewritten first.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use rand::Rng;

use super::monomial::PBWMonomial;
use super::order::OrderSpec;
use crate::lie::{Generator, Virasoro};
use crate::scalar::Scalar;

/// Chooses which pending term and which inversion to rewrite next.
pub trait RewriteStrategy {
    /// Index into the pending terms, `0..pending`.
    fn choose_term(&mut self, pending: usize) -> usize;

    /// Position `p` of an out-of-order pair `(word[p], word[p + 1])`, or
    /// `None` when the word is already ordered.
    fn choose_swap(&mut self, word: &[i64], order: &OrderSpec) -> Option<usize>;
}

/// Always rewrites the leftmost inversion of the first pending term.
#[derive(Debug, Default, Clone, Copy)]
pub struct Leftmost;

impl RewriteStrategy for Leftmost {
    fn choose_term(&mut self, _pending: usize) -> usize {
        0
    }

    fn choose_swap(&mut self, word: &[i64], order: &OrderSpec) -> Option<usize> {
        word.windows(2).position(|w| !order.in_order(w[0], w[1]))
    }
}

/// Picks terms and legal swaps uniformly at random.
#[derive(Debug, Clone)]
pub struct RandomSwap<R> {
    rng: R,
}

impl<R: Rng> RandomSwap<R> {
    pub fn new(rng: R) -> Self {
        Self { rng }
    }
}

impl<R: Rng> RewriteStrategy for RandomSwap<R> {
    fn choose_term(&mut self, pending: usize) -> usize {
        self.rng.gen_range(0..pending)
    }

    fn choose_swap(&mut self, word: &[i64], order: &OrderSpec) -> Option<usize> {
        let inversions: Vec<usize> = word
            .windows(2)
            .enumerate()
            .filter(|(_, w)| !order.in_order(w[0], w[1]))
            .map(|(p, _)| p)
            .collect();
        if inversions.is_empty() {
            None
        } else {
            Some(inversions[self.rng.gen_range(0..inversions.len())])
        }
    }
}

type Key = (Vec<i64>, u32);

fn accumulate<S: Scalar>(map: &mut BTreeMap<Key, S>, key: Key, s: S) {
    if s.is_zero() {
        return;
    }
    match map.entry(key) {
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

/// Normal-orders a combination of raw words `(factors, central power, coefficient)`.
pub(crate) fn normalize<S: Scalar>(
    alg: &Virasoro<S>,
    order: &OrderSpec,
    input: impl IntoIterator<Item = (Vec<i64>, u32, S)>,
    strategy: &mut dyn RewriteStrategy,
) -> BTreeMap<PBWMonomial, S> {
    let mut pending: BTreeMap<Key, S> = BTreeMap::new();
    for (w, c, s) in input {
        accumulate(&mut pending, (w, c), s);
    }
    let mut done: BTreeMap<Key, S> = BTreeMap::new();
    while !pending.is_empty() {
        let pick = strategy.choose_term(pending.len());
        let (key, coeff) = if pick == 0 {
            pending.pop_first().expect("nonempty")
        } else {
            let key = pending.keys().nth(pick).expect("index in range").clone();
            let coeff = pending.remove(&key).expect("present");
            (key, coeff)
        };
        let (word, cexp) = key;
        let Some(p) = strategy.choose_swap(&word, order) else {
            accumulate(&mut done, (word, cexp), coeff);
            continue;
        };
        let (a, b) = (word[p], word[p + 1]);
        let mut swapped = word.clone();
        swapped.swap(p, p + 1);
        accumulate(&mut pending, (swapped, cexp), coeff.clone());
        for (g, s) in alg.bracket_gen(a, b).terms() {
            let k = s.clone() * coeff.clone();
            let mut w = Vec::with_capacity(word.len() - 1);
            w.extend_from_slice(&word[..p]);
            match g {
                Generator::E(i) => {
                    w.push(i);
                    w.extend_from_slice(&word[p + 2..]);
                    accumulate(&mut pending, (w, cexp), k);
                }
                Generator::C => {
                    w.extend_from_slice(&word[p + 2..]);
                    accumulate(&mut pending, (w, cexp + 1), k);
                }
            }
        }
    }
    done.into_iter()
        .map(|((w, c), s)| (PBWMonomial::from_word(&w, c), s))
        .collect()
}

/// Splits a raw generator word into its `e_i` factors and power of `c`.
pub(crate) fn split_word(word: &[Generator]) -> (Vec<i64>, u32) {
    let mut factors = Vec::with_capacity(word.len());
    let mut cexp = 0;
    for g in word {
        match g {
            Generator::E(i) => factors.push(*i),
            Generator::C => cexp += 1,
        }
    }
    (factors, cexp)
}
