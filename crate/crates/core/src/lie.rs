//! The Virasoro Lie algebra: generators, structure constants and the
//! canonical involution.
//!
//! The bracket on basis elements is
//! `[e_i, e_j] = (j - i) e_{i+j} + delta_{i,-j} (i^3 - i)/12 c` with `c` central.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// A basis element of the algebra: `e_i` for any integer `i`, or the central `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    E(i64),
    C,
}

impl Generator {
    pub fn index(self) -> Option<i64> {
        match self {
            Generator::E(i) => Some(i),
            Generator::C => None,
        }
    }

    /// Adjoint degree; `c` and `e_0` have degree zero.
    pub fn degree(self) -> i64 {
        self.index().unwrap_or(0)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "e({i})"),
            Generator::C => f.write_str("c"),
        }
    }
}

/// A finite linear combination of generators. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement<S> {
    terms: BTreeMap<Generator, S>,
}

impl<S: Scalar> Default for LieElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> LieElement<S> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(g, S::one())
    }

    pub fn e(i: i64) -> Self {
        Self::generator(Generator::E(i))
    }

    pub fn c() -> Self {
        Self::generator(Generator::C)
    }

    pub fn term(g: Generator, coeff: S) -> Self {
        let mut out = Self::zero();
        out.add_term(g, coeff);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Generator, S)>) -> Self {
        let mut out = Self::zero();
        for (g, s) in terms {
            out.add_term(g, s);
        }
        out
    }

    pub fn add_term(&mut self, g: Generator, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: Generator) -> S {
        self.terms.get(&g).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Generator, &S)> + '_ {
        self.terms.iter().map(|(g, s)| (*g, s))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, s) in other.terms() {
            out.add_term(g, s.clone());
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
        Self::from_terms(self.terms().map(|(g, s)| (g, s.clone() * k.clone())))
    }
}

impl<S: Scalar> fmt::Display for LieElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::format_lie(self))
    }
}

/// Structure constants of the Virasoro algebra, optionally perturbed.
///
/// [`Virasoro::standard`] is the algebra itself. Perturbations exist only to
/// exercise the verification harness: each one shifts a single structure
/// constant while keeping the bracket antisymmetric and graded, so rewriting
/// still terminates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Virasoro<S> {
    // (i, j) -> (shift of the e_{i+j} coefficient, shift of the c coefficient)
    shifts: BTreeMap<(i64, i64), (S, S)>,
}

impl<S: Scalar> Default for Virasoro<S> {
    fn default() -> Self {
        Self::standard()
    }
}

impl<S: Scalar> Virasoro<S> {
    pub fn standard() -> Self {
        Self {
            shifts: BTreeMap::new(),
        }
    }

    pub fn is_standard(&self) -> bool {
        self.shifts.is_empty()
    }

    /// Adds `delta` to the `e_{i+j}` coefficient of `[e_i, e_j]` (and `-delta` to `[e_j, e_i]`).
    pub fn perturb(&mut self, i: i64, j: i64, delta: S) {
        self.shift(i, j, delta, S::zero());
    }

    /// Adds `delta` to the `c` coefficient of `[e_i, e_{-i}]` (and `-delta` to `[e_{-i}, e_i]`).
    pub fn perturb_central(&mut self, i: i64, delta: S) {
        self.shift(i, -i, S::zero(), delta);
    }

    fn shift(&mut self, i: i64, j: i64, de: S, dc: S) {
        for (key, sign) in [((i, j), S::one()), ((j, i), -S::one())] {
            let slot = self
                .shifts
                .entry(key)
                .or_insert_with(|| (S::zero(), S::zero()));
            slot.0 = slot.0.clone() + de.clone() * sign.clone();
            slot.1 = slot.1.clone() + dc.clone() * sign;
        }
    }

    /// `[e_i, e_j]`.
    pub fn bracket_gen(&self, i: i64, j: i64) -> LieElement<S> {
        let mut out = LieElement::term(Generator::E(i + j), S::from_int(j - i));
        if i == -j {
            let k = S::from_int(i);
            let central = (k.pow(3) - k) / S::from_int(12);
            out.add_term(Generator::C, central);
        }
        if let Some((de, dc)) = self.shifts.get(&(i, j)) {
            out.add_term(Generator::E(i + j), de.clone());
            out.add_term(Generator::C, dc.clone());
        }
        out
    }

    /// Bracket of two basis elements; anything involving `c` vanishes.
    pub fn bracket_basis(&self, a: Generator, b: Generator) -> LieElement<S> {
        match (a, b) {
            (Generator::E(i), Generator::E(j)) => self.bracket_gen(i, j),
            _ => LieElement::zero(),
        }
    }

    pub fn bracket(&self, x: &LieElement<S>, y: &LieElement<S>) -> LieElement<S> {
        let mut out = LieElement::zero();
        for (a, s) in x.terms() {
            for (b, t) in y.terms() {
                let k = s.clone() * t.clone();
                for (g, u) in self.bracket_basis(a, b).terms() {
                    out.add_term(g, u.clone() * k.clone());
                }
            }
        }
        out
    }

    /// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`; zero for a genuine Lie algebra.
    pub fn jacobi_defect(
        &self,
        x: &LieElement<S>,
        y: &LieElement<S>,
        z: &LieElement<S>,
    ) -> LieElement<S> {
        self.bracket(x, &self.bracket(y, z))
            .add(&self.bracket(y, &self.bracket(z, x)))
            .add(&self.bracket(z, &self.bracket(x, y)))
    }
}

/// `[e_i, e_j]` in the standard algebra.
pub fn bracket_gen<S: Scalar>(i: i64, j: i64) -> LieElement<S> {
    Virasoro::standard().bracket_gen(i, j)
}

pub fn bracket<S: Scalar>(x: &LieElement<S>, y: &LieElement<S>) -> LieElement<S> {
    Virasoro::standard().bracket(x, y)
}

pub fn jacobi_defect<S: Scalar>(
    x: &LieElement<S>,
    y: &LieElement<S>,
    z: &LieElement<S>,
) -> LieElement<S> {
    Virasoro::standard().jacobi_defect(x, y, z)
}

/// Image of a generator under the canonical involution, with its sign:
/// `e_i -> -e_{-i}`, `c -> -c`.
pub fn involution_gen(g: Generator) -> Generator {
    match g {
        Generator::E(i) => Generator::E(-i),
        Generator::C => Generator::C,
    }
}

/// The canonical involution `e_i -> -e_{-i}`, `c -> -c`.
pub fn involution<S: Scalar>(x: &LieElement<S>) -> LieElement<S> {
    LieElement::from_terms(x.terms().map(|(g, s)| (involution_gen(g), -s.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type L = LieElement<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket_gen::<Rational>(1, 2), L::e(3));
        assert!(bracket_gen::<Rational>(5, 5).is_zero());
        assert_eq!(bracket_gen::<Rational>(1, -1), L::term(Generator::E(0), q(-2, 1)));
        // (i^3 - i)/12 at i = 2 is +1/2
        let expected = L::from_terms([(Generator::E(0), q(-4, 1)), (Generator::C, q(1, 2))]);
        assert_eq!(bracket_gen::<Rational>(2, -2), expected);
        let expected = L::from_terms([(Generator::E(0), q(4, 1)), (Generator::C, q(-1, 2))]);
        assert_eq!(bracket_gen::<Rational>(-2, 2), expected);
        assert_eq!(bracket_gen::<Rational>(-1, 3), L::term(Generator::E(2), q(4, 1)));
    }

    #[test]
    fn bracket_is_bilinear() {
        assert_eq!(bracket(&L::e(1), &L::e(4)), L::term(Generator::E(5), q(3, 1)));
        assert!(bracket(&L::c(), &L::e(7)).is_zero());
        let x = L::from_terms([(Generator::E(1), q(2, 1)), (Generator::E(2), q(1, 1))]);
        let expected = L::from_terms([(Generator::E(0), q(-4, 1)), (Generator::E(1), q(-3, 1))]);
        assert_eq!(bracket(&x, &L::e(-1)), expected);
    }

    #[test]
    fn jacobi_examples() {
        for (a, b, c) in [(1, 2, 3), (5, -5, 0), (3, -1, -2)] {
            assert!(jacobi_defect(&L::e(a), &L::e(b), &L::e(c)).is_zero());
        }
    }

    #[test]
    fn involution_examples() {
        assert_eq!(involution(&L::e(1)), L::e(-1).neg());
        assert_eq!(involution(&L::e(0)), L::e(0).neg());
        assert_eq!(involution(&L::c()), L::c().neg());
        let lhs = involution(&bracket(&L::e(1), &L::e(2)));
        assert_eq!(lhs, L::e(-3).neg());
        assert_eq!(lhs, bracket(&involution(&L::e(1)), &involution(&L::e(2))));
    }

    #[test]
    fn zero_terms_are_pruned() {
        let x = L::e(1).add(&L::e(1).neg());
        assert!(x.is_zero());
        assert_eq!(x, L::zero());
    }

    #[test]
    fn perturbation_keeps_antisymmetry_and_breaks_jacobi() {
        let mut alg = Virasoro::<Rational>::standard();
        alg.perturb(1, 2, q(1, 1));
        assert_eq!(alg.bracket_gen(1, 2), L::term(Generator::E(3), q(2, 1)));
        assert_eq!(alg.bracket_gen(2, 1), L::term(Generator::E(3), q(-2, 1)));
        assert!(!alg.jacobi_defect(&L::e(1), &L::e(2), &L::e(-3)).is_zero());
    }
}
