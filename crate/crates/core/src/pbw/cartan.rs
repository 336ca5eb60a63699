use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{group_by_degree, PBWMonomial, PbwError, UEAElement};
use crate::lie::Generator;
use crate::scalar::{common_denominator, Scalar};

/// A polynomial in the commuting elements `e_0` and `c`.
///
/// Keys are `(power of e_0, power of c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanPolynomial<S> {
    coeffs: BTreeMap<(u32, u32), S>,
}

impl<S: Scalar> CartanPolynomial<S> {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = ((u32, u32), S)>) -> Self {
        let mut out = Self::zero();
        for (k, s) in coeffs {
            out.add_term(k, s);
        }
        out
    }

    /// Univariate in `e_0`: `coeffs[k]` multiplies `e_0^k`.
    pub fn from_e0_coeffs(coeffs: &[S]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, s)| ((k as u32, 0), s.clone())),
        )
    }

    fn add_term(&mut self, k: (u32, u32), s: S) {
        let sum = self.coeffs.get(&k).cloned().unwrap_or_else(S::zero) + s;
        if sum.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, sum);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<(u32, u32), S> {
        &self.coeffs
    }

    pub fn coeff(&self, e0_pow: u32, c_pow: u32) -> S {
        self.coeffs
            .get(&(e0_pow, c_pow))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_univariate(&self) -> bool {
        self.coeffs.keys().all(|&(_, c)| c == 0)
    }

    /// Value at `e_0 = h`, `c = chi`.
    pub fn eval(&self, h: &S, chi: &S) -> S {
        self.coeffs.iter().fold(S::zero(), |acc, (&(a, b), s)| {
            acc + s.clone() * h.pow(a) * chi.pow(b)
        })
    }
}

impl<S: Scalar> fmt::Display for CartanPolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = UEAElement::from_normal_terms(
            super::OrderSpec::ann(0),
            self.coeffs.iter().map(|(&(a, b), s)| {
                (PBWMonomial::from_powers(&[(0, a)], b), s.clone())
            }),
        );
        f.write_str(&crate::dsl::format(&u))
    }
}

/// The element as a commutative polynomial in `e_0` and `c`.
pub fn cartan_polynomial<S: Scalar>(u: &UEAElement<S>) -> Result<CartanPolynomial<S>, PbwError> {
    let offending: Vec<String> = u
        .terms()
        .filter(|(m, _)| !m.is_cartan())
        .map(|(m, _)| m.to_string())
        .collect();
    if !offending.is_empty() {
        return Err(PbwError::NotCartan(offending));
    }
    Ok(CartanPolynomial::from_coeffs(u.terms().map(|(m, s)| {
        ((m.e0_power(), m.central_exp()), s.clone())
    })))
}

pub fn eval_cartan<S: Scalar>(p: &CartanPolynomial<S>, h: &S, chi: &S) -> S {
    p.eval(h, chi)
}

/// Replaces trailing `e_0^a c^b` factors by the scalar `h^a chi^b`.
///
/// Requires an order in which `e_0` ranks above every unpromoted generator
/// (the `ANN(g)` presets), and that nothing follows `e_0` in any monomial.
/// Purely Cartan elements are accepted under any order.
pub fn eval_cartan_tail<S: Scalar>(
    u: &UEAElement<S>,
    h: &S,
    chi: &S,
) -> Result<UEAElement<S>, PbwError> {
    let all_cartan = u.terms().all(|(m, _)| m.is_cartan());
    let offending: Vec<String> = u
        .terms()
        .filter(|(m, _)| {
            let p = m.powers();
            p.iter()
                .position(|&(i, _)| i == 0)
                .is_some_and(|pos| pos + 1 != p.len())
        })
        .map(|(m, _)| m.to_string())
        .collect();
    if !(all_cartan || u.order().cartan_trails()) || !offending.is_empty() {
        return Err(PbwError::IncompatibleOrder {
            order: u.order().to_string(),
            offending,
        });
    }
    Ok(UEAElement::from_normal_terms(
        u.order().clone(),
        u.terms().map(|(m, s)| {
            let rest: Vec<(i64, u32)> =
                m.powers().iter().copied().filter(|&(i, _)| i != 0).collect();
            let k = h.pow(m.e0_power()) * chi.pow(m.central_exp());
            (PBWMonomial::from_powers(&rest, 0), s.clone() * k)
        }),
    ))
}

/// Splits `u` into homogeneous components by adjoint degree.
pub fn degree_components<S: Scalar>(u: &UEAElement<S>) -> BTreeMap<i64, UEAElement<S>> {
    group_by_degree(u)
}

/// True when every generator occurring in `u` satisfies `pred`; `c` is
/// tested as [`Generator::C`] whenever a monomial carries a power of it.
pub fn is_supported_on<S: Scalar>(u: &UEAElement<S>, pred: impl Fn(Generator) -> bool) -> bool {
    u.terms().all(|(m, _)| {
        m.indices().all(|i| pred(Generator::E(i))) && (m.central_exp() == 0 || pred(Generator::C))
    })
}

/// Every rational root of a polynomial in `e_0`, ascending.
pub fn rational_roots<S: Scalar>(p: &CartanPolynomial<S>) -> Result<Vec<S>, PbwError> {
    if p.is_zero() {
        return Err(PbwError::ZeroPolynomial);
    }
    if !p.is_univariate() {
        return Err(PbwError::NotUnivariate);
    }
    let deg = p.coeffs.keys().map(|&(a, _)| a).max().unwrap_or(0) as usize;
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (&(a, _), s) in &p.coeffs {
        coeffs[a as usize] = s.to_rational();
    }
    Ok(rational_roots_of(&coeffs)
        .iter()
        .map(|q| S::from_rational(q).expect("root of a polynomial over S lies in S"))
        .collect())
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn horner(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, a| acc * x + a)
}

/// Rational roots of `sum coeffs[k] x^k` by divisor-candidate search.
/// Returns an empty set for the zero polynomial.
pub(crate) fn rational_roots_of(coeffs: &[BigRational]) -> Vec<BigRational> {
    let den = common_denominator(coeffs.iter());
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|q| (q * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let Some(top) = ints.iter().rposition(|a| !a.is_zero()) else {
        return Vec::new();
    };
    let low = ints.iter().position(|a| !a.is_zero()).expect("nonzero");
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(BigRational::zero());
    }
    let reduced = &coeffs[low..=top];
    let lead = &ints[top];
    let constant = &ints[low];
    if top > low {
        for p in divisors(constant) {
            for q in divisors(lead) {
                if !p.gcd(&q).is_one() {
                    continue;
                }
                for sign in [BigInt::one(), -BigInt::one()] {
                    let x = BigRational::new(&p * &sign, q.clone());
                    if horner(reduced, &x).is_zero() {
                        roots.push(x);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn cubic_roots_are_zero_one_two() {
        let p = CartanPolynomial::from_e0_coeffs(&[q(0), q(96), q(-144), q(48)]);
        assert_eq!(rational_roots(&p).unwrap(), vec![q(0), q(1), q(2)]);
        assert_eq!(p.eval(&q(1), &q(0)), q(0));
    }

    #[test]
    fn no_rational_roots() {
        let p = CartanPolynomial::from_e0_coeffs(&[q(1), q(0), q(1)]);
        assert!(rational_roots(&p).unwrap().is_empty());
        // 2x^2 - 1 has irrational roots only
        let p = CartanPolynomial::from_e0_coeffs(&[q(-1), q(0), q(2)]);
        assert!(rational_roots(&p).unwrap().is_empty());
    }

    #[test]
    fn fractional_roots() {
        // (2x - 1)(3x + 2) = 6x^2 + x - 2
        let p = CartanPolynomial::from_e0_coeffs(&[q(-2), q(1), q(6)]);
        assert_eq!(
            rational_roots(&p).unwrap(),
            vec![Rational::from_frac(-2, 3), Rational::from_frac(1, 2)]
        );
        // rational coefficients: x^2/4 - 1/9
        let p = CartanPolynomial::from_e0_coeffs(&[
            Rational::from_frac(-1, 9),
            q(0),
            Rational::from_frac(1, 4),
        ]);
        assert_eq!(
            rational_roots(&p).unwrap(),
            vec![Rational::from_frac(-2, 3), Rational::from_frac(2, 3)]
        );
    }

    #[test]
    fn rejects_zero_and_central() {
        assert_eq!(
            rational_roots(&CartanPolynomial::<Rational>::zero()),
            Err(PbwError::ZeroPolynomial)
        );
        let p = CartanPolynomial::from_coeffs([((1, 0), q(2)), ((0, 1), q(-1))]);
        assert_eq!(rational_roots(&p), Err(PbwError::NotUnivariate));
    }

    #[test]
    fn constant_polynomial_has_no_roots() {
        let p = CartanPolynomial::from_e0_coeffs(&[q(5)]);
        assert!(rational_roots(&p).unwrap().is_empty());
        assert_eq!(p.eval(&q(0), &q(0)), q(5));
    }
}
