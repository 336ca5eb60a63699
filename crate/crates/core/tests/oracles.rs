//! Engine results against closed forms derived independently of the engine.

use num_traits::{One, Zero};

use virasoro::modules::BasisLabel;
use virasoro::pbw::{self, OrderSpec};
use virasoro::{Generator, Rational, TruncatedWeightModule, UEAElement, WeightVector};

fn z(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Coefficients (constant term first) of a product of linear factors `a + b t`.
fn product_of_linear(factors: &[(Rational, Rational)]) -> Vec<Rational> {
    let mut poly = vec![Rational::one()];
    for (a, b) in factors {
        let mut next = vec![Rational::zero(); poly.len() + 1];
        for (i, p) in poly.iter().enumerate() {
            next[i] += p * a;
            next[i + 1] += p * b;
        }
        poly = next;
    }
    poly
}

// With e_{-1} w = 0 and e_0 w = t w, the relation [e_{-1}, e_1] = 2 e_0 gives
// e_{-1} e_1^n w = n (2t + n - 1) e_1^{n-1} w. Iterating yields e_{-1}^N e_1^N
// modulo U(V) e_{-1} as the product of these factors.
#[test]
fn rank_one_recursion_for_lowered_powers() {
    let asc = OrderSpec::asc();
    for n in 1..=4u32 {
        let down: UEAElement = pbw::normal_form(&pbw::word(&vec![-1; n as usize]), &asc);
        let up: UEAElement = pbw::normal_form(&pbw::word(&vec![1; n as usize]), &asc);
        let r = pbw::reduce_mod_left_ideal(&pbw::multiply(&down, &up, &asc), -1).unwrap();
        let p = pbw::cartan_polynomial(&r).unwrap();
        let factors: Vec<(Rational, Rational)> = (1..=n as i64)
            .map(|k| (z(k * (k - 1)), z(2 * k)))
            .collect();
        let want = product_of_linear(&factors);
        for (power, c) in want.iter().enumerate() {
            assert_eq!(p.coeff(power as u32, 0), *c, "n={n}, e0^{power}");
        }
    }
}

#[test]
fn rank_one_recursion_at_three_matches_the_hand_value() {
    let want = product_of_linear(&[(z(0), z(2)), (z(2), z(4)), (z(6), z(6))]);
    assert_eq!(want, vec![z(0), z(24), z(72), z(48)]);
}

// In a Verma module, e_1 e_{-1}^n v = -n (2h - n + 1) e_{-1}^{n-1} v.
#[test]
fn raising_a_lowered_highest_weight_vector() {
    for h in [z(0), q(1, 2), z(-3), q(7, 5)] {
        let m = TruncatedWeightModule::verma(h.clone(), q(2, 3), 6);
        let mut prev = m.highest_weight_vector().unwrap();
        for n in 1..=5i64 {
            let v = m.act(Generator::E(-1), &prev).unwrap();
            let up = m.act(Generator::E(1), &v).unwrap();
            let k = -z(n) * (z(2) * h.clone() - z(n) + z(1));
            assert_eq!(up, prev.scale(&k), "h={h}, n={n}");
            prev = v;
        }
    }
}

// [e_2, e_{-2}] = -4 e_0 + c/2 acts on the highest weight vector by -4h + chi/2.
#[test]
fn level_two_central_term() {
    for (h, chi) in [(z(1), z(0)), (q(1, 3), z(26)), (z(-2), q(1, 2))] {
        let m = TruncatedWeightModule::verma(h.clone(), chi.clone(), 3);
        let v = m.highest_weight_vector().unwrap();
        let img = m.apply_word(&[Generator::E(2), Generator::E(-2)], &v).unwrap();
        assert_eq!(img, v.scale(&(z(-4) * h.clone() + chi.clone() / z(2))));
    }
}

// With L_n = -e_n, the Verma module of highest weight h and charge chi is the
// standard one with L_0-eigenvalue -h. The level-two Kac determinant vanishes
// exactly when 16 d^2 + 2 d (C - 5) + C = 0 with d = -h, C = chi. At C = 1/2
// the roots are d = 1/2 and d = 1/16.
#[test]
fn level_two_singular_vectors_follow_the_kac_determinant() {
    let chi = q(1, 2);
    let kac = |d: &Rational| z(16) * d * d + z(2) * d * (chi.clone() - z(5)) + chi.clone();
    for d in [q(1, 2), q(1, 16), q(1, 3), z(2), q(-1, 4)] {
        let h = -d.clone();
        let m = TruncatedWeightModule::verma(h.clone(), chi.clone(), 3);
        let kernel = m.kernel(&(h - z(2)), &[Generator::E(1), Generator::E(2)]).unwrap();
        let want = usize::from(kac(&d).is_zero());
        assert_eq!(kernel.len(), want, "d={d}");
    }
    // C = 0: d = 5/8 has a level-two singular vector.
    let m = TruncatedWeightModule::verma(q(-5, 8), z(0), 3);
    let kernel = m.kernel(&(q(-5, 8) - z(2)), &[Generator::E(1), Generator::E(2)]).unwrap();
    assert_eq!(kernel.len(), 1);
}

// e_n v_k = (a + k + n b) v_{k+n}; the intermediate-series relations by hand.
#[test]
fn intermediate_series_by_hand() {
    let (a, b) = (q(2, 3), q(-1, 4));
    let m = TruncatedWeightModule::intermediate_series(a.clone(), b.clone(), -6, 6);
    for k in -3..=3i64 {
        let v = WeightVector::basis(a.clone() + z(k), BasisLabel::Series(k));
        for n in -3..=3i64 {
            let img = m.act(Generator::E(n), &v).unwrap();
            let coeff = a.clone() + z(k) + z(n) * b.clone();
            let target = WeightVector::basis(a.clone() + z(k + n), BasisLabel::Series(k + n));
            assert_eq!(img, target.scale(&coeff), "n={n}, k={k}");
        }
    }
}

// Verma weight-space dimensions equal the partition numbers, counted here by
// brute force over all multisets of parts.
#[test]
fn verma_dimensions_by_enumeration() {
    fn count(n: u32, max_part: u32) -> usize {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n)).map(|p| count(n - p, p)).sum()
    }
    let m = TruncatedWeightModule::verma(q(3, 7), z(1), 9);
    for n in 0..=9u32 {
        let dim = m.basis_at(&(q(3, 7) - z(n as i64))).unwrap().len();
        assert_eq!(dim, count(n, n));
    }
}
