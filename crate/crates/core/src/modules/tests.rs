use super::*;
use crate::Rational;

fn q(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

fn z(n: i64) -> Rational {
    Rational::from_int(n)
}

fn part(p: &[u32]) -> BasisLabel {
    BasisLabel::Partition(p.to_vec())
}

// brute force: count multisets of positive integers summing to n
fn partition_count(n: i64, max: i64) -> usize {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n)).map(|k| partition_count(n - k, k)).sum()
}

#[test]
fn verma_dims_match_partition_counts() {
    let h = q(3, 7);
    let m = TruncatedWeightModule::verma(h.clone(), z(1), 6);
    let dims = m.weight_dims();
    for n in 0..=6 {
        assert_eq!(dims[&(h.clone() - z(n))], partition_count(n, n));
    }
    assert_eq!(dims.len(), 7);
}

#[test]
fn verma_level_one_actions() {
    let h = q(5, 2);
    let m = TruncatedWeightModule::verma(h.clone(), z(3), 2);
    let v = WeightVector::basis(h.clone() - z(1), part(&[1]));
    let hw = m.highest_weight_vector().unwrap();
    assert_eq!(m.act(Generator::E(1), &v).unwrap(), hw.scale(&(z(-2) * h.clone())));
    assert!(m.act(Generator::E(2), &v).unwrap().is_zero());
    assert!(m.act(Generator::E(1), &hw).unwrap().is_zero());
}

#[test]
fn verma_central_and_cartan() {
    let m = TruncatedWeightModule::verma(z(2), q(1, 2), 3);
    let v = WeightVector::basis(z(0), part(&[1, 1]));
    assert_eq!(m.act(Generator::C, &v).unwrap(), v.scale(&q(1, 2)));
    assert_eq!(m.act(Generator::E(0), &v).unwrap(), v.scale(&z(0)));
    let v = WeightVector::basis(z(1), part(&[1]));
    assert_eq!(m.act(Generator::E(0), &v).unwrap(), v);
}

#[test]
fn leaving_the_window_is_an_error() {
    let m = TruncatedWeightModule::verma(z(0), z(0), 2);
    let v = WeightVector::basis(z(-2), part(&[2]));
    assert!(matches!(
        m.act(Generator::E(-1), &v),
        Err(ModuleError::OutOfWindow { .. })
    ));
    let s = TruncatedWeightModule::intermediate_series(z(0), z(1), -2, 2);
    let v = WeightVector::basis(z(2), BasisLabel::Series(2));
    assert!(s.act(Generator::E(1), &v).is_err());
    assert!(s.hw_detector(&v).is_err());
}

#[test]
fn foreign_labels_are_rejected() {
    let m = TruncatedWeightModule::verma(z(0), z(0), 2);
    let bad = WeightVector::basis(z(-1), part(&[2]));
    assert!(matches!(
        m.act(Generator::E(1), &bad),
        Err(ModuleError::NotInModule { .. })
    ));
}

#[test]
fn intermediate_series_actions() {
    let s = TruncatedWeightModule::intermediate_series(q(1, 2), z(0), -5, 5);
    let v3 = WeightVector::basis(q(7, 2), BasisLabel::Series(3));
    assert_eq!(s.act(Generator::E(0), &v3).unwrap(), v3.scale(&q(7, 2)));
    assert!(s.act(Generator::C, &v3).unwrap().is_zero());

    let trivial = TruncatedWeightModule::intermediate_series(z(0), z(0), -5, 5);
    let v0 = WeightVector::basis(z(0), BasisLabel::Series(0));
    for n in -5..=5 {
        assert!(trivial.act(Generator::E(n), &v0).unwrap().is_zero());
    }
    assert!(trivial.hw_detector(&v0).unwrap());
    assert!(trivial.lw_detector(&v0).unwrap());

    let generic = TruncatedWeightModule::intermediate_series(q(1, 2), q(1, 3), -5, 5);
    for k in -3..=3 {
        let v = WeightVector::basis(q(1, 2) + z(k), BasisLabel::Series(k));
        assert!(!generic.hw_detector(&v).unwrap());
    }
}

#[test]
fn series_bracket_compatibility() {
    let s = TruncatedWeightModule::intermediate_series(q(1, 3), q(2, 5), -4, 4);
    let alg = Virasoro::<Rational>::standard();
    for v in s.basis_vectors() {
        let Some(k) = v.coords().keys().next().cloned() else { continue };
        if !matches!(k, BasisLabel::Series(k) if (-3..=3).contains(&k)) {
            continue;
        }
        let lhs = s.act_lie(&alg.bracket_gen(1, -1), &v).unwrap();
        let a = s.act(Generator::E(1), &s.act(Generator::E(-1), &v).unwrap()).unwrap();
        let b = s.act(Generator::E(-1), &s.act(Generator::E(1), &v).unwrap()).unwrap();
        assert_eq!(lhs, a.sub(&b));
    }
}

#[test]
fn support_and_empty_window() {
    let s = TruncatedWeightModule::intermediate_series(q(1, 2), q(1, 3), -2, 2);
    let expected: BTreeSet<Rational> = (-2..=2).map(|k| q(1, 2) + z(k)).collect();
    assert_eq!(s.support(), expected);
    assert!(s.weight_dims().values().all(|&d| d == 1));
    let empty = TruncatedWeightModule::intermediate_series(z(0), z(0), 1, 0);
    assert!(empty.support().is_empty());
}

#[test]
fn level_one_singular_vector_only_at_h_zero() {
    let m = TruncatedWeightModule::verma(z(0), z(5), 3);
    let ker = m.kernel(&z(-1), &[Generator::E(1), Generator::E(2)]).unwrap();
    assert_eq!(ker, vec![WeightVector::basis(z(-1), part(&[1]))]);
    let m = TruncatedWeightModule::verma(z(2), z(5), 3);
    assert!(m.kernel(&z(1), &[Generator::E(1), Generator::E(2)]).unwrap().is_empty());
}

#[test]
fn kernel_on_zero_space_is_empty() {
    let m = TruncatedWeightModule::verma(z(0), z(0), 3);
    assert!(m.kernel(&z(4), &[Generator::E(1)]).unwrap().is_empty());
    assert!(m.kernel(&q(1, 2), &[Generator::E(1)]).unwrap().is_empty());
}

#[test]
fn extremal_pairs_on_series_zero_one() {
    let s = TruncatedWeightModule::intermediate_series(z(0), z(1), -5, 5);
    let pairs = s.extremal_pair_search(&z(0)).unwrap();
    assert_eq!(pairs.len(), 1);
    let p = &pairs[0];
    assert_eq!(p.tau, z(-1));
    assert_eq!(p.y, WeightVector::basis(z(1), BasisLabel::Series(1)));
    assert_eq!(p.x, WeightVector::basis(z(-1), BasisLabel::Series(-1)).scale(&z(-1)));
    assert!(s.check_extremal_pair(p).unwrap());
}

#[test]
fn generic_parameters_have_no_extremal_pairs() {
    let s = TruncatedWeightModule::intermediate_series(q(1, 2), q(1, 3), -5, 5);
    for k in -3..=3 {
        assert!(s.extremal_pair_search(&(q(1, 2) + z(k))).unwrap().is_empty());
    }
    let m = TruncatedWeightModule::verma(q(2, 3), q(1, 2), 6);
    for n in 0..=5 {
        assert!(m.extremal_pair_search(&(q(2, 3) - z(n))).unwrap().is_empty());
    }
}

#[test]
fn ratio_to() {
    let v = WeightVector::basis(z(0), BasisLabel::Series(0));
    assert_eq!(v.scale(&z(3)).ratio_to(&v), Some(z(3)));
    let w = WeightVector::from_coords(z(0), [(part(&[1]), z(1)), (part(&[2]), z(1))]);
    let u = WeightVector::from_coords(z(0), [(part(&[1]), z(1)), (part(&[2]), z(2))]);
    assert_eq!(u.ratio_to(&w), None);
}
