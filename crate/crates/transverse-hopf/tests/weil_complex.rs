use proptest::prelude::*;
use transverse_hopf::coeff_ring::Idx;
use transverse_hopf::poly::int;
use transverse_hopf::random::rng;
use transverse_hopf::weil_complex::*;

fn sign(deg: usize) -> i64 {
    if deg.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn homogeneous(seed: u64, n: Idx, max_degree: usize) -> (WeilForm, usize) {
    let mut r = rng(seed);
    let w = random_form(&mut r, n, max_degree);
    let d = w.terms().next().map_or(0, |(m, _)| m.degree());
    (w.component(d), d)
}

#[test]
fn structure_equation() {
    let n = 3;
    for i in 1..=n {
        for j in 1..=n {
            let mut want = WeilForm::curv(n, i, j);
            for k in 1..=n {
                want = want.sub(&WeilForm::theta(n, i, k).mul(&WeilForm::theta(n, k, j)));
            }
            assert_eq!(WeilForm::theta(n, i, j).d(), want, "theta[{i},{j}]");
            assert!(want.d().is_zero());
        }
    }
}

#[test]
fn godbillon_vey_one_dimensional() {
    let w = gv(1);
    assert_eq!(w, WeilForm::theta(1, 1, 1).mul(&WeilForm::curv(1, 1, 1)));
    assert!(w.is_closed());
    assert!(w.d().is_zero());
    assert!(w.is_basic(&so_basis(1)));
}

#[test]
fn h1_differential() {
    for n in 1..=3 {
        assert_eq!(h1(n).d(), chern(n, 1).unwrap(), "n={n}");
    }
}

#[test]
fn chern_classes() {
    for n in 1..=3 {
        for k in 1..=n as usize {
            let c = chern(n, k).unwrap();
            assert!(c.is_closed(), "n={n} k={k}");
            assert!(c.is_basic(&so_basis(n)), "n={n} k={k}");
            assert_eq!(c.degree(), Some(2 * k));
        }
    }
    assert!(chern(2, 3).is_err());
    assert!(class_builder(1, "euler").is_err());
}

#[test]
fn basic_forms() {
    let so2 = so_basis(2);
    assert_eq!(so2.len(), 1);
    assert!(so2[0].is_antisymmetric());
    assert!(!WeilForm::theta(2, 1, 2).is_basic(&so2));
    assert!(WeilForm::one(2).is_basic(&so2));
    assert_eq!(WeilForm::theta(2, 1, 2).contract(&so2[0]), WeilForm::scalar(2, int(1)));
}

#[test]
fn truncation_by_curvature_weight() {
    let r = WeilForm::curv(1, 1, 1);
    assert!(r.mul(&r).is_zero());
    let r2 = WeilForm::curv(2, 1, 2);
    assert!(!r2.mul(&r2).is_zero());
    assert!(r2.mul(&r2).mul(&r2).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), n in 1u8..=3) {
        let mut r = rng(seed);
        let w = random_form(&mut r, n, 2 * n as usize + 2);
        prop_assert!(w.d().d().is_zero());
    }

    #[test]
    fn graded_leibniz(seed in any::<u64>(), n in 1u8..=3) {
        let (a, da) = homogeneous(seed, n, 3);
        let (b, _) = homogeneous(seed.wrapping_add(1), n, 3);
        let lhs = a.mul(&b).d();
        let rhs = a.d().mul(&b).add(&a.mul(&b.d()).scale(&int(sign(da))));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_commutes_with_d(seed in any::<u64>(), n in 2u8..=3) {
        let mut r = rng(seed);
        let w = random_form(&mut r, n, 4);
        for a in so_basis(n) {
            prop_assert_eq!(w.lie(&a).d(), w.d().lie(&a));
        }
    }

    #[test]
    fn contractions_anticommute(seed in any::<u64>()) {
        let n = 3;
        let mut r = rng(seed);
        let w = random_form(&mut r, n, 4);
        let basis = so_basis(n);
        for a in &basis {
            for b in &basis {
                prop_assert!(w.contract(a).contract(b).add(&w.contract(b).contract(a)).is_zero());
            }
        }
    }
}
