use proptest::prelude::*;
use transverse_hopf::coeff_ring::{apply, base_fn, curv, Der, Idx, MAX_CONFLUENT_DIM};
use transverse_hopf::hopf_core::*;
use transverse_hopf::random::{random_tree, reparenthesize, rng, GenMix};

fn prod(v: Vec<Expr>) -> Expr {
    Expr::Prod(v)
}

#[test]
fn yx_normal_order() {
    let h = normalize(&prod(vec![Expr::Y(1, 1), Expr::X(1)]), 1).unwrap();
    assert_eq!(h.to_string(), "X[1]*Y[1,1] + X[1]");
    assert_eq!(h, HElement::x(1, 1).mul(&HElement::y(1, 1, 1)).add(&HElement::x(1, 1)));
}

#[test]
fn x2x1_reorders_with_curvature() {
    let n = 2;
    let h = normalize(&prod(vec![Expr::X(2), Expr::X(1)]), n).unwrap();
    let mut expected = normalize(&prod(vec![Expr::X(1), Expr::X(2)]), n).unwrap();
    for i in 1..=n {
        for j in 1..=n {
            expected = expected.add(&HElement::alpha(n, &curv(i, j, 2, 1)).mul(&HElement::y(n, i, j)));
        }
    }
    assert_eq!(h, expected);
}

#[test]
fn x_past_beta() {
    let n = 2;
    let b = base_fn("b");
    for k in 1..=n {
        let h = normalize(&prod(vec![Expr::X(k), Expr::Beta(b.clone())]), n).unwrap();
        let mut expected = HElement::beta(n, &b).mul(&HElement::x(n, k));
        expected = expected.add(&HElement::beta(n, &apply(&b, Der::X(k), n)));
        for i in 1..=n {
            for j in 1..=n {
                let yb = apply(&b, Der::Y(i, j), n);
                expected = expected.add(&HElement::beta(n, &yb).mul(&HElement::delta(n, i, j, k, &[])));
            }
        }
        assert_eq!(h, expected, "k={k}");
    }
}

#[test]
fn alpha_is_normal() {
    let b = base_fn("b");
    assert_eq!(normalize(&Expr::Alpha(b.clone()), 1).unwrap(), HElement::alpha(1, &b));
}

#[test]
fn unit_and_alpha_beta_commute() {
    let n = 1;
    let h = HElement::x(n, 1).mul(&HElement::delta(n, 1, 1, 1, &[]));
    assert_eq!(HElement::one(n).mul(&h), h);
    assert_eq!(h.mul(&HElement::one(n)), h);
    let (a, b) = (HElement::alpha(n, &base_fn("a")), HElement::beta(n, &base_fn("b")));
    assert_eq!(a.mul(&b), b.mul(&a));
}

#[test]
fn y_delta_bracket_n1() {
    let (y, d) = (HElement::y(1, 1, 1), HElement::delta(1, 1, 1, 1, &[]));
    assert_eq!(y.mul(&d).sub(&d.mul(&y)), d);
}

#[test]
fn commutator_examples() {
    let n = 2;
    let h = HElement::x(n, 1).mul(&HElement::y(n, 1, 2));
    assert!(h.commutator(&h).is_zero());
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let c = HElement::y(n, i, j).commutator(&HElement::x(n, k));
                let want = if j == k { HElement::x(n, i) } else { HElement::zero(n) };
                assert_eq!(c, want, "Y({i},{j}) X({k})");
            }
        }
    }
    let c = HElement::x(1, 1).commutator(&HElement::delta(1, 1, 1, 1, &[]));
    assert_eq!(c, HElement::delta(1, 1, 1, 1, &[1]));
    assert_eq!(c.to_string(), "D[1;1,1;1]");
}

#[test]
fn out_of_range_is_rejected() {
    assert!(normalize(&Expr::X(3), 2).is_err());
    assert!(normalize(&Expr::Delta { i: 1, j: 1, k: 1, ells: vec![2] }, 1).is_err());
}

#[test]
fn confluence_suite_small() {
    let r = confluence_suite(1, 40, 4, 5);
    assert!(r.passed(), "{r}");
}

fn tree(seed: u64, n: Idx, leaves: usize) -> (Expr, Expr) {
    let mut r = rng(seed);
    let t = random_tree(&mut r, n, leaves, GenMix::default());
    let s = reparenthesize(&mut r, &t);
    (t, s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracketing_does_not_change_normal_form(seed in any::<u64>(), n in 1..=MAX_CONFLUENT_DIM) {
        let (t, s) = tree(seed, n, 4);
        prop_assert_eq!(normalize(&t, n).unwrap(), normalize_by_subtrees(&s, n).unwrap());
    }

    #[test]
    fn mul_is_associative(seed in any::<u64>(), n in 1..=MAX_CONFLUENT_DIM) {
        let mut r = rng(seed);
        let mix = GenMix::default();
        let [a, b, c] = [(); 3].map(|_| normalize(&random_tree(&mut r, n, 2, mix), n).unwrap());
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn mul_distributes(seed in any::<u64>()) {
        let n = 1;
        let mut r = rng(seed);
        let mix = GenMix::default();
        let [a, b, c] = [(); 3].map(|_| normalize(&random_tree(&mut r, n, 2, mix), n).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
    }
}
