use proptest::prelude::*;
use transverse_hopf::coeff_ring::{apply, base_fn, CoeffPoly, Der, Idx, MAX_CONFLUENT_DIM};
use transverse_hopf::hopf_core::{normalize, Expr, HElement};
use transverse_hopf::hopf_structure::*;
use transverse_hopf::random::{random_coeff, random_word, rng, GenMix};

fn word(seed: u64, n: Idx, max_len: usize) -> (HElement, HElement) {
    let mut r = rng(seed);
    let mix = GenMix::default();
    let g = normalize(&Expr::Prod(random_word(&mut r, n, 1 + (seed as usize) % max_len, mix)), n).unwrap();
    let h = normalize(&Expr::Prod(random_word(&mut r, n, 1 + (seed as usize / 7) % max_len, mix)), n).unwrap();
    (g, h)
}

#[test]
fn coproduct_of_unit_and_x() {
    for n in 1..=MAX_CONFLUENT_DIM {
        assert_eq!(coproduct(&HElement::one(n)), TensorElement::one(n, 2));
        for k in 1..=n {
            let x = HElement::x(n, k);
            let one = HElement::one(n);
            let mut want = TensorElement::from_slots(n, &[x.clone(), one.clone()]);
            want.add_assign(&TensorElement::from_slots(n, &[one, x]));
            for i in 1..=n {
                for j in 1..=n {
                    want.add_assign(&TensorElement::from_slots(
                        n,
                        &[HElement::delta(n, i, j, k, &[]), HElement::y(n, i, j)],
                    ));
                }
            }
            assert_eq!(coproduct(&HElement::x(n, k)), want, "n={n} k={k}");
        }
    }
}

#[test]
fn coproduct_of_second_delta_is_the_bracket() {
    let n = 1;
    let (dx, dd) = (coproduct(&HElement::x(n, 1)), coproduct(&HElement::delta(n, 1, 1, 1, &[])));
    let bracket = dx.mul(&dd).sub(&dd.mul(&dx));
    let d2 = coproduct(&HElement::delta(n, 1, 1, 1, &[1]));
    assert_eq!(d2, bracket);
    assert_eq!(d2.to_string(), "1 (x) D[1;1,1;1] + D[1;1,1] (x) D[1;1,1] + D[1;1,1;1] (x) 1");
}

#[test]
fn iterated_coproduct_of_y() {
    let n = 2;
    let y = HElement::y(n, 1, 2);
    let one = HElement::one(n);
    let mut want = TensorElement::zero(n, 3);
    for slot in 0..3 {
        let mut slots = vec![one.clone(); 3];
        slots[slot] = y.clone();
        want.add_assign(&TensorElement::from_slots(n, &slots));
    }
    assert_eq!(iterated_coproduct(&y, 3), want);
    assert_eq!(iterated_coproduct(&y, 1), TensorElement::from_element(&y));
    assert_eq!(iterated_coproduct(&y, 2), coproduct(&y));
}

#[test]
fn beta_pushing_agrees_before_and_after_normalizing() {
    let n = 2;
    let b = base_fn("b");
    let h = HElement::y(n, 2, 1).mul(&HElement::x(n, 1));
    let one = HElement::one(n);
    let pushed = |left: HElement, c: &CoeffPoly| TensorElement::from_slots(n, &[left, HElement::alpha(n, c).mul(&h)]);
    for k in 1..=n {
        let lhs = TensorElement::from_slots(n, &[HElement::x(n, k).mul(&HElement::beta(n, &b)), h.clone()]);
        let mut rhs = pushed(HElement::x(n, k), &b);
        rhs.add_assign(&pushed(one.clone(), &apply(&b, Der::X(k), n)));
        for i in 1..=n {
            for j in 1..=n {
                rhs.add_assign(&pushed(HElement::delta(n, i, j, k, &[]), &apply(&b, Der::Y(i, j), n)));
            }
        }
        assert_eq!(lhs, rhs, "k={k}");
    }
}

#[test]
fn beta_free_tensor_is_unchanged() {
    let n = 1;
    let h = HElement::x(n, 1).mul(&HElement::y(n, 1, 1));
    let t = TensorElement::from_slots(n, &[h.clone(), HElement::one(n)]);
    assert_eq!(t.terms().count(), h.len());
}

#[test]
fn antipode_squares_on_generators() {
    for n in 1..=MAX_CONFLUENT_DIM {
        for (name, g) in generator_set(n) {
            assert_eq!(antipode(&antipode(&g)), g, "n={n} {name}");
        }
    }
}

#[test]
fn ap3_on_x() {
    for n in 1..=MAX_CONFLUENT_DIM {
        for k in 1..=n {
            assert!(antipode_multiply(&coproduct(&HElement::x(n, k))).is_zero());
        }
    }
}

#[test]
fn axiom_suite_passes() {
    for n in 1..=MAX_CONFLUENT_DIM {
        let r = axiom_suite(n, 20, 3, 9);
        assert!(r.passed(), "{r}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coassociative(seed in any::<u64>(), n in 1..=MAX_CONFLUENT_DIM) {
        let (g, _) = word(seed, n, 3);
        let d = coproduct(&g);
        prop_assert_eq!(apply_coproduct_at(&d, 0), apply_coproduct_at(&d, 1));
    }

    #[test]
    fn counit_laws(seed in any::<u64>(), n in 1..=MAX_CONFLUENT_DIM) {
        let (g, _) = word(seed, n, 3);
        let d = coproduct(&g);
        prop_assert_eq!(counit_at(&d, 0).to_element(), Some(g.clone()));
        prop_assert_eq!(counit_at(&d, 1).to_element(), Some(g));
    }

    #[test]
    fn coproduct_multiplicative(seed in any::<u64>()) {
        let n = 1;
        let (g, h) = word(seed, n, 2);
        prop_assert_eq!(coproduct(&g.mul(&h)), coproduct(&g).mul(&coproduct(&h)));
    }

    #[test]
    fn antipode_anti_homomorphism(seed in any::<u64>(), n in 1..=MAX_CONFLUENT_DIM) {
        let (g, h) = word(seed, n, 2);
        prop_assert_eq!(antipode(&g.mul(&h)), antipode(&h).mul(&antipode(&g)));
    }

    #[test]
    fn antipode_involutive(seed in any::<u64>(), n in 1..=MAX_CONFLUENT_DIM) {
        let (g, _) = word(seed, n, 4);
        prop_assert_eq!(antipode(&antipode(&g)), g);
    }

    #[test]
    fn antipode_against_coproduct(seed in any::<u64>(), n in 1..=MAX_CONFLUENT_DIM) {
        let (g, _) = word(seed, n, 3);
        let lhs = antipode_multiply(&coproduct(&g));
        let rhs = HElement::beta(n, &counit(&antipode(&g)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn counit_of_coefficients(seed in any::<u64>()) {
        let n = 2;
        let mut r = rng(seed);
        let (a, b) = (random_coeff(&mut r, n, 1), random_coeff(&mut r, n, 1));
        prop_assert_eq!(counit(&HElement::alpha(n, &a).mul(&HElement::beta(n, &b))), a.mul(&b));
    }
}
