use num_traits::{One, Zero};
use proptest::prelude::*;
use transverse_hopf::coeff_ring::{gamma, Diffeo};
use transverse_hopf::cyclic_module::{cocycle_check, total_boundary, HopfInstance};
use transverse_hopf::hopf_core::HElement;
use transverse_hopf::hopf_structure::TensorElement;
use transverse_hopf::poly::{int, rat, Poly};
use transverse_hopf::van_est::*;
use transverse_hopf::weil_complex::{chern, gv, h1, WeilForm};
use transverse_hopf::Scalar;

fn d1() -> HElement {
    HElement::delta(1, 1, 1, 1, &[])
}

fn x1() -> HElement {
    HElement::x(1, 1)
}

fn y11() -> HElement {
    HElement::y(1, 1, 1)
}

fn pair(a: HElement, b: HElement) -> TensorElement {
    TensorElement::from_slots(1, &[a, b])
}

fn component(w: &WeilForm, q: usize) -> TensorElement {
    let c = tilde_c(w).unwrap();
    assert_eq!(c.components.len(), 1, "{c}");
    c.components.get(&q).cloned().unwrap_or_else(|| panic!("no component {q} in {c}"))
}

fn binomial(n: u32, k: u32) -> Scalar {
    (0..k).fold(Scalar::one(), |acc, i| acc * int(i64::from(n - i)) / int(i64::from(i + 1)))
}

/// `∫_0^1 t^a (1 − t)^{b+1} / (b + 1) dt` by binomial expansion.
fn iterated_integral(a: u32, b: u32) -> Scalar {
    let mut sum = Scalar::zero();
    for k in 0..=b + 1 {
        let term = binomial(b + 1, k) / int(i64::from(a + k + 1));
        sum += if k % 2 == 0 { term } else { -term };
    }
    sum / int(i64::from(b + 1))
}

fn half() -> Scalar {
    rat(1, 2)
}

#[test]
fn frozen_tilde_c_values() {
    let n = 1;
    assert_eq!(component(&gv(n), 1), TensorElement::from_element(&d1().neg()));
    let theta = x1().sub(&d1().mul(&y11()).scale(&half()));
    assert_eq!(component(&h1(n), 1), TensorElement::from_element(&theta));
    let r = pair(y11(), d1()).sub(&pair(d1(), y11())).scale(&half());
    assert_eq!(component(&chern(n, 1).unwrap(), 2), r);
    let one = pair(y11(), x1())
        .add(&pair(d1().mul(&y11()), y11()))
        .sub(&pair(x1(), y11()))
        .scale(&half());
    assert_eq!(component(&WeilForm::one(n), 2), one);
}

#[test]
fn tilde_c_intertwines_differentials() {
    let inst = HopfInstance::new(1);
    let theta = tilde_c(&h1(1)).unwrap();
    let boundary = total_boundary(&inst, &theta);
    let r = tilde_c(&chern(1, 1).unwrap()).unwrap();
    assert_eq!(boundary.get(&2), r.components.get(&2));
    for w in [WeilForm::one(1), chern(1, 1).unwrap(), gv(1)] {
        assert!(cocycle_check(&inst, &tilde_c(&w).unwrap()).is_cocycle(), "{w}");
    }
}

#[test]
fn chain_map_on_low_forms() {
    for w in [WeilForm::one(1), h1(1), chern(1, 1).unwrap(), gv(1)] {
        assert!(chain_map_check(&w).unwrap().passed(), "{w}");
    }
}

#[test]
fn group_cochain_examples() {
    let n = 1;
    let (u, v) = (Diffeo::named("u"), Diffeo::named("v"));
    assert!(group_cochain(&gv(n), 0, 1, std::slice::from_ref(&u)).is_err());
    assert!(group_cochain(&gv(n), 1, 0, std::slice::from_ref(&u)).is_err());
    let id = group_cochain(&gv(n), 1, 0, &[Diffeo::Identity, Diffeo::Identity]).unwrap();
    assert!(id.is_zero());
    let g = group_cochain(&gv(n), 1, 0, &[u.clone(), v.clone()]).unwrap();
    let th = SimplexForm::generator(n, 0, FormGen::Theta(1));
    let om = SimplexForm::generator(n, 0, FormGen::Omega(1, 1));
    let want = th.mul(&om).mul_coeff(&gamma(v.clone(), 1, 1, 1).sub(&gamma(u.clone(), 1, 1, 1)));
    assert_eq!(g, want);
    assert_eq!(group_cochain(&gv(n), 1, 0, &[v, u]).unwrap(), want.neg());
}

#[test]
fn group_cochain_antisymmetric_at_p2() {
    let n = 1;
    let labels = [Diffeo::named("u"), Diffeo::named("v"), Diffeo::named("w")];
    let base = group_cochain(&gv(n), 2, -1, &labels).unwrap();
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        let mut swapped = labels.clone();
        swapped.swap(a, b);
        assert_eq!(group_cochain(&gv(n), 2, -1, &swapped).unwrap(), base.neg(), "swap {a} {b}");
    }
}

#[test]
fn identity_labels_give_the_connection() {
    for n in 1..=2u8 {
        for p in 0..=2usize {
            let labels = vec![Diffeo::Identity; p + 1];
            let a = pullback_weil(&WeilForm::theta(n, 1, n), &labels).unwrap();
            assert_eq!(a, SimplexForm::generator(n, p, FormGen::Omega(1, n)));
        }
    }
}

#[test]
fn inhomogeneous_forms_are_rejected() {
    let w = WeilForm::one(1).add(&h1(1));
    assert!(pullback_weil(&w, &[Diffeo::Identity]).is_err());
}

#[test]
fn simplex_integrals() {
    let n = 1;
    let dt1 = SimplexForm::generator(n, 1, FormGen::Dt(1));
    let half = SimplexForm::coeff(n, 0, &Poly::constant(half()));
    assert_eq!(simplex_integrate(&SimplexForm::t(n, 1, 1).mul(&dt1)), half);
    let dt12 = SimplexForm::generator(n, 2, FormGen::Dt(1)).mul(&SimplexForm::generator(n, 2, FormGen::Dt(2)));
    assert_eq!(simplex_integrate(&dt12), half);
    let t1t2 = SimplexForm::t(n, 2, 1).mul(&SimplexForm::t(n, 2, 2));
    let want = SimplexForm::coeff(n, 0, &Poly::constant(iterated_integral(1, 1)));
    assert_eq!(simplex_integrate(&t1t2.mul(&dt12)), want);
    assert_eq!(iterated_integral(1, 1), rat(1, 24));
}

#[test]
fn phi_map_is_linear() {
    let w = gv(1);
    let single = phi_map(&w, 1, 0).unwrap();
    assert_eq!(single, TensorElement::from_element(&d1().neg()));
    assert_eq!(phi_map(&w.scale(&int(3)), 1, 0).unwrap(), single.scale(&int(3)));
    assert!(phi_map(&w, 0, 1).is_err());
}

#[test]
fn flat_specialization_is_delta_one() {
    let witness = flat_delta_search(&gv(1)).unwrap().expect("a coboundary decomposition exists");
    assert_eq!(witness.lambda, int(-1));
}

#[test]
fn consistency_identities() {
    let r = consistency_suite(1, 2, 3);
    assert!(r.passed(), "{r}");
}

proptest! {
    #[test]
    fn dirichlet_matches_iterated_integration(a in 0u32..6, b in 0u32..6) {
        prop_assert_eq!(dirichlet(&[a, b]), iterated_integral(a, b));
        prop_assert_eq!(dirichlet(&[a]), Scalar::one() / int(i64::from(a + 1)));
    }
}
