use num_traits::{One, Zero};
use proptest::prelude::*;
use transverse_hopf::coeff_ring::{curv, gamma, Diffeo, Idx};
use transverse_hopf::jet_model::*;
use transverse_hopf::poly::{int, rat, Mono, Poly};
use transverse_hopf::random::rng;
use transverse_hopf::Scalar;

fn inverse2(y: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if y.len() == 1 {
        return vec![vec![Scalar::one() / &y[0][0]]];
    }
    let det = &y[0][0] * &y[1][1] - &y[0][1] * &y[1][0];
    vec![
        vec![&y[1][1] / &det, -&y[0][1] / &det],
        vec![-&y[1][0] / &det, &y[0][0] / &det],
    ]
}

/// `∂_a ∂_b ψ^d (0)`, with 0-based indices.
fn hessian_at_zero(psi: &[XPoly], d: usize, a: usize, b: usize) -> Scalar {
    let mut out = Scalar::zero();
    for (m, c) in psi[d].terms() {
        if m.degree() != 2 {
            continue;
        }
        let vars: Vec<usize> = m.factors().iter().flat_map(|&(v, e)| vec![v as usize - 1; e as usize]).collect();
        if (vars[0], vars[1]) == (a, b) || (vars[0], vars[1]) == (b, a) {
            out += if a == b { c * int(2) } else { c.clone() };
        }
    }
    out
}

fn psi_with(n: Idx, extra: &[(Idx, Vec<(Idx, u32)>, Scalar)]) -> Vec<XPoly> {
    let mut psi: Vec<XPoly> = (1..=n).map(Poly::atom).collect();
    for (nu, factors, c) in extra {
        psi[*nu as usize - 1].add_assign(&Poly::term(Mono::from_factors(factors.clone()), c.clone()));
    }
    psi
}

#[test]
fn identity_table_gives_zero() {
    let t = JetTable::identity(2);
    let y = vec![vec![int(2), int(1)], vec![int(0), int(1)]];
    let g = gamma_from_jets(&t, &[int(0), int(0)], &y, 1).unwrap();
    for i in 1..=2 {
        for j in 1..=2 {
            for k in 1..=2 {
                assert!(g.get(i, j, k).is_zero());
            }
        }
    }
}

#[test]
fn quadratic_one_dimensional() {
    for a in [rat(1, 1), rat(-3, 7), rat(5, 2)] {
        let t = JetTable::flat(1, psi_with(1, &[(1, vec![(1, 2)], a.clone())])).unwrap();
        for y in [rat(1, 1), rat(-2, 3)] {
            let g = gamma_from_jets(&t, &[Scalar::zero()], &[vec![y.clone()]], 0).unwrap();
            assert_eq!(g.value(1, 1, 1), int(2) * &a * &y);
        }
    }
}

#[test]
fn cubic_one_dimensional_passes() {
    let psi = psi_with(1, &[(1, vec![(1, 2)], rat(2, 3)), (1, vec![(1, 3)], rat(-1, 2))]);
    let r = verify_pullback_identity(&JetTable::flat(1, psi).unwrap(), 10, 4);
    assert!(r.passed(), "{r}");
}

#[test]
fn evaluate_matches_gamma_and_rejects_foreign_atoms() {
    let psi = psi_with(2, &[(1, vec![(1, 1), (2, 1)], rat(1, 2)), (2, vec![(2, 2)], rat(-1, 3))]);
    let t = JetTable::flat(2, psi).unwrap();
    let u = Diffeo::named("u");
    let x = vec![Scalar::zero(), Scalar::zero()];
    let y = vec![vec![int(1), int(2)], vec![int(-1), int(1)]];
    let g = gamma_from_jets(&t, &x, &y, 0).unwrap();
    let v = evaluate(&t, &u, &gamma(u.clone(), 1, 1, 2), &x, &y).unwrap();
    assert_eq!(v, g.value(1, 1, 2));
    assert_eq!(evaluate(&t, &u, &curv(1, 2, 1, 2), &x, &y).unwrap(), Scalar::zero());
    let other = gamma(Diffeo::named("w"), 1, 1, 2);
    assert!(evaluate(&t, &u, &other, &x, &y).is_err());
    assert!(gamma_from_jets(&t, &[Scalar::zero()], &y, 0).is_err());
}

#[test]
fn table_text_format() {
    let src = "# a curved table\nn 2\npsi 2 0 1 1\npsi 2 2 0 1/4\ngamma 1 1 2 1 0 2\n";
    let t = JetTable::parse(src).unwrap();
    assert!(!t.is_flat());
    assert_eq!(t.christoffel(1, 2, 1), t.christoffel(1, 1, 2));
    assert_eq!(JetTable::parse(&t.to_string()).unwrap(), t);
    let conflict = "n 2\ngamma 1 1 2 1 0 2\ngamma 1 2 1 1 0 3\n";
    assert!(JetTable::parse(conflict).is_err());
    assert!(JetTable::parse("n 2\npsi 3 0 0 1\n").is_err());
}

#[test]
fn singular_frame_is_rejected() {
    let t = JetTable::identity(2);
    let y = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
    assert!(matches!(gamma_from_jets(&t, &[int(0), int(0)], &y, 0), Err(JetError::SingularFrame)));
}

#[test]
fn suite_passes() {
    let r = jet_suite(2, 4, 6, 17);
    assert!(r.passed(), "{r}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn gamma_matches_hessian_formula(seed in any::<u64>(), n in 1u8..=2) {
        let mut r = rng(seed);
        let psi = random_psi(&mut r, n, 3);
        let y = random_frame(&mut r, n);
        let t = JetTable::flat(n, psi.clone()).unwrap();
        let zero = vec![Scalar::zero(); n as usize];
        let g = gamma_from_jets(&t, &zero, &y, 0).unwrap();
        let yi = inverse2(&y);
        let nn = n as usize;
        for i in 0..nn {
            for j in 0..nn {
                for k in 0..nn {
                    let mut want = Scalar::zero();
                    for d in 0..nn {
                        for a in 0..nn {
                            for b in 0..nn {
                                want += &yi[i][d] * hessian_at_zero(&psi, d, a, b) * &y[a][j] * &y[b][k];
                            }
                        }
                    }
                    prop_assert_eq!(g.value(i as Idx + 1, j as Idx + 1, k as Idx + 1), want);
                }
            }
        }
    }

    #[test]
    fn gamma_symmetric_in_lower_pair(seed in any::<u64>(), n in 1u8..=2, curved in any::<bool>()) {
        let mut r = rng(seed);
        let mut t = JetTable::flat(n, random_psi(&mut r, n, 4)).unwrap();
        if curved {
            t = random_christoffel(&mut r, t);
        }
        let x: Vec<Scalar> = (0..n).map(|v| rat(i64::from(v) + 1, 5)).collect();
        let y = random_frame(&mut r, n);
        let g = gamma_from_jets(&t, &x, &y, 1).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    prop_assert_eq!(g.get(i, j, k), g.get(i, k, j));
                }
            }
        }
    }

    #[test]
    fn pullback_identity_holds(seed in any::<u64>(), n in 1u8..=2) {
        let mut r = rng(seed);
        let flat = JetTable::flat(n, random_psi(&mut r, n, 4)).unwrap();
        let t = random_christoffel(&mut r, flat);
        let report = verify_pullback_identity(&t, 2, seed);
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn jet_arithmetic(a in -5i64..5, b in 1i64..5, c in -5i64..5) {
        let order = 4;
        let x = Jet::variable(1, order, 0, rat(a, b));
        let y = Jet::constant(1, order, int(c)).add(&x.mul(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        let lhs = x.mul(&y).derivative(0);
        let rhs = x.derivative(0).mul(&y).add(&x.mul(&y.derivative(0)));
        prop_assert!(lhs.agrees(&rhs));
        if let Some(inv) = y.recip() {
            prop_assert!(inv.mul(&y).agrees(&Jet::constant(1, order, Scalar::one())));
        }
    }
}
