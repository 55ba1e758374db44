use proptest::prelude::*;
use transverse_hopf::coeff_ring::{Idx, MAX_CONFLUENT_DIM};
use transverse_hopf::hopf_core::normalize;
use transverse_hopf::hopf_structure::{antipode, coproduct, iterated_coproduct};
use transverse_hopf::random::{random_coeff, random_tree, rng, GenMix};
use transverse_hopf::weil_complex::random_form;
use transverse_hopf_cli::parse::{parse_coeff, parse_element, parse_tensor, parse_weil, split_terms};

fn element(seed: u64, n: Idx, leaves: usize) -> transverse_hopf::hopf_core::HElement {
    let mut r = rng(seed);
    normalize(&random_tree(&mut r, n, leaves, GenMix::default()), n).unwrap()
}

#[test]
fn grammar_examples() {
    let h = parse_element("X[1]*b(f) - b(f)*X[1]", 1).unwrap();
    assert_eq!(h.to_string(), "b(Dy[1,1](f))*D[1;1,1] + b(Dx[1](f))");
    let t = parse_tensor("Y[1,1] (x) X[1]", 1).unwrap();
    assert_eq!(t.arity, 2);
    assert_eq!(parse_element("D[1;1,1]", 1).unwrap().to_string(), "D[1;1,1]");
    let err = parse_element("X[1]*Y[1,", 1).unwrap_err();
    assert!(err.to_string().starts_with("parse error at column"));
    assert!(parse_element("X[2]", 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn elements(seed in any::<u64>(), n in 1..=MAX_CONFLUENT_DIM) {
        let h = element(seed, n, 3);
        let text = h.to_string();
        let back = parse_element(&text, n).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, h);
    }

    #[test]
    fn antipodes(seed in any::<u64>(), n in 1..=MAX_CONFLUENT_DIM) {
        let s = antipode(&element(seed, n, 2));
        prop_assert_eq!(parse_element(&s.to_string(), n).unwrap(), s);
    }

    #[test]
    fn tensors(seed in any::<u64>(), n in 1..=MAX_CONFLUENT_DIM) {
        let h = element(seed, n, 2);
        for t in [coproduct(&h), iterated_coproduct(&h, 3)] {
            let parsed = parse_tensor(&t.to_string(), n).unwrap();
            prop_assert_eq!(parsed.arity, t.arity());
            prop_assert_eq!(parsed.evaluate(n), t);
        }
    }

    #[test]
    fn coefficients(seed in any::<u64>(), n in 1..=MAX_CONFLUENT_DIM) {
        let mut r = rng(seed);
        let c = random_coeff(&mut r, n, 2);
        prop_assert_eq!(parse_coeff(&c.to_string(), n).unwrap(), c);
    }

    #[test]
    fn weil_forms(seed in any::<u64>(), n in 1u8..=3) {
        let mut r = rng(seed);
        let w = random_form(&mut r, n, 2 * n as usize + 2);
        prop_assert_eq!(parse_weil(&w.to_string(), n, u32::from(n)).unwrap(), w);
    }

    #[test]
    fn split_terms_rejoins(seed in any::<u64>()) {
        let h = element(seed, 1, 3);
        let text = h.to_string();
        let mut sum = transverse_hopf::hopf_core::HElement::zero(1);
        for t in split_terms(&text) {
            sum = sum.add(&parse_element(&t, 1).unwrap());
        }
        prop_assert_eq!(sum, h);
    }
}
