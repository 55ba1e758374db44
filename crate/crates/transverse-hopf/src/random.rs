//! Seeded generators of random ring elements, generator words and trees.
//!
//! Used by the randomized identity suites. All randomness flows from a
//! ChaCha generator built from an explicit seed, so every suite is
//! reproducible.

use alloc::boxed::Box;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff_ring::{self, apply, base_fn, curv, CoeffPoly, Der, Diffeo, Idx};
use crate::hopf_core::Expr;
use crate::poly::{int, Poly};

/// The random source used throughout the engine.
pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random derivation with indices in `1..=n`.
pub fn random_der(rng: &mut SuiteRng, n: Idx) -> Der {
    if rng.gen_bool(0.5) {
        Der::X(rng.gen_range(1..=n))
    } else {
        Der::Y(rng.gen_range(1..=n), rng.gen_range(1..=n))
    }
}

/// A random single-atom ring element of derivation order at most `order`.
pub fn random_atom_poly(rng: &mut SuiteRng, n: Idx, order: usize) -> CoeffPoly {
    let base = match rng.gen_range(0..4) {
        0 | 1 => base_fn(["f", "g"][rng.gen_range(0..2)]),
        2 if n >= 2 => {
            let mut r = Poly::zero();
            while r.is_zero() {
                r = curv(rng.gen_range(1..=n), rng.gen_range(1..=n), rng.gen_range(1..=n), rng.gen_range(1..=n));
            }
            r
        }
        _ => coeff_ring::gamma(
            Diffeo::named(["phi", "psi"][rng.gen_range(0..2)]),
            rng.gen_range(1..=n),
            rng.gen_range(1..=n),
            rng.gen_range(1..=n),
        ),
    };
    let mut out = base;
    for _ in 0..rng.gen_range(0..=order) {
        out = apply(&out, random_der(rng, n), n);
    }
    out
}

/// A random ring element with a few small terms.
pub fn random_coeff(rng: &mut SuiteRng, n: Idx, order: usize) -> CoeffPoly {
    let mut out = Poly::constant(int(rng.gen_range(-2..=2)));
    for _ in 0..rng.gen_range(1..=2) {
        let mut t = Poly::constant(int(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }));
        for _ in 0..rng.gen_range(1..=2) {
            t = t.mul(&random_atom_poly(rng, n, order));
        }
        out.add_assign(&t);
    }
    out
}

/// Which generator classes a random generator may be drawn from.
#[derive(Clone, Copy, Debug)]
pub struct GenMix {
    pub coefficients: bool,
    pub deltas: bool,
    pub delta_depth: usize,
}

impl Default for GenMix {
    fn default() -> Self {
        GenMix { coefficients: true, deltas: true, delta_depth: 1 }
    }
}

/// A random generator of ℋ.
pub fn random_generator(rng: &mut SuiteRng, n: Idx, mix: GenMix) -> Expr {
    loop {
        match rng.gen_range(0..6) {
            0 => return Expr::X(rng.gen_range(1..=n)),
            1 => return Expr::Y(rng.gen_range(1..=n), rng.gen_range(1..=n)),
            2 if mix.deltas => {
                let ells = (0..rng.gen_range(0..=mix.delta_depth)).map(|_| rng.gen_range(1..=n)).collect();
                return Expr::Delta { i: rng.gen_range(1..=n), j: rng.gen_range(1..=n), k: rng.gen_range(1..=n), ells };
            }
            3 if mix.coefficients => return Expr::Alpha(random_coeff(rng, n, 1)),
            4 if mix.coefficients => return Expr::Beta(random_coeff(rng, n, 1)),
            5 => return Expr::X(rng.gen_range(1..=n)),
            _ => {}
        }
    }
}

/// A random product of `len` generators, as a flat list.
pub fn random_word(rng: &mut SuiteRng, n: Idx, len: usize, mix: GenMix) -> Vec<Expr> {
    (0..len).map(|_| random_generator(rng, n, mix)).collect()
}

/// A random expression tree with about `leaves` generator leaves.
pub fn random_tree(rng: &mut SuiteRng, n: Idx, leaves: usize, mix: GenMix) -> Expr {
    if leaves <= 1 {
        return random_generator(rng, n, mix);
    }
    let split = rng.gen_range(1..leaves);
    let left = random_tree(rng, n, split, mix);
    let right = random_tree(rng, n, leaves - split, mix);
    match rng.gen_range(0..5) {
        0 => Expr::Sum(alloc::vec![left, right]),
        1 => Expr::Neg(Box::new(Expr::Prod(alloc::vec![left, right]))),
        _ => Expr::Prod(alloc::vec![left, right]),
    }
}

/// Rebrackets every product in a tree at random, keeping factor order.
pub fn reparenthesize(rng: &mut SuiteRng, e: &Expr) -> Expr {
    match e {
        Expr::Prod(_) => {
            let mut flat = Vec::new();
            flatten_prod(e, &mut flat);
            let leaves: Vec<Expr> = flat.iter().map(|x| reparenthesize(rng, x)).collect();
            bracket(rng, leaves)
        }
        Expr::Sum(v) => {
            let mut parts: Vec<Expr> = v.iter().map(|x| reparenthesize(rng, x)).collect();
            parts.shuffle(rng);
            Expr::Sum(parts)
        }
        Expr::Neg(x) => Expr::Neg(Box::new(reparenthesize(rng, x))),
        other => other.clone(),
    }
}

fn flatten_prod(e: &Expr, out: &mut Vec<Expr>) {
    match e {
        Expr::Prod(v) => v.iter().for_each(|x| flatten_prod(x, out)),
        other => out.push(other.clone()),
    }
}

fn bracket(rng: &mut SuiteRng, mut leaves: Vec<Expr>) -> Expr {
    if leaves.len() == 1 {
        return leaves.pop().unwrap();
    }
    let split = rng.gen_range(1..leaves.len());
    let right = leaves.split_off(split);
    Expr::Prod(alloc::vec![bracket(rng, leaves), bracket(rng, right)])
}
