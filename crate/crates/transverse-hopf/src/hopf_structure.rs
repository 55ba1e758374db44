//! Coproduct, counit and twisted antipode of ℋ, and tensor powers over ℛ.
//!
//! Tensor powers are taken over the base ring with the identification
//! `β(r)h ⊗ h' = h ⊗ α(r)h'`. A [`TensorElement`] keeps its β-coefficients
//! in the last slot only; every other β-factor is moved across `⊗` as an
//! α-factor of the next slot. Because β sits leftmost in PBW order the move
//! needs no reordering.
//!
//! Products of tensors are slotwise. They are well defined whenever the
//! left factor is the image of a coproduct, which is the only way they are
//! used here.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::coeff_ring::{self, Atom, CoeffPoly, Der, Diffeo, Idx};
use crate::hopf_core::{self, split_body, write_pbw_body, BodyParts, HElement, PbwTerm};
use crate::limits;
use crate::poly::{fmt_scalar, Mono, Poly, Scalar};
use crate::random::{self, GenMix};
use crate::suite::{Check, SuiteReport};

/// An element of the `q`-fold tensor power of ℋ over ℛ.
///
/// Each term is a tuple of body monomials (see [`crate::hopf_core`]) with a
/// scalar coefficient. In arity 0 the single entry of a key is a plain
/// coefficient-ring monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    n: Idx,
    arity: usize,
    terms: BTreeMap<Vec<Mono<Atom>>, Scalar>,
}

fn is_slot_beta(a: &Atom) -> bool {
    matches!(a, Atom::Pull { phi: Diffeo::Slot, .. })
}

/// Splits a body monomial into its β-free part and the monomial under β.
fn take_beta(m: &Mono<Atom>) -> (Mono<Atom>, Mono<Atom>) {
    let (beta, rest) = m.partition(is_slot_beta);
    let inner = beta
        .factors()
        .iter()
        .map(|(a, e)| match a {
            Atom::Pull { inner, .. } => ((**inner).clone(), *e),
            _ => unreachable!(),
        })
        .collect();
    (rest, Mono::from_factors(inner))
}

fn body_poly(m: &Mono<Atom>) -> CoeffPoly {
    Poly::mono(m.clone())
}

impl TensorElement {
    pub fn zero(n: Idx, arity: usize) -> Self {
        TensorElement { n, arity, terms: BTreeMap::new() }
    }

    /// `1 ⊗ … ⊗ 1`, or the ring unit in arity 0.
    pub fn one(n: Idx, arity: usize) -> Self {
        let mut t = Self::zero(n, arity);
        let key = if arity == 0 { vec![Mono::one()] } else { vec![hopf_core::unit_body(); arity] };
        t.terms.insert(key, Scalar::one());
        t
    }

    /// An arity-0 tensor.
    pub fn from_coeff(n: Idx, p: &CoeffPoly) -> Self {
        let mut t = Self::zero(n, 0);
        for (m, c) in p.terms() {
            t.terms.insert(vec![m.clone()], c.clone());
        }
        t
    }

    /// An arity-1 tensor.
    pub fn from_element(h: &HElement) -> Self {
        Self::from_slots(h.n(), core::slice::from_ref(h))
    }

    /// `h_1 ⊗ … ⊗ h_q`, brought to normal form.
    pub fn from_slots(n: Idx, slots: &[HElement]) -> Self {
        let mut t = Self::zero(n, slots.len());
        let polys: Vec<CoeffPoly> = slots.iter().map(|h| h.body().clone()).collect();
        t.add_product(&polys, &Scalar::one());
        t
    }

    pub fn n(&self) -> Idx {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Mono<Atom>>, &Scalar)> {
        self.terms.iter()
    }

    /// The ring element of an arity-0 tensor.
    pub fn to_coeff(&self) -> Option<CoeffPoly> {
        if self.arity != 0 {
            return None;
        }
        let mut p = Poly::zero();
        for (k, c) in &self.terms {
            p.add_term(k[0].clone(), c.clone());
        }
        Some(p)
    }

    /// The element of ℋ held by an arity-1 tensor.
    pub fn to_element(&self) -> Option<HElement> {
        if self.arity != 1 {
            return None;
        }
        let mut p = Poly::zero();
        for (k, c) in &self.terms {
            p.add_term(k[0].clone(), c.clone());
        }
        Some(HElement::from_body(self.n, p))
    }

    /// Adds `c · key`, moving β-factors towards the last slot.
    pub fn add_term(&mut self, mut key: Vec<Mono<Atom>>, c: Scalar) {
        debug_assert_eq!(key.len(), self.arity.max(1));
        if c.is_zero() {
            return;
        }
        if self.arity > 1 {
            for s in 0..self.arity - 1 {
                let (rest, beta) = take_beta(&key[s]);
                if !beta.is_one() {
                    key[s] = rest;
                    key[s + 1] = key[s + 1].mul(&beta);
                }
            }
        }
        match self.terms.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c · p_1 ⊗ … ⊗ p_q` for body polynomials `p_s`.
    fn add_product(&mut self, slots: &[CoeffPoly], c: &Scalar) {
        fn go(
            out: &mut TensorElement,
            slots: &[CoeffPoly],
            key: &mut Vec<Mono<Atom>>,
            c: &Scalar,
        ) {
            if key.len() == slots.len() {
                out.add_term(key.clone(), c.clone());
                return;
            }
            for (m, d) in slots[key.len()].terms() {
                key.push(m.clone());
                go(out, slots, key, &(c * d));
                key.pop();
            }
        }
        go(self, slots, &mut Vec::with_capacity(slots.len()), c);
        limits::check_terms(self.terms.len());
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.n, self.arity);
        }
        TensorElement {
            n: self.n,
            arity: self.arity,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
        }
    }

    /// Slotwise product with the tensor `r_1 ⊗ … ⊗ r_q` given by raw slots.
    pub fn mul_slots(&self, slots: &[HElement]) -> Self {
        debug_assert_eq!(slots.len(), self.arity.max(1));
        let mut out = Self::zero(self.n, self.arity);
        for (key, c) in &self.terms {
            let prods: Vec<CoeffPoly> = if self.arity == 0 {
                vec![body_poly(&key[0]).mul(slots[0].body())]
            } else {
                key.iter()
                    .zip(slots)
                    .map(|(m, r)| HElement::from_body(self.n, body_poly(m)).mul(r).body().clone())
                    .collect()
            };
            out.add_product(&prods, c);
        }
        out
    }

    /// Slotwise product.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = Self::zero(self.n, self.arity);
        for (kb, cb) in &other.terms {
            let slots: Vec<HElement> = kb.iter().map(|m| HElement::from_body(self.n, body_poly(m))).collect();
            let part = self.mul_slots(&slots);
            for (k, c) in part.terms {
                out.add_term(k, c * cb);
            }
        }
        out
    }

    /// Applies a linear map to slot `s` of every term; the image is spliced in place.
    fn splice_slot(&self, s: usize, image_arity: usize, mut image: impl FnMut(&Mono<Atom>) -> TensorElement) -> Self {
        let mut cache: BTreeMap<Mono<Atom>, TensorElement> = BTreeMap::new();
        let mut out_terms = Vec::new();
        for (key, c) in &self.terms {
            let img = cache.entry(key[s].clone()).or_insert_with(|| image(&key[s]));
            debug_assert_eq!(img.arity, image_arity);
            for (ik, ic) in &img.terms {
                let mut nk = key[..s].to_vec();
                nk.extend(ik.iter().cloned());
                nk.extend(key[s + 1..].iter().cloned());
                out_terms.push((nk, c * ic));
            }
        }
        let mut out = Self::zero(self.n, self.arity + image_arity - 1);
        for (k, c) in out_terms {
            out.add_term(k, c);
        }
        limits::check_terms(out.terms.len());
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (key, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (pos, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if self.arity == 0 {
                if !abs.is_one() || key[0].is_one() {
                    fmt_scalar(&abs, f)?;
                    if !key[0].is_one() {
                        write!(f, "*")?;
                    }
                }
                if !key[0].is_one() {
                    coeff_ring::write_mono(f, &key[0])?;
                }
                continue;
            }
            for (s, m) in key.iter().enumerate() {
                if s > 0 {
                    write!(f, " (x) ")?;
                }
                let coeff = if s == 0 { abs.clone() } else { Scalar::one() };
                write_pbw_body(f, &pbw_of(m), &coeff)?;
            }
        }
        Ok(())
    }
}

fn pbw_of(m: &Mono<Atom>) -> PbwTerm {
    let parts = split_body(m);
    PbwTerm {
        coeff: Scalar::one(),
        kappa: parts.kappa_gens(),
        alpha: parts.alpha,
        beta: parts.beta,
        xs: parts.xs,
        ys: parts.ys,
    }
}

fn elem(n: Idx, m: &Mono<Atom>) -> HElement {
    HElement::from_body(n, body_poly(m))
}

fn gen_tensor(n: Idx, slots: &[HElement]) -> TensorElement {
    TensorElement::from_slots(n, slots)
}

/// `Δ(X_k) = X_k ⊗ 1 + 1 ⊗ X_k + Σ δ^i_{jk} ⊗ Y_i^j`.
fn coproduct_x(n: Idx, k: Idx) -> TensorElement {
    let one = HElement::one(n);
    let x = HElement::x(n, k);
    let mut t = gen_tensor(n, &[x.clone(), one.clone()]);
    t.add_assign(&gen_tensor(n, &[one, x]));
    for i in 1..=n {
        for j in 1..=n {
            t.add_assign(&gen_tensor(n, &[HElement::delta(n, i, j, k, &[]), HElement::y(n, i, j)]));
        }
    }
    t
}

/// Coproduct of a δ-generator, `Δδ_{w,ℓ} = [ΔX_ℓ, Δδ_w]`.
fn coproduct_delta(n: Idx, g: &Atom, cache: &mut BTreeMap<Atom, TensorElement>) -> TensorElement {
    if let Some(t) = cache.get(g) {
        return t.clone();
    }
    let Atom::Gamma { i, j, k, ells, .. } = g else { unreachable!("δ-generators are slot jet symbols") };
    let out = match ells.split_last() {
        None => {
            let d = HElement::delta(n, *i, *j, *k, &[]);
            let one = HElement::one(n);
            gen_tensor(n, &[d.clone(), one.clone()]).add(&gen_tensor(n, &[one, d]))
        }
        Some((&l, rest)) => {
            let lower = Atom::Gamma { phi: Diffeo::Slot, i: *i, j: *j, k: *k, ells: rest.to_vec() };
            let dl = coproduct_delta(n, &lower, cache);
            let dx = coproduct_x(n, l);
            dx.mul(&dl).sub(&dl.mul(&dx))
        }
    };
    cache.insert(g.clone(), out.clone());
    out
}

/// `ΔX_k · t` or `ΔY_i^j · t` for an arity-2 tensor, applied slotwise as derivations.
fn left_coproduct_der(t: &TensorElement, d: Der) -> TensorElement {
    let n = t.n();
    let mut cache: BTreeMap<(Mono<Atom>, Der), CoeffPoly> = BTreeMap::new();
    let mut der = |m: &Mono<Atom>, d: Der| -> CoeffPoly {
        cache.entry((m.clone(), d)).or_insert_with(|| coeff_ring::apply(&body_poly(m), d, n)).clone()
    };
    let mut out = TensorElement::zero(n, 2);
    for (key, c) in t.terms() {
        let (s0, s1) = (body_poly(&key[0]), body_poly(&key[1]));
        out.add_product(&[der(&key[0], d), s1.clone()], c);
        out.add_product(&[s0.clone(), der(&key[1], d)], c);
        if let Der::X(k) = d {
            for i in 1..=n {
                for j in 1..=n {
                    let g = coeff_ring::gamma(Diffeo::Slot, i, j, k).mul(&s0);
                    out.add_product(&[g, der(&key[1], Der::Y(i, j))], c);
                }
            }
        }
    }
    out
}

/// Coproduct of the word `δ_κ X_I Y_J` carried by a body monomial.
fn coproduct_word(n: Idx, parts: &BodyParts, cache: &mut BTreeMap<Atom, TensorElement>) -> TensorElement {
    let mut t = TensorElement::one(n, 2);
    for &(i, j) in parts.ys.iter().rev() {
        t = left_coproduct_der(&t, Der::Y(i, j));
    }
    for &k in parts.xs.iter().rev() {
        t = left_coproduct_der(&t, Der::X(k));
    }
    for (a, e) in parts.kappa.factors() {
        let d = coproduct_delta(n, a, cache);
        for _ in 0..*e {
            t = d.mul(&t);
        }
    }
    t
}

/// The coproduct `Δ: ℋ → ℋ ⊗_ℛ ℋ`.
pub fn coproduct(h: &HElement) -> TensorElement {
    let n = h.n();
    let mut by_word: BTreeMap<(Mono<Atom>, Vec<Idx>, Vec<(Idx, Idx)>), Vec<(Mono<Atom>, Mono<Atom>, Scalar)>> =
        BTreeMap::new();
    for (m, c) in h.body().terms() {
        let p = split_body(m);
        by_word.entry((p.kappa, p.xs, p.ys)).or_default().push((p.alpha, p.beta, c.clone()));
    }
    let mut cache = BTreeMap::new();
    let mut out = TensorElement::zero(n, 2);
    for ((kappa, xs, ys), prefixes) in by_word {
        let parts = BodyParts { alpha: Mono::one(), beta: Mono::one(), kappa, xs, ys };
        let word = coproduct_word(n, &parts, &mut cache);
        for (alpha, beta, c) in prefixes {
            let beta = hopf_core::beta_mono(&beta);
            for (key, d) in word.terms() {
                out.add_term(vec![key[0].mul(&alpha), key[1].mul(&beta)], &c * d);
            }
        }
    }
    limits::check_terms(out.len());
    out
}

/// Replaces slot `s` (0-based) by its coproduct.
pub fn apply_coproduct_at(t: &TensorElement, s: usize) -> TensorElement {
    assert!(s < t.arity(), "slot out of range");
    let n = t.n();
    t.splice_slot(s, 2, |m| coproduct(&elem(n, m)))
}

/// `Δ^{q−1}(h)`, splitting the last slot repeatedly.
pub fn iterated_coproduct(h: &HElement, q: usize) -> TensorElement {
    assert!(q >= 1, "arity must be positive");
    let mut t = TensorElement::from_element(h);
    for s in 0..q - 1 {
        t = apply_coproduct_at(&t, s);
    }
    t
}

/// The counit `ε(h) = h(1)`.
pub fn counit(h: &HElement) -> CoeffPoly {
    let mut out = Poly::zero();
    for (m, c) in h.body().terms() {
        let p = split_body(m);
        if p.is_trivial_word() {
            out.add_term(p.alpha.mul(&p.beta), c.clone());
        }
    }
    out
}

/// Applies `ε` to slot `s` (0-based), absorbing the value into a neighbour.
///
/// The value enters the next slot through α, or the previous slot through β
/// when `s` is the last slot.
pub fn counit_at(t: &TensorElement, s: usize) -> TensorElement {
    let q = t.arity();
    assert!(s < q, "slot out of range");
    let n = t.n();
    let mut out = TensorElement::zero(n, q - 1);
    for (key, c) in t.terms() {
        let e = counit(&elem(n, &key[s]));
        for (m, d) in e.terms() {
            let mut nk: Vec<Mono<Atom>> = key.clone();
            nk.remove(s);
            if q == 1 {
                nk = vec![m.clone()];
            } else if s < q - 1 {
                nk[s] = nk[s].mul(m);
            } else {
                let pulled = coeff_ring::pull(&Diffeo::Slot, &Poly::mono(m.clone()));
                let (pm, _) = pulled.terms().next().expect("pull-back of a monomial");
                nk[s - 1] = nk[s - 1].mul(pm);
            }
            out.add_term(nk, c * d);
        }
    }
    out
}

/// `S̃(X_k) · h`.
fn left_antipode_x(h: &HElement, k: Idx) -> HElement {
    let n = h.n();
    let mut out = h.left_der(Der::X(k)).neg();
    for i in 1..=n {
        for j in 1..=n {
            let y = h.left_der(Der::Y(i, j));
            out.add_assign(&y.left_alpha(&coeff_ring::gamma(Diffeo::Slot, i, j, k)));
        }
    }
    out
}

/// `S̃(Y_i^j) · h`.
fn left_antipode_y(h: &HElement, i: Idx, j: Idx) -> HElement {
    let out = h.left_der(Der::Y(i, j)).neg();
    if i == j {
        out.add(h)
    } else {
        out
    }
}

fn antipode_delta(n: Idx, g: &Atom, cache: &mut BTreeMap<Atom, HElement>) -> HElement {
    if let Some(h) = cache.get(g) {
        return h.clone();
    }
    let Atom::Gamma { i, j, k, ells, .. } = g else { unreachable!("δ-generators are slot jet symbols") };
    let out = match ells.split_last() {
        None => HElement::delta(n, *i, *j, *k, &[]).neg(),
        Some((&l, rest)) => {
            let lower = Atom::Gamma { phi: Diffeo::Slot, i: *i, j: *j, k: *k, ells: rest.to_vec() };
            let sd = antipode_delta(n, &lower, cache);
            let sx = left_antipode_x(&HElement::one(n), l);
            sd.mul(&sx).sub(&sx.mul(&sd))
        }
    };
    cache.insert(g.clone(), out.clone());
    out
}

/// The twisted antipode `S̃`, the anti-homomorphism exchanging α and β.
pub fn antipode(h: &HElement) -> HElement {
    let n = h.n();
    let mut by_word: BTreeMap<(Mono<Atom>, Vec<Idx>, Vec<(Idx, Idx)>), CoeffPoly> = BTreeMap::new();
    for (m, c) in h.body().terms() {
        let p = split_body(m);
        let swapped = p.beta.mul(&hopf_core::beta_mono(&p.alpha)).mul(&hopf_core::unit_body());
        by_word.entry((p.kappa, p.xs, p.ys)).or_default().add_term(swapped, c.clone());
    }
    let mut cache = BTreeMap::new();
    let mut out = HElement::zero(n);
    for ((kappa, xs, ys), prefix) in by_word {
        let mut acc = HElement::from_body(n, prefix);
        for (a, e) in kappa.factors() {
            let sd = antipode_delta(n, a, &mut cache);
            for _ in 0..*e {
                acc = sd.mul(&acc);
            }
        }
        for &k in &xs {
            acc = left_antipode_x(&acc, k);
        }
        for &(i, j) in &ys {
            acc = left_antipode_y(&acc, i, j);
        }
        out.add_assign(&acc);
    }
    out
}

/// `Σ S̃(t_1) · t_2` for an arity-2 tensor, which is well defined over ℛ.
pub fn antipode_multiply(t: &TensorElement) -> HElement {
    assert_eq!(t.arity(), 2, "arity-2 tensor expected");
    let n = t.n();
    let mut out = HElement::zero(n);
    for (key, c) in t.terms() {
        let s = antipode(&elem(n, &key[0]));
        out.add_assign(&s.mul(&elem(n, &key[1])).scale(c));
    }
    out
}

/// The generators of ℋ used by the suites: every `X_k`, `Y_i^j`, `δ^i_{jk}`
/// and `δ^i_{jk,ℓ}`, plus `α(f)` and `β(f)`.
pub fn generator_set(n: Idx) -> Vec<(String, HElement)> {
    let mut out = Vec::new();
    let f = coeff_ring::base_fn("f");
    out.push((String::from("a(f)"), HElement::alpha(n, &f)));
    out.push((String::from("b(f)"), HElement::beta(n, &f)));
    for k in 1..=n {
        out.push((format!("X[{k}]"), HElement::x(n, k)));
    }
    for i in 1..=n {
        for j in 1..=n {
            out.push((format!("Y[{i},{j}]"), HElement::y(n, i, j)));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            for k in j..=n {
                out.push((format!("D[{i};{j},{k}]"), HElement::delta(n, i, j, k, &[])));
                for l in k..=n {
                    out.push((format!("D[{i};{j},{k};{l}]"), HElement::delta(n, i, j, k, &[l])));
                }
            }
        }
    }
    out
}

/// Every Hopf-algebroid axiom checked on one pair of elements.
fn check_axioms(g: &HElement, h: &HElement, b: &CoeffPoly) -> Vec<(&'static str, bool)> {
    let n = h.n();
    let dh = coproduct(h);
    let dg = coproduct(g);
    let one = HElement::one(n);
    let s_h = antipode(h);
    let s_g = antipode(g);
    let gh = g.mul(h);
    let dgh = coproduct(&gh);
    vec![
        ("coassociativity", apply_coproduct_at(&dh, 0) == apply_coproduct_at(&dh, 1)
            && apply_coproduct_at(&dgh, 0) == apply_coproduct_at(&dgh, 1)),
        (
            "counit laws",
            counit_at(&dh, 0).to_element().as_ref() == Some(h) && counit_at(&dh, 1).to_element().as_ref() == Some(h),
        ),
        (
            "coproduct annihilates the ideal",
            dh.mul_slots(&[HElement::beta(n, b), one.clone()]) == dh.mul_slots(&[one, HElement::alpha(n, b)]),
        ),
        ("coproduct multiplicative", dgh == dg.mul(&dh)),
        ("antipode anti-homomorphism", antipode(&gh) == s_h.mul(&s_g)),
        ("antipode involutive", antipode(&s_h) == *h && antipode(&antipode(&gh)) == gh),
        ("antipode counit identity", antipode_multiply(&dh) == HElement::beta(n, &counit(&s_h))),
    ]
}

/// Checks the Hopf-algebroid axioms on all generator pairs and on random words.
///
/// Each of the `samples` random words has length at most `max_len` and is
/// split at a random point into a product `g · h`; unary identities are
/// checked on `h` and on the whole word.
pub fn axiom_suite(n: Idx, samples: usize, max_len: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("hopf axioms");
    let mut checks: BTreeMap<&'static str, Check> = BTreeMap::new();
    let mut record = |results: Vec<(&'static str, bool)>, witness: &dyn Fn() -> String| {
        for (name, ok) in results {
            let c = checks.entry(name).or_insert_with(|| Check::new(name));
            c.record(ok, witness);
        }
    };
    let gens = generator_set(n);
    let b = coeff_ring::base_fn("g");
    for (gn, g) in &gens {
        for (hn, h) in &gens {
            record(check_axioms(g, h, &b), &|| format!("g = {gn}, h = {hn}"));
        }
    }
    let mut rng = random::rng(seed);
    let mix = GenMix { coefficients: true, deltas: true, delta_depth: 1 };
    for _ in 0..samples {
        let len = rand::Rng::gen_range(&mut rng, 1..=max_len);
        let mut word = random::random_word(&mut rng, n, len, mix);
        let cut = rand::Rng::gen_range(&mut rng, 0..=len);
        let tail = word.split_off(cut);
        let bb = random::random_coeff(&mut rng, n, 1);
        let g = hopf_core::normalize(&hopf_core::Expr::Prod(word), n).expect("generated indices are in range");
        let h = hopf_core::normalize(&hopf_core::Expr::Prod(tail), n).expect("generated indices are in range");
        record(check_axioms(&g, &h, &bb), &|| format!("g = {g}, h = {h}, b = {bb}"));
    }
    for (_, c) in checks {
        report.push(c);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_ring::base_fn;
    use alloc::string::ToString;

    #[test]
    fn coproduct_of_generators() {
        let n = 1;
        assert_eq!(coproduct(&HElement::one(n)).to_string(), "1 (x) 1");
        assert_eq!(coproduct(&HElement::x(n, 1)).to_string(), coproduct_x(n, 1).to_string());
        let dx = coproduct(&HElement::x(n, 1));
        assert_eq!(dx.len(), 3);
        let f = base_fn("f");
        assert_eq!(coproduct(&HElement::alpha(n, &f)).to_string(), "a(f) (x) 1");
        assert_eq!(coproduct(&HElement::beta(n, &f)).to_string(), "1 (x) b(f)");
    }

    #[test]
    fn beta_moves_across_the_tensor_sign() {
        let n = 1;
        let f = base_fn("f");
        let t = TensorElement::from_slots(n, &[HElement::beta(n, &f), HElement::one(n)]);
        assert_eq!(t, TensorElement::from_slots(n, &[HElement::one(n), HElement::alpha(n, &f)]));
        assert_eq!(t.to_string(), "1 (x) a(f)");
    }

    #[test]
    fn counit_values() {
        let n = 2;
        let f = base_fn("f");
        let g = base_fn("g");
        assert_eq!(counit(&HElement::one(n)), Poly::one());
        assert_eq!(counit(&HElement::alpha(n, &f).mul(&HElement::beta(n, &g))), f.mul(&g));
        assert!(counit(&HElement::x(n, 1)).is_zero());
        assert!(counit(&HElement::delta(n, 1, 1, 2, &[])).is_zero());
    }

    #[test]
    fn antipode_of_generators() {
        let n = 2;
        let f = base_fn("f");
        assert_eq!(antipode(&HElement::beta(n, &f)), HElement::alpha(n, &f));
        assert_eq!(antipode(&HElement::alpha(n, &f)), HElement::beta(n, &f));
        assert_eq!(antipode(&HElement::y(n, 1, 1)), HElement::y(n, 1, 1).neg().add(&HElement::one(n)));
        assert_eq!(antipode(&HElement::y(n, 1, 2)), HElement::y(n, 1, 2).neg());
        assert_eq!(antipode(&HElement::delta(n, 1, 1, 2, &[])), HElement::delta(n, 1, 1, 2, &[]).neg());
        let mut sx = HElement::x(n, 2).neg();
        for i in 1..=n {
            for j in 1..=n {
                sx.add_assign(&HElement::delta(n, i, j, 2, &[]).mul(&HElement::y(n, i, j)));
            }
        }
        assert_eq!(antipode(&HElement::x(n, 2)), sx);
    }

    #[test]
    fn generator_axioms_one_dimensional() {
        let report = axiom_suite(1, 0, 1, 0);
        assert!(report.passed(), "{report}");
    }
}
