//! Cyclic modules, the (b, B) operators and cocycle checking.
//!
//! Two instances are provided: the Hopf-cyclic module of ℋ, with
//! `C^q = ℋ^{⊗_ℛ q}` and `C^0 = ℛ`, and the cyclic module of a coarse
//! algebroid over a finite-dimensional algebra 𝒦, with `C^q = 𝒦^{⊗(q+1)}`.
//!
//! Operators act as maps of vector spaces, `δ_i: C^{q−1} → C^q` and
//! `σ_i: C^{q+1} → C^q`, and compositions are read right to left. The extra
//! degeneracy is `σ_{−1} = σ_q ∘ τ_{q+1}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::coeff_ring::{CoeffPoly, Idx};
use crate::hopf_core::{self, HElement};
use crate::hopf_structure::{
    antipode, apply_coproduct_at, counit_at, iterated_coproduct, TensorElement,
};
use crate::poly::{fmt_scalar, int, Mono, Poly, Scalar};
use crate::random::{self, GenMix, SuiteRng};
use crate::suite::{Check, SuiteReport};

/// Errors raised by cyclic operators.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CyclicError {
    #[error("operator index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("element has degree {found}, expected {expected}")]
    DegreeMismatch { found: usize, expected: usize },
    #[error("invalid coarse algebra: {0}")]
    InvalidAlgebra(String),
}

/// Vector-space operations on cochain components.
pub trait Linear: Clone + PartialEq + fmt::Display {
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    fn is_zero(&self) -> bool;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }
}

impl Linear for TensorElement {
    fn add(&self, other: &Self) -> Self {
        TensorElement::add(self, other)
    }
    fn scale(&self, s: &Scalar) -> Self {
        TensorElement::scale(self, s)
    }
    fn is_zero(&self) -> bool {
        TensorElement::is_zero(self)
    }
}

/// A cyclic module given by its structure operators.
pub trait CyclicInstance {
    type Elem: Linear;

    fn name(&self) -> String;
    fn zero(&self, q: usize) -> Self::Elem;
    fn degree(&self, x: &Self::Elem) -> usize;
    /// `δ_i: C^{q−1} → C^q`, `0 ≤ i ≤ q`.
    fn face_unchecked(&self, i: usize, q: usize, x: &Self::Elem) -> Self::Elem;
    /// `σ_i: C^{q+1} → C^q`, `0 ≤ i ≤ q`.
    fn degeneracy_unchecked(&self, i: usize, q: usize, x: &Self::Elem) -> Self::Elem;
    /// `τ_q: C^q → C^q`.
    fn cyclic_unchecked(&self, q: usize, x: &Self::Elem) -> Self::Elem;
    fn random_element(&self, rng: &mut SuiteRng, q: usize) -> Self::Elem;
}

fn check_degree<I: CyclicInstance>(inst: &I, x: &I::Elem, expected: usize) -> Result<(), CyclicError> {
    let found = inst.degree(x);
    if found != expected {
        return Err(CyclicError::DegreeMismatch { found, expected });
    }
    Ok(())
}

fn check_op_index(index: usize, max: usize) -> Result<(), CyclicError> {
    if index > max {
        return Err(CyclicError::IndexOutOfRange { index, max });
    }
    Ok(())
}

/// `δ_i: C^{q−1} → C^q`.
pub fn face<I: CyclicInstance>(inst: &I, i: usize, q: usize, x: &I::Elem) -> Result<I::Elem, CyclicError> {
    if q == 0 {
        return Err(CyclicError::IndexOutOfRange { index: i, max: 0 });
    }
    check_op_index(i, q)?;
    check_degree(inst, x, q - 1)?;
    Ok(inst.face_unchecked(i, q, x))
}

/// `σ_i: C^{q+1} → C^q`.
pub fn degeneracy<I: CyclicInstance>(inst: &I, i: usize, q: usize, x: &I::Elem) -> Result<I::Elem, CyclicError> {
    check_op_index(i, q)?;
    check_degree(inst, x, q + 1)?;
    Ok(inst.degeneracy_unchecked(i, q, x))
}

/// `τ_q: C^q → C^q`.
pub fn cyclic<I: CyclicInstance>(inst: &I, q: usize, x: &I::Elem) -> Result<I::Elem, CyclicError> {
    check_degree(inst, x, q)?;
    Ok(inst.cyclic_unchecked(q, x))
}

/// `b = Σ (−1)^i δ_i: C^{q−1} → C^q`.
pub fn hochschild_b<I: CyclicInstance>(inst: &I, q: usize, x: &I::Elem) -> I::Elem {
    let mut out = inst.zero(q);
    for i in 0..=q {
        let f = inst.face_unchecked(i, q, x);
        out = if i % 2 == 0 { out.add(&f) } else { out.sub(&f) };
    }
    out
}

fn lambda<I: CyclicInstance>(inst: &I, q: usize, x: &I::Elem) -> I::Elem {
    let t = inst.cyclic_unchecked(q, x);
    if q.is_multiple_of(2) {
        t
    } else {
        t.scale(&-Scalar::one())
    }
}

/// `B = N_q σ_{−1} (1 − λ_{q+1}): C^{q+1} → C^q`.
pub fn horizontal_b<I: CyclicInstance>(inst: &I, q: usize, x: &I::Elem) -> I::Elem {
    let y = x.sub(&lambda(inst, q + 1, x));
    let mut z = inst.degeneracy_unchecked(q, q, &inst.cyclic_unchecked(q + 1, &y));
    let mut out = z.clone();
    for _ in 0..q {
        z = lambda(inst, q, &z);
        out = out.add(&z);
    }
    out
}

/// Parity of a cochain in the periodic complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(q: usize) -> Self {
        if q.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A finitely supported cochain of the periodic (b, B) complex.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicCochain<E> {
    pub parity: Parity,
    pub components: BTreeMap<usize, E>,
}

impl<E: Linear> CyclicCochain<E> {
    pub fn new(parity: Parity) -> Self {
        CyclicCochain { parity, components: BTreeMap::new() }
    }

    /// Sets the component of degree `q`, which must have the cochain's parity.
    pub fn with(mut self, q: usize, x: E) -> Self {
        assert_eq!(Parity::of(q), self.parity, "component degree has the wrong parity");
        self.components.insert(q, x);
        self
    }
}

impl<E: Linear> fmt::Display for CyclicCochain<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "parity: {}", self.parity)?;
        for (q, x) in &self.components {
            writeln!(f, "component {q}: {x}")?;
        }
        Ok(())
    }
}

/// Outcome of [`cocycle_check`].
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<E> {
    Cocycle,
    /// `(b + B)c` is nonzero in the given degree.
    NotCocycle { degree: usize, residual: E },
}

impl<E> Verdict<E> {
    pub fn is_cocycle(&self) -> bool {
        matches!(self, Verdict::Cocycle)
    }
}

/// `(b + B)c` in every degree where it can be nonzero.
pub fn total_boundary<I: CyclicInstance>(inst: &I, c: &CyclicCochain<I::Elem>) -> BTreeMap<usize, I::Elem> {
    let mut out: BTreeMap<usize, I::Elem> = BTreeMap::new();
    for (&q, x) in &c.components {
        let bx = hochschild_b(inst, q + 1, x);
        let slot = out.entry(q + 1).or_insert_with(|| inst.zero(q + 1));
        *slot = slot.add(&bx);
        if q > 0 {
            let bbx = horizontal_b(inst, q - 1, x);
            let slot = out.entry(q - 1).or_insert_with(|| inst.zero(q - 1));
            *slot = slot.add(&bbx);
        }
    }
    out
}

/// Verifies `(b + B)c = 0` degreewise.
pub fn cocycle_check<I: CyclicInstance>(inst: &I, c: &CyclicCochain<I::Elem>) -> Verdict<I::Elem> {
    for (q, r) in total_boundary(inst, c) {
        if !r.is_zero() {
            return Verdict::NotCocycle { degree: q, residual: r };
        }
    }
    Verdict::Cocycle
}

/// The Hopf-cyclic module of ℋ in dimension `n`.
#[derive(Clone, Copy, Debug)]
pub struct HopfInstance {
    pub n: Idx,
    /// Maximal length of the random words placed in each slot.
    pub word_len: usize,
}

impl HopfInstance {
    pub fn new(n: Idx) -> Self {
        HopfInstance { n, word_len: 2 }
    }

    fn unit_slot(&self, key: &[Mono<crate::Atom>]) -> Vec<HElement> {
        key.iter().map(|m| HElement::from_body(self.n, Poly::mono(m.clone()))).collect()
    }
}

impl CyclicInstance for HopfInstance {
    type Elem = TensorElement;

    fn name(&self) -> String {
        format!("hopf n={}", self.n)
    }

    fn zero(&self, q: usize) -> TensorElement {
        TensorElement::zero(self.n, q)
    }

    fn degree(&self, x: &TensorElement) -> usize {
        x.arity()
    }

    fn face_unchecked(&self, i: usize, q: usize, x: &TensorElement) -> TensorElement {
        let n = self.n;
        if q == 1 {
            let b = x.to_coeff().expect("arity-0 tensor");
            let h = if i == 0 { HElement::beta(n, &b) } else { HElement::alpha(n, &b) };
            return TensorElement::from_element(&h);
        }
        if i > 0 && i < q {
            return apply_coproduct_at(x, i - 1);
        }
        let mut out = TensorElement::zero(n, q);
        for (key, c) in x.terms() {
            let mut nk = key.clone();
            if i == 0 {
                nk.insert(0, hopf_core::unit_body());
            } else {
                nk.push(hopf_core::unit_body());
            }
            out.add_term(nk, c.clone());
        }
        out
    }

    fn degeneracy_unchecked(&self, i: usize, _q: usize, x: &TensorElement) -> TensorElement {
        counit_at(x, i)
    }

    fn cyclic_unchecked(&self, q: usize, x: &TensorElement) -> TensorElement {
        if q == 0 {
            return x.clone();
        }
        let n = self.n;
        let mut cache: BTreeMap<Mono<crate::Atom>, TensorElement> = BTreeMap::new();
        let mut out = TensorElement::zero(n, q);
        for (key, c) in x.terms() {
            let left = cache.entry(key[0].clone()).or_insert_with(|| {
                let h = HElement::from_body(n, Poly::mono(key[0].clone()));
                iterated_coproduct(&antipode(&h), q)
            });
            let mut right = self.unit_slot(&key[1..]);
            right.push(HElement::one(n));
            out.add_assign(&left.mul_slots(&right).scale(c));
        }
        out
    }

    fn random_element(&self, rng: &mut SuiteRng, q: usize) -> TensorElement {
        let n = self.n;
        if q == 0 {
            return TensorElement::from_coeff(n, &random::random_coeff(rng, n, 1));
        }
        let mix = GenMix { coefficients: true, deltas: true, delta_depth: 1 };
        let mut out = TensorElement::zero(n, q);
        for _ in 0..rng.gen_range(1..=2) {
            let slots: Vec<HElement> = (0..q)
                .map(|_| {
                    let len = rng.gen_range(0..=self.word_len);
                    let w = random::random_word(rng, n, len, mix);
                    hopf_core::normalize(&hopf_core::Expr::Prod(w), n).expect("generated indices are in range")
                })
                .collect();
            let c = int(rng.gen_range(1..=3));
            out.add_assign(&TensorElement::from_slots(n, &slots).scale(&c));
        }
        out
    }
}

/// A finite-dimensional unital associative algebra with a normalized functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseAlgebra {
    pub labels: Vec<String>,
    /// `table[a][b]` is the product `e_a e_b` in the basis.
    pub table: Vec<Vec<Vec<Scalar>>>,
    pub unit: Vec<Scalar>,
    pub nu: Vec<Scalar>,
}

impl CoarseAlgebra {
    /// Validates dimensions, the unit law, associativity and `ν(1) = 1`.
    pub fn new(
        labels: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        nu: Vec<Scalar>,
    ) -> Result<Self, CyclicError> {
        let d = labels.len();
        let bad = |s: &str| Err(CyclicError::InvalidAlgebra(String::from(s)));
        if table.len() != d || table.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
            return bad("structure constants have the wrong shape");
        }
        if unit.len() != d || nu.len() != d {
            return bad("unit or functional has the wrong length");
        }
        let k = CoarseAlgebra { labels, table, unit, nu };
        for a in 0..d {
            let e = k.basis(a);
            if k.mul(&k.unit, &e) != e || k.mul(&e, &k.unit) != e {
                return bad("unit law fails");
            }
            for b in 0..d {
                for c in 0..d {
                    let (x, y, z) = (k.basis(a), k.basis(b), k.basis(c));
                    if k.mul(&k.mul(&x, &y), &z) != k.mul(&x, &k.mul(&y, &z)) {
                        return bad("multiplication is not associative");
                    }
                }
            }
        }
        if k.functional(&k.unit) != Scalar::one() {
            return bad("the functional does not take the value 1 on the unit");
        }
        Ok(k)
    }

    /// The dual numbers `ℚ[e]/(e²)` with `ν(e) = nu_e`.
    pub fn dual_numbers(nu_e: Scalar) -> Self {
        let (z, o) = (Scalar::zero(), Scalar::one());
        let table = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
        ];
        CoarseAlgebra::new(
            vec![String::from("1"), String::from("e")],
            table,
            vec![o.clone(), z.clone()],
            vec![o, nu_e],
        )
        .expect("the dual numbers form an algebra")
    }

    /// The 2×2 matrices with the normalized trace.
    pub fn matrices_2x2() -> Self {
        let idx = |i: usize, j: usize| 2 * i + j;
        let mut table = vec![vec![vec![Scalar::zero(); 4]; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    table[idx(i, j)][idx(j, l)][idx(i, l)] = Scalar::one();
                }
            }
        }
        let mut unit = vec![Scalar::zero(); 4];
        unit[idx(0, 0)] = Scalar::one();
        unit[idx(1, 1)] = Scalar::one();
        let mut nu = vec![Scalar::zero(); 4];
        nu[idx(0, 0)] = crate::poly::rat(1, 2);
        nu[idx(1, 1)] = crate::poly::rat(1, 2);
        let labels = ["e11", "e12", "e21", "e22"].iter().map(|s| String::from(*s)).collect();
        CoarseAlgebra::new(labels, table, unit, nu).expect("matrix units form an algebra")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn basis(&self, a: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[a] = Scalar::one();
        v
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (c, t) in self.table[a][b].iter().enumerate() {
                    if !t.is_zero() {
                        out[c] += xa * yb * t;
                    }
                }
            }
        }
        out
    }

    pub fn functional(&self, x: &[Scalar]) -> Scalar {
        x.iter().zip(&self.nu).map(|(a, b)| a * b).sum()
    }
}

/// An element of `𝒦^{⊗(q+1)}` in the basis of 𝒦.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseTensor {
    factors: usize,
    labels: Vec<String>,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl CoarseTensor {
    pub fn zero(k: &CoarseAlgebra, factors: usize) -> Self {
        CoarseTensor { factors, labels: k.labels.clone(), terms: BTreeMap::new() }
    }

    /// `x_1 ⊗ … ⊗ x_m` for vectors `x_s` in the basis of 𝒦.
    pub fn from_factors(k: &CoarseAlgebra, xs: &[Vec<Scalar>]) -> Self {
        let mut out = Self::zero(k, xs.len());
        let mut key = Vec::with_capacity(xs.len());
        fn go(out: &mut CoarseTensor, xs: &[Vec<Scalar>], key: &mut Vec<usize>, c: Scalar) {
            if key.len() == xs.len() {
                out.add_term(key.clone(), c);
                return;
            }
            for (a, v) in xs[key.len()].iter().enumerate() {
                if !v.is_zero() {
                    key.push(a);
                    go(out, xs, key, &c * v);
                    key.pop();
                }
            }
        }
        go(&mut out, xs, &mut key, Scalar::one());
        out
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn add_term(&mut self, key: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    /// Applies a map sending each basis tensor to a tensor, extended linearly.
    fn map_terms(&self, factors: usize, mut f: impl FnMut(&[usize]) -> CoarseTensor) -> Self {
        let mut out = CoarseTensor { factors, labels: self.labels.clone(), terms: BTreeMap::new() };
        for (key, c) in &self.terms {
            for (k2, c2) in f(key).terms {
                out.add_term(k2, c * c2);
            }
        }
        out
    }
}

impl Linear for CoarseTensor {
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    fn scale(&self, s: &Scalar) -> Self {
        let mut out = CoarseTensor { factors: self.factors, labels: self.labels.clone(), terms: BTreeMap::new() };
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for CoarseTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (key, c)) in self.terms.iter().enumerate() {
            match (pos, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if !abs.is_one() {
                fmt_scalar(&abs, f)?;
                write!(f, "*")?;
            }
            for (s, a) in key.iter().enumerate() {
                if s > 0 {
                    write!(f, " (x) ")?;
                }
                write!(f, "{}", self.labels[*a])?;
            }
        }
        Ok(())
    }
}

/// The cyclic module of the coarse algebroid over 𝒦.
#[derive(Clone, Debug)]
pub struct CoarseInstance {
    pub algebra: CoarseAlgebra,
}

impl CoarseInstance {
    fn basis_tensor(&self, key: &[usize]) -> Vec<Vec<Scalar>> {
        key.iter().map(|&a| self.algebra.basis(a)).collect()
    }
}

impl CyclicInstance for CoarseInstance {
    type Elem = CoarseTensor;

    fn name(&self) -> String {
        format!("coarse dim={}", self.algebra.dim())
    }

    fn zero(&self, q: usize) -> CoarseTensor {
        CoarseTensor::zero(&self.algebra, q + 1)
    }

    fn degree(&self, x: &CoarseTensor) -> usize {
        x.factors - 1
    }

    fn face_unchecked(&self, i: usize, q: usize, x: &CoarseTensor) -> CoarseTensor {
        x.map_terms(q + 1, |key| {
            let mut fs = self.basis_tensor(key);
            fs.insert(i, self.algebra.unit.clone());
            CoarseTensor::from_factors(&self.algebra, &fs)
        })
    }

    fn degeneracy_unchecked(&self, i: usize, q: usize, x: &CoarseTensor) -> CoarseTensor {
        x.map_terms(q + 1, |key| {
            let mut fs = self.basis_tensor(key);
            let right = fs.remove(i + 1);
            fs[i] = self.algebra.mul(&fs[i], &right);
            CoarseTensor::from_factors(&self.algebra, &fs)
        })
    }

    fn cyclic_unchecked(&self, q: usize, x: &CoarseTensor) -> CoarseTensor {
        x.map_terms(q + 1, |key| {
            let mut k = key.to_vec();
            k.rotate_left(1);
            let mut t = CoarseTensor::zero(&self.algebra, q + 1);
            t.add_term(k, Scalar::one());
            t
        })
    }

    fn random_element(&self, rng: &mut SuiteRng, q: usize) -> CoarseTensor {
        let mut out = CoarseTensor::zero(&self.algebra, q + 1);
        for _ in 0..rng.gen_range(1..=3) {
            let key = (0..=q).map(|_| rng.gen_range(0..self.algebra.dim())).collect();
            out.add_term(key, int(rng.gen_range(-3..=3)));
        }
        out
    }
}

/// The contracting homotopy `s(k^1 ⊗ … ⊗ k^{q+1}) = ν(k^1) k^2 ⊗ … ⊗ k^{q+1}`.
pub fn coarse_homotopy_s(inst: &CoarseInstance, q: usize, x: &CoarseTensor) -> CoarseTensor {
    assert!(q >= 1, "the homotopy lowers a positive degree");
    x.map_terms(q, |key| {
        let mut t = CoarseTensor::zero(&inst.algebra, q);
        t.add_term(key[1..].to_vec(), inst.algebra.nu[key[0]].clone());
        t
    })
}

fn record<E: Linear>(checks: &mut BTreeMap<String, Check>, name: String, lhs: &E, rhs: &E, input: &E) {
    let ok = lhs == rhs;
    let c = checks.entry(name.clone()).or_insert_with(|| Check::new(&name));
    c.record(ok, &|| format!("input {input}: {lhs} != {rhs}"));
}

/// Checks the simplicial and cyclic identities and the (b, B) relations.
///
/// Every object involved in a checked identity has degree at most `max_q`.
pub fn cyclic_suite<I: CyclicInstance>(inst: &I, max_q: usize, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(&format!("cyclic structure ({})", inst.name()));
    let mut checks: BTreeMap<String, Check> = BTreeMap::new();
    let mut rng = random::rng(seed);
    let d = |i, q, x: &I::Elem| inst.face_unchecked(i, q, x);
    let s = |i, q, x: &I::Elem| inst.degeneracy_unchecked(i, q, x);
    let t = |q, x: &I::Elem| inst.cyclic_unchecked(q, x);
    for _ in 0..samples {
        for q in 0..=max_q {
            let x = inst.random_element(&mut rng, q);
            // faces and degeneracies landing in C^{q+1} or C^{q+2}
            for j in 0..=q + 2 {
                for i in 0..j {
                    if q + 2 <= max_q {
                        let lhs = d(j, q + 2, &d(i, q + 1, &x));
                        let rhs = d(i, q + 2, &d(j - 1, q + 1, &x));
                        record(&mut checks, String::from("face-face"), &lhs, &rhs, &x);
                    }
                }
            }
            if q >= 2 {
                for j in 0..=q - 2 {
                    for i in 0..=j {
                        let lhs = s(j, q - 2, &s(i, q - 1, &x));
                        let rhs = s(i, q - 2, &s(j + 1, q - 1, &x));
                        record(&mut checks, String::from("degeneracy-degeneracy"), &lhs, &rhs, &x);
                    }
                }
            }
            if q < max_q {
                for j in 0..=q {
                    for i in 0..=q + 1 {
                        let lhs = s(j, q, &d(i, q + 1, &x));
                        let rhs = if i < j {
                            d(i, q, &s(j - 1, q - 1, &x))
                        } else if i == j || i == j + 1 {
                            x.clone()
                        } else {
                            d(i - 1, q, &s(j, q - 1, &x))
                        };
                        record(&mut checks, String::from("degeneracy-face"), &lhs, &rhs, &x);
                    }
                }
                for i in 1..=q + 1 {
                    let lhs = t(q + 1, &d(i, q + 1, &x));
                    let rhs = d(i - 1, q + 1, &t(q, &x));
                    record(&mut checks, String::from("cyclic-face"), &lhs, &rhs, &x);
                }
                let lhs = t(q + 1, &d(0, q + 1, &x));
                let rhs = d(q + 1, q + 1, &x);
                record(&mut checks, String::from("cyclic-first-face"), &lhs, &rhs, &x);
            }
            if q >= 1 {
                for i in 1..q {
                    let lhs = t(q - 1, &s(i, q - 1, &x));
                    let rhs = s(i - 1, q - 1, &t(q, &x));
                    record(&mut checks, String::from("cyclic-degeneracy"), &lhs, &rhs, &x);
                }
                let lhs = t(q - 1, &s(0, q - 1, &x));
                let rhs = s(q - 1, q - 1, &t(q, &t(q, &x)));
                record(&mut checks, String::from("cyclic-first-degeneracy"), &lhs, &rhs, &x);
            }
            let mut y = x.clone();
            for _ in 0..=q {
                y = t(q, &y);
            }
            record(&mut checks, String::from("cyclic-order"), &y, &x, &x);
            if q + 2 <= max_q {
                let bb = hochschild_b(inst, q + 2, &hochschild_b(inst, q + 1, &x));
                record(&mut checks, String::from("b-squared"), &bb, &inst.zero(q + 2), &x);
            }
            if q >= 2 {
                let bb = horizontal_b(inst, q - 2, &horizontal_b(inst, q - 1, &x));
                record(&mut checks, String::from("B-squared"), &bb, &inst.zero(q - 2), &x);
            }
            if q < max_q {
                let mut anti = horizontal_b(inst, q, &hochschild_b(inst, q + 1, &x));
                if q >= 1 {
                    anti = anti.add(&hochschild_b(inst, q, &horizontal_b(inst, q - 1, &x)));
                }
                record(&mut checks, String::from("bB-anticommute"), &anti, &inst.zero(q), &x);
            }
        }
    }
    for (_, c) in checks {
        report.push(c);
    }
    report
}

/// Checks `s δ_0 = id` and `s δ_i = δ_{i−1} s` for `1 ≤ i ≤ q` on random elements.
pub fn homotopy_suite(inst: &CoarseInstance, max_q: usize, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(&format!("coarse homotopy ({})", inst.name()));
    let mut checks: BTreeMap<String, Check> = BTreeMap::new();
    let mut rng = random::rng(seed);
    for _ in 0..samples {
        for q in 1..=max_q {
            let x = inst.random_element(&mut rng, q - 1);
            let lhs = coarse_homotopy_s(inst, q, &inst.face_unchecked(0, q, &x));
            record(&mut checks, String::from("s-first-face"), &lhs, &x, &x);
            for i in 1..=q {
                if q >= 2 {
                    let lhs = coarse_homotopy_s(inst, q, &inst.face_unchecked(i, q, &x));
                    let rhs = inst.face_unchecked(i - 1, q - 1, &coarse_homotopy_s(inst, q - 1, &x));
                    record(&mut checks, String::from("s-face"), &lhs, &rhs, &x);
                }
            }
        }
    }
    for (_, c) in checks {
        report.push(c);
    }
    report
}

/// The cochain `{1: δ^i_{jk}}` of the Hopf instance.
pub fn delta_cochain(n: Idx, i: Idx, j: Idx, k: Idx) -> CyclicCochain<TensorElement> {
    let d = TensorElement::from_element(&HElement::delta(n, i, j, k, &[]));
    CyclicCochain::new(Parity::Odd).with(1, d)
}

/// The cochain `{0: r}` of the Hopf instance.
pub fn coefficient_cochain(n: Idx, r: &CoeffPoly) -> CyclicCochain<TensorElement> {
    CyclicCochain::new(Parity::Even).with(0, TensorElement::from_coeff(n, r))
}
