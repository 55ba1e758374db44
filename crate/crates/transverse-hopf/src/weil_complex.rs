//! The truncated Weil complex of `gl(n)`.
//!
//! Free graded-commutative algebra on the connection generators `θ^i_j`
//! (degree 1) and the curvature generators `R^i_j` (degree 2) with
//!
//! ```text
//! dθ^i_j = R^i_j − Σ_k θ^i_k θ^k_j
//! dR^i_j = Σ_k (R^i_k θ^k_j − θ^i_k R^k_j)
//! ```
//!
//! Monomials with more than `cap` curvature factors vanish; the cap
//! defaults to `n`. Characteristic classes use unit normalization: no
//! factors of `2πi` are inserted.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::coeff_ring::{check_index, CoeffError, Idx};
use crate::exterior::merge_odd;
use crate::poly::{fmt_scalar, int, Scalar};
use crate::random::SuiteRng;
use crate::suite::{Check, SuiteReport};

/// Errors raised by the Weil complex.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeilError {
    #[error("unknown class {0}")]
    UnknownClass(String),
    #[error("chern({k}) requires k <= n = {n}")]
    ChernOutOfRange { k: usize, n: Idx },
    #[error(transparent)]
    Index(#[from] CoeffError),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(Idx, Idx),
}

/// A monomial `θ_{a_1}…θ_{a_p} R_{b_1}^{e_1}…` with the θ's strictly
/// increasing and the curvature factors sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WeilMono {
    thetas: Vec<(Idx, Idx)>,
    curvs: Vec<((Idx, Idx), u32)>,
}

impl WeilMono {
    pub fn thetas(&self) -> &[(Idx, Idx)] {
        &self.thetas
    }

    pub fn curvs(&self) -> &[((Idx, Idx), u32)] {
        &self.curvs
    }

    pub fn curvature_count(&self) -> u32 {
        self.curvs.iter().map(|(_, e)| e).sum()
    }

    pub fn degree(&self) -> usize {
        self.thetas.len() + 2 * self.curvature_count() as usize
    }

    /// The product, with `true` when the θ-reordering is odd.
    fn mul(&self, other: &Self) -> Option<(Self, bool)> {
        let (thetas, odd) = merge_odd(&self.thetas, &other.thetas)?;
        let mut map: BTreeMap<(Idx, Idx), u32> = self.curvs.iter().cloned().collect();
        for (g, e) in &other.curvs {
            *map.entry(*g).or_insert(0) += e;
        }
        Some((WeilMono { thetas, curvs: map.into_iter().collect() }, odd))
    }
}

/// An element of the truncated Weil complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilForm {
    n: Idx,
    cap: u32,
    terms: BTreeMap<WeilMono, Scalar>,
}

impl WeilForm {
    pub fn zero(n: Idx) -> Self {
        WeilForm { n, cap: n as u32, terms: BTreeMap::new() }
    }

    pub fn one(n: Idx) -> Self {
        Self::scalar(n, Scalar::one())
    }

    pub fn scalar(n: Idx, c: Scalar) -> Self {
        let mut w = Self::zero(n);
        w.add_term(WeilMono::default(), c);
        w
    }

    /// Replaces the truncation cap, dropping monomials above it.
    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self.terms.retain(|m, _| m.curvature_count() <= cap);
        self
    }

    pub fn theta(n: Idx, i: Idx, j: Idx) -> Self {
        let mut w = Self::zero(n);
        w.add_term(WeilMono { thetas: alloc::vec![(i, j)], curvs: Vec::new() }, Scalar::one());
        w
    }

    pub fn curv(n: Idx, i: Idx, j: Idx) -> Self {
        let mut w = Self::zero(n);
        w.add_term(WeilMono { thetas: Vec::new(), curvs: alloc::vec![((i, j), 1)] }, Scalar::one());
        w
    }

    /// `θ^i_j`, validating the indices.
    pub fn try_theta(n: Idx, i: Idx, j: Idx) -> Result<Self, WeilError> {
        check_index(i, n)?;
        check_index(j, n)?;
        Ok(Self::theta(n, i, j))
    }

    /// `R^i_j`, validating the indices.
    pub fn try_curv(n: Idx, i: Idx, j: Idx) -> Result<Self, WeilError> {
        check_index(i, n)?;
        check_index(j, n)?;
        Ok(Self::curv(n, i, j))
    }

    pub fn n(&self) -> Idx {
        self.n
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeilMono, &Scalar)> {
        self.terms.iter()
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

    /// The common degree of all terms, if the form is homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(WeilMono::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// The homogeneous component of degree `d`.
    pub fn component(&self, d: usize) -> Self {
        let mut out = Self::zero(self.n).with_cap(self.cap);
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn add_term(&mut self, m: WeilMono, c: Scalar) {
        if c.is_zero() || m.curvature_count() > self.cap {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
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
        let mut out = Self::zero(self.n).with_cap(self.cap);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    /// The graded-commutative product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n).with_cap(self.cap.min(other.cap));
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                if let Some((m, odd)) = a.mul(b) {
                    let v = c * d;
                    out.add_term(m, if odd { -v } else { v });
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.n).with_cap(self.cap);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    fn like(&self, m: WeilMono) -> Self {
        let mut w = Self::zero(self.n).with_cap(self.cap);
        w.add_term(m, Scalar::one());
        w
    }

    /// Applies a graded derivation of odd degree given on generators.
    fn odd_derivation(&self, on_theta: impl Fn(Idx, Idx) -> Self, on_curv: impl Fn(Idx, Idx) -> Self) -> Self {
        let mut out = Self::zero(self.n).with_cap(self.cap);
        for (m, c) in &self.terms {
            let curv_part = self.like(WeilMono { thetas: Vec::new(), curvs: m.curvs.clone() });
            for s in 0..m.thetas.len() {
                let before = self.like(WeilMono { thetas: m.thetas[..s].to_vec(), curvs: Vec::new() });
                let after = self.like(WeilMono { thetas: m.thetas[s + 1..].to_vec(), curvs: Vec::new() });
                let (i, j) = m.thetas[s];
                let mut t = before.mul(&on_theta(i, j)).mul(&after).mul(&curv_part);
                if s % 2 == 1 {
                    t = t.neg();
                }
                out.add_assign(&t.scale(c));
            }
            let theta_part = self.like(WeilMono { thetas: m.thetas.clone(), curvs: Vec::new() });
            for (pos, ((i, j), e)) in m.curvs.iter().enumerate() {
                let mut rest = m.curvs.clone();
                if *e == 1 {
                    rest.remove(pos);
                } else {
                    rest[pos].1 -= 1;
                }
                let rest = self.like(WeilMono { thetas: Vec::new(), curvs: rest });
                let mut t = theta_part.mul(&on_curv(*i, *j)).mul(&rest);
                if m.thetas.len() % 2 == 1 {
                    t = t.neg();
                }
                out.add_assign(&t.scale(&(c * int(*e as i64))));
            }
        }
        out
    }

    /// The Weil differential, truncation applied.
    pub fn d(&self) -> Self {
        let n = self.n;
        let cap = self.cap;
        let th = |i, j| Self::theta(n, i, j).with_cap(cap);
        let r = |i, j| Self::curv(n, i, j).with_cap(cap);
        self.odd_derivation(
            |i, j| {
                let mut out = r(i, j);
                for k in 1..=n {
                    out = out.sub(&th(i, k).mul(&th(k, j)));
                }
                out
            },
            |i, j| {
                let mut out = Self::zero(n).with_cap(cap);
                for k in 1..=n {
                    out = out.add(&r(i, k).mul(&th(k, j))).sub(&th(i, k).mul(&r(k, j)));
                }
                out
            },
        )
    }

    pub fn is_closed(&self) -> bool {
        self.d().is_zero()
    }

    /// The contraction `ι_A` by a matrix `A` of the Lie algebra.
    pub fn contract(&self, a: &Matrix) -> Self {
        let n = self.n;
        let cap = self.cap;
        self.odd_derivation(
            |i, j| Self::scalar(n, a.get(i, j)).with_cap(cap),
            |_, _| Self::zero(n).with_cap(cap),
        )
    }

    /// The Lie derivative `L_A = d ι_A + ι_A d`.
    pub fn lie(&self, a: &Matrix) -> Self {
        self.contract(a).d().add(&self.d().contract(a))
    }

    /// `true` when `ι_A w = 0` and `L_A w = 0` for every given `A`.
    pub fn is_basic(&self, gens: &[Matrix]) -> bool {
        gens.iter().all(|a| self.contract(a).is_zero() && self.lie(a).is_zero())
    }
}

/// A square matrix of rationals, indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: Idx,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(n: Idx) -> Self {
        Matrix { n, entries: alloc::vec![Scalar::zero(); n as usize * n as usize] }
    }

    pub fn get(&self, i: Idx, j: Idx) -> Scalar {
        self.entries[(i as usize - 1) * self.n as usize + (j as usize - 1)].clone()
    }

    pub fn set(&mut self, i: Idx, j: Idx, v: Scalar) {
        self.entries[(i as usize - 1) * self.n as usize + (j as usize - 1)] = v;
    }

    pub fn is_antisymmetric(&self) -> bool {
        (1..=self.n).all(|i| (1..=self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }
}

/// The basis `E_ij − E_ji`, `i < j`, of `so(n)`.
pub fn so_basis(n: Idx) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let mut a = Matrix::zero(n);
            a.set(i, j, Scalar::one());
            a.set(j, i, -Scalar::one());
            out.push(a);
        }
    }
    out
}

/// `tr(R^k)`, the sum over cyclic index contractions.
pub fn chern(n: Idx, k: usize) -> Result<WeilForm, WeilError> {
    if k > n as usize || k == 0 {
        return Err(WeilError::ChernOutOfRange { k, n });
    }
    let mut out = WeilForm::zero(n);
    let mut idx = alloc::vec![1 as Idx; k];
    loop {
        let mut t = WeilForm::one(n);
        for s in 0..k {
            t = t.mul(&WeilForm::curv(n, idx[s], idx[(s + 1) % k]));
        }
        out.add_assign(&t);
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(out);
            }
            if idx[pos] < n {
                idx[pos] += 1;
                break;
            }
            idx[pos] = 1;
            pos += 1;
        }
    }
}

/// `h_1 = Σ θ^i_i`.
pub fn h1(n: Idx) -> WeilForm {
    let mut out = WeilForm::zero(n);
    for i in 1..=n {
        out.add_assign(&WeilForm::theta(n, i, i));
    }
    out
}

/// The Godbillon–Vey form `h_1 · c_1^n`.
pub fn gv(n: Idx) -> WeilForm {
    let c1 = chern(n, 1).expect("n >= 1");
    h1(n).mul(&c1.pow(n as u32))
}

/// Builds a named class: `chern(k)` / `c<k>`, `h1` or `gv`.
pub fn class_builder(n: Idx, name: &str) -> Result<WeilForm, WeilError> {
    let name = name.trim();
    match name {
        "h1" => Ok(h1(n)),
        "gv" => Ok(gv(n)),
        _ => {
            let k = name
                .strip_prefix("chern(")
                .and_then(|s| s.strip_suffix(')'))
                .or_else(|| name.strip_prefix('c'))
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| WeilError::UnknownClass(String::from(name)))?;
            chern(n, k)
        }
    }
}

/// A random form of degree at most `max_degree` with a few small terms.
pub fn random_form(rng: &mut SuiteRng, n: Idx, max_degree: usize) -> WeilForm {
    let mut out = WeilForm::zero(n).with_cap(n as u32);
    for _ in 0..rng.gen_range(1..=3) {
        let deg = rng.gen_range(0..=max_degree);
        let curvs = rng.gen_range(0..=deg / 2);
        let mut t = WeilForm::scalar(n, int(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }));
        for _ in 0..curvs {
            t = t.mul(&WeilForm::curv(n, rng.gen_range(1..=n), rng.gen_range(1..=n)));
        }
        for _ in 0..deg - 2 * curvs {
            t = t.mul(&WeilForm::theta(n, rng.gen_range(1..=n), rng.gen_range(1..=n)));
        }
        out.add_assign(&t);
    }
    out
}

/// `d∘d = 0`, truncation closure, closedness and basicness of the classes.
pub fn weil_suite(max_n: Idx, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("weil complex");
    let mut rng = crate::random::rng(seed);
    let mut dd = Check::new("d-squared");
    let mut trunc = Check::new("truncation ideal is differential");
    let mut closed = Check::new("chern classes closed");
    let mut basic = Check::new("chern classes basic");
    let mut dh1 = Check::new("d(h1) = chern(1)");
    let mut gv_closed = Check::new("gv closed");
    for n in 1..=max_n {
        for _ in 0..samples {
            let w = random_form(&mut rng, n, 2 * n as usize + 2);
            dd.record(w.d().d().is_zero(), &|| alloc::format!("n = {n}, w = {w}"));
            let wide = random_form(&mut rng, n, 2 * n as usize + 2).with_cap(n as u32 + 2);
            let high = WeilForm::curv(n, 1, 1).with_cap(n as u32 + 2).pow(n as u32 + 1).mul(&wide);
            let ok = high.d().with_cap(n as u32).is_zero();
            trunc.record(ok, &|| alloc::format!("n = {n}, w = {high}"));
        }
        for k in 1..=n as usize {
            let c = chern(n, k).expect("k <= n");
            closed.record(c.is_closed(), &|| alloc::format!("n = {n}, k = {k}"));
            basic.record(c.is_basic(&so_basis(n)), &|| alloc::format!("n = {n}, k = {k}"));
        }
        dh1.record(h1(n).d() == chern(n, 1).expect("n >= 1"), &|| alloc::format!("n = {n}"));
        gv_closed.record(gv(n).is_closed(), &|| alloc::format!("n = {n}"));
    }
    for c in [dd, trunc, closed, basic, dh1, gv_closed] {
        report.push(c);
    }
    report
}

impl fmt::Display for WeilMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j) in &self.thetas {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "th[{i},{j}]")?;
        }
        for ((i, j), e) in &self.curvs {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "R[{i},{j}]")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for WeilForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let unit = m.thetas.is_empty() && m.curvs.is_empty();
            if unit {
                fmt_scalar(&a, f)?;
            } else {
                if !a.is_one() {
                    fmt_scalar(&a, f)?;
                    write!(f, "*")?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_theta_and_truncation() {
        let th = WeilForm::theta(1, 1, 1);
        let r = WeilForm::curv(1, 1, 1);
        assert_eq!(th.d(), r);
        assert!(th.d().d().is_zero());
        assert!(th.mul(&r).d().is_zero());
        assert_eq!(gv(1), th.mul(&r));
        let d2 = WeilForm::theta(2, 1, 2).d();
        let expect = WeilForm::curv(2, 1, 2)
            .sub(&WeilForm::theta(2, 1, 1).mul(&WeilForm::theta(2, 1, 2)))
            .sub(&WeilForm::theta(2, 1, 2).mul(&WeilForm::theta(2, 2, 2)));
        assert_eq!(d2, expect);
    }

    #[test]
    fn basic_examples() {
        assert!(chern(2, 1).unwrap().is_basic(&so_basis(2)));
        assert!(!WeilForm::theta(2, 1, 2).is_basic(&so_basis(2)));
        assert!(WeilForm::one(2).is_basic(&so_basis(2)));
    }

    #[test]
    fn class_names() {
        assert_eq!(class_builder(2, "c1").unwrap(), chern(2, 1).unwrap());
        assert_eq!(class_builder(2, "chern(2)").unwrap(), chern(2, 2).unwrap());
        assert!(class_builder(2, "chern(3)").is_err());
        assert!(class_builder(2, "pontryagin").is_err());
    }

    #[test]
    fn suite_passes() {
        let r = weil_suite(3, 10, 5);
        assert!(r.passed(), "{r}");
    }
}
