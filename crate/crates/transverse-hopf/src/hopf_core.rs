//! The algebra ℋ of transverse differential operators in PBW normal form.
//!
//! Every element is stored as `Σ α(P) β(Q) δ_κ X_I Y_J` with the generator
//! classes ordered `α < β < δ < X < Y`. A term is a single coefficient-ring
//! monomial in which
//!
//! * the δ-generators are jet symbols `γ(@)` of the acting group element,
//! * `β(b)` is the pulled-back function `b∘φ̃` along the same element,
//! * the word `X_I Y_J` is a reserved base function `@` carrying that
//!   derivation word.
//!
//! With this encoding left multiplication by `X_k` or `Y_i^j` is the ring
//! derivation itself, so the commutation relations of ℋ coincide with the
//! reordering rules of [`crate::coeff_ring`]. In particular the pull-back
//! rule reproduces
//!
//! ```text
//! Y_i^j β(b) = β(b) Y_i^j + β(Y_i^j b)
//! X_k β(b)   = β(b) X_k + β(X_k b) + Σ β(Y_i^j b) δ^i_{jk}
//! ```

use alloc::boxed::Box;
use alloc::format;
use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use num_traits::{One, Signed};

use crate::coeff_ring::{self, apply, check_index, Atom, CoeffError, CoeffPoly, Der, Diffeo, Idx};
use crate::limits;
use crate::random;
use crate::suite::{Check, SuiteReport};
use crate::poly::{fmt_scalar, Mono, Poly, Scalar};

/// Name of the reserved base function carrying the `X_I Y_J` word.
pub const WORD_MARKER: &str = "@";

/// Errors raised by algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HopfError {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(Idx, Idx),
    #[error("invalid δ-generator: {0}")]
    InvalidDelta(alloc::string::String),
}

/// The δ-generator `δ^i_{jk,ells}` with `j ≤ k` and `ells` nondecreasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaGen {
    pub i: Idx,
    pub j: Idx,
    pub k: Idx,
    pub ells: Vec<Idx>,
}

impl DeltaGen {
    pub fn atom(&self) -> Atom {
        Atom::Gamma { phi: Diffeo::Slot, i: self.i, j: self.j, k: self.k, ells: self.ells.clone() }
    }

    pub fn from_atom(a: &Atom) -> Option<Self> {
        match a {
            Atom::Gamma { phi: Diffeo::Slot, i, j, k, ells } => {
                Some(DeltaGen { i: *i, j: *j, k: *k, ells: ells.clone() })
            }
            _ => None,
        }
    }
}

impl fmt::Display for DeltaGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D[{};{},{}", self.i, self.j, self.k)?;
        if !self.ells.is_empty() {
            write!(f, ";")?;
            for (pos, l) in self.ells.iter().enumerate() {
                if pos > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{l}")?;
            }
        }
        write!(f, "]")
    }
}

/// Builds the word marker atom for `X_xs Y_ys`.
pub fn word_atom(xs: Vec<Idx>, ys: Vec<(Idx, Idx)>) -> Atom {
    Atom::Fn { name: marker_name(), xs, ys }
}

fn marker_name() -> Arc<str> {
    Arc::from(WORD_MARKER)
}

fn is_delta(a: &Atom) -> bool {
    matches!(a, Atom::Gamma { phi: Diffeo::Slot, .. })
}

/// The parts of a body monomial `α(P) β(Q) δ_κ X_I Y_J`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BodyParts {
    pub alpha: Mono<Atom>,
    pub beta: Mono<Atom>,
    pub kappa: Mono<Atom>,
    pub xs: Vec<Idx>,
    pub ys: Vec<(Idx, Idx)>,
}

impl BodyParts {
    pub fn word_len(&self) -> usize {
        self.kappa.degree() as usize + self.xs.len() + self.ys.len()
    }

    pub fn is_trivial_word(&self) -> bool {
        self.kappa.is_one() && self.xs.is_empty() && self.ys.is_empty()
    }

    pub fn kappa_gens(&self) -> Vec<DeltaGen> {
        let mut out = Vec::new();
        for (a, e) in self.kappa.factors() {
            let g = DeltaGen::from_atom(a).expect("κ holds δ-generators only");
            for _ in 0..*e {
                out.push(g.clone());
            }
        }
        out
    }

    /// Reassembles the body monomial.
    pub fn join(&self) -> Mono<Atom> {
        join_body(&self.alpha, &self.beta, &self.kappa, self.xs.clone(), self.ys.clone())
    }
}

/// Splits a body monomial into α-part, β-part, δ-part and derivation word.
pub fn split_body(m: &Mono<Atom>) -> BodyParts {
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut kappa = Vec::new();
    let mut word = (Vec::new(), Vec::new());
    for (a, e) in m.factors() {
        match a {
            Atom::Fn { name, xs, ys } if &**name == WORD_MARKER => word = (xs.clone(), ys.clone()),
            Atom::Pull { phi: Diffeo::Slot, inner } => beta.push(((**inner).clone(), *e)),
            _ if is_delta(a) => kappa.push((a.clone(), *e)),
            _ => alpha.push((a.clone(), *e)),
        }
    }
    BodyParts {
        alpha: Mono::from_factors(alpha),
        beta: Mono::from_factors(beta),
        kappa: Mono::from_factors(kappa),
        xs: word.0,
        ys: word.1,
    }
}

/// The β-embedding of a monomial, as body atoms.
pub fn beta_mono(m: &Mono<Atom>) -> Mono<Atom> {
    Mono::from_factors(
        m.factors()
            .iter()
            .map(|(a, e)| (Atom::Pull { phi: Diffeo::Slot, inner: Box::new(a.clone()) }, *e))
            .collect(),
    )
}

/// Reassembles a body monomial.
pub fn join_body(
    alpha: &Mono<Atom>,
    beta: &Mono<Atom>,
    kappa: &Mono<Atom>,
    xs: Vec<Idx>,
    ys: Vec<(Idx, Idx)>,
) -> Mono<Atom> {
    alpha.mul(&beta_mono(beta)).mul(kappa).mul(&Mono::atom(word_atom(xs, ys)))
}

/// The body of the unit.
pub fn unit_body() -> Mono<Atom> {
    Mono::atom(word_atom(Vec::new(), Vec::new()))
}

/// An element of ℋ for a fixed dimension `n`.
///
/// The body is a coefficient-ring polynomial whose monomials each carry
/// exactly one word marker; β-coefficients appear as pull-backs along the
/// slot diffeomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HElement {
    n: Idx,
    body: CoeffPoly,
}

/// One PBW basis term `c · α(P) β(Q) δ_κ X_I Y_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwTerm {
    pub coeff: Scalar,
    pub alpha: Mono<Atom>,
    pub beta: Mono<Atom>,
    pub kappa: Vec<DeltaGen>,
    pub xs: Vec<Idx>,
    pub ys: Vec<(Idx, Idx)>,
}

impl PbwTerm {
    pub fn word_len(&self) -> usize {
        self.kappa.len() + self.xs.len() + self.ys.len()
    }
}

impl HElement {
    pub fn zero(n: Idx) -> Self {
        HElement { n, body: Poly::zero() }
    }

    pub fn one(n: Idx) -> Self {
        Self::from_body(n, Poly::mono(unit_body()))
    }

    pub fn scalar(n: Idx, c: Scalar) -> Self {
        Self::from_body(n, Poly::term(unit_body(), c))
    }

    /// `α(p)`.
    pub fn alpha(n: Idx, p: &CoeffPoly) -> Self {
        Self::from_body(n, p.mul(&Poly::mono(unit_body())))
    }

    /// `β(q)`.
    pub fn beta(n: Idx, q: &CoeffPoly) -> Self {
        Self::from_body(n, coeff_ring::pull(&Diffeo::Slot, q).mul(&Poly::mono(unit_body())))
    }

    /// `X_k`.
    pub fn x(n: Idx, k: Idx) -> Self {
        Self::one(n).left_der(Der::X(k))
    }

    /// `Y_i^j`.
    pub fn y(n: Idx, i: Idx, j: Idx) -> Self {
        Self::one(n).left_der(Der::Y(i, j))
    }

    /// `δ^i_{jk,ells}` for an arbitrary derivative list `ells`.
    pub fn delta(n: Idx, i: Idx, j: Idx, k: Idx, ells: &[Idx]) -> Self {
        let g = coeff_ring::gamma_derived(Diffeo::Slot, i, j, k, ells, n);
        Self::from_body(n, g.mul(&Poly::mono(unit_body())))
    }

    /// Wraps a body polynomial; every monomial must carry one word marker.
    pub fn from_body(n: Idx, body: CoeffPoly) -> Self {
        HElement { n, body }
    }

    pub fn n(&self) -> Idx {
        self.n
    }

    pub fn body(&self) -> &CoeffPoly {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Number of PBW terms.
    pub fn len(&self) -> usize {
        self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_empty()
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.body.add_assign(&other.body);
    }

    pub fn add(&self, other: &Self) -> Self {
        HElement { n: self.n, body: self.body.add(&other.body) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        HElement { n: self.n, body: self.body.sub(&other.body) }
    }

    pub fn neg(&self) -> Self {
        HElement { n: self.n, body: self.body.neg() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        HElement { n: self.n, body: self.body.scale(s) }
    }

    /// Left multiplication by `X_k` or `Y_i^j`.
    pub fn left_der(&self, d: Der) -> Self {
        let body = apply(&self.body, d, self.n);
        limits::check_terms(body.len());
        HElement { n: self.n, body }
    }

    /// Left multiplication by `α(p)`; δ-generators may be passed as `γ(@)` polynomials.
    pub fn left_alpha(&self, p: &CoeffPoly) -> Self {
        HElement { n: self.n, body: p.mul(&self.body) }
    }

    /// Left multiplication by `β(q)`.
    pub fn left_beta(&self, q: &CoeffPoly) -> Self {
        self.left_alpha(&coeff_ring::pull(&Diffeo::Slot, q))
    }

    /// Left multiplication by the word `X_xs Y_ys`.
    pub fn left_word(&self, xs: &[Idx], ys: &[(Idx, Idx)]) -> Self {
        let mut w = self.clone();
        for &(i, j) in ys.iter().rev() {
            w = w.left_der(Der::Y(i, j));
        }
        for &k in xs.iter().rev() {
            w = w.left_der(Der::X(k));
        }
        w
    }

    /// The product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut by_word: BTreeMap<(Vec<Idx>, Vec<(Idx, Idx)>), CoeffPoly> = BTreeMap::new();
        for (m, c) in self.body.terms() {
            let parts = split_body(m);
            let prefix = parts.alpha.mul(&beta_mono(&parts.beta)).mul(&parts.kappa);
            by_word.entry((parts.xs, parts.ys)).or_default().add_term(prefix, c.clone());
        }
        let mut body = Poly::zero();
        for ((xs, ys), prefix) in by_word {
            let w = other.left_word(&xs, &ys);
            body.add_assign(&prefix.mul(&w.body));
        }
        limits::check_terms(body.len());
        HElement { n: self.n, body }
    }

    /// Checked product.
    pub fn try_mul(&self, other: &Self) -> Result<Self, HopfError> {
        if self.n != other.n {
            return Err(HopfError::DimensionMismatch(self.n, other.n));
        }
        Ok(self.mul(other))
    }

    /// `self · other − other · self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Decomposes into PBW basis terms in canonical display order.
    pub fn pbw_terms(&self) -> Vec<PbwTerm> {
        let mut out: Vec<PbwTerm> = self
            .body
            .terms()
            .map(|(m, c)| {
                let parts = split_body(m);
                PbwTerm {
                    coeff: c.clone(),
                    kappa: parts.kappa_gens(),
                    alpha: parts.alpha,
                    beta: parts.beta,
                    xs: parts.xs,
                    ys: parts.ys,
                }
            })
            .collect();
        out.sort_by(|a, b| {
            (Reverse(a.word_len()), &a.kappa, &a.xs, &a.ys, &a.alpha, &a.beta).cmp(&(
                Reverse(b.word_len()),
                &b.kappa,
                &b.xs,
                &b.ys,
                &b.alpha,
                &b.beta,
            ))
        });
        out
    }

    /// Applies a ring map separately to the α- and β-coefficients.
    pub fn map_coefficients(&self, mut f: impl FnMut(&CoeffPoly) -> CoeffPoly) -> Self {
        let mut body = Poly::zero();
        for (m, c) in self.body.terms() {
            let parts = split_body(m);
            let a = f(&Poly::term(parts.alpha.clone(), c.clone()));
            let b = coeff_ring::pull(&Diffeo::Slot, &f(&Poly::mono(parts.beta.clone())));
            let word = join_body(&Mono::one(), &Mono::one(), &parts.kappa, parts.xs, parts.ys);
            body.add_assign(&a.mul(&b).mul_mono(&word, &Scalar::one()));
        }
        HElement { n: self.n, body }
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, first: &mut bool, s: fmt::Arguments<'_>) -> fmt::Result {
    if !*first {
        write!(f, "*")?;
    }
    *first = false;
    f.write_fmt(s)
}

struct MonoDisplay<'a>(&'a Mono<Atom>);

impl fmt::Display for MonoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        coeff_ring::write_mono(f, self.0)
    }
}

/// Writes one PBW term without its sign; returns whether anything but the coefficient was written.
pub fn write_pbw_body(f: &mut fmt::Formatter<'_>, t: &PbwTerm, abs: &Scalar) -> fmt::Result {
    let mut first = true;
    let bare = t.alpha.is_one() && t.beta.is_one() && t.word_len() == 0;
    if bare || !abs.is_one() {
        first = false;
        fmt_scalar(abs, f)?;
    }
    if !t.alpha.is_one() {
        write_joined(f, &mut first, format_args!("a({})", MonoDisplay(&t.alpha)))?;
    }
    if !t.beta.is_one() {
        write_joined(f, &mut first, format_args!("b({})", MonoDisplay(&t.beta)))?;
    }
    for g in &t.kappa {
        write_joined(f, &mut first, format_args!("{g}"))?;
    }
    for x in &t.xs {
        write_joined(f, &mut first, format_args!("X[{x}]"))?;
    }
    for (i, j) in &t.ys {
        write_joined(f, &mut first, format_args!("Y[{i},{j}]"))?;
    }
    Ok(())
}

impl fmt::Display for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.pbw_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, t) in terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (pos, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_pbw_body(f, t, &t.coeff.abs())?;
        }
        Ok(())
    }
}

/// A generator expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Scalar(Scalar),
    Alpha(CoeffPoly),
    Beta(CoeffPoly),
    X(Idx),
    Y(Idx, Idx),
    Delta { i: Idx, j: Idx, k: Idx, ells: Vec<Idx> },
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    /// Validates every index against the dimension `n`.
    pub fn check(&self, n: Idx) -> Result<(), HopfError> {
        match self {
            Expr::Scalar(_) | Expr::Alpha(_) | Expr::Beta(_) => Ok(()),
            Expr::X(k) => Ok(check_index(*k, n)?),
            Expr::Y(i, j) => {
                check_index(*i, n)?;
                Ok(check_index(*j, n)?)
            }
            Expr::Delta { i, j, k, ells } => {
                for idx in [*i, *j, *k].iter().chain(ells.iter()) {
                    check_index(*idx, n)?;
                }
                Ok(())
            }
            Expr::Sum(v) | Expr::Prod(v) => v.iter().try_for_each(|e| e.check(n)),
            Expr::Neg(e) => e.check(n),
        }
    }
}

/// Evaluates a generator expression to PBW normal form.
pub fn normalize(expr: &Expr, n: Idx) -> Result<HElement, HopfError> {
    expr.check(n)?;
    Ok(eval(expr, n))
}

/// Evaluates a tree by multiplying the normal forms of its subtrees.
///
/// Unlike [`normalize`], which lets generators act on the right-hand
/// normal form one at a time, this reduces every subproduct first, so the
/// two routes exercise different rewrite orders.
pub fn normalize_by_subtrees(expr: &Expr, n: Idx) -> Result<HElement, HopfError> {
    expr.check(n)?;
    Ok(eval_subtrees(expr, n))
}

fn eval_subtrees(expr: &Expr, n: Idx) -> HElement {
    match expr {
        Expr::Sum(v) => {
            let mut out = HElement::zero(n);
            for e in v {
                out.add_assign(&eval_subtrees(e, n));
            }
            out
        }
        Expr::Prod(v) => {
            let mut out = HElement::one(n);
            for e in v {
                out = out.mul(&eval_subtrees(e, n));
            }
            out
        }
        Expr::Neg(e) => eval_subtrees(e, n).neg(),
        leaf => eval(leaf, n),
    }
}

fn eval(expr: &Expr, n: Idx) -> HElement {
    match expr {
        Expr::Scalar(c) => HElement::scalar(n, c.clone()),
        Expr::Alpha(p) => HElement::alpha(n, p),
        Expr::Beta(q) => HElement::beta(n, q),
        Expr::X(k) => HElement::x(n, *k),
        Expr::Y(i, j) => HElement::y(n, *i, *j),
        Expr::Delta { i, j, k, ells } => HElement::delta(n, *i, *j, *k, ells),
        Expr::Sum(v) => {
            let mut out = HElement::zero(n);
            for e in v {
                out.add_assign(&eval(e, n));
            }
            out
        }
        Expr::Prod(v) => {
            let mut out = HElement::one(n);
            for e in v.iter().rev() {
                out = eval_left(e, n, &out);
            }
            out
        }
        Expr::Neg(e) => eval(e, n).neg(),
    }
}

/// `expr · rhs`, using the cheap left actions for generators.
fn eval_left(expr: &Expr, n: Idx, rhs: &HElement) -> HElement {
    match expr {
        Expr::Scalar(c) => rhs.scale(c),
        Expr::Alpha(p) => rhs.left_alpha(p),
        Expr::Beta(q) => rhs.left_beta(q),
        Expr::X(k) => rhs.left_der(Der::X(*k)),
        Expr::Y(i, j) => rhs.left_der(Der::Y(*i, *j)),
        Expr::Delta { i, j, k, ells } => {
            rhs.left_alpha(&coeff_ring::gamma_derived(Diffeo::Slot, *i, *j, *k, ells, n))
        }
        Expr::Prod(v) => {
            let mut out = rhs.clone();
            for e in v.iter().rev() {
                out = eval_left(e, n, &out);
            }
            out
        }
        _ => eval(expr, n).mul(rhs),
    }
}

/// Randomized confluence checks of the rewrite system.
///
/// For `samples` random trees with `leaves` generator leaves: the normal
/// form is unchanged when the tree is re-bracketed and evaluated subtree by
/// subtree. Associativity of `mul` is checked on triples of two-leaf trees
/// drawn alongside, and the Jacobi identity on every triple from the
/// generator set.
pub fn confluence_suite(n: Idx, samples: usize, leaves: usize, seed: u64) -> SuiteReport {
    let mut rng = random::rng(seed);
    let mix = random::GenMix::default();
    let mut report = SuiteReport::new(&format!("pbw confluence n={n}"));
    let mut confluent = Check::new("normal form independent of bracketing");
    let mut assoc = Check::new("mul associative");
    for _ in 0..samples {
        let t = random::random_tree(&mut rng, n, leaves, mix);
        let r = random::reparenthesize(&mut rng, &t);
        let (a, b) = (eval(&t, n), eval_subtrees(&r, n));
        confluent.record(a == b, &|| format!("{t:?}"));
        let [x, y, z] = [(); 3].map(|_| eval(&random::random_tree(&mut rng, n, 2, mix), n));
        let ok = x.mul(&y).mul(&z) == x.mul(&y.mul(&z));
        assoc.record(ok, &|| format!("{x} | {y} | {z}"));
    }
    let mut jacobi = Check::new("Jacobi identity on generators");
    let gens = crate::hopf_structure::generator_set(n);
    for (an, a) in &gens {
        for (bn, b) in &gens {
            for (cn, c) in &gens {
                let s = a
                    .commutator(&b.commutator(c))
                    .add(&b.commutator(&c.commutator(a)))
                    .add(&c.commutator(&a.commutator(b)));
                jacobi.record(s.is_zero(), &|| format!("{an}, {bn}, {cn}"));
            }
        }
    }
    report.push(confluent);
    report.push(assoc);
    report.push(jacobi);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_ring::{base_fn, curv};
    use crate::poly::int;
    use alloc::format;

    fn prod(v: Vec<Expr>) -> Expr {
        Expr::Prod(v)
    }

    #[test]
    fn yx_normal_order() {
        let h = normalize(&prod(alloc::vec![Expr::Y(1, 1), Expr::X(1)]), 1).unwrap();
        assert_eq!(format!("{h}"), "X[1]*Y[1,1] + X[1]");
    }

    #[test]
    fn x2x1_reorders_with_curvature() {
        // [X_2, X_1] = Σ α(R^i_{j21}) Y_i^j = −Σ α(R^i_{j12}) Y_i^j
        let n = 2;
        let h = normalize(&prod(alloc::vec![Expr::X(2), Expr::X(1)]), n).unwrap();
        let mut expected = HElement::x(n, 1).mul(&HElement::x(n, 2));
        for i in 1..=n {
            for j in 1..=n {
                expected = expected.sub(&HElement::alpha(n, &curv(i, j, 1, 2)).mul(&HElement::y(n, i, j)));
            }
        }
        assert_eq!(h, expected);
    }

    #[test]
    fn x_past_beta() {
        let n = 2;
        let b = base_fn("b");
        for k in 1..=n {
            let h = HElement::x(n, k).mul(&HElement::beta(n, &b));
            let mut expected = HElement::beta(n, &b).mul(&HElement::x(n, k));
            expected.add_assign(&HElement::beta(n, &apply(&b, Der::X(k), n)));
            for i in 1..=n {
                for j in 1..=n {
                    let t = HElement::beta(n, &apply(&b, Der::Y(i, j), n)).mul(&HElement::delta(n, i, j, k, &[]));
                    expected.add_assign(&t);
                }
            }
            assert_eq!(h, expected);
        }
    }

    #[test]
    fn alpha_is_normal_and_commutes_with_beta() {
        let n = 1;
        let a = HElement::alpha(n, &base_fn("a"));
        let b = HElement::beta(n, &base_fn("b"));
        assert_eq!(format!("{a}"), "a(a)");
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(HElement::one(n).mul(&a), a);
    }

    #[test]
    fn y_delta_bracket_one_dimensional() {
        let n = 1;
        let d = HElement::delta(n, 1, 1, 1, &[]);
        let y = HElement::y(n, 1, 1);
        assert_eq!(y.commutator(&d), d);
    }

    #[test]
    fn x_delta_bracket_gives_higher_delta() {
        let n = 1;
        let c = HElement::x(n, 1).commutator(&HElement::delta(n, 1, 1, 1, &[]));
        assert_eq!(c, HElement::delta(n, 1, 1, 1, &[1]));
        assert_eq!(format!("{c}"), "D[1;1,1;1]");
    }

    #[test]
    fn y_x_commutator_all_indices() {
        let n = 2;
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    let c = HElement::y(n, i, j).commutator(&HElement::x(n, k));
                    let expected = if j == k { HElement::x(n, i) } else { HElement::zero(n) };
                    assert_eq!(c, expected);
                }
            }
        }
    }

    #[test]
    fn display_format() {
        let n = 1;
        let f = base_fn("f");
        let h = HElement::alpha(n, &f)
            .mul(&HElement::beta(n, &apply(&f, Der::X(1), n)))
            .mul(&HElement::delta(n, 1, 1, 1, &[1]))
            .mul(&HElement::x(n, 1))
            .mul(&HElement::y(n, 1, 1))
            .scale(&int(2));
        let s = format!("{h}");
        assert!(s.starts_with("2*a(f)*b(Dx[1](f))*D[1;1,1;1]*X[1]*Y[1,1]"), "{s}");
    }
}
