//! The coefficient ring: formal functions on the frame bundle.
//!
//! Elements are polynomials in three families of atoms:
//!
//! * generic base functions `b` together with a canonical derivation word
//!   `X_{i_1}…X_{i_p} Y_{J_1}…Y_{J_q} b` (X-block and Y-block nondecreasing);
//! * curvature components `R^i_{jkl}` (stored with `k < l`, reduced by the
//!   first Bianchi identity) and their horizontal derivatives;
//! * jet symbols `γ^i_{jk,l_1…l_r}(φ)`, symmetric in `(j,k)`.
//!
//! The horizontal fields `X_k` and the fundamental vertical fields `Y_i^j`
//! act as derivations. Reordering a derivation word uses
//!
//! ```text
//! [X_k, X_l]     = Σ R^i_{jkl} Y_i^j
//! [Y_i^j, X_k]   = δ^j_k X_i
//! [Y_i^j, Y_k^l] = δ^j_k Y_i^l − δ^l_i Y_k^j
//! ```
//!
//! Curvature and jet symbols are tensorial: `Y_p^q` acts on each lower index
//! (including trailing derivative indices) by `q ↦ p` and on the upper index
//! by `p ↦ q` with a minus sign.
//!
//! A jet symbol is stored with all its lower indices sorted,
//! `j ≤ k ≤ l_1 ≤ … ≤ l_r`. Differentiating `φ̃^*ω − ω = γ·θ` gives
//!
//! ```text
//! γ^s_{tl,k} − γ^s_{tk,l} = R^s_{tkl} − R^s_{tkl}∘φ̃ − Σ_m (γ^m_{tl} γ^s_{mk} − γ^s_{ml} γ^m_{tk})
//! ```
//!
//! which is used to move a smaller derivative index into the symmetric pair.
//! The pulled-back function `b∘φ̃` is the atom [`Atom::Pull`]; its
//! derivatives follow `X_k(b∘φ̃) = (X_k b)∘φ̃ + Σ γ^i_{jk}(φ)·(Y_i^j b)∘φ̃`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::poly::{self, Mono, Poly};
use crate::random;
use crate::suite::{Check, SuiteReport};

/// A frame index, `1..=n`.
pub type Idx = u8;

/// Largest supported dimension.
pub const MAX_DIM: Idx = 9;

/// Largest dimension in which derivation words have a unique normal form.
///
/// Reordering three distinct horizontal indices needs the second Bianchi
/// identity, which is not imposed on curvature atoms.
pub const MAX_CONFLUENT_DIM: Idx = 2;

/// Errors raised by the coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: Idx, n: Idx },
    #[error("unbound atom {0}")]
    UnboundAtom(alloc::string::String),
}

/// Label of a local diffeomorphism carried by a jet symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Diffeo {
    Identity,
    Named(Arc<str>),
    /// The diffeomorphism of the group element a δ-generator multiplies by.
    Slot,
}

impl Diffeo {
    pub fn named(s: &str) -> Self {
        if s == "id" {
            Diffeo::Identity
        } else {
            Diffeo::Named(Arc::from(s))
        }
    }
}

impl fmt::Display for Diffeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diffeo::Identity => write!(f, "id"),
            Diffeo::Named(s) => write!(f, "{s}"),
            Diffeo::Slot => write!(f, "@"),
        }
    }
}

/// A derivation of the coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Der {
    /// Horizontal field `X_k`.
    X(Idx),
    /// Fundamental vertical field `Y_i^j`, stored as `Y(i, j)`.
    Y(Idx, Idx),
}

impl Der {
    pub fn check(&self, n: Idx) -> Result<(), CoeffError> {
        let idx: &[Idx] = match self {
            Der::X(k) => &[*k],
            Der::Y(i, j) => &[*i, *j],
        };
        for &index in idx {
            check_index(index, n)?;
        }
        Ok(())
    }
}

impl fmt::Display for Der {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Der::X(k) => write!(f, "X[{k}]"),
            Der::Y(i, j) => write!(f, "Y[{i},{j}]"),
        }
    }
}

pub fn check_index(index: Idx, n: Idx) -> Result<(), CoeffError> {
    if index == 0 || index > n {
        Err(CoeffError::IndexOutOfRange { index, n })
    } else {
        Ok(())
    }
}

/// A generator of the coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// `X_{xs[0]}…X_{xs[p-1]} Y_{ys[0]}…Y_{ys[q-1]} name`.
    Fn { name: Arc<str>, xs: Vec<Idx>, ys: Vec<(Idx, Idx)> },
    /// `X_{ells[r-1]}…X_{ells[0]} R^i_{jkl}` with `k < l`.
    Curv { i: Idx, j: Idx, k: Idx, l: Idx, ells: Vec<Idx> },
    /// `γ^i_{jk,ells}(phi)` with `j ≤ k ≤ ells[0] ≤ …`.
    Gamma { phi: Diffeo, i: Idx, j: Idx, k: Idx, ells: Vec<Idx> },
    /// The pulled-back function `inner∘φ̃`.
    Pull { phi: Diffeo, inner: Box<Atom> },
}

/// Element of the coefficient ring.
pub type CoeffPoly = Poly<Atom>;

impl Atom {
    pub fn base(name: &str) -> Self {
        Atom::Fn { name: Arc::from(name), xs: Vec::new(), ys: Vec::new() }
    }

    /// Number of derivations applied to the underlying symbol.
    pub fn order(&self) -> usize {
        match self {
            Atom::Fn { xs, ys, .. } => xs.len() + ys.len(),
            Atom::Curv { ells, .. } | Atom::Gamma { ells, .. } => ells.len(),
            Atom::Pull { inner, .. } => inner.order(),
        }
    }

    /// `true` for curvature atoms, including pulled-back ones.
    pub fn is_curvature(&self) -> bool {
        match self {
            Atom::Curv { .. } => true,
            Atom::Pull { inner, .. } => inner.is_curvature(),
            _ => false,
        }
    }
}

/// The base function `name` as a ring element.
pub fn base_fn(name: &str) -> CoeffPoly {
    Poly::atom(Atom::base(name))
}

/// The curvature component `R^i_{jkl}` in canonical form.
pub fn curv(i: Idx, j: Idx, k: Idx, l: Idx) -> CoeffPoly {
    curv_with(i, j, k, l, Vec::new())
}

/// The jet symbol `γ^i_{jk}(phi)` in canonical form.
pub fn gamma(phi: Diffeo, i: Idx, j: Idx, k: Idx) -> CoeffPoly {
    gamma_with(phi, i, j, k, Vec::new())
}

/// The jet symbol `X_{ells[r-1]}…X_{ells[0]} γ^i_{jk}(phi)` for arbitrary `ells`.
pub fn gamma_derived(phi: Diffeo, i: Idx, j: Idx, k: Idx, ells: &[Idx], n: Idx) -> CoeffPoly {
    let mut out = gamma(phi, i, j, k);
    for &l in ells {
        out = apply(&out, Der::X(l), n);
    }
    out
}

/// The pull-back `p∘φ̃` of a ring element.
pub fn pull(phi: &Diffeo, p: &CoeffPoly) -> CoeffPoly {
    if *phi == Diffeo::Identity {
        return p.clone();
    }
    p.map_atoms(|a| Poly::atom(Atom::Pull { phi: phi.clone(), inner: Box::new(a.clone()) }))
}

/// Canonicalizes `R^i_{jkl}` with an already nondecreasing derivative list.
fn curv_with(i: Idx, j: Idx, k: Idx, l: Idx, ells: Vec<Idx>) -> CoeffPoly {
    use core::cmp::Ordering;
    match k.cmp(&l) {
        Ordering::Equal => Poly::zero(),
        Ordering::Greater => curv_with(i, j, l, k, ells).neg(),
        Ordering::Less => {
            if j > l {
                // {k < l < j}: R_{j;kl} = R_{l;kj} − R_{k;lj}
                curv_with(i, l, k, j, ells.clone()).sub(&curv_with(i, k, l, j, ells))
            } else {
                Poly::atom(Atom::Curv { i, j, k, l, ells })
            }
        }
    }
}

fn gamma_with(phi: Diffeo, i: Idx, j: Idx, k: Idx, ells: Vec<Idx>) -> CoeffPoly {
    if phi == Diffeo::Identity {
        return Poly::zero();
    }
    let (j, k) = if j <= k { (j, k) } else { (k, j) };
    Poly::atom(Atom::Gamma { phi, i, j, k, ells })
}

/// Replaces the base tensor indices of a tensorial atom, keeping `ells`.
fn rebuild_tensor(a: &Atom, upper: Idx, lowers: &[Idx], ells: Vec<Idx>) -> CoeffPoly {
    match a {
        Atom::Curv { .. } => curv_with(upper, lowers[0], lowers[1], lowers[2], ells),
        Atom::Gamma { phi, .. } => gamma_with(phi.clone(), upper, lowers[0], lowers[1], ells),
        _ => unreachable!("only curvature and jet symbols are tensorial"),
    }
}

fn tensor_parts(a: &Atom) -> (Idx, Vec<Idx>, &Vec<Idx>) {
    match a {
        Atom::Curv { i, j, k, l, ells } => (*i, alloc::vec![*j, *k, *l], ells),
        Atom::Gamma { i, j, k, ells, .. } => (*i, alloc::vec![*j, *k], ells),
        _ => unreachable!("only curvature and jet symbols are tensorial"),
    }
}

/// `Σ_{s,t} R^s_{t k l} · Y_s^t(f)` for a single atom `f`.
fn curvature_term(a: &Atom, k: Idx, l: Idx, n: Idx) -> CoeffPoly {
    let mut out = Poly::zero();
    for s in 1..=n {
        for t in 1..=n {
            let r = curv(s, t, k, l);
            if r.is_zero() {
                continue;
            }
            let y = derive_atom(a, Der::Y(s, t), n);
            if !y.is_zero() {
                out.add_assign(&r.mul(&y));
            }
        }
    }
    out
}

/// Applies a derivation to a single canonical atom.
pub fn derive_atom(a: &Atom, d: Der, n: Idx) -> CoeffPoly {
    crate::limits::tick();
    match a {
        Atom::Fn { name, xs, ys } => derive_fn(name, xs, ys, d, n),
        Atom::Curv { .. } | Atom::Gamma { .. } => derive_tensor(a, d, n),
        Atom::Pull { phi, inner } => derive_pull(phi, inner, d, n),
    }
}

fn derive_pull(phi: &Diffeo, inner: &Atom, d: Der, n: Idx) -> CoeffPoly {
    let mut out = pull(phi, &derive_atom(inner, d, n));
    if let Der::X(k) = d {
        for i in 1..=n {
            for j in 1..=n {
                let y = derive_atom(inner, Der::Y(i, j), n);
                if !y.is_zero() {
                    out.add_assign(&gamma(phi.clone(), i, j, k).mul(&pull(phi, &y)));
                }
            }
        }
    }
    out
}

/// `γ^s_{jk,m}(φ)` for `m < k`, rewritten to sorted lower indices.
fn gamma_swap(phi: &Diffeo, s: Idx, j: Idx, k: Idx, m: Idx, n: Idx) -> CoeffPoly {
    let r = curv(s, j, m, k);
    let mut out = gamma_with(phi.clone(), s, j, m, alloc::vec![k]);
    out.add_assign(&r);
    out = out.sub(&pull(phi, &r));
    for q in 1..=n {
        let a = gamma(phi.clone(), q, j, k).mul(&gamma(phi.clone(), s, q, m));
        let b = gamma(phi.clone(), s, q, k).mul(&gamma(phi.clone(), q, j, m));
        out = out.sub(&a).add(&b);
    }
    out
}

fn fn_atom(name: &Arc<str>, xs: &[Idx], ys: &[(Idx, Idx)]) -> Atom {
    Atom::Fn { name: name.clone(), xs: xs.to_vec(), ys: ys.to_vec() }
}

fn derive_fn(name: &Arc<str>, xs: &[Idx], ys: &[(Idx, Idx)], d: Der, n: Idx) -> CoeffPoly {
    match d {
        Der::X(k) => {
            if xs.first().is_none_or(|&a| k <= a) {
                let mut nx = Vec::with_capacity(xs.len() + 1);
                nx.push(k);
                nx.extend_from_slice(xs);
                return Poly::atom(Atom::Fn { name: name.clone(), xs: nx, ys: ys.to_vec() });
            }
            let a = xs[0];
            let rest = fn_atom(name, &xs[1..], ys);
            let inner = derive_atom(&rest, Der::X(k), n);
            let mut out = apply(&inner, Der::X(a), n);
            out.add_assign(&curvature_term(&rest, k, a, n));
            out
        }
        Der::Y(p, q) => {
            if let Some(&a) = xs.first() {
                let rest = fn_atom(name, &xs[1..], ys);
                let mut out = apply(&derive_atom(&rest, d, n), Der::X(a), n);
                if q == a {
                    out.add_assign(&derive_atom(&rest, Der::X(p), n));
                }
                return out;
            }
            if ys.first().is_none_or(|&c| (p, q) <= c) {
                let mut ny = Vec::with_capacity(ys.len() + 1);
                ny.push((p, q));
                ny.extend_from_slice(ys);
                return Poly::atom(Atom::Fn { name: name.clone(), xs: Vec::new(), ys: ny });
            }
            let (c, e) = ys[0];
            let rest = fn_atom(name, &[], &ys[1..]);
            let mut out = apply(&derive_atom(&rest, d, n), Der::Y(c, e), n);
            if q == c {
                out.add_assign(&derive_atom(&rest, Der::Y(p, e), n));
            }
            if e == p {
                out = out.sub(&derive_atom(&rest, Der::Y(c, q), n));
            }
            out
        }
    }
}

fn derive_tensor(a: &Atom, d: Der, n: Idx) -> CoeffPoly {
    let (upper, lowers, ells) = tensor_parts(a);
    let strip = |ells: &[Idx]| rebuild_tensor(a, upper, &lowers, ells.to_vec());
    match d {
        Der::X(k) => {
            if let (Atom::Gamma { phi, .. }, true) = (a, ells.is_empty()) {
                if k < lowers[1] {
                    return gamma_swap(phi, upper, lowers[0], lowers[1], k, n);
                }
            }
            if ells.last().is_none_or(|&last| k >= last) {
                let mut ne = ells.clone();
                ne.push(k);
                return rebuild_tensor(a, upper, &lowers, ne);
            }
            let last = *ells.last().unwrap();
            let rest = strip(&ells[..ells.len() - 1]);
            let mut out = apply(&apply(&rest, Der::X(k), n), Der::X(last), n);
            for (m, c) in rest.terms() {
                let (atom, _) = &m.factors()[0];
                out.add_scaled(&curvature_term(atom, k, last, n), c, &Mono::one());
            }
            out
        }
        Der::Y(p, q) => {
            if let Some(&last) = ells.last() {
                let rest = strip(&ells[..ells.len() - 1]);
                let mut out = apply(&apply(&rest, d, n), Der::X(last), n);
                if q == last {
                    out.add_assign(&apply(&rest, Der::X(p), n));
                }
                return out;
            }
            let mut out = Poly::zero();
            for m in 0..lowers.len() {
                if lowers[m] == q {
                    let mut nl = lowers.clone();
                    nl[m] = p;
                    out.add_assign(&rebuild_tensor(a, upper, &nl, Vec::new()));
                }
            }
            if upper == p {
                out = out.sub(&rebuild_tensor(a, q, &lowers, Vec::new()));
            }
            out
        }
    }
}

/// Applies a derivation assuming its indices are in range.
pub fn apply(f: &CoeffPoly, d: Der, n: Idx) -> CoeffPoly {
    f.derive_with(|a| derive_atom(a, d, n))
}

/// Applies a derivation, validating its indices against the dimension `n`.
pub fn derive(f: &CoeffPoly, d: Der, n: Idx) -> Result<CoeffPoly, CoeffError> {
    d.check(n)?;
    Ok(apply(f, d, n))
}

/// Applies a word of derivations, the last entry acting first.
pub fn apply_word(f: &CoeffPoly, word: &[Der], n: Idx) -> CoeffPoly {
    let mut out = f.clone();
    for d in word.iter().rev() {
        out = apply(&out, *d, n);
    }
    out
}

/// Homomorphic substitution of atoms.
///
/// Atoms absent from `env` are kept unless `total` is set, in which case
/// they are reported as unbound.
pub fn substitute(
    f: &CoeffPoly,
    env: &BTreeMap<Atom, CoeffPoly>,
    total: bool,
) -> Result<CoeffPoly, CoeffError> {
    f.try_map_atoms(|a| match env.get(a) {
        Some(p) => Ok(p.clone()),
        None if total => Err(CoeffError::UnboundAtom(alloc::format!("{}", Poly::atom(a.clone())))),
        None => Ok(Poly::atom(a.clone())),
    })
}

/// Substitution driven by a rule on atoms; atoms the rule declines are kept.
pub fn substitute_with(f: &CoeffPoly, mut rule: impl FnMut(&Atom) -> Option<CoeffPoly>) -> CoeffPoly {
    f.map_atoms(|a| rule(a).unwrap_or_else(|| Poly::atom(a.clone())))
}

/// Sets every curvature atom to zero.
pub fn flatten(f: &CoeffPoly) -> CoeffPoly {
    substitute_with(f, |a| if a.is_curvature() { Some(Poly::zero()) } else { None })
}

struct AtomDisplay<'a>(&'a Atom);

impl fmt::Display for AtomDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Atom::Pull { phi, inner } = self.0 {
            return write!(f, "pb[{phi}]({})", AtomDisplay(inner));
        }
        let (xs_outer, ys_outer): (&[Idx], &[(Idx, Idx)]) = match self.0 {
            Atom::Fn { xs, ys, .. } => (xs, ys),
            _ => (&[], &[]),
        };
        let mut closing = 0;
        for x in xs_outer {
            write!(f, "Dx[{x}](")?;
            closing += 1;
        }
        for (i, j) in ys_outer {
            write!(f, "Dy[{i},{j}](")?;
            closing += 1;
        }
        match self.0 {
            Atom::Fn { name, .. } => write!(f, "{name}")?,
            Atom::Curv { i, j, k, l, ells } => {
                for x in ells.iter().rev() {
                    write!(f, "Dx[{x}](")?;
                    closing += 1;
                }
                write!(f, "R[{i},{j},{k},{l}]")?;
            }
            Atom::Gamma { phi, i, j, k, ells } => {
                write!(f, "g[{phi};{i};{j},{k}")?;
                if !ells.is_empty() {
                    write!(f, ";")?;
                    for (pos, l) in ells.iter().enumerate() {
                        if pos > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{l}")?;
                    }
                }
                write!(f, "]")?;
            }
            Atom::Pull { .. } => unreachable!(),
        }
        for _ in 0..closing {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        AtomDisplay(self).fmt(f)
    }
}

/// Writes the factors of a coefficient monomial joined by `*`.
pub fn write_mono(f: &mut fmt::Formatter<'_>, m: &Mono<Atom>) -> fmt::Result {
    for (pos, (a, e)) in m.factors().iter().enumerate() {
        if pos > 0 {
            write!(f, "*")?;
        }
        write!(f, "{a}")?;
        if *e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly<Atom> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        poly::write_sum(f, self.terms(), write_mono)
    }
}

/// Rebuilds every atom of `f` through the public constructors.
///
/// On canonical input the result is `f` itself.
pub fn renormalize(f: &CoeffPoly, n: Idx) -> CoeffPoly {
    f.map_atoms(|a| rebuild_atom(a, n))
}

fn rebuild_atom(a: &Atom, n: Idx) -> CoeffPoly {
    match a {
        Atom::Fn { name, xs, ys } => {
            let word: Vec<Der> = xs.iter().map(|&k| Der::X(k)).chain(ys.iter().map(|&(i, j)| Der::Y(i, j))).collect();
            apply_word(&base_fn(name), &word, n)
        }
        Atom::Curv { i, j, k, l, ells } => {
            ells.iter().fold(curv(*i, *j, *k, *l), |acc, &m| apply(&acc, Der::X(m), n))
        }
        Atom::Gamma { phi, i, j, k, ells } => gamma_derived(phi.clone(), *i, *j, *k, ells, n),
        Atom::Pull { phi, inner } => pull(phi, &rebuild_atom(inner, n)),
    }
}

/// Randomized checks of the differential-ring identities.
pub fn ring_suite(n: Idx, samples: usize, seed: u64) -> SuiteReport {
    let mut rng = random::rng(seed);
    let mut report = SuiteReport::new(&format!("coefficient ring n={n}"));
    let mut leibniz = Check::new("Leibniz rule");
    let mut xx = Check::new("[X_k, X_l] = sum R Y on functions");
    let mut yx = Check::new("[Y_i^j, X_k] = delta X_i on functions");
    let mut yy = Check::new("[Y_i^j, Y_k^l] bracket on functions");
    let mut identity = Check::new("gamma(id) vanishes");
    let mut idempotent = Check::new("renormalizing is the identity");
    for _ in 0..samples {
        let f = random::random_coeff(&mut rng, n, 2);
        let g = random::random_coeff(&mut rng, n, 1);
        let d = random::random_der(&mut rng, n);
        let lhs = apply(&f.mul(&g), d, n);
        let rhs = apply(&f, d, n).mul(&g).add(&f.mul(&apply(&g, d, n)));
        leibniz.record(lhs == rhs, &|| format!("{d:?} on ({f}) * ({g})"));
        let (k, l) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        let lhs = apply(&apply(&f, Der::X(l), n), Der::X(k), n).sub(&apply(&apply(&f, Der::X(k), n), Der::X(l), n));
        let mut rhs = Poly::zero();
        for i in 1..=n {
            for j in 1..=n {
                rhs.add_assign(&curv(i, j, k, l).mul(&apply(&f, Der::Y(i, j), n)));
            }
        }
        xx.record(lhs == rhs, &|| format!("k={k} l={l} f={f}"));
        let (i, j) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        let lhs = apply(&apply(&f, Der::X(k), n), Der::Y(i, j), n).sub(&apply(&apply(&f, Der::Y(i, j), n), Der::X(k), n));
        let rhs = if j == k { apply(&f, Der::X(i), n) } else { Poly::zero() };
        yx.record(lhs == rhs, &|| format!("Y({i},{j}) X({k}) f={f}"));
        let (c, e) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        let lhs =
            apply(&apply(&f, Der::Y(c, e), n), Der::Y(i, j), n).sub(&apply(&apply(&f, Der::Y(i, j), n), Der::Y(c, e), n));
        let mut rhs = Poly::zero();
        if j == c {
            rhs.add_assign(&apply(&f, Der::Y(i, e), n));
        }
        if e == i {
            rhs = rhs.sub(&apply(&f, Der::Y(c, j), n));
        }
        yy.record(lhs == rhs, &|| format!("Y({i},{j}) Y({c},{e}) f={f}"));
        let ells: Vec<Idx> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(1..=n)).collect();
        let gid = gamma_derived(Diffeo::Identity, i, j, k, &ells, n).mul(&f);
        identity.record(gid.is_zero(), &|| format!("ells={ells:?}"));
        let h = apply(&f.mul(&g), d, n);
        idempotent.record(renormalize(&h, n) == h, &|| format!("{h}"));
    }
    for c in [leibniz, xx, yx, yy, identity, idempotent] {
        report.push(c);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use crate::poly::int;

    fn phi() -> Diffeo {
        Diffeo::named("phi")
    }

    #[test]
    fn constants_are_killed() {
        assert!(apply(&Poly::one(), Der::X(1), 1).is_zero());
    }

    #[test]
    fn fresh_symbol_gets_derivation_word() {
        let d = apply(&base_fn("b"), Der::X(1), 1);
        assert_eq!(format!("{d}"), "Dx[1](b)");
    }

    #[test]
    fn gamma_y_derivative_one_dimensional() {
        let g = gamma(phi(), 1, 1, 1);
        // δγ + δγ − δγ with every index equal to one
        assert_eq!(apply(&g, Der::Y(1, 1), 1), g);
    }

    #[test]
    fn curvature_antisymmetry_and_identity_gamma() {
        assert_eq!(curv(1, 2, 2, 1), curv(1, 2, 1, 2).neg());
        assert!(curv(1, 2, 1, 1).is_zero());
        assert!(gamma(Diffeo::Identity, 1, 1, 1).is_zero());
    }

    #[test]
    fn first_bianchi_cyclic_sum_vanishes() {
        for i in 1..=3 {
            let s = curv(i, 1, 2, 3).add(&curv(i, 2, 3, 1)).add(&curv(i, 3, 1, 2));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn x_bracket_on_base_function() {
        let n = 2;
        let b = base_fn("b");
        let x21 = apply(&apply(&b, Der::X(2), n), Der::X(1), n);
        let x12 = apply(&apply(&b, Der::X(1), n), Der::X(2), n);
        let mut expected = Poly::zero();
        for i in 1..=n {
            for j in 1..=n {
                expected.add_assign(&curv(i, j, 1, 2).mul(&apply(&b, Der::Y(i, j), n)));
            }
        }
        // Oracle: X_1X_2 − X_2X_1 = Σ R^i_{j12} Y_i^j, so X_2X_1 − X_1X_2 is its negative.
        assert_eq!(x12.sub(&x21), expected.neg());
        assert_eq!(format!("{x21}"), "Dx[1](Dx[2](b))");
    }

    #[test]
    fn substitution_examples() {
        let g = gamma(phi(), 1, 1, 1);
        let mut env = BTreeMap::new();
        let (a, y) = (base_fn("a"), base_fn("y"));
        env.insert(Atom::Gamma { phi: phi(), i: 1, j: 1, k: 1, ells: Vec::new() }, a.mul(&y).scale(&int(2)));
        let got = substitute(&g.mul(&g), &env, false).unwrap();
        assert_eq!(got, a.pow(2).mul(&y.pow(2)).scale(&int(4)));
        assert_eq!(substitute(&base_fn("b"), &BTreeMap::new(), false).unwrap(), base_fn("b"));
        assert!(substitute(&base_fn("b"), &BTreeMap::new(), true).is_err());
        assert!(flatten(&curv(1, 2, 1, 2)).is_zero());
    }

    #[test]
    fn index_range_is_checked() {
        assert!(derive(&base_fn("b"), Der::X(2), 1).is_err());
        assert!(derive(&base_fn("b"), Der::Y(0, 1), 1).is_err());
    }
}
