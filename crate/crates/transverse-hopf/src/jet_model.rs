//! Coordinate model of the jet symbols.
//!
//! On the frame bundle of `ℝ^n` with coordinates `u = (x^μ, y^μ_j)` (the
//! frame `y_j = y^μ_j ∂_μ`) and a torsion-free connection with Christoffel
//! symbols `Γ^ν_{αμ}(x)`:
//!
//! ```text
//! Y_i^j = y^μ_i ∂/∂y^μ_j
//! X_k   = y^μ_k (∂_μ − Γ^ν_{αμ} y^α_j ∂/∂y^ν_j)
//! θ^k   = (y^{-1})^k_μ dx^μ
//! ω^i_j = (y^{-1})^i_ν (dy^ν_j + Γ^ν_{αμ} y^α_j dx^μ)
//! ```
//!
//! A diffeomorphism `ψ` lifts to `ψ̃(x, y) = (ψ(x), ∂ψ(x) y)` and
//!
//! ```text
//! γ^i_{jk} = (y^{-1})^i_δ (Γ̃ − Γ)^δ_{αμ} y^α_j y^μ_k
//! Γ̃^δ_{αμ} = (∂ψ^{-1})^δ_ν (Γ^ν_{εζ}(ψ) ∂_α ψ^ε ∂_μ ψ^ζ + ∂_μ ∂_α ψ^ν)
//! ```
//!
//! The upper index of `γ` is the output index, the lower pair is symmetric
//! and trailing indices are `X`-derivatives, matching the coefficient ring.
//! Functions are handled as truncated Taylor series (jets) with exact
//! rational coefficients around a base point.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};
use rand::Rng;

use crate::coeff_ring::{self, Atom, CoeffPoly, Der, Diffeo, Idx};
use crate::poly::{fmt_scalar, int, rat, Mono, Poly, Scalar};
use crate::random::{self, SuiteRng};
use crate::suite::{Check, SuiteReport};

/// Errors raised by the jet model.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JetError {
    #[error("the frame y is singular")]
    SingularFrame,
    #[error("the Jacobian of psi is singular at the base point")]
    SingularJacobian,
    #[error("Christoffel symbols not symmetric at ({nu},{alpha},{mu})")]
    Asymmetric { nu: Idx, alpha: Idx, mu: Idx },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot evaluate {0} in the jet model")]
    Unsupported(String),
    #[error("expected {expected} values, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// A polynomial in `x^1, …, x^n`; the atom `μ` stands for `x^μ`.
pub type XPoly = Poly<Idx>;

/// A truncated Taylor series in `nv` variables around a base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    nv: usize,
    order: u32,
    terms: BTreeMap<Vec<u8>, Scalar>,
}

fn total_degree(e: &[u8]) -> u32 {
    e.iter().map(|&a| a as u32).sum()
}

impl Jet {
    pub fn zero(nv: usize, order: u32) -> Self {
        Jet { nv, order, terms: BTreeMap::new() }
    }

    pub fn constant(nv: usize, order: u32, c: Scalar) -> Self {
        let mut j = Self::zero(nv, order);
        if !c.is_zero() {
            j.terms.insert(vec![0; nv], c);
        }
        j
    }

    /// The coordinate function `v` taking the value `at` at the base point.
    pub fn variable(nv: usize, order: u32, v: usize, at: Scalar) -> Self {
        let mut j = Self::constant(nv, order, at);
        if order >= 1 {
            let mut e = vec![0; nv];
            e[v] = 1;
            j.terms.insert(e, Scalar::one());
        }
        j
    }

    /// Order up to which the series is exact.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// The value at the base point.
    pub fn value(&self) -> Scalar {
        self.terms.get(&vec![0; self.nv]).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn truncated(&self, order: u32) -> Self {
        Jet {
            nv: self.nv,
            order,
            terms: self.terms.iter().filter(|(e, _)| total_degree(e) <= order).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    fn add_term(&mut self, e: Vec<u8>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = self.truncated(order);
        for (e, c) in &other.terms {
            if total_degree(e) <= order {
                out.add_term(e.clone(), c.clone());
            }
        }
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
            return Self::zero(self.nv, self.order);
        }
        Jet { nv: self.nv, order: self.order, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.nv, order);
        for (e1, c1) in &self.terms {
            let d1 = total_degree(e1);
            if d1 > order {
                continue;
            }
            for (e2, c2) in &other.terms {
                if d1 + total_degree(e2) > order {
                    continue;
                }
                let e: Vec<u8> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// `∂/∂v`, exact to one order less.
    pub fn derivative(&self, v: usize) -> Self {
        assert!(self.order >= 1, "jet order exhausted");
        let mut out = Self::zero(self.nv, self.order - 1);
        for (e, c) in &self.terms {
            if e[v] == 0 || total_degree(e) > self.order {
                continue;
            }
            let mut ne = e.clone();
            ne[v] -= 1;
            out.add_term(ne, c * int(e[v] as i64));
        }
        out
    }

    /// `1/f`, when the value at the base point is nonzero.
    pub fn recip(&self) -> Option<Self> {
        let c = self.value();
        if c.is_zero() {
            return None;
        }
        let inv = c.recip();
        let h = self.sub(&Self::constant(self.nv, self.order, c)).scale(&-inv.clone());
        let mut out = Self::constant(self.nv, self.order, Scalar::one());
        let mut power = out.clone();
        for _ in 0..self.order {
            power = power.mul(&h);
            out = out.add(&power);
        }
        Some(out.scale(&inv))
    }

    /// Equality of the common exact part.
    pub fn agrees(&self, other: &Self) -> bool {
        let order = self.order.min(other.order);
        self.truncated(order).terms == other.truncated(order).terms
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O({})", self.order + 1);
        }
        for (pos, (e, c)) in self.terms.iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            fmt_scalar(c, f)?;
            for (v, &a) in e.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "*e{v}")?,
                    _ => write!(f, "*e{v}^{a}")?,
                }
            }
        }
        write!(f, " + O({})", self.order + 1)
    }
}

/// Evaluates a polynomial in `x` on jets.
fn eval_xpoly(p: &XPoly, xs: &[Jet], nv: usize, order: u32) -> Jet {
    let mut out = Jet::zero(nv, order);
    for (m, c) in p.terms() {
        let mut t = Jet::constant(nv, order, c.clone());
        for (v, e) in m.factors() {
            for _ in 0..*e {
                t = t.mul(&xs[*v as usize - 1]);
            }
        }
        out = out.add(&t);
    }
    out
}

fn eval_xpoly_at(p: &XPoly, x: &[Scalar]) -> Scalar {
    let mut out = Scalar::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (v, e) in m.factors() {
            for _ in 0..*e {
                t *= &x[*v as usize - 1];
            }
        }
        out += t;
    }
    out
}

fn d_xpoly(p: &XPoly, v: Idx) -> XPoly {
    p.derive_with(|a| if *a == v { Poly::one() } else { Poly::zero() })
}

/// Inverts a square matrix of jets by Gauss–Jordan elimination.
fn invert(m: &[Vec<Jet>]) -> Option<Vec<Vec<Jet>>> {
    let n = m.len();
    let (nv, order) = (m[0][0].nv, m[0][0].order);
    let mut a: Vec<Vec<Jet>> = m.to_vec();
    let mut inv: Vec<Vec<Jet>> = (0..n)
        .map(|i| (0..n).map(|j| Jet::constant(nv, order, if i == j { Scalar::one() } else { Scalar::zero() })).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].value().is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let r = a[col][col].recip()?;
        for j in 0..n {
            a[col][j] = a[col][j].mul(&r);
            inv[col][j] = inv[col][j].mul(&r);
        }
        for row in 0..n {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let f = a[row][col].clone();
            for j in 0..n {
                a[row][j] = a[row][j].sub(&f.mul(&a[col][j]));
                inv[row][j] = inv[row][j].sub(&f.mul(&inv[col][j]));
            }
        }
    }
    Some(inv)
}

/// Diffeomorphism jets and Christoffel symbols as polynomials in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetTable {
    n: Idx,
    /// `psi[ν-1]` is the component `ψ^ν`.
    psi: Vec<XPoly>,
    /// `christoffel[(ν, α, μ)]`, stored for both orders of `(α, μ)`.
    christoffel: BTreeMap<(Idx, Idx, Idx), XPoly>,
}

impl JetTable {
    /// `ψ = Id` and `Γ = 0`.
    pub fn identity(n: Idx) -> Self {
        let psi = (1..=n).map(Poly::atom).collect();
        JetTable { n, psi, christoffel: BTreeMap::new() }
    }

    /// A table with the given components of `ψ` and flat connection.
    pub fn flat(n: Idx, psi: Vec<XPoly>) -> Result<Self, JetError> {
        if psi.len() != n as usize {
            return Err(JetError::Dimension { expected: n as usize, got: psi.len() });
        }
        let t = JetTable { n, psi, christoffel: BTreeMap::new() };
        t.jacobian_at(&vec![Scalar::zero(); n as usize]).ok_or(JetError::SingularJacobian)?;
        Ok(t)
    }

    /// Sets `Γ^ν_{αμ} = Γ^ν_{μα} = g`.
    pub fn with_christoffel(mut self, nu: Idx, alpha: Idx, mu: Idx, g: XPoly) -> Self {
        self.christoffel.insert((nu, alpha, mu), g.clone());
        self.christoffel.insert((nu, mu, alpha), g);
        self.christoffel.retain(|_, p| !p.is_zero());
        self
    }

    pub fn n(&self) -> Idx {
        self.n
    }

    pub fn psi(&self) -> &[XPoly] {
        &self.psi
    }

    pub fn christoffel(&self, nu: Idx, alpha: Idx, mu: Idx) -> XPoly {
        self.christoffel.get(&(nu, alpha, mu)).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn is_flat(&self) -> bool {
        self.christoffel.is_empty()
    }

    /// Largest total degree among `ψ` and `Γ`.
    pub fn order(&self) -> u32 {
        self.psi
            .iter()
            .chain(self.christoffel.values())
            .flat_map(|p| p.terms().map(|(m, _)| m.degree()))
            .max()
            .unwrap_or(0)
    }

    fn jacobian_at(&self, x: &[Scalar]) -> Option<Vec<Vec<Scalar>>> {
        let n = self.n as usize;
        let m: Vec<Vec<Jet>> = (0..n)
            .map(|nu| (0..n).map(|l| Jet::constant(1, 0, eval_xpoly_at(&d_xpoly(&self.psi[nu], l as Idx + 1), x))).collect())
            .collect();
        invert(&m)?;
        Some(m.iter().map(|r| r.iter().map(Jet::value).collect()).collect())
    }

    /// Reads the text format produced by `Display`:
    ///
    /// ```text
    /// n <dim>
    /// psi <ν> <e_1> … <e_n> <coefficient>
    /// gamma <ν> <α> <μ> <e_1> … <e_n> <coefficient>
    /// ```
    ///
    /// where `e_r` are the exponents of `x^r`. Blank lines and lines starting
    /// with `#` are ignored. Missing `psi` components default to `x^ν`.
    pub fn parse(src: &str) -> Result<Self, JetError> {
        let mut n: Option<Idx> = None;
        let mut psi: BTreeMap<Idx, XPoly> = BTreeMap::new();
        let mut gamma: BTreeMap<(Idx, Idx, Idx), XPoly> = BTreeMap::new();
        for (ln, line) in src.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| JetError::Parse { line: ln + 1, msg: String::from(msg) };
            let words: Vec<&str> = line.split_whitespace().collect();
            let index = |s: &str, n: Idx| -> Result<Idx, JetError> {
                let v: Idx = s.parse().map_err(|_| err("expected an index"))?;
                if v == 0 || v > n {
                    return Err(err("index out of range"));
                }
                Ok(v)
            };
            match words[0] {
                "n" => {
                    let d: Idx = words.get(1).and_then(|s| s.parse().ok()).ok_or_else(|| err("expected a dimension"))?;
                    if d == 0 || d > coeff_ring::MAX_DIM || words.len() != 2 {
                        return Err(err("invalid dimension"));
                    }
                    n = Some(d);
                }
                kind @ ("psi" | "gamma") => {
                    let n = n.ok_or_else(|| err("dimension must come first"))?;
                    let nidx = if kind == "psi" { 1 } else { 3 };
                    if words.len() != 1 + nidx + n as usize + 1 {
                        return Err(err("wrong number of fields"));
                    }
                    let idx: Vec<Idx> = words[1..=nidx].iter().map(|s| index(s, n)).collect::<Result<_, _>>()?;
                    let mut factors = Vec::new();
                    for (r, s) in words[1 + nidx..1 + nidx + n as usize].iter().enumerate() {
                        let e: u32 = s.parse().map_err(|_| err("expected an exponent"))?;
                        if e > 0 {
                            factors.push((r as Idx + 1, e));
                        }
                    }
                    let c = Scalar::from_str(words[words.len() - 1]).map_err(|_| err("expected a rational"))?;
                    let term = Poly::term(Mono::from_factors(factors), c);
                    if kind == "psi" {
                        psi.entry(idx[0]).or_insert_with(Poly::zero).add_assign(&term);
                    } else {
                        gamma.entry((idx[0], idx[1], idx[2])).or_insert_with(Poly::zero).add_assign(&term);
                    }
                }
                _ => return Err(err("unknown record")),
            }
        }
        let n = n.ok_or(JetError::Parse { line: 0, msg: String::from("missing dimension") })?;
        let psi: Vec<XPoly> = (1..=n).map(|v| psi.remove(&v).unwrap_or_else(|| Poly::atom(v))).collect();
        let mut t = JetTable::flat(n, psi)?;
        for (&(nu, a, m), g) in &gamma {
            if let Some(other) = gamma.get(&(nu, m, a)) {
                if other != g {
                    return Err(JetError::Asymmetric { nu, alpha: a, mu: m });
                }
            }
            t = t.with_christoffel(nu, a, m, g.clone());
        }
        Ok(t)
    }
}

impl fmt::Display for JetTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        writeln!(f, "n {n}")?;
        let exps = |m: &Mono<Idx>| -> String {
            (1..=n)
                .map(|v| m.factors().iter().find(|(a, _)| *a == v).map_or(0, |(_, e)| *e).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        for (nu, p) in self.psi.iter().enumerate() {
            for (m, c) in p.terms() {
                writeln!(f, "psi {} {} {}", nu + 1, exps(m), c)?;
            }
        }
        for (&(nu, a, m), p) in &self.christoffel {
            if a > m {
                continue;
            }
            for (mono, c) in p.terms() {
                writeln!(f, "gamma {nu} {a} {m} {} {}", exps(mono), c)?;
            }
        }
        Ok(())
    }
}

/// Jets of the coordinate functions and of `Γ` around a point `(x, y)`.
struct Chart<'a> {
    table: &'a JetTable,
    n: usize,
    nv: usize,
    order: u32,
    x0: Vec<Scalar>,
    y0: Vec<Vec<Scalar>>,
    x: Vec<Jet>,
    /// `y[μ][j] = y^μ_j`.
    y: Vec<Vec<Jet>>,
    /// `yinv[i][ν] = (y^{-1})^i_ν`.
    yinv: Vec<Vec<Jet>>,
    /// `gam[(ν, α, μ)]`, 0-based.
    gam: BTreeMap<(usize, usize, usize), Jet>,
}

impl<'a> Chart<'a> {
    fn new(table: &'a JetTable, x0: &[Scalar], y0: &[Vec<Scalar>], order: u32) -> Result<Self, JetError> {
        let n = table.n as usize;
        let nv = n + n * n;
        let x: Vec<Jet> = (0..n).map(|m| Jet::variable(nv, order, m, x0[m].clone())).collect();
        let y: Vec<Vec<Jet>> = (0..n)
            .map(|m| (0..n).map(|j| Jet::variable(nv, order, n + m * n + j, y0[m][j].clone())).collect())
            .collect();
        let yinv = invert(&y).ok_or(JetError::SingularFrame)?;
        let mut gam = BTreeMap::new();
        for (&(nu, a, m), p) in &table.christoffel {
            gam.insert((nu as usize - 1, a as usize - 1, m as usize - 1), eval_xpoly(p, &x, nv, order));
        }
        Ok(Chart { table, n, nv, order, x0: x0.to_vec(), y0: y0.to_vec(), x, y, yinv, gam })
    }

    fn x_var(&self, m: usize) -> usize {
        m
    }

    fn y_var(&self, m: usize, j: usize) -> usize {
        self.n + m * self.n + j
    }

    fn zero(&self) -> Jet {
        Jet::zero(self.nv, self.order)
    }

    /// `X_k f` with `k` 0-based.
    fn apply_x(&self, k: usize, f: &Jet) -> Jet {
        let n = self.n;
        let mut inner_y: BTreeMap<(usize, usize), Jet> = BTreeMap::new();
        for nu in 0..n {
            for j in 0..n {
                inner_y.insert((nu, j), f.derivative(self.y_var(nu, j)));
            }
        }
        let mut out = Jet::zero(self.nv, f.order() - 1);
        for m in 0..n {
            let mut term = f.derivative(self.x_var(m));
            for (&(nu, a, mm), g) in &self.gam {
                if mm != m {
                    continue;
                }
                for j in 0..n {
                    term = term.sub(&g.mul(&self.y[a][j]).mul(&inner_y[&(nu, j)]));
                }
            }
            out = out.add(&self.y[m][k].mul(&term));
        }
        out
    }

    /// `Y_i^j f` with 0-based indices.
    fn apply_y(&self, i: usize, j: usize, f: &Jet) -> Jet {
        let mut out = Jet::zero(self.nv, f.order() - 1);
        for m in 0..self.n {
            out = out.add(&self.y[m][i].mul(&f.derivative(self.y_var(m, j))));
        }
        out
    }

    fn apply(&self, d: Der, f: &Jet) -> Jet {
        match d {
            Der::X(k) => self.apply_x(k as usize - 1, f),
            Der::Y(i, j) => self.apply_y(i as usize - 1, j as usize - 1, f),
        }
    }

    fn christoffel_at(&self, nu: usize, a: usize, m: usize) -> Jet {
        self.gam.get(&(nu, a, m)).cloned().unwrap_or_else(|| self.zero())
    }

    /// `γ^i_{jk}(ψ)` for all `(i, j, k)`, 0-based.
    fn gamma(&self) -> Result<BTreeMap<(usize, usize, usize), Jet>, JetError> {
        let n = self.n;
        let (nv, order) = (self.nv, self.order);
        let psi = &self.table.psi;
        let px: Vec<Jet> = psi.iter().map(|p| eval_xpoly(p, &self.x, nv, order)).collect();
        let dpsi: Vec<Vec<XPoly>> = psi.iter().map(|p| (1..=n as Idx).map(|l| d_xpoly(p, l)).collect()).collect();
        let jac: Vec<Vec<Jet>> = dpsi.iter().map(|r| r.iter().map(|p| eval_xpoly(p, &self.x, nv, order)).collect()).collect();
        let jinv = invert(&jac).ok_or(JetError::SingularJacobian)?;
        let mut tilde: BTreeMap<(usize, usize, usize), Jet> = BTreeMap::new();
        for a in 0..n {
            for m in 0..n {
                let mut inner: Vec<Jet> = (0..n)
                    .map(|nu| eval_xpoly(&d_xpoly(&dpsi[nu][a], m as Idx + 1), &self.x, nv, order))
                    .collect();
                for (&(nu, e, z), p) in &self.table.christoffel {
                    let g = eval_xpoly(p, &px, nv, order);
                    let t = g.mul(&jac[e as usize - 1][a]).mul(&jac[z as usize - 1][m]);
                    inner[nu as usize - 1] = inner[nu as usize - 1].add(&t);
                }
                for d in 0..n {
                    let mut v = self.zero();
                    for nu in 0..n {
                        v = v.add(&jinv[d][nu].mul(&inner[nu]));
                    }
                    tilde.insert((d, a, m), v.sub(&self.christoffel_at(d, a, m)));
                }
            }
        }
        let mut out = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut v = self.zero();
                    for d in 0..n {
                        for a in 0..n {
                            for m in 0..n {
                                let t = &tilde[&(d, a, m)];
                                if t.is_zero() {
                                    continue;
                                }
                                v = v.add(&self.yinv[i][d].mul(t).mul(&self.y[a][j]).mul(&self.y[m][k]));
                            }
                        }
                    }
                    out.insert((i, j, k), v);
                }
            }
        }
        Ok(out)
    }

    /// `R^i_{jkl}` from `[X_k, X_l] = Σ R^i_{jkl} Y_i^j` applied to `y^ν_j`.
    fn curvature(&self, i: usize, j: usize, k: usize, l: usize) -> Jet {
        let mut out = Jet::zero(self.nv, self.order.saturating_sub(2));
        for nu in 0..self.n {
            let f = &self.y[nu][j];
            let c = self.apply_x(k, &self.apply_x(l, f)).sub(&self.apply_x(l, &self.apply_x(k, f)));
            out = out.add(&self.yinv[i][nu].mul(&c));
        }
        out
    }

    /// The point `ψ̃(x, y) = (ψ(x), ∂ψ(x) y)`.
    fn lifted_point(&self) -> (Vec<Scalar>, Vec<Vec<Scalar>>) {
        let n = self.n;
        let x: Vec<Scalar> = self.table.psi.iter().map(|p| eval_xpoly_at(p, &self.x0)).collect();
        let mut y = vec![vec![Scalar::zero(); n]; n];
        for nu in 0..n {
            for lam in 0..n {
                let d = eval_xpoly_at(&d_xpoly(&self.table.psi[nu], lam as Idx + 1), &self.x0);
                for j in 0..n {
                    y[nu][j] += &d * &self.y0[lam][j];
                }
            }
        }
        (x, y)
    }
}

/// Jets of `γ^i_{jk}` at a point, indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaJets {
    n: Idx,
    jets: BTreeMap<(usize, usize, usize), Jet>,
}

impl GammaJets {
    pub fn get(&self, i: Idx, j: Idx, k: Idx) -> &Jet {
        &self.jets[&(i as usize - 1, j as usize - 1, k as usize - 1)]
    }

    pub fn value(&self, i: Idx, j: Idx, k: Idx) -> Scalar {
        self.get(i, j, k).value()
    }

    pub fn n(&self) -> Idx {
        self.n
    }
}

fn check_point(n: Idx, x: &[Scalar], y: &[Vec<Scalar>]) -> Result<(), JetError> {
    let n = n as usize;
    if x.len() != n {
        return Err(JetError::Dimension { expected: n, got: x.len() });
    }
    if y.len() != n || y.iter().any(|r| r.len() != n) {
        return Err(JetError::Dimension { expected: n * n, got: y.iter().map(Vec::len).sum() });
    }
    Ok(())
}

/// `γ^i_{jk}(x, y, ψ̃)` as jets of the given order around `(x, y)`, with
/// `y[μ][j] = y^μ_j`.
pub fn gamma_from_jets(table: &JetTable, x: &[Scalar], y: &[Vec<Scalar>], order: u32) -> Result<GammaJets, JetError> {
    check_point(table.n, x, y)?;
    let chart = Chart::new(table, x, y, order)?;
    Ok(GammaJets { n: table.n, jets: chart.gamma()? })
}

/// Numerical value of a coefficient-ring element at `(x, y)` with the jet
/// symbols of `label` realized by the table.
pub fn evaluate(table: &JetTable, label: &Diffeo, f: &CoeffPoly, x: &[Scalar], y: &[Vec<Scalar>]) -> Result<Scalar, JetError> {
    check_point(table.n, x, y)?;
    let need = f.atoms().iter().map(atom_order).max().unwrap_or(0);
    let chart = Chart::new(table, x, y, need)?;
    let gammas = chart.gamma()?;
    let mut out = Scalar::zero();
    let mut cache: BTreeMap<Atom, Scalar> = BTreeMap::new();
    for (m, c) in f.terms() {
        let mut t = c.clone();
        for (a, e) in m.factors() {
            let v = match cache.get(a) {
                Some(v) => v.clone(),
                None => {
                    let v = atom_value(&chart, &gammas, label, a)?;
                    cache.insert(a.clone(), v.clone());
                    v
                }
            };
            for _ in 0..*e {
                t *= &v;
            }
        }
        out += t;
    }
    Ok(out)
}

fn atom_order(a: &Atom) -> u32 {
    match a {
        Atom::Gamma { ells, .. } => ells.len() as u32,
        Atom::Curv { ells, .. } => ells.len() as u32 + 2,
        Atom::Pull { inner, .. } => atom_order(inner),
        Atom::Fn { .. } => 0,
    }
}

fn atom_value(
    chart: &Chart<'_>,
    gammas: &BTreeMap<(usize, usize, usize), Jet>,
    label: &Diffeo,
    a: &Atom,
) -> Result<Scalar, JetError> {
    let unsupported = || JetError::Unsupported(format!("{}", Poly::atom(a.clone())));
    match a {
        Atom::Gamma { phi, i, j, k, ells } if phi == label => {
            let mut g = gammas[&(*i as usize - 1, *j as usize - 1, *k as usize - 1)].clone();
            for &l in ells {
                g = chart.apply_x(l as usize - 1, &g);
            }
            Ok(g.value())
        }
        Atom::Curv { i, j, k, l, ells } => {
            let mut r = chart.curvature(*i as usize - 1, *j as usize - 1, *k as usize - 1, *l as usize - 1);
            for &m in ells {
                r = chart.apply_x(m as usize - 1, &r);
            }
            Ok(r.value())
        }
        Atom::Pull { phi, inner } if phi == label => {
            let (x, y) = chart.lifted_point();
            evaluate(chart.table, label, &Poly::atom((**inner).clone()), &x, &y)
        }
        _ => Err(unsupported()),
    }
}

/// The `dx` coefficients of `ψ̃^*ω^i_j − ω^i_j` and of `Σ_k γ^i_{jk} θ^k`,
/// and the `dy` coefficients of `ψ̃^*ω^i_j − ω^i_j`, as jets around `(x, y)`.
struct PullbackSides {
    lhs_dx: BTreeMap<(usize, usize, usize), Jet>,
    rhs_dx: BTreeMap<(usize, usize, usize), Jet>,
    lhs_dy: BTreeMap<(usize, usize, usize, usize), Jet>,
}

fn pullback_sides(chart: &Chart<'_>) -> Result<PullbackSides, JetError> {
    let n = chart.n;
    let (nv, order) = (chart.nv, chart.order);
    let table = chart.table;
    let px: Vec<Jet> = table.psi.iter().map(|p| eval_xpoly(p, &chart.x, nv, order)).collect();
    let dpsi: Vec<Vec<XPoly>> = table.psi.iter().map(|p| (1..=n as Idx).map(|l| d_xpoly(p, l)).collect()).collect();
    let jac: Vec<Vec<Jet>> = dpsi.iter().map(|r| r.iter().map(|p| eval_xpoly(p, &chart.x, nv, order)).collect()).collect();
    let mut yp = vec![vec![chart.zero(); n]; n];
    for nu in 0..n {
        for j in 0..n {
            for lam in 0..n {
                yp[nu][j] = yp[nu][j].add(&jac[nu][lam].mul(&chart.y[lam][j]));
            }
        }
    }
    let ypinv = invert(&yp).ok_or(JetError::SingularJacobian)?;
    let gam_at_psi: BTreeMap<(usize, usize, usize), Jet> = table
        .christoffel
        .iter()
        .map(|(&(nu, a, m), p)| ((nu as usize - 1, a as usize - 1, m as usize - 1), eval_xpoly(p, &px, nv, order)))
        .collect();
    let gammas = chart.gamma()?;
    let mut out = PullbackSides { lhs_dx: BTreeMap::new(), rhs_dx: BTreeMap::new(), lhs_dy: BTreeMap::new() };
    for i in 0..n {
        for j in 0..n {
            for rho in 0..n {
                let mut inner: Vec<Jet> = (0..n)
                    .map(|nu| {
                        let mut v = chart.zero();
                        for lam in 0..n {
                            let dd = eval_xpoly(&d_xpoly(&dpsi[nu][lam], rho as Idx + 1), &chart.x, nv, order);
                            v = v.add(&dd.mul(&chart.y[lam][j]));
                        }
                        v
                    })
                    .collect();
                for (&(nu, a, m), g) in &gam_at_psi {
                    inner[nu] = inner[nu].add(&g.mul(&yp[a][j]).mul(&jac[m][rho]));
                }
                let mut pulled = chart.zero();
                for nu in 0..n {
                    pulled = pulled.add(&ypinv[i][nu].mul(&inner[nu]));
                }
                let mut plain = chart.zero();
                for (&(nu, a, m), g) in &chart.gam {
                    if m == rho {
                        plain = plain.add(&chart.yinv[i][nu].mul(g).mul(&chart.y[a][j]));
                    }
                }
                out.lhs_dx.insert((i, j, rho), pulled.sub(&plain));
                let mut rhs = chart.zero();
                for k in 0..n {
                    rhs = rhs.add(&gammas[&(i, j, k)].mul(&chart.yinv[k][rho]));
                }
                out.rhs_dx.insert((i, j, rho), rhs);
                for lam in 0..n {
                    let mut v = chart.zero();
                    for nu in 0..n {
                        v = v.add(&ypinv[i][nu].mul(&jac[nu][lam]));
                    }
                    out.lhs_dy.insert((i, j, lam, j), v.sub(&chart.yinv[i][lam]));
                }
            }
        }
    }
    Ok(out)
}

fn random_scalar(rng: &mut SuiteRng, range: i64) -> Scalar {
    rat(rng.gen_range(-range..=range), rng.gen_range(1..=3))
}

/// A random invertible rational frame.
pub fn random_frame(rng: &mut SuiteRng, n: Idx) -> Vec<Vec<Scalar>> {
    loop {
        let y: Vec<Vec<Scalar>> = (0..n).map(|_| (0..n).map(|_| random_scalar(rng, 3)).collect()).collect();
        let m: Vec<Vec<Jet>> = y.iter().map(|r| r.iter().map(|c| Jet::constant(1, 0, c.clone())).collect()).collect();
        if invert(&m).is_some() {
            return y;
        }
    }
}

fn random_xpoly(rng: &mut SuiteRng, n: Idx, min_degree: u32, max_degree: u32, terms: usize) -> XPoly {
    let mut p = Poly::zero();
    for _ in 0..terms {
        let deg = rng.gen_range(min_degree..=max_degree);
        let mut factors = Vec::new();
        for _ in 0..deg {
            factors.push((rng.gen_range(1..=n), 1));
        }
        p.add_assign(&Poly::term(Mono::from_factors(factors), random_scalar(rng, 2)));
    }
    p
}

/// `ψ = x + (random terms of degree 2..=max_degree)`, so `∂ψ(0) = Id`.
pub fn random_psi(rng: &mut SuiteRng, n: Idx, max_degree: u32) -> Vec<XPoly> {
    (1..=n).map(|v| Poly::atom(v).add(&random_xpoly(rng, n, 2, max_degree.max(2), 2))).collect()
}

/// Random symmetric Christoffel symbols vanishing at the origin, of degree
/// at most 2.
pub fn random_christoffel(rng: &mut SuiteRng, table: JetTable) -> JetTable {
    let n = table.n;
    let mut t = table;
    for nu in 1..=n {
        for a in 1..=n {
            for m in a..=n {
                if rng.gen_bool(0.6) {
                    t = t.with_christoffel(nu, a, m, random_xpoly(rng, n, 1, 2, 2));
                }
            }
        }
    }
    t
}

/// Checks `ψ̃^*ω − ω = γ·θ` componentwise as first-order jet identities,
/// at `x = 0` and at sampled rational points, together with the symmetry
/// of `γ` and the agreement of the coefficient ring's derivation rules
/// (including the higher `γ` relations) with the coordinate fields.
pub fn verify_pullback_identity(table: &JetTable, samples: usize, seed: u64) -> SuiteReport {
    let n = table.n;
    let label = Diffeo::named("psi");
    let mut rng = random::rng(seed);
    let mut report = SuiteReport::new(&format!("jet model n={n}"));
    let mut identity = Check::new("pullback identity psi~*omega - omega = gamma.theta");
    let mut vertical = Check::new("pullback preserves the vertical part of omega");
    let mut symmetric = Check::new("gamma symmetric in its lower pair");
    let mut derivations = Check::new("coefficient-ring derivations match coordinate fields");
    for s in 0..samples {
        let y = random_frame(&mut rng, n);
        let x: Vec<Scalar> = if s % 2 == 0 {
            vec![Scalar::zero(); n as usize]
        } else {
            (0..n).map(|_| rat(rng.gen_range(-2..=2), rng.gen_range(2..=5))).collect()
        };
        let Ok(chart) = Chart::new(table, &x, &y, 1) else { continue };
        let sides = match pullback_sides(&chart) {
            Ok(sides) => sides,
            Err(JetError::SingularJacobian) if s % 2 == 1 => continue,
            Err(e) => {
                identity.record(false, &|| format!("{e}"));
                continue;
            }
        };
        for (key, l) in &sides.lhs_dx {
            let r = &sides.rhs_dx[key];
            identity.record(l.agrees(r), &|| format!("x={x:?} y={y:?} component {key:?}: {l} vs {r}"));
        }
        for (key, l) in &sides.lhs_dy {
            vertical.record(l.is_zero(), &|| format!("x={x:?} y={y:?} component {key:?}: {l}"));
        }
        let Ok(g) = gamma_from_jets(table, &x, &y, 2) else { continue };
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    let (a, b) = (g.get(i, j, k), g.get(i, k, j));
                    symmetric.record(a == b, &|| format!("({i},{j},{k}): {a} vs {b}"));
                }
            }
        }
        let word: Vec<Der> = (0..rng.gen_range(1..=2)).map(|_| random::random_der(&mut rng, n)).collect();
        let (i, j, k) = (rng.gen_range(1..=n), rng.gen_range(1..=n), rng.gen_range(1..=n));
        let symbolic = coeff_ring::apply_word(&coeff_ring::gamma(label.clone(), i, j, k), &word, n);
        let Ok(chart) = Chart::new(table, &x, &y, word.len() as u32) else { continue };
        let Ok(gammas) = chart.gamma() else { continue };
        let mut coord = gammas[&(i as usize - 1, j as usize - 1, k as usize - 1)].clone();
        for d in word.iter().rev() {
            coord = chart.apply(*d, &coord);
        }
        match evaluate(table, &label, &symbolic, &x, &y) {
            Ok(v) => {
                let c = coord.value();
                derivations.record(v == c, &|| format!("{word:?} gamma({i},{j},{k}) at x={x:?}: ring {v} vs fields {c}"));
            }
            Err(e) => derivations.record(false, &|| format!("{e}")),
        }
    }
    report.push(identity);
    report.push(vertical);
    report.push(symmetric);
    report.push(derivations);
    report
}

/// The jet checks of the acceptance criteria: random `ψ` of degree at most
/// `max_degree`, flat and with sampled polynomial `Γ`, for `n = 1..=max_n`.
pub fn jet_suite(max_n: Idx, max_degree: u32, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("jet model");
    let mut rng = random::rng(seed);
    for n in 1..=max_n {
        let flat = JetTable::flat(n, random_psi(&mut rng, n, max_degree)).expect("dpsi(0) = Id");
        report.extend(verify_pullback_identity(&flat, samples, rng.gen()));
        let base = JetTable::flat(n, random_psi(&mut rng, n, max_degree)).expect("dpsi(0) = Id");
        let curved = random_christoffel(&mut rng, base);
        report.extend(verify_pullback_identity(&curved, samples, rng.gen()));
    }
    let a = rat(3, 2);
    let t = JetTable::flat(1, vec![Poly::atom(1).add(&Poly::term(Mono::from_factors(vec![(1, 2)]), a.clone()))])
        .expect("dpsi(0) = 1");
    let y = rat(5, 7);
    let ok = gamma_from_jets(&t, &[Scalar::zero()], &[vec![y.clone()]], 0).map(|g| g.value(1, 1, 1));
    let expect = int(2) * &a * &y;
    report.single("gamma(0, y, x + a x^2) = 2 a y", ok.as_ref() == Ok(&expect), &|| format!("{ok:?} vs {expect}"));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x1() -> XPoly {
        Poly::atom(1)
    }

    #[test]
    fn identity_gives_zero() {
        for n in 1..=2 {
            let mut rng = random::rng(3);
            let t = random_christoffel(&mut rng, JetTable::identity(n));
            let y = random_frame(&mut rng, n);
            let g = gamma_from_jets(&t, &vec![rat(1, 3); n as usize], &y, 2).unwrap();
            for j in g.jets.values() {
                assert!(j.is_zero());
            }
        }
    }

    #[test]
    fn quadratic_n1() {
        let a = rat(-2, 5);
        let psi = x1().add(&Poly::term(Mono::from_factors(vec![(1, 2)]), a.clone()));
        let t = JetTable::flat(1, vec![psi]).unwrap();
        for y in [rat(1, 1), rat(-3, 4)] {
            let g = gamma_from_jets(&t, &[Scalar::zero()], &[vec![y.clone()]], 0).unwrap();
            assert_eq!(g.value(1, 1, 1), int(2) * &a * &y);
        }
    }

    #[test]
    fn n1_cubic_passes() {
        let psi = x1()
            .add(&Poly::term(Mono::from_factors(vec![(1, 2)]), rat(1, 2)))
            .add(&Poly::term(Mono::from_factors(vec![(1, 3)]), rat(-1, 3)));
        let t = JetTable::flat(1, vec![psi]).unwrap();
        let r = verify_pullback_identity(&t, 6, 1);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn parse_round_trip() {
        let src = "n 2\npsi 1 1 0 1\npsi 1 2 1 1/2\ngamma 2 1 2 1 0 -3\n";
        let t = JetTable::parse(src).unwrap();
        assert_eq!(t.christoffel(2, 2, 1), t.christoffel(2, 1, 2));
        assert_eq!(t.psi()[1], Poly::atom(2));
        let again = JetTable::parse(&t.to_string()).unwrap();
        assert_eq!(t, again);
        assert!(matches!(JetTable::parse("n 1\npsi 1 1 0\n"), Err(JetError::SingularJacobian)));
        assert!(matches!(JetTable::parse("psi 1 1 1"), Err(JetError::Parse { line: 1, .. })));
    }

    #[test]
    fn suite_small() {
        let r = jet_suite(2, 4, 4, 5);
        assert!(r.passed(), "{r}");
    }
}
