//! Sparse commutative polynomials with exact rational coefficients.
//!
//! The polynomial type is generic over its atom type so that the coefficient
//! ring, the multi-point function algebra of the van Est map and the simplex
//! forms can share one implementation. Monomials are sorted `(atom, exponent)`
//! lists; zero coefficients are never stored.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Scalar = BigRational;

/// Builds the scalar `num/den`.
pub fn rat(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer scalar `v`.
pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

/// Formats a scalar as `p` or `p/q`.
pub fn fmt_scalar(s: &Scalar, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if s.denom().is_one() {
        write!(f, "{}", s.numer())
    } else {
        write!(f, "{}/{}", s.numer(), s.denom())
    }
}

/// A commutative monomial: sorted atoms with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono<A> {
    factors: Vec<(A, u32)>,
}

impl<A: Ord + Clone> Mono<A> {
    pub fn one() -> Self {
        Mono { factors: Vec::new() }
    }

    pub fn atom(a: A) -> Self {
        Mono { factors: alloc::vec![(a, 1)] }
    }

    /// Builds a monomial from arbitrary `(atom, exponent)` pairs.
    pub fn from_factors(mut factors: Vec<(A, u32)>) -> Self {
        factors.retain(|(_, e)| *e > 0);
        factors.sort_by(|x, y| x.0.cmp(&y.0));
        let mut out: Vec<(A, u32)> = Vec::with_capacity(factors.len());
        for (a, e) in factors {
            match out.last_mut() {
                Some((b, f)) if *b == a => *f += e,
                _ => out.push((a, e)),
            }
        }
        Mono { factors: out }
    }

    pub fn factors(&self) -> &[(A, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| *e).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, e) = &self.factors[i];
            let (b, f) = &other.factors[j];
            match a.cmp(b) {
                core::cmp::Ordering::Less => {
                    out.push((a.clone(), *e));
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push((b.clone(), *f));
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    out.push((a.clone(), e + f));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Mono { factors: out }
    }

    /// Lowers the exponent of the factor at `pos` by one.
    pub fn without_one(&self, pos: usize) -> Self {
        let mut f = self.factors.clone();
        if f[pos].1 == 1 {
            f.remove(pos);
        } else {
            f[pos].1 -= 1;
        }
        Mono { factors: f }
    }

    /// Splits the monomial by a predicate on atoms.
    pub fn partition(&self, mut pred: impl FnMut(&A) -> bool) -> (Self, Self) {
        let (yes, no): (Vec<_>, Vec<_>) = self.factors.iter().cloned().partition(|(a, _)| pred(a));
        (Mono { factors: yes }, Mono { factors: no })
    }
}

/// Sparse polynomial over [`Scalar`] in atoms of type `A`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly<A: Ord> {
    terms: BTreeMap<Mono<A>, Scalar>,
}

impl<A: Ord + Clone> Default for Poly<A> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<A: Ord + Clone> Poly<A> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Mono::one(), c)
    }

    pub fn atom(a: A) -> Self {
        Self::term(Mono::atom(a), Scalar::one())
    }

    pub fn term(m: Mono<A>, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn mono(m: Mono<A>) -> Self {
        Self::term(m, Scalar::one())
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

    pub fn terms(&self) -> impl Iterator<Item = (&Mono<A>, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Mono<A>, Scalar)> {
        self.terms.into_iter()
    }

    /// Returns the constant term.
    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Mono::one()).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Returns `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Mono<A>, c: Scalar) {
        if c.is_zero() {
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
        for (m, c) in other.terms.iter() {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// Adds `c * m * other` to `self`.
    pub fn add_scaled(&mut self, other: &Self, c: &Scalar, m: &Mono<A>) {
        if c.is_zero() {
            return;
        }
        for (m2, c2) in other.terms.iter() {
            self.add_term(m.mul(m2), c * c2);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono<A>, c: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c, m);
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (small, big) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut out = Self::zero();
        for (m, c) in small.terms.iter() {
            out.add_scaled(big, c, m);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Applies a derivation given by its values on atoms (Leibniz rule).
    pub fn derive_with(&self, mut on_atom: impl FnMut(&A) -> Self) -> Self {
        let mut out = Self::zero();
        let mut cache: BTreeMap<A, Self> = BTreeMap::new();
        for (m, c) in self.terms.iter() {
            for (pos, (a, e)) in m.factors().iter().enumerate() {
                let da = cache.entry(a.clone()).or_insert_with(|| on_atom(a));
                if da.is_zero() {
                    continue;
                }
                let rest = m.without_one(pos);
                let coef = c * Scalar::from_integer(BigInt::from(*e));
                out.add_scaled(da, &coef, &rest);
            }
        }
        out
    }

    /// Ring homomorphism determined by images of atoms.
    pub fn map_atoms<B: Ord + Clone>(&self, mut image: impl FnMut(&A) -> Poly<B>) -> Poly<B> {
        let mut cache: BTreeMap<A, Poly<B>> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in self.terms.iter() {
            let mut acc = Poly::constant(c.clone());
            for (a, e) in m.factors() {
                let img = cache.entry(a.clone()).or_insert_with(|| image(a)).clone();
                for _ in 0..*e {
                    acc = acc.mul(&img);
                }
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        out
    }

    /// Fallible variant of [`Poly::map_atoms`].
    pub fn try_map_atoms<B: Ord + Clone, E>(
        &self,
        mut image: impl FnMut(&A) -> Result<Poly<B>, E>,
    ) -> Result<Poly<B>, E> {
        let mut cache: BTreeMap<A, Poly<B>> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in self.terms.iter() {
            let mut acc = Poly::constant(c.clone());
            for (a, e) in m.factors() {
                let img = match cache.get(a) {
                    Some(p) => p.clone(),
                    None => {
                        let p = image(a)?;
                        cache.insert(a.clone(), p.clone());
                        p
                    }
                };
                for _ in 0..*e {
                    acc = acc.mul(&img);
                }
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    /// Set of atoms occurring in the polynomial.
    pub fn atoms(&self) -> alloc::collections::BTreeSet<A> {
        let mut out = alloc::collections::BTreeSet::new();
        for m in self.terms.keys() {
            for (a, _) in m.factors() {
                out.insert(a.clone());
            }
        }
        out
    }

    /// Largest absolute numerator or denominator, a cheap size measure.
    pub fn max_coefficient_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().abs().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

/// Writes a polynomial as a `+`/`-` separated sum, formatting each monomial with `fmt_mono`.
///
/// `fmt_mono` writes the monomial's factors joined by `*` and returns `false`
/// when the monomial is the unit (so that the coefficient must be printed).
pub fn write_sum<'a, A: 'a + Ord + Clone, I>(
    f: &mut fmt::Formatter<'_>,
    terms: I,
    mut fmt_mono: impl FnMut(&mut fmt::Formatter<'_>, &Mono<A>) -> fmt::Result,
) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Mono<A>, &'a Scalar)>,
{
    let mut first = true;
    for (m, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        if m.is_one() {
            fmt_scalar(&abs, f)?;
        } else {
            if !abs.is_one() {
                fmt_scalar(&abs, f)?;
                write!(f, "*")?;
            }
            fmt_mono(f, m)?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly<u8> {
        Poly::atom(1)
    }
    fn y() -> Poly<u8> {
        Poly::atom(2)
    }

    #[test]
    fn arithmetic_basics() {
        let p = x().add(&y());
        let q = x().sub(&y());
        let lhs = p.mul(&q);
        let rhs = x().mul(&x()).sub(&y().mul(&y()));
        assert_eq!(lhs, rhs);
        assert!(x().sub(&x()).is_zero());
        assert_eq!(x().add(&Poly::zero()), x());
    }

    #[test]
    fn derivation_leibniz() {
        let p = x().pow(3).mul(&y());
        let d = p.derive_with(|a| if *a == 1 { Poly::one() } else { Poly::zero() });
        assert_eq!(d, x().pow(2).mul(&y()).scale(&int(3)));
    }

    #[test]
    fn monomial_normalization() {
        let m = Mono::from_factors(alloc::vec![(2u8, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(m.factors(), &[(1, 2), (2, 4)]);
    }
}
