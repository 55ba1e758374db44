//! Text syntax for generators, tensors, coefficients and Weil forms.
//!
//! ```text
//! tensor := tterm (('+'|'-') tterm)*
//! tterm  := prod ('(x)' prod)*
//! sum    := prod (('+'|'-') prod)*
//! prod   := factor ('*' factor)*
//! factor := '-' factor | rational | 'X[' k ']' | 'Y[' i ',' j ']'
//!         | 'D[' i ';' j ',' k (';' ells)? ']' | 'a(' coeff ')' | 'b(' coeff ')'
//!         | '(' sum ')'
//! coeff  := symbol | rational | 'R[' i ',' j ',' k ',' l ']'
//!         | 'g[' phi ';' i ';' j ',' k (';' ells)? ']'
//!         | 'Dx[' k '](' coeff ')' | 'Dy[' i ',' j '](' coeff ')'
//!         | 'pb[' phi '](' coeff ')'
//!         with '+', '-', '*', '^' and parentheses
//! weil   := rational | 'th[' i ',' j ']' | 'R[' i ',' j ']'
//!         with '+', '-', '*', '^' and parentheses
//! ```
//!
//! Every form printed by the engine parses back to the same value.

use std::str::FromStr;

use transverse_hopf::coeff_ring::{self, CoeffPoly, Der, Diffeo, Idx};
use transverse_hopf::hopf_core::{self, Expr, HElement};
use transverse_hopf::hopf_structure::TensorElement;
use transverse_hopf::weil_complex::WeilForm;
use transverse_hopf::{Poly, Scalar};

/// A syntax or index error at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at column {}: {msg}", .pos + 1)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// A sum of tensor products of generator expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorExpr {
    pub arity: usize,
    /// Each term lists one expression per slot; signs sit in the first slot.
    pub terms: Vec<Vec<Expr>>,
}

impl TensorExpr {
    pub fn evaluate(&self, n: Idx) -> TensorElement {
        let mut out = TensorElement::zero(n, self.arity);
        for slots in &self.terms {
            let hs: Vec<HElement> = slots.iter().map(|e| hopf_core::normalize(e, n).expect("indices checked while parsing")).collect();
            out.add_assign(&TensorElement::from_slots(n, &hs));
        }
        out
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    n: Idx,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, n: Idx) -> Self {
        Parser { src, pos: 0, n }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.rest().chars().next()
    }

    fn at(&mut self, s: &str) -> bool {
        self.ws();
        self.rest().starts_with(s)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.at(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected '{s}'"))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.ws();
        if self.pos < self.src.len() {
            if self.at("(x)") {
                return self.err("tensor product not allowed here");
            }
            return self.err("unexpected input");
        }
        Ok(())
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.ws();
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        if len == 0 {
            return self.err("expected a number");
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Ok(s)
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| ParseError { pos: start, msg: "number too large".into() })
    }

    fn index(&mut self) -> Result<Idx, ParseError> {
        self.ws();
        let start = self.pos;
        let v = self.number()?;
        if v == 0 || v > self.n as u32 {
            return Err(ParseError { pos: start, msg: format!("index {v} outside 1..={}", self.n) });
        }
        Ok(v as Idx)
    }

    fn index_list(&mut self) -> Result<Vec<Idx>, ParseError> {
        let mut out = vec![self.index()?];
        while self.eat(",") {
            out.push(self.index()?);
        }
        Ok(out)
    }

    fn rational(&mut self) -> Result<Scalar, ParseError> {
        let start = self.pos;
        let num = self.digits()?;
        let text = if self.rest().starts_with('/') {
            self.pos += 1;
            if !self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                return self.err("expected a denominator");
            }
            let den = self.digits()?;
            format!("{num}/{den}")
        } else {
            num.to_string()
        };
        match Scalar::from_str(&text) {
            Ok(s) => Ok(s),
            Err(_) => Err(ParseError { pos: start, msg: "invalid rational".into() }),
        }
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.ws();
        let r = self.rest();
        let mut chars = r.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return self.err("expected a name"),
        }
        let len = chars.find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_')).map_or(r.len(), |(i, _)| i);
        self.pos += len;
        Ok(&r[..len])
    }

    fn diffeo(&mut self) -> Result<Diffeo, ParseError> {
        Ok(Diffeo::named(self.ident()?))
    }

    fn power(&mut self) -> Result<u32, ParseError> {
        if self.eat("^") {
            self.number()
        } else {
            Ok(1)
        }
    }

    // Generator expressions.

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut parts = Vec::new();
        let mut neg = self.eat("-");
        loop {
            let p = self.prod()?;
            parts.push(if neg { Expr::Neg(Box::new(p)) } else { p });
            if self.eat("+") {
                neg = false;
            } else if self.eat("-") {
                neg = true;
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::Sum(parts) })
    }

    fn prod(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.eat("*") {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Prod(factors) })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => return Ok(Expr::Scalar(self.rational()?)),
            None => return self.err("unexpected end of input"),
            _ => {}
        }
        if self.eat("X[") {
            let k = self.index()?;
            self.expect("]")?;
            return Ok(Expr::X(k));
        }
        if self.eat("Y[") {
            let i = self.index()?;
            self.expect(",")?;
            let j = self.index()?;
            self.expect("]")?;
            return Ok(Expr::Y(i, j));
        }
        if self.eat("D[") {
            let i = self.index()?;
            self.expect(";")?;
            let j = self.index()?;
            self.expect(",")?;
            let k = self.index()?;
            let ells = if self.eat(";") { self.index_list()? } else { Vec::new() };
            self.expect("]")?;
            return Ok(Expr::Delta { i, j, k, ells });
        }
        for (prefix, beta) in [("a(", false), ("b(", true)] {
            if self.eat(prefix) {
                let c = self.coeff()?;
                self.expect(")")?;
                return Ok(if beta { Expr::Beta(c) } else { Expr::Alpha(c) });
            }
        }
        if self.at("(x)") {
            return self.err("missing tensor factor");
        }
        if self.eat("(") {
            let e = self.sum()?;
            self.expect(")")?;
            return Ok(e);
        }
        self.err("expected a generator")
    }

    fn tensor(&mut self) -> Result<TensorExpr, ParseError> {
        let mut terms: Vec<Vec<Expr>> = Vec::new();
        let mut arity = None;
        let mut neg = self.eat("-");
        loop {
            let start = self.pos;
            let mut slots = vec![self.prod()?];
            while self.eat("(x)") {
                slots.push(self.prod()?);
            }
            match arity {
                None => arity = Some(slots.len()),
                Some(a) if a != slots.len() => {
                    return Err(ParseError { pos: start, msg: format!("term has {} tensor factors, expected {a}", slots.len()) })
                }
                _ => {}
            }
            if neg {
                slots[0] = Expr::Neg(Box::new(slots[0].clone()));
            }
            terms.push(slots);
            if self.eat("+") {
                neg = false;
            } else if self.eat("-") {
                neg = true;
            } else {
                break;
            }
        }
        Ok(TensorExpr { arity: arity.unwrap_or(1), terms })
    }

    // Coefficients.

    fn coeff(&mut self) -> Result<CoeffPoly, ParseError> {
        let mut out = Poly::zero();
        let mut neg = self.eat("-");
        loop {
            let t = self.coeff_prod()?;
            out = if neg { out.sub(&t) } else { out.add(&t) };
            if self.eat("+") {
                neg = false;
            } else if self.eat("-") {
                neg = true;
            } else {
                return Ok(out);
            }
        }
    }

    fn coeff_prod(&mut self) -> Result<CoeffPoly, ParseError> {
        let mut out = self.coeff_pow()?;
        while self.eat("*") {
            out = out.mul(&self.coeff_pow()?);
        }
        Ok(out)
    }

    fn coeff_pow(&mut self) -> Result<CoeffPoly, ParseError> {
        let base = self.coeff_atom()?;
        let e = self.power()?;
        Ok(base.pow(e))
    }

    fn wrapped_coeff(&mut self) -> Result<CoeffPoly, ParseError> {
        self.expect("(")?;
        let c = self.coeff()?;
        self.expect(")")?;
        Ok(c)
    }

    fn coeff_atom(&mut self) -> Result<CoeffPoly, ParseError> {
        let n = self.n;
        if self.eat("-") {
            return Ok(self.coeff_atom()?.neg());
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => return Ok(Poly::constant(self.rational()?)),
            None => return self.err("unexpected end of input"),
            _ => {}
        }
        if self.eat("R[") {
            let v = self.index_list()?;
            if v.len() != 4 {
                return self.err("curvature takes four indices");
            }
            self.expect("]")?;
            return Ok(coeff_ring::curv(v[0], v[1], v[2], v[3]));
        }
        if self.eat("g[") {
            let phi = self.diffeo()?;
            self.expect(";")?;
            let i = self.index()?;
            self.expect(";")?;
            let j = self.index()?;
            self.expect(",")?;
            let k = self.index()?;
            let ells = if self.eat(";") { self.index_list()? } else { Vec::new() };
            self.expect("]")?;
            return Ok(coeff_ring::gamma_derived(phi, i, j, k, &ells, n));
        }
        if self.eat("Dx[") {
            let k = self.index()?;
            self.expect("]")?;
            let c = self.wrapped_coeff()?;
            return Ok(coeff_ring::apply(&c, Der::X(k), n));
        }
        if self.eat("Dy[") {
            let i = self.index()?;
            self.expect(",")?;
            let j = self.index()?;
            self.expect("]")?;
            let c = self.wrapped_coeff()?;
            return Ok(coeff_ring::apply(&c, Der::Y(i, j), n));
        }
        if self.eat("pb[") {
            let phi = self.diffeo()?;
            self.expect("]")?;
            let c = self.wrapped_coeff()?;
            return Ok(coeff_ring::pull(&phi, &c));
        }
        if self.eat("(") {
            let c = self.coeff()?;
            self.expect(")")?;
            return Ok(c);
        }
        let name = self.ident()?;
        Ok(coeff_ring::base_fn(name))
    }

    // Weil forms.

    fn weil(&mut self, cap: u32) -> Result<WeilForm, ParseError> {
        let mut out = WeilForm::zero(self.n).with_cap(cap);
        let mut neg = self.eat("-");
        loop {
            let mut t = self.weil_pow(cap)?;
            while self.eat("*") {
                t = t.mul(&self.weil_pow(cap)?);
            }
            out = if neg { out.sub(&t) } else { out.add(&t) };
            if self.eat("+") {
                neg = false;
            } else if self.eat("-") {
                neg = true;
            } else {
                return Ok(out);
            }
        }
    }

    fn weil_pow(&mut self, cap: u32) -> Result<WeilForm, ParseError> {
        let base = self.weil_atom(cap)?;
        let e = self.power()?;
        Ok(base.pow(e))
    }

    fn weil_atom(&mut self, cap: u32) -> Result<WeilForm, ParseError> {
        let n = self.n;
        if self.eat("-") {
            return Ok(self.weil_atom(cap)?.neg());
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => return Ok(WeilForm::scalar(n, self.rational()?).with_cap(cap)),
            None => return self.err("unexpected end of input"),
            _ => {}
        }
        for (prefix, curv) in [("th[", false), ("R[", true)] {
            if self.eat(prefix) {
                let i = self.index()?;
                self.expect(",")?;
                let j = self.index()?;
                self.expect("]")?;
                let f = if curv { WeilForm::curv(n, i, j) } else { WeilForm::theta(n, i, j) };
                return Ok(f.with_cap(cap));
            }
        }
        if self.eat("(") {
            let w = self.weil(cap)?;
            self.expect(")")?;
            return Ok(w);
        }
        self.err("expected th[i,j], R[i,j] or a rational")
    }
}

/// Parses a generator expression of `ℋ` in dimension `n`.
pub fn parse_expr(src: &str, n: Idx) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src, n);
    let e = p.sum()?;
    p.finish()?;
    Ok(e)
}

/// Parses and normalizes an element of `ℋ`.
pub fn parse_element(src: &str, n: Idx) -> Result<HElement, ParseError> {
    let e = parse_expr(src, n)?;
    Ok(hopf_core::normalize(&e, n).expect("indices checked while parsing"))
}

/// Parses a sum of `(x)`-separated tensor products.
pub fn parse_tensor(src: &str, n: Idx) -> Result<TensorExpr, ParseError> {
    let mut p = Parser::new(src, n);
    let t = p.tensor()?;
    p.finish()?;
    Ok(t)
}

/// Parses a coefficient-ring element.
pub fn parse_coeff(src: &str, n: Idx) -> Result<CoeffPoly, ParseError> {
    let mut p = Parser::new(src, n);
    let c = p.coeff()?;
    p.finish()?;
    Ok(c)
}

/// Parses a cochain component of degree `q`: a coefficient for `q = 0`,
/// otherwise a tensor with `q` factors.
pub fn parse_component(src: &str, n: Idx, q: usize) -> Result<TensorElement, ParseError> {
    if q == 0 {
        return Ok(TensorElement::from_coeff(n, &parse_coeff(src, n)?));
    }
    let t = parse_tensor(src, n)?;
    if t.arity != q {
        return Err(ParseError { pos: 0, msg: format!("expected {q} tensor factors, found {}", t.arity) });
    }
    Ok(t.evaluate(n))
}

/// Parses an element of the Weil complex truncated at curvature weight `cap`.
pub fn parse_weil(src: &str, n: Idx, cap: u32) -> Result<WeilForm, ParseError> {
    let mut p = Parser::new(src, n);
    let w = p.weil(cap)?;
    p.finish()?;
    Ok(w)
}

/// Parses a comma-separated list of rationals.
pub fn parse_rationals(src: &str) -> Result<Vec<Scalar>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in src.split(',') {
        let t = part.trim();
        let v = Scalar::from_str(t).map_err(|_| ParseError { pos: offset, msg: format!("invalid rational '{t}'") })?;
        out.push(v);
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Splits a printed sum into its terms, keeping each term's sign.
pub fn split_terms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let (mut depth, mut i, mut start) = (0i32, 0, 0);
    let mut sign = "";
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b' ' if depth == 0 && (s[i..].starts_with(" + ") || s[i..].starts_with(" - ")) => {
                out.push(format!("{sign}{}", &s[start..i]));
                sign = if bytes[i + 1] == b'-' { "-" } else { "" };
                i += 3;
                start = i;
                continue;
            }
            _ => {}
        }
        i += 1;
    }
    out.push(format!("{sign}{}", &s[start..]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions() {
        let e = parse_expr("X[1] * Q", 1).unwrap_err();
        assert_eq!(e.pos, 7);
        let e = parse_expr("X[2]", 1).unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(e.msg.contains("outside"));
        assert!(parse_expr("Y[1,1] (x) X[1]", 1).unwrap_err().msg.contains("tensor"));
    }

    #[test]
    fn examples() {
        let n = 1;
        let h = parse_element("X[1]*b(f) - b(f)*X[1]", n).unwrap();
        assert_eq!(h.to_string(), "b(Dy[1,1](f))*D[1;1,1] + b(Dx[1](f))");
        let t = parse_tensor("Y[1,1] (x) X[1]", n).unwrap();
        assert_eq!(t.arity, 2);
        assert_eq!(parse_element("D[1;1,1]", n).unwrap(), HElement::delta(1, 1, 1, 1, &[]));
        assert_eq!(parse_element("Y[1,1]*X[1]", n).unwrap().to_string(), "X[1]*Y[1,1] + X[1]");
    }

    #[test]
    fn terms_split() {
        assert_eq!(split_terms("-a - b(x - y) + 2*c"), vec!["-a", "-b(x - y)", "2*c"]);
        assert_eq!(split_terms("0"), vec!["0"]);
    }
}
