//! Parameter-polynomial rings.
//!
//! The resultant engine works with power series whose coefficients live in
//! `B[params]` for a base field `B` and a short list of parameter variables
//! (a perturbation variable, linear-form weights, and so on). Elements are
//! small sparse polynomials. A per-variable exponent cap turns the ring into
//! a truncated quotient, which the callers use to track only the low-order
//! part of a variable they later extract a trailing term from.

use crate::error::{Error, Result};
use crate::mono::{exp_add, exp_total, exp_zero, grlex_cmp, ExpVec};
use crate::ring::Ring;
use num_bigint::BigInt;
use smallvec::SmallVec;
use std::cmp::Ordering;

/// Sparse polynomial in the parameter variables; terms sorted graded-lex.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamPoly<C> {
    pub terms: SmallVec<[(ExpVec, C); 2]>,
}

impl<C> ParamPoly<C> {
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

/// `B[v_1, ..., v_k]`, optionally truncated per variable: a cap of `c` on a
/// variable discards every monomial with exponent `> c` in it.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamRing<B: Ring> {
    pub base: B,
    pub vars: Vec<String>,
    pub caps: Vec<Option<u16>>,
}

impl<B: Ring> ParamRing<B> {
    pub fn new(base: B, vars: Vec<String>) -> Self {
        let caps = vec![None; vars.len()];
        ParamRing { base, vars, caps }
    }

    pub fn with_caps(base: B, vars: Vec<String>, caps: Vec<Option<u16>>) -> Self {
        assert_eq!(vars.len(), caps.len());
        ParamRing { base, vars, caps }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::BadVariable(name.to_string()))
    }

    fn keeps(&self, e: &ExpVec) -> bool {
        e.iter()
            .zip(&self.caps)
            .all(|(&x, cap)| cap.map_or(true, |c| x <= c))
    }

    pub fn constant(&self, c: B::Elem) -> ParamPoly<B::Elem> {
        if self.base.is_zero(&c) {
            return ParamPoly { terms: SmallVec::new() };
        }
        let mut terms = SmallVec::new();
        terms.push((exp_zero(self.nvars()), c));
        ParamPoly { terms }
    }

    pub fn var(&self, idx: usize) -> ParamPoly<B::Elem> {
        let mut e = exp_zero(self.nvars());
        e[idx] = 1;
        if !self.keeps(&e) {
            return ParamPoly { terms: SmallVec::new() };
        }
        let mut terms = SmallVec::new();
        terms.push((e, self.base.one()));
        ParamPoly { terms }
    }

    pub fn monomial(&self, e: ExpVec, c: B::Elem) -> ParamPoly<B::Elem> {
        if self.base.is_zero(&c) || !self.keeps(&e) {
            return ParamPoly { terms: SmallVec::new() };
        }
        let mut terms = SmallVec::new();
        terms.push((e, c));
        ParamPoly { terms }
    }

    /// Normalize a raw term list: sort, combine, drop zeros and capped terms.
    pub fn from_raw_terms(&self, mut raw: Vec<(ExpVec, B::Elem)>) -> ParamPoly<B::Elem> {
        raw.retain(|(e, c)| self.keeps(e) && !self.base.is_zero(c));
        raw.sort_unstable_by(|a, b| grlex_cmp(&a.0, &b.0));
        let mut out: SmallVec<[(ExpVec, B::Elem); 2]> = SmallVec::new();
        for (e, c) in raw {
            match out.last_mut() {
                Some((pe, pc)) if *pe == e => {
                    let s = self.base.add(pc, &c);
                    *pc = s;
                }
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !self.base.is_zero(c));
        ParamPoly { terms: out }
    }

    pub fn scale(&self, a: &ParamPoly<B::Elem>, c: &B::Elem) -> ParamPoly<B::Elem> {
        if self.base.is_zero(c) {
            return self.zero();
        }
        let mut terms = SmallVec::with_capacity(a.terms.len());
        for (e, x) in &a.terms {
            let v = self.base.mul(x, c);
            if !self.base.is_zero(&v) {
                terms.push((e.clone(), v));
            }
        }
        ParamPoly { terms }
    }

    /// Multiply by a single monomial.
    pub fn mul_monomial(&self, a: &ParamPoly<B::Elem>, e: &ExpVec, c: &B::Elem) -> ParamPoly<B::Elem> {
        let mut terms: SmallVec<[(ExpVec, B::Elem); 2]> = SmallVec::with_capacity(a.terms.len());
        for (ae, ac) in &a.terms {
            let ne = exp_add(ae, e);
            if !self.keeps(&ne) {
                continue;
            }
            let v = self.base.mul(ac, c);
            if !self.base.is_zero(&v) {
                terms.push((ne, v));
            }
        }
        ParamPoly { terms }
    }

    /// Coefficient of `var^k` as a polynomial with that variable removed
    /// from the exponent (entry zeroed).
    pub fn coeff_of(&self, a: &ParamPoly<B::Elem>, var: usize, k: u16) -> ParamPoly<B::Elem> {
        let mut terms: SmallVec<[(ExpVec, B::Elem); 2]> = SmallVec::new();
        for (e, c) in &a.terms {
            if e[var] == k {
                let mut ne = e.clone();
                ne[var] = 0;
                terms.push((ne, c.clone()));
            }
        }
        let mut out = ParamPoly { terms };
        out.terms.sort_unstable_by(|x, y| grlex_cmp(&x.0, &y.0));
        out
    }

    /// Smallest exponent of `var` present, `None` for the zero polynomial.
    pub fn min_exp(&self, a: &ParamPoly<B::Elem>, var: usize) -> Option<u16> {
        a.terms.iter().map(|(e, _)| e[var]).min()
    }

    pub fn max_exp(&self, a: &ParamPoly<B::Elem>, var: usize) -> Option<u16> {
        a.terms.iter().map(|(e, _)| e[var]).max()
    }

    /// Divide out `var^k` (every term must have exponent >= k in `var`).
    pub fn shift_down(&self, a: &ParamPoly<B::Elem>, var: usize, k: u16) -> ParamPoly<B::Elem> {
        let mut terms = a.terms.clone();
        for (e, _) in terms.iter_mut() {
            debug_assert!(e[var] >= k);
            e[var] -= k;
        }
        terms.sort_unstable_by(|x, y| grlex_cmp(&x.0, &y.0));
        ParamPoly { terms }
    }

    /// Substitute zero for `var`.
    pub fn subst_zero(&self, a: &ParamPoly<B::Elem>, var: usize) -> ParamPoly<B::Elem> {
        self.coeff_of(a, var, 0)
    }

    pub fn total_degree(&self, a: &ParamPoly<B::Elem>) -> Option<u32> {
        a.terms.iter().map(|(e, _)| exp_total(e)).max()
    }

    pub fn as_constant(&self, a: &ParamPoly<B::Elem>) -> Option<B::Elem> {
        if a.terms.is_empty() {
            return Some(self.base.zero());
        }
        if a.terms.len() == 1 && exp_total(&a.terms[0].0) == 0 {
            return Some(a.terms[0].1.clone());
        }
        None
    }
}

impl<B: Ring> Ring for ParamRing<B> {
    type Elem = ParamPoly<B::Elem>;

    fn zero(&self) -> Self::Elem {
        ParamPoly { terms: SmallVec::new() }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.terms.is_empty()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out: SmallVec<[(ExpVec, B::Elem); 2]> =
            SmallVec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            match grlex_cmp(&a.terms[i].0, &b.terms[j].0) {
                Ordering::Less => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = self.base.add(&a.terms[i].1, &b.terms[j].1);
                    if !self.base.is_zero(&s) {
                        out.push((a.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a.terms[i..].iter().cloned());
        out.extend(b.terms[j..].iter().cloned());
        ParamPoly { terms: out }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        let terms = a
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), self.base.neg(c)))
            .collect();
        ParamPoly { terms }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.terms.is_empty() || b.terms.is_empty() {
            return self.zero();
        }
        // single-term fast paths dominate in truncated rings
        if a.terms.len() == 1 {
            return self.mul_monomial(b, &a.terms[0].0, &a.terms[0].1);
        }
        if b.terms.len() == 1 {
            return self.mul_monomial(a, &b.terms[0].0, &b.terms[0].1);
        }
        let mut raw: Vec<(ExpVec, B::Elem)> = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (ae, ac) in &a.terms {
            for (be, bc) in &b.terms {
                let ne = exp_add(ae, be);
                if !self.keeps(&ne) {
                    continue;
                }
                raw.push((ne, self.base.mul(ac, bc)));
            }
        }
        self.from_raw_terms(raw)
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.constant(self.base.from_i64(v))
    }

    fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Result<Self::Elem> {
        Ok(self.constant(self.base.from_ratio(n, d)?))
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        match self.as_constant(a) {
            Some(c) => Ok(self.constant(self.base.inv(&c)?)),
            None => Err(Error::DivisionByZero(
                "inverse of a non-constant parameter polynomial".into(),
            )),
        }
    }

    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(b) {
            return Err(Error::DivisionByZero("exact division by zero".into()));
        }
        if let Some(c) = self.as_constant(b) {
            let ci = self.base.inv(&c);
            if let Ok(ci) = ci {
                return Ok(self.scale(a, &ci));
            }
        }
        // long division by the grlex-leading term; remainder must vanish
        let mut rem = a.clone();
        let mut q = self.zero();
        let (lb_e, lb_c) = b.terms.last().unwrap().clone();
        while !self.is_zero(&rem) {
            let (la_e, la_c) = rem.terms.last().unwrap().clone();
            if la_e.iter().zip(&lb_e).any(|(&x, &y)| x < y) {
                return Err(Error::InvalidRing("inexact polynomial division".into()));
            }
            let qe: ExpVec = la_e.iter().zip(&lb_e).map(|(&x, &y)| x - y).collect();
            let qc = self.base.exact_div(&la_c, &lb_c)?;
            let qt = self.monomial(qe, qc);
            rem = self.sub(&rem, &self.mul(&qt, b));
            q = self.add(&q, &qt);
        }
        Ok(q)
    }

    fn char_prime(&self) -> Option<u64> {
        self.base.char_prime()
    }

    fn height_bits(&self, a: &Self::Elem) -> u64 {
        a.terms
            .iter()
            .map(|(_, c)| self.base.height_bits(c))
            .max()
            .unwrap_or(0)
    }

    fn fmt_elem(&self, a: &Self::Elem) -> String {
        if a.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &a.terms {
            let mut s = self.base.fmt_elem(c);
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    s.push_str(&format!("*{}", self.vars[i]));
                } else if k > 1 {
                    s.push_str(&format!("*{}^{}", self.vars[i], k));
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rationals;

    fn ring() -> ParamRing<Rationals> {
        ParamRing::new(Rationals, vec!["t".into(), "u".into()])
    }

    #[test]
    fn mul_and_caps() {
        let r = ring();
        let t = r.var(0);
        let u = r.var(1);
        let s = r.add(&t, &u); // t + u
        let sq = r.mul(&s, &s); // t^2 + 2tu + u^2
        assert_eq!(sq.num_terms(), 3);

        let capped = ParamRing::with_caps(Rationals, vec!["t".into(), "u".into()], vec![Some(1), None]);
        let t = capped.var(0);
        let u = capped.var(1);
        let s = capped.add(&t, &u);
        let sq = capped.mul(&s, &s); // t^2 dropped
        assert_eq!(sq.num_terms(), 2);
    }

    #[test]
    fn exact_division_roundtrip() {
        let r = ring();
        let t = r.var(0);
        let u = r.var(1);
        let a = r.add(&t, &r.one());
        let b = r.add(&u, &r.from_i64(2));
        let prod = r.mul(&a, &b);
        let q = r.exact_div(&prod, &a).unwrap();
        assert_eq!(q, b);
        assert!(r.exact_div(&t, &a).is_err());
    }

    #[test]
    fn trailing_helpers() {
        let r = ring();
        // t^2*u + t^3
        let e1: ExpVec = smallvec::smallvec![2, 1];
        let e2: ExpVec = smallvec::smallvec![3, 0];
        let a = r.from_raw_terms(vec![(e1, Rationals.one()), (e2, Rationals.one())]);
        assert_eq!(r.min_exp(&a, 0), Some(2));
        let shifted = r.shift_down(&a, 0, 2);
        assert_eq!(r.min_exp(&shifted, 0), Some(0));
        assert_eq!(r.max_exp(&shifted, 0), Some(1));
    }
}
