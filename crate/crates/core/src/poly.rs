//! Dense multivariate polynomials over an explicit coefficient ring.
//!
//! "Dense" refers to the contract (every monomial up to the degree bound is
//! meaningful and zero coefficients are implicit), not the storage: terms
//! are kept as a sorted sparse table in graded lexicographic order, which
//! also fixes the serialization order.

use crate::error::{Error, Result};
use crate::mono::{exp_add, exp_total, exp_unit, exp_zero, grlex_cmp, ExpVec};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cmp::Ordering;

pub use crate::mono::Monomial;

#[derive(Debug, Clone, PartialEq)]
pub struct DensePoly<R: Ring> {
    pub ring: R,
    pub vars: Vec<String>,
    pub degree_bound: u32,
    /// Sorted graded-lex, no zero coefficients, no duplicate monomials.
    pub terms: Vec<(ExpVec, R::Elem)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolySystem<R: Ring> {
    pub ring: R,
    pub vars: Vec<String>,
    pub polys: Vec<DensePoly<R>>,
}

impl<R: Ring> PolySystem<R> {
    pub fn new(ring: R, vars: Vec<String>, polys: Vec<DensePoly<R>>) -> Result<Self> {
        for p in &polys {
            if p.vars != vars {
                return Err(Error::RingMismatch("system members disagree on variables".into()));
            }
        }
        Ok(PolySystem { ring, vars, polys })
    }
}

pub enum TrailingMode {
    Term,
    Part,
}

impl<R: Ring> DensePoly<R> {
    pub fn zero(ring: R, vars: Vec<String>) -> Self {
        DensePoly { ring, vars, degree_bound: 0, terms: vec![] }
    }

    pub fn constant(ring: R, vars: Vec<String>, c: R::Elem) -> Self {
        let mut p = Self::zero(ring, vars);
        if !p.ring.is_zero(&c) {
            p.terms.push((exp_zero(p.vars.len()), c));
        }
        p
    }

    pub fn one(ring: R, vars: Vec<String>) -> Self {
        let c = ring.one();
        Self::constant(ring, vars, c)
    }

    pub fn var(ring: R, vars: Vec<String>, name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::BadVariable(name.to_string()))?;
        let e = exp_unit(vars.len(), idx);
        let one = ring.one();
        Ok(DensePoly { ring, vars, degree_bound: 1, terms: vec![(e, one)] })
    }

    pub fn from_terms(ring: R, vars: Vec<String>, raw: Vec<(ExpVec, R::Elem)>) -> Result<Self> {
        for (e, _) in &raw {
            if e.len() != vars.len() {
                return Err(Error::BadVariable(format!(
                    "exponent vector of length {} in a {}-variable polynomial",
                    e.len(),
                    vars.len()
                )));
            }
        }
        let mut p = DensePoly { ring, vars, degree_bound: 0, terms: raw };
        p.normalize();
        Ok(p)
    }

    fn normalize(&mut self) {
        self.terms.retain(|(_, c)| !self.ring.is_zero(c));
        self.terms.sort_unstable_by(|a, b| grlex_cmp(&a.0, &b.0));
        let mut out: Vec<(ExpVec, R::Elem)> = Vec::with_capacity(self.terms.len());
        for (e, c) in self.terms.drain(..) {
            match out.last_mut() {
                Some((pe, pc)) if *pe == e => *pc = self.ring.add(pc, &c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !self.ring.is_zero(c));
        self.terms = out;
        self.degree_bound = self.total_degree();
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| exp_total(e)).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[var] as u32).max().unwrap_or(0)
    }

    pub fn coeff(&self, e: &ExpVec) -> R::Elem {
        match self.terms.binary_search_by(|(te, _)| grlex_cmp(te, e)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.ring.zero(),
        }
    }

    /// Coefficient of `var^k`, with the variable's exponent zeroed.
    pub fn coeff_of_power(&self, var: usize, k: u16) -> Self {
        let raw: Vec<(ExpVec, R::Elem)> = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] == k)
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[var] = 0;
                (ne, c.clone())
            })
            .collect();
        Self::from_terms(self.ring.clone(), self.vars.clone(), raw).unwrap()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars || self.ring != other.ring {
            return Err(Error::RingMismatch(
                "operands disagree on ring or variable list".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out: Vec<(ExpVec, R::Elem)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match grlex_cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = self.ring.add(&self.terms[i].1, &other.terms[j].1);
                    if !self.ring.is_zero(&s) {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        let mut p = DensePoly {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            degree_bound: 0,
            terms: out,
        };
        p.degree_bound = p.total_degree();
        Ok(p)
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), self.ring.neg(c)))
            .collect();
        DensePoly {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            degree_bound: self.degree_bound,
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let raw: Vec<(ExpVec, R::Elem)> = self
            .terms
            .iter()
            .map(|(e, x)| (e.clone(), self.ring.mul(x, c)))
            .collect();
        Self::from_terms(self.ring.clone(), self.vars.clone(), raw).unwrap()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        poly_mul(&[self.clone(), other.clone()])
    }

    /// Schoolbook product, kept as an independent reference for the
    /// Kronecker path.
    pub fn naive_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ae, ac) in &self.terms {
            for (be, bc) in &other.terms {
                raw.push((exp_add(ae, be), self.ring.mul(ac, bc)));
            }
        }
        Self::from_terms(self.ring.clone(), self.vars.clone(), raw)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.ring.clone(), self.vars.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &[R::Elem]) -> Result<R::Elem> {
        if point.len() != self.nvars() {
            return Err(Error::InvalidInput("evaluation point has wrong arity".into()));
        }
        let mut acc = self.ring.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = self.ring.mul(&term, &self.ring.pow(&point[i], k as u64));
                }
            }
            acc = self.ring.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Substitute a polynomial for one variable.
    pub fn subst(&self, var: usize, value: &Self) -> Result<Self> {
        self.check_compatible(value)?;
        let mut acc = Self::zero(self.ring.clone(), self.vars.clone());
        let max_k = self.degree_in(var);
        // powers of the replacement
        let mut powers: Vec<DensePoly<R>> = Vec::with_capacity(max_k as usize + 1);
        powers.push(Self::one(self.ring.clone(), self.vars.clone()));
        for _ in 0..max_k {
            let next = powers.last().unwrap().mul(value)?;
            powers.push(next);
        }
        for (e, c) in &self.terms {
            let k = e[var];
            let mut ne = e.clone();
            ne[var] = 0;
            let mono = Self::from_terms(
                self.ring.clone(),
                self.vars.clone(),
                vec![(ne, c.clone())],
            )?;
            acc = acc.add(&mono.mul(&powers[k as usize])?)?;
        }
        Ok(acc)
    }

    /// Substitute a constant for one variable (keeps the variable slot).
    pub fn subst_elem(&self, var: usize, value: &R::Elem) -> Self {
        let raw: Vec<(ExpVec, R::Elem)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let k = e[var];
                let mut ne = e.clone();
                ne[var] = 0;
                let nc = if k > 0 {
                    self.ring.mul(c, &self.ring.pow(value, k as u64))
                } else {
                    c.clone()
                };
                (ne, nc)
            })
            .collect();
        Self::from_terms(self.ring.clone(), self.vars.clone(), raw).unwrap()
    }

    /// Remove a variable column (the variable must not occur).
    pub fn drop_var(&self, var: usize) -> Result<Self> {
        if self.degree_in(var) > 0 {
            return Err(Error::BadVariable(format!(
                "variable {} still occurs",
                self.vars[var]
            )));
        }
        let mut vars = self.vars.clone();
        vars.remove(var);
        let raw: Vec<(ExpVec, R::Elem)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne.remove(var);
                (ne, c.clone())
            })
            .collect();
        Self::from_terms(self.ring.clone(), vars, raw)
    }

    /// Re-embed into a larger variable list (old variables must appear in
    /// the new list).
    pub fn extend_vars(&self, new_vars: &[String]) -> Result<Self> {
        let mut map = Vec::with_capacity(self.nvars());
        for v in &self.vars {
            let idx = new_vars
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| Error::BadVariable(v.clone()))?;
            map.push(idx);
        }
        let raw: Vec<(ExpVec, R::Elem)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = exp_zero(new_vars.len());
                for (i, &k) in e.iter().enumerate() {
                    ne[map[i]] = k;
                }
                (ne, c.clone())
            })
            .collect();
        Self::from_terms(self.ring.clone(), new_vars.to_vec(), raw)
    }

    /// Total-degree homogeneity check over a subset of variable indices,
    /// ignoring the others. Returns the common degree.
    pub fn homogeneous_degree_in(&self, subset: &[usize]) -> Option<u32> {
        let mut deg = None;
        for (e, _) in &self.terms {
            let d: u32 = subset.iter().map(|&i| e[i] as u32).sum();
            match deg {
                None => deg = Some(d),
                Some(x) if x == d => {}
                _ => return None,
            }
        }
        deg
    }

    pub fn is_univariate_in(&self, var: usize) -> bool {
        self.terms
            .iter()
            .all(|(e, _)| e.iter().enumerate().all(|(i, &k)| i == var || k == 0))
    }

    /// The single variable this polynomial depends on, if any.
    pub fn sole_variable(&self) -> Option<usize> {
        let mut seen = None;
        for (e, _) in &self.terms {
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    match seen {
                        None => seen = Some(i),
                        Some(j) if j == i => {}
                        _ => return None,
                    }
                }
            }
        }
        seen
    }

    // -- spec operations ---------------------------------------------------

    /// Trailing term / trailing part with respect to a variable.
    pub fn trailing(&self, var_name: &str, mode: TrailingMode) -> Result<Self> {
        let var = self.var_index(var_name)?;
        if self.is_zero() {
            return Ok(self.clone());
        }
        let v = self.terms.iter().map(|(e, _)| e[var]).min().unwrap();
        match mode {
            TrailingMode::Term => Ok(self.coeff_of_power(var, v)),
            TrailingMode::Part => {
                let raw: Vec<(ExpVec, R::Elem)> = self
                    .terms
                    .iter()
                    .map(|(e, c)| {
                        let mut ne = e.clone();
                        ne[var] -= v;
                        (ne, c.clone())
                    })
                    .collect();
                Self::from_terms(self.ring.clone(), self.vars.clone(), raw)
            }
        }
    }

    /// i-th Hasse derivative with respect to a variable: sends `x^k` to
    /// `C(k, i) x^{k-i}` and is well-behaved in positive characteristic.
    pub fn hasse_derivative(&self, var_name: &str, order: u32) -> Result<Self> {
        let var = self.var_index(var_name)?;
        if order == 0 {
            return Ok(self.clone());
        }
        let mut raw = Vec::new();
        for (e, c) in &self.terms {
            let k = e[var] as u32;
            if k < order {
                continue;
            }
            let b = binomial_bigint(k, order);
            let bc = self.ring.from_ratio(&b, &BigInt::one())?;
            let nc = self.ring.mul(c, &bc);
            let mut ne = e.clone();
            ne[var] = (k - order) as u16;
            raw.push((ne, nc));
        }
        Self::from_terms(self.ring.clone(), self.vars.clone(), raw)
    }

    pub fn derivative(&self, var_name: &str) -> Result<Self> {
        self.hasse_derivative(var_name, 1)
    }

    /// Homogenize with a fresh variable, inserted at the front of the
    /// variable list.
    pub fn homogenize(&self, new_var: &str) -> Result<Self> {
        if self.vars.iter().any(|v| v == new_var) {
            return Err(Error::BadVariable(format!("{} already in scope", new_var)));
        }
        let d = self.total_degree();
        let mut vars = vec![new_var.to_string()];
        vars.extend(self.vars.iter().cloned());
        let raw: Vec<(ExpVec, R::Elem)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let t = exp_total(e);
                let mut ne = ExpVec::with_capacity(e.len() + 1);
                ne.push((d - t) as u16);
                ne.extend_from_slice(e);
                (ne, c.clone())
            })
            .collect();
        Self::from_terms(self.ring.clone(), vars, raw)
    }

    /// Substitute 0 or 1 for a (homogenizing) variable and drop it.
    pub fn dehomogenize(&self, var_name: &str, value: u8) -> Result<Self> {
        let var = self.var_index(var_name)?;
        if value > 1 {
            return Err(Error::InvalidInput("dehomogenization value must be 0 or 1".into()));
        }
        let v = self.ring.from_i64(value as i64);
        self.subst_elem(var, &v).drop_var(var)
    }
}

/// Binomial coefficient as a big integer.
pub fn binomial_bigint(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Product of a list of polynomials sharing a ring and variable list.
///
/// Multivariate inputs are mapped to univariate polynomials by substituting
/// `z^{(m d + 1)^i}` for the i-th variable (`m` factors of degree at most
/// `d`), multiplied there, and mapped back.
pub fn poly_mul<R: Ring>(fs: &[DensePoly<R>]) -> Result<DensePoly<R>> {
    if fs.is_empty() {
        return Err(Error::InvalidInput("empty product".into()));
    }
    let ring = fs[0].ring.clone();
    let vars = fs[0].vars.clone();
    for f in fs {
        if f.vars != vars || f.ring != ring {
            return Err(Error::RingMismatch("product operands disagree".into()));
        }
    }
    if fs.iter().any(|f| f.is_zero()) {
        return Ok(DensePoly::zero(ring, vars));
    }
    let m = fs.len() as u64;
    let d = fs.iter().map(|f| f.total_degree() as u64).max().unwrap();
    let base = m * d + 1;
    let k = vars.len() as u32;

    // sparse univariate image under the Kronecker substitution
    let pack = |e: &ExpVec| -> u64 {
        let mut acc = 0u64;
        let mut scale = 1u64;
        for &x in e.iter() {
            acc += x as u64 * scale;
            scale = scale.saturating_mul(base);
        }
        acc
    };
    // overflow guard: total packed exponent stays below 2^62
    if (base as f64).powi(k as i32) > 4.0e18 {
        // fall back to direct sparse products
        let mut acc = fs[0].clone();
        for f in &fs[1..] {
            acc = acc.naive_mul(f)?;
        }
        return Ok(acc);
    }

    let mut acc: Vec<(u64, R::Elem)> = fs[0]
        .terms
        .iter()
        .map(|(e, c)| (pack(e), c.clone()))
        .collect();
    for f in &fs[1..] {
        let img: Vec<(u64, R::Elem)> = f.terms.iter().map(|(e, c)| (pack(e), c.clone())).collect();
        let mut raw: Vec<(u64, R::Elem)> = Vec::with_capacity(acc.len() * img.len());
        for (ea, ca) in &acc {
            for (eb, cb) in &img {
                raw.push((ea + eb, ring.mul(ca, cb)));
            }
        }
        raw.sort_unstable_by_key(|(e, _)| *e);
        let mut merged: Vec<(u64, R::Elem)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match merged.last_mut() {
                Some((pe, pc)) if *pe == e => *pc = ring.add(pc, &c),
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !ring.is_zero(c));
        acc = merged;
    }

    // unmap
    let unpack = |mut v: u64| -> ExpVec {
        let mut e = exp_zero(vars.len());
        for slot in e.iter_mut() {
            *slot = (v % base) as u16;
            v /= base;
        }
        e
    };
    let raw: Vec<(ExpVec, R::Elem)> = acc.into_iter().map(|(e, c)| (unpack(e), c)).collect();
    DensePoly::from_terms(ring, vars, raw)
}

/// Recover the coefficients of a degree-`D` polynomial from its values at
/// the nodes `1, ..., D+1`, by applying the exact inverse Vandermonde.
pub fn interpolate_coeffs<R: Ring>(ring: &R, evals: &[R::Elem]) -> Result<Vec<R::Elem>> {
    let n = evals.len();
    if n == 0 {
        return Err(Error::InvalidInput("no evaluations supplied".into()));
    }
    if let Some(p) = ring.char_prime() {
        if p <= n as u64 {
            return Err(Error::NodeCollision(p));
        }
    }
    let inv = vandermonde_inverse_rational(n);
    let mut out = Vec::with_capacity(n);
    for row in &inv {
        let mut acc = ring.zero();
        for (j, (num, den)) in row.iter().enumerate() {
            if num.is_zero() {
                continue;
            }
            let c = ring.from_ratio(num, den)?;
            acc = ring.add(&acc, &ring.mul(&c, &evals[j]));
        }
        out.push(acc);
    }
    Ok(out)
}

/// Exact inverse of the Vandermonde matrix at nodes `1..n` over the
/// rationals, rows indexed by coefficient (degree 0 first).
pub fn vandermonde_inverse_rational(n: usize) -> Vec<Vec<(BigInt, BigInt)>> {
    use num_rational::BigRational;
    // Gauss-Jordan on [V | I] with exact rationals; V[i][j] = (i+1)^j.
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n)
                .map(|j| {
                    let v = BigInt::from(i as u64 + 1).pow(j as u32);
                    BigRational::from_integer(v)
                })
                .collect();
            let mut id = vec![BigRational::zero(); n];
            id[i] = BigRational::one();
            row.extend(id);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("vandermonde is invertible");
        a.swap(col, pivot);
        let pv = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= pv.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = &a[col][c] * &f;
                    a[r][c] -= t;
                }
            }
        }
    }
    // coefficients c = V^{-1} y; row k of V^{-1} produces the coefficient
    // of x^k
    (0..n)
        .map(|k| {
            (0..n)
                .map(|j| {
                    let v = &a[k][n + j];
                    (v.numer().clone(), v.denom().clone())
                })
                .collect()
        })
        .collect()
}

/// Pseudodivision of univariate polynomials: returns `(d, q, r)` with
/// `d f = q g + r`, `deg r < deg g`, `d = lc(g)^(deg f - deg g + 1)`.
pub fn pseudo_divrem<R: Ring>(
    f: &DensePoly<R>,
    g: &DensePoly<R>,
    var_name: &str,
) -> Result<(R::Elem, DensePoly<R>, DensePoly<R>)> {
    let var = f.var_index(var_name)?;
    if g.is_zero() {
        return Err(Error::DivisionByZero("pseudodivision by zero".into()));
    }
    if !f.is_univariate_in(var) || !g.is_univariate_in(var) {
        return Err(Error::InvalidInput("pseudodivision needs univariate inputs".into()));
    }
    let ring = f.ring.clone();
    let fc = crate::uni::from_dense(f, var)?;
    let gc = crate::uni::from_dense(g, var)?;
    if fc.len() < gc.len() {
        return Err(Error::InvalidInput("pseudodivision needs deg f >= deg g".into()));
    }
    let (d, q, r) = crate::uni::pseudo_divrem(&ring, &fc, &gc)?;
    Ok((
        d,
        crate::uni::to_dense(&ring, &f.vars, var, &q),
        crate::uni::to_dense(&ring, &f.vars, var, &r),
    ))
}

/// Convenience: parse small integer-coefficient polynomials for tests,
/// e.g. `poly_from_pairs(ring, vars, &[(3, &[1,0]), (-1, &[0,2])])`.
pub fn poly_from_pairs<R: Ring>(
    ring: &R,
    vars: &[&str],
    pairs: &[(i64, &[u16])],
) -> DensePoly<R> {
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let raw: Vec<(ExpVec, R::Elem)> = pairs
        .iter()
        .map(|(c, e)| {
            let ev: ExpVec = e.iter().copied().collect();
            (ev, ring.from_i64(*c))
        })
        .collect();
    DensePoly::from_terms(ring.clone(), vars, raw).unwrap()
}

pub fn format_poly<R: Ring>(p: &DensePoly<R>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = p
        .terms
        .iter()
        .map(|(e, c)| {
            let mut s = p.ring.fmt_elem(c);
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    s.push_str(&format!("*{}", p.vars[i]));
                } else if k > 1 {
                    s.push_str(&format!("*{}^{}", p.vars[i], k));
                }
            }
            s
        })
        .collect();
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ExtField, PrimeField, Rationals};
    use crate::rng::CounterRng;

    fn qp(vars: &[&str], pairs: &[(i64, &[u16])]) -> DensePoly<Rationals> {
        poly_from_pairs(&Rationals, vars, pairs)
    }

    #[test]
    fn product_examples() {
        // (x+y)(x-y) = x^2 - y^2
        let f = qp(&["x", "y"], &[(1, &[1, 0]), (1, &[0, 1])]);
        let g = qp(&["x", "y"], &[(1, &[1, 0]), (-1, &[0, 1])]);
        let want = qp(&["x", "y"], &[(1, &[2, 0]), (-1, &[0, 2])]);
        assert_eq!(f.mul(&g).unwrap(), want);
        // (x+2y+1)(3x-y) = 3x^2+5xy-2y^2+3x-y
        let f = qp(&["x", "y"], &[(1, &[1, 0]), (2, &[0, 1]), (1, &[0, 0])]);
        let g = qp(&["x", "y"], &[(3, &[1, 0]), (-1, &[0, 1])]);
        let want = qp(
            &["x", "y"],
            &[(3, &[2, 0]), (5, &[1, 1]), (-2, &[0, 2]), (3, &[1, 0]), (-1, &[0, 1])],
        );
        assert_eq!(f.mul(&g).unwrap(), want);
        assert_eq!(f.naive_mul(&g).unwrap(), want);
        // 1 * f = f
        let one = DensePoly::one(Rationals, vec!["x".into(), "y".into()]);
        assert_eq!(one.mul(&f).unwrap(), f);
        // ring mismatch
        let h = qp(&["x", "z"], &[(1, &[1, 0])]);
        assert!(f.mul(&h).is_err());
    }

    fn random_poly<R: Ring>(ring: &R, vars: &[&str], deg: u16, rng: &mut CounterRng) -> DensePoly<R> {
        let mut raw = Vec::new();
        let k = vars.len();
        for _ in 0..(rng.below(9) + 1) {
            let mut e = crate::mono::exp_zero(k);
            let mut left = deg;
            for slot in e.iter_mut() {
                let v = rng.below(left as u64 + 1) as u16;
                *slot = v;
                left -= v;
            }
            raw.push((e, ring.from_i64(rng.below(21) as i64 - 10)));
        }
        DensePoly::from_terms(ring.clone(), vars.iter().map(|s| s.to_string()).collect(), raw)
            .unwrap()
    }

    #[test]
    fn kronecker_matches_schoolbook_on_random_inputs() {
        let mut rng = CounterRng::new(2024);
        let f7 = PrimeField::new(7).unwrap();
        let f9 = ExtField::new(3, vec![1, 0, 1]).unwrap();
        let z = crate::ring::Integers;
        for trial in 0..500 {
            let nv = (trial % 3) + 1;
            let vars: Vec<&str> = ["x", "y", "z"][..nv].to_vec();
            match trial % 4 {
                0 => {
                    let a = random_poly(&Rationals, &vars, 6, &mut rng);
                    let b = random_poly(&Rationals, &vars, 6, &mut rng);
                    assert_eq!(a.mul(&b).unwrap(), a.naive_mul(&b).unwrap());
                }
                1 => {
                    let a = random_poly(&f7, &vars, 6, &mut rng);
                    let b = random_poly(&f7, &vars, 6, &mut rng);
                    assert_eq!(a.mul(&b).unwrap(), a.naive_mul(&b).unwrap());
                }
                2 => {
                    let a = random_poly(&f9, &vars, 6, &mut rng);
                    let b = random_poly(&f9, &vars, 6, &mut rng);
                    assert_eq!(a.mul(&b).unwrap(), a.naive_mul(&b).unwrap());
                }
                _ => {
                    let a = random_poly(&z, &vars, 6, &mut rng);
                    let b = random_poly(&z, &vars, 6, &mut rng);
                    assert_eq!(a.mul(&b).unwrap(), a.naive_mul(&b).unwrap());
                }
            }
        }
    }

    #[test]
    fn trailing_examples() {
        // f = t^2 (y+1) + t^3 y
        let f = qp(&["t", "y"], &[(1, &[2, 1]), (1, &[2, 0]), (1, &[3, 1])]);
        let term = f.trailing("t", TrailingMode::Term).unwrap();
        assert_eq!(term, qp(&["t", "y"], &[(1, &[0, 1]), (1, &[0, 0])]));
        let part = f.trailing("t", TrailingMode::Part).unwrap();
        assert_eq!(part, qp(&["t", "y"], &[(1, &[0, 1]), (1, &[0, 0]), (1, &[1, 1])]));
        // zero polynomial
        let z = DensePoly::zero(Rationals, vec!["t".into(), "y".into()]);
        assert!(z.trailing("t", TrailingMode::Term).unwrap().is_zero());
        assert!(z.trailing("t", TrailingMode::Part).unwrap().is_zero());
        // f independent of t
        let g = qp(&["t", "y"], &[(2, &[0, 3]), (5, &[0, 0])]);
        assert_eq!(g.trailing("t", TrailingMode::Term).unwrap(), g);
        assert!(g.trailing("w", TrailingMode::Term).is_err());
    }

    #[test]
    fn trailing_factorization_property() {
        let mut rng = CounterRng::new(7);
        for _ in 0..500 {
            let f = random_poly(&Rationals, &["t", "y"], 5, &mut rng);
            if f.is_zero() {
                continue;
            }
            let v = f.terms.iter().map(|(e, _)| e[0]).min().unwrap();
            let part = f.trailing("t", TrailingMode::Part).unwrap();
            let tv = qp(&["t", "y"], &[(1, &[v, 0])]);
            assert_eq!(tv.mul(&part).unwrap(), f);
            // trailing term = trailing part at t = 0
            let term = f.trailing("t", TrailingMode::Term).unwrap();
            assert_eq!(part.subst_elem(0, &Rationals.zero()), term);
        }
    }

    #[test]
    fn hasse_examples() {
        // Hasse^2(x^4) = 6 x^2
        let f = qp(&["x"], &[(1, &[4])]);
        assert_eq!(f.hasse_derivative("x", 2).unwrap(), qp(&["x"], &[(6, &[2])]));
        // first Hasse derivative is the usual derivative
        let mut rng = CounterRng::new(8);
        for _ in 0..200 {
            let f = random_poly(&Rationals, &["x", "y"], 6, &mut rng);
            let h1 = f.hasse_derivative("x", 1).unwrap();
            // compare against the term rule k x^{k-1}
            let mut raw = Vec::new();
            for (e, c) in &f.terms {
                if e[0] > 0 {
                    let mut ne = e.clone();
                    ne[0] -= 1;
                    raw.push((ne, Rationals.mul(c, &Rationals.from_i64(e[0] as i64))));
                }
            }
            let want = DensePoly::from_terms(Rationals, f.vars.clone(), raw).unwrap();
            assert_eq!(h1, want);
        }
        // characteristic 2: Hasse^1(x^2) = 0, Hasse^2(x^2) = 1
        let f2 = PrimeField::new(2).unwrap();
        let g = poly_from_pairs(&f2, &["x"], &[(1, &[2])]);
        assert!(g.hasse_derivative("x", 1).unwrap().is_zero());
        assert_eq!(g.hasse_derivative("x", 2).unwrap(), poly_from_pairs(&f2, &["x"], &[(1, &[0])]));
    }

    #[test]
    fn homogenize_examples() {
        // x + y - 1 homogenizes to x + y - z (fresh variable named z)
        let f = qp(&["x", "y"], &[(1, &[1, 0]), (1, &[0, 1]), (-1, &[0, 0])]);
        let hf = f.homogenize("z").unwrap();
        let want = qp(&["z", "x", "y"], &[(1, &[0, 1, 0]), (1, &[0, 0, 1]), (-1, &[1, 0, 0])]);
        assert_eq!(hf, want);
        assert_eq!(hf.dehomogenize("z", 1).unwrap(), f);
        // x^2 + 1 homogenizes to x^2 + x0^2
        let f = qp(&["x"], &[(1, &[2]), (1, &[0])]);
        let hf = f.homogenize("x0").unwrap();
        assert_eq!(hf, qp(&["x0", "x"], &[(1, &[0, 2]), (1, &[2, 0])]));
        // collision is rejected
        assert!(f.homogenize("x").is_err());
        // homogeneity check
        assert_eq!(hf.homogeneous_degree_in(&[0, 1]), Some(2));
        let g = qp(&["x0", "x"], &[(1, &[0, 2]), (1, &[1, 0])]);
        assert_eq!(g.homogeneous_degree_in(&[0, 1]), None);
    }

    #[test]
    fn pseudo_divrem_examples() {
        let z = crate::ring::Integers;
        let f = poly_from_pairs(&z, &["x"], &[(1, &[2]), (1, &[0])]);
        let g = poly_from_pairs(&z, &["x"], &[(2, &[1]), (1, &[0])]);
        let (d, q, r) = pseudo_divrem(&f, &g, "x").unwrap();
        assert_eq!(d, z.from_i64(4));
        assert_eq!(q, poly_from_pairs(&z, &["x"], &[(2, &[1]), (-1, &[0])]));
        assert_eq!(r, poly_from_pairs(&z, &["x"], &[(5, &[0])]));

        let f = poly_from_pairs(&z, &["x"], &[(1, &[2])]);
        let g = poly_from_pairs(&z, &["x"], &[(1, &[1])]);
        let (d, q, r) = pseudo_divrem(&f, &g, "x").unwrap();
        assert_eq!(d, z.from_i64(1));
        assert_eq!(q, poly_from_pairs(&z, &["x"], &[(1, &[1])]));
        assert!(r.is_zero());

        let f = poly_from_pairs(&z, &["x"], &[(1, &[1])]);
        let g = poly_from_pairs(&z, &["x"], &[(1, &[1]), (1, &[0])]);
        let (d, q, r) = pseudo_divrem(&f, &g, "x").unwrap();
        assert_eq!(d, z.from_i64(1));
        assert_eq!(q, poly_from_pairs(&z, &["x"], &[(1, &[0])]));
        assert_eq!(r, poly_from_pairs(&z, &["x"], &[(-1, &[0])]));

        let zero = DensePoly::zero(z.clone(), vec!["x".into()]);
        assert!(pseudo_divrem(&f, &zero, "x").is_err());
    }

    #[test]
    fn pseudo_divrem_identity_random() {
        let z = crate::ring::Integers;
        let mut rng = CounterRng::new(13);
        let mut done = 0;
        while done < 500 {
            let f = random_poly(&z, &["x"], 7, &mut rng);
            let g = random_poly(&z, &["x"], 4, &mut rng);
            if g.is_zero() || f.degree_in(0) < g.degree_in(0) {
                continue;
            }
            let (d, q, r) = pseudo_divrem(&f, &g, "x").unwrap();
            let lhs = f.scale(&d);
            let rhs = q.mul(&g).unwrap().add(&r).unwrap();
            assert_eq!(lhs, rhs);
            assert!(r.is_zero() || r.degree_in(0) < g.degree_in(0));
            done += 1;
        }
    }

    #[test]
    fn interpolation_examples() {
        let q = Rationals;
        // values of y^2 at 1, 2, 3 give coefficients (0, 0, 1)
        let evals = vec![q.from_i64(1), q.from_i64(4), q.from_i64(9)];
        let coeffs = interpolate_coeffs(&q, &evals).unwrap();
        assert_eq!(coeffs, vec![q.from_i64(0), q.from_i64(0), q.from_i64(1)]);
        // constants
        let evals = vec![q.from_i64(5); 4];
        let coeffs = interpolate_coeffs(&q, &evals).unwrap();
        assert_eq!(coeffs, vec![q.from_i64(5), q.from_i64(0), q.from_i64(0), q.from_i64(0)]);
        // the 2x2 inverse Vandermonde at nodes 1, 2 is [[2, -1], [-1, 1]]
        let inv = vandermonde_inverse_rational(2);
        let as_i64: Vec<Vec<i64>> = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(n, d)| {
                        assert!(d.is_one());
                        i64::try_from(n).unwrap()
                    })
                    .collect()
            })
            .collect();
        assert_eq!(as_i64, vec![vec![2, -1], vec![-1, 1]]);
        // node collision in small characteristic
        let f3 = PrimeField::new(3).unwrap();
        let evals = vec![f3.from_i64(1), f3.from_i64(2), f3.from_i64(0)];
        assert!(matches!(interpolate_coeffs(&f3, &evals), Err(Error::NodeCollision(3))));
    }

    #[test]
    fn interpolation_roundtrip_random() {
        let q = Rationals;
        let mut rng = CounterRng::new(17);
        for _ in 0..200 {
            let deg = rng.below(11) as usize;
            let coeffs: Vec<_> = (0..=deg).map(|_| q.from_i64(rng.below(21) as i64 - 10)).collect();
            let evals: Vec<_> = (1..=deg as i64 + 1)
                .map(|x| {
                    let xe = q.from_i64(x);
                    crate::uni::eval(&q, &coeffs, &xe)
                })
                .collect();
            let mut got = interpolate_coeffs(&q, &evals).unwrap();
            crate::uni::trim(&q, &mut got);
            let mut want = coeffs.clone();
            crate::uni::trim(&q, &mut want);
            assert_eq!(got, want);
        }
    }
}
