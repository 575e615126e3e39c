//! Dense univariate arithmetic helpers.
//!
//! Coefficient vectors are ascending by degree with no trailing zeros; the
//! zero polynomial is the empty vector. Shared by the oracles, the GCD
//! machinery, and input/output plumbing.

use crate::error::{Error, Result};
use crate::mono::ExpVec;
use crate::poly::DensePoly;
use crate::ring::Ring;

pub fn trim<R: Ring>(ring: &R, v: &mut Vec<R::Elem>) {
    while v.last().map_or(false, |c| ring.is_zero(c)) {
        v.pop();
    }
}

pub fn deg<C>(v: &[C]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub fn from_dense<R: Ring>(p: &DensePoly<R>, var: usize) -> Result<Vec<R::Elem>> {
    if !p.is_univariate_in(var) {
        return Err(Error::InvalidInput("polynomial is not univariate".into()));
    }
    let mut out = vec![p.ring.zero(); p.degree_in(var) as usize + 1];
    for (e, c) in &p.terms {
        out[e[var] as usize] = c.clone();
    }
    trim(&p.ring, &mut out);
    Ok(out)
}

pub fn to_dense<R: Ring>(ring: &R, vars: &[String], var: usize, coeffs: &[R::Elem]) -> DensePoly<R> {
    let raw: Vec<(ExpVec, R::Elem)> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let mut e = crate::mono::exp_zero(vars.len());
            e[var] = k as u16;
            (e, c.clone())
        })
        .collect();
    DensePoly::from_terms(ring.clone(), vars.to_vec(), raw).unwrap()
}

pub fn add<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| ring.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| ring.zero());
        out.push(ring.add(&x, &y));
    }
    trim(ring, &mut out);
    out
}

pub fn sub<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let nb: Vec<R::Elem> = b.iter().map(|c| ring.neg(c)).collect();
    add(ring, a, &nb)
}

pub fn mul<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![ring.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !ring.is_zero(y) {
                let t = ring.mul(x, y);
                out[i + j] = ring.add(&out[i + j], &t);
            }
        }
    }
    trim(ring, &mut out);
    out
}

pub fn scale<R: Ring>(ring: &R, a: &[R::Elem], c: &R::Elem) -> Vec<R::Elem> {
    let mut out: Vec<R::Elem> = a.iter().map(|x| ring.mul(x, c)).collect();
    trim(ring, &mut out);
    out
}

pub fn eval<R: Ring>(ring: &R, a: &[R::Elem], x: &R::Elem) -> R::Elem {
    let mut acc = ring.zero();
    for c in a.iter().rev() {
        acc = ring.mul(&acc, x);
        acc = ring.add(&acc, c);
    }
    acc
}

/// Division with remainder over a field (the divisor's leading coefficient
/// must be invertible).
pub fn divrem<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Result<(Vec<R::Elem>, Vec<R::Elem>)> {
    if b.is_empty() {
        return Err(Error::DivisionByZero("polynomial division by zero".into()));
    }
    let mut r = a.to_vec();
    trim(ring, &mut r);
    if r.len() < b.len() {
        return Ok((vec![], r));
    }
    let lead_inv = ring.inv(b.last().unwrap())?;
    let mut q = vec![ring.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = ring.mul(r.last().unwrap(), &lead_inv);
        q[k] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            let t = ring.mul(&c, bc);
            r[k + i] = ring.sub(&r[k + i], &t);
        }
        trim(ring, &mut r);
        if r.len() < b.len() {
            break;
        }
    }
    trim(ring, &mut q);
    Ok((q, r))
}

pub fn monic<R: Ring>(ring: &R, a: &[R::Elem]) -> Result<Vec<R::Elem>> {
    match a.last() {
        None => Ok(vec![]),
        Some(lc) => {
            let i = ring.inv(lc)?;
            Ok(scale(ring, a, &i))
        }
    }
}

/// Monic Euclidean GCD over a field.
pub fn gcd_monic<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Result<Vec<R::Elem>> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(ring, &mut r0);
    trim(ring, &mut r1);
    while !r1.is_empty() {
        let r = divrem(ring, &r0, &r1)?.1;
        r0 = r1;
        r1 = r;
    }
    monic(ring, &r0)
}

/// Pseudodivision over any commutative ring:
/// `d f = q g + r` with `d = lc(g)^(deg f - deg g + 1)`.
pub fn pseudo_divrem<R: Ring>(
    ring: &R,
    f: &[R::Elem],
    g: &[R::Elem],
) -> Result<(R::Elem, Vec<R::Elem>, Vec<R::Elem>)> {
    if g.is_empty() {
        return Err(Error::DivisionByZero("pseudodivision by zero".into()));
    }
    let mut r = f.to_vec();
    trim(ring, &mut r);
    let n = r.len() as i64 - 1;
    let m = g.len() as i64 - 1;
    if n < m {
        return Err(Error::InvalidInput("pseudodivision needs deg f >= deg g".into()));
    }
    let lc = g.last().unwrap().clone();
    let steps = (n - m + 1) as usize;
    let d = ring.pow(&lc, steps as u64);
    let mut q = vec![ring.zero(); steps];
    for _ in 0..steps {
        // invariant kept: after k steps, lc^k f = q g + r with deg-tracking
        for qi in q.iter_mut() {
            *qi = ring.mul(qi, &lc);
        }
        if r.len() >= g.len() {
            let k = r.len() - g.len();
            let top = r.last().unwrap().clone();
            // r <- lc r - top x^k g
            let mut nr: Vec<R::Elem> = r.iter().map(|c| ring.mul(c, &lc)).collect();
            for (i, gc) in g.iter().enumerate() {
                let t = ring.mul(&top, gc);
                nr[k + i] = ring.sub(&nr[k + i], &t);
            }
            trim(ring, &mut nr);
            r = nr;
            q[k] = ring.add(&q[k], &top);
        } else {
            for c in r.iter_mut() {
                *c = ring.mul(c, &lc);
            }
            trim(ring, &mut r);
        }
    }
    trim(ring, &mut q);
    Ok((d, q, r))
}

/// Formal derivative.
pub fn derivative<R: Ring>(ring: &R, a: &[R::Elem]) -> Vec<R::Elem> {
    if a.len() <= 1 {
        return vec![];
    }
    let mut out = Vec::with_capacity(a.len() - 1);
    for (k, c) in a.iter().enumerate().skip(1) {
        let kc = ring.from_i64(k as i64);
        out.push(ring.mul(c, &kc));
    }
    trim(ring, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Rationals};

    #[test]
    fn divrem_and_gcd() {
        let q = Rationals;
        // (x^2 - 1) / (x - 1) = x + 1
        let f = vec![q.from_i64(-1), q.from_i64(0), q.from_i64(1)];
        let g = vec![q.from_i64(-1), q.from_i64(1)];
        let (quo, rem) = divrem(&q, &f, &g).unwrap();
        assert_eq!(quo, vec![q.from_i64(1), q.from_i64(1)]);
        assert!(rem.is_empty());
        let gcd = gcd_monic(&q, &f, &g).unwrap();
        assert_eq!(gcd, vec![q.from_i64(-1), q.from_i64(1)]);
    }

    #[test]
    fn pseudo_divrem_identity_holds() {
        let z = crate::ring::Integers;
        let f: Vec<_> = [1i64, 0, 1].iter().map(|&c| z.from_i64(c)).collect(); // x^2+1
        let g: Vec<_> = [1i64, 2].iter().map(|&c| z.from_i64(c)).collect(); // 2x+1
        let (d, q, r) = pseudo_divrem(&z, &f, &g).unwrap();
        assert_eq!(d, z.from_i64(4));
        assert_eq!(q, vec![z.from_i64(-1), z.from_i64(2)]);
        assert_eq!(r, vec![z.from_i64(5)]);
    }

    #[test]
    fn derivative_mod_p() {
        let f5 = PrimeField::new(5).unwrap();
        // d/dx (x^5 + x) = 5x^4 + 1 = 1
        let mut a = vec![0u64; 6];
        a[1] = 1;
        a[5] = 1;
        assert_eq!(derivative(&f5, &a), vec![1]);
    }
}
