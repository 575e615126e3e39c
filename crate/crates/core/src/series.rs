//! Truncated power series.
//!
//! A series holds exactly `prec` coefficients (indices `0..prec`), each an
//! element of an arbitrary coefficient ring; every operation silently
//! truncates at the stored precision. Multiplication switches to Karatsuba
//! above a small cutoff, which matters at the precisions the resultant
//! engine runs at.

use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<C> {
    pub coeffs: Vec<C>,
}

impl<C> TruncSeries<C> {
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }
}

pub fn zero<R: Ring>(ring: &R, prec: usize) -> TruncSeries<R::Elem> {
    TruncSeries { coeffs: vec![ring.zero(); prec] }
}

pub fn from_const<R: Ring>(ring: &R, prec: usize, c: R::Elem) -> TruncSeries<R::Elem> {
    let mut s = zero(ring, prec);
    s.coeffs[0] = c;
    s
}

/// c0 + c1 t.
pub fn linear<R: Ring>(ring: &R, prec: usize, c0: R::Elem, c1: R::Elem) -> TruncSeries<R::Elem> {
    let mut s = zero(ring, prec);
    s.coeffs[0] = c0;
    if prec > 1 {
        s.coeffs[1] = c1;
    }
    s
}

pub fn add<R: Ring>(ring: &R, a: &TruncSeries<R::Elem>, b: &TruncSeries<R::Elem>) -> TruncSeries<R::Elem> {
    debug_assert_eq!(a.precision(), b.precision());
    TruncSeries {
        coeffs: a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| ring.add(x, y))
            .collect(),
    }
}

pub fn sub<R: Ring>(ring: &R, a: &TruncSeries<R::Elem>, b: &TruncSeries<R::Elem>) -> TruncSeries<R::Elem> {
    debug_assert_eq!(a.precision(), b.precision());
    TruncSeries {
        coeffs: a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| ring.sub(x, y))
            .collect(),
    }
}

pub fn neg<R: Ring>(ring: &R, a: &TruncSeries<R::Elem>) -> TruncSeries<R::Elem> {
    TruncSeries { coeffs: a.coeffs.iter().map(|x| ring.neg(x)).collect() }
}

pub fn scale<R: Ring>(ring: &R, a: &TruncSeries<R::Elem>, c: &R::Elem) -> TruncSeries<R::Elem> {
    TruncSeries { coeffs: a.coeffs.iter().map(|x| ring.mul(x, c)).collect() }
}

pub fn is_zero<R: Ring>(ring: &R, a: &TruncSeries<R::Elem>) -> bool {
    a.coeffs.iter().all(|c| ring.is_zero(c))
}

/// Change precision (extend with zeros or truncate).
pub fn with_precision<R: Ring>(ring: &R, a: &TruncSeries<R::Elem>, prec: usize) -> TruncSeries<R::Elem> {
    let mut coeffs = a.coeffs.clone();
    coeffs.resize(prec, ring.zero());
    coeffs.truncate(prec);
    TruncSeries { coeffs }
}

const KARATSUBA_CUTOFF: usize = 24;

fn school_mul<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem], out_len: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); out_len];
    for (i, x) in a.iter().enumerate() {
        if i >= out_len {
            break;
        }
        if ring.is_zero(x) {
            continue;
        }
        let jmax = (out_len - i).min(b.len());
        for j in 0..jmax {
            if !ring.is_zero(&b[j]) {
                let t = ring.mul(x, &b[j]);
                out[i + j] = ring.add(&out[i + j], &t);
            }
        }
    }
    out
}

/// Full product of two slices (length la + lb - 1), Karatsuba.
fn kara_full<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let n = a.len().min(b.len());
    if n <= KARATSUBA_CUTOFF {
        return school_mul(ring, a, b, a.len() + b.len() - 1);
    }
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    // (a0 + a1 t^m)(b0 + b1 t^m)
    let z0 = kara_full(ring, a0, b0);
    let z2 = if a1.is_empty() || b1.is_empty() {
        vec![]
    } else {
        kara_full(ring, a1, b1)
    };
    let asum = add_slices(ring, a0, a1);
    let bsum = add_slices(ring, b0, b1);
    let z1full = kara_full(ring, &asum, &bsum);
    let mut z1 = z1full;
    sub_into(ring, &mut z1, &z0, 0);
    sub_into(ring, &mut z1, &z2, 0);
    let mut out = vec![ring.zero(); a.len() + b.len() - 1];
    add_into(ring, &mut out, &z0, 0);
    add_into(ring, &mut out, &z1, m);
    add_into(ring, &mut out, &z2, 2 * m);
    out
}

fn add_slices<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => ring.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

fn add_into<R: Ring>(ring: &R, out: &mut [R::Elem], v: &[R::Elem], off: usize) {
    for (i, x) in v.iter().enumerate() {
        if off + i < out.len() {
            out[off + i] = ring.add(&out[off + i], x);
        }
    }
}

fn sub_into<R: Ring>(ring: &R, out: &mut Vec<R::Elem>, v: &[R::Elem], off: usize) {
    if out.len() < off + v.len() {
        out.resize(off + v.len(), ring.zero());
    }
    for (i, x) in v.iter().enumerate() {
        out[off + i] = ring.sub(&out[off + i], x);
    }
}

pub fn mul<R: Ring>(ring: &R, a: &TruncSeries<R::Elem>, b: &TruncSeries<R::Elem>) -> TruncSeries<R::Elem> {
    debug_assert_eq!(a.precision(), b.precision());
    let prec = a.precision();
    if prec <= KARATSUBA_CUTOFF {
        return TruncSeries { coeffs: school_mul(ring, &a.coeffs, &b.coeffs, prec) };
    }
    // trim trailing zeros before the full product to avoid wasted work
    let la = a.coeffs.iter().rposition(|c| !ring.is_zero(c)).map_or(0, |i| i + 1);
    let lb = b.coeffs.iter().rposition(|c| !ring.is_zero(c)).map_or(0, |i| i + 1);
    if la == 0 || lb == 0 {
        return zero(ring, prec);
    }
    let ea = la.min(prec);
    let eb = lb.min(prec);
    let mut full = kara_full(ring, &a.coeffs[..ea], &b.coeffs[..eb]);
    full.resize(prec, ring.zero());
    full.truncate(prec);
    TruncSeries { coeffs: full }
}

/// Multiply by t^k.
pub fn shift_up<R: Ring>(ring: &R, a: &TruncSeries<R::Elem>, k: usize) -> TruncSeries<R::Elem> {
    let prec = a.precision();
    let mut coeffs = vec![ring.zero(); prec];
    for i in 0..prec.saturating_sub(k) {
        coeffs[i + k] = a.coeffs[i].clone();
    }
    TruncSeries { coeffs }
}

pub fn pow<R: Ring>(ring: &R, a: &TruncSeries<R::Elem>, mut e: u64) -> TruncSeries<R::Elem> {
    let prec = a.precision();
    let mut acc = from_const(ring, prec, ring.one());
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(ring, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(ring, &base, &base);
        }
    }
    acc
}

/// Inverse of a series whose constant term is a unit.
pub fn inv<R: Ring>(ring: &R, a: &TruncSeries<R::Elem>) -> Result<TruncSeries<R::Elem>> {
    let prec = a.precision();
    let c0 = ring
        .inv(&a.coeffs[0])
        .map_err(|_| Error::DivisionByZero("series with non-unit constant term".into()))?;
    let mut out = vec![ring.zero(); prec];
    out[0] = c0.clone();
    for n in 1..prec {
        // out[n] = -c0 * sum_{k=1..n} a[k] out[n-k]
        let mut acc = ring.zero();
        for k in 1..=n {
            if !ring.is_zero(&a.coeffs[k]) {
                let t = ring.mul(&a.coeffs[k], &out[n - k]);
                acc = ring.add(&acc, &t);
            }
        }
        out[n] = ring.neg(&ring.mul(&c0, &acc));
    }
    Ok(TruncSeries { coeffs: out })
}

/// Sum of all stored coefficients (evaluation at t = 1 of the truncation).
pub fn eval_at_one<R: Ring>(ring: &R, a: &TruncSeries<R::Elem>) -> R::Elem {
    let mut acc = ring.zero();
    for c in &a.coeffs {
        acc = ring.add(&acc, c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Rationals, Ring};
    use crate::rng::CounterRng;

    #[test]
    fn karatsuba_matches_schoolbook() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = CounterRng::new(5);
        for prec in [1usize, 7, 30, 65, 129] {
            let a = TruncSeries {
                coeffs: (0..prec).map(|_| rng.below(10007)).collect::<Vec<u64>>(),
            };
            let b = TruncSeries {
                coeffs: (0..prec).map(|_| rng.below(10007)).collect::<Vec<u64>>(),
            };
            let fast = mul(&f, &a, &b);
            let slow = TruncSeries { coeffs: school_mul(&f, &a.coeffs, &b.coeffs, prec) };
            assert_eq!(fast, slow, "prec={}", prec);
        }
    }

    #[test]
    fn inverse_is_two_sided() {
        let q = Rationals;
        let prec = 40;
        let mut a = from_const(&q, prec, q.from_i64(3));
        a.coeffs[1] = q.from_i64(-2);
        a.coeffs[7] = q.from_i64(5);
        let ai = inv(&q, &a).unwrap();
        let prod = mul(&q, &a, &ai);
        assert_eq!(prod, from_const(&q, prec, q.one()));
    }
}
