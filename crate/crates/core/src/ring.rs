//! Coefficient rings.
//!
//! Rings are lightweight context objects (a modulus, an extension
//! polynomial, ...) and elements are plain data. All operations go through
//! the context so the same generic code runs over the rationals, the
//! integers, prime fields, and extension fields.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn from_i64(&self, v: i64) -> Self::Elem;

    /// Image of `n/d` under the canonical map from the rationals, when it
    /// exists (`d` must be invertible).
    fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Result<Self::Elem>;

    /// Multiplicative inverse of a unit.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Exact quotient `a / b` when `b` divides `a`, used by fraction-free
    /// elimination.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    /// Characteristic when it is a prime, `None` for characteristic zero.
    fn char_prime(&self) -> Option<u64>;

    /// Bit size used in height reports.
    fn height_bits(&self, a: &Self::Elem) -> u64;

    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// Rings whose nonzero elements are all invertible.
pub trait Field: Ring {}

fn bigint_bits(v: &BigInt) -> u64 {
    if v.is_zero() {
        0
    } else {
        v.abs().bits()
    }
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// The field of rational numbers, stored in lowest terms.
#[derive(Clone, Debug, PartialEq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Result<BigRational> {
        if d.is_zero() {
            return Err(Error::DivisionByZero("rational with zero denominator".into()));
        }
        Ok(BigRational::new(n.clone(), d.clone()))
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero("inverse of zero".into()));
        }
        Ok(a.recip())
    }
    fn exact_div(&self, a: &BigRational, b: &BigRational) -> Result<BigRational> {
        Ok(a / b.clone())
    }
    fn char_prime(&self) -> Option<u64> {
        None
    }
    fn height_bits(&self, a: &BigRational) -> u64 {
        bigint_bits(a.numer()).max(bigint_bits(a.denom()))
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

impl Field for Rationals {}

// ---------------------------------------------------------------------------
// Integers
// ---------------------------------------------------------------------------

/// The ring of integers. Used for lifted computations and input handling;
/// inverses exist only for units.
#[derive(Clone, Debug, PartialEq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Result<BigInt> {
        if d.is_zero() {
            return Err(Error::DivisionByZero("rational with zero denominator".into()));
        }
        let (q, r) = num_integer::Integer::div_rem(n, d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InvalidRing(format!("{}/{} is not an integer", n, d)))
        }
    }
    fn inv(&self, a: &BigInt) -> Result<BigInt> {
        if a.is_one() || (-a.clone()).is_one() {
            Ok(a.clone())
        } else {
            Err(Error::DivisionByZero(format!("{} is not a unit in Z", a)))
        }
    }
    fn exact_div(&self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
        if b.is_zero() {
            return Err(Error::DivisionByZero("exact division by zero".into()));
        }
        let (q, r) = num_integer::Integer::div_rem(a, b);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InvalidRing(format!("{} does not divide {}", b, a)))
        }
    }
    fn char_prime(&self) -> Option<u64> {
        None
    }
    fn height_bits(&self, a: &BigInt) -> u64 {
        bigint_bits(a)
    }
    fn fmt_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

/// The prime field `F_p`, elements reduced to `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidRing(format!("{} is not prime", p)));
        }
        if p >= (1 << 62) {
            return Err(Error::InvalidRing("prime too large".into()));
        }
        Ok(PrimeField { p })
    }

    pub fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let mut r = v % &p;
        if r.sign() == num_bigint::Sign::Minus {
            r += &p;
        }
        let digits = r.to_u64_digits().1;
        if digits.is_empty() {
            0
        } else {
            digits[0]
        }
    }
}

pub fn fp_add(p: u64, a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn fp_sub(p: u64, a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn fp_mul(p: u64, a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn fp_pow(p: u64, mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mul(p, acc, a);
        }
        a = fp_mul(p, a, a);
        e >>= 1;
    }
    acc
}

pub fn fp_inv(p: u64, a: u64) -> Result<u64> {
    if a == 0 {
        return Err(Error::DivisionByZero(format!("inverse of 0 mod {}", p)));
    }
    Ok(fp_pow(p, a, p - 2))
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = fp_pow(n, a % n, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = fp_mul(n, x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        fp_add(self.p, *a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        fp_sub(self.p, *a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        fp_mul(self.p, *a, *b)
    }
    fn from_i64(&self, v: i64) -> u64 {
        // p < 2^62, so it fits in i64
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Result<u64> {
        let dn = self.reduce_bigint(d);
        let nv = self.reduce_bigint(n);
        let di = fp_inv(self.p, dn).map_err(|_| {
            Error::InvalidRing(format!("denominator {} vanishes mod {}", d, self.p))
        })?;
        Ok(fp_mul(self.p, nv, di))
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        fp_inv(self.p, *a)
    }
    fn exact_div(&self, a: &u64, b: &u64) -> Result<u64> {
        Ok(fp_mul(self.p, *a, fp_inv(self.p, *b)?))
    }
    fn char_prime(&self) -> Option<u64> {
        Some(self.p)
    }
    fn height_bits(&self, _a: &u64) -> u64 {
        64 - self.p.leading_zeros() as u64
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for PrimeField {}

// ---------------------------------------------------------------------------
// Extension fields
// ---------------------------------------------------------------------------

/// The field `F_{p^a} = F_p[z]/(g)` for a monic irreducible `g` of degree
/// `a`. Elements are coefficient vectors of length `a` (constant term
/// first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    pub p: u64,
    /// Monic modulus, length `a + 1`, leading coefficient 1.
    pub modulus: Vec<u64>,
}

impl ExtField {
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidRing(format!("{} is not prime", p)));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidRing("extension modulus must have degree >= 1".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidRing("extension modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidRing("modulus coefficients not reduced".into()));
        }
        Ok(ExtField { p, modulus })
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn embed_base(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = c % self.p;
        v
    }

    /// Reduce a raw coefficient vector (any length) by the modulus.
    pub fn reduce_vec(&self, mut v: Vec<u64>) -> Vec<u64> {
        let a = self.degree();
        let p = self.p;
        while v.len() > a {
            let top = v.pop().unwrap();
            if top != 0 {
                let k = v.len() - a;
                for i in 0..a {
                    let t = fp_mul(p, top, self.modulus[i]);
                    v[k + i] = fp_sub(p, v[k + i], t);
                }
            }
        }
        v.resize(a, 0);
        v
    }

}

impl Ring for ExtField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.embed_base(1)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| fp_add(self.p, x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| fp_sub(self.p, x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|&x| if x == 0 { 0 } else { self.p - x }).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let n = self.degree();
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = fp_add(self.p, prod[i + j], fp_mul(self.p, x, y));
                }
            }
        }
        self.reduce_vec(prod)
    }
    fn from_i64(&self, v: i64) -> Vec<u64> {
        let f = PrimeField { p: self.p };
        self.embed_base(f.from_i64(v))
    }
    fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Result<Vec<u64>> {
        let f = PrimeField { p: self.p };
        Ok(self.embed_base(f.from_ratio(n, d)?))
    }
    fn inv(&self, a: &Vec<u64>) -> Result<Vec<u64>> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero(format!("inverse of 0 in F_{}^{}", self.p, self.degree())));
        }
        // extended Euclid in F_p[z]
        let p = self.p;
        let mut r0: Vec<u64> = self.modulus.clone();
        let mut r1: Vec<u64> = a.clone();
        trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = fp_poly_divrem(p, &r0, &r1)?;
            let s = fp_poly_sub(p, &s0, &fp_poly_mul(p, &q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd, must be a nonzero constant since the modulus is irreducible
        if r0.len() != 1 {
            return Err(Error::InvalidRing(
                "extension modulus is reducible (gcd with element is nontrivial)".into(),
            ));
        }
        let c = fp_inv(p, r0[0])?;
        let mut out: Vec<u64> = s0.iter().map(|&x| fp_mul(p, x, c)).collect();
        out.resize(self.degree(), 0);
        Ok(out)
    }
    fn exact_div(&self, a: &Vec<u64>, b: &Vec<u64>) -> Result<Vec<u64>> {
        Ok(self.mul(a, &self.inv(b)?))
    }
    fn char_prime(&self) -> Option<u64> {
        Some(self.p)
    }
    fn height_bits(&self, _a: &Vec<u64>) -> u64 {
        (self.degree() as u64) * (64 - self.p.leading_zeros() as u64)
    }
    fn fmt_elem(&self, a: &Vec<u64>) -> String {
        let parts: Vec<String> = a.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl Field for ExtField {}

// Dense univariate arithmetic over F_p, coefficient vectors with no trailing
// zeros (the zero polynomial is the empty vector).

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn fp_poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] = fp_add(p, out[i + j], fp_mul(p, x, y));
            }
        }
    }
    trim(&mut out);
    out
}

pub fn fp_poly_sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = fp_sub(p, x, y);
    }
    trim(&mut out);
    out
}

pub fn fp_poly_divrem(p: u64, a: &[u64], b: &[u64]) -> Result<(Vec<u64>, Vec<u64>)> {
    if b.is_empty() {
        return Err(Error::DivisionByZero("polynomial division by zero".into()));
    }
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return Ok((vec![], r));
    }
    let lead_inv = fp_inv(p, *b.last().unwrap())?;
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = fp_mul(p, *r.last().unwrap(), lead_inv);
        q[k] = c;
        for (i, &bc) in b.iter().enumerate() {
            let t = fp_mul(p, c, bc);
            r[k + i] = fp_sub(p, r[k + i], t);
        }
        trim(&mut r);
        if r.is_empty() {
            break;
        }
        if r.len() < b.len() {
            break;
        }
    }
    trim(&mut q);
    Ok((q, r))
}

/// x^e mod g, g monic.
pub fn fp_poly_powmod_x(p: u64, e: &BigInt, g: &[u64]) -> Result<Vec<u64>> {
    let mut result = vec![1u64];
    let mut base = vec![0u64, 1];
    base = fp_poly_divrem(p, &base, g)?.1;
    let bits = e.bits();
    for i in (0..bits).rev() {
        result = fp_poly_divrem(p, &fp_poly_mul(p, &result, &result), g)?.1;
        if e.bit(i) {
            result = fp_poly_divrem(p, &fp_poly_mul(p, &result, &base), g)?.1;
        }
    }
    Ok(result)
}

pub fn fp_poly_gcd(p: u64, a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let r = fp_poly_divrem(p, &r0, &r1)?.1;
        r0 = r1;
        r1 = r;
    }
    if let Some(&lc) = r0.last() {
        let c = fp_inv(p, lc)?;
        for v in r0.iter_mut() {
            *v = fp_mul(p, *v, c);
        }
    }
    Ok(r0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.mul(&5, &4), 6);
        assert_eq!(f.inv(&3).unwrap(), 5);
        assert_eq!(f.from_i64(-1), 6);
        assert!(PrimeField::new(10).is_err());
    }

    #[test]
    fn ext_field_inverse() {
        // F_9 = F_3[z]/(z^2 + 1)
        let f = ExtField::new(3, vec![1, 0, 1]).unwrap();
        let z = vec![0, 1];
        let z2 = f.mul(&z, &z);
        assert_eq!(z2, vec![2, 0]); // z^2 = -1 = 2
        for a in 0..3u64 {
            for b in 0..3u64 {
                let e = vec![a, b];
                if f.is_zero(&e) {
                    continue;
                }
                let i = f.inv(&e).unwrap();
                assert_eq!(f.mul(&e, &i), f.one());
            }
        }
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        let mut primes = 0;
        for n in 2..2000u64 {
            let naive = (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), naive, "n={}", n);
            if naive {
                primes += 1;
            }
        }
        assert!(primes > 200);
        assert!(is_prime_u64(10007));
        assert!(is_prime_u64(998244353));
        assert!(is_prime_u64(1000003));
    }
}
