//! Coefficient-ring descriptors, unreduced rationals, field extension, and
//! the lift/reduce maps between finite fields and the integers.

use crate::error::{Error, Result};
use crate::rng::CounterRng;
use crate::ring::{
    fp_add, fp_mul, fp_poly_gcd, fp_poly_powmod_x, fp_poly_sub, is_prime_u64, ExtField,
    PrimeField, Ring,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingKind {
    Int,
    Rat,
    PrimeField,
    ExtField,
}

/// Which coefficient ring is active, with modulus data and the names of any
/// polynomial parameters adjoined on top of the base.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub kind: RingKind,
    pub p: Option<u64>,
    /// Monic irreducible modulus over F_p, constant term first.
    pub ext_modulus: Option<Vec<u64>>,
    pub param_vars: Vec<String>,
}

impl RingDescriptor {
    pub fn rational() -> Self {
        RingDescriptor { kind: RingKind::Rat, p: None, ext_modulus: None, param_vars: vec![] }
    }

    pub fn integer() -> Self {
        RingDescriptor { kind: RingKind::Int, p: None, ext_modulus: None, param_vars: vec![] }
    }

    pub fn prime_field(p: u64) -> Self {
        RingDescriptor {
            kind: RingKind::PrimeField,
            p: Some(p),
            ext_modulus: None,
            param_vars: vec![],
        }
    }

    pub fn ext_field(p: u64, modulus: Vec<u64>) -> Self {
        RingDescriptor {
            kind: RingKind::ExtField,
            p: Some(p),
            ext_modulus: Some(modulus),
            param_vars: vec![],
        }
    }

    pub fn with_params(mut self, params: Vec<String>) -> Self {
        self.param_vars = params;
        self
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            RingKind::Int | RingKind::Rat => {}
            RingKind::PrimeField => {
                let p = self.p.ok_or_else(|| Error::InvalidRing("missing prime".into()))?;
                if !is_prime_u64(p) {
                    return Err(Error::InvalidRing(format!("{} is not prime", p)));
                }
            }
            RingKind::ExtField => {
                let p = self.p.ok_or_else(|| Error::InvalidRing("missing prime".into()))?;
                if !is_prime_u64(p) {
                    return Err(Error::InvalidRing(format!("{} is not prime", p)));
                }
                let m = self
                    .ext_modulus
                    .as_ref()
                    .ok_or_else(|| Error::InvalidRing("missing extension modulus".into()))?;
                if m.len() < 2 {
                    return Err(Error::InvalidRing("extension modulus must have degree >= 1".into()));
                }
                if *m.last().unwrap() != 1 {
                    return Err(Error::InvalidRing("extension modulus must be monic".into()));
                }
            }
        }
        let mut names = self.param_vars.clone();
        names.sort();
        names.dedup();
        if names.len() != self.param_vars.len() {
            return Err(Error::InvalidRing("duplicate parameter variable".into()));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Unreduced rationals
// ---------------------------------------------------------------------------

/// A rational as a plain numerator/denominator pair. Arithmetic does not
/// reduce to lowest terms; `normalize` produces the canonical form at
/// output boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatValue {
    pub num: BigInt,
    pub den: BigInt,
}

impl RatValue {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::MalformedRational(format!("{}/0", num)));
        }
        Ok(RatValue { num, den })
    }

    pub fn from_int(v: i64) -> Self {
        RatValue { num: BigInt::from(v), den: BigInt::one() }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatValue {
            num: &self.num * &other.den + &other.num * &self.den,
            den: &self.den * &other.den,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RatValue {
            num: &self.num * &other.den - &other.num * &self.den,
            den: &self.den * &other.den,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatValue { num: &self.num * &other.num, den: &self.den * &other.den }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.num.is_zero() {
            return Err(Error::DivisionByZero("rational division by zero".into()));
        }
        Ok(RatValue { num: &self.num * &other.den, den: &self.den * &other.num })
    }

    pub fn neg(&self) -> Self {
        RatValue { num: -self.num.clone(), den: self.den.clone() }
    }

    pub fn is_zero_value(&self) -> bool {
        self.num.is_zero()
    }

    /// Reduce to lowest terms with a positive denominator.
    pub fn normalize(&self) -> Self {
        let r = BigRational::new(self.num.clone(), self.den.clone());
        RatValue { num: r.numer().clone(), den: r.denom().clone() }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.den.clone())
    }

    /// Height: max of the bit lengths of numerator and denominator.
    pub fn height_bits(&self) -> u64 {
        let nb = if self.num.is_zero() { 0 } else { self.num.abs().bits() };
        let db = if self.den.is_zero() { 0 } else { self.den.abs().bits() };
        nb.max(db)
    }
}

/// Canonical comparison of unreduced rationals by cross multiplication.
pub fn rat_equal(x: &RatValue, y: &RatValue) -> Result<bool> {
    if x.den.is_zero() || y.den.is_zero() {
        return Err(Error::MalformedRational("denominator is zero".into()));
    }
    Ok(&x.num * &y.den == &y.num * &x.den)
}

// ---------------------------------------------------------------------------
// Field extension
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct FieldExtension {
    pub b: u32,
    /// Monic irreducible of degree b over F_p.
    pub modulus: Vec<u64>,
    /// a x b matrix: row i holds the coordinates of the image of y^i, so a
    /// coefficient row-vector maps by right multiplication.
    pub phi: Vec<Vec<u64>>,
}

impl FieldExtension {
    pub fn apply(&self, coeffs: &[u64], p: u64) -> Vec<u64> {
        let b = self.b as usize;
        let mut out = vec![0u64; b];
        for (i, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..b {
                out[j] = fp_add(p, out[j], fp_mul(p, c, self.phi[i][j]));
            }
        }
        out
    }
}

/// Construct `F_{p^b}` with `p^b >= bound` and `b` a multiple of `a`,
/// together with an embedding of `F_{p^a}` (given by `a_modulus` when
/// `a > 1`). Sampling is seeded; irreducibility is checked by a
/// deterministic gcd test against `x^{p^k} - x`.
pub fn field_extend(
    p: u64,
    a: u32,
    a_modulus: Option<&[u64]>,
    bound: &BigInt,
    seed: u64,
) -> Result<FieldExtension> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidRing(format!("{} is not prime", p)));
    }
    if a == 0 {
        return Err(Error::InvalidRing("extension degree must be positive".into()));
    }
    if bound < &BigInt::from(2) {
        return Err(Error::InvalidInput("field size bound must be at least 2".into()));
    }
    // smallest multiple of a with p^b >= bound
    let mut b = a;
    loop {
        if BigInt::from(p).pow(b) >= *bound {
            break;
        }
        b += a;
    }

    let mut rng = CounterRng::new(seed).child(0x11);
    let modulus = loop {
        // random monic polynomial of degree b
        let mut g: Vec<u64> = (0..b).map(|_| rng.below(p)).collect();
        g.push(1);
        if is_irreducible(p, &g)? {
            break g;
        }
    };

    // embedding: send the class of y (mod the degree-a modulus) to a root of
    // that modulus in F_{p^b}; powers of the root give the matrix rows.
    let phi = if a == 1 {
        vec![vec![if b == 1 { 1 % p } else { 1 }]
            .into_iter()
            .chain(std::iter::repeat(0).take(b as usize - 1))
            .collect()]
    } else {
        let ga = a_modulus.ok_or_else(|| {
            Error::InvalidRing("embedding a proper extension needs its modulus".into())
        })?;
        let big = ExtField::new(p, modulus.clone())?;
        let root = find_root_in_ext(&big, ga, &mut rng.child(0x22))?;
        let mut rows = Vec::with_capacity(a as usize);
        let mut pow = big.one();
        for _ in 0..a {
            rows.push(pow.clone());
            pow = big.mul(&pow, &root);
        }
        rows
    };

    Ok(FieldExtension { b, modulus, phi })
}

/// Deterministic irreducibility test for monic g over F_p:
/// g is irreducible of degree b iff x^{p^b} = x (mod g) and
/// gcd(x^{p^k} - x, g) = 1 for every k <= b/2.
pub fn is_irreducible(p: u64, g: &[u64]) -> Result<bool> {
    let b = g.len() - 1;
    if b == 0 {
        return Ok(false);
    }
    if b == 1 {
        return Ok(true);
    }
    let x = vec![0u64, 1];
    for k in 1..=b / 2 {
        let e = BigInt::from(p).pow(k as u32);
        let xpk = fp_poly_powmod_x(p, &e, g)?;
        let diff = fp_poly_sub(p, &xpk, &x);
        let gcd = fp_poly_gcd(p, &diff, g)?;
        if gcd.len() != 1 {
            return Ok(false);
        }
    }
    let e = BigInt::from(p).pow(b as u32);
    let xpb = fp_poly_powmod_x(p, &e, g)?;
    Ok(fp_poly_sub(p, &xpb, &x).is_empty())
}

/// Find a root of the monic irreducible `ga` (over F_p) inside the
/// extension field `big`; `ga`'s degree divides the extension degree.
fn find_root_in_ext(big: &ExtField, ga: &[u64], rng: &mut CounterRng) -> Result<Vec<u64>> {
    let p = big.p;
    // lift ga to a polynomial over the big field
    let lift: Vec<Vec<u64>> = ga.iter().map(|&c| big.embed_base(c)).collect();
    let mut poly = lift;
    // split until linear
    loop {
        let d = poly.len() - 1;
        if d == 1 {
            // root = -c0 / c1
            let c1i = big.inv(&poly[1])?;
            let r = big.mul(&big.neg(&poly[0]), &c1i);
            return Ok(r);
        }
        // random splitting: gcd((y + beta)^((q-1)/2) - 1, poly) in odd
        // characteristic, trace polynomial in characteristic two
        let candidate = if p % 2 == 1 {
            let beta: Vec<u64> = (0..big.degree()).map(|_| rng.below(p)).collect();
            let shifted = vec![beta, big.one()]; // y + beta
            let q = BigInt::from(p).pow(big.degree() as u32);
            let e = (&q - BigInt::one()) / BigInt::from(2);
            let w = ext_poly_powmod(big, &shifted, &e, &poly)?;
            let mut wm1 = w;
            if wm1.is_empty() {
                wm1 = vec![big.neg(&big.one())];
            } else {
                wm1[0] = big.sub(&wm1[0], &big.one());
                ext_trim(big, &mut wm1);
            }
            ext_poly_gcd(big, &wm1, &poly)?
        } else {
            // trace map T(c y) = sum_{i<deg} (c y)^{2^i} mod poly
            let beta: Vec<u64> = (0..big.degree()).map(|_| rng.below(p)).collect();
            let cy = vec![big.zero(), beta]; // beta * y
            let mut acc = cy.clone();
            let mut term = cy;
            let bits = big.degree() as u32;
            for _ in 1..bits {
                term = ext_poly_mulmod(big, &term, &term, &poly)?;
                acc = ext_poly_add(big, &acc, &term);
            }
            ext_poly_gcd(big, &acc, &poly)?
        };
        let k = candidate.len().saturating_sub(1);
        if k > 0 && k < d {
            let co = ext_poly_divrem(big, &poly, &candidate)?;
            // keep the smaller factor
            poly = if k <= d - k { candidate } else { co.0 };
            // make monic
            let lc = poly.last().unwrap().clone();
            let lci = big.inv(&lc)?;
            for c in poly.iter_mut() {
                *c = big.mul(c, &lci);
            }
        }
    }
}

// dense univariate arithmetic over an extension field

fn ext_trim(big: &ExtField, v: &mut Vec<Vec<u64>>) {
    while v.last().map_or(false, |c| big.is_zero(c)) {
        v.pop();
    }
}

fn ext_poly_add(big: &ExtField, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| big.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| big.zero());
        out.push(big.add(&x, &y));
    }
    ext_trim(big, &mut out);
    out
}

fn ext_poly_mul(big: &ExtField, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![big.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if big.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !big.is_zero(y) {
                let t = big.mul(x, y);
                out[i + j] = big.add(&out[i + j], &t);
            }
        }
    }
    ext_trim(big, &mut out);
    out
}

fn ext_poly_divrem(
    big: &ExtField,
    a: &[Vec<u64>],
    b: &[Vec<u64>],
) -> Result<(Vec<Vec<u64>>, Vec<Vec<u64>>)> {
    if b.is_empty() {
        return Err(Error::DivisionByZero("polynomial division by zero".into()));
    }
    let mut r = a.to_vec();
    ext_trim(big, &mut r);
    if r.len() < b.len() {
        return Ok((vec![], r));
    }
    let li = big.inv(b.last().unwrap())?;
    let mut q = vec![big.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = big.mul(r.last().unwrap(), &li);
        q[k] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            let t = big.mul(&c, bc);
            r[k + i] = big.sub(&r[k + i], &t);
        }
        ext_trim(big, &mut r);
        if r.len() < b.len() {
            break;
        }
    }
    ext_trim(big, &mut q);
    Ok((q, r))
}

fn ext_poly_mulmod(
    big: &ExtField,
    a: &[Vec<u64>],
    b: &[Vec<u64>],
    m: &[Vec<u64>],
) -> Result<Vec<Vec<u64>>> {
    let prod = ext_poly_mul(big, a, b);
    Ok(ext_poly_divrem(big, &prod, m)?.1)
}

fn ext_poly_powmod(
    big: &ExtField,
    a: &[Vec<u64>],
    e: &BigInt,
    m: &[Vec<u64>],
) -> Result<Vec<Vec<u64>>> {
    let mut result = vec![big.one()];
    let base = ext_poly_divrem(big, a, m)?.1;
    let bits = e.bits();
    for i in (0..bits).rev() {
        result = ext_poly_mulmod(big, &result, &result, m)?;
        if e.bit(i) {
            result = ext_poly_mulmod(big, &result, &base, m)?;
        }
    }
    Ok(result)
}

fn ext_poly_gcd(big: &ExtField, a: &[Vec<u64>], b: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    ext_trim(big, &mut r0);
    ext_trim(big, &mut r1);
    while !r1.is_empty() {
        let r = ext_poly_divrem(big, &r0, &r1)?.1;
        r0 = r1;
        r1 = r;
    }
    if let Some(lc) = r0.last() {
        let lci = big.inv(lc)?;
        for c in r0.iter_mut() {
            *c = big.mul(c, &lci);
        }
    }
    Ok(r0)
}

// ---------------------------------------------------------------------------
// Lift / reduce
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(BigInt),
    Rat(RatValue),
    Fp(u64),
    Fq(Vec<u64>),
    /// Integer polynomial in the extension generator, constant term first.
    IntPoly(Vec<BigInt>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftDirection {
    Lift,
    Reduce,
}

/// Lift a finite-field element to the integers, or reduce an integer (or
/// integer polynomial) into a finite field. Reduction into an extension
/// field pseudodivides by the monic lift of the modulus and then reduces
/// modulo p.
pub fn lift_reduce(x: &Value, dir: LiftDirection, target: &RingDescriptor) -> Result<Value> {
    target.validate()?;
    match dir {
        LiftDirection::Lift => match x {
            Value::Fp(v) => Ok(Value::Int(BigInt::from(*v))),
            Value::Fq(coeffs) => Ok(Value::IntPoly(
                coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            )),
            _ => Err(Error::InvalidRing("lift applies to finite-field elements".into())),
        },
        LiftDirection::Reduce => {
            let p = target
                .p
                .ok_or_else(|| Error::InvalidRing("reduction target needs a prime".into()))?;
            match target.kind {
                RingKind::PrimeField => {
                    let v = match x {
                        Value::Int(v) => v.clone(),
                        Value::Fp(v) => BigInt::from(*v),
                        _ => {
                            return Err(Error::InvalidRing(
                                "reduce into a prime field applies to integers".into(),
                            ))
                        }
                    };
                    let f = PrimeField::new(p)?;
                    Ok(Value::Fp(f.reduce_bigint(&v)))
                }
                RingKind::ExtField => {
                    let modulus = target.ext_modulus.as_ref().unwrap();
                    if *modulus.last().unwrap() != 1 {
                        return Err(Error::InvalidRing("extension modulus must be monic".into()));
                    }
                    let coeffs: Vec<BigInt> = match x {
                        Value::Int(v) => vec![v.clone()],
                        Value::IntPoly(v) => v.clone(),
                        _ => {
                            return Err(Error::InvalidRing(
                                "reduce into an extension field applies to integer polynomials"
                                    .into(),
                            ))
                        }
                    };
                    // pseudodivide by the monic lift of the modulus over Z,
                    // then reduce the remainder mod p
                    let z = crate::ring::Integers;
                    let ghat: Vec<BigInt> = modulus.iter().map(|&c| BigInt::from(c)).collect();
                    let mut rem = coeffs;
                    crate::uni::trim(&z, &mut rem);
                    if rem.len() >= ghat.len() {
                        let (_, _, r) = crate::uni::pseudo_divrem(&z, &rem, &ghat)?;
                        rem = r;
                    }
                    let f = PrimeField::new(p)?;
                    let mut out: Vec<u64> = rem.iter().map(|c| f.reduce_bigint(c)).collect();
                    out.resize(modulus.len() - 1, 0);
                    Ok(Value::Fq(out))
                }
                _ => Err(Error::InvalidRing("reduction target must be a finite field".into())),
            }
        }
    }
}

/// Max height (bit size) used in reports.
pub fn value_height_bits(v: &Value) -> u64 {
    match v {
        Value::Int(x) => {
            if x.is_zero() {
                0
            } else {
                x.abs().bits()
            }
        }
        Value::Rat(r) => r.height_bits(),
        Value::Fp(x) => 64 - x.leading_zeros() as u64,
        Value::Fq(c) => c.iter().map(|&x| 64 - x.leading_zeros() as u64).max().unwrap_or(0),
        Value::IntPoly(c) => c
            .iter()
            .map(|x| if x.is_zero() { 0 } else { x.abs().bits() })
            .max()
            .unwrap_or(0),
    }
}

/// Least common multiple of denominators, for clearing rational systems.
pub fn denominator_lcm(values: &[BigRational]) -> BigInt {
    let mut acc = BigInt::one();
    for v in values {
        acc = acc.lcm(v.denom());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Field;
    use crate::rng::CounterRng;

    #[test]
    fn rat_value_examples() {
        let a = RatValue::new(BigInt::from(2), BigInt::from(4)).unwrap();
        let b = RatValue::new(BigInt::from(1), BigInt::from(2)).unwrap();
        assert!(rat_equal(&a, &b).unwrap());
        let z1 = RatValue::new(BigInt::from(0), BigInt::from(5)).unwrap();
        let z2 = RatValue::new(BigInt::from(0), BigInt::from(-3)).unwrap();
        assert!(rat_equal(&z1, &z2).unwrap());
        assert!(RatValue::new(BigInt::from(3), BigInt::zero()).is_err());
        // unreduced arithmetic keeps raw pairs
        let s = a.add(&b);
        assert_eq!(s.den, BigInt::from(8));
        assert_eq!(s.normalize(), RatValue::from_int(1).normalize());
    }

    #[test]
    fn field_extend_degree_examples() {
        let e = field_extend(2, 1, None, &BigInt::from(5), 1).unwrap();
        assert_eq!(e.b, 3);
        let e = field_extend(3, 2, Some(&[2, 2, 1]), &BigInt::from(100), 1).unwrap();
        assert_eq!(e.b, 6);
        let e = field_extend(5, 1, None, &BigInt::from(4), 1).unwrap();
        assert_eq!(e.b, 1);
        assert!(field_extend(6, 1, None, &BigInt::from(4), 1).is_err());
    }

    #[test]
    fn field_extend_embedding_is_homomorphism() {
        // F_9 = F_3[y]/(y^2 + 2y + 2), embedded into F_{3^6}
        let p = 3u64;
        let ga = vec![2u64, 2, 1];
        assert!(is_irreducible(p, &ga).unwrap());
        let ext = field_extend(p, 2, Some(&ga), &BigInt::from(100), 7).unwrap();
        assert_eq!(ext.b, 6);
        assert!(is_irreducible(p, &ext.modulus).unwrap());
        let small = ExtField::new(p, ga).unwrap();
        let big = ExtField::new(p, ext.modulus.clone()).unwrap();
        fn embed(ext: &FieldExtension, small_el: &[u64], p: u64) -> Vec<u64> {
            ext.apply(small_el, p)
        }
        let mut rng = CounterRng::new(3);
        for _ in 0..100 {
            let x = vec![rng.below(p), rng.below(p)];
            let y = vec![rng.below(p), rng.below(p)];
            let lhs_mul = embed(&ext, &small.mul(&x, &y), p);
            let rhs_mul = big.mul(&embed(&ext, &x, p), &embed(&ext, &y, p));
            assert_eq!(lhs_mul, rhs_mul);
            let lhs_add = embed(&ext, &small.add(&x, &y), p);
            let rhs_add = big.add(&embed(&ext, &x, p), &embed(&ext, &y, p));
            assert_eq!(lhs_add, rhs_add);
        }
    }

    #[test]
    fn lift_reduce_examples() {
        // reduce 10 into F_7
        let t = RingDescriptor::prime_field(7);
        let r = lift_reduce(&Value::Int(BigInt::from(10)), LiftDirection::Reduce, &t).unwrap();
        assert_eq!(r, Value::Fp(3));
        // reduce -1 into F_7
        let r = lift_reduce(&Value::Int(BigInt::from(-1)), LiftDirection::Reduce, &t).unwrap();
        assert_eq!(r, Value::Fp(6));
        // reduce z^2 + 8 into F_7[z]/(z^2+1): remainder 7, then 0 mod 7
        let t = RingDescriptor::ext_field(7, vec![1, 0, 1]);
        let poly = vec![BigInt::from(8), BigInt::zero(), BigInt::one()];
        let r = lift_reduce(&Value::IntPoly(poly), LiftDirection::Reduce, &t).unwrap();
        assert_eq!(r, Value::Fq(vec![0, 0]));
    }

    #[test]
    fn reduce_after_lift_is_identity() {
        let t7 = RingDescriptor::prime_field(7);
        for v in 0..7u64 {
            let lifted = lift_reduce(&Value::Fp(v), LiftDirection::Lift, &t7).unwrap();
            let back = lift_reduce(&lifted, LiftDirection::Reduce, &t7).unwrap();
            assert_eq!(back, Value::Fp(v));
        }
        let tq = RingDescriptor::ext_field(3, vec![1, 2, 0, 1]);
        let fq = ExtField::new(3, vec![1, 2, 0, 1]).unwrap();
        let mut rng = CounterRng::new(11);
        for _ in 0..1000 {
            let x: Vec<u64> = (0..3).map(|_| rng.below(3)).collect();
            let lifted = lift_reduce(&Value::Fq(x.clone()), LiftDirection::Lift, &tq).unwrap();
            let back = lift_reduce(&lifted, LiftDirection::Reduce, &tq).unwrap();
            assert_eq!(back, Value::Fq(x));
        }
        let _ = fq; // descriptor-level checks only
    }

    fn check_axioms<F: Field>(field: &F, samples: &[F::Elem]) {
        for a in samples {
            for b in samples {
                assert_eq!(field.add(a, b), field.add(b, a));
                assert_eq!(field.mul(a, b), field.mul(b, a));
            }
        }
        let n = samples.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (&samples[i], &samples[j], &samples[k]);
                    let lhs = field.mul(a, &field.add(b, c));
                    let rhs = field.add(&field.mul(a, b), &field.mul(a, c));
                    assert_eq!(lhs, rhs);
                    let lhs = field.add(&field.add(a, b).clone(), c);
                    let rhs = field.add(a, &field.add(b, c));
                    assert_eq!(lhs, rhs);
                    let lhs = field.mul(&field.mul(a, b).clone(), c);
                    let rhs = field.mul(a, &field.mul(b, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
        for a in samples {
            if !field.is_zero(a) {
                let i = field.inv(a).unwrap();
                assert_eq!(field.mul(a, &i), field.one());
            }
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        // >= 1000 triples per field: 11 samples give 1331 triples
        let mut rng = CounterRng::new(99);
        let q = crate::ring::Rationals;
        let samples: Vec<_> = (0..11)
            .map(|_| {
                let n = rng.below(19) as i64 - 9;
                let d = rng.below(9) as i64 + 1;
                q.from_ratio(&BigInt::from(n), &BigInt::from(d)).unwrap()
            })
            .collect();
        check_axioms(&q, &samples);

        let f = PrimeField::new(10007).unwrap();
        let samples: Vec<u64> = (0..11).map(|_| rng.below(10007)).collect();
        check_axioms(&f, &samples);

        let fq = ExtField::new(3, vec![1, 2, 0, 1]).unwrap();
        let samples: Vec<Vec<u64>> = (0..11).map(|_| (0..3).map(|_| rng.below(3)).collect()).collect();
        check_axioms(&fq, &samples);
    }

    #[test]
    fn rat_value_axioms_under_cross_equality() {
        // unreduced pairs satisfy the field laws w.r.t. rat_equal
        let mut rng = CounterRng::new(5);
        let sample = |rng: &mut CounterRng| {
            RatValue::new(
                BigInt::from(rng.below(19) as i64 - 9),
                BigInt::from(rng.below(9) as i64 + 1),
            )
            .unwrap()
        };
        for _ in 0..1000 {
            let a = sample(&mut rng);
            let b = sample(&mut rng);
            let c = sample(&mut rng);
            let lhs = a.mul(&b.add(&c));
            let rhs = a.mul(&b).add(&a.mul(&c));
            assert!(rat_equal(&lhs, &rhs).unwrap());
            let lhs = a.add(&b).add(&c);
            let rhs = a.add(&b.add(&c));
            assert!(rat_equal(&lhs, &rhs).unwrap());
            if !a.is_zero_value() {
                let inv = RatValue::new(a.den.clone(), a.num.clone()).unwrap();
                assert!(rat_equal(&a.mul(&inv), &RatValue::from_int(1)).unwrap());
            }
        }
    }
}
