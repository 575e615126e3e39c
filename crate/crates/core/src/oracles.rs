//! Independent brute-force oracles.
//!
//! Everything here is deliberately simple and structurally unrelated to the
//! homotopy engine: determinant-based resultants, the Euclidean algorithm,
//! exhaustive point enumeration, and squarefree decomposition. The test
//! suites check the main algorithms against these.

use crate::error::{Error, Result};
use crate::mono::{exp_zero, grlex_cmp, ExpVec};
use crate::poly::{DensePoly, PolySystem};
use crate::ring::{ExtField, Field, Ring};
use crate::rng::CounterRng;
use crate::uni;
use rayon::prelude::*;

// ---------------------------------------------------------------------------
// Fraction-free determinants
// ---------------------------------------------------------------------------

/// Bareiss fraction-free determinant. Works over any integral domain with
/// exact division (integers, fields, parameter-polynomial rings).
pub fn bareiss_determinant<R: Ring>(ring: &R, mat: &[Vec<R::Elem>]) -> Result<R::Elem> {
    let n = mat.len();
    if n == 0 {
        return Ok(ring.one());
    }
    let mut m: Vec<Vec<R::Elem>> = mat.to_vec();
    for row in &m {
        if row.len() != n {
            return Err(Error::InvalidInput("determinant of a non-square matrix".into()));
        }
    }
    let mut sign = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&m[k][k]) {
            let pivot = (k + 1..n).find(|&r| !ring.is_zero(&m[r][k]));
            match pivot {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(ring.zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = ring.mul(&m[k][k], &m[i][j]);
                let b = ring.mul(&m[i][k], &m[k][j]);
                let num = ring.sub(&a, &b);
                m[i][j] = ring.exact_div(&num, &prev)?;
            }
            m[i][k] = ring.zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { ring.neg(&det) } else { det })
}

// ---------------------------------------------------------------------------
// Sylvester resultant
// ---------------------------------------------------------------------------

/// Resultant of two nonzero univariate polynomials as the determinant of
/// the Sylvester matrix, computed by fraction-free elimination. Equals
/// `lc(f)^{deg g} * prod g(alpha)` over the roots of `f`, and is one on
/// monomial systems after homogenization.
pub fn sylvester_resultant<R: Ring>(f: &DensePoly<R>, g: &DensePoly<R>) -> Result<R::Elem> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::DegenerateInput("resultant of the zero polynomial".into()));
    }
    let var = match f.sole_variable().or_else(|| g.sole_variable()) {
        Some(v) => v,
        None => 0,
    };
    let ring = f.ring.clone();
    let fc = uni::from_dense(f, var)?;
    let gc = uni::from_dense(g, var)?;
    sylvester_resultant_coeffs(&ring, &fc, &gc)
}

/// Sylvester determinant on coefficient vectors (ascending), with the
/// degrees taken from the vector lengths.
pub fn sylvester_resultant_coeffs<R: Ring>(
    ring: &R,
    f: &[R::Elem],
    g: &[R::Elem],
) -> Result<R::Elem> {
    if f.is_empty() || g.is_empty() {
        return Err(Error::DegenerateInput("resultant of the zero polynomial".into()));
    }
    let df = f.len() - 1;
    let dg = g.len() - 1;
    let n = df + dg;
    if n == 0 {
        return Ok(ring.one());
    }
    let mut mat = vec![vec![ring.zero(); n]; n];
    for r in 0..dg {
        for (k, c) in f.iter().enumerate() {
            // coefficient of x^{df-j} lands in column r + j
            let j = df - k;
            mat[r][r + j] = c.clone();
        }
    }
    for r in 0..df {
        for (k, c) in g.iter().enumerate() {
            let j = dg - k;
            mat[dg + r][r + j] = c.clone();
        }
    }
    bareiss_determinant(ring, &mat)
}

// ---------------------------------------------------------------------------
// Macaulay resultant
// ---------------------------------------------------------------------------

pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<ExpVec> {
    fn rec(out: &mut Vec<ExpVec>, cur: &mut ExpVec, pos: usize, left: u32) {
        if pos + 1 == cur.len() {
            cur[pos] = left as u16;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for v in 0..=left {
            cur[pos] = v as u16;
            rec(out, cur, pos + 1, left - v);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    let mut cur = exp_zero(nvars);
    rec(&mut out, &mut cur, 0, d);
    out.sort_unstable_by(grlex_cmp);
    out
}

/// Classical Macaulay resultant of `n+1` forms in `n+1` variables: the
/// quotient of the big Macaulay determinant by its distinguished minor.
/// When the minor degenerates at the given coefficients, retries after a
/// seeded random invertible change of coordinates and divides out the
/// induced power of its determinant.
pub fn macaulay_resultant<R: Ring>(sys: &PolySystem<R>, seed: u64) -> Result<R::Elem> {
    let n_plus_1 = sys.polys.len();
    if n_plus_1 == 0 || n_plus_1 != sys.vars.len() {
        return Err(Error::InvalidInput(
            "need n+1 forms in n+1 variables for the Macaulay construction".into(),
        ));
    }
    let ring = sys.ring.clone();
    let all: Vec<usize> = (0..n_plus_1).collect();
    let mut degrees = Vec::with_capacity(n_plus_1);
    for f in &sys.polys {
        if f.is_zero() {
            return Err(Error::DegenerateDegree("zero form in Macaulay input".into()));
        }
        let d = f
            .homogeneous_degree_in(&all)
            .ok_or_else(|| Error::NotHomogeneous("Macaulay input".into()))?;
        if d == 0 {
            return Err(Error::DegenerateDegree("degree-zero form in Macaulay input".into()));
        }
        degrees.push(d);
    }
    if n_plus_1 == 1 {
        let mut e = exp_zero(1);
        e[0] = degrees[0] as u16;
        return Ok(sys.polys[0].coeff(&e));
    }

    let mut rng = CounterRng::new(seed).child(0x4d41);
    let mut polys: Vec<DensePoly<R>> = sys.polys.clone();
    let mut scale_back = ring.one(); // det(A)^{prod d_i} to divide out
    for attempt in 0..=10u32 {
        if let Ok(Some(v)) = macaulay_quotient(&ring, &polys, &degrees) {
            return ring.exact_div(&v, &scale_back);
        }
        if attempt == 10 {
            return Err(Error::OracleFailure(
                "Macaulay minor degenerated on every retry".into(),
            ));
        }
        let (a, det_a) = loop {
            let cand: Vec<Vec<R::Elem>> = (0..n_plus_1)
                .map(|_| {
                    (0..n_plus_1)
                        .map(|_| ring.from_i64(rng.below(17) as i64 - 8))
                        .collect()
                })
                .collect();
            let det = bareiss_determinant(&ring, &cand)?;
            if !ring.is_zero(&det) {
                break (cand, det);
            }
        };
        let prod_d: u64 = degrees.iter().map(|&d| d as u64).product();
        scale_back = ring.pow(&det_a, prod_d);
        polys = sys
            .polys
            .iter()
            .map(|f| subst_linear(f, &a))
            .collect::<Result<Vec<_>>>()?;
    }
    unreachable!()
}

/// Substitute `x_i <- sum_j A[i][j] x_j` into a polynomial.
pub fn subst_linear<R: Ring>(f: &DensePoly<R>, a: &[Vec<R::Elem>]) -> Result<DensePoly<R>> {
    let ring = f.ring.clone();
    let vars = f.vars.clone();
    let n = vars.len();
    let images: Vec<DensePoly<R>> = (0..n)
        .map(|i| {
            let raw: Vec<(ExpVec, R::Elem)> = (0..n)
                .map(|j| {
                    let mut e = exp_zero(n);
                    e[j] = 1;
                    (e, a[i][j].clone())
                })
                .collect();
            DensePoly::from_terms(ring.clone(), vars.clone(), raw)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut acc = DensePoly::zero(ring.clone(), vars.clone());
    for (e, c) in &f.terms {
        let mut term = DensePoly::constant(ring.clone(), vars.clone(), c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                term = term.mul(&images[i].pow(k as u32)?)?;
            }
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// det(M)/det(M') when the minor is nonsingular, `None` when it vanishes.
fn macaulay_quotient<R: Ring>(
    ring: &R,
    polys: &[DensePoly<R>],
    degrees: &[u32],
) -> Result<Option<R::Elem>> {
    let nv = polys.len();
    let d_total: u32 = degrees.iter().map(|&d| d - 1).sum::<u32>() + 1;
    let cols = monomials_of_degree(nv, d_total);
    let col_index: std::collections::BTreeMap<ExpVec, usize> = cols
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let size = cols.len();
    if size > 3000 {
        return Err(Error::BudgetExceeded(format!("Macaulay matrix of size {}", size)));
    }

    // the row for column-monomial alpha multiplies F_i by alpha / x_i^{d_i},
    // i the smallest index with x_i^{d_i} | alpha
    let mut mat = vec![vec![ring.zero(); size]; size];
    for (r, e) in cols.iter().enumerate() {
        let i = (0..nv)
            .find(|&i| e[i] as u32 >= degrees[i])
            .expect("every degree-D monomial is divisible by some x_i^{d_i}");
        let mut q = e.clone();
        q[i] -= degrees[i] as u16;
        for (fe, fc) in &polys[i].terms {
            let prod: ExpVec = q.iter().zip(fe.iter()).map(|(&a, &b)| a + b).collect();
            let c = col_index[&prod];
            mat[r][c] = ring.add(&mat[r][c], fc);
        }
    }

    // non-reduced monomials are divisible by x_i^{d_i} for at least two i
    let keep: Vec<usize> = (0..size)
        .filter(|&r| {
            let e = &cols[r];
            (0..nv).filter(|&i| e[i] as u32 >= degrees[i]).count() >= 2
        })
        .collect();
    let minor: Vec<Vec<R::Elem>> = keep
        .iter()
        .map(|&r| keep.iter().map(|&c| mat[r][c].clone()).collect())
        .collect();
    let det_minor = bareiss_determinant(ring, &minor)?;
    if ring.is_zero(&det_minor) {
        return Ok(None);
    }
    let det = bareiss_determinant(ring, &mat)?;
    match ring.exact_div(&det, &det_minor) {
        Ok(v) => Ok(Some(v)),
        Err(_) => Ok(None),
    }
}

// ---------------------------------------------------------------------------
// Euclidean GCD
// ---------------------------------------------------------------------------

/// Monic greatest common divisor by the Euclidean algorithm.
pub fn euclid_gcd<R: Field>(f: &DensePoly<R>, g: &DensePoly<R>) -> Result<DensePoly<R>> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::DegenerateInput("gcd(0, 0)".into()));
    }
    let var = f.sole_variable().or_else(|| g.sole_variable()).unwrap_or(0);
    let ring = f.ring.clone();
    let fc = uni::from_dense(f, var)?;
    let gc = uni::from_dense(g, var)?;
    let gcd = uni::gcd_monic(&ring, &fc, &gc)?;
    Ok(uni::to_dense(&ring, &f.vars, var, &gcd))
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration
// ---------------------------------------------------------------------------

/// A finite set of solution points over an explicit field.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet<R: Ring> {
    pub field: R,
    /// Pairwise distinct, sorted lexicographically by coordinate encoding.
    pub points: Vec<Vec<R::Elem>>,
}

impl<R: Ring> SolutionSet<R> {
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// All common zeroes of a system over `F_{p^a}` with coordinates in the
/// degree-`k` extension `F_{p^{ak}}`, by exhaustive scan. The scan space
/// `p^{akn}` is capped at 10^7.
pub fn enumerate_solutions(sys: &PolySystem<ExtField>, k: u32) -> Result<SolutionSet<ExtField>> {
    let small = sys.ring.clone();
    let p = small.p;
    let a = small.degree() as u32;
    let n = sys.vars.len();
    let b = a * k;
    let qsize = (p as f64).powi((b * n as u32) as i32);
    if qsize > 1e7 {
        return Err(Error::BudgetExceeded(format!(
            "enumeration space p^(akn) = {:.3e} exceeds 10^7",
            qsize
        )));
    }

    let (big, polys): (ExtField, Vec<DensePoly<ExtField>>) = if k == 1 {
        (small.clone(), sys.polys.clone())
    } else {
        let bound = num_bigint::BigInt::from(p).pow(b);
        let ext = crate::arith::field_extend(
            p,
            a,
            if a > 1 { Some(&small.modulus) } else { None },
            &bound,
            0x454e554d,
        )?;
        let big = ExtField::new(p, ext.modulus.clone())?;
        let polys = sys
            .polys
            .iter()
            .map(|f| {
                let raw: Vec<(ExpVec, Vec<u64>)> = f
                    .terms
                    .iter()
                    .map(|(e, c)| (e.clone(), ext.apply(c, p)))
                    .collect();
                DensePoly::from_terms(big.clone(), f.vars.clone(), raw)
            })
            .collect::<Result<Vec<_>>>()?;
        (big, polys)
    };

    let q = (p as u64).pow(big.degree() as u32);
    let decode = |mut idx: u64| -> Vec<u64> {
        let mut v = vec![0u64; big.degree()];
        for slot in v.iter_mut() {
            *slot = idx % p;
            idx /= p;
        }
        v
    };
    let total = q.pow(n as u32);

    let chunks: Vec<Vec<Vec<Vec<u64>>>> = (0..q)
        .into_par_iter()
        .map(|first| {
            let mut found = Vec::new();
            let x0 = decode(first);
            let inner = total / q;
            'point: for rest in 0..inner {
                let mut point = Vec::with_capacity(n);
                point.push(x0.clone());
                let mut idx = rest;
                for _ in 1..n {
                    point.push(decode(idx % q));
                    idx /= q;
                }
                for f in &polys {
                    let v = f.eval(&point).expect("arity checked");
                    if !big.is_zero(&v) {
                        continue 'point;
                    }
                }
                found.push(point);
            }
            found
        })
        .collect();
    let mut flat: Vec<Vec<Vec<u64>>> = chunks.into_iter().flatten().collect();
    flat.sort();
    Ok(SolutionSet { field: big, points: flat })
}

// ---------------------------------------------------------------------------
// Squarefree decomposition
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct SquarefreeDecomposition<R: Ring> {
    pub lead: R::Elem,
    /// (monic squarefree factor, multiplicity), multiplicities increasing.
    pub parts: Vec<(DensePoly<R>, u32)>,
    vars: Vec<String>,
    ring: R,
}

impl<R: Field> SquarefreeDecomposition<R> {
    pub fn reassemble(&self) -> Result<DensePoly<R>> {
        let mut acc = DensePoly::constant(self.ring.clone(), self.vars.clone(), self.lead.clone());
        for (f, m) in &self.parts {
            acc = acc.mul(&f.pow(*m)?)?;
        }
        Ok(acc)
    }
}

/// `f = lc * prod s_i^i` with the `s_i` monic, squarefree, and pairwise
/// coprime; valid in characteristic zero and p (p-th powers are extracted
/// when the derivative vanishes).
pub fn squarefree_decompose<R: Field>(f: &DensePoly<R>) -> Result<SquarefreeDecomposition<R>> {
    if f.is_zero() {
        return Err(Error::DegenerateInput("squarefree decomposition of zero".into()));
    }
    let var = f.sole_variable().unwrap_or(0);
    let ring = f.ring.clone();
    let fc = uni::from_dense(f, var)?;
    let lead = fc.last().unwrap().clone();
    let monic = uni::monic(&ring, &fc)?;
    let mut parts_raw = squarefree_rec(&ring, &monic)?;
    parts_raw.sort_by_key(|(_, m)| *m);
    let parts = parts_raw
        .into_iter()
        .map(|(c, m)| (uni::to_dense(&ring, &f.vars, var, &c), m))
        .collect();
    Ok(SquarefreeDecomposition { lead, parts, vars: f.vars.clone(), ring })
}

fn squarefree_rec<R: Field>(ring: &R, f: &[R::Elem]) -> Result<Vec<(Vec<R::Elem>, u32)>> {
    if f.len() <= 1 {
        return Ok(vec![]);
    }
    let der = uni::derivative(ring, f);
    if der.is_empty() {
        // p-th power: coefficient-wise p-th roots, exponents divided by p
        let p = ring
            .char_prime()
            .ok_or_else(|| Error::InvalidRing("zero derivative in characteristic 0".into()))?
            as usize;
        let mut u = Vec::with_capacity((f.len() - 1) / p + 1);
        for (k, c) in f.iter().enumerate() {
            if k % p == 0 {
                u.push(pth_root_elem(ring, c));
            } else if !ring.is_zero(c) {
                return Err(Error::InvalidRing("zero derivative but not a p-th power".into()));
            }
        }
        let inner = squarefree_rec(ring, &u)?;
        return Ok(inner.into_iter().map(|(g, m)| (g, m * p as u32)).collect());
    }
    let mut out = Vec::new();
    let mut c = uni::gcd_monic(ring, f, &der)?;
    let mut w = uni::divrem(ring, f, &c)?.0;
    let mut i = 1u32;
    while w.len() > 1 {
        let y = uni::gcd_monic(ring, &w, &c)?;
        let fac = uni::divrem(ring, &w, &y)?.0;
        if fac.len() > 1 {
            out.push((fac, i));
        }
        c = uni::divrem(ring, &c, &y)?.0;
        w = y;
        i += 1;
    }
    // the leftover part has every multiplicity divisible by p
    if c.len() > 1 {
        out.extend(squarefree_rec(ring, &c)?);
    }
    Ok(out)
}

/// Inverse Frobenius: walk x, x^p, x^{p^2}, ... until it closes; the p-th
/// root is the predecessor of x in the cycle. Constant time for F_p, a few
/// steps for small extensions.
fn pth_root_elem<R: Ring>(ring: &R, c: &R::Elem) -> R::Elem {
    let p = ring.char_prime().expect("positive characteristic");
    let mut power = ring.pow(c, p);
    if power == *c {
        return c.clone();
    }
    loop {
        let next = ring.pow(&power, p);
        if next == *c {
            return power;
        }
        power = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly_from_pairs;
    use crate::ring::{PrimeField, Rationals};

    #[test]
    fn sylvester_examples() {
        let q = Rationals;
        let f = poly_from_pairs(&q, &["x"], &[(1, &[2]), (-1, &[0])]);
        let g = poly_from_pairs(&q, &["x"], &[(1, &[1]), (-2, &[0])]);
        assert_eq!(sylvester_resultant(&f, &g).unwrap(), q.from_i64(3));
        assert_eq!(sylvester_resultant(&f, &f).unwrap(), q.from_i64(0));
        let g1 = poly_from_pairs(&q, &["x"], &[(1, &[1]), (-1, &[0])]);
        assert_eq!(sylvester_resultant(&f, &g1).unwrap(), q.from_i64(0));
        let z = DensePoly::zero(q.clone(), vec!["x".into()]);
        assert!(sylvester_resultant(&f, &z).is_err());
    }

    #[test]
    fn sylvester_root_product_property() {
        let p = 10007u64;
        let f = PrimeField::new(p).unwrap();
        let mut rng = CounterRng::new(31);
        for _ in 0..100 {
            let nroots = 1 + rng.below(4) as usize;
            let lc = 1 + rng.below(p - 1);
            let roots: Vec<u64> = (0..nroots).map(|_| rng.below(p)).collect();
            // f = lc * prod (x - r), built ascending
            let mut fc = vec![lc];
            for &r in &roots {
                let mut next = vec![0u64; fc.len() + 1];
                for (i, &c) in fc.iter().enumerate() {
                    next[i + 1] = f.add(&next[i + 1], &c);
                    let t = f.mul(&c, &r);
                    next[i] = f.sub(&next[i], &t);
                }
                fc = next;
            }
            let dg = 1 + rng.below(4) as usize;
            let mut gc: Vec<u64> = (0..=dg).map(|_| rng.below(p)).collect();
            if *gc.last().unwrap() == 0 {
                *gc.last_mut().unwrap() = 1;
            }
            let res = sylvester_resultant_coeffs(&f, &fc, &gc).unwrap();
            let mut want = f.pow(&lc, dg as u64);
            for &r in &roots {
                let v = crate::uni::eval(&f, &gc, &r);
                want = f.mul(&want, &v);
            }
            assert_eq!(res, want);
        }
    }

    #[test]
    fn macaulay_examples() {
        let q = Rationals;
        let vars = ["x0", "x1", "x2"];
        let sys = PolySystem::new(
            q.clone(),
            vars.iter().map(|s| s.to_string()).collect(),
            vec![
                poly_from_pairs(&q, &vars, &[(1, &[1, 0, 0])]),
                poly_from_pairs(&q, &vars, &[(1, &[0, 1, 0])]),
                poly_from_pairs(&q, &vars, &[(1, &[0, 0, 1])]),
            ],
        )
        .unwrap();
        assert_eq!(macaulay_resultant(&sys, 1).unwrap(), q.from_i64(1));
        for degs in [[1u16, 1, 2], [2, 2, 2], [3, 1, 2], [3, 3, 3]] {
            let sys = PolySystem::new(
                q.clone(),
                vars.iter().map(|s| s.to_string()).collect(),
                vec![
                    poly_from_pairs(&q, &vars, &[(1, &[degs[0], 0, 0])]),
                    poly_from_pairs(&q, &vars, &[(1, &[0, degs[1], 0])]),
                    poly_from_pairs(&q, &vars, &[(1, &[0, 0, degs[2]])]),
                ],
            )
            .unwrap();
            assert_eq!(macaulay_resultant(&sys, 1).unwrap(), q.from_i64(1), "degs {:?}", degs);
        }
        let sys = PolySystem::new(
            q.clone(),
            vars.iter().map(|s| s.to_string()).collect(),
            vec![
                poly_from_pairs(&q, &vars, &[(1, &[1, 0, 0])]),
                poly_from_pairs(&q, &vars, &[(1, &[0, 1, 0])]),
                poly_from_pairs(&q, &vars, &[(1, &[1, 0, 0]), (1, &[0, 1, 0])]),
            ],
        )
        .unwrap();
        assert_eq!(macaulay_resultant(&sys, 1).unwrap(), q.from_i64(0));
        let sys = PolySystem::new(
            q.clone(),
            vars.iter().map(|s| s.to_string()).collect(),
            vec![
                poly_from_pairs(&q, &vars, &[(1, &[1, 0, 0]), (1, &[0, 0, 0])]),
                poly_from_pairs(&q, &vars, &[(1, &[0, 1, 0])]),
                poly_from_pairs(&q, &vars, &[(1, &[0, 0, 1])]),
            ],
        )
        .unwrap();
        assert!(matches!(macaulay_resultant(&sys, 1), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn macaulay_agrees_with_sylvester_for_binary_forms() {
        let q = Rationals;
        let mut rng = CounterRng::new(77);
        let vars: Vec<String> = vec!["x0".into(), "x1".into()];
        let mut done = 0;
        while done < 25 {
            let df = 1 + rng.below(3) as usize;
            let dg = 1 + rng.below(3) as usize;
            let fc: Vec<_> = (0..=df).map(|_| q.from_i64(rng.below(11) as i64 - 5)).collect();
            let gc: Vec<_> = (0..=dg).map(|_| q.from_i64(rng.below(11) as i64 - 5)).collect();
            if q.is_zero(&fc[df]) || q.is_zero(&gc[dg]) || fc.iter().all(|c| q.is_zero(c)) || gc.iter().all(|c| q.is_zero(c)) {
                continue;
            }
            let form = |cs: &[<Rationals as Ring>::Elem], d: usize| {
                let raw: Vec<(ExpVec, _)> = cs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        let mut e = exp_zero(2);
                        e[0] = k as u16;
                        e[1] = (d - k) as u16;
                        (e, c.clone())
                    })
                    .collect();
                DensePoly::from_terms(q.clone(), vars.clone(), raw).unwrap()
            };
            let sys =
                PolySystem::new(q.clone(), vars.clone(), vec![form(&fc, df), form(&gc, dg)]).unwrap();
            let mac = macaulay_resultant(&sys, 3).unwrap();
            let syl = sylvester_resultant_coeffs(&q, &fc, &gc).unwrap();
            assert_eq!(mac, syl);
            done += 1;
        }
    }

    #[test]
    fn euclid_examples() {
        let q = Rationals;
        let f = poly_from_pairs(&q, &["x"], &[(1, &[2]), (-1, &[0])]);
        let g = poly_from_pairs(&q, &["x"], &[(1, &[1]), (-1, &[0])]);
        assert_eq!(euclid_gcd(&f, &g).unwrap(), g);
        let z = DensePoly::zero(q.clone(), vec!["x".into()]);
        let f2 = poly_from_pairs(&q, &["x"], &[(2, &[2]), (-2, &[0])]);
        assert_eq!(euclid_gcd(&f2, &z).unwrap(), f);
        let a = poly_from_pairs(&q, &["x"], &[(1, &[2]), (1, &[0])]);
        let b = poly_from_pairs(&q, &["x"], &[(1, &[2]), (1, &[1])]);
        assert_eq!(euclid_gcd(&a, &b).unwrap(), DensePoly::one(q.clone(), vec!["x".into()]));
        assert!(euclid_gcd(&z, &z).is_err());
    }

    #[test]
    fn euclid_divides_both_inputs() {
        let p = 10007u64;
        let f = PrimeField::new(p).unwrap();
        let mut rng = CounterRng::new(41);
        for _ in 0..50 {
            // common divisor times random cofactors
            let mk = |rng: &mut CounterRng, deg: usize| -> DensePoly<PrimeField> {
                let raw: Vec<(ExpVec, u64)> = (0..=deg)
                    .map(|k| {
                        let mut e = exp_zero(1);
                        e[0] = k as u16;
                        (e, rng.below(p))
                    })
                    .collect();
                DensePoly::from_terms(f.clone(), vec!["x".into()], raw).unwrap()
            };
            let d = mk(&mut rng, 2);
            let a = mk(&mut rng, 3);
            let b = mk(&mut rng, 3);
            if d.is_zero() || a.is_zero() || b.is_zero() {
                continue;
            }
            let fa = d.mul(&a).unwrap();
            let fb = d.mul(&b).unwrap();
            let g = euclid_gcd(&fa, &fb).unwrap();
            // gcd divides both inputs
            for input in [&fa, &fb] {
                let ic = crate::uni::from_dense(input, 0).unwrap();
                let gc = crate::uni::from_dense(&g, 0).unwrap();
                let (_, r) = crate::uni::divrem(&f, &ic, &gc).unwrap();
                assert!(r.is_empty());
            }
            // and the planted divisor divides the gcd
            let dc = crate::uni::from_dense(&d, 0).unwrap();
            let gc = crate::uni::from_dense(&g, 0).unwrap();
            let (_, r) = crate::uni::divrem(&f, &gc, &dc).unwrap();
            assert!(r.is_empty());
        }
    }

    #[test]
    fn enumerate_examples() {
        use crate::mono::exp_unit;
        use crate::ring::ExtField;
        // {x^2 - 1} over F_7 -> {1, 6}
        let f7 = ExtField::new(7, vec![0, 1]).unwrap();
        let vars = vec!["x".to_string()];
        let mut e2 = exp_zero(1);
        e2[0] = 2;
        let f = DensePoly::from_terms(
            f7.clone(),
            vars.clone(),
            vec![(e2, f7.one()), (exp_zero(1), f7.neg(&f7.one()))],
        )
        .unwrap();
        let sys = PolySystem::new(f7.clone(), vars, vec![f]).unwrap();
        let sols = enumerate_solutions(&sys, 1).unwrap();
        assert_eq!(sols.points, vec![vec![vec![1]], vec![vec![6]]]);

        // {x + y - 1, x + y - 2} over F_5 is empty
        let f5 = ExtField::new(5, vec![0, 1]).unwrap();
        let vars2 = vec!["x".to_string(), "y".to_string()];
        let mk = |c0: i64| {
            DensePoly::from_terms(
                f5.clone(),
                vars2.clone(),
                vec![
                    (exp_unit(2, 0), f5.one()),
                    (exp_unit(2, 1), f5.one()),
                    (exp_zero(2), f5.from_i64(c0)),
                ],
            )
            .unwrap()
        };
        let sys = PolySystem::new(f5.clone(), vars2.clone(), vec![mk(-1), mk(-2)]).unwrap();
        assert!(enumerate_solutions(&sys, 1).unwrap().is_empty());

        // {x - 1, y - 1} -> {(1, 1)}
        let g1 = DensePoly::from_terms(
            f5.clone(),
            vars2.clone(),
            vec![(exp_unit(2, 0), f5.one()), (exp_zero(2), f5.from_i64(-1))],
        )
        .unwrap();
        let g2 = DensePoly::from_terms(
            f5.clone(),
            vars2.clone(),
            vec![(exp_unit(2, 1), f5.one()), (exp_zero(2), f5.from_i64(-1))],
        )
        .unwrap();
        let sys = PolySystem::new(f5.clone(), vars2, vec![g1, g2]).unwrap();
        let sols = enumerate_solutions(&sys, 1).unwrap();
        assert_eq!(sols.points, vec![vec![vec![1], vec![1]]]);

        // budget error
        let f10007 = ExtField::new(10007, vec![0, 1]).unwrap();
        let vars3: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
        let p1 = DensePoly::one(f10007.clone(), vars3.clone());
        let sys = PolySystem::new(f10007, vars3, vec![p1]).unwrap();
        assert!(matches!(enumerate_solutions(&sys, 1), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn enumerate_in_extension_field() {
        use crate::mono::exp_unit;
        use crate::ring::ExtField;
        // x^2 + 1 over F_3 has no roots in F_3 but two in F_9
        let f3 = ExtField::new(3, vec![0, 1]).unwrap();
        let vars = vec!["x".to_string()];
        let f = DensePoly::from_terms(
            f3.clone(),
            vars.clone(),
            vec![
                ({
                    let mut e = exp_unit(1, 0);
                    e[0] = 2;
                    e
                }, f3.one()),
                (exp_zero(1), f3.one()),
            ],
        )
        .unwrap();
        let sys = PolySystem::new(f3.clone(), vars, vec![f]).unwrap();
        assert!(enumerate_solutions(&sys, 1).unwrap().is_empty());
        let sols = enumerate_solutions(&sys, 2).unwrap();
        assert_eq!(sols.len(), 2);
    }

    #[test]
    fn squarefree_examples() {
        let q = Rationals;
        let f = poly_from_pairs(&q, &["x"], &[(1, &[1]), (-1, &[0])])
            .pow(2)
            .unwrap()
            .mul(&poly_from_pairs(&q, &["x"], &[(1, &[1]), (-2, &[0])]))
            .unwrap();
        let dec = squarefree_decompose(&f).unwrap();
        assert_eq!(dec.lead, q.from_i64(1));
        assert_eq!(
            dec.parts,
            vec![
                (poly_from_pairs(&q, &["x"], &[(1, &[1]), (-2, &[0])]), 1),
                (poly_from_pairs(&q, &["x"], &[(1, &[1]), (-1, &[0])]), 2),
            ]
        );
        assert_eq!(dec.reassemble().unwrap(), f);
        let g = poly_from_pairs(&q, &["x"], &[(3, &[2]), (-3, &[0])]);
        let dec = squarefree_decompose(&g).unwrap();
        assert_eq!(dec.lead, q.from_i64(3));
        assert_eq!(dec.parts.len(), 1);
        assert_eq!(dec.parts[0].1, 1);
        // x^p - 1 = (x-1)^p over F_p
        let p = 5u64;
        let f5 = PrimeField::new(p).unwrap();
        let xp1 = poly_from_pairs(&f5, &["x"], &[(1, &[p as u16]), (-1, &[0])]);
        let dec = squarefree_decompose(&xp1).unwrap();
        assert_eq!(
            dec.parts,
            vec![(poly_from_pairs(&f5, &["x"], &[(1, &[1]), (-1, &[0])]), p as u32)]
        );
        let z = DensePoly::zero(q.clone(), vec!["x".into()]);
        assert!(squarefree_decompose(&z).is_err());
    }

    #[test]
    fn squarefree_reassembles_random() {
        let f7 = PrimeField::new(7).unwrap();
        let q = Rationals;
        let mut rng = CounterRng::new(55);
        for trial in 0..100 {
            if trial % 2 == 0 {
                let mut f = poly_from_pairs(&f7, &["x"], &[(1 + rng.below(6) as i64, &[0])]);
                for _ in 0..(1 + rng.below(3)) {
                    let root = rng.below(7) as i64;
                    let mult = 1 + rng.below(8) as u32;
                    let lin = poly_from_pairs(&f7, &["x"], &[(1, &[1]), (-root, &[0])]);
                    f = f.mul(&lin.pow(mult).unwrap()).unwrap();
                }
                let dec = squarefree_decompose(&f).unwrap();
                assert_eq!(dec.reassemble().unwrap(), f);
                let total: u32 = dec.parts.iter().map(|(g, m)| g.degree_in(0) * m).sum();
                assert_eq!(total, f.degree_in(0));
            } else {
                let mut f = poly_from_pairs(&q, &["x"], &[(1 + rng.below(4) as i64, &[0])]);
                for _ in 0..(1 + rng.below(3)) {
                    let root = rng.below(9) as i64 - 4;
                    let mult = 1 + rng.below(4) as u32;
                    let lin = poly_from_pairs(&q, &["x"], &[(1, &[1]), (-root, &[0])]);
                    f = f.mul(&lin.pow(mult).unwrap()).unwrap();
                }
                let dec = squarefree_decompose(&f).unwrap();
                assert_eq!(dec.reassemble().unwrap(), f);
                let total: u32 = dec.parts.iter().map(|(g, m)| g.degree_in(0) * m).sum();
                assert_eq!(total, f.degree_in(0));
            }
        }
    }

    #[test]
    fn macaulay_vanishing_iff_projective_zero() {
        // over F_p, n = 2: plant projective zeroes and verify both directions
        let p = 101u64;
        let fp = PrimeField::new(p).unwrap();
        let vars: Vec<String> = ["x0", "x1", "x2"].iter().map(|s| s.to_string()).collect();
        let mut rng = CounterRng::new(123);
        let mut planted = 0;
        let mut generic_nonzero = 0;
        for trial in 0..60 {
            let degs = [
                1 + rng.below(3) as u32,
                1 + rng.below(3) as u32,
                1 + rng.below(3) as u32,
            ];
            if trial % 2 == 0 {
                let point = loop {
                    let pt = vec![rng.below(p), rng.below(p), rng.below(p)];
                    if pt.iter().any(|&c| c != 0) {
                        break pt;
                    }
                };
                let k = point.iter().position(|&c| c != 0).unwrap();
                let mut ok = true;
                let polys: Vec<DensePoly<PrimeField>> = (0..3)
                    .map(|i| {
                        let monos = monomials_of_degree(3, degs[i]);
                        let raw: Vec<(ExpVec, u64)> =
                            monos.iter().map(|e| (e.clone(), rng.below(p))).collect();
                        let f = DensePoly::from_terms(fp.clone(), vars.clone(), raw).unwrap();
                        let v = f.eval(&point).unwrap();
                        let mut corr = exp_zero(3);
                        corr[k] = degs[i] as u16;
                        let denom = fp.pow(&point[k], degs[i] as u64);
                        let coeff = fp.mul(&v, &fp.inv(&denom).unwrap());
                        let corr_poly =
                            DensePoly::from_terms(fp.clone(), vars.clone(), vec![(corr, coeff)])
                                .unwrap();
                        f.sub(&corr_poly).unwrap()
                    })
                    .collect();
                for (i, f) in polys.iter().enumerate() {
                    if f.is_zero() || f.homogeneous_degree_in(&[0, 1, 2]) != Some(degs[i]) {
                        ok = false;
                    }
                }
                if !ok {
                    continue;
                }
                let sys = PolySystem::new(fp.clone(), vars.clone(), polys).unwrap();
                let res = macaulay_resultant(&sys, 7).unwrap();
                assert_eq!(res, 0, "planted zero must kill the resultant");
                planted += 1;
            } else {
                let polys: Vec<DensePoly<PrimeField>> = (0..3)
                    .map(|i| {
                        let monos = monomials_of_degree(3, degs[i]);
                        let raw: Vec<(ExpVec, u64)> =
                            monos.iter().map(|e| (e.clone(), rng.below(p))).collect();
                        DensePoly::from_terms(fp.clone(), vars.clone(), raw).unwrap()
                    })
                    .collect();
                if polys.iter().any(|f| f.is_zero()) {
                    continue;
                }
                let sys = PolySystem::new(fp.clone(), vars.clone(), polys.clone()).unwrap();
                let res = macaulay_resultant(&sys, 7).unwrap();
                // scan projective representatives over F_p itself
                let mut has_zero = false;
                'scan: for a in 0..p {
                    for b in 0..p {
                        for rep in [[1, a, b], [0, 1, a], [0, 0, 1]] {
                            let pt = vec![rep[0], rep[1], rep[2]];
                            if polys.iter().all(|f| fp.is_zero(&f.eval(&pt).unwrap())) {
                                has_zero = true;
                                break 'scan;
                            }
                        }
                    }
                }
                if has_zero {
                    assert_eq!(res, 0);
                } else if res != 0 {
                    generic_nonzero += 1;
                }
            }
        }
        assert!(planted >= 15, "planted {}", planted);
        assert!(generic_nonzero >= 15, "nonzero {}", generic_nonzero);
    }
}
