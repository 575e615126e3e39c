//! The resultant engine.
//!
//! To compute the resultant of forms `F_0, ..., F_n`, the engine deforms
//! the system along a fresh series variable `s` to a solved initial system
//! whose members are products of linear forms with Vandermonde-node
//! coefficients. The roots of each partial system are simple, so they lift
//! to truncated power series in `s`; the resultant of the deformed system
//! factors through the Poisson product over those roots, is a polynomial of
//! degree at most `P` in `s`, and evaluates to the target resultant at
//! `s = 1`. Everything runs over exact coefficient rings, so the result is
//! exact for any input, including degenerate ones.
//!
//! Roots are lifted either by quadratic Newton iteration or by the
//! closed-form coefficient sum of the implicit function theorem; the two
//! routes are cross-checked in the test suites.

use crate::error::{Error, Result};
use crate::mono::{exp_zero, grlex_cmp, ExpVec};
use crate::poly::{binomial_bigint, DensePoly, PolySystem};
use crate::ring::{Rationals, Ring};
use crate::series::{self, TruncSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

pub type Terms<K> = Vec<(ExpVec, <K as Ring>::Elem)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootMethod {
    Newton,
    Implicit,
}

#[derive(Debug, Clone)]
pub struct EngineOptions {
    pub root_method: RootMethod,
    /// Upper bound on the series precision P + 1.
    pub precision_budget: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { root_method: RootMethod::Newton, precision_budget: 20_000 }
    }
}

// ---------------------------------------------------------------------------
// Context
// ---------------------------------------------------------------------------

/// Degree bookkeeping for one engine run: degrees, their prefix sums, and
/// the truncation order P.
#[derive(Debug, Clone)]
pub struct HomotopyContext {
    pub n: usize,
    pub degrees: Vec<u32>,
    /// e_i = d_0 + ... + d_{i-1}; e_0 = 0; the last entry is the total.
    pub e: Vec<u32>,
    /// P = sum_i prod_{k != i} d_k, the series truncation order.
    pub p_bound: usize,
}

impl HomotopyContext {
    pub fn new(degrees: &[u32], budget: usize) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidInput("empty system".into()));
        }
        if degrees.iter().any(|&d| d == 0) {
            return Err(Error::DegenerateDegree("system member of degree zero".into()));
        }
        let n = degrees.len() - 1;
        let mut e = Vec::with_capacity(n + 2);
        e.push(0u32);
        for &d in degrees {
            let last = *e.last().unwrap();
            e.push(last + d);
        }
        let mut p: u128 = 0;
        for i in 0..=n {
            let mut prod: u128 = 1;
            for (k, &d) in degrees.iter().enumerate() {
                if k != i {
                    prod = prod.saturating_mul(d as u128);
                }
            }
            p = p.saturating_add(prod);
        }
        if p.saturating_add(1) > budget as u128 {
            return Err(Error::BudgetExceeded(format!(
                "series precision {} exceeds budget {}",
                p + 1,
                budget
            )));
        }
        Ok(HomotopyContext { n, degrees: degrees.to_vec(), e, p_bound: p as usize })
    }

    pub fn precision(&self) -> usize {
        self.p_bound + 1
    }

    /// The index set of level-j roots: c with c_i in [1, d_i] for i < j,
    /// in lexicographic order.
    pub fn root_indices(&self, j: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for i in 0..j {
            let mut next = Vec::with_capacity(out.len() * self.degrees[i] as usize);
            for prefix in &out {
                for c in 1..=self.degrees[i] {
                    let mut v = prefix.clone();
                    v.push(c);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Initial systems
// ---------------------------------------------------------------------------

/// `L_{j,m} = x_0 + m x_1 + ... + m^{j-1} x_{j-1} + m^j x_j` over the
/// rationals, in variables `x0..xj`.
fn linear_form_q(j: usize, m: u32) -> DensePoly<Rationals> {
    let vars: Vec<String> = (0..=j).map(|i| format!("x{}", i)).collect();
    let mut raw = Vec::with_capacity(j + 1);
    let mut pow = BigInt::one();
    for l in 0..=j {
        let mut e = exp_zero(j + 1);
        e[l] = 1;
        raw.push((e, BigRational::from_integer(pow.clone())));
        pow *= BigInt::from(m);
    }
    DensePoly::from_terms(Rationals, vars, raw).unwrap()
}

/// The solved start system at level j: `G_{i,j}` is the product of the
/// linear forms with nodes in the i-th block, homogeneous of degree `d_i`
/// in `x_0..x_j`.
pub fn initial_system(j: usize, degrees: &[u32]) -> Result<PolySystem<Rationals>> {
    if degrees.len() < j + 1 {
        return Err(Error::BadIndex(format!("level {} needs {} degrees", j, j + 1)));
    }
    let ctx = HomotopyContext::new(&degrees[..=j], usize::MAX / 2)?;
    let vars: Vec<String> = (0..=j).map(|i| format!("x{}", i)).collect();
    let mut polys = Vec::with_capacity(j + 1);
    for i in 0..=j {
        let mut g = DensePoly::one(Rationals, vars.clone());
        for k in 1..=degrees[i] {
            g = g.mul(&linear_form_q(j, ctx.e[i] + k))?;
        }
        polys.push(g);
    }
    PolySystem::new(Rationals, vars, polys)
}

/// Exact data attached to one root of the level-j initial system: the
/// rational point, the Jacobian with its diagonal-times-Vandermonde
/// structure, its inverse, and the Jacobian determinant of the shifted and
/// scaled start system (which is 1 at the origin).
#[derive(Debug, Clone, PartialEq)]
pub struct InitialRootData {
    pub c: Vec<u32>,
    pub r: Vec<BigRational>,
    pub jac: Vec<Vec<BigRational>>,
    pub jac_inv: Vec<Vec<BigRational>>,
    pub kappa: Vec<BigRational>,
    /// det of the Jacobian of `J^{-1} g(x + r)`, a polynomial in
    /// x_0..x_{j-1}.
    pub delta: DensePoly<Rationals>,
}

fn rational_mat_inverse(m: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            let mut id = vec![BigRational::zero(); n];
            id[i] = BigRational::one();
            r.extend(id);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::DegenerateInput("singular matrix".into()))?;
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
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// `ell_{j,m}` evaluated at a rational point of length j (x_j = 1).
fn ell_eval_q(j: usize, m: u32, point: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    let mut pow = BigInt::one();
    for coord in point.iter().take(j) {
        acc += coord * &BigRational::from_integer(pow.clone());
        pow *= BigInt::from(m);
    }
    acc + BigRational::from_integer(pow)
}

pub fn initial_root_data(j: usize, degrees: &[u32], c: &[u32]) -> Result<InitialRootData> {
    if j == 0 || degrees.len() < j || c.len() != j {
        return Err(Error::BadIndex("root index arity mismatch".into()));
    }
    let ctx = HomotopyContext::new(degrees, usize::MAX / 2)?;
    for (i, &ci) in c.iter().enumerate() {
        if ci == 0 || ci > degrees[i] {
            return Err(Error::BadIndex(format!("c_{} = {} outside [1, {}]", i, ci, degrees[i])));
        }
    }
    let nodes: Vec<u32> = (0..j).map(|i| ctx.e[i] + c[i]).collect();
    // the root solves sum_l node^l x_l = -node^j for each node
    let vand: Vec<Vec<BigRational>> = nodes
        .iter()
        .map(|&m| {
            (0..j)
                .map(|l| BigRational::from_integer(BigInt::from(m).pow(l as u32)))
                .collect()
        })
        .collect();
    let vand_inv = rational_mat_inverse(&vand)?;
    let rhs: Vec<BigRational> = nodes
        .iter()
        .map(|&m| -BigRational::from_integer(BigInt::from(m).pow(j as u32)))
        .collect();
    let r: Vec<BigRational> = (0..j)
        .map(|row| {
            let mut acc = BigRational::zero();
            for (col, v) in rhs.iter().enumerate() {
                acc += &vand_inv[row][col] * v;
            }
            acc
        })
        .collect();

    let mut kappa = Vec::with_capacity(j);
    for i in 0..j {
        let mut acc = BigRational::one();
        for k in 1..=degrees[i] {
            if k == c[i] {
                continue;
            }
            acc *= ell_eval_q(j, ctx.e[i] + k, &r);
        }
        if acc.is_zero() {
            return Err(Error::DegenerateInput("vanishing block product".into()));
        }
        kappa.push(acc);
    }
    let jac: Vec<Vec<BigRational>> = (0..j)
        .map(|i| (0..j).map(|l| &kappa[i] * &vand[i][l]).collect())
        .collect();
    let jac_inv: Vec<Vec<BigRational>> = (0..j)
        .map(|row| (0..j).map(|col| &vand_inv[row][col] / &kappa[col]).collect())
        .collect();

    let delta = initial_delta(j, degrees, &ctx, &r, &jac_inv)?;
    Ok(InitialRootData { c: c.to_vec(), r, jac, jac_inv, kappa, delta })
}

fn initial_delta(
    j: usize,
    degrees: &[u32],
    ctx: &HomotopyContext,
    r: &[BigRational],
    jac_inv: &[Vec<BigRational>],
) -> Result<DensePoly<Rationals>> {
    let vars: Vec<String> = (0..j).map(|i| format!("x{}", i)).collect();
    let q = Rationals;
    let shifted: Vec<DensePoly<Rationals>> = (0..j)
        .map(|i| {
            let mut g = DensePoly::one(q.clone(), vars.clone());
            for k in 1..=degrees[i] {
                let m = ctx.e[i] + k;
                let mut raw = Vec::with_capacity(j + 1);
                let mut pow = BigInt::one();
                let mut cst = BigRational::zero();
                for l in 0..j {
                    let mut e = exp_zero(j);
                    e[l] = 1;
                    raw.push((e, BigRational::from_integer(pow.clone())));
                    cst += &r[l] * &BigRational::from_integer(pow.clone());
                    pow *= BigInt::from(m);
                }
                cst += BigRational::from_integer(pow);
                raw.push((exp_zero(j), cst));
                let ell = DensePoly::from_terms(q.clone(), vars.clone(), raw)?;
                g = g.mul(&ell)?;
            }
            Ok(g)
        })
        .collect::<Result<Vec<_>>>()?;
    let tilde: Vec<DensePoly<Rationals>> = (0..j)
        .map(|i| {
            let mut acc = DensePoly::zero(q.clone(), vars.clone());
            for (k, s) in shifted.iter().enumerate() {
                acc = acc.add(&s.scale(&jac_inv[i][k]))?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let jac_mat: Vec<Vec<DensePoly<Rationals>>> = tilde
        .iter()
        .map(|h| (0..j).map(|l| h.derivative(&vars[l])).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    poly_det(&jac_mat)
}

/// Cofactor-expansion determinant of a small polynomial matrix.
pub fn poly_det<R: Ring>(m: &[Vec<DensePoly<R>>]) -> Result<DensePoly<R>> {
    let n = m.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty determinant".into()));
    }
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let ring = m[0][0].ring.clone();
    let vars = m[0][0].vars.clone();
    let mut acc = DensePoly::zero(ring, vars);
    for col in 0..n {
        let sub: Vec<Vec<DensePoly<R>>> = (1..n)
            .map(|r| {
                (0..n)
                    .filter(|&cc| cc != col)
                    .map(|cc| m[r][cc].clone())
                    .collect()
            })
            .collect();
        let minor = poly_det(&sub)?;
        let term = m[0][col].mul(&minor)?;
        acc = if col % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Level systems
// ---------------------------------------------------------------------------

/// The data the engine needs at level j: the node blocks of the initial
/// system and the specialized target polynomials (the level variable set
/// to one, the higher ones to zero).
#[derive(Debug, Clone)]
pub struct LevelSystem<K: Ring> {
    pub j: usize,
    pub e: Vec<u32>,
    pub degrees: Vec<u32>,
    /// Node lists of the blocks, i = 0..=j.
    pub g_nodes: Vec<Vec<u32>>,
    /// Specialized target polynomials for i = 0..=j, terms in j variables.
    pub f_terms: Vec<Terms<K>>,
    /// d f_i / d x_l term lists for i < j.
    pub f_jac: Vec<Vec<Terms<K>>>,
    /// node -> powers m^0..m^j in K.
    pub node_pows: std::collections::BTreeMap<u32, Vec<K::Elem>>,
}

fn terms_derivative<K: Ring>(ring: &K, terms: &Terms<K>, l: usize) -> Terms<K> {
    let mut out: Terms<K> = Vec::new();
    for (e, c) in terms {
        if e[l] == 0 {
            continue;
        }
        let mut ne = e.clone();
        ne[l] -= 1;
        let nc = ring.mul(c, &ring.from_i64(e[l] as i64));
        if !ring.is_zero(&nc) {
            out.push((ne, nc));
        }
    }
    out.sort_unstable_by(|a, b| grlex_cmp(&a.0, &b.0));
    out
}

impl<K: Ring> LevelSystem<K> {
    /// Build level j from the full forms (polynomials over K in the n+1
    /// engine variables).
    pub fn from_forms(
        ring: &K,
        ctx: &HomotopyContext,
        forms: &[DensePoly<K>],
        j: usize,
    ) -> Result<Self> {
        let mut f_terms = Vec::with_capacity(j + 1);
        for fi in forms.iter().take(j + 1) {
            // keep terms free of x_{j+1..}; set x_j = 1; reindex to j vars
            let mut t: Terms<K> = Vec::new();
            for (e, c) in &fi.terms {
                if e.iter().skip(j + 1).any(|&x| x > 0) {
                    continue;
                }
                let ne: ExpVec = e.iter().take(j).copied().collect();
                t.push((ne, c.clone()));
            }
            t.sort_unstable_by(|a, b| grlex_cmp(&a.0, &b.0));
            f_terms.push(t);
        }
        Self::from_specialized(ring, ctx, j, f_terms)
    }

    /// Build level j directly from the specialized polynomials
    /// `f_{0,j}, ..., f_{j,j}` (only the first j are needed for root work).
    pub fn from_specialized(
        ring: &K,
        ctx: &HomotopyContext,
        j: usize,
        f_terms: Vec<Terms<K>>,
    ) -> Result<Self> {
        if j == 0 || j > ctx.n {
            return Err(Error::BadIndex(format!("level {} out of range", j)));
        }
        let degrees = ctx.degrees.clone();
        let g_nodes: Vec<Vec<u32>> = (0..=j)
            .map(|i| (1..=degrees[i]).map(|k| ctx.e[i] + k).collect())
            .collect();
        let mut node_pows = std::collections::BTreeMap::new();
        for nodes in &g_nodes {
            for &m in nodes {
                node_pows.entry(m).or_insert_with(|| {
                    let mut pows = Vec::with_capacity(j + 1);
                    let mut acc = ring.one();
                    let me = ring.from_i64(m as i64);
                    for _ in 0..=j {
                        pows.push(acc.clone());
                        acc = ring.mul(&acc, &me);
                    }
                    pows
                });
            }
        }
        let f_jac: Vec<Vec<Terms<K>>> = f_terms
            .iter()
            .take(j)
            .map(|t| (0..j).map(|l| terms_derivative(ring, t, l)).collect())
            .collect();
        Ok(LevelSystem { j, e: ctx.e.clone(), degrees, g_nodes, f_terms, f_jac, node_pows })
    }
}

// ---------------------------------------------------------------------------
// Series evaluation helpers
// ---------------------------------------------------------------------------

struct PowerTable<K: Ring> {
    /// pows[l][e] = rho_l^e
    pows: Vec<Vec<TruncSeries<K::Elem>>>,
}

fn build_power_table<K: Ring>(
    ring: &K,
    rho: &[TruncSeries<K::Elem>],
    max_deg: &[u16],
) -> PowerTable<K> {
    let prec = rho.first().map_or(1, |s| s.precision());
    let pows = rho
        .iter()
        .zip(max_deg)
        .map(|(r, &d)| {
            let mut v = Vec::with_capacity(d as usize + 1);
            v.push(series::from_const(ring, prec, ring.one()));
            for e in 1..=d {
                let next = series::mul(ring, &v[(e - 1) as usize], r);
                v.push(next);
            }
            v
        })
        .collect();
    PowerTable { pows }
}

fn eval_terms<K: Ring>(
    ring: &K,
    terms: &Terms<K>,
    table: &PowerTable<K>,
    prec: usize,
) -> TruncSeries<K::Elem> {
    let mut acc = series::zero(ring, prec);
    for (e, c) in terms {
        let mut cur: Option<TruncSeries<K::Elem>> = None;
        for (l, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            cur = Some(match cur {
                None => table.pows[l][k as usize].clone(),
                Some(s) => series::mul(ring, &s, &table.pows[l][k as usize]),
            });
        }
        match cur {
            None => acc.coeffs[0] = ring.add(&acc.coeffs[0], c),
            Some(s) => {
                for (a, b) in acc.coeffs.iter_mut().zip(&s.coeffs) {
                    if !ring.is_zero(b) {
                        let t = ring.mul(b, c);
                        *a = ring.add(a, &t);
                    }
                }
            }
        }
    }
    acc
}

/// ell_{j,m}(rho): a scale-and-add using precomputed node powers.
fn eval_ell<K: Ring>(
    ring: &K,
    lvl: &LevelSystem<K>,
    m: u32,
    rho: &[TruncSeries<K::Elem>],
    prec: usize,
) -> TruncSeries<K::Elem> {
    let pows = &lvl.node_pows[&m];
    let mut acc = series::from_const(ring, prec, pows[lvl.j].clone());
    for (l, r) in rho.iter().enumerate() {
        let scaled = series::scale(ring, r, &pows[l]);
        acc = series::add(ring, &acc, &scaled);
    }
    acc
}

/// Value of the initial-system block i at rho, and optionally all of its
/// partial derivatives via leave-one-out products.
fn eval_g_block<K: Ring>(
    ring: &K,
    lvl: &LevelSystem<K>,
    i: usize,
    rho: &[TruncSeries<K::Elem>],
    prec: usize,
    with_jac: bool,
) -> (TruncSeries<K::Elem>, Option<Vec<TruncSeries<K::Elem>>>) {
    let nodes = &lvl.g_nodes[i];
    let vals: Vec<TruncSeries<K::Elem>> =
        nodes.iter().map(|&m| eval_ell(ring, lvl, m, rho, prec)).collect();
    let mut prod = vals[0].clone();
    for v in &vals[1..] {
        prod = series::mul(ring, &prod, v);
    }
    if !with_jac {
        return (prod, None);
    }
    let d = vals.len();
    let mut prefix = Vec::with_capacity(d + 1);
    prefix.push(series::from_const(ring, prec, ring.one()));
    for v in &vals {
        let next = series::mul(ring, prefix.last().unwrap(), v);
        prefix.push(next);
    }
    let mut suffix = vec![series::from_const(ring, prec, ring.one()); d + 1];
    for k in (0..d).rev() {
        suffix[k] = series::mul(ring, &suffix[k + 1], &vals[k]);
    }
    // d g_i / d x_l = sum_k (prod_{k' != k} ell_{k'}) * m_k^l
    let mut grads = Vec::with_capacity(lvl.j);
    for l in 0..lvl.j {
        let mut acc = series::zero(ring, prec);
        for (k, &m) in nodes.iter().enumerate() {
            let loo = series::mul(ring, &prefix[k], &suffix[k + 1]);
            let scaled = series::scale(ring, &loo, &lvl.node_pows[&m][l]);
            acc = series::add(ring, &acc, &scaled);
        }
        grads.push(acc);
    }
    (prod, Some(grads))
}

/// h = (1 - s) g + s f assembled from the two evaluations.
fn combine_homotopy<K: Ring>(
    ring: &K,
    g: &TruncSeries<K::Elem>,
    f: &TruncSeries<K::Elem>,
) -> TruncSeries<K::Elem> {
    let diff = series::sub(ring, f, g);
    let shifted = series::shift_up(ring, &diff, 1);
    series::add(ring, g, &shifted)
}

/// Solve `M x = rhs` over the series ring. Pivots have invertible constant
/// terms because M reduces to the invertible initial Jacobian at s = 0.
fn solve_series_system<K: Ring>(
    ring: &K,
    mut m: Vec<Vec<TruncSeries<K::Elem>>>,
    mut rhs: Vec<TruncSeries<K::Elem>>,
) -> Result<Vec<TruncSeries<K::Elem>>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| ring.inv(&m[r][col].coeffs[0]).is_ok())
            .ok_or_else(|| Error::LiftFailure("Jacobian not invertible at s = 0".into()))?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = series::inv(ring, &m[col][col])?;
        for r in 0..n {
            if r == col || series::is_zero(ring, &m[r][col]) {
                continue;
            }
            let factor = series::mul(ring, &m[r][col], &inv);
            for cc in col..n {
                let t = series::mul(ring, &factor, &m[col][cc]);
                m[r][cc] = series::sub(ring, &m[r][cc], &t);
            }
            let t = series::mul(ring, &factor, &rhs[col]);
            rhs[r] = series::sub(ring, &rhs[r], &t);
        }
    }
    let mut out = Vec::with_capacity(n);
    for col in 0..n {
        let inv = series::inv(ring, &m[col][col])?;
        out.push(series::mul(ring, &rhs[col], &inv));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Root lifting
// ---------------------------------------------------------------------------

/// A level-j root as a vector of truncated power series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesRoot<K: Ring> {
    pub c: Vec<u32>,
    pub rho: Vec<TruncSeries<K::Elem>>,
}

fn map_rational<K: Ring>(ring: &K, v: &BigRational) -> Result<K::Elem> {
    ring.from_ratio(v.numer(), v.denom())
}

fn root_seed<K: Ring>(
    ring: &K,
    data: &InitialRootData,
) -> Result<(Vec<K::Elem>, Vec<Vec<K::Elem>>)> {
    let r = data.r.iter().map(|v| map_rational(ring, v)).collect::<Result<Vec<_>>>()?;
    let jinv = data
        .jac_inv
        .iter()
        .map(|row| row.iter().map(|v| map_rational(ring, v)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok((r, jinv))
}

fn max_degrees_per_var<K: Ring>(lvl: &LevelSystem<K>, upto: usize) -> Vec<u16> {
    let mut md = vec![0u16; lvl.j];
    for t in lvl.f_terms.iter().take(upto) {
        for (e, _) in t {
            for (l, &k) in e.iter().enumerate() {
                md[l] = md[l].max(k);
            }
        }
    }
    md
}

/// Quadratic Newton lifting of the root with constant term `r_c`.
pub fn newton_root_oracle<K: Ring>(
    ring: &K,
    lvl: &LevelSystem<K>,
    data: &InitialRootData,
    prec: usize,
) -> Result<SeriesRoot<K>> {
    let j = lvl.j;
    let (r0, _) = root_seed(ring, data)?;
    let mut rho: Vec<TruncSeries<K::Elem>> =
        r0.iter().map(|c| series::from_const(ring, 1, c.clone())).collect();
    let mut cur = 1usize;
    let md = max_degrees_per_var(lvl, j);
    while cur < prec {
        let target = (2 * cur).min(prec);
        for r in rho.iter_mut() {
            *r = series::with_precision(ring, r, target);
        }
        let table = build_power_table(ring, &rho, &md);
        let mut hv = Vec::with_capacity(j);
        for i in 0..j {
            let (gv, _) = eval_g_block(ring, lvl, i, &rho, target, false);
            let fv = eval_terms(ring, &lvl.f_terms[i], &table, target);
            hv.push(combine_homotopy(ring, &gv, &fv));
        }
        // h(rho) vanishes mod s^cur; solve the correction at the reduced
        // precision target - cur
        let dprec = target - cur;
        let rho_low: Vec<TruncSeries<K::Elem>> =
            rho.iter().map(|r| series::with_precision(ring, r, dprec)).collect();
        let table_low = build_power_table(ring, &rho_low, &md);
        let mut jac = Vec::with_capacity(j);
        for i in 0..j {
            let (_, grads) = eval_g_block(ring, lvl, i, &rho_low, dprec, true);
            let grads = grads.unwrap();
            let mut row = Vec::with_capacity(j);
            for (l, g_grad) in grads.into_iter().enumerate() {
                let f_grad = eval_terms(ring, &lvl.f_jac[i][l], &table_low, dprec);
                row.push(combine_homotopy(ring, &g_grad, &f_grad));
            }
            jac.push(row);
        }
        let rhs: Vec<TruncSeries<K::Elem>> = hv
            .iter()
            .map(|h| TruncSeries { coeffs: h.coeffs[cur..target].to_vec() })
            .collect();
        let delta = solve_series_system(ring, jac, rhs)?;
        for (ri, di) in rho.iter_mut().zip(delta) {
            let full = series::shift_up(ring, &series::with_precision(ring, &di, target), cur);
            *ri = series::sub(ring, ri, &full);
        }
        cur = target;
    }
    Ok(SeriesRoot { c: data.c.clone(), rho })
}

/// Residual check: every h_{i,j} for i < j vanishes at the root modulo the
/// stored precision.
pub fn root_residual_is_zero<K: Ring>(
    ring: &K,
    lvl: &LevelSystem<K>,
    root: &SeriesRoot<K>,
) -> bool {
    let j = lvl.j;
    let prec = root.rho[0].precision();
    let md = max_degrees_per_var(lvl, j);
    let table = build_power_table(ring, &root.rho, &md);
    for i in 0..j {
        let (gv, _) = eval_g_block(ring, lvl, i, &root.rho, prec, false);
        let fv = eval_terms(ring, &lvl.f_terms[i], &table, prec);
        let hv = combine_homotopy(ring, &gv, &fv);
        if !series::is_zero(ring, &hv) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Implicit-function-theorem lifting
// ---------------------------------------------------------------------------

fn terms_mul_filtered<K: Ring>(
    ring: &K,
    a: &Terms<K>,
    b: &Terms<K>,
    keep: &dyn Fn(&ExpVec) -> bool,
) -> Terms<K> {
    let mut raw: Terms<K> = Vec::with_capacity(a.len() * b.len());
    for (ae, ac) in a {
        for (be, bc) in b {
            let ne: ExpVec = ae.iter().zip(be.iter()).map(|(&x, &y)| x + y).collect();
            if !keep(&ne) {
                continue;
            }
            raw.push((ne, ring.mul(ac, bc)));
        }
    }
    raw.sort_unstable_by(|x, y| grlex_cmp(&x.0, &y.0));
    let mut out: Terms<K> = Vec::with_capacity(raw.len());
    for (e, c) in raw {
        match out.last_mut() {
            Some((pe, pc)) if *pe == e => *pc = ring.add(pc, &c),
            _ => out.push((e, c)),
        }
    }
    out.retain(|(_, c)| !ring.is_zero(c));
    out
}

fn terms_add<K: Ring>(ring: &K, a: &Terms<K>, b: &Terms<K>) -> Terms<K> {
    let mut raw = a.clone();
    raw.extend(b.iter().cloned());
    raw.sort_unstable_by(|x, y| grlex_cmp(&x.0, &y.0));
    let mut out: Terms<K> = Vec::with_capacity(raw.len());
    for (e, c) in raw {
        match out.last_mut() {
            Some((pe, pc)) if *pe == e => *pc = ring.add(pc, &c),
            _ => out.push((e, c)),
        }
    }
    out.retain(|(_, c)| !ring.is_zero(c));
    out
}

fn terms_scale<K: Ring>(ring: &K, a: &Terms<K>, c: &K::Elem) -> Terms<K> {
    a.iter()
        .filter_map(|(e, x)| {
            let v = ring.mul(x, c);
            if ring.is_zero(&v) {
                None
            } else {
                Some((e.clone(), v))
            }
        })
        .collect()
}

fn terms_det<K: Ring>(ring: &K, m: &[Vec<Terms<K>>], nv: usize) -> Terms<K> {
    let n = m.len();
    if n == 0 {
        return vec![(exp_zero(nv), ring.one())];
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let keep = |_: &ExpVec| true;
    let mut acc: Terms<K> = Vec::new();
    for col in 0..n {
        let sub: Vec<Vec<Terms<K>>> = (1..n)
            .map(|r| {
                (0..n)
                    .filter(|&cc| cc != col)
                    .map(|cc| m[r][cc].clone())
                    .collect()
            })
            .collect();
        let minor = terms_det(ring, &sub, nv);
        let mut term = terms_mul_filtered(ring, &m[0][col], &minor, &keep);
        if col % 2 == 1 {
            term = terms_scale(ring, &term, &ring.neg(&ring.one()));
        }
        acc = terms_add(ring, &acc, &term);
    }
    acc
}

/// Closed-form lifting: for each order N >= 1 and coordinate i, the
/// coefficient is the signed sum over exponent vectors b with |b| <= 2N of
/// the `s^N x^b` coefficient of
/// `x_i (ht_0 - x_0)^{b_0} ... (ht_{j-1} - x_{j-1})^{b_{j-1}} Delta`,
/// where `ht` is the shifted and scaled system and `Delta` its Jacobian
/// determinant. The enumeration prunes on per-variable exponent caps and on
/// the weight `2 deg_s + deg_x`, which every factor increases by at least 2.
pub fn implicit_root_coeffs<K: Ring>(
    ring: &K,
    lvl: &LevelSystem<K>,
    data: &InitialRootData,
    prec: usize,
) -> Result<SeriesRoot<K>> {
    let j = lvl.j;
    let p_cap = prec - 1;
    let (r0, jinv) = root_seed(ring, data)?;
    let nv = j + 1; // x_0..x_{j-1} and s last
    let s_var = j;

    // shifted linear form: ell_{j,m}(x + r) = ell_{j,m}(r) + sum_l m^l x_l
    let shifted_ell = |m: u32| -> Terms<K> {
        let pows = &lvl.node_pows[&m];
        let mut cst = pows[j].clone();
        let mut t: Terms<K> = Vec::new();
        for l in 0..j {
            cst = ring.add(&cst, &ring.mul(&pows[l], &r0[l]));
            let mut e = exp_zero(nv);
            e[l] = 1;
            t.push((e, pows[l].clone()));
        }
        t.push((exp_zero(nv), cst));
        t.sort_unstable_by(|x, y| grlex_cmp(&x.0, &y.0));
        t.retain(|(_, c)| !ring.is_zero(c));
        t
    };
    let keep_all = |_: &ExpVec| true;
    let mut g_shift: Vec<Terms<K>> = Vec::with_capacity(j);
    for i in 0..j {
        let mut acc: Terms<K> = vec![(exp_zero(nv), ring.one())];
        for &m in &lvl.g_nodes[i] {
            acc = terms_mul_filtered(ring, &acc, &shifted_ell(m), &keep_all);
        }
        g_shift.push(acc);
    }
    // f_i(x + r) via binomial shifts
    let mut f_shift: Vec<Terms<K>> = Vec::with_capacity(j);
    for i in 0..j {
        let mut acc: Terms<K> = Vec::new();
        for (e, c) in &lvl.f_terms[i] {
            let mut term: Terms<K> = vec![(exp_zero(nv), c.clone())];
            for (l, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let mut bin: Terms<K> = Vec::with_capacity(k as usize + 1);
                for b in 0..=k {
                    let bc = ring.from_ratio(&binomial_bigint(k as u32, b as u32), &BigInt::one())?;
                    let rc = ring.pow(&r0[l], (k - b) as u64);
                    let v = ring.mul(&bc, &rc);
                    if ring.is_zero(&v) {
                        continue;
                    }
                    let mut e2 = exp_zero(nv);
                    e2[l] = b;
                    bin.push((e2, v));
                }
                term = terms_mul_filtered(ring, &term, &bin, &keep_all);
            }
            acc = terms_add(ring, &acc, &term);
        }
        f_shift.push(acc);
    }
    // h_i(x + r, s) = g + s (f - g), then scale by the inverse Jacobian
    let h_shift: Vec<Terms<K>> = (0..j)
        .map(|i| {
            let diff = terms_add(
                ring,
                &f_shift[i],
                &terms_scale(ring, &g_shift[i], &ring.neg(&ring.one())),
            );
            let mut s_diff: Terms<K> = diff
                .into_iter()
                .map(|(mut e, c)| {
                    e[s_var] += 1;
                    (e, c)
                })
                .collect();
            s_diff.sort_unstable_by(|x, y| grlex_cmp(&x.0, &y.0));
            terms_add(ring, &g_shift[i], &s_diff)
        })
        .collect();
    let htilde: Vec<Terms<K>> = (0..j)
        .map(|i| {
            let mut acc: Terms<K> = Vec::new();
            for (k, h) in h_shift.iter().enumerate() {
                acc = terms_add(ring, &acc, &terms_scale(ring, h, &jinv[i][k]));
            }
            acc
        })
        .collect();
    // phi_k = ht_k - x_k: every monomial has 2 deg_s + deg_x >= 2
    let phi: Vec<Terms<K>> = (0..j)
        .map(|k| {
            let mut xk = exp_zero(nv);
            xk[k] = 1;
            let neg_x: Terms<K> = vec![(xk, ring.neg(&ring.one()))];
            terms_add(ring, &htilde[k], &neg_x)
        })
        .collect();
    let jac_terms: Vec<Vec<Terms<K>>> = htilde
        .iter()
        .map(|h| (0..j).map(|l| terms_derivative(ring, h, l)).collect())
        .collect();
    let delta = terms_det(ring, &jac_terms, nv);

    let mut rho: Vec<TruncSeries<K::Elem>> =
        r0.iter().map(|c| series::from_const(ring, prec, c.clone())).collect();

    struct Walk<'a, K: Ring> {
        ring: &'a K,
        j: usize,
        s_var: usize,
        p_cap: usize,
        two_p: usize,
        phi: &'a [Terms<K>],
        rho: &'a mut [TruncSeries<K::Elem>],
    }
    impl<K: Ring> Walk<'_, K> {
        fn extract(&mut self, b: &[u16], pi: &Terms<K>) {
            let total: usize = b.iter().map(|&x| x as usize).sum();
            if total == 0 {
                return;
            }
            let neg = total % 2 == 1;
            for i in 0..self.j {
                if b[i] == 0 {
                    continue;
                }
                'terms: for (e, c) in pi {
                    let n = e[self.s_var] as usize;
                    if n == 0 || n > self.p_cap || total > 2 * n {
                        continue;
                    }
                    for l in 0..self.j {
                        let want = if l == i { b[l] - 1 } else { b[l] };
                        if e[l] != want {
                            continue 'terms;
                        }
                    }
                    let v = if neg { self.ring.neg(c) } else { c.clone() };
                    self.rho[i].coeffs[n] = self.ring.add(&self.rho[i].coeffs[n], &v);
                }
            }
        }
        fn walk(&mut self, k: usize, b: &mut Vec<u16>, pi: Terms<K>) {
            if k == self.j {
                self.extract(b, &pi);
                return;
            }
            let done: usize = b.iter().map(|&x| x as usize).sum();
            let mut cur = pi;
            let mut bk = 0u16;
            loop {
                b.push(bk);
                // coordinate k is now final: drop terms exceeding its cap
                // (lower coordinates are maintained by the product filter)
                let filtered: Terms<K> =
                    cur.iter().filter(|(e, _)| e[k] <= bk).cloned().collect();
                self.walk(k + 1, b, filtered);
                b.pop();
                if done + bk as usize + 1 > self.two_p {
                    break;
                }
                let depth_after = done + bk as usize + 1;
                let cap = 2 * self.p_cap + depth_after;
                let p_cap = self.p_cap;
                let s_var = self.s_var;
                let caps: Vec<u16> = b.clone();
                let keep = move |e: &ExpVec| -> bool {
                    let sdeg = e[s_var] as usize;
                    if sdeg > p_cap {
                        return false;
                    }
                    // coordinates below k are already final
                    for (l, &cap_l) in caps.iter().enumerate().take(k) {
                        if e[l] > cap_l {
                            return false;
                        }
                    }
                    let xdeg: usize = e.iter().take(s_var).map(|&x| x as usize).sum();
                    2 * sdeg + xdeg <= cap
                };
                cur = terms_mul_filtered(self.ring, &cur, &self.phi[k], &keep);
                if cur.is_empty() {
                    break;
                }
                bk += 1;
            }
        }
    }
    let mut walk =
        Walk { ring, j, s_var, p_cap, two_p: 2 * p_cap, phi: &phi, rho: &mut rho };
    let mut b = Vec::with_capacity(j);
    walk.walk(0, &mut b, delta);

    Ok(SeriesRoot { c: data.c.clone(), rho })
}

// ---------------------------------------------------------------------------
// The resultant
// ---------------------------------------------------------------------------

/// Exact multivariate resultant of `n+1` forms in `n+1` variables over the
/// coefficient ring `K` (a field, or a parameter-polynomial ring over one),
/// normalized so the monomial system gives exactly one.
pub fn resultant<K: Ring>(ring: &K, sys: &PolySystem<K>, opts: &EngineOptions) -> Result<K::Elem> {
    let n_plus_1 = sys.polys.len();
    if n_plus_1 == 0 {
        return Err(Error::InvalidInput("empty system".into()));
    }
    if sys.vars.len() != n_plus_1 {
        return Err(Error::InvalidInput(format!(
            "{} forms need {} variables, got {}",
            n_plus_1,
            n_plus_1,
            sys.vars.len()
        )));
    }
    let all: Vec<usize> = (0..n_plus_1).collect();
    let mut degrees = Vec::with_capacity(n_plus_1);
    for f in &sys.polys {
        if f.is_zero() {
            return Err(Error::DegenerateDegree("zero form".into()));
        }
        let d = f
            .homogeneous_degree_in(&all)
            .ok_or_else(|| Error::NotHomogeneous("resultant input".into()))?;
        if d == 0 {
            return Err(Error::DegenerateDegree("degree-zero form".into()));
        }
        degrees.push(d);
    }
    let ctx = HomotopyContext::new(&degrees, opts.precision_budget)?;
    let n = ctx.n;

    let mut e0 = exp_zero(n_plus_1);
    e0[0] = degrees[0] as u16;
    let a0 = sys.polys[0].coeff(&e0);
    if n == 0 {
        return Ok(a0);
    }
    let prec = ctx.precision();

    // first factor: (1 + s (a0 - 1))^{d_1 ... d_n}, binomial closed form
    let m0: u64 = degrees[1..].iter().map(|&d| d as u64).product();
    let cdiff = ring.sub(&a0, &ring.one());
    let mut acc = series::zero(ring, prec);
    let mut cpow = ring.one();
    for nn in 0..prec {
        if (nn as u64) > m0 {
            break;
        }
        let b = ring.from_ratio(&binomial_bigint_u64(m0, nn as u64), &BigInt::one())?;
        acc.coeffs[nn] = ring.mul(&b, &cpow);
        cpow = ring.mul(&cpow, &cdiff);
    }

    for j in 1..=n {
        let lvl = LevelSystem::from_forms(ring, &ctx, &sys.polys, j)?;
        let indices = ctx.root_indices(j);
        let factors: Vec<Result<TruncSeries<K::Elem>>> = indices
            .par_iter()
            .map(|c| level_factor(ring, &ctx, &lvl, c, prec, opts))
            .collect();
        let mut level = series::from_const(ring, prec, ring.one());
        for f in factors {
            level = series::mul(ring, &level, &f?);
        }
        let mj: u64 = degrees[j + 1..].iter().map(|&d| d as u64).product();
        let powed = series::pow(ring, &level, mj);
        acc = series::mul(ring, &acc, &powed);
    }
    Ok(series::eval_at_one(ring, &acc))
}

fn binomial_bigint_u64(n: u64, k: u64) -> BigInt {
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

/// One factor `h_{j,j}(rho_c)` of the Poisson product at level j.
fn level_factor<K: Ring>(
    ring: &K,
    ctx: &HomotopyContext,
    lvl: &LevelSystem<K>,
    c: &[u32],
    prec: usize,
    opts: &EngineOptions,
) -> Result<TruncSeries<K::Elem>> {
    let data = initial_root_data(lvl.j, &ctx.degrees, c)?;
    let root = match opts.root_method {
        RootMethod::Newton => newton_root_oracle(ring, lvl, &data, prec)?,
        RootMethod::Implicit => implicit_root_coeffs(ring, lvl, &data, prec)?,
    };
    let j = lvl.j;
    let (gv, _) = eval_g_block(ring, lvl, j, &root.rho, prec, false);
    let md = max_degrees_for(&lvl.f_terms[j], j);
    let table = build_power_table(ring, &root.rho, &md);
    let fv = eval_terms(ring, &lvl.f_terms[j], &table, prec);
    Ok(combine_homotopy(ring, &gv, &fv))
}

fn max_degrees_for<C>(terms: &[(ExpVec, C)], j: usize) -> Vec<u16> {
    let mut md = vec![0u16; j];
    for (e, _) in terms {
        for (l, &k) in e.iter().enumerate().take(j) {
            md[l] = md[l].max(k);
        }
    }
    md
}

/// Regroup a polynomial over base ring B in mixed variables into a
/// polynomial in the `x_vars` whose coefficients live in the parameter
/// ring.
pub fn split_x_params<B: Ring>(
    f: &DensePoly<B>,
    x_vars: &[String],
    pring: &crate::param::ParamRing<B>,
) -> Result<DensePoly<crate::param::ParamRing<B>>> {
    let x_idx: Vec<usize> = x_vars.iter().map(|v| f.var_index(v)).collect::<Result<Vec<_>>>()?;
    let p_idx: Vec<usize> =
        pring.vars.iter().map(|v| f.var_index(v)).collect::<Result<Vec<_>>>()?;
    for (i, name) in f.vars.iter().enumerate() {
        if !x_idx.contains(&i) && !p_idx.contains(&i) {
            let used = f.terms.iter().any(|(e, _)| e[i] > 0);
            if used {
                return Err(Error::BadVariable(format!(
                    "variable {} is neither a system nor a parameter variable",
                    name
                )));
            }
        }
    }
    let mut grouped: std::collections::BTreeMap<ExpVec, Vec<(ExpVec, B::Elem)>> =
        std::collections::BTreeMap::new();
    for (e, c) in &f.terms {
        let xe: ExpVec = x_idx.iter().map(|&i| e[i]).collect();
        let pe: ExpVec = p_idx.iter().map(|&i| e[i]).collect();
        grouped.entry(xe).or_default().push((pe, c.clone()));
    }
    let raw: Vec<(ExpVec, crate::param::ParamPoly<B::Elem>)> = grouped
        .into_iter()
        .map(|(xe, terms)| (xe, pring.from_raw_terms(terms)))
        .collect();
    DensePoly::from_terms(pring.clone(), x_vars.to_vec(), raw)
}

// ---------------------------------------------------------------------------
// Lift-and-reduce paths for finite fields
// ---------------------------------------------------------------------------

/// A reduced rational that must be an integer.
pub fn rational_to_bigint(v: &BigRational) -> Result<BigInt> {
    if !v.denom().is_one() {
        return Err(Error::InvalidRing(format!(
            "expected an integer, got {}/{}",
            v.numer(),
            v.denom()
        )));
    }
    Ok(v.numer().clone())
}

/// Resultant over `F_p[params]` by lifting the coefficients to the
/// integers, running the engine over the rationals, and reducing the
/// integer result modulo p.
pub fn resultant_param_fp_lifted(
    pring: &crate::param::ParamRing<crate::ring::PrimeField>,
    sys: &PolySystem<crate::param::ParamRing<crate::ring::PrimeField>>,
    opts: &EngineOptions,
) -> Result<crate::param::ParamPoly<u64>> {
    let fp = pring.base.clone();
    let qring = crate::param::ParamRing::with_caps(Rationals, pring.vars.clone(), pring.caps.clone());
    let lift_poly = |f: &DensePoly<crate::param::ParamRing<crate::ring::PrimeField>>| {
        let raw: Vec<(ExpVec, crate::param::ParamPoly<BigRational>)> = f
            .terms
            .iter()
            .map(|(e, c)| {
                let lifted = qring.from_raw_terms(
                    c.terms
                        .iter()
                        .map(|(pe, v)| {
                            (pe.clone(), BigRational::from_integer(BigInt::from(*v)))
                        })
                        .collect(),
                );
                (e.clone(), lifted)
            })
            .collect();
        DensePoly::from_terms(qring.clone(), f.vars.clone(), raw)
    };
    let polys = sys.polys.iter().map(lift_poly).collect::<Result<Vec<_>>>()?;
    let qsys = PolySystem::new(qring.clone(), sys.vars.clone(), polys)?;
    let res = resultant(&qring, &qsys, opts)?;
    // the lifted result has integer coefficients; reduce them mod p
    let reduced = pring.from_raw_terms(
        res.terms
            .iter()
            .map(|(pe, v)| {
                let int = rational_to_bigint(v)?;
                Ok((pe.clone(), fp.reduce_bigint(&int)))
            })
            .collect::<Result<Vec<_>>>()?,
    );
    Ok(reduced)
}

/// Resultant over `F_{p^a}[params]` by lifting to `Z[z][params]` (the
/// extension generator becomes one more parameter variable), running the
/// engine over the rationals, pseudodividing each coefficient by the monic
/// lift of the extension modulus, and reducing modulo p.
pub fn resultant_param_fq_lifted(
    pring: &crate::param::ParamRing<crate::ring::ExtField>,
    sys: &PolySystem<crate::param::ParamRing<crate::ring::ExtField>>,
    opts: &EngineOptions,
) -> Result<crate::param::ParamPoly<Vec<u64>>> {
    let fq = pring.base.clone();
    let p = fq.p;
    let deg = fq.degree();
    let mut qvars = pring.vars.clone();
    let zname = "__ext_gen".to_string();
    qvars.push(zname);
    let mut qcaps = pring.caps.clone();
    qcaps.push(None);
    let qring = crate::param::ParamRing::with_caps(Rationals, qvars, qcaps);
    let lift_poly = |f: &DensePoly<crate::param::ParamRing<crate::ring::ExtField>>| {
        let raw: Vec<(ExpVec, crate::param::ParamPoly<BigRational>)> = f
            .terms
            .iter()
            .map(|(e, c)| {
                let mut lifted_terms: Vec<(ExpVec, BigRational)> = Vec::new();
                for (pe, v) in &c.terms {
                    for (zk, &coeff) in v.iter().enumerate() {
                        if coeff == 0 {
                            continue;
                        }
                        let mut npe = pe.clone();
                        npe.push(zk as u16);
                        lifted_terms
                            .push((npe, BigRational::from_integer(BigInt::from(coeff))));
                    }
                }
                (e.clone(), qring.from_raw_terms(lifted_terms))
            })
            .collect();
        DensePoly::from_terms(qring.clone(), f.vars.clone(), raw)
    };
    let polys = sys.polys.iter().map(lift_poly).collect::<Result<Vec<_>>>()?;
    let qsys = PolySystem::new(qring.clone(), sys.vars.clone(), polys)?;
    let res = resultant(&qring, &qsys, opts)?;
    // group by the original parameter part; the z-part is an integer
    // polynomial to pseudodivide by the monic modulus lift, then reduce
    let zvar = pring.vars.len();
    let mut grouped: std::collections::BTreeMap<ExpVec, Vec<BigInt>> =
        std::collections::BTreeMap::new();
    for (pe, v) in &res.terms {
        let int = rational_to_bigint(v)?;
        let zk = pe[zvar] as usize;
        let mut key: ExpVec = pe.clone();
        key.truncate(zvar);
        let entry = grouped.entry(key).or_default();
        if entry.len() <= zk {
            entry.resize(zk + 1, BigInt::zero());
        }
        entry[zk] += int;
    }
    let z = crate::ring::Integers;
    let ghat: Vec<BigInt> = fq.modulus.iter().map(|&c| BigInt::from(c)).collect();
    let fp = crate::ring::PrimeField::new(p)?;
    let raw: Vec<(ExpVec, Vec<u64>)> = grouped
        .into_iter()
        .map(|(key, mut coeffs)| {
            crate::uni::trim(&z, &mut coeffs);
            let rem = if coeffs.len() >= ghat.len() {
                crate::uni::pseudo_divrem(&z, &coeffs, &ghat)?.2
            } else {
                coeffs
            };
            let mut out: Vec<u64> = rem.iter().map(|c| fp.reduce_bigint(c)).collect();
            out.resize(deg, 0);
            Ok((key, out))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pring.from_raw_terms(raw))
}
