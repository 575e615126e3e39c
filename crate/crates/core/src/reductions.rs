//! Randomized reductions built on the resultant engine: satisfiability of
//! affine systems over the algebraic closure, point counting for
//! zero-dimensional systems, GCD and distinct-root counting through
//! resultant filtering, radical membership, variety dimension, and tensor
//! rank.
//!
//! Every procedure runs `trials` independent rounds from derived seeds and
//! aggregates by majority (mode for counts); per-round data is recorded in
//! the returned verdict so runs are auditable and reproducible.

use crate::error::{Error, Result};
use crate::homotopy::{
    resultant, resultant_param_fp_lifted, resultant_param_fq_lifted, EngineOptions,
};
use crate::mono::{exp_zero, ExpVec};
use crate::oracles::bareiss_determinant;
use crate::param::{ParamPoly, ParamRing};
use crate::poly::{DensePoly, PolySystem};
use crate::ring::{ExtField, Field, PrimeField, Rationals, Ring};
use crate::rng::CounterRng;
use crate::uni;
use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

/// Default seed for every randomized entry point.
pub const DEFAULT_SEED: u64 = 0x0f1e2d3c4b5a6978;

#[derive(Debug, Clone)]
pub struct ReductionOptions {
    pub seed: u64,
    pub trials: u32,
    pub engine: EngineOptions,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions { seed: DEFAULT_SEED, trials: 15, engine: EngineOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Answer {
    Satisfiable,
    Unsatisfiable,
    Count { count: u64, degenerate_flag: bool },
    Dimension { computed: i64, candidate: i64, equals: bool },
    Rank { candidate: u32, is_exact: bool },
    Member(bool),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub outcome: String,
    /// Per-step notes (which level vanished, series valuations, ...).
    pub detail: Vec<String>,
    /// Max coefficient heights (bits) of the trailing resultants seen.
    pub heights: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub answer: Answer,
    pub trials: Vec<TrialRecord>,
    pub confidence_note: String,
}

const CONFIDENCE_NOTE: &str =
    "single-trial success probability at least 2/3; majority over independent trials";

// ---------------------------------------------------------------------------
// Engine dispatch per base field
// ---------------------------------------------------------------------------

/// Base fields the reductions run over. Provides coefficient sampling and
/// the parameterized resultant (with an automatic fall back to the
/// lift-through-the-integers path where direct arithmetic hits a
/// non-invertible denominator).
pub trait EngineBase: Field {
    /// None for characteristic zero.
    fn coeff_field_size(&self) -> Option<BigInt>;
    /// Uniform draw from the sampling pool: `1..=q_bound` over the
    /// rationals, uniform nonzero field elements otherwise.
    fn sample_b(&self, rng: &mut CounterRng, q_bound: u64) -> Self::Elem;
    fn clear_denominators(&self, polys: Vec<DensePoly<Self>>) -> Vec<DensePoly<Self>>;
    /// Rescale by a unit to keep coefficients small (primitive integer
    /// form over the rationals; identity elsewhere). Rescaling never
    /// affects gcds, roots, or zero tests.
    fn normalize_content(&self, f: DensePoly<Self>) -> DensePoly<Self> {
        f
    }
    fn param_resultant(
        pring: &ParamRing<Self>,
        sys: &PolySystem<ParamRing<Self>>,
        opts: &EngineOptions,
    ) -> Result<ParamPoly<Self::Elem>>;
}

impl EngineBase for Rationals {
    fn coeff_field_size(&self) -> Option<BigInt> {
        None
    }
    fn sample_b(&self, rng: &mut CounterRng, q_bound: u64) -> Self::Elem {
        self.from_i64(rng.range_inclusive(1, q_bound.max(1)) as i64)
    }
    fn clear_denominators(&self, polys: Vec<DensePoly<Self>>) -> Vec<DensePoly<Self>> {
        polys
            .into_iter()
            .map(|f| {
                let mut l = BigInt::one();
                for (_, c) in &f.terms {
                    l = num_integer::Integer::lcm(&l, c.denom());
                }
                f.scale(&num_rational::BigRational::from_integer(l))
            })
            .collect()
    }
    fn normalize_content(&self, f: DensePoly<Self>) -> DensePoly<Self> {
        if f.is_zero() {
            return f;
        }
        let mut l = BigInt::one();
        for (_, c) in &f.terms {
            l = num_integer::Integer::lcm(&l, c.denom());
        }
        let ints = f.scale(&num_rational::BigRational::from_integer(l));
        let mut g = BigInt::ZERO;
        for (_, c) in &ints.terms {
            g = num_integer::Integer::gcd(&g, c.numer());
        }
        if g.is_one() || g == BigInt::ZERO {
            return ints;
        }
        ints.scale(&num_rational::BigRational::new(BigInt::one(), g))
    }
    fn param_resultant(
        pring: &ParamRing<Self>,
        sys: &PolySystem<ParamRing<Self>>,
        opts: &EngineOptions,
    ) -> Result<ParamPoly<Self::Elem>> {
        resultant(pring, sys, opts)
    }
}

impl EngineBase for PrimeField {
    fn coeff_field_size(&self) -> Option<BigInt> {
        Some(BigInt::from(self.p))
    }
    fn sample_b(&self, rng: &mut CounterRng, _q_bound: u64) -> Self::Elem {
        rng.range_inclusive(1, self.p - 1)
    }
    fn clear_denominators(&self, polys: Vec<DensePoly<Self>>) -> Vec<DensePoly<Self>> {
        polys
    }
    fn param_resultant(
        pring: &ParamRing<Self>,
        sys: &PolySystem<ParamRing<Self>>,
        opts: &EngineOptions,
    ) -> Result<ParamPoly<Self::Elem>> {
        match resultant(pring, sys, opts) {
            Ok(v) => Ok(v),
            Err(Error::InvalidRing(_)) | Err(Error::DivisionByZero(_)) | Err(Error::LiftFailure(_)) => {
                resultant_param_fp_lifted(pring, sys, opts)
            }
            Err(e) => Err(e),
        }
    }
}

impl EngineBase for ExtField {
    fn coeff_field_size(&self) -> Option<BigInt> {
        Some(BigInt::from(self.p).pow(self.degree() as u32))
    }
    fn sample_b(&self, rng: &mut CounterRng, _q_bound: u64) -> Self::Elem {
        loop {
            let v: Vec<u64> = (0..self.degree()).map(|_| rng.below(self.p)).collect();
            if v.iter().any(|&c| c != 0) {
                return v;
            }
        }
    }
    fn clear_denominators(&self, polys: Vec<DensePoly<Self>>) -> Vec<DensePoly<Self>> {
        polys
    }
    fn param_resultant(
        pring: &ParamRing<Self>,
        sys: &PolySystem<ParamRing<Self>>,
        opts: &EngineOptions,
    ) -> Result<ParamPoly<Self::Elem>> {
        match resultant(pring, sys, opts) {
            Ok(v) => Ok(v),
            Err(Error::InvalidRing(_)) | Err(Error::DivisionByZero(_)) | Err(Error::LiftFailure(_)) => {
                resultant_param_fq_lifted(pring, sys, opts)
            }
            Err(e) => Err(e),
        }
    }
}

// ---------------------------------------------------------------------------
// Trailing resultants (the shared adaptive-precision driver)
// ---------------------------------------------------------------------------

/// Compute `res` of the given polynomials (over `x_vars`, coefficients in
/// `base[params]`) and return its trailing term with respect to
/// `trail_var`: the valuation and the coefficient (a polynomial in the
/// remaining parameters, with the trailing variable's exponent zeroed).
///
/// The engine runs with the trailing variable truncated at a cap that
/// doubles until the truncated resultant is nonzero; the other parameters
/// are exact. The polynomial order is taken as given (callers put the
/// parameter-heavy member last), which changes the resultant by at most a
/// sign.
fn trailing_resultant<B: EngineBase>(
    base: &B,
    x_vars: &[String],
    params: &[String],
    polys: &[DensePoly<B>],
    trail_var: &str,
    opts: &EngineOptions,
) -> Result<(u16, ParamPoly<B::Elem>)> {
    let trail_idx = params
        .iter()
        .position(|v| v == trail_var)
        .ok_or_else(|| Error::BadVariable(trail_var.to_string()))?;
    // degree bound of the resultant in the trailing variable
    let x_idx: Vec<usize> = (0..x_vars.len()).collect();
    let mixed_vars: Vec<String> = polys[0].vars.clone();
    let degs: Vec<u64> = polys
        .iter()
        .map(|f| {
            let sub: Vec<usize> = x_vars
                .iter()
                .map(|v| mixed_vars.iter().position(|w| w == v).unwrap())
                .collect();
            f.homogeneous_degree_in(&sub).unwrap_or(0) as u64
        })
        .collect();
    let _ = x_idx;
    let mut t_bound: u128 = 0;
    for (i, f) in polys.iter().enumerate() {
        let tv = mixed_vars.iter().position(|w| w == trail_var);
        let uses = match tv {
            Some(k) => f.degree_in(k) > 0,
            None => false,
        };
        if uses {
            let mut prod: u128 = 1;
            for (k, &d) in degs.iter().enumerate() {
                if k != i {
                    prod = prod.saturating_mul(d as u128);
                }
            }
            t_bound = t_bound.saturating_add(prod);
        }
    }

    let mut cap: u16 = 1;
    loop {
        let caps: Vec<Option<u16>> = params
            .iter()
            .enumerate()
            .map(|(i, _)| if i == trail_idx { Some(cap) } else { None })
            .collect();
        let pring = ParamRing::with_caps(base.clone(), params.to_vec(), caps);
        let sys_polys = polys
            .iter()
            .map(|f| crate::homotopy::split_x_params(f, x_vars, &pring))
            .collect::<Result<Vec<_>>>()?;
        let sys = PolySystem::new(pring.clone(), x_vars.to_vec(), sys_polys)?;
        let res = B::param_resultant(&pring, &sys, opts)?;
        if !pring.is_zero(&res) {
            let v = pring.min_exp(&res, trail_idx).unwrap();
            let trailing = pring.coeff_of(&res, trail_idx, v);
            return Ok((v, trailing));
        }
        if cap as u128 >= t_bound {
            return Err(Error::OracleFailure(
                "perturbed resultant vanished identically".into(),
            ));
        }
        cap = cap.saturating_mul(2).saturating_add(1);
    }
}

// ---------------------------------------------------------------------------
// Satisfiability
// ---------------------------------------------------------------------------

fn max_total_degree<B: Ring>(polys: &[DensePoly<B>]) -> u32 {
    polys.iter().map(|f| f.total_degree()).max().unwrap_or(0)
}

pub fn decision_pool_needed(n: u64, d: u64) -> u64 {
    15u64.saturating_mul(n).saturating_mul(d.saturating_pow(n as u32))
}

pub fn counting_pool_needed(n: u64, d: u64) -> u64 {
    100u64.saturating_mul(n).saturating_mul(d.saturating_pow(2 * n as u32))
}

fn check_field_size<B: EngineBase>(base: &B, needed: u64) -> Result<()> {
    if let Some(q) = base.coeff_field_size() {
        if q <= BigInt::from(needed) {
            return Err(Error::InvalidRing(format!(
                "coefficient field of size {} is below the sampling requirement {}; pass to an extension first",
                q, needed
            )));
        }
    }
    Ok(())
}

/// Normalize a system: reject empty input, clear denominators, drop zero
/// members. `Some(answer)` short-circuits (all members zero, or a nonzero
/// constant member).
fn preprocess_system<B: EngineBase>(
    base: &B,
    sys: &[DensePoly<B>],
) -> Result<std::result::Result<Vec<DensePoly<B>>, Answer>> {
    if sys.is_empty() {
        return Err(Error::InvalidInput("empty system".into()));
    }
    if sys[0].vars.is_empty() {
        return Err(Error::InvalidInput("system has no variables".into()));
    }
    let cleared = base.clear_denominators(sys.to_vec());
    let nonzero: Vec<DensePoly<B>> = cleared.into_iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(Err(Answer::Satisfiable));
    }
    if nonzero.iter().any(|f| f.total_degree() == 0) {
        return Ok(Err(Answer::Unsatisfiable));
    }
    Ok(Ok(nonzero))
}

/// One satisfiability trial: SATISFIABLE iff some level's trailing
/// resultant datum vanishes at the origin. Levels are evaluated in
/// ascending order and the trial stops at the first vanishing one.
fn decide_trial<B: EngineBase>(
    base: &B,
    fs: &[DensePoly<B>],
    q_bound: u64,
    rng: &CounterRng,
    opts: &EngineOptions,
) -> Result<(bool, Vec<String>, Vec<u64>)> {
    let vars = fs[0].vars.clone();
    let n = vars.len();
    let m = fs.len();
    let d = max_total_degree(fs) as usize;
    let mut detail = Vec::new();
    let mut heights = Vec::new();

    let x_vars: Vec<String> = {
        let mut v = vec!["__x0".to_string()];
        v.extend(vars.iter().cloned());
        v
    };
    let params: Vec<String> = vec!["__t".into(), "__w".into(), "__u0".into()];
    let mut all_vars = x_vars.clone();
    all_vars.extend(params.iter().cloned());

    let mut combo_rng = rng.child(1);
    let mut lin_rng = rng.child(2);
    let mut gamma_rng = rng.child(3);

    for j in 1..=n {
        // random combinations of the system members
        let mut combos: Vec<DensePoly<B>> = Vec::with_capacity(j);
        for _ in 0..j {
            let mut attempts = 0;
            let g = loop {
                let mut acc = DensePoly::zero(base.clone(), vars.clone());
                for f in fs {
                    let c = base.sample_b(&mut combo_rng, q_bound);
                    acc = acc.add(&f.scale(&c))?;
                }
                if !acc.is_zero() && acc.total_degree() >= 1 {
                    break acc;
                }
                attempts += 1;
                if attempts > 32 {
                    return Err(Error::OracleFailure(
                        "random combinations degenerated repeatedly".into(),
                    ));
                }
            };
            combos.push(g);
        }
        // random affine-linear cutters for the remaining slots
        let mut cutters: Vec<DensePoly<B>> = Vec::with_capacity(n - j);
        for _ in j..n {
            let mut raw: Vec<(ExpVec, B::Elem)> = Vec::with_capacity(n + 1);
            raw.push((exp_zero(n), base.sample_b(&mut lin_rng, q_bound)));
            for l in 0..n {
                let mut e = exp_zero(n);
                e[l] = 1;
                raw.push((e, base.sample_b(&mut lin_rng, q_bound)));
            }
            cutters.push(DensePoly::from_terms(base.clone(), vars.clone(), raw)?);
        }

        // assemble the homogenized, perturbed square system over the
        // extended variable list
        let mut gs: Vec<DensePoly<B>> = Vec::with_capacity(n);
        for g in combos.iter().chain(cutters.iter()) {
            gs.push(g.clone());
        }
        // sort by degree so low-degree members come first; this only
        // changes the resultant's sign, which zero tests ignore
        gs.sort_by_key(|g| g.total_degree());

        let mut system: Vec<DensePoly<B>> = Vec::with_capacity(n + 1);
        for (i, g) in gs.iter().enumerate() {
            let dg = g.total_degree();
            let hom = g.homogenize("__x0")?.extend_vars(&all_vars)?;
            // + t x_{i+1}^{deg g}
            let ti = all_vars.iter().position(|v| v == "__t").unwrap();
            let xi = all_vars.iter().position(|v| *v == x_vars[i + 1]).unwrap();
            let mut e = exp_zero(all_vars.len());
            e[ti] = 1;
            e[xi] = dg as u16;
            let pert =
                DensePoly::from_terms(base.clone(), all_vars.clone(), vec![(e, base.one())])?;
            system.push(hom.add(&pert)?);
        }
        // the weighted member: u0 x0^d + sum_i w^i x_i^d + sum_k gamma_k x0^{d - deg f_k} F_k
        let mut raw: Vec<(ExpVec, B::Elem)> = Vec::new();
        let u0i = all_vars.iter().position(|v| v == "__u0").unwrap();
        let wi = all_vars.iter().position(|v| v == "__w").unwrap();
        let x0i = all_vars.iter().position(|v| v == "__x0").unwrap();
        let mut e = exp_zero(all_vars.len());
        e[u0i] = 1;
        e[x0i] = d as u16;
        raw.push((e, base.one()));
        for i in 1..=n {
            let xi = all_vars.iter().position(|v| *v == x_vars[i]).unwrap();
            let mut e = exp_zero(all_vars.len());
            e[wi] = i as u16;
            e[xi] = d as u16;
            raw.push((e, base.one()));
        }
        let mut weighted = DensePoly::from_terms(base.clone(), all_vars.clone(), raw)?;
        for f in fs.iter().take(m) {
            let gamma = base.sample_b(&mut gamma_rng, q_bound);
            let fh = f.homogenize("__x0")?.extend_vars(&all_vars)?;
            let mut e = exp_zero(all_vars.len());
            e[x0i] = (d as u32 - f.total_degree()) as u16;
            let shift =
                DensePoly::from_terms(base.clone(), all_vars.clone(), vec![(e, gamma)])?;
            weighted = weighted.add(&fh.mul(&shift)?)?;
        }
        system.push(weighted);

        let (vt, tt) = trailing_resultant(base, &x_vars, &params, &system, "__t", opts)?;
        // trailing in w, then the value at u0 = 0
        let pring = ParamRing::new(base.clone(), params.clone());
        let wloc = 1usize;
        let u0loc = 2usize;
        let vw = pring.min_exp(&tt, wloc).unwrap();
        let tw = pring.coeff_of(&tt, wloc, vw);
        let at0 = pring.subst_zero(&tw, u0loc);
        let beta_zero = pring.is_zero(&at0);
        heights.push(pring.height_bits(&tt));
        detail.push(format!(
            "level {}: t-valuation {}, w-valuation {}, beta {}",
            j,
            vt,
            vw,
            if beta_zero { "= 0" } else { "!= 0" }
        ));
        if beta_zero {
            return Ok((true, detail, heights));
        }
    }
    Ok((false, detail, heights))
}

/// Decide satisfiability over the algebraic closure by majority over
/// independent randomized trials.
pub fn hn_decide<B: EngineBase>(
    base: &B,
    sys: &[DensePoly<B>],
    opts: &ReductionOptions,
) -> Result<Verdict> {
    let fs = match preprocess_system(base, sys)? {
        Ok(fs) => fs,
        Err(answer) => {
            return Ok(Verdict {
                answer,
                trials: vec![],
                confidence_note: "degenerate input decided directly".into(),
            })
        }
    };
    let n = fs[0].vars.len() as u64;
    let d = (max_total_degree(&fs) as u64).max(1);
    let needed = decision_pool_needed(n, d);
    check_field_size(base, needed)?;
    let root = CounterRng::new(opts.seed);
    let records: Vec<Result<TrialRecord>> = (0..opts.trials)
        .into_par_iter()
        .map(|t| {
            let trng = root.child(t as u64);
            let (sat, detail, heights) = decide_trial(base, &fs, needed, &trng, &opts.engine)?;
            Ok(TrialRecord {
                seed: trng.seed(),
                outcome: if sat { "satisfiable".into() } else { "unsatisfiable".into() },
                detail,
                heights,
            })
        })
        .collect();
    let records = records.into_iter().collect::<Result<Vec<_>>>()?;
    let sat_count = records.iter().filter(|r| r.outcome == "satisfiable").count();
    let answer = if 2 * sat_count > records.len() {
        Answer::Satisfiable
    } else {
        Answer::Unsatisfiable
    };
    Ok(Verdict { answer, trials: records, confidence_note: CONFIDENCE_NOTE.into() })
}

/// Prime-field front end that passes to a larger extension field when the
/// base is too small for the sampling pool.
pub fn hn_decide_fp(p: u64, sys: &[DensePoly<PrimeField>], opts: &ReductionOptions) -> Result<Verdict> {
    let fp = PrimeField::new(p)?;
    let fs0 = match preprocess_system(&fp, sys)? {
        Ok(v) => v,
        Err(answer) => {
            return Ok(Verdict {
                answer,
                trials: vec![],
                confidence_note: "degenerate input decided directly".into(),
            })
        }
    };
    let n = fs0[0].vars.len() as u64;
    let d = (max_total_degree(&fs0) as u64).max(1);
    let needed = decision_pool_needed(n, d);
    if p > needed {
        return hn_decide(&fp, sys, opts);
    }
    // extend F_p
    let ext = crate::arith::field_extend(p, 1, None, &BigInt::from(needed + 1), opts.seed)?;
    let big = ExtField::new(p, ext.modulus.clone())?;
    let lifted: Vec<DensePoly<ExtField>> = sys
        .iter()
        .map(|f| {
            let raw: Vec<(ExpVec, Vec<u64>)> = f
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), big.embed_base(*c)))
                .collect();
            DensePoly::from_terms(big.clone(), f.vars.clone(), raw)
        })
        .collect::<Result<Vec<_>>>()?;
    hn_decide(&big, &lifted, opts)
}

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

fn mode_of_counts(values: &[Option<(u64, bool)>]) -> Result<(u64, bool)> {
    let mut tally: std::collections::BTreeMap<(u64, bool), usize> = Default::default();
    for v in values.iter().flatten() {
        *tally.entry(*v).or_insert(0) += 1;
    }
    if tally.is_empty() {
        return Err(Error::NoConsensus("every trial failed".into()));
    }
    let best = tally.values().max().copied().unwrap();
    let winners: Vec<(u64, bool)> =
        tally.iter().filter(|(_, &c)| c == best).map(|(k, _)| *k).collect();
    if winners.len() != 1 {
        return Err(Error::NoConsensus(format!(
            "tied mode among counts {:?}",
            winners.iter().map(|w| w.0).collect::<Vec<_>>()
        )));
    }
    Ok(winners[0])
}

fn count_trial<B: EngineBase>(
    base: &B,
    fs: &[DensePoly<B>],
    q_bound: u64,
    rng: &CounterRng,
    opts: &EngineOptions,
) -> Result<(u64, bool, Vec<String>, Vec<u64>)> {
    let vars = fs[0].vars.clone();
    let n = vars.len();
    let mut detail = Vec::new();
    let mut heights = Vec::new();

    // Random translation: a point at the origin would meet the auxiliary
    // linear form in the constant factor 1 and fall out of the count, so
    // move the variety to generic position first (the point count is
    // translation-invariant).
    let mut shift_rng = rng.child(4);
    // a short range keeps heights small; it only has to dodge |V| points
    let shift_range = q_bound.min(1024);
    let deltas: Vec<B::Elem> =
        (0..n).map(|_| base.sample_b(&mut shift_rng, shift_range)).collect();
    let fs: Vec<DensePoly<B>> = fs
        .iter()
        .map(|f| {
            let mut acc = f.clone();
            for (l, delta) in deltas.iter().enumerate() {
                let shifted_var = DensePoly::var(base.clone(), vars.clone(), &vars[l])?
                    .add(&DensePoly::constant(base.clone(), vars.clone(), delta.clone()))?;
                acc = acc.subst(l, &shifted_var)?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let fs = &fs[..];

    let x_vars: Vec<String> = {
        let mut v = vec!["__x0".to_string()];
        v.extend(vars.iter().cloned());
        v
    };
    let params: Vec<String> = vec!["__t".into(), "__u".into()];
    let mut all_vars = x_vars.clone();
    all_vars.extend(params.iter().cloned());
    let ti = all_vars.iter().position(|v| v == "__t").unwrap();
    let ui = all_vars.iter().position(|v| v == "__u").unwrap();
    let x0i = all_vars.iter().position(|v| v == "__x0").unwrap();

    let mut combo_rng = rng.child(1);
    let mut beta_rng = rng.child(2);

    // shared linear member L = x0 + sum_i beta_i u x_i
    let betas: Vec<B::Elem> = (0..n).map(|_| base.sample_b(&mut beta_rng, q_bound)).collect();
    let mut raw: Vec<(ExpVec, B::Elem)> = Vec::with_capacity(n + 1);
    let mut e = exp_zero(all_vars.len());
    e[x0i] = 1;
    raw.push((e, base.one()));
    for i in 1..=n {
        let xi = all_vars.iter().position(|v| *v == x_vars[i]).unwrap();
        let mut e = exp_zero(all_vars.len());
        e[xi] = 1;
        e[ui] = 1;
        raw.push((e, betas[i - 1].clone()));
    }
    let lform = DensePoly::from_terms(base.clone(), all_vars.clone(), raw)?;

    let mut trailing_parts: Vec<DensePoly<B>> = Vec::with_capacity(2);
    for side in 0..2 {
        // n random combinations, homogenized and perturbed
        let mut system: Vec<DensePoly<B>> = Vec::with_capacity(n + 1);
        for i in 0..n {
            let mut attempts = 0;
            let g = loop {
                let mut acc = DensePoly::zero(base.clone(), vars.clone());
                for f in fs {
                    let c = base.sample_b(&mut combo_rng, q_bound);
                    acc = acc.add(&f.scale(&c))?;
                }
                if !acc.is_zero() && acc.total_degree() >= 1 {
                    break acc;
                }
                attempts += 1;
                if attempts > 32 {
                    return Err(Error::OracleFailure(
                        "random combinations degenerated repeatedly".into(),
                    ));
                }
            };
            let dg = g.total_degree();
            let hom = g.homogenize("__x0")?.extend_vars(&all_vars)?;
            let xi = all_vars.iter().position(|v| *v == x_vars[i + 1]).unwrap();
            let mut e = exp_zero(all_vars.len());
            e[ti] = 1;
            e[xi] = dg as u16;
            let pert =
                DensePoly::from_terms(base.clone(), all_vars.clone(), vec![(e, base.one())])?;
            system.push(hom.add(&pert)?);
        }
        system.sort_by_key(|g| {
            g.homogeneous_degree_in(
                &(0..all_vars.len())
                    .filter(|i| x_vars.contains(&all_vars[*i]))
                    .collect::<Vec<_>>(),
            )
            .unwrap_or(0)
        });
        system.push(lform.clone());

        let (vt, tt) = trailing_resultant(base, &x_vars, &params, &system, "__t", opts)?;
        let pring = ParamRing::new(base.clone(), params.clone());
        let uloc = 1usize;
        let vu = pring.min_exp(&tt, uloc).unwrap();
        let tp = pring.shift_down(&tt, uloc, vu);
        heights.push(pring.height_bits(&tp));
        detail.push(format!("side {}: t-valuation {}, u-valuation {}", side + 1, vt, vu));
        // the trailing part is a univariate polynomial in u over the base
        let coeffs: Vec<B::Elem> = {
            let maxu = pring.max_exp(&tp, uloc).unwrap_or(0);
            (0..=maxu)
                .map(|k| {
                    let c = pring.coeff_of(&tp, uloc, k);
                    pring.as_constant(&c).ok_or_else(|| {
                        Error::OracleFailure("trailing datum not univariate in u".into())
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        let upoly = uni::to_dense(base, &["__u".to_string()], 0, &coeffs);
        trailing_parts.push(upoly);
    }

    // content normalization, gcd by filtering, distinct-root count
    let a1 = base.normalize_content(trailing_parts[0].clone());
    let a2 = base.normalize_content(trailing_parts[1].clone());
    let g = gcd_filtering(&a1, &a2)?;
    if g.total_degree() == 0 {
        detail.push("gcd of trailing data is constant (empty or degenerate variety)".into());
        return Ok((0, true, detail, heights));
    }
    let g = base.normalize_content(g);
    let count = count_distinct_roots(&g)?;
    detail.push(format!("gcd degree {}, distinct roots {}", g.total_degree(), count));
    Ok((count, false, detail, heights))
}

fn make_monic<B: Field>(base: &B, f: &DensePoly<B>) -> Result<DensePoly<B>> {
    let var = f.sole_variable().unwrap_or(0);
    let c = uni::from_dense(f, var)?;
    let m = uni::monic(base, &c)?;
    Ok(uni::to_dense(base, &f.vars, var, &m))
}

/// Count the points of a zero-dimensional affine variety by majority
/// (mode) over independent randomized trials. The degenerate outcome (gcd
/// collapses to a constant, which is how empty varieties manifest) is
/// reported through a flag rather than rejected.
pub fn hn_count<B: EngineBase>(
    base: &B,
    sys: &[DensePoly<B>],
    opts: &ReductionOptions,
) -> Result<Verdict> {
    let fs = match preprocess_system(base, sys)? {
        Ok(fs) => fs,
        Err(Answer::Unsatisfiable) => {
            return Ok(Verdict {
                answer: Answer::Count { count: 0, degenerate_flag: true },
                trials: vec![],
                confidence_note: "degenerate input decided directly".into(),
            })
        }
        Err(_) => {
            return Err(Error::InvalidInput(
                "the zero system is not zero-dimensional".into(),
            ))
        }
    };
    let n = fs[0].vars.len() as u64;
    let d = (max_total_degree(&fs) as u64).max(1);
    let needed = counting_pool_needed(n, d);
    check_field_size(base, needed)?;
    let root = CounterRng::new(opts.seed);
    let records: Vec<Result<(Option<(u64, bool)>, TrialRecord)>> = (0..opts.trials)
        .into_par_iter()
        .map(|t| {
            let trng = root.child(t as u64);
            match count_trial(base, &fs, needed, &trng, &opts.engine) {
                Ok((count, flag, detail, heights)) => Ok((
                    Some((count, flag)),
                    TrialRecord {
                        seed: trng.seed(),
                        outcome: format!("count {}{}", count, if flag { " (degenerate)" } else { "" }),
                        detail,
                        heights,
                    },
                )),
                Err(Error::OracleFailure(msg)) => Ok((
                    None,
                    TrialRecord {
                        seed: trng.seed(),
                        outcome: "failed".into(),
                        detail: vec![msg],
                        heights: vec![],
                    },
                )),
                Err(e) => Err(e),
            }
        })
        .collect();
    let records = records.into_iter().collect::<Result<Vec<_>>>()?;
    let values: Vec<Option<(u64, bool)>> = records.iter().map(|(v, _)| *v).collect();
    let (count, flag) = mode_of_counts(&values)?;
    Ok(Verdict {
        answer: Answer::Count { count, degenerate_flag: flag },
        trials: records.into_iter().map(|(_, r)| r).collect(),
        confidence_note: CONFIDENCE_NOTE.into(),
    })
}

// ---------------------------------------------------------------------------
// Projective counting
// ---------------------------------------------------------------------------

fn projective_count_trial<B: EngineBase>(
    base: &B,
    fs: &[DensePoly<B>],
    q_bound: u64,
    rng: &CounterRng,
    opts: &EngineOptions,
) -> Result<(u64, Vec<String>, Vec<u64>)> {
    let vars = fs[0].vars.clone();
    let nv = vars.len(); // projective space of dimension nv - 1
    if nv < 2 {
        return Err(Error::InvalidInput("projective counting needs at least two coordinates".into()));
    }
    let d = max_total_degree(fs);
    let mut detail = Vec::new();
    let mut heights = Vec::new();
    let mut mat_rng = rng.child(1);
    let mut combo_rng = rng.child(2);
    let mut beta_rng = rng.child(3);

    // equalize degrees: multiply each F_i by every x_l^{d - deg F_i}
    let mut pool: Vec<DensePoly<B>> = Vec::new();
    for f in fs {
        let gap = d - f.total_degree();
        if gap == 0 {
            pool.push(f.clone());
            continue;
        }
        for l in 0..nv {
            let mut e = exp_zero(nv);
            e[l] = gap as u16;
            let shift = DensePoly::from_terms(base.clone(), vars.clone(), vec![(e, base.one())])?;
            pool.push(f.mul(&shift)?);
        }
    }

    // random invertible change of coordinates
    let a = loop {
        let cand: Vec<Vec<B::Elem>> = (0..nv)
            .map(|_| (0..nv).map(|_| base.sample_b(&mut mat_rng, q_bound)).collect())
            .collect();
        let det = bareiss_determinant(base, &cand)?;
        if !base.is_zero(&det) {
            break cand;
        }
    };
    let pool: Vec<DensePoly<B>> = pool
        .iter()
        .map(|f| crate::oracles::subst_linear(f, &a))
        .collect::<Result<Vec<_>>>()?;

    let params: Vec<String> = vec!["__u".into()];
    let mut all_vars = vars.clone();
    all_vars.push("__u".into());
    let ui = nv;

    let betas: Vec<B::Elem> =
        (1..nv).map(|_| base.sample_b(&mut beta_rng, q_bound)).collect();
    let mut raw: Vec<(ExpVec, B::Elem)> = Vec::new();
    let mut e = exp_zero(nv + 1);
    e[0] = 1;
    raw.push((e, base.one()));
    for l in 1..nv {
        let mut e = exp_zero(nv + 1);
        e[l] = 1;
        e[ui] = 1;
        raw.push((e, betas[l - 1].clone()));
    }
    let lform = DensePoly::from_terms(base.clone(), all_vars.clone(), raw)?;

    let mut upolys: Vec<DensePoly<B>> = Vec::with_capacity(2);
    for side in 0..2 {
        let mut system: Vec<DensePoly<B>> = Vec::with_capacity(nv);
        for _ in 0..nv - 1 {
            let mut attempts = 0;
            let g = loop {
                let mut acc = DensePoly::zero(base.clone(), vars.clone());
                for f in &pool {
                    let c = base.sample_b(&mut combo_rng, q_bound);
                    acc = acc.add(&f.scale(&c))?;
                }
                if !acc.is_zero() {
                    break acc;
                }
                attempts += 1;
                if attempts > 32 {
                    return Err(Error::OracleFailure("degenerate combinations".into()));
                }
            };
            system.push(g.extend_vars(&all_vars)?);
        }
        system.push(lform.clone());

        let pring = ParamRing::new(base.clone(), params.clone());
        let sys_polys = system
            .iter()
            .map(|f| crate::homotopy::split_x_params(f, &vars, &pring))
            .collect::<Result<Vec<_>>>()?;
        let sys = PolySystem::new(pring.clone(), vars.clone(), sys_polys)?;
        let res = B::param_resultant(&pring, &sys, opts)?;
        if pring.is_zero(&res) {
            return Err(Error::OracleFailure(format!(
                "side {}: resultant vanished identically",
                side + 1
            )));
        }
        heights.push(pring.height_bits(&res));
        let vu = pring.min_exp(&res, 0).unwrap();
        let tp = pring.shift_down(&res, 0, vu);
        let maxu = pring.max_exp(&tp, 0).unwrap_or(0);
        let coeffs: Vec<B::Elem> = (0..=maxu)
            .map(|k| {
                let c = pring.coeff_of(&tp, 0, k);
                pring
                    .as_constant(&c)
                    .ok_or_else(|| Error::OracleFailure("resultant not univariate in u".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        detail.push(format!("side {}: u-degree {}", side + 1, maxu));
        upolys.push(uni::to_dense(base, &["__u".to_string()], 0, &coeffs));
    }
    let a1 = base.normalize_content(upolys[0].clone());
    let a2 = base.normalize_content(upolys[1].clone());
    let g = gcd_filtering(&a1, &a2)?;
    if g.total_degree() == 0 {
        return Err(Error::OracleFailure("gcd collapsed to a constant".into()));
    }
    let g = base.normalize_content(g);
    let count = count_distinct_roots(&g)?;
    detail.push(format!("gcd degree {}, distinct roots {}", g.total_degree(), count));
    Ok((count, detail, heights))
}

/// Count the points of a finite projective variety (given by homogeneous
/// generators) by majority over randomized trials.
pub fn projective_count<B: EngineBase>(
    base: &B,
    sys: &[DensePoly<B>],
    opts: &ReductionOptions,
) -> Result<Verdict> {
    if sys.is_empty() {
        return Err(Error::InvalidInput("empty system".into()));
    }
    let all: Vec<usize> = (0..sys[0].vars.len()).collect();
    for f in sys {
        if f.is_zero() || f.homogeneous_degree_in(&all).is_none() {
            return Err(Error::NotHomogeneous("projective counting input".into()));
        }
    }
    let fs = base.clear_denominators(sys.to_vec());
    let n = fs[0].vars.len() as u64 - 1;
    let d = (max_total_degree(&fs) as u64).max(1);
    let needed = counting_pool_needed(n.max(1), d);
    check_field_size(base, needed)?;
    let root = CounterRng::new(opts.seed);
    let records: Vec<Result<(Option<(u64, bool)>, TrialRecord)>> = (0..opts.trials)
        .into_par_iter()
        .map(|t| {
            let trng = root.child(t as u64);
            match projective_count_trial(base, &fs, needed, &trng, &opts.engine) {
                Ok((count, detail, heights)) => Ok((
                    Some((count, false)),
                    TrialRecord {
                        seed: trng.seed(),
                        outcome: format!("count {}", count),
                        detail,
                        heights,
                    },
                )),
                Err(Error::OracleFailure(msg)) => Ok((
                    None,
                    TrialRecord {
                        seed: trng.seed(),
                        outcome: "failed".into(),
                        detail: vec![msg],
                        heights: vec![],
                    },
                )),
                Err(e) => Err(e),
            }
        })
        .collect();
    let records = records.into_iter().collect::<Result<Vec<_>>>()?;
    let values: Vec<Option<(u64, bool)>> = records.iter().map(|(v, _)| *v).collect();
    let (count, _) = mode_of_counts(&values)?;
    Ok(Verdict {
        answer: Answer::Count { count, degenerate_flag: false },
        trials: records.into_iter().map(|(_, r)| r).collect(),
        confidence_note: CONFIDENCE_NOTE.into(),
    })
}

// ---------------------------------------------------------------------------
// GCD via filtering and multiplicity profiles
// ---------------------------------------------------------------------------

/// Monic GCD of univariate polynomials computed through trailing
/// resultants: the quotient of the trailing terms of
/// `res_x(z (y - x) + f, f + u g)` and `res_x(z + f, f + u g)` with respect
/// to z, read off the leading u-coefficients.
pub fn gcd_filtering<B: EngineBase>(f: &DensePoly<B>, g: &DensePoly<B>) -> Result<DensePoly<B>> {
    let base = f.ring.clone();
    if f.is_zero() && g.is_zero() {
        return Err(Error::DegenerateInput("gcd(0, 0)".into()));
    }
    if f.is_zero() {
        return make_monic(&base, g);
    }
    if g.is_zero() {
        return make_monic(&base, f);
    }
    let var = f.sole_variable().or_else(|| g.sole_variable()).unwrap_or(0);
    if f.total_degree() == 0 || g.total_degree() == 0 {
        return Ok(DensePoly::one(base, f.vars.clone()));
    }
    let fc = uni::from_dense(f, var)?;
    let gc = uni::from_dense(g, var)?;
    let (_, ys) = gcd_filtering_coeffs(&base, &fc, &gc)?;
    let out = uni::to_dense(&base, &f.vars, var, &ys);
    make_monic(&base, &out)
}

/// Coefficient-level core of the filtered GCD. Returns (deg_u of the
/// denominator datum, gcd coefficients ascending).
fn gcd_filtering_coeffs<B: EngineBase>(
    base: &B,
    f: &[B::Elem],
    g: &[B::Elem],
) -> Result<(u16, Vec<B::Elem>)> {
    let x_vars: Vec<String> = vec!["__x".into(), "__xh".into()];
    let params: Vec<String> = vec!["__z".into(), "__y".into(), "__u".into()];
    let mut all_vars = x_vars.clone();
    all_vars.extend(params.iter().cloned());
    let opts = EngineOptions::default();
    let pring = ParamRing::new(base.clone(), params.clone());

    // mixed-variable polynomials, x then homogenizer then z, y, u
    let df = f.len() - 1;
    let dg = g.len() - 1;
    let dmax = df.max(dg);
    let mk_a = |with_y: bool| -> Result<DensePoly<B>> {
        // z (y - x) + f  (or z + f), homogenized in x to degree df
        let mut raw: Vec<(ExpVec, B::Elem)> = Vec::new();
        for (k, c) in f.iter().enumerate() {
            let mut e = exp_zero(5);
            e[0] = k as u16;
            e[1] = (df - k) as u16;
            raw.push((e, c.clone()));
        }
        if with_y {
            // z y x_h^{df} - z x x_h^{df-1}
            let mut e = exp_zero(5);
            e[2] = 1;
            e[3] = 1;
            e[1] = df as u16;
            raw.push((e, base.one()));
            let mut e = exp_zero(5);
            e[2] = 1;
            e[0] = 1;
            e[1] = (df - 1) as u16;
            raw.push((e, base.neg(&base.one())));
        } else {
            let mut e = exp_zero(5);
            e[2] = 1;
            e[1] = df as u16;
            raw.push((e, base.one()));
        }
        DensePoly::from_terms(base.clone(), all_vars.clone(), raw)
    };
    let mk_b = || -> Result<DensePoly<B>> {
        // f + u g, homogenized in x to degree dmax
        let mut raw: Vec<(ExpVec, B::Elem)> = Vec::new();
        for (k, c) in f.iter().enumerate() {
            let mut e = exp_zero(5);
            e[0] = k as u16;
            e[1] = (dmax - k) as u16;
            raw.push((e, c.clone()));
        }
        for (k, c) in g.iter().enumerate() {
            let mut e = exp_zero(5);
            e[0] = k as u16;
            e[1] = (dmax - k) as u16;
            e[4] = 1;
            raw.push((e, c.clone()));
        }
        DensePoly::from_terms(base.clone(), all_vars.clone(), raw)
    };

    // numerator datum: Tt_z res(B, A_y); denominator: Tt_z res(B, A)
    let b_poly = mk_b()?;
    let (_, num) = trailing_resultant(base, &x_vars, &params, &[b_poly.clone(), mk_a(true)?], "__z", &opts)?;
    let (_, den) = trailing_resultant(base, &x_vars, &params, &[b_poly, mk_a(false)?], "__z", &opts)?;

    // read off: write num = sum_i a_{1,i}(u) y^i; the gcd coefficient of
    // y^i is lc_u(a_{1,i}) / lc_u(den), nonzero only when deg_u matches
    let yloc = 1usize;
    let uloc = 2usize;
    let du = pring.max_exp(&den, uloc).unwrap_or(0);
    let dc = pring
        .as_constant(&pring.coeff_of(&pring.coeff_of(&den, uloc, du), yloc, 0))
        .ok_or_else(|| Error::OracleFailure("denominator datum malformed".into()))?;
    let dci = base.inv(&dc)?;
    let ymax = pring.max_exp(&num, yloc).unwrap_or(0);
    let mut coeffs: Vec<B::Elem> = Vec::with_capacity(ymax as usize + 1);
    for i in 0..=ymax {
        let ai = pring.coeff_of(&num, yloc, i);
        let top = pring.coeff_of(&ai, uloc, du);
        let c = pring
            .as_constant(&top)
            .ok_or_else(|| Error::OracleFailure("numerator datum malformed".into()))?;
        coeffs.push(base.mul(&c, &dci));
    }
    let mut coeffs = coeffs;
    uni::trim(base, &mut coeffs);
    if coeffs.is_empty() {
        // the data carry no y at all: the gcd is a constant
        coeffs.push(base.one());
    }
    Ok((du, coeffs))
}

/// Degrees of the parts of `f` of multiplicity exceeding k, for every k,
/// and the distinct-root count they determine.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplicityProfile {
    /// degrees[k] = deg of the multiplicity-(> k) part, k = 0..=deg f.
    pub degrees: Vec<u32>,
    pub distinct_count: u64,
}

/// Compute the multiplicity profile through trailing resultants against
/// weighted sums of Hasse derivatives.
pub fn multiplicity_profile<B: EngineBase>(f: &DensePoly<B>) -> Result<MultiplicityProfile> {
    if f.is_zero() {
        return Err(Error::DegenerateInput("multiplicity profile of zero".into()));
    }
    let base = f.ring.clone();
    let var = f.sole_variable().unwrap_or(0);
    let fc = uni::from_dense(f, var)?;
    let d = fc.len() - 1;
    let mut degrees = vec![d as u32];
    if d == 0 {
        return Ok(MultiplicityProfile { degrees, distinct_count: 0 });
    }

    let x_vars: Vec<String> = vec!["__x".into(), "__xh".into()];
    let params: Vec<String> = vec!["__z".into(), "__y".into(), "__v".into()];
    let mut all_vars = x_vars.clone();
    all_vars.extend(params.iter().cloned());
    let opts = EngineOptions::default();
    let pring = ParamRing::new(base.clone(), params.clone());
    let yloc = 1usize;

    // Hasse derivatives of f
    let fd = uni::to_dense(&base, &["__x".to_string()], 0, &fc);
    let mut hasse: Vec<Vec<B::Elem>> = Vec::with_capacity(d);
    for i in 1..=d {
        let h = fd.hasse_derivative("__x", i as u32)?;
        hasse.push(uni::from_dense(&h, 0)?);
    }

    for k in 1..=d {
        // c(x) = sum_{i=1..k} v^{i-1} Hasse^i(f); a = z (y - x) + c
        // paired against f itself
        let mut raw: Vec<(ExpVec, B::Elem)> = Vec::new();
        let dc = hasse[..k]
            .iter()
            .map(|h| h.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
            .max(1);
        for (i, h) in hasse[..k].iter().enumerate() {
            for (kk, c) in h.iter().enumerate() {
                let mut e = exp_zero(5);
                e[0] = kk as u16;
                e[1] = (dc - kk) as u16;
                e[4] = i as u16;
                raw.push((e, c.clone()));
            }
        }
        // z (y x_h^{dc} - x x_h^{dc-1})
        let mut e = exp_zero(5);
        e[2] = 1;
        e[3] = 1;
        e[1] = dc as u16;
        raw.push((e, base.one()));
        let mut e = exp_zero(5);
        e[2] = 1;
        e[0] = 1;
        e[1] = (dc - 1) as u16;
        raw.push((e, base.neg(&base.one())));
        let a_poly = DensePoly::from_terms(base.clone(), all_vars.clone(), raw)?;
        // f homogenized
        let mut raw: Vec<(ExpVec, B::Elem)> = Vec::new();
        for (kk, c) in fc.iter().enumerate() {
            let mut e = exp_zero(5);
            e[0] = kk as u16;
            e[1] = (d - kk) as u16;
            raw.push((e, c.clone()));
        }
        let f_poly = DensePoly::from_terms(base.clone(), all_vars.clone(), raw)?;

        let (_, tt) = trailing_resultant(&base, &x_vars, &params, &[f_poly, a_poly], "__z", &opts)?;
        let ydeg = pring.max_exp(&tt, yloc).unwrap_or(0) as u32;
        degrees.push(ydeg);
        if ydeg == 0 {
            break;
        }
    }
    degrees.resize(d + 1, 0);

    // distinct count: sum over k of (deg_{>k-1} - deg_{>k}) / k
    let mut count: u64 = 0;
    for k in 1..=d {
        let diff = degrees[k - 1] - degrees[k];
        if diff == 0 {
            continue;
        }
        if diff as usize % k != 0 {
            return Err(Error::OracleFailure(format!(
                "multiplicity ladder step {} not divisible by {}",
                diff, k
            )));
        }
        count += (diff as usize / k) as u64;
    }
    Ok(MultiplicityProfile { degrees, distinct_count: count })
}

/// Number of distinct roots of `f` in the algebraic closure.
pub fn count_distinct_roots<B: EngineBase>(f: &DensePoly<B>) -> Result<u64> {
    Ok(multiplicity_profile(f)?.distinct_count)
}

// ---------------------------------------------------------------------------
// Applications
// ---------------------------------------------------------------------------

/// Radical membership: g vanishes on the variety of the generators iff the
/// auxiliary system with `1 - z g` is unsatisfiable.
pub fn radical_membership<B: EngineBase>(
    base: &B,
    g: &DensePoly<B>,
    generators: &[DensePoly<B>],
    opts: &ReductionOptions,
) -> Result<Verdict> {
    if generators.is_empty() {
        return Err(Error::InvalidInput("no ideal generators".into()));
    }
    let mut fresh = "__rab".to_string();
    while generators[0].vars.contains(&fresh) {
        fresh.push('_');
    }
    let mut vars = generators[0].vars.clone();
    vars.push(fresh.clone());
    let mut sys: Vec<DensePoly<B>> = generators
        .iter()
        .map(|f| f.extend_vars(&vars))
        .collect::<Result<Vec<_>>>()?;
    // 1 - z g
    let ge = g.extend_vars(&vars)?;
    let z = DensePoly::var(base.clone(), vars.clone(), &fresh)?;
    let one = DensePoly::one(base.clone(), vars.clone());
    sys.push(one.sub(&z.mul(&ge)?)?);
    let inner = hn_decide(base, &sys, opts)?;
    let member = inner.answer == Answer::Unsatisfiable;
    Ok(Verdict {
        answer: Answer::Member(member),
        trials: inner.trials,
        confidence_note: inner.confidence_note,
    })
}

pub fn dimension_pool_needed(n: u64, d: u64) -> u64 {
    100u64
        .saturating_mul(n)
        .saturating_mul(n)
        .saturating_mul(d.saturating_pow(n as u32))
}

/// Estimate the dimension of the variety (with -1 for empty) by slicing
/// with random affine hyperplanes, and compare against the candidate.
/// Within a trial each sliced system is decided by a single randomized
/// round; the outer mode supplies the amplification.
pub fn dimension<B: EngineBase>(
    base: &B,
    sys: &[DensePoly<B>],
    candidate: i64,
    opts: &ReductionOptions,
) -> Result<Verdict> {
    let fs = match preprocess_system(base, sys)? {
        Ok(fs) => fs,
        Err(Answer::Unsatisfiable) => {
            return Ok(Verdict {
                answer: Answer::Dimension { computed: -1, candidate, equals: candidate == -1 },
                trials: vec![],
                confidence_note: "degenerate input decided directly".into(),
            })
        }
        Err(_) => {
            let n = sys[0].vars.len() as i64;
            return Ok(Verdict {
                answer: Answer::Dimension { computed: n, candidate, equals: candidate == n },
                trials: vec![],
                confidence_note: "zero system spans the whole space".into(),
            });
        }
    };
    let n = fs[0].vars.len();
    let d = (max_total_degree(&fs) as u64).max(1);
    let needed = dimension_pool_needed(n as u64, d);
    check_field_size(base, needed)?;
    let vars = fs[0].vars.clone();
    let root = CounterRng::new(opts.seed);
    let single = ReductionOptions { seed: 0, trials: 1, engine: opts.engine.clone() };

    let records: Vec<Result<(Option<(u64, bool)>, TrialRecord)>> = (0..opts.trials)
        .into_par_iter()
        .map(|t| {
            let trng = root.child(t as u64);
            let mut line_rng = trng.child(10);
            // the base system must be satisfiable at all
            let inner =
                hn_decide(base, &fs, &ReductionOptions { seed: trng.child(11).seed(), ..single.clone() })?;
            let mut dim: i64 = -1;
            let mut detail = vec![format!(
                "unsliced system: {}",
                if inner.answer == Answer::Satisfiable { "satisfiable" } else { "unsatisfiable" }
            )];
            if inner.answer == Answer::Satisfiable {
                dim = 0;
                let mut sliced = fs.clone();
                for k in 1..=n {
                    let mut raw: Vec<(ExpVec, B::Elem)> = Vec::with_capacity(n + 1);
                    raw.push((exp_zero(n), base.sample_b(&mut line_rng, needed)));
                    for l in 0..n {
                        let mut e = exp_zero(n);
                        e[l] = 1;
                        raw.push((e, base.sample_b(&mut line_rng, needed)));
                    }
                    sliced.push(DensePoly::from_terms(base.clone(), vars.clone(), raw)?);
                    let v = hn_decide(
                        base,
                        &sliced,
                        &ReductionOptions { seed: trng.child(12 + k as u64).seed(), ..single.clone() },
                    )?;
                    let sat = v.answer == Answer::Satisfiable;
                    detail.push(format!("{} random hyperplanes: {}", k, if sat { "satisfiable" } else { "unsatisfiable" }));
                    if sat {
                        dim = k as i64;
                    } else {
                        break;
                    }
                }
            }
            Ok((
                Some(((dim + 1) as u64, false)),
                TrialRecord {
                    seed: trng.seed(),
                    outcome: format!("dimension {}", dim),
                    detail,
                    heights: vec![],
                },
            ))
        })
        .collect();
    let records = records.into_iter().collect::<Result<Vec<_>>>()?;
    let values: Vec<Option<(u64, bool)>> = records.iter().map(|(v, _)| *v).collect();
    let (enc, _) = mode_of_counts(&values)?;
    let computed = enc as i64 - 1;
    Ok(Verdict {
        answer: Answer::Dimension { computed, candidate, equals: computed == candidate },
        trials: records.into_iter().map(|(_, r)| r).collect(),
        confidence_note: CONFIDENCE_NOTE.into(),
    })
}

// ---------------------------------------------------------------------------
// Tensor rank
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<C> {
    pub dims: Vec<u32>,
    /// Entries in lexicographic index order, last index fastest.
    pub entries: Vec<C>,
}

impl<C> Tensor<C> {
    pub fn total_len(dims: &[u32]) -> usize {
        dims.iter().map(|&d| d as usize).product()
    }
}

/// Build the rank-at-most-r decomposition system: one equation per entry,
/// `sum_{p=1}^{r} prod_i x_{i,j_i,p} = T_{j_1..j_k}` in variables
/// `x_{i,j,p}`.
fn rank_system<B: EngineBase>(
    base: &B,
    tensor: &Tensor<B::Elem>,
    r: u32,
) -> Result<Vec<DensePoly<B>>> {
    let k = tensor.dims.len();
    let mut vars = Vec::new();
    for i in 0..k {
        for jj in 0..tensor.dims[i] {
            for p in 0..r {
                vars.push(format!("x_{}_{}_{}", i + 1, jj + 1, p + 1));
            }
        }
    }
    let var_index = |i: usize, jj: u32, p: u32| -> usize {
        let mut idx = 0usize;
        for ii in 0..i {
            idx += (tensor.dims[ii] * r) as usize;
        }
        idx + (jj * r + p) as usize
    };
    let nv = vars.len();
    let mut sys = Vec::with_capacity(tensor.entries.len());
    let mut index = vec![0u32; k];
    for entry in &tensor.entries {
        let mut raw: Vec<(ExpVec, B::Elem)> = Vec::new();
        for p in 0..r {
            let mut e = exp_zero(nv);
            for i in 0..k {
                e[var_index(i, index[i], p)] += 1;
            }
            raw.push((e, base.one()));
        }
        raw.push((exp_zero(nv), base.neg(entry)));
        sys.push(DensePoly::from_terms(base.clone(), vars.clone(), raw)?);
        // advance the index odometer, last coordinate fastest
        for i in (0..k).rev() {
            index[i] += 1;
            if index[i] < tensor.dims[i] {
                break;
            }
            index[i] = 0;
        }
    }
    Ok(sys)
}

fn rank_at_most<B: EngineBase>(
    base: &B,
    tensor: &Tensor<B::Elem>,
    r: u32,
    opts: &ReductionOptions,
) -> Result<(bool, Vec<TrialRecord>)> {
    if r == 0 {
        let zero = tensor.entries.iter().all(|c| base.is_zero(c));
        return Ok((
            zero,
            vec![TrialRecord {
                seed: opts.seed,
                outcome: format!("rank <= 0 is {}", zero),
                detail: vec!["empty decomposition: the tensor must be zero".into()],
                heights: vec![],
            }],
        ));
    }
    let sys = rank_system(base, tensor, r)?;
    let verdict = hn_decide(base, &sys, opts)?;
    Ok((verdict.answer == Answer::Satisfiable, verdict.trials))
}

/// Decide whether the tensor has rank exactly `r` over the algebraic
/// closure: rank <= r must be satisfiable and rank <= r-1 must not.
pub fn tensor_rank<B: EngineBase>(
    base: &B,
    tensor: &Tensor<B::Elem>,
    r: u32,
    opts: &ReductionOptions,
) -> Result<Verdict> {
    if tensor.entries.len() != Tensor::<B::Elem>::total_len(&tensor.dims) {
        return Err(Error::InvalidInput("tensor entry count disagrees with its shape".into()));
    }
    let max_rank: u64 = tensor.dims.iter().map(|&d| d as u64).product();
    if r as u64 > max_rank {
        return Err(Error::InvalidInput(format!(
            "candidate rank {} exceeds the trivial bound {}",
            r, max_rank
        )));
    }
    let (le_r, mut trials) = rank_at_most(base, tensor, r, opts)?;
    let is_exact = if !le_r {
        false
    } else if r == 0 {
        true
    } else {
        let (le_rm1, t2) = rank_at_most(
            base,
            tensor,
            r - 1,
            &ReductionOptions { seed: opts.seed ^ 0x7454, ..opts.clone() },
        )?;
        trials.extend(t2);
        !le_rm1
    };
    Ok(Verdict {
        answer: Answer::Rank { candidate: r, is_exact },
        trials,
        confidence_note: CONFIDENCE_NOTE.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::euclid_gcd;
    use crate::poly::poly_from_pairs;

    #[test]
    fn gcd_filtering_examples() {
        let q = Rationals;
        // gcd(x^2 - 1, x - 1) = x - 1
        let f = poly_from_pairs(&q, &["x"], &[(1, &[2]), (-1, &[0])]);
        let g = poly_from_pairs(&q, &["x"], &[(1, &[1]), (-1, &[0])]);
        assert_eq!(gcd_filtering(&f, &g).unwrap(), g);
        // gcd((x-1)^2 (x-2), (x-1)(x-3)) = x - 1
        let a = poly_from_pairs(&q, &["x"], &[(1, &[1]), (-1, &[0])])
            .pow(2)
            .unwrap()
            .mul(&poly_from_pairs(&q, &["x"], &[(1, &[1]), (-2, &[0])]))
            .unwrap();
        let b = poly_from_pairs(&q, &["x"], &[(1, &[1]), (-1, &[0])])
            .mul(&poly_from_pairs(&q, &["x"], &[(1, &[1]), (-3, &[0])]))
            .unwrap();
        assert_eq!(gcd_filtering(&a, &b).unwrap(), g);
        // gcd(f, f) = monic f
        let f2 = poly_from_pairs(&q, &["x"], &[(2, &[2]), (-2, &[0])]);
        let want = poly_from_pairs(&q, &["x"], &[(1, &[2]), (-1, &[0])]);
        assert_eq!(gcd_filtering(&f2, &f2).unwrap(), want);
        // degenerate inputs
        let z = DensePoly::zero(q.clone(), vec!["x".into()]);
        assert!(gcd_filtering(&z, &z).is_err());
        assert_eq!(gcd_filtering(&f2, &z).unwrap(), want);
    }

    #[test]
    fn gcd_filtering_matches_euclid_smoke() {
        let q = Rationals;
        let fp = PrimeField::new(10007).unwrap();
        let mut rng = CounterRng::new(321);
        for trial in 0..12 {
            if trial % 2 == 0 {
                let d = poly_from_pairs(&q, &["x"], &[(1, &[1]), (rng.below(7) as i64 - 3, &[0])]);
                let a = poly_from_pairs(&q, &["x"], &[(1, &[2]), (rng.below(7) as i64 - 3, &[1]), (rng.below(7) as i64 - 3, &[0])]);
                let b = poly_from_pairs(&q, &["x"], &[(1, &[1]), (rng.below(7) as i64 - 3, &[0])]);
                let f = d.mul(&a).unwrap();
                let g = d.mul(&b).unwrap();
                assert_eq!(gcd_filtering(&f, &g).unwrap(), euclid_gcd(&f, &g).unwrap(), "t{}", trial);
            } else {
                let mk = |rng: &mut CounterRng, deg: u16| {
                    let pairs: Vec<(i64, Vec<u16>)> =
                        (0..=deg).map(|k| (rng.below(10007) as i64, vec![k])).collect();
                    let refs: Vec<(i64, &[u16])> =
                        pairs.iter().map(|(c, e)| (*c, e.as_slice())).collect();
                    poly_from_pairs(&fp, &["x"], &refs)
                };
                let f = mk(&mut rng, 4);
                let g = mk(&mut rng, 3);
                if f.is_zero() || g.is_zero() {
                    continue;
                }
                assert_eq!(gcd_filtering(&f, &g).unwrap(), euclid_gcd(&f, &g).unwrap(), "t{}", trial);
            }
        }
    }

    #[test]
    fn multiplicity_profile_examples() {
        let q = Rationals;
        // (x-1)^2 (x-2): degrees (3, 2, 0, 0), two distinct roots
        let f = poly_from_pairs(&q, &["x"], &[(1, &[1]), (-1, &[0])])
            .pow(2)
            .unwrap()
            .mul(&poly_from_pairs(&q, &["x"], &[(1, &[1]), (-2, &[0])]))
            .unwrap();
        let prof = multiplicity_profile(&f).unwrap();
        assert_eq!(prof.degrees, vec![3, 2, 0, 0]);
        assert_eq!(prof.distinct_count, 2);
        // squarefree: degrees (d, 0, ...), distinct = d
        let g = poly_from_pairs(&q, &["x"], &[(1, &[2]), (-3, &[1]), (2, &[0])]); // (x-1)(x-2)
        let prof = multiplicity_profile(&g).unwrap();
        assert_eq!(prof.degrees, vec![2, 0, 0]);
        assert_eq!(prof.distinct_count, 2);
        // (x-1)^3: degrees (3, 3, 3, 0), one distinct root
        let h = poly_from_pairs(&q, &["x"], &[(1, &[1]), (-1, &[0])]).pow(3).unwrap();
        let prof = multiplicity_profile(&h).unwrap();
        assert_eq!(prof.degrees, vec![3, 3, 3, 0]);
        assert_eq!(prof.distinct_count, 1);
        // linear
        let l = poly_from_pairs(&q, &["x"], &[(5, &[1]), (3, &[0])]);
        assert_eq!(count_distinct_roots(&l).unwrap(), 1);
        // x^p - 1 over F_p has a single distinct root
        let p = 5u64;
        let f5 = PrimeField::new(p).unwrap();
        let xp = poly_from_pairs(&f5, &["x"], &[(1, &[5]), (-1, &[0])]);
        assert_eq!(count_distinct_roots(&xp).unwrap(), 1);
    }

    #[test]
    fn hn_decide_examples() {
        let q = Rationals;
        let opts = ReductionOptions { trials: 7, ..Default::default() };
        // {x + y - 1, x + y - 2} is unsatisfiable
        let f1 = poly_from_pairs(&q, &["x", "y"], &[(1, &[1, 0]), (1, &[0, 1]), (-1, &[0, 0])]);
        let f2 = poly_from_pairs(&q, &["x", "y"], &[(1, &[1, 0]), (1, &[0, 1]), (-2, &[0, 0])]);
        let v = hn_decide(&q, &[f1, f2], &opts).unwrap();
        assert_eq!(v.answer, Answer::Unsatisfiable);
        // {x^2 - 1} is satisfiable
        let f = poly_from_pairs(&q, &["x"], &[(1, &[2]), (-1, &[0])]);
        let v = hn_decide(&q, &[f], &opts).unwrap();
        assert_eq!(v.answer, Answer::Satisfiable);
        // {x - y, x + y, x - 1} is unsatisfiable
        let a = poly_from_pairs(&q, &["x", "y"], &[(1, &[1, 0]), (-1, &[0, 1])]);
        let b = poly_from_pairs(&q, &["x", "y"], &[(1, &[1, 0]), (1, &[0, 1])]);
        let c = poly_from_pairs(&q, &["x", "y"], &[(1, &[1, 0]), (-1, &[0, 0])]);
        let v = hn_decide(&q, &[a, b, c], &opts).unwrap();
        assert_eq!(v.answer, Answer::Unsatisfiable);
    }

    #[test]
    fn hn_count_examples() {
        let q = Rationals;
        let opts = ReductionOptions { trials: 7, ..Default::default() };
        // {x^2 - 1} has two points
        let f = poly_from_pairs(&q, &["x"], &[(1, &[2]), (-1, &[0])]);
        let v = hn_count(&q, &[f], &opts).unwrap();
        assert_eq!(v.answer, Answer::Count { count: 2, degenerate_flag: false });
        // {x^2 - 1, y^2 - 1} has four
        let f = poly_from_pairs(&q, &["x", "y"], &[(1, &[2, 0]), (-1, &[0, 0])]);
        let g = poly_from_pairs(&q, &["x", "y"], &[(1, &[0, 2]), (-1, &[0, 0])]);
        let v = hn_count(&q, &[f, g], &opts).unwrap();
        assert_eq!(v.answer, Answer::Count { count: 4, degenerate_flag: false });
        // {x^2, y} has one (with multiplicity)
        let f = poly_from_pairs(&q, &["x", "y"], &[(1, &[2, 0])]);
        let g = poly_from_pairs(&q, &["x", "y"], &[(1, &[0, 1])]);
        let v = hn_count(&q, &[f, g], &opts).unwrap();
        assert_eq!(v.answer, Answer::Count { count: 1, degenerate_flag: false });
    }

    #[test]
    fn projective_count_examples() {
        let q = Rationals;
        let opts = ReductionOptions { trials: 7, ..Default::default() };
        // {x0 x1} in the projective line: two points
        let f = poly_from_pairs(&q, &["x0", "x1"], &[(1, &[1, 1])]);
        let v = projective_count(&q, &[f], &opts).unwrap();
        assert_eq!(v.answer, Answer::Count { count: 2, degenerate_flag: false });
        // {x0^2}: one point
        let f = poly_from_pairs(&q, &["x0", "x1"], &[(1, &[2, 0])]);
        let v = projective_count(&q, &[f], &opts).unwrap();
        assert_eq!(v.answer, Answer::Count { count: 1, degenerate_flag: false });
        // inhomogeneous input rejected
        let f = poly_from_pairs(&q, &["x0", "x1"], &[(1, &[2, 0]), (1, &[0, 1])]);
        assert!(projective_count(&q, &[f], &opts).is_err());
    }

    #[test]
    fn radical_membership_examples() {
        let q = Rationals;
        let opts = ReductionOptions { trials: 7, ..Default::default() };
        // x in rad(x^2)
        let g = poly_from_pairs(&q, &["x"], &[(1, &[1])]);
        let x2 = poly_from_pairs(&q, &["x"], &[(1, &[2])]);
        let v = radical_membership(&q, &g, &[x2.clone()], &opts).unwrap();
        assert_eq!(v.answer, Answer::Member(true));
        // x + 1 not in rad(x^2)
        let g1 = poly_from_pairs(&q, &["x"], &[(1, &[1]), (1, &[0])]);
        let v = radical_membership(&q, &g1, &[x2], &opts).unwrap();
        assert_eq!(v.answer, Answer::Member(false));
        // 1 in rad(x, x - 1)
        let one = DensePoly::one(q.clone(), vec!["x".into()]);
        let a = poly_from_pairs(&q, &["x"], &[(1, &[1])]);
        let b = poly_from_pairs(&q, &["x"], &[(1, &[1]), (-1, &[0])]);
        let v = radical_membership(&q, &one, &[a, b], &opts).unwrap();
        assert_eq!(v.answer, Answer::Member(true));
    }

    #[test]
    fn dimension_examples() {
        let q = Rationals;
        let opts = ReductionOptions { trials: 7, ..Default::default() };
        // V(x) in the affine plane is a line
        let f = poly_from_pairs(&q, &["x", "y"], &[(1, &[1, 0])]);
        let v = dimension(&q, &[f.clone()], 1, &opts).unwrap();
        assert_eq!(v.answer, Answer::Dimension { computed: 1, candidate: 1, equals: true });
        // V(x, y) is a point
        let g = poly_from_pairs(&q, &["x", "y"], &[(1, &[0, 1])]);
        let v = dimension(&q, &[f.clone(), g], 0, &opts).unwrap();
        assert_eq!(v.answer, Answer::Dimension { computed: 0, candidate: 0, equals: true });
        // V(x y) is a union of two lines
        let h = poly_from_pairs(&q, &["x", "y"], &[(1, &[1, 1])]);
        let v = dimension(&q, &[h], 1, &opts).unwrap();
        assert_eq!(v.answer, Answer::Dimension { computed: 1, candidate: 1, equals: true });
    }

    #[test]
    fn tensor_rank_trivial_examples() {
        let q = Rationals;
        let opts = ReductionOptions { trials: 5, ..Default::default() };
        // the zero tensor has rank exactly 0
        let t = Tensor { dims: vec![2, 2], entries: vec![q.zero(); 4] };
        let v = tensor_rank(&q, &t, 0, &opts).unwrap();
        assert_eq!(v.answer, Answer::Rank { candidate: 0, is_exact: true });
        // a 1x1 tensor [5] has rank exactly 1
        let t = Tensor { dims: vec![1], entries: vec![q.from_i64(5)] };
        let v = tensor_rank(&q, &t, 1, &opts).unwrap();
        assert_eq!(v.answer, Answer::Rank { candidate: 1, is_exact: true });
        // candidate above the trivial bound is rejected
        let t = Tensor { dims: vec![1], entries: vec![q.from_i64(5)] };
        assert!(tensor_rank(&q, &t, 2, &opts).is_err());
    }
}
