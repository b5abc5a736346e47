//! State-sum evaluation of the bracket and coefficient extraction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{DiagramError, SurfaceDiagram};
use crate::homology::{integer_rank, HomologyModel};
use crate::polynomial::{delta_pow, Specialization, TriLaurent};
use crate::states::{
    loop_classes, resolve_state, state_invariants, StateAssign, StateError, StateEvaluator,
    StateKey, StateSpace, DEFAULT_MAX_CROSSINGS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BracketError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("slice at A^{degree} has a term Z^{z} W^{w} of coefficient {coefficient} outside the expected shape")]
    SliceShapeViolation {
        degree: i64,
        z: u32,
        w: u32,
        coefficient: String,
    },
    #[error("no term at the expected extreme degree A^{0}")]
    MissingExtremeTerm(i64),
    #[error("coefficient {0} does not fit in 64 bits")]
    CoefficientOverflow(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BracketOptions {
    /// 0 means all available cores.
    pub workers: usize,
    pub max_crossings: usize,
}

impl Default for BracketOptions {
    fn default() -> Self {
        BracketOptions {
            workers: 0,
            max_crossings: DEFAULT_MAX_CROSSINGS,
        }
    }
}

impl BracketOptions {
    pub fn sequential() -> Self {
        BracketOptions {
            workers: 1,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketResult {
    pub polynomial: TriLaurent,
    pub c: usize,
    pub v_a: usize,
    pub v_b: usize,
    pub a_max: i64,
    pub a_min: i64,
}

impl BracketResult {
    /// Unique extreme terms (−1)^{v_A} A^{a_max} and (−1)^{v_B} A^{a_min}.
    pub fn extreme_terms_hold(&self) -> bool {
        let top = self.polynomial.coefficient_slice(self.a_max);
        let bottom = self.polynomial.coefficient_slice(self.a_min);
        self.polynomial.max_a_degree() == Some(self.a_max)
            && self.polynomial.min_a_degree() == Some(self.a_min)
            && top.len() == 1
            && top.get(&(0, 0)) == Some(&sign_pow(self.v_a))
            && bottom.len() == 1
            && bottom.get(&(0, 0)) == Some(&sign_pow(self.v_b))
    }
}

fn sign_pow(n: usize) -> BigInt {
    BigInt::from(if n.is_multiple_of(2) { 1 } else { -1 })
}

fn key_polynomial(key: &StateKey, count: u64, deltas: &mut Vec<TriLaurent>) -> TriLaurent {
    while deltas.len() <= key.k as usize {
        deltas.push(delta_pow(deltas.len() as u32));
    }
    deltas[key.k as usize].mul_term(key.a, key.r, key.cbar, count)
}

/// A^{α−β} (−A²−A⁻²)^k Z^r W^c̄ for one state.
pub fn state_contribution(
    d: &SurfaceDiagram,
    model: &HomologyModel,
    s: StateAssign,
) -> Result<TriLaurent, StateError> {
    let loops = resolve_state(d, s);
    let inv = state_invariants(model, d, &loops, s)?;
    Ok(delta_pow(inv.k as u32).mul_term(
        inv.alpha as i64 - inv.beta as i64,
        inv.r as u32,
        inv.cbar as u32,
        1,
    ))
}

type Histogram<K> = BTreeMap<K, u64>;

fn merge<K: Ord>(mut a: Histogram<K>, b: Histogram<K>) -> Histogram<K> {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Runs evaluators built by `make` over disjoint mask ranges on `workers`
/// threads and merges the per-range histograms.
fn histogram<K, F, M>(
    space: StateSpace,
    workers: usize,
    make: M,
) -> Result<Histogram<K>, StateError>
where
    K: Ord + Send,
    M: Fn() -> F + Sync,
    F: FnMut(u64) -> Result<K, StateError>,
{
    let run_range = |range: std::ops::Range<u64>| -> Result<Histogram<K>, StateError> {
        let mut eval = make();
        let mut h = Histogram::new();
        for mask in range {
            let key = eval(mask)?;
            *h.entry(key).or_insert(0) += 1;
        }
        Ok(h)
    };
    if workers == 1 {
        return run_range(0..space.len());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let parts = pool.current_num_threads() * 8;
    pool.install(|| {
        space
            .ranges(parts)
            .into_par_iter()
            .map(run_range)
            .try_reduce(Histogram::new, |a, b| Ok(merge(a, b)))
    })
}

fn extreme_loop_counts(d: &SurfaceDiagram) -> (usize, usize) {
    let c = d.crossing_count();
    (
        resolve_state(d, StateAssign::all_a(c)).len(),
        resolve_state(d, StateAssign::all_b(c)).len(),
    )
}

/// Sum of all state contributions.
pub fn bracket(
    d: &SurfaceDiagram,
    model: &HomologyModel,
    opts: BracketOptions,
) -> Result<BracketResult, StateError> {
    let c = d.crossing_count();
    let space = StateSpace::new(c, opts.max_crossings)?;
    let workers = effective_workers(opts.workers);
    let hist = histogram(space, workers, || {
        let mut ev = StateEvaluator::new(d, model);
        move |mask| ev.evaluate(mask)
    })?;
    let mut deltas = Vec::new();
    let mut polynomial = TriLaurent::zero();
    for (key, count) in &hist {
        polynomial.add_assign(&key_polynomial(key, *count, &mut deltas));
    }
    let (v_a, v_b) = extreme_loop_counts(d);
    Ok(BracketResult {
        polynomial,
        c,
        v_a,
        v_b,
        a_max: (c + 2 * v_a) as i64,
        a_min: -((c + 2 * v_b) as i64),
    })
}

fn effective_workers(w: usize) -> usize {
    if w == 0 {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    } else {
        w
    }
}

/// The bracket without the W variable, evaluated from traced loops and exact
/// integer ranks (no parity requirement).
pub fn homological_bracket(
    d: &SurfaceDiagram,
    model: &HomologyModel,
    opts: BracketOptions,
) -> Result<TriLaurent, StateError> {
    let c = d.crossing_count();
    let space = StateSpace::new(c, opts.max_crossings)?;
    let workers = effective_workers(opts.workers);
    let hist = histogram(space, workers, || {
        move |mask| {
            let s = StateAssign { mask, crossings: c };
            let loops = resolve_state(d, s);
            let r = integer_rank(&loop_classes(model, d, &loops));
            Ok((s.alpha() as i64 - s.beta() as i64, loops.len() - r, r))
        }
    })?;
    let mut out = TriLaurent::zero();
    for (&(a, k, r), &count) in &hist {
        out.add_assign(&delta_pow(k as u32).mul_term(a, r as u32, 0, count));
    }
    Ok(out)
}

/// (−A³)^w times the W → 1 specialization.
pub fn jones_normalized(result: &BracketResult, writhe: i64) -> TriLaurent {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    result
        .polynomial
        .specialize(Specialization {
            z_to_one: false,
            w_to_one: true,
        })
        .mul_term(3 * writhe, 0, 0, sign)
}

/// Coefficient data read from the three outermost slices on each side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientReport {
    /// α'₍₁₎, …, α'₍N₎.
    pub alpha1_series: Vec<i64>,
    pub beta1_series: Vec<i64>,
    pub alpha2_0: i64,
    pub alpha2_2: i64,
    pub beta2_0: i64,
    pub beta2_2: i64,
    pub star: i64,
}

impl CoefficientReport {
    pub fn new(
        alpha1_series: Vec<i64>,
        beta1_series: Vec<i64>,
        (alpha2_0, alpha2_2): (i64, i64),
        (beta2_0, beta2_2): (i64, i64),
    ) -> Self {
        let a1 = alpha1_series.first().copied().unwrap_or(0);
        let b1 = beta1_series.first().copied().unwrap_or(0);
        CoefficientReport {
            star: a1 + b1 - alpha2_0 - beta2_0 + 2,
            alpha1_series,
            beta1_series,
            alpha2_0,
            alpha2_2,
            beta2_0,
            beta2_2,
        }
    }

    pub fn alpha1(&self) -> i64 {
        self.alpha1_series.first().copied().unwrap_or(0)
    }

    pub fn beta1(&self) -> i64 {
        self.beta1_series.first().copied().unwrap_or(0)
    }

    /// Comparison on the data both computation paths determine: the first
    /// entries of the series and the third-slice coefficients.
    pub fn agrees_with(&self, other: &CoefficientReport) -> bool {
        self.alpha1() == other.alpha1()
            && self.beta1() == other.beta1()
            && self.alpha2_0 == other.alpha2_0
            && self.alpha2_2 == other.alpha2_2
            && self.beta2_0 == other.beta2_0
            && self.beta2_2 == other.beta2_2
            && self.star == other.star
    }
}

fn small(c: &BigInt) -> Result<i64, BracketError> {
    c.to_i64()
        .ok_or_else(|| BracketError::CoefficientOverflow(c.to_string()))
}

fn violation(degree: i64, (z, w): (u32, u32), c: &BigInt) -> BracketError {
    BracketError::SliceShapeViolation {
        degree,
        z,
        w,
        coefficient: c.to_string(),
    }
}

/// Reads one side. `step` is −2 from the top and +2 from the bottom.
fn side(
    p: &TriLaurent,
    extreme: i64,
    step: i64,
    loops: usize,
) -> Result<(Vec<i64>, (i64, i64)), BracketError> {
    let sign = sign_pow(loops);
    let top = p.coefficient_slice(extreme);
    for (&zw, c) in &top {
        if zw != (0, 0) || *c != sign {
            return Err(violation(extreme, zw, c));
        }
    }
    if top.is_empty() {
        return Err(BracketError::MissingExtremeTerm(extreme));
    }
    let second_degree = extreme + step;
    let mut series = Vec::new();
    for (&(z, w), c) in &p.coefficient_slice(second_degree) {
        if z != 1 || w == 0 {
            return Err(violation(second_degree, (z, w), c));
        }
        let i = w as usize;
        if series.len() < i {
            series.resize(i, 0);
        }
        series[i - 1] = small(&(c * &sign))?;
    }
    let third_degree = extreme + 2 * step;
    let (mut c0, mut c2) = (0, 0);
    for (&zw, c) in &p.coefficient_slice(third_degree) {
        match zw {
            (0, 0) => c0 = small(&(c * &sign))?,
            (2, 0) => c2 = small(&(c * &sign))?,
            _ => return Err(violation(third_degree, zw, c)),
        }
    }
    Ok((series, (c0, c2)))
}

pub fn extract_coefficients(result: &BracketResult) -> Result<CoefficientReport, BracketError> {
    let (alpha, a2) = side(&result.polynomial, result.a_max, -2, result.v_a)?;
    let (beta, b2) = side(&result.polynomial, result.a_min, 2, result.v_b)?;
    Ok(CoefficientReport::new(alpha, beta, a2, b2))
}
