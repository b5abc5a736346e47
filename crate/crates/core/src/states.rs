//! Kauffman states, their loops and homological invariants.

use std::ops::Range;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{crossing_of, SurfaceDiagram};
use crate::homology::{integer_rank, HomologyClass, HomologyModel, OneCycle};

/// Largest crossing count enumerated without an explicit override.
pub const DEFAULT_MAX_CROSSINGS: usize = 24;
/// Masks are `u64`, so no override can go past this.
pub const HARD_MAX_CROSSINGS: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    #[error(
        "state {mask:#x} has homological rank 1 with {essential} essential loops; \
         the diagram is not checkerboard colourable"
    )]
    ParityViolation { mask: u64, essential: usize },
    #[error("{crossings} crossings exceed the state-count guard of {limit}")]
    GuardExceeded { crossings: usize, limit: usize },
}

/// Resolution choice per crossing; bit `x` set means crossing `x` is B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateAssign {
    pub mask: u64,
    pub crossings: usize,
}

impl StateAssign {
    pub fn all_a(crossings: usize) -> Self {
        StateAssign { mask: 0, crossings }
    }

    pub fn all_b(crossings: usize) -> Self {
        StateAssign {
            mask: full_mask(crossings),
            crossings,
        }
    }

    pub fn is_b(&self, x: usize) -> bool {
        self.mask >> x & 1 == 1
    }

    pub fn alpha(&self) -> usize {
        self.crossings - self.beta()
    }

    pub fn beta(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn flipped(&self, x: usize) -> Self {
        StateAssign {
            mask: self.mask ^ (1 << x),
            crossings: self.crossings,
        }
    }
}

fn full_mask(c: usize) -> u64 {
    if c >= 64 {
        u64::MAX
    } else {
        (1u64 << c) - 1
    }
}

/// Dart at the same crossing joined to `dart` by the smoothing.
/// A pairs positions (0,1),(2,3); B pairs (1,2),(3,0).
#[inline]
pub fn smoothing_partner(dart: usize, b: bool) -> usize {
    let base = dart - dart % 4;
    let p = dart % 4;
    let q = match (b, p) {
        (false, 0) => 1,
        (false, 1) => 0,
        (false, 2) => 3,
        (false, 3) => 2,
        (true, 1) => 2,
        (true, 2) => 1,
        (true, 3) => 0,
        _ => 3,
    };
    base + q
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateLoops {
    /// Each loop as the darts it leaves crossings through, in order.
    pub loops: Vec<Vec<usize>>,
    /// Loop through each dart, whether left or entered.
    pub loop_of: Vec<usize>,
    /// Index of each leaving dart within its loop; `usize::MAX` for darts the
    /// loop enters through.
    pub index_in_loop: Vec<usize>,
}

impl StateLoops {
    pub fn len(&self) -> usize {
        self.loops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.loops.is_empty()
    }

    pub fn cycle(&self, d: &SurfaceDiagram, i: usize) -> OneCycle {
        OneCycle::from_walk(d, &self.loops[i])
    }
}

/// Traces the loops of a state. Loops start at the lowest unused dart, so
/// the decomposition is canonical.
pub fn resolve_state(d: &SurfaceDiagram, s: StateAssign) -> StateLoops {
    let n = d.dart_count();
    let mut loop_of = vec![usize::MAX; n];
    let mut index_in_loop = vec![usize::MAX; n];
    let mut loops = Vec::new();
    for start in 0..n {
        if loop_of[start] != usize::MAX {
            continue;
        }
        let id = loops.len();
        let mut walk = Vec::new();
        let mut cur = start;
        loop {
            let arrive = d.partner(cur);
            loop_of[cur] = id;
            loop_of[arrive] = id;
            index_in_loop[cur] = walk.len();
            walk.push(cur);
            cur = smoothing_partner(arrive, s.is_b(crossing_of(arrive)));
            if cur == start {
                break;
            }
        }
        loops.push(walk);
    }
    StateLoops {
        loops,
        loop_of,
        index_in_loop,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StateInvariants {
    pub alpha: usize,
    pub beta: usize,
    pub loops: usize,
    pub k: usize,
    pub r: usize,
    pub essential_count: usize,
    pub cbar: usize,
}

/// Homology classes of the loops, in loop order.
pub fn loop_classes(
    model: &HomologyModel,
    d: &SurfaceDiagram,
    loops: &StateLoops,
) -> Vec<HomologyClass> {
    loops
        .loops
        .iter()
        .map(|w| model.class_of_walk(d, w))
        .collect()
}

pub fn state_invariants(
    model: &HomologyModel,
    d: &SurfaceDiagram,
    loops: &StateLoops,
    s: StateAssign,
) -> Result<StateInvariants, StateError> {
    let classes = loop_classes(model, d, loops);
    let r = integer_rank(&classes);
    let essential = classes.iter().filter(|c| !c.is_zero()).count();
    let inv = StateInvariants {
        alpha: s.alpha(),
        beta: s.beta(),
        loops: loops.len(),
        k: loops.len() - r,
        r,
        essential_count: essential,
        cbar: if r == 1 { essential / 2 } else { 0 },
    };
    if r == 1 && essential % 2 == 1 {
        return Err(StateError::ParityViolation {
            mask: s.mask,
            essential,
        });
    }
    Ok(inv)
}

/// Kernel dimension k(S) without the parity check.
pub fn kernel_dimension(model: &HomologyModel, d: &SurfaceDiagram, s: StateAssign) -> usize {
    let loops = resolve_state(d, s);
    loops.len() - integer_rank(&loop_classes(model, d, &loops))
}

/// One-B neighbours of S_A never exceed k(S_A), and one-A neighbours of S_B
/// never exceed k(S_B).
pub fn homological_adequacy(d: &SurfaceDiagram, model: &HomologyModel) -> bool {
    let c = d.crossing_count();
    let all_a = StateAssign::all_a(c);
    let all_b = StateAssign::all_b(c);
    let ka = kernel_dimension(model, d, all_a);
    let kb = kernel_dimension(model, d, all_b);
    (0..c).all(|x| kernel_dimension(model, d, all_a.flipped(x)) <= ka)
        && (0..c).all(|x| kernel_dimension(model, d, all_b.flipped(x)) <= kb)
}

/// The 2^c states of a diagram, behind an explicit crossing-count guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateSpace {
    crossings: usize,
}

impl StateSpace {
    pub fn new(crossings: usize, limit: usize) -> Result<Self, StateError> {
        let limit = limit.min(HARD_MAX_CROSSINGS);
        if crossings > limit {
            return Err(StateError::GuardExceeded { crossings, limit });
        }
        Ok(StateSpace { crossings })
    }

    pub fn crossings(&self) -> usize {
        self.crossings
    }

    pub fn len(&self) -> u64 {
        1u64 << self.crossings
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Numeric order.
    pub fn iter(&self) -> impl Iterator<Item = StateAssign> {
        let c = self.crossings;
        (0..self.len()).map(move |mask| StateAssign { mask, crossings: c })
    }

    /// Splits the masks into at most `parts` contiguous ranges covering
    /// everything exactly once.
    pub fn ranges(&self, parts: usize) -> Vec<Range<u64>> {
        let total = self.len();
        let parts = (parts.max(1) as u64).min(total);
        let chunk = total / parts;
        let extra = total % parts;
        let mut out = Vec::with_capacity(parts as usize);
        let mut lo = 0;
        for i in 0..parts {
            let hi = lo + chunk + u64::from(i < extra);
            out.push(lo..hi);
            lo = hi;
        }
        out
    }
}

pub fn enumerate_states(
    d: &SurfaceDiagram,
    limit: usize,
) -> Result<impl Iterator<Item = StateAssign>, StateError> {
    Ok(StateSpace::new(d.crossing_count(), limit)?.iter())
}

/// Summary of one state as it enters the bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey {
    /// α − β.
    pub a: i64,
    pub k: u32,
    pub r: u32,
    pub cbar: u32,
}

/// Allocation-free evaluator for whole state spaces. Holds per-dart
/// homology contributions so a loop's class is a running sum.
#[derive(Debug, Clone)]
pub struct StateEvaluator {
    crossings: usize,
    partner: Vec<usize>,
    rank: usize,
    /// Signed class contribution of leaving through each dart, row-major.
    dart_class: Vec<i64>,
    seen: Vec<bool>,
    classes: Vec<i64>,
}

impl StateEvaluator {
    pub fn new(d: &SurfaceDiagram, model: &HomologyModel) -> Self {
        let n = d.dart_count();
        let rank = model.rank();
        let mut dart_class = vec![0i64; n * rank];
        for dart in 0..n {
            let s = d.traversal_sign(dart);
            let col = model.edge_column(d.edge_of(dart));
            for j in 0..rank {
                dart_class[dart * rank + j] = s * col.0[j];
            }
        }
        StateEvaluator {
            crossings: d.crossing_count(),
            partner: (0..n).map(|x| d.partner(x)).collect(),
            rank,
            dart_class,
            seen: vec![false; n],
            classes: Vec::with_capacity(n * rank),
        }
    }

    pub fn evaluate(&mut self, mask: u64) -> Result<StateKey, StateError> {
        let n = self.partner.len();
        let g2 = self.rank;
        self.seen.iter_mut().for_each(|s| *s = false);
        self.classes.clear();
        let mut loops = 0u32;
        let mut essential = 0usize;
        for start in 0..n {
            if self.seen[start] {
                continue;
            }
            loops += 1;
            let base = self.classes.len();
            self.classes.resize(base + g2, 0);
            let mut cur = start;
            loop {
                let arrive = self.partner[cur];
                self.seen[cur] = true;
                self.seen[arrive] = true;
                for j in 0..g2 {
                    self.classes[base + j] += self.dart_class[cur * g2 + j];
                }
                let b = mask >> (arrive / 4) & 1 == 1;
                cur = smoothing_partner(arrive, b);
                if cur == start {
                    break;
                }
            }
            if self.classes[base..base + g2].iter().all(|&x| x == 0) {
                self.classes.truncate(base);
            } else {
                essential += 1;
            }
        }
        let r = if essential == 0 {
            0
        } else {
            small_rank(&mut self.classes, g2)
        };
        if r == 1 && essential % 2 == 1 {
            return Err(StateError::ParityViolation { mask, essential });
        }
        let beta = mask.count_ones() as i64;
        Ok(StateKey {
            a: self.crossings as i64 - 2 * beta,
            k: loops - r as u32,
            r: r as u32,
            cbar: if r == 1 { (essential / 2) as u32 } else { 0 },
        })
    }
}

/// Rank of a row-major integer matrix with `cols` columns, destroying it.
fn small_rank(m: &mut [i64], cols: usize) -> usize {
    let rows = m.len() / cols;
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        for k in 0..cols {
            m.swap(rank * cols + k, piv * cols + k);
        }
        for r in rank + 1..rows {
            let (a, b) = (m[rank * cols + col], m[r * cols + col]);
            if b == 0 {
                continue;
            }
            let mut g = 0i64;
            for k in 0..cols {
                let v = m[r * cols + k]
                    .checked_mul(a)
                    .and_then(|x| x.checked_sub(m[rank * cols + k] * b))
                    .expect("loop class entries stay small");
                m[r * cols + k] = v;
                g = gcd(g, v.abs());
            }
            if g > 1 {
                for k in 0..cols {
                    m[r * cols + k] /= g;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
