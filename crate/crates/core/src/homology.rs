//! First homology of the surface carried by a diagram.
//!
//! The cellular chain complex has the crossings as 0-cells, the edges of the
//! 4-valent graph as 1-cells and the traced faces as 2-cells. A tree-cotree
//! decomposition leaves exactly 2g edges whose fundamental loops form a
//! basis; the classifying map sends a 1-cycle to its coordinates in that
//! basis and kills every face boundary. The intersection matrix is obtained by
//! pushing each basis loop off to its left inside the ribbon structure and
//! counting signed edge crossings.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{crossing_of, next_ccw, FaceSet, SurfaceDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("chain is not a cycle (boundary is nonzero at crossing {0})")]
    NotACycle(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Integer 1-chain indexed by edges, each edge oriented from its lower dart
/// label to its higher one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneCycle {
    pub coefficients: Vec<i64>,
}

impl OneCycle {
    pub fn zero(edges: usize) -> Self {
        OneCycle {
            coefficients: vec![0; edges],
        }
    }

    /// Chain of a walk given by the darts it leaves through.
    pub fn from_walk(d: &SurfaceDiagram, walk: &[usize]) -> Self {
        let mut z = OneCycle::zero(d.edge_count());
        for &dart in walk {
            z.coefficients[d.edge_of(dart)] += d.traversal_sign(dart);
        }
        z
    }

    pub fn add(&self, other: &OneCycle) -> OneCycle {
        OneCycle {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scaled(&self, k: i64) -> OneCycle {
        OneCycle {
            coefficients: self.coefficients.iter().map(|a| a * k).collect(),
        }
    }

    /// Crossing at which the boundary is nonzero, if any.
    pub fn boundary_defect(&self, d: &SurfaceDiagram) -> Option<usize> {
        let mut b = vec![0i64; d.crossing_count()];
        for (e, &(tail, head)) in d.edges().iter().enumerate() {
            let k = self.coefficients[e];
            b[crossing_of(head)] += k;
            b[crossing_of(tail)] -= k;
        }
        b.iter().position(|&x| x != 0)
    }
}

/// Element of H₁(Σ; Z) ≅ Z^{2g} in the model's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyClass(pub Vec<i64>);

impl HomologyClass {
    pub fn zero(rank: usize) -> Self {
        HomologyClass(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn neg(&self) -> Self {
        HomologyClass(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        HomologyClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        HomologyClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Representative of ±x with first nonzero coordinate positive.
    pub fn canonical_sign(&self) -> Self {
        match self.0.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => self.neg(),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone)]
pub struct HomologyModel {
    rank: usize,
    /// Column of the classifying map for every edge.
    columns: Vec<HomologyClass>,
    basis_walks: Vec<Vec<usize>>,
    intersection: Vec<Vec<i64>>,
}

impl HomologyModel {
    /// 2g.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn genus(&self) -> usize {
        self.rank / 2
    }

    /// Closed walks (as darts left through) representing the basis.
    pub fn basis_walks(&self) -> &[Vec<usize>] {
        &self.basis_walks
    }

    pub fn intersection_matrix(&self) -> &[Vec<i64>] {
        &self.intersection
    }

    pub fn edge_column(&self, edge: usize) -> &HomologyClass {
        &self.columns[edge]
    }

    /// Classifying map on an arbitrary chain; only meaningful on cycles.
    pub fn classify_chain(&self, z: &OneCycle) -> HomologyClass {
        let mut out = vec![0i64; self.rank];
        for (e, &k) in z.coefficients.iter().enumerate() {
            if k != 0 {
                for (o, c) in out.iter_mut().zip(&self.columns[e].0) {
                    *o += k * c;
                }
            }
        }
        HomologyClass(out)
    }

    pub fn class_of_cycle(
        &self,
        d: &SurfaceDiagram,
        z: &OneCycle,
    ) -> Result<HomologyClass, HomologyError> {
        if z.coefficients.len() != self.columns.len() {
            return Err(HomologyError::DimensionMismatch {
                expected: self.columns.len(),
                got: z.coefficients.len(),
            });
        }
        if let Some(x) = z.boundary_defect(d) {
            return Err(HomologyError::NotACycle(x));
        }
        Ok(self.classify_chain(z))
    }

    /// Class of a closed walk given by the darts it leaves through.
    pub fn class_of_walk(&self, d: &SurfaceDiagram, walk: &[usize]) -> HomologyClass {
        let mut out = vec![0i64; self.rank];
        for &dart in walk {
            let s = d.traversal_sign(dart);
            for (o, c) in out.iter_mut().zip(&self.columns[d.edge_of(dart)].0) {
                *o += s * c;
            }
        }
        HomologyClass(out)
    }

    /// Algebraic intersection number xᵀJy.
    pub fn intersection(&self, x: &HomologyClass, y: &HomologyClass) -> Result<i64, HomologyError> {
        for v in [x, y] {
            if v.rank() != self.rank {
                return Err(HomologyError::DimensionMismatch {
                    expected: self.rank,
                    got: v.rank(),
                });
            }
        }
        Ok(self.pair(x, y))
    }

    pub(crate) fn pair(&self, x: &HomologyClass, y: &HomologyClass) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += x.0[i] * self.intersection[i][j] * y.0[j];
            }
        }
        s
    }

    /// Simple closed curves separate iff they are null-homologous.
    pub fn is_separating(&self, d: &SurfaceDiagram, z: &OneCycle) -> Result<bool, HomologyError> {
        Ok(self.class_of_cycle(d, z)?.is_zero())
    }
}

/// Boundary chain of a traced face.
pub fn face_boundary(d: &SurfaceDiagram, faces: &FaceSet, face: usize) -> OneCycle {
    OneCycle::from_walk(d, &faces.faces[face])
}

pub fn build_homology(d: &SurfaceDiagram, faces: &FaceSet) -> HomologyModel {
    let c = d.crossing_count();
    let ne = d.edge_count();
    let rank = 2 * faces.genus;

    // spanning tree of the 4-valent graph, BFS from crossing 0
    let mut in_tree = vec![false; ne];
    let mut parent_dart = vec![usize::MAX; c];
    let mut depth = vec![0usize; c];
    let mut seen = vec![false; c];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for dart in d.crossing_darts(x) {
            let other = d.partner(dart);
            let y = crossing_of(other);
            if !seen[y] {
                seen[y] = true;
                in_tree[d.edge_of(dart)] = true;
                parent_dart[y] = other;
                depth[y] = depth[x] + 1;
                queue.push_back(y);
            }
        }
    }

    // spanning tree of the dual graph through non-tree edges
    let nf = faces.face_count();
    let mut in_cotree = vec![false; ne];
    let mut face_parent_edge = vec![usize::MAX; nf];
    let mut order = Vec::with_capacity(nf);
    let mut fseen = vec![false; nf];
    fseen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        order.push(f);
        for &dart in &faces.faces[f] {
            let e = d.edge_of(dart);
            if in_tree[e] {
                continue;
            }
            let g = faces.face_of[d.partner(dart)];
            if !fseen[g] {
                fseen[g] = true;
                in_cotree[e] = true;
                face_parent_edge[g] = e;
                queue.push_back(g);
            }
        }
    }

    let leftover: Vec<usize> = (0..ne).filter(|&e| !in_tree[e] && !in_cotree[e]).collect();
    assert_eq!(
        leftover.len(),
        rank,
        "tree-cotree leftover must have 2g edges"
    );

    let mut columns: Vec<Option<HomologyClass>> = vec![None; ne];
    for e in 0..ne {
        if in_tree[e] {
            columns[e] = Some(HomologyClass::zero(rank));
        }
    }
    for (i, &e) in leftover.iter().enumerate() {
        let mut v = vec![0; rank];
        v[i] = 1;
        columns[e] = Some(HomologyClass(v));
    }
    // Each non-root face fixes the column of its parent cotree edge; leaves
    // of the dual tree are processed first.
    for &f in order.iter().rev() {
        let p = face_parent_edge[f];
        if p == usize::MAX {
            continue;
        }
        let chain = face_boundary(d, faces, f);
        let mut acc = vec![0i64; rank];
        for (e, &k) in chain.coefficients.iter().enumerate() {
            if k == 0 || e == p {
                continue;
            }
            let col = columns[e].as_ref().expect("child columns are known");
            for (a, x) in acc.iter_mut().zip(&col.0) {
                *a += k * x;
            }
        }
        let s = chain.coefficients[p];
        debug_assert!(s == 1 || s == -1);
        columns[p] = Some(HomologyClass(acc.into_iter().map(|a| -s * a).collect()));
    }
    let columns: Vec<HomologyClass> = columns.into_iter().map(|c| c.unwrap()).collect();

    // fundamental loop of each leftover edge, traversed along its orientation
    let up_path = |mut x: usize, target_depth: usize| -> (Vec<usize>, usize) {
        let mut path = Vec::new();
        while depth[x] > target_depth {
            let dart = parent_dart[x];
            path.push(dart);
            x = crossing_of(d.partner(dart));
        }
        (path, x)
    };
    let basis_walks: Vec<Vec<usize>> = leftover
        .iter()
        .map(|&e| {
            let (tail, head) = d.edges()[e];
            let (u, v) = (crossing_of(tail), crossing_of(head));
            // climb both ends to their lowest common ancestor
            let (mut from_v, mut a) = up_path(v, depth[v].min(depth[u]));
            let (mut from_u, mut b) = up_path(u, depth[v].min(depth[u]));
            while a != b {
                let da = parent_dart[a];
                from_v.push(da);
                a = crossing_of(d.partner(da));
                let db = parent_dart[b];
                from_u.push(db);
                b = crossing_of(d.partner(db));
            }
            let mut walk = vec![tail];
            walk.extend(from_v);
            walk.extend(from_u.iter().rev().map(|&x| d.partner(x)));
            walk
        })
        .collect();

    let pushoffs: Vec<Vec<i64>> = basis_walks.iter().map(|w| left_pushoff(d, w)).collect();
    let cycles: Vec<OneCycle> = basis_walks
        .iter()
        .map(|w| OneCycle::from_walk(d, w))
        .collect();
    let intersection = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|k| {
                    cycles[i]
                        .coefficients
                        .iter()
                        .zip(&pushoffs[k])
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect()
        })
        .collect();

    HomologyModel {
        rank,
        columns,
        basis_walks,
        intersection,
    }
}

/// Signed crossing counts, per edge, of the curve obtained by pushing a
/// closed walk off to its left. At a vertex the walk arrives through `x` and
/// leaves through `d`; the push-off sweeps clockwise across the darts strictly
/// between `d` and `x` in counterclockwise order. A crossing counts +1 when it
/// passes from the right of the edge to its left.
fn left_pushoff(d: &SurfaceDiagram, walk: &[usize]) -> Vec<i64> {
    let mut cross = vec![0i64; d.edge_count()];
    let m = walk.len();
    for i in 0..m {
        let arrive = d.partner(walk[i]);
        let leave = walk[(i + 1) % m];
        debug_assert_eq!(crossing_of(arrive), crossing_of(leave));
        let mut y = next_ccw(leave);
        while y != arrive {
            // moving clockwise across an outward ray crosses it left-to-right
            cross[d.edge_of(y)] -= d.traversal_sign(y);
            y = next_ccw(y);
        }
    }
    cross
}

/// Rank over Q of a list of integer vectors.
pub fn integer_rank(rows: &[HomologyClass]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .filter(|r| !r.is_zero())
        .map(|r| r.0.iter().map(|&x| x as i128).collect())
        .collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            if m[r][col] != 0 {
                let (a, b) = (m[rank][col], m[r][col]);
                let pivot = m[rank].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot) {
                    *x = *x * a - p * b;
                }
                let g = m[r].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}
