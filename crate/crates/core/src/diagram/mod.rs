//! Link diagrams on closed orientable surfaces, encoded as rotation systems.
//!
//! A diagram is a 4-valent graph whose vertices are crossings. Each crossing
//! lists its four darts (half-edges) in counterclockwise order; positions 0
//! and 2 belong to the under-strand, positions 1 and 3 to the over-strand.
//! An edge involution pairs darts into edges. The surface is whatever closed
//! orientable surface the rotation system cellularly embeds into, so the genus
//! is always derived by face tracing and never read from input.
//!
//! Internally darts are dense: dart `4 * x + p` is position `p` of crossing `x`.
//! The original file ids are kept as labels; edge reference orientations run
//! from the lower label to the higher one.

mod generate;
mod parse;

pub use generate::{inflate_twists, inflate_twists_on, medial_diagram, torus_grid, BigonSide};
pub use parse::{from_pd_code, parse_diagram};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::HomologyModel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed diagram file: {0}")]
    Syntax(String),
    #[error("genus must not be declared; it is derived from the rotation system")]
    GenusDeclared,
    #[error("diagram has no crossings")]
    Empty,
    #[error("dart {0} appears more than once in the crossing lists")]
    DuplicateDart(u64),
    #[error("dart coverage: {0}")]
    DartCoverage(String),
    #[error("edge involution has a fixed point at dart {0}")]
    FixedPoint(u64),
    #[error("underlying 4-valent graph is disconnected")]
    Disconnected,
    #[error("orientation: {0}")]
    Orientation(String),
    #[error("diagram carries no orientation; writhe is undefined")]
    MissingOrientation,
    #[error("twist multiplicity must be at least 1 (crossing {0})")]
    ZeroMultiplicity(usize),
    #[error("crossing {0} does not exist")]
    NoSuchCrossing(usize),
}

/// Validated link diagram. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceDiagram {
    name: String,
    labels: Vec<u64>,
    partner: Vec<usize>,
    /// Dense edge index of every dart.
    edge_of: Vec<usize>,
    /// Edges as (tail, head) dense darts, tail carrying the lower label.
    edges: Vec<(usize, usize)>,
    /// One seed dart per strand component; the strand leaves its crossing
    /// through the seed.
    orientation: Option<Vec<usize>>,
}

#[inline]
pub fn crossing_of(dart: usize) -> usize {
    dart / 4
}

#[inline]
pub fn position_of(dart: usize) -> usize {
    dart % 4
}

/// Counterclockwise successor of a dart at its crossing.
#[inline]
pub fn next_ccw(dart: usize) -> usize {
    dart - dart % 4 + (dart % 4 + 1) % 4
}

/// Dart opposite to `dart` at the same crossing (the strand continuation).
#[inline]
pub fn opposite(dart: usize) -> usize {
    dart ^ 2
}

impl SurfaceDiagram {
    /// Builds a diagram from dense data; `partner` is the edge involution on
    /// dense darts and `labels` the user-visible dart ids.
    pub(crate) fn from_dense(
        name: String,
        labels: Vec<u64>,
        partner: Vec<usize>,
        orientation: Option<Vec<usize>>,
    ) -> Result<Self, DiagramError> {
        let n = partner.len();
        if n == 0 {
            return Err(DiagramError::Empty);
        }
        debug_assert_eq!(n % 4, 0);
        debug_assert_eq!(labels.len(), n);
        for d in 0..n {
            let p = partner[d];
            if p == d {
                return Err(DiagramError::FixedPoint(labels[d]));
            }
            if p >= n || partner[p] != d {
                return Err(DiagramError::DartCoverage(format!(
                    "dart {} is not in exactly one edge",
                    labels[d]
                )));
            }
        }
        let mut pairs: Vec<(usize, usize)> = (0..n)
            .filter(|&d| labels[d] < labels[partner[d]])
            .map(|d| (d, partner[d]))
            .collect();
        pairs.sort_by_key(|&(a, b)| (labels[a], labels[b]));
        let mut edge_of = vec![usize::MAX; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            edge_of[a] = i;
            edge_of[b] = i;
        }
        let mut diagram = SurfaceDiagram {
            name,
            labels,
            partner,
            edge_of,
            edges: pairs,
            orientation: None,
        };
        if !diagram.is_connected() {
            return Err(DiagramError::Disconnected);
        }
        if let Some(seeds) = orientation {
            diagram.set_orientation(seeds)?;
        }
        Ok(diagram)
    }

    fn is_connected(&self) -> bool {
        let c = self.crossing_count();
        let mut seen = vec![false; c];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for p in 0..4 {
                let y = crossing_of(self.partner[4 * x + p]);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn set_orientation(&mut self, seeds: Vec<usize>) -> Result<(), DiagramError> {
        let comps = self.strand_components();
        let mut comp_of = vec![usize::MAX; self.dart_count()];
        for (i, comp) in comps.iter().enumerate() {
            for &d in comp {
                comp_of[d] = i;
                comp_of[self.partner[d]] = i;
            }
        }
        let mut seeded = vec![false; comps.len()];
        for &s in &seeds {
            let ci = comp_of[s];
            if seeded[ci] {
                return Err(DiagramError::Orientation(format!(
                    "component containing dart {} has more than one seed",
                    self.labels[s]
                )));
            }
            seeded[ci] = true;
        }
        if let Some(missing) = seeded.iter().position(|s| !s) {
            return Err(DiagramError::Orientation(format!(
                "component through dart {} has no seed",
                self.labels[comps[missing][0]]
            )));
        }
        self.orientation = Some(seeds);
        Ok(())
    }

    /// Returns a copy carrying the given orientation seeds (dense darts).
    pub fn with_orientation(&self, seeds: Vec<usize>) -> Result<Self, DiagramError> {
        let mut d = self.clone();
        d.set_orientation(seeds)?;
        Ok(d)
    }

    /// Orients every component from its lowest dense dart.
    pub fn with_default_orientation(&self) -> Self {
        let seeds = self.strand_components().iter().map(|c| c[0]).collect();
        self.with_orientation(seeds)
            .expect("one seed per component is always valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn crossing_count(&self) -> usize {
        self.partner.len() / 4
    }

    pub fn dart_count(&self) -> usize {
        self.partner.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge involution.
    #[inline]
    pub fn partner(&self, dart: usize) -> usize {
        self.partner[dart]
    }

    #[inline]
    pub fn edge_of(&self, dart: usize) -> usize {
        self.edge_of[dart]
    }

    /// +1 when leaving through `dart` traverses its edge along the reference
    /// orientation, -1 otherwise.
    #[inline]
    pub fn traversal_sign(&self, dart: usize) -> i64 {
        if self.labels[dart] < self.labels[self.partner[dart]] {
            1
        } else {
            -1
        }
    }

    /// Edges as (tail, head) dense dart pairs in canonical order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn label(&self, dart: usize) -> u64 {
        self.labels[dart]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn orientation(&self) -> Option<&[usize]> {
        self.orientation.as_deref()
    }

    /// Darts of one crossing in counterclockwise order.
    pub fn crossing_darts(&self, crossing: usize) -> [usize; 4] {
        let b = 4 * crossing;
        [b, b + 1, b + 2, b + 3]
    }

    /// Strand components. Each is the list of darts the strand leaves through,
    /// in traversal order, starting at the lowest dense dart not yet covered.
    pub fn strand_components(&self) -> Vec<Vec<usize>> {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut d = start;
            loop {
                seen[d] = true;
                let arrive = self.partner[d];
                seen[arrive] = true;
                comp.push(d);
                d = opposite(arrive);
                if d == start {
                    break;
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Strand traversal from a seed: the list of darts left through.
    fn oriented_strand(&self, seed: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut d = seed;
        loop {
            out.push(d);
            d = opposite(self.partner[d]);
            if d == seed {
                break;
            }
        }
        out
    }

    /// Under/over alternation along every closed strand, checked cyclically.
    pub fn check_alternating(&self) -> bool {
        self.strand_components().iter().all(|comp| {
            let passes: Vec<bool> = comp
                .iter()
                .map(|&d| position_of(self.partner[d]) % 2 == 1)
                .collect();
            let m = passes.len();
            (0..m).all(|i| passes[i] != passes[(i + 1) % m])
        })
    }

    /// Sum of crossing signs. A crossing is +1 when the oriented over-strand
    /// enters one counterclockwise step after the oriented under-strand.
    pub fn writhe(&self) -> Result<i64, DiagramError> {
        let seeds = self
            .orientation
            .as_ref()
            .ok_or(DiagramError::MissingOrientation)?;
        let mut entering = vec![false; self.dart_count()];
        for &s in seeds {
            for d in self.oriented_strand(s) {
                entering[self.partner[d]] = true;
            }
        }
        let mut w = 0;
        for x in 0..self.crossing_count() {
            let b = 4 * x;
            let under = if entering[b] { 0 } else { 2 };
            let over = if entering[b + 1] { 1 } else { 3 };
            w += if over == (under + 1) % 4 { 1 } else { -1 };
        }
        Ok(w)
    }

    /// Mirror image: every crossing switches, which rotates its dart tuple.
    pub fn mirror(&self) -> SurfaceDiagram {
        let n = self.dart_count();
        // new position p holds old position p + 1
        let remap = |d: usize| -> usize { d - d % 4 + (d % 4 + 3) % 4 };
        let mut labels = vec![0; n];
        let mut partner = vec![0; n];
        for d in 0..n {
            let nd = remap(d);
            labels[nd] = self.labels[d];
            partner[nd] = remap(self.partner[d]);
        }
        let orientation = self
            .orientation
            .as_ref()
            .map(|s| s.iter().map(|&d| remap(d)).collect());
        SurfaceDiagram::from_dense(
            format!("{}-mirror", self.name),
            labels,
            partner,
            orientation,
        )
        .expect("mirror preserves validity")
    }

    /// Canonical JSON document (edges sorted lexicographically).
    pub fn to_json(&self) -> String {
        let file = DiagramFile {
            name: self.name.clone(),
            crossings: (0..self.crossing_count())
                .map(|x| CrossingEntry {
                    darts: self.crossing_darts(x).map(|d| self.labels[d]),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| [self.labels[a], self.labels[b]])
                .collect(),
            orientation: self
                .orientation
                .as_ref()
                .map(|s| s.iter().map(|&d| self.labels[d]).collect()),
        };
        serde_json::to_string_pretty(&file).expect("diagram serializes")
    }
}

/// On-disk diagram schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub name: String,
    pub crossings: Vec<CrossingEntry>,
    pub edges: Vec<[u64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingEntry {
    pub darts: [u64; 4],
}

/// Complementary regions of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    /// Boundary walks as sequences of darts left through.
    pub faces: Vec<Vec<usize>>,
    /// Face whose walk leaves through each dart.
    pub face_of: Vec<usize>,
    pub genus: usize,
    pub euler_characteristic: i64,
}

impl FaceSet {
    /// Face containing corner `j` of `crossing` (between positions j and j+1).
    pub fn corner_face(&self, crossing: usize, corner: usize) -> usize {
        self.face_of[4 * crossing + (corner + 1) % 4]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }
}

/// Traces faces with next = ccw-successor(partner(current)).
pub fn analyze_surface(d: &SurfaceDiagram) -> FaceSet {
    let n = d.dart_count();
    let mut face_of = vec![usize::MAX; n];
    let mut faces = Vec::new();
    for start in 0..n {
        if face_of[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut walk = Vec::new();
        let mut cur = start;
        loop {
            face_of[cur] = id;
            walk.push(cur);
            cur = next_ccw(d.partner(cur));
            if cur == start {
                break;
            }
        }
        faces.push(walk);
    }
    let v = d.crossing_count() as i64;
    let e = d.edge_count() as i64;
    let chi = v - e + faces.len() as i64;
    debug_assert!(chi <= 2 && chi % 2 == 0);
    FaceSet {
        genus: ((2 - chi) / 2) as usize,
        euler_characteristic: chi,
        faces,
        face_of,
    }
}

/// Result of the nugatory-crossing test for one crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NugatoryCandidate {
    pub crossing: usize,
    /// Corner index j; the opposite corner is j + 2.
    pub corner: usize,
    pub separating: bool,
}

/// Candidates are crossings with a face on two opposite corners; a candidate
/// is nugatory when the curve through the crossing and that face separates.
pub fn nugatory_candidates(
    d: &SurfaceDiagram,
    faces: &FaceSet,
    model: &HomologyModel,
) -> Vec<NugatoryCandidate> {
    let mut out = Vec::new();
    for x in 0..d.crossing_count() {
        for j in 0..2 {
            let f = faces.corner_face(x, j);
            if f != faces.corner_face(x, j + 2) {
                continue;
            }
            let walk = &faces.faces[f];
            let first = walk.iter().position(|&dd| dd == 4 * x + (j + 1) % 4);
            let second = walk.iter().position(|&dd| dd == 4 * x + (j + 3) % 4);
            let (Some(i1), Some(i2)) = (first, second) else {
                unreachable!("corner darts lie on their face walk");
            };
            let m = walk.len();
            let mut sub = Vec::new();
            let mut i = i1;
            while i != i2 {
                sub.push(walk[i]);
                i = (i + 1) % m;
            }
            let class = model.class_of_walk(d, &sub);
            out.push(NugatoryCandidate {
                crossing: x,
                corner: j,
                separating: class.is_zero(),
            });
        }
    }
    out
}

/// True iff no crossing is nugatory.
pub fn check_reduced(d: &SurfaceDiagram, faces: &FaceSet, model: &HomologyModel) -> bool {
    nugatory_candidates(d, faces, model)
        .iter()
        .all(|c| !c.separating)
}

/// Proper 2-coloring of faces across edges, or `None`.
pub fn checkerboard_coloring(d: &SurfaceDiagram, faces: &FaceSet) -> Option<Vec<bool>> {
    let nf = faces.face_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nf];
    for &(a, b) in d.edges() {
        let (fa, fb) = (faces.face_of[a], faces.face_of[b]);
        if fa == fb {
            return None;
        }
        adj[fa].push(fb);
        adj[fb].push(fa);
    }
    let mut color: Vec<Option<bool>> = vec![None; nf];
    for s in 0..nf {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(f) = stack.pop() {
            let cf = color[f].unwrap();
            for &g in &adj[f] {
                match color[g] {
                    None => {
                        color[g] = Some(!cf);
                        stack.push(g);
                    }
                    Some(cg) if cg == cf => return None,
                    _ => {}
                }
            }
        }
    }
    Some(color.into_iter().map(|c| c.unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::build_homology;

    pub(crate) fn t1() -> SurfaceDiagram {
        parse_diagram(r#"{"name":"T1","crossings":[{"darts":[0,1,2,3]}],"edges":[[0,2],[1,3]]}"#)
            .unwrap()
    }

    pub(crate) fn kink() -> SurfaceDiagram {
        parse_diagram(
            r#"{"name":"kink","crossings":[{"darts":[0,1,2,3]}],"edges":[[0,1],[2,3]],"orientation":[0]}"#,
        )
        .unwrap()
    }

    #[test]
    fn t1_is_one_square_on_torus() {
        let d = t1();
        let f = analyze_surface(&d);
        assert_eq!(f.faces, vec![vec![0, 3, 2, 1]]);
        assert_eq!(f.euler_characteristic, 0);
        assert_eq!(f.genus, 1);
    }

    #[test]
    fn kink_is_planar_with_three_faces() {
        let f = analyze_surface(&kink());
        assert_eq!(f.face_count(), 3);
        assert_eq!(f.genus, 0);
    }

    #[test]
    fn t1_not_alternating_and_not_checkerboard() {
        let d = t1();
        assert!(!d.check_alternating());
        assert!(checkerboard_coloring(&d, &analyze_surface(&d)).is_none());
    }

    #[test]
    fn reducedness_of_small_fixtures() {
        let d = kink();
        let f = analyze_surface(&d);
        let m = build_homology(&d, &f);
        assert!(!check_reduced(&d, &f, &m));

        let d = t1();
        let f = analyze_surface(&d);
        let m = build_homology(&d, &f);
        let cands = nugatory_candidates(&d, &f, &m);
        assert_eq!(cands.len(), 2);
        assert!(check_reduced(&d, &f, &m));
    }

    #[test]
    fn kink_writhe_under_stated_sign_rule() {
        assert_eq!(kink().writhe().unwrap(), -1);
        let reversed = kink().with_orientation(vec![2]).unwrap();
        assert_eq!(reversed.writhe().unwrap(), -1);
        assert_eq!(kink().mirror().writhe().unwrap(), 1);
    }

    #[test]
    fn writhe_needs_orientation() {
        assert_eq!(t1().writhe(), Err(DiagramError::MissingOrientation));
    }

    #[test]
    fn orientation_seed_validation() {
        let err = parse_diagram(
            r#"{"name":"k","crossings":[{"darts":[0,1,2,3]}],"edges":[[0,1],[2,3]],"orientation":[0,3]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, DiagramError::Orientation(_)));
    }

    #[test]
    fn mirror_twice_rotates_tuples_by_half_turn() {
        let d = kink();
        let mm = d.mirror().mirror();
        assert_eq!(mm.labels(), &[2, 3, 0, 1]);
        assert_eq!(mm.writhe().unwrap(), d.writhe().unwrap());
        let m4 = mm.mirror().mirror();
        assert_eq!(m4.labels(), d.labels());
        assert_eq!(m4.partner, d.partner);
    }
}
