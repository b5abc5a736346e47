//! All-A and all-B state graphs with their homological edge census.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bracket::CoefficientReport;
use crate::diagram::{FaceSet, SurfaceDiagram};
use crate::homology::{HomologyClass, HomologyModel};
use crate::states::{resolve_state, StateAssign, StateLoops};
use crate::twist::TwistDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GraphKind {
    A,
    B,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::A => "A",
            GraphKind::B => "B",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateGraphError {
    #[error("loop {loop_id} of the all-{kind} state is essential (class {class})")]
    ContractibilityViolation {
        kind: GraphKind,
        loop_id: usize,
        class: HomologyClass,
    },
    #[error("edge at crossing {0} is not a self-edge")]
    NotASelfEdge(usize),
    #[error("twist region {region} resolves neither long nor short in a consistent way")]
    AmbiguousRegion { region: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    #[serde(rename = "self")]
    SelfEdge,
    Simple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub crossing: usize,
    /// Endpoint loops, smaller first.
    pub endpoints: (usize, usize),
    pub kind: EdgeKind,
    /// Canonical class of a self-edge.
    pub class: Option<HomologyClass>,
    /// For a simple edge: prefix-class difference between its two endpoint
    /// passages. Two simple edges on the same loops form a null-homologous
    /// cycle iff these agree.
    #[serde(skip)]
    offset: Option<HomologyClass>,
    /// Positions of the arc's endpoints along their loops.
    #[serde(skip)]
    passages: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct StateGraph {
    pub kind: GraphKind,
    pub loops: StateLoops,
    pub edges: Vec<GraphEdge>,
    /// prefix[l][i] is the class of the first i steps of loop l.
    prefix: Vec<Vec<HomologyClass>>,
}

impl StateGraph {
    pub fn vertex_count(&self) -> usize {
        self.loops.len()
    }

    /// Both readings of a self-edge's class: the sub-walk from the first
    /// endpoint to the second, and the complementary one.
    pub fn self_edge_classes(
        &self,
        edge: usize,
    ) -> Result<(HomologyClass, HomologyClass), StateGraphError> {
        let e = &self.edges[edge];
        if e.kind != EdgeKind::SelfEdge {
            return Err(StateGraphError::NotASelfEdge(e.crossing));
        }
        let p = &self.prefix[e.endpoints.0];
        let (i, j) = e.passages;
        let forward = p[j].sub(&p[i]);
        let full = p.last().expect("loops are nonempty");
        let backward = full.sub(&p[j]).add(&p[i]);
        Ok((forward, backward))
    }
}

/// Canonical class of a self-edge.
pub fn self_edge_class(graph: &StateGraph, edge: usize) -> Result<HomologyClass, StateGraphError> {
    Ok(graph.self_edge_classes(edge)?.0.canonical_sign())
}

/// Corner pairs joined by the smoothing of each kind: (first strand, second strand).
fn strands(kind: GraphKind) -> [[usize; 2]; 2] {
    match kind {
        GraphKind::A => [[0, 1], [2, 3]],
        GraphKind::B => [[1, 2], [3, 0]],
    }
}

pub fn build_state_graph(
    d: &SurfaceDiagram,
    model: &HomologyModel,
    kind: GraphKind,
) -> Result<StateGraph, StateGraphError> {
    let c = d.crossing_count();
    let s = match kind {
        GraphKind::A => StateAssign::all_a(c),
        GraphKind::B => StateAssign::all_b(c),
    };
    let loops = resolve_state(d, s);
    let rank = model.rank();
    let mut prefix = Vec::with_capacity(loops.len());
    for (l, walk) in loops.loops.iter().enumerate() {
        let mut acc = HomologyClass::zero(rank);
        let mut p = vec![acc.clone()];
        for &dart in walk {
            acc = acc.add(&model.class_of_walk(d, &[dart]));
            p.push(acc.clone());
        }
        if !acc.is_zero() {
            return Err(StateGraphError::ContractibilityViolation {
                kind,
                loop_id: l,
                class: acc,
            });
        }
        prefix.push(p);
    }
    let mut edges = Vec::with_capacity(c);
    for x in 0..c {
        let [s1, s2] = strands(kind);
        // the passage is where the loop leaves the crossing along that strand
        let passage = |pair: [usize; 2]| -> (usize, usize) {
            let a = 4 * x + pair[0];
            let b = 4 * x + pair[1];
            let leave = if loops.index_in_loop[a] != usize::MAX {
                a
            } else {
                b
            };
            (loops.loop_of[leave], loops.index_in_loop[leave])
        };
        let (l1, i1) = passage(s1);
        let (l2, i2) = passage(s2);
        if l1 == l2 {
            let (i, j) = if i1 < i2 { (i1, i2) } else { (i2, i1) };
            let class = prefix[l1][j].sub(&prefix[l1][i]).canonical_sign();
            edges.push(GraphEdge {
                crossing: x,
                endpoints: (l1, l1),
                kind: EdgeKind::SelfEdge,
                class: Some(class),
                offset: None,
                passages: (i, j),
            });
        } else {
            let ((la, ia), (lb, ib)) = if l1 < l2 {
                ((l1, i1), (l2, i2))
            } else {
                ((l2, i2), (l1, i1))
            };
            edges.push(GraphEdge {
                crossing: x,
                endpoints: (la, lb),
                kind: EdgeKind::Simple,
                class: None,
                offset: Some(prefix[la][ia].sub(&prefix[lb][ib])),
                passages: (ia, ib),
            });
        }
    }
    Ok(StateGraph {
        kind,
        loops,
        edges,
        prefix,
    })
}

/// Builds both graphs concurrently.
pub fn build_state_graphs(
    d: &SurfaceDiagram,
    model: &HomologyModel,
) -> Result<(StateGraph, StateGraph), StateGraphError> {
    let (a, b) = rayon::join(
        || build_state_graph(d, model, GraphKind::A),
        || build_state_graph(d, model, GraphKind::B),
    );
    Ok((a?, b?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfEdgeClass {
    pub vertex: usize,
    pub class: HomologyClass,
    pub crossings: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleEdgeClass {
    pub vertices: (usize, usize),
    pub crossings: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphCensus {
    pub kind: GraphKind,
    pub v: usize,
    pub e_star: usize,
    pub e_tilde: usize,
    pub e: usize,
    pub pitchfork_star: usize,
    pub tau_star: usize,
    pub self_classes: Vec<SelfEdgeClass>,
    pub simple_classes: Vec<SimpleEdgeClass>,
    /// Index pairs into `self_classes`.
    pub transverse_pairs: Vec<(usize, usize)>,
    /// Index triples into `self_classes`.
    pub triangles: Vec<[usize; 3]>,
}

impl GraphCensus {
    /// Equivalence class id of the edge at `crossing`: self classes first,
    /// then simple classes offset by their count.
    pub fn class_of_crossing(&self, crossing: usize) -> Option<usize> {
        if let Some(i) = self
            .self_classes
            .iter()
            .position(|c| c.crossings.contains(&crossing))
        {
            return Some(i);
        }
        self.simple_classes
            .iter()
            .position(|c| c.crossings.contains(&crossing))
            .map(|i| self.self_classes.len() + i)
    }

    pub fn is_simple_class(&self, id: usize) -> bool {
        id >= self.self_classes.len()
    }
}

/// Partitions self-edges by (vertex, canonical class) and simple edges by
/// (vertex pair, null-homologous pair cycles).
pub fn census_equivalences(graph: &StateGraph) -> (Vec<SelfEdgeClass>, Vec<SimpleEdgeClass>) {
    let mut selfs: BTreeMap<(usize, HomologyClass), Vec<usize>> = BTreeMap::new();
    let mut simples: BTreeMap<((usize, usize), HomologyClass), Vec<usize>> = BTreeMap::new();
    for e in &graph.edges {
        match e.kind {
            EdgeKind::SelfEdge => selfs
                .entry((e.endpoints.0, e.class.clone().unwrap()))
                .or_default()
                .push(e.crossing),
            EdgeKind::Simple => simples
                .entry((e.endpoints, e.offset.clone().unwrap()))
                .or_default()
                .push(e.crossing),
        }
    }
    let selfs = selfs
        .into_iter()
        .map(|((vertex, class), crossings)| SelfEdgeClass {
            vertex,
            class,
            crossings,
        })
        .collect();
    let mut simples: Vec<SimpleEdgeClass> = simples
        .into_iter()
        .map(|((vertices, _), crossings)| SimpleEdgeClass {
            vertices,
            crossings,
        })
        .collect();
    simples.sort_by(|a, b| (a.vertices, &a.crossings).cmp(&(b.vertices, &b.crossings)));
    (selfs, simples)
}

/// Transverse pairs and self-triangles among self-edge classes sharing a
/// vertex.
pub fn transverse_and_triangles(
    classes: &[SelfEdgeClass],
    model: &HomologyModel,
) -> (Vec<(usize, usize)>, Vec<[usize; 3]>) {
    let mut by_vertex: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        by_vertex.entry(c.vertex).or_default().push(i);
    }
    let transverse =
        |i: usize, j: usize| model.pair(&classes[i].class, &classes[j].class).abs() == 1;
    let mut pairs = Vec::new();
    let mut triangles = Vec::new();
    for ids in by_vertex.values() {
        for (p, &i) in ids.iter().enumerate() {
            for &j in &ids[p + 1..] {
                if transverse(i, j) {
                    pairs.push((i, j));
                }
            }
        }
        for (p, &i) in ids.iter().enumerate() {
            for (q, &j) in ids.iter().enumerate().skip(p + 1) {
                for &k in &ids[q + 1..] {
                    let spans = |x: usize, y: usize, z: usize| {
                        let (a, b, c) = (&classes[x].class, &classes[y].class, &classes[z].class);
                        transverse(x, y)
                            && (a.add(b).canonical_sign() == *c || a.sub(b).canonical_sign() == *c)
                    };
                    if spans(i, j, k) || spans(i, k, j) || spans(j, k, i) {
                        triangles.push([i, j, k]);
                    }
                }
            }
        }
    }
    (pairs, triangles)
}

pub fn graph_census(graph: &StateGraph, model: &HomologyModel) -> GraphCensus {
    let (self_classes, simple_classes) = census_equivalences(graph);
    let (transverse_pairs, triangles) = transverse_and_triangles(&self_classes, model);
    GraphCensus {
        kind: graph.kind,
        v: graph.vertex_count(),
        e_star: self_classes.len(),
        e_tilde: simple_classes.len(),
        e: self_classes.len() + simple_classes.len(),
        pitchfork_star: transverse_pairs.len(),
        tau_star: triangles.len(),
        self_classes,
        simple_classes,
        transverse_pairs,
        triangles,
    }
}

fn choose2(n: usize) -> i64 {
    (n * n.saturating_sub(1) / 2) as i64
}

/// Coefficients predicted from the two censuses.
pub fn predict_coefficients(a: &GraphCensus, b: &GraphCensus) -> CoefficientReport {
    let side = |g: &GraphCensus| {
        let series = if g.e_star > 0 {
            vec![g.e_star as i64]
        } else {
            Vec::new()
        };
        let c0 = g.v as i64 - g.e_tilde as i64 + g.pitchfork_star as i64 - g.tau_star as i64;
        let c2 = choose2(g.e_star) - g.pitchfork_star as i64;
        (series, (c0, c2))
    };
    let (sa, ta) = side(a);
    let (sb, tb) = side(b);
    CoefficientReport::new(sa, sb, ta, tb)
}

/// ★ written in graph quantities.
pub fn graph_star(a: &GraphCensus, b: &GraphCensus) -> i64 {
    (a.e + b.e) as i64 - (a.v + b.v) as i64 + 2 + (a.tau_star + b.tau_star) as i64
        - (a.pitchfork_star + b.pitchfork_star) as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionResolution {
    pub region: usize,
    /// Graph in which the region is a chain through bigon vertices; `None`
    /// for single-crossing regions.
    pub long_in: Option<GraphKind>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongShortCensus {
    pub regions: Vec<RegionResolution>,
    pub v_bigon: usize,
    pub v_ngon: usize,
    pub e_long_edges: usize,
    pub e_long_classes: usize,
    pub e_short_classes: usize,
}

pub fn long_short_census(
    faces: &FaceSet,
    graphs: (&StateGraph, &StateGraph),
    censuses: (&GraphCensus, &GraphCensus),
    twist: &TwistDecomposition,
) -> Result<LongShortCensus, StateGraphError> {
    let is_loop_of = |g: &StateGraph, face: usize| {
        let walk = &faces.faces[face];
        let l = g.loops.loop_of[walk[0]];
        g.loops.loops[l].len() == walk.len() && walk.iter().all(|&dd| g.loops.loop_of[dd] == l)
    };
    let mut regions = Vec::new();
    let mut v_bigon = 0;
    let mut e_long_edges = 0;
    let mut long_ids: BTreeSet<(GraphKind, usize)> = BTreeSet::new();
    let mut short_ids: BTreeSet<(GraphKind, usize)> = BTreeSet::new();
    for (ri, region) in twist.regions.iter().enumerate() {
        if region.bigons.is_empty() {
            regions.push(RegionResolution {
                region: ri,
                long_in: None,
            });
            continue;
        }
        let in_a = region.bigons.iter().all(|&f| is_loop_of(graphs.0, f));
        let in_b = region.bigons.iter().all(|&f| is_loop_of(graphs.1, f));
        let (long, long_census, short_census) = match (in_a, in_b) {
            (true, false) => (GraphKind::A, censuses.0, censuses.1),
            (false, true) => (GraphKind::B, censuses.1, censuses.0),
            _ => return Err(StateGraphError::AmbiguousRegion { region: ri }),
        };
        let short_kind = if long == GraphKind::A {
            GraphKind::B
        } else {
            GraphKind::A
        };
        let short: BTreeSet<usize> = region
            .crossings
            .iter()
            .map(|&x| short_census.class_of_crossing(x).unwrap())
            .collect();
        if short.len() != 1 {
            return Err(StateGraphError::AmbiguousRegion { region: ri });
        }
        let short_id = *short.iter().next().unwrap();
        short_ids.insert((short_kind, short_id));
        for &x in &region.crossings {
            long_ids.insert((long, long_census.class_of_crossing(x).unwrap()));
        }
        v_bigon += region.bigons.len();
        e_long_edges += region.len();
        regions.push(RegionResolution {
            region: ri,
            long_in: Some(long),
        });
    }
    Ok(LongShortCensus {
        regions,
        v_bigon,
        v_ngon: censuses.0.v + censuses.1.v - v_bigon,
        e_long_edges,
        e_long_classes: long_ids.len(),
        e_short_classes: short_ids.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{
        analyze_surface, from_pd_code, inflate_twists, medial_diagram, torus_grid,
    };
    use crate::homology::build_homology;
    use crate::twist::twist_regions;

    fn censuses(
        d: &SurfaceDiagram,
    ) -> (
        HomologyModel,
        StateGraph,
        StateGraph,
        GraphCensus,
        GraphCensus,
    ) {
        let m = build_homology(d, &analyze_surface(d));
        let (ga, gb) = build_state_graphs(d, &m).unwrap();
        let ca = graph_census(&ga, &m);
        let cb = graph_census(&gb, &m);
        (m, ga, gb, ca, cb)
    }

    #[test]
    fn trefoil_graphs() {
        let d = from_pd_code("3_1", &[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]).unwrap();
        let (_, ga, gb, ca, cb) = censuses(&d);
        assert_eq!(ga.edges.len(), 3);
        assert_eq!(gb.edges.len(), 3);
        let mut vs = [ca.v, cb.v];
        vs.sort();
        assert_eq!(vs, [2, 3]);
        assert_eq!(ca.e_star + cb.e_star, 0);
        assert_eq!((ca.pitchfork_star, ca.tau_star), (0, 0));
        // the 2-vertex graph has three parallel edges bounding bigons
        let two = if ca.v == 2 { &ca } else { &cb };
        assert_eq!(two.e_tilde, 1);
        let three = if ca.v == 3 { &ca } else { &cb };
        assert_eq!(three.e_tilde, 3);
    }

    #[test]
    fn self_edge_readings_are_negatives() {
        let d = medial_diagram("hex", &[vec![1, 2, 3, 1, 2, 3]]).unwrap();
        let (_, ga, _, ca, _) = censuses(&d);
        for (i, e) in ga.edges.iter().enumerate() {
            assert_eq!(e.kind, EdgeKind::SelfEdge);
            let (f, b) = ga.self_edge_classes(i).unwrap();
            assert_eq!(f, b.neg());
            assert!(!f.is_zero());
            assert_eq!(self_edge_class(&ga, i).unwrap(), f.canonical_sign());
        }
        assert_eq!((ca.e_star, ca.pitchfork_star, ca.tau_star), (3, 3, 1));
    }

    #[test]
    fn transverse_pair_fixture() {
        let d = medial_diagram("pair", &[vec![1, 2, 1, 2]]).unwrap();
        let (_, _, _, ca, _) = censuses(&d);
        assert_eq!((ca.e_star, ca.pitchfork_star, ca.tau_star), (2, 1, 0));
    }

    #[test]
    fn simple_edge_errors() {
        let d = torus_grid(2, 2);
        let (_, ga, _, _, _) = censuses(&d);
        let simple = ga
            .edges
            .iter()
            .position(|e| e.kind == EdgeKind::Simple)
            .unwrap();
        assert!(matches!(
            self_edge_class(&ga, simple),
            Err(StateGraphError::NotASelfEdge(_))
        ));
    }

    #[test]
    fn non_alternating_input_is_rejected() {
        let d = torus_grid(1, 1);
        let m = build_homology(&d, &analyze_surface(&d));
        assert!(matches!(
            build_state_graph(&d, &m, GraphKind::A),
            Err(StateGraphError::ContractibilityViolation { .. })
        ));
    }

    #[test]
    fn inflated_grid_long_short() {
        let d = inflate_twists(&torus_grid(2, 2), &(0..4).map(|x| (x, 3)).collect()).unwrap();
        let f = analyze_surface(&d);
        let (_, ga, gb, ca, cb) = censuses(&d);
        let t = twist_regions(&d, &f).unwrap();
        let ls = long_short_census(&f, (&ga, &gb), (&ca, &cb), &t).unwrap();
        assert_eq!(ls.v_bigon, 8);
        assert_eq!(ls.e_long_classes, 12);
        assert_eq!(ls.v_ngon, 4);
        assert_eq!(ls.e_short_classes, 4);
    }
}
