//! Named diagrams used by the test suites and the `generate` command.

use std::collections::BTreeMap;

use crate::diagram::{
    from_pd_code, inflate_twists, medial_diagram, parse_diagram, torus_grid, SurfaceDiagram,
};

pub const TREFOIL_PD: [[u64; 4]; 3] = [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]];
pub const FIGURE_EIGHT_PD: [[u64; 4]; 4] = [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]];

pub fn trefoil() -> SurfaceDiagram {
    from_pd_code("trefoil", &TREFOIL_PD).expect("trefoil code is valid")
}

pub fn figure_eight() -> SurfaceDiagram {
    from_pd_code("figure_eight", &FIGURE_EIGHT_PD).expect("figure-eight code is valid")
}

/// One crossing on the torus; each strand passes its crossing once.
pub fn t1() -> SurfaceDiagram {
    parse_diagram(r#"{"name":"T1","crossings":[{"darts":[0,1,2,3]}],"edges":[[0,2],[1,3]]}"#)
        .expect("T1 is valid")
}

/// One-crossing planar kink, oriented.
pub fn kink() -> SurfaceDiagram {
    parse_diagram(
        r#"{"name":"kink","crossings":[{"darts":[0,1,2,3]}],"edges":[[0,1],[2,3]],"orientation":[0]}"#,
    )
    .expect("kink is valid")
}

/// Two self-edges at one vertex of the all-A graph meeting once.
pub fn transverse_pair() -> SurfaceDiagram {
    medial_diagram("transverse_pair", &[vec![1, 2, 1, 2]]).expect("valid rotation")
}

/// Three pairwise transverse self-edges at one vertex, one the sum of the
/// other two.
pub fn self_triangle() -> SurfaceDiagram {
    medial_diagram("self_triangle", &[vec![1, 2, 3, 1, 2, 3]]).expect("valid rotation")
}

/// Genus 2: two square tori glued at their vertex.
pub fn genus2_split() -> SurfaceDiagram {
    medial_diagram("genus2_split", &[vec![1, 2, 1, 2, 3, 4, 3, 4]]).expect("valid rotation")
}

/// Genus 2: the octagon with opposite sides identified.
pub fn genus2_octagon() -> SurfaceDiagram {
    medial_diagram("genus2_octagon", &[vec![1, 2, 3, 4, 1, 2, 3, 4]]).expect("valid rotation")
}

/// Every crossing replaced by a twist region of `t` crossings.
pub fn inflate_all(d: &SurfaceDiagram, t: usize) -> SurfaceDiagram {
    let m: BTreeMap<usize, usize> = (0..d.crossing_count()).map(|x| (x, t)).collect();
    let name = format!("{}*{t}", d.name());
    inflate_twists(d, &m)
        .expect("positive multiplicity")
        .with_name(name)
}

fn grid(p: usize, q: usize) -> SurfaceDiagram {
    let name = format!("torus_grid_{p}x{q}");
    torus_grid(p, q).with_name(name)
}

/// Reduced alternating diagrams with at most 16 crossings.
pub fn alternating_corpus() -> Vec<SurfaceDiagram> {
    vec![
        trefoil(),
        figure_eight(),
        grid(2, 2),
        grid(2, 4),
        grid(4, 4),
        inflate_all(&grid(2, 2), 2),
        inflate_all(&grid(2, 2), 3),
        inflate_all(&trefoil(), 3),
        inflate_all(&figure_eight(), 3),
        transverse_pair(),
        self_triangle(),
        inflate_all(&self_triangle(), 3),
        genus2_split(),
        genus2_octagon(),
        inflate_all(&genus2_split(), 3),
        inflate_all(&genus2_octagon(), 3),
    ]
}

/// Diagrams that must be rejected or flagged.
pub fn negative_fixtures() -> Vec<SurfaceDiagram> {
    vec![t1(), kink(), grid(2, 3), grid(3, 3)]
}

/// Looks up any named diagram from the two lists above.
pub fn by_name(name: &str) -> Option<SurfaceDiagram> {
    alternating_corpus()
        .into_iter()
        .chain(negative_fixtures())
        .find(|d| d.name() == name)
}
