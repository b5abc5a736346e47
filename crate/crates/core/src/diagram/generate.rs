//! Corpus generators.

use std::collections::{BTreeMap, HashMap};

use super::{DiagramError, SurfaceDiagram};

/// `p` parallel (1,0)-curves and `q` parallel (0,1)-curves on the torus, one
/// crossing per intersection point. The horizontal strand passes under at
/// crossing (i, j) exactly when i + j is even, so the result is alternating
/// whenever both `p` and `q` are even.
pub fn torus_grid(p: usize, q: usize) -> SurfaceDiagram {
    assert!(p >= 1 && q >= 1, "torus_grid needs p, q >= 1");
    const E: usize = 0;
    const N: usize = 1;
    const W: usize = 2;
    const S: usize = 3;
    let index = |i: usize, j: usize| i * q + j;
    // dart of crossing (i, j) pointing in direction `dir`
    let dart = |i: usize, j: usize, dir: usize| -> usize {
        let rot = if (i + j).is_multiple_of(2) { 0 } else { 1 };
        4 * index(i, j) + (dir + 4 - rot) % 4
    };
    let n = 4 * p * q;
    let mut partner = vec![usize::MAX; n];
    for i in 0..p {
        for j in 0..q {
            let (a, b) = (dart(i, j, E), dart(i, (j + 1) % q, W));
            partner[a] = b;
            partner[b] = a;
            let (a, b) = (dart(i, j, N), dart((i + 1) % p, j, S));
            partner[a] = b;
            partner[b] = a;
        }
    }
    let labels = (0..n as u64).collect();
    SurfaceDiagram::from_dense(format!("torus_grid({p},{q})"), labels, partner, None)
        .expect("grid is a valid diagram")
        .with_default_orientation()
}

/// Which corner pair of a crossing the new bigons of a twist region occupy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BigonSide {
    /// Bigons sit in A-corners, so they become loops of the all-A state.
    #[default]
    A,
    B,
}

// chain-local directions
const NW: usize = 0;
const SW: usize = 1;
const SE: usize = 2;
const NE: usize = 3;

impl BigonSide {
    /// Tuple position of each chain direction.
    fn position(self, dir: usize) -> usize {
        match self {
            BigonSide::A => dir,
            BigonSide::B => (dir + 3) % 4,
        }
    }

    fn direction(self, pos: usize) -> usize {
        match self {
            BigonSide::A => pos,
            BigonSide::B => (pos + 1) % 4,
        }
    }
}

/// Replaces selected crossings by twist regions with A-side bigons.
pub fn inflate_twists(
    d: &SurfaceDiagram,
    multiplicity: &BTreeMap<usize, usize>,
) -> Result<SurfaceDiagram, DiagramError> {
    inflate_twists_on(d, multiplicity, BigonSide::A)
}

/// Replaces crossing `x` by a chain of `t = multiplicity[x]` crossings joined
/// by `t - 1` bigons. Alternation is preserved and the genus is unchanged.
pub fn inflate_twists_on(
    d: &SurfaceDiagram,
    multiplicity: &BTreeMap<usize, usize>,
    side: BigonSide,
) -> Result<SurfaceDiagram, DiagramError> {
    let c = d.crossing_count();
    for (&x, &t) in multiplicity {
        if x >= c {
            return Err(DiagramError::NoSuchCrossing(x));
        }
        if t == 0 {
            return Err(DiagramError::ZeroMultiplicity(x));
        }
    }
    let mut base = Vec::with_capacity(c);
    let mut total = 0;
    for x in 0..c {
        base.push(total);
        total += multiplicity.get(&x).copied().unwrap_or(1);
    }
    let t_of = |x: usize| multiplicity.get(&x).copied().unwrap_or(1);
    let chain_dart = |x: usize, k: usize, dir: usize| 4 * (base[x] + k) + side.position(dir);
    let boundary = |old: usize| -> usize {
        let x = old / 4;
        let dir = side.direction(old % 4);
        let k = if dir == NW || dir == SW {
            0
        } else {
            t_of(x) - 1
        };
        chain_dart(x, k, dir)
    };
    let n = 4 * total;
    let mut partner = vec![usize::MAX; n];
    for old in 0..d.dart_count() {
        partner[boundary(old)] = boundary(d.partner(old));
    }
    for x in 0..c {
        for k in 0..t_of(x) - 1 {
            for (a, b) in [(NE, NW), (SE, SW)] {
                let (u, v) = (chain_dart(x, k, a), chain_dart(x, k + 1, b));
                partner[u] = v;
                partner[v] = u;
            }
        }
    }
    let labels = (0..n as u64).collect();
    let name = if multiplicity.values().all(|&t| t == 1) {
        d.name().to_string()
    } else {
        format!("{}+twists", d.name())
    };
    Ok(SurfaceDiagram::from_dense(name, labels, partner, None)?.with_default_orientation())
}

/// Alternating diagram whose all-A state graph is the given cellularly
/// embedded graph. Each vertex lists its incident edge labels in
/// counterclockwise order; every label occurs exactly twice overall (twice at
/// one vertex for a loop). The crossing of edge label `e` is the `k`-th
/// crossing when `e` is the `k`-th smallest label.
pub fn medial_diagram(name: &str, rotations: &[Vec<u32>]) -> Result<SurfaceDiagram, DiagramError> {
    // half-edges are (vertex, slot)
    let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (v, rot) in rotations.iter().enumerate() {
        for (i, &e) in rot.iter().enumerate() {
            occ.entry(e).or_default().push((v, i));
        }
    }
    if occ.is_empty() {
        return Err(DiagramError::Empty);
    }
    let mut crossing_dart: HashMap<((usize, usize), bool), usize> = HashMap::new();
    for (x, (label, hs)) in occ.iter().enumerate() {
        if hs.len() != 2 {
            return Err(DiagramError::DartCoverage(format!(
                "edge label {label} occurs {} times",
                hs.len()
            )));
        }
        // (h,+), (h,-), (h',+), (h',-) counterclockwise
        crossing_dart.insert((hs[0], true), 4 * x);
        crossing_dart.insert((hs[0], false), 4 * x + 1);
        crossing_dart.insert((hs[1], true), 4 * x + 2);
        crossing_dart.insert((hs[1], false), 4 * x + 3);
    }
    let n = 4 * occ.len();
    let mut partner = vec![usize::MAX; n];
    for (v, rot) in rotations.iter().enumerate() {
        let deg = rot.len();
        for i in 0..deg {
            let a = crossing_dart[&((v, i), true)];
            let b = crossing_dart[&((v, (i + 1) % deg), false)];
            partner[a] = b;
            partner[b] = a;
        }
    }
    let labels = (0..n as u64).collect();
    Ok(
        SurfaceDiagram::from_dense(name.to_string(), labels, partner, None)?
            .with_default_orientation(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{analyze_surface, checkerboard_coloring};

    #[test]
    fn grid_1_1_is_t1() {
        let g = torus_grid(1, 1);
        assert_eq!(g.crossing_darts(0).map(|d| g.partner(d)), [2, 3, 0, 1]);
        assert!(!g.check_alternating());
    }

    #[test]
    fn grid_counts() {
        let g = torus_grid(2, 2);
        let f = analyze_surface(&g);
        assert_eq!(g.crossing_count(), 4);
        assert_eq!(f.genus, 1);
        assert_eq!(f.face_count(), 4);
        assert!(f.faces.iter().all(|w| w.len() == 4));
        assert!(g.check_alternating());
        assert!(checkerboard_coloring(&g, &f).is_some());

        let g = torus_grid(2, 3);
        let f = analyze_surface(&g);
        assert_eq!(
            (g.crossing_count(), g.edge_count(), f.face_count()),
            (6, 12, 6)
        );
        assert_eq!(f.genus, 1);
        assert!(!g.check_alternating());
    }

    #[test]
    fn inflate_identity_and_errors() {
        let g = torus_grid(2, 2);
        let all_one: BTreeMap<usize, usize> = (0..4).map(|x| (x, 1)).collect();
        let same = inflate_twists(&g, &all_one).unwrap();
        assert_eq!(same.labels(), g.labels());
        for dd in 0..g.dart_count() {
            assert_eq!(same.partner(dd), g.partner(dd));
        }
        let zero: BTreeMap<usize, usize> = [(0, 0)].into();
        assert_eq!(
            inflate_twists(&g, &zero),
            Err(DiagramError::ZeroMultiplicity(0))
        );
        let missing: BTreeMap<usize, usize> = [(9, 2)].into();
        assert_eq!(
            inflate_twists(&g, &missing),
            Err(DiagramError::NoSuchCrossing(9))
        );
    }

    #[test]
    fn inflate_keeps_alternation_and_genus() {
        let g = torus_grid(2, 2);
        for side in [BigonSide::A, BigonSide::B] {
            let all3: BTreeMap<usize, usize> = (0..4).map(|x| (x, 3)).collect();
            let h = inflate_twists_on(&g, &all3, side).unwrap();
            assert_eq!(h.crossing_count(), 12);
            assert!(h.check_alternating());
            let f = analyze_surface(&h);
            assert_eq!(f.genus, 1);
            assert_eq!(f.faces.iter().filter(|w| w.len() == 2).count(), 8);
        }
    }

    #[test]
    fn medial_of_hexagonal_torus() {
        let d = medial_diagram("hex", &[vec![1, 2, 3, 1, 2, 3]]).unwrap();
        let f = analyze_surface(&d);
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(f.genus, 1);
        assert_eq!(f.face_count(), 3);
        assert!(d.check_alternating());
    }
}
