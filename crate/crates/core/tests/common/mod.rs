//! Classical bracket oracles shared by the integration targets. They use only
//! PD codes or the partner involution, never the library's state code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use surface_bracket::diagram::SurfaceDiagram;
use surface_bracket::polynomial::TriLaurent;

pub type Laurent = BTreeMap<i64, i64>;

pub fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let next = p[y];
        p[y] = r;
        y = next;
    }
    r
}

fn union(p: &mut [usize], u: usize, v: usize) {
    let (ru, rv) = (find(p, u), find(p, v));
    p[ru] = rv;
}

pub fn mul(x: &Laurent, y: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (i, a) in x {
        for (j, b) in y {
            *out.entry(i + j).or_default() += a * b;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn delta() -> Laurent {
    Laurent::from([(2, -1), (-2, -1)])
}

/// Σ A^(c − 2·#B) δ^(loops − 1) given a loop counter per state mask.
fn state_sum(c: usize, mut loops: impl FnMut(u64) -> usize) -> Laurent {
    let mut total = Laurent::new();
    for mask in 0..1u64 << c {
        let b = mask.count_ones() as i64;
        let mut term = Laurent::from([(c as i64 - 2 * b, 1)]);
        for _ in 1..loops(mask) {
            term = mul(&term, &delta());
        }
        for (k, v) in term {
            *total.entry(k).or_default() += v;
        }
    }
    total.retain(|_, v| *v != 0);
    total
}

/// Union-find over PD labels: A joins (a,b),(c,d); B joins (a,d),(b,c).
pub fn pd_smoothing(code: &[[u64; 4]], mask: u64) -> (Vec<usize>, usize) {
    let n = 2 * code.len() + 1;
    let mut p: Vec<usize> = (0..n).collect();
    for (i, x) in code.iter().enumerate() {
        let [a, b, c, d] = x.map(|l| l as usize);
        let pairs = if mask >> i & 1 == 0 {
            [(a, b), (c, d)]
        } else {
            [(a, d), (b, c)]
        };
        for (u, v) in pairs {
            union(&mut p, u, v);
        }
    }
    let labels: BTreeSet<usize> = code.iter().flatten().map(|&l| l as usize).collect();
    let roots: BTreeSet<usize> = labels.iter().map(|&l| find(&mut p, l)).collect();
    (p, roots.len())
}

pub fn pd_reduced_bracket(code: &[[u64; 4]]) -> Laurent {
    state_sum(code.len(), |mask| pd_smoothing(code, mask).1)
}

/// The same sum on a diagram given by its dart involution, read as planar.
pub fn dart_reduced_bracket(d: &SurfaceDiagram) -> Laurent {
    let c = d.crossing_count();
    let n = 4 * c;
    state_sum(c, |mask| {
        let mut p: Vec<usize> = (0..n).collect();
        for t in 0..n {
            union(&mut p, t, d.partner(t));
        }
        for x in 0..c {
            let o = 4 * x;
            if mask >> x & 1 == 0 {
                union(&mut p, o, o + 1);
                union(&mut p, o + 2, o + 3);
            } else {
                union(&mut p, o + 1, o + 2);
                union(&mut p, o + 3, o);
            }
        }
        (0..n).filter(|&t| find(&mut p, t) == t).count()
    })
}

pub fn laurent_of(p: &TriLaurent) -> Option<Laurent> {
    p.terms()
        .map(|(m, c)| ((m.z, m.w) == (0, 0)).then(|| (m.a, i64::try_from(c.clone()).unwrap())))
        .collect()
}

pub fn torus_knot_2(n: u64) -> Vec<[u64; 4]> {
    let m = 2 * n;
    let l = |x: u64| (x - 1) % m + 1;
    (0..n)
        .map(|k| {
            [
                l(2 * k + 1),
                l(2 * k + n + 2),
                l(2 * k + 2),
                l(2 * k + n + 1),
            ]
        })
        .collect()
}

pub fn planar_codes() -> Vec<(&'static str, Vec<[u64; 4]>)> {
    vec![
        ("trefoil", surface_bracket::corpus::TREFOIL_PD.to_vec()),
        (
            "figure_eight",
            surface_bracket::corpus::FIGURE_EIGHT_PD.to_vec(),
        ),
        ("5_1", torus_knot_2(5)),
        ("7_1", torus_knot_2(7)),
        (
            "5_2",
            vec![
                [1, 5, 2, 4],
                [3, 9, 4, 8],
                [5, 1, 6, 10],
                [7, 3, 8, 2],
                [9, 7, 10, 6],
            ],
        ),
        (
            "6_1",
            vec![
                [1, 4, 2, 5],
                [7, 10, 8, 11],
                [3, 9, 4, 8],
                [9, 3, 10, 2],
                [5, 12, 6, 1],
                [11, 6, 12, 7],
            ],
        ),
        ("kink", vec![[1, 1, 2, 2]]),
    ]
}
