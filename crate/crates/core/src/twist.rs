//! Bigon faces and twist regions.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{crossing_of, FaceSet, SurfaceDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistError {
    #[error("crossing {crossing} touches {bigons} bigon faces")]
    PathologicalBigons { crossing: usize, bigons: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionShape {
    Path,
    Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistRegion {
    /// Sorted crossing ids.
    pub crossings: Vec<usize>,
    /// Face ids of the bigons inside the region.
    pub bigons: Vec<usize>,
    pub shape: RegionShape,
}

impl TwistRegion {
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistDecomposition {
    /// Ordered by smallest crossing id.
    pub regions: Vec<TwistRegion>,
    pub tw: usize,
    pub min_region_size: usize,
    pub has_cycle: bool,
}

impl TwistDecomposition {
    pub fn region_of(&self, crossing: usize) -> Option<usize> {
        self.regions
            .iter()
            .position(|r| r.crossings.binary_search(&crossing).is_ok())
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn twist_regions(
    d: &SurfaceDiagram,
    faces: &FaceSet,
) -> Result<TwistDecomposition, TwistError> {
    let c = d.crossing_count();
    let bigons: Vec<usize> = (0..faces.face_count())
        .filter(|&f| faces.faces[f].len() == 2)
        .collect();
    let mut touching = vec![0usize; c];
    let mut parent: Vec<usize> = (0..c).collect();
    for &f in &bigons {
        let walk = &faces.faces[f];
        let (x, y) = (crossing_of(walk[0]), crossing_of(walk[1]));
        touching[x] += 1;
        touching[y] += 1;
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        parent[rx] = ry;
    }
    if let Some(x) = touching.iter().position(|&t| t > 2) {
        return Err(TwistError::PathologicalBigons {
            crossing: x,
            bigons: touching[x],
        });
    }
    let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    let mut root_first: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..c {
        let r = find(&mut parent, x);
        let key = *root_first.entry(r).or_insert(x);
        groups.entry(key).or_default().0.push(x);
    }
    for &f in &bigons {
        let r = find(&mut parent, crossing_of(faces.faces[f][0]));
        groups.get_mut(&root_first[&r]).unwrap().1.push(f);
    }
    let regions: Vec<TwistRegion> = groups
        .into_values()
        .map(|(crossings, bigons)| TwistRegion {
            shape: if bigons.len() >= crossings.len() {
                RegionShape::Cycle
            } else {
                RegionShape::Path
            },
            crossings,
            bigons,
        })
        .collect();
    Ok(TwistDecomposition {
        tw: regions.len(),
        min_region_size: regions.iter().map(TwistRegion::len).min().unwrap_or(0),
        has_cycle: regions.iter().any(|r| r.shape == RegionShape::Cycle),
        regions,
    })
}
