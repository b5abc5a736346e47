use std::collections::HashMap;

use super::{DiagramError, DiagramFile, SurfaceDiagram};

/// Parses and validates a diagram file.
pub fn parse_diagram(text: &str) -> Result<SurfaceDiagram, DiagramError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| DiagramError::Syntax(e.to_string()))?;
    if value.get("genus").is_some() {
        return Err(DiagramError::GenusDeclared);
    }
    let file: DiagramFile =
        serde_json::from_value(value).map_err(|e| DiagramError::Syntax(e.to_string()))?;
    from_file(file)
}

pub(crate) fn from_file(file: DiagramFile) -> Result<SurfaceDiagram, DiagramError> {
    if file.crossings.is_empty() {
        return Err(DiagramError::Empty);
    }
    let mut dense: HashMap<u64, usize> = HashMap::new();
    let mut labels = Vec::with_capacity(4 * file.crossings.len());
    for c in &file.crossings {
        for &id in &c.darts {
            if dense.insert(id, labels.len()).is_some() {
                return Err(DiagramError::DuplicateDart(id));
            }
            labels.push(id);
        }
    }
    let n = labels.len();
    let mut partner = vec![usize::MAX; n];
    for &[a, b] in &file.edges {
        if a == b {
            return Err(DiagramError::FixedPoint(a));
        }
        let lookup = |id: u64| {
            dense.get(&id).copied().ok_or_else(|| {
                DiagramError::DartCoverage(format!("edge references unknown dart {id}"))
            })
        };
        let (da, db) = (lookup(a)?, lookup(b)?);
        for (d, id) in [(da, a), (db, b)] {
            if partner[d] != usize::MAX {
                return Err(DiagramError::DartCoverage(format!(
                    "dart {id} appears in more than one edge"
                )));
            }
        }
        partner[da] = db;
        partner[db] = da;
    }
    if let Some(d) = partner.iter().position(|&p| p == usize::MAX) {
        return Err(DiagramError::DartCoverage(format!(
            "dart {} is not in any edge",
            labels[d]
        )));
    }
    let orientation = match file.orientation {
        None => None,
        Some(seeds) => Some(
            seeds
                .iter()
                .map(|id| {
                    dense.get(id).copied().ok_or_else(|| {
                        DiagramError::Orientation(format!("seed {id} is not a dart"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    SurfaceDiagram::from_dense(file.name, labels, partner, orientation)
}

/// Converts a planar-diagram code. Each crossing lists four edge labels
/// counterclockwise starting from the incoming under-strand; every label must
/// occur exactly twice. Dart `4 * i + p` of the result is slot `p` of crossing
/// `i`, and the diagram is oriented along the code's edge labelling.
pub fn from_pd_code(name: &str, code: &[[u64; 4]]) -> Result<SurfaceDiagram, DiagramError> {
    if code.is_empty() {
        return Err(DiagramError::Empty);
    }
    let n = 4 * code.len();
    let mut slots: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, x) in code.iter().enumerate() {
        for (p, &label) in x.iter().enumerate() {
            slots.entry(label).or_default().push(4 * i + p);
        }
    }
    let mut partner = vec![usize::MAX; n];
    for (label, ds) in &slots {
        if ds.len() != 2 {
            return Err(DiagramError::DartCoverage(format!(
                "edge label {label} occurs {} times",
                ds.len()
            )));
        }
        if ds[0] == ds[1] {
            return Err(DiagramError::FixedPoint(ds[0] as u64));
        }
        partner[ds[0]] = ds[1];
        partner[ds[1]] = ds[0];
    }
    // The incoming under slot is entered, so the strand leaves through its
    // partner slot at the neighbouring crossing.
    let labels: Vec<u64> = (0..n as u64).collect();
    let base = SurfaceDiagram::from_dense(name.to_string(), labels, partner.clone(), None)?;
    let mut seeds = Vec::new();
    let mut covered = vec![false; n];
    for i in 0..code.len() {
        let leave = partner[4 * i];
        if covered[leave] {
            continue;
        }
        let mut d = leave;
        loop {
            covered[d] = true;
            covered[base.partner(d)] = true;
            d = super::opposite(base.partner(d));
            if d == leave {
                break;
            }
        }
        seeds.push(leave);
    }
    // Components that never pass under have no direction in the code.
    for comp in base.strand_components() {
        if comp.iter().all(|&d| !covered[d]) {
            seeds.push(comp[0]);
        }
    }
    base.with_orientation(seeds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t1_parses() {
        let d = parse_diagram(
            r#"{"name":"T1","crossings":[{"darts":[0,1,2,3]}],"edges":[[0,2],[1,3]]}"#,
        )
        .unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.edge_count(), 2);
        assert_eq!(d.dart_count(), 4);
    }

    #[test]
    fn kink_parses() {
        let d = parse_diagram(
            r#"{"name":"kink","crossings":[{"darts":[0,1,2,3]}],"edges":[[0,1],[2,3]]}"#,
        )
        .unwrap();
        assert_eq!(d.crossing_count(), 1);
    }

    #[test]
    fn unused_dart_is_coverage_error() {
        let err = parse_diagram(
            r#"{"name":"bad","crossings":[{"darts":[0,1,2,7]}],"edges":[[0,2],[1,3]]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("dart coverage"), "{err}");
        let err =
            parse_diagram(r#"{"name":"bad","crossings":[{"darts":[0,1,2,7]}],"edges":[[0,2]]}"#)
                .unwrap_err();
        assert!(err.to_string().contains("dart coverage"), "{err}");
    }

    #[test]
    fn structural_errors() {
        let dup = r#"{"name":"d","crossings":[{"darts":[0,1,2,2]}],"edges":[[0,2],[1,2]]}"#;
        assert_eq!(
            parse_diagram(dup).unwrap_err(),
            DiagramError::DuplicateDart(2)
        );
        let fixed = r#"{"name":"d","crossings":[{"darts":[0,1,2,3]}],"edges":[[0,0],[1,3]]}"#;
        assert_eq!(
            parse_diagram(fixed).unwrap_err(),
            DiagramError::FixedPoint(0)
        );
        let twice = r#"{"name":"d","crossings":[{"darts":[0,1,2,3]}],"edges":[[0,1],[1,2],[3,0]]}"#;
        assert!(matches!(
            parse_diagram(twice).unwrap_err(),
            DiagramError::DartCoverage(_)
        ));
        let split = r#"{"name":"d","crossings":[{"darts":[0,1,2,3]},{"darts":[4,5,6,7]}],
            "edges":[[0,2],[1,3],[4,6],[5,7]]}"#;
        assert_eq!(
            parse_diagram(split).unwrap_err(),
            DiagramError::Disconnected
        );
        let genus =
            r#"{"name":"d","genus":1,"crossings":[{"darts":[0,1,2,3]}],"edges":[[0,2],[1,3]]}"#;
        assert_eq!(
            parse_diagram(genus).unwrap_err(),
            DiagramError::GenusDeclared
        );
        assert!(matches!(
            parse_diagram("{not json").unwrap_err(),
            DiagramError::Syntax(_)
        ));
        let empty = r#"{"name":"d","crossings":[],"edges":[]}"#;
        assert_eq!(parse_diagram(empty).unwrap_err(), DiagramError::Empty);
    }

    #[test]
    fn canonical_json_round_trip() {
        let text = r#"{"name":"k","crossings":[{"darts":[10,11,12,13]}],"edges":[[13,12],[11,10]],"orientation":[10]}"#;
        let d = parse_diagram(text).unwrap();
        let out = d.to_json();
        let again = parse_diagram(&out).unwrap();
        assert_eq!(again, d);
        assert_eq!(again.to_json(), out);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["edges"], serde_json::json!([[10, 11], [12, 13]]));
    }

    #[test]
    fn pd_trefoil_is_planar() {
        let d = from_pd_code("3_1", &[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]).unwrap();
        assert_eq!(super::super::analyze_surface(&d).genus, 0);
        assert!(d.check_alternating());
        assert_eq!(d.orientation().unwrap().len(), 1);
    }
}
