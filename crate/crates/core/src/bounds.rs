//! Inequalities relating ★ to the twist number, and the volume intervals.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::bracket::CoefficientReport;
use crate::stategraph::{graph_star, GraphCensus, LongShortCensus};
use crate::twist::TwistDecomposition;

/// Volume of the regular ideal tetrahedron.
pub const V_TET: f64 = 1.014941606409654;
/// Volume of the regular ideal octahedron.
pub const V_OCT: f64 = 3.663862376708876;

pub const VOLUME_DISCLAIMER: &str =
    "conditional interval: the twist-reduced and weakly generalized \
     alternating hypotheses are not checked by this tool";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("star from the state sum ({bracket}) differs from the graph census ({graph})")]
    StarMismatch { bracket: i64, graph: i64 },
    #[error("volume bounds need genus at least 1")]
    GenusZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    HypothesisNotMet,
}

impl Outcome {
    fn gate(hypothesis: bool, holds: bool) -> Outcome {
        match (hypothesis, holds) {
            (false, _) => Outcome::HypothesisNotMet,
            (true, true) => Outcome::Pass,
            (true, false) => Outcome::Fail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistBoundsCheck {
    pub star: i64,
    /// tw/3 + 1 − g as a reduced fraction.
    pub lower: String,
    pub upper: i64,
    pub hypothesis_met: bool,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransverseBoundCheck {
    pub value: i64,
    pub lower: i64,
    pub upper: i64,
    pub hypothesis_met: bool,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeBoundCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub hypothesis_met: bool,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortEdgeBoundCheck {
    pub e_short_classes: usize,
    pub lower: String,
    pub hypothesis_met: bool,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountingIdentities {
    pub e_long: usize,
    pub c: usize,
    pub v_bigon: usize,
    pub c_minus_tw: usize,
    pub v_ngon: usize,
    pub chi_plus_tw: i64,
    pub hypothesis_met: bool,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeInterval {
    /// Closed lower end.
    pub lower: f64,
    /// Open upper end.
    pub upper: f64,
    pub formula: &'static str,
    pub disclaimer: &'static str,
    /// Always false: the hypotheses of the volume estimate are not tested.
    pub hypothesis_met: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub star_bracket: i64,
    pub star_graph: i64,
    /// Graph-side predictions equal the slice extraction.
    pub coefficients_agree: bool,
    pub twist_bounds: TwistBoundsCheck,
    pub transverse_bound: TransverseBoundCheck,
    pub edge_bound: EdgeBoundCheck,
    pub short_edge_bound: ShortEdgeBoundCheck,
    pub identities: CountingIdentities,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub volume: Option<VolumeInterval>,
}

impl VerificationReport {
    /// True iff some applicable check fails.
    pub fn any_failed(&self) -> bool {
        !self.coefficients_agree
            || [
                self.twist_bounds.outcome,
                self.transverse_bound.outcome,
                self.edge_bound.outcome,
                self.short_edge_bound.outcome,
                self.identities.outcome,
            ]
            .contains(&Outcome::Fail)
    }
}

fn fraction(r: Ratio<i64>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Inputs gathered by the analysis pipeline.
pub struct VerifyInput<'a> {
    pub bracket_side: &'a CoefficientReport,
    pub graph_side: &'a CoefficientReport,
    pub census_a: &'a GraphCensus,
    pub census_b: &'a GraphCensus,
    pub long_short: &'a LongShortCensus,
    pub twist: &'a TwistDecomposition,
    pub crossings: usize,
    pub genus: usize,
    pub euler_characteristic: i64,
    /// Reduced and alternating.
    pub reduced_alternating: bool,
}

pub fn verify_all(input: &VerifyInput<'_>) -> Result<VerificationReport, BoundsError> {
    let (a, b) = (input.census_a, input.census_b);
    let star_bracket = input.bracket_side.star;
    let star_graph = graph_star(a, b);
    if star_bracket != star_graph || input.graph_side.star != star_graph {
        return Err(BoundsError::StarMismatch {
            bracket: star_bracket,
            graph: star_graph,
        });
    }
    let tw = input.twist.tw as i64;
    let g = input.genus as i64;
    let ra = input.reduced_alternating;
    let lower = Ratio::new(tw, 3) + 1 - g;
    let long_regions = input.twist.min_region_size >= 3;

    let twist_bounds = TwistBoundsCheck {
        star: star_bracket,
        lower: fraction(lower),
        upper: 2 * tw,
        hypothesis_met: ra && long_regions,
        outcome: Outcome::gate(
            ra && long_regions,
            lower <= Ratio::from(star_bracket) && star_bracket <= 2 * tw,
        ),
    };

    let value = (a.tau_star + b.tau_star) as i64 - (a.pitchfork_star + b.pitchfork_star) as i64;
    let transverse_bound = TransverseBoundCheck {
        value,
        lower: -2 * g,
        upper: 0,
        hypothesis_met: ra,
        outcome: Outcome::gate(ra, -2 * g <= value && value <= 0),
    };

    let lhs = (a.e + b.e) as i64 - (a.v + b.v) as i64 + 2;
    let edge_bound = EdgeBoundCheck {
        lhs,
        rhs: 2 * tw,
        hypothesis_met: ra,
        outcome: Outcome::gate(ra, lhs <= 2 * tw),
    };

    let short_ok = ra && input.twist.min_region_size >= 2;
    let es = input.long_short.e_short_classes;
    let short_edge_bound = ShortEdgeBoundCheck {
        e_short_classes: es,
        lower: fraction(lower),
        hypothesis_met: short_ok,
        outcome: Outcome::gate(short_ok, Ratio::from(es as i64) >= lower),
    };

    let ls = input.long_short;
    let c = input.crossings;
    let chi_plus_tw = input.euler_characteristic + tw;
    let identities = CountingIdentities {
        e_long: ls.e_long_classes,
        c,
        v_bigon: ls.v_bigon,
        c_minus_tw: c - input.twist.tw,
        v_ngon: ls.v_ngon,
        chi_plus_tw,
        hypothesis_met: ra && long_regions,
        outcome: Outcome::gate(
            ra && long_regions,
            ls.e_long_classes == c
                && ls.v_bigon == c - input.twist.tw
                && ls.v_ngon as i64 == chi_plus_tw,
        ),
    };

    let volume = volume_bounds(star_bracket, input.genus, input.euler_characteristic).ok();

    Ok(VerificationReport {
        star_bracket,
        star_graph,
        coefficients_agree: input.bracket_side.agrees_with(input.graph_side),
        twist_bounds,
        transverse_bound,
        edge_bound,
        short_edge_bound,
        identities,
        volume,
    })
}

pub fn volume_bounds(star: i64, genus: usize, chi: i64) -> Result<VolumeInterval, BoundsError> {
    let s = star as f64;
    let (lower, upper, formula) = match genus {
        0 => return Err(BoundsError::GenusZero),
        1 => (
            V_OCT * s / 4.0,
            30.0 * V_TET * s,
            "[v_oct*star/4, 30*v_tet*star)",
        ),
        g => (
            V_OCT * (s - 6.0 * chi as f64) / 4.0,
            18.0 * V_OCT * (s + g as f64 - 1.0),
            "[v_oct*(star-6*chi)/4, 18*v_oct*(star+g-1))",
        ),
    };
    let warning = (lower >= upper).then(|| format!("empty interval [{lower}, {upper})"));
    Ok(VolumeInterval {
        lower,
        upper,
        formula,
        disclaimer: VOLUME_DISCLAIMER,
        hypothesis_met: false,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_interval() {
        let v = volume_bounds(5, 1, 0).unwrap();
        assert!((v.lower - V_OCT * 5.0 / 4.0).abs() < 1e-12);
        assert!((v.upper - 30.0 * V_TET * 5.0).abs() < 1e-12);
        assert!(v.warning.is_none());
        let z = volume_bounds(0, 1, 0).unwrap();
        assert_eq!((z.lower, z.upper), (0.0, 0.0));
        assert!(z.warning.is_some());
    }

    #[test]
    fn higher_genus_interval() {
        let v = volume_bounds(3, 2, -2).unwrap();
        assert!((v.lower - V_OCT * 15.0 / 4.0).abs() < 1e-12);
        assert!((v.upper - 18.0 * V_OCT * 4.0).abs() < 1e-12);
        assert_eq!(volume_bounds(3, 0, 2), Err(BoundsError::GenusZero));
    }

    #[test]
    fn gating() {
        assert_eq!(Outcome::gate(false, false), Outcome::HypothesisNotMet);
        assert_eq!(Outcome::gate(true, false), Outcome::Fail);
        assert_eq!(fraction(Ratio::new(4, 3)), "4/3");
        assert_eq!(fraction(Ratio::new(6, 3)), "2");
    }
}
