//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::Ratio;
use surface_bracket::analysis::{analyze, structure, Report};
use surface_bracket::bracket::{bracket, BracketOptions};
use surface_bracket::corpus;
use surface_bracket::diagram::{analyze_surface, torus_grid, SurfaceDiagram};
use surface_bracket::homology::{build_homology, determinant, face_boundary};
use surface_bracket::stategraph::GraphCensus;
use surface_bracket::states::{homological_adequacy, StateError};
use surface_bracket::twist::TwistDecomposition;

use common::{dart_reduced_bracket, delta, laurent_of, mul, pd_reduced_bracket, planar_codes};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn(&Corpus) -> Outcome);

struct Entry {
    diagram: SurfaceDiagram,
    report: Report,
}

struct Corpus {
    entries: Vec<Entry>,
    elapsed: Duration,
}

impl Corpus {
    fn load() -> Corpus {
        let start = Instant::now();
        let entries = corpus::alternating_corpus()
            .into_iter()
            .map(|diagram| {
                let report = analyze(&diagram, BracketOptions::default())
                    .unwrap_or_else(|e| panic!("{}: {e}", diagram.name()));
                Entry { diagram, report }
            })
            .collect();
        Corpus {
            entries,
            elapsed: start.elapsed(),
        }
    }

    fn reduced_alternating(&self) -> impl Iterator<Item = &Entry> {
        self.entries
            .iter()
            .filter(|e| e.report.diagram.reduced && e.report.diagram.alternating)
    }
}

/// Collects the names failing `bad`; passes with `ok` when there are none.
fn over<'a>(
    entries: impl Iterator<Item = &'a Entry>,
    ok: &str,
    bad: impl FnMut(&Entry) -> Option<String>,
) -> Outcome {
    let mut n = 0;
    let failures: Vec<String> = entries.inspect(|_| n += 1).filter_map(bad).collect();
    if n == 0 {
        return Err("no corpus diagram meets the hypothesis".into());
    }
    if failures.is_empty() {
        Ok(format!("{n} diagrams; {ok}"))
    } else {
        Err(format!(
            "{} of {n} fail: {}",
            failures.len(),
            failures.join("; ")
        ))
    }
}

fn sign(v: usize) -> BigInt {
    BigInt::from(if v.is_multiple_of(2) { 1 } else { -1 })
}

fn lower_bound(tw: &TwistDecomposition, genus: usize) -> Ratio<i64> {
    Ratio::new(tw.tw as i64, 3) + 1 - genus as i64
}

fn pitchfork_tau(a: &GraphCensus, b: &GraphCensus) -> i64 {
    (a.tau_star + b.tau_star) as i64 - (a.pitchfork_star + b.pitchfork_star) as i64
}

fn ac1(c: &Corpus) -> Outcome {
    let names = |ds: &[&str]| {
        ds.iter()
            .map(|n| corpus::by_name(n).unwrap())
            .filter(|d| d.check_alternating())
            .map(|d| d.name().to_string())
            .collect::<Vec<_>>()
    };
    let odd = names(&["torus_grid_2x3", "torus_grid_3x3"]);
    if !odd.is_empty() {
        return Err(format!("{odd:?} unexpectedly alternating"));
    }
    if c.elapsed > Duration::from_secs(60) {
        return Err(format!("corpus took {:?}", c.elapsed));
    }
    let elapsed = c.elapsed;
    let max_c = c
        .entries
        .iter()
        .map(|e| e.diagram.crossing_count())
        .max()
        .unwrap();
    over(
        c.entries.iter(),
        &format!(
            "max c = {max_c}, {elapsed:.2?}; odd grids 2x3, 3x3 are not alternating and are replaced by 2x4, 4x4"
        ),
        |e| {
            let r = &e.report.bracket;
            let p = &r.polynomial;
            let c = e.diagram.crossing_count() as i64;
            let (hi, lo) = (c + 2 * r.v_a as i64, -c - 2 * r.v_b as i64);
            let ok = p.max_a_degree() == Some(hi)
                && p.min_a_degree() == Some(lo)
                && p.coefficient_slice(hi) == BTreeMap::from([((0, 0), sign(r.v_a))])
                && p.coefficient_slice(lo) == BTreeMap::from([((0, 0), sign(r.v_b))]);
            (!ok).then(|| e.diagram.name().to_string())
        },
    )
}

fn ac2(c: &Corpus) -> Outcome {
    over(
        c.entries.iter(),
        "graph predictions equal slice extraction",
        |e| {
            let k = &e.report.coefficients;
            (k.bracket != k.graph)
                .then(|| format!("{}: {:?} vs {:?}", e.diagram.name(), k.bracket, k.graph))
        },
    )
}

fn ac3(c: &Corpus) -> Outcome {
    over(
        c.reduced_alternating(),
        "star_bracket = star_graph = census formula",
        |e| {
            let (a, b) = (&e.report.censuses.a, &e.report.censuses.b);
            let formula = (a.e + b.e) as i64 - (a.v + b.v) as i64 + 2 + pitchfork_tau(a, b);
            let v = &e.report.verification;
            (v.star_bracket != v.star_graph || v.star_bracket != formula).then(|| {
                format!(
                    "{}: {} {} {formula}",
                    e.diagram.name(),
                    v.star_bracket,
                    v.star_graph
                )
            })
        },
    )
}

fn ac4(c: &Corpus) -> Outcome {
    over(
        c.reduced_alternating()
            .filter(|e| e.report.twist.min_region_size >= 3),
        "tw/3 + 1 - g <= star <= 2 tw",
        |e| {
            let star = e.report.verification.star_bracket;
            let tw = &e.report.twist;
            let lo = lower_bound(tw, e.report.diagram.genus);
            let ok = lo <= Ratio::from(star) && star <= 2 * tw.tw as i64;
            (!ok).then(|| {
                format!(
                    "{}: {lo} <= {star} <= {} (cycle region: {})",
                    e.diagram.name(),
                    2 * tw.tw,
                    tw.has_cycle
                )
            })
        },
    )
}

fn ac5(c: &Corpus) -> Outcome {
    over(
        c.entries.iter(),
        "-2g <= tau* - pitchfork* <= 0, planar = 0",
        |e| {
            let g = e.report.diagram.genus as i64;
            let v = pitchfork_tau(&e.report.censuses.a, &e.report.censuses.b);
            let ok = -2 * g <= v && v <= 0 && (g != 0 || v == 0);
            (!ok).then(|| format!("{}: value {v}, g = {g}", e.diagram.name()))
        },
    )
}

fn ac6(c: &Corpus) -> Outcome {
    over(
        c.reduced_alternating(),
        "e_A + e_B - v_A - v_B + 2 <= 2 tw",
        |e| {
            let (a, b) = (&e.report.censuses.a, &e.report.censuses.b);
            let lhs = (a.e + b.e) as i64 - (a.v + b.v) as i64 + 2;
            let rhs = 2 * e.report.twist.tw as i64;
            (lhs > rhs).then(|| format!("{}: {lhs} > {rhs}", e.diagram.name()))
        },
    )
}

fn ac7(c: &Corpus) -> Outcome {
    over(
        c.reduced_alternating()
            .filter(|e| e.report.twist.min_region_size >= 2),
        "e_short >= tw/3 + 1 - g",
        |e| {
            let es = e.report.censuses.long_short.e_short_classes;
            let lo = lower_bound(&e.report.twist, e.report.diagram.genus);
            (Ratio::from(es as i64) < lo).then(|| {
                format!(
                    "{}: {es} < {lo} (cycle region: {})",
                    e.diagram.name(),
                    e.report.twist.has_cycle
                )
            })
        },
    )
}

fn ac8(c: &Corpus) -> Outcome {
    over(
        c.reduced_alternating()
            .filter(|e| e.report.twist.min_region_size >= 3),
        "e_long = c, v_bigon = c - tw, v_ngon = chi + tw",
        |e| {
            let ls = &e.report.censuses.long_short;
            let cr = e.diagram.crossing_count();
            let tw = e.report.twist.tw;
            let chi = e.report.diagram.euler_characteristic;
            let ok = ls.e_long_classes == cr
                && ls.v_bigon == cr - tw
                && ls.v_ngon as i64 == chi + tw as i64;
            (!ok).then(|| {
                format!(
                    "{}: ({}, {}, {}) vs ({cr}, {}, {}) (cycle region: {})",
                    e.diagram.name(),
                    ls.e_long_classes,
                    ls.v_bigon,
                    ls.v_ngon,
                    cr - tw,
                    chi + tw as i64,
                    e.report.twist.has_cycle
                )
            })
        },
    )
}

fn ac9(c: &Corpus) -> Outcome {
    let mut checked = Vec::new();
    for e in c.entries.iter().filter(|e| e.report.diagram.genus == 0) {
        let ours =
            laurent_of(&e.report.bracket.polynomial).ok_or("essential term in a planar bracket")?;
        if ours != mul(&delta(), &dart_reduced_bracket(&e.diagram)) {
            return Err(format!(
                "{} differs from the classical bracket",
                e.diagram.name()
            ));
        }
        checked.push(e.diagram.name().to_string());
    }
    for (name, code) in planar_codes() {
        let d = surface_bracket::diagram::from_pd_code(name, &code).map_err(|e| e.to_string())?;
        let s = structure(&d);
        let r = bracket(&d, &s.model, BracketOptions::default()).map_err(|e| e.to_string())?;
        if laurent_of(&r.polynomial) != Some(mul(&delta(), &pd_reduced_bracket(&code))) {
            return Err(format!("PD {name} differs from the classical bracket"));
        }
    }
    let k = corpus::kink();
    let s = structure(&k);
    let p = bracket(&k, &s.model, BracketOptions::default())
        .map_err(|e| e.to_string())?
        .polynomial;
    if p.to_string() != "1*A^5 + 1*A^1" {
        return Err(format!("kink gives {p}"));
    }
    Ok(format!(
        "{} planar corpus diagrams and {} PD codes; kink = A^5 + A",
        checked.len(),
        planar_codes().len()
    ))
}

fn ac10(_: &Corpus) -> Outcome {
    let all: Vec<SurfaceDiagram> = corpus::alternating_corpus()
        .into_iter()
        .chain(corpus::negative_fixtures())
        .collect();
    for d in &all {
        let faces = analyze_surface(d);
        let m = build_homology(d, &faces);
        if m.rank() != 2 * faces.genus {
            return Err(format!(
                "{}: rank {} with genus {}",
                d.name(),
                m.rank(),
                faces.genus
            ));
        }
        for i in 0..faces.face_count() {
            if !m.classify_chain(&face_boundary(d, &faces, i)).is_zero() {
                return Err(format!("{}: face {i} has nonzero class", d.name()));
            }
        }
        let j = m.intersection_matrix();
        let skew = (0..m.rank()).all(|a| (0..m.rank()).all(|b| j[a][b] == -j[b][a]));
        if !skew || determinant(j).abs() != 1 {
            return Err(format!("{}: J = {j:?}", d.name()));
        }
    }
    let t1 = corpus::t1();
    let m = build_homology(&t1, &analyze_surface(&t1));
    let j = m.intersection_matrix();
    if j[0][1].abs() != 1 {
        return Err(format!("T1 pairing {j:?}"));
    }
    Ok(format!(
        "{} diagrams; T1 basis pairs to {}",
        all.len(),
        j[0][1]
    ))
}

fn ac11(c: &Corpus) -> Outcome {
    for d in corpus::alternating_corpus()
        .into_iter()
        .chain(corpus::negative_fixtures())
    {
        let s = structure(&d);
        if !s.summary.checkerboard_colorable {
            continue;
        }
        if let Err(e @ StateError::ParityViolation { .. }) =
            bracket(&d, &s.model, BracketOptions::default())
        {
            return Err(format!("{}: {e}", d.name()));
        }
    }
    for e in c.reduced_alternating() {
        let s = structure(&e.diagram);
        if !homological_adequacy(&e.diagram, &s.model) {
            return Err(format!("{} not homologically adequate", e.diagram.name()));
        }
    }
    let t1 = corpus::t1();
    let s = structure(&t1);
    let parity = matches!(
        bracket(&t1, &s.model, BracketOptions::default()),
        Err(StateError::ParityViolation { .. })
    );
    if !parity || t1.check_alternating() {
        return Err("T1 must raise ParityViolation and fail check_alternating".into());
    }
    Ok("checkerboard corpus free of parity violations; adequacy holds; T1 rejected".into())
}

fn ac12(_: &Corpus) -> Outcome {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_surface-bracket");
    let mut compared = 0;
    for d in corpus::alternating_corpus() {
        let path = dir.path().join("d.json");
        std::fs::write(&path, d.to_json()).map_err(|e| e.to_string())?;
        let run = |w: &str| {
            Command::new(bin)
                .args(["verify", "--format", "json", "--workers", w, "--input"])
                .arg(&path)
                .output()
                .map(|o| o.stdout)
                .map_err(|e| e.to_string())
        };
        let one = run("1")?;
        if one.is_empty() || one != run("4")? || one != run("0")? {
            return Err(format!("{}: output depends on worker count", d.name()));
        }
        compared += 1;
    }

    let timed = |d: SurfaceDiagram, opts: BracketOptions| -> Result<Duration, String> {
        let s = structure(&d);
        let t = Instant::now();
        bracket(&d, &s.model, opts).map_err(|e| format!("{}: {e}", d.name()))?;
        Ok(t.elapsed())
    };
    let t16 = timed(torus_grid(4, 4), BracketOptions::sequential())?;
    if t16 > Duration::from_secs(60) {
        return Err(format!("16 crossings took {t16:?}"));
    }
    let t20 = timed(
        torus_grid(2, 10),
        BracketOptions {
            workers: 0,
            max_crossings: 20,
        },
    )?;
    if t20 > Duration::from_secs(600) {
        return Err(format!("20 crossings took {t20:?}"));
    }
    Ok(format!("{compared} reports byte-identical for 1/4/all workers; 16 crossings {t16:.2?} sequential; 20 crossings {t20:.2?}"))
}

fn main() {
    let corpus = Corpus::load();
    let criteria: [Criterion; 12] = [
        ("AC1", "extreme-term law", ac1),
        ("AC2", "dual-path coefficients", ac2),
        ("AC3", "star identity", ac3),
        ("AC4", "twist number bounds", ac4),
        ("AC5", "transverse pair and triangle bound", ac5),
        ("AC6", "edge-vertex upper bound", ac6),
        ("AC7", "short edge lower bound", ac7),
        ("AC8", "long/short counting identities", ac8),
        ("AC9", "genus-zero reduction", ac9),
        ("AC10", "homology substrate", ac10),
        ("AC11", "parity and adequacy", ac11),
        ("AC12", "determinism and performance", ac12),
    ];
    let mut failed = 0;
    for (id, title, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&corpus)))
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] {id} {title}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
