use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use frieze_core::arith::{format_point, parse, parse_point, rational, LaurentPolynomial, Point, Rational};
use frieze_core::invariants::{component_equations, multiplicities_one_based, symmetry_invariant, InvariantCertificate};
use frieze_core::orbit::Orbit;
use frieze_core::quiver::{LoadedQuiver, Quiver, QuiverClass, QuiverJson};
use frieze_core::variety::{detect_components, stabilized_vanishing_space, ComponentReport, VanishingSpace};
use frieze_core::Budget;
use serde::Serialize;

use crate::{CliError, QuiverArgs};

pub(crate) fn read_quiver(path: &Path) -> Result<LoadedQuiver, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let json: QuiverJson =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let loaded = json.load()?;
    if let Some(perm) = &loaded.relabeling {
        let map: Vec<String> = perm.iter().enumerate().map(|(old, new)| format!("{}->{}", old + 1, new + 1)).collect();
        eprintln!("note: vertices relabelled admissibly ({})", map.join(", "));
    }
    Ok(loaded)
}

/// Quiver plus start point, with the point permuted along any relabelling.
fn load(input: &QuiverArgs) -> Result<(Quiver, Point), CliError> {
    let loaded = read_quiver(&input.quiver)?;
    let n = loaded.quiver.n();
    let start = match &input.start {
        Some(s) => parse_point(s)?,
        None => vec![rational(1); n],
    };
    if start.len() != n {
        return Err(CliError::Input(format!(
            "start point has {} coordinates, quiver has {n} vertices",
            start.len()
        )));
    }
    let start = match &loaded.relabeling {
        Some(perm) => {
            let mut p = start.clone();
            for (old, &new) in perm.iter().enumerate() {
                p[new] = start[old].clone();
            }
            p
        }
        None => start,
    };
    Ok((loaded.quiver, start))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn strings(p: &[Rational]) -> Vec<String> {
    p.iter().map(|c| c.to_string()).collect()
}

#[derive(Serialize)]
struct OrbitLine {
    t: usize,
    point: Vec<String>,
}

pub(crate) fn orbit(input: &QuiverArgs, steps: usize, budget: &Budget, pretty: bool) -> Result<String, CliError> {
    let (q, start) = load(input)?;
    let mut orbit = Orbit::new(&q, &start, budget.max_bits)?;
    let mut out = String::new();
    for t in 0..=steps {
        let p = orbit.point(t)?;
        if pretty {
            writeln!(out, "t={t} {}", format_point(p)).unwrap();
        } else {
            writeln!(out, "{}", to_json(&OrbitLine { t, point: strings(p) })).unwrap();
        }
    }
    if pretty {
        if let Some(p) = orbit.period() {
            writeln!(out, "period {p}").unwrap();
        }
    }
    Ok(out)
}

#[derive(Serialize)]
pub(crate) struct SpaceReport<'a> {
    degree_bound: u32,
    dim: usize,
    basis: &'a [LaurentPolynomial],
    points_used: usize,
    samples: &'a [usize],
    stabilized: bool,
}

impl<'a> From<&'a VanishingSpace> for SpaceReport<'a> {
    fn from(v: &'a VanishingSpace) -> Self {
        SpaceReport {
            degree_bound: v.degree_bound,
            dim: v.dim(),
            basis: &v.basis,
            points_used: v.points_used,
            samples: &v.samples,
            stabilized: v.stabilized,
        }
    }
}

pub(crate) fn pretty_space(out: &mut String, v: &VanishingSpace) {
    writeln!(
        out,
        "degree <= {}, dimension {}, {} points, {}",
        v.degree_bound,
        v.dim(),
        v.points_used,
        if v.stabilized { "stabilized" } else { "not stabilized" }
    )
    .unwrap();
    for f in &v.basis {
        writeln!(out, "  {f}").unwrap();
    }
}

pub(crate) fn vanish(
    input: &QuiverArgs,
    degree: u32,
    offset: usize,
    stride: usize,
    budget: &Budget,
    pretty: bool,
) -> Result<String, CliError> {
    let (q, start) = load(input)?;
    let v = stabilized_vanishing_space(&q, &start, degree, offset, stride, budget)?;
    if pretty {
        let mut out = String::new();
        pretty_space(&mut out, &v);
        Ok(out)
    } else {
        Ok(to_json(&SpaceReport::from(&v)) + "\n")
    }
}

pub(crate) fn pretty_components(out: &mut String, r: &ComponentReport) {
    writeln!(out, "m = {}, cycle verified: {}", r.m, r.verified_cycle).unwrap();
    if let Some(p) = r.period {
        writeln!(out, "orbit period {p}").unwrap();
    }
    for c in &r.classes {
        writeln!(
            out,
            "class {}: dimension estimate {}, {} points{}",
            c.residue,
            c.dim_estimate,
            c.points_used,
            if c.stabilized { "" } else { " (not stabilized)" }
        )
        .unwrap();
        for f in &c.basis {
            writeln!(out, "  {f}").unwrap();
        }
    }
}

pub(crate) fn components(
    input: &QuiverArgs,
    degree: u32,
    m_max: usize,
    budget: &Budget,
    pretty: bool,
) -> Result<String, CliError> {
    let (q, start) = load(input)?;
    let c = detect_components(&q, &start, degree, m_max, budget)?;
    let report = ComponentReport::from(&c);
    if pretty {
        let mut out = String::new();
        pretty_components(&mut out, &report);
        Ok(out)
    } else {
        Ok(to_json(&report) + "\n")
    }
}

pub(crate) fn pretty_certificate(out: &mut String, c: &InvariantCertificate) {
    writeln!(out, "h = {}", c.h).unwrap();
    writeln!(out, "period {}", c.period).unwrap();
    let cs: Vec<String> = c.constants.iter().map(|x| x.to_string()).collect();
    writeln!(out, "constants ({})", cs.join(", ")).unwrap();
    for (t, f) in c.iterates.iter().enumerate() {
        writeln!(out, "h o mu^{t} = {f}").unwrap();
    }
    for (j, row) in c.equations.iter().enumerate() {
        for (t, f) in row.iter().enumerate() {
            writeln!(out, "F[{j}][{t}] = {f}").unwrap();
        }
    }
}

pub(crate) fn invariant(
    input: &QuiverArgs,
    h: &str,
    k_max: usize,
    budget: &Budget,
    pretty: bool,
) -> Result<String, CliError> {
    let (q, start) = load(input)?;
    let h = parse(h, q.n())?;
    let cert = component_equations(&q, &h, &start, k_max, budget)?;
    if pretty {
        let mut out = String::new();
        pretty_certificate(&mut out, &cert);
        Ok(out)
    } else {
        Ok(to_json(&cert) + "\n")
    }
}

#[derive(Serialize)]
struct ClassifyReport {
    quiver: QuiverJson,
    #[serde(flatten)]
    class: QuiverClass,
    relabeling: Option<Vec<usize>>,
}

pub(crate) fn classify(path: &Path, pretty: bool) -> Result<String, CliError> {
    let loaded = read_quiver(path)?;
    let class = loaded.quiver.classify();
    if pretty {
        let kind = serde_json::to_value(class.kind).expect("serializable");
        let kind = kind.as_str().unwrap_or_default().to_string();
        return Ok(match &class.diagram {
            Some(d) => format!("{} {kind} {d}\n", loaded.quiver),
            None => format!("{} {kind}\n", loaded.quiver),
        });
    }
    let report = ClassifyReport {
        quiver: QuiverJson::from(&loaded.quiver),
        class,
        relabeling: loaded.relabeling.map(|p| p.iter().map(|v| v + 1).collect()),
    };
    Ok(to_json(&report) + "\n")
}

#[derive(Serialize)]
struct SymmetryReport {
    sink: usize,
    source: usize,
    multiplicities: BTreeMap<usize, u32>,
    h: frieze_core::arith::RationalFunction,
    f0: LaurentPolynomial,
    f1: LaurentPolynomial,
    period: usize,
}

pub(crate) fn symmetry(path: &Path, budget: &Budget, pretty: bool) -> Result<String, CliError> {
    let loaded = read_quiver(path)?;
    let s = symmetry_invariant(&loaded.quiver, budget.max_terms)?;
    if pretty {
        return Ok(format!(
            "sink {} source {}\nh = {}\nF0 = {}\nF1 = {}\nperiod {}\n",
            s.pair.sink + 1,
            s.pair.source + 1,
            s.h,
            s.f0,
            s.f1,
            s.period
        ));
    }
    let report = SymmetryReport {
        sink: s.pair.sink + 1,
        source: s.pair.source + 1,
        multiplicities: multiplicities_one_based(&s.pair),
        h: s.h,
        f0: s.f0,
        f1: s.f1,
        period: s.period,
    };
    Ok(to_json(&report) + "\n")
}
