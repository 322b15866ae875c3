//! Worked examples regenerated from scratch and compared with known values.
//! Polynomials are compared up to a nonzero scalar, spaces by reduced span.

use std::fmt::Write as _;

use frieze_core::arith::{parse, parse_polynomial, point, ratio, rational, LaurentPolynomial, Point, Rational};
use frieze_core::cluster::{compose, ClusterState};
use frieze_core::invariants::{component_equations, symmetry_invariant, InvariantCertificate};
use frieze_core::orbit::{Orbit, OrbitError};
use frieze_core::quiver::catalog::{affine_a, double_a3, kronecker, linear_a, two_tubes};
use frieze_core::quiver::{Quiver, QuiverJson};
use frieze_core::variety::linalg::{determinant, integer_row};
use frieze_core::variety::{
    canonical_span, detect_components, dimension_estimate, stabilized_vanishing_space, truncated_ideal_span,
    ComponentReport, EvaluationMatrix, MonomialBasis,
};
use frieze_core::Budget;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::commands::{pretty_certificate, pretty_components, pretty_space, SpaceReport};
use crate::{Case, CliError};

#[derive(Debug, Serialize)]
struct Check {
    name: String,
    pass: bool,
    expected: String,
    found: String,
}

struct Golden {
    case: String,
    quiver: Quiver,
    checks: Vec<Check>,
    data: Map<String, Value>,
    text: String,
}

impl Golden {
    fn new(case: &str, quiver: &Quiver) -> Self {
        Golden {
            case: case.to_string(),
            quiver: quiver.clone(),
            checks: Vec::new(),
            data: Map::new(),
            text: format!("case {case}: {quiver}\n"),
        }
    }

    fn check(&mut self, name: &str, pass: bool, expected: impl ToString, found: impl ToString) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            expected: expected.to_string(),
            found: found.to_string(),
        });
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, expected: T, found: T) {
        let pass = expected == found;
        self.check(name, pass, format!("{expected:?}"), format!("{found:?}"));
    }

    fn scalar(&mut self, name: &str, expected: &LaurentPolynomial, found: &LaurentPolynomial) {
        let pass = up_to_scalar(expected, found);
        self.check(name, pass, expected, found);
    }

    fn record(&mut self, key: &str, value: impl Serialize) {
        self.data
            .insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    fn finish(self, pretty: bool) -> Result<String, CliError> {
        let failed: Vec<&Check> = self.checks.iter().filter(|c| !c.pass).collect();
        let output = if pretty {
            let mut out = self.text.clone();
            for c in &self.checks {
                writeln!(out, "{} {}", if c.pass { "ok  " } else { "FAIL" }, c.name).unwrap();
            }
            out
        } else {
            let mut doc = Map::new();
            doc.insert("case".into(), json!(self.case));
            doc.insert("quiver".into(), json!(QuiverJson::from(&self.quiver)));
            for (k, v) in self.data {
                doc.insert(k, v);
            }
            doc.insert("checks".into(), json!(self.checks));
            doc.insert("passed".into(), json!(failed.is_empty()));
            serde_json::to_string(&Value::Object(doc)).expect("serializable") + "\n"
        };
        if failed.is_empty() {
            return Ok(output);
        }
        let mut diff = String::new();
        for c in failed {
            writeln!(diff, "{}\n- expected: {}\n+ found:    {}", c.name, c.expected, c.found).unwrap();
        }
        Err(CliError::Golden {
            case: self.case,
            diff,
            report: output,
        })
    }
}

fn up_to_scalar(a: &LaurentPolynomial, b: &LaurentPolynomial) -> bool {
    a.nvars() == b.nvars() && !a.is_zero() && a.primitive_part().1 == b.primitive_part().1
}

fn poly(s: &str, n: usize) -> LaurentPolynomial {
    parse_polynomial(s, n).expect("valid golden polynomial")
}

fn fmt_points(points: &[Point]) -> String {
    points
        .iter()
        .map(|p| frieze_core::arith::format_point(p))
        .collect::<Vec<_>>()
        .join(" ")
}

fn point_strings(points: &[Point]) -> Vec<Vec<String>> {
    points.iter().map(|p| p.iter().map(|c| c.to_string()).collect()).collect()
}

/// `P_0..=P_max`, stopping early when the bit budget runs out.
fn orbit_points(q: &Quiver, start: &[Rational], max: usize, budget: &Budget) -> Result<Vec<Point>, CliError> {
    let mut orbit = Orbit::new(q, start, budget.max_bits)?;
    let mut out = Vec::new();
    for t in 0..=max {
        match orbit.point(t) {
            Ok(p) => out.push(p.clone()),
            Err(OrbitError::BudgetExceeded { .. }) if t > 0 => break,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn certificate_section(g: &mut Golden, cert: &InvariantCertificate, points: &[Point]) {
    let holds = cert.holds_on(points);
    g.check(
        "certificate equations vanish on the orbit",
        holds,
        format!("0 on {} points", points.len()),
        holds,
    );
    pretty_certificate(&mut g.text, cert);
    g.record("certificate", cert);
}

pub(crate) fn run(case: Case, n: usize, budget: &Budget, pretty: bool) -> Result<String, CliError> {
    match case {
        Case::A2 => a2(budget),
        Case::Kronecker => kronecker_case(budget),
        Case::A3double => a3double(budget),
        Case::Atilde2 => atilde2(budget),
        Case::Atilden => atilden(n, budget),
        Case::Qa5 => qa5(budget),
    }?
    .finish(pretty)
}

fn a2(budget: &Budget) -> Result<Golden, CliError> {
    let q = linear_a(2);
    let mut g = Golden::new("a2", &q);
    let start = point(&[1, 1]);
    let pts = orbit_points(&q, &start, 5, budget)?;
    let expected: Vec<Point> = [[1, 1], [2, 3], [2, 1], [1, 2], [3, 2], [1, 1]].iter().map(|p| point(p)).collect();
    g.check("orbit", pts == expected, fmt_points(&expected), fmt_points(&pts));
    g.record("orbit", point_strings(&pts));
    writeln!(g.text, "orbit {}", fmt_points(&pts)).unwrap();

    let v = stabilized_vanishing_space(&q, &start, 2, 0, 1, budget)?;
    let ellipse = poly("x1^2 - x1*x2 + x2^2 - 2*x1 - 2*x2 + 3", 2);
    g.eq("quadric count", 1, v.dim());
    if let Some(f) = v.basis.first() {
        g.scalar("quadric", &ellipse, f);
        let coeffs = MonomialBasis::new(2, 2).coefficients(f).unwrap_or_default();
        let kernel = point(&[3, -2, -2, 1, -1, 1]);
        let scaled: Vec<Rational> = coeffs.iter().map(|c| c * &coeffs[0].recip() * rational(3)).collect();
        g.eq("kernel vector", kernel, scaled);
    }
    pretty_space(&mut g.text, &v);
    g.record("vanishing", SpaceReport::from(&v));
    let lines = stabilized_vanishing_space(&q, &start, 1, 0, 1, budget)?;
    g.eq("no line through the orbit", 0, lines.dim());

    let c = detect_components(&q, &start, 2, 10, budget)?;
    g.eq("components", 5, c.m);
    g.eq("period", Some(5), c.period);
    g.eq("cycle verified", true, c.verified_cycle);
    g.eq("dimension estimates", vec![0; 5], c.dims.clone());
    let report = ComponentReport::from(&c);
    pretty_components(&mut g.text, &report);
    g.record("components", report);
    Ok(g)
}

fn kronecker_case(budget: &Budget) -> Result<Golden, CliError> {
    let q = kronecker(2);
    let mut g = Golden::new("kronecker", &q);
    let start = point(&[1, 1]);
    let pts = orbit_points(&q, &start, 2, budget)?;
    let expected: Vec<Point> = [[1, 1], [2, 5], [13, 34]].iter().map(|p| point(p)).collect();
    g.check("orbit prefix", pts == expected, fmt_points(&expected), fmt_points(&pts));
    g.record("orbit", point_strings(&pts));
    writeln!(g.text, "orbit {}", fmt_points(&pts)).unwrap();

    let m = EvaluationMatrix::new(&pts, &MonomialBasis::new(2, 1));
    let rows: Vec<_> = m.rows.iter().map(|r| integer_row(r)).collect();
    let det = determinant(&rows);
    g.eq("degree-1 determinant", "-15".to_string(), det.to_string());
    writeln!(g.text, "determinant {det}").unwrap();

    let markov = poly("x1^2 + x2^2 + 1 - 3*x1*x2", 2);
    let v = stabilized_vanishing_space(&q, &start, 2, 0, 1, budget)?;
    g.eq("quadric count", 1, v.dim());
    if let Some(f) = v.basis.first() {
        g.scalar("Markov-type quadric", &markov, f);
    }
    pretty_space(&mut g.text, &v);
    g.record("vanishing", SpaceReport::from(&v));
    if v.dim() > 0 {
        let e = dimension_estimate(&v, &point(&[2, 5]))?;
        g.eq("dimension estimate at (2,5)", 1, e.value);
        g.record("dim_estimate", e);
    }

    let h = parse("(x1^2 + x2^2 + 1)/(x1*x2)", 2)?;
    let cert = component_equations(&q, &h, &start, 3, budget)?;
    g.eq("invariant period", 1, cert.period);
    g.eq("constant", vec![rational(3)], cert.constants.clone());
    g.scalar("equation from h", &markov, &cert.equations[0][0]);
    let pts = orbit_points(&q, &start, 8, budget)?;
    certificate_section(&mut g, &cert, &pts);

    let c = detect_components(&q, &start, 2, 6, budget)?;
    g.eq("components", 1, c.m);
    g.eq("cycle verified", true, c.verified_cycle);
    let report = ComponentReport::from(&c);
    pretty_components(&mut g.text, &report);
    g.record("components", report);
    Ok(g)
}

fn a3double(budget: &Budget) -> Result<Golden, CliError> {
    let q = double_a3();
    let mut g = Golden::new("a3double", &q);
    let start = point(&[1, 1, 1]);
    let pts = orbit_points(&q, &start, 8, budget)?;
    g.eq("first step", point(&[2, 5, 26]), pts[1].clone());
    g.record("orbit", point_strings(&pts));
    writeln!(g.text, "orbit {}", fmt_points(&pts[..2])).unwrap();

    let s = symmetry_invariant(&q, budget.max_terms)?;
    g.eq("symmetry pair", (0, 2), (s.pair.sink, s.pair.source));
    let f0 = poly("x2^2 + 1 - 2*x1*x3", 3);
    let f1 = poly("2*x2^2 + 2 - x1*x3", 3);
    g.check("h", s.h == parse("(1 + x2^2)/(x1*x3)", 3)?, "(1 + x2^2)/(x1*x3)", &s.h);
    g.scalar("F0", &f0, &s.f0);
    g.scalar("F1", &f1, &s.f1);
    g.eq("symmetry period", 2, s.period);
    let mu = ClusterState::coxeter_power(&q, 1, budget.max_terms)?;
    let image = compose(&s.h, &mu, budget.max_terms)?;
    let inverse = s.h.recip()?;
    g.check("h o mu = 1/h", image == inverse, &inverse, &image);
    writeln!(g.text, "h = {}\nF0 = {}\nF1 = {}", s.h, s.f0, s.f1).unwrap();

    let cert = component_equations(&q, &s.h, &start, 2, budget)?;
    g.eq("constants", vec![rational(2), ratio(1, 2)], cert.constants.clone());
    g.scalar("F[0][0]", &f0, &cert.equations[0][0]);
    g.scalar("F[1][0]", &f1, &cert.equations[1][0]);
    certificate_section(&mut g, &cert, &pts);

    // coordinates grow too fast for degree 2; the linear space is still cheap
    let v = stabilized_vanishing_space(&q, &start, 1, 0, 1, budget)?;
    pretty_space(&mut g.text, &v);
    g.record("vanishing", SpaceReport::from(&v));
    Ok(g)
}

fn atilde2(budget: &Budget) -> Result<Golden, CliError> {
    let q = affine_a(2);
    let mut g = Golden::new("atilde2", &q);
    let start = point(&[1, 1, 1]);
    let h = parse("(x1 + x3)/x2", 3)?;
    let cert = component_equations(&q, &h, &start, 4, budget)?;
    g.eq("invariant period", 2, cert.period);
    g.eq("constants", vec![rational(2), rational(3)], cert.constants.clone());
    let expected = [
        ["x1 + x3 - 2*x2", "x1*x2 + x2*x3 + 1 - 3*x1*x3"],
        ["x1 + x3 - 3*x2", "x1*x2 + x2*x3 + 1 - 2*x1*x3"],
    ];
    for (j, row) in expected.iter().enumerate() {
        for (t, f) in row.iter().enumerate() {
            g.scalar(&format!("F[{j}][{t}]"), &poly(f, 3), &cert.equations[j][t]);
        }
    }
    let pts = orbit_points(&q, &start, 12, budget)?;
    certificate_section(&mut g, &cert, &pts);

    let c = detect_components(&q, &start, 2, 6, budget)?;
    g.eq("components", 2, c.m);
    g.eq("cycle verified", true, c.verified_cycle);
    g.eq("dimension estimates", vec![1, 1], c.dims.clone());
    for (j, row) in expected.iter().enumerate() {
        let gens: Vec<_> = row.iter().map(|f| poly(f, 3)).collect();
        if let Some(class) = c.classes.get(j) {
            let span = truncated_ideal_span(&gens, 3, 2);
            g.check(
                &format!("class {j} space"),
                span == class.basis,
                format!("{} polynomials", span.len()),
                format!("{} polynomials", class.basis.len()),
            );
        }
    }
    let report = ComponentReport::from(&c);
    pretty_components(&mut g.text, &report);
    g.record("components", report);
    Ok(g)
}

fn atilden(n: usize, budget: &Budget) -> Result<Golden, CliError> {
    if n < 3 {
        return Err(CliError::Input(format!("atilden needs n >= 3, got {n}")));
    }
    let q = affine_a(n);
    let vars = n + 1;
    let mut g = Golden::new(&format!("atilden-{n}"), &q);
    let start = vec![rational(1); vars];
    let h = parse(&format!("(x{} + x{})/x{}", n - 1, n + 1, n), vars)?;
    let cert = component_equations(&q, &h, &start, 2 * n, budget)?;
    g.eq("invariant period", n, cert.period);
    let mut cs = vec![rational(2); n];
    cs[1] = rational(3);
    g.eq("constants", cs, cert.constants.clone());

    let mut linear = Vec::new();
    for k in 2..=n {
        let f = poly(&format!("x{} + x{} - 2*x{}", k - 1, k + 1, k), vars);
        if let Some(found) = cert.equations.first().and_then(|row| row.get(k % n)) {
            g.scalar(&format!("F[0][{}]", k % n), &f, found);
        }
        linear.push(f);
    }
    let quadric = poly(&format!("x1*x{n} + x2*x{} + 1 - 3*x1*x{}", n + 1, n + 1), vars);
    if let Some(found) = cert.equations.first().and_then(|row| row.get(1)) {
        g.scalar("F[0][1]", &quadric, found);
    }
    let pts = orbit_points(&q, &start, 3 * n, budget)?;
    certificate_section(&mut g, &cert, &pts);

    let v = stabilized_vanishing_space(&q, &start, 1, 0, n, budget)?;
    let expected = canonical_span(&linear, vars, 1);
    g.check(
        "class 0 linear span",
        expected == v.basis,
        format!("{} linear forms", expected.len()),
        format!("{} linear forms", v.basis.len()),
    );
    pretty_space(&mut g.text, &v);
    g.record("class0_linear", SpaceReport::from(&v));
    Ok(g)
}

fn qa5(budget: &Budget) -> Result<Golden, CliError> {
    let q = two_tubes();
    let mut g = Golden::new("qa5", &q);
    let start = vec![rational(1); 5];
    let c = detect_components(&q, &start, 2, 6, budget)?;
    // exploratory: the count is recorded, not compared
    writeln!(g.text, "detected m = {} (6 expected by conjecture)", c.m).unwrap();
    let report = ComponentReport::from(&c);
    pretty_components(&mut g.text, &report);
    g.record("components", report);
    Ok(g)
}
