//! Named verification suites over the knot families.

use crate::diagram::{BraidWord, FramedKnot, PlanarDiagram};
use crate::families::{closed_form_alexander_k, necessary_conditions_report, FamilyError, Templates, Variant};
use crate::invariants::{
    alexander, alexander_burau, alexander_from_seifert, branched_cover_homology, conway, cyclotomic_resultant,
    determinant_of, double_cover_homology, fox_milnor, goeritz, roots_of_unity_equal, signature, FoxMilnorResult,
};
use crate::poly::LaurentPoly;
use crate::seifert::{seifert_circles, seifert_matrix};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const SUITES: [&str; 9] = [
    "lemma-alexander",
    "remark-sakuma",
    "prop-surgery",
    "fox-milnor",
    "genus-growth",
    "oracle-burau",
    "augmented-conway",
    "branched-cover",
    "properties",
];

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Stated for the family and checked here.
    Stated,
    /// Follows from a hand calculation or an independent algorithm.
    Derived,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub claim: String,
    pub basis: Basis,
    pub inputs: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    fn new(suite: &str, checks: Vec<Check>) -> Report {
        let pass = checks.iter().all(|c| c.pass);
        Report { suite: suite.into(), checks, pass }
    }
}

fn check(claim: &str, basis: Basis, inputs: impl ToString, expected: impl ToString, computed: impl ToString) -> Check {
    let (expected, computed) = (expected.to_string(), computed.to_string());
    Check { claim: claim.into(), basis, inputs: inputs.to_string(), pass: expected == computed, expected, computed }
}

fn failed(claim: &str, basis: Basis, inputs: impl ToString, expected: impl ToString, e: impl ToString) -> Check {
    Check {
        claim: claim.into(),
        basis,
        inputs: inputs.to_string(),
        expected: expected.to_string(),
        computed: format!("error: {}", e.to_string()),
        pass: false,
    }
}

/// Runs one suite, or every suite for `all`.
pub fn run(suite: &str, t: &Templates) -> Result<Vec<Report>, FamilyError> {
    if suite == "all" {
        return SUITES.iter().map(|s| run_one(s, t)).collect();
    }
    Ok(vec![run_one(suite, t)?])
}

fn run_one(suite: &str, t: &Templates) -> Result<Report, FamilyError> {
    let checks = match suite {
        "lemma-alexander" => k_alexander(t),
        "remark-sakuma" => k_versus_r(t),
        "prop-surgery" => j_twists(t),
        "fox-milnor" => fox_milnor_suite(t),
        "genus-growth" => genus_growth(t),
        "oracle-burau" => oracle_burau(),
        "augmented-conway" => augmented_conway(t),
        "branched-cover" => branched_cover(t),
        "properties" => properties(t),
        other => return Err(FamilyError::Parameter(format!("unknown suite {other:?}; expected one of {}, all", SUITES.join(", ")))),
    };
    Ok(Report::new(suite, checks))
}

pub const K_GRID: [(i64, i64); 18] = [
    (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2),
    (-1, 0), (-1, 1), (-1, 2), (-2, 0), (-2, 1), (-2, 2), (-3, 0), (-3, 1), (-3, 2),
];

fn seifert_alexander(d: &PlanarDiagram) -> Result<LaurentPoly, FamilyError> {
    if d.crossing_count() == 0 {
        return Ok(LaurentPoly::one());
    }
    Ok(alexander_from_seifert(&seifert_matrix(d).map_err(crate::invariants::InvariantError::from)?)?)
}

fn k_alexander(t: &Templates) -> Vec<Check> {
    const CLAIM: &str = "Delta(K_{n,m}) from a Seifert matrix equals the closed form";
    K_GRID
        .par_iter()
        .map(|&(n, m)| {
            let inputs = format!("K[{n},{m}]");
            let expected = closed_form_alexander_k(n, m).expect("n != 0");
            match t.knot_k(n, m).and_then(|d| seifert_alexander(&d)) {
                Ok(p) => check(CLAIM, Basis::Stated, inputs, expected, p),
                Err(e) => failed(CLAIM, Basis::Stated, inputs, expected, e),
            }
        })
        .collect()
}

fn r_polynomial() -> LaurentPoly {
    LaurentPoly::from_terms([(-2, -1), (0, 3), (2, -1)])
}

fn k_versus_r(t: &Templates) -> Vec<Check> {
    let mut out: Vec<Check> = (0..=3)
        .into_par_iter()
        .map(|m| {
            let claim = "Delta(R(m)) = 3 - t^2 - t^-2";
            match t.knot_r(m).and_then(|d| Ok(alexander(&d)?)) {
                Ok(p) => check(claim, Basis::Stated, format!("R[{m}]"), r_polynomial(), p),
                Err(e) => failed(claim, Basis::Stated, format!("R[{m}]"), r_polynomial(), e),
            }
        })
        .collect();
    let grid: Vec<(i64, i64)> = (2..=6).flat_map(|n| (0..=1).map(move |m| (n, m))).collect();
    let more: Vec<Vec<Check>> = grid
        .par_iter()
        .map(|&(n, m)| {
            let inputs = format!("K[{n},{m}], R[{m}], n = {n}");
            let claim = "Delta(K_{n,m}) and Delta(R(m)) agree at n-th roots of unity";
            let claim2 = "necessary conditions for equal n-surgeries of K_{n,m} and R(m)";
            let run = || -> Result<Vec<Check>, FamilyError> {
                let (k, r) = (t.knot_k(n, m)?, t.knot_r(m)?);
                let (dk, dr) = (alexander(&k)?, alexander(&r)?);
                let eq = roots_of_unity_equal(&dk, &dr, n as u64);
                let report = necessary_conditions_report(&FramedKnot::new(k, n)?, &FramedKnot::new(r, n)?)?;
                let detail: Vec<String> = report.checks.iter().map(|c| format!("{}: {} | {}", c.condition, c.left, c.right)).collect();
                Ok(vec![
                    check(claim, Basis::Stated, &inputs, true, eq),
                    Check {
                        claim: claim2.into(),
                        basis: Basis::Stated,
                        inputs: inputs.clone(),
                        expected: "PASS".into(),
                        computed: format!("{} ({})", if report.pass { "PASS" } else { "FAIL" }, detail.join("; ")),
                        pass: report.pass,
                    },
                ])
            };
            run().unwrap_or_else(|e| vec![failed(claim, Basis::Stated, &inputs, true, e)])
        })
        .collect();
    out.extend(more.into_iter().flatten());
    out
}

/// `(Delta, sigma, det, H_1 of the double branched cover)` of a knot.
fn classical(d: &PlanarDiagram) -> Result<String, FamilyError> {
    let delta = alexander(d)?;
    let sigma = signature(d)?;
    let h2 = if d.crossing_count() == 0 { "0".to_string() } else { double_cover_homology(&goeritz(d)?.matrix).to_string() };
    Ok(format!("Delta = {delta}, sigma = {sigma}, det = {}, H1(S2) = {h2}", determinant_of(&delta)))
}

fn j_twists(t: &Templates) -> Vec<Check> {
    let claim = "annulus twists of J_1 (gamma = 0) share Delta, sigma, det and H_1 of the double cover";
    let bp = match t.band_presentation_j(1, Variant::Left) {
        Ok(bp) => bp,
        Err(e) => return vec![failed(claim, Basis::Stated, "AT[J,1,left,n]", "", e)],
    };
    let base = bp.knot().map_err(FamilyError::from).and_then(|d| classical(&d));
    let base = match base {
        Ok(b) => b,
        Err(e) => return vec![failed(claim, Basis::Stated, "AT[J,1,left,0]", "", e)],
    };
    let mut out = vec![check("induced framing of J_1, left", Basis::Stated, "J[1] left", 0, bp.induced_framing())];
    let rows: Vec<Check> = (-3..=3)
        .into_par_iter()
        .map(|n| {
            let inputs = format!("AT[J,1,left,{n}]");
            match bp.annulus_twist(n).map_err(FamilyError::from).and_then(|d| classical(&d)) {
                Ok(c) => check(claim, Basis::Stated, inputs, &base, c),
                Err(e) => failed(claim, Basis::Stated, inputs, &base, e),
            }
        })
        .collect();
    out.extend(rows);
    out
}

fn fox_milnor_suite(t: &Templates) -> Vec<Check> {
    let mut items: Vec<(String, Result<PlanarDiagram, FamilyError>, &'static str)> = Vec::new();
    for &(n, m) in &K_GRID {
        items.push((format!("K[{n},{m}]"), t.knot_k(n, m), "ObstructedNegativeConstant"));
    }
    for m in 0..=2 {
        items.push((format!("K[0,{m}]"), t.knot_k(0, m), "FactorizationFound"));
    }
    for m in 0..=3 {
        items.push((format!("R[{m}]"), t.knot_r(m), "FactorizationFound"));
    }
    items
        .into_par_iter()
        .map(|(name, d, expected)| {
            let claim = if expected == "FactorizationFound" {
                "Delta of a ribbon knot factors as F(t) F(t^-1)"
            } else {
                "Delta(K_{n,m}) has negative constant term, so K_{n,m} is not slice"
            };
            match d.and_then(|d| Ok(alexander(&d)?)) {
                Ok(p) => {
                    let v = fox_milnor(&p);
                    let computed = match &v {
                        FoxMilnorResult::FactorizationFound(f) => format!("FactorizationFound({f})"),
                        other => other.label().to_string(),
                    };
                    Check { claim: claim.into(), basis: Basis::Stated, inputs: name, expected: expected.into(), pass: v.label() == expected, computed }
                }
                Err(e) => failed(claim, Basis::Stated, name, expected, e),
            }
        })
        .collect()
}

fn genus_growth(t: &Templates) -> Vec<Check> {
    let mut items: Vec<(Variant, i64, i64, i64, &'static str)> = Vec::new();
    for n in 1..=3 {
        items.push((Variant::Right, 2, n, 2 * n + 2, "span(Delta)/2 = 2n + 2 for annulus twists of J_2 (gamma = 0)"));
    }
    for n in -3..=3 {
        items.push((Variant::Left, 1, n, 2, "span(Delta)/2 = 2 for annulus twists of J_1"));
    }
    let mut out = vec![check("induced framing of J_2, right", Basis::Stated, "J[2] right", 0, t.band_presentation_j(2, Variant::Right).map(|b| b.induced_framing()).unwrap_or(i64::MIN))];
    let rows: Vec<Check> = items
        .into_par_iter()
        .map(|(v, m, n, g, claim)| {
            let inputs = format!("AT[J,{m},{v},{n}]");
            match t.band_presentation_j(m, v).and_then(|bp| Ok(bp.annulus_twist(n)?)).and_then(|d| Ok(alexander(&d)?)) {
                Ok(p) => check(claim, Basis::Stated, inputs, g, p.span() / 2),
                Err(e) => failed(claim, Basis::Stated, inputs, g, e),
            }
        })
        .collect();
    out.extend(rows);
    out
}

/// Knot closures among braids of length at most 6 on at most 3 strands.
pub fn burau_corpus() -> Vec<BraidWord> {
    BraidWord::corpus(6, 3).into_iter().filter(|b| b.closure_components() == 1).collect()
}

fn oracle_burau() -> Vec<Check> {
    let claim = "Seifert-matrix Delta equals reduced-Burau Delta";
    let corpus = burau_corpus();
    let bad: Vec<Check> = corpus
        .par_iter()
        .filter_map(|b| {
            let burau = alexander_burau(b);
            let seifert = b.closure().map_err(FamilyError::from).and_then(|d| seifert_alexander(&d));
            match seifert {
                Ok(p) if p == burau => None,
                Ok(p) => Some(check(claim, Basis::Derived, b, burau, p)),
                Err(e) => Some(failed(claim, Basis::Derived, b, burau, e)),
            }
        })
        .collect();
    let summary = check(
        "braid knot closures agree between the two paths",
        Basis::Derived,
        "braids of length <= 6 on <= 3 strands, up to cyclic reduction",
        format!("{} of {}", corpus.len(), corpus.len()),
        format!("{} of {}", corpus.len() - bad.len(), corpus.len()),
    );
    std::iter::once(summary).chain(bad).collect()
}

fn augmented_conway(t: &Templates) -> Vec<Check> {
    let mut out = Vec::new();
    for (m, v) in [(1, Variant::Left), (3, Variant::Left), (2, Variant::Left), (2, Variant::Right)] {
        let inputs = format!("AUG[J,{m},{v}]");
        let d = t.band_presentation_j(m, v).and_then(|bp| Ok(bp.augmented_link()?));
        match d {
            Ok(d) => {
                out.push(check("the augmented link has three components", Basis::Trivial, &inputs, 3, d.component_count()));
                if v == Variant::Left && m % 2 == 1 {
                    let claim = "the augmented link has nonzero Conway polynomial";
                    match conway(&d) {
                        Ok(c) => out.push(Check {
                            claim: claim.into(),
                            basis: Basis::Stated,
                            inputs,
                            expected: "nonzero".into(),
                            pass: !c.is_zero(),
                            computed: c.to_string(),
                        }),
                        Err(e) => out.push(failed(claim, Basis::Stated, inputs, "nonzero", e)),
                    }
                }
            }
            Err(e) => out.push(failed("the augmented link has three components", Basis::Trivial, inputs, 3, e)),
        }
    }
    out
}

fn named_knots(t: &Templates) -> Vec<(String, Result<PlanarDiagram, FamilyError>)> {
    vec![
        ("trefoil".into(), Ok("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]".parse().expect("trefoil PD"))),
        ("figure-eight".into(), BraidWord::new(3, &[1, -2, 1, -2]).and_then(|b| b.closure()).map_err(FamilyError::from)),
        ("K[1,0]".into(), t.knot_k(1, 0)),
        ("R[0]".into(), t.knot_r(0)),
    ]
}

fn branched_cover(t: &Templates) -> Vec<Check> {
    let items: Vec<(String, Result<PlanarDiagram, FamilyError>, u64)> = named_knots(t)
        .into_iter()
        .flat_map(|(name, d)| (2..=6).map(move |n| (name.clone(), d.clone(), n)))
        .collect();
    items
        .into_par_iter()
        .flat_map(|(name, d, n)| {
            let claim = "order of H_1 of the n-fold branched cover equals the cyclotomic resultant";
            let inputs = format!("{name}, n = {n}");
            let run = || -> Result<Vec<Check>, FamilyError> {
                let d = d?;
                let v = seifert_matrix(&d).map_err(crate::invariants::InvariantError::from)?;
                let h = branched_cover_homology(&v, n)?;
                let delta = alexander(&d)?;
                let res = cyclotomic_resultant(&delta, n);
                let order = h.order.clone().unwrap_or_else(|| BigInt::from(0));
                let mut out = vec![check(claim, Basis::Derived, &inputs, res, &order)];
                if n == 2 {
                    out.push(check("order of H_1 of the double cover equals |Delta(-1)|", Basis::Derived, &inputs, determinant_of(&delta), order));
                }
                Ok(out)
            };
            run().unwrap_or_else(|e| vec![failed(claim, Basis::Derived, &inputs, "", e)])
        })
        .collect()
}

/// Every knot the other suites build, by name.
pub fn suite_knots(t: &Templates) -> Vec<(String, Result<PlanarDiagram, FamilyError>)> {
    let mut v = named_knots(t);
    for &(n, m) in &K_GRID {
        v.push((format!("K[{n},{m}]"), t.knot_k(n, m)));
    }
    for n in [0, 4, 5, 6] {
        for m in 0..=2 {
            v.push((format!("K[{n},{m}]"), t.knot_k(n, m)));
        }
    }
    for m in 1..=3 {
        v.push((format!("R[{m}]"), t.knot_r(m)));
    }
    for n in -3..=3 {
        v.push((format!("AT[J,1,left,{n}]"), t.band_presentation_j(1, Variant::Left).and_then(|bp| Ok(bp.annulus_twist(n)?))));
    }
    for n in 1..=3 {
        v.push((format!("AT[J,2,right,{n}]"), t.band_presentation_j(2, Variant::Right).and_then(|bp| Ok(bp.annulus_twist(n)?))));
    }
    v
}

/// Failures of the basic knot properties, empty when all hold.
pub fn property_failures(d: &PlanarDiagram) -> Result<Vec<String>, FamilyError> {
    let mut bad = Vec::new();
    let delta = alexander(d)?;
    if !delta.is_symmetric() || delta.eval_int(1) != Some(BigInt::from(1)) {
        bad.push(format!("Delta = {delta} is not normalised"));
    }
    let sigma = signature(d)?;
    if sigma % 2 != 0 {
        bad.push(format!("odd signature {sigma}"));
    }
    let det = determinant_of(&delta);
    if &det % 2 == BigInt::from(0) {
        bad.push(format!("even determinant {det}"));
    }
    if d.crossing_count() > 0 {
        let genus = seifert_circles(d).map_err(crate::invariants::InvariantError::from)?.genus;
        if delta.span() / 2 > genus {
            bad.push(format!("span(Delta)/2 = {} exceeds the genus bound {genus}", delta.span() / 2));
        }
    }
    let mirror = d.mirror();
    if signature(&mirror)? != -sigma || mirror.writhe() != -d.writhe() {
        bad.push("mirror does not negate signature and writhe".into());
    }
    Ok(bad)
}

fn properties(t: &Templates) -> Vec<Check> {
    let claim = "Delta normalised, sigma even, det odd, span/2 <= genus, mirror negates sigma and writhe";
    let mut out: Vec<Check> = suite_knots(t)
        .into_par_iter()
        .map(|(name, d)| match d.and_then(|d| property_failures(&d)) {
            Ok(bad) => check(claim, Basis::Derived, name, "ok", if bad.is_empty() { "ok".to_string() } else { bad.join("; ") }),
            Err(e) => failed(claim, Basis::Derived, name, "ok", e),
        })
        .collect();
    let corpus = burau_corpus();
    let bad: Vec<String> = corpus
        .par_iter()
        .filter_map(|b| match b.closure().map_err(FamilyError::from).and_then(|d| property_failures(&d)) {
            Ok(v) if v.is_empty() => None,
            Ok(v) => Some(format!("{b}: {}", v.join("; "))),
            Err(e) => Some(format!("{b}: {e}")),
        })
        .collect();
    out.push(check(
        claim,
        Basis::Derived,
        format!("{} braid knot closures", corpus.len()),
        "ok",
        if bad.is_empty() { "ok".to_string() } else { bad.join("; ") },
    ));
    out
}
