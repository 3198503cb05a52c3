//! Text and JSON rendering.

use crate::pattern::Row;
use knotkit::families::{Annotation, FamilyDescriptor};
use knotkit::invariants::{conway, summarize, BranchedCoverHomology, ConwayPoly, InvariantSummary};
use knotkit::verify::Report;
use knotkit::{LaurentPoly, PlanarDiagram};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use std::fmt::Write;

pub const SCHEMA_VERSION: u32 = 1;

pub struct Invariants {
    pub components: usize,
    pub crossings: usize,
    pub writhe: i64,
    /// Knot invariants; `None` for links.
    pub knot: Option<InvariantSummary>,
    pub conway: ConwayPoly,
    pub annotations: Vec<Annotation>,
}

impl Invariants {
    pub fn compute(d: &PlanarDiagram, covers: &[u64], f: Option<&FamilyDescriptor>) -> Result<Invariants, String> {
        let components = d.component_count();
        let (knot, conway) = if components == 1 {
            let s = summarize(d, covers).map_err(|e| e.to_string())?;
            let c = ConwayPoly(s.conway.clone());
            (Some(s), c)
        } else {
            if !covers.is_empty() {
                return Err(format!("branched covers need a knot, found {components} components"));
            }
            (None, conway(d).map_err(|e| e.to_string())?)
        };
        Ok(Invariants {
            components,
            crossings: d.crossing_count(),
            writhe: d.writhe(),
            knot,
            conway,
            annotations: f.map(|f| f.annotations()).unwrap_or_default(),
        })
    }

    pub fn to_text(&self, input: &str) -> String {
        let mut lines: Vec<(String, String)> = vec![
            ("input".into(), input.into()),
            ("components".into(), self.components.to_string()),
            ("crossings".into(), self.crossings.to_string()),
            ("writhe".into(), self.writhe.to_string()),
        ];
        if let Some(k) = &self.knot {
            lines.push(("seifert circles".into(), k.seifert_circles.to_string()));
            lines.push(("genus bound".into(), k.genus_bound.to_string()));
            lines.push(("alexander".into(), k.alexander.to_string()));
        }
        lines.push(("conway".into(), self.conway.to_string()));
        if let Some(k) = &self.knot {
            lines.push(("signature".into(), k.signature.to_string()));
            lines.push(("determinant".into(), k.determinant.to_string()));
            for (n, h) in &k.branched {
                lines.push((format!("H1(S{n})"), h.to_string()));
            }
        }
        for a in &self.annotations {
            lines.push((format!("stated {}", a.quantity), a.value.clone()));
        }
        let w = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        lines.iter().map(|(k, v)| format!("{k:<w$}  {v}\n")).collect()
    }

    pub fn to_json(&self, input: &str) -> Value {
        let mut v = self.fields();
        v["schema_version"] = json!(SCHEMA_VERSION);
        v["input"] = json!(input);
        v
    }

    fn fields(&self) -> Value {
        let k = self.knot.as_ref();
        json!({
            "components": self.components,
            "crossings": self.crossings,
            "writhe": self.writhe,
            "seifert_circles": k.map(|k| k.seifert_circles),
            "genus_bound": k.map(|k| k.genus_bound),
            "alexander": k.map(|k| poly(&k.alexander)),
            "conway": poly(&self.conway.0),
            "signature": k.map(|k| k.signature),
            "determinant": k.map(|k| int(&k.determinant)),
            "branched": k.map(|k| k.branched.values().map(cover).collect::<Vec<_>>()).unwrap_or_default(),
            "annotations": self.annotations.iter().map(|a| json!({"quantity": a.quantity, "value": a.value})).collect::<Vec<_>>(),
        })
    }
}

/// An exact integer: a JSON number when it fits in 64 bits, else a decimal string.
fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

/// Sparse `[exponent, coefficient]` pairs in ascending exponent order.
fn poly(p: &LaurentPoly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!([e, int(c)])).collect())
}

fn cover(h: &BranchedCoverHomology) -> Value {
    json!({
        "n": h.n,
        "invariant_factors": h.invariant_factors.iter().map(int).collect::<Vec<_>>(),
        "order": h.order.as_ref().map(int),
    })
}

pub fn row_json(r: &Row, res: &Result<Invariants, String>) -> Value {
    let params: serde_json::Map<String, Value> = r.params.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    let mut v = json!({ "member": r.descriptor.to_string(), "params": params });
    match res {
        Ok(inv) => v["invariants"] = inv.fields(),
        Err(e) => v["error"] = json!(e),
    }
    v
}

pub fn verify_json(reports: &[Report]) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "pass": reports.iter().all(|r| r.pass),
        "reports": reports,
    })
}

pub fn report_text(r: &Report) -> String {
    let mut s = String::new();
    let passed = r.checks.iter().filter(|c| c.pass).count();
    let status = if r.pass { "PASS" } else { "FAIL" };
    let _ = writeln!(s, "{}: {status} ({passed} of {} checks)", r.suite, r.checks.len());
    for c in &r.checks {
        let basis = serde_json::to_value(c.basis).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let _ = writeln!(s, "  {}  {}  {} [{basis}]", if c.pass { "PASS" } else { "FAIL" }, c.inputs, c.claim);
        if !c.pass {
            let _ = writeln!(s, "        expected: {}", c.expected);
            let _ = writeln!(s, "        computed: {}", c.computed);
        }
    }
    s
}

/// Aligned family table.
pub struct Table {
    covers: Vec<u64>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(covers: &[u64]) -> Table {
        let mut head: Vec<String> = ["member", "crossings", "genus bound", "alexander", "conway", "signature", "det"].map(String::from).to_vec();
        head.extend(covers.iter().map(|n| format!("H1(S{n})")));
        Table { covers: covers.to_vec(), rows: vec![head] }
    }

    pub fn push(&mut self, member: &str, inv: &Invariants) {
        let dash = || "-".to_string();
        let k = inv.knot.as_ref();
        let mut row = vec![
            member.to_string(),
            inv.crossings.to_string(),
            k.map_or_else(dash, |k| k.genus_bound.to_string()),
            k.map_or_else(dash, |k| k.alexander.to_string()),
            inv.conway.to_string(),
            k.map_or_else(dash, |k| k.signature.to_string()),
            k.map_or_else(dash, |k| k.determinant.to_string()),
        ];
        row.extend(self.covers.iter().map(|n| k.and_then(|k| k.branched.get(n)).map_or_else(dash, |h| h.to_string())));
        self.rows.push(row);
    }

    pub fn push_error(&mut self, member: &str, e: &str) {
        self.rows.push(vec![member.to_string(), format!("error: {e}")]);
    }
}

impl std::fmt::Display for Table {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cols = self.rows[0].len();
        let widths: Vec<usize> = (0..cols)
            .map(|i| self.rows.iter().filter(|r| r.len() == cols).map(|r| r[i].chars().count()).max().unwrap_or(0))
            .collect();
        for r in &self.rows {
            let cells: Vec<String> = r.iter().enumerate().map(|(i, c)| format!("{c:<w$}", w = if r.len() == cols { widths[i] } else { 0 })).collect();
            writeln!(f, "{}", cells.join("  ").trim_end())?;
        }
        Ok(())
    }
}
