//! Parametrised diagram templates.
//!
//! A template is a bottom-to-top program for [`MorseBuilder`] in which some
//! boxes of twists have parameter-dependent size. Format, one op per line:
//!
//! ```text
//! # comment
//! template NAME
//! param m n
//! cup P            new arc at positions P, P+1
//! cap P            join positions P, P+1
//! x P              crossing at P, P+1, rising-left strand over
//! y P              crossing at P, P+1, rising-left strand under
//! braid P L...     braid word, signed 1-based generators, offset P
//! orient P up|down orientation hint for the strand at P
//! slot NAME P K full|half [odd|even] EXPR
//! ```
//!
//! A slot inserts `EXPR` full (or half) twists on the `K` strands starting
//! at position `P`; positive values are right-handed. `EXPR` is an integer
//! affine combination of parameters such as `-2*m-1` or `n`.

use super::morse::MorseBuilder;
use super::{DiagramError, PlanarDiagram};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwistKind {
    Full,
    Half,
}

/// `constant + sum coeff * param`
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AffineExpr {
    pub constant: i64,
    pub coeffs: BTreeMap<String, i64>,
}

impl AffineExpr {
    pub fn eval(&self, params: &BTreeMap<String, i64>) -> Result<i64, DiagramError> {
        let mut v = self.constant;
        for (k, c) in &self.coeffs {
            let x = params
                .get(k)
                .ok_or_else(|| DiagramError::Template(format!("missing parameter {k}")))?;
            v += c * x;
        }
        Ok(v)
    }

    pub fn parse(s: &str) -> Result<AffineExpr, DiagramError> {
        let bad = || DiagramError::Template(format!("bad expression {s:?}"));
        let mut e = AffineExpr::default();
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        if !cur.is_empty() {
            terms.push(cur);
        }
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, t.strip_prefix('+').unwrap_or(&t)),
            };
            let (c, var) = match body.split_once('*') {
                Some((c, v)) => (c.parse::<i64>().map_err(|_| bad())?, Some(v)),
                None => match body.parse::<i64>() {
                    Ok(c) => (c, None),
                    Err(_) => (1, Some(body)),
                },
            };
            match var {
                None => e.constant += sign * c,
                Some(v) => {
                    if v.is_empty() || !v.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_') {
                        return Err(bad());
                    }
                    *e.coeffs.entry(v.to_string()).or_default() += sign * c;
                }
            }
        }
        Ok(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotSpec {
    pub name: String,
    pub position: usize,
    pub width: usize,
    pub kind: TwistKind,
    /// Required parity of the twist count (`Some(true)` for odd).
    pub odd: Option<bool>,
    pub amount: AffineExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Op {
    Cup(usize),
    Cap(usize),
    Cross(usize, bool),
    Braid(usize, Vec<i64>),
    Orient(usize, bool),
    Slot(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramTemplate {
    pub name: String,
    pub params: Vec<String>,
    pub slots: Vec<SlotSpec>,
    ops: Vec<Op>,
}

impl DiagramTemplate {
    pub fn parse(src: &str) -> Result<DiagramTemplate, DiagramError> {
        let mut t = DiagramTemplate { name: String::new(), params: Vec::new(), slots: Vec::new(), ops: Vec::new() };
        for (lineno, line) in src.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| DiagramError::Template(format!("line {}: {m}", lineno + 1));
            let w: Vec<&str> = line.split_whitespace().collect();
            let num = |i: usize| -> Result<usize, DiagramError> {
                w.get(i).and_then(|x| x.parse().ok()).ok_or_else(|| err("expected a position"))
            };
            match w[0] {
                "template" => t.name = w.get(1).ok_or_else(|| err("missing name"))?.to_string(),
                "param" => t.params.extend(w[1..].iter().map(|s| s.to_string())),
                "cup" => t.ops.push(Op::Cup(num(1)?)),
                "cap" => t.ops.push(Op::Cap(num(1)?)),
                "x" => t.ops.push(Op::Cross(num(1)?, true)),
                "y" => t.ops.push(Op::Cross(num(1)?, false)),
                "braid" => {
                    let letters: Result<Vec<i64>, _> = w[2..].iter().map(|x| x.parse()).collect();
                    t.ops.push(Op::Braid(num(1)?, letters.map_err(|_| err("bad braid letter"))?));
                }
                "orient" => {
                    let up = match w.get(2) {
                        Some(&"up") => true,
                        Some(&"down") => false,
                        _ => return Err(err("orient needs up|down")),
                    };
                    t.ops.push(Op::Orient(num(1)?, up));
                }
                "slot" => {
                    if w.len() < 6 {
                        return Err(err("slot NAME P K full|half [odd|even] EXPR"));
                    }
                    let kind = match w[4] {
                        "full" => TwistKind::Full,
                        "half" => TwistKind::Half,
                        _ => return Err(err("slot kind must be full or half")),
                    };
                    let (odd, expr_at) = match w[5] {
                        "odd" => (Some(true), 6),
                        "even" => (Some(false), 6),
                        _ => (None, 5),
                    };
                    let expr = w[expr_at..].join("");
                    if expr.is_empty() {
                        return Err(err("slot needs an amount"));
                    }
                    let spec = SlotSpec {
                        name: w[1].to_string(),
                        position: num(2)?,
                        width: num(3)?,
                        kind,
                        odd,
                        amount: AffineExpr::parse(&expr)?,
                    };
                    if spec.width < 2 {
                        return Err(err("slot must span at least two strands"));
                    }
                    t.ops.push(Op::Slot(t.slots.len()));
                    t.slots.push(spec);
                }
                other => return Err(err(&format!("unknown op {other:?}"))),
            }
        }
        if t.name.is_empty() {
            return Err(DiagramError::Template("template has no name".into()));
        }
        for s in &t.slots {
            for k in s.amount.coeffs.keys() {
                if !t.params.contains(k) {
                    return Err(DiagramError::Template(format!("slot {} uses undeclared parameter {k}", s.name)));
                }
            }
        }
        Ok(t)
    }

    pub fn load(path: &std::path::Path) -> Result<DiagramTemplate, DiagramError> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| DiagramError::Template(format!("{}: {e}", path.display())))?;
        Self::parse(&src)
    }

    /// Twist counts of every slot for the given parameter values.
    pub fn slot_amounts(&self, params: &BTreeMap<String, i64>) -> Result<Vec<i64>, DiagramError> {
        self.slots
            .iter()
            .map(|s| {
                let v = s.amount.eval(params)?;
                if let Some(odd) = s.odd {
                    if (v.rem_euclid(2) == 1) != odd {
                        return Err(DiagramError::Template(format!("slot {} needs {} twists, got {v}", s.name, if odd { "odd" } else { "even" })));
                    }
                }
                Ok(v)
            })
            .collect()
    }

    pub fn instantiate(&self, params: &BTreeMap<String, i64>) -> Result<PlanarDiagram, DiagramError> {
        let amounts = self.slot_amounts(params)?;
        self.run(&amounts)
    }

    /// Instantiation with every slot empty.
    pub fn skeleton(&self) -> Result<PlanarDiagram, DiagramError> {
        self.run(&vec![0; self.slots.len()])
    }

    fn run(&self, amounts: &[i64]) -> Result<PlanarDiagram, DiagramError> {
        let mut b = MorseBuilder::new();
        for op in &self.ops {
            match op {
                Op::Cup(p) => b.cup(*p)?,
                Op::Cap(p) => b.cap(*p)?,
                Op::Cross(p, s) => b.cross(*p, *s)?,
                Op::Braid(p, l) => b.braid(*p, l)?,
                Op::Orient(p, up) => b.orient(*p, *up)?,
                Op::Slot(i) => {
                    let s = &self.slots[*i];
                    match s.kind {
                        TwistKind::Full => b.full_twists(s.position, s.width, amounts[*i])?,
                        TwistKind::Half => b.half_twists(s.position, s.width, amounts[*i])?,
                    }
                }
            };
        }
        b.finish()
    }
}

/// Convenience for building parameter maps.
pub fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWIST: &str = "
template twist-knot
param k
cup 0
cup 2
orient 0 up
slot clasp 1 2 full k
x 0
x 0
cap 1
cap 0
";

    #[test]
    fn expressions() {
        let e = AffineExpr::parse("-2*m-1").unwrap();
        assert_eq!(e.eval(&params(&[("m", 3)])).unwrap(), -7);
        assert_eq!(AffineExpr::parse("n").unwrap().eval(&params(&[("n", 4)])).unwrap(), 4);
        assert!(AffineExpr::parse("2*").is_err());
    }

    #[test]
    fn slot_insertion_adds_crossings() {
        let t = DiagramTemplate::parse(TWIST).unwrap();
        let d0 = t.instantiate(&params(&[("k", 0)])).unwrap();
        let d1 = t.instantiate(&params(&[("k", 1)])).unwrap();
        let d2 = t.instantiate(&params(&[("k", -2)])).unwrap();
        assert_eq!(d1.crossing_count(), d0.crossing_count() + 2);
        assert_eq!(d2.crossing_count(), d0.crossing_count() + 4);
    }

    #[test]
    fn parity_enforced() {
        let src = "template t\nparam m\ncup 0\nslot b 0 2 half odd 2*m+1\ncap 0\n";
        let t = DiagramTemplate::parse(src).unwrap();
        assert!(t.instantiate(&params(&[("m", 1)])).is_ok());
        let bad = "template t\nparam m\ncup 0\nslot b 0 2 half odd 2*m\ncap 0\n";
        let t = DiagramTemplate::parse(bad).unwrap();
        assert!(t.instantiate(&params(&[("m", 1)])).is_err());
    }
}
