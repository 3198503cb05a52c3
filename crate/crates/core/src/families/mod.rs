//! The knot families: band presentations, annulus twists, `J_m`, `K_{n,m}`
//! and `R(m)`.

pub mod band;
mod descriptor;

pub use band::{BandPresentation, BandStep, BandTemplate};
pub use descriptor::{Annotation, FamilyDescriptor};

use crate::diagram::template::params;
use crate::diagram::{DiagramError, FramedKnot, PlanarDiagram};
use crate::invariants::{alexander, cover_from_presentation, roots_of_unity_equal, signature, wirtinger_presentation, InvariantError};
use crate::poly::LaurentPoly;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("{0}")]
    Parameter(String),
}

/// Which of the two band presentations of `J_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Left,
    Right,
}

impl std::str::FromStr for Variant {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        match s.trim() {
            "left" | "L" => Ok(Variant::Left),
            "right" | "R" => Ok(Variant::Right),
            other => Err(FamilyError::Parameter(format!("unknown variant {other:?}"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Left => "left",
            Variant::Right => "right",
        })
    }
}

/// The band templates behind the families. File names inside a template
/// directory: `j_left.band`, `j_right.band`, `k.band`, `r.band`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Templates {
    pub j_left: BandTemplate,
    pub j_right: BandTemplate,
    pub k: BandTemplate,
    pub r: BandTemplate,
}

const J_LEFT: &str = include_str!("../../templates/j_left.band");
const J_RIGHT: &str = include_str!("../../templates/j_right.band");
const K: &str = include_str!("../../templates/k.band");
const R: &str = include_str!("../../templates/r.band");

impl Templates {
    /// The templates compiled into the library.
    pub fn builtin() -> &'static Templates {
        static BUILTIN: OnceLock<Templates> = OnceLock::new();
        BUILTIN.get_or_init(|| Templates {
            j_left: BandTemplate::parse(J_LEFT).expect("built-in template"),
            j_right: BandTemplate::parse(J_RIGHT).expect("built-in template"),
            k: BandTemplate::parse(K).expect("built-in template"),
            r: BandTemplate::parse(R).expect("built-in template"),
        })
    }

    pub fn load_dir(dir: &Path) -> Result<Templates, FamilyError> {
        Ok(Templates {
            j_left: BandTemplate::load(&dir.join("j_left.band"))?,
            j_right: BandTemplate::load(&dir.join("j_right.band"))?,
            k: BandTemplate::load(&dir.join("k.band"))?,
            r: BandTemplate::load(&dir.join("r.band"))?,
        })
    }

    pub fn band_presentation_j(&self, m: i64, variant: Variant) -> Result<BandPresentation, FamilyError> {
        let t = match variant {
            Variant::Left => &self.j_left,
            Variant::Right => &self.j_right,
        };
        Ok(t.instantiate(&params(&[("m", m)]))?)
    }

    pub fn knot_j(&self, m: i64) -> Result<PlanarDiagram, FamilyError> {
        Ok(self.band_presentation_j(m, Variant::Left)?.knot()?)
    }

    pub fn knot_k(&self, n: i64, m: i64) -> Result<PlanarDiagram, FamilyError> {
        if m < 0 {
            return Err(FamilyError::Parameter(format!("K[n,m] needs m >= 0, got {m}")));
        }
        Ok(self.k.instantiate(&params(&[("n", n), ("m", m)]))?.knot()?)
    }

    pub fn knot_r(&self, m: i64) -> Result<PlanarDiagram, FamilyError> {
        if m < 0 {
            return Err(FamilyError::Parameter(format!("R[m] needs m >= 0, got {m}")));
        }
        Ok(self.r.instantiate(&params(&[("m", m)]))?.knot()?)
    }
}

pub fn knot_j(m: i64) -> Result<PlanarDiagram, FamilyError> {
    Templates::builtin().knot_j(m)
}

pub fn knot_k(n: i64, m: i64) -> Result<PlanarDiagram, FamilyError> {
    Templates::builtin().knot_k(n, m)
}

pub fn knot_r(m: i64) -> Result<PlanarDiagram, FamilyError> {
    Templates::builtin().knot_r(m)
}

pub fn band_presentation_j(m: i64, variant: Variant) -> Result<BandPresentation, FamilyError> {
    Templates::builtin().band_presentation_j(m, variant)
}

pub fn induced_framing(bp: &BandPresentation) -> i64 {
    bp.induced_framing()
}

pub fn annulus_twist(bp: &BandPresentation, n: i64) -> Result<PlanarDiagram, FamilyError> {
    Ok(bp.annulus_twist(n)?)
}

pub fn augmented_link(bp: &BandPresentation) -> Result<PlanarDiagram, FamilyError> {
    Ok(bp.augmented_link()?)
}

/// Closed form of `Delta(K_{n,m})` for `n != 0`, `m >= 0`.
pub fn closed_form_alexander_k(n: i64, m: i64) -> Result<LaurentPoly, FamilyError> {
    if n == 0 {
        return Err(FamilyError::Parameter("no closed form for n = 0".into()));
    }
    if m < 0 {
        return Err(FamilyError::Parameter(format!("closed form needs m >= 0, got {m}")));
    }
    let sym = |c: i64, k: i64| &LaurentPoly::monomial(c, k) + &LaurentPoly::monomial(c, -k);
    let head = [(0, -(1 + 6 * m)), (1, 2 + 4 * m), (2, -(1 + m))];
    let k = n.abs();
    let tail = if n > 0 {
        [(k - 2, m), (k - 1, -(1 + 3 * m)), (k, 2 + 3 * m), (k + 1, -(1 + m))]
    } else {
        [(k - 1, -(1 + m)), (k, 2 + 3 * m), (k + 1, -(1 + 3 * m)), (k + 2, m)]
    };
    let mut p = LaurentPoly::constant(head[0].1);
    for &(e, c) in head[1..].iter().chain(&tail) {
        p = &p + &sym(c, e);
    }
    Ok(p)
}

/// One comparison in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub condition: String,
    pub left: String,
    pub right: String,
    pub pass: bool,
}

/// Necessary conditions for two framed knots to have homeomorphic surgeries.
/// A pass means only that the invariants are consistent with that.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryReport {
    pub framing: i64,
    pub checks: Vec<ConditionCheck>,
    pub pass: bool,
}

impl std::fmt::Display for SurgeryReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "{mark} {}: {} | {}", c.condition, c.left, c.right)?;
        }
        if self.pass {
            write!(f, "PASS: consistent with homeomorphic {}-surgeries", self.framing)
        } else {
            write!(f, "FAIL: the {}-surgeries are not homeomorphic", self.framing)
        }
    }
}

/// Compares `Delta` and the signature for framing 0; for framing `n != 0`,
/// `Delta` at the `|n|`-th roots of unity and `H_1` of the `|n|`-fold
/// branched covers.
pub fn necessary_conditions_report(k1: &FramedKnot, k2: &FramedKnot) -> Result<SurgeryReport, FamilyError> {
    if k1.framing != k2.framing {
        return Err(FamilyError::Parameter(format!("framings differ: {} and {}", k1.framing, k2.framing)));
    }
    let n = k1.framing;
    let (d1, d2) = (alexander(&k1.diagram)?, alexander(&k2.diagram)?);
    let mut checks = Vec::new();
    if n == 0 {
        checks.push(ConditionCheck { condition: "Alexander polynomial".into(), left: d1.to_string(), right: d2.to_string(), pass: d1 == d2 });
        let (s1, s2) = (signature(&k1.diagram)?, signature(&k2.diagram)?);
        checks.push(ConditionCheck { condition: "signature".into(), left: s1.to_string(), right: s2.to_string(), pass: s1 == s2 });
    } else {
        let k = n.unsigned_abs();
        checks.push(ConditionCheck {
            condition: format!("Alexander polynomial at {k}-th roots of unity"),
            left: d1.reduce_cyclic(k).to_string(),
            right: d2.reduce_cyclic(k).to_string(),
            pass: roots_of_unity_equal(&d1, &d2, k),
        });
        if k >= 2 {
            let h1 = cover_from_presentation(&wirtinger_presentation(&k1.diagram)?, k)?;
            let h2 = cover_from_presentation(&wirtinger_presentation(&k2.diagram)?, k)?;
            checks.push(ConditionCheck {
                condition: format!("H_1 of the {k}-fold branched cover"),
                left: h1.to_string(),
                right: h2.to_string(),
                pass: h1.invariant_factors == h2.invariant_factors,
            });
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(SurgeryReport { framing: n, checks, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::alexander_wirtinger;

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_alexander_k(1, 0).unwrap(), "-3 + 4*t + 4*t^-1 - 2*t^2 - 2*t^-2".parse().unwrap());
        assert_eq!(closed_form_alexander_k(2, 0).unwrap(), "-1 + t + t^-1 + t^2 + t^-2 - t^3 - t^-3".parse().unwrap());
        assert!(closed_form_alexander_k(0, 0).is_err());
        for n in [-4, -3, -2, -1, 1, 2, 3, 4] {
            for m in 0..4 {
                let p = closed_form_alexander_k(n, m).unwrap();
                assert!(p.is_symmetric());
                assert_eq!(p.eval_int(1).unwrap(), 1.into());
            }
        }
    }

    #[test]
    fn k_template_matches_closed_form() {
        for (n, m) in [(1, 0), (-1, 1), (2, 1)] {
            let d = knot_k(n, m).unwrap();
            assert_eq!(d.component_count(), 1);
            assert_eq!(alexander_wirtinger(&d).unwrap(), closed_form_alexander_k(n, m).unwrap());
        }
        assert!(knot_k(1, -1).is_err());
    }

    #[test]
    fn r_polynomial() {
        let r: LaurentPoly = "3 - t^2 - t^-2".parse().unwrap();
        assert_eq!(alexander_wirtinger(&knot_r(0).unwrap()).unwrap(), r);
        assert_eq!(alexander_wirtinger(&knot_k(0, 1).unwrap()).unwrap(), r);
    }

    #[test]
    fn j_framings() {
        assert_eq!(induced_framing(&band_presentation_j(1, Variant::Left).unwrap()), 0);
        assert_eq!(induced_framing(&band_presentation_j(2, Variant::Left).unwrap()), 4);
        assert_eq!(induced_framing(&band_presentation_j(2, Variant::Right).unwrap()), 0);
        assert_eq!(induced_framing(&band_presentation_j(1, Variant::Right).unwrap()), -4);
    }

    #[test]
    fn surgery_report() {
        let k = FramedKnot::new(knot_k(2, 0).unwrap(), 2).unwrap();
        let r = FramedKnot::new(knot_r(0).unwrap(), 2).unwrap();
        assert!(necessary_conditions_report(&k, &r).unwrap().pass);
        let tre = FramedKnot::new("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]".parse().unwrap(), 0).unwrap();
        let un = FramedKnot::new(PlanarDiagram::unknot(), 0).unwrap();
        let rep = necessary_conditions_report(&tre, &un).unwrap();
        assert!(!rep.pass);
        assert!(!rep.checks[0].pass);
        assert!(necessary_conditions_report(&tre, &k).is_err());
    }
}
