//! Family descriptors such as `K[1,0]` or `AT[J,1,left,2]`.

use super::{FamilyError, Templates, Variant};
use crate::diagram::PlanarDiagram;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyDescriptor {
    /// `J[m]`
    J { m: i64 },
    /// `K[n,m]`
    K { n: i64, m: i64 },
    /// `R[m]`
    R { m: i64 },
    /// `AT[J,m,variant,n]`: `n` annulus twists of a band presentation of `J_m`.
    AnnulusTwist { m: i64, variant: Variant, n: i64 },
    /// `AUG[J,m,variant]`: the augmented three-component link.
    Augmented { m: i64, variant: Variant },
}

/// A value stated for a family member. Recorded, never computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub quantity: String,
    pub value: String,
}

fn note(quantity: &str, value: impl ToString) -> Annotation {
    Annotation { quantity: quantity.into(), value: value.to_string() }
}

fn int(s: &str) -> Result<i64, FamilyError> {
    s.trim().parse().map_err(|_| FamilyError::Parameter(format!("expected an integer, found {s:?}")))
}

impl std::str::FromStr for FamilyDescriptor {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let bad = || FamilyError::Parameter(format!("bad family descriptor {s:?}"));
        let s = s.trim();
        let (name, rest) = s.split_once('[').ok_or_else(bad)?;
        let body = rest.strip_suffix(']').ok_or_else(bad)?;
        let args: Vec<&str> = body.split(',').map(str::trim).collect();
        let base = |a: &str| if a == "J" { Ok(()) } else { Err(FamilyError::Parameter(format!("only J band presentations ship, found {a:?}"))) };
        match (name.trim(), args.as_slice()) {
            ("J", [m]) => Ok(FamilyDescriptor::J { m: int(m)? }),
            ("K", [n, m]) => Ok(FamilyDescriptor::K { n: int(n)?, m: int(m)? }),
            ("R", [m]) => Ok(FamilyDescriptor::R { m: int(m)? }),
            ("AT", [b, m, v, n]) => {
                base(b)?;
                Ok(FamilyDescriptor::AnnulusTwist { m: int(m)?, variant: v.parse()?, n: int(n)? })
            }
            ("AUG", [b, m, v]) => {
                base(b)?;
                Ok(FamilyDescriptor::Augmented { m: int(m)?, variant: v.parse()? })
            }
            _ => Err(bad()),
        }
    }
}

impl std::fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyDescriptor::J { m } => write!(f, "J[{m}]"),
            FamilyDescriptor::K { n, m } => write!(f, "K[{n},{m}]"),
            FamilyDescriptor::R { m } => write!(f, "R[{m}]"),
            FamilyDescriptor::AnnulusTwist { m, variant, n } => write!(f, "AT[J,{m},{variant},{n}]"),
            FamilyDescriptor::Augmented { m, variant } => write!(f, "AUG[J,{m},{variant}]"),
        }
    }
}

impl FamilyDescriptor {
    pub fn diagram(&self, t: &Templates) -> Result<PlanarDiagram, FamilyError> {
        match *self {
            FamilyDescriptor::J { m } => t.knot_j(m),
            FamilyDescriptor::K { n, m } => t.knot_k(n, m),
            FamilyDescriptor::R { m } => t.knot_r(m),
            FamilyDescriptor::AnnulusTwist { m, variant, n } => Ok(t.band_presentation_j(m, variant)?.annulus_twist(n)?),
            FamilyDescriptor::Augmented { m, variant } => Ok(t.band_presentation_j(m, variant)?.augmented_link()?),
        }
    }

    pub fn is_link(&self) -> bool {
        matches!(self, FamilyDescriptor::Augmented { .. })
    }

    /// Stated properties of this member.
    pub fn annotations(&self) -> Vec<Annotation> {
        match *self {
            FamilyDescriptor::J { .. } => vec![note("unknotting number", 1)],
            FamilyDescriptor::K { n: 0, .. } => vec![note("ribbon", "yes"), note("4-ball genus", 0)],
            FamilyDescriptor::K { n, .. } => vec![
                note(&format!("{n}-shake genus"), 0),
                note("4-ball genus", 1),
                note("band surgeries to the unknot", 2),
                note(&format!("{n}-trace"), format!("diffeomorphic to the {n}-trace of R")),
            ],
            FamilyDescriptor::R { .. } => vec![note("ribbon", "yes"), note("4-ball genus", 0)],
            FamilyDescriptor::AnnulusTwist { m, variant, n } => {
                let mut v = vec![note("surgery", format!("same framed surgery as J[{m}]"))];
                let orientable = match variant {
                    Variant::Left => m.rem_euclid(2) == 1,
                    Variant::Right => m.rem_euclid(2) == 0,
                };
                if m == 1 {
                    v.push(note("genus", 2));
                    v.push(note("fibered", "yes"));
                } else if m == 2 && orientable && n >= 1 {
                    v.push(note("genus", 2 * n + 2));
                    v.push(note("fibered", "yes"));
                }
                v
            }
            FamilyDescriptor::Augmented { .. } => vec![note("Conway polynomial", "nonzero")],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in ["J[2]", "K[-1,0]", "R[3]", "AT[J,1,left,-2]", "AUG[J,3,right]"] {
            let d: FamilyDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert_eq!("K[ 1 , 0 ]".parse::<FamilyDescriptor>().unwrap(), FamilyDescriptor::K { n: 1, m: 0 });
        assert!("K[1]".parse::<FamilyDescriptor>().is_err());
        assert!("AT[K,1,left,2]".parse::<FamilyDescriptor>().is_err());
        assert!("Q[1]".parse::<FamilyDescriptor>().is_err());
    }

    #[test]
    fn diagrams() {
        let t = Templates::builtin();
        let aug: FamilyDescriptor = "AUG[J,1,left]".parse().unwrap();
        assert_eq!(aug.diagram(t).unwrap().component_count(), 3);
        assert!(aug.is_link());
        let at: FamilyDescriptor = "AT[J,1,left,0]".parse().unwrap();
        assert_eq!(at.diagram(t).unwrap(), "J[1]".parse::<FamilyDescriptor>().unwrap().diagram(t).unwrap());
    }
}
