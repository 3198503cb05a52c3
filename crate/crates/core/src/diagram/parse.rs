use super::{BraidWord, Crossing, DiagramError, EdgeId, PlanarDiagram, Sign};
use std::collections::HashMap;

fn perr(msg: impl Into<String>) -> DiagramError {
    DiagramError::Parse(msg.into())
}

/// Parses `X[a,b,c,d]`, `X+[..]`, `X-[..]` and `U` tokens, or a single
/// `BR(n; w...)` braid closure. An optional `PD[...]` wrapper is accepted.
pub(super) fn parse_pd(input: &str) -> Result<PlanarDiagram, DiagramError> {
    let mut s = input.trim();
    if let Some(rest) = s.strip_prefix("PD[") {
        s = rest.strip_suffix(']').ok_or_else(|| perr("unterminated PD[...]"))?.trim();
    }
    if s.starts_with("BR(") {
        let word: BraidWord = s.parse()?;
        return word.closure();
    }
    let mut raw: Vec<([EdgeId; 4], Option<Sign>)> = Vec::new();
    let mut free_loops = 0;
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        match b[i] {
            b' ' | b'\t' | b'\n' | b'\r' | b',' | b';' => i += 1,
            b'U' => {
                free_loops += 1;
                i += 1;
            }
            b'X' => {
                i += 1;
                let sign = match b.get(i) {
                    Some(b'+') => {
                        i += 1;
                        Some(Sign::Positive)
                    }
                    Some(b'-') => {
                        i += 1;
                        Some(Sign::Negative)
                    }
                    _ => None,
                };
                if b.get(i) != Some(&b'[') {
                    return Err(perr(format!("expected '[' at byte {i}")));
                }
                let close = s[i..].find(']').ok_or_else(|| perr("unterminated crossing"))? + i;
                let labels: Vec<&str> = s[i + 1..close].split(',').map(str::trim).collect();
                if labels.len() != 4 {
                    return Err(perr(format!("crossing needs 4 labels, got {}", labels.len())));
                }
                let mut e = [0; 4];
                for (k, l) in labels.iter().enumerate() {
                    e[k] = l.parse().map_err(|_| perr(format!("bad edge label {l:?}")))?;
                }
                raw.push((e, sign));
                i = close + 1;
            }
            c => return Err(perr(format!("unexpected character {:?}", c as char))),
        }
    }
    if raw.is_empty() && free_loops == 0 {
        return Err(DiagramError::Empty);
    }
    let signs = infer_signs(&raw)?;
    let crossings = raw
        .iter()
        .zip(signs)
        .map(|((edges, _), sign)| Crossing { edges: *edges, sign })
        .collect();
    PlanarDiagram::new(crossings, free_loops)
}

/// Role of an occurrence: true when the edge enters the crossing there.
fn role(slot: usize, sign: Sign) -> bool {
    match slot {
        0 => true,
        2 => false,
        1 => sign == Sign::Negative,
        _ => sign == Sign::Positive,
    }
}

fn guess_sign(e: &[EdgeId; 4]) -> Sign {
    let (b, d) = (e[1], e[3]);
    if d == b + 1 {
        Sign::Negative
    } else if b == d + 1 {
        Sign::Positive
    } else if b > d {
        Sign::Negative
    } else {
        Sign::Positive
    }
}

/// Propagates the in/out constraint along edges, guessing from label order
/// only for strands that never pass under.
fn infer_signs(raw: &[([EdgeId; 4], Option<Sign>)]) -> Result<Vec<Sign>, DiagramError> {
    let mut occ: HashMap<EdgeId, Vec<(usize, usize)>> = HashMap::new();
    for (ci, (e, _)) in raw.iter().enumerate() {
        for s in 0..4 {
            occ.entry(e[s]).or_default().push((ci, s));
        }
    }
    let mut labels: Vec<EdgeId> = occ.keys().copied().collect();
    labels.sort_unstable();
    for e in &labels {
        let n = occ[e].len();
        if n != 2 {
            return Err(DiagramError::EdgeMultiplicity(*e, n));
        }
    }
    let mut sign: Vec<Option<Sign>> = raw.iter().map(|(_, s)| *s).collect();
    // known role of an occurrence, if determined
    let known = |sign: &Vec<Option<Sign>>, (c, s): (usize, usize)| -> Option<bool> {
        match s {
            0 => Some(true),
            2 => Some(false),
            _ => sign[c].map(|g| role(s, g)),
        }
    };
    loop {
        let mut changed = true;
        while changed {
            changed = false;
            for e in &labels {
                let o = &occ[e];
                for k in 0..2 {
                    let (a, b) = (o[k], o[1 - k]);
                    if let (Some(ra), None) = (known(&sign, a), known(&sign, b)) {
                        // b must take the opposite role
                        let want_in = !ra;
                        let s = if (b.1 == 1) == want_in { Sign::Negative } else { Sign::Positive };
                        sign[b.0] = Some(s);
                        changed = true;
                    }
                }
            }
        }
        match sign.iter().position(Option::is_none) {
            Some(c) => sign[c] = Some(guess_sign(&raw[c].0)),
            None => break,
        }
    }
    let sign: Vec<Sign> = sign.into_iter().map(Option::unwrap).collect();
    for e in &labels {
        let o = &occ[e];
        if role(o[0].1, sign[o[0].0]) == role(o[1].1, sign[o[1].0]) {
            return Err(DiagramError::Orientation(*e));
        }
    }
    Ok(sign)
}

/// True when plain `X[...]` output would not parse back to the same signs.
pub(super) fn needs_explicit_signs(d: &PlanarDiagram) -> bool {
    let raw: Vec<([EdgeId; 4], Option<Sign>)> = d.crossings().iter().map(|c| (c.edges, None)).collect();
    match infer_signs(&raw) {
        Ok(s) => s.iter().zip(d.crossings()).any(|(a, c)| *a != c.sign),
        Err(_) => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_eight_signs() {
        let d = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap();
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn explicit_signs_round_trip() {
        let d = parse_pd("X+[1,2,3,4] X-[3,4,1,2]");
        // a two-crossing unlink-like diagram with forced signs must still be consistent
        if let Ok(d) = d {
            let again = parse_pd(&d.to_string()).unwrap();
            assert_eq!(again, d);
        }
    }

    #[test]
    fn unknot_tokens() {
        let d = parse_pd("U").unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossing_count(), 0);
        assert!(parse_pd("").is_err());
        assert!(parse_pd("X[1,2,3]").is_err());
    }

    #[test]
    fn wrapper_accepted() {
        let d = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        assert_eq!(d.crossing_count(), 3);
    }
}
