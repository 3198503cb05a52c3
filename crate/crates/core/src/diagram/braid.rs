use super::{Crossing, DiagramError, EdgeId, PlanarDiagram, Sign};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

/// `sigma_gen^(+-1)`, generators numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidLetter {
    pub gen: usize,
    pub sign: Sign,
}

impl BraidLetter {
    pub fn from_int(i: i64) -> Option<BraidLetter> {
        if i == 0 {
            return None;
        }
        Some(BraidLetter { gen: i.unsigned_abs() as usize, sign: Sign::from_value(i) })
    }

    pub fn to_int(self) -> i64 {
        self.gen as i64 * self.sign.value()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: &[i64]) -> Result<BraidWord, DiagramError> {
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            match BraidLetter::from_int(l) {
                Some(b) if b.gen < strands => out.push(b),
                _ => return Err(DiagramError::BraidIndex(l, strands)),
            }
        }
        if strands == 0 {
            return Err(DiagramError::BraidIndex(0, 0));
        }
        Ok(BraidWord { strands, letters: out })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Representative of the word up to free and cyclic reduction and
    /// rotation, all of which preserve the closure.
    pub fn cyclic_normal_form(&self) -> BraidWord {
        let mut w: Vec<i64> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            let x = l.to_int();
            if w.last() == Some(&-x) {
                w.pop();
            } else {
                w.push(x);
            }
        }
        let mut lo = 0;
        while w.len() - lo >= 2 && w[lo] == -w[w.len() - 1] {
            lo += 1;
            w.pop();
        }
        let w = &w[lo..];
        let best = (0..w.len().max(1))
            .map(|r| [&w[r.min(w.len())..], &w[..r.min(w.len())]].concat())
            .min()
            .unwrap_or_default();
        BraidWord::new(self.strands, &best).expect("letters stay in range")
    }

    /// All words of length at most `max_len` on `2..=max_strands` strands,
    /// one per cyclic normal form, plus the trivial one-strand braid.
    pub fn corpus(max_len: usize, max_strands: usize) -> Vec<BraidWord> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = vec![BraidWord { strands: 1, letters: Vec::new() }];
        for strands in 2..=max_strands {
            let alphabet: Vec<i64> = (1..strands as i64).flat_map(|g| [g, -g]).collect();
            let mut words: Vec<Vec<i64>> = vec![Vec::new()];
            for _ in 0..=max_len {
                let mut next = Vec::new();
                for w in &words {
                    let b = BraidWord::new(strands, w).expect("letters in range");
                    let key: Vec<i64> = b.cyclic_normal_form().letters.iter().map(|l| l.to_int()).collect();
                    if seen.insert((strands, key)) {
                        out.push(b.cyclic_normal_form());
                    }
                    if w.len() < max_len {
                        next.extend(alphabet.iter().map(|&a| [w.as_slice(), &[a]].concat()));
                    }
                }
                words = next;
            }
        }
        out
    }

    /// Permutation induced on strand positions (bottom -> top).
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            at.swap(l.gen - 1, l.gen);
        }
        // at[p] = bottom strand now at top position p
        let mut perm = vec![0; self.strands];
        for (p, &s) in at.iter().enumerate() {
            perm[s] = p;
        }
        perm
    }

    /// Number of components of the closure.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut n = 0;
        for s in 0..self.strands {
            if !seen[s] {
                n += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = perm[x];
                }
            }
        }
        n
    }

    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|l| BraidLetter { gen: l.gen, sign: l.sign.flip() }).collect(),
        }
    }

    /// Closure with strands running upwards; `sigma_i` gives a positive crossing.
    pub fn closure(&self) -> Result<PlanarDiagram, DiagramError> {
        let n = self.strands;
        let mut next: EdgeId = n as EdgeId + 1;
        let mut cur: Vec<EdgeId> = (1..=n as EdgeId).collect();
        let mut crossings = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            let (i, j) = (l.gen - 1, l.gen);
            let (bl, br) = (cur[i], cur[j]);
            let (tl, tr) = (next, next + 1);
            next += 2;
            let edges = match l.sign {
                Sign::Positive => [br, tr, tl, bl],
                Sign::Negative => [bl, br, tr, tl],
            };
            crossings.push(Crossing { edges, sign: l.sign });
            cur[i] = tl;
            cur[j] = tr;
        }
        // close: the top edge at position p is the bottom edge at p
        let mut rename: HashMap<EdgeId, EdgeId> = HashMap::new();
        let mut free_loops = 0;
        for p in 0..n {
            let bottom = p as EdgeId + 1;
            if cur[p] == bottom {
                free_loops += 1;
            } else {
                rename.insert(cur[p], bottom);
            }
        }
        for c in &mut crossings {
            for e in &mut c.edges {
                if let Some(r) = rename.get(e) {
                    *e = *r;
                }
            }
        }
        Ok(PlanarDiagram::new(crossings, free_loops)?.relabeled())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.letters.iter().map(|l| l.to_int().to_string()).collect();
        write!(f, "BR({}; {})", self.strands, w.join(" "))
    }
}

impl std::str::FromStr for BraidWord {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<BraidWord, DiagramError> {
        let perr = |m: &str| DiagramError::Parse(m.to_string());
        let body = s
            .trim()
            .strip_prefix("BR(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| perr("expected BR(n; w...)"))?;
        let (n, w) = body.split_once(';').ok_or_else(|| perr("missing ';' in braid"))?;
        let n: usize = n.trim().parse().map_err(|_| perr("bad strand count"))?;
        let letters: Result<Vec<i64>, _> = w
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect();
        let letters = letters.map_err(|_| perr("bad braid letter"))?;
        BraidWord::new(n, &letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_closure() {
        let b = BraidWord::new(2, &[1, 1, 1]).unwrap();
        let d = b.closure().unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), 3);
    }

    #[test]
    fn hopf_and_unlink() {
        let d = BraidWord::new(2, &[1, 1]).unwrap().closure().unwrap();
        assert_eq!(d.component_count(), 2);
        let d = BraidWord::new(3, &[1, -1]).unwrap().closure().unwrap();
        assert_eq!(d.component_count(), 3);
        assert_eq!(d.free_loops(), 1);
    }

    #[test]
    fn normal_form() {
        let b = BraidWord::new(3, &[-2, 1, 1, -1, 2, 2]).unwrap();
        assert_eq!(b.cyclic_normal_form(), BraidWord::new(3, &[1, 2]).unwrap());
        let c = BraidWord::new(2, &[1, -1]).unwrap();
        assert!(c.cyclic_normal_form().is_empty());
        let corpus = BraidWord::corpus(3, 3);
        assert!(corpus.contains(&BraidWord::new(2, &[1, 1, 1]).unwrap()));
        assert!(corpus.iter().all(|b| b.cyclic_normal_form() == *b));
    }

    #[test]
    fn parse_round_trip() {
        let b: BraidWord = "BR(3; 1, -2, 1, -2)".parse().unwrap();
        assert_eq!(b.to_string(), "BR(3; 1 -2 1 -2)");
        assert_eq!(b.to_string().parse::<BraidWord>().unwrap(), b);
        assert!("BR(2; 2)".parse::<BraidWord>().is_err());
    }
}
