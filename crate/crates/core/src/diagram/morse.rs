//! Bottom-to-top construction of diagrams from cups, caps and crossings.
//!
//! The builder keeps a row of open strand ends. `cup` creates two ends,
//! `cap` joins two neighbouring ends, and `cross` braids two neighbours.
//! Orientation is fixed at the end, from `orient` hints where given.

use super::{Crossing, DiagramError, EdgeId, PlanarDiagram, Sign};
use std::collections::HashMap;

type Raw = usize;

#[derive(Clone, Copy, Debug)]
enum Lower {
    Crossing(usize, usize),
    Cup(Raw),
}

#[derive(Clone, Copy, Debug)]
enum Upper {
    Open,
    Crossing(usize, usize),
    Cap(Raw),
}

/// Crossing with geometric slots `[BL, BR, TR, TL]` (counterclockwise).
#[derive(Clone, Copy, Debug)]
struct GeoCrossing {
    slots: [Raw; 4],
    /// Whether the `BL -> TR` strand is the over-strand.
    rising_over: bool,
}

#[derive(Clone, Debug, Default)]
pub struct MorseBuilder {
    open: Vec<Raw>,
    lower: Vec<Lower>,
    upper: Vec<Upper>,
    crossings: Vec<GeoCrossing>,
    hints: Vec<(Raw, bool)>,
    free_loops: usize,
}

impl MorseBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn width(&self) -> usize {
        self.open.len()
    }

    fn fresh(&mut self, lower: Lower) -> Raw {
        self.lower.push(lower);
        self.upper.push(Upper::Open);
        self.lower.len() - 1
    }

    fn check(&self, p: usize, k: usize) -> Result<(), DiagramError> {
        if p + k > self.open.len() {
            return Err(DiagramError::Template(format!(
                "positions {}..{} out of range (width {})",
                p,
                p + k,
                self.open.len()
            )));
        }
        Ok(())
    }

    /// New arc whose two ends occupy positions `p` and `p + 1`.
    pub fn cup(&mut self, p: usize) -> Result<&mut Self, DiagramError> {
        if p > self.open.len() {
            return Err(DiagramError::Template(format!("cup at {p} beyond width {}", self.open.len())));
        }
        let a = self.fresh(Lower::Cup(usize::MAX));
        let b = self.fresh(Lower::Cup(a));
        self.lower[a] = Lower::Cup(b);
        self.open.insert(p, b);
        self.open.insert(p, a);
        Ok(self)
    }

    /// Joins the ends at positions `p` and `p + 1`.
    pub fn cap(&mut self, p: usize) -> Result<&mut Self, DiagramError> {
        self.check(p, 2)?;
        let a = self.open[p];
        let b = self.open[p + 1];
        self.upper[a] = Upper::Cap(b);
        self.upper[b] = Upper::Cap(a);
        self.open.drain(p..p + 2);
        Ok(self)
    }

    /// Crossing between positions `p`, `p + 1`. With `positive` the strand
    /// rising from the left passes over, which is `sigma` in braid terms.
    pub fn cross(&mut self, p: usize, positive: bool) -> Result<&mut Self, DiagramError> {
        self.check(p, 2)?;
        let ci = self.crossings.len();
        let bl = self.open[p];
        let br = self.open[p + 1];
        let tr = self.fresh(Lower::Crossing(ci, 2));
        let tl = self.fresh(Lower::Crossing(ci, 3));
        self.upper[bl] = Upper::Crossing(ci, 0);
        self.upper[br] = Upper::Crossing(ci, 1);
        self.crossings.push(GeoCrossing { slots: [bl, br, tr, tl], rising_over: positive });
        self.open[p] = tl;
        self.open[p + 1] = tr;
        Ok(self)
    }

    /// Braid word (letters as signed 1-based generators) on positions `p..`.
    pub fn braid(&mut self, p: usize, letters: &[i64]) -> Result<&mut Self, DiagramError> {
        for &l in letters {
            let g = l.unsigned_abs() as usize;
            if g == 0 {
                return Err(DiagramError::Template("zero braid letter".into()));
            }
            self.cross(p + g - 1, l > 0)?;
        }
        Ok(self)
    }

    /// `count` full twists (right-handed for positive `count`) on `k` strands.
    pub fn full_twists(&mut self, p: usize, k: usize, count: i64) -> Result<&mut Self, DiagramError> {
        self.check(p, k)?;
        let s = count.signum();
        for _ in 0..count.unsigned_abs() {
            for _ in 0..k {
                for g in 1..k {
                    self.cross(p + g - 1, s > 0)?;
                }
            }
        }
        Ok(self)
    }

    /// `count` half twists on `k` strands.
    pub fn half_twists(&mut self, p: usize, k: usize, count: i64) -> Result<&mut Self, DiagramError> {
        self.check(p, k)?;
        let s = count.signum();
        for _ in 0..count.unsigned_abs() {
            for i in 1..k {
                for g in 1..=k - i {
                    self.cross(p + g - 1, s > 0)?;
                }
            }
        }
        Ok(self)
    }

    /// Moves the strand at `from` to `to` by crossing its neighbours, over
    /// them when `over` is set.
    pub fn slide(&mut self, from: usize, to: usize, over: bool) -> Result<&mut Self, DiagramError> {
        let mut p = from;
        while p < to {
            // moving right: the left strand rises to the right
            self.cross(p, over)?;
            p += 1;
        }
        while p > to {
            // moving left: the right strand rises to the left
            self.cross(p - 1, !over)?;
            p -= 1;
        }
        Ok(self)
    }

    /// Declares the strand at position `p` to run upwards (or downwards).
    pub fn orient(&mut self, p: usize, up: bool) -> Result<&mut Self, DiagramError> {
        self.check(p, 1)?;
        self.hints.push((self.open[p], up));
        Ok(self)
    }

    /// Walks from raw edge `r` in direction `up` until a crossing is met;
    /// returns the crossing dart where the walk arrives.
    fn walk(&self, r: Raw, up: bool) -> Option<(usize, usize)> {
        let (mut r, mut up) = (r, up);
        for _ in 0..=self.lower.len() {
            if up {
                match self.upper[r] {
                    Upper::Crossing(c, s) => return Some((c, s)),
                    Upper::Cap(o) => {
                        r = o;
                        up = false;
                    }
                    Upper::Open => return None,
                }
            } else {
                match self.lower[r] {
                    Lower::Crossing(c, s) => return Some((c, s)),
                    Lower::Cup(o) => {
                        r = o;
                        up = true;
                    }
                }
            }
        }
        None
    }

    /// Closes the construction and orients it.
    pub fn finish(&self) -> Result<PlanarDiagram, DiagramError> {
        if !self.open.is_empty() {
            return Err(DiagramError::Template(format!("{} strands left open", self.open.len())));
        }
        let n = self.crossings.len();
        // each crossing dart is joined to another dart by a chain of raw arcs
        let mut partner: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        let mut free_loops = self.free_loops;
        let mut raw_seen = vec![false; self.lower.len()];
        for (ci, gc) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                let r = gc.slots[s];
                // bottom slots continue downwards, top slots upwards
                let up = s >= 2;
                raw_seen[r] = true;
                let d = self.walk(r, up).ok_or_else(|| DiagramError::Template("dangling arc".into()))?;
                partner.insert((ci, s), d);
            }
        }
        // closed loops made only of cups and caps
        for r in 0..self.lower.len() {
            if raw_seen[r] {
                continue;
            }
            let mut cur = r;
            let mut up = true;
            let mut touches = false;
            loop {
                raw_seen[cur] = true;
                let next = if up {
                    match self.upper[cur] {
                        Upper::Cap(o) => o,
                        _ => {
                            touches = true;
                            break;
                        }
                    }
                } else {
                    match self.lower[cur] {
                        Lower::Cup(o) => o,
                        Lower::Crossing(..) => {
                            touches = true;
                            break;
                        }
                    }
                };
                up = !up;
                cur = next;
                if cur == r && up {
                    break;
                }
            }
            if !touches {
                free_loops += 1;
            }
        }
        // edge ids: one per pair of joined darts
        let mut edge_of: HashMap<(usize, usize), EdgeId> = HashMap::new();
        let mut next_edge: EdgeId = 1;
        for ci in 0..n {
            for s in 0..4 {
                if edge_of.contains_key(&(ci, s)) {
                    continue;
                }
                let o = partner[&(ci, s)];
                edge_of.insert((ci, s), next_edge);
                edge_of.insert(o, next_edge);
                next_edge += 1;
            }
        }
        // orientation: incoming[(c, s)] for each dart
        let mut incoming: HashMap<(usize, usize), bool> = HashMap::new();
        let mut seeds: Vec<((usize, usize), bool)> = Vec::new();
        for &(r, up) in &self.hints {
            if let (Some(head), Some(tail)) = (self.walk(r, up), self.walk(r, !up)) {
                seeds.push((head, true));
                seeds.push((tail, false));
            }
        }
        for ci in 0..n {
            for s in 0..4 {
                seeds.push(((ci, s), s < 2));
            }
        }
        for (dart, inc) in seeds {
            if incoming.contains_key(&dart) {
                continue;
            }
            // propagate along the whole component
            let (mut d, mut inc) = (dart, inc);
            loop {
                match incoming.get(&d) {
                    Some(&prev) if prev != inc => return Err(DiagramError::Orientation(edge_of[&d])),
                    Some(_) => break,
                    None => {}
                }
                let o = partner[&d];
                incoming.insert(d, inc);
                incoming.insert(o, !inc);
                let head = if inc { d } else { o };
                d = (head.0, (head.1 + 2) % 4);
                inc = false;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(ci, gc)| {
                let under = if gc.rising_over { [1, 3] } else { [0, 2] };
                let start = if incoming[&(ci, under[0])] { under[0] } else { under[1] };
                let edges = [0, 1, 2, 3].map(|k| edge_of[&(ci, (start + k) % 4)]);
                let over_in = if incoming[&(ci, (start + 3) % 4)] { 3 } else { 1 };
                let sign = if over_in == 3 { Sign::Positive } else { Sign::Negative };
                Crossing { edges, sign }
            })
            .collect();
        PlanarDiagram::new(crossings, free_loops).map(|d| d.relabeled())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::BraidWord;

    #[test]
    fn trefoil_as_plat() {
        // two cups, three crossings in the middle, two caps
        let mut b = MorseBuilder::new();
        b.cup(0).unwrap().cup(2).unwrap();
        for _ in 0..3 {
            b.cross(1, true).unwrap();
        }
        b.cap(0).unwrap().cap(0).unwrap();
        let d = b.finish().unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe().abs(), 3);
    }

    #[test]
    fn braid_closure_matches() {
        // close sigma1^3 on the left with nested cups and caps
        let mut b = MorseBuilder::new();
        b.cup(0).unwrap().cup(1).unwrap();
        b.orient(2, true).unwrap().orient(3, true).unwrap();
        b.braid(2, &[1, 1, 1]).unwrap();
        b.cap(1).unwrap().cap(0).unwrap();
        let d = b.finish().unwrap();
        let c = BraidWord::new(2, &[1, 1, 1]).unwrap().closure().unwrap();
        assert_eq!(d.writhe(), c.writhe());
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn free_loop_counted() {
        let mut b = MorseBuilder::new();
        b.cup(0).unwrap().cap(0).unwrap();
        let d = b.finish().unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossing_count(), 0);
    }
}
