//! Oriented planar diagrams in PD notation.
//!
//! A crossing `X[a,b,c,d]` lists its four edge labels counterclockwise,
//! starting from the incoming under-strand. The under-strand therefore runs
//! `a -> c`; the over-strand runs `d -> b` for a positive crossing and
//! `b -> d` for a negative one.

mod braid;
pub mod morse;
mod parse;
pub mod template;

pub use braid::{BraidLetter, BraidWord};
pub use template::{DiagramTemplate, SlotSpec, TwistKind};

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use thiserror::Error;

pub type EdgeId = u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_value(v: i64) -> Sign {
        if v > 0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edges: [EdgeId; 4],
    pub sign: Sign,
}

impl Crossing {
    /// Slot through which the over-strand enters.
    pub fn over_in_slot(&self) -> usize {
        match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }

    /// Outgoing slot on the same strand as incoming `slot`.
    pub fn through(&self, slot: usize) -> usize {
        (slot + 2) % 4
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("edge {0} occurs {1} times (expected 2)")]
    EdgeMultiplicity(EdgeId, usize),
    #[error("inconsistent orientation on edge {0}")]
    Orientation(EdgeId),
    #[error("braid letter {0} out of range for {1} strands")]
    BraidIndex(i64, usize),
    #[error("diagram is split")]
    Split,
    #[error("diagram is empty")]
    Empty,
    #[error("template error: {0}")]
    Template(String),
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
}

/// Location of an edge end: crossing index and slot.
pub type Dart = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    /// Crossingless unknotted components.
    free_loops: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramStats {
    pub crossings: usize,
    pub components: usize,
    pub writhe: i64,
}

impl PlanarDiagram {
    /// Builds and validates a diagram.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, DiagramError> {
        let d = PlanarDiagram { crossings, free_loops };
        d.validate()?;
        Ok(d)
    }

    pub fn unknot() -> Self {
        PlanarDiagram { crossings: Vec::new(), free_loops: 1 }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    pub fn stats(&self) -> DiagramStats {
        DiagramStats {
            crossings: self.crossing_count(),
            components: self.component_count(),
            writhe: self.writhe(),
        }
    }

    fn validate(&self) -> Result<(), DiagramError> {
        if self.crossings.is_empty() && self.free_loops == 0 {
            return Err(DiagramError::Empty);
        }
        let mut ins: HashMap<EdgeId, usize> = HashMap::new();
        let mut outs: HashMap<EdgeId, usize> = HashMap::new();
        for c in &self.crossings {
            for s in 0..4 {
                let m = if c.is_incoming(s) { &mut ins } else { &mut outs };
                *m.entry(c.edges[s]).or_default() += 1;
            }
        }
        let mut all: Vec<EdgeId> = ins.keys().chain(outs.keys()).copied().collect();
        all.sort_unstable();
        all.dedup();
        for e in all {
            let i = ins.get(&e).copied().unwrap_or(0);
            let o = outs.get(&e).copied().unwrap_or(0);
            if i + o != 2 {
                return Err(DiagramError::EdgeMultiplicity(e, i + o));
            }
            if i != 1 {
                return Err(DiagramError::Orientation(e));
            }
        }
        Ok(())
    }

    /// Both darts of every edge, as `[tail, head]`.
    pub fn edge_darts(&self) -> BTreeMap<EdgeId, [Dart; 2]> {
        let mut tails: HashMap<EdgeId, Dart> = HashMap::new();
        let mut heads: HashMap<EdgeId, Dart> = HashMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if c.is_incoming(s) {
                    heads.insert(c.edges[s], (ci, s));
                } else {
                    tails.insert(c.edges[s], (ci, s));
                }
            }
        }
        tails.into_iter().map(|(e, t)| (e, [t, heads[&e]])).collect()
    }

    /// Components as cyclic sequences of edges in orientation order; free
    /// loops are not included.
    pub fn component_edges(&self) -> Vec<Vec<EdgeId>> {
        let darts = self.edge_darts();
        let mut seen: HashMap<EdgeId, bool> = HashMap::new();
        let mut comps = Vec::new();
        for &start in darts.keys() {
            if seen.contains_key(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut e = start;
            loop {
                seen.insert(e, true);
                comp.push(e);
                let (ci, s) = darts[&e][1];
                let c = &self.crossings[ci];
                e = c.edges[c.through(s)];
                if e == start {
                    break;
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.component_edges().len() + self.free_loops
    }

    /// Component index of every edge.
    pub fn edge_component(&self) -> HashMap<EdgeId, usize> {
        let mut m = HashMap::new();
        for (i, comp) in self.component_edges().iter().enumerate() {
            for &e in comp {
                m.insert(e, i);
            }
        }
        m
    }

    /// Mirror image: every crossing switches.
    pub fn mirror(&self) -> PlanarDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges;
                match c.sign {
                    Sign::Positive => Crossing { edges: [d, a, b, cc], sign: Sign::Negative },
                    Sign::Negative => Crossing { edges: [b, cc, d, a], sign: Sign::Positive },
                }
            })
            .collect();
        PlanarDiagram { crossings, free_loops: self.free_loops }
    }

    /// Orientation reversal of every component.
    pub fn reverse(&self) -> PlanarDiagram {
        // the new incoming under-strand is the old outgoing one
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges;
                Crossing { edges: [cc, d, a, b], sign: c.sign }
            })
            .collect();
        PlanarDiagram { crossings, free_loops: self.free_loops }
    }

    /// Renumbers edges `1..=2c` consecutively along components.
    pub fn relabeled(&self) -> PlanarDiagram {
        let mut map = HashMap::new();
        let mut next = 1;
        for comp in self.component_edges() {
            for e in comp {
                map.insert(e, next);
                next += 1;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing { edges: c.edges.map(|e| map[&e]), sign: c.sign })
            .collect();
        PlanarDiagram { crossings, free_loops: self.free_loops }
    }

    /// Faces of the underlying planar map. Each face is listed as the darts
    /// through which its boundary leaves a crossing, walking with the face on
    /// the left.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let darts = self.edge_darts();
        let mut other: HashMap<Dart, Dart> = HashMap::new();
        for [t, h] in darts.values() {
            other.insert(*t, *h);
            other.insert(*h, *t);
        }
        let mut used: HashMap<Dart, bool> = HashMap::new();
        let mut faces = Vec::new();
        for ci in 0..self.crossings.len() {
            for s in 0..4 {
                if used.contains_key(&(ci, s)) {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = (ci, s);
                while !used.contains_key(&d) {
                    used.insert(d, true);
                    face.push(d);
                    let (c2, s2) = other[&d];
                    d = (c2, (s2 + 3) % 4);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// True if the projection is connected (no free loops alongside crossings).
    pub fn is_connected(&self) -> bool {
        if self.crossings.is_empty() {
            return self.free_loops <= 1;
        }
        if self.free_loops > 0 {
            return false;
        }
        let darts = self.edge_darts();
        let n = self.crossings.len();
        let mut adj = vec![Vec::new(); n];
        for [t, h] in darts.values() {
            adj[t.0].push(h.0);
            adj[h.0].push(t.0);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let explicit = parse::needs_explicit_signs(self);
        let mut parts: Vec<String> = Vec::new();
        for c in &self.crossings {
            let tag = match (explicit, c.sign) {
                (false, _) => "X",
                (true, Sign::Positive) => "X+",
                (true, Sign::Negative) => "X-",
            };
            let [a, b, cc, d] = c.edges;
            parts.push(format!("{tag}[{a},{b},{cc},{d}]"));
        }
        for _ in 0..self.free_loops {
            parts.push("U".to_string());
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl std::str::FromStr for PlanarDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, DiagramError> {
        parse::parse_pd(s)
    }
}

/// A knot diagram with an integer framing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedKnot {
    pub diagram: PlanarDiagram,
    pub framing: i64,
}

impl FramedKnot {
    pub fn new(diagram: PlanarDiagram, framing: i64) -> Result<Self, DiagramError> {
        let n = diagram.component_count();
        if n != 1 {
            return Err(DiagramError::NotAKnot(n));
        }
        Ok(FramedKnot { diagram, framing })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn trefoil_parse_and_stats() {
        let d: PlanarDiagram = TREFOIL.parse().unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), -3);
        assert_eq!(d.to_string(), TREFOIL);
        assert_eq!(d.faces().len(), 5);
    }

    #[test]
    fn mirror_flips_writhe() {
        let d: PlanarDiagram = TREFOIL.parse().unwrap();
        let m = d.mirror();
        assert_eq!(m.writhe(), 3);
        assert_eq!(m.mirror(), d);
        assert_eq!(m.component_count(), 1);
    }

    #[test]
    fn rejects_dangling_edge() {
        let r: Result<PlanarDiagram, _> = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,7]".parse();
        assert!(matches!(r, Err(DiagramError::EdgeMultiplicity(..))));
    }

    #[test]
    fn relabel_is_consecutive() {
        let d: PlanarDiagram = "X[10,40,20,50] X[30,60,40,10] X[50,20,60,30]".parse().unwrap();
        let r = d.relabeled();
        let comps = r.component_edges();
        assert_eq!(comps, vec![vec![1, 2, 3, 4, 5, 6]]);
    }
}
