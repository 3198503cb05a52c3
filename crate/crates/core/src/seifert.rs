//! Seifert circles, Seifert surfaces and Seifert matrices.
//!
//! The Seifert matrix is computed on a braided form of the diagram. Vogel's
//! moves (Reidemeister II moves across faces holding two incoherent Seifert
//! circles) bring any connected diagram into closed-braid position without
//! changing the number of Seifert circles; the braid word is then read off
//! and the surface made of stacked disks and twisted bands gives the matrix.

use crate::diagram::{BraidWord, Crossing, Dart, DiagramError, EdgeId, PlanarDiagram, Sign};
use crate::linalg::IntMatrix;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeifertError {
    #[error("split diagram: Seifert's algorithm needs a connected projection")]
    Split,
    #[error("braiding did not terminate after {0} moves")]
    Braiding(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    /// Circles as edge sequences in orientation order (free loops are empty).
    pub circles: Vec<Vec<EdgeId>>,
    pub genus: i64,
}

/// Outgoing slot joined to incoming `slot` by the oriented smoothing.
fn smoothing_partner(c: &Crossing, slot: usize) -> usize {
    let a = (slot + 1) % 4;
    if c.is_incoming(a) {
        (slot + 3) % 4
    } else {
        a
    }
}

/// Seifert circles as edge cycles, one per circle.
pub fn circles(d: &PlanarDiagram) -> Vec<Vec<EdgeId>> {
    let darts = d.edge_darts();
    let mut seen: BTreeSet<EdgeId> = BTreeSet::new();
    let mut out = Vec::new();
    for &start in darts.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut circ = Vec::new();
        let mut e = start;
        while seen.insert(e) {
            circ.push(e);
            let (c, s) = darts[&e][1];
            let cr = &d.crossings()[c];
            e = cr.edges[smoothing_partner(cr, s)];
        }
        out.push(circ);
    }
    for _ in 0..d.free_loops() {
        out.push(Vec::new());
    }
    out
}

/// Circles and genus of the surface from Seifert's algorithm.
pub fn seifert_circles(d: &PlanarDiagram) -> Result<SeifertData, SeifertError> {
    if !d.is_connected() {
        return Err(SeifertError::Split);
    }
    let circles = circles(d);
    let s = circles.len() as i64;
    let c = d.crossing_count() as i64;
    let mu = d.component_count() as i64;
    Ok(SeifertData { circles, genus: (2 - s + c - mu) / 2 })
}

fn circle_of_edges(d: &PlanarDiagram) -> HashMap<EdgeId, usize> {
    let mut m = HashMap::new();
    for (i, c) in circles(d).iter().enumerate() {
        for &e in c {
            m.insert(e, i);
        }
    }
    m
}

/// A face boundary step: the edge and whether it is walked along its orientation.
fn face_steps(d: &PlanarDiagram) -> Vec<Vec<(EdgeId, bool)>> {
    d.faces()
        .into_iter()
        .map(|f| {
            f.into_iter()
                .map(|(c, s)| {
                    let cr = &d.crossings()[c];
                    (cr.edges[s], !cr.is_incoming(s))
                })
                .collect()
        })
        .collect()
}

/// Finds a face with two edges on distinct circles, both walked the same way.
fn find_defect(d: &PlanarDiagram) -> Option<(EdgeId, EdgeId, bool)> {
    let circ = circle_of_edges(d);
    for face in face_steps(d) {
        for (i, &(e1, a1)) in face.iter().enumerate() {
            for &(e2, a2) in &face[i + 1..] {
                if a1 == a2 && circ[&e1] != circ[&e2] {
                    return Some((e1, e2, a1));
                }
            }
        }
    }
    None
}

/// Reidemeister II move pushing `e1` over `e2` across a face that lies on
/// the left of both edges (`left`) or on the right of both.
fn vogel_move(d: &PlanarDiagram, e1: EdgeId, e2: EdgeId, left: bool) -> PlanarDiagram {
    let darts = d.edge_darts();
    let next = darts.keys().next_back().copied().unwrap_or(0) + 1;
    let (e1a, e1m, e1b, e2a, e2m, e2b) = (next, next + 1, next + 2, next + 3, next + 4, next + 5);
    let mut crossings: Vec<Crossing> = d.crossings().to_vec();
    let [t1, h1] = darts[&e1];
    let [t2, h2] = darts[&e2];
    let set = |cs: &mut Vec<Crossing>, (c, s): Dart, e: EdgeId| cs[c].edges[s] = e;
    set(&mut crossings, t1, e1a);
    set(&mut crossings, h1, e1b);
    set(&mut crossings, t2, e2a);
    set(&mut crossings, h2, e2b);
    if left {
        crossings.push(Crossing { edges: [e2m, e1m, e2b, e1a], sign: Sign::Positive });
        crossings.push(Crossing { edges: [e2a, e1m, e2m, e1b], sign: Sign::Negative });
    } else {
        crossings.push(Crossing { edges: [e2m, e1a, e2b, e1m], sign: Sign::Negative });
        crossings.push(Crossing { edges: [e2a, e1b, e2m, e1m], sign: Sign::Positive });
    }
    PlanarDiagram::new(crossings, d.free_loops()).expect("Reidemeister II keeps the diagram valid")
}

/// Applies Vogel moves until the diagram is in closed-braid position.
pub fn braided_form(d: &PlanarDiagram) -> Result<PlanarDiagram, SeifertError> {
    if !d.is_connected() {
        return Err(SeifertError::Split);
    }
    let limit = 4 * d.crossing_count() * d.crossing_count() + 64;
    let mut cur = d.clone();
    for _ in 0..limit {
        match find_defect(&cur) {
            None => return Ok(cur),
            Some((e1, e2, left)) => cur = vogel_move(&cur, e1, e2, left),
        }
    }
    Err(SeifertError::Braiding(limit))
}

/// Braid word whose closure is the given diagram.
pub fn to_braid(d: &PlanarDiagram) -> Result<BraidWord, SeifertError> {
    let b = braided_form(d)?;
    read_braid(&b)
}

fn read_braid(d: &PlanarDiagram) -> Result<BraidWord, SeifertError> {
    if d.crossing_count() == 0 {
        return Ok(BraidWord::new(1, &[])?);
    }
    let circs = circles(d);
    let circ = circle_of_edges(d);
    let k = circs.len();
    // circles met at each crossing
    let darts = d.edge_darts();
    let mut at: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); d.crossing_count()];
    for (&e, [t, h]) in &darts {
        at[t.0].insert(circ[&e]);
        at[h.0].insert(circ[&e]);
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for s in &at {
        let v: Vec<usize> = s.iter().copied().collect();
        if v.len() != 2 {
            return Err(SeifertError::Braiding(0));
        }
        adj[v[0]].insert(v[1]);
        adj[v[1]].insert(v[0]);
    }
    // radial order: the circle graph of a closed braid is a path
    let first = (0..k).find(|&i| adj[i].len() <= 1).ok_or(SeifertError::Braiding(0))?;
    let mut order = vec![first];
    while order.len() < k {
        let last = *order.last().unwrap();
        let nxt = adj[last].iter().copied().find(|x| !order.contains(x)).ok_or(SeifertError::Braiding(0))?;
        order.push(nxt);
    }
    let level: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    // a ray from the innermost face crossing every circle once
    let faces = face_steps(d);
    let face_of: Vec<(usize, usize)> = {
        // for each edge: (face walking along, face walking against)
        let mut m: HashMap<EdgeId, (usize, usize)> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for &(e, along) in f {
                let entry = m.entry(e).or_insert((usize::MAX, usize::MAX));
                if along {
                    entry.0 = fi;
                } else {
                    entry.1 = fi;
                }
            }
        }
        let mut keys: Vec<EdgeId> = m.keys().copied().collect();
        keys.sort_unstable();
        keys.iter().map(|e| m[e]).collect()
    };
    let edge_index: HashMap<EdgeId, usize> = {
        let mut keys: Vec<EdgeId> = darts.keys().copied().collect();
        keys.sort_unstable();
        keys.into_iter().enumerate().map(|(i, e)| (e, i)).collect()
    };
    let private = faces
        .iter()
        .position(|f| f.iter().all(|(e, _)| circ[e] == order[0]))
        .ok_or(SeifertError::Braiding(0))?;
    let mut cut: Vec<EdgeId> = Vec::with_capacity(k);
    let mut face = private;
    for p in 0..k {
        let e = faces[face]
            .iter()
            .map(|&(e, _)| e)
            .find(|e| circ[e] == order[p])
            .ok_or(SeifertError::Braiding(0))?;
        cut.push(e);
        let (fa, fb) = face_of[edge_index[&e]];
        face = if fa == face { fb } else { fa };
    }
    // crossings along each circle starting after its cut edge
    let mut chains: Vec<Vec<usize>> = Vec::with_capacity(k);
    for p in 0..k {
        let c = &circs[order[p]];
        let start = c.iter().position(|&e| e == cut[p]).unwrap();
        let chain = (0..c.len()).map(|i| darts[&c[(start + i) % c.len()]][1].0).collect();
        chains.push(chain);
    }
    // merge the chains into one linear order
    let n = d.crossing_count();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for ch in &chains {
        for w in ch.windows(2) {
            succ[w[0]].push(w[1]);
            indeg[w[1]] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut letters = Vec::with_capacity(n);
    while let Some(&c) = ready.iter().next() {
        ready.remove(&c);
        let lv: Vec<usize> = at[c].iter().map(|x| level[x]).collect();
        let g = lv[0].min(lv[1]) as i64 + 1;
        letters.push(g * d.crossings()[c].sign.value());
        for &s in &succ[c] {
            indeg[s] -= 1;
            if indeg[s] == 0 {
                ready.insert(s);
            }
        }
    }
    if letters.len() != n {
        return Err(SeifertError::Braiding(0));
    }
    Ok(BraidWord::new(k, &letters)?)
}

/// Basis loops of the braid surface: consecutive occurrences of a generator.
fn braid_loops(b: &BraidWord) -> Vec<(usize, usize, usize)> {
    let mut by_gen: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (j, l) in b.letters.iter().enumerate() {
        by_gen.entry(l.gen).or_default().push(j);
    }
    let mut loops = Vec::new();
    for (g, occ) in by_gen {
        for w in occ.windows(2) {
            loops.push((g, w[0], w[1]));
        }
    }
    loops
}

/// Seifert matrix `V[a][b] = lk(a, b+)` of the disk-and-band surface of a
/// closed braid. Loops on one generator meet only through a shared band;
/// loops on adjacent generators link only when their intervals interleave.
pub fn braid_seifert_matrix(b: &BraidWord) -> IntMatrix {
    let loops = braid_loops(b);
    let s = |j: usize| b.letters[j].sign.value();
    let n = loops.len();
    let mut v = vec![vec![0i64; n]; n];
    for (x, &(g, j1, j2)) in loops.iter().enumerate() {
        v[x][x] = -(s(j1) + s(j2)) / 2;
        for (y, &(h, k1, k2)) in loops.iter().enumerate() {
            let (vxy, vyx) = if g == h && j2 == k1 {
                if s(j2) > 0 {
                    (0, 1)
                } else {
                    (-1, 0)
                }
            } else if h == g + 1 && j1 < k1 && k1 < j2 && j2 < k2 {
                (1, 0)
            } else if h == g + 1 && k1 < j1 && j1 < k2 && k2 < j2 {
                (-1, 0)
            } else {
                continue;
            };
            v[x][y] = vxy;
            v[y][x] = vyx;
        }
    }
    v.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
}

/// Seifert matrix of an arbitrary connected diagram.
pub fn seifert_matrix(d: &PlanarDiagram) -> Result<IntMatrix, SeifertError> {
    Ok(braid_seifert_matrix(&to_braid(d)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_circles() {
        let d: PlanarDiagram = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]".parse().unwrap();
        let s = seifert_circles(&d).unwrap();
        assert_eq!(s.circles.len(), 2);
        assert_eq!(s.genus, 1);
    }

    #[test]
    fn figure_eight_braids() {
        let d: PlanarDiagram = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]".parse().unwrap();
        let s = seifert_circles(&d).unwrap();
        assert_eq!(s.circles.len(), 3);
        assert_eq!(s.genus, 1);
        let b = to_braid(&d).unwrap();
        assert_eq!(b.closure_components(), 1);
    }

    #[test]
    fn braid_closure_reads_back() {
        let w = BraidWord::new(3, &[1, -2, 1, -2]).unwrap();
        let b = to_braid(&w.closure().unwrap()).unwrap();
        assert_eq!(b.strands, 3);
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn split_rejected() {
        let d = BraidWord::new(3, &[1, 1, 1]).unwrap().closure().unwrap();
        assert_eq!(seifert_circles(&d), Err(SeifertError::Split));
    }
}

#[cfg(test)]
mod oracle {
    use super::*;
    use crate::invariants::{alexander_burau, alexander_from_seifert, signature_of};
    use crate::linalg::det_int;
    use num_traits::Signed;

    fn random_knot_braids(count: usize, seed: u64) -> Vec<BraidWord> {
        let mut seed = seed;
        let mut rnd = move |m: u64| {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % m
        };
        (0..count)
            .filter_map(|_| {
                let n = 3 + rnd(3) as i64;
                let len = 5 + rnd(6) as usize;
                let w: Vec<i64> =
                    (0..len).map(|_| (1 + rnd(n as u64 - 1) as i64) * if rnd(2) == 0 { 1 } else { -1 }).collect();
                let b = BraidWord::new(n as usize, &w).ok()?;
                let full = (1..b.strands).all(|g| b.letters.iter().any(|l| l.gen == g));
                (full && b.closure_components() == 1).then_some(b)
            })
            .collect()
    }

    #[test]
    fn braid_matrix_matches_burau() {
        for b in random_knot_braids(1500, 12345) {
            let v = braid_seifert_matrix(&b);
            let delta = alexander_from_seifert(&v).unwrap();
            assert_eq!(delta, alexander_burau(&b), "{b}");
            let sym: IntMatrix = (0..v.len()).map(|i| (0..v.len()).map(|j| &v[i][j] + &v[j][i]).collect()).collect();
            let sigma = signature_of(&v);
            assert_eq!(sigma.rem_euclid(2), 0, "{b}");
            assert!(sigma.abs() as usize <= v.len(), "{b}");
            // sign of Delta(-1) in Conway normalisation is (-1)^(sigma/2)
            let at_minus_one = delta.eval_int(-1).unwrap();
            assert_eq!(det_int(&sym).abs(), at_minus_one.abs(), "{b}");
            assert_eq!(at_minus_one.is_positive(), sigma.rem_euclid(4) == 0, "{b}");
        }
    }

    #[test]
    fn diagram_roundtrip() {
        for b in random_knot_braids(400, 777).into_iter().filter(|b| b.strands == 3) {
            let d = b.closure().unwrap();
            let want = alexander_burau(&b);
            assert_eq!(alexander_from_seifert(&seifert_matrix(&d).unwrap()).unwrap(), want, "{b}");
            assert_eq!(alexander_from_seifert(&seifert_matrix(&d.reverse()).unwrap()).unwrap(), want, "rev {b}");
            let sm = signature_of(&seifert_matrix(&d.mirror()).unwrap());
            assert_eq!(sm, -signature_of(&seifert_matrix(&d).unwrap()), "mirror {b}");
        }
    }
}
