use super::InvariantError;
use crate::diagram::{PlanarDiagram, Sign};
use crate::linalg::{signature_sym, IntMatrix};
use crate::seifert::SeifertError;
use num_bigint::BigInt;
use std::collections::HashMap;

/// Goeritz matrix of a connected diagram with its Gordon-Litherland
/// correction term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Goeritz {
    /// Reduced Goeritz matrix on the unshaded regions.
    pub matrix: IntMatrix,
    /// Sum of the incidence numbers of the crossings whose oriented
    /// smoothing joins the shaded corners.
    pub correction: i64,
}

/// Checkerboard data: each crossing's corner `k` lies between slots `k`
/// and `k + 1`. A crossing has incidence `+1` when the over-strand, turned
/// counterclockwise, sweeps the shaded corners.
pub fn goeritz(d: &PlanarDiagram) -> Result<Goeritz, InvariantError> {
    if !d.is_connected() {
        return Err(SeifertError::Split.into());
    }
    let faces = d.faces();
    let mut face_of: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for &dart in f {
            face_of.insert(dart, i);
        }
    }
    let corner = |c: usize, k: usize| face_of[&(c, k % 4)];
    // neighbouring corners of a crossing get opposite colours
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
    for c in 0..d.crossing_count() {
        for k in 0..4 {
            adj[corner(c, k)].push(corner(c, k + 1));
            adj[corner(c, k + 1)].push(corner(c, k));
        }
    }
    let mut shaded: Vec<Option<bool>> = vec![None; faces.len()];
    if !faces.is_empty() {
        shaded[0] = Some(true);
        let mut stack = vec![0];
        while let Some(f) = stack.pop() {
            let s = shaded[f].unwrap();
            for &g in &adj[f] {
                if shaded[g].is_none() {
                    shaded[g] = Some(!s);
                    stack.push(g);
                }
            }
        }
    }
    let shaded: Vec<bool> = shaded.into_iter().map(|s| s.unwrap_or(true)).collect();
    let white: Vec<usize> = (0..faces.len()).filter(|&f| !shaded[f]).collect();
    let index: HashMap<usize, usize> = white.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let m = white.len();
    let mut g = vec![vec![0i64; m]; m];
    let mut correction = 0;
    for (ci, c) in d.crossings().iter().enumerate() {
        let odd_shaded = shaded[corner(ci, 1)];
        let eta = if odd_shaded { 1 } else { -1 };
        // the oriented smoothing joins corners 1, 3 at positive crossings
        if (c.sign == Sign::Positive) == odd_shaded {
            correction += eta;
        }
        let (w1, w2) = if odd_shaded { (corner(ci, 0), corner(ci, 2)) } else { (corner(ci, 1), corner(ci, 3)) };
        let (i, j) = (index[&w1], index[&w2]);
        if i != j {
            g[i][j] -= eta;
            g[j][i] -= eta;
            g[i][i] += eta;
            g[j][j] += eta;
        }
    }
    let matrix = g.iter().skip(1).map(|r| r.iter().skip(1).map(|&x| BigInt::from(x)).collect()).collect();
    Ok(Goeritz { matrix, correction })
}

/// Signature by the Gordon-Litherland formula `sign(G) - mu`.
pub fn signature_goeritz(d: &PlanarDiagram) -> Result<i64, InvariantError> {
    let g = goeritz(d)?;
    Ok(signature_sym(&g.matrix) - g.correction)
}
