//! Polynomial and numerical invariants.

mod branched;
mod fox_milnor;
mod goeritz;

pub use branched::{
    branched_cover_homology, cover_from_presentation, cyclotomic_resultant, double_cover_homology, BranchedCoverHomology,
};
pub use fox_milnor::{fox_milnor, FoxMilnorResult};
pub use goeritz::{goeritz, signature_goeritz, Goeritz};

use crate::diagram::{BraidWord, PlanarDiagram, Sign};
use crate::linalg::{det_poly, det_poly_sparse, signature_sym, transpose, IntMatrix};
use crate::poly::LaurentPoly;
use crate::seifert::{seifert_matrix, SeifertError};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
    #[error("matrix must be square")]
    NotSquare,
    #[error("branched cover order must be at least 2")]
    CoverOrder,
}

/// Polynomial in `z` with integer coefficients, stored densely by degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConwayPoly(pub LaurentPoly);

impl ConwayPoly {
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl std::fmt::Display for ConwayPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0.to_string().replace('t', "z"))
    }
}

fn poly_matrix(v: &IntMatrix, a: &LaurentPoly, b: &LaurentPoly) -> Vec<Vec<LaurentPoly>> {
    // a * V - b * V^T
    let vt = transpose(v);
    v.iter()
        .zip(&vt)
        .map(|(r, rt)| r.iter().zip(rt).map(|(x, y)| &a.scale(x) - &b.scale(y)).collect())
        .collect()
}

/// `det(s^-1 V - s V^T)` as a Laurent polynomial in `s = t^(1/2)`.
fn half_det(v: &IntMatrix) -> LaurentPoly {
    let s = LaurentPoly::t();
    let si = LaurentPoly::monomial(1, -1);
    det_poly_sparse(&poly_matrix(v, &si, &s))
}

/// Alexander polynomial from a Seifert matrix, normalised to be symmetric
/// with `Delta(1) = 1` (Conway normalisation for knots).
pub fn alexander_from_seifert(v: &IntMatrix) -> Result<LaurentPoly, InvariantError> {
    if v.iter().any(|r| r.len() != v.len()) {
        return Err(InvariantError::NotSquare);
    }
    let d = half_det(v);
    if v.len() % 2 == 1 {
        // only possible for links with an even number of components; t^(1/2) powers
        return Ok(LaurentPoly::from_terms(d.terms().map(|(e, c)| ((e - 1) / 2, c.clone()))).normalized());
    }
    // every exponent of d is even for even size
    Ok(LaurentPoly::from_terms(d.terms().map(|(e, c)| (e / 2, c.clone()))).normalized())
}

/// Conway polynomial `det(s^-1 V - s V^T)` rewritten in `z = s - s^-1`.
pub fn conway_from_seifert(v: &IntMatrix) -> ConwayPoly {
    let mut rest = half_det(v);
    let z = LaurentPoly::from_terms([(1, 1), (-1, -1)]);
    let mut out = LaurentPoly::zero();
    while let Some(hi) = rest.max_degree() {
        let c = rest.coeff(hi);
        if hi < 0 {
            break;
        }
        out.add_term(hi, c.clone());
        rest = &rest - &z.pow(hi as u32).scale(&c);
    }
    debug_assert!(rest.is_zero(), "Seifert determinant is not a polynomial in z");
    ConwayPoly(out)
}

/// Reduced Burau matrix of one generator, `(n-1) x (n-1)`.
fn burau_generator(n: usize, gen: usize, sign: Sign) -> Vec<Vec<LaurentPoly>> {
    let m = n - 1;
    let one = LaurentPoly::one;
    let mut a: Vec<Vec<LaurentPoly>> =
        (0..m).map(|i| (0..m).map(|j| if i == j { one() } else { LaurentPoly::zero() }).collect()).collect();
    let i = gen - 1;
    let t = LaurentPoly::t();
    let ti = LaurentPoly::monomial(1, -1);
    match sign {
        Sign::Positive => {
            a[i][i] = LaurentPoly::monomial(-1, 1);
            if i > 0 {
                a[i - 1][i] = t.clone();
            }
            if i + 1 < m {
                a[i + 1][i] = one();
            }
        }
        Sign::Negative => {
            a[i][i] = LaurentPoly::monomial(-1, -1);
            if i > 0 {
                a[i - 1][i] = one();
            }
            if i + 1 < m {
                a[i + 1][i] = ti;
            }
        }
    }
    a
}

fn mat_mul(a: &[Vec<LaurentPoly>], b: &[Vec<LaurentPoly>]) -> Vec<Vec<LaurentPoly>> {
    let n = a.len();
    let mut c = vec![vec![LaurentPoly::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    c[i][j] = &c[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    c
}

/// Alexander polynomial of a braid closure via the reduced Burau
/// representation: `det(I - B(beta)) (1 - t) / (1 - t^n)`.
pub fn alexander_burau(b: &BraidWord) -> LaurentPoly {
    let n = b.strands;
    if n == 1 {
        return LaurentPoly::one();
    }
    let m = n - 1;
    let mut acc: Vec<Vec<LaurentPoly>> = burau_generator(n, 1, Sign::Positive);
    for (i, row) in acc.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = if i == j { LaurentPoly::one() } else { LaurentPoly::zero() };
        }
    }
    for l in &b.letters {
        acc = mat_mul(&acc, &burau_generator(n, l.gen, l.sign));
    }
    let mut diff = acc;
    for i in 0..m {
        for j in 0..m {
            let id = if i == j { LaurentPoly::one() } else { LaurentPoly::zero() };
            diff[i][j] = &id - &diff[i][j];
        }
    }
    let d = det_poly(&diff);
    let num = &d * &LaurentPoly::from_coeffs(0, &[1, -1]);
    let den = LaurentPoly::from_terms([(0, 1), (n as i64, -1)]);
    num.div_exact(&den).expect("Burau determinant divisible by (1 - t^n)/(1 - t)").normalized()
}

/// Alexander polynomial of a diagram: Fox calculus on the Wirtinger
/// presentation for knots, the Seifert matrix for links.
pub fn alexander(d: &PlanarDiagram) -> Result<LaurentPoly, InvariantError> {
    if d.crossing_count() == 0 && d.component_count() == 1 {
        return Ok(LaurentPoly::one());
    }
    if d.component_count() == 1 {
        return alexander_wirtinger(d);
    }
    alexander_from_seifert(&seifert_matrix(d)?)
}

/// Alexander polynomial of a knot as a first minor of the abelianised Fox
/// Jacobian of the Wirtinger presentation (one generator per over-arc).
pub fn alexander_wirtinger(d: &PlanarDiagram) -> Result<LaurentPoly, InvariantError> {
    Ok(det_poly_sparse(&wirtinger_presentation(d)?).normalized())
}

/// Square presentation matrix of the Alexander module of a knot: the
/// abelianised Fox Jacobian of the Wirtinger presentation without its first
/// row and column.
pub fn wirtinger_presentation(d: &PlanarDiagram) -> Result<Vec<Vec<LaurentPoly>>, InvariantError> {
    let comps = d.component_count();
    if comps != 1 {
        return Err(InvariantError::NotAKnot(comps));
    }
    let n = d.crossing_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut edges: Vec<_> = d.crossings().iter().flat_map(|c| c.edges).collect();
    edges.sort_unstable();
    edges.dedup();
    let index: BTreeMap<_, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for c in d.crossings() {
        let a = find(&mut parent, index[&c.edges[1]]);
        let b = find(&mut parent, index[&c.edges[3]]);
        parent[a] = b;
    }
    let mut arc: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..edges.len() {
        let r = find(&mut parent, i);
        let next = arc.len();
        arc.entry(r).or_insert(next);
    }
    let arcs = arc.len();
    let mut arc_of = |e| arc[&find(&mut parent, index[&e])];
    let one_minus_t = LaurentPoly::from_terms([(0, 1), (1, -1)]);
    let mut m = vec![vec![LaurentPoly::zero(); arcs]; n];
    for (r, c) in d.crossings().iter().enumerate() {
        let (k, i, j) = (arc_of(c.edges[1]), arc_of(c.edges[0]), arc_of(c.edges[2]));
        // x_j = x_k x_i x_k^-1 at a positive crossing, x_i = x_k x_j x_k^-1 otherwise
        let (i, j) = if c.sign == Sign::Positive { (i, j) } else { (j, i) };
        m[r][k] = &m[r][k] + &one_minus_t;
        m[r][i] = &m[r][i] + &LaurentPoly::t();
        m[r][j] = &m[r][j] - &LaurentPoly::one();
    }
    Ok(m[1..].iter().map(|row| row[1..].to_vec()).collect())
}

pub fn conway(d: &PlanarDiagram) -> Result<ConwayPoly, InvariantError> {
    if d.crossing_count() == 0 {
        let p = if d.component_count() == 1 { LaurentPoly::one() } else { LaurentPoly::zero() };
        return Ok(ConwayPoly(p));
    }
    Ok(conway_from_seifert(&seifert_matrix(d)?))
}

/// Signature of `V + V^T`.
pub fn signature_of(v: &IntMatrix) -> i64 {
    let vt = transpose(v);
    let s: IntMatrix = v.iter().zip(&vt).map(|(r, rt)| r.iter().zip(rt).map(|(a, b)| a + b).collect()).collect();
    signature_sym(&s)
}

/// Signature of a connected diagram, by the Gordon-Litherland formula.
pub fn signature(d: &PlanarDiagram) -> Result<i64, InvariantError> {
    if d.crossing_count() == 0 {
        return Ok(0);
    }
    match signature_goeritz(d) {
        Err(InvariantError::Seifert(SeifertError::Split)) => Ok(signature_of(&seifert_matrix(d)?)),
        r => r,
    }
}

/// Conway polynomial of a knot from its normalised Alexander polynomial,
/// using `t - 2 + t^-1 = z^2`.
pub fn conway_from_alexander(delta: &LaurentPoly) -> ConwayPoly {
    let z2 = LaurentPoly::from_terms([(-1, 1), (0, -2), (1, 1)]);
    let mut rest = delta.clone();
    let mut out = LaurentPoly::zero();
    while let Some(k) = rest.max_degree() {
        if k < 0 {
            break;
        }
        let c = rest.coeff(k);
        let mut p = LaurentPoly::one();
        for _ in 0..k {
            p = &p * &z2;
        }
        out = &out + &LaurentPoly::monomial(c.clone(), 2 * k);
        rest = &rest - &p.scale(&c);
    }
    ConwayPoly(out)
}

/// `|Delta(-1)|`
pub fn determinant_of(delta: &LaurentPoly) -> BigInt {
    delta.eval_int(-1).unwrap().abs()
}

pub fn determinant(d: &PlanarDiagram) -> Result<BigInt, InvariantError> {
    Ok(determinant_of(&alexander(d)?))
}

/// Whether `p - q` vanishes at every `n`-th root of unity, i.e. whether
/// `t^n - 1` divides `t^k (p - q)`.
pub fn roots_of_unity_equal(p: &LaurentPoly, q: &LaurentPoly, n: u64) -> bool {
    assert!(n >= 1);
    (p - q).reduce_cyclic(n).is_zero()
}

/// All invariants of a knot diagram in one record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSummary {
    pub crossings: usize,
    pub writhe: i64,
    pub seifert_circles: usize,
    pub genus_bound: i64,
    pub alexander: LaurentPoly,
    pub conway: LaurentPoly,
    pub signature: i64,
    pub determinant: BigInt,
    pub branched: BTreeMap<u64, BranchedCoverHomology>,
}

/// Computes every invariant of a knot once, sharing the Wirtinger
/// presentation.
pub fn summarize(d: &PlanarDiagram, covers: &[u64]) -> Result<InvariantSummary, InvariantError> {
    let n = d.component_count();
    if n != 1 {
        return Err(InvariantError::NotAKnot(n));
    }
    let data = crate::seifert::seifert_circles(d)?;
    let presentation = wirtinger_presentation(d)?;
    let alexander = det_poly_sparse(&presentation).normalized();
    let conway = conway_from_alexander(&alexander).0;
    let signature = signature(d)?;
    let mut branched = BTreeMap::new();
    for &k in covers {
        let h = if k == 2 && d.crossing_count() > 0 {
            double_cover_homology(&goeritz(d)?.matrix)
        } else {
            cover_from_presentation(&presentation, k)?
        };
        branched.insert(k, h);
    }
    Ok(InvariantSummary {
        crossings: d.crossing_count(),
        writhe: d.writhe(),
        seifert_circles: data.circles.len(),
        genus_bound: data.genus,
        determinant: determinant_of(&alexander),
        signature,
        alexander,
        conway,
        branched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid(n: usize, w: &[i64]) -> BraidWord {
        BraidWord::new(n, w).unwrap()
    }

    #[test]
    fn burau_trefoil_and_figure_eight() {
        assert_eq!(alexander_burau(&braid(2, &[1, 1, 1])), "t - 1 + t^-1".parse().unwrap());
        assert_eq!(alexander_burau(&braid(3, &[1, -2, 1, -2])), "3 - t - t^-1".parse().unwrap());
    }

    #[test]
    fn wirtinger_matches_burau() {
        let mut seed = 7u64;
        let mut next = |k: u64| {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % k
        };
        let mut checked = 0;
        while checked < 200 {
            let strands = 2 + next(3) as usize;
            let len = 3 + next(8) as usize;
            let w: Vec<i64> = (0..len)
                .map(|_| {
                    let g = 1 + next(strands as u64 - 1) as i64;
                    if next(2) == 0 { g } else { -g }
                })
                .collect();
            let b = braid(strands, &w);
            if b.closure_components() != 1 {
                continue;
            }
            let d = b.closure().unwrap();
            assert_eq!(alexander_wirtinger(&d).unwrap(), alexander_burau(&b), "{w:?}");
            checked += 1;
        }
    }

    fn random_braids(seed: u64, count: usize) -> Vec<BraidWord> {
        let mut seed = seed;
        let mut next = |k: u64| {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % k
        };
        (0..count)
            .map(|_| {
                let strands = 2 + next(3) as usize;
                let len = 3 + next(9) as usize;
                let w: Vec<i64> = (0..len)
                    .map(|_| {
                        let g = 1 + next(strands as u64 - 1) as i64;
                        if next(2) == 0 { g } else { -g }
                    })
                    .collect();
                braid(strands, &w)
            })
            .collect()
    }

    #[test]
    fn goeritz_matches_seifert() {
        for b in random_braids(11, 300) {
            let d = b.closure().unwrap();
            if !d.is_connected() {
                continue;
            }
            let v = seifert_matrix(&d).unwrap();
            assert_eq!(signature_goeritz(&d).unwrap(), signature_of(&v), "{b:?}");
            if b.closure_components() == 1 {
                let g = goeritz(&d).unwrap();
                let h = double_cover_homology(&g.matrix);
                assert_eq!(h, branched_cover_homology(&v, 2).unwrap(), "{b:?}");
                let delta = alexander_from_seifert(&v).unwrap();
                assert_eq!(conway_from_alexander(&delta), conway_from_seifert(&v), "{b:?}");
                let p = wirtinger_presentation(&d).unwrap();
                for n in 2..=5 {
                    assert_eq!(cover_from_presentation(&p, n).unwrap(), branched_cover_homology(&v, n).unwrap(), "{b:?}");
                }
            }
        }
    }

    #[test]
    fn seifert_trefoil() {
        let d = braid(2, &[1, 1, 1]).closure().unwrap();
        assert_eq!(alexander(&d).unwrap(), "t - 1 + t^-1".parse().unwrap());
        assert_eq!(signature(&d).unwrap(), -2);
        assert_eq!(signature(&d.mirror()).unwrap(), 2);
        assert_eq!(determinant(&d).unwrap(), BigInt::from(3));
    }

    #[test]
    fn conway_links() {
        let hopf = braid(2, &[1, 1]).closure().unwrap();
        assert_eq!(conway(&hopf).unwrap().0, LaurentPoly::t());
        let t24 = braid(2, &[1, 1, 1, 1]).closure().unwrap();
        assert_eq!(conway(&t24).unwrap().0, LaurentPoly::from_coeffs(0, &[0, 2, 0, 1]));
        let unlink = braid(2, &[1, -1]).closure().unwrap();
        assert!(conway(&unlink).unwrap().is_zero());
    }

    #[test]
    fn roots_of_unity() {
        let a: LaurentPoly = "1 + t^3".parse().unwrap();
        let b: LaurentPoly = "2".parse().unwrap();
        assert!(roots_of_unity_equal(&a, &b, 3));
        assert!(!roots_of_unity_equal(&a, &b, 2));
    }
}
