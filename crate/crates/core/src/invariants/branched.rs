use super::InvariantError;
use crate::linalg::{det_int, reduce_units, smith_diagonal, transpose, IntMatrix};
use crate::poly::LaurentPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// First homology of the `n`-fold cyclic branched cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchedCoverHomology {
    pub n: u64,
    /// Invariant factors greater than one, then zeros for free summands.
    pub invariant_factors: Vec<BigInt>,
    /// Group order; `None` when the group is infinite.
    pub order: Option<BigInt>,
}

impl BranchedCoverHomology {
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl std::fmt::Display for BranchedCoverHomology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Multiplication by `t` on `Z[t]/(1 + t + ... + t^(n-1))` in the basis
/// `1, t, ..., t^(n-2)`.
fn companion(n: usize) -> IntMatrix {
    let m = n - 1;
    let mut c = vec![vec![BigInt::zero(); m]; m];
    for j in 0..m {
        if j + 1 < m {
            c[j + 1][j] = BigInt::one();
        } else {
            for row in c.iter_mut() {
                row[j] = -BigInt::one();
            }
        }
    }
    c
}

/// `H_1` of the `n`-fold cyclic branched cover from a Seifert matrix `V`:
/// the cokernel of `tV - V^T` over `Z[t]/(1 + ... + t^(n-1))`, written as
/// an integer matrix and put in Smith normal form.
pub fn branched_cover_homology(v: &IntMatrix, n: u64) -> Result<BranchedCoverHomology, InvariantError> {
    if v.iter().any(|r| r.len() != v.len()) {
        return Err(InvariantError::NotSquare);
    }
    let vt = transpose(v);
    let p: Vec<Vec<LaurentPoly>> = v
        .iter()
        .zip(&vt)
        .map(|(r, rt)| r.iter().zip(rt).map(|(a, b)| &LaurentPoly::monomial(a.clone(), 1) - &LaurentPoly::constant(b.clone())).collect())
        .collect();
    cover_from_presentation(&p, n)
}

/// `H_1` of the `n`-fold cyclic branched cover of a knot from any square
/// presentation matrix of its Alexander module.
pub fn cover_from_presentation(p: &[Vec<LaurentPoly>], n: u64) -> Result<BranchedCoverHomology, InvariantError> {
    if n < 2 {
        return Err(InvariantError::CoverOrder);
    }
    if p.iter().any(|r| r.len() != p.len()) {
        return Err(InvariantError::NotSquare);
    }
    let rest = reduce_units(p).rest;
    if rest.is_empty() {
        return Ok(BranchedCoverHomology { n, invariant_factors: Vec::new(), order: Some(BigInt::one()) });
    }
    let k = n as usize - 1;
    let c = companion(n as usize);
    // powers of t acting on Z[t]/(1 + ... + t^(n-1)), where t^n = 1
    let mut powers = vec![identity(k)];
    for i in 1..n as usize {
        powers.push(mat_mul_int(&powers[i - 1], &c));
    }
    let size = rest.len() * k;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for (bi, row) in rest.iter().enumerate() {
        for (bj, x) in row.iter().enumerate() {
            for (e, coeff) in x.terms() {
                let pw = &powers[e.rem_euclid(n as i64) as usize];
                for i in 0..k {
                    for j in 0..k {
                        if !pw[i][j].is_zero() {
                            m[bi * k + i][bj * k + j] += coeff * &pw[i][j];
                        }
                    }
                }
            }
        }
    }
    Ok(from_diagonal(n, &smith_diagonal(&m)))
}

fn identity(k: usize) -> IntMatrix {
    (0..k).map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn mat_mul_int(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let bt = transpose(b);
    a.iter().map(|r| bt.iter().map(|c| r.iter().zip(c).map(|(x, y)| x * y).sum()).collect()).collect()
}

fn from_diagonal(n: u64, diag: &[BigInt]) -> BranchedCoverHomology {
    let mut factors: Vec<BigInt> = diag.iter().filter(|d| !d.is_one() && !d.is_zero()).cloned().collect();
    let free = diag.iter().filter(|d| d.is_zero()).count();
    let order = if free > 0 { None } else { Some(factors.iter().fold(BigInt::one(), |a, b| a * b)) };
    factors.extend(std::iter::repeat(BigInt::zero()).take(free));
    BranchedCoverHomology { n, invariant_factors: factors, order }
}

/// `H_1` of the double branched cover, presented by a Goeritz matrix.
pub fn double_cover_homology(g: &IntMatrix) -> BranchedCoverHomology {
    from_diagonal(2, &smith_diagonal(g))
}

/// `|Res(t^k Delta, (t^n - 1)/(t - 1))|` via the Sylvester determinant. For
/// a knot this equals the order of `H_1` of the `n`-fold branched cover
/// (zero when the group is infinite).
pub fn cyclotomic_resultant(delta: &LaurentPoly, n: u64) -> BigInt {
    let (_, f) = delta.dense();
    let g: Vec<BigInt> = vec![BigInt::one(); n as usize];
    resultant(&f, &g).abs()
}

/// Resultant of two polynomials given by ascending coefficient vectors.
fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let df = f.len().saturating_sub(1);
    let dg = g.len().saturating_sub(1);
    if df == 0 && dg == 0 {
        return BigInt::one();
    }
    let size = df + dg;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for r in 0..dg {
        for (i, c) in f.iter().rev().enumerate() {
            s[r][r + i] = c.clone();
        }
    }
    for r in 0..df {
        for (i, c) in g.iter().rev().enumerate() {
            s[dg + r][r + i] = c.clone();
        }
    }
    det_int(&s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_matrix;

    fn trefoil_v() -> IntMatrix {
        int_matrix(&[vec![-1, 1], vec![0, -1]])
    }

    #[test]
    fn trefoil_covers() {
        let h2 = branched_cover_homology(&trefoil_v(), 2).unwrap();
        assert_eq!(h2.invariant_factors, vec![BigInt::from(3)]);
        let h3 = branched_cover_homology(&trefoil_v(), 3).unwrap();
        assert_eq!(h3.invariant_factors, vec![BigInt::from(2), BigInt::from(2)]);
        let h6 = branched_cover_homology(&trefoil_v(), 6).unwrap();
        assert_eq!(h6.order, None);
        assert_eq!(h6.to_string(), "Z + Z");
    }

    #[test]
    fn resultant_matches_orders() {
        let d: LaurentPoly = "t - 1 + t^-1".parse().unwrap();
        assert_eq!(cyclotomic_resultant(&d, 2), BigInt::from(3));
        assert_eq!(cyclotomic_resultant(&d, 3), BigInt::from(4));
        assert_eq!(cyclotomic_resultant(&d, 6), BigInt::zero());
    }
}
