//! Exact dense linear algebra over `Z`, `Q` and `Z[t, t^-1]`.

use crate::poly::LaurentPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Row-major integer matrix.
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Fraction-free (Bareiss) determinant over the integers.
pub fn det_int(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Result of eliminating unit pivots from a matrix over `Z[t, t^-1]`.
pub struct UnitReduction {
    /// The block left once no unit entries remain; its cokernel is that of
    /// the input.
    pub rest: Vec<Vec<LaurentPoly>>,
    /// Product of the pivots.
    pub scale: LaurentPoly,
    /// Whether the row and column orders differ by an odd permutation.
    pub odd: bool,
}

/// Eliminates on unit entries `+-t^k`, cheapest fill-in first. Rows and
/// columns of a pivot are removed, which keeps the cokernel and multiplies
/// the determinant by the pivot.
pub fn reduce_units(m: &[Vec<LaurentPoly>]) -> UnitReduction {
    let n = m.len();
    let width = m.first().map_or(0, |r| r.len());
    let mut rows: Vec<BTreeMap<usize, LaurentPoly>> = m
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect())
        .collect();
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); width];
    for (i, r) in rows.iter().enumerate() {
        for &j in r.keys() {
            cols[j].insert(i);
        }
    }
    let mut live_rows: BTreeSet<usize> = (0..n).collect();
    let mut live_cols: BTreeSet<usize> = (0..width).collect();
    let (mut row_order, mut col_order) = (Vec::new(), Vec::new());
    let mut scale = LaurentPoly::one();
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for &i in &live_rows {
            for (&j, x) in &rows[i] {
                if !is_unit(x) {
                    continue;
                }
                let cost = (rows[i].len() - 1) * (cols[j].len() - 1);
                if best.map_or(true, |b| cost < b.0) {
                    best = Some((cost, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[pi]);
        let inv = pivot_row[&pj].clone();
        let (e, c) = inv.terms().next().map(|(e, c)| (e, c.clone())).unwrap();
        scale = &scale * &inv;
        row_order.push(pi);
        col_order.push(pj);
        for &j in pivot_row.keys() {
            cols[j].remove(&pi);
        }
        let targets: Vec<usize> = cols[pj].iter().copied().collect();
        for i in targets {
            // row_i -= (a / u) row_pivot, exact since u = c t^e with c = +-1
            let f = rows[i][&pj].shift(-e).scale(&c);
            for (&j, x) in &pivot_row {
                let v = &rows[i].get(&j).cloned().unwrap_or_else(LaurentPoly::zero) - &(&f * x);
                if v.is_zero() {
                    rows[i].remove(&j);
                    cols[j].remove(&i);
                } else {
                    rows[i].insert(j, v);
                    cols[j].insert(i);
                }
            }
        }
        live_rows.remove(&pi);
        live_cols.remove(&pj);
    }
    let cs: Vec<usize> = live_cols.into_iter().collect();
    let rest = live_rows
        .iter()
        .map(|&i| cs.iter().map(|j| rows[i].get(j).cloned().unwrap_or_else(LaurentPoly::zero)).collect())
        .collect();
    row_order.extend(live_rows);
    col_order.extend(cs);
    let odd = permutation_odd(&row_order) != permutation_odd(&col_order);
    UnitReduction { rest, scale, odd }
}

/// Determinant over `Z[t, t^-1]` of a sparse square matrix: unit pivots
/// first, then the remaining block densely.
pub fn det_poly_sparse(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let r = reduce_units(m);
    // the reordered matrix is block triangular with the pivots on the diagonal
    let d = &r.scale * &det_poly(&r.rest);
    if r.odd {
        -d
    } else {
        d
    }
}

fn permutation_odd(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for i in 0..p.len() {
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 && len > 0 {
            odd = !odd;
        }
    }
    odd
}

fn is_unit(x: &LaurentPoly) -> bool {
    let mut it = x.terms();
    matches!((it.next(), it.next()), (Some((_, c)), None) if c.abs().is_one())
}

/// Fraction-free determinant over `Z[t, t^-1]`.
pub fn det_poly(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut a: Vec<Vec<LaurentPoly>> = m.to_vec();
    let mut neg = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    neg = !neg;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if neg {
        -d
    } else {
        d
    }
}

/// Smith normal form diagonal (invariant factors, nonnegative, zeros kept)
/// of a rectangular integer matrix. Pivots on the entry of least absolute
/// value to keep intermediate growth down.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // least nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for i in t..rows {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t onto the pivot
                let mut bi = t;
                let mut bj = t;
                for i in t..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[bi][bj].abs() {
                        bi = i;
                        bj = t;
                    }
                }
                for j in t..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[bi][bj].abs() {
                        bi = t;
                        bj = j;
                    }
                }
                a.swap(t, bi);
                for r in a.iter_mut() {
                    r.swap(t, bj);
                }
                continue;
            }
            // pivot must divide the rest of the block
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    while diag.len() < rows.min(cols) {
        diag.push(BigInt::zero());
    }
    diag
}

/// Signature of a symmetric integer matrix by rational congruence
/// diagonalisation.
pub fn signature_sym(m: &IntMatrix) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut sig = 0i64;
    while !alive.is_empty() {
        let pivot = alive.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // all diagonal entries vanish: e_i -> e_i + e_j on an off-diagonal entry
                let pair = alive
                    .iter()
                    .flat_map(|&i| alive.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let piv = a[p][p].clone();
        sig += if piv.is_positive() { 1 } else { -1 };
        alive.retain(|&i| i != p);
        for &i in &alive {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &piv;
            for &j in &alive {
                let v = &f * &a[p][j];
                a[i][j] -= v;
            }
            a[i][p] = BigRational::zero();
        }
        for &j in &alive {
            a[p][j] = BigRational::zero();
        }
    }
    sig
}
