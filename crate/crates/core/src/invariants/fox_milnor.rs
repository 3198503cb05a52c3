use crate::poly::LaurentPoly;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Outcome of the Fox-Milnor test `Delta = F(t) F(t^-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "factor")]
pub enum FoxMilnorResult {
    /// The middle coefficient is not positive, but for `F F*` it is a sum of squares.
    ObstructedNegativeConstant,
    FactorizationFound(LaurentPoly),
    /// The bounded search ran to completion without a factor.
    ObstructedNoFactorization,
    /// The search budget ran out.
    Inconclusive,
}

impl FoxMilnorResult {
    pub fn label(&self) -> &'static str {
        match self {
            FoxMilnorResult::ObstructedNegativeConstant => "ObstructedNegativeConstant",
            FoxMilnorResult::FactorizationFound(_) => "FactorizationFound",
            FoxMilnorResult::ObstructedNoFactorization => "ObstructedNoFactorization",
            FoxMilnorResult::Inconclusive => "Inconclusive",
        }
    }
}

const BUDGET: u64 = 2_000_000;

/// Checks the Fox-Milnor condition for a symmetric Alexander polynomial.
/// Candidates `F = b_0 + ... + b_d t^d` have `d = span/2`, `b_0 > 0`,
/// `b_d != 0` and `sum b_i^2` equal to the middle coefficient.
pub fn fox_milnor(delta: &LaurentPoly) -> FoxMilnorResult {
    let c0 = delta.coeff(0);
    if !c0.is_positive() {
        return FoxMilnorResult::ObstructedNegativeConstant;
    }
    let Some(target) = c0.to_i64() else { return FoxMilnorResult::Inconclusive };
    if delta.span() % 2 != 0 {
        return FoxMilnorResult::ObstructedNoFactorization;
    }
    let d = (delta.span() / 2) as usize;
    let mut b = vec![0i64; d + 1];
    let mut budget = BUDGET;
    match search(delta, &mut b, 0, target, &mut budget) {
        Some(f) => FoxMilnorResult::FactorizationFound(f),
        None if budget == 0 => FoxMilnorResult::Inconclusive,
        None => FoxMilnorResult::ObstructedNoFactorization,
    }
}

fn search(delta: &LaurentPoly, b: &mut Vec<i64>, i: usize, left: i64, budget: &mut u64) -> Option<LaurentPoly> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    let d = b.len() - 1;
    if i == b.len() {
        if left != 0 || b[d] == 0 {
            return None;
        }
        let f = LaurentPoly::from_coeffs(0, b);
        let prod = &f * &f.conjugate();
        return (prod == *delta).then_some(f);
    }
    // leading and trailing coefficients must multiply to the top coefficient
    let top = delta.coeff(d as i64);
    let bound = (left as f64).sqrt() as i64 + 1;
    for x in -bound..=bound {
        if x * x > left || (i == 0 && x <= 0) || (i == d && x == 0) {
            continue;
        }
        if i == d && d > 0 && BigInt::from(b[0] * x) != top {
            continue;
        }
        if i == 0 && d == 0 && BigInt::from(x * x) != top {
            continue;
        }
        if i == d && d == 0 && top.is_zero() {
            continue;
        }
        b[i] = x;
        if let Some(f) = search(delta, b, i + 1, left - x * x, budget) {
            return Some(f);
        }
    }
    b[i] = 0;
    None
}
