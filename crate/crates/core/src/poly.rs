//! Sparse Laurent polynomials in one variable with big-integer coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element of `Z[t, t^-1]`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `t`
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Dense coefficients starting at exponent `low`.
    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (low + i as i64, c)))
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max_degree - min_degree`, zero for the zero polynomial.
    pub fn span(&self) -> i64 {
        match (self.min_degree(), self.max_degree()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// `p(t^-1)`
    pub fn conjugate(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// `p(t^k)`; `k` must be nonzero.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0);
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.conjugate()
    }

    /// Evaluates at an integer point. Negative exponents require `x = +-1`.
    pub fn eval_int(&self, x: i64) -> Option<BigInt> {
        if self.min_degree().unwrap_or(0) < 0 && x.abs() != 1 {
            return None;
        }
        let x = BigInt::from(x);
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let xe = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.clone(), (-*e) as usize)
            };
            acc += c * xe;
        }
        Some(acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Reduces exponents modulo `n`, i.e. the image in `Z[t]/(t^n - 1)`.
    pub fn reduce_cyclic(&self, n: u64) -> Self {
        let n = n as i64;
        Self::from_terms(self.terms.iter().map(|(e, c)| (e.rem_euclid(n), c.clone())))
    }

    /// Dense coefficient vector from the lowest exponent upwards.
    pub fn dense(&self) -> (i64, Vec<BigInt>) {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => {
                let v = (lo..=hi).map(|e| self.coeff(e)).collect();
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dlo = d.min_degree().unwrap();
        let dhi = d.max_degree().unwrap();
        let lead = d.coeff(dhi);
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some(hi) = rem.max_degree() {
            let lo = rem.min_degree().unwrap();
            if hi - lo < dhi - dlo {
                return None;
            }
            let c = rem.coeff(hi);
            let (qc, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let e = hi - dhi;
            let term = Self::monomial(qc, e);
            rem = &rem - &(&term * d);
            q = &q + &term;
        }
        Some(q)
    }

    /// Multiplies by the unit `+-t^k` that makes the polynomial symmetric
    /// (or as close as parity allows) with positive value at `t = 1`.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lo = self.min_degree().unwrap();
        let hi = self.max_degree().unwrap();
        // centre on zero, favouring the negative side for odd spans
        let shift = -Integer::div_floor(&(lo + hi), &2);
        let mut p = self.shift(shift);
        let v = p.eval_int(1).unwrap();
        if v.is_negative() || (v.is_zero() && p.coeff(p.max_degree().unwrap()).is_negative()) {
            p = -p;
        }
        p
    }

    /// Equality up to multiplication by a unit `+-t^k`.
    pub fn eq_up_to_unit(&self, other: &LaurentPoly) -> bool {
        self.normalized() == other.normalized()
    }

    /// Sparse `[[exponent, coefficient], ...]` pairs in ascending exponent order.
    pub fn to_sparse(&self) -> Vec<(i64, BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c.clone())).collect()
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // coefficients as JSON numbers when they fit, strings otherwise
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            match i64::try_from(c) {
                Ok(v) => seq.serialize_element(&(e, v))?,
                Err(_) => seq.serialize_element(&(e, c.to_string()))?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<(i64, serde_json::Value)> = Vec::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, v) in raw {
            let c = match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| serde::de::Error::custom("non-integer coefficient"))?,
                serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom)?,
                _ => return Err(serde::de::Error::custom("bad coefficient")),
            };
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    /// Constant first, then increasing `|e|` with `t^k` before `t^-k`,
    /// e.g. `-3 + 4*t + 4*t^-1 - 2*t^2 - 2*t^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<i64> = self.terms.keys().copied().collect();
        keys.sort_by_key(|e| (e.abs(), *e < 0));
        for (i, e) in keys.iter().enumerate() {
            let c = &self.terms[e];
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{}", e),
            };
            if *e == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", mag, mono)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = String;

    /// Parses the display format: sums of `c`, `c*t`, `t^k`, `c*t^-k`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty polynomial".into());
        }
        let mut p = LaurentPoly::zero();
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            // a term ends at the next +/- that is not an exponent sign
            while i < bytes.len() && !((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
                i += 1;
            }
            let term = &s[start..i];
            if term.is_empty() {
                return Err(format!("dangling sign in {s:?}"));
            }
            let (coef, mono) = match term.find('t') {
                None => (term, ""),
                Some(pos) => {
                    let c = term[..pos].trim_end_matches('*');
                    (if c.is_empty() { "1" } else { c }, &term[pos..])
                }
            };
            let c: BigInt = coef.parse().map_err(|_| format!("bad coefficient {coef:?}"))?;
            let e = if mono.is_empty() {
                0
            } else if mono == "t" {
                1
            } else if let Some(x) = mono.strip_prefix("t^") {
                x.parse::<i64>().map_err(|_| format!("bad exponent {x:?}"))?
            } else {
                return Err(format!("bad monomial {mono:?}"));
            };
            p.add_term(e, sign * c);
        }
        Ok(p)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_order() {
        let p = LaurentPoly::from_terms([(0, -3), (1, 4), (-1, 4), (2, -2), (-2, -2)]);
        assert_eq!(p.to_string(), "-3 + 4*t + 4*t^-1 - 2*t^2 - 2*t^-2");
        assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
    }

    #[test]
    fn parse_variants() {
        let p: LaurentPoly = "t - 1 + t^-1".parse().unwrap();
        assert_eq!(p, LaurentPoly::from_coeffs(-1, &[1, -1, 1]));
        let q: LaurentPoly = "-t^-3+2*t^3".parse().unwrap();
        assert_eq!(q.coeff(-3), BigInt::from(-1));
        assert_eq!(q.coeff(3), BigInt::from(2));
    }

    #[test]
    fn exact_division() {
        let a = LaurentPoly::from_coeffs(0, &[1, 1]);
        let b = LaurentPoly::from_coeffs(-2, &[1, -1, 1]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(LaurentPoly::from_coeffs(0, &[1, 0, 1]).div_exact(&a).is_none());
    }

    #[test]
    fn normalization() {
        let p = LaurentPoly::from_coeffs(3, &[-1, 1, -1]);
        assert_eq!(p.normalized(), LaurentPoly::from_coeffs(-1, &[1, -1, 1]));
    }

    #[test]
    fn json_roundtrip() {
        let p = LaurentPoly::from_coeffs(-1, &[1, -1, 1]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[-1,1],[0,-1],[1,1]]");
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), p);
    }
}
