use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Truncated Laurent series `Σ c_i q^{start+i} + O(q^{start+len})` with exact
/// integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    start: i64,
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn new(start: i64, coeffs: Vec<BigInt>) -> Self {
        IntSeries { start, coeffs }
    }

    /// Zero known modulo `q^prec`.
    pub fn zero(prec: i64) -> Self {
        IntSeries { start: 0, coeffs: vec![BigInt::zero(); prec.max(0) as usize] }
    }

    /// The constant `c` known modulo `q^prec`.
    pub fn constant(c: i64, prec: i64) -> Self {
        let mut s = Self::zero(prec);
        if let Some(x) = s.coeffs.first_mut() {
            *x = BigInt::from(c);
        }
        s
    }

    pub fn from_i64(start: i64, coeffs: &[i64]) -> Self {
        IntSeries { start, coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Exponent of the first unknown coefficient.
    pub fn precision(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^n`, or `None` beyond the precision.
    pub fn coeff(&self, n: i64) -> Option<BigInt> {
        if n >= self.precision() {
            None
        } else if n < self.start {
            Some(BigInt::zero())
        } else {
            Some(self.coeffs[(n - self.start) as usize].clone())
        }
    }

    /// Drop leading zero coefficients (moving `start` up).
    pub fn normalized(mut self) -> Self {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.start += lead as i64;
        self
    }

    /// The first `n` coefficients from `start`.
    pub fn take(&self, n: usize) -> Self {
        IntSeries { start: self.start, coeffs: self.coeffs.iter().take(n).cloned().collect() }
    }

    /// Truncate to known modulo `q^prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        let keep = (prec - self.start).clamp(0, self.coeffs.len() as i64) as usize;
        IntSeries { start: self.start, coeffs: self.coeffs[..keep].to_vec() }
    }

    pub fn add(&self, other: &IntSeries) -> IntSeries {
        let start = self.start.min(other.start);
        let prec = self.precision().min(other.precision());
        let coeffs = (start..prec).map(|n| self.coeff(n).unwrap() + other.coeff(n).unwrap()).collect();
        IntSeries { start, coeffs }
    }

    pub fn neg(&self) -> IntSeries {
        IntSeries { start: self.start, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &IntSeries) -> IntSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> IntSeries {
        let k = BigInt::from(k);
        IntSeries { start: self.start, coeffs: self.coeffs.iter().map(|c| c * &k).collect() }
    }

    pub fn mul(&self, other: &IntSeries) -> IntSeries {
        let start = self.start + other.start;
        let prec = (self.start + other.precision()).min(other.start + self.precision());
        let len = (prec - start).max(0) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += a * b;
            }
        }
        IntSeries { start, coeffs }
    }

    pub fn pow(&self, e: u32) -> IntSeries {
        if e == 0 {
            return IntSeries::constant(1, self.precision() - self.start);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse of a series whose leading coefficient is `±1`.
    pub fn inv(&self) -> Result<IntSeries> {
        let s = self.clone().normalized();
        let lead = s
            .coeffs
            .first()
            .ok_or_else(|| Error::InsufficientPrecision("inverse of a series known to be zero".into()))?
            .clone();
        if !lead.abs().is_one() {
            return Err(Error::precondition("leading coefficient is not a unit of Z"));
        }
        let n = s.coeffs.len();
        let mut out = vec![BigInt::zero(); n];
        out[0] = lead.clone();
        for k in 1..n {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                acc += &s.coeffs[i] * &out[k - i];
            }
            // lead^{-1} = lead for ±1
            out[k] = -(acc * &lead);
        }
        Ok(IntSeries { start: -s.start, coeffs: out })
    }

    pub fn div(&self, other: &IntSeries) -> Result<IntSeries> {
        Ok(self.mul(&other.inv()?))
    }

    /// Exact division of every coefficient by `d`; fails if any is not divisible.
    pub fn div_exact_int(&self, d: i64) -> Result<IntSeries> {
        let d = BigInt::from(d);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !(c % &d).is_zero() {
                return Err(Error::precondition(format!("coefficient {c} not divisible by {d}")));
            }
            coeffs.push(c / &d);
        }
        Ok(IntSeries { start: self.start, coeffs })
    }

    /// Whether all known coefficients vanish.
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_minus_q() {
        let s = IntSeries::from_i64(0, &[1, -1, 0, 0, 0]);
        let inv = s.inv().unwrap();
        assert_eq!(inv, IntSeries::from_i64(0, &[1, 1, 1, 1, 1]));
        let prod = s.mul(&inv);
        assert_eq!(prod, IntSeries::constant(1, 5));
    }

    #[test]
    fn laurent_precision() {
        let q = IntSeries::from_i64(1, &[1, 0, 0]); // q + O(q^4)
        let qi = q.inv().unwrap();
        assert_eq!(qi.start(), -1);
        assert_eq!(qi.precision(), 2);
        assert_eq!(q.mul(&qi), IntSeries::constant(1, 3));
    }

    #[test]
    fn non_unit_leading_rejected() {
        assert!(IntSeries::from_i64(0, &[2, 1]).inv().is_err());
    }
}
