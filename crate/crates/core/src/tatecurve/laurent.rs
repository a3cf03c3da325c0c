use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::intseries::IntSeries;
use crate::error::{Error, Result};
use crate::funfield::{Fe, FieldContext, FiniteField, RationalFunction};

/// Truncated Laurent series `t^v (c_0 + c_1 t + …) + O(t^{v+N})` over a finite
/// field. Nonzero series have `c_0 ≠ 0`; a series with no known nonzero
/// coefficient is stored with empty `coeffs` and `val` equal to its precision.
#[derive(Clone)]
pub struct LaurentSeries {
    field: Arc<FiniteField>,
    val: i64,
    coeffs: Vec<Fe>,
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries({})", self)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*t^{}", self.field.fmt_elem(c), self.val + i as i64)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.precision())
    }
}

impl LaurentSeries {
    pub fn new(field: &Arc<FiniteField>, val: i64, coeffs: Vec<Fe>) -> Self {
        let lead = coeffs.iter().take_while(|&&c| c == 0).count();
        LaurentSeries { field: field.clone(), val: val + lead as i64, coeffs: coeffs[lead..].to_vec() }
    }

    /// `c · t^e` known to relative precision `n`.
    pub fn monomial(field: &Arc<FiniteField>, c: Fe, e: i64, n: usize) -> Self {
        let mut coeffs = vec![0; n.max(1)];
        coeffs[0] = c;
        Self::new(field, e, coeffs)
    }

    /// Expansion of `x ∈ F_q(T)` at `∞` in the uniformizer `t = 1/T`.
    pub fn expand_at_infinity(ctx: &FieldContext, x: &RationalFunction, n: usize) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::precondition("zero has no Laurent expansion"));
        }
        let fq = ctx.fq();
        let rev = |p: &crate::funfield::Poly| {
            let mut c = p.coeffs().to_vec();
            c.reverse();
            c
        };
        let (dn, dd) = (x.num().deg() as i64, x.den().deg() as i64);
        let num = Self::new(fq, 0, pad(rev(x.num()), n));
        let den = Self::new(fq, 0, pad(rev(x.den()), n));
        let mut out = num.mul(&den.inv()?);
        out.val += dd - dn;
        Ok(out)
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation; for a series known only to be `O(t^N)` this is `N`.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    /// Number of known coefficients from the leading term.
    pub fn relative_precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Exponent of the first unknown coefficient.
    pub fn precision(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of `t^n`, or `None` beyond the precision.
    pub fn coeff(&self, n: i64) -> Option<Fe> {
        if n >= self.precision() {
            None
        } else if n < self.val {
            Some(0)
        } else {
            Some(self.coeffs[(n - self.val) as usize])
        }
    }

    /// Truncate to relative precision `n`.
    pub fn truncate_relative(&self, n: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.truncate(n);
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let start = self.val.min(other.val);
        let prec = self.precision().min(other.precision());
        let f = &self.field;
        let coeffs = (start..prec).map(|n| f.add(self.coeff(n).unwrap(), other.coeff(n).unwrap())).collect();
        Self::new(f, start.min(prec), coeffs)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        LaurentSeries { field: f.clone(), val: self.val, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fe) -> Self {
        let f = &self.field;
        Self::new(f, self.val, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let val = self.val + other.val;
        if self.is_zero() || other.is_zero() {
            let prec = (self.val + other.precision()).min(other.val + self.precision());
            return Self::new(f, prec, vec![]);
        }
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![0; n];
        for (i, &a) in self.coeffs.iter().enumerate().take(n) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Self::new(f, val, coeffs)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InsufficientPrecision("inverse of a series known only to be O(t^N)".into()));
        }
        let f = &self.field;
        let n = self.coeffs.len();
        let lead_inv = f.inv(self.coeffs[0]).expect("leading coefficient is nonzero");
        let mut out = vec![0; n];
        out[0] = lead_inv;
        for k in 1..n {
            let mut acc = 0;
            for i in 1..=k {
                acc = f.add(acc, f.mul(self.coeffs[i], out[k - i]));
            }
            out[k] = f.neg(f.mul(acc, lead_inv));
        }
        Ok(Self::new(f, -self.val, out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::monomial(&self.field, 1, 0, base.coeffs.len());
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// `self^p`, computed coefficientwise; relative precision is multiplied by `p`.
    pub fn pth_power(&self) -> Self {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let mut coeffs = vec![0; self.coeffs.len() * p];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * p] = f.pow(c, p as u64);
        }
        Self::new(f, self.val * p as i64, coeffs)
    }

    /// `R(self) = Σ_{k ≥ 1} r_k self^k` for an integer power series `R` with
    /// zero constant term, coefficients reduced mod `p`.
    pub fn compose_int(&self, r: &IntSeries) -> Result<Self> {
        if r.start() < 1 {
            return Err(Error::precondition("composition needs a series without constant term"));
        }
        if self.val <= 0 || self.is_zero() {
            return Err(Error::precondition("composition needs positive valuation"));
        }
        let f = &self.field;
        let target = self.val + self.coeffs.len() as i64;
        let mut out = Self::new(f, target, vec![]);
        let mut power = self.pow(r.start())?;
        for k in r.start().. {
            if power.val >= target {
                break;
            }
            let rk = r.coeff(k).ok_or_else(|| {
                Error::InsufficientPrecision("integer series too short for the requested precision".into())
            })?;
            let c = int_mod(&rk, f);
            if c != 0 {
                out = out.add(&power.scale(c));
            }
            power = power.mul(self);
        }
        Ok(out)
    }

    /// Equality of all coefficients up to the smaller precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let prec = self.precision().min(other.precision());
        let start = self.val.min(other.val);
        (start..prec).all(|n| self.coeff(n) == other.coeff(n))
    }
}

fn pad(mut c: Vec<Fe>, n: usize) -> Vec<Fe> {
    c.resize(c.len().max(n), 0);
    c
}

/// An integer reduced into the prime subfield.
pub fn int_mod(n: &BigInt, f: &FiniteField) -> Fe {
    let p = BigInt::from(f.characteristic());
    let mut r = n % &p;
    if r < BigInt::zero() {
        r += &p;
    }
    r.to_u32().expect("residue below p")
}
