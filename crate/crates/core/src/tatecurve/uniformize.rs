//! The uniformization `u ↦ (x(u,q), y(u,q))` of the Tate curve, in three
//! settings: formal in `u`, at a rational unit `u`, and over `F_q((t))`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::expansions::{a4_series, a6_series};
use super::intseries::IntSeries;
use super::laurent::{int_mod, LaurentSeries};
use crate::error::{Error, Result};

/// Laurent polynomial in `u` with integer coefficients; no zero entries.
pub type UPoly = BTreeMap<i64, BigInt>;

fn upoly_add(a: &mut UPoly, b: &UPoly, sign: i64) {
    for (&e, c) in b {
        let entry = a.entry(e).or_insert_with(BigInt::zero);
        *entry += c * sign;
        if entry.is_zero() {
            a.remove(&e);
        }
    }
}

fn upoly_mul(a: &UPoly, b: &UPoly) -> UPoly {
    let mut out = UPoly::new();
    for (&ea, ca) in a {
        for (&eb, cb) in b {
            let entry = out.entry(ea + eb).or_insert_with(BigInt::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn one_minus_u_pow(k: u32) -> UPoly {
    let base: UPoly = [(0, BigInt::one()), (1, -BigInt::one())].into_iter().collect();
    (0..k).fold([(0, BigInt::one())].into_iter().collect(), |acc, _| upoly_mul(&acc, &base))
}

/// `Σ_{m<N} P_m(u) q^m` with `P_m ∈ Z[u, u⁻¹]`, known modulo `q^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoVarSeries {
    terms: Vec<UPoly>,
}

impl TwoVarSeries {
    pub fn zero(n: usize) -> Self {
        TwoVarSeries { terms: vec![UPoly::new(); n] }
    }

    /// An integer power series in `q`, constant in `u`.
    pub fn from_q_series(s: &IntSeries, n: usize) -> Self {
        let mut out = Self::zero(n);
        for (m, term) in out.terms.iter_mut().enumerate() {
            let c = s.coeff(m as i64).expect("series long enough");
            if !c.is_zero() {
                term.insert(0, c);
            }
        }
        out
    }

    pub fn precision(&self) -> usize {
        self.terms.len()
    }

    pub fn term(&self, m: usize) -> &UPoly {
        &self.terms[m]
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_empty())
    }

    pub fn add(&self, other: &Self, sign: i64) -> Self {
        let n = self.precision().min(other.precision());
        let mut terms = self.terms[..n].to_vec();
        for (t, o) in terms.iter_mut().zip(&other.terms) {
            upoly_add(t, o, sign);
        }
        TwoVarSeries { terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n - i {
                let prod = upoly_mul(&self.terms[i], &other.terms[j]);
                upoly_add(&mut out.terms[i + j], &prod, 1);
            }
        }
        out
    }

    pub fn scale_u(&self, f: &UPoly) -> Self {
        TwoVarSeries { terms: self.terms.iter().map(|t| upoly_mul(t, f)).collect() }
    }
}

fn binom2(n: i64) -> BigInt {
    BigInt::from(n * (n - 1) / 2)
}

/// `X = (1−u)² x(u,q)` and `Y = (1−u)³ y(u,q)` modulo `q^n`, from the
/// divisor-sum form of the bilateral sums.
pub fn formal_uniformization(n: usize) -> (TwoVarSeries, TwoVarSeries) {
    let mut x = TwoVarSeries::zero(n);
    let mut y = TwoVarSeries::zero(n);
    for m in 1..n {
        let (xm, ym) = (&mut x.terms[m], &mut y.terms[m]);
        for d in (1..=m as i64).filter(|d| m as i64 % d == 0) {
            let bd = BigInt::from(d);
            upoly_add(xm, &[(d, bd.clone()), (-d, bd.clone()), (0, bd.clone() * -2)].into_iter().collect(), 1);
            upoly_add(ym, &[(d, binom2(d)), (-d, -binom2(d + 1)), (0, bd)].into_iter().collect(), 1);
        }
    }
    let mut big_x = x.scale_u(&one_minus_u_pow(2));
    let mut big_y = y.scale_u(&one_minus_u_pow(3));
    if n > 0 {
        big_x.terms[0].insert(1, BigInt::one());
        big_y.terms[0].insert(2, BigInt::one());
    }
    (big_x, big_y)
}

/// `Y² + (1−u)XY − X³ − a₄(1−u)⁴X − a₆(1−u)⁶`, which is `(1−u)⁶` times the
/// Weierstrass residual of `(x, y)`.
pub fn formal_weierstrass_residual(n: usize) -> TwoVarSeries {
    let (x, y) = formal_uniformization(n);
    let a4 = TwoVarSeries::from_q_series(&a4_series(n), n);
    let a6 = TwoVarSeries::from_q_series(&a6_series(n), n);
    let y2 = y.mul(&y);
    let xy = x.mul(&y).scale_u(&one_minus_u_pow(1));
    let x3 = x.mul(&x).mul(&x);
    let a4x = a4.mul(&x).scale_u(&one_minus_u_pow(4));
    let a6t = a6.scale_u(&one_minus_u_pow(6));
    y2.add(&xy, 1).add(&x3, -1).add(&a4x, -1).add(&a6t, -1)
}

/// Power series over `Q` in `q`, known modulo `q^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatSeries {
    pub coeffs: Vec<BigRational>,
}

impl RatSeries {
    fn zero(n: usize) -> Self {
        RatSeries { coeffs: vec![BigRational::zero(); n] }
    }

    fn from_int(s: &IntSeries, n: usize) -> Self {
        RatSeries { coeffs: (0..n as i64).map(|m| BigRational::from_integer(s.coeff(m).unwrap())).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        RatSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn neg(&self) -> Self {
        RatSeries { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.coeffs.len().min(o.coeffs.len());
        let mut out = Self::zero(n);
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                out.coeffs[i + j] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// A point `w = q^k · u₀` of `Q((q))^×` with `u₀ ∈ Q^×`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateParameter {
    pub shift: i64,
    pub unit: BigRational,
}

impl TateParameter {
    pub fn new(shift: i64, unit: BigRational) -> Self {
        TateParameter { shift, unit }
    }

    pub fn inverse(&self) -> Self {
        TateParameter { shift: -self.shift, unit: self.unit.recip() }
    }
}

/// `(x(w,q), y(w,q))` modulo `q^n` by summing the bilateral series
/// `Σ_{e∈Z} q^e u₀/(1−q^e u₀)² − 2Σ nqⁿ/(1−qⁿ)` and its `y` analogue.
/// The shift `k` only relabels the summation index.
pub fn uniformize(w: &TateParameter, n: usize) -> Result<(RatSeries, RatSeries)> {
    let u = &w.unit;
    if u.is_zero() {
        return Err(Error::precondition("the parameter must be a unit"));
    }
    if u.is_one() {
        return Err(Error::precondition("u lies in q^Z; its image is the identity point O"));
    }
    let ui = u.recip();
    let mut x = RatSeries::zero(n);
    let mut y = RatSeries::zero(n);
    let one = BigRational::one();
    let om = &one - u;
    if n > 0 {
        x.coeffs[0] += u / (&om * &om);
        y.coeffs[0] += u * u / (&om * &om * &om);
    }
    for e in 1..n {
        // e ≥ 1: q^e u terms
        let mut up = u.clone();
        for j in 1.. {
            let deg = e * j;
            if deg >= n {
                break;
            }
            x.coeffs[deg] += BigRational::from_integer(BigInt::from(j)) * &up;
            up *= u;
        }
        let mut up = u * u;
        for j in 0.. {
            let deg = e * (j + 2);
            if deg >= n {
                break;
            }
            y.coeffs[deg] += BigRational::from_integer(binom2(j as i64 + 2)) * &up;
            up *= u;
        }
        // e ≤ −1: q^{−e} u terms, via z = q^e u⁻¹
        let mut up = ui.clone();
        for j in 1.. {
            let deg = e * j;
            if deg >= n {
                break;
            }
            x.coeffs[deg] += BigRational::from_integer(BigInt::from(j)) * &up;
            up *= &ui;
        }
        let mut up = ui.clone();
        for j in 0.. {
            let deg = e * (j + 1);
            if deg >= n {
                break;
            }
            y.coeffs[deg] -= BigRational::from_integer(binom2(j as i64 + 2)) * &up;
            up *= &ui;
        }
        // −2 Σ n qⁿ/(1−qⁿ) for x, + Σ n qⁿ/(1−qⁿ) for y
        for deg in (e..n).step_by(e) {
            x.coeffs[deg] -= BigRational::from_integer(BigInt::from(2 * e));
            y.coeffs[deg] += BigRational::from_integer(BigInt::from(e));
        }
    }
    Ok((x, y))
}

/// `y² + xy − x³ − a₄x − a₆` over `Q[[q]]`.
pub fn rational_weierstrass_residual(x: &RatSeries, y: &RatSeries) -> RatSeries {
    let n = x.coeffs.len().min(y.coeffs.len());
    let a4 = RatSeries::from_int(&a4_series(n), n);
    let a6 = RatSeries::from_int(&a6_series(n), n);
    y.mul(y).add(&x.mul(y)).sub(&x.mul(x).mul(x)).sub(&a4.mul(x)).sub(&a6)
}

/// `(x(u,q), y(u,q))` over `F_q((t))` for `u` a unit with `u ≢ 1` in `u`'s
/// residue and `v(q) > 0`, summed in divisor-sum form.
pub fn uniformize_laurent(u: &LaurentSeries, q: &LaurentSeries) -> Result<(LaurentSeries, LaurentSeries)> {
    if q.is_zero() || q.valuation() <= 0 {
        return Err(Error::precondition("the Tate period must have positive valuation"));
    }
    if u.is_zero() || u.valuation() != 0 {
        return Err(Error::precondition("u must be a unit of the valuation ring"));
    }
    let f = u.field().clone();
    let one = LaurentSeries::monomial(&f, 1, 0, u.relative_precision());
    let om = one.sub(u);
    if om.is_zero() {
        return Err(Error::precondition("u lies in q^Z; its image is the identity point O"));
    }
    let ui = u.inv()?;
    let mut x = u.div(&om.pow(2)?)?;
    let mut y = u.pow(2)?.div(&om.pow(3)?)?;
    let target = x.precision().min(y.precision());
    let mut qm = q.clone();
    for m in 1i64.. {
        if qm.valuation() >= target {
            break;
        }
        let mut xm = LaurentSeries::new(&f, target, vec![]);
        let mut ym = LaurentSeries::new(&f, target, vec![]);
        for d in (1..=m).filter(|d| m % d == 0) {
            let ud = u.pow(d)?;
            let uid = ui.pow(d)?;
            let fd = f.from_int(d);
            xm = xm.add(&ud.add(&uid).add(&one.scale(f.from_int(-2))).scale(fd));
            let c1 = int_mod(&binom2(d), &f);
            let c2 = int_mod(&binom2(d + 1), &f);
            ym = ym.add(&ud.scale(c1).sub(&uid.scale(c2)).add(&one.scale(fd)));
        }
        x = x.add(&qm.mul(&xm));
        y = y.add(&qm.mul(&ym));
        qm = qm.mul(q);
    }
    Ok((x, y))
}

/// `y² + xy − x³ − a₄(q)x − a₆(q)` over `F_q((t))`.
pub fn laurent_weierstrass_residual(x: &LaurentSeries, y: &LaurentSeries, q: &LaurentSeries) -> Result<LaurentSeries> {
    let n = q.relative_precision() + 2;
    let a4 = q.compose_int(&a4_series(n))?;
    let a6 = q.compose_int(&a6_series(n))?;
    Ok(y.mul(y).add(&x.mul(y)).sub(&x.pow(3)?).sub(&a4.mul(x)).sub(&a6))
}
