//! The Tate period `q` from `j`, the `p`-power index of `q`, and the
//! unipotent depth `v_ℓ(e)` attached to a multiplicative place.

use num_bigint::BigInt;
use num_traits::Zero;

use super::expansions::j_series;
use super::intseries::IntSeries;
use super::laurent::LaurentSeries;
use crate::curve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::funfield::gf::is_prime;
use crate::funfield::Place;
use crate::localred::candidate_bad_places;

/// Reversion `q = Σ_{k=1}^{n} r_k s^k` of `s = 1/j(q)`, by Lagrange inversion
/// `r_k = (1/k) [q^{k−1}] (q j(q))^k`.
pub fn j_reversion_series(n: usize) -> IntSeries {
    // q j(q) = 1 + 744q + …, known modulo q^n
    let phi = IntSeries::new(0, j_series(n).coeffs().to_vec());
    let mut coeffs = Vec::with_capacity(n);
    let mut power = IntSeries::constant(1, n as i64);
    for k in 1..=n {
        power = power.mul(&phi);
        let c = power.coeff(k as i64 - 1).expect("within precision");
        let kk = BigInt::from(k);
        debug_assert!((&c % &kk).is_zero());
        coeffs.push(c / kk);
    }
    IntSeries::new(1, coeffs)
}

/// `j(q) = 1/q + 744 + 196884q + …` evaluated at `q ∈ F_q((t))`, `v(q) > 0`.
pub fn j_of_period(q: &LaurentSeries) -> Result<LaurentSeries> {
    if q.is_zero() || q.valuation() <= 0 {
        return Err(Error::precondition("the Tate period must have positive valuation"));
    }
    let inv = q.inv()?;
    let n = q.relative_precision() + 2;
    let js = j_series(n + 1);
    // j − 1/q has no pole
    let tail = IntSeries::new(0, js.coeffs()[1..].to_vec());
    let f = q.field();
    let c0 = super::laurent::int_mod(&tail.coeff(0).unwrap(), f);
    let constant = LaurentSeries::monomial(f, c0, 0, (inv.precision().max(1)) as usize);
    let rest = q.compose_int(&IntSeries::new(1, tail.coeffs()[1..].to_vec()))?;
    Ok(inv.add(&constant).add(&rest))
}

/// The unique `q` with `v(q) = −v(j₀)` and `j(q) = j₀`, to the precision of
/// `j₀` (at most `n` relative coefficients).
pub fn period_from_j(j0: &LaurentSeries, n: usize) -> Result<LaurentSeries> {
    if j0.is_zero() || j0.valuation() >= 0 {
        return Err(Error::precondition("v(j0) must be negative; integral j has no Tate period"));
    }
    let s = j0.truncate_relative(n).inv()?;
    let e = s.valuation() as usize;
    let terms = s.relative_precision().div_ceil(e) + 1;
    s.compose_int(&j_reversion_series(terms))
}

/// Smallest `k ≥ 1` with `q ∉ (F_∞^×)^{p^k}`.
///
/// `q = t^e u` is a `p^m`-th power iff `p^m | e` and every nonzero coefficient
/// of `u` sits at an index divisible by `p^m`. A level is only accepted as a
/// `p^m`-th power once the known part of `u` covers index `p^m`; otherwise the
/// answer is reported as undetermined.
pub fn p_power_index(q: &LaurentSeries) -> Result<u32> {
    if q.is_zero() || q.valuation() <= 0 {
        return Err(Error::precondition("p_power_index needs v(q) > 0"));
    }
    let p = q.field().characteristic() as i64;
    let e = q.valuation();
    let n = q.relative_precision() as i64;
    let mut pm = 1i64;
    for m in 1u32.. {
        pm *= p;
        if e % pm != 0 {
            return Ok(m);
        }
        let witness = q.coeffs().iter().enumerate().skip(1).any(|(i, &c)| c != 0 && i as i64 % pm != 0);
        if witness {
            return Ok(m);
        }
        if n <= pm {
            return Err(Error::InsufficientPrecision(format!(
                "q is a {}-th power to the known {} coefficients; more are needed to decide level {}",
                pm, n, m
            )));
        }
    }
    unreachable!("e is finite")
}

/// `v_ℓ(e)` with `e = −v_𝔭(j) > 0` at a designated place of potentially
/// multiplicative reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentDepth {
    pub place: Place,
    pub e: i64,
    pub ell: u64,
    pub depth: u32,
}

/// The designated place is `∞` when `v_∞(j) < 0`, otherwise the first finite
/// pole of `j` in canonical order.
pub fn unipotent_depth(e: &WeierstrassCurve, ell: u64) -> Result<UnipotentDepth> {
    let ctx = e.ctx();
    if !is_prime(ell) || ell == ctx.p() as u64 {
        return Err(Error::precondition("ℓ must be a prime different from p"));
    }
    let j = e.j_invariant();
    if j.is_zero() {
        return Err(Error::precondition("j = 0 has no poles; no multiplicative place"));
    }
    let mut places = candidate_bad_places(e)?;
    places.sort_by_key(|p| !p.is_infinity());
    for place in places {
        let v = ctx.valuation(&j, &place)?;
        if v < 0 {
            let ev = -v;
            let mut depth = 0;
            let mut r = ev as u64;
            while r.is_multiple_of(ell) {
                r /= ell;
                depth += 1;
            }
            return Ok(UnipotentDepth { place, e: ev, ell, depth });
        }
    }
    Err(Error::precondition("j has no pole; Tate uniformization does not apply"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funfield::{parse_ratfunc, FieldContext, FiniteField, Poly};

    #[test]
    fn reversion_leading_coefficients() {
        let r = j_reversion_series(4);
        let c: Vec<i64> = r.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect();
        // 744² + 196884 = 750420
        assert_eq!(c[..3], [1, 744, 750420]);
    }

    #[test]
    fn reversion_composes_to_identity_over_z() {
        // s · j(q(s)) = 1 as integer series in s
        let n = 8;
        let q = j_reversion_series(n);
        let js = j_series(n + 1);
        let mut j_of_q = q.inv().unwrap();
        let mut qk = IntSeries::constant(1, n as i64 + 1);
        for k in 0..n as i64 {
            j_of_q = j_of_q.add(&qk.scale(i64::try_from(&js.coeff(k).unwrap()).unwrap()));
            qk = qk.mul(&q);
        }
        let mut sc = vec![BigInt::zero(); n];
        sc[0] = BigInt::from(1);
        let prod = j_of_q.mul(&IntSeries::new(1, sc));
        assert!(prod.precision() >= n as i64 - 1);
        assert_eq!(prod.coeff(0).unwrap(), BigInt::from(1));
        for k in 1..prod.precision() {
            assert_eq!(prod.coeff(k).unwrap(), BigInt::zero(), "s^{k}");
        }
    }

    #[test]
    fn period_of_inverse_t() {
        let f = FiniteField::prime(7).unwrap();
        let j0 = LaurentSeries::monomial(&f, 1, -1, 10);
        let q = period_from_j(&j0, 10).unwrap();
        assert_eq!(q.valuation(), 1);
        // t + 744t² + 750420t³ reduced mod 7
        assert_eq!(&q.coeffs()[..3], &[1, 744 % 7, 750420 % 7]);
        assert!(j_of_period(&q).unwrap().agrees_with(&j0));
    }

    #[test]
    fn integral_j_rejected() {
        let f = FiniteField::prime(5).unwrap();
        let j0 = LaurentSeries::new(&f, 0, vec![2, 1, 0, 0]);
        assert!(period_from_j(&j0, 4).is_err());
    }

    #[test]
    fn p_power_index_examples() {
        let f = FiniteField::prime(5).unwrap();
        let n = 60;
        assert_eq!(p_power_index(&LaurentSeries::monomial(&f, 1, 3, n)).unwrap(), 1);
        assert_eq!(p_power_index(&LaurentSeries::monomial(&f, 1, 5, n)).unwrap(), 2);
        let mut c = vec![0; n];
        c[0] = 1;
        c[1] = 1;
        assert_eq!(p_power_index(&LaurentSeries::new(&f, 25, c)).unwrap(), 1);
        // t^25 with only five known coefficients cannot decide level 1
        assert!(matches!(p_power_index(&LaurentSeries::monomial(&f, 1, 25, 5)), Err(Error::InsufficientPrecision(_))));
    }

    #[test]
    fn depth_examples() {
        let c = FieldContext::new(5, 1).unwrap();
        let e = WeierstrassCurve::new(&c, c.int(1), c.t()).unwrap();
        for ell in [2, 3, 7, 11] {
            let d = unipotent_depth(&e, ell).unwrap();
            assert_eq!(d.place, Place::Finite(Poly::new(vec![2, 0, 1])));
            assert_eq!((d.e, d.depth), (1, 0));
        }
        assert!(unipotent_depth(&e, 5).is_err());
        // 4a³ + 27b² = 108T³ + 27 cancels the T⁶ terms: v_∞(j) = −3
        let e3 = WeierstrassCurve::new(&c, parse_ratfunc(&c, "-3T^2").unwrap(), parse_ratfunc(&c, "2T^3+1").unwrap())
            .unwrap();
        let d = unipotent_depth(&e3, 3).unwrap();
        assert_eq!((d.place.clone(), d.e, d.depth), (Place::Infinity, 3, 1));
        assert_eq!(unipotent_depth(&e3, 2).unwrap().depth, 0);
        let isotrivial = WeierstrassCurve::new(&c, c.int(0), c.int(1)).unwrap();
        assert!(unipotent_depth(&isotrivial, 2).is_err());
    }
}
