//! q-expansions of the Tate curve `y² + xy = x³ + a₄(q)x + a₆(q)`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::intseries::IntSeries;

/// `Σ_{m=1}^{n} σ_k(m) q^m` as a vector indexed by `m` (index 0 unused),
/// accumulated over divisors `d` and their multiples.
fn divisor_power_sums(k: u32, n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n + 1];
    for d in 1..=n {
        let dk = BigInt::from(d).pow(k);
        for m in (d..=n).step_by(d) {
            out[m] += &dk;
        }
    }
    out
}

/// `a₄(q) = −5 Σ σ₃(m) q^m`, the `n` coefficients of `q¹ … qⁿ`.
pub fn a4_series(n: usize) -> IntSeries {
    let s3 = divisor_power_sums(3, n);
    IntSeries::new(1, s3[1..].iter().map(|s| s * -5).collect())
}

/// `a₆(q) = −Σ (7σ₅(m) + 5σ₃(m))/12 q^m`, the `n` coefficients of `q¹ … qⁿ`.
pub fn a6_series(n: usize) -> IntSeries {
    let s3 = divisor_power_sums(3, n);
    let s5 = divisor_power_sums(5, n);
    let twelve = BigInt::from(12);
    let coeffs = (1..=n)
        .map(|m| {
            let num: BigInt = &s5[m] * 7u32 + &s3[m] * 5u32;
            debug_assert!((&num % &twelve).is_zero());
            -(num / &twelve)
        })
        .collect();
    IntSeries::new(1, coeffs)
}

/// `Δ(q) = q Π_{n≥1} (1 − qⁿ)^24`, the `n` coefficients of `q¹ … qⁿ`.
pub fn delta_series(n: usize) -> IntSeries {
    // Π (1 − q^k) mod q^n
    let mut prod = vec![BigInt::zero(); n];
    if n > 0 {
        prod[0] = BigInt::from(1);
    }
    for k in 1..n {
        for i in (k..n).rev() {
            let t = prod[i - k].clone();
            prod[i] -= t;
        }
    }
    let base = IntSeries::new(0, prod);
    IntSeries::new(1, base.pow(24).coeffs().to_vec())
}

/// `c₄ = 1 − 48a₄` known modulo `q^{n}`.
pub fn c4_series(n: usize) -> IntSeries {
    IntSeries::constant(1, n as i64).sub(&a4_series(n).scale(48)).truncate(n as i64)
}

/// `c₆ = −1 + 72a₄ − 864a₆` known modulo `q^{n}`.
pub fn c6_series(n: usize) -> IntSeries {
    IntSeries::constant(-1, n as i64).add(&a4_series(n).scale(72)).sub(&a6_series(n).scale(864)).truncate(n as i64)
}

/// `j(q) = c₄³/Δ = 1/q + 744 + 196884q + …`, the `n` coefficients of
/// `q⁻¹ … q^{n−2}`.
pub fn j_series(n: usize) -> IntSeries {
    let c4 = c4_series(n);
    let delta = delta_series(n);
    let j = c4.pow(3).div(&delta).expect("Δ has leading coefficient 1");
    j.take(n)
}

/// The four expansions `a₄, a₆, Δ, j`, each with `n` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateExpansions {
    pub a4: IntSeries,
    pub a6: IntSeries,
    pub delta: IntSeries,
    pub j: IntSeries,
}

pub fn tate_expansions(n: usize) -> TateExpansions {
    TateExpansions { a4: a4_series(n), a6: a6_series(n), delta: delta_series(n), j: j_series(n) }
}
