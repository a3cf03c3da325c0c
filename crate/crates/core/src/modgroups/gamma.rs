use std::collections::BTreeMap;

use num_rational::Ratio;

use super::matrix::gl2_elements;
use crate::error::{Error, Result};
use crate::funfield::gf::{is_prime, prime_divisors};

/// `Γ_n = {g ∈ GL₂(Z/n) : det g ∈ H_n}` with `H_n = ⟨r⟩ ⊆ (Z/n)^×`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSpec {
    pub n: u64,
    pub r: u64,
    pub h_order: u64,
    pub sl2_order: u64,
    pub gamma_order: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Multiplicative order of `r` modulo `n` (`1` for `n ≤ 2`).
pub fn unit_order(r: u64, n: u64) -> u64 {
    if n <= 2 {
        return 1;
    }
    let (mut x, mut k) = (r % n, 1);
    while x != 1 {
        x = x * (r % n) % n;
        k += 1;
    }
    k
}

/// `|SL₂(Z/n)| = n³ Π_{ℓ | n} (1 − ℓ⁻²)`.
pub fn sl2_order(n: u64) -> u64 {
    prime_divisors(n).into_iter().fold(n * n * n, |acc, l| acc / (l * l) * (l * l - 1))
}

pub fn gamma_spec(r: u64, n: u64) -> Result<GammaSpec> {
    if n < 2 {
        return Err(Error::precondition("n must be at least 2"));
    }
    if gcd(r, n) != 1 {
        return Err(Error::precondition(format!("n = {n} is not prime to r = {r}")));
    }
    let h_order = unit_order(r, n);
    let sl2 = sl2_order(n);
    Ok(GammaSpec { n, r, h_order, sl2_order: sl2, gamma_order: sl2 * h_order })
}

/// `|{g ∈ GL₂(Z/n) : det g ∈ ⟨r⟩}|` by enumeration.
pub fn gamma_order_bruteforce(r: u64, n: u32) -> u64 {
    let mut h = vec![false; n as usize];
    let mut x = 1 % n as u64;
    loop {
        if h[x as usize] {
            break;
        }
        h[x as usize] = true;
        x = x * (r % n as u64) % n as u64;
    }
    gl2_elements(n).filter(|m| h[m.det() as usize]).count() as u64
}

/// Frequencies of `(trace, det)` over `Γ_ℓ ⊆ GL₂(F_ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharpolyDistribution {
    pub ell: u32,
    pub total: u64,
    pub counts: BTreeMap<(u32, u32), u64>,
}

impl CharpolyDistribution {
    pub fn frequency(&self, trace: u32, det: u32) -> Ratio<u64> {
        Ratio::new(self.counts.get(&(trace, det)).copied().unwrap_or(0), self.total)
    }

    /// Total mass on matrices with the given determinant.
    pub fn det_mass(&self, det: u32) -> u64 {
        self.counts.iter().filter(|((_, d), _)| *d == det).map(|(_, c)| c).sum()
    }

    pub fn dets(&self) -> Vec<u32> {
        let d: std::collections::BTreeSet<u32> = self.counts.keys().map(|&(_, d)| d).collect();
        d.into_iter().collect()
    }
}

pub const MAX_CHARPOLY_ELL: u32 = 13;

pub fn gamma_charpoly_distribution(r: u64, ell: u32) -> Result<CharpolyDistribution> {
    if !is_prime(ell as u64) {
        return Err(Error::precondition("ℓ must be prime"));
    }
    if ell > MAX_CHARPOLY_ELL {
        return Err(Error::ResourceCap(format!("ℓ = {ell} exceeds the enumeration bound {MAX_CHARPOLY_ELL}")));
    }
    if r.is_multiple_of(ell as u64) {
        return Err(Error::precondition("ℓ must differ from the characteristic"));
    }
    let spec = gamma_spec(r, ell as u64)?;
    let mut h = vec![false; ell as usize];
    let mut x = 1u64;
    for _ in 0..spec.h_order {
        h[x as usize] = true;
        x = x * (r % ell as u64) % ell as u64;
    }
    let mut counts = BTreeMap::new();
    let mut total = 0;
    for m in gl2_elements(ell).filter(|m| h[m.det() as usize]) {
        *counts.entry((m.trace(), m.det())).or_insert(0) += 1;
        total += 1;
    }
    debug_assert_eq!(total, spec.gamma_order);
    Ok(CharpolyDistribution { ell, total, counts })
}
