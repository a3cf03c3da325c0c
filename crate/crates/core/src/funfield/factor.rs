//! Factorization of polynomials over odd-characteristic finite fields:
//! squarefree decomposition, distinct-degree splitting, then Cantor–Zassenhaus
//! equal-degree splitting with a fixed-seed generator so results are
//! reproducible.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gf::{Fe, FiniteField};
use super::poly::Poly;
use crate::error::{Error, Result};

/// `f = unit · Π g_i^{m_i}` with monic irreducible `g_i` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, f: &FiniteField) -> Poly {
        self.factors.iter().fold(Poly::constant(self.unit), |acc, (g, m)| acc.mul(&g.pow(*m as u64, f), f))
    }
}

pub fn factor(poly: &Poly, f: &FiniteField) -> Result<Factorization> {
    if poly.is_zero() {
        return Err(Error::precondition("cannot factor the zero polynomial"));
    }
    let unit = poly.leading();
    let monic = poly.monic(f);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (sq, mult) in squarefree_decomposition(&monic, f) {
        for (part, d) in distinct_degree(&sq, f) {
            for g in equal_degree(&part, d, f, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    // merge repeated factors coming from different squarefree layers
    let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(out.len());
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => merged.push((g, m)),
        }
    }
    Ok(Factorization { unit, factors: merged })
}

/// `c^{1/p}` for every coefficient of a polynomial in `T^p`.
fn pth_root(poly: &Poly, f: &FiniteField) -> Poly {
    let p = f.characteristic() as usize;
    let root_exp = (f.size() / f.characteristic()) as u64;
    Poly::new(poly.coeffs().iter().step_by(p).map(|&c| f.pow(c, root_exp)).collect())
}

/// Squarefree decomposition of a monic polynomial: pairs `(s_i, i)` with
/// `poly = Π s_i^i`, the `s_i` squarefree and pairwise coprime.
pub fn squarefree_decomposition(poly: &Poly, f: &FiniteField) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if poly.deg() == 0 {
        return out;
    }
    let p = f.characteristic();
    let d = poly.derivative(f);
    let mut c = poly.gcd(&d, f);
    let mut w = poly.div_exact(&c, f).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c, f);
        let z = w.div_exact(&y, f).unwrap();
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y.clone();
        c = c.div_exact(&y, f).unwrap();
    }
    if !c.is_one() {
        let root = pth_root(&c, f);
        for (g, m) in squarefree_decomposition(&root, f) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of a
/// common degree: pairs `(product, degree)`.
pub fn distinct_degree(poly: &Poly, f: &FiniteField) -> Vec<(Poly, usize)> {
    let q = BigUint::from(f.size());
    let mut out = Vec::new();
    let mut rest = poly.clone();
    let x = Poly::x();
    let mut h = x.rem(&rest, f);
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&q, &rest, f);
        let g = rest.gcd(&h.sub(&x, f), f);
        if !g.is_one() {
            rest = rest.div_exact(&g, f).unwrap();
            h = h.rem(&rest, f);
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting of a squarefree monic product of
/// irreducibles of degree `d` (odd characteristic).
pub fn equal_degree(poly: &Poly, d: usize, f: &FiniteField, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = poly.deg();
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![poly.clone()];
    }
    let q = BigUint::from(f.size());
    let exp = (q.pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = Poly::new((0..n).map(|_| rng.gen_range(0..f.size())).collect());
        if a.deg() == 0 {
            continue;
        }
        let g = poly.gcd(&a, f);
        let split = if !g.is_one() {
            g
        } else {
            let b = a.pow_mod(&exp, poly, f).sub(&Poly::one(), f);
            poly.gcd(&b, f)
        };
        if !split.is_one() && split.deg() < n {
            let other = poly.div_exact(&split, f).unwrap();
            let mut out = equal_degree(&split, d, f, rng);
            out.extend(equal_degree(&other, d, f, rng));
            return out;
        }
    }
}

/// Ben-Or irreducibility test.
pub fn is_irreducible(poly: &Poly, f: &FiniteField) -> bool {
    let n = match poly.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let m = poly.monic(f);
    let q = BigUint::from(f.size());
    let x = Poly::x();
    let mut h = x.clone();
    for _ in 0..n / 2 {
        h = h.pow_mod(&q, &m, f);
        if !m.gcd(&h.sub(&x, f), f).is_one() {
            return false;
        }
    }
    true
}

/// Every monic polynomial of degree `d`, in canonical (lexicographic from the
/// top coefficient down) order.
pub fn monic_polys(d: usize, f: &FiniteField) -> impl Iterator<Item = Poly> + '_ {
    let q = f.size() as u64;
    let count = q.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut v = vec![0; d + 1];
        for c in v.iter_mut().take(d) {
            *c = (idx % q) as Fe;
            idx /= q;
        }
        v[d] = 1;
        Poly::new(v)
    })
}

/// All monic irreducibles of degree `d`, canonical order.
pub fn monic_irreducibles(d: usize, f: &FiniteField) -> Vec<Poly> {
    monic_polys(d, f).filter(|g| is_irreducible(g, f)).collect()
}

/// The lowest monic irreducible of degree `d` in canonical order.
pub fn lowest_irreducible(d: usize, f: &FiniteField) -> Poly {
    monic_polys(d, f).find(|g| is_irreducible(g, f)).expect("irreducibles exist in every degree")
}

/// Number of monic irreducibles of degree `d` over `F_q` (Gauss's formula).
pub fn count_irreducibles(q: u64, d: u64) -> u64 {
    let mut total: i128 = 0;
    for k in 1..=d {
        if d.is_multiple_of(k) {
            total += mobius(d / k) as i128 * (q as i128).pow(k as u32);
        }
    }
    (total / d as i128) as u64
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}
