//! Finite fields `F_p` and towers `F_p ⊂ F_q ⊂ F_{q^d}`.
//!
//! Elements are plain `u32` indices. An element of an extension of degree `k`
//! over its base field `B` is the vector `(c_0, .., c_{k-1})` over `B`, encoded
//! as `Σ c_i |B|^i`. Because every layer encodes its coefficients the same way,
//! an index is always the base-`p` digit vector of the element over `F_p`, and
//! addition is digit-wise mod `p` regardless of the tower. Base-field elements
//! are exactly the indices `< |B|`, so the embedding `B ⊂ F` is the identity on
//! indices.
//!
//! Multiplication in an extension goes through discrete log / exponential
//! tables built once at construction.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Element of a [`FiniteField`].
pub type Fe = u32;

/// Largest field we are willing to tabulate.
pub const MAX_TABLE_FIELD: u64 = 1 << 24;

#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    degree: u32,
    size: u32,
    base: Option<Arc<FiniteField>>,
    /// Monic modulus over `base`, ascending coefficients (empty for a prime field).
    modulus: Vec<Fe>,
    exp: Vec<Fe>,
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.degree)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.degree == other.degree
            && self.modulus == other.modulus
            && match (&self.base, &other.base) {
                (None, None) => true,
                (Some(a), Some(b)) => a == b,
                _ => false,
            }
    }
}

impl Eq for FiniteField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteField {
    pub fn prime(p: u32) -> Result<Arc<Self>> {
        if !is_prime(p as u64) {
            return Err(Error::precondition(format!("{p} is not prime")));
        }
        Ok(Arc::new(FiniteField {
            p,
            degree: 1,
            size: p,
            base: None,
            modulus: Vec::new(),
            exp: Vec::new(),
            log: Vec::new(),
        }))
    }

    /// `base[x] / (modulus)`. The modulus must be monic and irreducible over
    /// `base`; irreducibility is detected (and rejected) while building the
    /// log tables, since a reducible modulus has no element of full order.
    pub fn extension(base: &Arc<FiniteField>, modulus: &[Fe]) -> Result<Arc<Self>> {
        let k = modulus.len().saturating_sub(1);
        if k == 0 || *modulus.last().unwrap() != 1 {
            return Err(Error::precondition("extension modulus must be monic of degree >= 1"));
        }
        if k == 1 {
            // degree one: isomorphic to the base, keep the base itself
            return Ok(base.clone());
        }
        let size = (base.size as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
        if size > MAX_TABLE_FIELD {
            return Err(Error::ResourceCap(format!("field of size {size} exceeds table limit {MAX_TABLE_FIELD}")));
        }
        let mut field = FiniteField {
            p: base.p,
            degree: base.degree * k as u32,
            size: size as u32,
            base: Some(base.clone()),
            modulus: modulus.to_vec(),
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables()?;
        Ok(Arc::new(field))
    }

    fn build_tables(&mut self) -> Result<()> {
        let order = self.size - 1;
        let base = self.base.clone().expect("extension");
        let k = self.modulus.len() - 1;
        let q = base.size;
        let mut candidate: Fe = q; // the class of x
        while candidate < self.size {
            let g = self.to_vec(candidate, k, q);
            let mut exp = Vec::with_capacity(order as usize);
            let mut cur = vec![0; k];
            cur[0] = 1;
            let mut full = true;
            for i in 0..order {
                let idx = Self::from_vec(&cur, q);
                if i > 0 && idx == 1 {
                    full = false;
                    break;
                }
                exp.push(idx);
                cur = self.vec_mulmod(&base, &cur, &g);
            }
            if full && Self::from_vec(&cur, q) == 1 {
                let mut log = vec![u32::MAX; self.size as usize];
                for (i, &e) in exp.iter().enumerate() {
                    if log[e as usize] != u32::MAX {
                        return Err(Error::precondition("extension modulus is not irreducible"));
                    }
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return Ok(());
            }
            candidate += 1;
        }
        Err(Error::precondition("extension modulus is not irreducible"))
    }

    fn to_vec(&self, mut a: Fe, k: usize, q: u32) -> Vec<Fe> {
        let mut v = vec![0; k];
        for c in v.iter_mut() {
            *c = a % q;
            a /= q;
        }
        v
    }

    fn from_vec(v: &[Fe], q: u32) -> Fe {
        v.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    fn vec_mulmod(&self, base: &FiniteField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let k = a.len();
        let mut prod = vec![0; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = base.add(prod[i + j], base.mul(x, y));
            }
        }
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (j, &m) in self.modulus[..k].iter().enumerate() {
                let t = top - k + j;
                prod[t] = base.sub(prod[t], base.mul(c, m));
            }
        }
        prod.truncate(k);
        prod
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn base(&self) -> Option<&Arc<FiniteField>> {
        self.base.as_ref()
    }

    pub fn modulus(&self) -> &[Fe] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.base.is_none()
    }

    /// Degree of this field over `sub`, if `sub` is a layer of its tower.
    pub fn degree_over(&self, sub: &FiniteField) -> Option<u32> {
        if self == sub {
            return Some(1);
        }
        let mut cur = self.base.as_ref();
        while let Some(b) = cur {
            if **b == *sub {
                return Some(self.degree / sub.degree);
            }
            cur = b.base.as_ref();
        }
        None
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        0
    }

    #[inline]
    pub fn one(&self) -> Fe {
        1
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.p as i64) as Fe
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p;
        if self.base.is_none() {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut pw = 1;
        while a > 0 || b > 0 {
            let d = a % p + b % p;
            out += if d >= p { d - p } else { d } * pw;
            a /= p;
            b /= p;
            pw *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.p;
        if self.base.is_none() {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut pw = 1;
        while a > 0 {
            let d = a % p;
            out += if d == 0 { 0 } else { p - d } * pw;
            a /= p;
            pw *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.base.is_none() {
            return ((a as u64 * b as u64) % self.p as u64) as Fe;
        }
        let order = self.size - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= order { s - order } else { s }) as usize]
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a == 0 {
            return None;
        }
        if self.base.is_none() {
            return Some(self.pow(a, (self.p - 2) as u64));
        }
        let order = self.size - 1;
        let l = self.log[a as usize];
        Some(self.exp[((order - l) % order) as usize])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if self.base.is_some() {
            let order = (self.size - 1) as u64;
            let l = self.log[a as usize] as u64;
            return self.exp[((l * (e % order)) % order) as usize];
        }
        let p = self.p as u64;
        let (mut base, mut e, mut acc) = (a as u64 % p, e, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as Fe
    }

    /// Discrete logarithm with respect to the table generator (extensions),
    /// or `None` for zero. Prime fields have no table; this falls back to a
    /// search, so keep it to small `p`.
    pub fn log(&self, a: Fe) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if self.base.is_some() {
            return Some(self.log[a as usize]);
        }
        let g = self.primitive_element();
        let mut cur = 1;
        for i in 0..self.p - 1 {
            if cur == a {
                return Some(i);
            }
            cur = self.mul(cur, g);
        }
        None
    }

    pub fn primitive_element(&self) -> Fe {
        if self.base.is_some() {
            return self.exp[1 % self.exp.len()];
        }
        let order = (self.p - 1) as u64;
        let primes = prime_divisors(order);
        (1..self.p).find(|&g| primes.iter().all(|&l| self.pow(g, order / l) != 1)).unwrap_or(1)
    }

    pub fn is_square(&self, a: Fe) -> bool {
        if a == 0 {
            return true;
        }
        if self.base.is_some() {
            return self.log[a as usize].is_multiple_of(2);
        }
        self.pow(a, ((self.p - 1) / 2) as u64) == 1
    }

    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        if a == 0 {
            return Some(0);
        }
        if !self.is_square(a) {
            return None;
        }
        if self.base.is_some() {
            return Some(self.exp[(self.log[a as usize] / 2) as usize]);
        }
        Some(tonelli_shanks(self, a))
    }

    /// The relative Frobenius `a ↦ a^{|sub|}`.
    pub fn frobenius(&self, a: Fe, sub_size: u32) -> Fe {
        self.pow(a, sub_size as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> u64 {
        assert!(a != 0, "order of zero");
        let n = (self.size - 1) as u64;
        let mut ord = n;
        for l in prime_divisors(n) {
            while ord.is_multiple_of(l) && self.pow(a, ord / l) == 1 {
                ord /= l;
            }
        }
        ord
    }

    /// All elements, in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.size
    }

    /// Human-readable form: prime-subfield elements as integers, others as
    /// `[index]`.
    pub fn fmt_elem(&self, a: Fe) -> String {
        if a < self.p {
            a.to_string()
        } else {
            format!("[{a}]")
        }
    }
}

fn tonelli_shanks(f: &FiniteField, a: Fe) -> Fe {
    let p = f.p as u64;
    if p % 4 == 3 {
        return f.pow(a, (p + 1) / 4);
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..f.p).find(|&z| !f.is_square(z)).unwrap();
    let mut m = s;
    let mut c = f.pow(z, q);
    let mut t = f.pow(a, q);
    let mut r = f.pow(a, q.div_ceil(2));
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = f.mul(tt, tt);
            i += 1;
        }
        let b = f.pow(c, 1 << (m - i - 1));
        m = i;
        c = f.mul(b, b);
        t = f.mul(t, c);
        r = f.mul(r, b);
    }
    r
}
