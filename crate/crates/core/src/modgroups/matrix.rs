use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

/// Default bound on the size of a generated subgroup.
pub const DEFAULT_BFS_CAP: usize = 10_000_000;

/// A 2×2 matrix over `Z/N` with `N < 2^16`, entries in `[0, N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixModN {
    pub n: u32,
    pub e: [u32; 4],
}

impl MatrixModN {
    pub fn new(n: u32, a: i64, b: i64, c: i64, d: i64) -> Self {
        assert!((2..1 << 16).contains(&n), "modulus must lie in [2, 2^16)");
        let r = |x: i64| x.rem_euclid(n as i64) as u32;
        MatrixModN { n, e: [r(a), r(b), r(c), r(d)] }
    }

    pub fn identity(n: u32) -> Self {
        Self::new(n, 1, 0, 0, 1)
    }

    /// 16 bits per entry, row-major.
    pub fn pack(&self) -> u64 {
        self.e.iter().fold(0u64, |acc, &x| acc << 16 | x as u64)
    }

    pub fn unpack(n: u32, key: u64) -> Self {
        let g = |i: u32| ((key >> (48 - 16 * i)) & 0xffff) as u32;
        MatrixModN { n, e: [g(0), g(1), g(2), g(3)] }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n as u64;
        let [a, b, c, d] = self.e.map(|x| x as u64);
        let [w, x, y, z] = o.e.map(|x| x as u64);
        MatrixModN {
            n: self.n,
            e: [
                ((a * w + b * y) % n) as u32,
                ((a * x + b * z) % n) as u32,
                ((c * w + d * y) % n) as u32,
                ((c * x + d * z) % n) as u32,
            ],
        }
    }

    pub fn det(&self) -> u32 {
        let n = self.n as u64;
        let [a, b, c, d] = self.e.map(|x| x as u64);
        ((a * d % n + n - b * c % n) % n) as u32
    }

    pub fn trace(&self) -> u32 {
        (self.e[0] + self.e[3]) % self.n
    }

    pub fn inverse(&self) -> Option<Self> {
        let dinv = mod_inverse(self.det() as i64, self.n as i64)?;
        let [a, b, c, d] = self.e.map(|x| x as i64);
        Some(Self::new(self.n, d * dinv, -b * dinv, -c * dinv, a * dinv))
    }

    pub fn neg(&self) -> Self {
        let [a, b, c, d] = self.e.map(|x| x as i64);
        Self::new(self.n, -a, -b, -c, -d)
    }

    pub fn commutator(&self, o: &Self) -> Self {
        let (ai, bi) = (self.inverse().expect("invertible"), o.inverse().expect("invertible"));
        self.mul(o).mul(&ai).mul(&bi)
    }

    pub fn is_identity_mod(&self, m: u32) -> bool {
        let [a, b, c, d] = self.e;
        a % m == 1 % m && b % m == 0 && c % m == 0 && d % m == 1 % m
    }
}

pub fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    let (mut r0, mut r1) = (a.rem_euclid(n), n);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(n))
}

/// A finite subgroup of `GL₂(Z/N)` stored as packed keys.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub modulus: u32,
    elements: HashSet<u64>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &MatrixModN) -> bool {
        m.n == self.modulus && self.elements.contains(&m.pack())
    }

    pub fn elements(&self) -> impl Iterator<Item = MatrixModN> + '_ {
        self.elements.iter().map(move |&k| MatrixModN::unpack(self.modulus, k))
    }
}

/// Closure of `gens` under multiplication by generators and their inverses.
pub fn bfs_subgroup(gens: &[MatrixModN], modulus: u32, cap: usize) -> Result<Subgroup> {
    let mut steps = Vec::with_capacity(2 * gens.len());
    for g in gens {
        if g.n != modulus {
            return Err(Error::precondition("generator modulus differs from the group modulus"));
        }
        let inv = g.inverse().ok_or_else(|| Error::precondition("generator is not invertible"))?;
        steps.push(*g);
        steps.push(inv);
    }
    let id = MatrixModN::identity(modulus);
    let mut seen = HashSet::from([id.pack()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in &steps {
            let y = x.mul(s);
            if seen.insert(y.pack()) {
                if seen.len() > cap {
                    return Err(Error::ResourceCap(format!(
                        "subgroup mod {modulus} exceeds the cap of {cap} elements"
                    )));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(Subgroup { modulus, elements: seen })
}

/// All elements of `GL₂(Z/N)`.
pub fn gl2_elements(n: u32) -> impl Iterator<Item = MatrixModN> {
    let n64 = n as i64;
    (0..n64.pow(4)).filter_map(move |k| {
        let m = MatrixModN::new(n, k % n64, k / n64 % n64, k / n64.pow(2) % n64, k / n64.pow(3));
        m.inverse().map(|_| m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pack_round_trip() {
        let m = MatrixModN::new(2187, 5, -1, 2186, 100);
        assert_eq!(MatrixModN::unpack(2187, m.pack()), m);
    }

    #[test]
    fn inverse_and_commutator() {
        let a = MatrixModN::new(9, 2, 1, 1, 1);
        let b = MatrixModN::new(9, 1, 3, 0, 1);
        assert!(a.mul(&a.inverse().unwrap()).is_identity_mod(9));
        assert_eq!(a.commutator(&b).det(), 1);
        assert!(MatrixModN::new(4, 2, 0, 0, 1).inverse().is_none());
    }

    #[test]
    fn bfs_examples() {
        let id = MatrixModN::identity(5);
        assert_eq!(bfs_subgroup(&[id], 5, 100).unwrap().order(), 1);
        let g = [MatrixModN::new(5, 1, 1, 0, 1), MatrixModN::new(5, 1, 0, 1, 1)];
        let sl2 = bfs_subgroup(&g, 5, 1000).unwrap();
        assert_eq!(sl2.order(), 120);
        assert!(sl2.elements().all(|m| m.det() == 1));
        assert!(matches!(bfs_subgroup(&g, 5, 50), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn subgroup_orders_divide_gl2() {
        let gl2_order = gl2_elements(6).count();
        assert_eq!(gl2_order, 6 * 48); // |GL₂(Z/2)|·|GL₂(Z/3)|
        let g = [MatrixModN::new(6, 1, 1, 0, 1), MatrixModN::new(6, 5, 0, 0, 1)];
        let h = bfs_subgroup(&g, 6, 10_000).unwrap();
        assert_eq!(gl2_order % h.order(), 0);
    }
}
