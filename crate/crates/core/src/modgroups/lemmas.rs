//! Brute-force checks of three matrix-group facts: commutators of the
//! level-`ℓⁿ` congruence kernel, unipotent generation of a deeper kernel, and
//! simplicity of `PSL₂(F_ℓ)`.

use std::collections::HashSet;

use super::matrix::{bfs_subgroup, mod_inverse, MatrixModN};
use crate::error::{Error, Result};
use crate::funfield::gf::is_prime;

fn modulus(ell: u32, m: u32) -> Result<u32> {
    (ell as u64)
        .checked_pow(m)
        .filter(|&n| n < 1 << 16)
        .map(|n| n as u32)
        .ok_or_else(|| Error::ResourceCap(format!("modulus {ell}^{m} exceeds the packed matrix range")))
}

/// `ker(SL₂(Z/ℓ^M) → SL₂(Z/ℓ^k))` by enumeration of `I + ℓ^k X`.
pub fn congruence_kernel(ell: u32, big_m: u32, k: u32, cap: usize) -> Result<Vec<MatrixModN>> {
    let n = modulus(ell, big_m)?;
    if k >= big_m {
        return Ok(vec![MatrixModN::identity(n)]);
    }
    let step = ell.pow(k) as i64;
    let span = (n as i64) / step;
    let size = (span as u128).pow(3);
    if size > cap as u128 {
        return Err(Error::ResourceCap(format!("kernel of size {size} exceeds the cap of {cap}")));
    }
    let mut out = Vec::with_capacity(size as usize);
    for i in 0..span {
        let a = 1 + step * i;
        let ainv = match mod_inverse(a, n as i64) {
            Some(x) => x,
            None => continue,
        };
        for j in 0..span {
            for l in 0..span {
                let (b, c) = (step * j, step * l);
                let d = (1 + b * c % n as i64) % n as i64 * ainv;
                let m = MatrixModN::new(n, a, b, c, d);
                debug_assert_eq!(m.det(), 1);
                out.push(m);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorLemmaReport {
    pub ell: u32,
    pub n: u32,
    pub modulus: u32,
    /// Order of the subgroup generated by the `S_n` generators, when within cap.
    pub sn_order: Option<usize>,
    pub sn_expected: u128,
    pub commutator_order: usize,
    pub target_size: usize,
    pub holds: bool,
}

/// Generators of `S_n = ker(SL₂ → SL₂ mod ℓⁿ)` at modulus `N`.
pub fn kernel_generators(ell: u32, n: u32, modulus: u32) -> Vec<MatrixModN> {
    let t = ell.pow(n) as i64;
    let dinv = mod_inverse(1 + t, modulus as i64).expect("1 + ℓⁿ is a unit");
    vec![
        MatrixModN::new(modulus, 1, t, 0, 1),
        MatrixModN::new(modulus, 1, 0, t, 1),
        MatrixModN::new(modulus, 1 + t, 0, 0, dinv),
    ]
}

/// The subgroup generated by commutators of the `S_n` generators (and their
/// inverses) in `SL₂(Z/ℓ^{2n+3})` contains `S_{2n+2}`.
pub fn check_commutator_lemma(ell: u32, n: u32, cap: usize) -> Result<CommutatorLemmaReport> {
    if !is_prime(ell as u64) || n == 0 {
        return Err(Error::precondition("ℓ must be prime and n ≥ 1"));
    }
    let m = 2 * n + 3;
    let big = modulus(ell, m)?;
    let gens = kernel_generators(ell, n, big);
    let sn_expected = (ell as u128).pow(3 * (m - n));
    let sn_order = if sn_expected <= cap as u128 { Some(bfs_subgroup(&gens, big, cap)?.order()) } else { None };
    let mut with_inv: Vec<MatrixModN> = gens.clone();
    with_inv.extend(gens.iter().map(|g| g.inverse().expect("unit")));
    let mut comms = HashSet::new();
    for a in &with_inv {
        for b in &with_inv {
            comms.insert(a.commutator(b));
        }
    }
    let comms: Vec<MatrixModN> = comms.into_iter().collect();
    let c = bfs_subgroup(&comms, big, cap)?;
    let target = congruence_kernel(ell, m, 2 * n + 2, cap)?;
    let holds = target.iter().all(|t| c.contains(t));
    Ok(CommutatorLemmaReport {
        ell,
        n,
        modulus: big,
        sn_order,
        sn_expected,
        commutator_order: c.order(),
        target_size: target.len(),
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentLemmaReport {
    pub ell: u32,
    pub m: u32,
    pub generated_order: usize,
    pub kernel_size: usize,
    pub holds: bool,
}

/// `⟨(1 ℓ; 0 1), (1 0; ℓ 1)⟩ ⊆ SL₂(Z/ℓ^m)` contains `ker(SL₂(Z/ℓ^m) → SL₂(Z/ℓ²))`.
pub fn check_unipotent_lemma(ell: u32, m: u32, cap: usize) -> Result<UnipotentLemmaReport> {
    if !is_prime(ell as u64) || m < 2 {
        return Err(Error::precondition("ℓ must be prime and m ≥ 2"));
    }
    let big = modulus(ell, m)?;
    let l = ell as i64;
    let gens = [MatrixModN::new(big, 1, l, 0, 1), MatrixModN::new(big, 1, 0, l, 1)];
    let g = bfs_subgroup(&gens, big, cap)?;
    let kernel = congruence_kernel(ell, m, 2, cap)?;
    let holds = kernel.iter().all(|k| g.contains(k));
    Ok(UnipotentLemmaReport { ell, m, generated_order: g.order(), kernel_size: kernel.len(), holds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub ell: u32,
    pub order: usize,
    /// A nonidentity element whose normal closure is proper, if any.
    pub proper_normal_witness: Option<MatrixModN>,
}

impl SimplicityReport {
    pub fn simple(&self) -> bool {
        self.order > 1 && self.proper_normal_witness.is_none()
    }
}

pub const MAX_SIMPLICITY_ELL: u32 = 13;

/// `PSL₂(F_ℓ)` has no nontrivial proper normal subgroup: the normal closure of
/// each nonidentity class is the whole group.
pub fn psl2_simplicity(ell: u32) -> Result<SimplicityReport> {
    if !is_prime(ell as u64) || ell > MAX_SIMPLICITY_ELL {
        return Err(Error::precondition(format!("ℓ must be a prime ≤ {MAX_SIMPLICITY_ELL}")));
    }
    let canon = |m: MatrixModN| m.min(m.neg());
    let gens = [MatrixModN::new(ell, 1, 1, 0, 1), MatrixModN::new(ell, 1, 0, 1, 1)];
    let sl2 = bfs_subgroup(&gens, ell, usize::MAX)?;
    let mut psl: Vec<MatrixModN> = sl2.elements().map(canon).collect::<HashSet<_>>().into_iter().collect();
    psl.sort();
    let order = psl.len();
    let id = canon(MatrixModN::identity(ell));
    let mut done: HashSet<MatrixModN> = HashSet::new();
    for &g in &psl {
        if g == id || done.contains(&g) {
            continue;
        }
        let class: HashSet<MatrixModN> =
            psl.iter().map(|h| canon(h.mul(&g).mul(&h.inverse().expect("unit")))).collect();
        done.extend(class.iter().copied());
        // closure in PSL₂ = image of the closure in SL₂ of the lifts and −I
        let mut lifts: Vec<MatrixModN> = class.into_iter().collect();
        lifts.push(MatrixModN::identity(ell).neg());
        let closure = bfs_subgroup(&lifts, ell, usize::MAX)?;
        let image: HashSet<MatrixModN> = closure.elements().map(canon).collect();
        if image.len() < order {
            return Ok(SimplicityReport { ell, order, proper_normal_witness: Some(g) });
        }
    }
    Ok(SimplicityReport { ell, order, proper_normal_witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modgroups::DEFAULT_BFS_CAP;

    #[test]
    fn commutator_lemma_reference_configuration() {
        let r = check_commutator_lemma(2, 2, DEFAULT_BFS_CAP).unwrap();
        assert_eq!(r.modulus, 128);
        assert_eq!(r.sn_order, Some(32768));
        assert_eq!(r.target_size, 8);
        assert!(r.holds);
    }

    #[test]
    fn commutator_lemma_other_primes() {
        // |S_2| = 3^15 exceeds the cap; its commutator subgroup lies in S_4
        let r = check_commutator_lemma(3, 2, 1_000_000).unwrap();
        assert_eq!(r.sn_order, None);
        assert_eq!(r.target_size, 27);
        assert!(r.holds);
        assert!(matches!(check_commutator_lemma(2, 2, 4), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn kernel_sizes() {
        for (ell, m, k) in [(2u32, 5u32, 2u32), (3, 4, 2), (5, 3, 1), (3, 3, 3)] {
            let kern = congruence_kernel(ell, m, k, 1 << 24).unwrap();
            assert_eq!(kern.len() as u64, (ell as u64).pow(3 * (m - k)));
        }
    }

    #[test]
    fn kernel_generated_by_three_generators() {
        for (ell, n, m) in [(2u32, 2u32, 5u32), (3, 1, 3), (5, 1, 2)] {
            let big = ell.pow(m);
            let g = bfs_subgroup(&kernel_generators(ell, n, big), big, 1 << 24).unwrap();
            assert_eq!(g.order() as u64, (ell as u64).pow(3 * (m - n)));
        }
    }

    #[test]
    fn unipotent_lemma() {
        let r = check_unipotent_lemma(3, 4, DEFAULT_BFS_CAP).unwrap();
        assert_eq!(r.kernel_size, 729);
        assert!(r.holds);
        let r = check_unipotent_lemma(3, 2, DEFAULT_BFS_CAP).unwrap();
        assert_eq!(r.kernel_size, 1);
        assert!(r.holds);
    }

    #[test]
    fn simplicity() {
        let r5 = psl2_simplicity(5).unwrap();
        assert_eq!(r5.order, 60);
        assert!(r5.simple());
        let r7 = psl2_simplicity(7).unwrap();
        assert_eq!(r7.order, 168);
        assert!(r7.simple());
        assert!(!psl2_simplicity(2).unwrap().simple());
        assert!(!psl2_simplicity(3).unwrap().simple());
    }
}
