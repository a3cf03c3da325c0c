use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::funfield::factor::lowest_irreducible;
use crate::funfield::{Fe, FiniteField, Poly};

/// Fields larger than this are not enumerated.
pub const MAX_COUNT_FIELD: u32 = 1_000_000;

/// `y² = x³ + ax + b` over a finite field of characteristic `> 3`.
#[derive(Clone, Debug)]
pub struct FiniteCurve {
    field: Arc<FiniteField>,
    a: Fe,
    b: Fe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FinitePoint {
    Infinity,
    Affine(Fe, Fe),
}

impl FiniteCurve {
    pub fn new(field: &Arc<FiniteField>, a: Fe, b: Fe) -> Result<Self> {
        let f = &**field;
        let a3 = f.pow(a, 3);
        let disc = f.add(f.mul(f.from_int(4), a3), f.mul(f.from_int(27), f.mul(b, b)));
        if disc == 0 {
            return Err(Error::Singular);
        }
        Ok(FiniteCurve { field: field.clone(), a, b })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn a(&self) -> Fe {
        self.a
    }

    pub fn b(&self) -> Fe {
        self.b
    }

    /// The same equation over a larger field containing this one.
    pub fn base_change(&self, big: &Arc<FiniteField>) -> Result<Self> {
        if big.degree_over(&self.field).is_none() {
            return Err(Error::precondition("target field does not contain the base field"));
        }
        FiniteCurve::new(big, self.a, self.b)
    }

    fn rhs(&self, x: Fe) -> Fe {
        let f = &*self.field;
        f.add(f.mul(f.add(f.mul(x, x), self.a), x), self.b)
    }

    pub fn contains(&self, p: &FinitePoint) -> bool {
        match *p {
            FinitePoint::Infinity => true,
            FinitePoint::Affine(x, y) => self.field.mul(y, y) == self.rhs(x),
        }
    }

    pub fn neg(&self, p: &FinitePoint) -> FinitePoint {
        match *p {
            FinitePoint::Infinity => FinitePoint::Infinity,
            FinitePoint::Affine(x, y) => FinitePoint::Affine(x, self.field.neg(y)),
        }
    }

    pub fn add(&self, p: &FinitePoint, q: &FinitePoint) -> FinitePoint {
        let f = &*self.field;
        let (x1, y1, x2, y2) = match (*p, *q) {
            (FinitePoint::Infinity, _) => return *q,
            (_, FinitePoint::Infinity) => return *p,
            (FinitePoint::Affine(x1, y1), FinitePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2) == 0 {
                return FinitePoint::Infinity;
            }
            let num = f.add(f.mul(f.from_int(3), f.mul(x1, x1)), self.a);
            f.div(num, f.mul(f.from_int(2), y1)).expect("y ≠ 0")
        } else {
            f.div(f.sub(y2, y1), f.sub(x2, x1)).expect("x1 ≠ x2")
        };
        let x3 = f.sub(f.sub(f.mul(lambda, lambda), x1), x2);
        let y3 = f.sub(f.mul(lambda, f.sub(x1, x3)), y1);
        FinitePoint::Affine(x3, y3)
    }

    pub fn sub(&self, p: &FinitePoint, q: &FinitePoint) -> FinitePoint {
        self.add(p, &self.neg(q))
    }

    pub fn mul(&self, k: i64, p: &FinitePoint) -> FinitePoint {
        let base = if k < 0 { self.neg(p) } else { *p };
        let mut acc = FinitePoint::Infinity;
        let mut d = base;
        let mut n = k.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &d);
            }
            d = self.add(&d, &d);
            n >>= 1;
        }
        acc
    }

    /// Exact order of `p`, given a multiple `m` of it.
    pub fn order_dividing(&self, p: &FinitePoint, m: u64) -> u64 {
        let mut ord = m;
        for l in crate::funfield::gf::prime_divisors(m) {
            while ord.is_multiple_of(l) && self.mul((ord / l) as i64, p) == FinitePoint::Infinity {
                ord /= l;
            }
        }
        ord
    }

    fn check_countable(&self) -> Result<()> {
        if self.field.size() > MAX_COUNT_FIELD {
            return Err(Error::ResourceCap(format!(
                "field of size {} exceeds the enumeration bound {}",
                self.field.size(),
                MAX_COUNT_FIELD
            )));
        }
        Ok(())
    }

    fn square_table(&self) -> Vec<bool> {
        let f = &*self.field;
        let mut sq = vec![false; f.size() as usize];
        for x in f.elements() {
            sq[f.mul(x, x) as usize] = true;
        }
        sq
    }

    /// `#C(k)` including `O`.
    pub fn point_count(&self) -> Result<u64> {
        self.check_countable()?;
        let sq = self.square_table();
        let mut n = 1u64;
        for x in self.field.elements() {
            let r = self.rhs(x);
            n += match (r == 0, sq[r as usize]) {
                (true, _) => 1,
                (false, true) => 2,
                (false, false) => 0,
            };
        }
        Ok(n)
    }

    /// `a = |k| + 1 − #C(k)`.
    pub fn trace(&self) -> Result<i64> {
        Ok(self.field.size() as i64 + 1 - self.point_count()? as i64)
    }

    /// All points, `O` first, then affine points ordered by `(x, y)`.
    pub fn points(&self) -> Result<Vec<FinitePoint>> {
        self.check_countable()?;
        let f = &*self.field;
        let mut out = vec![FinitePoint::Infinity];
        for x in f.elements() {
            if let Some(y) = f.sqrt(self.rhs(x)) {
                let ny = f.neg(y);
                out.push(FinitePoint::Affine(x, y.min(ny)));
                if y != ny {
                    out.push(FinitePoint::Affine(x, y.max(ny)));
                }
            }
        }
        Ok(out)
    }

    pub fn random_point(&self, rng: &mut ChaCha8Rng) -> FinitePoint {
        let f = &*self.field;
        loop {
            let x = rng.gen_range(0..f.size());
            if let Some(y) = f.sqrt(self.rhs(x)) {
                let y = if rng.gen_bool(0.5) { f.neg(y) } else { y };
                return FinitePoint::Affine(x, y);
            }
        }
    }

    /// `ψ₂ = x³ + ax + b` (ℓ = 2) or `ψ₃ = 3x⁴ + 6ax² + 12bx − a²` (ℓ = 3).
    pub fn division_polynomial(&self, ell: u32) -> Result<Poly> {
        let f = &*self.field;
        let (a, b) = (self.a, self.b);
        match ell {
            2 => Ok(Poly::new(vec![b, a, 0, 1])),
            3 => Ok(Poly::new(vec![
                f.neg(f.mul(a, a)),
                f.mul(f.from_int(12), b),
                f.mul(f.from_int(6), a),
                0,
                f.from_int(3),
            ])),
            _ => Err(Error::precondition("division polynomials are provided for ℓ ∈ {2, 3}")),
        }
    }

    /// `C(k)[n]`, by enumeration.
    pub fn torsion_points(&self, n: u64) -> Result<Vec<FinitePoint>> {
        Ok(self.points()?.into_iter().filter(|p| self.mul(n as i64, p) == FinitePoint::Infinity).collect())
    }

    /// Points `P, Q` of exact order `n` with `e_n(P, Q)` a primitive `n`-th
    /// root of unity. Requires `E[n] ⊆ C(k)`.
    pub fn torsion_basis(&self, n: u64) -> Result<(FinitePoint, FinitePoint)> {
        if n == 0 || n.is_multiple_of(self.field.characteristic() as u64) {
            return Err(Error::precondition("n must be positive and prime to the characteristic"));
        }
        if n == 1 {
            return Ok((FinitePoint::Infinity, FinitePoint::Infinity));
        }
        let tors = self.torsion_points(n)?;
        if tors.len() as u64 != n * n {
            return Err(Error::precondition(format!(
                "E[{n}] is not rational over the field: found {} of {} points",
                tors.len(),
                n * n
            )));
        }
        let exact: Vec<FinitePoint> = tors.iter().copied().filter(|p| self.order_dividing(p, n) == n).collect();
        let p = exact[0];
        for q in &exact {
            let z = self.weil_pairing(&p, q, n)?;
            if self.field.order(z) == n {
                return Ok((p, *q));
            }
        }
        Err(Error::precondition("no point pairs primitively with the first basis vector"))
    }

    /// Miller evaluation of `f_{n,P}` at `r`, with `div f = n(P) − n(O)` when
    /// `nP = O`. `None` if `r` meets a zero or pole of an intermediate factor.
    fn miller(&self, p: &FinitePoint, n: u64, r: &FinitePoint) -> Option<Fe> {
        let f = &*self.field;
        let (xr, yr) = match *r {
            FinitePoint::Affine(x, y) => (x, y),
            FinitePoint::Infinity => return None,
        };
        // h_{T,U}(r) = l_{T,U}(r) / v_{T+U}(r)
        let h = |t: &FinitePoint, u: &FinitePoint| -> Option<Fe> {
            let (x1, y1, x2, y2) = match (*t, *u) {
                (FinitePoint::Affine(x1, y1), FinitePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
                _ => return Some(1),
            };
            if x1 == x2 && f.add(y1, y2) == 0 {
                let v = f.sub(xr, x1);
                return (v != 0).then_some(v);
            }
            let lambda = if x1 == x2 {
                f.div(f.add(f.mul(f.from_int(3), f.mul(x1, x1)), self.a), f.mul(f.from_int(2), y1))?
            } else {
                f.div(f.sub(y2, y1), f.sub(x2, x1))?
            };
            let l = f.sub(f.sub(yr, y1), f.mul(lambda, f.sub(xr, x1)));
            let x3 = f.sub(f.sub(f.mul(lambda, lambda), x1), x2);
            let v = f.sub(xr, x3);
            if l == 0 || v == 0 {
                return None;
            }
            f.div(l, v)
        };
        let mut acc: Fe = 1;
        let mut t = *p;
        let bits = 64 - n.leading_zeros();
        for i in (0..bits - 1).rev() {
            acc = f.mul(f.mul(acc, acc), h(&t, &t)?);
            t = self.add(&t, &t);
            if n >> i & 1 == 1 {
                acc = f.mul(acc, h(&t, p)?);
                t = self.add(&t, p);
            }
        }
        debug_assert_eq!(t, FinitePoint::Infinity);
        Some(acc)
    }

    /// `e_n(P, Q) = f_P(Q+S) f_Q(−S) / (f_P(S) f_Q(P−S))` for an auxiliary
    /// point `S`, resampled until no evaluation is degenerate. When `E(k)` is
    /// too small to supply one, `S` is taken over a quadratic extension; the
    /// value lies in `μ_n ⊆ k`, whose indices the extension preserves.
    pub fn weil_pairing(&self, p: &FinitePoint, q: &FinitePoint, n: u64) -> Result<Fe> {
        for pt in [p, q] {
            if !self.contains(pt) || self.mul(n as i64, pt) != FinitePoint::Infinity {
                return Err(Error::precondition(format!("point is not {n}-torsion on the curve")));
            }
        }
        if n.is_multiple_of(self.field.characteristic() as u64) {
            return Err(Error::precondition("n must be prime to the characteristic"));
        }
        if *p == FinitePoint::Infinity || *q == FinitePoint::Infinity || p == q {
            return Ok(1);
        }
        let f = &*self.field;
        let mut rng = ChaCha8Rng::seed_from_u64(0xa11ce ^ n);
        for _ in 0..200 {
            let s = self.random_point(&mut rng);
            let qs = self.add(q, &s);
            let ps = self.sub(p, &s);
            let ms = self.neg(&s);
            let vals = (self.miller(p, n, &qs), self.miller(p, n, &s), self.miller(q, n, &ps), self.miller(q, n, &ms));
            if let (Some(a), Some(b), Some(c), Some(d)) = vals {
                if b != 0 && c != 0 {
                    return Ok(f.div(f.mul(a, d), f.mul(b, c)).expect("nonzero"));
                }
            }
        }
        let g = lowest_irreducible(2, f);
        let big = self.base_change(&FiniteField::extension(&self.field, g.coeffs())?)?;
        let z = big.weil_pairing(p, q, n)?;
        debug_assert!(z < self.field.size());
        Ok(z)
    }

    /// `(x, y) ↦ (x^{|k₀|}, y^{|k₀|})` for a subfield `k₀` of size `sub_size`
    /// containing `a` and `b`.
    pub fn frobenius(&self, p: &FinitePoint, sub_size: u32) -> FinitePoint {
        match *p {
            FinitePoint::Infinity => FinitePoint::Infinity,
            FinitePoint::Affine(x, y) => {
                FinitePoint::Affine(self.field.frobenius(x, sub_size), self.field.frobenius(y, sub_size))
            }
        }
    }

    /// Coordinates `(i, j)` with `R = iP + jQ`, by search over `E[n]`.
    pub fn discrete_log_2d(&self, r: &FinitePoint, p: &FinitePoint, q: &FinitePoint, n: u64) -> Option<(u64, u64)> {
        let mut ip = FinitePoint::Infinity;
        for i in 0..n {
            let mut pt = ip;
            for j in 0..n {
                if pt == *r {
                    return Some((i, j));
                }
                pt = self.add(&pt, q);
            }
            ip = self.add(&ip, p);
        }
        None
    }

    /// The matrix `[[α, β], [γ, δ]]` of the `|k₀|`-Frobenius on `E[n]` in the
    /// basis `(P, Q)`: `φP = αP + γQ`, `φQ = βP + δQ`.
    pub fn frobenius_matrix(&self, p: &FinitePoint, q: &FinitePoint, n: u64, sub_size: u32) -> Result<[[u64; 2]; 2]> {
        let fp = self.frobenius(p, sub_size);
        let fq = self.frobenius(q, sub_size);
        let (al, ga) =
            self.discrete_log_2d(&fp, p, q, n).ok_or_else(|| Error::precondition("(P, Q) is not a basis"))?;
        let (be, de) =
            self.discrete_log_2d(&fq, p, q, n).ok_or_else(|| Error::precondition("(P, Q) is not a basis"))?;
        Ok([[al, be], [ga, de]])
    }
}
