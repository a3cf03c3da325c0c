use std::sync::Arc;

use super::divisor::{Divisor, Place};
use super::factor::{self, Factorization};
use super::gf::{is_prime, Fe, FiniteField};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Element of `F_q(T)`: `num/den` with `den` monic and coprime to `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value, if `self` is constant.
    pub fn constant_value(&self) -> Option<Fe> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

/// The constant field `F_q`, `q = p^s`, together with the rational function
/// field `F = F_q(T)` over it. The place `∞` is the pole of `T`.
#[derive(Clone, Debug)]
pub struct FieldContext {
    p: u32,
    s: u32,
    fq: Arc<FiniteField>,
}

impl FieldContext {
    pub fn new(p: u32, s: u32) -> Result<Arc<Self>> {
        if !is_prime(p as u64) {
            return Err(Error::precondition(format!("p = {p} is not prime")));
        }
        if p <= 3 {
            return Err(Error::precondition(format!("characteristic p = {p} must exceed 3")));
        }
        if s == 0 {
            return Err(Error::precondition("extension exponent s must be at least 1"));
        }
        let fp = FiniteField::prime(p)?;
        let fq = if s == 1 {
            fp
        } else {
            let m = factor::lowest_irreducible(s as usize, &fp);
            FiniteField::extension(&fp, m.coeffs())?
        };
        Ok(Arc::new(FieldContext { p, s, fq }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> u64 {
        self.fq.size() as u64
    }

    /// The constant field `F_q`.
    pub fn fq(&self) -> &Arc<FiniteField> {
        &self.fq
    }

    /// `F_{q^d}` as `F_q[x]/(g)` with `g` the lowest monic irreducible of
    /// degree `d` over `F_q`.
    pub fn extension(&self, d: usize) -> Result<Arc<FiniteField>> {
        if d <= 1 {
            return Ok(self.fq.clone());
        }
        let g = factor::lowest_irreducible(d, &self.fq);
        FiniteField::extension(&self.fq, g.coeffs())
    }

    // --- construction -------------------------------------------------------

    pub fn ratfunc(&self, num: Poly, den: Poly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::precondition("zero denominator"));
        }
        let f = &*self.fq;
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let g = num.gcd(&den, f);
        let (n, d) = (num.div_exact(&g, f).unwrap(), den.div_exact(&g, f).unwrap());
        let li = f.inv(d.leading()).unwrap();
        Ok(RationalFunction { num: n.scale(li, f), den: d.scale(li, f) })
    }

    pub fn constant(&self, c: Fe) -> RationalFunction {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn int(&self, n: i64) -> RationalFunction {
        self.constant(self.fq.from_int(n))
    }

    pub fn t(&self) -> RationalFunction {
        RationalFunction::from_poly(Poly::x())
    }

    // --- arithmetic ---------------------------------------------------------

    pub fn add(&self, x: &RationalFunction, y: &RationalFunction) -> RationalFunction {
        let f = &*self.fq;
        if x.den == y.den {
            return self.ratfunc(x.num.add(&y.num, f), x.den.clone()).unwrap();
        }
        let num = x.num.mul(&y.den, f).add(&y.num.mul(&x.den, f), f);
        self.ratfunc(num, x.den.mul(&y.den, f)).unwrap()
    }

    pub fn neg(&self, x: &RationalFunction) -> RationalFunction {
        RationalFunction { num: x.num.neg(&self.fq), den: x.den.clone() }
    }

    pub fn sub(&self, x: &RationalFunction, y: &RationalFunction) -> RationalFunction {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &RationalFunction, y: &RationalFunction) -> RationalFunction {
        let f = &*self.fq;
        self.ratfunc(x.num.mul(&y.num, f), x.den.mul(&y.den, f)).unwrap()
    }

    pub fn inv(&self, x: &RationalFunction) -> Result<RationalFunction> {
        if x.is_zero() {
            return Err(Error::precondition("inverse of zero"));
        }
        self.ratfunc(x.den.clone(), x.num.clone())
    }

    pub fn div(&self, x: &RationalFunction, y: &RationalFunction) -> Result<RationalFunction> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &RationalFunction, e: i64) -> Result<RationalFunction> {
        let f = &*self.fq;
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        let k = e.unsigned_abs();
        Ok(RationalFunction { num: base.num.pow(k, f), den: base.den.pow(k, f) })
    }

    pub fn scale_int(&self, x: &RationalFunction, n: i64) -> RationalFunction {
        self.mul(x, &self.int(n))
    }

    /// Formal derivative `d/dT`.
    pub fn derivative(&self, x: &RationalFunction) -> RationalFunction {
        let f = &*self.fq;
        let num = x.num.derivative(f).mul(&x.den, f).sub(&x.num.mul(&x.den.derivative(f), f), f);
        self.ratfunc(num, x.den.mul(&x.den, f)).unwrap()
    }

    // --- places and valuations ----------------------------------------------

    pub fn factor(&self, f: &Poly) -> Result<Factorization> {
        factor::factor(f, &self.fq)
    }

    /// Monic irreducibles of degree `d`, canonical order.
    pub fn places_of_degree(&self, d: usize) -> Vec<Place> {
        let mut out: Vec<Place> = factor::monic_irreducibles(d, &self.fq).into_iter().map(Place::Finite).collect();
        if d == 1 {
            out.push(Place::Infinity);
        }
        out
    }

    pub fn valuation(&self, x: &RationalFunction, place: &Place) -> Result<i64> {
        if x.is_zero() {
            return Err(Error::precondition("valuation of zero"));
        }
        Ok(match place {
            Place::Infinity => x.den.deg() as i64 - x.num.deg() as i64,
            Place::Finite(g) => {
                let f = &*self.fq;
                x.num.multiplicity(g, f) as i64 - x.den.multiplicity(g, f) as i64
            }
        })
    }

    /// Valuation with `v(0) = None` (read as `+∞`).
    pub fn valuation_or_inf(&self, x: &RationalFunction, place: &Place) -> Option<i64> {
        self.valuation(x, place).ok()
    }

    /// The principal divisor `(x)`.
    pub fn principal_divisor(&self, x: &RationalFunction) -> Result<Divisor> {
        if x.is_zero() {
            return Err(Error::precondition("principal divisor of zero"));
        }
        let mut d = Divisor::zero();
        for (g, m) in self.factor(&x.num)?.factors {
            d.add_at(Place::Finite(g), m as i64);
        }
        for (g, m) in self.factor(&x.den)?.factors {
            d.add_at(Place::Finite(g), -(m as i64));
        }
        d.add_at(Place::Infinity, self.valuation(x, &Place::Infinity)?);
        Ok(d)
    }

    /// `((x)_0, (x)_∞)`, the zero and pole divisors.
    pub fn zero_pole_divisors(&self, x: &RationalFunction) -> Result<(Divisor, Divisor)> {
        let d = self.principal_divisor(x)?;
        Ok((d.positive_part(), d.negative_part()))
    }

    /// The height `h_F(x) = deg (x)_∞`.
    pub fn height(&self, x: &RationalFunction) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::precondition("height of zero"));
        }
        // deg (x)_∞ = max(deg num, deg den) for coprime num, den
        Ok(x.num.deg().max(x.den.deg()) as u64)
    }

    /// Whether `x ∈ F^p`, i.e. `x ∈ F_q(T^p)`; decided by `dx/dT = 0`.
    pub fn is_pth_power(&self, x: &RationalFunction) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::precondition("p-th power test on zero"));
        }
        Ok(self.derivative(x).is_zero())
    }

    /// Multiplicative order of `q` modulo `n`, i.e. `[F(μ_n) : F] = |H_n|`.
    /// Cross-checked against the factor degrees of the `n`-th cyclotomic
    /// polynomial over `F_q`.
    pub fn cyclotomic_splitting_degree(&self, n: u64) -> Result<u64> {
        if n == 0 || n.is_multiple_of(self.p as u64) {
            return Err(Error::precondition(format!("n = {n} must be positive and prime to p")));
        }
        let order = multiplicative_order(self.q() % n, n);
        let phi = self.cyclotomic_poly(n);
        let fac = self.factor(&phi)?;
        if fac.factors.iter().any(|(g, m)| *m != 1 || g.deg() as u64 != order) {
            return Err(Error::precondition(format!("cyclotomic factor degrees disagree with ord_{n}(q) = {order}")));
        }
        Ok(order)
    }

    /// `Φ_n` over `F_q`, by exact division of `T^n − 1` by `Φ_d`, `d | n`, `d < n`.
    pub fn cyclotomic_poly(&self, n: u64) -> Poly {
        let f = &*self.fq;
        let mut phi = Poly::monomial(1, n as usize).sub(&Poly::one(), f);
        for d in 1..n {
            if n.is_multiple_of(d) {
                phi = phi.div_exact(&self.cyclotomic_poly(d), f).expect("exact cyclotomic division");
            }
        }
        phi
    }

    // --- reduction at a place -------------------------------------------------

    /// Residue of `x` at a place, as an element of `k` where `k` contains a root
    /// `alpha` of the place's polynomial (ignored at `∞`). Requires `v(x) ≥ 0`.
    pub fn reduce_at(&self, x: &RationalFunction, place: &Place, k: &FiniteField, alpha: Fe) -> Result<Fe> {
        if x.is_zero() {
            return Ok(0);
        }
        if self.valuation(x, place)? < 0 {
            return Err(Error::precondition("reduction of a function with a pole at the place"));
        }
        match place {
            Place::Infinity => {
                if x.num.deg() < x.den.deg() {
                    Ok(0)
                } else {
                    // equal degrees; den is monic
                    Ok(x.num.leading())
                }
            }
            Place::Finite(_) => {
                let n = x.num.eval(alpha, k);
                let d = x.den.eval(alpha, k);
                k.div(n, d).ok_or_else(|| Error::precondition("denominator vanishes at the place"))
            }
        }
    }

    /// Residue field of a place: the canonical `F_{q^d}` and a root of the
    /// place's polynomial in it (`0` for `∞` and unused).
    pub fn residue_field(&self, place: &Place) -> Result<(Arc<FiniteField>, Fe)> {
        match place {
            Place::Infinity => Ok((self.fq.clone(), 0)),
            Place::Finite(g) => {
                let k = self.extension(g.deg())?;
                let alpha = find_root(g, &k)
                    .ok_or_else(|| Error::precondition("place polynomial has no root in residue field"))?;
                Ok((k, alpha))
            }
        }
    }

    // --- rendering ----------------------------------------------------------

    pub fn fmt_poly(&self, f: &Poly) -> String {
        f.to_string_with(&self.fq, "T")
    }

    pub fn fmt(&self, x: &RationalFunction) -> String {
        let n = self.fmt_poly(&x.num);
        if x.den.is_one() {
            n
        } else {
            format!("({n})/({})", self.fmt_poly(&x.den))
        }
    }

    pub fn fmt_place(&self, place: &Place) -> String {
        match place {
            Place::Infinity => "inf".into(),
            Place::Finite(g) => self.fmt_poly(g),
        }
    }

    pub fn fmt_divisor(&self, d: &Divisor) -> String {
        if d.is_zero() {
            return "0".into();
        }
        d.iter().map(|(pl, c)| format!("{c}*({})", self.fmt_place(pl))).collect::<Vec<_>>().join(" + ")
    }
}

/// A root of `g` (coefficients in a subfield of `k`) inside `k`, searching
/// via `gcd(g, x^{|k|} − x)` and equal-degree splitting.
pub fn find_root(g: &Poly, k: &FiniteField) -> Option<Fe> {
    if g.deg() == 1 {
        return k.div(k.neg(g.coeff(0)), g.coeff(1));
    }
    let fac = factor::factor(g, k).ok()?;
    fac.factors.iter().filter(|(h, _)| h.deg() == 1).map(|(h, _)| k.neg(h.coeff(0))).min()
}

pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = x * (a % n) % n;
        k += 1;
        if k > n {
            return 0;
        }
    }
    k
}
