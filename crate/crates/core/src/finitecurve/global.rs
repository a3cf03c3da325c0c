use serde::Serialize;

use super::group::FiniteCurve;
use crate::curve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::funfield::{FieldContext, Place, Poly, RationalFunction};
use crate::localred::{local_reduction, minimal_model_at};

/// Frobenius data of `E` at a good place: `#k = q^{deg 𝔭}` and `a_𝔭`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusData {
    pub place: Place,
    pub norm: u64,
    pub trace: i64,
}

impl FrobeniusData {
    pub fn point_count(&self) -> u64 {
        (self.norm as i64 + 1 - self.trace) as u64
    }
}

/// The reduction of a minimal model of `E` at a good place.
pub fn reduce_curve(e: &WeierstrassCurve, place: &Place) -> Result<FiniteCurve> {
    let data = local_reduction(e, place)?;
    if !data.kodaira.is_good() {
        return Err(Error::precondition(format!("bad reduction ({}) at {}", data.kodaira, e.ctx().fmt_place(place))));
    }
    let m = minimal_model_at(e, place)?;
    let ctx = e.ctx();
    let (k, alpha) = ctx.residue_field(place)?;
    let a = ctx.reduce_at(m.a(), place, &k, alpha)?;
    let b = ctx.reduce_at(m.b(), place, &k, alpha)?;
    FiniteCurve::new(&k, a, b)
}

pub fn frobenius_data(e: &WeierstrassCurve, place: &Place) -> Result<FrobeniusData> {
    let c = reduce_curve(e, place)?;
    let norm = c.field().size() as u64;
    Ok(FrobeniusData { place: place.clone(), norm, trace: c.trace()? })
}

/// `ψ_ℓ` of `E` as a polynomial in `x` with coefficients in `F_q(T)`,
/// ascending.
pub fn division_polynomial(e: &WeierstrassCurve, ell: u32) -> Result<Vec<RationalFunction>> {
    let c = e.ctx();
    let (a, b) = (e.a().clone(), e.b().clone());
    match ell {
        2 => Ok(vec![b, a, RationalFunction::zero(), RationalFunction::one()]),
        3 => {
            Ok(vec![c.neg(&c.mul(&a, &a)), c.scale_int(&b, 12), c.scale_int(&a, 6), RationalFunction::zero(), c.int(3)])
        }
        _ => Err(Error::precondition("division polynomials are provided for ℓ ∈ {2, 3}")),
    }
}

/// `(a m⁴, b m⁶)` with `m` clearing denominators, so that `x = X/m²` turns
/// `ψ_ℓ(x)` into a polynomial in `X` over `F_q[T]` with constant leading
/// coefficient.
fn integral_model(e: &WeierstrassCurve) -> (Poly, Poly) {
    let c = e.ctx();
    let fq = c.fq();
    let m = RationalFunction::from_poly(e.a().den().mul(e.b().den(), fq));
    let a = c.mul(e.a(), &c.pow(&m, 4).unwrap());
    let b = c.mul(e.b(), &c.pow(&m, 6).unwrap());
    debug_assert!(a.den().is_one() && b.den().is_one());
    (a.num().clone(), b.num().clone())
}

fn integral_division_polynomial(ctx: &FieldContext, a: &Poly, b: &Poly, ell: u32) -> Vec<Poly> {
    let fq = ctx.fq();
    let k = |n: i64| Poly::constant(fq.from_int(n));
    match ell {
        2 => vec![b.clone(), a.clone(), Poly::zero(), Poly::one()],
        _ => vec![a.mul(a, fq).neg(fq), b.mul(&k(12), fq), a.mul(&k(6), fq), Poly::zero(), k(3)],
    }
}

/// All monic divisors of a nonzero polynomial.
fn monic_divisors(ctx: &FieldContext, f: &Poly) -> Result<Vec<Poly>> {
    let fq = ctx.fq();
    let mut out = vec![Poly::one()];
    for (g, mult) in ctx.factor(f)?.factors {
        let mut next = Vec::with_capacity(out.len() * (mult as usize + 1));
        for d in &out {
            let mut pw = d.clone();
            next.push(pw.clone());
            for _ in 0..mult {
                pw = pw.mul(&g, fq);
                next.push(pw.clone());
            }
        }
        out = next;
    }
    Ok(out)
}

/// The roots in `F_q(T)` of `ψ_ℓ` of the integral model, as polynomials in
/// `F_q[T]` (a rational root of a polynomial with constant leading
/// coefficient divides the constant term).
fn integral_roots(ctx: &FieldContext, psi: &[Poly]) -> Result<Vec<Poly>> {
    let fq = ctx.fq();
    let eval = |x: &Poly| psi.iter().rev().fold(Poly::zero(), |acc, c| acc.mul(x, fq).add(c, fq));
    let mut roots = Vec::new();
    if psi[0].is_zero() {
        roots.push(Poly::zero());
    }
    let c0 = if psi[0].is_zero() { psi[1].clone() } else { psi[0].clone() };
    if c0.is_zero() {
        return Err(Error::precondition("ψ has a repeated root at x = 0"));
    }
    for d in monic_divisors(ctx, &c0)? {
        for u in 1..fq.size() {
            let cand = d.scale(u, fq);
            if eval(&cand).is_zero() && !roots.contains(&cand) {
                roots.push(cand);
            }
        }
    }
    Ok(roots)
}

/// Whether `ψ_ℓ(E)` has a root in `F_q(T)`, i.e. `E[ℓ]` contains a rational
/// line for `ℓ = 2` or a rational `x`-coordinate of a point of order 3.
pub fn torsion_reducible(e: &WeierstrassCurve, ell: u32) -> Result<bool> {
    if ell != 2 && ell != 3 {
        return Err(Error::precondition("torsion_reducible supports ℓ ∈ {2, 3}"));
    }
    let (a, b) = integral_model(e);
    let psi = integral_division_polynomial(e.ctx(), &a, &b, ell);
    Ok(!integral_roots(e.ctx(), &psi)?.is_empty())
}

/// `Gal(F(E[2])/F)` as a subgroup of `S₃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TwoDivisionGalois {
    Trivial,
    C2,
    C3,
    S3,
}

impl std::fmt::Display for TwoDivisionGalois {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TwoDivisionGalois::Trivial => "trivial",
            TwoDivisionGalois::C2 => "C2",
            TwoDivisionGalois::C3 => "C3",
            TwoDivisionGalois::S3 => "S3",
        })
    }
}

/// Whether `x ∈ F_q(T)^×` is a square.
pub fn is_square_ratfunc(ctx: &FieldContext, x: &RationalFunction) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    for p in [x.num(), x.den()] {
        if !p.is_constant() && ctx.factor(p)?.factors.iter().any(|(_, m)| m % 2 == 1) {
            return Ok(false);
        }
    }
    Ok(ctx.fq().is_square(x.num().leading()))
}

pub fn two_division_galois(e: &WeierstrassCurve) -> Result<TwoDivisionGalois> {
    let ctx = e.ctx();
    let (a, b) = integral_model(e);
    let psi = integral_division_polynomial(ctx, &a, &b, 2);
    let roots = integral_roots(ctx, &psi)?;
    Ok(match roots.len() {
        0 => {
            let c = &**ctx;
            // discriminant of x³ + ax + b
            let a3 = c.pow(e.a(), 3)?;
            let disc = c.neg(&c.add(&c.scale_int(&a3, 4), &c.scale_int(&c.mul(e.b(), e.b()), 27)));
            if is_square_ratfunc(ctx, &disc)? {
                TwoDivisionGalois::C3
            } else {
                TwoDivisionGalois::S3
            }
        }
        1 => TwoDivisionGalois::C2,
        _ => TwoDivisionGalois::Trivial,
    })
}
