//! Short Weierstrass models `y² = x³ + a x + b` over `F_q(T)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::funfield::{FieldContext, RationalFunction};

#[derive(Clone, Debug)]
pub struct WeierstrassCurve {
    ctx: Arc<FieldContext>,
    a: RationalFunction,
    b: RationalFunction,
}

/// `c4 = −48a`, `c6 = −864b`, `Δ = −16(4a³ + 27b²)`, `j = c4³/Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInvariants {
    pub c4: RationalFunction,
    pub c6: RationalFunction,
    pub delta: RationalFunction,
    pub j: RationalFunction,
}

impl PartialEq for WeierstrassCurve {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.p() == other.ctx.p() && self.ctx.s() == other.ctx.s() && self.a == other.a && self.b == other.b
    }
}

impl WeierstrassCurve {
    pub fn new(ctx: &Arc<FieldContext>, a: RationalFunction, b: RationalFunction) -> Result<Self> {
        let e = WeierstrassCurve { ctx: ctx.clone(), a, b };
        if e.discriminant().is_zero() {
            return Err(Error::Singular);
        }
        Ok(e)
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn a(&self) -> &RationalFunction {
        &self.a
    }

    pub fn b(&self) -> &RationalFunction {
        &self.b
    }

    pub fn discriminant(&self) -> RationalFunction {
        let c = &*self.ctx;
        let a3 = c.mul(&c.mul(&self.a, &self.a), &self.a);
        let b2 = c.mul(&self.b, &self.b);
        let inner = c.add(&c.scale_int(&a3, 4), &c.scale_int(&b2, 27));
        c.scale_int(&inner, -16)
    }

    pub fn invariants(&self) -> CurveInvariants {
        let c = &*self.ctx;
        let c4 = c.scale_int(&self.a, -48);
        let c6 = c.scale_int(&self.b, -864);
        let delta = self.discriminant();
        let c4_cubed = c.pow(&c4, 3).unwrap();
        let j = c.div(&c4_cubed, &delta).expect("nonsingular model");
        CurveInvariants { c4, c6, delta, j }
    }

    pub fn j_invariant(&self) -> RationalFunction {
        self.invariants().j
    }

    /// `E_d : y² = x³ + a d² x + b d³`.
    pub fn quadratic_twist(&self, d: &RationalFunction) -> Result<WeierstrassCurve> {
        if d.is_zero() {
            return Err(Error::precondition("twist by zero"));
        }
        let c = &*self.ctx;
        let d2 = c.mul(d, d);
        let d3 = c.mul(&d2, d);
        WeierstrassCurve::new(&self.ctx, c.mul(&self.a, &d2), c.mul(&self.b, &d3))
    }

    /// The model `(π^{4k} a, π^{6k} b)`, isomorphic over `F`.
    pub fn rescale(&self, pi: &RationalFunction, k: i64) -> Result<WeierstrassCurve> {
        let c = &*self.ctx;
        let a = c.mul(&self.a, &c.pow(pi, 4 * k)?);
        let b = c.mul(&self.b, &c.pow(pi, 6 * k)?);
        WeierstrassCurve::new(&self.ctx, a, b)
    }

    /// `j(E)` constant.
    pub fn is_isotrivial(&self) -> bool {
        self.j_invariant().is_constant()
    }

    /// `j(E)` nonconstant and not a `p`-th power in `F`.
    pub fn is_admissible(&self) -> bool {
        let j = self.j_invariant();
        if j.is_constant() {
            return false;
        }
        !self.ctx.is_pth_power(&j).expect("nonconstant j is nonzero")
    }

    pub fn describe(&self) -> String {
        format!("p={} s={}; a=({}); b=({})", self.ctx.p(), self.ctx.s(), self.ctx.fmt(&self.a), self.ctx.fmt(&self.b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funfield::parse_ratfunc;

    fn curve(ctx: &Arc<FieldContext>, a: &str, b: &str) -> Result<WeierstrassCurve> {
        WeierstrassCurve::new(ctx, parse_ratfunc(ctx, a).unwrap(), parse_ratfunc(ctx, b).unwrap())
    }

    #[test]
    fn j_zero_and_1728() {
        let c = FieldContext::new(5, 1).unwrap();
        let e = curve(&c, "0", "1").unwrap();
        assert_eq!(e.j_invariant(), c.int(0));
        assert!(e.is_isotrivial());
        assert!(!e.is_admissible());

        // over F_7 so that 1728 and −64 are visible as distinct residues
        let c7 = FieldContext::new(7, 1).unwrap();
        let e = curve(&c7, "1", "0").unwrap();
        let inv = e.invariants();
        assert_eq!(inv.delta, c7.int(-64));
        assert_eq!(inv.j, c7.int(1728));
    }

    #[test]
    fn worked_curve_invariants() {
        let c = FieldContext::new(5, 1).unwrap();
        let e = curve(&c, "1", "T").unwrap();
        let inv = e.invariants();
        assert_eq!(inv.delta, parse_ratfunc(&c, "1+3T^2").unwrap());
        assert_eq!(inv.j, parse_ratfunc(&c, "1/(T^2+2)").unwrap());
        assert!(!e.is_isotrivial());
        assert!(e.is_admissible());
        // 1728 Δ = c4³ − c6²
        let lhs = c.scale_int(&inv.delta, 1728);
        let rhs = c.sub(&c.pow(&inv.c4, 3).unwrap(), &c.pow(&inv.c6, 2).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn singular_rejected() {
        let c = FieldContext::new(5, 1).unwrap();
        assert_eq!(curve(&c, "0", "0").unwrap_err(), Error::Singular);
        // 4a³ + 27b² = 0 with a = −3, b = 2
        assert_eq!(curve(&c, "-3", "2").unwrap_err(), Error::Singular);
    }

    #[test]
    fn twists() {
        let c = FieldContext::new(5, 1).unwrap();
        let e = curve(&c, "1", "0").unwrap();
        assert_eq!(e.quadratic_twist(&c.int(1)).unwrap(), e);
        let t = e.quadratic_twist(&c.t()).unwrap();
        assert_eq!(t.a(), &parse_ratfunc(&c, "T^2").unwrap());
        assert_eq!(t.b(), &RationalFunction::zero());
        assert_eq!(t.discriminant(), c.scale_int(&parse_ratfunc(&c, "T^6").unwrap(), -64));
        assert_eq!(t.j_invariant(), e.j_invariant());
        assert!(e.quadratic_twist(&RationalFunction::zero()).is_err());
    }

    #[test]
    fn admissibility_examples() {
        let c = FieldContext::new(5, 1).unwrap();
        let e = curve(&c, "T^4", "T^5").unwrap();
        assert!(!e.is_isotrivial());
        // j = u(T^5) is a p-th power: a = T^5, b = T^5 gives j = c·T^15/(4T^15+27T^10) ∈ F_5(T^5)
        let e = curve(&c, "T^5", "T^5").unwrap();
        assert!(!e.is_isotrivial());
        assert!(!e.is_admissible());
    }
}
