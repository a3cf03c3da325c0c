//! Local reduction data at the places of `F_q(T)` and the global invariants
//! built from it: the minimal discriminant divisor, the conductor, both
//! Faltings heights and the height-conjecture check.
//!
//! With residue characteristic `p > 3` the Kodaira type is read off the
//! valuations `(v(c4), v(Δ))` of a minimal model, so no full Tate's algorithm
//! is needed.

mod twists;

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;

use crate::curve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::funfield::{Divisor, Place, Poly, RationalFunction};

pub use twists::{enumerate_good_twists, TwistClass};

pub type Rational = Ratio<i64>;

/// Kodaira symbol of the special fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kodaira {
    I0,
    In(u32),
    II,
    III,
    IV,
    I0Star,
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    pub fn is_good(self) -> bool {
        self == Kodaira::I0
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, Kodaira::In(_))
    }

    pub fn is_additive(self) -> bool {
        !self.is_good() && !self.is_multiplicative()
    }

    /// Conductor exponent for `p > 3` (tame): 0, 1 or 2.
    pub fn conductor_exponent(self) -> u32 {
        match self {
            Kodaira::I0 => 0,
            Kodaira::In(_) => 1,
            _ => 2,
        }
    }

    /// Classification from a minimal model, residue characteristic `≥ 5`.
    /// `vc4 = None` stands for `c4 = 0`.
    pub fn classify(vc4: Option<i64>, vdelta: i64) -> Result<Kodaira> {
        let c4 = vc4.unwrap_or(i64::MAX);
        let ty = match vdelta {
            0 => Kodaira::I0,
            n if c4 == 0 => Kodaira::In(n as u32),
            2 => Kodaira::II,
            3 => Kodaira::III,
            4 => Kodaira::IV,
            6 if c4 >= 2 => Kodaira::I0Star,
            n if c4 == 2 && n > 6 => Kodaira::InStar((n - 6) as u32),
            8 => Kodaira::IVStar,
            9 => Kodaira::IIIStar,
            10 => Kodaira::IIStar,
            _ => {
                return Err(Error::precondition(format!(
                    "no Kodaira type for v(c4) = {vc4:?}, v(Δ) = {vdelta}; model not minimal?"
                )))
            }
        };
        Ok(ty)
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => write!(f, "I0"),
            Kodaira::In(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::I0Star => write!(f, "I0*"),
            Kodaira::InStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalReductionData {
    pub place: Place,
    /// Valuation of the minimal discriminant.
    pub v_delta_min: u32,
    /// Valuation of `c4` on the minimal model; `None` when `c4 = 0`.
    pub v_c4_min: Option<u32>,
    pub kodaira: Kodaira,
    pub conductor_exp: u32,
    /// The minimal model is `(π^{4k} a, π^{6k} b)`.
    pub scaling: i64,
}

#[derive(Clone, Debug)]
pub struct GlobalCurveData {
    /// `𝒟_E`.
    pub disc_divisor: Divisor,
    /// `𝔫_E`.
    pub conductor: Divisor,
    /// `h_F(E) = deg 𝒟_E / 12`.
    pub h_f: Rational,
    /// `h_{F,g}(E) = h_F(j) / 12`.
    pub h_fg: Rational,
    /// Local data at every bad place, in place order.
    pub bad_places: Vec<LocalReductionData>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightConjectureReport {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

/// Which special value `j` reduces to at a place.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JClass {
    Zero,
    J1728,
    Infinity,
    Other,
}

impl fmt::Display for JClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            JClass::Zero => "0",
            JClass::J1728 => "1728",
            JClass::Infinity => "inf",
            JClass::Other => "other",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseTableEntry {
    pub place: Place,
    pub kodaira: Kodaira,
    pub j_class: JClass,
    /// Ramification index over `F_q(j)`; `None` where only `e ≥ 1` is used.
    pub ramification: Option<i64>,
    pub coefficient: Rational,
    pub conductor_exp: u32,
    pub holds: bool,
}

impl CaseTableEntry {
    pub fn bounded_only(&self) -> bool {
        self.ramification.is_none()
    }
}

fn uniformizer(e: &WeierstrassCurve, place: &Place) -> RationalFunction {
    let ctx = e.ctx();
    match place {
        Place::Finite(g) => RationalFunction::from_poly(g.clone()),
        Place::Infinity => ctx.inv(&ctx.t()).unwrap(),
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// Minimal-model reduction data at one place.
pub fn local_reduction(e: &WeierstrassCurve, place: &Place) -> Result<LocalReductionData> {
    let ctx = e.ctx();
    let va = ctx.valuation_or_inf(e.a(), place);
    let vb = ctx.valuation_or_inf(e.b(), place);
    let vdelta = ctx.valuation(&e.discriminant(), place)?;
    // least k with v(a) + 4k >= 0 and v(b) + 6k >= 0
    let k = [va.map(|v| ceil_div(-v, 4)), vb.map(|v| ceil_div(-v, 6))]
        .into_iter()
        .flatten()
        .max()
        .expect("a and b are not both zero");
    let vdelta_min = vdelta + 12 * k;
    let vc4 = va.map(|v| v + 4 * k);
    let kodaira = Kodaira::classify(vc4, vdelta_min)?;
    Ok(LocalReductionData {
        place: place.clone(),
        v_delta_min: vdelta_min as u32,
        v_c4_min: vc4.map(|v| v as u32),
        kodaira,
        conductor_exp: kodaira.conductor_exponent(),
        scaling: k,
    })
}

/// The model `(π^{4k} a, π^{6k} b)` that is minimal at `place`.
pub fn minimal_model_at(e: &WeierstrassCurve, place: &Place) -> Result<WeierstrassCurve> {
    let data = local_reduction(e, place)?;
    e.rescale(&uniformizer(e, place), data.scaling)
}

/// Places where the given model could have bad reduction: primes of `Δ`,
/// poles of `a` and `b`, and `∞`.
pub fn candidate_bad_places(e: &WeierstrassCurve) -> Result<Vec<Place>> {
    let ctx = e.ctx();
    let delta = e.discriminant();
    let mut polys: Vec<&Poly> = vec![delta.num(), delta.den(), e.a().den(), e.b().den()];
    polys.retain(|p| !p.is_constant());
    let mut set = BTreeSet::new();
    for p in polys {
        for (g, _) in ctx.factor(p)?.factors {
            set.insert(Place::Finite(g));
        }
    }
    set.insert(Place::Infinity);
    Ok(set.into_iter().collect())
}

pub fn global_data(e: &WeierstrassCurve) -> Result<GlobalCurveData> {
    let ctx = e.ctx();
    let mut bad = Vec::new();
    for place in candidate_bad_places(e)? {
        let data = local_reduction(e, &place)?;
        if !data.kodaira.is_good() {
            bad.push(data);
        }
    }
    let disc_divisor: Divisor = bad.iter().map(|d| (d.place.clone(), d.v_delta_min as i64)).collect();
    let conductor: Divisor = bad.iter().map(|d| (d.place.clone(), d.conductor_exp as i64)).collect();
    let h_f = Rational::new(disc_divisor.degree(), 12);
    let j = e.j_invariant();
    let h_j = if j.is_zero() { 0 } else { ctx.height(&j)? as i64 };
    let h_fg = Rational::new(h_j, 12);
    Ok(GlobalCurveData { disc_divisor, conductor, h_f, h_fg, bad_places: bad })
}

fn require_admissible(e: &WeierstrassCurve) -> Result<()> {
    if !e.is_admissible() {
        return Err(Error::precondition("curve is not admissible (j constant or a p-th power)"));
    }
    Ok(())
}

/// `h_F(E) ≤ ½ deg 𝔫_E + g − 1` with `g = 0`.
pub fn check_height_conjecture(e: &WeierstrassCurve) -> Result<HeightConjectureReport> {
    require_admissible(e)?;
    let g = global_data(e)?;
    Ok(height_conjecture_from(&g))
}

pub fn height_conjecture_from(g: &GlobalCurveData) -> HeightConjectureReport {
    let lhs = g.h_f;
    let rhs = Rational::new(g.conductor.degree(), 2) - 1;
    HeightConjectureReport { lhs, rhs, holds: lhs <= rhs }
}

/// Per-place coefficients `⅙ v(Δ) − c·e + 1` against the conductor exponent.
pub fn verify_case_table(e: &WeierstrassCurve) -> Result<Vec<CaseTableEntry>> {
    require_admissible(e)?;
    let g = global_data(e)?;
    case_table_from(e, &g)
}

pub fn case_table_from(e: &WeierstrassCurve, g: &GlobalCurveData) -> Result<Vec<CaseTableEntry>> {
    let ctx = e.ctx();
    let j = e.j_invariant();
    let j_minus = ctx.sub(&j, &ctx.int(1728));
    let mut out = Vec::with_capacity(g.bad_places.len());
    for data in &g.bad_places {
        let vj = ctx.valuation(&j, &data.place)?;
        let (class, ram, weight) = if vj < 0 {
            (JClass::Infinity, Some(-vj), Rational::new(1, 6))
        } else if vj > 0 {
            (JClass::Zero, Some(vj), Rational::new(1, 3))
        } else {
            let v1728 = ctx.valuation(&j_minus, &data.place)?;
            if v1728 > 0 {
                (JClass::J1728, Some(v1728), Rational::new(1, 2))
            } else {
                (JClass::Other, None, Rational::from_integer(1))
            }
        };
        let e_used = ram.unwrap_or(1);
        let coefficient = Rational::new(data.v_delta_min as i64, 6) - weight * e_used + 1;
        out.push(CaseTableEntry {
            place: data.place.clone(),
            kodaira: data.kodaira,
            j_class: class,
            ramification: ram,
            coefficient,
            conductor_exp: data.conductor_exp,
            holds: coefficient <= Rational::from_integer(data.conductor_exp as i64),
        });
    }
    Ok(out)
}

/// Render a rational as `"num/den"` (or `"num"` when integral).
pub fn fmt_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funfield::{parse_ratfunc, FieldContext};
    use std::sync::Arc;

    fn curve(ctx: &Arc<FieldContext>, a: &str, b: &str) -> WeierstrassCurve {
        WeierstrassCurve::new(ctx, parse_ratfunc(ctx, a).unwrap(), parse_ratfunc(ctx, b).unwrap()).unwrap()
    }

    #[test]
    fn kodaira_table() {
        assert_eq!(Kodaira::classify(Some(0), 0).unwrap(), Kodaira::I0);
        assert_eq!(Kodaira::classify(Some(0), 5).unwrap(), Kodaira::In(5));
        assert_eq!(Kodaira::classify(Some(1), 2).unwrap(), Kodaira::II);
        assert_eq!(Kodaira::classify(None, 2).unwrap(), Kodaira::II);
        assert_eq!(Kodaira::classify(Some(1), 3).unwrap(), Kodaira::III);
        assert_eq!(Kodaira::classify(Some(2), 4).unwrap(), Kodaira::IV);
        assert_eq!(Kodaira::classify(Some(2), 6).unwrap(), Kodaira::I0Star);
        assert_eq!(Kodaira::classify(None, 6).unwrap(), Kodaira::I0Star);
        assert_eq!(Kodaira::classify(Some(2), 9).unwrap(), Kodaira::InStar(3));
        assert_eq!(Kodaira::classify(Some(3), 8).unwrap(), Kodaira::IVStar);
        assert_eq!(Kodaira::classify(Some(3), 9).unwrap(), Kodaira::IIIStar);
        assert_eq!(Kodaira::classify(Some(4), 10).unwrap(), Kodaira::IIStar);
        assert!(Kodaira::classify(Some(4), 12).is_err());
        assert_eq!(Kodaira::InStar(2).to_string(), "I2*");
        assert_eq!(Kodaira::IIStar.conductor_exponent(), 2);
        assert_eq!(Kodaira::In(3).conductor_exponent(), 1);
    }

    #[test]
    fn worked_curve_places() {
        let c = FieldContext::new(5, 1).unwrap();
        let e = curve(&c, "1", "T");
        let p = Place::Finite(Poly::new(vec![2, 0, 1]));
        let d = local_reduction(&e, &p).unwrap();
        assert_eq!((d.v_delta_min, d.v_c4_min, d.kodaira, d.conductor_exp), (1, Some(0), Kodaira::In(1), 1));

        let d = local_reduction(&e, &Place::Infinity).unwrap();
        assert_eq!((d.v_delta_min, d.v_c4_min, d.kodaira, d.conductor_exp), (10, Some(4), Kodaira::IIStar, 2));
        assert_eq!(d.scaling, 1);
        let m = minimal_model_at(&e, &Place::Infinity).unwrap();
        // (S^4, S^5) with S = 1/T
        assert_eq!(m.a(), &parse_ratfunc(&c, "T^-4").unwrap());
        assert_eq!(m.b(), &parse_ratfunc(&c, "T^-5").unwrap());

        let d = local_reduction(&e, &Place::Finite(Poly::x())).unwrap();
        assert_eq!((d.v_delta_min, d.kodaira, d.conductor_exp), (0, Kodaira::I0, 0));
    }

    #[test]
    fn worked_curve_global() {
        let c = FieldContext::new(5, 1).unwrap();
        let e = curve(&c, "1", "T");
        let g = global_data(&e).unwrap();
        assert_eq!(g.disc_divisor.degree(), 12);
        assert_eq!(g.conductor.degree(), 4);
        assert_eq!(g.h_f, Rational::from_integer(1));
        assert_eq!(g.h_fg, Rational::new(1, 6));
        let hc = check_height_conjecture(&e).unwrap();
        assert_eq!((hc.lhs, hc.rhs, hc.holds), (Rational::from_integer(1), Rational::from_integer(1), true));

        let table = verify_case_table(&e).unwrap();
        let i1 = &table[0];
        assert_eq!(i1.j_class, JClass::Infinity);
        assert_eq!(i1.ramification, Some(1));
        assert_eq!(i1.coefficient, Rational::from_integer(1));
        assert!(table.iter().all(|t| t.holds));
    }

    #[test]
    fn isotrivial_rejected_by_conjecture_check() {
        let c = FieldContext::new(5, 1).unwrap();
        let e = curve(&c, "0", "1");
        assert!(check_height_conjecture(&e).is_err());
        assert_eq!(global_data(&e).unwrap().h_fg, Rational::from_integer(0));
    }

    #[test]
    fn instar_place_coefficient_is_two() {
        // twist E=(1,T) by (T+1): the I1 places stay I1, (T+1) becomes I0*.
        // For an I_n* place twist an I_n place: twist by T^2+2 itself.
        let c = FieldContext::new(5, 1).unwrap();
        let e = curve(&c, "1", "T");
        let d = parse_ratfunc(&c, "T^2+2").unwrap();
        let et = e.quadratic_twist(&d).unwrap();
        let p = Place::Finite(Poly::new(vec![2, 0, 1]));
        let data = local_reduction(&et, &p).unwrap();
        assert_eq!(data.kodaira, Kodaira::InStar(1));
        assert_eq!(data.v_delta_min, 7);
        let table = verify_case_table(&et).unwrap();
        let row = table.iter().find(|r| r.place == p).unwrap();
        assert_eq!(row.coefficient, Rational::from_integer(2));
        assert_eq!(row.conductor_exp, 2);
    }

    #[test]
    fn type_iii_place_coefficient() {
        // a = T, b = T^2: v(a)=1, v(b)=2, v(Δ)=3 at (T) → III, j ≡ 1728 there
        let c = FieldContext::new(7, 1).unwrap();
        let e = curve(&c, "T", "T^2");
        let p = Place::Finite(Poly::x());
        let data = local_reduction(&e, &p).unwrap();
        assert_eq!(data.kodaira, Kodaira::III);
        assert_eq!(data.v_delta_min, 3);
        if e.is_admissible() {
            let table = verify_case_table(&e).unwrap();
            let row = table.iter().find(|r| r.place == p).unwrap();
            assert_eq!(row.j_class, JClass::J1728);
            // e = 2 v(b) − 3 = 1
            assert_eq!(row.ramification, Some(1));
            assert!(row.coefficient <= Rational::from_integer(1));
            assert!(row.holds);
        }
    }

    #[test]
    fn rescaling_invariance() {
        let c = FieldContext::new(5, 1).unwrap();
        let e = curve(&c, "1", "T");
        for place in candidate_bad_places(&e).unwrap() {
            let pi = uniformizer(&e, &place);
            let scaled = e.rescale(&pi, 1).unwrap();
            let a = local_reduction(&e, &place).unwrap();
            let b = local_reduction(&scaled, &place).unwrap();
            assert_eq!((a.v_delta_min, a.kodaira), (b.v_delta_min, b.kodaira));
        }
    }
}
