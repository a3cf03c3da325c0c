use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::spec::{parse_catalog, parse_curve_spec, parse_places, ParsedCurve};
use super::{Cli, Command, LemmaKind};
use crate::curve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::finitecurve::two_division_galois;
use crate::funfield::{FieldContext, Poly};
use crate::localred::{
    case_table_from, enumerate_good_twists, fmt_rational, global_data, height_conjecture_from, JClass,
};
use crate::modgroups::{
    bfs_subgroup, check_commutator_lemma, check_unipotent_lemma, frobenius_survey, gamma_charpoly_distribution,
    gamma_spec, isotriviality_contrast, psl2_simplicity, CharpolyDistribution, FrobeniusSurvey, MatrixModN,
    MAX_CHARPOLY_ELL,
};
use crate::tatecurve::{
    c4_series, c6_series, formal_weierstrass_residual, rational_weierstrass_residual, tate_expansions, uniformize,
    IntSeries, TateParameter,
};

/// Bound on the number of `(a, b)` pairs in a sweep.
pub const MAX_SWEEP_CURVES: u64 = 1_000_000;

fn s<T: ToString>(x: T) -> Value {
    Value::String(x.to_string())
}

pub(super) fn dispatch(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Analyze { spec, catalog } => {
            let curves = match (spec, catalog) {
                (Some(text), _) => vec![parse_curve_spec(text)?],
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::precondition(format!("cannot read {}: {e}", path.display())))?;
                    parse_catalog(&text)?
                }
                (None, None) => return Err(Error::precondition("a curve spec or --catalog is required")),
            };
            let reports = curves.iter().map(analyze_curve).collect::<Result<Vec<_>>>()?;
            Ok(json!({ "curves": reports }))
        }
        Command::Sweep { p, s, deg_bound } => Ok(sweep(*p, *s, *deg_bound)?.to_json()),
        Command::Tate { order, units } => tate(*order, *units, cli.seed),
        Command::Frobenius { spec, ell, dmax, budget } => frobenius(&parse_curve_spec(spec)?, *ell, *dmax, *budget),
        Command::Gamma { r, n } => gamma(*r, *n),
        Command::Lemmas { which, ell, n, m } => lemmas(*which, *ell, *n, *m, cli.cap),
        Command::Twists { spec, places } => twists(&parse_curve_spec(spec)?, places),
    }
}

/// Per-place and global data for one curve.
pub fn analyze_curve(pc: &ParsedCurve) -> Result<Value> {
    let e = &pc.curve;
    let ctx = e.ctx();
    let g = global_data(e)?;
    let inv = e.invariants();
    let bad: Vec<Value> = g
        .bad_places
        .iter()
        .map(|d| {
            json!({
                "place": ctx.fmt_place(&d.place),
                "degree": s(d.place.degree()),
                "kodaira": s(d.kodaira),
                "v_delta_min": s(d.v_delta_min),
                "v_c4_min": d.v_c4_min.map(s).unwrap_or(Value::Null),
                "conductor_exponent": s(d.conductor_exp),
            })
        })
        .collect();
    let admissible = e.is_admissible();
    let (height_conjecture, case_table) = if admissible {
        let hc = height_conjecture_from(&g);
        let rows: Vec<Value> = case_table_from(e, &g)?
            .iter()
            .map(|r| {
                json!({
                    "place": ctx.fmt_place(&r.place),
                    "kodaira": s(r.kodaira),
                    "j_class": s(r.j_class),
                    "ramification": r.ramification.map(s).unwrap_or(Value::Null),
                    "coefficient": fmt_rational(&r.coefficient),
                    "conductor_exponent": s(r.conductor_exp),
                    "holds": r.holds,
                })
            })
            .collect();
        (json!({ "lhs": fmt_rational(&hc.lhs), "rhs": fmt_rational(&hc.rhs), "holds": hc.holds }), Value::Array(rows))
    } else {
        let skipped = json!({ "skipped": "curve is not admissible" });
        (skipped.clone(), skipped)
    };
    Ok(json!({
        "label": pc.label(),
        "curve": e.describe(),
        "discriminant": ctx.fmt(&inv.delta),
        "j": ctx.fmt(&inv.j),
        "isotrivial": e.is_isotrivial(),
        "admissible": admissible,
        "bad_places": bad,
        "discriminant_divisor": ctx.fmt_divisor(&g.disc_divisor),
        "conductor": ctx.fmt_divisor(&g.conductor),
        "conductor_degree": s(g.conductor.degree()),
        "h_f": fmt_rational(&g.h_f),
        "h_fg": fmt_rational(&g.h_fg),
        "h_fg_le_h_f": g.h_fg <= g.h_f,
        "height_conjecture": height_conjecture,
        "case_table": case_table,
        "two_division_galois": s(two_division_galois(e)?),
    }))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub p: u32,
    pub s: u32,
    pub deg_bound: usize,
    pub curves: u64,
    pub singular: u64,
    pub checked: u64,
    pub isotrivial: u64,
    pub admissible: u64,
    pub case_rows: u64,
    pub bounded_only_rows: u64,
    /// Labels of curves with `h_{F,g} > h_F`, sorted.
    pub height_violations: Vec<String>,
    /// Labels of admissible curves violating the height conjecture, sorted.
    pub conjecture_violations: Vec<String>,
    /// `label @ place` for failed case-table rows with `j ∈ {0, 1728, ∞}`.
    pub case_violations: Vec<String>,
}

impl SweepSummary {
    pub fn violations(&self) -> usize {
        self.height_violations.len() + self.conjecture_violations.len() + self.case_violations.len()
    }

    fn to_json(&self) -> Value {
        json!({
            "p": s(self.p),
            "s": s(self.s),
            "deg_bound": s(self.deg_bound),
            "curves": s(self.curves),
            "singular": s(self.singular),
            "checked": s(self.checked),
            "isotrivial": s(self.isotrivial),
            "admissible": s(self.admissible),
            "case_rows": s(self.case_rows),
            "bounded_only_rows": s(self.bounded_only_rows),
            "violations": s(self.violations()),
            "height_violations": self.height_violations,
            "conjecture_violations": self.conjecture_violations,
            "case_violations": self.case_violations,
        })
    }
}

#[derive(Default)]
struct SweepItem {
    singular: bool,
    isotrivial: bool,
    admissible: bool,
    case_rows: u64,
    bounded_only: u64,
    height_violation: Option<String>,
    conjecture_violation: Option<String>,
    case_violations: Vec<String>,
}

fn sweep_one(ctx: &std::sync::Arc<FieldContext>, a: &Poly, b: &Poly) -> Result<SweepItem> {
    let af = crate::funfield::RationalFunction::from_poly(a.clone());
    let bf = crate::funfield::RationalFunction::from_poly(b.clone());
    let e = match WeierstrassCurve::new(ctx, af, bf) {
        Ok(e) => e,
        Err(Error::Singular) => return Ok(SweepItem { singular: true, ..Default::default() }),
        Err(err) => return Err(err),
    };
    let g = global_data(&e)?;
    let mut item = SweepItem { isotrivial: e.is_isotrivial(), admissible: e.is_admissible(), ..Default::default() };
    let label = e.describe();
    if g.h_fg > g.h_f {
        item.height_violation = Some(label.clone());
    }
    if item.admissible {
        if !height_conjecture_from(&g).holds {
            item.conjecture_violation = Some(label.clone());
        }
        for row in case_table_from(&e, &g)? {
            if row.j_class == JClass::Other {
                item.bounded_only += 1;
                continue;
            }
            item.case_rows += 1;
            if !row.holds {
                item.case_violations.push(format!("{label} @ {}", ctx.fmt_place(&row.place)));
            }
        }
    }
    Ok(item)
}

/// Every `y² = x³ + ax + b` with `a, b ∈ F_q[T]` of degree `≤ deg_bound`.
pub fn sweep(p: u32, s: u32, deg_bound: usize) -> Result<SweepSummary> {
    let ctx = FieldContext::new(p, s)?;
    let q = ctx.q();
    let per = q
        .checked_pow(deg_bound as u32 + 1)
        .filter(|&n| n.saturating_mul(n) <= MAX_SWEEP_CURVES)
        .ok_or_else(|| Error::ResourceCap(format!("more than {MAX_SWEEP_CURVES} curves")))?;
    let polys: Vec<Poly> = (0..per)
        .map(|mut k| {
            let mut c = Vec::with_capacity(deg_bound + 1);
            for _ in 0..=deg_bound {
                c.push((k % q) as u32);
                k /= q;
            }
            Poly::new(c)
        })
        .collect();
    let items = (0..per * per)
        .into_par_iter()
        .map(|i| sweep_one(&ctx, &polys[(i / per) as usize], &polys[(i % per) as usize]))
        .collect::<Result<Vec<_>>>()?;
    let mut out = SweepSummary { p, s, deg_bound, curves: per * per, ..Default::default() };
    for it in items {
        if it.singular {
            out.singular += 1;
            continue;
        }
        out.checked += 1;
        out.isotrivial += it.isotrivial as u64;
        out.admissible += it.admissible as u64;
        out.case_rows += it.case_rows;
        out.bounded_only_rows += it.bounded_only;
        out.height_violations.extend(it.height_violation);
        out.conjecture_violations.extend(it.conjecture_violation);
        out.case_violations.extend(it.case_violations);
    }
    out.height_violations.sort();
    out.conjecture_violations.sort();
    out.case_violations.sort();
    Ok(out)
}

fn series_json(x: &IntSeries) -> Value {
    json!({ "first_exponent": s(x.start()), "coefficients": x.to_decimal_strings() })
}

fn tate(order: usize, units: usize, seed: u64) -> Result<Value> {
    if order == 0 {
        return Err(Error::precondition("order must be positive"));
    }
    let t = tate_expansions(order);
    let c4 = c4_series(order);
    let c6 = c6_series(order);
    let lhs = t.delta.scale(1728);
    let rhs = c4.pow(3).sub(&c6.pow(2));
    let delta_identity = lhs.sub(&rhs).is_zero_to_precision();
    let formal_residual_zero = formal_weierstrass_residual(order).is_zero();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    while checks.len() < units {
        let num: i64 = rng.gen_range(-20..=20);
        let den: i64 = rng.gen_range(1..=20);
        let u = BigRational::new(BigInt::from(num), BigInt::from(den));
        if num == 0 || num == den {
            continue;
        }
        let (x, y) = uniformize(&TateParameter::new(0, u.clone()), order)?;
        let (xi, yi) = uniformize(&TateParameter::new(0, u.recip()), order)?;
        // inverse law: x(1/u) = x(u), y(1/u) = −x(u) − y(u)
        let inverse_law = xi == x && yi == x.add(&y).neg();
        checks.push(json!({
            "unit": u.to_string(),
            "residual_zero": rational_weierstrass_residual(&x, &y).is_zero(),
            "inverse_law": inverse_law,
        }));
    }
    Ok(json!({
        "order": s(order),
        "a4": series_json(&t.a4),
        "a6": series_json(&t.a6),
        "delta": series_json(&t.delta),
        "j": series_json(&t.j),
        "checks": {
            "delta_identity": delta_identity,
            "formal_residual_zero": formal_residual_zero,
            "units": checks,
        },
    }))
}

fn distribution_json(d: &CharpolyDistribution) -> Value {
    Value::Array(
        d.counts
            .keys()
            .map(|&(t, det)| {
                let f: Ratio<u64> = d.frequency(t, det);
                json!({ "trace": s(t), "det": s(det), "freq-num": s(f.numer()), "freq-den": s(f.denom()) })
            })
            .collect(),
    )
}

fn survey_json(sv: &FrobeniusSurvey) -> Value {
    let observed: Vec<Value> =
        sv.observed.iter().map(|(&(t, d), &c)| json!({ "trace": s(t), "det": s(d), "count": s(c) })).collect();
    let classes =
        |v: &[(u32, u32)]| -> Vec<Value> { v.iter().map(|&(t, d)| json!({ "trace": s(t), "det": s(d) })).collect() };
    json!({
        "ell": s(sv.ell),
        "dmax": s(sv.dmax),
        "samples": s(sv.samples),
        "bad_places": s(sv.bad_places),
        "det_violations": s(sv.det_violations),
        "det_all_in_h": sv.det_all_in_h(),
        "subset_of_gamma": sv.subset_of_gamma(),
        "coverage_complete": sv.coverage_complete(),
        "observed": observed,
        "outside_gamma": classes(&sv.outside_gamma),
        "missing": classes(&sv.missing),
        "tv_conditioned": format!("{:.6}", sv.tv_conditioned),
        "tv_unconditioned": format!("{:.6}", sv.tv_unconditioned),
        "tv_within_threshold": sv.tv_within_threshold(),
    })
}

fn frobenius(pc: &ParsedCurve, ell: u32, dmax: usize, budget: u64) -> Result<Value> {
    let e = &pc.curve;
    let q = e.ctx().q();
    let gamma = gamma_charpoly_distribution(q, ell)?;
    if e.is_isotrivial() {
        let c = isotriviality_contrast(e, ell, dmax, budget)?;
        Ok(json!({
            "label": pc.label(),
            "mode": "isotriviality_contrast",
            "two_division_galois": s(c.two_division),
            "abelian_two_division": c.abelian_two_division(),
            "gamma_support": s(c.gamma_support),
            "support_strictly_smaller": c.support_strictly_smaller(),
            "survey": survey_json(&c.survey),
            "gamma_distribution": distribution_json(&gamma),
        }))
    } else {
        let sv = frobenius_survey(e, ell, dmax, budget)?;
        Ok(json!({
            "label": pc.label(),
            "mode": "survey",
            "survey": survey_json(&sv),
            "gamma_distribution": distribution_json(&gamma),
        }))
    }
}

fn gamma(r: u64, n: u64) -> Result<Value> {
    let g = gamma_spec(r, n)?;
    let distribution = if n <= MAX_CHARPOLY_ELL as u64 && crate::funfield::gf::is_prime(n) {
        distribution_json(&gamma_charpoly_distribution(r, n as u32)?)
    } else {
        Value::Null
    };
    Ok(json!({
        "n": s(g.n),
        "r": s(g.r),
        "h_order": s(g.h_order),
        "sl2_order": s(g.sl2_order),
        "gamma_order": s(g.gamma_order),
        "distribution": distribution,
    }))
}

fn lemmas(which: LemmaKind, ell: u32, n: u32, m: u32, cap: usize) -> Result<Value> {
    Ok(match which {
        LemmaKind::Commutator => {
            let r = check_commutator_lemma(ell, n, cap)?;
            json!({
                "lemma": "commutator",
                "ell": s(ell),
                "n": s(n),
                "modulus": s(r.modulus),
                "kernel_order": r.sn_order.map(s).unwrap_or(Value::Null),
                "kernel_order_expected": s(r.sn_expected),
                "commutator_subgroup_order": s(r.commutator_order),
                "target_size": s(r.target_size),
                "holds": r.holds,
            })
        }
        LemmaKind::Unipotent => {
            let r = check_unipotent_lemma(ell, m, cap)?;
            json!({
                "lemma": "unipotent",
                "ell": s(ell),
                "m": s(m),
                "generated_order": s(r.generated_order),
                "kernel_size": s(r.kernel_size),
                "holds": r.holds,
            })
        }
        LemmaKind::Simplicity => {
            let r = psl2_simplicity(ell)?;
            json!({ "lemma": "simplicity", "ell": s(ell), "order": s(r.order), "holds": r.simple() })
        }
        LemmaKind::Sl2 => {
            if !crate::funfield::gf::is_prime(ell as u64) {
                return Err(Error::precondition("ℓ must be prime"));
            }
            let gens = [MatrixModN::new(ell, 1, 1, 0, 1), MatrixModN::new(ell, 1, 0, 1, 1)];
            let g = bfs_subgroup(&gens, ell, cap)?;
            let l = ell as u64;
            json!({
                "lemma": "sl2",
                "ell": s(ell),
                "order": s(g.order()),
                "sl2_order": s(l * (l * l - 1)),
                "holds": g.order() as u64 == l * (l * l - 1),
            })
        }
    })
}

fn twists(pc: &ParsedCurve, places: &str) -> Result<Value> {
    let ctx = pc.curve.ctx();
    let s_places = parse_places(ctx, places)?;
    let classes = enumerate_good_twists(&pc.curve, &s_places)?;
    let rows: Vec<Value> = classes
        .iter()
        .map(|c| {
            json!({
                "d": ctx.fmt(&c.d),
                "nonsquare_constant": c.nonsquare_constant,
                "primes": c.primes.iter().map(|g| ctx.fmt_poly(g)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "label": pc.label(),
        "places": s_places.iter().map(|p| ctx.fmt_place(p)).collect::<Vec<_>>(),
        "count": s(classes.len()),
        "classes": rows,
    }))
}
