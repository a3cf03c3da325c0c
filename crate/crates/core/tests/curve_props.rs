use std::sync::Arc;

use ffcurves::curve::WeierstrassCurve;
use ffcurves::funfield::{FieldContext, Place, Poly, RationalFunction};
use ffcurves::localred::{candidate_bad_places, global_data, local_reduction};
use proptest::prelude::*;

fn ctx() -> Arc<FieldContext> {
    FieldContext::new(7, 1).unwrap()
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0..7u32, 1..=max_len).prop_map(Poly::new)
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (poly(4), poly(3)).prop_filter_map("denominator", |(n, d)| ctx().ratfunc(n, d).ok())
}

fn curve() -> impl Strategy<Value = WeierstrassCurve> {
    (ratfunc(), ratfunc()).prop_filter_map("nonsingular", |(a, b)| WeierstrassCurve::new(&ctx(), a, b).ok())
}

fn nonzero_poly() -> impl Strategy<Value = RationalFunction> {
    poly(4).prop_filter_map("nonzero", |p| (!p.is_zero()).then(|| RationalFunction::from_poly(p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn discriminant_identity(e in curve()) {
        let c = ctx();
        let inv = e.invariants();
        let lhs = c.scale_int(&inv.delta, 1728);
        let rhs = c.sub(&c.pow(&inv.c4, 3).unwrap(), &c.pow(&inv.c6, 2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn twisting_twice_rescales(e in curve(), d in nonzero_poly(), u in nonzero_poly()) {
        let c = ctx();
        let dd = e.quadratic_twist(&d).unwrap().quadratic_twist(&d).unwrap();
        prop_assert_eq!(&dd, &e.rescale(&d, 1).unwrap());
        prop_assert_eq!(dd.j_invariant(), e.j_invariant());
        prop_assert_eq!(dd.discriminant(), c.mul(&e.discriminant(), &c.pow(&d, 12).unwrap()));
        let due2 = e.quadratic_twist(&c.mul(&d, &c.mul(&u, &u))).unwrap();
        prop_assert_eq!(due2, e.quadratic_twist(&d).unwrap().rescale(&u, 1).unwrap());
    }

    #[test]
    fn admissible_curves_are_not_isotrivial(e in curve()) {
        prop_assert!(!e.is_admissible() || !e.is_isotrivial());
    }

    #[test]
    fn reduction_data_ignores_rescaling(e in curve(), pi in nonzero_poly(), k in -2i64..=2) {
        let r = e.rescale(&pi, k).unwrap();
        let (g, h) = (global_data(&e).unwrap(), global_data(&r).unwrap());
        prop_assert_eq!(g.disc_divisor, h.disc_divisor);
        prop_assert_eq!(g.conductor, h.conductor);
        prop_assert_eq!(g.h_f, h.h_f);
    }

    #[test]
    fn twists_are_good_or_additive_at_odd_places(d in nonzero_poly()) {
        let c = ctx();
        let e = WeierstrassCurve::new(&c, c.int(1), c.t()).unwrap();
        let ed = e.quadratic_twist(&d).unwrap();
        prop_assert_eq!(ed.j_invariant(), e.j_invariant());
        let mut places = candidate_bad_places(&ed).unwrap();
        places.extend(candidate_bad_places(&e).unwrap());
        places.push(Place::Infinity);
        for place in places {
            let before = local_reduction(&e, &place).unwrap().kodaira;
            let after = local_reduction(&ed, &place).unwrap().kodaira;
            if c.valuation(&d, &place).unwrap() % 2 == 0 {
                prop_assert_eq!(before.is_good(), after.is_good());
            } else if before.is_good() {
                prop_assert!(after.is_additive());
            }
        }
    }
}

/// Every curve with `a, b ∈ F_5[T]` of degree ≤ 2.
#[test]
fn sweep_divisor_shapes() {
    let c = FieldContext::new(5, 1).unwrap();
    let polys: Vec<Poly> = (0..125u32).map(|k| Poly::new(vec![k % 5, k / 5 % 5, k / 25])).collect();
    let mut checked = 0;
    for a in &polys {
        for b in &polys {
            let Ok(e) = WeierstrassCurve::new(
                &c,
                RationalFunction::from_poly(a.clone()),
                RationalFunction::from_poly(b.clone()),
            ) else {
                continue;
            };
            let g = global_data(&e).unwrap();
            assert!(g.disc_divisor.is_effective() && g.conductor.is_effective());
            let sd: Vec<&Place> = g.disc_divisor.support().collect();
            let sn: Vec<&Place> = g.conductor.support().collect();
            assert_eq!(sd, sn, "{}", e.describe());
            assert!(g.conductor.iter().all(|(_, f)| (1..=2).contains(&f)));
            assert!(g.h_fg <= g.h_f, "{}", e.describe());
            checked += 1;
        }
    }
    assert_eq!(checked, 15620);
}
