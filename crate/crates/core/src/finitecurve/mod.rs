//! Elliptic curves over finite fields: the group law, point counts, the
//! Weil pairing and Frobenius on torsion, plus the reduction of a curve over
//! `F_q(T)` at a good place and its 2- and 3-division polynomials.

pub mod global;
pub mod group;

pub use global::{
    division_polynomial, frobenius_data, is_square_ratfunc, reduce_curve, torsion_reducible, two_division_galois,
    FrobeniusData, TwoDivisionGalois,
};
pub use group::{FiniteCurve, FinitePoint, MAX_COUNT_FIELD};

#[cfg(test)]
mod pairing_tests {
    use super::*;
    use crate::funfield::{FieldContext, FiniteField};

    /// Smallest extension degree over which `E[n]` is rational, with the curve
    /// over it.
    fn full_torsion(p: u32, a: u32, b: u32, n: u64) -> FiniteCurve {
        let ctx = FieldContext::new(p, 1).unwrap();
        let base = FiniteCurve::new(ctx.fq(), a, b).unwrap();
        for d in 1..=6 {
            let k = ctx.extension(d).unwrap();
            if k.size() > 20_000 {
                break;
            }
            let c = base.base_change(&k).unwrap();
            let cnt = c.point_count().unwrap();
            if cnt.is_multiple_of(n * n)
                && (k.size() as u64 - 1).is_multiple_of(n)
                && c.torsion_points(n).unwrap().len() as u64 == n * n
            {
                return c;
            }
        }
        panic!("no small field with full {n}-torsion");
    }

    #[test]
    fn pairing_axioms_and_frobenius_equivariance() {
        for (p, a, b, n) in [(5u32, 1u32, 1u32, 3u64), (7, 1, 3, 3), (5, 1, 1, 2), (7, 3, 2, 2), (11, 1, 0, 4)] {
            let c = full_torsion(p, a, b, n);
            let k = c.field().clone();
            let (bp, bq) = c.torsion_basis(n).unwrap();
            let z = c.weil_pairing(&bp, &bq, n).unwrap();
            assert_eq!(k.order(z), n);
            let tors = c.torsion_points(n).unwrap();
            for s in &tors {
                assert_eq!(c.weil_pairing(s, s, n).unwrap(), 1);
                for t in &tors {
                    let st = c.weil_pairing(s, t, n).unwrap();
                    let ts = c.weil_pairing(t, s, n).unwrap();
                    assert_eq!(k.mul(st, ts), 1);
                }
            }
            // bilinearity in the first slot
            for s1 in tors.iter().take(6) {
                for s2 in tors.iter().take(6) {
                    let lhs = c.weil_pairing(&c.add(s1, s2), &bq, n).unwrap();
                    let rhs = k.mul(c.weil_pairing(s1, &bq, n).unwrap(), c.weil_pairing(s2, &bq, n).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
            // e(φP, φQ) = e(P, Q)^{q0}, and det of Frobenius ≡ q0 mod n
            let q0 = p;
            let lhs = c.weil_pairing(&c.frobenius(&bp, q0), &c.frobenius(&bq, q0), n).unwrap();
            assert_eq!(lhs, k.pow(z, q0 as u64));
            let m = c.frobenius_matrix(&bp, &bq, n, q0).unwrap();
            let det = (m[0][0] * m[1][1] + n * n - (m[0][1] * m[1][0]) % n) % n;
            assert_eq!(det, q0 as u64 % n);
            let a0 = FiniteCurve::new(&FiniteField::prime(p).unwrap(), a, b).unwrap().trace().unwrap();
            assert_eq!(((m[0][0] + m[1][1]) % n) as i64, a0.rem_euclid(n as i64));
        }
    }

    #[test]
    fn trivial_basis_and_missing_torsion() {
        let f = FiniteField::prime(5).unwrap();
        let c = FiniteCurve::new(&f, 0, 1).unwrap();
        assert_eq!(c.torsion_basis(1).unwrap(), (FinitePoint::Infinity, FinitePoint::Infinity));
        // #C(F_5) = 6, so E[3] ⊄ C(F_5)
        assert!(c.torsion_basis(3).is_err());
        assert!(c.torsion_basis(5).is_err());
    }

    #[test]
    fn pairing_when_every_point_is_torsion() {
        // E(F_5) = E[2] and E(F_7) = E[2]: no auxiliary point exists over the base
        for (p, a, b) in [(5u32, 1u32, 0u32), (7, 0, 6)] {
            let f = FiniteField::prime(p).unwrap();
            let c = FiniteCurve::new(&f, a, b).unwrap();
            assert_eq!(c.point_count().unwrap(), 4);
            let (bp, bq) = c.torsion_basis(2).unwrap();
            assert_eq!(c.weil_pairing(&bp, &bq, 2).unwrap(), f.from_int(-1));
        }
    }
}
