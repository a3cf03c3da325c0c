use super::{global_data, local_reduction};
use crate::curve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::funfield::{Place, Poly, RationalFunction};

/// A twist class `d mod (F^×)²`, `d = c · Π_{𝔭 ∈ S finite} π_𝔭^{e_𝔭}`, with
/// `c ∈ {1, ε}` for a fixed non-square constant `ε` and `e_𝔭 ∈ {0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistClass {
    pub d: RationalFunction,
    pub nonsquare_constant: bool,
    pub primes: Vec<Poly>,
}

/// Twist classes `d` supported on `S` for which `E_d` has good reduction at
/// every place outside `S`. `S` must contain every bad place of `E`.
pub fn enumerate_good_twists(e: &WeierstrassCurve, s: &[Place]) -> Result<Vec<TwistClass>> {
    let ctx = e.ctx();
    let g = global_data(e)?;
    if let Some(missing) = g.bad_places.iter().find(|d| !s.contains(&d.place)) {
        return Err(Error::precondition(format!("S is missing the bad place {}", ctx.fmt_place(&missing.place))));
    }
    let mut primes: Vec<Poly> = s
        .iter()
        .filter_map(|p| match p {
            Place::Finite(g) => Some(g.clone()),
            Place::Infinity => None,
        })
        .collect();
    primes.sort();
    primes.dedup();
    if primes.len() > 20 {
        return Err(Error::ResourceCap(format!("2^{} twist candidates", primes.len() + 1)));
    }
    let fq = ctx.fq();
    let eps = (1..fq.size()).find(|&c| !fq.is_square(c)).expect("odd q has non-squares");

    let mut out = Vec::new();
    for mask in 0u64..(1 << primes.len()) {
        for nonsquare in [false, true] {
            let chosen: Vec<Poly> =
                primes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, g)| g.clone()).collect();
            let mut d = chosen.iter().fold(Poly::one(), |acc, g| acc.mul(g, fq));
            if nonsquare {
                d = d.scale(eps, fq);
            }
            let d = RationalFunction::from_poly(d);
            let twisted = e.quadratic_twist(&d)?;
            if good_outside(&twisted, s)? {
                out.push(TwistClass { d, nonsquare_constant: nonsquare, primes: chosen });
            }
        }
    }
    Ok(out)
}

fn good_outside(e: &WeierstrassCurve, s: &[Place]) -> Result<bool> {
    for place in super::candidate_bad_places(e)? {
        if !s.contains(&place) && !local_reduction(e, &place)?.kodaira.is_good() {
            return Ok(false);
        }
    }
    Ok(true)
}
