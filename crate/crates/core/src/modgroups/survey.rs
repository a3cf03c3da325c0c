use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::gamma::{gamma_charpoly_distribution, unit_order, CharpolyDistribution};
use crate::curve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::finitecurve::{frobenius_data, two_division_galois, FrobeniusData, TwoDivisionGalois};
use crate::funfield::gf::is_prime;
use crate::localred::local_reduction;

pub const MAX_SURVEY_DEGREE: usize = 4;
/// Default bound on `Σ_𝔭 #k_𝔭`, the enumeration work of a survey.
pub const DEFAULT_SURVEY_BUDGET: u64 = 200_000_000;
pub const TV_THRESHOLD: f64 = 0.15;
pub const TV_MIN_SAMPLES: usize = 200;

/// Frobenius data at every good place of degree `≤ dmax`, with the number of
/// bad places skipped.
pub fn collect_frobenius(e: &WeierstrassCurve, dmax: usize, budget: u64) -> Result<(Vec<FrobeniusData>, usize)> {
    let ctx = e.ctx();
    if dmax == 0 || dmax > MAX_SURVEY_DEGREE {
        return Err(Error::precondition(format!("Dmax must lie in 1..={MAX_SURVEY_DEGREE}")));
    }
    let q = ctx.q();
    let mut work = 0u64;
    let mut places = Vec::new();
    for d in 1..=dmax {
        let count = crate::funfield::factor::count_irreducibles(q, d as u64) + u64::from(d == 1);
        work = work.saturating_add(count.saturating_mul(q.pow(d as u32)));
        if work > budget {
            return Err(Error::ResourceCap(format!("survey over degree ≤ {dmax} needs ~{work} point evaluations")));
        }
        places.extend(ctx.places_of_degree(d));
    }
    let results: Vec<Result<Option<FrobeniusData>>> = places
        .par_iter()
        .map(|place| {
            if !local_reduction(e, place)?.kodaira.is_good() {
                return Ok(None);
            }
            frobenius_data(e, place).map(Some)
        })
        .collect();
    let mut data = Vec::new();
    let mut bad = 0;
    for r in results {
        match r? {
            Some(d) => data.push(d),
            None => bad += 1,
        }
    }
    Ok((data, bad))
}

fn check_ell(e: &WeierstrassCurve, ell: u32) -> Result<()> {
    if !is_prime(ell as u64) || ell == e.ctx().p() {
        return Err(Error::precondition("ℓ must be a prime different from p"));
    }
    Ok(())
}

/// `H_ℓ = ⟨q⟩ ⊆ F_ℓ^×` as a membership table.
fn h_table(q: u64, ell: u32) -> Vec<bool> {
    let mut h = vec![false; ell as usize];
    let mut x = 1 % ell as u64;
    for _ in 0..unit_order(q, ell as u64) {
        h[x as usize] = true;
        x = x * (q % ell as u64) % ell as u64;
    }
    h
}

/// `(a_𝔭 mod ℓ, #k_𝔭 mod ℓ)` of a Frobenius sample.
fn class_of(d: &FrobeniusData, ell: u32) -> (u32, u32) {
    (d.trace.rem_euclid(ell as i64) as u32, (d.norm % ell as u64) as u32)
}

#[derive(Clone, Debug)]
pub struct FrobeniusSurvey {
    pub ell: u32,
    pub dmax: usize,
    pub samples: usize,
    pub bad_places: usize,
    pub det_violations: usize,
    pub observed: BTreeMap<(u32, u32), u64>,
    pub outside_gamma: Vec<(u32, u32)>,
    pub missing: Vec<(u32, u32)>,
    /// Against `Γ_ℓ` conditioned on the observed determinants.
    pub tv_conditioned: f64,
    /// Against the unconditioned `Γ_ℓ` distribution.
    pub tv_unconditioned: f64,
}

impl FrobeniusSurvey {
    pub fn det_all_in_h(&self) -> bool {
        self.det_violations == 0
    }

    pub fn coverage_complete(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn subset_of_gamma(&self) -> bool {
        self.outside_gamma.is_empty()
    }

    /// `None` below the minimum sample size.
    pub fn tv_within_threshold(&self) -> Option<bool> {
        (self.samples >= TV_MIN_SAMPLES).then_some(self.tv_conditioned <= TV_THRESHOLD)
    }
}

fn tv_distance(observed: &BTreeMap<(u32, u32), u64>, n: u64, target: &BTreeMap<(u32, u32), f64>) -> f64 {
    let keys: BTreeSet<&(u32, u32)> = observed.keys().chain(target.keys()).collect();
    let total: f64 = keys
        .into_iter()
        .map(|k| {
            let emp = observed.get(k).copied().unwrap_or(0) as f64 / n as f64;
            (emp - target.get(k).copied().unwrap_or(0.0)).abs()
        })
        .sum();
    total / 2.0
}

/// The survey statistics for a list of samples.
pub fn summarize(
    samples: &[FrobeniusData],
    bad_places: usize,
    q: u64,
    ell: u32,
    dmax: usize,
    gamma: &CharpolyDistribution,
) -> FrobeniusSurvey {
    let h = h_table(q, ell);
    let mut observed = BTreeMap::new();
    let mut det_violations = 0;
    let mut det_counts: BTreeMap<u32, u64> = BTreeMap::new();
    for d in samples {
        let (t, det) = class_of(d, ell);
        if !h[det as usize] {
            det_violations += 1;
        }
        *observed.entry((t, det)).or_insert(0u64) += 1;
        *det_counts.entry(det).or_insert(0) += 1;
    }
    let outside_gamma = observed.keys().filter(|k| !gamma.counts.contains_key(k)).copied().collect();
    let missing = gamma.counts.keys().filter(|k| !observed.contains_key(k)).copied().collect();
    let n = samples.len() as u64;
    let unconditioned: BTreeMap<(u32, u32), f64> =
        gamma.counts.iter().map(|(&k, &c)| (k, c as f64 / gamma.total as f64)).collect();
    let conditioned: BTreeMap<(u32, u32), f64> = gamma
        .counts
        .iter()
        .filter_map(|(&(t, det), &c)| {
            let weight = *det_counts.get(&det)? as f64 / n as f64;
            Some(((t, det), weight * c as f64 / gamma.det_mass(det) as f64))
        })
        .collect();
    let (tv_conditioned, tv_unconditioned) = if n == 0 {
        (1.0, 1.0)
    } else {
        (tv_distance(&observed, n, &conditioned), tv_distance(&observed, n, &unconditioned))
    };
    FrobeniusSurvey {
        ell,
        dmax,
        samples: samples.len(),
        bad_places,
        det_violations,
        observed,
        outside_gamma,
        missing,
        tv_conditioned,
        tv_unconditioned,
    }
}

pub fn frobenius_survey(e: &WeierstrassCurve, ell: u32, dmax: usize, budget: u64) -> Result<FrobeniusSurvey> {
    check_ell(e, ell)?;
    if e.is_isotrivial() {
        return Err(Error::precondition("isotrivial curve: use the isotriviality contrast instead"));
    }
    let q = e.ctx().q();
    let gamma = gamma_charpoly_distribution(q, ell)?;
    let (samples, bad) = collect_frobenius(e, dmax, budget)?;
    Ok(summarize(&samples, bad, q, ell, dmax, &gamma))
}

#[derive(Clone, Debug)]
pub struct IsotrivialContrast {
    pub two_division: TwoDivisionGalois,
    pub survey: FrobeniusSurvey,
    pub gamma_support: usize,
}

impl IsotrivialContrast {
    pub fn abelian_two_division(&self) -> bool {
        self.two_division != TwoDivisionGalois::S3
    }

    pub fn support_strictly_smaller(&self) -> bool {
        self.survey.observed.len() < self.gamma_support
    }
}

pub fn isotriviality_contrast(e: &WeierstrassCurve, ell: u32, dmax: usize, budget: u64) -> Result<IsotrivialContrast> {
    check_ell(e, ell)?;
    if !e.is_isotrivial() {
        return Err(Error::precondition("curve is not isotrivial"));
    }
    let q = e.ctx().q();
    let gamma = gamma_charpoly_distribution(q, ell)?;
    let (samples, bad) = collect_frobenius(e, dmax, budget)?;
    Ok(IsotrivialContrast {
        two_division: two_division_galois(e)?,
        survey: summarize(&samples, bad, q, ell, dmax, &gamma),
        gamma_support: gamma.counts.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funfield::{parse_ratfunc, FieldContext};

    fn curve(p: u32, a: &str, b: &str) -> WeierstrassCurve {
        let c = FieldContext::new(p, 1).unwrap();
        WeierstrassCurve::new(&c, parse_ratfunc(&c, a).unwrap(), parse_ratfunc(&c, b).unwrap()).unwrap()
    }

    #[test]
    fn catalog_survey_ell_3() {
        let e = curve(5, "1", "T");
        let s = frobenius_survey(&e, 3, 4, DEFAULT_SURVEY_BUDGET).unwrap();
        assert!(s.det_all_in_h());
        assert!(s.subset_of_gamma());
        assert!(s.samples >= 200);
        // 1 + 5 + 10 + 40 + 150 places, two of them bad
        assert_eq!(s.samples + s.bad_places, 206);
        assert_eq!(s.bad_places, 2);
        assert!((0.0..=1.0).contains(&s.tv_conditioned));
        assert!((0.0..=1.0).contains(&s.tv_unconditioned));
    }

    #[test]
    fn isotrivial_routed() {
        let e = curve(7, "0", "1");
        assert!(frobenius_survey(&e, 5, 2, DEFAULT_SURVEY_BUDGET).is_err());
        let c = isotriviality_contrast(&e, 5, 3, DEFAULT_SURVEY_BUDGET).unwrap();
        assert!(c.abelian_two_division());
        assert!(c.support_strictly_smaller());
        assert!(c.survey.det_all_in_h());
        assert!(isotriviality_contrast(&curve(5, "1", "T"), 3, 1, DEFAULT_SURVEY_BUDGET).is_err());
    }

    #[test]
    fn preconditions() {
        let e = curve(5, "1", "T");
        assert!(frobenius_survey(&e, 5, 2, DEFAULT_SURVEY_BUDGET).is_err());
        assert!(frobenius_survey(&e, 3, 5, DEFAULT_SURVEY_BUDGET).is_err());
        assert!(matches!(frobenius_survey(&e, 3, 4, 1000), Err(Error::ResourceCap(_))));
    }
}
