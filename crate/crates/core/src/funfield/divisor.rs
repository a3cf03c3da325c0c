use std::collections::BTreeMap;

use super::poly::Poly;

/// A place of `F_q(T)`: a monic irreducible polynomial, or the pole of `T`.
/// Ordered by degree then coefficients, with `∞` last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    /// Degree of the residue field over `F_q`.
    pub fn degree(&self) -> u64 {
        match self {
            Place::Infinity => 1,
            Place::Finite(g) => g.deg() as u64,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }
}

/// A finite formal sum of places with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_at(&mut self, place: Place, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(place.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&place);
        }
    }

    pub fn get(&self, place: &Place) -> i64 {
        self.coeffs.get(place).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.coeffs.iter().map(|(p, &c)| (p, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.coeffs.keys()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.iter().map(|(p, c)| c * p.degree() as i64).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c > 0)
    }

    pub fn positive_part(&self) -> Divisor {
        Divisor { coeffs: self.coeffs.iter().filter(|(_, &c)| c > 0).map(|(p, &c)| (p.clone(), c)).collect() }
    }

    /// The negative part, with coefficients negated (so it is effective).
    pub fn negative_part(&self) -> Divisor {
        Divisor { coeffs: self.coeffs.iter().filter(|(_, &c)| c < 0).map(|(p, &c)| (p.clone(), -c)).collect() }
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, c) in other.iter() {
            out.add_at(p.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Divisor {
        Divisor { coeffs: self.coeffs.iter().map(|(p, &c)| (p.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.neg())
    }
}

impl FromIterator<(Place, i64)> for Divisor {
    fn from_iter<I: IntoIterator<Item = (Place, i64)>>(iter: I) -> Self {
        let mut d = Divisor::zero();
        for (p, c) in iter {
            d.add_at(p, c);
        }
        d
    }
}
