//! Multivariate polynomials with exact rational coefficients.
//!
//! Only the operations needed for the Bose-Mesner ideal appear here:
//! leading data under a monomial order, the division algorithm, and
//! S-polynomials for the Buchberger cross-check.

use std::collections::BTreeMap;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::exact::Rat;
use crate::orders::MonomialOrder;

/// Sparse polynomial, multidegree -> nonzero rational coefficient.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RatPoly {
    terms: BTreeMap<Vec<usize>, Rat>,
}

pub fn divides(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl RatPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(deg: Vec<usize>, coeff: Rat) -> Self {
        let mut p = Self::default();
        if !coeff.is_zero() {
            p.terms.insert(deg, coeff);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<usize>, Rat)>>(terms: I) -> Self {
        let mut p = Self::default();
        for (deg, coeff) in terms {
            p.add_term(deg, coeff);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rat)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.terms.keys()
    }

    pub fn coeff(&self, deg: &[usize]) -> Rat {
        self.terms.get(deg).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, deg: Vec<usize>, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(deg.clone()).or_insert_with(Rat::zero);
        *entry = &*entry + coeff;
        if entry.is_zero() {
            self.terms.remove(&deg);
        }
    }

    pub fn add_scaled(&mut self, other: &RatPoly, factor: &Rat) {
        for (deg, coeff) in &other.terms {
            self.add_term(deg.clone(), coeff * factor);
        }
    }

    /// `self * c x^deg`.
    pub fn mul_monomial(&self, deg: &[usize], coeff: &Rat) -> RatPoly {
        let mut p = RatPoly::default();
        for (d, c) in &self.terms {
            let shifted: Vec<usize> = d.iter().zip(deg).map(|(a, b)| a + b).collect();
            p.terms.insert(shifted, c * coeff);
        }
        p
    }

    /// Multidegree under the order; `None` for the zero polynomial.
    pub fn multidegree(&self, order: &MonomialOrder) -> Option<&Vec<usize>> {
        order.max(self.terms.keys())
    }

    pub fn leading_coeff(&self, order: &MonomialOrder) -> Option<Rat> {
        self.multidegree(order).map(|d| self.terms[d].clone())
    }

    /// Remainder on division by the set `gens`: no term of the remainder is
    /// divisible by any leading monomial of `gens`.
    pub fn reduce(&self, gens: &[RatPoly], order: &MonomialOrder) -> RatPoly {
        let lead: Vec<(Vec<usize>, Rat)> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                let d = g.multidegree(order).unwrap().clone();
                let c = g.coeff(&d);
                (d, c)
            })
            .collect();
        let live: Vec<&RatPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
        let mut work = self.clone();
        let mut remainder = RatPoly::default();
        while let Some(deg) = work.multidegree(order).cloned() {
            let coeff = work.coeff(&deg);
            match lead.iter().position(|(ld, _)| divides(ld, &deg)) {
                Some(t) => {
                    let (ld, lc) = &lead[t];
                    let shift: Vec<usize> = deg.iter().zip(ld).map(|(a, b)| a - b).collect();
                    let factor = -(&coeff / lc);
                    let sub = live[t].mul_monomial(&shift, &factor);
                    work.add_scaled(&sub, &Rat::from_integer(1.into()));
                }
                None => {
                    remainder.add_term(deg.clone(), coeff.clone());
                    work.add_term(deg, -coeff);
                }
            }
        }
        remainder
    }

    /// The S-polynomial of two nonzero polynomials.
    pub fn s_poly(f: &RatPoly, g: &RatPoly, order: &MonomialOrder) -> RatPoly {
        let df = f.multidegree(order).unwrap().clone();
        let dg = g.multidegree(order).unwrap().clone();
        let lcm: Vec<usize> = df.iter().zip(&dg).map(|(a, b)| *a.max(b)).collect();
        let sf: Vec<usize> = lcm.iter().zip(&df).map(|(a, b)| a - b).collect();
        let sg: Vec<usize> = lcm.iter().zip(&dg).map(|(a, b)| a - b).collect();
        let cf = f.coeff(&df);
        let cg = g.coeff(&dg);
        let mut s = f.mul_monomial(&sf, &(Rat::from_integer(1.into()) / cf));
        let t = g.mul_monomial(&sg, &(Rat::from_integer(1.into()) / cg));
        s.add_scaled(&t, &Rat::from_integer((-1).into()));
        s
    }
}

/// Checks the Buchberger criterion: every S-polynomial of the set reduces
/// to zero, i.e. the set is a Gröbner basis of the ideal it generates.
pub fn is_groebner_basis(gens: &[RatPoly], order: &MonomialOrder) -> bool {
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            if gens[i].is_zero() || gens[j].is_zero() {
                continue;
            }
            let s = RatPoly::s_poly(&gens[i], &gens[j], order);
            if !s.reduce(gens, order).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Polynomial with floating coefficients, used on the Krein side where the
/// spectra are irrational.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FloatPoly {
    pub terms: BTreeMap<Vec<usize>, f64>,
}

impl FloatPoly {
    pub fn coeff(&self, deg: &[usize]) -> f64 {
        self.terms.get(deg).copied().unwrap_or(0.0)
    }
}

/// JSON form of one polynomial term, exact fraction.
#[derive(Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub deg: Vec<usize>,
    pub num: i64,
    pub den: i64,
}

impl RatPoly {
    pub fn to_json_terms(&self) -> Option<Vec<TermJson>> {
        self.terms
            .iter()
            .map(|(deg, c)| {
                Some(TermJson {
                    deg: deg.clone(),
                    num: i64::try_from(c.numer()).ok()?,
                    den: i64::try_from(c.denom()).ok()?,
                })
            })
            .collect()
    }
}
