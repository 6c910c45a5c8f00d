//! Monomial orders on multidegrees and domain predicates.
//!
//! A multidegree is a `&[usize]` of fixed arity. Orders are total,
//! addition-compatible well-orderings with the zero vector as minimum.
//! Lex and grlex are provided directly; arbitrary integer weight-matrix
//! orders fall back to lex on ties so totality always holds.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OrderError {
    #[error("arity mismatch: order has arity {expected}, multidegree has {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("weight matrix is empty or has rows of the wrong length")]
    BadWeights,
    #[error("weight order is not a monomial order: column {0} has a negative topmost weight")]
    NotWellOrdered(usize),
    #[error("ab-order predicates require arity 2, got {0}")]
    NotBivariate(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderKind {
    Lex,
    GrLex,
    Weights(Vec<Vec<i64>>),
}

/// A monomial order of fixed arity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonomialOrder {
    kind: OrderKind,
    arity: usize,
}

fn cmp_lex(a: &[usize], b: &[usize]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            non_eq => return non_eq,
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn lex(arity: usize) -> Self {
        MonomialOrder { kind: OrderKind::Lex, arity }
    }

    pub fn grlex(arity: usize) -> Self {
        MonomialOrder { kind: OrderKind::GrLex, arity }
    }

    /// Weight-matrix order: compare by each integer weight row in turn,
    /// final fallback lex. The topmost nonzero weight of every column must
    /// be positive so that the zero vector stays minimal.
    pub fn weights(rows: Vec<Vec<i64>>, arity: usize) -> Result<Self, OrderError> {
        if rows.is_empty() || rows.iter().any(|r| r.len() != arity) {
            return Err(OrderError::BadWeights);
        }
        for col in 0..arity {
            if let Some(row) = rows.iter().find(|r| r[col] != 0) {
                if row[col] < 0 {
                    return Err(OrderError::NotWellOrdered(col));
                }
            }
        }
        Ok(MonomialOrder { kind: OrderKind::Weights(rows), arity })
    }

    pub fn from_kind(kind: &OrderKind, arity: usize) -> Result<Self, OrderError> {
        match kind {
            OrderKind::Lex => Ok(Self::lex(arity)),
            OrderKind::GrLex => Ok(Self::grlex(arity)),
            OrderKind::Weights(rows) => Self::weights(rows.clone(), arity),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn compare(&self, a: &[usize], b: &[usize]) -> Result<Ordering, OrderError> {
        if a.len() != self.arity {
            return Err(OrderError::ArityMismatch { expected: self.arity, got: a.len() });
        }
        if b.len() != self.arity {
            return Err(OrderError::ArityMismatch { expected: self.arity, got: b.len() });
        }
        Ok(self.cmp(a, b))
    }

    /// Infallible comparison; multidegrees must have the order's arity.
    pub fn cmp(&self, a: &[usize], b: &[usize]) -> Ordering {
        debug_assert_eq!(a.len(), self.arity);
        debug_assert_eq!(b.len(), self.arity);
        match &self.kind {
            OrderKind::Lex => cmp_lex(a, b),
            OrderKind::GrLex => {
                let da: usize = a.iter().sum();
                let db: usize = b.iter().sum();
                da.cmp(&db).then_with(|| cmp_lex(a, b))
            }
            OrderKind::Weights(rows) => {
                for row in rows {
                    let wa: i64 = row.iter().zip(a).map(|(w, &n)| w * n as i64).sum();
                    let wb: i64 = row.iter().zip(b).map(|(w, &n)| w * n as i64).sum();
                    match wa.cmp(&wb) {
                        Ordering::Equal => continue,
                        non_eq => return non_eq,
                    }
                }
                cmp_lex(a, b)
            }
        }
    }

    pub fn le(&self, a: &[usize], b: &[usize]) -> bool {
        self.cmp(a, b) != Ordering::Greater
    }

    /// The order-maximal element of a nonempty set.
    pub fn max<'a, I: IntoIterator<Item = &'a Vec<usize>>>(&self, set: I) -> Option<&'a Vec<usize>> {
        set.into_iter().reduce(|a, b| if self.cmp(a, b) == Ordering::Less { b } else { a })
    }
}

/// True iff the finite set is closed under coordinatewise decrease.
///
/// Closure under single decrements is equivalent to the full condition.
pub fn is_lower_set(domain: &BTreeSet<Vec<usize>>) -> bool {
    for alpha in domain {
        for i in 0..alpha.len() {
            if alpha[i] > 0 {
                let mut down = alpha.clone();
                down[i] -= 1;
                if !domain.contains(&down) {
                    return false;
                }
            }
        }
    }
    true
}

/// The partial order of Bernard et al. on pairs, kept for comparison with
/// the monomial-order definitions. `(m,n)` is below `(i,j)` iff
/// `m + a n <= i + a j` and `b m + n <= b i + j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbOrder {
    pub a: f64,
    pub b: f64,
}

const AB_EPS: f64 = 1e-9;

impl AbOrder {
    pub fn new(a: f64, b: f64) -> Option<Self> {
        if (0.0..=1.0).contains(&a) && (0.0..1.0).contains(&b) {
            Some(AbOrder { a, b })
        } else {
            None
        }
    }

    pub fn le(&self, mn: (usize, usize), ij: (usize, usize)) -> bool {
        let (m, n) = (mn.0 as f64, mn.1 as f64);
        let (i, j) = (ij.0 as f64, ij.1 as f64);
        m + self.a * n <= i + self.a * j + AB_EPS && self.b * m + n <= self.b * i + j + AB_EPS
    }

    /// Downward closure of a bivariate domain under this partial order.
    pub fn compatible_domain(&self, domain: &BTreeSet<Vec<usize>>) -> Result<bool, OrderError> {
        for p in domain {
            if p.len() != 2 {
                return Err(OrderError::NotBivariate(p.len()));
            }
        }
        // Candidate lower points live in the bounding box of the domain.
        let max0 = domain.iter().map(|p| p[0]).max().unwrap_or(0);
        let max1 = domain.iter().map(|p| p[1]).max().unwrap_or(0);
        for p in domain {
            for m in 0..=max0 {
                for n in 0..=max1 {
                    if self.le((m, n), (p[0], p[1])) && !domain.contains(&vec![m, n]) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// True iff every monomial of the polynomial (given by its support and
    /// the flag that the degree-(i,j) coefficient is nonzero) is below (i,j).
    pub fn compatible_poly(
        &self,
        support: &BTreeSet<Vec<usize>>,
        degree: (usize, usize),
    ) -> Result<bool, OrderError> {
        for p in support {
            if p.len() != 2 {
                return Err(OrderError::NotBivariate(p.len()));
            }
        }
        if !support.contains(&vec![degree.0, degree.1]) {
            return Ok(false);
        }
        Ok(support.iter().all(|p| self.le((p[0], p[1]), degree)))
    }
}

/// Test helper: the implication `(m,n) ab-below (i,j)  =>  (n,m) grlex-below (j,i)`.
pub fn ab_implies_grlex(mn: (usize, usize), ij: (usize, usize), ab: &AbOrder) -> bool {
    if !ab.le(mn, ij) {
        return true;
    }
    let grlex = MonomialOrder::grlex(2);
    grlex.le(&[mn.1, mn.0], &[ij.1, ij.0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_examples() {
        let o = MonomialOrder::grlex(2);
        assert_eq!(o.cmp(&[0, 1], &[1, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[0, 2], &[1, 1]), Ordering::Less);
        assert_eq!(o.cmp(&[1, 1], &[1, 1]), Ordering::Equal);
    }

    #[test]
    fn lex_examples() {
        let o = MonomialOrder::lex(2);
        assert_eq!(o.cmp(&[0, 5], &[1, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[1, 0], &[0, 5]), Ordering::Greater);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let o = MonomialOrder::grlex(2);
        assert!(o.compare(&[1, 2, 3], &[0, 0]).is_err());
    }

    #[test]
    fn weight_order_matches_grlex() {
        let o = MonomialOrder::weights(vec![vec![1, 1]], 2).unwrap();
        let g = MonomialOrder::grlex(2);
        for a0 in 0..4usize {
            for a1 in 0..4usize {
                for b0 in 0..4usize {
                    for b1 in 0..4usize {
                        assert_eq!(o.cmp(&[a0, a1], &[b0, b1]), g.cmp(&[a0, a1], &[b0, b1]));
                    }
                }
            }
        }
    }

    #[test]
    fn weight_order_rejects_negative_column() {
        assert!(MonomialOrder::weights(vec![vec![-1, 1]], 2).is_err());
    }

    #[test]
    fn lower_set_examples() {
        let yes: BTreeSet<_> = [vec![0, 0], vec![1, 0], vec![0, 1]].into_iter().collect();
        assert!(is_lower_set(&yes));
        let no: BTreeSet<_> = [vec![0, 0], vec![1, 1]].into_iter().collect();
        assert!(!is_lower_set(&no));
        let dodec: BTreeSet<_> = [
            vec![0, 0],
            vec![0, 1],
            vec![0, 2],
            vec![0, 3],
            vec![1, 0],
            vec![1, 1],
        ]
        .into_iter()
        .collect();
        assert!(is_lower_set(&dodec));
    }

    #[test]
    fn ab_order_at_one_zero() {
        let ab = AbOrder::new(1.0, 0.0).unwrap();
        // (m,n) below (i,j) iff m+n <= i+j and n <= j.
        assert!(ab.le((1, 0), (1, 1)));
        assert!(!ab.le((0, 2), (1, 1)));
        // x^2 has no degree-(1,1) term, so it is not compatible of degree (1,1).
        let support: BTreeSet<_> = [vec![2, 0]].into_iter().collect();
        assert_eq!(ab.compatible_poly(&support, (1, 1)).unwrap(), false);
    }

    #[test]
    fn ab_implication_spotted() {
        let ab = AbOrder::new(1.0, 0.0).unwrap();
        for m in 0..4 {
            for n in 0..4 {
                for i in 0..4 {
                    for j in 0..4 {
                        assert!(ab_implies_grlex((m, n), (i, j), &ab));
                    }
                }
            }
        }
    }
}
