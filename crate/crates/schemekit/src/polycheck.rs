//! Multivariate P- and Q-polynomial detection.
//!
//! A labeling assigns a degree tuple to every relation (or eigenspace).
//! `check_p` / `check_q` test the three equivalent conditions of the
//! polynomial property against a monomial order; `infer_labeling_*` grow a
//! labeling greedily from a choice of generators, and `search_p` /
//! `search_q` enumerate generator tuples.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{rat_int, Echelon};
use crate::orders::{is_lower_set, MonomialOrder};
use crate::scheme::IntersectionTensor;
use crate::spectrum::Spectrum;

#[derive(Debug, Error)]
pub enum PolyCheckError {
    #[error("labeling arity {labeling} does not match order arity {order}")]
    ArityMismatch { labeling: usize, order: usize },
    #[error("labeling is not a bijection onto the {0} relation indices")]
    NotBijective(usize),
    #[error("labeling tuple {0:?} has wrong length")]
    BadTuple(String),
    #[error("origin tuple must map to the identity index {0}")]
    OriginMismatch(usize),
    #[error("generator axis {0} has no tuple e_{0} in the domain")]
    MissingGenerator(usize),
    #[error("generators must be distinct non-identity indices, got {0:?}")]
    BadGenerators(Vec<usize>),
    #[error("ambiguous labeling at {gamma:?}: {count} unlabeled indices in one product")]
    AmbiguousLabeling { gamma: Vec<usize>, count: usize },
    #[error("labeling stalled with {labeled} of {total} indices labeled")]
    IncompleteLabeling { labeled: usize, total: usize },
    #[error(transparent)]
    Order(#[from] crate::orders::OrderError),
}

/// Bijection between degree tuples in `N^ell` and relation (or eigenspace)
/// indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    ell: usize,
    map: BTreeMap<Vec<usize>, usize>,
    inv: Vec<Vec<usize>>,
}

impl Labeling {
    pub fn from_pairs(
        ell: usize,
        pairs: impl IntoIterator<Item = (Vec<usize>, usize)>,
    ) -> Result<Self, PolyCheckError> {
        let mut map = BTreeMap::new();
        for (alpha, idx) in pairs {
            if alpha.len() != ell {
                return Err(PolyCheckError::BadTuple(format!("{alpha:?}")));
            }
            map.insert(alpha, idx);
        }
        let n = map.len();
        let mut inv = vec![None; n];
        for (alpha, &idx) in &map {
            if idx >= n || inv[idx].is_some() {
                return Err(PolyCheckError::NotBijective(n));
            }
            inv[idx] = Some(alpha.clone());
        }
        let inv = inv.into_iter().map(Option::unwrap).collect();
        Ok(Labeling { ell, map, inv })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn len(&self) -> usize {
        self.inv.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<Vec<usize>> {
        self.map.keys().cloned().collect()
    }

    pub fn index_of(&self, alpha: &[usize]) -> Option<usize> {
        self.map.get(alpha).copied()
    }

    pub fn alpha_of(&self, idx: usize) -> &[usize] {
        &self.inv[idx]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Vec<usize>, usize)> {
        self.map.iter().map(|(a, &i)| (a, i))
    }

    /// Index assigned to the generator tuple `e_axis`, if present.
    pub fn generator(&self, axis: usize) -> Option<usize> {
        let mut e = vec![0; self.ell];
        e[axis] = 1;
        self.index_of(&e)
    }

    pub fn to_json(&self) -> LabelingJson {
        LabelingJson {
            ell: self.ell,
            map: self.map.iter().map(|(a, &i)| (a.clone(), i)).collect(),
        }
    }

    pub fn from_json(json: &LabelingJson) -> Result<Self, PolyCheckError> {
        Labeling::from_pairs(json.ell, json.map.iter().cloned())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabelingJson {
    pub ell: usize,
    pub map: Vec<(Vec<usize>, usize)>,
}

// --- checks ----------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub kind: String,
    pub alpha: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub verdict: bool,
    pub ell: usize,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

/// Separation factor: a "leading" structure constant must exceed the zero
/// threshold by this factor, or the verdict is considered unreliable.
pub const LEADING_SEPARATION: f64 = 1e3;

fn validate(
    labeling: &Labeling,
    order: &MonomialOrder,
    count: usize,
    identity: usize,
) -> Result<(), PolyCheckError> {
    if labeling.ell != order.arity() {
        return Err(PolyCheckError::ArityMismatch {
            labeling: labeling.ell,
            order: order.arity(),
        });
    }
    if labeling.len() != count {
        return Err(PolyCheckError::NotBijective(count));
    }
    let origin = vec![0; labeling.ell];
    if labeling.index_of(&origin) != Some(identity) {
        return Err(PolyCheckError::OriginMismatch(identity));
    }
    for axis in 0..labeling.ell {
        if labeling.generator(axis).is_none() {
            return Err(PolyCheckError::MissingGenerator(axis));
        }
    }
    Ok(())
}

fn run_check(
    labeling: &Labeling,
    order: &MonomialOrder,
    count: usize,
    identity: usize,
    // structure constant c^beta_{g_axis, alpha}, with a flag whether it is
    // decisively nonzero (above the separation threshold)
    constant: impl Fn(usize, usize, usize) -> (f64, bool),
    zero: impl Fn(f64) -> bool,
) -> Result<CheckReport, PolyCheckError> {
    validate(labeling, order, count, identity)?;
    let ell = labeling.ell;
    let mut violations = Vec::new();
    let mut checked = 0;
    let domain = labeling.domain();
    if !is_lower_set(&domain) {
        violations.push(Violation {
            kind: "not-lower-set".into(),
            alpha: vec![],
            axis: None,
            beta: None,
            value: None,
        });
    }
    for axis in 0..ell {
        let g = labeling.generator(axis).unwrap();
        for (alpha, a_idx) in labeling.pairs() {
            let mut up = alpha.clone();
            up[axis] += 1;
            // (b): every product term stays at or below alpha + e_axis.
            for b_idx in 0..count {
                let (v, _) = constant(b_idx, g, a_idx);
                checked += 1;
                if !zero(v) {
                    let beta = labeling.alpha_of(b_idx);
                    if !order.le(beta, &up) {
                        violations.push(Violation {
                            kind: "upper-support".into(),
                            alpha: alpha.clone(),
                            axis: Some(axis),
                            beta: Some(beta.to_vec()),
                            value: Some(v),
                        });
                    }
                }
            }
            // (c): if alpha + e_axis is in the domain, its coefficient leads.
            if let Some(up_idx) = labeling.index_of(&up) {
                let (v, decisive) = constant(up_idx, g, a_idx);
                checked += 1;
                if zero(v) {
                    violations.push(Violation {
                        kind: "leading-zero".into(),
                        alpha: alpha.clone(),
                        axis: Some(axis),
                        beta: Some(up.clone()),
                        value: Some(v),
                    });
                } else if !decisive {
                    violations.push(Violation {
                        kind: "marginal-leading".into(),
                        alpha: alpha.clone(),
                        axis: Some(axis),
                        beta: Some(up.clone()),
                        value: Some(v),
                    });
                }
            }
        }
    }
    Ok(CheckReport {
        verdict: violations.is_empty(),
        ell,
        checked,
        violations,
    })
}

/// Is the scheme `ell`-variate P-polynomial for this labeling and order?
pub fn check_p(
    tensor: &IntersectionTensor,
    labeling: &Labeling,
    order: &MonomialOrder,
) -> Result<CheckReport, PolyCheckError> {
    run_check(
        labeling,
        order,
        tensor.relation_count(),
        tensor.identity_index(),
        |k, g, a| (tensor.p(k, g, a) as f64, true),
        |v| v == 0.0,
    )
}

/// Krein-side check; eigenspace index 0 is the valency eigenspace.
pub fn check_q(
    spectrum: &Spectrum,
    labeling: &Labeling,
    order: &MonomialOrder,
) -> Result<CheckReport, PolyCheckError> {
    let threshold = spectrum.tol() * spectrum.krein_scale();
    run_check(
        labeling,
        order,
        spectrum.relation_count(),
        0,
        |k, g, a| {
            let v = spectrum.krein(k, g, a);
            (v, v.abs() > LEADING_SEPARATION * threshold)
        },
        |v| v.abs() <= threshold,
    )
}

// --- labeling inference ----------------------------------------------------

fn infer_labeling_with(
    count: usize,
    identity: usize,
    generators: &[usize],
    order: &MonomialOrder,
    support: impl Fn(usize, usize) -> Vec<usize>, // (gen index, relation) -> nonzero product terms
) -> Result<Labeling, PolyCheckError> {
    let ell = generators.len();
    if order.arity() != ell {
        return Err(PolyCheckError::ArityMismatch { labeling: ell, order: order.arity() });
    }
    let distinct: BTreeSet<usize> = generators.iter().copied().collect();
    if distinct.len() != ell || distinct.contains(&identity) || distinct.iter().any(|&g| g >= count)
    {
        return Err(PolyCheckError::BadGenerators(generators.to_vec()));
    }
    let mut map: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut labeled = vec![false; count];
    map.insert(vec![0; ell], identity);
    labeled[identity] = true;
    for (axis, &g) in generators.iter().enumerate() {
        let mut e = vec![0; ell];
        e[axis] = 1;
        map.insert(e, g);
        labeled[g] = true;
    }
    let mut exterior: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue: BTreeSet<Vec<usize>> = BTreeSet::new();
    for alpha in map.keys() {
        for axis in 0..ell {
            let mut up = alpha.clone();
            up[axis] += 1;
            if !map.contains_key(&up) {
                queue.insert(up);
            }
        }
    }
    while let Some(gamma) = queue.iter().min_by(|a, b| order.cmp(a, b)).cloned() {
        queue.remove(&gamma);
        if map.contains_key(&gamma) || exterior.contains(&gamma) {
            continue;
        }
        // Find a labeled parent alpha with gamma = alpha + e_axis.
        let parent = (0..ell).find_map(|axis| {
            if gamma[axis] == 0 {
                return None;
            }
            let mut down = gamma.clone();
            down[axis] -= 1;
            map.get(&down).map(|&idx| (axis, idx))
        });
        let Some((axis, a_idx)) = parent else {
            continue;
        };
        let fresh: Vec<usize> = support(axis, a_idx)
            .into_iter()
            .filter(|&k| !labeled[k])
            .collect();
        match fresh.len() {
            0 => {
                exterior.insert(gamma);
            }
            1 => {
                let k = fresh[0];
                labeled[k] = true;
                for ax in 0..ell {
                    let mut up = gamma.clone();
                    up[ax] += 1;
                    queue.insert(up);
                }
                map.insert(gamma, k);
            }
            n => {
                return Err(PolyCheckError::AmbiguousLabeling { gamma, count: n });
            }
        }
    }
    let total_labeled = labeled.iter().filter(|&&b| b).count();
    if total_labeled != count {
        return Err(PolyCheckError::IncompleteLabeling { labeled: total_labeled, total: count });
    }
    Labeling::from_pairs(ell, map)
}

/// Grow a P-labeling from the generator relations `generators`, one per
/// variable. The result satisfies no check by construction; run [`check_p`].
pub fn infer_labeling_p(
    tensor: &IntersectionTensor,
    generators: &[usize],
    order: &MonomialOrder,
) -> Result<Labeling, PolyCheckError> {
    infer_labeling_with(
        tensor.relation_count(),
        tensor.identity_index(),
        generators,
        order,
        |axis, a| {
            (0..tensor.relation_count())
                .filter(|&k| tensor.p(k, generators[axis], a) != 0)
                .collect()
        },
    )
}

/// Krein-side labeling inference from generator eigenspaces.
pub fn infer_labeling_q(
    spectrum: &Spectrum,
    generators: &[usize],
    order: &MonomialOrder,
) -> Result<Labeling, PolyCheckError> {
    let threshold = spectrum.tol() * spectrum.krein_scale();
    infer_labeling_with(spectrum.relation_count(), 0, generators, order, |axis, a| {
        (0..spectrum.relation_count())
            .filter(|&k| spectrum.krein(k, generators[axis], a).abs() > threshold)
            .collect()
    })
}

// --- generated subalgebra dimension ----------------------------------------

/// Exact dimension of the unital subalgebra of the Bose-Mesner algebra
/// generated by the adjacency classes in `gens`, computed in the regular
/// representation over the rationals.
pub fn subalgebra_dimension_p(tensor: &IntersectionTensor, gens: &[usize]) -> usize {
    let c = tensor.relation_count();
    let gen_mats: Vec<Vec<Vec<num::BigInt>>> = gens
        .iter()
        .map(|&g| {
            tensor
                .regular_matrix(g)
                .into_iter()
                .map(|row| row.into_iter().map(num::BigInt::from).collect())
                .collect()
        })
        .collect();
    let mut ech = Echelon::new();
    let mut frontier: Vec<Vec<Vec<num::BigInt>>> = Vec::new();
    let ident: Vec<Vec<num::BigInt>> = (0..c)
        .map(|i| (0..c).map(|j| num::BigInt::from(i64::from(i == j))).collect())
        .collect();
    for m in std::iter::once(&ident).chain(gen_mats.iter()) {
        if ech.insert(flatten(m)) {
            frontier.push(m.clone());
        }
    }
    while let Some(m) = frontier.pop() {
        if ech.rank() == c {
            break;
        }
        for g in &gen_mats {
            let prod = mat_mul(&m, g);
            if ech.insert(flatten(&prod)) {
                frontier.push(prod);
            }
        }
    }
    ech.rank()
}

/// Numerical analogue on the Krein side, with a relative rank tolerance.
pub fn subalgebra_dimension_q(spectrum: &Spectrum, gens: &[usize], rank_tol: f64) -> usize {
    let c = spectrum.relation_count();
    let gen_mats: Vec<Vec<f64>> = gens
        .iter()
        .map(|&g| {
            let mut m = vec![0.0; c * c];
            for k in 0..c {
                for i in 0..c {
                    m[k * c + i] = spectrum.krein(k, g, i);
                }
            }
            m
        })
        .collect();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut frontier: Vec<Vec<f64>> = Vec::new();
    let mut ident = vec![0.0; c * c];
    for i in 0..c {
        ident[i * c + i] = 1.0;
    }
    for m in std::iter::once(ident).chain(gen_mats.iter().cloned()) {
        if gram_insert(&mut basis, &m, rank_tol) {
            frontier.push(m);
        }
    }
    while let Some(m) = frontier.pop() {
        if basis.len() >= c {
            break;
        }
        for g in &gen_mats {
            let prod = mat_mul_f64(&m, g, c);
            if gram_insert(&mut basis, &prod, rank_tol) {
                frontier.push(prod);
            }
        }
    }
    basis.len().min(c)
}

fn flatten(m: &[Vec<num::BigInt>]) -> Vec<BigRational> {
    m.iter().flatten().map(rat_int).collect()
}

fn mat_mul(a: &[Vec<num::BigInt>], b: &[Vec<num::BigInt>]) -> Vec<Vec<num::BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn mat_mul_f64(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

fn gram_insert(basis: &mut Vec<Vec<f64>>, v: &[f64], rank_tol: f64) -> bool {
    let norm = |x: &[f64]| x.iter().map(|a| a * a).sum::<f64>().sqrt();
    let original = norm(v);
    if original == 0.0 {
        return false;
    }
    let mut w = v.to_vec();
    for _ in 0..2 {
        for b in basis.iter() {
            let dot: f64 = w.iter().zip(b).map(|(a, c)| a * c).sum();
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= dot * bi;
            }
        }
    }
    let residual = norm(&w);
    if residual > rank_tol * original {
        let inv = 1.0 / residual;
        for wi in w.iter_mut() {
            *wi *= inv;
        }
        basis.push(w);
        true
    } else {
        false
    }
}

// --- search ----------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SearchHit {
    pub generators: Vec<usize>,
    pub labeling: Labeling,
}

fn search_with(
    count: usize,
    identity: usize,
    ell: usize,
    dimension: impl Fn(&[usize]) -> usize,
    try_gens: impl Fn(&[usize]) -> Option<Labeling>,
) -> Vec<SearchHit> {
    let mut hits = Vec::new();
    let others: Vec<usize> = (0..count).filter(|&i| i != identity).collect();
    for combo in others.iter().copied().combinations(ell) {
        if dimension(&combo) != count {
            continue;
        }
        for perm in combo.iter().copied().permutations(ell) {
            if let Some(labeling) = try_gens(&perm) {
                hits.push(SearchHit { generators: perm, labeling });
            }
        }
    }
    hits
}

/// All ordered generator tuples of length `ell` that make the scheme
/// P-polynomial for `order`. Tuples whose generated subalgebra is a proper
/// subalgebra are pruned before labeling is attempted.
pub fn search_p(tensor: &IntersectionTensor, ell: usize, order: &MonomialOrder) -> Vec<SearchHit> {
    search_with(
        tensor.relation_count(),
        tensor.identity_index(),
        ell,
        |gens| subalgebra_dimension_p(tensor, gens),
        |gens| {
            let labeling = infer_labeling_p(tensor, gens, order).ok()?;
            let report = check_p(tensor, &labeling, order).ok()?;
            report.verdict.then_some(labeling)
        },
    )
}

pub fn search_q(spectrum: &Spectrum, ell: usize, order: &MonomialOrder) -> Vec<SearchHit> {
    search_with(
        spectrum.relation_count(),
        0,
        ell,
        |gens| subalgebra_dimension_q(spectrum, gens, 1e-6),
        |gens| {
            let labeling = infer_labeling_q(spectrum, gens, order).ok()?;
            let report = check_q(spectrum, &labeling, order).ok()?;
            report.verdict.then_some(labeling)
        },
    )
}

/// Smallest `ell` for which the P-side search succeeds, with the witnesses.
pub fn essential_variate_p(
    tensor: &IntersectionTensor,
    order_for: impl Fn(usize) -> MonomialOrder,
) -> Option<(usize, Vec<SearchHit>)> {
    let d = tensor.class_count();
    (1..=d).find_map(|ell| {
        let hits = search_p(tensor, ell, &order_for(ell));
        (!hits.is_empty()).then_some((ell, hits))
    })
}

pub fn essential_variate_q(
    spectrum: &Spectrum,
    order_for: impl Fn(usize) -> MonomialOrder,
) -> Option<(usize, Vec<SearchHit>)> {
    let d = spectrum.relation_count().saturating_sub(1);
    (1..=d).find_map(|ell| {
        let hits = search_q(spectrum, ell, &order_for(ell));
        (!hits.is_empty()).then_some((ell, hits))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::RelationScheme;

    fn cycle(n: usize) -> RelationScheme {
        let m: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let diff = (x as i64 - y as i64).rem_euclid(n as i64) as usize;
                        diff.min(n - diff)
                    })
                    .collect()
            })
            .collect();
        RelationScheme::from_relation_matrix(n, &m).unwrap()
    }

    #[test]
    fn labeling_round_trip() {
        let l = Labeling::from_pairs(1, vec![(vec![0], 0), (vec![1], 1), (vec![2], 2)]).unwrap();
        let j = l.to_json();
        assert_eq!(Labeling::from_json(&j).unwrap(), l);
        assert_eq!(l.generator(0), Some(1));
    }

    #[test]
    fn labeling_rejects_non_bijection() {
        assert!(Labeling::from_pairs(1, vec![(vec![0], 0), (vec![1], 0)]).is_err());
    }

    #[test]
    fn pentagon_univariate_p() {
        let s = cycle(5);
        let t = s.intersection_tensor().unwrap();
        let order = MonomialOrder::lex(1);
        let labeling = infer_labeling_p(&t, &[1], &order).unwrap();
        assert_eq!(labeling.index_of(&[2]), Some(2));
        let report = check_p(&t, &labeling, &order).unwrap();
        assert!(report.verdict);
    }

    #[test]
    fn pentagon_search_and_essential_variate() {
        let s = cycle(5);
        let t = s.intersection_tensor().unwrap();
        let hits = search_p(&t, 1, &MonomialOrder::lex(1));
        // both non-identity classes generate: distance-2 relation also works
        assert_eq!(hits.len(), 2);
        let (ell, _) = essential_variate_p(&t, MonomialOrder::lex).unwrap();
        assert_eq!(ell, 1);
    }

    #[test]
    fn pentagon_univariate_q() {
        let s = cycle(5);
        let t = s.intersection_tensor().unwrap();
        let sp = Spectrum::compute(&t, 1e-8, 7).unwrap();
        let hits = search_q(&sp, 1, &MonomialOrder::lex(1));
        assert!(!hits.is_empty());
    }

    #[test]
    fn subalgebra_dimension_full_for_generator() {
        let s = cycle(7);
        let t = s.intersection_tensor().unwrap();
        assert_eq!(subalgebra_dimension_p(&t, &[1]), 4);
    }

    #[test]
    fn bad_labeling_fails_check() {
        // H(3,2) with the antipodal class as generator: A_3^2 = I, so the
        // chain dies immediately and condition (c) fails.
        let h = crate::constructors::hamming(3, 2).unwrap();
        let t = h.scheme.intersection_tensor().unwrap();
        let l = Labeling::from_pairs(
            1,
            vec![(vec![0], 0), (vec![1], 3), (vec![2], 1), (vec![3], 2)],
        )
        .unwrap();
        let report = check_p(&t, &l, &MonomialOrder::lex(1)).unwrap();
        assert!(!report.verdict);
        assert!(report.violations.iter().any(|v| v.kind == "leading-zero"));
    }
}
