//! Scheme families: distance schemes of named graphs, Hamming/Johnson
//! variants, attenuated spaces, and the combinators (direct product,
//! composition, extension, generalized Johnson).
//!
//! Each builder enumerates the ground set explicitly, computes the relation
//! from its definitional invariant, and re-validates the axioms through
//! `RelationScheme`. Where a family carries a natural degree labeling it is
//! attached to the result. Closed-form recurrence oracles live at the end;
//! they are evaluated independently of the builders so the two can be
//! compared term by term.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::polycheck::Labeling;
use crate::scheme::{RelationScheme, SchemeError};

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("ground set of size {size} exceeds the cap {cap}")]
    BoundsExceeded { size: usize, cap: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Labeling(#[from] crate::polycheck::PolyCheckError),
}

/// A built scheme together with its natural labelings, when the family has
/// them: `labeling` assigns degree tuples to relations (P side) and
/// `q_labeling` to eigenspaces in the order produced by `Spectrum`.
pub struct Built {
    pub scheme: RelationScheme,
    pub labeling: Option<Labeling>,
    pub q_labeling: Option<Labeling>,
}

fn check_cap(size: usize) -> Result<(), BuildError> {
    let cap = crate::max_ground_set();
    if size > cap {
        return Err(BuildError::BoundsExceeded { size, cap });
    }
    Ok(())
}

/// Build a scheme from points and a symmetric-by-construction relation key:
/// distinct keys become distinct relations, ordered by key.
fn scheme_from_keys<P, K: Ord + Clone>(
    points: &[P],
    key: impl Fn(&P, &P) -> K,
) -> Result<(RelationScheme, Vec<K>), BuildError> {
    let n = points.len();
    check_cap(n)?;
    let mut keys: BTreeMap<K, usize> = BTreeMap::new();
    let mut raw = vec![vec![0usize; n]; n];
    for x in 0..n {
        for y in 0..n {
            let k = key(&points[x], &points[y]);
            keys.entry(k).or_insert(usize::MAX);
            // placeholder; indices assigned after the full key set is known
        }
    }
    for (i, v) in keys.values_mut().enumerate() {
        *v = i;
    }
    for x in 0..n {
        for y in 0..n {
            raw[x][y] = keys[&key(&points[x], &points[y])];
        }
    }
    let scheme = RelationScheme::from_relation_matrix(n, &raw)?;
    Ok((scheme, keys.into_keys().collect()))
}

fn tuple_labeling(keys: &[Vec<usize>]) -> Result<Labeling, BuildError> {
    let ell = keys.first().map_or(0, |k| k.len());
    Ok(Labeling::from_pairs(
        ell,
        keys.iter().enumerate().map(|(i, k)| (k.clone(), i)),
    )?)
}

// --- elementary families ----------------------------------------------------

pub fn complete(q: usize) -> Result<Built, BuildError> {
    if q < 2 {
        return Err(BuildError::BadParameters("complete graph needs q >= 2".into()));
    }
    let points: Vec<usize> = (0..q).collect();
    let (scheme, keys) = scheme_from_keys(&points, |&x, &y| vec![usize::from(x != y)])?;
    let labeling = tuple_labeling(&keys)?;
    Ok(Built { scheme, labeling: Some(labeling), q_labeling: None })
}

pub fn cycle(n: usize) -> Result<Built, BuildError> {
    if n < 3 {
        return Err(BuildError::BadParameters("cycle needs n >= 3".into()));
    }
    let points: Vec<usize> = (0..n).collect();
    let (scheme, keys) = scheme_from_keys(&points, |&x, &y| {
        let diff = (x as i64 - y as i64).rem_euclid(n as i64) as usize;
        vec![diff.min(n - diff)]
    })?;
    let labeling = tuple_labeling(&keys)?;
    Ok(Built { scheme, labeling: Some(labeling), q_labeling: None })
}

/// The generalized Petersen graph GP(10,2): outer 10-cycle `u_i`, inner
/// pentagram `v_i ~ v_{i+2}`, spokes `u_i ~ v_i`. Relations are graph
/// distances (diameter 5).
pub fn dodecahedron() -> Result<Built, BuildError> {
    let n = 20;
    let mut adj = vec![Vec::new(); n];
    let mut add = |a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
    };
    for i in 0..10 {
        add(i, (i + 1) % 10); // outer cycle u_i
        add(i, 10 + i); // spoke
        add(10 + i, 10 + (i + 2) % 10); // inner pentagram v_i
    }
    let dist = bfs_distances(&adj);
    let points: Vec<usize> = (0..n).collect();
    let (scheme, keys) = scheme_from_keys(&points, |&x, &y| vec![dist[x][y]])?;
    let labeling = tuple_labeling(&keys)?;
    // Bivariate Q-labeling: eigenspaces in spectral order (valency first,
    // then descending first eigenvalue) carry the degrees below.
    let q_labeling = Labeling::from_pairs(
        2,
        [
            (vec![0, 0], 0),
            (vec![0, 1], 1),
            (vec![0, 2], 2),
            (vec![1, 0], 3),
            (vec![1, 1], 4),
            (vec![0, 3], 5),
        ],
    )?;
    Ok(Built { scheme, labeling: Some(labeling), q_labeling: Some(q_labeling) })
}

fn bfs_distances(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut dist = vec![vec![usize::MAX; n]; n];
    for (s, row) in dist.iter_mut().enumerate() {
        row[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if row[y] == usize::MAX {
                    row[y] = row[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    dist
}

pub fn hamming(n: usize, q: usize) -> Result<Built, BuildError> {
    if n == 0 || q < 2 {
        return Err(BuildError::BadParameters("hamming needs n >= 1, q >= 2".into()));
    }
    let size = q.checked_pow(n as u32).ok_or_else(|| {
        BuildError::BadParameters("hamming size overflow".into())
    })?;
    check_cap(size)?;
    let points: Vec<Vec<usize>> = cartesian_power(q, n);
    let (scheme, keys) = scheme_from_keys(&points, |x, y| {
        vec![x.iter().zip(y).filter(|(a, b)| a != b).count()]
    })?;
    let labeling = tuple_labeling(&keys)?;
    Ok(Built { scheme, labeling: Some(labeling), q_labeling: None })
}

fn cartesian_power(q: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..q).map(move |d| {
                    let mut t2 = t.clone();
                    t2.push(d);
                    t2
                })
            })
            .collect();
    }
    out
}

fn subsets(n: usize, h: usize) -> Vec<u32> {
    let mut out = Vec::new();
    fn go(n: usize, h: usize, start: usize, cur: u32, out: &mut Vec<u32>) {
        if h == 0 {
            out.push(cur);
            return;
        }
        for i in start..n {
            go(n, h - 1, i + 1, cur | (1 << i), out);
        }
    }
    go(n, h, 0, 0, &mut out);
    out
}

pub fn johnson(n: usize, h: usize) -> Result<Built, BuildError> {
    if h == 0 || h > n {
        return Err(BuildError::BadParameters("johnson needs 1 <= h <= n".into()));
    }
    let points = subsets(n, h);
    let (scheme, keys) = scheme_from_keys(&points, |&a, &b| {
        vec![h - (a & b).count_ones() as usize]
    })?;
    let labeling = tuple_labeling(&keys)?;
    Ok(Built { scheme, labeling: Some(labeling), q_labeling: None })
}

/// Nonbinary Johnson scheme J_q(n,h): h-subsets with values from a
/// q-letter alphabet; relation (t, e) with t the domain distance and e the
/// number of shared positions with differing values.
pub fn nonbinary_johnson(q: usize, n: usize, h: usize) -> Result<Built, BuildError> {
    if q < 2 || h == 0 || h > n {
        return Err(BuildError::BadParameters("nonbinary johnson needs q >= 2, 1 <= h <= n".into()));
    }
    let mut points: Vec<(u32, Vec<usize>)> = Vec::new();
    for a in subsets(n, h) {
        for f in cartesian_power(q, h) {
            points.push((a, f));
        }
    }
    let (scheme, keys) = scheme_from_keys(&points, |(a, f), (b, g)| {
        let (t, e) = nbj_relation(n, *a, f, *b, g);
        vec![t, e]
    })?;
    let labeling = tuple_labeling(&keys)?;
    Ok(Built { scheme, labeling: Some(labeling), q_labeling: None })
}

fn nbj_relation(n: usize, a: u32, f: &[usize], b: u32, g: &[usize]) -> (usize, usize) {
    // values of f are stored for the elements of `a` in increasing order
    let mut e = 0;
    let mut shared = 0;
    let (mut fi, mut gi) = (0, 0);
    for pos in 0..n {
        let ina = a & (1 << pos) != 0;
        let inb = b & (1 << pos) != 0;
        if ina && inb {
            shared += 1;
            if f[fi] != g[gi] {
                e += 1;
            }
        }
        fi += usize::from(ina);
        gi += usize::from(inb);
    }
    (f.len() - shared, e)
}

// --- combinators ------------------------------------------------------------

/// Kronecker-product scheme of the factors; relation tuples become the
/// labeling degrees.
pub fn direct_product(factors: &[RelationScheme]) -> Result<Built, BuildError> {
    if factors.is_empty() {
        return Err(BuildError::BadParameters("direct product needs at least one factor".into()));
    }
    let size: usize = factors.iter().map(|f| f.size()).product();
    check_cap(size)?;
    // points are mixed-radix tuples of factor points
    let mut points: Vec<Vec<usize>> = vec![Vec::new()];
    for f in factors {
        points = points
            .into_iter()
            .flat_map(|t| {
                (0..f.size()).map(move |x| {
                    let mut t2 = t.clone();
                    t2.push(x);
                    t2
                })
            })
            .collect();
    }
    let (scheme, keys) = scheme_from_keys(&points, |x, y| {
        factors
            .iter()
            .enumerate()
            .map(|(k, f)| f.relation(x[k], y[k]))
            .collect::<Vec<usize>>()
    })?;
    let labeling = tuple_labeling(&keys)?;
    Ok(Built { scheme, labeling: Some(labeling), q_labeling: None })
}

/// Composition: points X x Y, relation (i,0) when the X-coordinates are in
/// relation i != 0, and (0,j) when they agree and the Y-coordinates are in
/// relation j.
pub fn composition(outer: &RelationScheme, fiber: &RelationScheme) -> Result<Built, BuildError> {
    if outer.identity_index() != 0 || fiber.identity_index() != 0 {
        return Err(BuildError::BadParameters("composition expects identity index 0".into()));
    }
    let size = outer.size() * fiber.size();
    check_cap(size)?;
    let points: Vec<(usize, usize)> = (0..outer.size())
        .flat_map(|x| (0..fiber.size()).map(move |y| (x, y)))
        .collect();
    let (scheme, keys) = scheme_from_keys(&points, |&(x1, y1), &(x2, y2)| {
        let i = outer.relation(x1, x2);
        if i != 0 {
            vec![i, 0]
        } else {
            vec![0, fiber.relation(y1, y2)]
        }
    })?;
    let labeling = tuple_labeling(&keys)?;
    Ok(Built { scheme, labeling: Some(labeling), q_labeling: None })
}

/// Extension S^n(X): points are n-tuples, the relation is the vector of
/// counts of each non-identity base relation across coordinates.
pub fn extension(base: &RelationScheme, n: usize) -> Result<Built, BuildError> {
    if n == 0 {
        return Err(BuildError::BadParameters("extension needs n >= 1".into()));
    }
    if base.identity_index() != 0 {
        return Err(BuildError::BadParameters("extension expects identity index 0".into()));
    }
    let size = base.size().checked_pow(n as u32).ok_or_else(|| {
        BuildError::BadParameters("extension size overflow".into())
    })?;
    check_cap(size)?;
    let d = base.class_count();
    let points = cartesian_power(base.size(), n);
    let (scheme, keys) = scheme_from_keys(&points, |x, y| {
        let mut tau = vec![0usize; d];
        for (a, b) in x.iter().zip(y) {
            let r = base.relation(*a, *b);
            if r != 0 {
                tau[r - 1] += 1;
            }
        }
        tau
    })?;
    let labeling = tuple_labeling(&keys)?;
    Ok(Built { scheme, labeling: Some(labeling), q_labeling: None })
}

/// Generalized Johnson scheme Theta_h over an arbitrary commutative fiber:
/// points are functions from an h-subset of [n] to the fiber's points;
/// relation (t, a_1..a_m) counts the domain distance and the fiber relations
/// on the shared domain.
pub fn generalized_johnson(
    fiber: &RelationScheme,
    n: usize,
    h: usize,
) -> Result<Built, BuildError> {
    if h == 0 || h > n {
        return Err(BuildError::BadParameters("generalized johnson needs 1 <= h <= n".into()));
    }
    if fiber.identity_index() != 0 {
        return Err(BuildError::BadParameters("fiber must have identity index 0".into()));
    }
    let m = fiber.class_count();
    let mut points: Vec<(u32, Vec<usize>)> = Vec::new();
    for a in subsets(n, h) {
        for f in cartesian_power(fiber.size(), h) {
            points.push((a, f));
        }
    }
    check_cap(points.len())?;
    let (scheme, keys) = scheme_from_keys(&points, |(a, f), (b, g)| {
        let mut key = vec![0usize; m + 1];
        let mut shared = 0;
        let (mut fi, mut gi) = (0, 0);
        for pos in 0..n {
            let ina = a & (1 << pos) != 0;
            let inb = b & (1 << pos) != 0;
            if ina && inb {
                shared += 1;
                let r = fiber.relation(f[fi], g[gi]);
                if r != 0 {
                    key[r] += 1;
                }
            }
            fi += usize::from(ina);
            gi += usize::from(inb);
        }
        key[0] = h - shared; // t
        key
    })?;
    let labeling = tuple_labeling(&keys)?;
    Ok(Built { scheme, labeling: Some(labeling), q_labeling: None })
}

// --- attenuated spaces ------------------------------------------------------

/// m-dimensional subspaces of F_q^{n+l} meeting a fixed l-dimensional W
/// trivially. Such a subspace is a graph {(u, phi(u))} over an m-dimensional
/// U <= F_q^n, represented by the RREF basis R of U and an arbitrary m x l
/// matrix B over F_q. Relation (i,j) from the two rank conditions of the
/// defining dimension formula.
pub fn attenuated(q: usize, n: usize, m: usize, l: usize) -> Result<Built, BuildError> {
    if !is_prime(q) {
        return Err(BuildError::BadParameters(format!("attenuated needs prime q, got {q}")));
    }
    if m == 0 || m > n {
        return Err(BuildError::BadParameters("attenuated needs 1 <= m <= n".into()));
    }
    let gauss: usize = gaussian_binomial(q, n, m)
        .ok_or_else(|| BuildError::BadParameters("attenuated size overflow".into()))?;
    let size = gauss
        .checked_mul(q.pow((m * l) as u32))
        .ok_or_else(|| BuildError::BadParameters("attenuated size overflow".into()))?;
    check_cap(size)?;
    let us = rref_subspaces(q, n, m);
    let bs = all_matrices(q, m, l);
    let mut points: Vec<Vec<Vec<u8>>> = Vec::new(); // m rows of length n+l
    for u in &us {
        for b in &bs {
            let rows: Vec<Vec<u8>> = u
                .iter()
                .zip(b)
                .map(|(ur, br)| ur.iter().chain(br).copied().collect())
                .collect();
            points.push(rows);
        }
    }
    debug_assert_eq!(points.len(), size);
    let (scheme, keys) = scheme_from_keys(&points, |v1, v2| {
        // i = rank of stacked projections minus m; j from the full stack
        let proj_rank = {
            let stacked: Vec<Vec<u8>> = v1
                .iter()
                .chain(v2.iter())
                .map(|r| r[..n].to_vec())
                .collect();
            rank_mod(q as u8, stacked)
        };
        let full_rank = {
            let stacked: Vec<Vec<u8>> = v1.iter().chain(v2.iter()).cloned().collect();
            rank_mod(q as u8, stacked)
        };
        vec![proj_rank - m, full_rank - proj_rank]
    })?;
    let labeling = tuple_labeling(&keys)?;
    Ok(Built { scheme, labeling: Some(labeling), q_labeling: None })
}

pub fn is_prime(q: usize) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Gaussian binomial [n choose m]_q as usize.
pub fn gaussian_binomial(q: usize, n: usize, m: usize) -> Option<usize> {
    if m > n {
        return Some(0);
    }
    let mut num = 1u128;
    let mut den = 1u128;
    let q = q as u128;
    for i in 0..m {
        num = num.checked_mul(q.pow((n - i) as u32) - 1)?;
        den = den.checked_mul(q.pow((i + 1) as u32) - 1)?;
    }
    usize::try_from(num / den).ok()
}

/// All m-dimensional subspaces of F_q^n as RREF bases.
fn rref_subspaces(q: usize, n: usize, m: usize) -> Vec<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    // enumerate spanning m-tuples and canonicalize by RREF
    let vectors: Vec<Vec<u8>> = cartesian_power(q, n)
        .into_iter()
        .map(|v| v.into_iter().map(|d| d as u8).collect())
        .collect();
    let mut stack = vec![(Vec::<Vec<u8>>::new(), 0usize)];
    while let Some((rows, start)) = stack.pop() {
        if rows.len() == m {
            let r = rref(q as u8, rows.clone());
            if r.len() == m {
                seen.insert(r);
            }
            continue;
        }
        for (i, v) in vectors.iter().enumerate().skip(start) {
            let mut rows2 = rows.clone();
            rows2.push(v.clone());
            stack.push((rows2, i + 1));
        }
    }
    out.extend(seen);
    out
}

fn all_matrices(q: usize, rows: usize, cols: usize) -> Vec<Vec<Vec<u8>>> {
    let mut mats: Vec<Vec<Vec<u8>>> = vec![Vec::new()];
    for _ in 0..rows {
        mats = mats
            .into_iter()
            .flat_map(|m| {
                cartesian_power(q, cols).into_iter().map(move |r| {
                    let mut m2 = m.clone();
                    m2.push(r.into_iter().map(|d| d as u8).collect());
                    m2
                })
            })
            .collect();
    }
    mats
}

/// Row-reduced echelon form over F_p, zero rows removed.
fn rref(p: u8, mut rows: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = mod_inverse(rows[pivot_row][col], p);
        for x in rows[pivot_row].iter_mut() {
            *x = ((*x as u16 * inv as u16) % p as u16) as u8;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && row[col] != 0 {
                let factor = row[col];
                for (x, &pv) in row.iter_mut().zip(&pivot) {
                    let sub = (factor as u16 * pv as u16) % p as u16;
                    *x = ((*x as u16 + p as u16 - sub) % p as u16) as u8;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.retain(|r| r.iter().any(|&x| x != 0));
    rows
}

fn rank_mod(p: u8, rows: Vec<Vec<u8>>) -> usize {
    rref(p, rows).len()
}

fn mod_inverse(a: u8, p: u8) -> u8 {
    (1..p).find(|&x| (a as u16 * x as u16) % p as u16 == 1).unwrap()
}

// --- closed-form recurrence oracles ----------------------------------------

/// q-number [k]_q = (q^k - 1)/(q - 1).
pub fn q_number(q: i64, k: i64) -> i64 {
    if k <= 0 {
        return 0;
    }
    (q.pow(k as u32) - 1) / (q - 1)
}

type CoeffMap = BTreeMap<Vec<usize>, i64>;

fn put(map: &mut CoeffMap, target: Vec<i64>, coeff: i64, in_domain: &impl Fn(&[i64]) -> bool) {
    if coeff != 0 && target.iter().all(|&t| t >= 0) && in_domain(&target) {
        let key: Vec<usize> = target.into_iter().map(|t| t as usize).collect();
        *map.entry(key).or_insert(0) += coeff;
    }
}

/// Coefficients of `A_{e_i} A_alpha` in the extension S^n(base), from the
/// closed-form recurrence. `i` is 1-based over the non-identity classes of
/// the base; `alpha` has one entry per non-identity class.
pub fn extension_recurrence_oracle(
    base: &crate::scheme::IntersectionTensor,
    n: usize,
    i: usize,
    alpha: &[usize],
) -> Result<CoeffMap, BuildError> {
    let ell = base.class_count();
    if base.identity_index() != 0 {
        return Err(BuildError::BadParameters("oracle expects base identity index 0".into()));
    }
    if alpha.len() != ell || i == 0 || i > ell {
        return Err(BuildError::BadParameters("oracle index out of range".into()));
    }
    let total: usize = alpha.iter().sum();
    if total > n {
        return Err(BuildError::BadParameters("alpha outside the domain".into()));
    }
    let in_domain = |t: &[i64]| t.iter().sum::<i64>() <= n as i64;
    let a: Vec<i64> = alpha.iter().map(|&x| x as i64).collect();
    let p = |k: usize, x: usize, y: usize| base.p(k, x, y);
    let mut out = CoeffMap::new();
    let shift = |deltas: &[(usize, i64)]| -> Vec<i64> {
        let mut t = a.clone();
        for &(axis, d) in deltas {
            t[axis - 1] += d;
        }
        t
    };
    // alpha + e_i
    put(&mut out, shift(&[(i, 1)]), a[i - 1] + 1, &in_domain);
    // alpha
    let diag: i64 = (1..=ell).map(|j| a[j - 1] * p(j, i, j)).sum();
    put(&mut out, a.clone(), diag, &in_domain);
    for s in 1..=ell {
        if s == i {
            continue;
        }
        // alpha - e_i + e_s
        put(&mut out, shift(&[(i, -1), (s, 1)]), (a[s - 1] + 1) * p(s, i, i), &in_domain);
        // alpha + e_i - e_s
        put(&mut out, shift(&[(i, 1), (s, -1)]), (a[i - 1] + 1) * p(i, i, s), &in_domain);
        for t in 1..=ell {
            if t == i || t == s {
                continue;
            }
            // alpha - e_s + e_t
            put(&mut out, shift(&[(s, -1), (t, 1)]), (a[t - 1] + 1) * p(t, i, s), &in_domain);
        }
    }
    // alpha - e_i
    put(
        &mut out,
        shift(&[(i, -1)]),
        (n as i64 - total as i64 + 1) * p(0, i, i),
        &in_domain,
    );
    out.retain(|_, &mut c| c != 0);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttenuatedGenerator {
    A10,
    A01,
}

/// Coefficients of `A_10 A_ij` / `A_01 A_ij` in the attenuated-space scheme.
pub fn attenuated_recurrence_oracle(
    q: usize,
    n: usize,
    m: usize,
    l: usize,
    which: AttenuatedGenerator,
    ij: (usize, usize),
) -> Result<CoeffMap, BuildError> {
    let (i, j) = (ij.0 as i64, ij.1 as i64);
    let (nn, mm, ll, qq) = (n as i64, m as i64, l as i64, q as i64);
    if i > mm.min(nn - mm) || j > (mm - i).min(ll) {
        return Err(BuildError::BadParameters("(i,j) outside the domain".into()));
    }
    let in_domain =
        |t: &[i64]| t[0] <= mm.min(nn - mm) && t[1] <= (mm - t[0]).min(ll);
    let nq = |k: i64| q_number(qq, k);
    let pw = |e: i64| qq.pow(e as u32);
    let mut out = CoeffMap::new();
    match which {
        AttenuatedGenerator::A10 => {
            if i >= 1 {
                put(
                    &mut out,
                    vec![i - 1, j],
                    pw(2 * i + j + ll - 1) * nq(mm - i - j + 1) * nq(nn - mm - i + 1),
                    &in_domain,
                );
                put(
                    &mut out,
                    vec![i - 1, j + 1],
                    nq(j + 1) * nq(nn - mm - i + 1) * pw(2 * i + ll - 1),
                    &in_domain,
                );
            }
            put(&mut out, vec![i + 1, j], nq(i + 1) * nq(i + 1) * pw(j), &in_domain);
            if j >= 1 {
                put(
                    &mut out,
                    vec![i, j - 1],
                    nq(mm - i - j + 1) * nq(i) * (pw(ll) - pw(j - 1)) * pw(i + j),
                    &in_domain,
                );
                put(
                    &mut out,
                    vec![i + 1, j - 1],
                    nq(i + 1) * nq(i + 1) * (pw(ll) - pw(j - 1)),
                    &in_domain,
                );
            }
            put(&mut out, vec![i, j + 1], nq(j + 1) * nq(i) * pw(i + j + 1), &in_domain);
            let mut diag = nq(i)
                * (nq(nn - mm - i) * pw(ll + 1 + i)
                    + nq(mm - i - j) * pw(i + 2 * j + 1)
                    + nq(i) * (qq - 1) * pw(ll));
            if j >= 1 {
                diag += nq(i) * nq(j) * (pw(ll) - pw(j - 1)) * pw(i + 1);
            }
            put(&mut out, vec![i, j], diag, &in_domain);
        }
        AttenuatedGenerator::A01 => {
            if j >= 1 {
                put(
                    &mut out,
                    vec![i, j - 1],
                    (pw(ll) - pw(j - 1)) * nq(mm - i - j + 1) * pw(i + j - 1),
                    &in_domain,
                );
            }
            put(&mut out, vec![i, j + 1], nq(j + 1) * pw(i + j), &in_domain);
            let mut diag = (pw(ll) - 1) * nq(i + j);
            if j >= 1 {
                diag += -nq(j) * pw(i + j - 1) + (qq - 1) * nq(mm - i - j) * nq(j) * pw(i + j);
            }
            put(&mut out, vec![i, j], diag, &in_domain);
        }
    }
    out.retain(|_, &mut c| c != 0);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GjGenerator {
    /// (1, 0): move one domain point.
    T,
    /// (0, e_i): change one value, 1-based fiber class.
    Value(usize),
}

/// Coefficients of the generalized-Johnson recurrences; `t_alpha` is
/// `(t, a_1..a_m)` over the non-identity classes of the fiber.
pub fn generalized_johnson_oracle(
    fiber: &crate::scheme::IntersectionTensor,
    n: usize,
    h: usize,
    generator: &GjGenerator,
    t_alpha: &[usize],
) -> Result<CoeffMap, BuildError> {
    let m = fiber.class_count();
    if fiber.identity_index() != 0 {
        return Err(BuildError::BadParameters("oracle expects fiber identity index 0".into()));
    }
    if t_alpha.len() != m + 1 {
        return Err(BuildError::BadParameters("tuple arity mismatch".into()));
    }
    let (nn, hh) = (n as i64, h as i64);
    let t = t_alpha[0] as i64;
    let a: Vec<i64> = t_alpha[1..].iter().map(|&x| x as i64).collect();
    let asum: i64 = a.iter().sum();
    if t > hh.min(nn - hh) || asum > hh - t {
        return Err(BuildError::BadParameters("(t,alpha) outside the domain".into()));
    }
    let ysize = fiber.size() as i64;
    let k: Vec<i64> = fiber.valencies()[1..].to_vec();
    let in_domain = |v: &[i64]| v[0] <= hh.min(nn - hh) && v[1..].iter().sum::<i64>() <= hh - v[0];
    let shift = |dt: i64, deltas: &[(usize, i64)]| -> Vec<i64> {
        let mut out = Vec::with_capacity(m + 1);
        out.push(t + dt);
        out.extend_from_slice(&a);
        for &(axis, d) in deltas {
            out[axis] += d;
        }
        out
    };
    let mut out = CoeffMap::new();
    match generator {
        GjGenerator::T => {
            put(&mut out, shift(1, &[]), (t + 1) * (t + 1), &in_domain);
            for i in 1..=m {
                put(&mut out, shift(1, &[(i, -1)]), (t + 1) * (t + 1) * k[i - 1], &in_domain);
            }
            let diag = ysize * (nn - hh - t) * t
                + (hh - t - asum) * t
                + a.iter().zip(&k).map(|(ai, ki)| ai * t * ki).sum::<i64>();
            put(&mut out, shift(0, &[]), diag, &in_domain);
            for i in 1..=m {
                put(&mut out, shift(0, &[(i, -1)]), (hh - t + 1 - asum) * t * k[i - 1], &in_domain);
                put(&mut out, shift(0, &[(i, 1)]), (a[i - 1] + 1) * t, &in_domain);
                for j in 1..=m {
                    if j != i {
                        put(
                            &mut out,
                            shift(0, &[(i, -1), (j, 1)]),
                            (a[j - 1] + 1) * t * k[i - 1],
                            &in_domain,
                        );
                    }
                }
            }
            put(&mut out, shift(-1, &[]), ysize * (nn - hh - t + 1) * (hh - t + 1 - asum), &in_domain);
            for i in 1..=m {
                put(
                    &mut out,
                    shift(-1, &[(i, 1)]),
                    ysize * (nn - hh - t + 1) * (a[i - 1] + 1),
                    &in_domain,
                );
            }
        }
        GjGenerator::Value(i) => {
            let i = *i;
            if i == 0 || i > m {
                return Err(BuildError::BadParameters("fiber class out of range".into()));
            }
            put(&mut out, shift(0, &[(i, 1)]), a[i - 1] + 1, &in_domain);
            let diag = (ysize - 1) * t
                + a.iter().zip(&k).map(|(aj, kj)| aj * (kj - 1)).sum::<i64>();
            put(&mut out, shift(0, &[]), diag, &in_domain);
            for jj in 1..=m {
                for kk in 1..=m {
                    if jj != kk {
                        put(
                            &mut out,
                            shift(0, &[(jj, 1), (kk, -1)]),
                            (a[kk - 1] + 1) * k[jj - 1],
                            &in_domain,
                        );
                    }
                }
            }
            put(&mut out, shift(0, &[(i, -1)]), (hh - t + 1 - asum) * k[i - 1], &in_domain);
        }
    }
    out.retain(|_, &mut c| c != 0);
    Ok(out)
}

/// Brute-force comparison target: the tensor's coefficients of
/// `A_{gen} A_{alpha}` as a degree-tuple map, using a labeling.
pub fn product_coefficients(
    tensor: &crate::scheme::IntersectionTensor,
    labeling: &Labeling,
    generator: &[usize],
    alpha: &[usize],
) -> Option<CoeffMap> {
    let g = labeling.index_of(generator)?;
    let a = labeling.index_of(alpha)?;
    let mut out = CoeffMap::new();
    for k in 0..tensor.relation_count() {
        let c = tensor.p(k, g, a);
        if c != 0 {
            out.insert(labeling.alpha_of(k).to_vec(), c);
        }
    }
    Some(out)
}
