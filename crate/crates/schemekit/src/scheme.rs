//! Commutative association schemes on explicit finite ground sets.
//!
//! A scheme is stored as the dense matrix of relation indices. Axioms are
//! verified at construction; intersection numbers are exact machine
//! integers computed by triple counting, with an independent
//! matrix-product cross-check available.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SchemeError {
    #[error("relation matrix is not square of size {expected}")]
    NotSquare { expected: usize },
    #[error("ground set of size {size} exceeds the configured cap {cap}")]
    BoundsExceeded { size: usize, cap: usize },
    #[error("axiom A1 violated: relation index {index} never occurs")]
    A1Missing { index: usize },
    #[error("axiom A2 violated: diagonal entries at {x} and {y} differ")]
    A2Diagonal { x: usize, y: usize },
    #[error("axiom A2 violated: identity relation occurs off-diagonal at ({x},{y})")]
    A2OffDiagonal { x: usize, y: usize },
    #[error("axiom A3 violated: transpose of relation {i} is not a single relation (witness ({x},{y}))")]
    A3Transpose { i: usize, x: usize, y: usize },
    #[error("axiom A4 violated: intersection count p^{k}_{{{i},{j}}} depends on the witness pair")]
    NotAScheme { k: usize, i: usize, j: usize },
    #[error("axiom A5 violated: p^{k}_{{{i},{j}}} != p^{k}_{{{j},{i}}}")]
    NonCommutative { k: usize, i: usize, j: usize },
    #[error("product A_{i} A_{j} is not constant on relation {k}")]
    InconsistentProduct { i: usize, j: usize, k: usize },
    #[error("invalid fusion partition: {0}")]
    BadPartition(String),
    #[error("relation index {0} out of range")]
    IndexOutOfRange(usize),
}

/// A validated commutative association scheme `(X, {R_i})`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationScheme {
    size: usize,
    classes: usize, // d + 1
    rel: Vec<u16>,  // row-major size x size
    identity_index: usize,
    transpose_map: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// The exact intersection parameters `p^k_{ij}` of a scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionTensor {
    size: usize,
    classes: usize,
    p: Vec<i64>, // [k][i][j], row-major cubes
    valencies: Vec<i64>,
    identity_index: usize,
    transpose_map: Vec<usize>,
    symmetric: bool,
}

impl RelationScheme {
    /// Validates axioms A1-A3 directly and A4/A5 through witness counting.
    pub fn from_relation_matrix(size: usize, matrix: &[Vec<usize>]) -> Result<Self, SchemeError> {
        Self::from_relation_matrix_capped(size, matrix, crate::max_ground_set())
    }

    pub fn from_relation_matrix_capped(
        size: usize,
        matrix: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self, SchemeError> {
        if size == 0 || matrix.len() != size || matrix.iter().any(|r| r.len() != size) {
            return Err(SchemeError::NotSquare { expected: size });
        }
        if size > cap {
            return Err(SchemeError::BoundsExceeded { size, cap });
        }
        let d_max = matrix.iter().flatten().copied().max().unwrap_or(0);
        let classes = d_max + 1;
        // A1: surjectivity onto {0..d}.
        let mut seen = vec![false; classes];
        for row in matrix {
            for &e in row {
                seen[e] = true;
            }
        }
        if let Some(index) = seen.iter().position(|&s| !s) {
            return Err(SchemeError::A1Missing { index });
        }
        // A2: constant diagonal, identity relation only on the diagonal.
        let identity_index = matrix[0][0];
        for x in 1..size {
            if matrix[x][x] != identity_index {
                return Err(SchemeError::A2Diagonal { x: 0, y: x });
            }
        }
        for x in 0..size {
            for y in 0..size {
                if x != y && matrix[x][y] == identity_index {
                    return Err(SchemeError::A2OffDiagonal { x, y });
                }
            }
        }
        // A3: well-defined transpose map.
        let mut transpose_map = vec![usize::MAX; classes];
        for x in 0..size {
            for y in 0..size {
                let i = matrix[x][y];
                let it = matrix[y][x];
                if transpose_map[i] == usize::MAX {
                    transpose_map[i] = it;
                } else if transpose_map[i] != it {
                    return Err(SchemeError::A3Transpose { i, x, y });
                }
            }
        }
        let rel: Vec<u16> = matrix.iter().flatten().map(|&e| e as u16).collect();
        let scheme = RelationScheme {
            size,
            classes,
            rel,
            identity_index,
            transpose_map,
            labels: None,
        };
        // A4 and A5 via witness counting.
        scheme.intersection_tensor_checked(false)?;
        Ok(scheme)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of classes `d` (so there are `d + 1` relations).
    pub fn class_count(&self) -> usize {
        self.classes - 1
    }

    pub fn relation_count(&self) -> usize {
        self.classes
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    pub fn transpose_map(&self) -> &[usize] {
        &self.transpose_map
    }

    #[inline]
    pub fn relation(&self, x: usize, y: usize) -> usize {
        self.rel[x * self.size + y] as usize
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        self.labels = Some(labels);
    }

    /// Counts `p^k_{ij}` from one witness per relation, verifying a second
    /// witness when available; `full` checks every witness pair.
    pub fn intersection_tensor_checked(&self, full: bool) -> Result<IntersectionTensor, SchemeError> {
        let c = self.classes;
        let n = self.size;
        let mut witness: Vec<Vec<(usize, usize)>> = vec![Vec::new(); c];
        for x in 0..n {
            for y in 0..n {
                let k = self.relation(x, y);
                if full || witness[k].len() < 2 {
                    witness[k].push((x, y));
                }
            }
        }
        let mut p = vec![0i64; c * c * c];
        for k in 0..c {
            let mut first: Option<Vec<i64>> = None;
            for &(x, y) in &witness[k] {
                let mut counts = vec![0i64; c * c];
                for z in 0..n {
                    let i = self.relation(x, z);
                    let j = self.relation(z, y);
                    counts[i * c + j] += 1;
                }
                match &first {
                    None => first = Some(counts),
                    Some(f) => {
                        if *f != counts {
                            let (i, j) = (0..c * c)
                                .find(|&t| f[t] != counts[t])
                                .map(|t| (t / c, t % c))
                                .unwrap();
                            return Err(SchemeError::NotAScheme { k, i, j });
                        }
                    }
                }
            }
            let counts = first.expect("every relation has a witness by A1");
            for i in 0..c {
                for j in 0..c {
                    p[(k * c + i) * c + j] = counts[i * c + j];
                }
            }
        }
        // A5: commutativity.
        for k in 0..c {
            for i in 0..c {
                for j in 0..i {
                    if p[(k * c + i) * c + j] != p[(k * c + j) * c + i] {
                        return Err(SchemeError::NonCommutative { k, i, j });
                    }
                }
            }
        }
        let valencies: Vec<i64> = (0..c)
            .map(|i| p[(self.identity_index * c + i) * c + self.transpose_map[i]])
            .collect();
        let symmetric = self.transpose_map.iter().enumerate().all(|(i, &t)| i == t);
        Ok(IntersectionTensor {
            size: n,
            classes: c,
            p,
            valencies,
            identity_index: self.identity_index,
            transpose_map: self.transpose_map.clone(),
            symmetric,
        })
    }

    pub fn intersection_tensor(&self) -> Result<IntersectionTensor, SchemeError> {
        self.intersection_tensor_checked(false)
    }

    /// Independent oracle: coefficients of `A_i A_j` in the adjacency basis,
    /// computed by integer matrix multiplication and basis read-off.
    pub fn adjacency_product_coeffs(&self, i: usize, j: usize) -> Result<Vec<i64>, SchemeError> {
        let c = self.classes;
        let n = self.size;
        if i >= c {
            return Err(SchemeError::IndexOutOfRange(i));
        }
        if j >= c {
            return Err(SchemeError::IndexOutOfRange(j));
        }
        // Adjacency lists of relation j by source vertex.
        let mut nbr_j: Vec<Vec<usize>> = vec![Vec::new(); n];
        for z in 0..n {
            for y in 0..n {
                if self.relation(z, y) == j {
                    nbr_j[z].push(y);
                }
            }
        }
        let mut coeff = vec![-1i64; c];
        let mut prod_row = vec![0i64; n];
        for x in 0..n {
            prod_row.iter_mut().for_each(|e| *e = 0);
            for z in 0..n {
                if self.relation(x, z) == i {
                    for &y in &nbr_j[z] {
                        prod_row[y] += 1;
                    }
                }
            }
            for y in 0..n {
                let k = self.relation(x, y);
                if coeff[k] < 0 {
                    coeff[k] = prod_row[y];
                } else if coeff[k] != prod_row[y] {
                    return Err(SchemeError::InconsistentProduct { i, j, k });
                }
            }
        }
        // Relations without a decided entry cannot occur (A1 guarantees all do).
        Ok(coeff.into_iter().map(|v| v.max(0)).collect())
    }

    /// Merges relations along a partition of `{0..d}` and re-validates.
    pub fn fusion(&self, partition: &[Vec<usize>]) -> Result<RelationScheme, SchemeError> {
        let c = self.classes;
        let mut cell_of = vec![usize::MAX; c];
        for (ci, cell) in partition.iter().enumerate() {
            if cell.is_empty() {
                return Err(SchemeError::BadPartition("empty cell".into()));
            }
            for &i in cell {
                if i >= c {
                    return Err(SchemeError::IndexOutOfRange(i));
                }
                if cell_of[i] != usize::MAX {
                    return Err(SchemeError::BadPartition(format!("index {i} in two cells")));
                }
                cell_of[i] = ci;
            }
        }
        if cell_of.iter().any(|&ci| ci == usize::MAX) {
            return Err(SchemeError::BadPartition("partition does not cover all indices".into()));
        }
        let id_cell = cell_of[self.identity_index];
        if partition[id_cell].len() != 1 {
            return Err(SchemeError::BadPartition("cell of the identity index is not a singleton".into()));
        }
        for cell in partition {
            let t_cell = cell_of[self.transpose_map[cell[0]]];
            for &i in cell {
                if cell_of[self.transpose_map[i]] != t_cell {
                    return Err(SchemeError::BadPartition(format!(
                        "partition does not respect the transpose map at index {i}"
                    )));
                }
            }
        }
        let matrix: Vec<Vec<usize>> = (0..self.size)
            .map(|x| (0..self.size).map(|y| cell_of[self.relation(x, y)]).collect())
            .collect();
        RelationScheme::from_relation_matrix(self.size, &matrix)
    }

    pub fn relation_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|x| (0..self.size).map(|y| self.relation(x, y)).collect())
            .collect()
    }
}

impl IntersectionTensor {
    #[inline]
    pub fn p(&self, k: usize, i: usize, j: usize) -> i64 {
        self.p[(k * self.classes + i) * self.classes + j]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn relation_count(&self) -> usize {
        self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes - 1
    }

    pub fn valencies(&self) -> &[i64] {
        &self.valencies
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    pub fn transpose_map(&self) -> &[usize] {
        &self.transpose_map
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Coefficients of `A_i A_j` in the adjacency basis.
    pub fn product_coeffs(&self, i: usize, j: usize) -> Vec<i64> {
        (0..self.classes).map(|k| self.p(k, i, j)).collect()
    }

    /// The regular-representation matrix `B_i` with `(B_i)_{kj} = p^k_{ij}`.
    pub fn regular_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        (0..self.classes)
            .map(|k| (0..self.classes).map(|j| self.p(k, i, j)).collect())
            .collect()
    }
}

// --- JSON interchange -------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct SchemeJson {
    pub schema: u32,
    pub size: usize,
    pub relations: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_labeling: Option<crate::polycheck::LabelingJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_q_labeling: Option<crate::polycheck::LabelingJson>,
}

impl RelationScheme {
    pub fn to_json(&self) -> SchemeJson {
        SchemeJson {
            schema: 1,
            size: self.size,
            relations: self.relation_matrix(),
            labels: self.labels.clone(),
            canonical_labeling: None,
            canonical_q_labeling: None,
        }
    }

    pub fn from_json(json: &SchemeJson) -> Result<Self, SchemeError> {
        let mut scheme = Self::from_relation_matrix(json.size, &json.relations)?;
        if let Some(labels) = &json.labels {
            scheme.set_labels(labels.clone());
        }
        Ok(scheme)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_matrix(n: usize) -> Vec<Vec<usize>> {
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let diff = (x as i64 - y as i64).rem_euclid(n as i64) as usize;
                        diff.min(n - diff)
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn single_point_scheme() {
        let s = RelationScheme::from_relation_matrix(1, &[vec![0]]).unwrap();
        assert_eq!(s.class_count(), 0);
        assert_eq!(s.identity_index(), 0);
    }

    #[test]
    fn pentagon_distance_scheme() {
        let s = RelationScheme::from_relation_matrix(5, &cycle_matrix(5)).unwrap();
        assert_eq!(s.class_count(), 2);
        let t = s.intersection_tensor().unwrap();
        assert_eq!(t.valencies(), &[1, 2, 2]);
        assert_eq!(t.p(0, 1, 1), 2);
        assert_eq!(t.p(1, 1, 1), 0);
        assert_eq!(t.p(2, 1, 1), 1);
    }

    #[test]
    fn mixed_diagonal_rejected() {
        let m = vec![vec![0, 2, 2], vec![2, 1, 2], vec![2, 2, 0]];
        let err = RelationScheme::from_relation_matrix(3, &m).unwrap_err();
        assert!(matches!(err, SchemeError::A2Diagonal { .. }));
    }

    #[test]
    fn identity_column_of_tensor() {
        let s = RelationScheme::from_relation_matrix(5, &cycle_matrix(5)).unwrap();
        let t = s.intersection_tensor().unwrap();
        let i0 = t.identity_index();
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(t.p(k, i0, j), i64::from(j == k));
            }
        }
    }

    #[test]
    fn four_cycle_tensor() {
        let s = RelationScheme::from_relation_matrix(4, &cycle_matrix(4)).unwrap();
        let t = s.intersection_tensor().unwrap();
        assert_eq!(t.p(0, 1, 1), 2);
        assert_eq!(t.p(1, 1, 1), 0);
        assert_eq!(t.p(2, 1, 1), 2);
    }

    #[test]
    fn product_oracle_matches_tensor() {
        let s = RelationScheme::from_relation_matrix(5, &cycle_matrix(5)).unwrap();
        let t = s.intersection_tensor().unwrap();
        assert_eq!(s.adjacency_product_coeffs(1, 1).unwrap(), vec![2, 0, 1]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(s.adjacency_product_coeffs(i, j).unwrap(), t.product_coeffs(i, j));
            }
        }
    }

    #[test]
    fn fusion_to_complete_graph() {
        let s = RelationScheme::from_relation_matrix(5, &cycle_matrix(5)).unwrap();
        let merged = s.fusion(&[vec![0], vec![1, 2]]).unwrap();
        assert_eq!(merged.class_count(), 1);
        let t = merged.intersection_tensor().unwrap();
        assert_eq!(t.valencies(), &[1, 4]);
    }

    #[test]
    fn identity_fusion_is_identity() {
        let s = RelationScheme::from_relation_matrix(5, &cycle_matrix(5)).unwrap();
        let same = s.fusion(&[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(same.relation_matrix(), s.relation_matrix());
    }

    #[test]
    fn valency_identities() {
        let s = RelationScheme::from_relation_matrix(5, &cycle_matrix(5)).unwrap();
        let t = s.intersection_tensor().unwrap();
        let total: i64 = t.valencies().iter().sum();
        assert_eq!(total as usize, s.size());
        // k_k p^k_{ij} = k_i p^i_{k j'}
        let c = t.relation_count();
        for i in 0..c {
            for j in 0..c {
                for k in 0..c {
                    let lhs = t.valencies()[k] * t.p(k, i, j);
                    let rhs = t.valencies()[i] * t.p(i, k, t.transpose_map()[j]);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
