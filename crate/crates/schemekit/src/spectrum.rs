//! Eigenmatrices, multiplicities and Krein numbers.
//!
//! All eigencomputation happens on the (d+1)x(d+1) regular-representation
//! matrices B_i with (B_i)_{kj} = p^k_{ij}: a generic random combination is
//! diagonalized, the common eigenvectors recovered by inverse iteration,
//! and the rows of P read off as joint eigenvalue vectors. Results are
//! re-verified against the regular representation, and optionally against
//! the full adjacency matrices.

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::scheme::{IntersectionTensor, RelationScheme};

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("no generic combination separated the eigenvalues after {0} attempts")]
    DegenerateCombination(usize),
    #[error("spectrum verification failed: {what} residual {residual:.3e} exceeds tolerance")]
    Inconsistent { what: &'static str, residual: f64 },
    #[error("second eigenmatrix is numerically singular")]
    SingularBasis,
    #[error("eigenspace index {0} out of range")]
    IndexOutOfRange(usize),
}

/// Eigenstructure of a commutative scheme: P, Q, multiplicities and the
/// Krein tensor, with the residuals seen while computing them.
#[derive(Debug, Clone)]
pub struct Spectrum {
    classes: usize,
    size: usize,
    /// P[(j, i)] = P_i(j); row j0 = 0 carries the valencies.
    p: DMatrix<f64>,
    /// Q[(i, j)] = Q_j(i); column j0 = 0 is all-ones.
    q: DMatrix<f64>,
    multiplicities: Vec<f64>,
    krein: Vec<f64>, // [k][i][j]
    identity_index: usize,
    tol: f64,
    max_residual: f64,
}

const MAX_ATTEMPTS: usize = 24;

impl Spectrum {
    pub fn compute(tensor: &IntersectionTensor, tol: f64, seed: u64) -> Result<Self, SpectrumError> {
        let c = tensor.relation_count();
        let n = tensor.size() as f64;
        if c == 1 {
            return Ok(Spectrum {
                classes: 1,
                size: tensor.size(),
                p: DMatrix::from_element(1, 1, 1.0),
                q: DMatrix::from_element(1, 1, 1.0),
                multiplicities: vec![1.0],
                krein: vec![1.0],
                identity_index: tensor.identity_index(),
                tol,
                max_residual: 0.0,
            });
        }
        let b: Vec<DMatrix<f64>> = (0..c)
            .map(|i| DMatrix::from_fn(c, c, |k, j| tensor.p(k, i, j) as f64))
            .collect();
        let scale = b
            .iter()
            .map(|m| m.amax())
            .fold(1.0_f64, f64::max);
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mut rows: Option<Vec<Vec<f64>>> = None;
        let mut imag_residual = 0.0_f64;
        for _attempt in 0..MAX_ATTEMPTS {
            let coeffs: Vec<f64> = (0..c).map(|_| rng.gen_range(0.5..1.5)).collect();
            let mut m = DMatrix::zeros(c, c);
            for (ci, bi) in coeffs.iter().zip(&b) {
                m += bi * *ci;
            }
            let eigvals = m.clone().complex_eigenvalues();
            let sep = min_separation(&eigvals);
            if sep <= 1e-6 * scale {
                continue;
            }
            let mc = m.map(|x| Complex::new(x, 0.0));
            let mut found = Vec::with_capacity(c);
            let mut ok = true;
            for lambda in eigvals.iter() {
                let Some(v) = inverse_iteration(&mc, *lambda, scale) else {
                    ok = false;
                    break;
                };
                let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
                let mut row = Vec::with_capacity(c);
                for bi in &b {
                    let w = bi.map(|x| Complex::new(x, 0.0)) * &v;
                    let rayleigh: Complex<f64> =
                        v.iter().zip(w.iter()).map(|(a, b)| a.conj() * b).sum::<Complex<f64>>()
                            / Complex::new(norm2, 0.0);
                    imag_residual = imag_residual.max(rayleigh.im.abs());
                    row.push(rayleigh.re);
                }
                found.push(row);
            }
            if ok {
                rows = Some(found);
                break;
            }
        }
        let Some(mut rows) = rows else {
            return Err(SpectrumError::DegenerateCombination(MAX_ATTEMPTS));
        };
        if imag_residual > tol * scale.max(1.0) * 100.0 {
            return Err(SpectrumError::Inconsistent { what: "imaginary part", residual: imag_residual });
        }
        // Put the valency row first, sort the rest by descending eigenvalues.
        let valencies: Vec<f64> = tensor.valencies().iter().map(|&k| k as f64).collect();
        let j0 = rows
            .iter()
            .position(|r| {
                r.iter().zip(&valencies).all(|(a, b)| (a - b).abs() <= 1e-6 * scale.max(1.0))
            })
            .ok_or(SpectrumError::Inconsistent { what: "valency row", residual: f64::NAN })?;
        let first = rows.remove(j0);
        rows.sort_by(|a, b| {
            for i in 0..c {
                if i == tensor.identity_index() {
                    continue;
                }
                if (a[i] - b[i]).abs() > 1e-7 * scale.max(1.0) {
                    return b[i].partial_cmp(&a[i]).unwrap();
                }
            }
            std::cmp::Ordering::Equal
        });
        rows.insert(0, first);
        let p = DMatrix::from_fn(c, c, |j, i| rows[j][i]);
        let q = match p.clone().lu().try_inverse() {
            Some(pinv) => pinv * n,
            None => return Err(SpectrumError::SingularBasis),
        };
        let mut max_residual = imag_residual;
        // P Q = |X| I.
        let pq = &p * &q;
        for i in 0..c {
            for j in 0..c {
                let expect = if i == j { n } else { 0.0 };
                max_residual = max_residual.max((pq[(i, j)] - expect).abs() / n);
            }
        }
        // Multiplicities near integers, summing to |X|.
        let multiplicities: Vec<f64> = (0..c).map(|j| q[(tensor.identity_index(), j)]).collect();
        let msum: f64 = multiplicities.iter().sum();
        max_residual = max_residual.max((msum - n).abs() / n);
        for &m in &multiplicities {
            max_residual = max_residual.max((m - m.round()).abs());
        }
        // Krein tensor by exact linear solves in the column basis of Q.
        let q_lu = q.clone().lu();
        let mut krein = vec![0.0; c * c * c];
        for i in 0..c {
            for j in 0..=i {
                let rhs = DVector::from_fn(c, |s, _| q[(s, i)] * q[(s, j)]);
                let sol = q_lu.solve(&rhs).ok_or(SpectrumError::SingularBasis)?;
                let back = &q * &sol;
                for s in 0..c {
                    max_residual = max_residual.max((back[s] - rhs[s]).abs() / scale.max(1.0));
                }
                for k in 0..c {
                    krein[(k * c + i) * c + j] = sol[k];
                    krein[(k * c + j) * c + i] = sol[k];
                }
            }
        }
        // Regular-representation verification: B_i q_col = P_i(j) q_col.
        for i in 0..c {
            for j in 0..c {
                let col = q.column(j);
                let prod = &b[i] * col;
                for s in 0..c {
                    let res = (prod[s] - p[(j, i)] * q[(s, j)]).abs();
                    max_residual = max_residual.max(res / (scale * n.max(1.0)));
                }
            }
        }
        let spectrum = Spectrum {
            classes: c,
            size: tensor.size(),
            p,
            q,
            multiplicities,
            krein,
            identity_index: tensor.identity_index(),
            tol,
            max_residual,
        };
        if max_residual > 1e4 * tol.max(1e-12) {
            return Err(SpectrumError::Inconsistent { what: "spectrum", residual: max_residual });
        }
        Ok(spectrum)
    }

    pub fn relation_count(&self) -> usize {
        self.classes
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    /// Entry `P_i(j)`: eigenvalue of `A_i` on eigenspace `j`.
    pub fn p_entry(&self, j: usize, i: usize) -> f64 {
        self.p[(j, i)]
    }

    /// Entry `Q_j(i)`.
    pub fn q_entry(&self, i: usize, j: usize) -> f64 {
        self.q[(i, j)]
    }

    pub fn p_matrix(&self) -> &DMatrix<f64> {
        &self.p
    }

    pub fn q_matrix(&self) -> &DMatrix<f64> {
        &self.q
    }

    pub fn multiplicities(&self) -> &[f64] {
        &self.multiplicities
    }

    /// Krein number `q^k_{ij}` (all indices are eigenspace indices).
    pub fn krein(&self, k: usize, i: usize, j: usize) -> f64 {
        self.krein[(k * self.classes + i) * self.classes + j]
    }

    /// The matrix `L*_j` with entries `(L*_j)_{k,i} = q^k_{j,i}`.
    pub fn krein_l_matrix(&self, j: usize) -> Result<DMatrix<f64>, SpectrumError> {
        if j >= self.classes {
            return Err(SpectrumError::IndexOutOfRange(j));
        }
        Ok(DMatrix::from_fn(self.classes, self.classes, |k, i| self.krein(k, j, i)))
    }

    /// Largest |q^k_{ij}|, the scale for zero tests on Krein numbers.
    pub fn krein_scale(&self) -> f64 {
        self.krein.iter().fold(1.0_f64, |a, &b| a.max(b.abs()))
    }

    pub fn krein_zero(&self, value: f64) -> bool {
        value.abs() <= self.tol * self.krein_scale()
    }

    /// Most negative Krein number (nonnegativity check).
    pub fn krein_min(&self) -> f64 {
        self.krein.iter().fold(0.0_f64, |a, &b| a.min(b))
    }

    /// Full-size verification on the adjacency matrices: reconstructs each
    /// idempotent and returns the worst residual over the idempotent and
    /// eigenvalue identities.
    pub fn verify_on_scheme(&self, scheme: &RelationScheme) -> f64 {
        let n = scheme.size();
        let c = self.classes;
        let e: Vec<DMatrix<f64>> = (0..c)
            .map(|j| {
                DMatrix::from_fn(n, n, |x, y| self.q[(scheme.relation(x, y), j)] / n as f64)
            })
            .collect();
        let mut residual = 0.0_f64;
        let mut esum = DMatrix::zeros(n, n);
        for (j, ej) in e.iter().enumerate() {
            esum += ej;
            let sq = ej * ej;
            residual = residual.max((&sq - ej).amax());
            let rank: f64 = ej.trace();
            residual = residual.max((rank - self.multiplicities[j]).abs() / n as f64);
            for jj in 0..j {
                residual = residual.max((ej * &e[jj]).amax());
            }
        }
        let ident = DMatrix::identity(n, n);
        residual = residual.max((&esum - &ident).amax());
        residual
    }
}

fn min_separation(vals: &DVector<Complex<f64>>) -> f64 {
    let mut sep = f64::INFINITY;
    for i in 0..vals.len() {
        for j in 0..i {
            sep = sep.min((vals[i] - vals[j]).norm());
        }
    }
    sep
}

fn inverse_iteration(
    m: &DMatrix<Complex<f64>>,
    lambda: Complex<f64>,
    scale: f64,
) -> Option<DVector<Complex<f64>>> {
    let c = m.nrows();
    let shift = lambda + Complex::new(1e-10 * scale.max(1.0), 1e-11 * scale.max(1.0));
    let shifted = m - DMatrix::from_diagonal_element(c, c, shift);
    let lu = shifted.lu();
    let mut v = DVector::from_element(c, Complex::new(1.0, 0.0));
    for _ in 0..3 {
        let next = lu.solve(&v)?;
        let norm = next.norm();
        if !norm.is_finite() || norm == 0.0 {
            return None;
        }
        v = next / Complex::new(norm, 0.0);
    }
    Some(v)
}

/// True iff some relabeling satisfies the three-term recurrence on the
/// intersection numbers; the witness ordering is returned.
pub fn univariate_p_check(tensor: &IntersectionTensor) -> Option<Vec<usize>> {
    let c = tensor.relation_count();
    tridiagonal_search(c, tensor.identity_index(), |k, g, i| tensor.p(k, g, i) != 0)
}

/// Krein-side analogue at the spectrum's tolerance.
pub fn univariate_q_check(spectrum: &Spectrum) -> Option<Vec<usize>> {
    let c = spectrum.relation_count();
    tridiagonal_search(c, 0, |k, g, i| !spectrum.krein_zero(spectrum.krein(k, g, i)))
}

fn tridiagonal_search(
    c: usize,
    identity: usize,
    nonzero: impl Fn(usize, usize, usize) -> bool,
) -> Option<Vec<usize>> {
    if c == 1 {
        return Some(vec![identity]);
    }
    'gen: for g in 0..c {
        if g == identity {
            continue;
        }
        let mut chain = vec![identity, g];
        let mut used = vec![false; c];
        used[identity] = true;
        used[g] = true;
        while chain.len() < c {
            let last = *chain.last().unwrap();
            let fresh: Vec<usize> = (0..c).filter(|&k| nonzero(k, g, last) && !used[k]).collect();
            if fresh.len() != 1 {
                continue 'gen;
            }
            chain.push(fresh[0]);
            used[fresh[0]] = true;
        }
        // Full tridiagonality along the chain.
        let pos: Vec<usize> = {
            let mut pos = vec![0; c];
            for (t, &k) in chain.iter().enumerate() {
                pos[k] = t;
            }
            pos
        };
        let tridiagonal = chain.iter().enumerate().all(|(t, &i)| {
            (0..c).all(|k| !nonzero(k, g, i) || pos[k].abs_diff(t) <= 1)
        });
        if tridiagonal {
            return Some(chain);
        }
    }
    None
}
