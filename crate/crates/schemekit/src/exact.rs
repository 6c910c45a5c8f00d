//! Small exact linear algebra over the rationals.
//!
//! Everything here works on dense vectors of length d+1 for desk-scale
//! schemes, so plain fraction arithmetic with Gaussian elimination is fine.

use num::rational::BigRational;
use num::{BigInt, Zero};

pub type Rat = BigRational;
pub type Int = BigInt;

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat_int(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// Solves `sum_t c_t * cols[t] = rhs` for a (possibly overdetermined)
/// system with linearly independent columns. Returns `None` when the
/// columns are dependent or the system is inconsistent.
pub fn solve_columns(cols: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let m = rhs.len();
    let n = cols.len();
    debug_assert!(cols.iter().all(|c| c.len() == m));
    // Augmented matrix, rows are equations.
    let mut a: Vec<Vec<Rat>> = (0..m)
        .map(|r| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let pivot = (row..m).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else { return None }; // dependent columns
        a.swap(row, p);
        let inv = a[row][col].clone();
        for e in a[row][col..].iter_mut() {
            *e = &*e / &inv;
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c2 in col..=n {
                    let sub = &a[row][c2] * &f;
                    a[r][c2] = &a[r][c2] - sub;
                }
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // Consistency: remaining rows must have zero rhs.
    for r in row..m {
        if !a[r][n].is_zero() {
            return None;
        }
    }
    Some((0..n).map(|c| a[pivot_rows[c]][n].clone()).collect())
}

/// Incremental row-echelon form for exact rank computations.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; if a new pivot remains the
    /// normalized vector is kept and `true` is returned.
    pub fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (e, r) in v.iter_mut().zip(row) {
                    let sub = r * &f;
                    *e = &*e - sub;
                }
            }
        }
        let Some(p) = v.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = v[p].clone();
        for e in &mut v {
            *e = &*e / &inv;
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

/// Snaps a float to a nearby fraction with denominator at most `max_den`,
/// for display only. Returns `None` when nothing close is found.
pub fn snap_rational(x: f64, max_den: u64, tol: f64) -> Option<(i64, u64)> {
    // Continued-fraction convergents of |x| with bounded denominator.
    let negative = x < 0.0;
    let target = x.abs();
    let goal = tol * target.max(1.0);
    let (mut p0, mut q0) = (1i64, 0u64);
    let (mut p1, mut q1) = (target.floor() as i64, 1u64);
    let mut v = target;
    for _ in 0..64 {
        if (p1 as f64 / q1 as f64 - target).abs() <= goal {
            let num = if negative { -p1 } else { p1 };
            return Some((num, q1));
        }
        let frac = v - v.floor();
        if frac < 1e-15 {
            return None;
        }
        v = 1.0 / frac;
        let a = v.floor() as i64;
        let p2 = a.checked_mul(p1)?.checked_add(p0)?;
        let q2 = (a as u64).checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den {
            return None;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_i64(x)).collect()
    }

    #[test]
    fn solve_square() {
        let cols = vec![rv(&[1, 0]), rv(&[1, 1])];
        let sol = solve_columns(&cols, &rv(&[3, 2])).unwrap();
        assert_eq!(sol, rv(&[1, 2]));
    }

    #[test]
    fn solve_overdetermined_consistent() {
        let cols = vec![rv(&[1, 1, 1]), rv(&[0, 1, 2])];
        let sol = solve_columns(&cols, &rv(&[5, 6, 7])).unwrap();
        assert_eq!(sol, rv(&[5, 1]));
    }

    #[test]
    fn solve_inconsistent() {
        let cols = vec![rv(&[1, 1, 1])];
        assert!(solve_columns(&cols, &rv(&[1, 1, 2])).is_none());
    }

    #[test]
    fn echelon_rank() {
        let mut e = Echelon::new();
        assert!(e.insert(rv(&[1, 2, 3])));
        assert!(e.insert(rv(&[0, 1, 1])));
        assert!(!e.insert(rv(&[1, 3, 4])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn snap_displays() {
        assert_eq!(snap_rational(5.0 / 6.0, 10_000, 1e-9), Some((5, 6)));
        assert_eq!(snap_rational(-8.0 / 3.0, 10_000, 1e-9), Some((-8, 3)));
        assert_eq!(snap_rational(2.0_f64.sqrt(), 10, 1e-12), None);
    }
}
