//! Small exact linear algebra over ℚ and ℤ.
//!
//! Matrices are dense `Vec<Vec<_>>` in row-major order. Everything here is
//! sized for the rank-10 lattice work, not for large systems.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::Rational;

pub type QMatrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> QMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::from_integer(1) } else { Rational::zero() })
                .collect()
        })
        .collect()
}

pub fn from_int(m: &[Vec<i128>]) -> QMatrix {
    m.iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
        .collect()
}

pub fn transpose(m: &QMatrix) -> QMatrix {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + row[k] * b[k][j]))
                .collect()
        })
        .collect()
}

/// Row echelon reduction in place; returns the pivot columns.
fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let t = m[r][j] * f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &QMatrix) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

pub fn det(m: &QMatrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rational::from_integer(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c];
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c] / a[c][c];
            for j in c..n {
                let t = a[c][j] * f;
                a[i][j] -= t;
            }
        }
    }
    d
}

/// Basis of the right null space `{x : m x = 0}`.
pub fn nullspace(m: &QMatrix) -> Vec<Vec<Rational>> {
    if m.is_empty() {
        return vec![];
    }
    let cols = m[0].len();
    let mut w = m.clone();
    let pivots = rref(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::from_integer(1);
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -w[r][f];
            }
            x
        })
        .collect()
}

/// Solves `m x = b`, returning one solution if the system is consistent.
pub fn solve(m: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut aug: QMatrix = m
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut r = r.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols];
    }
    Some(x)
}

pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let mut aug: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| Rational::from_integer((i == j) as i128)));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inertia of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Inertia by exact symmetric Gaussian elimination (Sylvester's law).
///
/// Pivots on the lowest-index nonzero diagonal entry. When the remaining
/// diagonal vanishes identically but an off-diagonal entry `a[i][j]` does not,
/// the congruence `e_i ← e_i + e_j` produces the nonzero diagonal `2 a[i][j]`.
pub fn signature(gram: &QMatrix) -> Signature {
    let n = gram.len();
    let mut a = gram.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut positive, mut negative) = (0, 0);
    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let p = active.remove(pos);
            let d = a[p][p];
            if d.is_positive() {
                positive += 1;
            } else {
                negative += 1;
            }
            for &i in &active {
                if a[i][p].is_zero() {
                    continue;
                }
                let f = a[i][p] / d;
                for &j in &active {
                    let t = f * a[p][j];
                    a[i][j] -= t;
                }
            }
            continue;
        }
        let hit = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = hit else {
            break;
        };
        for k in 0..n {
            let t = a[j][k];
            a[i][k] += t;
        }
        for k in 0..n {
            let t = a[k][j];
            a[k][i] += t;
        }
    }
    Signature {
        positive,
        negative,
        zero: n - positive - negative,
    }
}

/// Row-style Hermite normal form over ℤ; returns the nonzero rows.
///
/// Rows are upper triangular with positive pivots, and entries above each
/// pivot are reduced into `[0, pivot)`.
pub fn hermite_rows(m: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let rows = a.len();
    if rows == 0 {
        return vec![];
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid on column c among rows r.. until a single nonzero remains.
        loop {
            let nz: Vec<usize> = (r..rows).filter(|&i| a[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[i][c] != 0 {
                    let q = Integer::div_floor(&a[i][c], &a[r][c]);
                    for j in 0..cols {
                        let t = q * a[r][j];
                        a[i][j] -= t;
                    }
                    if a[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[r][c] == 0 {
            continue;
        }
        if a[r][c] < 0 {
            for x in a[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let q = Integer::div_floor(&a[i][c], &a[r][c]);
            if q != 0 {
                for j in 0..cols {
                    let t = q * a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}
