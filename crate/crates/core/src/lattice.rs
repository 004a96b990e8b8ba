//! Integer lattices: echelon (Hermite) forms, determinants, adjugates and
//! rational linear solves. Matrices are row-major `Vec<Vec<_>>`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactalg::Rat;

pub type Mat = Vec<Vec<BigInt>>;

pub fn to_big(m: &[Vec<i128>]) -> Mat {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Hermite normal form of the row lattice: rows in echelon form with
/// strictly increasing pivot columns, positive pivots, and entries above
/// each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(m: &[Vec<BigInt>]) -> Mat {
    let mut rows: Mat = m
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    if rows.is_empty() {
        return rows;
    }
    let ncols = rows[0].len();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in this column at or below `top`
            let mut best: Option<usize> = None;
            for i in top..rows.len() {
                if !rows[i][col].is_zero()
                    && best.is_none_or(|b| rows[i][col].abs() < rows[b][col].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(top, b);
            let mut done = true;
            for i in top + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[top][col]);
                let pivot = rows[top].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot.iter()) {
                    *x -= &q * y;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top < rows.len() && !rows[top][col].is_zero() {
            if rows[top][col].is_negative() {
                for x in rows[top].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pivot = rows[top].clone();
            for i in 0..top {
                let q = rows[i][col].div_floor(&pivot[col]);
                if !q.is_zero() {
                    for (x, y) in rows[i].iter_mut().zip(pivot.iter()) {
                        *x -= &q * y;
                    }
                }
            }
            top += 1;
        }
    }
    rows.truncate(top);
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    rows
}

/// Determinant by fraction-free elimination.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Mat = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// Adjugate: `adj(m) · m = det(m) · I`.
pub fn adjugate(m: &[Vec<BigInt>]) -> Mat {
    let n = m.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Mat = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let d = det(&minor);
            // cofactor (i, j) goes to adjugate entry (j, i)
            out[j][i] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    out
}

/// Solves `c · rows = v` over the rationals. `None` if `rows` is singular.
pub fn solve_left_rat(rows: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let n = rows.len();
    // augmented system rows^T c^T = v^T
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let mut r: Vec<Rat> = (0..n).map(|i| rows[i][j].clone()).collect();
            r.push(v[j].clone());
            r
        })
        .collect();
    for k in 0..n {
        let s = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, s);
        let piv = a[k][k].clone();
        for x in a[k].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                let pr = a[k].clone();
                for (x, y) in a[i].iter_mut().zip(pr.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

/// Representatives `0 <= e_i < h_ii` of `Z^n / L` for a full-rank lattice
/// given by its Hermite rows.
pub fn coset_box(h: &[Vec<BigInt>]) -> Vec<BigInt> {
    (0..h.len()).map(|i| h[i][i].clone()).collect()
}

pub fn mat_vec(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|r| {
            r.iter()
                .zip(v)
                .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}
