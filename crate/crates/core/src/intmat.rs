//! Exact integer matrix routines over `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn to_i64(rows: &Matrix, ctx: &'static str) -> Result<Vec<Vec<i64>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().ok_or(Error::Overflow(ctx)))
                .collect()
        })
        .collect()
}

/// Bareiss elimination with row pivoting.
pub fn det(m: &Matrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Leading principal minors `Δ_1, …, Δ_n` by fraction-free elimination without pivoting.
/// Stops early (returning fewer minors) at the first zero.
pub fn leading_minors(m: &Matrix) -> Vec<BigInt> {
    let n = m.len();
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            out.push(BigInt::zero());
            return out;
        }
        out.push(a[k][k].clone());
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    out
}

/// Adjugate of a square matrix, `adj(M)·M = det(M)·I`.
pub fn adjugate(m: &Matrix) -> Matrix {
    let n = m.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![vec![BigInt::one()]];
    }
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Matrix = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let d = det(&minor);
            adj[i][j] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

/// Row-style Hermite normal form of the row span. Zero rows are dropped.
pub fn hnf(rows: &Matrix) -> Matrix {
    let mut a: Matrix = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let k = a.len();
    if k == 0 {
        return a;
    }
    let cols = a[0].len();
    let mut row = 0;
    for col in 0..cols {
        if row == k {
            break;
        }
        loop {
            let piv = (row..k)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()));
            let Some(p) = piv else { break };
            a.swap(row, p);
            let mut clean = true;
            for i in row + 1..k {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[row][col]);
                let (head, tail) = a.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[row]) {
                    *x -= &q * y;
                }
                if !a[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[row][col].is_zero() {
            continue;
        }
        if a[row][col].is_negative() {
            for x in a[row].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..row {
            let q = a[i][col].div_floor(&a[row][col]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = a.split_at_mut(row);
            for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                *x -= &q * y;
            }
        }
        row += 1;
    }
    a.truncate(row);
    a
}

/// Basis of the integer kernel `{w : p·w = 0}` by unimodular column reduction, in HNF.
pub fn row_kernel(p: &[BigInt]) -> Matrix {
    let r = p.len();
    let mut p = p.to_vec();
    let mut u: Matrix = (0..r)
        .map(|i| (0..r).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let pivot = loop {
        let piv = (0..r)
            .filter(|&j| !p[j].is_zero())
            .min_by(|&x, &y| p[x].abs().cmp(&p[y].abs()));
        let Some(piv) = piv else { break None };
        let mut done = true;
        for j in 0..r {
            if j == piv || p[j].is_zero() {
                continue;
            }
            let q = p[j].div_floor(&p[piv]);
            p[j] = &p[j] - &q * &p[piv];
            let col = u[piv].clone();
            for (x, y) in u[j].iter_mut().zip(&col) {
                *x -= &q * y;
            }
            if !p[j].is_zero() {
                done = false;
            }
        }
        if done {
            break Some(piv);
        }
    };
    let basis: Matrix = u
        .into_iter()
        .enumerate()
        .filter(|&(j, _)| Some(j) != pivot)
        .map(|(_, c)| c)
        .collect();
    hnf(&basis)
}

/// Rank over the rationals.
pub fn rank(rows: &Matrix) -> usize {
    hnf(rows).len()
}

/// `B · G · Bᵀ`.
pub fn congruence(b: &Matrix, g: &Matrix) -> Matrix {
    let bg: Matrix = b
        .iter()
        .map(|row| {
            (0..g.len())
                .map(|j| row.iter().zip(g).map(|(x, gr)| x * &gr[j]).sum())
                .collect()
        })
        .collect();
    bg.iter()
        .map(|row| {
            b.iter()
                .map(|other| row.iter().zip(other).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect()
}
