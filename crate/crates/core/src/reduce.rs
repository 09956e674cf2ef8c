//! Exact basis reduction for positive definite Gram matrices.
//!
//! Pairwise size reduction (`b_i ← b_i − q·b_j` whenever it strictly shortens `b_i`)
//! followed by sorting by norm. When a short-vector pass is requested, basis vectors
//! are additionally exchanged for shorter lattice vectors that keep the basis unimodular.

use crate::enumerate;
use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// A reduced basis together with the change of basis.
///
/// Rows of `transform` express the new basis in the old one, so
/// `gram = transform · old · transformᵀ`; `inverse` is its integral inverse.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub lattice: Lattice,
    pub transform: Vec<Vec<i64>>,
    pub inverse: Vec<Vec<i64>>,
}

struct Work {
    r: usize,
    g: Vec<i128>,
    t: Vec<i128>,
    ti: Vec<i128>,
}

const LIMIT: i128 = 1 << 62;

impl Work {
    fn new(l: &Lattice) -> Self {
        let r = l.rank();
        let mut t = vec![0; r * r];
        for i in 0..r {
            t[i * r + i] = 1;
        }
        Work { r, g: l.flat().iter().map(|&x| x as i128).collect(), t: t.clone(), ti: t }
    }

    fn at(&self, i: usize, j: usize) -> i128 {
        self.g[i * self.r + j]
    }

    /// `b_i ← b_i − q·b_j`.
    fn subtract(&mut self, i: usize, j: usize, q: i128) -> Result<()> {
        let r = self.r;
        let gjj = self.at(j, j);
        let gij = self.at(i, j);
        let new_ii = self.at(i, i) - 2 * q * gij + q * q * gjj;
        for k in 0..r {
            if k == i {
                continue;
            }
            let v = self.g[i * r + k] - q * self.g[j * r + k];
            self.g[i * r + k] = v;
            self.g[k * r + i] = v;
        }
        self.g[i * r + i] = new_ii;
        for k in 0..r {
            self.t[i * r + k] -= q * self.t[j * r + k];
            self.ti[k * r + j] += q * self.ti[k * r + i];
        }
        let bad = |x: &i128| x.abs() >= LIMIT;
        if self.g.iter().any(bad) || self.t.iter().any(bad) || self.ti.iter().any(bad) {
            return Err(Error::Overflow("basis reduction"));
        }
        Ok(())
    }

    fn pair_reduce(&mut self) -> Result<()> {
        loop {
            let mut changed = false;
            for i in 0..self.r {
                for j in 0..self.r {
                    if i == j {
                        continue;
                    }
                    let nj = self.at(j, j);
                    let p = self.at(i, j);
                    if nj <= 0 || 2 * p.abs() <= nj {
                        continue;
                    }
                    let q = round_div(p, nj);
                    let ni = self.at(i, i);
                    if ni - 2 * q * p + q * q * nj < ni {
                        self.subtract(i, j, q)?;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn sort(&mut self) {
        let r = self.r;
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by_key(|&i| self.at(i, i));
        let g = (0..r * r).map(|k| self.at(order[k / r], order[k % r])).collect();
        let t = (0..r * r).map(|k| self.t[order[k / r] * r + k % r]).collect();
        let ti = (0..r * r).map(|k| self.ti[(k / r) * r + order[k % r]]).collect();
        self.g = g;
        self.t = t;
        self.ti = ti;
    }

    fn lattice(&self) -> Lattice {
        Lattice::from_flat_unchecked(self.r, self.g.iter().map(|&x| x as i64).collect())
    }

    fn finish(self) -> Reduced {
        let r = self.r;
        let rows = |m: &[i128]| -> Vec<Vec<i64>> {
            (0..r).map(|i| (0..r).map(|j| m[i * r + j] as i64).collect()).collect()
        };
        Reduced { lattice: self.lattice(), transform: rows(&self.t), inverse: rows(&self.ti) }
    }

    /// Replace the longest basis vector that can be exchanged for a strictly shorter
    /// lattice vector. Returns whether a replacement happened.
    fn exchange(&mut self, cap: usize) -> Result<bool> {
        let r = self.r;
        let Some(longest) = (0..r).map(|i| self.at(i, i)).max() else { return Ok(false) };
        if longest <= 1 {
            return Ok(false);
        }
        let current = self.lattice();
        let mut short = Vec::new();
        enumerate::for_each_up_to(&current, longest as i64 - 1, |v, n| {
            short.push((n, v.to_vec()));
            short.len() < cap
        })?;
        short.sort();
        for (n, v) in short {
            let target = (0..r)
                .filter(|&k| v[k].abs() == 1 && self.at(k, k) > n as i128)
                .max_by_key(|&k| (self.at(k, k), k));
            if let Some(k) = target {
                // b_k ← Σ v_j b_j is unimodular because |v_k| = 1.
                let s = v[k] as i128;
                for j in 0..r {
                    if j != k && v[j] != 0 {
                        self.subtract(k, j, -(v[j] as i128) * s)?;
                    }
                }
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn round_div(p: i128, n: i128) -> i128 {
    let (q, r) = (p.div_euclid(n), p.rem_euclid(n));
    if 2 * r > n {
        q + 1
    } else {
        q
    }
}

/// Pairwise size reduction only.
pub fn pair_reduce(l: &Lattice) -> Result<Reduced> {
    l.require_positive_definite()?;
    let mut w = Work::new(l);
    w.pair_reduce()?;
    w.sort();
    Ok(w.finish())
}

/// Pairwise reduction plus exchanges with short vectors; used where small
/// diagonal entries matter (isomorphism testing, pipeline outputs).
pub fn reduce(l: &Lattice) -> Result<Reduced> {
    l.require_positive_definite()?;
    let mut w = Work::new(l);
    w.pair_reduce()?;
    for _ in 0..4 * l.rank() + 4 {
        if !w.exchange(200_000)? {
            break;
        }
        w.pair_reduce()?;
    }
    w.sort();
    Ok(w.finish())
}

pub(crate) fn apply(rows: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    // coordinates of v (given in the new basis) in the old basis: vᵀ·T
    let r = v.len();
    (0..r).map(|j| (0..r).map(|i| v[i] * rows[i][j]).sum()).collect()
}
