//! Isometry testing for positive definite lattices by backtracking over images of a
//! reduced basis among vectors of matching norm.

use std::collections::BTreeMap;

use crate::enumerate::{for_each_up_to, norm_counts};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::reduce::{self, Reduced};

pub const RANK_LIMIT: usize = 17;

/// Rows are the images of the basis of the first lattice, written in the basis of the
/// second: `W · G₂ · Wᵀ = G₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    pub matrix: Vec<Vec<i64>>,
}

impl Isometry {
    pub fn verify(&self, from: &Lattice, to: &Lattice) -> bool {
        to.sublattice(&self.matrix).map(|g| &g == from).unwrap_or(false)
    }
}

pub(crate) fn guard(l: &Lattice) -> Result<()> {
    if l.rank() > RANK_LIMIT {
        return Err(Error::RankGuard { rank: l.rank(), limit: RANK_LIMIT });
    }
    l.require_positive_definite()
}

pub fn is_isomorphic(a: &Lattice, b: &Lattice) -> Result<bool> {
    Ok(find_isometry(a, b)?.is_some())
}

/// Cheap invariants that every isometry preserves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub rank: usize,
    pub det: String,
    pub even: bool,
    pub counts: Vec<u64>,
}

pub fn fingerprint(l: &Lattice) -> Result<Fingerprint> {
    guard(l)?;
    Ok(Fingerprint {
        rank: l.rank(),
        det: l.det().to_string(),
        even: l.is_even(),
        counts: norm_counts(l, 4)?,
    })
}

pub fn find_isometry(a: &Lattice, b: &Lattice) -> Result<Option<Isometry>> {
    guard(a)?;
    guard(b)?;
    if a.rank() != b.rank() || a.is_even() != b.is_even() || a.det() != b.det() {
        return Ok(None);
    }
    let r = a.rank();
    if r == 0 {
        return Ok(Some(Isometry { matrix: Vec::new() }));
    }
    let ra = reduce::reduce(a)?;
    let rb = reduce::reduce(b)?;
    let top = (0..r).map(|i| ra.lattice.entry(i, i)).max().unwrap_or(0).max(4);
    if norm_counts(&ra.lattice, top)? != norm_counts(&rb.lattice, top)? {
        return Ok(None);
    }
    let Some(images) = backtrack(&ra.lattice, &rb.lattice)? else { return Ok(None) };
    let w = compose(&ra, &images, &rb);
    let iso = Isometry { matrix: w };
    debug_assert!(iso.verify(a, b));
    Ok(Some(iso))
}

/// `T_a⁻¹ · U · T_b`.
fn compose(ra: &Reduced, u: &[Vec<i64>], rb: &Reduced) -> Vec<Vec<i64>> {
    let mul = |x: &[Vec<i64>], y: &[Vec<i64>]| -> Vec<Vec<i64>> {
        let n = y.len();
        x.iter()
            .map(|row| (0..n).map(|j| row.iter().zip(y).map(|(p, q)| p * q[j]).sum()).collect())
            .collect()
    };
    mul(&mul(&ra.inverse, u), &rb.transform)
}

struct Candidate {
    v: Vec<i64>,
    gv: Vec<i64>,
}

fn backtrack(ga: &Lattice, gb: &Lattice) -> Result<Option<Vec<Vec<i64>>>> {
    let r = ga.rank();
    let top = (0..r).map(|i| ga.entry(i, i)).max().unwrap_or(0);
    let mut pool: BTreeMap<i64, Vec<Candidate>> = BTreeMap::new();
    let mut err = None;
    for_each_up_to(gb, top, |v, n| {
        for sign in [1, -1] {
            let v: Vec<i64> = v.iter().map(|x| sign * x).collect();
            match gb.pairings(&v) {
                Ok(gv) => pool.entry(n).or_default().push(Candidate { v, gv }),
                Err(e) => err = Some(e),
            }
        }
        err.is_none()
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    let empty = Vec::new();
    let cands: Vec<&Vec<Candidate>> = (0..r).map(|i| pool.get(&ga.entry(i, i)).unwrap_or(&empty)).collect();

    // Place basis vectors with few candidates and many constraints first.
    let mut order: Vec<usize> = Vec::with_capacity(r);
    let mut used = vec![false; r];
    while order.len() < r {
        let next = (0..r)
            .filter(|&i| !used[i])
            .min_by_key(|&i| {
                let links = order.iter().filter(|&&j| ga.entry(i, j) != 0).count();
                (std::cmp::Reverse(links), cands[i].len(), i)
            })
            .expect("unplaced index exists");
        used[next] = true;
        order.push(next);
    }

    let mut chosen: Vec<usize> = Vec::with_capacity(r);
    if !dfs(ga, &order, &cands, &mut chosen) {
        return Ok(None);
    }
    let mut images = vec![Vec::new(); r];
    for (depth, &i) in order.iter().enumerate() {
        images[i] = cands[i][chosen[depth]].v.clone();
    }
    Ok(Some(images))
}

fn dfs(ga: &Lattice, order: &[usize], cands: &[&Vec<Candidate>], chosen: &mut Vec<usize>) -> bool {
    let depth = chosen.len();
    if depth == order.len() {
        return true;
    }
    let i = order[depth];
    'next: for (ci, c) in cands[i].iter().enumerate() {
        for (q, &cq) in chosen.iter().enumerate() {
            let j = order[q];
            let prev = &cands[j][cq];
            let dot: i64 = c.gv.iter().zip(&prev.v).map(|(x, y)| x * y).sum();
            if dot != ga.entry(i, j) {
                continue 'next;
            }
        }
        chosen.push(ci);
        if dfs(ga, order, cands, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
