//! Exhaustive complement sweeps: all vectors of a given norm whose complement has a given
//! determinant, grouped into isomorphism classes.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::enumerate::{canonical_sign, for_each_up_to};
use crate::error::Result;
use crate::isometry::{fingerprint, is_isomorphic, Fingerprint};
use crate::lattice::Lattice;
use crate::names::LatticeName;
use crate::par;
use crate::reduce;

#[derive(Clone, Debug)]
pub struct ComplementClass {
    pub lattice: Lattice,
    pub count: usize,
    pub example: Vec<i64>,
}

/// Isomorphism classes in order of first appearance.
pub(crate) struct ClassSet {
    pub(crate) classes: Vec<(Lattice, Fingerprint, Vec<usize>)>,
    exact: HashMap<Vec<i64>, usize>,
}

fn gram_key(l: &Lattice) -> Vec<i64> {
    let mut key = vec![l.rank() as i64];
    key.extend_from_slice(l.flat());
    key
}

impl ClassSet {
    pub(crate) fn new() -> Self {
        ClassSet { classes: Vec::new(), exact: HashMap::new() }
    }

    /// Groups `lattices` by isomorphism; each class keeps the size-reduced form of its
    /// first member.
    pub(crate) fn build(lattices: &[Lattice]) -> Result<Self> {
        let prepared = par::map(lattices, |l| -> Result<(Lattice, Fingerprint)> {
            let r = reduce::reduce(l)?.lattice;
            let fp = fingerprint(&r)?;
            Ok((r, fp))
        });
        let mut set = ClassSet::new();
        for (i, item) in prepared.into_iter().enumerate() {
            let (l, fp) = item?;
            set.insert(l, fp, i)?;
        }
        Ok(set)
    }

    pub(crate) fn insert(&mut self, l: Lattice, fp: Fingerprint, member: usize) -> Result<usize> {
        let key = gram_key(&l);
        if let Some(&idx) = self.exact.get(&key) {
            self.classes[idx].2.push(member);
            return Ok(idx);
        }
        for (idx, (rep, rep_fp, members)) in self.classes.iter_mut().enumerate() {
            if *rep_fp == fp && is_isomorphic(rep, &l)? {
                members.push(member);
                self.exact.insert(key, idx);
                return Ok(idx);
            }
        }
        self.classes.push((l, fp, vec![member]));
        self.exact.insert(key, self.classes.len() - 1);
        Ok(self.classes.len() - 1)
    }
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub norm: i64,
    pub det: BigInt,
    /// Vectors of the given norm, one per `±` pair.
    pub examined: usize,
    pub qualifying: usize,
    pub classes: Vec<ComplementClass>,
}

/// Every `v` with `v² = norm` and `|det(v^⊥)| = det`, with complements grouped by isomorphism.
/// The determinant is selected through `|det(v^⊥)| · d² = v² · |det(M)|`, `d` the pairing gcd,
/// and then confirmed on the complement itself.
pub fn complement_sweep(ambient: &Lattice, norm: i64, det: &BigInt) -> Result<SweepReport> {
    let det_m = ambient.det().abs();
    let mut examined = 0;
    let mut picked: Vec<Vec<i64>> = Vec::new();
    let mut failure = None;
    for_each_up_to(ambient, norm, |v, n| {
        if n != norm {
            return true;
        }
        examined += 1;
        match ambient.pairing_gcd(v) {
            Ok(d) => {
                if det * BigInt::from(d).pow(2) == BigInt::from(norm) * &det_m {
                    let mut v = v.to_vec();
                    canonical_sign(&mut v);
                    picked.push(v);
                }
                true
            }
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    picked.sort();
    let complements = par::map(&picked, |v| ambient.complement(v));
    let complements = complements.into_iter().collect::<Result<Vec<_>>>()?;
    for c in &complements {
        assert_eq!(&c.det().abs(), det, "determinant formula disagrees with the complement");
    }
    let set = ClassSet::build(&complements)?;
    let classes = set
        .classes
        .into_iter()
        .map(|(lattice, _, members)| ComplementClass {
            lattice,
            count: members.len(),
            example: picked[members[0]].clone(),
        })
        .collect();
    Ok(SweepReport { norm, det: det.clone(), examined, qualifying: picked.len(), classes })
}

#[derive(Clone, Debug)]
pub struct FamilyStep {
    pub n: u32,
    pub report: SweepReport,
    pub expected: Vec<LatticeName>,
    /// Every class matches an expected lattice and every expected lattice occurs.
    pub holds: bool,
}

fn family_step(from: LatticeName, n: u32, expected: Vec<LatticeName>) -> Result<FamilyStep> {
    let m = from.make()?;
    let n64 = n as i64;
    let report = complement_sweep(&m, n64 * (n64 + 1), &BigInt::from(n + 1))?;
    let targets = expected.iter().map(|e| e.make()).collect::<Result<Vec<_>>>()?;
    let mut seen = vec![false; targets.len()];
    let mut every_class_known = true;
    for class in &report.classes {
        let mut hit = false;
        for (t, s) in targets.iter().zip(seen.iter_mut()) {
            if is_isomorphic(&class.lattice, t)? {
                *s = true;
                hit = true;
            }
        }
        every_class_known &= hit;
    }
    let holds = every_class_known && seen.iter().all(|&s| s);
    Ok(FamilyStep { n, report, expected, holds })
}

/// Complements in `T_n` of vectors with `v² = n(n+1)` and determinant `n+1`, for `1 ≤ n ≤ 7`.
pub fn t_family_step(n: u32) -> Result<FamilyStep> {
    if !(1..=7).contains(&n) {
        return Err(crate::Error::OutOfRange(format!("T-family step needs 1 <= n <= 7, got {n}")));
    }
    family_step(LatticeName::T(n), n, vec![LatticeName::T(n + 1)])
}

/// The same sweep in `C_n` for `1 ≤ n ≤ 11`; at `n = 3` both `C4` and `D9` occur.
pub fn c_family_step(n: u32) -> Result<FamilyStep> {
    if !(1..=11).contains(&n) {
        return Err(crate::Error::OutOfRange(format!("C-family step needs 1 <= n <= 11, got {n}")));
    }
    let mut expected = vec![LatticeName::C(n + 1)];
    if n == 3 {
        expected.push(LatticeName::D(9));
    }
    family_step(LatticeName::C(n), n, expected)
}

/// Whether `D9` has a vector of norm 20 whose complement has determinant 5.
pub fn d9_has_step() -> Result<bool> {
    let report = complement_sweep(&LatticeName::D(9).make()?, 20, &BigInt::from(5))?;
    Ok(report.qualifying > 0)
}

pub(crate) fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0i64, |g, &x| g.gcd(&x))
}
