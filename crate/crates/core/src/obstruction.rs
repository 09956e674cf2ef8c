//! Inductive search for reduced positive definite fillings of `+n` surgeries.
//!
//! Row `n` is built from row `n − 1`: a filling `L` of `+n` surgery sits inside `M ⊕ ⟨1⟩^k` as
//! the complement of a vector `v` with `v² = n(n−1)` and pairing gcd `n − 1`, where `M` fills
//! `+(n−1)` surgery. The unit part of `v` is `(n−1)·b` with `b² ≤ n/(n−1)`, so two unit
//! coordinates always suffice.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use crate::enumerate::{canonical_sign, delta_lattice, for_each_up_to, reduced_part};
use crate::error::{Error, Result};
use crate::floer::{delta_y, KnotSpec};
use crate::lattice::{Lattice, LatticeVector};
use crate::names::LatticeName;
use crate::recognize::{family_aliases, recognize};
use crate::sweep::{gcd_all, ClassSet};

pub const PADDING: usize = 2;
pub const MAX_N: u64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RokhlinVerdict {
    /// Only `L ⊕ ⟨1⟩^k` with `k ≥ 1` can fill.
    ExcludedBare,
    Unconstrained,
}

impl fmt::Display for RokhlinVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RokhlinVerdict::ExcludedBare => "excluded-bare",
            RokhlinVerdict::Unconstrained => "unconstrained",
        })
    }
}

/// The mod-8 test for any `(L, n)`: `L` even, `1 − r ≢ 0 (mod 16)` and `n ≢ 1 − r (mod 8)`.
/// Reported for auditing only.
pub fn rokhlin_congruence(l: &Lattice, n: u64) -> RokhlinVerdict {
    let r = l.rank() as i64;
    let sig = 1 - r;
    let n = n as i64;
    if l.is_even() && sig.rem_euclid(16) != 0 && (n - sig).rem_euclid(8) != 0 {
        RokhlinVerdict::ExcludedBare
    } else {
        RokhlinVerdict::Unconstrained
    }
}

/// The congruence restricted to `n = 2` and even lattices of rank 9.
pub fn rokhlin_obstruction(l: &Lattice, n: u64) -> RokhlinVerdict {
    if n == 2 && l.rank() == 9 {
        rokhlin_congruence(l, n)
    } else {
        RokhlinVerdict::Unconstrained
    }
}

/// Canonical unit parts `b` (non-negative, non-increasing, length `p`) with `(n−1)·b² ≤ n`.
pub fn padding_offsets(n: u64, p: usize) -> Vec<Vec<i64>> {
    let n = n as i64;
    let limit = |sq: i64| (n - 1) * sq <= n;
    let mut out = Vec::new();
    fn walk(p: usize, cur: &mut Vec<i64>, sq: i64, ok: &dyn Fn(i64) -> bool, out: &mut Vec<Vec<i64>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        let cap = cur.last().copied().unwrap_or(i64::MAX);
        let mut c = 0;
        while c <= cap && ok(sq + c * c) {
            cur.push(c);
            walk(p, cur, sq + c * c, ok, out);
            cur.pop();
            c += 1;
        }
    }
    walk(p, &mut Vec::new(), 0, &limit, &mut out);
    out
}

fn candidates_padded(m: &Lattice, n: u64, p: usize) -> Result<Vec<Vec<i64>>> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("candidate vectors need n >= 2, got {n}")));
    }
    let d = (n - 1) as i64;
    let total = (n * (n - 1)) as i64;
    let mut out = Vec::new();
    for b in padding_offsets(n, p) {
        let y: Vec<i64> = b.iter().map(|c| c * d).collect();
        let ysq: i64 = y.iter().map(|c| c * c).sum();
        let nx = total - ysq;
        let gy = gcd_all(&y);
        if nx == 0 {
            if gy == d {
                out.push([vec![0; m.rank()], y].concat());
            }
            continue;
        }
        if m.rank() == 0 {
            continue;
        }
        let mut xs: Vec<Vec<i64>> = Vec::new();
        let mut failure = None;
        for_each_up_to(m, nx, |x, norm| {
            if norm != nx {
                return true;
            }
            match m.pairings(x) {
                Ok(gx) => {
                    if gx.iter().all(|c| c % d == 0) && gcd_all(&gx).gcd(&gy) == d {
                        let mut x = x.to_vec();
                        canonical_sign(&mut x);
                        xs.push(x);
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
        xs.sort();
        out.extend(xs.into_iter().map(|x| [x, y.clone()].concat()));
    }
    Ok(out)
}

/// Vectors `v ∈ M ⊕ ⟨1⟩²` with `v² = n(n−1)` and pairing gcd `n − 1`, up to sign changes and
/// permutations of the unit coordinates.
pub fn candidate_vectors(m: &Lattice, n: u64) -> Result<Vec<LatticeVector>> {
    Ok(candidates_padded(m, n, PADDING)?.into_iter().map(LatticeVector::from_coords).collect())
}

fn ambient(m: &Lattice, p: usize) -> Lattice {
    m.direct_sum(&Lattice::diagonal(&vec![1; p]))
}

/// Whether allowing one more unit coordinate can produce a candidate missed with `p`.
pub fn padding_suffices(n: u64, p: usize) -> bool {
    padding_offsets(n, p + 1).iter().all(|b| b[p] == 0)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub survived_delta: bool,
    pub survived_rokhlin: bool,
    pub needs_unit_padding: bool,
}

#[derive(Clone, Debug)]
pub struct Filling {
    /// Reduced, positive definite, `|det| = n`.
    pub lattice: Lattice,
    pub name: Option<LatticeName>,
    pub aliases: Vec<LatticeName>,
    pub delta: BigRational,
    pub flags: Flags,
    pub rokhlin_audit: RokhlinVerdict,
    /// Number of `(M, v)` pairs producing this class.
    pub sources: usize,
}

impl Filling {
    pub fn label(&self) -> String {
        let base = match &self.name {
            Some(n) => n.pretty(),
            None => format!("unrecognized(rank {}, det {})", self.lattice.rank(), self.lattice.det()),
        };
        if self.aliases.is_empty() {
            base
        } else {
            let a: Vec<String> = self.aliases.iter().map(|a| a.pretty()).collect();
            format!("{base} = {}", a.join(" = "))
        }
    }
}

#[derive(Clone, Debug)]
pub struct FillingRow {
    pub n: u64,
    pub delta_y: BigRational,
    pub kept: Vec<Filling>,
    pub discarded: Vec<Filling>,
    pub candidates: usize,
    pub padding_checked: bool,
}

#[derive(Clone, Debug)]
pub struct FillingTable {
    pub spec: KnotSpec,
    pub rows: Vec<FillingRow>,
}

impl FillingTable {
    pub fn row(&self, n: u64) -> Option<&FillingRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

fn describe(lattice: Lattice, n: u64, delta_y: &BigRational, sources: usize) -> Result<Filling> {
    let delta = delta_lattice(&lattice)?;
    let survived_delta = &delta <= delta_y;
    let verdict = rokhlin_obstruction(&lattice, n);
    let name = recognize(&lattice)?;
    let aliases = family_aliases(&lattice)?
        .into_iter()
        .filter(|a| name.as_ref().is_none_or(|nm| nm.pretty() != a.pretty()))
        .collect();
    Ok(Filling {
        name,
        aliases,
        delta,
        flags: Flags {
            survived_delta,
            survived_rokhlin: true,
            needs_unit_padding: verdict == RokhlinVerdict::ExcludedBare,
        },
        rokhlin_audit: rokhlin_congruence(&lattice, n),
        sources,
        lattice,
    })
}

fn split(fillings: Vec<Filling>) -> (Vec<Filling>, Vec<Filling>) {
    fillings.into_iter().partition(|f| f.flags.survived_delta)
}

fn first_row(spec: &KnotSpec) -> Result<FillingRow> {
    let delta_y = delta_y(spec, 1)?;
    let set = ClassSet::build(&spec.base_fillings)?;
    let fillings = set
        .classes
        .into_iter()
        .map(|(l, _, members)| describe(l, 1, &delta_y, members.len()))
        .collect::<Result<Vec<_>>>()?;
    let (kept, discarded) = split(fillings);
    Ok(FillingRow { n: 1, delta_y, kept, discarded, candidates: spec.base_fillings.len(), padding_checked: true })
}

/// Row `n` from the complete row `n − 1`.
pub fn step(spec: &KnotSpec, n: u64, prev: &[Lattice]) -> Result<FillingRow> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("step needs n >= 2, got {n}")));
    }
    let delta_y = delta_y(spec, n)?;
    let mut jobs: Vec<(usize, Vec<i64>)> = Vec::new();
    for (i, m) in prev.iter().enumerate() {
        jobs.extend(candidates_padded(m, n, PADDING)?.into_iter().map(|v| (i, v)));
    }
    let ambients: Vec<Lattice> = prev.iter().map(|m| ambient(m, PADDING)).collect();
    let reduced = crate::par::map(&jobs, |(i, v)| -> Result<Lattice> {
        let (_, l) = reduced_part(&ambients[*i].complement(v)?)?;
        Ok(l)
    });
    let target = BigInt::from(n);
    let mut lattices = Vec::with_capacity(reduced.len());
    for l in reduced {
        let l = l?;
        if l.det().abs() == target {
            lattices.push(l);
        }
    }
    let set = ClassSet::build(&lattices)?;
    let fillings = set
        .classes
        .into_iter()
        .map(|(l, _, members)| describe(l, n, &delta_y, members.len()))
        .collect::<Result<Vec<_>>>()?;
    let (kept, discarded) = split(fillings);
    Ok(FillingRow {
        n,
        delta_y,
        kept,
        discarded,
        candidates: jobs.len(),
        padding_checked: padding_suffices(n, PADDING),
    })
}

pub fn classify_fillings(spec: &KnotSpec, n_max: u64) -> Result<FillingTable> {
    if !(1..=MAX_N).contains(&n_max) {
        return Err(Error::OutOfRange(format!("n_max must be in 1..={MAX_N}, got {n_max}")));
    }
    let mut rows = vec![first_row(spec)?];
    for n in 2..=n_max {
        let prev: Vec<Lattice> = rows.last().expect("row").kept.iter().map(|f| f.lattice.clone()).collect();
        rows.push(step(spec, n, &prev)?);
    }
    Ok(FillingTable { spec: spec.clone(), rows })
}
