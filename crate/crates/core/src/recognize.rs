//! Naming lattices by searching small direct sums of catalog lattices.

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::constructions::hj_expansion;
use crate::enumerate::reduced_part;
use crate::error::Result;
use crate::isometry::{guard, is_isomorphic};
use crate::lattice::Lattice;
use crate::names::LatticeName;
use crate::roots::{root_decomposition_reduced, RootComponent};

const MAX_SUMMANDS: usize = 4;
const CHAIN_DET_LIMIT: u64 = 20_000;

struct Single {
    name: LatticeName,
    lattice: Lattice,
    rank: usize,
    det: u64,
    even: bool,
    roots: Vec<RootComponent>,
}

fn chains(m: u64, max_rank: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for q in 1..m {
        if q.gcd(&m) != 1 {
            continue;
        }
        let Ok(t) = hj_expansion(m as i64, q as i64) else { continue };
        if t.len() < 2 || t.len() > max_rank || t.iter().all(|&x| x == 2) {
            continue;
        }
        let rev: Vec<i64> = t.iter().rev().copied().collect();
        let t = if rev < t { rev } else { t };
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out.sort();
    out
}

fn catalog(rank: usize, det: u64) -> Result<Vec<Single>> {
    let mut names: Vec<LatticeName> = Vec::new();
    let divides = |m: u64| m != 0 && det.is_multiple_of(m);
    for n in [8u32, 7, 6] {
        if n as usize <= rank && divides(9 - n as u64) {
            names.push(LatticeName::E(n));
        }
    }
    if divides(4) {
        names.extend((4..=rank as u32).rev().map(LatticeName::D));
    }
    names.extend((2..=rank as u32).rev().filter(|&n| divides(n as u64 + 1)).map(LatticeName::A));
    if rank >= 12 {
        names.push(LatticeName::Gamma12);
    }
    names.extend((2..=8u32).filter(|&n| 13 - n as usize <= rank && divides(n as u64)).map(LatticeName::C));
    let divisors: Vec<u64> = (2..=det).filter(|&m| det.is_multiple_of(m)).collect();
    if det <= CHAIN_DET_LIMIT {
        for &m in &divisors {
            names.extend(chains(m, rank).into_iter().map(LatticeName::Lambda));
        }
    }
    names.extend(divisors.iter().map(|&m| LatticeName::Diag(vec![m as i64])));

    let mut out = Vec::with_capacity(names.len());
    for name in names {
        let lattice = name.make()?;
        let roots = root_decomposition_reduced(&lattice)?.components;
        out.push(Single {
            rank: lattice.rank(),
            det: lattice.det().to_u64().unwrap_or(0),
            even: lattice.is_even(),
            roots,
            name,
            lattice,
        });
    }
    Ok(out)
}

struct Target {
    lattice: Lattice,
    rank: usize,
    det: u64,
    even: bool,
    roots: Vec<RootComponent>,
}

fn search(
    singles: &[Single],
    target: &Target,
    start: usize,
    picked: &mut Vec<usize>,
    rank: usize,
    det: u64,
) -> Result<Option<Vec<usize>>> {
    if rank == target.rank && det == target.det {
        let even = picked.iter().all(|&i| singles[i].even);
        let mut roots: Vec<RootComponent> = picked.iter().flat_map(|&i| singles[i].roots.clone()).collect();
        roots.sort();
        if even == target.even && roots == target.roots {
            let mut sum = Lattice::empty();
            for &i in picked.iter() {
                sum = sum.direct_sum(&singles[i].lattice);
            }
            if is_isomorphic(&sum, &target.lattice)? {
                return Ok(Some(picked.clone()));
            }
        }
        return Ok(None);
    }
    if picked.len() == MAX_SUMMANDS || rank >= target.rank {
        return Ok(None);
    }
    for i in start..singles.len() {
        let s = &singles[i];
        let next_det = det * s.det;
        if rank + s.rank > target.rank || s.det == 0 || !target.det.is_multiple_of(next_det) {
            continue;
        }
        picked.push(i);
        if let Some(found) = search(singles, target, i, picked, rank + s.rank, next_det)? {
            return Ok(Some(found));
        }
        picked.pop();
    }
    Ok(None)
}

/// A catalog name whose lattice is isomorphic to `l`, if one is found among sums of at most
/// four catalog lattices plus unit summands.
pub fn recognize(l: &Lattice) -> Result<Option<LatticeName>> {
    guard(l)?;
    let (units, red) = reduced_part(l)?;
    let mut parts = Vec::new();
    if red.rank() > 0 {
        let Some(det) = red.det().to_u64() else { return Ok(None) };
        let target = Target {
            rank: red.rank(),
            det,
            even: red.is_even(),
            roots: root_decomposition_reduced(&red)?.components,
            lattice: red,
        };
        let singles = catalog(target.rank, det)?;
        match search(&singles, &target, 0, &mut Vec::new(), 0, 1)? {
            Some(found) => parts.extend(found.into_iter().map(|i| singles[i].name.clone())),
            None => return Ok(None),
        }
    }
    if units > 0 {
        parts.push(LatticeName::Diag(vec![1; units]));
    }
    Ok(Some(match parts.len() {
        1 => parts.pop().expect("one part"),
        _ => LatticeName::Sum(parts),
    }))
}

/// `T_n` and `C_n` names isomorphic to `l`.
pub fn family_aliases(l: &Lattice) -> Result<Vec<LatticeName>> {
    guard(l)?;
    let det = l.det();
    let mut out = Vec::new();
    let families = (1..=8u32).map(LatticeName::T).chain((1..=12u32).map(LatticeName::C));
    for name in families {
        let m = name.make()?;
        if m.rank() == l.rank() && m.det() == det && m.is_even() == l.is_even() && is_isomorphic(&m, l)? {
            out.push(name);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name_of(s: &str) -> String {
        let l = LatticeName::parse(s).unwrap().make().unwrap();
        recognize(&l).unwrap().map(|n| n.pretty()).unwrap_or_default()
    }

    #[test]
    fn catalog_names() {
        assert_eq!(name_of("diag(1)+E8"), "E8 ⊕ ⟨1⟩");
        assert_eq!(name_of("T6"), "A2 ⊕ ⟨2⟩");
        assert_eq!(name_of("C11"), "Λ(3,4)");
        assert_eq!(name_of("diag(1,1)"), "⟨1⟩^2");
        assert_eq!(name_of("Gamma12+diag(3)"), "Γ12 ⊕ ⟨3⟩");
        assert_eq!(name_of("C4"), "C4");
        assert_eq!(name_of("D9"), "D9");
    }

    #[test]
    fn chain_orientation() {
        let l = LatticeName::C(9).make().unwrap();
        let found = recognize(&l).unwrap().unwrap();
        assert!(matches!(found, LatticeName::Lambda(_)));
        assert!(is_isomorphic(&found.make().unwrap(), &LatticeName::parse("Lambda(3,2,2,2)").unwrap().make().unwrap()).unwrap());
    }

    #[test]
    fn sign_flip() {
        let l = Lattice::new(vec![vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(recognize(&l).unwrap(), Some(LatticeName::A(2)));
    }

    #[test]
    fn aliases() {
        let e7 = LatticeName::E(7).make().unwrap();
        assert_eq!(family_aliases(&e7).unwrap(), [LatticeName::T(2)]);
        let g = LatticeName::Gamma12.make().unwrap();
        assert_eq!(family_aliases(&g).unwrap(), [LatticeName::C(1)]);
    }
}
