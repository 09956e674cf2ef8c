//! Correction terms of integer surgeries from V-sequences.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::enumerate::reduced_part;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::names::LatticeName;

/// Largest slice-genus bound for which sequences are enumerated.
pub const MAX_GENUS: u32 = 4;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VSequence {
    values: Vec<u64>,
}

impl VSequence {
    /// Trailing zeros are dropped.
    pub fn new(mut values: Vec<u64>) -> Result<Self> {
        while values.last() == Some(&0) {
            values.pop();
        }
        for w in values.windows(2) {
            if w[1] > w[0] || w[1] + 1 < w[0] {
                return Err(Error::OutOfRange(format!(
                    "V-sequence must be non-increasing with drops of at most 1: {values:?}"
                )));
            }
        }
        if values.last().is_some_and(|&v| v > 1) {
            return Err(Error::OutOfRange(format!("V-sequence must drop to 0 in steps of 1: {values:?}")));
        }
        Ok(VSequence { values })
    }

    pub fn zero() -> Self {
        VSequence::default()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(VSequence::zero());
        }
        let values = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad V-sequence entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        VSequence::new(values)
    }

    pub fn get(&self, i: usize) -> u64 {
        self.values.get(i).copied().unwrap_or(0)
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Whether the sequence obeys `V_i ≤ ⌈(g − i)/2⌉` and vanishes from `g` on.
    pub fn fits_genus(&self, g: u32) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| {
            let i = i as i64;
            let g = g as i64;
            if i >= g {
                v == 0
            } else {
                v as i64 <= (g - i + 1) / 2
            }
        })
    }
}

impl fmt::Display for VSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn admissible_v_sequences(g: u32) -> Result<Vec<VSequence>> {
    if g > MAX_GENUS {
        return Err(Error::OutOfRange(format!("genus bound {g} exceeds {MAX_GENUS}")));
    }
    let caps: Vec<u64> = (0..g as i64).map(|i| ((g as i64 - i + 1) / 2) as u64).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn walk(caps: &[u64], cur: &mut Vec<u64>, out: &mut Vec<VSequence>) {
        let i = cur.len();
        if i == caps.len() {
            if cur.last().is_none_or(|&v| v <= 1) {
                out.push(VSequence::new(cur.clone()).expect("constructed within bounds"));
            }
            return;
        }
        let hi = match cur.last() {
            Some(&p) => p.min(caps[i]),
            None => caps[i],
        };
        let lo = cur.last().map_or(0, |&p| p.saturating_sub(1));
        for v in lo..=hi {
            cur.push(v);
            walk(caps, cur, out);
            cur.pop();
        }
    }
    walk(&caps, &mut cur, &mut out);
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct KnotSpec {
    pub label: String,
    pub g4_bound: u32,
    pub v_seq: VSequence,
    /// Reduced fillings of `+1` surgery, taken as given.
    pub base_fillings: Vec<Lattice>,
}

fn base_for_genus(g: u32) -> Option<Vec<Lattice>> {
    let names: &[LatticeName] = match g {
        0 => &[],
        1 => &[LatticeName::E(8)],
        2 => &[LatticeName::E(8), LatticeName::Gamma12],
        _ => return None,
    };
    let mut out = vec![Lattice::empty()];
    out.extend(names.iter().map(|n| n.make().expect("catalog lattice")));
    Some(out)
}

impl KnotSpec {
    pub fn unknot() -> Self {
        KnotSpec::custom("U", VSequence::zero(), 0, None).expect("built-in")
    }

    pub fn t23() -> Self {
        KnotSpec::custom("T23", VSequence::new(vec![1]).expect("valid"), 1, None).expect("built-in")
    }

    pub fn t25() -> Self {
        KnotSpec::custom("T25", VSequence::new(vec![1, 1]).expect("valid"), 2, None).expect("built-in")
    }

    pub fn builtin(label: &str) -> Result<Self> {
        match label {
            "U" => Ok(KnotSpec::unknot()),
            "T23" => Ok(KnotSpec::t23()),
            "T25" => Ok(KnotSpec::t25()),
            other => Err(Error::UnknownName(format!("knot {other:?} (expected U, T23 or T25)"))),
        }
    }

    /// Without `base`, the default `+1` fillings for `g4 ≤ 2` are used.
    pub fn custom(label: &str, v_seq: VSequence, g4_bound: u32, base: Option<Vec<Lattice>>) -> Result<Self> {
        if !v_seq.fits_genus(g4_bound) {
            return Err(Error::OutOfRange(format!("V-sequence {v_seq} violates the genus bound {g4_bound}")));
        }
        let base_fillings = match base {
            Some(b) => b,
            None => base_for_genus(g4_bound).ok_or_else(|| {
                Error::OutOfRange(format!("no default base fillings for g4 = {g4_bound}; pass them explicitly"))
            })?,
        };
        for l in &base_fillings {
            l.require_positive_definite()?;
            if !l.is_unimodular() {
                return Err(Error::OutOfRange("base fillings must have determinant 1".into()));
            }
            if reduced_part(l)?.0 != 0 {
                return Err(Error::OutOfRange("base fillings must be reduced".into()));
            }
        }
        Ok(KnotSpec { label: label.to_string(), g4_bound, v_seq, base_fillings })
    }
}

fn check_index(n: u64, i: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange("surgery coefficient must be positive".into()));
    }
    if i >= n {
        return Err(Error::OutOfRange(format!("spin-c index {i} not below {n}")));
    }
    Ok(())
}

/// `((2i − n)² − n) / 4n`.
pub fn d_unknot(n: u64, i: u64) -> Result<BigRational> {
    check_index(n, i)?;
    let n = BigInt::from(n);
    let t = BigInt::from(2 * i) - &n;
    Ok(BigRational::new(&t * &t - &n, n * 4))
}

pub fn d_surgery(spec: &KnotSpec, n: u64, i: u64) -> Result<BigRational> {
    check_index(n, i)?;
    let v = spec.v_seq.get(i as usize).max(spec.v_seq.get((n - i) as usize));
    Ok(d_unknot(n, i)? - BigRational::from_integer(BigInt::from(2 * v)))
}

/// Only integral slopes are supported.
pub fn d_rational_surgery(spec: &KnotSpec, p: u64, q: u64, i: u64) -> Result<BigRational> {
    if q != 1 {
        return Err(Error::Unimplemented("d-invariants of non-integral surgeries"));
    }
    d_surgery(spec, p, i)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DTable {
    pub n: u64,
    pub d: Vec<BigRational>,
}

impl DTable {
    pub fn delta(&self) -> BigRational {
        self.d
            .iter()
            .map(|d| -d * BigInt::from(4))
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

pub fn d_table(spec: &KnotSpec, n: u64) -> Result<DTable> {
    let d = (0..n).map(|i| d_surgery(spec, n, i)).collect::<Result<Vec<_>>>()?;
    Ok(DTable { n, d })
}

pub fn delta_y(spec: &KnotSpec, n: u64) -> Result<BigRational> {
    Ok(d_table(spec, n)?.delta())
}

/// `p/q`, or `p` when integral.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn unknot_closed_form() {
        assert_eq!(d_unknot(1, 0).unwrap(), q(0, 1));
        assert_eq!(d_unknot(2, 1).unwrap(), q(-1, 4));
        assert_eq!(d_unknot(4, 0).unwrap(), q(3, 4));
        assert!(d_unknot(3, 3).is_err());
        assert!(d_unknot(0, 0).is_err());
    }

    #[test]
    fn torus_knot_values() {
        let t23 = KnotSpec::t23();
        let t25 = KnotSpec::t25();
        assert_eq!(d_surgery(&t23, 2, 0).unwrap(), q(-7, 4));
        assert_eq!(d_surgery(&t23, 2, 1).unwrap(), q(-1, 4));
        assert_eq!(d_surgery(&t25, 4, 1).unwrap(), q(-2, 1));
        assert_eq!(delta_y(&t23, 2).unwrap(), q(7, 1));
        assert_eq!(delta_y(&t25, 4).unwrap(), q(8, 1));
        assert_eq!(delta_y(&t23, 4).unwrap(), q(5, 1));
        assert_eq!(delta_y(&t25, 3).unwrap(), q(26, 3));
        assert_eq!(delta_y(&KnotSpec::unknot(), 1).unwrap(), q(0, 1));
    }

    #[test]
    fn sequences() {
        let show = |g| admissible_v_sequences(g).unwrap().iter().map(|v| v.to_string()).collect::<Vec<_>>();
        assert_eq!(show(0), ["0"]);
        assert_eq!(show(1), ["0", "(1)"]);
        assert_eq!(show(2), ["0", "(1)", "(1,1)"]);
        assert!(show(4).contains(&"(2,1,1)".to_string()));
        assert!(admissible_v_sequences(5).is_err());
        assert!(VSequence::new(vec![1, 2]).is_err());
        assert!(VSequence::new(vec![3, 1]).is_err());
        assert!(VSequence::new(vec![2]).is_err());
        assert_eq!(VSequence::parse("1,1,0").unwrap().values(), &[1, 1]);
    }

    #[test]
    fn custom_specs() {
        assert!(KnotSpec::custom("K", VSequence::new(vec![1, 1]).unwrap(), 1, None).is_err());
        assert!(KnotSpec::custom("K", VSequence::zero(), 3, None).is_err());
        let e8 = LatticeName::E(8).make().unwrap();
        let k = KnotSpec::custom("K", VSequence::new(vec![2, 1]).unwrap(), 3, Some(vec![Lattice::empty(), e8])).unwrap();
        assert_eq!(k.base_fillings.len(), 2);
        let padded = Lattice::diagonal(&[1]);
        assert!(KnotSpec::custom("K", VSequence::zero(), 0, Some(vec![padded])).is_err());
        assert!(matches!(d_rational_surgery(&k, 5, 2, 0), Err(Error::Unimplemented(_))));
    }

    #[test]
    fn rendering() {
        assert_eq!(format_rational(&q(-7, 4)), "-7/4");
        assert_eq!(format_rational(&q(8, 1)), "8");
    }
}
