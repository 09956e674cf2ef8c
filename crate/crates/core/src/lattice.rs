use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::intmat;

/// An integral lattice given by its Gram matrix in some basis.
#[derive(Clone)]
pub struct Lattice {
    rank: usize,
    gram: Vec<i64>,
    name: Option<String>,
    signature: OnceLock<Signature>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub nullity: usize,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.gram == other.gram
    }
}

impl Eq for Lattice {}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("Lattice");
        if let Some(name) = &self.name {
            d.field("name", name);
        }
        d.field("gram", &self.gram_rows()).finish()
    }
}

impl Lattice {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let rank = rows.len();
        let mut gram = Vec::with_capacity(rank * rank);
        for row in &rows {
            if row.len() != rank {
                return Err(Error::NotSquare { rows: rank, len: row.len() });
            }
            gram.extend_from_slice(row);
        }
        Self::from_flat(rank, gram)
    }

    pub fn from_flat(rank: usize, gram: Vec<i64>) -> Result<Self> {
        if gram.len() != rank * rank {
            return Err(Error::NotSquare { rows: rank, len: gram.len() / rank.max(1) });
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i * rank + j] != gram[j * rank + i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(Self::from_flat_unchecked(rank, gram))
    }

    pub(crate) fn from_flat_unchecked(rank: usize, gram: Vec<i64>) -> Self {
        Lattice { rank, gram, name: None, signature: OnceLock::new() }
    }

    /// The rank-0 lattice.
    pub fn empty() -> Self {
        Self::from_flat_unchecked(0, Vec::new())
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let r = entries.len();
        let mut gram = vec![0; r * r];
        for (i, &e) in entries.iter().enumerate() {
            gram[i * r + i] = e;
        }
        Self::from_flat_unchecked(r, gram)
    }

    /// `I_{a,b}`: `a` vectors of norm `+1` followed by `b` of norm `-1`.
    pub fn unimodular_odd(a: usize, b: usize) -> Self {
        let diag: Vec<i64> = std::iter::repeat_n(1, a).chain(std::iter::repeat_n(-1, b)).collect();
        Self::diagonal(&diag).with_name(format!("I({a},{b})"))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn without_name(mut self) -> Self {
        self.name = None;
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i * self.rank + j]
    }

    pub fn gram_rows(&self) -> Vec<Vec<i64>> {
        self.gram.chunks(self.rank.max(1)).take(self.rank).map(|r| r.to_vec()).collect()
    }

    pub(crate) fn flat(&self) -> &[i64] {
        &self.gram
    }

    pub(crate) fn big_gram(&self) -> intmat::Matrix {
        intmat::from_i64(&self.gram_rows())
    }

    pub fn det(&self) -> BigInt {
        intmat::det(&self.big_gram())
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank).all(|i| self.entry(i, i) % 2 == 0)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == BigInt::from(1)
    }

    /// Sylvester's criterion on the leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        let minors = intmat::leading_minors(&self.big_gram());
        minors.len() == self.rank && minors.iter().all(|m| m.is_positive())
    }

    pub fn signature(&self) -> Signature {
        *self.signature.get_or_init(|| signature_of(self))
    }

    pub fn require_positive_definite(&self) -> Result<()> {
        if self.is_positive_definite() {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite)
        }
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let r = self.rank + other.rank;
        let mut gram = vec![0; r * r];
        for i in 0..self.rank {
            for j in 0..self.rank {
                gram[i * r + j] = self.entry(i, j);
            }
        }
        for i in 0..other.rank {
            for j in 0..other.rank {
                gram[(self.rank + i) * r + self.rank + j] = other.entry(i, j);
            }
        }
        Lattice::from_flat_unchecked(r, gram)
    }

    pub fn negate(&self) -> Lattice {
        Lattice::from_flat_unchecked(self.rank, self.gram.iter().map(|x| -x).collect())
    }

    pub fn vector(&self, coords: Vec<i64>) -> Result<LatticeVector> {
        self.check_len(&coords)?;
        Ok(LatticeVector { coords })
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: v.len() });
        }
        Ok(())
    }

    /// The row `G·v` of pairings of `v` with the basis.
    pub fn pairings(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.check_len(v)?;
        (0..self.rank)
            .map(|i| {
                let mut s: i128 = 0;
                for (j, &x) in v.iter().enumerate() {
                    s += self.entry(i, j) as i128 * x as i128;
                }
                i64::try_from(s).map_err(|_| Error::Overflow("pairing"))
            })
            .collect()
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        self.check_len(b)?;
        let ga = self.pairings(a)?;
        let s: i128 = ga.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum();
        i64::try_from(s).map_err(|_| Error::Overflow("pairing"))
    }

    pub fn norm(&self, v: &[i64]) -> Result<i64> {
        self.inner(v, v)
    }

    /// The gcd of all pairings `v·w`, `w` in the lattice.
    pub fn pairing_gcd(&self, v: &[i64]) -> Result<i64> {
        if v.iter().all(|&x| x == 0) {
            return Err(Error::ZeroVector);
        }
        Ok(self.pairings(v)?.iter().fold(0i64, |g, &x| g.gcd(&x)))
    }

    /// Gram matrix of the sublattice spanned by `basis` (rows, in coordinates of `self`).
    pub fn sublattice(&self, basis: &[Vec<i64>]) -> Result<Lattice> {
        for b in basis {
            self.check_len(b)?;
        }
        let g = intmat::congruence(&intmat::from_i64(basis), &self.big_gram());
        let rows = intmat::to_i64(&g, "sublattice gram")?;
        Ok(Lattice::from_flat_unchecked(basis.len(), rows.concat()))
    }

    /// Basis (Hermite normal form) of `{w : w·v = 0}`.
    pub fn complement_basis(&self, v: &[i64]) -> Result<Vec<Vec<i64>>> {
        self.check_len(v)?;
        if v.iter().all(|&x| x == 0) {
            return Err(Error::ZeroVector);
        }
        let row: Vec<BigInt> = self.pairings(v)?.into_iter().map(BigInt::from).collect();
        if row.iter().all(|x| x.is_zero()) {
            return Err(Error::Degenerate);
        }
        intmat::to_i64(&intmat::row_kernel(&row), "complement basis")
    }

    pub fn complement(&self, v: &[i64]) -> Result<Lattice> {
        let basis = self.complement_basis(v)?;
        self.sublattice(&basis)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("gram:\n");
        for row in self.gram_rows() {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Reads `name:<tag>` or `gram:` followed by one row per line. Blank lines and `#`
    /// comments are skipped; entries may be separated by spaces or commas.
    pub fn from_text(s: &str) -> Result<Lattice> {
        let mut lines = s
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let head = lines.next().ok_or_else(|| Error::Parse("empty lattice description".into()))?;
        if let Some(tag) = head.strip_prefix("name:") {
            if lines.next().is_some() {
                return Err(Error::Parse("trailing lines after name".into()));
            }
            return crate::names::LatticeName::parse(tag.trim())?.make();
        }
        let first = head
            .strip_prefix("gram:")
            .ok_or_else(|| Error::Parse(format!("expected `name:` or `gram:`, got {head:?}")))?
            .trim();
        let rows = std::iter::once(first)
            .chain(lines)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad gram entry {t:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Lattice::new(rows)
    }
}

fn signature_of(l: &Lattice) -> Signature {
    let n = l.rank;
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(l.entry(i, j).into())).collect())
        .collect();
    let mut sig = Signature { positive: 0, negative: 0, nullity: 0 };
    while !a.is_empty() {
        let m = a.len();
        let pivot = match (0..m).find(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let Some((i, j)) = (0..m)
                    .flat_map(|i| (0..m).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero())
                else {
                    sig.nullity += m;
                    break;
                };
                // x_i += x_j makes the new diagonal entry 2·a_ij.
                for k in 0..m {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..m {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let p = a[pivot][pivot].clone();
        if p.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        let rest: Vec<usize> = (0..m).filter(|&k| k != pivot).collect();
        a = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| &a[i][j] - &a[i][pivot] * &a[pivot][j] / &p)
                    .collect()
            })
            .collect();
    }
    sig
}

/// Integer coordinates of a lattice vector with respect to the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    coords: Vec<i64>,
}

impl LatticeVector {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.coords
    }

    pub(crate) fn from_coords(coords: Vec<i64>) -> Self {
        LatticeVector { coords }
    }
}

/// Rational coordinates of an element of `L ⊗ Q` with respect to the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covector {
    coords: Vec<BigRational>,
}

impl Covector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Covector { coords }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    fn pair_basis(&self, l: &Lattice) -> Vec<BigRational> {
        (0..l.rank())
            .map(|i| {
                self.coords
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c * BigRational::from_integer(l.entry(i, j).into()))
                    .sum()
            })
            .collect()
    }

    /// Membership in the dual lattice.
    pub fn is_dual(&self, l: &Lattice) -> bool {
        self.pair_basis(l).iter().all(|x| x.is_integer())
    }

    pub fn norm(&self, l: &Lattice) -> BigRational {
        self.pair_basis(l).iter().zip(&self.coords).map(|(a, b)| a * b).sum()
    }

    /// Pairing with a lattice vector.
    pub fn pair(&self, l: &Lattice, v: &[i64]) -> BigRational {
        self.pair_basis(l)
            .iter()
            .zip(v)
            .map(|(a, &b)| a * BigRational::from_integer(b.into()))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> Lattice {
        let mut rows = vec![vec![0; n]; n];
        for i in 0..n {
            rows[i][i] = 2;
            if i + 1 < n {
                rows[i][i + 1] = -1;
                rows[i + 1][i] = -1;
            }
        }
        Lattice::new(rows).unwrap()
    }

    #[test]
    fn rejects_asymmetric() {
        assert_eq!(Lattice::new(vec![vec![1, 2], vec![3, 4]]), Err(Error::NotSymmetric(1, 0)));
        assert!(matches!(Lattice::new(vec![vec![1, 2]]), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn basics() {
        assert_eq!(a(4).det(), BigInt::from(5));
        assert_eq!(Lattice::empty().det(), BigInt::from(1));
        assert_eq!(Lattice::diagonal(&[5]).det(), BigInt::from(5));
        let s = a(1).direct_sum(&a(2));
        assert_eq!(s.rank(), 3);
        assert_eq!(s.det(), BigInt::from(6));
        assert_eq!(a(3).negate().negate(), a(3));
        assert_eq!(Lattice::diagonal(&[1]).negate(), Lattice::diagonal(&[-1]));
    }

    #[test]
    fn signatures() {
        let s = Lattice::unimodular_odd(1, 9).signature();
        assert_eq!(s, Signature { positive: 1, negative: 9, nullity: 0 });
        let h = Lattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(h.signature(), Signature { positive: 1, negative: 1, nullity: 0 });
        let z = Lattice::new(vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(z.signature(), Signature { positive: 1, negative: 0, nullity: 1 });
        assert!(a(5).is_positive_definite());
        assert!(!a(5).negate().is_positive_definite());
    }

    #[test]
    fn unit_complement() {
        let l = Lattice::diagonal(&[1, 1]);
        assert_eq!(l.complement(&[1, 0]).unwrap(), Lattice::diagonal(&[1]));
        assert_eq!(l.complement(&[0, 0]), Err(Error::ZeroVector));
        assert_eq!(l.pairing_gcd(&[2, 0]).unwrap(), 2);
    }

    #[test]
    fn complement_is_orthogonal() {
        let l = a(5);
        let v = [1, 2, 0, -1, 3];
        for b in l.complement_basis(&v).unwrap() {
            assert_eq!(l.inner(&b, &v).unwrap(), 0);
        }
    }

    #[test]
    fn covector_membership() {
        let l = Lattice::diagonal(&[2]);
        let half = Covector::new(vec![BigRational::new(1.into(), 2.into())]);
        assert!(half.is_dual(&l));
        assert_eq!(half.norm(&l), BigRational::new(1.into(), 2.into()));
        let quarter = Covector::new(vec![BigRational::new(1.into(), 4.into())]);
        assert!(!quarter.is_dual(&l));
    }

    #[test]
    fn text_form() {
        assert_eq!(a(2).to_text(), "gram:\n2 -1\n-1 2\n");
        assert_eq!(Lattice::empty().to_text(), "gram:\n");
        assert_eq!(Lattice::from_text(&a(2).to_text()).unwrap(), a(2));
        assert_eq!(Lattice::from_text("gram:\n").unwrap(), Lattice::empty());
        assert_eq!(Lattice::from_text("# A1\ngram: 2").unwrap(), Lattice::diagonal(&[2]));
        assert_eq!(Lattice::from_text("name: diag(2,3)").unwrap(), Lattice::diagonal(&[2, 3]));
        assert!(Lattice::from_text("gram:\n2 1\n").is_err());
        assert!(Lattice::from_text("rows:\n2").is_err());
    }
}
