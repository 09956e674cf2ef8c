//! Continued fractions, plumbing graphs, Seifert data and complement identities inside `I(1,k)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::isometry::is_isomorphic;
use crate::lattice::{Lattice, LatticeVector};
use crate::names::{self, LatticeName};
use crate::roots::{root_decomposition, RootComponent, RootDecomposition};

/// `a/b = t₁ − 1/(t₂ − 1/(… − 1/t_m))` by the greedy `t = ⌈a/b⌉` rule.
pub fn hj_expansion(a: i64, b: i64) -> Result<Vec<i64>> {
    if b == 0 {
        return Err(Error::OutOfRange("continued fraction of a/0".into()));
    }
    if a <= 0 {
        return Err(Error::OutOfRange(format!("numerator must be positive, got {a}")));
    }
    let g = a.gcd(&b);
    let (mut a, mut b) = (a / g, b / g);
    let mut out = Vec::new();
    loop {
        let t = Integer::div_ceil(&a, &b);
        out.push(t);
        let rest = t * b - a;
        if rest == 0 {
            return Ok(out);
        }
        (a, b) = (b, rest);
    }
}

pub fn hj_evaluate(t: &[i64]) -> Result<BigRational> {
    let mut acc: Option<BigRational> = None;
    for &x in t.iter().rev() {
        let x = BigRational::from_integer(BigInt::from(x));
        acc = Some(match acc {
            None => x,
            Some(prev) => {
                if prev == BigRational::from_integer(BigInt::from(0)) {
                    return Err(Error::OutOfRange("continued fraction divides by zero".into()));
                }
                x - prev.recip()
            }
        });
    }
    acc.ok_or_else(|| Error::OutOfRange("empty continued fraction".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingGraph {
    /// `(id, weight)`.
    pub vertices: Vec<(usize, i64)>,
    pub edges: Vec<(usize, usize)>,
}

impl PlumbingGraph {
    pub fn new(vertices: Vec<(usize, i64)>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut ids = std::collections::BTreeSet::new();
        for &(id, _) in &vertices {
            if !ids.insert(id) {
                return Err(Error::Parse(format!("duplicate vertex id {id}")));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(a, b) in &edges {
            if a == b {
                return Err(Error::Parse(format!("loop at vertex {a}")));
            }
            if !ids.contains(&a) || !ids.contains(&b) {
                return Err(Error::Parse(format!("edge ({a},{b}) uses an unknown vertex")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::Parse(format!("repeated edge ({a},{b})")));
            }
        }
        Ok(PlumbingGraph { vertices, edges })
    }

    fn index(&self) -> BTreeMap<usize, usize> {
        self.vertices.iter().enumerate().map(|(i, &(id, _))| (id, i)).collect()
    }

    fn neighbours(&self, id: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| if a == id { Some(b) } else if b == id { Some(a) } else { None })
            .collect()
    }

    pub fn gram(&self) -> Lattice {
        let index = self.index();
        let weights: Vec<i64> = self.vertices.iter().map(|&(_, w)| w).collect();
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|(a, b)| (index[a], index[b])).collect();
        names::graph(&weights, &edges)
    }

    /// Repeatedly remove a weight-0 vertex of degree 2, fusing its neighbours into one vertex
    /// whose weight is their sum. The intersection form changes by a hyperbolic summand.
    pub fn absorb_zero_vertices(&self) -> Result<PlumbingGraph> {
        let mut g = self.clone();
        loop {
            let Some(&(z, _)) = g.vertices.iter().find(|&&(id, w)| w == 0 && g.neighbours(id).len() == 2) else {
                return Ok(g);
            };
            let nb = g.neighbours(z);
            let (keep, gone) = (nb[0], nb[1]);
            if g.neighbours(keep).contains(&gone) {
                return Ok(g);
            }
            let w_gone = g.vertices.iter().find(|v| v.0 == gone).map(|v| v.1).unwrap_or(0);
            let vertices = g
                .vertices
                .iter()
                .filter(|v| v.0 != z && v.0 != gone)
                .map(|&(id, w)| if id == keep { (id, w + w_gone) } else { (id, w) })
                .collect();
            let edges = g
                .edges
                .iter()
                .filter(|&&(a, b)| a != z && b != z)
                .map(|&(a, b)| (if a == gone { keep } else { a }, if b == gone { keep } else { b }))
                .collect();
            g = PlumbingGraph::new(vertices, edges)?;
        }
    }
}

pub fn plumbing_gram(g: &PlumbingGraph) -> Lattice {
    g.gram()
}

/// `(b; b₁/a₁, …, b_k/a_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub b: i64,
    /// `(b_i, a_i)` with `a_i > 0`, reduced.
    pub fractions: Vec<(i64, i64)>,
}

impl SeifertData {
    pub fn new(b: i64, fractions: Vec<(i64, i64)>) -> Result<Self> {
        let mut out = Vec::with_capacity(fractions.len());
        for (num, den) in fractions {
            if den <= 0 {
                return Err(Error::OutOfRange(format!("denominator must be positive in {num}/{den}")));
            }
            let g = num.gcd(&den);
            out.push((num / g, den / g));
        }
        Ok(SeifertData { b, fractions: out })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (head, tail) = s.split_once(';').unwrap_or((s, ""));
        let bad = |t: &str| Error::Parse(format!("bad Seifert data near {t:?}"));
        let b: i64 = head.trim().parse().map_err(|_| bad(head))?;
        let mut fractions = Vec::new();
        for part in tail.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (n, d) = part.split_once('/').ok_or_else(|| bad(part))?;
            let n: i64 = n.trim().parse().map_err(|_| bad(part))?;
            let d: i64 = d.trim().parse().map_err(|_| bad(part))?;
            fractions.push((n, d));
        }
        SeifertData::new(b, fractions)
    }

    pub fn euler(&self) -> BigRational {
        self.fractions.iter().fold(BigRational::from_integer(self.b.into()), |acc, &(n, d)| {
            acc - BigRational::new(n.into(), d.into())
        })
    }

    /// Fractions reduced into `[0, 1)` with the integer parts moved into `b`; zero fractions dropped.
    pub fn normalized(&self) -> SeifertData {
        let mut b = self.b;
        let mut fractions = Vec::new();
        for &(n, d) in &self.fractions {
            let q = Integer::div_floor(&n, &d);
            b -= q;
            let r = n - q * d;
            if r != 0 {
                fractions.push((r, d));
            }
        }
        SeifertData { b, fractions }
    }

    /// Star with center weight `b` and legs `HJ(a_i/b_i)` after normalizing.
    pub fn plumbing(&self) -> Result<PlumbingGraph> {
        let s = self.normalized();
        let mut vertices = vec![(0, s.b)];
        let mut edges = Vec::new();
        for &(n, d) in &s.fractions {
            let mut prev = 0;
            for t in hj_expansion(d, n)? {
                let id = vertices.len();
                vertices.push((id, t));
                edges.push((prev, id));
                prev = id;
            }
        }
        PlumbingGraph::new(vertices, edges)
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.fractions.iter().map(|(n, d)| format!("{n}/{d}")).collect();
        write!(f, "({}; {})", self.b, parts.join(", "))
    }
}

pub fn seifert_plumbing(s: &SeifertData) -> Result<PlumbingGraph> {
    s.plumbing()
}

/// Positive definite plumbing bounded by the lens space `L(p,q)`.
pub fn lens_space_lattice(p: i64, q: i64) -> Result<Lattice> {
    if !(0 < q && q < p) {
        return Err(Error::OutOfRange(format!("L({p},{q}) needs 0 < q < p")));
    }
    Ok(names::chain(&hj_expansion(p, p - q)?))
}

/// Seifert data of `+n` surgery on the trefoil; `n = 6` is a connected sum of
/// lens spaces and has none.
pub fn trefoil_seifert(n: u32) -> Option<SeifertData> {
    let row = |b, f: &[(i64, i64)]| SeifertData::new(b, f.to_vec()).ok();
    match n {
        1 => row(2, &[(1, 2), (2, 3), (4, 5)]),
        2 => row(2, &[(1, 2), (2, 3), (3, 4)]),
        3 => row(2, &[(1, 2), (2, 3), (2, 3)]),
        4 => row(2, &[(1, 2), (1, 2), (2, 3)]),
        5 => row(2, &[(1, 2), (2, 3)]),
        7 => row(-2, &[(-1, 2), (-1, 3)]),
        _ => None,
    }
}

/// Positive definite lattice bounded by `+n` surgery on the trefoil, after absorbing weight-0 vertices.
pub fn trefoil_surgery_lattice(n: u32) -> Result<Lattice> {
    if n == 6 {
        return Ok(lens_space_lattice(2, 1)?.direct_sum(&lens_space_lattice(3, 1)?));
    }
    let s = trefoil_seifert(n).ok_or_else(|| Error::OutOfRange(format!("no Seifert data for n = {n}")))?;
    Ok(s.plumbing()?.absorb_zero_vertices()?.gram())
}

/// `(2; 1/2, 3/5, (9−n)/(10−n))` for `1 ≤ n ≤ 9`.
pub fn c_family_seifert(n: u32) -> Result<SeifertData> {
    if !(1..=9).contains(&n) {
        return Err(Error::OutOfRange(format!("C-family Seifert data needs 1 <= n <= 9, got {n}")));
    }
    let n = n as i64;
    SeifertData::new(2, vec![(1, 2), (3, 5), (9 - n, 10 - n)])
}

/// A class `c·h − Σ m_i e_i` in `I(1,k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupClass {
    pub h: i64,
    /// Coefficient of `e_i` at index `i − 1`.
    pub e: Vec<i64>,
}

impl BlowupClass {
    pub fn new(h: i64, e: Vec<i64>) -> Self {
        BlowupClass { h, e }
    }

    /// Accepts terms like `3h`, `-e1`, `-2e3`, `+e10`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad class {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        if compact == "0" {
            return Ok(BlowupClass::new(0, Vec::new()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in compact.char_indices() {
            if (c == '+' || c == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut h = 0;
        let mut e: Vec<i64> = Vec::new();
        for term in terms {
            let (sign, body) = match term.as_bytes()[0] {
                b'-' => (-1, &term[1..]),
                b'+' => (1, &term[1..]),
                _ => (1, term),
            };
            let split = body.find(['h', 'e']).ok_or_else(bad)?;
            let coef = match &body[..split] {
                "" => 1,
                c => c.parse::<i64>().map_err(|_| bad())?,
            } * sign;
            let sym = &body[split..];
            if sym == "h" {
                h += coef;
            } else {
                let idx: usize = sym[1..].parse().map_err(|_| bad())?;
                if idx == 0 {
                    return Err(bad());
                }
                if e.len() < idx {
                    e.resize(idx, 0);
                }
                e[idx - 1] += coef;
            }
        }
        Ok(BlowupClass { h, e })
    }

    /// Coordinates in `I(1,k)`, basis `h, e₁, …, e_k`.
    pub fn vector(&self, k: usize) -> Result<LatticeVector> {
        let last = self.e.iter().rposition(|&c| c != 0).map_or(0, |p| p + 1);
        if last > k {
            return Err(Error::DimensionMismatch { expected: k + 1, got: last + 1 });
        }
        let mut coords = vec![self.h];
        coords.extend(self.e.iter().take(k));
        coords.resize(k + 1, 0);
        Ok(LatticeVector::from_coords(coords))
    }

    pub fn norm(&self) -> i64 {
        self.h * self.h - self.e.iter().map(|c| c * c).sum::<i64>()
    }
}

impl fmt::Display for BlowupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let mut term = |c: i64, sym: String| {
            if c == 0 {
                return;
            }
            let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            s.push_str(&format!("{sign}{mag}{sym}"));
        };
        term(self.h, "h".into());
        for (i, &c) in self.e.iter().enumerate() {
            term(c, format!("e{}", i + 1));
        }
        if s.is_empty() {
            s.push('0');
        }
        write!(f, "{s}")
    }
}

pub fn blowup_class(spec: &str, k: usize) -> Result<LatticeVector> {
    BlowupClass::parse(spec)?.vector(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    T,
    C,
    Double3,
    Double21,
    E,
    A,
    D,
}

impl Family {
    pub const ALL: [Family; 7] =
        [Family::T, Family::C, Family::Double3, Family::Double21, Family::E, Family::A, Family::D];

    pub fn range(&self) -> std::ops::RangeInclusive<u32> {
        match self {
            Family::T => 1..=8,
            Family::C => 1..=11,
            Family::Double3 | Family::Double21 => 1..=2,
            Family::E | Family::D => 1..=7,
            Family::A => 1..=15,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t" => Ok(Family::T),
            "c" => Ok(Family::C),
            "double3" => Ok(Family::Double3),
            "double21" => Ok(Family::Double21),
            "e" => Ok(Family::E),
            "a" => Ok(Family::A),
            "d" => Ok(Family::D),
            _ => Err(Error::UnknownName(format!("family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::T => "T",
            Family::C => "C",
            Family::Double3 => "double3",
            Family::Double21 => "double21",
            Family::E => "E",
            Family::A => "A",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

fn ones(count: usize, coef: i64) -> Vec<i64> {
    vec![coef; count]
}

fn family_class(family: Family, n: u32) -> Result<BlowupClass> {
    if !family.range().contains(&n) {
        return Err(Error::OutOfRange(format!(
            "family {family} needs n in {}..={}, got {n}",
            family.range().start(),
            family.range().end()
        )));
    }
    let n = n as usize;
    Ok(match family {
        Family::T => BlowupClass::new(3, ones(9 - n, -1)),
        Family::C => {
            let mut e = vec![-2];
            e.extend(ones(12 - n, -1));
            BlowupClass::new(4, e)
        }
        Family::E => {
            let mut e = ones(7, -2);
            e.extend(ones(8 - n, -1));
            BlowupClass::new(6, e)
        }
        Family::A => BlowupClass::new(4, ones(16 - n, -1)),
        Family::D => {
            let mut e = vec![-4, -3];
            e.extend(ones(8, -2));
            e.extend(ones(7 - n, -1));
            BlowupClass::new(8, e)
        }
        Family::Double3 | Family::Double21 => {
            let base = if n == 1 { family_class(Family::T, 1)? } else { family_class(Family::C, 1)? };
            let extra = if family == Family::Double3 { 1 } else { 2 };
            double_class(&base, extra)
        }
    })
}

/// `2v − e_{k+1}` or `2v − e_{k+1} − e_{k+2}`.
fn double_class(v: &BlowupClass, extra: usize) -> BlowupClass {
    let mut e: Vec<i64> = v.e.iter().map(|c| 2 * c).collect();
    e.extend(ones(extra, -1));
    BlowupClass::new(2 * v.h, e)
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub family: Family,
    pub n: u32,
    pub ambient: String,
    pub vector: String,
    pub norm: i64,
    /// Negated complement, positive definite.
    pub complement: Lattice,
    pub expected: String,
    pub isomorphic: bool,
}

fn expected_roots(family: Family) -> RootDecomposition {
    let c = match family {
        Family::E => vec![RootComponent::E(7), RootComponent::E(7)],
        Family::A => vec![RootComponent::A(15)],
        _ => vec![RootComponent::D(8), RootComponent::D(8)],
    };
    RootDecomposition::from_components(c)
}

pub fn verify_identity(family: Family, n: u32) -> Result<IdentityReport> {
    let class = family_class(family, n)?;
    let k = class.e.len();
    let ambient = Lattice::unimodular_odd(1, k);
    let v = class.vector(k)?;
    let complement = ambient.complement(v.coords())?.negate();
    let (expected, isomorphic) = match family {
        Family::T | Family::C => {
            let name = if family == Family::T { LatticeName::T(n) } else { LatticeName::C(n) };
            let ok = is_isomorphic(&complement, &name.make()?)?;
            (name.to_string(), ok)
        }
        Family::Double3 | Family::Double21 => {
            let base = if n == 1 { LatticeName::E(8) } else { LatticeName::Gamma12 };
            let tail = if family == Family::Double3 { vec![3] } else { vec![2, 1] };
            let name = LatticeName::Sum(vec![base, LatticeName::Diag(tail)]);
            let ok = is_isomorphic(&complement, &name.make()?)?;
            (name.to_string(), ok)
        }
        Family::E | Family::A | Family::D => {
            let rank_ok = complement.rank() == k;
            let det_ok = complement.det() == BigInt::from(n);
            let mut expected = format!("rank {k}, det {n}");
            let mut ok = rank_ok && det_ok;
            if n == 1 {
                let want = expected_roots(family);
                expected.push_str(&format!(", roots {want}"));
                ok = ok && root_decomposition(&complement)? == want;
            }
            (expected, ok)
        }
    };
    Ok(IdentityReport {
        family,
        n,
        ambient: format!("I(1,{k})"),
        vector: class.to_string(),
        norm: class.norm(),
        complement,
        expected,
        isomorphic,
    })
}

/// Both doubling identities for a norm-1 class `v` in `I(1,k)` whose negated complement is `Λ`:
/// `(2v − e_{k+1})^⊥ ≅ −(Λ ⊕ ⟨3⟩)` and `(2v − e_{k+1} − e_{k+2})^⊥ ≅ −(Λ ⊕ ⟨2⟩ ⊕ ⟨1⟩)`.
pub fn verify_doubling(v: &[i64]) -> Result<(bool, bool)> {
    if v.is_empty() {
        return Err(Error::ZeroVector);
    }
    let k = v.len() - 1;
    let ambient = Lattice::unimodular_odd(1, k);
    if ambient.norm(v)? != 1 {
        return Err(Error::OutOfRange("doubling needs a class of norm 1".into()));
    }
    let lambda = ambient.complement(v)?.negate();
    let mut out = [false; 2];
    for (slot, tail) in [vec![3i64], vec![2, 1]].into_iter().enumerate() {
        let extra = if tail.len() == 1 { 1 } else { 2 };
        let mut w: Vec<i64> = v.iter().map(|c| 2 * c).collect();
        w.extend(std::iter::repeat_n(1, extra));
        let big = Lattice::unimodular_odd(1, k + extra);
        let comp = big.complement(&w)?.negate();
        let expected = lambda.direct_sum(&Lattice::diagonal(&tail));
        out[slot] = is_isomorphic(&comp, &expected)?;
    }
    Ok((out[0], out[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hj_examples() {
        assert_eq!(hj_expansion(2, 1).unwrap(), [2]);
        assert_eq!(hj_expansion(5, 4).unwrap(), [2, 2, 2, 2]);
        assert_eq!(hj_expansion(3, 2).unwrap(), [2, 2]);
        assert_eq!(hj_expansion(11, 4).unwrap(), [3, 4]);
        assert!(hj_expansion(3, 0).is_err());
        assert_eq!(hj_evaluate(&[2, 2, 2, 2]).unwrap(), BigRational::new(5.into(), 4.into()));
    }

    #[test]
    fn seifert_normalization() {
        let s = SeifertData::parse("-2; -1/2, -1/3").unwrap();
        assert_eq!(s.normalized(), SeifertData::new(0, vec![(1, 2), (2, 3)]).unwrap());
        assert_eq!(s.euler(), s.normalized().euler());
        let g = s.plumbing().unwrap().absorb_zero_vertices().unwrap();
        assert_eq!(g.vertices.len(), 2);
        assert!(SeifertData::parse("2; 1/0").is_err());
        assert_eq!(SeifertData::parse("(2; 1/2, 2/3)").unwrap().to_string(), "(2; 1/2, 2/3)");
    }

    #[test]
    fn plumbing_graphs() {
        let single = PlumbingGraph::new(vec![(7, 5)], vec![]).unwrap();
        assert_eq!(single.gram(), Lattice::diagonal(&[5]));
        let path = PlumbingGraph::new(vec![(0, 3), (1, 4)], vec![(0, 1)]).unwrap();
        assert_eq!(path.gram(), LatticeName::C(11).make().unwrap().without_name());
        assert!(PlumbingGraph::new(vec![(0, 1)], vec![(0, 0)]).is_err());
        assert!(PlumbingGraph::new(vec![(0, 1), (1, 1)], vec![(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn classes() {
        let c = BlowupClass::parse("3h-e1-e2-e3-e4-e5-e6-e7-e8").unwrap();
        assert_eq!(c.norm(), 1);
        assert_eq!(c.to_string(), "3h-e1-e2-e3-e4-e5-e6-e7-e8");
        let v = blowup_class("4h-2e1", 1).unwrap();
        assert_eq!(Lattice::unimodular_odd(1, 1).norm(v.coords()).unwrap(), 12);
        assert!(blowup_class("3h-e5", 2).is_err());
        assert_eq!(blowup_class("h-2e3", 4).unwrap().coords(), &[1, 0, 0, -2, 0]);
        assert!(BlowupClass::parse("3x").is_err());
        assert_eq!(family_class(Family::E, 1).unwrap().norm(), 1);
        assert_eq!(family_class(Family::D, 1).unwrap().norm(), 1);
        assert_eq!(family_class(Family::Double21, 1).unwrap().to_string(), "6h-2e1-2e2-2e3-2e4-2e5-2e6-2e7-2e8-e9-e10");
    }

    #[test]
    fn lens_spaces() {
        assert_eq!(lens_space_lattice(2, 1).unwrap(), Lattice::diagonal(&[2]));
        assert_eq!(lens_space_lattice(11, 7).unwrap(), names::chain(&[3, 4]));
        assert!(lens_space_lattice(3, 3).is_err());
    }

    #[test]
    fn small_identities() {
        let r = verify_identity(Family::T, 7).unwrap();
        assert!(r.isomorphic);
        assert_eq!(r.vector, "3h-e1-e2");
        assert!(verify_identity(Family::C, 11).unwrap().isomorphic);
        assert!(verify_identity(Family::T, 9).is_err());
    }
}
