//! Named lattices and the textual name grammar.
//!
//! Grammar: `A4`, `D5`, `E8`, `diag(1,1,2)`, `Lambda(2,4)`, `T3`, `C7`, `Gamma12`, `I(1,9)`,
//! `empty`, and `+`-separated sums. The pretty forms `⟨n⟩`, `Λ(…)`, `Γ12` and `⊕` are accepted too.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::Lattice;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LatticeName {
    A(u32),
    D(u32),
    E(u32),
    Diag(Vec<i64>),
    Lambda(Vec<i64>),
    T(u32),
    C(u32),
    Gamma12,
    I(u32, u32),
    Sum(Vec<LatticeName>),
}

impl LatticeName {
    pub fn empty() -> Self {
        LatticeName::Sum(Vec::new())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let norm = s.replace('⊕', "+");
        let parts: Vec<&str> = norm.split('+').map(str::trim).collect();
        if parts.len() == 1 {
            return parse_atom(parts[0], s);
        }
        let items = parts.iter().map(|p| parse_atom(p, s)).collect::<Result<Vec<_>>>()?;
        Ok(LatticeName::Sum(items))
    }

    /// Summands with nested sums flattened.
    pub fn summands(&self) -> Vec<LatticeName> {
        match self {
            LatticeName::Sum(items) => items.iter().flat_map(|i| i.summands()).collect(),
            other => vec![other.clone()],
        }
    }

    pub fn make(&self) -> Result<Lattice> {
        Ok(self.build()?.with_name(self.to_string()))
    }

    fn build(&self) -> Result<Lattice> {
        use LatticeName::*;
        let range = |ok: bool, what: String| if ok { Ok(()) } else { Err(Error::OutOfRange(what)) };
        match self {
            A(n) => {
                range(*n >= 1, format!("A{n} needs n >= 1"))?;
                Ok(chain(&vec![2; *n as usize]))
            }
            D(n) => {
                range(*n >= 4, format!("D{n} needs n >= 4"))?;
                let n = *n as usize;
                let mut edges: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
                edges.push((n - 3, n - 1));
                Ok(graph(&vec![2; n], &edges))
            }
            E(n) => {
                range((6..=8).contains(n), format!("E{n} needs 6 <= n <= 8"))?;
                let n = *n as usize;
                let mut edges: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
                edges.push((2, n - 1));
                Ok(graph(&vec![2; n], &edges))
            }
            Diag(entries) => {
                range(entries.iter().all(|&e| e != 0), "diag entries must be nonzero".into())?;
                Ok(Lattice::diagonal(entries))
            }
            Lambda(weights) => {
                range(
                    !weights.is_empty() && weights.iter().all(|&w| w >= 1),
                    "Lambda weights must be >= 1".into(),
                )?;
                Ok(chain(weights))
            }
            T(n) => match n {
                1..=5 => Ok(star(2, &[vec![2], vec![2, 2], vec![2; 5 - *n as usize]])),
                6 => Ok(chain(&[2]).direct_sum(&chain(&[2, 2]))),
                7 => Ok(chain(&[2, 4])),
                8 => Ok(Lattice::diagonal(&[8])),
                _ => Err(Error::OutOfRange(format!("T{n} needs 1 <= n <= 8"))),
            },
            C(n) => match n {
                1..=9 => Ok(star(2, &[vec![2], vec![2, 3], vec![2; 9 - *n as usize]])),
                10 => Ok(chain(&[2]).direct_sum(&chain(&[2, 3]))),
                11 => Ok(chain(&[3, 4])),
                12 => Ok(Lattice::diagonal(&[12])),
                _ => Err(Error::OutOfRange(format!("C{n} needs 1 <= n <= 12"))),
            },
            Gamma12 => Ok(gamma12()),
            I(a, b) => Ok(Lattice::unimodular_odd(*a as usize, *b as usize).without_name()),
            Sum(items) => {
                let mut acc = Lattice::empty();
                for item in items {
                    acc = acc.direct_sum(&item.build()?);
                }
                Ok(acc)
            }
        }
    }

    /// Human-facing form: `E8 ⊕ ⟨1⟩^2`, `Λ(2,4)`, `Γ12`.
    pub fn pretty(&self) -> String {
        use LatticeName::*;
        match self {
            Diag(entries) if !entries.is_empty() => {
                let mut parts: Vec<String> = Vec::new();
                let mut i = 0;
                while i < entries.len() {
                    let mut j = i;
                    while j < entries.len() && entries[j] == entries[i] {
                        j += 1;
                    }
                    parts.push(if j - i == 1 {
                        format!("⟨{}⟩", entries[i])
                    } else {
                        format!("⟨{}⟩^{}", entries[i], j - i)
                    });
                    i = j;
                }
                parts.join(" ⊕ ")
            }
            Lambda(w) => format!("Λ({})", join(w)),
            Gamma12 => "Γ12".into(),
            Sum(items) if !items.is_empty() => {
                items.iter().map(|i| i.pretty()).collect::<Vec<_>>().join(" ⊕ ")
            }
            other => other.to_string(),
        }
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for LatticeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use LatticeName::*;
        match self {
            A(n) => write!(f, "A{n}"),
            D(n) => write!(f, "D{n}"),
            E(n) => write!(f, "E{n}"),
            Diag(e) => write!(f, "diag({})", join(e)),
            Lambda(w) => write!(f, "Lambda({})", join(w)),
            T(n) => write!(f, "T{n}"),
            C(n) => write!(f, "C{n}"),
            Gamma12 => write!(f, "Gamma12"),
            I(a, b) => write!(f, "I({a},{b})"),
            Sum(items) if items.is_empty() => write!(f, "empty"),
            Sum(items) => {
                let parts: Vec<String> = items.iter().map(|i| i.to_string()).collect();
                write!(f, "{}", parts.join("+"))
            }
        }
    }
}

impl std::str::FromStr for LatticeName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LatticeName::parse(s)
    }
}

fn parse_atom(atom: &str, whole: &str) -> Result<LatticeName> {
    use LatticeName::*;
    let bad = || Error::UnknownName(whole.trim().to_string());
    let int_list = |inner: &str| -> Result<Vec<i64>> {
        if inner.trim().is_empty() {
            return Ok(Vec::new());
        }
        inner.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad())).collect()
    };
    let args = |prefix: &str, open: char, close: char| -> Option<&str> {
        atom.strip_prefix(prefix)?.trim().strip_prefix(open)?.strip_suffix(close)
    };
    if atom.eq_ignore_ascii_case("empty") {
        return Ok(LatticeName::empty());
    }
    if atom == "Gamma12" || atom == "Γ12" {
        return Ok(Gamma12);
    }
    if let Some(inner) = args("diag", '(', ')') {
        return Ok(Diag(int_list(inner)?));
    }
    if let Some(inner) = args("Lambda", '(', ')').or_else(|| args("Λ", '(', ')')) {
        return Ok(Lambda(int_list(inner)?));
    }
    if let Some(inner) = args("I", '(', ')') {
        let v = int_list(inner)?;
        return match v[..] {
            [a, b] if a >= 0 && b >= 0 => Ok(I(a as u32, b as u32)),
            _ => Err(bad()),
        };
    }
    if let Some(inner) = args("", '⟨', '⟩').or_else(|| args("", '<', '>')) {
        let (value, power) = match inner.split_once('^') {
            Some((v, p)) => (v, p.trim().parse::<usize>().map_err(|_| bad())?),
            None => (inner, 1),
        };
        let v: i64 = value.trim().parse().map_err(|_| bad())?;
        return Ok(Diag(vec![v; power]));
    }
    if let Some((inner, power)) = atom.rsplit_once('^') {
        if let Some(inner) = inner.strip_prefix('⟨').and_then(|x| x.strip_suffix('⟩')) {
            let v: i64 = inner.trim().parse().map_err(|_| bad())?;
            let p: usize = power.trim().parse().map_err(|_| bad())?;
            return Ok(Diag(vec![v; p]));
        }
    }
    let mut chars = atom.chars();
    let head = chars.next().ok_or_else(bad)?;
    let rest = chars.as_str();
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let n: u32 = rest.parse().map_err(|_| bad())?;
    match head {
        'A' => Ok(A(n)),
        'D' => Ok(D(n)),
        'E' => Ok(E(n)),
        'T' => Ok(T(n)),
        'C' => Ok(C(n)),
        _ => Err(bad()),
    }
}

/// Plumbing Gram: weights on the diagonal, `-1` for each edge.
pub(crate) fn graph(weights: &[i64], edges: &[(usize, usize)]) -> Lattice {
    let r = weights.len();
    let mut g = vec![0; r * r];
    for (i, &w) in weights.iter().enumerate() {
        g[i * r + i] = w;
    }
    for &(a, b) in edges {
        g[a * r + b] = -1;
        g[b * r + a] = -1;
    }
    Lattice::from_flat_unchecked(r, g)
}

pub(crate) fn chain(weights: &[i64]) -> Lattice {
    let edges: Vec<_> = (1..weights.len()).map(|i| (i - 1, i)).collect();
    graph(weights, &edges)
}

/// Star with the given center weight; each leg is listed outward from the center.
pub(crate) fn star(center: i64, legs: &[Vec<i64>]) -> Lattice {
    let mut weights = vec![center];
    let mut edges = Vec::new();
    for leg in legs {
        let mut prev = 0;
        for &w in leg {
            weights.push(w);
            let id = weights.len() - 1;
            edges.push((prev, id));
            prev = id;
        }
    }
    graph(&weights, &edges)
}

/// `D12` together with `(1/2, …, 1/2)`, from twice-scaled coordinates.
fn gamma12() -> Lattice {
    let mut basis: Vec<[i64; 12]> = Vec::with_capacity(12);
    basis.push([1; 12]);
    let mut w = [0; 12];
    w[0] = -2;
    w[1] = -2;
    basis.push(w);
    for i in 0..10 {
        let mut d = [0; 12];
        d[i] = 2;
        d[i + 1] = -2;
        basis.push(d);
    }
    let rows: Vec<Vec<i64>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>() / 4).collect())
        .collect();
    Lattice::new(rows).expect("symmetric by construction")
}
