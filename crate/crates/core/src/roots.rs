use std::fmt;

use num_bigint::BigInt;

use crate::enumerate::{reduced_part, vectors_of_norm};
use crate::error::Result;
use crate::intmat;
use crate::lattice::Lattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootComponent {
    A(u32),
    D(u32),
    E(u32),
}

impl RootComponent {
    pub fn rank(&self) -> u32 {
        match *self {
            RootComponent::A(n) | RootComponent::D(n) | RootComponent::E(n) => n,
        }
    }

    pub fn det(&self) -> BigInt {
        BigInt::from(match *self {
            RootComponent::A(n) => n + 1,
            RootComponent::D(_) => 4,
            RootComponent::E(n) => 9 - n,
        })
    }

    /// Identify an irreducible root system from its rank and number of `±` root pairs.
    fn classify(rank: u32, pairs: usize) -> Option<Self> {
        let r = rank as usize;
        match (rank, pairs) {
            (6, 36) => Some(RootComponent::E(6)),
            (7, 63) => Some(RootComponent::E(7)),
            (8, 120) => Some(RootComponent::E(8)),
            _ if pairs == r * (r + 1) / 2 => Some(RootComponent::A(rank)),
            _ if r >= 4 && pairs == r * (r - 1) => Some(RootComponent::D(rank)),
            _ => None,
        }
    }
}

impl fmt::Display for RootComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootComponent::A(n) => write!(f, "A{n}"),
            RootComponent::D(n) => write!(f, "D{n}"),
            RootComponent::E(n) => write!(f, "E{n}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RootDecomposition {
    /// Sorted components.
    pub components: Vec<RootComponent>,
    pub covered_rank: usize,
}

impl RootDecomposition {
    pub fn from_components(mut components: Vec<RootComponent>) -> Self {
        components.sort();
        let covered_rank = components.iter().map(|c| c.rank() as usize).sum();
        RootDecomposition { components, covered_rank }
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl fmt::Display for RootDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "none");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Root system of the reduced part: components of the graph on `±` root pairs joined when
/// their pairing is nonzero, each classified by rank and root count.
pub fn root_decomposition(l: &Lattice) -> Result<RootDecomposition> {
    let (_, red) = reduced_part(l)?;
    root_decomposition_reduced(&red)
}

pub(crate) fn root_decomposition_reduced(red: &Lattice) -> Result<RootDecomposition> {
    let roots: Vec<Vec<i64>> = vectors_of_norm(red, 2)?
        .vectors
        .into_iter()
        .map(|v| v.into_coords())
        .collect();
    let n = roots.len();
    let paired: Vec<Vec<i64>> = roots.iter().map(|r| red.pairings(r)).collect::<Result<_>>()?;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let dot: i64 = paired[i].iter().zip(&roots[j]).map(|(a, b)| a * b).sum();
            if dot != 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    let mut components = Vec::new();
    for members in groups.values() {
        let rows: Vec<Vec<i64>> = members.iter().map(|&i| roots[i].clone()).collect();
        let rank = intmat::rank(&intmat::from_i64(&rows)) as u32;
        let comp = RootComponent::classify(rank, members.len())
            .expect("irreducible root systems are of type A, D or E");
        components.push(comp);
    }
    Ok(RootDecomposition::from_components(components))
}
