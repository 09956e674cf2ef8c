//! Reduced indecomposable positive definite lattices of rank `r` and determinant `d` with
//! `r + d ≤ 13`, labelled by root system. A trailing `O_i` marks a root system of
//! codimension `i`; these labels are display data and are never reconstructed as lattices.

use crate::roots::{RootComponent, RootDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub rank: usize,
    pub det: u64,
    pub label: &'static str,
    /// One of the trefoil or cinquefoil family lattices.
    pub family: bool,
}

const fn cell(rank: usize, det: u64, label: &'static str, family: bool) -> Cell {
    Cell { rank, det, label, family }
}

pub const CELLS: &[Cell] = &[
    cell(1, 2, "A1", false),
    cell(1, 3, "O1", false),
    cell(1, 4, "O1", false),
    cell(1, 5, "O1", false),
    cell(1, 6, "O1", false),
    cell(1, 7, "O1", false),
    cell(1, 8, "O1", false),
    cell(1, 9, "O1", false),
    cell(1, 10, "O1", false),
    cell(1, 11, "O1", false),
    cell(2, 3, "A2", false),
    cell(2, 5, "A1O1", false),
    cell(2, 7, "A1O1", true),
    cell(2, 8, "O2", false),
    cell(2, 9, "A1O1", false),
    cell(2, 11, "O2", true),
    cell(2, 11, "A1O1", false),
    cell(3, 4, "A3", false),
    cell(3, 7, "A2O1", false),
    cell(3, 8, "A1^2O1", false),
    cell(3, 10, "A2O1", false),
    cell(4, 4, "D4", false),
    cell(4, 5, "A4", true),
    cell(4, 8, "A3O1", false),
    cell(4, 9, "A3O1", true),
    cell(5, 4, "D5", true),
    cell(5, 6, "A5", false),
    cell(5, 8, "D4O1", true),
    cell(6, 3, "E6", true),
    cell(6, 4, "D6", false),
    cell(6, 7, "D5O1", true),
    cell(6, 7, "A6", false),
    cell(7, 2, "E7", true),
    cell(7, 4, "D7", false),
    cell(7, 5, "E6O1", false),
    cell(7, 6, "D6O1", true),
    cell(8, 1, "E8", true),
    cell(8, 3, "E7O1", false),
    cell(8, 4, "D8", false),
    cell(8, 5, "D7O1", true),
    cell(8, 5, "E7O1", false),
    cell(9, 4, "D8O1", true),
    cell(9, 4, "E7A1O1", false),
    cell(9, 4, "D9", false),
    cell(10, 3, "D9O1", true),
    cell(11, 2, "D10A1", true),
    cell(12, 1, "D12", true),
];

/// Entries for `(rank, det)`, or `None` outside `rank + det ≤ 13`.
pub fn cells(rank: usize, det: u64) -> Option<Vec<&'static Cell>> {
    if rank == 0 || det == 0 || det > 11 || rank as u64 + det > 13 {
        return None;
    }
    Some(CELLS.iter().filter(|c| c.rank == rank && c.det == det).collect())
}

impl Cell {
    /// Root components and the codimension `i` of `O_i`.
    pub fn roots(&self) -> (RootDecomposition, usize) {
        let s = self.label;
        let (body, codim) = match s.find('O') {
            Some(p) => (&s[..p], s[p + 1..].parse().expect("well-formed label")),
            None => (s, 0),
        };
        let mut comps = Vec::new();
        let bytes = body.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let kind = bytes[i];
            let mut j = i + 1;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            let n: u32 = body[i + 1..j].parse().expect("well-formed label");
            let mut times = 1;
            if j < bytes.len() && bytes[j] == b'^' {
                let mut k = j + 1;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                times = body[j + 1..k].parse().expect("well-formed label");
                j = k;
            }
            let c = match kind {
                b'A' => RootComponent::A(n),
                b'D' => RootComponent::D(n),
                _ => RootComponent::E(n),
            };
            comps.extend(std::iter::repeat_n(c, times));
            i = j;
        }
        (RootDecomposition::from_components(comps), codim)
    }
}
