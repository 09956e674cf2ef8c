#![allow(dead_code)]

use lattice_fillings::Lattice;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `B·Bᵀ` for a random lower-triangular `B` with small entries and nonzero diagonal.
pub fn random_pd(rng: &mut impl Rng, rank: usize) -> Lattice {
    let b: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => rng.gen_range(-2..=2),
                    std::cmp::Ordering::Equal => rng.gen_range(1..=2),
                    std::cmp::Ordering::Greater => 0,
                })
                .collect()
        })
        .collect();
    let g = (0..rank)
        .map(|i| (0..rank).map(|j| (0..rank).map(|k| b[i][k] * b[j][k]).sum()).collect())
        .collect();
    Lattice::new(g).unwrap()
}

/// Product of random elementary row operations, swaps and sign changes.
pub fn random_unimodular(rng: &mut impl Rng, r: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect();
    if r < 2 {
        if r == 1 && rng.gen_bool(0.5) {
            u[0][0] = -1;
        }
        return u;
    }
    for _ in 0..3 * r {
        let i = rng.gen_range(0..r);
        let mut j = rng.gen_range(0..r);
        while j == i {
            j = rng.gen_range(0..r);
        }
        match rng.gen_range(0..3) {
            0 => {
                let c = rng.gen_range(-1..=1);
                let src = u[j].clone();
                for (a, b) in u[i].iter_mut().zip(src) {
                    *a += c * b;
                }
            }
            1 => u.swap(i, j),
            _ => u[i].iter_mut().for_each(|a| *a = -*a),
        }
    }
    u
}

/// Row vector times matrix.
pub fn vec_mat(v: &[i64], m: &[Vec<i64>]) -> Vec<i64> {
    (0..m.first().map_or(0, |r| r.len())).map(|j| v.iter().zip(m).map(|(a, row)| a * row[j]).sum()).collect()
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rational_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect()
}

/// Determinant by Gaussian elimination over the rationals.
pub fn rational_det(rows: &[Vec<i64>]) -> BigRational {
    let mut m = rational_rows(rows);
    let n = m.len();
    let mut det = BigRational::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let d = &f * &m[c][j];
                m[i][j] -= d;
            }
        }
    }
    det
}

/// Inverse by Gauss-Jordan over the rationals.
pub fn rational_inverse(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let n = rows.len();
    let mut m = rational_rows(rows);
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(((i == j) as i64).into())).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).expect("invertible");
        m.swap(p, c);
        inv.swap(p, c);
        let piv = m[c][c].clone();
        for j in 0..n {
            m[c][j] = &m[c][j] / &piv;
            inv[c][j] = &inv[c][j] / &piv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..n {
                    let a = &f * &m[c][j];
                    m[i][j] -= a;
                    let b = &f * &inv[c][j];
                    inv[i][j] -= b;
                }
            }
        }
    }
    inv
}

/// Exhaustive box search: every nonzero `x` of norm `n`, one of each `±x`, sorted with the
/// first nonzero coordinate negative. Coordinates obey `x_i² ≤ n·(G⁻¹)_ii`.
pub fn box_vectors(l: &Lattice, n: i64) -> Vec<Vec<i64>> {
    let g = l.gram_rows();
    let inv = rational_inverse(&g);
    let r = l.rank();
    let bounds: Vec<i64> = (0..r)
        .map(|i| {
            let lim = &inv[i][i] * BigInt::from(n);
            let mut b = 0i64;
            while BigRational::from_integer(BigInt::from((b + 1) * (b + 1))) <= lim {
                b += 1;
            }
            b
        })
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; r];
    fn walk(i: usize, x: &mut Vec<i64>, bounds: &[i64], g: &[Vec<i64>], n: i64, out: &mut Vec<Vec<i64>>) {
        if i == x.len() {
            let norm: i64 = (0..x.len()).map(|a| (0..x.len()).map(|b| x[a] * g[a][b] * x[b]).sum::<i64>()).sum();
            let first = x.iter().find(|&&c| c != 0);
            if norm == n && first.is_some_and(|&c| c < 0) {
                out.push(x.clone());
            }
            return;
        }
        for c in -bounds[i]..=bounds[i] {
            x[i] = c;
            walk(i + 1, x, bounds, g, n, out);
        }
        x[i] = 0;
    }
    walk(0, &mut x, &bounds, &g, n, &mut out);
    out.sort();
    out
}

/// `min ξ²` over characteristic covectors by searching dual coordinates `u ≡ diag(G) (mod 2)`
/// in a box guaranteed to contain a minimiser: `uᵀG⁻¹u ≥ |u|² / tr(G)`.
pub fn brute_char_min(l: &Lattice) -> BigRational {
    let g = l.gram_rows();
    let r = l.rank();
    if r == 0 {
        return BigRational::zero();
    }
    let inv = rational_inverse(&g);
    let form = |u: &[i64]| -> BigRational {
        let mut s = BigRational::zero();
        for a in 0..r {
            for b in 0..r {
                s += &inv[a][b] * BigInt::from(u[a] * u[b]);
            }
        }
        s
    };
    let start: Vec<i64> = (0..r).map(|i| g[i][i].rem_euclid(2)).collect();
    let mut best = form(&start);
    let trace: i64 = (0..r).map(|i| g[i][i]).sum();
    let limit = &best * BigInt::from(trace);
    let mut bound = 0i64;
    while BigRational::from_integer(BigInt::from((bound + 1) * (bound + 1))) <= limit {
        bound += 1;
    }
    let mut u = vec![0i64; r];
    fn walk(
        i: usize,
        u: &mut Vec<i64>,
        bound: i64,
        g: &[Vec<i64>],
        form: &dyn Fn(&[i64]) -> BigRational,
        best: &mut BigRational,
    ) {
        if i == u.len() {
            let v = form(u);
            if v < *best {
                *best = v;
            }
            return;
        }
        let parity = g[i][i].rem_euclid(2);
        let mut c = -bound;
        while c <= bound {
            if c.rem_euclid(2) == parity {
                u[i] = c;
                walk(i + 1, u, bound, g, form, best);
            }
            c += 1;
        }
    }
    walk(0, &mut u, bound, &g, &form, &mut best);
    best.abs()
}
