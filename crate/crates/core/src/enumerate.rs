//! Exact Fincke-Pohst enumeration for positive definite lattices.
//!
//! With `Δ_k` the leading principal minors (`Δ_0 = 1`) and `y_k = Δ_{k+1}·x_k + Σ_{j>k} a_{kj}·x_j`
//! built from the fraction-free elimination rows, the quadratic form splits as
//! `Q(x) = Σ_k y_k² / (Δ_k·Δ_{k+1})`. The tail `P_k = Σ_{j≥k} y_j²/(Δ_j·Δ_{j+1})` is the value of a
//! Schur complement whose denominators divide `Δ_k`, so `V_k = Δ_k·P_k` is an integer and obeys
//! `Δ_{k+1}·V_k = Δ_k·V_{k+1} + y_k²`. All pruning is done on these integers.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intmat;
use crate::lattice::{Covector, Lattice, LatticeVector};
use crate::reduce;

#[derive(Clone, Copy, Debug)]
pub(crate) enum Flow {
    Continue,
    Stop,
    /// Continue with a smaller norm bound.
    Shrink(i64),
}

trait Exact: Clone + Ord + Integer + Signed + Roots {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn of(v: i64) -> Self;
    fn small(&self) -> Option<i64>;
    fn add_c(&self, o: &Self) -> Option<Self>;
    fn sub_c(&self, o: &Self) -> Option<Self>;
    fn mul_c(&self, o: &Self) -> Option<Self>;
}

impl Exact for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn of(v: i64) -> Self {
        v as i128
    }
    fn small(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
    fn add_c(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub_c(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul_c(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
}

impl Exact for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn of(v: i64) -> Self {
        BigInt::from(v)
    }
    fn small(&self) -> Option<i64> {
        self.to_i64()
    }
    fn add_c(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub_c(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul_c(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
}

/// Fraction-free elimination data: `minors[k] = Δ_k` for `k = 0..=r`, `rows[k][j] = a_{kj}` for `j > k`.
struct Plan<T> {
    minors: Vec<T>,
    rows: Vec<Vec<T>>,
}

fn big_plan(l: &Lattice) -> Plan<BigInt> {
    let r = l.rank();
    let mut a = l.big_gram();
    let mut minors = vec![BigInt::one()];
    let mut rows = Vec::with_capacity(r);
    for k in 0..r {
        minors.push(a[k][k].clone());
        rows.push(a[k].clone());
        let prev = &minors[k];
        for i in k + 1..r {
            for j in k + 1..r {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / prev;
            }
        }
    }
    Plan { minors, rows }
}

fn convert<T: Exact>(p: &Plan<BigInt>) -> Option<Plan<T>> {
    Some(Plan {
        minors: p.minors.iter().map(T::from_big).collect::<Option<_>>()?,
        rows: p
            .rows
            .iter()
            .map(|row| row.iter().map(T::from_big).collect::<Option<_>>())
            .collect::<Option<_>>()?,
    })
}

struct Walk<'a, T, F> {
    plan: &'a Plan<T>,
    r: usize,
    x: Vec<i64>,
    bound: i64,
    parity: Option<&'a [u8]>,
    halve: bool,
    visit: F,
    leaves: usize,
    stopped: bool,
}

impl<T: Exact, F: FnMut(usize, &[i64], i64) -> Flow> Walk<'_, T, F> {
    /// `v_above = V_{k+1}`. Returns `None` on arithmetic overflow.
    fn level(&mut self, k: usize, v_above: &T, any_nonzero: bool) -> Option<()> {
        let lo_minor = &self.plan.minors[k];
        let hi_minor = &self.plan.minors[k + 1];
        let mut t = T::zero();
        for j in k + 1..self.r {
            if self.x[j] != 0 {
                t = t.add_c(&self.plan.rows[k][j].mul_c(&T::of(self.x[j]))?)?;
            }
        }
        let slack = hi_minor.mul_c(&T::of(self.bound))?.sub_c(v_above)?;
        if slack.is_negative() {
            return Some(());
        }
        let m = lo_minor.mul_c(&slack)?.sqrt();
        let lo = -(m.add_c(&t)?.div_floor(hi_minor));
        let hi = m.sub_c(&t)?.div_floor(hi_minor);
        let (Some(mut lo), Some(hi)) = (lo.small(), hi.small()) else { return None };
        if self.halve && !any_nonzero {
            lo = lo.max(0);
        }
        let step = if let Some(par) = self.parity {
            if (lo - par[k] as i64).rem_euclid(2) != 0 {
                lo += 1;
            }
            2
        } else {
            1
        };
        let base = lo_minor.mul_c(v_above)?;
        let mut xk = lo;
        while xk <= hi {
            let y = hi_minor.mul_c(&T::of(xk))?.add_c(&t)?;
            let num = base.add_c(&y.mul_c(&y)?)?;
            let v_here = num.div_floor(hi_minor);
            let nonzero = any_nonzero || xk != 0;
            self.x[k] = xk;
            if k == 0 {
                if (nonzero || !self.halve) && v_here <= T::of(self.bound) {
                    let norm = v_here.small()?;
                    let idx = self.leaves;
                    self.leaves += 1;
                    match (self.visit)(idx, &self.x, norm) {
                        Flow::Continue => {}
                        Flow::Stop => {
                            self.stopped = true;
                        }
                        Flow::Shrink(b) => self.bound = b,
                    }
                }
            } else if v_here <= lo_minor.mul_c(&T::of(self.bound))? {
                self.level(k - 1, &v_here, nonzero)?;
            }
            if self.stopped {
                break;
            }
            xk += step;
        }
        self.x[k] = 0;
        Some(())
    }
}

/// Core search: every vector `x` (restricted to `x ≡ parity mod 2` if given, to one of `±x`
/// and nonzero if `halve`) with `Q(x) ≤ bound`, in a fixed deterministic order.
pub(crate) fn search(
    l: &Lattice,
    bound: i64,
    parity: Option<&[u8]>,
    halve: bool,
    mut visit: impl FnMut(&[i64], i64) -> Flow,
) -> Result<()> {
    l.require_positive_definite()?;
    let r = l.rank();
    if bound < 0 {
        return Ok(());
    }
    if r == 0 {
        if !halve {
            visit(&[], 0);
        }
        return Ok(());
    }
    let big = big_plan(l);
    let mut log: Vec<Flow> = Vec::new();
    if let Some(plan) = convert::<i128>(&big) {
        let mut walk = Walk {
            plan: &plan,
            r,
            x: vec![0; r],
            bound,
            parity,
            halve,
            visit: |_, x: &[i64], n| {
                let f = visit(x, n);
                log.push(f);
                f
            },
            leaves: 0,
            stopped: false,
        };
        if walk.level(r - 1, &0, false).is_some() {
            return Ok(());
        }
    }
    // Replay the decisions already taken, then continue in arbitrary precision.
    let replayed = log.len();
    let mut walk = Walk {
        plan: &big,
        r,
        x: vec![0; r],
        bound,
        parity,
        halve,
        visit: |idx: usize, x: &[i64], n| {
            if idx < replayed {
                log[idx]
            } else {
                visit(x, n)
            }
        },
        leaves: 0,
        stopped: false,
    };
    walk.level(r - 1, &BigInt::zero(), false).ok_or(Error::Overflow("enumeration"))
}

/// Calls `f(v, norm)` for every nonzero `v` with `norm ≤ bound`, one of each `±v`.
/// `f` returns `false` to stop early.
pub fn for_each_up_to(l: &Lattice, bound: i64, mut f: impl FnMut(&[i64], i64) -> bool) -> Result<()> {
    search(l, bound, None, true, |v, n| if f(v, n) { Flow::Continue } else { Flow::Stop })
}

/// Representative of `±v` whose first nonzero coordinate is negative.
pub(crate) fn canonical_sign(v: &mut [i64]) {
    if v.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0) {
        v.iter_mut().for_each(|c| *c = -*c);
    }
}

/// All vectors of a fixed norm, one per `±` pair.
#[derive(Clone, Debug)]
pub struct NormSlice {
    pub lattice: Lattice,
    pub norm: i64,
    pub vectors: Vec<LatticeVector>,
}

impl NormSlice {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

pub fn vectors_of_norm(l: &Lattice, norm: i64) -> Result<NormSlice> {
    if norm <= 0 {
        return Err(Error::OutOfRange(format!("norm must be positive, got {norm}")));
    }
    let mut out = Vec::new();
    for_each_up_to(l, norm, |v, n| {
        if n == norm {
            let mut v = v.to_vec();
            canonical_sign(&mut v);
            out.push(v);
        }
        true
    })?;
    out.sort();
    Ok(NormSlice {
        lattice: l.clone(),
        norm,
        vectors: out.into_iter().map(LatticeVector::from_coords).collect(),
    })
}

/// Number of `±` pairs of each norm `1..=max`; index 0 is unused.
pub fn norm_counts(l: &Lattice, max: i64) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; max.max(0) as usize + 1];
    for_each_up_to(l, max, |_, n| {
        counts[n as usize] += 1;
        true
    })?;
    Ok(counts)
}

pub fn is_even(l: &Lattice) -> bool {
    l.is_even()
}

/// `L ≅ L' ⊕ ⟨1⟩^k` with `L'` free of norm-1 vectors.
pub fn reduced_part(l: &Lattice) -> Result<(usize, Lattice)> {
    l.require_positive_definite()?;
    let mut k = 0;
    let mut cur = l.clone();
    loop {
        let mut unit = None;
        for_each_up_to(&cur, 1, |v, _| {
            unit = Some(v.to_vec());
            false
        })?;
        let Some(u) = unit else { break };
        cur = reduce::pair_reduce(&cur.complement(&u)?)?.lattice;
        k += 1;
    }
    Ok((k, cur))
}

/// The coset of characteristic covectors `base + 2L*`.
#[derive(Clone, Debug)]
pub struct CharCoset {
    pub lattice: Lattice,
    pub base: Covector,
}

impl CharCoset {
    pub fn contains(&self, xi: &Covector) -> bool {
        let l = &self.lattice;
        xi.is_dual(l)
            && (0..l.rank()).all(|i| {
                let mut e = vec![0; l.rank()];
                e[i] = 1;
                let p = xi.pair(l, &e);
                (p.to_integer() - l.entry(i, i)).is_even()
            })
    }
}

/// Solve `G·c ≡ diag(G) (mod 2)`; the vector `Σ c_i b_i` is characteristic.
pub fn char_coset(l: &Lattice) -> CharCoset {
    let r = l.rank();
    let mut rows: Vec<Vec<u8>> = (0..r)
        .map(|i| {
            let mut row: Vec<u8> = (0..r).map(|j| l.entry(i, j).rem_euclid(2) as u8).collect();
            row.push(l.entry(i, i).rem_euclid(2) as u8);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r {
        let Some(p) = (row..r).find(|&i| rows[i][col] == 1) else { continue };
        rows.swap(row, p);
        for i in 0..r {
            if i != row && rows[i][col] == 1 {
                let src = rows[row].clone();
                for (a, b) in rows[i].iter_mut().zip(src) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut c = vec![0i64; r];
    for (i, &col) in pivots.iter().enumerate() {
        c[col] = rows[i][r] as i64;
    }
    let base = Covector::new(c.into_iter().map(|x| BigRational::from_integer(x.into())).collect());
    CharCoset { lattice: l.clone(), base }
}

/// `δ(L)` with a minimising characteristic covector.
#[derive(Clone, Debug)]
pub struct DeltaResult {
    pub delta: BigRational,
    pub min_norm: BigRational,
    pub witness: Covector,
}

pub fn delta_lattice(l: &Lattice) -> Result<BigRational> {
    Ok(delta_with_witness(l)?.delta)
}

/// Minimises `ξ²` over characteristic covectors. In dual coordinates `u_i = ξ·b_i` the
/// constraint is `u ≡ diag(G) (mod 2)` and `ξ² = uᵀ·adj(G)·u / det(G)`.
pub fn delta_with_witness(l: &Lattice) -> Result<DeltaResult> {
    l.require_positive_definite()?;
    let r = l.rank();
    if r == 0 {
        return Ok(DeltaResult {
            delta: BigRational::zero(),
            min_norm: BigRational::zero(),
            witness: Covector::new(Vec::new()),
        });
    }
    let det = l.det();
    let adj_big = intmat::adjugate(&l.big_gram());
    let adj = Lattice::new(intmat::to_i64(&adj_big, "adjugate")?)?;
    let red = reduce::pair_reduce(&adj)?;
    let parity: Vec<u8> = (0..r).map(|i| l.entry(i, i).rem_euclid(2) as u8).collect();
    // u = Tᵀ·u', so u' = (T⁻¹)ᵀ·u.
    let red_parity: Vec<u8> = (0..r)
        .map(|j| {
            let s: i64 = (0..r).map(|i| red.inverse[i][j] * parity[i] as i64).sum();
            s.rem_euclid(2) as u8
        })
        .collect();
    let start: Vec<i64> = red_parity.iter().map(|&p| p as i64).collect();
    let mut best_norm = red.lattice.norm(&start)?;
    let mut best = start;
    search(&red.lattice, best_norm, Some(&red_parity), false, |u, n| {
        debug_assert!({
            let orig = reduce::apply(&red.transform, u);
            orig.iter().zip(&parity).all(|(&a, &p)| (a - p as i64).rem_euclid(2) == 0)
        });
        if n < best_norm {
            best_norm = n;
            best = u.to_vec();
        }
        if n == 0 {
            Flow::Stop
        } else {
            Flow::Shrink(n - 1)
        }
    })?;
    let u = reduce::apply(&red.transform, &best);
    let det_q = BigRational::from_integer(det.clone());
    let coords = (0..r)
        .map(|i| {
            let s: BigInt = (0..r).map(|j| &adj_big[i][j] * BigInt::from(u[j])).sum();
            BigRational::new(s, det.clone())
        })
        .collect();
    let min_norm = BigRational::from_integer(best_norm.into()) / det_q;
    let delta = BigRational::from_integer(BigInt::from(r)) - &min_norm;
    Ok(DeltaResult { delta, min_norm, witness: Covector::new(coords) })
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

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn roots_of_a_n() {
        for n in 1..6 {
            assert_eq!(vectors_of_norm(&a(n), 2).unwrap().len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn representatives_are_canonical() {
        let s = vectors_of_norm(&Lattice::diagonal(&[1, 1]), 2).unwrap();
        let v: Vec<_> = s.vectors.iter().map(|v| v.coords().to_vec()).collect();
        assert_eq!(v, vec![vec![-1, -1], vec![-1, 1]]);
    }

    #[test]
    fn rejects_indefinite() {
        let h = Lattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(vectors_of_norm(&h, 2).unwrap_err(), Error::NotPositiveDefinite);
        assert_eq!(delta_lattice(&h).unwrap_err(), Error::NotPositiveDefinite);
    }

    #[test]
    fn shrinking_bound() {
        let l = Lattice::diagonal(&[3, 5, 7]);
        let mut seen = Vec::new();
        search(&l, 100, None, true, |_, n| {
            seen.push(n);
            Flow::Shrink(n - 1)
        })
        .unwrap();
        assert!(seen.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(*seen.last().unwrap(), 3);
    }

    #[test]
    fn reduced_parts() {
        let l = Lattice::diagonal(&[1, 1, 1]);
        let (k, r) = reduced_part(&l).unwrap();
        assert_eq!((k, r.rank()), (3, 0));
        let four = Lattice::diagonal(&[1, 1, 1, 1]);
        let c = four.complement(&[1, 1, 0, 0]).unwrap();
        let (k, r) = reduced_part(&c).unwrap();
        assert_eq!(k, 2);
        assert_eq!(r, Lattice::diagonal(&[2]));
        let (k, again) = reduced_part(&r).unwrap();
        assert_eq!((k, again), (0, r));
    }

    #[test]
    fn deltas_of_diagonals() {
        assert_eq!(delta_lattice(&Lattice::diagonal(&[2])).unwrap(), q(1, 1));
        assert_eq!(delta_lattice(&Lattice::diagonal(&[3])).unwrap(), q(2, 3));
        assert_eq!(delta_lattice(&Lattice::diagonal(&[4])).unwrap(), q(1, 1));
        assert_eq!(delta_lattice(&Lattice::diagonal(&[1])).unwrap(), q(0, 1));
        assert_eq!(delta_lattice(&Lattice::empty()).unwrap(), q(0, 1));
        for n in (3..20).step_by(2) {
            assert_eq!(delta_lattice(&Lattice::diagonal(&[n])).unwrap(), q(n - 1, n));
        }
    }

    #[test]
    fn witness_is_characteristic() {
        let l = Lattice::new(vec![vec![3, 1, 0], vec![1, 2, 1], vec![0, 1, 5]]).unwrap();
        let res = delta_with_witness(&l).unwrap();
        let coset = char_coset(&l);
        assert!(coset.contains(&res.witness));
        assert!(coset.contains(&coset.base));
        assert_eq!(res.witness.norm(&l), res.min_norm);
    }

    #[test]
    fn unimodular_char_base() {
        let l = Lattice::unimodular_odd(1, 9);
        let c = char_coset(&l);
        assert!(c.base.coords().iter().all(|x| x == &BigRational::one()));
        assert!(char_coset(&a(4).direct_sum(&a(3))).base.coords().iter().all(|x| x.is_zero()));
    }
}
