mod common;

use common::*;
use lattice_fillings::isometry::is_isomorphic;
use lattice_fillings::names::LatticeName;
use lattice_fillings::{Error, Lattice};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

fn make(s: &str) -> Lattice {
    LatticeName::parse(s).unwrap().make().unwrap()
}

#[test]
fn determinants() {
    assert_eq!(make("E8").det(), BigInt::from(1));
    assert_eq!(make("diag(5)").det(), BigInt::from(5));
    assert_eq!(make("Lambda(2,4)").det(), BigInt::from(7));
    assert_eq!(Lattice::empty().det(), BigInt::from(1));
}

#[test]
fn sums_and_negation() {
    assert!(is_isomorphic(&make("diag(2)").direct_sum(&make("A2")), &make("T6")).unwrap());
    assert_eq!(make("E7").direct_sum(&Lattice::empty()), make("E7"));
    assert_eq!(make("E8").direct_sum(&make("diag(3)")).det(), BigInt::from(3));
    let l = make("D5");
    assert_eq!(l.negate().negate(), l);
    assert_eq!(Lattice::diagonal(&[1]).negate(), Lattice::diagonal(&[-1]));
    assert!(is_isomorphic(&make("E8").negate().negate(), &make("E8")).unwrap());
}

#[test]
fn complement_examples() {
    // (2,2,2,2,2) ∈ Z⁵ in the simple-root basis e1−e2, e2−e3, e3−e4, e4−e5, e4+e5.
    let d5 = make("D5");
    let v = [2, 4, 6, 3, 5];
    assert_eq!(d5.norm(&v).unwrap(), 20);
    assert!(is_isomorphic(&d5.complement(&v).unwrap(), &make("A4")).unwrap());
    // A1 ⊕ A2 coordinates of the vector (3,−3) ⊕ (2,2,−4).
    let t6 = make("T6");
    let w = [3, 2, 4];
    assert_eq!(t6.norm(&w).unwrap(), 42);
    assert!(is_isomorphic(&t6.complement(&w).unwrap(), &make("Lambda(2,4)")).unwrap());
    let two = Lattice::diagonal(&[1, 1]);
    assert_eq!(two.complement(&[1, 0]).unwrap(), Lattice::diagonal(&[1]));
    let i18 = Lattice::unimodular_odd(1, 8);
    let c = i18.complement(&[3, -1, -1, -1, -1, -1, -1, -1, -1]).unwrap();
    assert!(is_isomorphic(&c.negate(), &make("E8")).unwrap());
    assert!(matches!(d5.complement(&[0; 5]), Err(Error::ZeroVector)));
}

#[test]
fn pairing_gcds() {
    assert_eq!(make("D5").pairing_gcd(&[2, 4, 6, 3, 5]).unwrap(), 4);
    assert_eq!(Lattice::diagonal(&[1, 1]).pairing_gcd(&[2, 0]).unwrap(), 2);
    assert_eq!(make("E8").pairing_gcd(&[1, 0, 0, 0, 0, 0, 0, 0]).unwrap(), 1);
}

#[test]
fn text_round_trip() {
    let l = make("C4");
    let text = l.to_text();
    let rows: Vec<Vec<i64>> = text
        .lines()
        .skip(1)
        .map(|line| line.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    assert_eq!(Lattice::new(rows).unwrap(), l);
}

fn nonzero_vector(rng: &mut impl rand::Rng, r: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..r).map(|_| rng.gen_range(-3..=3)).collect();
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn determinant_identity(seed in any::<u64>(), rank in 1usize..=6) {
        let mut rng = rng(seed);
        let l = random_pd(&mut rng, rank);
        let v = nonzero_vector(&mut rng, rank);
        let c = l.complement(&v).unwrap();
        let d = l.pairing_gcd(&v).unwrap();
        let lhs = c.det().abs() * BigInt::from(d * d);
        let rhs = BigInt::from(l.norm(&v).unwrap()) * l.det().abs();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(c.rank(), rank - 1);
    }

    #[test]
    fn complement_is_orthogonal(seed in any::<u64>(), rank in 1usize..=6) {
        let mut rng = rng(seed);
        let l = random_pd(&mut rng, rank);
        let v = nonzero_vector(&mut rng, rank);
        for w in l.complement_basis(&v).unwrap() {
            prop_assert_eq!(l.inner(&w, &v).unwrap(), 0);
        }
    }

    #[test]
    fn sum_multiplies_det(a in any::<u64>(), r1 in 0usize..=4, r2 in 0usize..=4) {
        let mut rng = rng(a);
        let l1 = random_pd(&mut rng, r1);
        let l2 = random_pd(&mut rng, r2);
        let s = l1.direct_sum(&l2);
        prop_assert_eq!(s.rank(), r1 + r2);
        prop_assert_eq!(s.det(), l1.det() * l2.det());
    }

    #[test]
    fn complement_ignores_basis(seed in any::<u64>(), rank in 2usize..=5) {
        let mut rng = rng(seed);
        let l = random_pd(&mut rng, rank);
        let v = nonzero_vector(&mut rng, rank);
        let u = random_unimodular(&mut rng, rank);
        // New basis rows U·B: Gram U·G·Uᵀ, and v has coordinates v·U⁻¹.
        let moved = l.sublattice(&u).unwrap();
        let inv = common::rational_inverse(&u);
        let w: Vec<i64> = (0..rank)
            .map(|j| {
                let s: num_rational::BigRational = v.iter().zip(&inv).map(|(&a, row)| &row[j] * BigInt::from(a)).sum();
                assert!(s.is_integer());
                i64::try_from(s.to_integer()).unwrap()
            })
            .collect();
        prop_assert_eq!(vec_mat(&w, &u), v.clone());
        let a = l.complement(&v).unwrap();
        let b = moved.complement(&w).unwrap();
        prop_assert!(is_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn signature_of_unimodular_odd(a in 0usize..=3, b in 0usize..=9) {
        let s = Lattice::unimodular_odd(a, b).signature();
        prop_assert_eq!((s.positive, s.negative), (a, b));
    }
}
