mod common;

use std::sync::OnceLock;

use lattice_fillings::constructions::{verify_identity, Family};
use lattice_fillings::enumerate::reduced_part;
use lattice_fillings::floer::{delta_y, KnotSpec};
use lattice_fillings::isometry::is_isomorphic;
use lattice_fillings::names::LatticeName;
use lattice_fillings::obstruction::{
    candidate_vectors, classify_fillings, padding_suffices, rokhlin_congruence, rokhlin_obstruction,
    step, FillingTable, RokhlinVerdict, PADDING,
};
use lattice_fillings::Lattice;
use num_bigint::BigInt;
use num_traits::Signed;

fn make(s: &str) -> Lattice {
    LatticeName::parse(s).unwrap().make().unwrap()
}

fn t23() -> &'static FillingTable {
    static T: OnceLock<FillingTable> = OnceLock::new();
    T.get_or_init(|| classify_fillings(&KnotSpec::t23(), 9).unwrap())
}

fn t25() -> &'static FillingTable {
    static T: OnceLock<FillingTable> = OnceLock::new();
    T.get_or_init(|| classify_fillings(&KnotSpec::t25(), 12).unwrap())
}

fn diag(n: u32) -> String {
    if n == 1 { "empty".into() } else { format!("diag({n})") }
}

/// Exact match up to isomorphism, with the expected padding flags.
fn assert_row(table: &FillingTable, n: u64, expected: &[(String, bool)]) {
    let mut wanted: Vec<(Lattice, String, bool)> = Vec::new();
    for (name, flagged) in expected {
        let l = make(name);
        let mut dup = false;
        for (w, _, _) in &wanted {
            dup |= is_isomorphic(w, &l).unwrap();
        }
        if !dup {
            wanted.push((l, name.clone(), *flagged));
        }
    }
    let row = table.row(n).unwrap();
    let labels: Vec<String> = row.kept.iter().map(|f| f.label()).collect();
    assert_eq!(row.kept.len(), wanted.len(), "row {n}: {labels:?}");
    for (want, name, flagged) in &wanted {
        let hits: Vec<_> = row.kept.iter().filter(|f| is_isomorphic(&f.lattice, want).unwrap()).collect();
        assert_eq!(hits.len(), 1, "row {n} lacks {name}: {labels:?}");
        assert_eq!(hits[0].flags.needs_unit_padding, *flagged, "row {n} flag of {name}");
    }
}

fn trefoil_expected(n: u32) -> Vec<(String, bool)> {
    let mut out = vec![(diag(n), false)];
    if n <= 8 {
        out.push((format!("T{n}"), false));
    }
    out
}

#[test]
fn trefoil_rows() {
    for n in 1..=9u32 {
        assert_row(t23(), n as u64, &trefoil_expected(n));
    }
}

#[test]
fn cinquefoil_rows() {
    let table = t25();
    for n in 1..=12u32 {
        let mut expected = trefoil_expected(n);
        if n <= 11 {
            expected.push((format!("C{n}"), false));
        }
        match n {
            2 => {
                expected.push(("E8+diag(2)".into(), true));
                expected.push(("Gamma12+diag(2)".into(), false));
            }
            3 => {
                expected.push(("E8+diag(3)".into(), false));
                expected.push(("Gamma12+diag(3)".into(), false));
            }
            _ => {}
        }
        assert_row(table, n as u64, &expected);
    }
    let four = table.row(4).unwrap();
    for name in ["E8+diag(4)", "Gamma12+diag(4)", "D9"] {
        assert!(four.discarded.iter().any(|f| is_isomorphic(&f.lattice, &make(name)).unwrap()), "{name}");
    }
}

#[test]
fn unknot_rows() {
    let table = classify_fillings(&KnotSpec::unknot(), 12).unwrap();
    for n in 1..=12u32 {
        assert_row(&table, n as u64, &[(diag(n), false)]);
    }
}

#[test]
fn rows_are_reduced_with_det_n() {
    for table in [t23(), t25()] {
        for row in &table.rows {
            for f in &row.kept {
                assert_eq!(f.lattice.det().abs(), BigInt::from(row.n));
                assert_eq!(reduced_part(&f.lattice).unwrap().0, 0);
                assert!(f.lattice.is_positive_definite());
                assert!(f.delta <= row.delta_y, "δ filter");
                assert!(f.flags.survived_delta && f.flags.survived_rokhlin);
            }
            assert!(row.padding_checked);
        }
    }
}

#[test]
fn step_examples() {
    let row = step(&KnotSpec::t23(), 2, &[Lattice::empty(), make("E8")]).unwrap();
    assert_eq!(row.kept.len(), 2);
    assert!(is_isomorphic(&row.kept[1].lattice, &make("E7")).unwrap());
    assert!(is_isomorphic(&row.discarded[0].lattice, &make("E8+diag(2)")).unwrap());
    assert_eq!(row.discarded[0].delta, common::q(9, 1));
    let u = step(&KnotSpec::unknot(), 3, &[make("diag(2)")]).unwrap();
    assert_eq!(u.kept.len(), 1);
    assert_eq!(u.kept[0].lattice, Lattice::diagonal(&[3]));
}

#[test]
fn candidate_examples() {
    let e8 = candidate_vectors(&make("E8"), 2).unwrap();
    assert_eq!(e8.iter().filter(|v| v.coords()[8..] == [0, 0]).count(), 120);
    assert!(e8.iter().any(|v| v.coords() == [0, 0, 0, 0, 0, 0, 0, 0, 1, 1]));
    let empty = candidate_vectors(&Lattice::empty(), 2).unwrap();
    assert_eq!(empty.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(), [vec![1, 1]]);
    let t6 = candidate_vectors(&make("T6"), 7).unwrap();
    assert!(t6.iter().any(|v| v.coords() == [-3, -2, -4, 0, 0]));
}

#[test]
fn padding_is_enough() {
    for n in 2..=16 {
        assert!(padding_suffices(n, PADDING), "n = {n}");
    }
}

#[test]
fn rokhlin() {
    assert_eq!(rokhlin_obstruction(&make("E8+diag(2)"), 2), RokhlinVerdict::ExcludedBare);
    assert_eq!(rokhlin_obstruction(&make("E7"), 2), RokhlinVerdict::Unconstrained);
    assert_eq!(rokhlin_obstruction(&make("diag(2)"), 2), RokhlinVerdict::Unconstrained);
    assert_eq!(rokhlin_congruence(&make("E8+diag(2)"), 2), RokhlinVerdict::ExcludedBare);
}

#[test]
fn constructions_appear_in_rows() {
    let t23 = t23();
    let t25 = t25();
    let contains = |table: &FillingTable, n: u64, l: &Lattice| {
        let (_, red) = reduced_part(l).unwrap();
        table.row(n).unwrap().kept.iter().any(|f| is_isomorphic(&f.lattice, &red).unwrap())
    };
    for n in 1..=8u32 {
        let r = verify_identity(Family::T, n).unwrap();
        assert!(r.isomorphic);
        assert!(contains(t23, n as u64, &r.complement), "T{n} in trefoil row");
        assert!(contains(t25, n as u64, &r.complement), "T{n} in cinquefoil row");
        assert!(lattice_fillings::enumerate::delta_lattice(&r.complement).unwrap() <= delta_y(&KnotSpec::t23(), n as u64).unwrap());
    }
    for n in 1..=11u32 {
        let r = verify_identity(Family::C, n).unwrap();
        assert!(contains(t25, n as u64, &r.complement), "C{n} in cinquefoil row");
    }
    let d3 = verify_identity(Family::Double3, 1).unwrap();
    assert!(contains(t25, 3, &d3.complement));
    let d21 = verify_identity(Family::Double21, 1).unwrap();
    assert!(contains(t25, 2, &d21.complement));
}
