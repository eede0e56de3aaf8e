use charmass::weylmass::*;
use charmass::{CycloProduct, Rational};

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn cp(s: &str) -> CycloProduct {
    s.parse().unwrap()
}

#[test]
fn closed_forms_match_enumeration() {
    let mut kinds = Vec::new();
    for n in 1..=6 {
        kinds.push(IrredKind::a(n));
    }
    for n in 3..=6 {
        kinds.push(IrredKind::d(n));
    }
    kinds.push(IrredKind::e(6));
    for kind in kinds {
        for order in 1..=3 {
            if !kind.has_coset_order(order) {
                continue;
            }
            let closed = mass_irreducible(kind, order).unwrap();
            let brute = brute_force_coset_mass(kind, order).unwrap();
            assert_eq!(closed, brute, "{kind} order {order}");
        }
    }
}

#[test]
fn a2_enumeration_example() {
    let m = brute_force_coset_mass(IrredKind::a(2), 1).unwrap();
    let want = MassMap::from_entries(2, [(cp("1^2"), r(1, 6)), (cp("1 2"), r(1, 2)), (cp("3"), r(1, 3))]).unwrap();
    assert_eq!(m, want);
}

#[test]
fn d3_is_a3() {
    for o in 1..=2 {
        assert_eq!(mass_irreducible(IrredKind::d(3), o).unwrap(), mass_irreducible(IrredKind::a(3), o).unwrap());
    }
}

#[test]
#[ignore = "enumerates 2903040 elements of W(E7)"]
fn e7_matches_enumeration() {
    let k = IrredKind::e(7);
    assert_eq!(mass_irreducible(k, 1).unwrap(), brute_force_coset_mass(k, 1).unwrap());
}
