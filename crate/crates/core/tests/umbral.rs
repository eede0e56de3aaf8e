use std::collections::BTreeSet;
use std::time::Instant;

use charmass::umbral::{catalog, find_record, niemeier_mass, verify_2s5, verify_gl2z3, expected_2s5, expected_gl2z3};
use num_traits::One;
use num_bigint as _;

#[test]
fn catalog_is_consistent() {
    assert_eq!(catalog().len(), 24);
    for r in catalog() {
        r.validate().unwrap_or_else(|e| panic!("{}: {e}", r.name));
        if !r.is_leech() {
            let eta = r.eta_type();
            assert!(r.classes.iter().any(|c| c.types == eta), "{} lacks the class of -1", r.name);
        }
    }
}

#[test]
fn lookup_normalizes() {
    assert_eq!(find_record("a11d7e6").unwrap().name, "A11 D7 E6");
    assert!(find_record("leech").unwrap().is_leech());
    assert!(find_record("E9").is_err());
}

#[test]
fn gl2z3_census() {
    assert_eq!(verify_gl2z3(), expected_gl2z3());
}

#[test]
fn two_s5_census() {
    assert_eq!(verify_2s5(), expected_2s5());
}

#[test]
fn niemeier_masses() {
    let mut keys = BTreeSet::new();
    for r in catalog() {
        let t = Instant::now();
        let m = niemeier_mass(r).unwrap();
        assert_eq!(m.degree(), 24);
        assert!(m.total().is_one(), "{}", r.name);
        eprintln!("{:12} {:6} keys {:?}", r.name, m.len(), t.elapsed());
        keys.extend(m.keys().cloned());
    }
    assert_eq!(keys.len(), 53204);
}

#[test]
fn permutation_censuses_of_m12_m24() {
    use charmass::{CycloProduct, MassMap};
    use std::collections::BTreeMap;
    for name in ["12A2", "24A1"] {
        let r = find_record(name).unwrap();
        // signs are recoverable from the polynomial once the underlying
        // permutation cycle type is fixed
        let mut seen: BTreeMap<(Vec<u32>, CycloProduct), String> = BTreeMap::new();
        let mut entries = Vec::new();
        for c in &r.classes {
            let p = c.types[0].charpoly().unwrap();
            assert_eq!(p.degree(), r.factors[0].1 as usize);
            let t = c.types[0].to_string();
            let mut shape: Vec<u32> = c.types[0].cycles().iter().map(|&(l, _)| l).collect();
            shape.sort();
            if let Some(prev) = seen.insert((shape, p.clone()), t.clone()) {
                assert_eq!(prev, t, "{name}: two types share a polynomial");
            }
            entries.push((p, c.size.clone()));
        }
        let m = MassMap::from_entries(r.factors[0].1 as usize, entries).unwrap();
        assert!(m.total().is_one());
    }
}

#[test]
fn known_entries() {
    use charmass::{CycloProduct, Rational};
    use num_bigint::BigInt;
    let leech = niemeier_mass(find_record("leech").unwrap()).unwrap();
    assert_eq!(leech.get(&CycloProduct::cyclo(1, 24)), "1/8315553613086720000".parse::<Rational>().unwrap());
    let a1 = niemeier_mass(find_record("24A1").unwrap()).unwrap();
    let want = Rational::new(BigInt::one(), BigInt::from(244823040u64) << 24);
    assert_eq!(a1.get(&CycloProduct::cyclo(1, 24)), want);
    let r = find_record("2A9 D6").unwrap();
    let sizes: Vec<String> = r.classes.iter().map(|c| c.size.to_string()).collect();
    assert_eq!(sizes.len(), 3);
    assert_eq!(find_record("24A1").unwrap().classes.len(), 21);
    assert_eq!(find_record("D24").unwrap().classes.len(), 1);
}
