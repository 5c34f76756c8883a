use proptest::prelude::*;
use rigidcy_core::census::*;

#[test]
fn aut_group() {
    let g = build_aut_group();
    assert_eq!(g.len(), 18);
    assert!(g.contains(&EAutomorphism::IDENTITY));
    let w = EAutomorphism { sign: 1, rot: 1, t: 0 };
    assert_eq!(w.order(), 3);
    assert_eq!(w.compose(&w).compose(&w), EAutomorphism::IDENTITY);
    let orders: Vec<u32> = g.iter().map(|a| a.order()).collect();
    assert!(orders.iter().all(|o| 18 % o == 0));
}

#[test]
fn triple_census() {
    let c = count_dc3_triple();
    assert_eq!((c.l1, c.l2, c.l3, c.total), (27, 162, 324, 513));
    assert_eq!(c.collisions, 0);
    // closed forms
    assert_eq!(c.l1, 3 * 3 * 3);
    assert_eq!(c.l2, 3 * 18 * 3);
    assert_eq!(c.l3, 18 * 18);
}

#[test]
fn triple_profiles() {
    assert_eq!(verify_dc3_profiles().unwrap(), 513);
}

#[test]
fn klein_examples() {
    let k = count_dc3_klein(&[0, 1, 3]).unwrap();
    assert_eq!((k.count, k.labels, k.asymmetric, k.translates_distinct), (14, 42, true, true));
    let k = count_dc3_klein(&[0, 1, 6]).unwrap();
    assert_eq!(k.count, 7);
    assert!(!k.asymmetric && k.flag.is_some());
    assert!(count_dc3_klein(&[1, 2, 3]).is_none());
}

#[test]
fn klein_scan() {
    let scan = scan_klein_subsets();
    assert_eq!(scan.len(), 15);
    let fourteen = scan.iter().filter(|k| k.count == 14).count();
    let seven = scan.iter().filter(|k| k.count == 7).count();
    assert_eq!(fourteen + seven, 15);
    // three-term progressions through 0 are exactly the symmetric subsets
    let ap = scan
        .iter()
        .filter(|k| {
            let s = k.subset;
            (0..7u8).any(|c| s.iter().all(|&x| s.contains(&((c + 7 - x) % 7))))
        })
        .count();
    assert_eq!(seven, ap);
    assert!(scan.iter().all(|k| (k.count == 14) == k.asymmetric));
}

proptest! {
    #[test]
    fn klein_invariant_under_translation_and_negation(a in 1u8..7, b in 1u8..7, shift in 0usize..3) {
        prop_assume!(a != b);
        let s = [0u8, a, b];
        let base = count_dc3_klein(&s).unwrap().count;
        let pivot = s[shift];
        let moved: Vec<u8> = s.iter().map(|x| (x + 7 - pivot) % 7).collect();
        prop_assert_eq!(count_dc3_klein(&moved).unwrap().count, base);
        let neg: Vec<u8> = s.iter().map(|x| (7 - x) % 7).collect();
        prop_assert_eq!(count_dc3_klein(&neg).unwrap().count, base);
    }
}
