use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use rigidcy_core::embedverify::{verify_injectivity, PRIMARY, SHIPPED};
use rigidcy_core::numkernel::{q, q_i, AlgebraicNumber, FieldTower, Polynomial};
use rigidcy_core::profsearch::assign::{d3_family, d6_symbols, third_coordinates, CoordPattern};
use rigidcy_core::profsearch::concrete::realize;
use rigidcy_core::profsearch::dc7::{case_a, case_b, case_b_field};
use rigidcy_core::profsearch::mobius::{set_symmetries, Mobius};
use rigidcy_core::profsearch::*;
use rigidcy_core::{ProjectivePoint, RationalFunction, Target};

fn d6() -> &'static SearchReport {
    static CELL: OnceLock<SearchReport> = OnceLock::new();
    CELL.get_or_init(|| search(6).unwrap())
}

fn gauss(s: &str) -> AlgebraicNumber {
    AlgebraicNumber::parse(&q_i(), s).unwrap()
}

/// Brute force over a box large enough to contain every solution.
fn hurwitz_oracle(d: usize) -> BTreeSet<(u32, u32, u32)> {
    let mut out = BTreeSet::new();
    for g0 in 0..=2 * d as i64 {
        for g1 in 0..=2 * d as i64 {
            for delta in 1..=2 * d as i64 {
                if 2 * d as i64 - 6 == g0 + 3 * g1 && 2 * delta - 2 == g0 + g1 {
                    out.insert((g0 as u32, g1 as u32, delta as u32));
                }
            }
        }
    }
    out
}

fn rows(d: usize) -> Vec<(u32, u32, u32)> {
    hurwitz_solutions(d).iter().map(|r| (r.gamma0, r.gamma1, r.delta)).collect()
}

#[test]
fn hurwitz_rows() {
    assert_eq!(rows(3), vec![(0, 0, 1)]);
    assert_eq!(rows(4), vec![(2, 0, 2)]);
    assert_eq!(rows(5), vec![(1, 1, 2), (4, 0, 3)]);
    assert_eq!(rows(6), vec![(0, 2, 2), (3, 1, 3), (6, 0, 4)]);
    assert_eq!(rows(7), vec![(2, 2, 3), (5, 1, 4), (8, 0, 5)]);
    assert!(hurwitz_solutions(2).is_empty());
}

proptest! {
    #[test]
    fn hurwitz_resubstitution(d in 3usize..40) {
        let sols = hurwitz_solutions(d);
        for s in &sols {
            prop_assert!(s.holds());
        }
        let got: BTreeSet<_> = sols.iter().map(|r| (r.gamma0, r.gamma1, r.delta)).collect();
        prop_assert_eq!(got, hurwitz_oracle(d));
    }
}

#[test]
fn small_degrees_are_excluded() {
    for d in [4, 5] {
        let tr = exclude_small(d).unwrap();
        assert!(tr.is_empty(), "d = {d}: {tr:?}");
        assert!(tr.triples_examined > 0);
        assert_eq!(tr.rejected.values().sum::<u64>(), tr.triples_examined);
    }
}

#[test]
fn sextic_sanity_run() {
    let tr = exclude_small(6).unwrap();
    assert!(tr.survivors > 0);
    assert_eq!(tr.surviving_shapes, vec![(2, vec![0; 6]), (4, vec![3, 3, 0, 0, 0, 0])]);
    assert!(matches!(exclude_small(3), Err(SearchError::UnsupportedD(3))));
    assert!(matches!(exclude_small(7), Err(SearchError::UnsupportedD(7))));
}

fn sextic_shapes() -> Vec<Shape> {
    vec![
        Shape { delta: 2, blocks: vec![vec![1, 1]; 3] },
        Shape { delta: 4, blocks: vec![vec![1, 1, 1, 1], vec![4], vec![4]] },
    ]
}

#[test]
fn sextic_orbits() {
    let orbits = enumerate_fiber_assignments(6, &sextic_shapes());
    assert_eq!(orbits.len(), 15);
    let count = |d: [u32; 3]| orbits.iter().filter(|o| o.deltas == d).count();
    assert_eq!(count([2, 2, 2]), 5);
    assert_eq!(count([2, 2, 4]), 5);
    assert_eq!(count([2, 4, 4]), 3);
    assert_eq!(count([4, 4, 4]), 2);
    let mut shared: Vec<[usize; 3]> = orbits.iter().filter(|o| o.deltas == [2, 2, 2]).map(|o| o.shared_blocks).collect();
    shared.sort();
    assert_eq!(shared, vec![[0, 0, 0], [0, 0, 0], [1, 0, 0], [1, 1, 0], [3, 0, 0]]);
    for o in &orbits {
        assert!(o.representative.separates_points());
        assert!(o.representative.lift_conditions_hold());
    }
}

#[test]
fn cubic_has_one_family() {
    let f = d3_family();
    assert_eq!(f.len(), 1);
    assert_eq!(f[0].deltas, [1, 1, 1]);
}

#[test]
fn named_families_match_enumeration() {
    assert_eq!(third_coordinates("i").len(), 2);
    assert_eq!(third_coordinates("ii").len(), 4);
    assert_eq!(third_coordinates("iii").len(), 4);
    let fams = named_families_d6();
    let labels: Vec<&str> = fams.iter().map(|f| f.label.as_str()).collect();
    assert_eq!(labels, ["iA", "iB", "ii1", "ii2", "ii3", "ii4", "iii1", "iii2", "iii3", "iii4"]);
    let orbits = enumerate_fiber_assignments(6, &sextic_shapes());
    for f in &fams {
        assert!(f.separates_points() && f.lift_conditions_hold(), "{}", f.label);
        let o = orbits.iter().find(|o| o.canonical == f.canonical()).expect("family lies in an orbit");
        let want = match f.label.as_str() {
            "iA" | "iB" => [1, 1, 0],
            l if l.starts_with("iii") => [0, 0, 0],
            _ => [1, 0, 0],
        };
        assert_eq!(o.shared_blocks, want, "{}", f.label);
    }
    // the four (ii) families are pairwise distinct
    let ii: BTreeSet<_> = fams.iter().filter(|f| f.label.starts_with("ii") && !f.label.starts_with("iii")).map(|f| f.coords[2].clone()).collect();
    assert_eq!(ii.len(), 4);
}

fn solution_set(label: &str) -> BTreeSet<Vec<AlgebraicNumber>> {
    let fam = named_families_d6().into_iter().find(|f| f.label == label).unwrap();
    let rec = solve_moduli(&fam).unwrap();
    rec.solutions()
        .iter()
        .map(|s| {
            assert_eq!(s.tower, "Q(i)");
            s.points[3..].iter().map(|p| match p {
                ProjectivePoint::Finite(a) => a.clone(),
                ProjectivePoint::Infinity => panic!("unknown at infinity"),
            }).collect()
        })
        .collect()
}

fn expect(v: &[[&str; 3]]) -> BTreeSet<Vec<AlgebraicNumber>> {
    v.iter().map(|t| t.iter().map(|s| gauss(s)).collect()).collect()
}

#[test]
fn quadratic_family_solutions() {
    assert_eq!(solution_set("iA"), expect(&[["-1/3", "-1", "1/3"]]));
    assert_eq!(solution_set("iB"), expect(&[["-3", "3", "-1"]]));
    let ii = expect(&[["i", "1 + i", "1/2 + 1/2*i"], ["-i", "1 - i", "1/2 - 1/2*i"]]);
    for l in ["ii1", "ii2", "ii3", "ii4"] {
        assert_eq!(solution_set(l), ii, "{l}");
    }
    assert_eq!(solution_set("iii1"), expect(&[["i", "-i", "-1"], ["-i", "i", "-1"]]));
    assert_eq!(solution_set("iii2"), expect(&[["2", "1 + i", "1 - i"], ["2", "1 - i", "1 + i"]]));
    assert_eq!(solution_set("iii3"), expect(&[["i", "1/2 + 1/2*i", "1 + i"], ["-i", "1/2 - 1/2*i", "1 - i"]]));
}

#[test]
fn solutions_have_the_prescribed_fibers() {
    for fam in named_families_d6() {
        let rec = solve_moduli(&fam).unwrap();
        for s in rec.solutions() {
            for (c, x) in fam.coords.iter().zip(&s.functions) {
                assert_eq!(x.degree(), 2);
                for (b, target) in [Target::Zero, Target::Infinity, Target::One].into_iter().enumerate() {
                    for &(p, e) in &c.fibers[b] {
                        assert_eq!(x.fiber_multiplicity(&s.points[p], target), e as usize, "{}", fam.label);
                    }
                }
            }
        }
    }
}

#[test]
fn iii4_is_rejected_by_degeneration() {
    let fam = named_families_d6().into_iter().find(|f| f.label == "iii4").unwrap();
    let rec = solve_moduli(&fam).unwrap();
    let ModuliOutcome::Empty(e) = &rec.outcome else { panic!("{:?}", rec.outcome) };
    assert!(e.eliminant.is_some());
    let bs: BTreeSet<String> = e.witnesses.iter().map(|w| w.point.iter().find(|(n, _)| n == "b").unwrap().1.clone()).collect();
    assert_eq!(bs, ["0", "1"].into_iter().map(String::from).collect());
    assert!(e.witnesses.iter().all(|w| w.violation.contains('=')));
}

#[test]
fn iii4_family_fails_injectivity() {
    // a = b^2/D, c = b/D with D = b^2 - b + 1 satisfies every fiber condition
    let fam = named_families_d6().into_iter().find(|f| f.label == "iii4").unwrap();
    let t = FieldTower::rationals();
    for b in [2i64, 3, -1] {
        let d = b * b - b + 1;
        let pts = vec![
            ProjectivePoint::int(&t, 0),
            ProjectivePoint::Infinity,
            ProjectivePoint::int(&t, 1),
            ProjectivePoint::Finite(AlgebraicNumber::from_q(&t, q(b * b, d))),
            ProjectivePoint::int(&t, b),
            ProjectivePoint::Finite(AlgebraicNumber::from_q(&t, q(b, d))),
        ];
        let maps: Vec<RationalFunction> = fam.coords.iter().map(|c| realize(&t, &pts, c).expect("realizable")).collect();
        let maps: [RationalFunction; 3] = maps.try_into().unwrap();
        assert!(!verify_injectivity(&maps, &pts).ok(), "b = {b}");
    }
}

#[test]
fn too_many_unknowns_is_an_error() {
    let t = FieldTower::rationals();
    let mut symbols = vec![Symbol::Known(ProjectivePoint::int(&t, 0)), Symbol::Known(ProjectivePoint::Infinity)];
    symbols.extend((0..5).map(|k| Symbol::Unknown(format!("u{k}"))));
    let c = CoordPattern::new([vec![(0, 1)], vec![(1, 1)], vec![(2, 1)]]);
    let fam = FiberAssignment { label: "wide".into(), symbols, coords: [c.clone(), c.clone(), c] };
    assert!(matches!(solve_moduli(&fam), Err(SearchError::TooManyUnknowns(5))));
}

#[test]
fn records_are_serializable() {
    for fam in named_families_d6() {
        let rec = solve_moduli(&fam).unwrap();
        let v = serde_json::to_value(&rec).unwrap();
        assert_eq!(v["label"], fam.label.as_str());
        assert!(!rec.equations.is_empty());
    }
}

#[test]
fn octahedral_symmetries() {
    let t = q_i();
    let i = t.top_generator();
    let pts = vec![
        ProjectivePoint::int(&t, 0),
        ProjectivePoint::Infinity,
        ProjectivePoint::int(&t, 1),
        ProjectivePoint::int(&t, -1),
        ProjectivePoint::Finite(i.clone()),
        ProjectivePoint::Finite(-&i),
    ];
    let syms = set_symmetries(&t, &pts);
    assert_eq!(syms.len(), 24);
    for (m, perm) in &syms {
        for (k, p) in pts.iter().enumerate() {
            assert_eq!(m.apply(p), pts[perm[k]]);
        }
    }
}

proptest! {
    #[test]
    fn mobius_inverse_and_through(a in -20i64..20, b in -20i64..20, c in -20i64..20, x in -50i64..50) {
        let t = FieldTower::rationals();
        let pts = [ProjectivePoint::int(&t, a), ProjectivePoint::int(&t, b), ProjectivePoint::int(&t, c)];
        prop_assume!(a != b && b != c && a != c);
        let m = Mobius::to_standard(&t, [&pts[0], &pts[1], &pts[2]]).unwrap();
        prop_assert_eq!(m.apply(&pts[0]), ProjectivePoint::int(&t, 0));
        prop_assert_eq!(m.apply(&pts[1]), ProjectivePoint::Infinity);
        prop_assert_eq!(m.apply(&pts[2]), ProjectivePoint::int(&t, 1));
        let p = ProjectivePoint::int(&t, x);
        prop_assert_eq!(m.inverse().apply(&m.apply(&p)), p.clone());
        prop_assert_eq!(m.compose(&m.inverse()).apply(&p), p);
    }
}

#[test]
fn sextic_search_finds_all_classes() {
    let r = d6();
    assert_eq!(r.status, SearchStatus::Found);
    let s = r.sextic.as_ref().unwrap();
    assert_eq!(s.families.len(), 10);
    let mut labels = s.class_labels();
    labels.sort();
    let mut want: Vec<String> = SHIPPED.iter().map(|s| s.to_string()).collect();
    want.sort();
    assert_eq!(labels, want);
    assert_eq!(s.quadratic_classes.len(), 3);
    assert_eq!(s.quartic.symmetries, 24);
    for o in &s.orbits {
        assert!(!o.status.starts_with("inconclusive"), "{o:?}");
    }
}

#[test]
fn certificates_and_search_agree() {
    let s = d6().sextic.as_ref().unwrap();
    let ids: BTreeSet<&str> = s.cross_checks.iter().map(|c| c.certificate.as_str()).collect();
    assert_eq!(ids, SHIPPED.into_iter().collect());
    for id in PRIMARY {
        assert!(ids.contains(id));
    }
    for c in &s.cross_checks {
        assert!(c.verified && c.equivalent, "{c:?}");
    }
}

#[test]
fn symmetry_log_links_equivalent_solutions() {
    let s = d6().sextic.as_ref().unwrap();
    let first = &s.quadratic_classes[0];
    assert_eq!(first.certificate.as_deref(), Some("222i"));
    assert_eq!(first.members.len(), 2);
    assert_eq!(first.links.len(), 1);
    for c in &s.quadratic_classes {
        assert_eq!(c.links.len() + 1, c.members.len());
    }
}

#[test]
fn septic_is_empty() {
    let r = dc7_scan().unwrap();
    assert!(r.conclusive());
    assert!(r.is_empty());
    for s in &r.scan {
        assert_eq!(s.with_shape_iii, 0);
        assert_eq!(s.uncovered, 0);
        if s.k != 2 {
            assert_eq!(s.survivors, 0, "k = {}", s.k);
        }
    }
    let k2 = r.scan.iter().find(|s| s.k == 2).unwrap();
    assert!(k2.with_shape_i > 0 && k2.with_shape_ii_only > 0);
    assert_eq!(r.cases.len(), 2);
    let rep = search(7).unwrap();
    assert_eq!(rep.status, SearchStatus::Confirmed);
    assert_eq!(rep.summary, "no curves: confirmed");
}

#[test]
fn septic_normal_forms() {
    let (_, xa) = case_a().unwrap();
    let t = xa.tower().clone();
    let x5 = RationalFunction::new(Polynomial::x(&t).pow(5), Polynomial::one(&t)).unwrap();
    assert_eq!(xa, x5);

    let (tb, roots) = case_b_field().unwrap();
    let cubic = Polynomial::from_ints(&tb, &[16, 40, 75, 125]);
    for r in &roots {
        assert!(cubic.eval(r).is_zero());
    }
    let (_, xb) = case_b().unwrap();
    let x = Polynomial::x(&tb);
    let num = (&x.pow(4) * &Polynomial::linear_root(&AlgebraicNumber::one(&tb))).scale(&AlgebraicNumber::from_q(&tb, q(-3125, 256)));
    assert_eq!(xb, RationalFunction::new(num, Polynomial::one(&tb)).unwrap());
    // double point of x - 1 at 4/5
    let four_fifths = ProjectivePoint::Finite(AlgebraicNumber::from_q(&tb, q(4, 5)));
    assert_eq!(xb.fiber_multiplicity(&four_fifths, Target::One), 2);
}

#[test]
fn search_small_and_unsupported() {
    for d in [4, 5] {
        let r = search(d).unwrap();
        assert_eq!(r.status, SearchStatus::Confirmed);
        assert_eq!(r.summary, "no curves: confirmed");
    }
    assert!(matches!(search(3), Err(SearchError::UnsupportedD(3))));
    assert!(matches!(search(8), Err(SearchError::UnsupportedD(8))));
}

#[test]
fn d6_symbols_are_normalized() {
    let s = d6_symbols();
    assert_eq!(s.len(), 6);
    assert_eq!(s.iter().filter(|x| matches!(x, Symbol::Unknown(_))).count(), 3);
}
