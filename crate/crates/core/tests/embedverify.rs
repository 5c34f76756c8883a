mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use rigidcy_core::embedverify::*;
use rigidcy_core::numkernel::{q, q_i, AlgebraicNumber, FieldTower, Polynomial};
use rigidcy_core::ratmap::Target;
use rigidcy_core::{ProjectivePoint, RationalFunction};

#[test]
fn shipped_files_round_trip_bit_exact() {
    for id in SHIPPED {
        let text = shipped_text(id).unwrap();
        let data = CertificateData::parse(text).unwrap();
        assert_eq!(data.id, id);
        assert_eq!(data.emit(), text, "{id}");
        assert_eq!(CertificateData::parse(&data.emit()).unwrap(), data);
    }
}

#[test]
fn shipped_maps_match_hand_typed_maps() {
    for id in ["6444", "6442", "6422", "222i", "222ii", "222iii"] {
        let (curve, xs, ys) = reference_maps(id);
        let data = load_shipped(id).unwrap();
        assert_eq!(data.curve.polynomial(), curve.polynomial(), "{id}");
        assert_eq!(data.x_maps().unwrap(), xs, "{id}");
        assert_eq!(data.y_factors().unwrap(), ys, "{id}");
    }
    for id in ["6422b", "6422c"] {
        let (_, xs) = extra_maps(id);
        assert_eq!(load_shipped(id).unwrap().x_maps().unwrap(), xs, "{id}");
    }
}

#[test]
fn all_six_primary_certificates_pass() {
    for id in PRIMARY {
        let cert = EmbeddingCertificate::certify(&load_shipped(id).unwrap()).unwrap_or_else(|r| panic!("{id}: {r:?}"));
        assert!(cert.report().passed);
        assert_eq!(cert.report().checks.len(), 5);
        assert_eq!(cert.profile().d, 6);
        assert!(cert.report().smooth, "{id}");
    }
}

#[test]
fn coordinate_profiles_of_degree_six_certificates() {
    let allowed = [(0, 2, 2), (6, 0, 4)];
    for id in ["6444", "6442", "6422", "6422b", "6422c"] {
        let rep = verify(&load_shipped(id).unwrap());
        assert_eq!(rep.profile.len(), 3);
        for c in &rep.profile {
            assert!(allowed.contains(&(c.gamma0, c.gamma1, c.delta)), "{id}: {c:?}");
        }
        let fours = rep.profile.iter().filter(|c| c.delta == 4).count();
        assert_eq!(fours, id[1..].chars().filter(|&ch| ch == '4').count(), "{id}");
    }
    for id in ["222i", "222ii", "222iii"] {
        let rep = verify(&load_shipped(id).unwrap());
        assert!(rep.profile.iter().all(|c| (c.gamma0, c.gamma1, c.delta) == (0, 2, 2)), "{id}");
    }
}

fn fiber_points(id: &str, coord: usize, target: Target) -> BTreeSet<ProjectivePoint> {
    let data = load_shipped(id).unwrap();
    let tables = branch_tables(&data.x_maps().unwrap(), &data.curve.branch_set());
    let rec = tables.into_iter().find(|r| r.coord == coord && r.target == target).unwrap();
    rec.points.into_iter().map(|(p, _)| p).collect()
}

fn pts(v: &[Option<(i64, i64)>]) -> BTreeSet<ProjectivePoint> {
    v.iter()
        .map(|p| match p {
            Some((a, b)) => ProjectivePoint::Finite(gi(*a, *b)),
            None => ProjectivePoint::Infinity,
        })
        .collect()
}

#[test]
fn fiber_tables_of_the_degree_six_certificates() {
    use Target::*;
    let (z, o, m, i, mi, inf) = (Some((0, 0)), Some((1, 0)), Some((-1, 0)), Some((0, 1)), Some((0, -1)), None);
    let expect: Vec<(&str, usize, Target, Vec<Option<(i64, i64)>>)> = vec![
        ("6444", 0, Zero, vec![z]),
        ("6444", 0, Infinity, vec![inf]),
        ("6444", 0, One, vec![o, m, i, mi]),
        ("6444", 1, Zero, vec![o]),
        ("6444", 1, Infinity, vec![m]),
        ("6444", 1, One, vec![z, inf, i, mi]),
        ("6444", 2, Zero, vec![i]),
        ("6444", 2, Infinity, vec![mi]),
        ("6444", 2, One, vec![z, inf, o, m]),
        ("6442", 2, Zero, vec![z, mi]),
        ("6442", 2, Infinity, vec![inf, i]),
        ("6442", 2, One, vec![o, m]),
        ("6422", 1, Zero, vec![z, m]),
        ("6422", 1, Infinity, vec![inf, o]),
        ("6422", 1, One, vec![i, mi]),
        ("6422", 2, Zero, vec![z, mi]),
        ("6422", 2, Infinity, vec![inf, i]),
        ("6422", 2, One, vec![o, m]),
    ];
    for (id, j, t, v) in expect {
        assert_eq!(fiber_points(id, j, t), pts(&v), "{id} coordinate {} over {}", j + 1, t.label());
    }
}

#[test]
fn fiber_tables_of_the_degree_two_certificates() {
    for id in ["222i", "222ii", "222iii"] {
        let data = load_shipped(id).unwrap();
        let branch: BTreeSet<ProjectivePoint> = data.curve.branch_set().into_iter().collect();
        assert_eq!(branch.len(), 6);
        for j in 0..3 {
            let mut seen = BTreeSet::new();
            for rec in data.fibers.iter().filter(|r| r.coord == j) {
                assert_eq!(rec.points.iter().map(|(_, m)| m).sum::<usize>(), 2, "{id}");
                for (p, _) in &rec.points {
                    assert!(branch.contains(p));
                    assert!(seen.insert(p.clone()), "{id}: {p} in two fibers");
                }
            }
            assert_eq!(seen, branch, "{id} coordinate {}", j + 1);
        }
    }
}

#[test]
fn on_curve_residue_for_a_wrong_denominator() {
    let mut data = load_shipped("6444").unwrap();
    // x2 = (X-1)^4 / (X+1)^3
    data.maps[1].r_den = Polynomial::from_ints(&q_i(), &[1, 3, 3, 1]);
    match verify_on_curve(&data) {
        Err(VerifyError::OnCurve { coord, residue }) => {
            assert_eq!(coord, 2);
            assert_ne!(residue, "0");
        }
        other => panic!("{other:?}"),
    }
    assert!(EmbeddingCertificate::certify(&data).is_err());
}

#[test]
fn injectivity_examples() {
    for id in ["6422", "222iii"] {
        let data = load_shipped(id).unwrap();
        let rep = verify_injectivity(&data.x_maps().unwrap(), &data.curve.branch_set());
        assert!(rep.ok(), "{id}: {rep:?}");
        assert!(rep.finite_separated && rep.infinity_separated && rep.branch_images_distinct);
    }
    let t = q_i();
    let x2 = RationalFunction::from_poly(Polynomial::x(&t).pow(2));
    let zero = RationalFunction::constant(&AlgebraicNumber::zero(&t));
    let branch = vec![ProjectivePoint::int(&t, 0), ProjectivePoint::Infinity];
    let rep = verify_injectivity(&[x2.clone(), x2.clone(), zero.clone()], &branch);
    assert!(!rep.finite_separated);
    assert!(!rep.ok());
    assert_eq!(rep.max_fiber, Some(2));
    // the identity separates everything
    let id = RationalFunction::identity(&t);
    let rep = verify_injectivity(&[id, x2, zero], &branch);
    assert!(rep.ok(), "{rep:?}");
}

#[test]
fn collisions_with_infinity_are_detected() {
    // both coordinates send 0 and inf to 0
    let t = q_i();
    let x = Polynomial::x(&t);
    let one = Polynomial::one(&t);
    let a = RationalFunction::new(x.clone(), &x.pow(2) + &one).unwrap();
    let b = RationalFunction::new(x.pow(2), &x.pow(3) + &one).unwrap();
    let c = RationalFunction::constant(&AlgebraicNumber::one(&t));
    let rep = verify_injectivity(&[a, b, c.clone()], &[]);
    assert!(!rep.infinity_separated);
    assert!(!rep.ok());
    // X^2 and 1/X^2 agree at X and -X
    let a = RationalFunction::from_poly(x.pow(2));
    let b = RationalFunction::new(one.clone(), x.pow(2)).unwrap();
    assert!(!verify_injectivity(&[a, b, c], &[]).finite_separated);
}

#[test]
fn mutation_suite_rejects_every_corruption() {
    let mut total = 0;
    for id in PRIMARY {
        let s = mutation_suite(&load_shipped(id).unwrap());
        assert!(s.escaped.is_empty(), "{id}: {:?}", s.escaped);
        assert_eq!(s.rejected, s.total);
        total += s.total;
    }
    assert!(total >= 30, "only {total} mutations");
}

#[test]
fn malformed_files_are_rejected() {
    let good = shipped_text("6422").unwrap();
    for bad in [
        good.replace("tower Q(i)", "tower Q(j)"),
        good.replace("map 2", "map 3"),
        good.replace("  y.den", "  y.dem"),
        good.replace("fiber 1 0 =", "fiber 1 2 ="),
        good.replace("@1", "@x"),
        good.lines().take(20).collect::<Vec<_>>().join("\n"),
        format!("{good}garbage\n"),
    ] {
        assert!(matches!(CertificateData::parse(&bad), Err(VerifyError::Format { .. })), "{bad}");
    }
}

#[test]
fn stored_table_mismatch_fails() {
    let mut data = load_shipped("6444").unwrap();
    data.fibers[0].points[0].0 = ProjectivePoint::int(&q_i(), 1);
    let rep = verify(&data);
    let tab = rep.checks.iter().find(|c| c.name == "branch-tables").unwrap();
    assert!(!tab.passed);
    assert!(!rep.passed);
    let mut data = load_shipped("6444").unwrap();
    data.fibers.pop();
    assert!(EmbeddingCertificate::certify(&data).is_err());
}

#[test]
fn differential_table() {
    let expect: [(u32, &[&str]); 4] = [
        (1, &["dx/y^4", "dx/y^5", "dx/y^6"]),
        (2, &["dx/y^3", "x dx/y^5", "x dx/y^6"]),
        (3, &["dx/y^2", "x dx/y^4", "x^2 dx/y^6"]),
        (5, &["x^2 dx/y^4", "x^3 dx/y^5", "x^4 dx/y^6"]),
    ];
    let mut special = Vec::new();
    for (k, forms) in expect {
        let b = superelliptic_differentials(7, k, 1).unwrap();
        assert_eq!(b.genus, 3);
        assert_eq!(b.render(), forms, "k = {k}");
        if b.special {
            special.push(k);
        }
    }
    assert_eq!(special, vec![2]);
    let k2 = superelliptic_differentials(7, 2, 1).unwrap();
    assert_eq!(k2.eigen_exponents, vec![4, 2, 1]);
    assert_eq!(k2.product_exponent, 0);
}

#[test]
fn k4_is_equivalent_to_k2() {
    let e = k4_equivalence().unwrap();
    assert!(e.curve_identity);
    assert!(e.matches_direct);
    assert_eq!(e.transported, vec![(1, 0, 3), (2, 0, 5), (3, 0, 6)]);
    assert!(superelliptic_differentials(7, 4, 1).unwrap().special);
}

/// Eigenspace dimension `-1 + Σ_p frac(l a_p / N)` over the three branch points.
fn eigenspace_dim(n: u32, a: u32, b: u32, l: u32) -> i64 {
    let ainf = (n * 10 - (a + b)) % n;
    let s: u32 = [a, b, ainf].iter().map(|&e| (l * e) % n).sum();
    s as i64 / n as i64 - 1
}

#[test]
fn differentials_match_eigenspace_dimensions() {
    for n in [5u32, 7, 11] {
        for a in 1..n {
            for b in 1..n {
                let Ok(basis) = superelliptic_differentials(n, a, b) else {
                    assert!(num_integer::gcd(a, n) != 1 || num_integer::gcd(b, n) != 1 || (a + b) % n == 0);
                    continue;
                };
                for l in 1..n {
                    let found = basis.forms.iter().filter(|f| f.2 == l).count() as i64;
                    assert_eq!(found, eigenspace_dim(n, a, b, l), "N = {n}, a = {a}, b = {b}, l = {l}");
                }
            }
        }
    }
}

#[test]
fn differentials_reject_non_coprime_data() {
    assert!(superelliptic_differentials(7, 7, 1).is_err());
    assert!(superelliptic_differentials(7, 3, 4).is_err());
    assert!(superelliptic_differentials(6, 2, 1).is_err());
}

fn arb_gaussian() -> impl Strategy<Value = AlgebraicNumber> {
    (-50i64..50, 1i64..9, -50i64..50, 1i64..9).prop_map(|(a, b, c, d)| {
        let t = q_i();
        &AlgebraicNumber::from_q(&t, q(a, b)) + &(&t.top_generator() * &AlgebraicNumber::from_q(&t, q(c, d)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn number_text_round_trip(a in arb_gaussian()) {
        let s = a.to_string();
        prop_assert_eq!(AlgebraicNumber::parse(&q_i(), &s).unwrap(), a);
    }

    #[test]
    fn certificate_text_round_trip(k in 0usize..8, j in 0usize..3, c in arb_gaussian()) {
        let mut data = load_shipped(SHIPPED[k]).unwrap();
        if data.tower.same(&q_i()) {
            let mut coeffs = data.maps[j].q_num.coeffs().to_vec();
            coeffs[0] = &coeffs[0] + &c;
            data.maps[j].q_num = Polynomial::new(&data.tower, coeffs);
        }
        let text = data.emit();
        let back = CertificateData::parse(&text).unwrap();
        prop_assert_eq!(back.emit(), text);
        prop_assert_eq!(back, data);
    }

    #[test]
    fn branch_images_are_distinct_under_mobius_change(a in 2i64..20) {
        // composing every coordinate with the same automorphism of the line keeps injectivity
        let data = load_shipped("222iii").unwrap();
        let t: FieldTower = data.tower.clone();
        let n = |v: i64| AlgebraicNumber::from_int(&t, v);
        let m = RationalFunction::mobius(&n(a), &n(1), &n(1), &n(0)).unwrap();
        let xs = data.x_maps().unwrap().map(|r| r.compose(&m));
        let inv = RationalFunction::mobius(&n(0), &n(1), &n(1), &n(-a)).unwrap();
        let branch: Vec<ProjectivePoint> = data.curve.branch_set().iter().map(|p| inv.eval(p)).collect();
        prop_assert!(verify_injectivity(&xs, &branch).ok());
    }
}
