use proptest::prelude::*;
use rigidcy_core::numkernel::*;
use rigidcy_core::orbifold::lattice::{self, IMat};
use rigidcy_core::orbifold::*;

#[test]
fn shipped_specs_validate() {
    for c in ["z3", "z7", "z7-eta"] {
        let s = OrbifoldSpec::shipped(c).unwrap();
        assert!(s.preserves_volume());
    }
    assert!(OrbifoldSpec::parse("label = 1").is_err());
}

#[test]
fn corrupted_spec_rejected() {
    let mut s = OrbifoldSpec::shipped("z3").unwrap();
    s.matrix[0][1] = 1;
    assert!(s.validate().is_err());
    let mut s = OrbifoldSpec::shipped("z7").unwrap();
    s.eigen_exponents = [1, 2, 3];
    assert!(s.validate().is_ok(), "charpoly is the same for any CM type");
    s.order = 14;
    assert!(s.validate().is_err());
}

#[test]
fn fixed_point_examples() {
    let z3 = OrbifoldSpec::shipped("z3").unwrap();
    let f = fixed_points(&z3, 1).unwrap();
    assert_eq!((f.count, f.structure.as_str()), (27, "(Z/3)^3"));
    let z7 = OrbifoldSpec::shipped("z7").unwrap();
    let f = fixed_points(&z7, 1).unwrap();
    assert_eq!((f.count, f.structure.as_str()), (7, "Z/7"));
    let eta = OrbifoldSpec::shipped("z7-eta").unwrap();
    assert_eq!(lattice::order(&eta.matrix, 100), Some(7));
    assert_eq!(lattice::det(&eta.matrix), 1);
    assert_eq!(fixed_points(&eta, 1).unwrap().count, 7);
    // identity has a positive-dimensional fixed set
    assert_eq!(fixed_points(&z7, 7), Err(OrbifoldError::PositiveDimensional(7)));
}

#[test]
fn cohomology_examples() {
    let z3 = OrbifoldSpec::shipped("z3").unwrap();
    let b = invariant_cohomology(&z3);
    assert_eq!((b[1], b[2], b[3]), (0, 9, 2));
    let z7 = OrbifoldSpec::shipped("z7").unwrap();
    let b = invariant_cohomology(&z7);
    assert_eq!((b[1], b[2], b[3]), (0, 3, 2));
}

#[test]
fn alternating_sum_is_lefschetz_average() {
    // χ(T) = 0, but the invariant part carries the average Lefschetz number
    for (c, expect) in [("z3", 18), ("z7", 6), ("z7-eta", 6)] {
        let s = OrbifoldSpec::shipped(c).unwrap();
        let b = invariant_cohomology(&s);
        let alt: i64 = b.iter().enumerate().map(|(j, v)| if j % 2 == 0 { *v as i64 } else { -(*v as i64) }).sum();
        assert_eq!(alt, lefschetz_average(&s));
        assert_eq!(alt, expect);
    }
}

#[test]
fn fixed_locus_examples() {
    let r = fixed_locus_check(&OrbifoldSpec::shipped("z3").unwrap()).unwrap();
    assert_eq!((r.t_g_mod_g, r.t_g / 3, r.lhs, r.h2, r.euler_open), (27, 9, 18, 9, -9));
    let r = fixed_locus_check(&OrbifoldSpec::shipped("z7").unwrap()).unwrap();
    assert_eq!((r.t_g_mod_g, r.t_g / 7, r.lhs, r.h2, r.euler_open), (7, 1, 6, 3, -1));
}

fn ages_oracle(r: u32, a: [u32; 3]) -> u32 {
    // junior elements: sum of fractional parts k a_i / r equal to one
    let mut n = 0;
    for k in 1..r {
        let s: f64 = a.iter().map(|&x| ((k * x) % r) as f64 / r as f64).sum();
        if (s - 1.0).abs() < 1e-9 {
            n += 1;
        }
    }
    n
}

#[test]
fn crepant_divisor_examples() {
    assert_eq!(crepant_divisor_count(3, [1, 1, 1]), 1);
    assert_eq!(crepant_divisor_count(7, [1, 2, 4]), 3);
    // k = 1, 2, 3 give residue sums 7, 7, 7
    assert_eq!(crepant_divisor_count(7, [1, 1, 5]), 3);
    assert_eq!(ages_oracle(7, [1, 1, 5]), 3);
}

#[test]
fn resolution_examples() {
    let r = resolution_invariants(&OrbifoldSpec::shipped("z3").unwrap()).unwrap();
    assert_eq!((r.h11, r.h22, r.chi, r.chi_open, r.sing), (36, 36, 72, -9, 27));
    assert_eq!(r.chi_open + 27 * 3, 72);
    assert_eq!((r.h30, r.h21), (1, 0));
    let r = resolution_invariants(&OrbifoldSpec::shipped("z7").unwrap()).unwrap();
    assert_eq!((r.h11, r.h22, r.chi, r.chi_open, r.sing), (24, 24, 48, -1, 7));
    assert_eq!(r.chi_open + 7 * 7, 48);
    assert_eq!((r.h30, r.h21), (1, 0));
}

#[test]
fn appendix_classification() {
    let c = classify_appendix(|_| 1).unwrap();
    assert_eq!(c.orders, vec![3, 4, 6, 7, 9, 14, 18]);
    let special: Vec<(u64, &str)> = c.rows.iter().filter(|r| r.special).map(|r| (r.d, r.torus.as_str())).collect();
    assert_eq!(special, vec![(3, "E(w)^3"), (7, "A(Q(z7), {psi1, psi2, psi4})")]);
    let r123 = c.rows.iter().find(|r| r.d == 7 && r.torus.contains("psi3")).unwrap();
    assert_eq!(r123.witness, "z7^6");
    assert!(c.rows.iter().filter(|r| !r.special).all(|r| r.witness != "1"));
    assert!(c.rows.iter().filter(|r| r.determined).all(|r| r.torus_count == Some(1)));
    assert_eq!(abelian_variety_count(7, 1, 1), Ok(1));
    assert_eq!(abelian_variety_count(3, 3, 2), Ok(4));
    assert_eq!(abelian_variety_count(5, 1, 1), Err(OrbifoldError::UnsupportedOrder(5)));
}

#[test]
fn appendix_products_exact() {
    // independent check of each witness by multiplying the eigenvalues in Q(ζ_d)
    let c = classify_appendix(|_| 1).unwrap();
    for r in &c.rows {
        let t = cyclotomic_field(r.d);
        let z = t.top_generator();
        let prod = r.exponents.iter().fold(AlgebraicNumber::one(&t), |acc, &e| &acc * &z.pow(e));
        assert_eq!(prod, z.pow(r.product_exponent));
        assert_eq!(prod.is_one(), r.special, "row d={} {}", r.d, r.torus);
        for &e in &r.exponents {
            assert_eq!(num_integer::gcd(e, r.d), 1, "eigenvalue must be primitive");
        }
    }
}

fn all_elements(s: &OrbifoldSpec) -> Vec<IMat> {
    (1..s.order).map(|k| s.element(k)).collect()
}

proptest! {
    #[test]
    fn element_invariants(case in prop::sample::select(vec!["z3", "z7", "z7-eta"])) {
        let s = OrbifoldSpec::shipped(case).unwrap();
        for (i, g) in all_elements(&s).iter().enumerate() {
            prop_assert_eq!(lattice::det(g).abs(), 1);
            let o = lattice::order(g, 100).unwrap();
            prop_assert_eq!(s.order % o, 0);
            let m = lattice::sub_identity(g);
            let d = lattice::det(&m).unsigned_abs();
            let snf: u128 = lattice::smith_diagonal(&m).iter().map(|&x| x as u128).product();
            prop_assert_eq!(d, snf, "element {}", i + 1);
        }
        prop_assert_eq!(s.preserves_volume(), s.eigenvalues().iter().fold(AlgebraicNumber::one(&cyclotomic_field(s.order as u64)), |a, b| &a * b).is_one());
    }

    #[test]
    fn snf_matches_det(m in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 4)) {
        let d = lattice::det(&m).unsigned_abs();
        let diag = lattice::smith_diagonal(&m);
        let p: u128 = diag.iter().map(|&x| x as u128).product();
        prop_assert_eq!(d, p);
        for w in diag.windows(2) {
            if w[0] != 0 {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }
    }
}
