use rigidcy_core::numkernel::groebner::{groebner, saturate, solve, Solved};
use rigidcy_core::numkernel::mpoly::MPoly;
use rigidcy_core::numkernel::*;

fn pz(t: &FieldTower, c: &[i64]) -> Polynomial {
    Polynomial::from_ints(t, c)
}

#[test]
fn cyclotomic_examples() {
    let q = FieldTower::rationals();
    assert_eq!(cyclotomic_polynomial(3), pz(&q, &[1, 1, 1]));
    assert_eq!(cyclotomic_polynomial(7), pz(&q, &[1, 1, 1, 1, 1, 1, 1]));
    assert_eq!(cyclotomic_polynomial(9), pz(&q, &[1, 0, 0, 1, 0, 0, 1]));
    for n in 1..40u64 {
        assert_eq!(cyclotomic_polynomial(n).deg() as u64, euler_phi(n));
    }
}

#[test]
fn cyclotomic_vanishes_at_generator() {
    for (n, t) in [(3u64, q_omega()), (7, q_mu()), (9, q_zeta9()), (4, q_i()), (5, q_beta5())] {
        let p = cyclotomic_polynomial(n).lift_to(&t).unwrap();
        assert!(p.eval(&t.top_generator()).is_zero(), "n = {n}");
    }
}

#[test]
fn totient_examples() {
    assert_eq!(euler_phi(7), 6);
    assert_eq!(euler_phi(9), 6);
    assert_eq!(euler_phi(18), 6);
    assert_eq!(euler_phi(1), 1);
}

#[test]
fn field_examples() {
    let t = q_omega();
    let w = t.top_generator();
    assert!((&w * &w.pow(2)).is_one());

    let t = q_i();
    let i = t.top_generator();
    let one = AlgebraicNumber::one(&t);
    assert_eq!(&(&one + &i) / &(&one - &i), i);

    let t = q_mu();
    let mu = t.top_generator();
    let eta = &(&mu + &mu.pow(2)) + &mu.pow(4);
    let v = &(&(&eta * &eta) + &eta) + &AlgebraicNumber::from_int(&t, 2);
    assert!(v.is_zero());
}

#[test]
fn field_errors() {
    let z = AlgebraicNumber::zero(&q_i());
    assert_eq!(z.inv(), Err(NumError::DivisionByZero));
    let a = AlgebraicNumber::one(&q_i());
    let b = AlgebraicNumber::one(&q_omega());
    assert!(matches!(a.try_add(&b), Err(NumError::TowerMismatch(_, _))));
}

#[test]
fn gcd_examples() {
    let q = FieldTower::rationals();
    assert_eq!(Polynomial::gcd(&pz(&q, &[-1, 0, 1]), &pz(&q, &[-1, 1])), pz(&q, &[-1, 1]));
    let t = q_i();
    assert_eq!(Polynomial::gcd(&pz(&t, &[-1, 0, 0, 0, 1]), &pz(&t, &[1, 0, 1])), pz(&t, &[1, 0, 1]));
    let a = pz(&q, &[-2, 1]).pow(3) * pz(&q, &[-3, 1]);
    let b = pz(&q, &[-2, 1]) * pz(&q, &[-5, 1]);
    assert_eq!(Polynomial::gcd(&a, &b), pz(&q, &[-2, 1]));
    let z = Polynomial::zero(&q);
    assert!(Polynomial::gcd(&z, &z).is_zero());
}

#[test]
fn resultant_examples() {
    let q = FieldTower::rationals();
    assert_eq!(resultant(&pz(&q, &[-2, 1]), &pz(&q, &[-5, 1])).unwrap(), AlgebraicNumber::from_int(&q, 3));
    let t = q_i();
    let i = t.top_generator();
    let xi = Polynomial::linear_root(&i);
    assert!(resultant(&pz(&t, &[1, 0, 1]), &xi).unwrap().is_zero());
    assert_eq!(resultant(&pz(&q, &[-2, 0, 1]), &pz(&q, &[-3, 0, 1])).unwrap(), AlgebraicNumber::from_int(&q, 1));
}

#[test]
fn sylvester_determinant_matches_euclid() {
    use rigidcy_core::numkernel::resultant::{determinant, sylvester_matrix, sylvester_resultant};
    let q = FieldTower::rationals();
    let p = pz(&q, &[3, -1, 4, 1, -5]);
    let r = pz(&q, &[2, 7, -1, 8]);
    let m = sylvester_matrix(&q, p.coeffs(), r.coeffs());
    assert_eq!(determinant(&q, m), sylvester_resultant(&p, &r).unwrap());
}

#[test]
fn squarefree_decomposition() {
    let q = FieldTower::rationals();
    let f = pz(&q, &[-1, 1]).pow(3) * pz(&q, &[1, 0, 1]) * pz(&q, &[2, 1]).pow(2);
    let d = f.squarefree_decomposition();
    assert_eq!(d, vec![(pz(&q, &[1, 0, 1]), 1), (pz(&q, &[2, 1]), 2), (pz(&q, &[-1, 1]), 3)]);
}

#[test]
fn factor_over_q() {
    let q = FieldTower::rationals();
    // x^8 - 1 = (x-1)(x+1)(x^2+1)(x^4+1)
    let f = pz(&q, &[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
    let fs = factor(&f);
    let degs: Vec<usize> = fs.iter().map(|(g, _)| g.deg()).collect();
    assert_eq!(degs, vec![1, 1, 2, 4]);
    // Swinnerton-Dyer style: x^4 - 10x^2 + 1 irreducible but splits mod every prime
    assert!(is_irreducible(&pz(&q, &[1, 0, -10, 0, 1])));
    // product of two quartics with large coefficients
    let a = pz(&q, &[7, -3, 0, 11, 2]);
    let b = pz(&q, &[-5, 0, 13, 1, 3]);
    let fs = factor(&(&a * &b));
    assert_eq!(fs.len(), 2);
    let prod = fs.iter().fold(Polynomial::one(&q), |acc, (g, _)| &acc * g);
    assert_eq!(prod, (&a * &b).monic());
}

#[test]
fn factor_over_extensions() {
    let t = q_i();
    let fs = factor(&pz(&t, &[1, 0, 1]));
    assert_eq!(fs.len(), 2);
    assert!(fs.iter().all(|(g, _)| g.deg() == 1));
    let t = q_omega();
    let fs = factor(&pz(&t, &[-2, 0, 0, 1]));
    assert_eq!(fs.len(), 1);
    let t = q_i_cbrt2();
    let fs = factor(&pz(&t, &[-2, 0, 0, 1]));
    assert_eq!(fs.iter().map(|(g, _)| g.deg()).collect::<Vec<_>>(), vec![1, 2]);
    let t = q_beta5();
    let fs = factor(&pz(&t, &[-1, 0, 0, 0, 0, 1]));
    assert_eq!(fs.len(), 5);
}

#[test]
fn extend_checked_rejects_reducible() {
    let q = FieldTower::rationals();
    assert!(matches!(extend_checked(&q, "r", &pz(&q, &[-4, 0, 1])), Err(NumError::Reducible(_))));
    assert!(extend_checked(&q, "s", &pz(&q, &[-2, 0, 1])).is_ok());
}

#[test]
fn groebner_small_system() {
    let q = FieldTower::rationals();
    let x = MPoly::var(&q, 2, 0);
    let y = MPoly::var(&q, 2, 1);
    let one = MPoly::one(&q, 2);
    // x^2 + y^2 - 1, x - y
    let f1 = x.mul(&x).add(&y.mul(&y)).sub(&one);
    let f2 = x.sub(&y);
    let gb = groebner(&[f1, f2]);
    assert_eq!(gb.len(), 2);
    match solve(&gb, "t") {
        Solved::Points(p) => assert_eq!(p.len(), 1),
        _ => panic!("expected points"),
    }
    // saturating x y - x by x leaves y - 1
    let g = x.mul(&y).sub(&x);
    let s = saturate(&[g], &x);
    assert_eq!(s, vec![y.sub(&one)]);
}

#[test]
fn separation_quotient_is_exact() {
    let t = q_i();
    let n = pz(&t, &[0, 1, 1]);
    let d = pz(&t, &[-1, 1]);
    let h = BiPoly::separation_quotient(&n, &d);
    // X(X+1)/(X-1): H = XZ - X - Z - 1
    let expect = BiPoly::new(&t, vec![pz(&t, &[-1, -1]), pz(&t, &[-1, 1])]);
    assert_eq!(h, expect);
}

mod laws {
    use proptest::prelude::*;
    use rigidcy_core::numkernel::resultant::{determinant, sylvester_matrix};
    use rigidcy_core::numkernel::*;

    fn towers() -> Vec<FieldTower> {
        let mut t = vec![FieldTower::rationals()];
        t.extend(shipped_towers());
        t
    }

    fn element(t: &FieldTower, c: &[(i64, i64)]) -> AlgebraicNumber {
        let coords: Vec<Q> = (0..t.degree()).map(|k| c.get(k).map_or(qi(0), |&(n, d)| q(n, d))).collect();
        AlgebraicNumber::new(t, coords).unwrap()
    }

    fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((-9i64..=9, 1i64..=4), 6)
    }

    fn close(a: (f64, f64), b: (f64, f64)) -> bool {
        let scale = 1.0 + a.0.abs() + a.1.abs();
        (a.0 - b.0).abs() < 1e-6 * scale && (a.1 - b.1).abs() < 1e-6 * scale
    }

    fn check_axioms(t: &FieldTower, a: &[(i64, i64)], b: &[(i64, i64)], c: &[(i64, i64)]) -> Result<(), TestCaseError> {
        let (x, y, z) = (element(t, a), element(t, b), element(t, c));
        let (zero, one) = (AlgebraicNumber::zero(t), AlgebraicNumber::one(t));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &zero, x.clone());
        prop_assert_eq!(&x * &one, x.clone());
        prop_assert!((&x + &(-&x)).is_zero());
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
            prop_assert_eq!(&(&y / &x) * &x, y.clone());
        }
        // complex embedding as an independent check of the multiplication table
        let g = principal_embedding(t);
        let (px, py) = (x.to_f64_parts(&g), y.to_f64_parts(&g));
        let prod = (px.0 * py.0 - px.1 * py.1, px.0 * py.1 + px.1 * py.0);
        prop_assert!(close((&x * &y).to_f64_parts(&g), prod));
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms_q(a in coeffs(), b in coeffs(), c in coeffs()) { check_axioms(&towers()[0], &a, &b, &c)?; }
        #[test]
        fn field_axioms_q_omega(a in coeffs(), b in coeffs(), c in coeffs()) { check_axioms(&q_omega(), &a, &b, &c)?; }
        #[test]
        fn field_axioms_q_i(a in coeffs(), b in coeffs(), c in coeffs()) { check_axioms(&q_i(), &a, &b, &c)?; }
        #[test]
        fn field_axioms_q_mu(a in coeffs(), b in coeffs(), c in coeffs()) { check_axioms(&q_mu(), &a, &b, &c)?; }
        #[test]
        fn field_axioms_q_zeta9(a in coeffs(), b in coeffs(), c in coeffs()) { check_axioms(&q_zeta9(), &a, &b, &c)?; }
        #[test]
        fn field_axioms_q_cbrt2(a in coeffs(), b in coeffs(), c in coeffs()) { check_axioms(&q_cbrt2(), &a, &b, &c)?; }
        #[test]
        fn field_axioms_q_i_cbrt2(a in coeffs(), b in coeffs(), c in coeffs()) { check_axioms(&q_i_cbrt2(), &a, &b, &c)?; }
        #[test]
        fn field_axioms_q_beta5(a in coeffs(), b in coeffs(), c in coeffs()) { check_axioms(&q_beta5(), &a, &b, &c)?; }
    }

    fn gaussian_poly() -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((-5i64..=5, -3i64..=3), 1..=5)
    }

    fn pgi(c: &[(i64, i64)]) -> Polynomial {
        let t = q_i();
        let i = t.top_generator();
        let coeffs = c.iter().map(|&(a, b)| &AlgebraicNumber::from_int(&t, a) + &(&i * &AlgebraicNumber::from_int(&t, b))).collect();
        Polynomial::new(&t, coeffs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn gcd_laws(a in gaussian_poly(), b in gaussian_poly(), c in gaussian_poly()) {
            let (a, b, c) = (pgi(&a), pgi(&b), pgi(&c));
            prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
            let g = Polynomial::gcd(&a, &b);
            prop_assert!(g.divides(&a) && g.divides(&b));
            let (g2, s, t) = Polynomial::ext_gcd(&a, &b);
            prop_assert_eq!(&g2, &g);
            prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
            prop_assert_eq!(Polynomial::gcd(&(&a * &c), &(&b * &c)), &g * &c.monic());
        }

        #[test]
        fn resultant_laws(a in gaussian_poly(), b in gaussian_poly(), c in gaussian_poly()) {
            let (a, b, c) = (pgi(&a), pgi(&b), pgi(&c));
            prop_assume!(a.deg() > 0 && b.deg() > 0 && c.deg() > 0);
            let r = resultant(&a, &b).unwrap();
            // `resultant(a, b)` is the Sylvester determinant with `b` first
            let t = q_i();
            prop_assert_eq!(&r, &determinant(&t, sylvester_matrix(&t, b.coeffs(), a.coeffs())));
            let sign = if (a.deg() * b.deg()) % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(resultant(&b, &a).unwrap(), &r * &AlgebraicNumber::from_int(&q_i(), sign));
            prop_assert_eq!(resultant(&(&a * &c), &b).unwrap(), &r * &resultant(&c, &b).unwrap());
            prop_assert_eq!(r.is_zero(), Polynomial::gcd(&a, &b).deg() > 0);
        }
    }
}
