use proptest::prelude::*;
use rigidcy_core::numkernel::*;
use rigidcy_core::ratmap::*;

fn pz(t: &FieldTower, c: &[i64]) -> Polynomial {
    Polynomial::from_ints(t, c)
}

fn gi(a: i64, b: i64) -> AlgebraicNumber {
    let t = q_i();
    &AlgebraicNumber::from_int(&t, a) + &(&t.top_generator() * &AlgebraicNumber::from_int(&t, b))
}

fn pgi(c: &[(i64, i64)]) -> Polynomial {
    Polynomial::new(&q_i(), c.iter().map(|&(a, b)| gi(a, b)).collect())
}

fn branch6() -> Vec<ProjectivePoint> {
    let t = q_i();
    vec![
        ProjectivePoint::int(&t, 0),
        ProjectivePoint::Infinity,
        ProjectivePoint::int(&t, 1),
        ProjectivePoint::int(&t, -1),
        ProjectivePoint::Finite(gi(0, 1)),
        ProjectivePoint::Finite(gi(0, -1)),
    ]
}

fn maps6444() -> [RationalFunction; 3] {
    let t = q_i();
    let x4 = RationalFunction::from_poly(pz(&t, &[0, 0, 0, 0, 1]));
    let m2 = RationalFunction::new(pz(&t, &[-1, 1]), pz(&t, &[1, 1])).unwrap().pow(4);
    let m3 = RationalFunction::new(pgi(&[(0, -1), (1, 0)]), pgi(&[(0, 1), (1, 0)])).unwrap().pow(4);
    [x4, m2, m3]
}

fn maps222iii() -> [RationalFunction; 3] {
    let t = q_i();
    let n1 = &pz(&t, &[-1, 1]) * &pgi(&[(0, -1), (1, 0)]);
    let d1 = pgi(&[(0, 0), (-2, -2)]);
    let f1 = RationalFunction::new(n1, d1).unwrap();
    let f2 = RationalFunction::new(pz(&t, &[0, 1, 1]), pz(&t, &[-1, 1])).unwrap();
    let f3 = RationalFunction::new(pgi(&[(0, 0), (0, 1), (1, 0)]), pgi(&[(1, 0), (0, 1)])).unwrap();
    [f1, f2, f3]
}

#[test]
fn degree_examples() {
    let q = FieldTower::rationals();
    assert_eq!(degree(&RationalFunction::from_poly(pz(&q, &[0, 0, 0, 0, 1]))), 4);
    assert_eq!(degree(&RationalFunction::new(pz(&q, &[0, 1, 1]), pz(&q, &[-1, 1])).unwrap()), 2);
    assert_eq!(degree(&RationalFunction::from_poly(pz(&q, &[5]))), 0);
}

#[test]
fn fiber_examples() {
    let q = FieldTower::rationals();
    let x4 = RationalFunction::from_poly(pz(&q, &[0, 0, 0, 0, 1]));
    let f = fiber(&x4, Target::Zero).unwrap();
    assert_eq!(f, vec![FiberEntry { point: FiberPoint::Point(ProjectivePoint::int(&q, 0)), mult: 4 }]);

    let g = RationalFunction::new(pz(&q, &[0, 1, 1]), pz(&q, &[-1, 1])).unwrap();
    let f = fiber(&g, Target::Infinity).unwrap();
    assert_eq!(f.len(), 2);
    assert!(f.contains(&FiberEntry { point: FiberPoint::Point(ProjectivePoint::Infinity), mult: 1 }));
    assert!(f.contains(&FiberEntry { point: FiberPoint::Point(ProjectivePoint::int(&q, 1)), mult: 1 }));

    let h = maps6444()[1].clone();
    let f = fiber(&h, Target::One).unwrap();
    let t = q_i();
    for p in [ProjectivePoint::int(&t, 0), ProjectivePoint::Infinity, ProjectivePoint::Finite(gi(0, 1)), ProjectivePoint::Finite(gi(0, -1))] {
        assert!(f.contains(&FiberEntry { point: FiberPoint::Point(p), mult: 1 }));
    }
    assert_eq!(f.len(), 4);

    // over Q the points ±i come as one bundle
    let hq = RationalFunction::new(pz(&q, &[-1, 1]), pz(&q, &[1, 1])).unwrap().pow(4);
    let f = fiber(&hq, Target::One).unwrap();
    assert!(f.contains(&FiberEntry { point: FiberPoint::Bundle(pz(&q, &[1, 0, 1])), mult: 1 }));

    assert_eq!(fiber(&RationalFunction::from_poly(pz(&q, &[5])), Target::Zero), Err(RatMapError::Constant));
}

#[test]
fn profile_6444() {
    let p = ramification_profile(&maps6444(), &branch6()).unwrap();
    for c in &p.coords {
        assert_eq!((c.delta, c.gamma0, c.gamma1), (4, 6, 0));
    }
    assert!(p.rows.iter().all(|r| r.r.iter().all(|v| matches!(v, Some(0) | Some(3)))));
    let rep = check_lift_conditions(&p);
    assert!(rep.ok() && rep.smooth());
    assert_eq!(rep.points.len(), 6);
}

#[test]
fn profile_222iii() {
    let p = ramification_profile(&maps222iii(), &branch6()).unwrap();
    for c in &p.coords {
        assert_eq!((c.delta, c.gamma0, c.gamma1), (2, 0, 2));
    }
    assert!(p.rows.iter().all(|r| r.r == [Some(0); 3]));
    assert!(check_lift_conditions(&p).smooth());
}

#[test]
fn profile_identity_d3() {
    let q = FieldTower::rationals();
    let c = RationalFunction::constant(&AlgebraicNumber::zero(&q));
    let maps = [RationalFunction::identity(&q), c.clone(), c];
    let bs = vec![ProjectivePoint::int(&q, 0), ProjectivePoint::int(&q, 1), ProjectivePoint::Infinity];
    let p = ramification_profile(&maps, &bs).unwrap();
    assert_eq!(p.coords[0].delta, 1);
    assert!(p.coords[1].constant && p.coords[2].constant);
    assert!(p.rows.iter().all(|r| r.r == [Some(0), None, None]));
}

#[test]
fn profile_errors() {
    let t = q_i();
    let mut bs = branch6();
    bs.pop();
    assert!(matches!(ramification_profile(&maps6444(), &bs), Err(RatMapError::NotCandidate { .. })));
    // an extra branch point that no fiber reaches
    let mut bs = branch6();
    bs.push(ProjectivePoint::int(&t, 2));
    assert!(matches!(ramification_profile(&maps6444(), &bs), Err(RatMapError::NotCandidate { .. })));
}

#[test]
fn lift_condition_examples() {
    assert_eq!(classify_point(&[Some(1), Some(4), None]), Ok(PointClass::Singular));
    assert!(matches!(classify_point(&[Some(2), Some(0), None]), Err(LiftViolation::Congruence(_))));
    assert!(matches!(classify_point(&[Some(3), Some(3), Some(3)]), Err(LiftViolation::Gcd(_))));
    assert_eq!(classify_point(&[Some(0), Some(3), Some(3)]), Ok(PointClass::Smooth));
}

#[test]
fn cube_cofactor_examples() {
    let t = q_i();
    let f = pz(&t, &[0, 0, 0, 0, -1, 0, 0, 0, 1]);
    let m = maps6444();
    match cube_cofactor(&m[0], &f, false).unwrap() {
        CubeResult::Cube { q, .. } => assert_eq!(q, RationalFunction::constant(&AlgebraicNumber::one(&t))),
        other => panic!("{other:?}"),
    }
    match cube_cofactor(&m[1], &f, false).unwrap() {
        CubeResult::Cube { q, .. } => {
            let expect = RationalFunction::new(pz(&t, &[2, -2]), &pz(&t, &[0, 1]) * &pz(&t, &[1, 1]).pow(3)).unwrap();
            assert_eq!(q, expect);
        }
        other => panic!("{other:?}"),
    }
    let q = FieldTower::rationals();
    let r = RationalFunction::from_poly(pz(&q, &[0, 0, 1]));
    assert!(matches!(cube_cofactor(&r, &pz(&q, &[0, -1, 1]), false).unwrap(), CubeResult::NotACube { .. }));
}

#[test]
fn cube_cofactor_extends_by_cube_root() {
    // R = 2X^3 over Q with F = X^3 - 1/2 ... choose F so R(R-1)/F = 2 * X^3
    let q = FieldTower::rationals();
    let r = RationalFunction::from_poly(pz(&q, &[0, 0, 0, 2]));
    let f = pz(&q, &[-1, 0, 0, 2]);
    assert!(matches!(cube_cofactor(&r, &f, false).unwrap(), CubeResult::NotACube { .. }));
    match cube_cofactor(&r, &f, true).unwrap() {
        CubeResult::Cube { tower, .. } => assert_eq!(tower.degree(), 3),
        other => panic!("{other:?}"),
    }
}

fn arb_poly() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-4i64..=4, -4i64..=4), 1..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn riemann_hurwitz(n in arb_poly(), d in arb_poly()) {
        let (np, dp) = (pgi(&n), pgi(&d));
        prop_assume!(!np.is_zero() && !dp.is_zero());
        let f = RationalFunction::new(np, dp).unwrap();
        prop_assume!(!f.is_constant());
        let delta = f.degree();
        prop_assert_eq!(f.total_ramification(), 2 * delta - 2);
        for c in Target::ALL {
            let s: usize = f.fiber(c).unwrap().iter().map(|e| e.point.weight() * e.mult).sum();
            prop_assert_eq!(s, delta);
        }
    }

    #[test]
    fn profile_permutation_invariant(perm in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle()) {
        let bs = branch6();
        let shuffled: Vec<ProjectivePoint> = perm.iter().map(|&k| bs[k].clone()).collect();
        for maps in [maps6444(), maps222iii()] {
            let a = ramification_profile(&maps, &bs).unwrap();
            let b = ramification_profile(&maps, &shuffled).unwrap();
            prop_assert_eq!(&a.coords, &b.coords);
            for (k, &src) in perm.iter().enumerate() {
                prop_assert_eq!(&b.rows[k], &a.rows[src]);
            }
        }
    }

    #[test]
    fn cube_cofactor_reverified(k in 1u32..4, a in -3i64..=3, b in 1i64..=3) {
        // R = a X^k / (X + b)^k over Q(i); F is taken as R(R-1) up to cubes so a cofactor exists
        let t = q_i();
        prop_assume!(a != 0);
        let r = RationalFunction::new(pz(&t, &[0, a]).pow(k as usize), pz(&t, &[b, 1]).pow(k as usize)).unwrap();
        let rr1 = r.mul(&r.sub(&RationalFunction::constant(&AlgebraicNumber::one(&t))));
        let f = rr1.numerator() * &rr1.denominator().pow(2);
        if let CubeResult::Cube { q, tower } = cube_cofactor(&r, &f, true).unwrap() {
            let lhs = q.pow(3).mul(&RationalFunction::from_poly(f.lift_to(&tower).unwrap()));
            prop_assert_eq!(lhs, rr1.lift_to(&tower).unwrap());
        } else {
            prop_assert!(false, "expected a cube");
        }
    }
}
