#![allow(dead_code)]

use rigidcy_core::embedverify::CurveSpec;
use rigidcy_core::numkernel::{q_cbrt2, q_i, AlgebraicNumber, FieldTower, Polynomial};
use rigidcy_core::RationalFunction;

pub fn gi(a: i64, b: i64) -> AlgebraicNumber {
    let t = q_i();
    &AlgebraicNumber::from_int(&t, a) + &(&t.top_generator() * &AlgebraicNumber::from_int(&t, b))
}

/// Product of `(X - r)` over the listed roots, times `c`.
pub fn prod(t: &FieldTower, c: &AlgebraicNumber, roots: &[AlgebraicNumber]) -> Polynomial {
    let r: Vec<(AlgebraicNumber, usize)> = roots.iter().map(|a| (a.clone(), 1)).collect();
    Polynomial::from_roots(t, &r).scale(c)
}

pub fn rf(n: Polynomial, d: Polynomial) -> RationalFunction {
    RationalFunction::new(n, d).unwrap()
}

fn curve_i(zero_mult: usize) -> CurveSpec {
    let t = q_i();
    CurveSpec {
        n: 3,
        lead: AlgebraicNumber::one(&t),
        roots: vec![(gi(0, 0), zero_mult), (gi(1, 0), 1), (gi(-1, 0), 1), (gi(0, 1), 1), (gi(0, -1), 1)],
    }
}

/// The maps of the hand-typed certificates: `(curve, x maps, y factors)`.
pub fn reference_maps(id: &str) -> (CurveSpec, [RationalFunction; 3], [RationalFunction; 3]) {
    let t = q_i();
    let one = gi(1, 0);
    let x = Polynomial::x(&t);
    let c = |a: i64, b: i64| Polynomial::constant(&gi(a, b));
    let p = |cst: AlgebraicNumber, r: &[AlgebraicNumber]| prod(&t, &cst, r);
    let pw = |r: AlgebraicNumber, e: usize| Polynomial::linear_root(&r).pow(e);
    let x4 = rf(x.pow(4), c(1, 0));
    let y1 = rf(c(1, 0), c(1, 0));
    let x2_4 = rf(pw(gi(1, 0), 4), pw(gi(-1, 0), 4));
    let y2_4 = rf(p(gi(-2, 0), &[gi(1, 0)]), &x * &pw(gi(-1, 0), 3));
    let x3_4 = rf(pw(gi(0, 1), 4), pw(gi(0, -1), 4));
    let y3_4 = rf(p(gi(0, 2), &[gi(0, 1)]), &x * &pw(gi(0, -1), 3));
    // X(X+i)/(i(X-i)), y = -Y/(X(X-i))
    let x3_2 = rf(p(one.clone(), &[gi(0, 0), gi(0, -1)]), p(gi(0, 1), &[gi(0, 1)]));
    let y3_2 = rf(c(-1, 0), p(one.clone(), &[gi(0, 0), gi(0, 1)]));
    // X(X+1)/(X-1), y = Y/(X(X-1))
    let x2_2 = rf(p(one.clone(), &[gi(0, 0), gi(-1, 0)]), p(one.clone(), &[gi(1, 0)]));
    let y2_2 = rf(c(1, 0), p(one.clone(), &[gi(0, 0), gi(1, 0)]));
    match id {
        "6444" => (curve_i(4), [x4, x2_4, x3_4], [y1.clone(), y2_4, y3_4]),
        "6442" => (curve_i(4), [x4, x2_4, x3_2], [y1.clone(), y2_4, y3_2]),
        "6422" => (curve_i(4), [x4, x2_2, x3_2], [y1.clone(), y2_2, y3_2]),
        "222ii" => {
            let x1 = rf(p(one.clone(), &[gi(1, 0), gi(-1, 0)]), p(gi(0, 1), &[gi(0, -1)]));
            let y1 = rf(c(-1, 0), p(one.clone(), &[gi(0, -1)]));
            let x2 = rf(p(one.clone(), &[gi(0, 1)]), p(gi(0, 1), &[gi(1, 0), gi(-1, 0)]));
            let y2 = rf(c(1, 0), p(gi(0, 1), &[gi(1, 0), gi(-1, 0)]));
            let x3 = rf(p(gi(-1, 0), &[gi(-1, 0)]), p(one.clone(), &[gi(0, 0), gi(1, 0)]));
            let y3 = rf(c(1, 0), p(one.clone(), &[gi(0, 0), gi(1, 0)]));
            (curve_i(1), [x1, x2, x3], [y1, y2, y3])
        }
        "222iii" => {
            let x1 = rf(p(one.clone(), &[gi(1, 0), gi(0, 1)]), p(gi(-2, -2), &[gi(0, 0)]));
            let y1 = rf(c(0, 1), p(gi(2, 0), &[gi(0, 0)]));
            let x2 = rf(p(one.clone(), &[gi(0, 0), gi(-1, 0)]), p(one.clone(), &[gi(1, 0)]));
            let y2 = rf(c(1, 0), p(one.clone(), &[gi(1, 0)]));
            let y3 = rf(c(-1, 0), p(one.clone(), &[gi(0, 1)]));
            (curve_i(1), [x1, x2, x3_2], [y1, y2, y3])
        }
        "222i" => {
            let t = q_cbrt2();
            let n = |v: i64| AlgebraicNumber::from_int(&t, v);
            let fr = |a: i64, b: i64| AlgebraicNumber::from_q(&t, rigidcy_core::numkernel::q(a, b));
            let p = |cst: AlgebraicNumber, r: &[AlgebraicNumber]| prod(&t, &cst, r);
            let cb = t.top_generator();
            let third = fr(1, 3);
            let mthird = fr(-1, 3);
            let curve = CurveSpec {
                n: 3,
                lead: n(9),
                roots: vec![(n(0), 1), (n(1), 1), (n(-1), 1), (third.clone(), 1), (mthird.clone(), 1)],
            };
            // (X-1)(3X+1)/(-4X), y = Y/(2 cbrt2 X)
            let x1 = rf(p(n(3), &[n(1), mthird.clone()]), p(n(-4), &[n(0)]));
            let y1 = rf(Polynomial::constant(&n(1)), p(&n(2) * &cb, &[n(0)]));
            let x2 = rf(p(n(-1), &[n(-1)]), p(n(3), &[n(1), mthird.clone()]));
            let y2 = rf(Polynomial::constant(&n(1)), p(n(3), &[n(1), mthird.clone()]));
            let x3 = rf(p(n(1), &[n(1)]), p(n(3), &[n(-1), third.clone()]));
            let y3 = rf(Polynomial::constant(&n(-1)), p(n(3), &[n(-1), third.clone()]));
            (curve, [x1, x2, x3], [y1, y2, y3])
        }
        _ => panic!("no hand-typed maps for {id}"),
    }
}

/// Maps of the two extra `d = 6` embeddings (y factors computed by `assemble`).
pub fn extra_maps(id: &str) -> (CurveSpec, [RationalFunction; 3]) {
    let t = q_i();
    let one = gi(1, 0);
    let x = Polynomial::x(&t);
    let c = |a: i64, b: i64| Polynomial::constant(&gi(a, b));
    let quad = |a1: AlgebraicNumber, a0: AlgebraicNumber| Polynomial::new(&t, vec![a0, a1, one.clone()]);
    match id {
        "6422b" => {
            let x1 = rf(&x * &c(2, 2), quad(gi(1, 1), gi(0, 1)));
            let x2 = rf(&x * &c(2, -2), quad(gi(1, -1), gi(0, -1)));
            let x3 = rf(x.pow(4), c(1, 0));
            (curve_i(4), [x1, x2, x3])
        }
        "6422c" => {
            // (2-2i)(-X^2+(1+i)X-i)/(8X), (-iX^2+i)/(X+i), 1 - X^4
            let q1 = Polynomial::new(&t, vec![gi(0, -1), gi(1, 1), gi(-1, 0)]).scale(&gi(2, -2));
            let x1 = rf(q1, &x * &c(8, 0));
            let x2 = rf(Polynomial::new(&t, vec![gi(0, 1), gi(0, 0), gi(0, -1)]), Polynomial::linear_root(&gi(0, -1)));
            let x3 = rf(&c(1, 0) - &x.pow(4), c(1, 0));
            (curve_i(4), [x1, x2, x3])
        }
        _ => panic!("no extra maps for {id}"),
    }
}
