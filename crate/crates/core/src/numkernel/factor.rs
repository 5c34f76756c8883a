//! Factorization: Zassenhaus (Hensel lifting plus recombination) over Q,
//! Trager's norm method over each tower step.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::error::NumError;
use super::field::{AlgebraicNumber, FieldTower, Q};
use super::modp;
use super::poly::Polynomial;
use super::resultant::{interpolate, sylvester_resultant};

type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    ztrim(c)
}

fn zcontent(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn zprimitive(a: &[BigInt]) -> ZPoly {
    let c = zcontent(a);
    let mut v: ZPoly = if c.is_zero() { a.to_vec() } else { a.iter().map(|x| x / &c).collect() };
    if v.last().is_some_and(|x| x.is_negative()) {
        v = v.into_iter().map(|x| -x).collect();
    }
    v
}

/// Exact quotient `a / b` over Z, or `None`.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (c, m) = r[i].div_rem(lb);
        if !m.is_zero() {
            return None;
        }
        for j in 0..=db {
            let v = &c * &b[j];
            r[i - db + j] -= v;
        }
        q[i - db] = c;
    }
    if r.iter().all(|x| x.is_zero()) {
        Some(ztrim(q))
    } else {
        None
    }
}

fn to_fp(a: &[BigInt], p: u64) -> modp::Fp {
    let pb = BigInt::from(p);
    modp::trim(a.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_fp(a: &[u64]) -> ZPoly {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|x| x.mod_floor(m)).collect())
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

const PRIMES: [u64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn more_primes() -> impl Iterator<Item = u64> {
    PRIMES.into_iter().chain((43u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)))
}

/// Lifts `f = g h (mod p)` to `mod p^k`; `g` monic, `h` carries the leading coefficient.
fn hensel_two(f: &[BigInt], g: &[u64], h: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (one, s, t) = modp::ext_gcd(g, h, p);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let mut gg = from_fp(g);
    let mut hh = from_fp(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let pj1 = &pj * &pb;
        let prod = zmul(&gg, &hh);
        let n = f.len().max(prod.len());
        let diff: ZPoly = (0..n)
            .map(|i| f.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default())
            .map(|x| x.mod_floor(&pj1) / &pj)
            .collect();
        let e = to_fp(&diff, p);
        if !e.is_empty() {
            let te = modp::mul(&t, &e, p);
            let (q, dg) = modp::divrem(&te, g, p);
            let dh = modp::add(&modp::mul(&s, &e, p), &modp::mul(&q, h, p), p);
            let dgz = from_fp(&dg);
            let dhz = from_fp(&dh);
            gg.resize(gg.len().max(dgz.len()), BigInt::zero());
            for (i, x) in dgz.iter().enumerate() {
                gg[i] += x * &pj;
            }
            hh.resize(hh.len().max(dhz.len()), BigInt::zero());
            for (i, x) in dhz.iter().enumerate() {
                hh[i] += x * &pj;
            }
            gg = zmod(&gg, &pj1);
            hh = zmod(&hh, &pj1);
        }
        pj = pj1;
    }
    (gg, hh)
}

fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|x| x * x).sum();
    let root = norm2.sqrt() + 1;
    let lc = f.last().unwrap().abs();
    lc * (BigInt::one() << n) * root
}

/// Irreducible factors over Z of a primitive squarefree integer polynomial with positive leading coefficient.
pub fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    let mut best: Option<(u64, Vec<modp::Fp>)> = None;
    let mut tried = 0;
    for p in more_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(f, p);
        if fp.len() != f.len() || !modp::is_squarefree(&fp, p) {
            continue;
        }
        let facs = modp::factor_squarefree(&modp::monic(&fp, p), p, 0x5eed ^ p);
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    let (p, facs) = best.unwrap();
    let bound = mignotte_bound(f) * 2 + 1;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }

    let lc_p = lc.mod_floor(&pb).to_u64().unwrap();
    let mut lifted: Vec<ZPoly> = Vec::new();
    let mut target = zmod(f, &m);
    let mut rest = facs.clone();
    while rest.len() > 1 {
        let g = rest.remove(0);
        let mut h = vec![lc_p];
        for r in &rest {
            h = modp::mul(&h, r, p);
        }
        let tgt_lc_p = target.last().unwrap().mod_floor(&pb).to_u64().unwrap();
        h = modp::scale(&modp::monic(&h, p), tgt_lc_p, p);
        let (gg, hh) = hensel_two(&target, &g, &h, p, k);
        lifted.push(gg);
        target = hh;
    }
    let tl = target.last().unwrap().clone();
    let inv = tl.modinv(&m).expect("leading coefficient invertible mod p^k");
    lifted.push(zmod(&target.iter().map(|x| x * &inv).collect::<Vec<_>>(), &m));

    let mut out = Vec::new();
    let mut cur = f.to_vec();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let lcc = cur.last().unwrap().clone();
        for subset in (0..lifted.len()).combinations(s) {
            let mut g: ZPoly = vec![lcc.clone()];
            for &i in &subset {
                g = zmod(&zmul(&g, &lifted[i]), &m);
            }
            let g = zprimitive(&symmetric(&g, &m));
            if let Some(q) = zdiv_exact(&cur, &g) {
                out.push(g);
                cur = q;
                let keep: Vec<ZPoly> =
                    lifted.iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, x)| x.clone()).collect();
                lifted = keep;
                continue 'outer;
            }
        }
        s += 1;
    }
    if cur.len() > 1 {
        out.push(zprimitive(&cur));
    }
    out
}

fn q_poly_to_z(f: &Polynomial) -> ZPoly {
    let c: Vec<Q> = f.as_rational().expect("rational coefficients");
    let den = c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let z: ZPoly = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    zprimitive(&z)
}

fn z_to_q_monic(t: &FieldTower, z: &[BigInt]) -> Polynomial {
    Polynomial::from_q(t, &z.iter().map(|x| Q::from_integer(x.clone())).collect::<Vec<_>>()).monic()
}

fn factor_squarefree_q(f: &Polynomial) -> Vec<Polynomial> {
    let t = f.tower().clone();
    let z = q_poly_to_z(f);
    // strip powers of X first
    let shift = z.iter().take_while(|x| x.is_zero()).count();
    let mut out = Vec::new();
    if shift > 0 {
        out.push(Polynomial::x(&t));
    }
    let core: ZPoly = z[shift..].to_vec();
    if core.len() > 1 {
        for g in zassenhaus(&core) {
            out.push(z_to_q_monic(&t, &g));
        }
    }
    out
}

/// Squarefree norm `Res_y(m(y), g(x, y))` of `g` over the parent field.
fn norm_over_parent(g: &Polynomial) -> Polynomial {
    let t = g.tower();
    let parent = t.parent().unwrap().clone();
    let depth = t.depth();
    let e = t.step_degree(depth - 1);
    let mp = Polynomial::new(&parent, t.minpoly(depth - 1));
    let n = g.deg() * e;
    let split: Vec<Vec<AlgebraicNumber>> = g.coeffs().iter().map(|c| c.split_top()).collect();
    let mut xs = Vec::with_capacity(n + 1);
    let mut ys = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let x0 = AlgebraicNumber::from_int(&parent, k as i64);
        let mut acc = vec![AlgebraicNumber::zero(&parent); e];
        let mut pw = AlgebraicNumber::one(&parent);
        for sc in &split {
            for l in 0..e {
                if !sc[l].is_zero() {
                    acc[l] = &acc[l] + &(&sc[l] * &pw);
                }
            }
            pw = &pw * &x0;
        }
        let gp = Polynomial::new(&parent, acc);
        let v = if gp.is_zero() { AlgebraicNumber::zero(&parent) } else { sylvester_resultant(&mp, &gp).unwrap() };
        xs.push(x0);
        ys.push(v);
    }
    interpolate(&parent, &xs, &ys)
}

fn trager(f: &Polynomial) -> Vec<Polynomial> {
    if f.deg() <= 1 {
        return vec![f.monic()];
    }
    let t = f.tower().clone();
    let alpha = t.top_generator();
    let mut s: i64 = 0;
    let (g, norm) = loop {
        let shift = &alpha * &AlgebraicNumber::from_int(&t, -s);
        let g = f.shift(&shift);
        let nrm = norm_over_parent(&g);
        if nrm.is_squarefree() {
            break (g, nrm);
        }
        s = if s <= 0 { 1 - s } else { -s };
    };
    let parts = factor(&norm);
    if parts.len() == 1 && parts[0].1 == 1 {
        return vec![f.monic()];
    }
    let back = &alpha * &AlgebraicNumber::from_int(&t, s);
    let mut out = Vec::new();
    for (ni, _) in parts {
        let lifted = ni.lift_to(&t).unwrap();
        let hi = Polynomial::gcd(&g, &lifted);
        if hi.deg() >= 1 {
            out.push(hi.shift(&back).monic());
        }
    }
    out
}

/// Monic irreducible factors with multiplicities over the coefficient tower.
/// Output is sorted by degree, then by coefficients.
pub fn factor(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    for (g, m) in f.squarefree_decomposition() {
        let parts = if f.tower().is_rationals() { factor_squarefree_q(&g) } else { trager(&g) };
        for h in parts {
            out.push((h, m));
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
    out
}

pub fn is_irreducible(f: &Polynomial) -> bool {
    if f.deg() == 0 {
        return false;
    }
    let fs = factor(f);
    fs.len() == 1 && fs[0].1 == 1
}

/// Roots lying in the coefficient tower, with multiplicities.
pub fn roots_in_field(f: &Polynomial) -> Vec<(AlgebraicNumber, usize)> {
    factor(f)
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, m)| (-&g.coeff(0), m))
        .collect()
}

/// Adjoins a root of `minpoly` after checking irreducibility over `base`.
pub fn extend_checked(base: &FieldTower, name: &str, minpoly: &Polynomial) -> Result<FieldTower, NumError> {
    if minpoly.deg() == 0 || !minpoly.is_monic() {
        return Err(NumError::BadMinpoly(name.to_string()));
    }
    if !minpoly.tower().same(base) {
        return Err(NumError::TowerMismatch(minpoly.tower().name().into(), base.name().into()));
    }
    if !is_irreducible(minpoly) {
        return Err(NumError::Reducible(name.to_string()));
    }
    base.extend_unchecked(name, minpoly.coeffs())
}
