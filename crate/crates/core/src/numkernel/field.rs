//! Explicit extension towers over Q and their elements.
//!
//! An element of a tower of depth `n` is a flat vector of rational coordinates
//! in the monomial basis `g_1^{e_1} ... g_n^{e_n}` with the lowest step varying
//! fastest.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::error::NumError;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Debug)]
struct Step {
    name: String,
    deg: usize,
    /// `deg + 1` flat elements of the level below, lowest degree first, monic.
    minpoly: Vec<Vec<Q>>,
}

#[derive(Debug)]
struct TowerInner {
    name: String,
    steps: Vec<Step>,
    cum: Vec<usize>,
    parent: Option<FieldTower>,
}

#[derive(Clone, Debug)]
pub struct FieldTower(Arc<TowerInner>);

impl FieldTower {
    pub fn rationals() -> FieldTower {
        FieldTower(Arc::new(TowerInner {
            name: "Q".to_string(),
            steps: Vec::new(),
            cum: vec![1],
            parent: None,
        }))
    }

    /// Adjoins a root of `minpoly` (monic, coefficients in `self`, lowest first)
    /// without an irreducibility check. See `numkernel::factor::extend_checked`.
    pub fn extend_unchecked(&self, name: &str, minpoly: &[AlgebraicNumber]) -> Result<FieldTower, NumError> {
        if minpoly.len() < 2 || !minpoly.last().unwrap().is_one() {
            return Err(NumError::BadMinpoly(name.to_string()));
        }
        for c in minpoly {
            if !c.tower.same(self) {
                return Err(NumError::TowerMismatch(c.tower.name().to_string(), self.name().to_string()));
            }
        }
        let deg = minpoly.len() - 1;
        let mut steps: Vec<Step> = self
            .0
            .steps
            .iter()
            .map(|s| Step { name: s.name.clone(), deg: s.deg, minpoly: s.minpoly.clone() })
            .collect();
        steps.push(Step { name: name.to_string(), deg, minpoly: minpoly.iter().map(|c| c.c.clone()).collect() });
        let mut cum = self.0.cum.clone();
        cum.push(self.degree() * deg);
        Ok(FieldTower(Arc::new(TowerInner {
            name: format!("{}({})", self.0.name, name),
            steps,
            cum,
            parent: Some(self.clone()),
        })))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn degree(&self) -> usize {
        *self.0.cum.last().unwrap()
    }

    pub fn depth(&self) -> usize {
        self.0.steps.len()
    }

    pub fn step_name(&self, k: usize) -> &str {
        &self.0.steps[k].name
    }

    pub fn step_degree(&self, k: usize) -> usize {
        self.0.steps[k].deg
    }

    pub fn parent(&self) -> Option<&FieldTower> {
        self.0.parent.as_ref()
    }

    pub fn prefix(&self, depth: usize) -> FieldTower {
        let mut t = self.clone();
        while t.depth() > depth {
            t = t.parent().unwrap().clone();
        }
        t
    }

    pub fn is_rationals(&self) -> bool {
        self.0.steps.is_empty()
    }

    pub fn same(&self, other: &FieldTower) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        self.0.steps.len() == other.0.steps.len()
            && self.0.steps.iter().zip(other.0.steps.iter()).all(|(a, b)| a.name == b.name && a.minpoly == b.minpoly)
    }

    pub fn is_prefix_of(&self, other: &FieldTower) -> bool {
        self.depth() <= other.depth() && other.prefix(self.depth()).same(self)
    }

    /// The generator adjoined at step `k` (0-based) as an element of this tower.
    pub fn generator(&self, k: usize) -> AlgebraicNumber {
        let mut c = vec![Q::zero(); self.degree()];
        c[self.0.cum[k]] = Q::one();
        AlgebraicNumber { tower: self.clone(), c }
    }

    pub fn top_generator(&self) -> AlgebraicNumber {
        self.generator(self.depth() - 1)
    }

    /// Minimal polynomial of step `k` as coefficients over the prefix tower of depth `k`.
    pub fn minpoly(&self, k: usize) -> Vec<AlgebraicNumber> {
        let base = self.prefix(k);
        self.0.steps[k].minpoly.iter().map(|c| AlgebraicNumber { tower: base.clone(), c: c.clone() }).collect()
    }

    fn monomial_name(&self, idx: usize) -> String {
        let mut parts = Vec::new();
        let mut rest = idx;
        for s in &self.0.steps {
            let e = rest % s.deg;
            rest /= s.deg;
            match e {
                0 => {}
                1 => parts.push(s.name.clone()),
                _ => parts.push(format!("{}^{}", s.name, e)),
            }
        }
        parts.join("*")
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FieldTower {}

fn zero_vec(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_zero())
}

fn add_vec(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_vec(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_assign_vec(a: &mut [Q], b: &[Q]) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += y;
        }
    }
}

fn sub_assign_vec(a: &mut [Q], b: &[Q]) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x -= y;
        }
    }
}

fn mul_lvl(t: &TowerInner, k: usize, a: &[Q], b: &[Q]) -> Vec<Q> {
    if k == 0 {
        return vec![&a[0] * &b[0]];
    }
    let sub = t.cum[k - 1];
    let step = &t.steps[k - 1];
    let m = step.deg;
    let mut prod: Vec<Vec<Q>> = vec![zero_vec(sub); 2 * m - 1];
    for i in 0..m {
        let ai = &a[i * sub..(i + 1) * sub];
        if is_zero_vec(ai) {
            continue;
        }
        for j in 0..m {
            let bj = &b[j * sub..(j + 1) * sub];
            if is_zero_vec(bj) {
                continue;
            }
            let p = mul_lvl(t, k - 1, ai, bj);
            add_assign_vec(&mut prod[i + j], &p);
        }
    }
    for i in (m..2 * m - 1).rev() {
        let c = std::mem::take(&mut prod[i]);
        if is_zero_vec(&c) {
            continue;
        }
        for j in 0..m {
            if is_zero_vec(&step.minpoly[j]) {
                continue;
            }
            let p = mul_lvl(t, k - 1, &c, &step.minpoly[j]);
            sub_assign_vec(&mut prod[i - m + j], &p);
        }
    }
    prod.truncate(m);
    prod.into_iter().flatten().collect()
}

type LvlPoly = Vec<Vec<Q>>;

fn lp_trim(p: &mut LvlPoly) {
    while p.last().is_some_and(|c| is_zero_vec(c)) {
        p.pop();
    }
}

fn lp_divrem(t: &TowerInner, k: usize, a: &LvlPoly, b: &LvlPoly) -> (LvlPoly, LvlPoly) {
    let sub = t.cum[k];
    let mut r = a.clone();
    lp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_lvl(t, k, &b[db]).expect("nonzero leading coefficient");
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quo = vec![zero_vec(sub); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = mul_lvl(t, k, &r[dr], &lead_inv);
        for j in 0..=db {
            let p = mul_lvl(t, k, &c, &b[j]);
            sub_assign_vec(&mut r[dr - db + j], &p);
        }
        quo[dr - db] = c;
        r.pop();
        lp_trim(&mut r);
    }
    (quo, r)
}

fn lp_mul(t: &TowerInner, k: usize, a: &LvlPoly, b: &LvlPoly) -> LvlPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let sub = t.cum[k];
    let mut out = vec![zero_vec(sub); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let p = mul_lvl(t, k, x, y);
            add_assign_vec(&mut out[i + j], &p);
        }
    }
    lp_trim(&mut out);
    out
}

fn lp_sub(a: &LvlPoly, b: &LvlPoly, sub: usize) -> LvlPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| zero_vec(sub));
        let y = b.get(i).cloned().unwrap_or_else(|| zero_vec(sub));
        out.push(sub_vec(&x, &y));
    }
    lp_trim(&mut out);
    out
}

fn inv_lvl(t: &TowerInner, k: usize, a: &[Q]) -> Option<Vec<Q>> {
    if is_zero_vec(a) {
        return None;
    }
    if k == 0 {
        return Some(vec![a[0].recip()]);
    }
    let sub = t.cum[k - 1];
    let m = t.steps[k - 1].deg;
    let mut r0: LvlPoly = t.steps[k - 1].minpoly.clone();
    let mut r1: LvlPoly = (0..m).map(|i| a[i * sub..(i + 1) * sub].to_vec()).collect();
    lp_trim(&mut r1);
    let mut s0: LvlPoly = Vec::new();
    let mut s1: LvlPoly = vec![{
        let mut one = zero_vec(sub);
        one[0] = Q::one();
        one
    }];
    while r1.len() > 1 {
        let (quo, rem) = lp_divrem(t, k - 1, &r0, &r1);
        let s2 = lp_sub(&s0, &lp_mul(t, k - 1, &quo, &s1), sub);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r1.is_empty() {
        return None;
    }
    let c = inv_lvl(t, k - 1, &r1[0])?;
    let mut out = Vec::with_capacity(m * sub);
    for i in 0..m {
        match s1.get(i) {
            Some(si) => out.extend(mul_lvl(t, k - 1, si, &c)),
            None => out.extend(zero_vec(sub)),
        }
    }
    Some(out)
}

#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    tower: FieldTower,
    c: Vec<Q>,
}

impl AlgebraicNumber {
    pub fn new(tower: &FieldTower, coords: Vec<Q>) -> Result<Self, NumError> {
        if coords.len() != tower.degree() {
            return Err(NumError::Parse(format!(
                "expected {} coordinates for {}, got {}",
                tower.degree(),
                tower.name(),
                coords.len()
            )));
        }
        Ok(AlgebraicNumber { tower: tower.clone(), c: coords })
    }

    /// Parses the `Display` form, e.g. `(1/2 - 3*i*cbrt2^2)`.
    pub fn parse(tower: &FieldTower, text: &str) -> Result<Self, NumError> {
        let err = || NumError::Parse(text.to_string());
        let body: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(&body);
        if body.is_empty() {
            return Err(err());
        }
        let mut c = vec![Q::zero(); tower.degree()];
        let mut terms: Vec<(bool, String)> = Vec::new();
        for ch in body.chars() {
            if ch == '+' || ch == '-' {
                terms.push((ch == '-', String::new()));
            } else {
                if terms.is_empty() {
                    terms.push((false, String::new()));
                }
                terms.last_mut().unwrap().1.push(ch);
            }
        }
        for (neg, t) in terms {
            if t.is_empty() {
                return Err(err());
            }
            let mut coef = Q::one();
            let mut exps = vec![0usize; tower.depth()];
            for (k, f) in t.split('*').enumerate() {
                if k == 0 {
                    if let Some(v) = parse_q(f) {
                        coef = v;
                        continue;
                    }
                }
                let (name, e) = match f.split_once('^') {
                    Some((n, e)) => (n, e.parse::<usize>().map_err(|_| err())?),
                    None => (f, 1),
                };
                let step = (0..tower.depth()).find(|&s| tower.step_name(s) == name).ok_or_else(err)?;
                if e >= tower.step_degree(step) {
                    return Err(err());
                }
                exps[step] += e;
            }
            let idx: usize = exps.iter().enumerate().map(|(s, &e)| e * tower.0.cum[s]).sum();
            if neg {
                coef = -coef;
            }
            c[idx] += coef;
        }
        Ok(AlgebraicNumber { tower: tower.clone(), c })
    }

    pub fn zero(tower: &FieldTower) -> Self {
        AlgebraicNumber { tower: tower.clone(), c: zero_vec(tower.degree()) }
    }

    pub fn one(tower: &FieldTower) -> Self {
        Self::from_q(tower, Q::one())
    }

    pub fn from_q(tower: &FieldTower, v: Q) -> Self {
        let mut c = zero_vec(tower.degree());
        c[0] = v;
        AlgebraicNumber { tower: tower.clone(), c }
    }

    pub fn from_int(tower: &FieldTower, v: i64) -> Self {
        Self::from_q(tower, qi(v))
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coords(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.c)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && is_zero_vec(&self.c[1..])
    }

    pub fn as_rational(&self) -> Option<Q> {
        if is_zero_vec(&self.c[1..]) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), NumError> {
        if self.tower.same(&other.tower) {
            Ok(())
        } else {
            Err(NumError::TowerMismatch(self.tower.name().to_string(), other.tower.name().to_string()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, NumError> {
        self.check(other)?;
        Ok(AlgebraicNumber { tower: self.tower.clone(), c: add_vec(&self.c, &other.c) })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, NumError> {
        self.check(other)?;
        Ok(AlgebraicNumber { tower: self.tower.clone(), c: sub_vec(&self.c, &other.c) })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, NumError> {
        self.check(other)?;
        let k = self.tower.depth();
        Ok(AlgebraicNumber { tower: self.tower.clone(), c: mul_lvl(&self.tower.0, k, &self.c, &other.c) })
    }

    pub fn inv(&self) -> Result<Self, NumError> {
        let k = self.tower.depth();
        inv_lvl(&self.tower.0, k, &self.c)
            .map(|c| AlgebraicNumber { tower: self.tower.clone(), c })
            .ok_or(NumError::DivisionByZero)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, NumError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, s: &Q) -> Self {
        AlgebraicNumber { tower: self.tower.clone(), c: self.c.iter().map(|x| x * s).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.tower);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Embeds into a tower that has `self.tower()` as a prefix.
    pub fn lift_to(&self, target: &FieldTower) -> Result<Self, NumError> {
        if !self.tower.is_prefix_of(target) {
            return Err(NumError::TowerMismatch(self.tower.name().to_string(), target.name().to_string()));
        }
        let mut c = zero_vec(target.degree());
        c[..self.c.len()].clone_from_slice(&self.c);
        Ok(AlgebraicNumber { tower: target.clone(), c })
    }

    /// Coefficients with respect to the top generator, over the parent tower.
    pub fn split_top(&self) -> Vec<AlgebraicNumber> {
        let parent = self.tower.parent().expect("split_top on Q").clone();
        let sub = parent.degree();
        self.c.chunks(sub).map(|ch| AlgebraicNumber { tower: parent.clone(), c: ch.to_vec() }).collect()
    }

    /// Inverse of `split_top`; `coeffs` may be shorter than the step degree.
    pub fn from_top(tower: &FieldTower, coeffs: &[AlgebraicNumber]) -> Self {
        let parent = tower.parent().expect("from_top on Q");
        let m = tower.step_degree(tower.depth() - 1);
        assert!(coeffs.len() <= m, "too many top coefficients");
        let mut c = Vec::with_capacity(tower.degree());
        for i in 0..m {
            match coeffs.get(i) {
                Some(x) => {
                    assert!(x.tower.same(parent));
                    c.extend(x.c.iter().cloned());
                }
                None => c.extend(zero_vec(parent.degree())),
            }
        }
        AlgebraicNumber { tower: tower.clone(), c }
    }

    /// Replaces the tower by a structurally equal one (shares the Arc).
    pub fn rebind(&self, tower: &FieldTower) -> Self {
        debug_assert!(self.tower.same(tower));
        AlgebraicNumber { tower: tower.clone(), c: self.c.clone() }
    }

    pub fn to_f64_parts(&self, gens: &[(f64, f64)]) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (idx, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (mut mr, mut mi) = (1.0f64, 0.0f64);
            let mut rest = idx;
            for (k, s) in self.tower.0.steps.iter().enumerate() {
                let e = rest % s.deg;
                rest /= s.deg;
                for _ in 0..e {
                    let (gr, gi) = gens[k];
                    let nr = mr * gr - mi * gi;
                    let ni = mr * gi + mi * gr;
                    mr = nr;
                    mi = ni;
                }
            }
            let v = q_to_f64(x);
            re += v * mr;
            im += v * mi;
        }
        (re, im)
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::MAX);
        let d = x.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.tower.same(&other.tower)
    }
}

impl Eq for AlgebraicNumber {}

impl Hash for AlgebraicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.cmp(&other.c).then_with(|| self.tower.name().cmp(other.tower.name()))
    }
}

fn parse_q(s: &str) -> Option<Q> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (idx, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mono = self.tower.monomial_name(idx);
            let neg = x.is_negative();
            let abs = x.abs();
            let body = if mono.is_empty() {
                fmt_q(&abs)
            } else if abs.is_one() {
                mono
            } else {
                format!("{}*{}", fmt_q(&abs), mono)
            };
            if terms.is_empty() {
                terms.push(if neg { format!("-{}", body) } else { body });
            } else {
                terms.push(format!("{} {}", if neg { "-" } else { "+" }, body));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else if terms.len() == 1 {
            write!(f, "{}", terms[0])
        } else {
            write!(f, "({})", terms.join(" "))
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<'a> $tr<&'a AlgebraicNumber> for &'a AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, rhs: &'a AlgebraicNumber) -> AlgebraicNumber {
                self.$try(rhs).expect(concat!("AlgebraicNumber::", stringify!($m)))
            }
        }
        impl $tr<AlgebraicNumber> for AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, rhs: AlgebraicNumber) -> AlgebraicNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a AlgebraicNumber> for AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, rhs: &'a AlgebraicNumber) -> AlgebraicNumber {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        AlgebraicNumber { tower: self.tower.clone(), c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Neg for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        -&self
    }
}
