use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::error::NumError;
use super::field::{AlgebraicNumber, FieldTower, Q};

/// Univariate polynomial over a tower, lowest degree first, no trailing zeros.
#[derive(Clone, Debug)]
pub struct Polynomial {
    tower: FieldTower,
    c: Vec<AlgebraicNumber>,
}

impl Polynomial {
    pub fn new(tower: &FieldTower, mut c: Vec<AlgebraicNumber>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        for x in &c {
            assert!(x.tower().same(tower), "coefficient tower mismatch");
        }
        Polynomial { tower: tower.clone(), c }
    }

    pub fn zero(tower: &FieldTower) -> Self {
        Polynomial { tower: tower.clone(), c: Vec::new() }
    }

    pub fn one(tower: &FieldTower) -> Self {
        Self::constant(&AlgebraicNumber::one(tower))
    }

    pub fn constant(a: &AlgebraicNumber) -> Self {
        Self::new(a.tower(), vec![a.clone()])
    }

    pub fn x(tower: &FieldTower) -> Self {
        Self::new(tower, vec![AlgebraicNumber::zero(tower), AlgebraicNumber::one(tower)])
    }

    pub fn monomial(a: &AlgebraicNumber, n: usize) -> Self {
        let t = a.tower();
        let mut c = vec![AlgebraicNumber::zero(t); n];
        c.push(a.clone());
        Self::new(t, c)
    }

    /// `x - a`
    pub fn linear_root(a: &AlgebraicNumber) -> Self {
        Self::new(a.tower(), vec![-a, AlgebraicNumber::one(a.tower())])
    }

    pub fn from_q(tower: &FieldTower, c: &[Q]) -> Self {
        Self::new(tower, c.iter().map(|x| AlgebraicNumber::from_q(tower, x.clone())).collect())
    }

    pub fn from_ints(tower: &FieldTower, c: &[i64]) -> Self {
        Self::new(tower, c.iter().map(|&x| AlgebraicNumber::from_int(tower, x)).collect())
    }

    pub fn from_roots(tower: &FieldTower, roots: &[(AlgebraicNumber, usize)]) -> Self {
        let mut p = Self::one(tower);
        for (r, m) in roots {
            p = &p * &Self::linear_root(r).pow(*m);
        }
        p
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coeffs(&self) -> &[AlgebraicNumber] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<AlgebraicNumber> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> AlgebraicNumber {
        self.c.get(i).cloned().unwrap_or_else(|| AlgebraicNumber::zero(&self.tower))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> AlgebraicNumber {
        self.c.last().cloned().unwrap_or_else(|| AlgebraicNumber::zero(&self.tower))
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|x| x.is_one())
    }

    pub fn scale(&self, a: &AlgebraicNumber) -> Self {
        Self::new(&self.tower, self.c.iter().map(|x| x * a).collect())
    }

    pub fn scale_q(&self, s: &Q) -> Self {
        Self::new(&self.tower, self.c.iter().map(|x| x.scale(s)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.lc().inv().unwrap();
        self.scale(&inv)
    }

    pub fn try_divrem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial), NumError> {
        if d.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        if !self.tower.same(&d.tower) {
            return Err(NumError::TowerMismatch(self.tower.name().into(), d.tower.name().into()));
        }
        let dd = d.deg();
        if self.c.len() <= dd {
            return Ok((Self::zero(&self.tower), self.clone()));
        }
        let inv = d.lc().inv()?;
        let mut r = self.c.clone();
        let mut quo = vec![AlgebraicNumber::zero(&self.tower); r.len() - dd];
        let monic_d = d.lc().is_one();
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let coef = if monic_d { r[i].clone() } else { &r[i] * &inv };
            for j in 0..dd {
                if !d.c[j].is_zero() {
                    r[i - dd + j] = &r[i - dd + j] - &(&coef * &d.c[j]);
                }
            }
            r[i] = AlgebraicNumber::zero(&self.tower);
            quo[i - dd] = coef;
        }
        r.truncate(dd);
        Ok((Self::new(&self.tower, quo), Self::new(&self.tower, r)))
    }

    pub fn divrem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        self.try_divrem(d).expect("polynomial division")
    }

    pub fn rem(&self, d: &Polynomial) -> Polynomial {
        self.divrem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.try_divrem(d).ok()?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        while !r1.is_zero() {
            let r = r0.rem(&r1);
            r0 = r1;
            r1 = r.monic();
        }
        r0.monic()
    }

    /// Returns `(g, s, t)` with `s a + t b = g` and `g` monic (or zero).
    pub fn ext_gcd(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
        let t = &a.tower;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(t), Self::zero(t));
        let (mut t0, mut t1) = (Self::zero(t), Self::one(t));
        while !r1.is_zero() {
            let (qq, r) = r0.divrem(&r1);
            let s2 = &s0 - &(&qq * &s1);
            let t2 = &t0 - &(&qq * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Polynomial {
        if self.c.len() <= 1 {
            return Self::zero(&self.tower);
        }
        let c = self.c.iter().enumerate().skip(1).map(|(i, x)| x.scale(&Q::from_integer((i as i64).into()))).collect();
        Self::new(&self.tower, c)
    }

    pub fn eval(&self, x: &AlgebraicNumber) -> AlgebraicNumber {
        let mut acc = AlgebraicNumber::zero(&self.tower);
        for c in self.c.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self(g(x))`
    pub fn compose(&self, g: &Polynomial) -> Polynomial {
        let mut acc = Self::zero(&self.tower);
        for c in self.c.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c);
        }
        acc
    }

    /// `self(x + a)`
    pub fn shift(&self, a: &AlgebraicNumber) -> Polynomial {
        self.compose(&Self::new(&self.tower, vec![a.clone(), AlgebraicNumber::one(&self.tower)]))
    }

    /// `x^n self(1/x)` with `n = deg self`.
    pub fn reverse(&self) -> Polynomial {
        let mut c = self.c.clone();
        c.reverse();
        Self::new(&self.tower, c)
    }

    pub fn pow(&self, mut e: usize) -> Polynomial {
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

    /// Yun's algorithm: `self = lc * prod f_i^i` with squarefree, pairwise coprime monic `f_i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Polynomial, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = Self::gcd(&f, &df);
        let mut b = f.exact_div(&a).unwrap();
        let mut c = df.exact_div(&a).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            a = Self::gcd(&b, &d);
            if !a.is_one() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).unwrap();
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&a).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> Polynomial {
        if self.is_constant() {
            return Self::one(&self.tower);
        }
        let g = Self::gcd(self, &self.derivative());
        self.exact_div(&g).unwrap().monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.is_constant() || Self::gcd(self, &self.derivative()).is_one()
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &AlgebraicNumber) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Self::linear_root(a);
        let mut p = self.clone();
        let mut m = 0;
        while let Some(qq) = p.exact_div(&lin) {
            p = qq;
            m += 1;
        }
        m
    }

    pub fn lift_to(&self, tower: &FieldTower) -> Result<Polynomial, NumError> {
        let c = self.c.iter().map(|x| x.lift_to(tower)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(tower, c))
    }

    pub fn rebind(&self, tower: &FieldTower) -> Polynomial {
        Polynomial { tower: tower.clone(), c: self.c.iter().map(|x| x.rebind(tower)).collect() }
    }

    pub fn map_coeffs<F: Fn(&AlgebraicNumber) -> AlgebraicNumber>(&self, tower: &FieldTower, f: F) -> Polynomial {
        Self::new(tower, self.c.iter().map(f).collect())
    }

    /// Rational coefficients when every coefficient lies in Q.
    pub fn as_rational(&self) -> Option<Vec<Q>> {
        self.c.iter().map(|x| x.as_rational()).collect()
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.c.is_empty() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            let cs = c.to_string();
            let term = if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{}", mono)
            } else {
                format!("{}*{}", cs, mono)
            };
            terms.push(term);
        }
        let mut s = String::new();
        for (k, t) in terms.iter().enumerate() {
            if k == 0 {
                s.push_str(t);
            } else if let Some(rest) = t.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(t);
            }
        }
        s
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && (self.c.is_empty() || self.tower.same(&other.tower))
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("X"))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), rhs.c.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Polynomial::new(&self.tower, c)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), rhs.c.get(i)) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            })
            .collect();
        Polynomial::new(&self.tower, c)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        if self.c.is_empty() || rhs.c.is_empty() {
            return Polynomial::zero(&self.tower);
        }
        let mut c = vec![AlgebraicNumber::zero(&self.tower); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Polynomial::new(&self.tower, c)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(&self.tower, self.c.iter().map(|x| -x).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &'a Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// Rational-coefficient helpers used by the factoring code.
pub fn q_is_integer_vec(c: &[Q]) -> bool {
    c.iter().all(|x| x.is_integer())
}

pub fn q_one() -> Q {
    Q::one()
}

pub fn q_zero() -> Q {
    Q::zero()
}
