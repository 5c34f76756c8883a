//! Sparse multivariate polynomials in lex order (variable 0 is the largest).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::field::{AlgebraicNumber, FieldTower};
use super::poly::Polynomial;

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    tower: FieldTower,
    nvars: usize,
    terms: BTreeMap<Monomial, AlgebraicNumber>,
}

pub fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_div(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn mono_deg(a: &[u32]) -> u32 {
    a.iter().sum()
}

impl MPoly {
    pub fn zero(tower: &FieldTower, nvars: usize) -> Self {
        MPoly { tower: tower.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(a: &AlgebraicNumber, nvars: usize) -> Self {
        let mut p = Self::zero(a.tower(), nvars);
        p.add_term(vec![0; nvars], a.clone());
        p
    }

    pub fn one(tower: &FieldTower, nvars: usize) -> Self {
        Self::constant(&AlgebraicNumber::one(tower), nvars)
    }

    pub fn var(tower: &FieldTower, nvars: usize, k: usize) -> Self {
        let mut m = vec![0; nvars];
        m[k] = 1;
        let mut p = Self::zero(tower, nvars);
        p.add_term(m, AlgebraicNumber::one(tower));
        p
    }

    pub fn from_terms(tower: &FieldTower, nvars: usize, terms: Vec<(Monomial, AlgebraicNumber)>) -> Self {
        let mut p = Self::zero(tower, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Univariate polynomial placed in variable `k`.
    pub fn from_univariate(p: &Polynomial, nvars: usize, k: usize) -> Self {
        let mut out = Self::zero(p.tower(), nvars);
        for (i, c) in p.coeffs().iter().enumerate() {
            let mut m = vec![0; nvars];
            m[k] = i as u32;
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &AlgebraicNumber)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn add_term(&mut self, m: Monomial, c: AlgebraicNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn lm(&self) -> &Monomial {
        self.terms.keys().next_back().expect("leading monomial of zero")
    }

    pub fn lc(&self) -> &AlgebraicNumber {
        self.terms.values().next_back().expect("leading coefficient of zero")
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| mono_deg(m)).max().unwrap_or(0)
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|m| m[k]).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&k| self.degree_in(k) > 0).collect()
    }

    pub fn scale(&self, a: &AlgebraicNumber) -> Self {
        if a.is_zero() {
            return Self::zero(&self.tower, self.nvars);
        }
        MPoly { tower: self.tower.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * a)).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv().unwrap())
    }

    pub fn mul_term(&self, m: &[u32], a: &AlgebraicNumber) -> Self {
        MPoly {
            tower: self.tower.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (mono_mul(k, m), c * a)).collect(),
        }
    }

    /// `self -= a * m * g`, in place.
    pub fn sub_mul_term_assign(&mut self, g: &MPoly, m: &[u32], a: &AlgebraicNumber) {
        for (k, c) in &g.terms {
            self.add_term(mono_mul(k, m), -&(c * a));
        }
    }

    pub fn pop_leading(&mut self) -> Option<(Monomial, AlgebraicNumber)> {
        self.terms.pop_last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly { tower: self.tower.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.tower, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.tower, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `x_k = v`, keeping the variable count.
    pub fn subst(&self, k: usize, v: &AlgebraicNumber) -> Self {
        let mut out = Self::zero(&self.tower, self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2[k];
            m2[k] = 0;
            out.add_term(m2, c * &v.pow(e as u64));
        }
        out
    }

    /// Substitutes `x_k = q` for a polynomial `q`.
    pub fn subst_poly(&self, k: usize, q: &MPoly) -> Self {
        let mut out = Self::zero(&self.tower, self.nvars);
        let maxe = self.degree_in(k);
        let mut pows = vec![Self::one(&self.tower, self.nvars)];
        for i in 1..=maxe as usize {
            pows.push(pows[i - 1].mul(q));
        }
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2[k] as usize;
            m2[k] = 0;
            out = out.add(&pows[e].mul_term(&m2, c));
        }
        out
    }

    pub fn eval(&self, vals: &[AlgebraicNumber]) -> AlgebraicNumber {
        let mut acc = AlgebraicNumber::zero(&self.tower);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = &t * &vals[k].pow(e as u64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Lifts coefficients into a tower extending the current one.
    pub fn lift_to(&self, t: &FieldTower) -> Self {
        MPoly {
            tower: t.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.lift_to(t).expect("tower prefix"))).collect(),
        }
    }

    /// Reorders/relabels variables: old variable `k` becomes `perm[k]` in a ring of `nvars` variables.
    pub fn remap(&self, nvars: usize, perm: &[usize]) -> Self {
        let mut out = Self::zero(&self.tower, nvars);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; nvars];
            for (k, &e) in m.iter().enumerate() {
                if e > 0 {
                    m2[perm[k]] += e;
                }
            }
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Univariate view when only variable `k` occurs.
    pub fn to_univariate(&self, k: usize) -> Option<Polynomial> {
        if self.support().iter().any(|&v| v != k) {
            return None;
        }
        let n = self.degree_in(k) as usize;
        let mut c = vec![AlgebraicNumber::zero(&self.tower); n + 1];
        for (m, v) in &self.terms {
            c[m[k] as usize] = v.clone();
        }
        Some(Polynomial::new(&self.tower, c))
    }

    /// Coefficients with respect to variable `k` (index = power).
    pub fn coeffs_in(&self, k: usize) -> Vec<MPoly> {
        let n = self.degree_in(k) as usize;
        let mut out = vec![Self::zero(&self.tower, self.nvars); n + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2[k] as usize;
            m2[k] = 0;
            out[e].add_term(m2, c.clone());
        }
        out
    }

    pub fn fmt_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| if e == 1 { names[k].to_string() } else { format!("{}^{}", names[k], e) })
                .collect();
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(r) if !r.starts_with('(') => (true, r.to_string()),
                _ => (false, cs),
            };
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono.join("*")
            } else {
                format!("{}*{}", body, mono.join("*"))
            };
            if i == 0 {
                if neg {
                    s.push('-');
                }
                s.push_str(&term);
            } else {
                let _ = write!(s, " {} {}", if neg { "-" } else { "+" }, term);
            }
        }
        s
    }
}
