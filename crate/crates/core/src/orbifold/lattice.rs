//! Small dense integer matrices: products, determinants, Smith normal form,
//! characteristic polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::numkernel::{FieldTower, Polynomial, Q};

pub type IMat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = b[0].len();
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn pow(a: &IMat, e: u32) -> IMat {
    let mut r = identity(a.len());
    for _ in 0..e {
        r = mul(&r, a);
    }
    r
}

pub fn sub_identity(a: &IMat) -> IMat {
    let mut r = a.clone();
    for (i, row) in r.iter_mut().enumerate() {
        row[i] -= 1;
    }
    r
}

/// Multiplicative order, if at most `bound`.
pub fn order(a: &IMat, bound: u32) -> Option<u32> {
    let id = identity(a.len());
    let mut p = a.clone();
    for k in 1..=bound {
        if p == id {
            return Some(k);
        }
        p = mul(&p, a);
    }
    None
}

/// Fraction-free Bareiss elimination.
pub fn det(a: &IMat) -> i128 {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else { return 0 };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Diagonal of the Smith normal form (nonnegative, each dividing the next).
pub fn smith_diagonal(a: &IMat) -> Vec<i128> {
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = m.len();
    let cols = m[0].len();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.extend(std::iter::repeat_n(0, rows.min(cols) - t));
                return diag;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = Integer::div_floor(&m[i][t], &p);
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = Integer::div_floor(&m[t][j], &p);
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        m[t][j] += m[i][j];
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    diag
}

/// `det(x I - A)` over Q by Faddeev–LeVerrier.
pub fn charpoly(a: &IMat) -> Polynomial {
    let n = a.len();
    let aq: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect()).collect();
    let mut c = vec![Q::zero(); n + 1];
    c[n] = Q::one();
    let mut mk: Vec<Vec<Q>> = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Q::zero();
                for l in 0..n {
                    s += &aq[i][l] * &mk[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += &c[n - k + 1];
        }
        let mut tr = Q::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &aq[i][l] * &next[l][i];
            }
        }
        c[n - k] = -tr / Q::from_integer(BigInt::from(k as i64));
        mk = next;
    }
    Polynomial::from_q(&FieldTower::rationals(), &c)
}
