//! Resultants. The public convention is `resultant(x - a, x - b) = b - a`,
//! i.e. `resultant(p, q) = Res(q, p)` in the usual Sylvester ordering.

use super::error::NumError;
use super::field::{AlgebraicNumber, FieldTower, Q};
use super::poly::Polynomial;

/// Sylvester resultant with `p` first, computed by the Euclidean remainder sequence.
pub fn sylvester_resultant(p: &Polynomial, q: &Polynomial) -> Result<AlgebraicNumber, NumError> {
    if p.is_zero() || q.is_zero() {
        return Err(NumError::ZeroPolynomial);
    }
    let t = p.tower().clone();
    let mut f = p.clone();
    let mut g = q.clone();
    let mut acc = AlgebraicNumber::one(&t);
    loop {
        let m = f.deg();
        let n = g.deg();
        if n == 0 {
            return Ok(&acc * &g.lc().pow(m as u64));
        }
        if m == 0 {
            return Ok(&acc * &f.lc().pow(n as u64));
        }
        let r = f.rem(&g);
        if r.is_zero() {
            return Ok(AlgebraicNumber::zero(&t));
        }
        let k = r.deg();
        // Res(f,g) = (-1)^{mn} lc(g)^{m-k} Res(g, r)
        let mut factor = g.lc().pow((m - k) as u64);
        if (m * n) % 2 == 1 {
            factor = -&factor;
        }
        acc = &acc * &factor;
        f = g;
        g = r;
    }
}

/// Resultant under the documented convention `res(x - a, x - b) = b - a`.
pub fn resultant(p: &Polynomial, q: &Polynomial) -> Result<AlgebraicNumber, NumError> {
    sylvester_resultant(q, p)
}

/// Sylvester resultant of coefficient lists with formal degrees `p.len()-1`, `q.len()-1`.
/// Leading entries may vanish.
pub fn formal_resultant(tower: &FieldTower, p: &[AlgebraicNumber], q: &[AlgebraicNumber]) -> AlgebraicNumber {
    let m = p.len().saturating_sub(1);
    let n = q.len().saturating_sub(1);
    let pp = Polynomial::new(tower, p.to_vec());
    let qq = Polynomial::new(tower, q.to_vec());
    if pp.is_zero() || qq.is_zero() {
        return AlgebraicNumber::zero(tower);
    }
    let (m1, n1) = (pp.deg(), qq.deg());
    if m1 < m && n1 < n {
        return AlgebraicNumber::zero(tower);
    }
    let base = sylvester_resultant(&pp, &qq).unwrap();
    if m1 < m {
        // Res_{m,n}(p,q) = (-1)^{n(m-m1)} q_n^{m-m1} Res_{m1,n}(p,q)
        let mut f = qq.lc().pow((m - m1) as u64);
        if (n * (m - m1)) % 2 == 1 {
            f = -&f;
        }
        &f * &base
    } else if n1 < n {
        let f = pp.lc().pow((n - n1) as u64);
        &f * &base
    } else {
        base
    }
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn determinant(tower: &FieldTower, mut a: Vec<Vec<AlgebraicNumber>>) -> AlgebraicNumber {
    let n = a.len();
    let mut det = AlgebraicNumber::one(tower);
    for col in 0..n {
        let piv = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(r) => r,
            None => return AlgebraicNumber::zero(tower),
        };
        if piv != col {
            a.swap(piv, col);
            det = -&det;
        }
        let inv = a[col][col].inv().unwrap();
        det = &det * &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] = &a[r][c] - &v;
            }
        }
    }
    det
}

/// The Sylvester matrix of `p` (formal degree m) and `q` (formal degree n), highest coefficients first.
pub fn sylvester_matrix(tower: &FieldTower, p: &[AlgebraicNumber], q: &[AlgebraicNumber]) -> Vec<Vec<AlgebraicNumber>> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![AlgebraicNumber::zero(tower); size];
        for (k, c) in p.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![AlgebraicNumber::zero(tower); size];
        for (k, c) in q.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Polynomial in two variables: `coeffs[k]` is the coefficient of `Z^k`, a polynomial in `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    pub tower: FieldTower,
    pub coeffs: Vec<Polynomial>,
}

impl BiPoly {
    pub fn new(tower: &FieldTower, mut coeffs: Vec<Polynomial>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { tower: tower.clone(), coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_z(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn deg_x(&self) -> usize {
        self.coeffs.iter().map(|c| c.deg()).max().unwrap_or(0)
    }

    /// Substitute `X = x`, giving a polynomial in `Z`.
    pub fn eval_x(&self, x: &AlgebraicNumber) -> Vec<AlgebraicNumber> {
        self.coeffs.iter().map(|c| c.eval(x)).collect()
    }

    /// Reduce every coefficient modulo `m(X)`.
    pub fn rem_x(&self, m: &Polynomial) -> BiPoly {
        BiPoly::new(&self.tower, self.coeffs.iter().map(|c| c.rem(m)).collect())
    }

    /// Build `(N(X) D(Z) - N(Z) D(X)) / (X - Z)`.
    pub fn separation_quotient(n: &Polynomial, d: &Polynomial) -> BiPoly {
        let t = n.tower().clone();
        let len = n.coeffs().len().max(d.coeffs().len());
        let nc = |i: usize| n.coeff(i);
        let dc = |i: usize| d.coeff(i);
        // F(X,Z) = sum_{i,k} (n_i d_k - n_k d_i) X^i Z^k, antisymmetric.
        let mut f = vec![vec![AlgebraicNumber::zero(&t); len]; len];
        for i in 0..len {
            for k in 0..len {
                f[i][k] = &(&nc(i) * &dc(k)) - &(&nc(k) * &dc(i));
            }
        }
        // divide by X - Z: h with (X - Z) h = F. Process Z-degree from the top.
        // Write F = sum_k F_k(X) Z^k, h = sum_k h_k(X) Z^k, then F_k = X h_k - h_{k-1}.
        let fk: Vec<Polynomial> = (0..len).map(|k| Polynomial::new(&t, (0..len).map(|i| f[i][k].clone()).collect())).collect();
        let x = Polynomial::x(&t);
        let mut h = vec![Polynomial::zero(&t); len.saturating_sub(1)];
        // h_{len-2} = -F_{len-1}, h_{k-1} = X h_k - F_k
        if len >= 2 {
            h[len - 2] = -&fk[len - 1];
            for k in (1..len - 1).rev() {
                h[k - 1] = &(&x * &h[k]) - &fk[k];
            }
            debug_assert!((&(&x * &h[0]) - &fk[0]).is_zero());
        }
        BiPoly::new(&t, h)
    }
}

/// `Res_Z(f, g)` as a polynomial in `X` with formal `Z`-degrees given by the inputs,
/// computed by evaluation at rational points and Newton interpolation.
pub fn resultant_z(f: &BiPoly, g: &BiPoly) -> Polynomial {
    let t = f.tower.clone();
    if f.is_zero() || g.is_zero() {
        return Polynomial::zero(&t);
    }
    let m = f.deg_z();
    let n = g.deg_z();
    let bound = n * f.deg_x() + m * g.deg_x();
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    for k in 0..=bound {
        let x = AlgebraicNumber::from_q(&t, Q::from_integer((k as i64).into()));
        let fp = f.eval_x(&x);
        let gp = g.eval_x(&x);
        ys.push(formal_resultant(&t, &fp, &gp));
        xs.push(x);
    }
    interpolate(&t, &xs, &ys)
}

/// Newton interpolation through distinct nodes.
pub fn interpolate(tower: &FieldTower, xs: &[AlgebraicNumber], ys: &[AlgebraicNumber]) -> Polynomial {
    let n = xs.len();
    let mut dd: Vec<AlgebraicNumber> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - j];
            dd[i] = &num * &den.inv().expect("interpolation nodes must be distinct");
        }
    }
    let mut p = Polynomial::constant(&dd[n - 1]);
    for i in (0..n - 1).rev() {
        p = &(&p * &Polynomial::linear_root(&xs[i])) + &Polynomial::constant(&dd[i]);
    }
    let _ = tower;
    p
}
