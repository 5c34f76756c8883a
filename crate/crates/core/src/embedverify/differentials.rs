//! Holomorphic differentials `x^m (x-1)^n dx / y^l` on `y^N = x^a (x-1)^b`.

use num_integer::{gcd, Integer};
use serde::Serialize;

use super::VerifyError;
use crate::numkernel::{q_mu, AlgebraicNumber, Polynomial};
use crate::ratmap::RationalFunction;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DifferentialBasis {
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub genus: u32,
    /// `(m, n, l)` for `x^m (x-1)^n dx / y^l`, ordered.
    pub forms: Vec<(u32, u32, u32)>,
    /// `e` with `(x, y) ↦ (x, μ y)` acting on each form by `μ^e`.
    pub eigen_exponents: Vec<u32>,
    /// Exponent of the product of the eigenvalues.
    pub product_exponent: u32,
    pub special: bool,
}

impl DifferentialBasis {
    pub fn render(&self) -> Vec<String> {
        self.forms
            .iter()
            .map(|&(m, n, l)| {
                let x = match m {
                    0 => String::new(),
                    1 => "x ".to_string(),
                    _ => format!("x^{m} "),
                };
                let x1 = match n {
                    0 => String::new(),
                    1 => "(x-1) ".to_string(),
                    _ => format!("(x-1)^{n} "),
                };
                format!("{x}{x1}dx/y^{l}")
            })
            .collect()
    }
}

/// Basis of holomorphic differentials from the valuations at the three branch points.
/// Requires `a`, `b` and `a + b` prime to `N` (all three points totally ramified).
pub fn superelliptic_differentials(n: u32, a: u32, b: u32) -> Result<DifferentialBasis, VerifyError> {
    if n < 2 || a == 0 || b == 0 {
        return Err(VerifyError::Differentials(format!("need N >= 2 and a, b >= 1, got N = {n}, a = {a}, b = {b}")));
    }
    for (what, v) in [("a", a), ("b", b), ("a + b", a + b)] {
        if gcd(v, n) != 1 {
            return Err(VerifyError::Differentials(format!("{what} = {v} is not prime to N = {n}")));
        }
    }
    let (n_, a_, b_) = (n as i64, a as i64, b as i64);
    let mut forms = Vec::new();
    for l in 1..n_ {
        // vanishing orders forced at x = 0 and x = 1, and the degree allowed at ∞
        let c0 = Integer::div_ceil(&(l * a_ + 1 - n_).max(0), &n_);
        let c1 = Integer::div_ceil(&(l * b_ + 1 - n_).max(0), &n_);
        let top = (l * (a_ + b_) - n_ - 1).div_euclid(n_);
        for m in c0..=top - c1 {
            forms.push((m as u32, c1 as u32, l as u32));
        }
    }
    forms.sort();
    let genus = (n - 1) / 2;
    if forms.len() as u32 != genus {
        return Err(VerifyError::Differentials(format!("found {} forms for genus {genus}", forms.len())));
    }
    let eigen_exponents: Vec<u32> = forms.iter().map(|&(_, _, l)| (n - l % n) % n).collect();
    let product_exponent = eigen_exponents.iter().sum::<u32>() % n;
    Ok(DifferentialBasis { n, a, b, genus, forms, eigen_exponents, product_exponent, special: product_exponent == 0 })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct K4Equivalence {
    pub map: String,
    /// The pulled-back curve equation matches.
    pub curve_identity: bool,
    /// Forms of the `k = 2` curve pulled back to the `k = 4` curve.
    pub transported: Vec<(u32, u32, u32)>,
    /// `transported` equals the basis computed directly for `k = 4`.
    pub matches_direct: bool,
}

/// `(x, y) ↦ (1/x, -μ y / x)` from `y^7 = x^4 (x - 1)` to `v^7 = u^2 (u - 1)`.
pub fn k4_equivalence() -> Result<K4Equivalence, VerifyError> {
    let t = q_mu();
    let x = RationalFunction::identity(&t);
    let one = RationalFunction::constant(&AlgebraicNumber::one(&t));
    let mu = t.top_generator();
    let u = one.div(&x)?;
    // v^7 = (-μ)^7 y^7 / x^7 with y^7 = x^4 (x - 1)
    let y7 = RationalFunction::from_poly(Polynomial::from_ints(&t, &[0, 0, 0, 0, -1, 1]));
    let c = (-&mu).pow(7);
    let v7 = RationalFunction::constant(&c).mul(&y7).div(&x.pow(7))?;
    let rhs = u.pow(2).mul(&u.sub(&one));
    let curve_identity = v7 == rhs;
    // u^m du / v^l = const · x^(l - m - 2) dx / y^l
    let k2 = superelliptic_differentials(7, 2, 1)?;
    let mut transported: Vec<(u32, u32, u32)> = k2.forms.iter().map(|&(m, _, l)| (l - m - 2, 0, l)).collect();
    transported.sort();
    let direct = superelliptic_differentials(7, 4, 1)?;
    Ok(K4Equivalence {
        map: "(x, y) -> (1/x, -mu*y/x)".into(),
        curve_identity,
        matches_direct: transported == direct.forms,
        transported,
    })
}
