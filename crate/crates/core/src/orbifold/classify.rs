//! Cyclic actions on 3-tori with finite fixed sets, and the volume-preserving filter.

use serde::Serialize;

use super::OrbifoldError;
use crate::numkernel::euler_phi;

/// Orders admitted by `φ(d) | 6`.
pub const CLASSIFIED_ORDERS: [u64; 7] = [3, 4, 6, 7, 9, 14, 18];

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassRow {
    pub d: u64,
    pub torus: String,
    pub generator: String,
    /// Tangent eigenvalues as exponents of `ζ_d`.
    pub exponents: [u64; 3],
    /// False for the classes whose torus is left undetermined.
    pub determined: bool,
    /// `k` with eigenvalue product `ζ_d^k`.
    pub product_exponent: u64,
    pub special: bool,
    pub witness: String,
    /// Number of non-isomorphic tori for this CM type, `C(k + h_d - 1, k)`.
    pub torus_count: Option<u64>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AppendixClassification {
    pub orders: Vec<u64>,
    pub rows: Vec<ClassRow>,
    pub special_pairs: Vec<String>,
}

/// Orders `d >= 3` with `φ(d) | 6`. `φ(d) >= sqrt(d/2)` bounds the search.
pub fn admissible_orders() -> Vec<u64> {
    (3..=72).filter(|&d| 6 % euler_phi(d) == 0).collect()
}

/// Class number of `Q(ζ_d)` when `φ(d) <= 20`, where it is always 1.
pub fn cyclotomic_class_number(d: u64) -> Option<u64> {
    (d >= 1 && euler_phi(d) <= 20).then_some(1)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `C(k + h - 1, k)` for a classified order `d`.
pub fn abelian_variety_count(d: u64, k: u64, h: u64) -> Result<u64, OrbifoldError> {
    if !CLASSIFIED_ORDERS.contains(&d) {
        return Err(OrbifoldError::UnsupportedOrder(d));
    }
    Ok(binomial(k + h - 1, k))
}

struct Template {
    d: u64,
    torus: &'static str,
    generator: &'static str,
    /// Exponents over `ζ_base`; a negated generator doubles the order.
    base: u64,
    base_exp: [u64; 3],
    negate: bool,
    determined: bool,
}

const TABLE: &[Template] = &[
    Template { d: 3, torus: "E(w)^3", generator: "m_w^3", base: 3, base_exp: [1, 1, 1], negate: false, determined: true },
    Template { d: 3, torus: "*", generator: "diag[w, w, w^2]", base: 3, base_exp: [1, 1, 2], negate: false, determined: false },
    Template { d: 4, torus: "E(i)^3", generator: "m_i^3", base: 4, base_exp: [1, 1, 1], negate: false, determined: true },
    Template { d: 4, torus: "**", generator: "diag[i, i, -i]", base: 4, base_exp: [1, 1, 3], negate: false, determined: false },
    Template { d: 6, torus: "E(w)^3", generator: "(-m_w)^3", base: 3, base_exp: [1, 1, 1], negate: true, determined: true },
    Template { d: 6, torus: "*", generator: "diag[-w, -w, -w^2]", base: 3, base_exp: [1, 1, 2], negate: true, determined: false },
    Template { d: 7, torus: "A(Q(z7), {psi1, psi2, psi3})", generator: "m_z7", base: 7, base_exp: [1, 2, 3], negate: false, determined: true },
    Template { d: 7, torus: "A(Q(z7), {psi1, psi2, psi4})", generator: "m_z7", base: 7, base_exp: [1, 2, 4], negate: false, determined: true },
    Template { d: 9, torus: "A(Q(z9), {psi1, psi2, psi4})", generator: "m_z9", base: 9, base_exp: [1, 2, 4], negate: false, determined: true },
    Template { d: 9, torus: "A(Q(z9), {psi1, psi4, psi7})", generator: "m_z9", base: 9, base_exp: [1, 4, 7], negate: false, determined: true },
    Template { d: 14, torus: "A(Q(z7), {psi1, psi2, psi3})", generator: "-m_z7", base: 7, base_exp: [1, 2, 3], negate: true, determined: true },
    Template { d: 14, torus: "A(Q(z7), {psi1, psi2, psi4})", generator: "-m_z7", base: 7, base_exp: [1, 2, 4], negate: true, determined: true },
    Template { d: 18, torus: "A(Q(z9), {psi1, psi2, psi4})", generator: "-m_z9", base: 9, base_exp: [1, 2, 4], negate: true, determined: true },
    Template { d: 18, torus: "A(Q(z9), {psi1, psi4, psi7})", generator: "-m_z9", base: 9, base_exp: [1, 4, 7], negate: true, determined: true },
];

fn exponents(t: &Template) -> [u64; 3] {
    // ζ_base = ζ_d^(d/base), and -1 = ζ_d^(d/2)
    let scale = t.d / t.base;
    let shift = if t.negate { t.d / 2 } else { 0 };
    t.base_exp.map(|a| (a * scale + shift) % t.d)
}

/// The classification table with per-row eigenvalue-product witnesses.
/// `class_number(d)` supplies `h_d`.
pub fn classify_appendix(class_number: impl Fn(u64) -> u64) -> Result<AppendixClassification, OrbifoldError> {
    let orders = admissible_orders();
    let mut rows = Vec::new();
    for t in TABLE {
        if !orders.contains(&t.d) {
            return Err(OrbifoldError::UnsupportedOrder(t.d));
        }
        let exps = exponents(t);
        let p = exps.iter().sum::<u64>() % t.d;
        let witness = if p == 0 { "1".to_string() } else { format!("z{}^{}", t.d, p) };
        let torus_count = if t.determined {
            let k = 6 / euler_phi(t.d);
            Some(abelian_variety_count(t.d, k, class_number(t.d))?)
        } else {
            None
        };
        rows.push(ClassRow {
            d: t.d,
            torus: t.torus.into(),
            generator: t.generator.into(),
            exponents: exps,
            determined: t.determined,
            product_exponent: p,
            special: p == 0,
            witness,
            torus_count,
        });
    }
    let special_pairs = rows.iter().filter(|r| r.special).map(|r| format!("({}, <{}>)", r.torus, r.generator)).collect();
    Ok(AppendixClassification { orders, rows, special_pairs })
}
