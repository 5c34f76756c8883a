//! The two torus orbifolds: fixed points, invariant cohomology, crepant
//! resolution invariants, and the cyclic classification table.

pub mod classify;
pub mod lattice;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numkernel::{cyclotomic_field, AlgebraicNumber, Polynomial};
use lattice::IMat;

pub use classify::{abelian_variety_count, classify_appendix, cyclotomic_class_number, AppendixClassification, ClassRow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbifoldError {
    #[error("spec parse error: {0}")]
    Parse(String),
    #[error("invalid spec {label}: {detail}")]
    Invalid { label: String, detail: String },
    #[error("positive-dimensional fixed set for g^{0}")]
    PositiveDimensional(u32),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("order {0} is outside the classified set")]
    UnsupportedOrder(u64),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbifoldSpec {
    pub label: String,
    pub case: String,
    pub order: u32,
    pub rank: usize,
    pub eigen_exponents: [u32; 3],
    pub resolution_fiber_euler: u32,
    pub matrix: IMat,
}

const Z3_SPEC: &str = include_str!("../../data/orbifold_z3.toml");
const Z7_SPEC: &str = include_str!("../../data/orbifold_z7.toml");
const Z7_ETA_SPEC: &str = include_str!("../../data/orbifold_z7_eta.toml");

impl OrbifoldSpec {
    pub fn parse(text: &str) -> Result<Self, OrbifoldError> {
        let spec: OrbifoldSpec = toml::from_str(text).map_err(|e| OrbifoldError::Parse(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    /// One of `z3`, `z7`, `z7-eta`.
    pub fn shipped(case: &str) -> Result<Self, OrbifoldError> {
        match case {
            "z3" => Self::parse(Z3_SPEC),
            "z7" => Self::parse(Z7_SPEC),
            "z7-eta" => Self::parse(Z7_ETA_SPEC),
            other => Err(OrbifoldError::Parse(format!("unknown case {other}"))),
        }
    }

    fn invalid(&self, detail: impl Into<String>) -> OrbifoldError {
        OrbifoldError::Invalid { label: self.label.clone(), detail: detail.into() }
    }

    pub fn validate(&self) -> Result<(), OrbifoldError> {
        if self.matrix.len() != self.rank || self.matrix.iter().any(|r| r.len() != self.rank) {
            return Err(self.invalid("matrix shape does not match rank"));
        }
        if 2 * self.eigen_exponents.len() != self.rank {
            return Err(self.invalid("rank must be twice the number of eigenvalues"));
        }
        match lattice::order(&self.matrix, 4 * self.order) {
            Some(o) if o == self.order => {}
            o => return Err(self.invalid(format!("matrix order {o:?} differs from declared {}", self.order))),
        }
        if lattice::det(&self.matrix).abs() != 1 {
            return Err(self.invalid("matrix is not unimodular"));
        }
        if lattice::charpoly(&self.matrix) != self.expected_charpoly() {
            return Err(self.invalid("characteristic polynomial does not match the eigenvalues"));
        }
        Ok(())
    }

    /// The tangent eigenvalues as elements of `Q(ζ_order)`.
    pub fn eigenvalues(&self) -> Vec<AlgebraicNumber> {
        let t = cyclotomic_field(self.order as u64);
        let z = t.top_generator();
        self.eigen_exponents.iter().map(|&a| z.pow(a as u64)).collect()
    }

    /// `∏ (x - λ)(x - λ̄)` over the tangent eigenvalues, which must be rational.
    pub fn expected_charpoly(&self) -> Polynomial {
        let t = cyclotomic_field(self.order as u64);
        let z = t.top_generator();
        let d = self.order as u64;
        let mut p = Polynomial::one(&t);
        for &a in &self.eigen_exponents {
            let a = a as u64 % d;
            p = &p * &Polynomial::linear_root(&z.pow(a));
            p = &p * &Polynomial::linear_root(&z.pow((d - a) % d));
        }
        let c = p.as_rational().expect("conjugation-stable product");
        Polynomial::from_q(&crate::numkernel::FieldTower::rationals(), &c)
    }

    pub fn element(&self, k: u32) -> IMat {
        lattice::pow(&self.matrix, k)
    }

    /// Whether the tangent eigenvalue product is 1 (the volume form is preserved).
    pub fn preserves_volume(&self) -> bool {
        self.eigen_exponents.iter().sum::<u32>() % self.order == 0
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FixedPointData {
    pub power: u32,
    pub count: u64,
    /// Nontrivial invariant factors of the fixed subgroup.
    pub invariant_factors: Vec<u64>,
    pub structure: String,
}

pub fn group_structure(factors: &[u64]) -> String {
    if factors.is_empty() {
        return "0".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let j = (i..factors.len()).take_while(|&j| factors[j] == factors[i]).count();
        parts.push(if j == 1 { format!("Z/{}", factors[i]) } else { format!("(Z/{})^{}", factors[i], j) });
        i += j;
    }
    parts.join(" x ")
}

/// Fixed points of `g^k`: the kernel of `g^k - 1` on `R^6/Z^6`, whose order is
/// `|det(g^k - I)|` and whose structure is read off the Smith normal form.
pub fn fixed_points(spec: &OrbifoldSpec, k: u32) -> Result<FixedPointData, OrbifoldError> {
    let m = lattice::sub_identity(&spec.element(k));
    let det = lattice::det(&m).unsigned_abs() as u64;
    if det == 0 {
        return Err(OrbifoldError::PositiveDimensional(k));
    }
    let diag = lattice::smith_diagonal(&m);
    let factors: Vec<u64> = diag.iter().map(|&d| d as u64).filter(|&d| d > 1).collect();
    let prod: u64 = factors.iter().product();
    if prod != det {
        return Err(OrbifoldError::Inconsistent(format!("det {det} vs normal form product {prod}")));
    }
    Ok(FixedPointData { power: k, count: det, structure: group_structure(&factors), invariant_factors: factors })
}

/// `|T_G|`, after checking that every nontrivial element has the same fixed set
/// (all isotropy groups equal G).
pub fn singular_set_size(spec: &OrbifoldSpec) -> Result<u64, OrbifoldError> {
    let base = fixed_points(spec, 1)?;
    for k in 2..spec.order {
        let fp = fixed_points(spec, k)?;
        if fp.count != base.count {
            return Err(OrbifoldError::Inconsistent(format!("isotropy differs at g^{k}")));
        }
    }
    Ok(base.count)
}

/// Dimensions of `H^{p,q}(T)^G`, indexed `[p][q]`.
pub fn invariant_hodge(spec: &OrbifoldSpec) -> [[u64; 4]; 4] {
    let d = spec.order as i64;
    let a: Vec<i64> = spec.eigen_exponents.iter().map(|&x| x as i64).collect();
    let mut h = [[0u64; 4]; 4];
    for i_mask in 0u32..8 {
        for j_mask in 0u32..8 {
            let s: i64 = (0..3).filter(|k| i_mask >> k & 1 == 1).map(|k| a[k]).sum::<i64>()
                - (0..3).filter(|k| j_mask >> k & 1 == 1).map(|k| a[k]).sum::<i64>();
            if s.rem_euclid(d) == 0 {
                h[i_mask.count_ones() as usize][j_mask.count_ones() as usize] += 1;
            }
        }
    }
    h
}

/// `dim H^j(T)^G` for `j = 0..=6`.
pub fn invariant_cohomology(spec: &OrbifoldSpec) -> [u64; 7] {
    let h = invariant_hodge(spec);
    let mut b = [0u64; 7];
    for (p, row) in h.iter().enumerate() {
        for (q, v) in row.iter().enumerate() {
            b[p + q] += v;
        }
    }
    b
}

/// Average Lefschetz number `(1/|G|) Σ_g det(I - g)` on the lattice.
pub fn lefschetz_average(spec: &OrbifoldSpec) -> i64 {
    let n = spec.rank;
    let mut s: i128 = 0;
    for k in 0..spec.order {
        let mut m = lattice::identity(n);
        let g = spec.element(k);
        for i in 0..n {
            for j in 0..n {
                m[i][j] -= g[i][j];
            }
        }
        s += lattice::det(&m);
    }
    (s / spec.order as i128) as i64
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FixedLocusReport {
    pub t_g: u64,
    pub t_g_mod_g: u64,
    pub order: u32,
    pub h2: u64,
    pub lhs: i64,
    pub rhs: i64,
    pub euler_open: i64,
    pub holds: bool,
}

pub fn fixed_locus_check(spec: &OrbifoldSpec) -> Result<FixedLocusReport, OrbifoldError> {
    let t_g = singular_set_size(spec)?;
    if t_g % spec.order as u64 != 0 {
        return Err(OrbifoldError::Inconsistent(format!("|T_G| = {t_g} not divisible by |G|")));
    }
    // every point of T_G is fixed by all of G, so each orbit is a single point
    let t_g_mod_g = t_g;
    let h2 = invariant_cohomology(spec)[2];
    let lhs = t_g_mod_g as i64 - (t_g / spec.order as u64) as i64;
    let rhs = 2 * h2 as i64;
    if lhs != rhs {
        return Err(OrbifoldError::Inconsistent(format!("{lhs} != 2 * {h2}")));
    }
    Ok(FixedLocusReport {
        t_g,
        t_g_mod_g,
        order: spec.order,
        h2,
        lhs,
        rhs,
        euler_open: -((t_g / spec.order as u64) as i64),
        holds: true,
    })
}

/// Number of age-one elements of `1/r (a_1, a_2, a_3)`.
pub fn crepant_divisor_count(r: u32, a: [u32; 3]) -> u32 {
    (1..r).filter(|&k| a.iter().map(|&x| (k * x) % r).sum::<u32>() == r).count() as u32
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ResolutionInvariants {
    pub h2_inv: u64,
    pub h3_inv: u64,
    pub sing: u64,
    pub divisors_per_point: u32,
    pub h11: u64,
    pub h22: u64,
    pub h30: u64,
    pub h21: u64,
    pub chi: i64,
    pub chi_open: i64,
    pub chi_cross_check: i64,
}

pub fn resolution_invariants(spec: &OrbifoldSpec) -> Result<ResolutionInvariants, OrbifoldError> {
    let hodge = invariant_hodge(spec);
    let b = invariant_cohomology(spec);
    if b[1] != 0 {
        return Err(OrbifoldError::Inconsistent(format!("dim H^1 = {}", b[1])));
    }
    let sing = singular_set_size(spec)?;
    let div = crepant_divisor_count(spec.order, spec.eigen_exponents);
    let h11 = hodge[1][1] + sing * div as u64;
    let h30 = hodge[3][0];
    let h21 = hodge[2][1];
    let betti = [1, 0, h11 as i64, 2 * (h30 + h21) as i64, h11 as i64, 0, 1];
    let chi: i64 = betti.iter().enumerate().map(|(j, v)| if j % 2 == 0 { *v } else { -v }).sum();
    let chi_open = -((sing / spec.order as u64) as i64);
    let cross = chi_open + sing as i64 * spec.resolution_fiber_euler as i64;
    if cross != chi {
        return Err(OrbifoldError::Inconsistent(format!("chi {chi} vs {chi_open} + {sing} * {}", spec.resolution_fiber_euler)));
    }
    Ok(ResolutionInvariants {
        h2_inv: b[2],
        h3_inv: b[3],
        sing,
        divisors_per_point: div,
        h11,
        h22: h11,
        h30,
        h21,
        chi,
        chi_open,
        chi_cross_check: cross,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbifoldReport {
    pub case: String,
    pub label: String,
    pub order: u32,
    pub sing: u64,
    pub fixed: FixedPointData,
    pub cohomology: [u64; 7],
    pub fixed_locus: FixedLocusReport,
    pub resolution: ResolutionInvariants,
    pub h11: u64,
    pub chi: i64,
}

pub fn report(case: &str) -> Result<OrbifoldReport, OrbifoldError> {
    let spec = OrbifoldSpec::shipped(case)?;
    let fixed = fixed_points(&spec, 1)?;
    let fixed_locus = fixed_locus_check(&spec)?;
    let resolution = resolution_invariants(&spec)?;
    Ok(OrbifoldReport {
        case: spec.case.clone(),
        label: spec.label.clone(),
        order: spec.order,
        sing: resolution.sing,
        fixed,
        cohomology: invariant_cohomology(&spec),
        fixed_locus,
        h11: resolution.h11,
        chi: resolution.chi,
        resolution,
    })
}
