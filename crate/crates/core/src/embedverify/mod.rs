//! Exact re-verification of explicit embeddings of superelliptic curves into
//! the orbifold, and holomorphic differentials on `y^N = x^a (x-1)^b`.

pub mod certificate;
pub mod differentials;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

pub use certificate::{tower_by_name, CertificateData, CoordinateMap, CurveSpec, FiberRecord};
pub use differentials::{k4_equivalence, superelliptic_differentials, DifferentialBasis, K4Equivalence};

use crate::numkernel::groebner::{groebner, is_unit_ideal, saturate};
use crate::numkernel::mpoly::MPoly;
use crate::numkernel::{AlgebraicNumber, BiPoly, FieldTower, Polynomial};
use crate::ratmap::{
    check_lift_conditions, ramification_profile, ProjectivePoint, RamificationProfile, RatMapError, RationalFunction, Target,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("certificate format error at line {line}: {detail}")]
    Format { line: usize, detail: String },
    #[error("unknown certificate '{0}'")]
    Unknown(String),
    #[error("coordinate {coord}: Q^3 F - R(R-1) = {residue}")]
    OnCurve { coord: usize, residue: String },
    #[error("not injective: {0}")]
    Injectivity(String),
    #[error("branch table mismatch in coordinate {coord} over {target}: stored {stored}, computed {computed}")]
    BranchTable { coord: usize, target: &'static str, stored: String, computed: String },
    #[error("lift condition fails at {point}: {detail}")]
    Lift { point: String, detail: String },
    #[error("unsupported differential data: {0}")]
    Differentials(String),
    #[error(transparent)]
    Map(#[from] RatMapError),
}

/// Shipped certificate ids in canonical order.
pub const SHIPPED: [&str; 8] = ["6444", "6442", "6422", "222i", "222ii", "222iii", "6422b", "6422c"];
/// The six certificates checked by `--case all`.
pub const PRIMARY: [&str; 6] = ["6444", "6442", "6422", "222i", "222ii", "222iii"];

pub fn shipped_text(id: &str) -> Option<&'static str> {
    Some(match id {
        "6444" => include_str!("../../data/certificates/6444.cert"),
        "6442" => include_str!("../../data/certificates/6442.cert"),
        "6422" => include_str!("../../data/certificates/6422.cert"),
        "222i" => include_str!("../../data/certificates/222i.cert"),
        "222ii" => include_str!("../../data/certificates/222ii.cert"),
        "222iii" => include_str!("../../data/certificates/222iii.cert"),
        "6422b" => include_str!("../../data/certificates/6422b.cert"),
        "6422c" => include_str!("../../data/certificates/6422c.cert"),
        _ => return None,
    })
}

pub fn load_shipped(id: &str) -> Result<CertificateData, VerifyError> {
    CertificateData::parse(shipped_text(id).ok_or_else(|| VerifyError::Unknown(id.to_string()))?)
}

impl CertificateData {
    pub fn x_maps(&self) -> Result<[RationalFunction; 3], VerifyError> {
        let v = self
            .maps
            .iter()
            .map(|m| RationalFunction::new(m.r_num.clone(), m.r_den.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(v.try_into().expect("three maps"))
    }

    pub fn y_factors(&self) -> Result<[RationalFunction; 3], VerifyError> {
        let v = self
            .maps
            .iter()
            .map(|m| RationalFunction::new(m.q_num.clone(), m.q_den.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(v.try_into().expect("three maps"))
    }
}

/// Checks `Q_j^3 F = R_j (R_j - 1)` for every coordinate; a failure carries the nonzero residue.
pub fn verify_on_curve(data: &CertificateData) -> Result<(), VerifyError> {
    let f = RationalFunction::from_poly(data.curve.polynomial());
    let one = RationalFunction::constant(&AlgebraicNumber::one(&data.tower));
    let xs = data.x_maps()?;
    let ys = data.y_factors()?;
    for (j, (r, q)) in xs.iter().zip(&ys).enumerate() {
        let residue = q.pow(3).mul(&f).sub(&r.mul(&r.sub(&one)));
        if !residue.numerator().is_zero() {
            return Err(VerifyError::OnCurve { coord: j + 1, residue: residue.to_string() });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InjectivityReport {
    /// Number of non-constant coordinates.
    pub active: usize,
    /// The collision ideal saturated by `X - Z` is the unit ideal.
    pub finite_separated: bool,
    /// No finite point shares its image with `∞`.
    pub infinity_separated: bool,
    /// Images of the branch points are pairwise distinct.
    pub branch_images_distinct: bool,
    /// Largest fiber over `0, 1, ∞` when exactly two coordinates move, else `None`.
    pub max_fiber: Option<usize>,
    pub witness: Option<String>,
}

impl InjectivityReport {
    pub fn ok(&self) -> bool {
        self.finite_separated && self.infinity_separated && self.branch_images_distinct && self.max_fiber.is_none_or(|m| m <= 3)
    }
}

fn bipoly_to_mpoly(b: &BiPoly) -> MPoly {
    let mut out = MPoly::zero(&b.tower, 2);
    for (k, cz) in b.coeffs.iter().enumerate() {
        for (i, c) in cz.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.add_term(vec![i as u32, k as u32], c.clone());
            }
        }
    }
    out
}

/// Fiber polynomial of `R` over its own value at `∞`.
fn infinity_fiber_poly(r: &RationalFunction) -> Polynomial {
    match r.eval(&ProjectivePoint::Infinity) {
        ProjectivePoint::Infinity => r.denominator().clone(),
        ProjectivePoint::Finite(c) => r.numerator() - &r.denominator().scale(&c),
    }
}

/// Injectivity of `X ↦ (R_1, R_2, R_3)` on the line by bivariate separation.
pub fn verify_injectivity(maps: &[RationalFunction; 3], branch_set: &[ProjectivePoint]) -> InjectivityReport {
    let active: Vec<&RationalFunction> = maps.iter().filter(|r| !r.is_constant()).collect();
    let mut rep = InjectivityReport {
        active: active.len(),
        finite_separated: false,
        infinity_separated: false,
        branch_images_distinct: false,
        max_fiber: None,
        witness: None,
    };
    if active.is_empty() {
        rep.witness = Some("all coordinates constant".into());
        return rep;
    }
    let t = active[0].tower().clone();
    let hs: Vec<MPoly> =
        active.iter().map(|r| bipoly_to_mpoly(&BiPoly::separation_quotient(r.numerator(), r.denominator()))).collect();
    let diag = MPoly::var(&t, 2, 0).sub(&MPoly::var(&t, 2, 1));
    let sat = saturate(&groebner(&hs), &diag);
    rep.finite_separated = is_unit_ideal(&sat);
    if !rep.finite_separated {
        let g: Vec<String> = sat.iter().map(|f| f.fmt_with(&["X", "Z"])).collect();
        rep.witness = Some(format!("off-diagonal collisions on [{}]", g.join(", ")));
    }

    let g = active.iter().map(|r| infinity_fiber_poly(r)).reduce(|a, b| Polynomial::gcd(&a, &b)).unwrap();
    rep.infinity_separated = g.is_constant();
    if !rep.infinity_separated && rep.witness.is_none() {
        rep.witness = Some(format!("finite points {} share the image of inf", g.fmt_var("X")));
    }

    let images: Vec<[ProjectivePoint; 3]> = branch_set.iter().map(|p| maps.clone().map(|r| r.eval(p))).collect();
    let distinct: BTreeSet<&[ProjectivePoint; 3]> = images.iter().collect();
    rep.branch_images_distinct = distinct.len() == images.len();
    if !rep.branch_images_distinct && rep.witness.is_none() {
        rep.witness = Some("two branch points have the same image".into());
    }

    if active.len() == 2 {
        let mut worst = 0;
        for r in &active {
            for c in Target::ALL {
                let n: usize = r.fiber(c).map(|f| f.iter().map(|e| e.point.weight()).sum()).unwrap_or(usize::MAX);
                worst = worst.max(n);
            }
        }
        rep.max_fiber = Some(worst);
        if worst > 3 && rep.witness.is_none() {
            rep.witness = Some(format!("a fiber over 0, 1 or inf has {worst} > 3 points"));
        }
    }
    rep
}

/// Fibers of every non-constant coordinate over `0, ∞, 1`, listed in branch-set order.
pub fn branch_tables(maps: &[RationalFunction; 3], branch_set: &[ProjectivePoint]) -> Vec<FiberRecord> {
    let mut out = Vec::new();
    for (j, r) in maps.iter().enumerate() {
        if r.is_constant() {
            continue;
        }
        for c in [Target::Zero, Target::Infinity, Target::One] {
            let points = branch_set
                .iter()
                .filter_map(|p| {
                    let m = r.fiber_multiplicity(p, c);
                    (m > 0).then(|| (p.clone(), m))
                })
                .collect();
            out.push(FiberRecord { coord: j, target: c, points });
        }
    }
    out
}

fn fiber_key(f: &FiberRecord) -> (usize, Target, Vec<(ProjectivePoint, usize)>) {
    let mut p = f.points.clone();
    p.sort();
    (f.coord, f.target, p)
}

fn fmt_fiber(points: &[(ProjectivePoint, usize)]) -> String {
    let v: Vec<String> = points.iter().map(|(p, m)| format!("{p}@{m}")).collect();
    format!("{{{}}}", v.join(", "))
}

/// Compares computed tables with stored ones as sets per coordinate and target.
pub fn compare_branch_tables(stored: &[FiberRecord], computed: &[FiberRecord]) -> Result<(), VerifyError> {
    for c in computed {
        let (j, t, pts) = fiber_key(c);
        let found = stored.iter().find(|s| s.coord == j && s.target == t).map(fiber_key);
        match found {
            Some((_, _, s)) if s == pts => {}
            other => {
                return Err(VerifyError::BranchTable {
                    coord: j + 1,
                    target: t.label(),
                    stored: other.map(|(_, _, s)| fmt_fiber(&s)).unwrap_or_else(|| "nothing".into()),
                    computed: fmt_fiber(&pts),
                })
            }
        }
    }
    if stored.len() != computed.len() {
        return Err(VerifyError::BranchTable {
            coord: 0,
            target: "-",
            stored: format!("{} records", stored.len()),
            computed: format!("{} records", computed.len()),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CoordinateProfile {
    pub gamma0: usize,
    pub gamma1: usize,
    pub delta: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub id: String,
    pub tower: String,
    pub checks: Vec<CheckOutcome>,
    /// `(γ0, γ1, δ)` per non-constant coordinate.
    pub profile: Vec<CoordinateProfile>,
    pub smooth: bool,
    pub passed: bool,
}

/// A certificate whose every check has passed. Only [`EmbeddingCertificate::certify`] builds one.
#[derive(Clone, Debug)]
pub struct EmbeddingCertificate {
    data: CertificateData,
    maps: [RationalFunction; 3],
    profile: RamificationProfile,
    report: VerificationReport,
}

impl EmbeddingCertificate {
    pub fn certify(data: &CertificateData) -> Result<Self, VerificationReport> {
        let (report, state) = run_checks(data, true);
        match state {
            Some((maps, profile)) if report.passed => Ok(EmbeddingCertificate { data: data.clone(), maps, profile, report }),
            _ => Err(report),
        }
    }

    pub fn data(&self) -> &CertificateData {
        &self.data
    }

    pub fn maps(&self) -> &[RationalFunction; 3] {
        &self.maps
    }

    pub fn profile(&self) -> &RamificationProfile {
        &self.profile
    }

    pub fn report(&self) -> &VerificationReport {
        &self.report
    }
}

/// Runs every check and reports each one.
pub fn verify(data: &CertificateData) -> VerificationReport {
    run_checks(data, false).0
}

fn run_checks(data: &CertificateData, stop_early: bool) -> (VerificationReport, Option<([RationalFunction; 3], RamificationProfile)>) {
    let mut rep = VerificationReport {
        id: data.id.clone(),
        tower: data.tower.name().to_string(),
        checks: Vec::new(),
        profile: Vec::new(),
        smooth: false,
        passed: false,
    };
    let push = |rep: &mut VerificationReport, name: &'static str, r: Result<String, String>| {
        let passed = r.is_ok();
        rep.checks.push(CheckOutcome { name, passed, detail: r.unwrap_or_else(|e| e) });
        passed
    };

    let on_curve = verify_on_curve(data).map(|_| "Q^3 F = R(R-1) in every coordinate".to_string()).map_err(|e| e.to_string());
    if !push(&mut rep, "on-curve", on_curve) && stop_early {
        return (rep, None);
    }
    let maps = match data.x_maps() {
        Ok(m) => m,
        Err(e) => {
            push(&mut rep, "well-formed", Err(e.to_string()));
            return (rep, None);
        }
    };
    let branch = data.curve.branch_set();
    let profile = match ramification_profile(&maps, &branch) {
        Ok(p) => {
            push(&mut rep, "ramification", Ok(format!("d = {}", p.d)));
            p
        }
        Err(e) => {
            push(&mut rep, "ramification", Err(e.to_string()));
            return (rep, None);
        }
    };
    rep.profile = profile
        .coords
        .iter()
        .filter(|c| !c.constant)
        .map(|c| CoordinateProfile { gamma0: c.gamma0, gamma1: c.gamma1, delta: c.delta })
        .collect();

    let lift = check_lift_conditions(&profile);
    rep.smooth = lift.smooth();
    let lift_r = match lift.first_failure() {
        None => Ok(if lift.smooth() { "every branch point lifts smoothly".into() } else { "lift conditions hold".into() }),
        Some((p, v)) => Err(VerifyError::Lift { point: p.to_string(), detail: v.to_string() }.to_string()),
    };
    if !push(&mut rep, "lift", lift_r) && stop_early {
        return (rep, None);
    }

    let tables = branch_tables(&maps, &branch);
    let tab_r = compare_branch_tables(&data.fibers, &tables).map(|_| format!("{} fiber records match", tables.len()));
    if !push(&mut rep, "branch-tables", tab_r.map_err(|e| e.to_string())) && stop_early {
        return (rep, None);
    }

    let inj = verify_injectivity(&maps, &branch);
    let inj_r = if inj.ok() {
        Ok(format!("{} moving coordinates separate points", inj.active))
    } else {
        Err(VerifyError::Injectivity(inj.witness.clone().unwrap_or_default()).to_string())
    };
    push(&mut rep, "injectivity", inj_r);

    rep.passed = rep.checks.iter().all(|c| c.passed);
    (rep, Some((maps, profile)))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MutationOutcome {
    pub label: String,
    pub rejected: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MutationSummary {
    pub id: String,
    pub total: usize,
    pub rejected: usize,
    pub escaped: Vec<String>,
}

/// Every single-coefficient corruption `c ↦ c + 1` of the stored maps.
pub fn mutations(data: &CertificateData) -> Vec<(String, CertificateData)> {
    let mut out = Vec::new();
    let one = AlgebraicNumber::one(&data.tower);
    for j in 0..data.maps.len() {
        for (slot, name) in ["x.num", "x.den", "y.num", "y.den"].iter().enumerate() {
            let p = slot_poly(&data.maps[j], slot);
            for k in 0..p.coeffs().len() {
                let mut c = p.coeffs().to_vec();
                c[k] = &c[k] + &one;
                let mut m = data.clone();
                *slot_poly_mut(&mut m.maps[j], slot) = Polynomial::new(&data.tower, c);
                out.push((format!("{} map {} {} [{}] + 1", data.id, j + 1, name, k), m));
            }
        }
    }
    out
}

fn slot_poly(m: &CoordinateMap, slot: usize) -> &Polynomial {
    [&m.r_num, &m.r_den, &m.q_num, &m.q_den][slot]
}

fn slot_poly_mut(m: &mut CoordinateMap, slot: usize) -> &mut Polynomial {
    match slot {
        0 => &mut m.r_num,
        1 => &mut m.r_den,
        2 => &mut m.q_num,
        _ => &mut m.q_den,
    }
}

/// Re-runs certification on every mutation; all must be rejected.
pub fn mutation_suite(data: &CertificateData) -> MutationSummary {
    let muts = mutations(data);
    let escaped: Vec<String> =
        muts.iter().filter(|(_, m)| EmbeddingCertificate::certify(m).is_ok()).map(|(l, _)| l.clone()).collect();
    MutationSummary { id: data.id.clone(), total: muts.len(), rejected: muts.len() - escaped.len(), escaped }
}

/// The tower a certificate id lives over, without parsing its file.
pub fn tower_of(id: &str) -> Option<FieldTower> {
    let text = shipped_text(id)?;
    let line = text.lines().nth(1)?;
    tower_by_name(line.strip_prefix("tower ")?)
}

/// Builds certificate data from maps, computing `Q_j` when absent and the fiber tables.
pub fn assemble(
    id: &str,
    curve: CurveSpec,
    xs: [RationalFunction; 3],
    qs: Option<[RationalFunction; 3]>,
) -> Result<CertificateData, VerifyError> {
    let tower = curve.lead.tower().clone();
    let f = curve.polynomial();
    let qs = match qs {
        Some(q) => q,
        None => {
            let mut v = Vec::new();
            for (j, r) in xs.iter().enumerate() {
                match crate::ratmap::cube_cofactor(r, &f, false)? {
                    crate::ratmap::CubeResult::Cube { q, .. } => v.push(q),
                    crate::ratmap::CubeResult::NotACube { place, multiplicity } => {
                        return Err(VerifyError::OnCurve {
                            coord: j + 1,
                            residue: format!("R(R-1)/F has order {multiplicity} at {place}"),
                        })
                    }
                }
            }
            v.try_into().expect("three maps")
        }
    };
    let fibers = branch_tables(&xs, &curve.branch_set());
    let maps = xs
        .iter()
        .zip(&qs)
        .map(|(r, q)| CoordinateMap {
            r_num: r.numerator().clone(),
            r_den: r.denominator().clone(),
            q_num: q.numerator().clone(),
            q_den: q.denominator().clone(),
        })
        .collect();
    Ok(CertificateData { id: id.to_string(), tower, curve, maps, fibers })
}
