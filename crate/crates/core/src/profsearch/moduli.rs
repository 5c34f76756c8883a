//! Solving for the unknown branch symbols of a fiber assignment by elimination.

use itertools::Itertools;
use serde::Serialize;

use super::assign::{FiberAssignment, Symbol};
use super::concrete::realize;
use super::{ExactValue, SearchError};
use crate::embedverify::verify_injectivity;
use crate::numkernel::groebner::{groebner, in_radical, is_unit_ideal, saturate, solve, Point, Solved};
use crate::numkernel::mpoly::MPoly;
use crate::numkernel::{q_i, AlgebraicNumber, FieldTower};
use crate::ratmap::{ProjectivePoint, RationalFunction};

#[derive(Clone, Debug, Serialize)]
pub struct ModuliSolution {
    pub values: Vec<(String, ExactValue)>,
    pub tower: String,
    pub maps: Vec<String>,
    #[serde(skip_serializing)]
    pub points: Vec<ProjectivePoint>,
    #[serde(skip_serializing)]
    pub functions: Vec<RationalFunction>,
}

impl ModuliSolution {
    /// Values of the unknowns as display strings, in symbol order.
    pub fn tuple(&self) -> Vec<String> {
        self.values.iter().map(|(_, v)| v.display.clone()).collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegeneracyWitness {
    pub point: Vec<(String, String)>,
    pub violation: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EmptinessRecord {
    pub reason: String,
    pub eliminant: Option<String>,
    pub witnesses: Vec<DegeneracyWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub enum ModuliOutcome {
    Solutions(Vec<ModuliSolution>),
    Empty(EmptinessRecord),
    Inconclusive(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuliRecord {
    pub label: String,
    pub fibers: Vec<String>,
    pub unknowns: Vec<String>,
    pub equations: Vec<String>,
    /// Basis after removing components where two branch symbols coincide.
    pub basis: Vec<String>,
    /// Status of the separation determinant on that variety.
    pub separation: String,
    pub outcome: ModuliOutcome,
}

impl ModuliRecord {
    pub fn solutions(&self) -> &[ModuliSolution] {
        match &self.outcome {
            ModuliOutcome::Solutions(s) => s,
            _ => &[],
        }
    }
}

struct System {
    t: FieldTower,
    n: usize,
    names: Vec<String>,
    /// Symbol values as polynomials, `None` for `∞`.
    sym: Vec<Option<MPoly>>,
}

impl System {
    fn names(&self) -> Vec<&str> {
        self.names.iter().map(|s| s.as_str()).collect()
    }

    fn fmt(&self, f: &MPoly) -> String {
        f.fmt_with(&self.names())
    }

    /// Coefficients of `Π (X - s)^e` over the finite symbols of a fiber, padded to `δ + 1`.
    fn form(&self, fiber: &[(usize, u32)], delta: usize) -> Vec<MPoly> {
        let mut c = vec![MPoly::one(&self.t, self.n)];
        for &(p, e) in fiber {
            let Some(s) = &self.sym[p] else { continue };
            for _ in 0..e {
                let mut next = vec![MPoly::zero(&self.t, self.n); c.len() + 1];
                for (k, ck) in c.iter().enumerate() {
                    next[k + 1] = next[k + 1].add(ck);
                    next[k] = next[k].sub(&ck.mul(s));
                }
                c = next;
            }
        }
        c.resize(delta + 1, MPoly::zero(&self.t, self.n));
        c
    }

    fn distinctness(&self) -> Vec<(MPoly, String)> {
        let mut out = Vec::new();
        for (i, j) in (0..self.sym.len()).tuple_combinations() {
            if let (Some(a), Some(b)) = (&self.sym[i], &self.sym[j]) {
                let f = a.sub(b);
                if f.is_constant() {
                    continue;
                }
                out.push((f, format!("{} = {}", sym_name(&self.names, i, &self.sym), sym_name(&self.names, j, &self.sym))));
            }
        }
        out
    }
}

fn sym_name(names: &[String], i: usize, sym: &[Option<MPoly>]) -> String {
    match &sym[i] {
        None => "inf".into(),
        Some(p) => p.fmt_with(&names.iter().map(|s| s.as_str()).collect::<Vec<_>>()),
    }
}

fn det3(m: [&[MPoly]; 3], rows: [usize; 3]) -> MPoly {
    let e = |r: usize, c: usize| &m[c][rows[r]];
    let t1 = e(0, 0).mul(&e(1, 1).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 1))));
    let t2 = e(0, 1).mul(&e(1, 0).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 0))));
    let t3 = e(0, 2).mul(&e(1, 0).mul(e(2, 1)).sub(&e(1, 1).mul(e(2, 0))));
    t1.sub(&t2).add(&t3)
}

fn cross(a: &[MPoly], b: &[MPoly]) -> [MPoly; 3] {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

fn lift_point(t: &FieldTower, p: &ProjectivePoint) -> Result<Option<AlgebraicNumber>, SearchError> {
    Ok(match p {
        ProjectivePoint::Infinity => None,
        ProjectivePoint::Finite(a) => Some(match a.as_rational() {
            Some(q) => AlgebraicNumber::from_q(t, q),
            None => a.lift_to(t)?,
        }),
    })
}

fn build(asg: &FiberAssignment) -> Result<System, SearchError> {
    let names = asg.unknowns();
    if names.len() > 4 {
        return Err(SearchError::TooManyUnknowns(names.len()));
    }
    let t = q_i();
    let n = names.len().max(1);
    let mut sym = Vec::new();
    let mut k = 0;
    for s in &asg.symbols {
        sym.push(match s {
            Symbol::Known(p) => lift_point(&t, p)?.map(|a| MPoly::constant(&a, n)),
            Symbol::Unknown(_) => {
                k += 1;
                Some(MPoly::var(&t, n, k - 1))
            }
        });
    }
    for (j, c) in asg.coords.iter().enumerate() {
        if !c.is_consistent(asg.d()) {
            return Err(SearchError::Malformed(format!("coordinate {} does not cover the branch symbols", j + 1)));
        }
    }
    Ok(System { t, n, names, sym })
}

/// Evaluates the symbols at a solution point, in the point's tower.
fn points_at(sys: &System, pt: &Point) -> Vec<ProjectivePoint> {
    sys.sym
        .iter()
        .map(|s| match s {
            None => ProjectivePoint::Infinity,
            Some(f) => ProjectivePoint::Finite(f.lift_to(&pt.tower).eval(&pt.coords)),
        })
        .collect()
}

fn coincidence(sys: &System, pts: &[ProjectivePoint]) -> Option<String> {
    (0..pts.len()).tuple_combinations().find(|&(i, j)| pts[i] == pts[j]).map(|(i, j)| {
        format!("{} = {} (both {})", sym_name(&sys.names, i, &sys.sym), sym_name(&sys.names, j, &sys.sym), pts[i])
    })
}

fn witness(sys: &System, pt: &Point) -> DegeneracyWitness {
    let pts = points_at(sys, pt);
    DegeneracyWitness {
        point: sys.names.iter().cloned().zip(pt.coords.iter().map(|c| c.to_string())).collect(),
        violation: coincidence(sys, &pts).unwrap_or_else(|| "no coincidence found".into()),
    }
}

fn eliminant(sys: &System, gb: &[MPoly]) -> Option<String> {
    let last = sys.n - 1;
    gb.iter().find(|f| f.support() == vec![last]).map(|f| sys.fmt(f))
}

fn witnesses_of(sys: &System, gb: &[MPoly]) -> Result<Vec<DegeneracyWitness>, String> {
    match solve(gb, "w") {
        Solved::Points(pts) => Ok(pts.iter().map(|p| witness(sys, p)).collect()),
        Solved::Positive { .. } => Err("degeneracy locus is positive-dimensional".into()),
    }
}

/// Eliminates the unknowns of `asg`, keeping solutions where all branch symbols are distinct
/// and, for all-`δ = 2` families, the three fiber pencils share no quadric.
pub fn solve_moduli(asg: &FiberAssignment) -> Result<ModuliRecord, SearchError> {
    let sys = build(asg)?;
    let mut eqs = Vec::new();
    let mut forms: Vec<[Vec<MPoly>; 3]> = Vec::new();
    for c in &asg.coords {
        let delta = c.delta() as usize;
        let f = [0, 1, 2].map(|b| sys.form(&c.fibers[b], delta));
        for rows in (0..=delta).combinations(3) {
            let m = det3([&f[0], &f[1], &f[2]], [rows[0], rows[1], rows[2]]);
            if !m.is_zero() {
                eqs.push(m);
            }
        }
        forms.push(f);
    }
    let mut record = ModuliRecord {
        label: asg.label.clone(),
        fibers: asg.describe(),
        unknowns: sys.names.clone(),
        equations: eqs.iter().map(|e| sys.fmt(e)).collect(),
        basis: Vec::new(),
        separation: String::new(),
        outcome: ModuliOutcome::Inconclusive("not solved".into()),
    };
    if eqs.iter().any(|e| e.is_constant()) {
        record.outcome = ModuliOutcome::Empty(EmptinessRecord {
            reason: "a fiber condition is a nonzero constant".into(),
            eliminant: None,
            witnesses: Vec::new(),
        });
        return Ok(record);
    }
    let gb0 = if eqs.is_empty() { Vec::new() } else { groebner(&eqs) };
    let dist = sys.distinctness();
    let mut j = gb0.clone();
    for (f, _) in &dist {
        if j.is_empty() || is_unit_ideal(&j) {
            break;
        }
        j = saturate(&j, f);
    }
    record.basis = j.iter().map(|f| sys.fmt(f)).collect();
    if is_unit_ideal(&j) {
        let witnesses = witnesses_of(&sys, &gb0).unwrap_or_default();
        record.outcome = ModuliOutcome::Empty(EmptinessRecord {
            reason: "every solution makes two branch symbols coincide".into(),
            eliminant: eliminant(&sys, &gb0),
            witnesses,
        });
        return Ok(record);
    }

    let all_quadratic = asg.coords.iter().all(|c| c.delta() == 2);
    let mut target = j.clone();
    if all_quadratic {
        let normals: Vec<[MPoly; 3]> = forms.iter().map(|f| cross(&f[0], &f[1])).collect();
        let delta = det3([&normals[0], &normals[1], &normals[2]], [0, 1, 2]);
        let vanishes = |f: &MPoly| f.is_zero() || in_radical(f, &j, 8).is_some();
        if vanishes(&delta) {
            record.separation = "vanishes identically: some pair of points has equal images under every coordinate".into();
            record.outcome = collision_emptiness(&sys, &j, &normals, &dist, &vanishes);
            return Ok(record);
        }
        record.separation = format!("nonzero generically; removed by saturation: {}", sys.fmt(&delta));
        target = saturate(&j, &delta);
        if is_unit_ideal(&target) {
            record.outcome = ModuliOutcome::Empty(EmptinessRecord {
                reason: "the separation determinant vanishes at every solution".into(),
                eliminant: eliminant(&sys, &j),
                witnesses: Vec::new(),
            });
            return Ok(record);
        }
    } else {
        record.separation = "checked per solution by exact injectivity".into();
    }

    let pts = match solve(&target, "r") {
        Solved::Points(p) => p,
        Solved::Positive { basis, free_var } => {
            record.outcome = ModuliOutcome::Inconclusive(format!(
                "positive-dimensional in {} with basis [{}]",
                sys.names[free_var],
                basis.iter().map(|f| sys.fmt(f)).join(", ")
            ));
            return Ok(record);
        }
    };
    let mut sols = Vec::new();
    for pt in &pts {
        let points = points_at(&sys, pt);
        if let Some(c) = coincidence(&sys, &points) {
            return Err(SearchError::Inconclusive(format!("{}: saturated solution has {c}", asg.label)));
        }
        let mut maps = Vec::new();
        for (k, c) in asg.coords.iter().enumerate() {
            let m = realize(&pt.tower, &points, c)
                .ok_or_else(|| SearchError::Inconclusive(format!("{}: coordinate {} not realizable", asg.label, k + 1)))?;
            maps.push(m);
        }
        let arr: [RationalFunction; 3] = maps.clone().try_into().unwrap();
        if !verify_injectivity(&arr, &points).ok() {
            continue;
        }
        sols.push(ModuliSolution {
            values: sys.names.iter().cloned().zip(pt.coords.iter().map(ExactValue::of)).collect(),
            tower: pt.tower.name().to_string(),
            maps: maps.iter().map(|m| m.fmt_var("X")).collect(),
            points,
            functions: maps,
        });
    }
    sols.sort_by_key(|a| a.tuple());
    record.outcome = ModuliOutcome::Solutions(sols);
    Ok(record)
}

/// With the separation determinant identically zero, the common quadric `m = n_j × n_k`
/// gives a colliding pair; injectivity forces that pair to be a double point, i.e. the
/// discriminant of `m` to vanish. Certifies that this only happens where symbols coincide.
fn collision_emptiness(
    sys: &System,
    j: &[MPoly],
    normals: &[[MPoly; 3]],
    dist: &[(MPoly, String)],
    vanishes: &dyn Fn(&MPoly) -> bool,
) -> ModuliOutcome {
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let m = cross(&normals[a], &normals[b]);
        if m.iter().all(vanishes) {
            continue;
        }
        let disc = m[1].mul(&m[1]).sub(&MPoly::constant(&AlgebraicNumber::from_int(&sys.t, 4), sys.n).mul(&m[0]).mul(&m[2]));
        if vanishes(&disc) {
            return ModuliOutcome::Inconclusive("the colliding pair is a double point on the whole family".into());
        }
        let mut gens = j.to_vec();
        gens.push(disc.clone());
        let k = groebner(&gens);
        let mut sat = k.clone();
        for (f, _) in dist {
            if is_unit_ideal(&sat) {
                break;
            }
            sat = saturate(&sat, f);
        }
        if !is_unit_ideal(&sat) {
            return ModuliOutcome::Inconclusive(format!("double-point locus [{}] has distinct symbols", sat.iter().map(|f| sys.fmt(f)).join(", ")));
        }
        let witnesses = match witnesses_of(sys, &k) {
            Ok(w) => w,
            Err(e) => return ModuliOutcome::Inconclusive(e),
        };
        return ModuliOutcome::Empty(EmptinessRecord {
            reason: format!(
                "coordinates {} and {} pin a colliding pair, the roots of [{}]; it is a double point only where symbols coincide",
                a + 1,
                b + 1,
                m.iter().map(|f| sys.fmt(f)).join(", ")
            ),
            eliminant: eliminant(sys, &k).or_else(|| Some(sys.fmt(&disc))),
            witnesses,
        });
    }
    ModuliOutcome::Inconclusive("no pair of pencils pins the collision".into())
}
