//! Degree seven: a scan over the number of class-1 branch points, then the two
//! normalized cases left by it.

use std::collections::BTreeMap;

use serde::Serialize;

use super::assign::CoordPattern;
use super::concrete::{candidate_patterns, combine_with, realizable_coordinates, realize, CombinationCounts, RealizedCoordinate};
use super::exclude::{fiber_feasible, r_vectors, triple_violation, CoordOption};
use super::{hurwitz_solutions, HurwitzSolution, SearchError};
use crate::numkernel::{extend_checked, factor, q, q_beta5, roots_in_field, AlgebraicNumber, FieldTower, Polynomial};
use crate::ratmap::{ProjectivePoint, RationalFunction};

const D: usize = 7;

/// Ramification multisets of a single coordinate that a surviving triple may contain.
pub const SHAPE_I: [u32; 7] = [5, 5, 1, 1, 1, 1, 1];
pub const SHAPE_II: [u32; 7] = [5, 4, 2, 1, 1, 1, 1];
pub const SHAPE_III: [u32; 7] = [5, 2, 2, 2, 2, 1, 1];

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassScan {
    /// Number of class-1 (singular) branch points.
    pub k: usize,
    pub options: usize,
    pub triples: u64,
    pub rejected: BTreeMap<String, u64>,
    pub survivors: u64,
    /// Sorted ramification multisets of the coordinates occurring in survivors.
    pub shapes: Vec<Vec<u32>>,
    pub with_shape_i: u64,
    pub with_shape_ii_only: u64,
    pub with_shape_iii: u64,
    /// Survivors containing neither of the two normalizable shapes.
    pub uncovered: u64,
}

#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq, Eq)]
pub struct PoolCount {
    pub candidates: usize,
    pub realizable: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub tower: String,
    pub points: Vec<String>,
    pub first: String,
    /// Candidate and realizable coordinates on the branch set, per `δ` and fiber shape.
    pub pool: BTreeMap<u32, BTreeMap<String, PoolCount>>,
    pub counts: CombinationCounts,
    pub embeddings: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Dc7Report {
    pub rows: Vec<HurwitzSolution>,
    pub scan: Vec<ClassScan>,
    pub cases: Vec<CaseReport>,
    pub inconclusive: Vec<String>,
}

impl Dc7Report {
    pub fn is_empty(&self) -> bool {
        self.cases.iter().all(|c| c.embeddings.is_empty())
    }

    pub fn conclusive(&self) -> bool {
        self.inconclusive.is_empty()
    }
}

fn e_multiset(o: &CoordOption) -> Option<Vec<u32>> {
    match o {
        CoordOption::Constant => None,
        CoordOption::Active { r, .. } => {
            let mut e: Vec<u32> = r.iter().map(|x| x + 1).collect();
            e.sort_unstable_by(|a, b| b.cmp(a));
            Some(e)
        }
    }
}

fn scan_classes(k: usize, rows: &[HurwitzSolution]) -> ClassScan {
    let class = |p: usize| u32::from(p < k);
    let mut opts = vec![CoordOption::Constant];
    for row in rows {
        let delta = row.delta;
        let allowed = |p: usize| (0..delta).filter(|r| r % 3 == class(p)).collect::<Vec<u32>>();
        for r in r_vectors(D, row.gamma0, &allowed) {
            if fiber_feasible(&r.iter().map(|x| x + 1).collect::<Vec<_>>(), delta) {
                opts.push(CoordOption::Active { delta, r });
            }
        }
    }
    let mut s = ClassScan {
        k,
        options: opts.len() - 1,
        triples: 0,
        rejected: BTreeMap::new(),
        survivors: 0,
        shapes: Vec::new(),
        with_shape_i: 0,
        with_shape_ii_only: 0,
        with_shape_iii: 0,
        uncovered: 0,
    };
    for i in 0..opts.len() {
        for j in i..opts.len() {
            for l in j..opts.len() {
                s.triples += 1;
                let t = [&opts[i], &opts[j], &opts[l]];
                if let Some(why) = triple_violation(D, t) {
                    *s.rejected.entry(why.to_string()).or_default() += 1;
                    continue;
                }
                s.survivors += 1;
                let shapes: Vec<Vec<u32>> = t.iter().filter_map(|o| e_multiset(o)).collect();
                let has = |x: &[u32; 7]| shapes.iter().any(|e| e == x);
                if has(&SHAPE_I) {
                    s.with_shape_i += 1;
                } else if has(&SHAPE_II) {
                    s.with_shape_ii_only += 1;
                } else {
                    s.uncovered += 1;
                }
                if has(&SHAPE_III) {
                    s.with_shape_iii += 1;
                }
                for e in shapes {
                    if !s.shapes.contains(&e) {
                        s.shapes.push(e);
                    }
                }
            }
        }
    }
    s.shapes.sort();
    s
}

fn run_case(
    case: &str,
    t: &FieldTower,
    points: Vec<ProjectivePoint>,
    classes: &[u8],
    first: CoordPattern,
) -> Result<(CaseReport, RationalFunction), SearchError> {
    let map = realize(t, &points, &first)
        .ok_or_else(|| SearchError::Inconclusive(format!("case {case}: normalized first coordinate is not realizable")))?;
    let first = RealizedCoordinate { pattern: first, map: map.clone() };
    let deltas = [3, 4, 5];
    let pool = realizable_coordinates(t, &points, classes, &deltas);
    let mut by_shape: BTreeMap<u32, BTreeMap<String, PoolCount>> = BTreeMap::new();
    for &dl in &deltas {
        for c in candidate_patterns(classes, dl) {
            by_shape.entry(dl).or_default().entry(c.shape().to_string()).or_default().candidates += 1;
        }
    }
    for c in &pool {
        by_shape.entry(c.pattern.delta()).or_default().entry(c.pattern.shape().to_string()).or_default().realizable += 1;
    }
    let (embs, counts) = combine_with(&first, &pool, &points);
    let report = CaseReport {
        case: case.to_string(),
        tower: t.name().to_string(),
        points: points.iter().map(|p| p.to_string()).collect(),
        first: map.fmt_var("X"),
        pool: by_shape,
        counts,
        embeddings: embs.iter().map(|e| e.maps.iter().map(|m| m.fmt_var("X")).collect()).collect(),
    };
    Ok((report, map))
}

/// Branch set `∞, 0, 1, β, …, β⁴` with `x_1 = X⁵`.
pub fn case_a() -> Result<(CaseReport, RationalFunction), SearchError> {
    let t = q_beta5();
    let b = t.top_generator();
    let mut points = vec![ProjectivePoint::Infinity, ProjectivePoint::int(&t, 0), ProjectivePoint::int(&t, 1)];
    for k in 1..=4 {
        points.push(ProjectivePoint::Finite(b.pow(k)));
    }
    let first = CoordPattern::new([vec![(1, 5)], vec![(0, 5)], (2..7).map(|p| (p, 1)).collect()]);
    run_case("A", &t, points, &[1, 1, 0, 0, 0, 0, 0], first)
}

/// The splitting field of `125X³ + 75X² + 40X + 16` with its three roots.
pub fn case_b_field() -> Result<(FieldTower, Vec<AlgebraicNumber>), SearchError> {
    let base = FieldTower::rationals();
    let cubic = Polynomial::from_q(&base, &[q(16, 125), q(8, 25), q(3, 5), q(1, 1)]);
    let t1 = extend_checked(&base, "t1", &cubic)?;
    let over1 = cubic.lift_to(&t1)?;
    let mut roots: Vec<AlgebraicNumber> = roots_in_field(&over1).into_iter().map(|(r, _)| r).collect();
    let t = if roots.len() == 3 {
        t1
    } else {
        let rest = factor(&over1)
            .into_iter()
            .map(|(f, _)| f)
            .find(|f| f.deg() == 2)
            .ok_or_else(|| SearchError::Malformed("cubic has no quadratic factor over its stem field".into()))?;
        let t2 = extend_checked(&t1, "t2", &rest.monic())?;
        roots = roots_in_field(&over1.lift_to(&t2)?).into_iter().map(|(r, _)| r).collect();
        t2
    };
    if roots.len() != 3 {
        return Err(SearchError::Malformed("splitting field construction failed".into()));
    }
    roots.sort();
    Ok((t, roots))
}

/// Branch set `∞, 0, 1, 4/5, t₁, t₂, t₃` with `x_1 = -3125/256 · X⁴(X - 1)`.
pub fn case_b() -> Result<(CaseReport, RationalFunction), SearchError> {
    let (t, roots) = case_b_field()?;
    let mut points = vec![
        ProjectivePoint::Infinity,
        ProjectivePoint::int(&t, 0),
        ProjectivePoint::int(&t, 1),
        ProjectivePoint::Finite(AlgebraicNumber::from_q(&t, q(4, 5))),
    ];
    points.extend(roots.into_iter().map(ProjectivePoint::Finite));
    let first = CoordPattern::new([vec![(1, 4), (2, 1)], vec![(0, 5)], vec![(3, 2), (4, 1), (5, 1), (6, 1)]]);
    run_case("B", &t, points, &[1, 0, 0, 1, 0, 0, 0], first)
}

/// Certified search for `d = 7`.
pub fn dc7_scan() -> Result<Dc7Report, SearchError> {
    let rows = hurwitz_solutions(D);
    let scan: Vec<ClassScan> = (0..=D).map(|k| scan_classes(k, &rows)).collect();
    let mut inconclusive = Vec::new();
    for s in &scan {
        if s.uncovered > 0 {
            inconclusive.push(format!("{} surviving triples with {} class-1 points contain neither normalizable shape", s.uncovered, s.k));
        }
    }
    let mut cases = Vec::new();
    if scan.iter().any(|s| s.with_shape_i > 0) {
        cases.push(case_a()?.0);
    }
    if scan.iter().any(|s| s.with_shape_ii_only > 0) {
        cases.push(case_b()?.0);
    }
    Ok(Dc7Report { rows, scan, cases, inconclusive })
}
