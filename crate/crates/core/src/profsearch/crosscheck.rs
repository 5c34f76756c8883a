//! Comparing search output with certificates: equivalence of embeddings under
//! Möbius maps of the source line, and regeneration of a certificate from a solution.

use serde::Serialize;

use super::assign::{Blocks, CoordPattern};
use super::mobius::{induced_permutation, Mobius};
use super::SearchError;
use crate::embedverify::{assemble, CertificateData, CurveSpec, EmbeddingCertificate};
use crate::numkernel::{AlgebraicNumber, FieldTower, Polynomial};
use crate::ratmap::{cube_cofactor, CubeResult, ProjectivePoint, RationalFunction, Target};

/// Branch points with the fiber patterns of the non-constant coordinates.
#[derive(Clone, Debug)]
pub struct Placed {
    pub points: Vec<ProjectivePoint>,
    pub patterns: Vec<CoordPattern>,
}

impl Placed {
    pub fn from_certificate(data: &CertificateData) -> Placed {
        let points = data.curve.branch_set();
        let mut per: Vec<(usize, [Vec<(usize, u32)>; 3])> = Vec::new();
        for f in &data.fibers {
            let slot = match f.target {
                Target::Zero => 0,
                Target::Infinity => 1,
                Target::One => 2,
            };
            let k = match per.iter().position(|(c, _)| *c == f.coord) {
                Some(k) => k,
                None => {
                    per.push((f.coord, Default::default()));
                    per.len() - 1
                }
            };
            for (p, m) in &f.points {
                if let Some(i) = points.iter().position(|q| q == p) {
                    per[k].1[slot].push((i, *m as u32));
                }
            }
        }
        Placed { points, patterns: per.into_iter().map(|(_, f)| CoordPattern::new(f)).collect() }
    }

    fn tower(&self) -> FieldTower {
        self.points
            .iter()
            .find_map(|p| match p {
                ProjectivePoint::Finite(a) => Some(a.tower().clone()),
                ProjectivePoint::Infinity => None,
            })
            .unwrap_or_else(FieldTower::rationals)
    }

    fn key(&self, perm: Option<&[usize]>) -> Vec<Blocks> {
        let mut v: Vec<Blocks> = self
            .patterns
            .iter()
            .map(|c| match perm {
                Some(p) => c.permuted(p).unlabeled(),
                None => c.unlabeled(),
            })
            .collect();
        v.sort();
        v
    }
}

fn to_tower(p: &ProjectivePoint, t: &FieldTower) -> Option<ProjectivePoint> {
    match p {
        ProjectivePoint::Infinity => Some(ProjectivePoint::Infinity),
        ProjectivePoint::Finite(a) if a.tower().same(t) => Some(p.clone()),
        ProjectivePoint::Finite(a) => match a.as_rational() {
            Some(q) => Some(ProjectivePoint::Finite(AlgebraicNumber::from_q(t, q))),
            None => a.lift_to(t).ok().map(ProjectivePoint::Finite),
        },
    }
}

/// A Möbius map carrying `a` onto `b` together with its fiber patterns, if any.
pub fn equivalence(a: &Placed, b: &Placed) -> Option<Mobius> {
    if a.points.len() != b.points.len() || a.patterns.len() != b.patterns.len() || a.points.len() < 3 {
        return None;
    }
    let (ta, tb) = (a.tower(), b.tower());
    let t = if ta.degree() >= tb.degree() { ta } else { tb };
    let pa: Vec<ProjectivePoint> = a.points.iter().map(|p| to_tower(p, &t)).collect::<Option<_>>()?;
    let pb: Vec<ProjectivePoint> = b.points.iter().map(|p| to_tower(p, &t)).collect::<Option<_>>()?;
    let target = b.key(None);
    let n = pb.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let Some(m) = Mobius::through(&t, [&pa[0], &pa[1], &pa[2]], [&pb[i], &pb[j], &pb[k]]) else { continue };
                let Some(perm) = induced_permutation(&m, &pa, &pb) else { continue };
                if a.key(Some(&perm)) == target {
                    return Some(m);
                }
            }
        }
    }
    None
}

/// Builds certificate data `Y³ = c · Π (X - s)^{m_s}` for an embedding with branch set
/// `points` (containing `∞`), trying `m_s ∈ {1, 2}` until every `R(R - 1)/F` is a cube.
pub fn regenerate(id: &str, points: &[ProjectivePoint], maps: &[RationalFunction; 3]) -> Result<CertificateData, SearchError> {
    if maps.iter().any(|m| m.is_constant()) {
        return Err(SearchError::Malformed(format!("{id}: constant coordinates are not regenerated")));
    }
    let t0 = maps[0].tower().clone();
    let finite: Vec<AlgebraicNumber> = points
        .iter()
        .filter_map(|p| match p {
            ProjectivePoint::Finite(a) => Some(a.clone()),
            ProjectivePoint::Infinity => None,
        })
        .collect();
    let has_inf = finite.len() < points.len();
    for mask in 0u32..(1 << finite.len()) {
        let roots: Vec<(AlgebraicNumber, usize)> =
            finite.iter().enumerate().map(|(k, a)| (a.clone(), 1 + ((mask >> k) & 1) as usize)).collect();
        let deg: usize = roots.iter().map(|r| r.1).sum();
        if !deg.is_multiple_of(3) != has_inf {
            continue;
        }
        let f = Polynomial::from_roots(&t0, &roots);
        if let Some(data) = try_curve(id, f, &roots, maps)? {
            return Ok(data);
        }
    }
    Err(SearchError::Inconclusive(format!("{id}: no superelliptic model makes every coordinate lift")))
}

fn try_curve(
    id: &str,
    f: Polynomial,
    roots: &[(AlgebraicNumber, usize)],
    maps: &[RationalFunction; 3],
) -> Result<Option<CertificateData>, SearchError> {
    let mut t = f.tower().clone();
    let one = RationalFunction::constant(&AlgebraicNumber::one(&t));
    let ratio = maps[0].mul(&maps[0].sub(&one)).div(&RationalFunction::from_poly(f.clone()))?;
    let lead = &ratio.numerator().lc() / &ratio.denominator().lc();
    let mut curve_poly = f.scale(&lead);
    let mut qs: Vec<RationalFunction> = Vec::new();
    for r in maps {
        let r = r.lift_to(&t)?;
        match cube_cofactor(&r, &curve_poly.lift_to(&t)?, true)? {
            CubeResult::Cube { q, tower } => {
                if !tower.same(&t) {
                    t = tower;
                    curve_poly = curve_poly.lift_to(&t)?;
                }
                qs.push(q);
            }
            CubeResult::NotACube { .. } => return Ok(None),
        }
    }
    let qs: Vec<RationalFunction> = qs.iter().map(|q| q.lift_to(&t)).collect::<Result<_, _>>()?;
    let xs: Vec<RationalFunction> = maps.iter().map(|r| r.lift_to(&t)).collect::<Result<_, _>>()?;
    let curve = CurveSpec {
        n: 3,
        lead: lead.lift_to(&t)?,
        roots: roots.iter().map(|(a, m)| Ok((a.lift_to(&t)?, *m))).collect::<Result<_, SearchError>>()?,
    };
    let data = assemble(id, curve, xs.try_into().unwrap(), Some(qs.try_into().unwrap()))?;
    Ok(Some(data))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CrossCheck {
    pub source: String,
    pub certificate: String,
    pub regenerated_tower: String,
    pub verified: bool,
    pub equivalent: bool,
    pub map: Option<String>,
}

/// Regenerates a certificate from search output, verifies it, and compares it with a shipped one.
pub fn cross_check(source: &str, points: &[ProjectivePoint], maps: &[RationalFunction; 3], shipped: &CertificateData) -> Result<CrossCheck, SearchError> {
    let data = regenerate(source, points, maps)?;
    let verified = EmbeddingCertificate::certify(&data).is_ok();
    let m = equivalence(&Placed::from_certificate(&data), &Placed::from_certificate(shipped));
    Ok(CrossCheck {
        source: source.to_string(),
        certificate: shipped.id.clone(),
        regenerated_tower: data.tower.name().to_string(),
        verified,
        equivalent: m.is_some(),
        map: m.map(|m| m.to_string()),
    })
}
