//! The search driver: one report per `d`, with a status the CLI maps to an exit code.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::assign::{canonical_form, Blocks, CoordPattern, Shape};
use super::concrete::{combine_with, realizable_coordinates, realize, CombinationCounts, Embedding, RealizedCoordinate};
use super::crosscheck::{cross_check, equivalence, CrossCheck, Placed};
use super::dc7::{dc7_scan, Dc7Report};
use super::exclude::{exclude_small, ExclusionTrace};
use super::mobius::set_symmetries;
use super::moduli::{solve_moduli, ModuliOutcome, ModuliRecord};
use super::{enumerate_fiber_assignments, hurwitz_solutions, named_families_d6, HurwitzSolution, SearchError};
use crate::embedverify::{load_shipped, CertificateData, SHIPPED};
use crate::numkernel::q_i;
use crate::ratmap::{ProjectivePoint, RationalFunction};

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub enum SearchStatus {
    /// Nonexistence certified.
    Confirmed,
    /// Curves found, every subcase resolved.
    Found,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub d: usize,
    pub rows: Vec<HurwitzSolution>,
    pub status: SearchStatus,
    pub summary: String,
    pub exclusion: Option<ExclusionTrace>,
    pub sextic: Option<SexticReport>,
    pub septic: Option<Dc7Report>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSummary {
    pub index: usize,
    pub deltas: [u32; 3],
    pub shared_blocks: [usize; 3],
    pub representative: Vec<String>,
    /// Embedding classes found in this orbit.
    pub classes: Vec<String>,
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryLink {
    pub from: String,
    pub to: String,
    pub map: String,
}

/// Solutions of the quadratic families that are related by a Möbius map.
#[derive(Clone, Debug, Serialize)]
pub struct SolutionClass {
    pub certificate: Option<String>,
    pub members: Vec<String>,
    pub links: Vec<SymmetryLink>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuarticClass {
    pub certificate: Option<String>,
    pub deltas: Vec<u32>,
    pub members: usize,
    pub maps: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuarticReport {
    pub points: Vec<String>,
    pub first: String,
    pub pool: usize,
    pub symmetries: usize,
    pub counts: CombinationCounts,
    pub classes: Vec<QuarticClass>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SexticReport {
    pub sanity: ExclusionTrace,
    pub orbits: Vec<OrbitSummary>,
    pub families: Vec<ModuliRecord>,
    pub quadratic_classes: Vec<SolutionClass>,
    pub quartic: QuarticReport,
    pub cross_checks: Vec<CrossCheck>,
}

impl SexticReport {
    /// Every embedding class found, labeled by its certificate id when one matches.
    pub fn class_labels(&self) -> Vec<String> {
        let q = self.quadratic_classes.iter().map(|c| c.certificate.clone());
        let r = self.quartic.classes.iter().map(|c| c.certificate.clone());
        q.chain(r).map(|c| c.unwrap_or_else(|| "unmatched".into())).collect()
    }
}

/// A found embedding with the data needed to compare and regenerate it.
struct Found {
    label: String,
    placed: Placed,
    maps: [RationalFunction; 3],
}

fn shipped() -> Result<Vec<CertificateData>, SearchError> {
    SHIPPED.iter().map(|id| load_shipped(id).map_err(SearchError::from)).collect()
}

fn match_certificate(f: &Found, certs: &[CertificateData]) -> Option<usize> {
    certs.iter().position(|c| equivalence(&f.placed, &Placed::from_certificate(c)).is_some())
}

fn quadratic_found(records: &[ModuliRecord]) -> Vec<Found> {
    let mut out = Vec::new();
    for r in records {
        let asg = named_families_d6().into_iter().find(|a| a.label == r.label);
        let Some(asg) = asg else { continue };
        for s in r.solutions() {
            out.push(Found {
                label: format!("{} ({})", r.label, s.tuple().join(", ")),
                placed: Placed { points: s.points.clone(), patterns: asg.coords.to_vec() },
                maps: s.functions.clone().try_into().expect("three coordinates"),
            });
        }
    }
    out
}

fn group(found: &[Found]) -> Vec<(usize, Vec<(usize, Option<String>)>)> {
    let mut classes: Vec<(usize, Vec<(usize, Option<String>)>)> = Vec::new();
    for (k, f) in found.iter().enumerate() {
        let hit = classes.iter_mut().find_map(|(lead, members)| {
            equivalence(&f.placed, &found[*lead].placed).map(|m| (members, m.to_string()))
        });
        match hit {
            Some((members, m)) => members.push((k, Some(m))),
            None => classes.push((k, vec![(k, None)])),
        }
    }
    classes
}

/// `S = {0, ∞, ±1, ±i}` with `x_1 = X⁴`: every coordinate of degree 2 or 4 and every triple.
fn quartic_route() -> Result<(QuarticReport, Vec<Found>, Vec<Vec<CoordPattern>>), SearchError> {
    let t = q_i();
    let i = t.top_generator();
    let points = vec![
        ProjectivePoint::int(&t, 0),
        ProjectivePoint::Infinity,
        ProjectivePoint::int(&t, 1),
        ProjectivePoint::int(&t, -1),
        ProjectivePoint::Finite(i.clone()),
        ProjectivePoint::Finite(-&i),
    ];
    let first_pat = CoordPattern::new([vec![(0, 4)], vec![(1, 4)], (2..6).map(|p| (p, 1)).collect()]);
    let map = realize(&t, &points, &first_pat).ok_or_else(|| SearchError::Inconclusive("X^4 is not realizable".into()))?;
    let first = RealizedCoordinate { pattern: first_pat, map: map.clone() };
    let pool = realizable_coordinates(&t, &points, &[0; 6], &[2, 4]);
    let (embs, counts) = combine_with(&first, &pool, &points);
    let syms = set_symmetries(&t, &points);
    let key = |e: &Embedding| -> Vec<Blocks> {
        syms.iter()
            .map(|(_, perm)| {
                let mut v: Vec<Blocks> = e.patterns.iter().map(|c| c.permuted(perm).unlabeled()).collect();
                v.sort();
                v
            })
            .min()
            .unwrap_or_default()
    };
    let mut classes: BTreeMap<Vec<Blocks>, Vec<&Embedding>> = BTreeMap::new();
    for e in &embs {
        classes.entry(key(e)).or_default().push(e);
    }
    let mut found = Vec::new();
    let mut out = Vec::new();
    let mut patterns = Vec::new();
    for members in classes.values() {
        let e = members[0];
        let mut deltas: Vec<u32> = e.patterns.iter().map(|c| c.delta()).collect();
        deltas.sort_unstable_by(|a, b| b.cmp(a));
        found.push(Found {
            label: format!("quartic {} #{}", deltas.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(""), found.len() + 1),
            placed: Placed { points: points.clone(), patterns: e.patterns.clone() },
            maps: e.maps.clone(),
        });
        patterns.push(e.patterns.clone());
        out.push(QuarticClass {
            certificate: None,
            deltas,
            members: members.len(),
            maps: e.maps.iter().map(|m| m.fmt_var("X")).collect(),
        });
    }
    let report = QuarticReport {
        points: points.iter().map(|p| p.to_string()).collect(),
        first: map.fmt_var("X"),
        pool: pool.len(),
        symmetries: syms.len(),
        counts,
        classes: out,
    };
    Ok((report, found, patterns))
}

fn sextic() -> Result<SexticReport, SearchError> {
    let sanity = exclude_small(6)?;
    let shapes: Vec<Shape> = sanity
        .surviving_shapes
        .iter()
        .flat_map(|(delta, r)| Shape::from_indices(&r.iter().map(|x| x + 1).collect::<Vec<_>>(), *delta))
        .collect();
    let orbits = enumerate_fiber_assignments(6, &shapes);
    let families: Vec<ModuliRecord> =
        named_families_d6().par_iter().map(solve_moduli).collect::<Result<Vec<_>, _>>()?;
    let certs = shipped()?;

    let quad = quadratic_found(&families);
    let mut quadratic_classes = Vec::new();
    let mut cross_checks = Vec::new();
    let mut class_patterns: Vec<(String, Vec<Blocks>)> = Vec::new();
    for (lead, members) in group(&quad) {
        let f = &quad[lead];
        let cert = match_certificate(f, &certs);
        if let Some(c) = cert {
            cross_checks.push(cross_check(&f.label, &f.placed.points, &f.maps, &certs[c])?);
        }
        let name = cert.map(|c| certs[c].id.clone());
        let pats: Vec<&CoordPattern> = f.placed.patterns.iter().collect();
        class_patterns.push((name.clone().unwrap_or_default(), canonical_form(6, [pats[0], pats[1], pats[2]])));
        quadratic_classes.push(SolutionClass {
            certificate: name,
            members: members.iter().map(|(k, _)| quad[*k].label.clone()).collect(),
            links: members
                .iter()
                .filter_map(|(k, m)| m.as_ref().map(|m| SymmetryLink { from: quad[*k].label.clone(), to: f.label.clone(), map: m.clone() }))
                .collect(),
        });
    }

    let (mut quartic, qfound, qpatterns) = quartic_route()?;
    for (k, f) in qfound.iter().enumerate() {
        let cert = match_certificate(f, &certs);
        if let Some(c) = cert {
            cross_checks.push(cross_check(&f.label, &f.placed.points, &f.maps, &certs[c])?);
        }
        quartic.classes[k].certificate = cert.map(|c| certs[c].id.clone());
        if qpatterns[k].len() == 3 {
            let p = &qpatterns[k];
            class_patterns.push((quartic.classes[k].certificate.clone().unwrap_or_default(), canonical_form(6, [&p[0], &p[1], &p[2]])));
        }
    }

    let mut summaries = Vec::new();
    for o in &orbits {
        let classes: Vec<String> = class_patterns.iter().filter(|(_, c)| *c == o.canonical).map(|(n, _)| n.clone()).collect();
        let status = if o.deltas == [2, 2, 2] {
            match solve_moduli(&o.representative)?.outcome {
                ModuliOutcome::Solutions(s) => format!("{} solutions", s.len()),
                ModuliOutcome::Empty(e) => format!("empty: {}", e.reason),
                ModuliOutcome::Inconclusive(why) => format!("inconclusive: {why}"),
            }
        } else {
            format!("{} classes on the quartic branch set", classes.len())
        };
        summaries.push(OrbitSummary {
            index: o.index,
            deltas: o.deltas,
            shared_blocks: o.shared_blocks,
            representative: o.representative.describe(),
            classes,
            status,
        });
    }
    Ok(SexticReport { sanity, orbits: summaries, families, quadratic_classes, quartic, cross_checks })
}

fn sextic_inconclusive(r: &SexticReport) -> bool {
    r.families.iter().any(|f| matches!(f.outcome, ModuliOutcome::Inconclusive(_)))
        || r.orbits.iter().any(|o| o.status.starts_with("inconclusive"))
}

/// Runs the search for `d ∈ {4, 5, 6, 7}`.
pub fn search(d: usize) -> Result<SearchReport, SearchError> {
    let rows = hurwitz_solutions(d);
    let mut report = SearchReport {
        d,
        rows,
        status: SearchStatus::Confirmed,
        summary: String::new(),
        exclusion: None,
        sextic: None,
        septic: None,
    };
    match d {
        4 | 5 => {
            let tr = exclude_small(d)?;
            if tr.is_empty() {
                report.summary = "no curves: confirmed".into();
            } else {
                report.status = SearchStatus::Inconclusive;
                report.summary = format!("{} triples survive the combinatorial conditions", tr.survivors);
            }
            report.exclusion = Some(tr);
        }
        6 => {
            let s = sextic()?;
            let labels = s.class_labels();
            if sextic_inconclusive(&s) {
                report.status = SearchStatus::Inconclusive;
                report.summary = "some families are inconclusive".into();
            } else {
                report.status = SearchStatus::Found;
                report.summary = format!("{} embedding classes: {}", labels.len(), labels.join(", "));
            }
            report.sextic = Some(s);
        }
        7 => {
            let r = dc7_scan()?;
            if !r.conclusive() {
                report.status = SearchStatus::Inconclusive;
                report.summary = r.inconclusive.join("; ");
            } else if r.is_empty() {
                report.summary = "no curves: confirmed".into();
            } else {
                report.status = SearchStatus::Found;
                report.summary = "embeddings found".into();
            }
            report.septic = Some(r);
        }
        _ => return Err(SearchError::UnsupportedD(d)),
    }
    Ok(report)
}
