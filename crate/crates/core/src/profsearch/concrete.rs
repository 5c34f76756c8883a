//! Coordinates on a concrete branch set: realizing a fiber pattern by a rational
//! function, enumerating all realizable patterns, and combining them into triples.

use itertools::Itertools;
use rayon::prelude::*;

use super::assign::{lift_ok, separates, CoordPattern};
use crate::embedverify::verify_injectivity;
use crate::numkernel::{AlgebraicNumber, FieldTower, Polynomial};
use crate::ratmap::{ProjectivePoint, RationalFunction};

/// `Π (X - p)^e` over the finite points of a fiber, padded to `δ + 1` coefficients.
pub fn fiber_form(t: &FieldTower, points: &[ProjectivePoint], fiber: &[(usize, u32)], delta: usize) -> Vec<AlgebraicNumber> {
    let mut p = Polynomial::one(t);
    for &(k, e) in fiber {
        if let ProjectivePoint::Finite(a) = &points[k] {
            p = &p * &Polynomial::linear_root(a).pow(e as usize);
        }
    }
    let mut c = p.into_coeffs();
    c.resize(delta + 1, AlgebraicNumber::zero(t));
    c
}

/// The rational function with the given fibers over `0, ∞, 1`, if one exists:
/// `F_1` must lie in the span of `F_0` and `F_∞`.
pub fn realize(t: &FieldTower, points: &[ProjectivePoint], pat: &CoordPattern) -> Option<RationalFunction> {
    let delta = pat.delta() as usize;
    let [f0, finf, f1] = [0, 1, 2].map(|b| fiber_form(t, points, &pat.fibers[b], delta));
    // a F0 + b F∞ = F1 from two independent rows, then checked on all rows
    let mut sol = None;
    'rows: for i in 0..=delta {
        for j in i + 1..=delta {
            let det = &(&f0[i] * &finf[j]) - &(&f0[j] * &finf[i]);
            if det.is_zero() {
                continue;
            }
            let a = &(&(&f1[i] * &finf[j]) - &(&f1[j] * &finf[i])) / &det;
            let b = &(&(&f0[i] * &f1[j]) - &(&f0[j] * &f1[i])) / &det;
            sol = Some((a, b));
            break 'rows;
        }
    }
    let (a, b) = sol?;
    if a.is_zero() || b.is_zero() {
        return None;
    }
    if (0..=delta).any(|k| (&(&a * &f0[k]) + &(&b * &finf[k])) != f1[k]) {
        return None;
    }
    let kappa = -&(&a / &b);
    let num = Polynomial::new(t, f0).scale(&kappa);
    let den = Polynomial::new(t, finf);
    RationalFunction::new(num, den).ok()
}

/// Allowed multiplicities at a point of class 0 (`r ≡ 0`) or class 1 (`r ≡ 1`), up to `delta`.
fn allowed_e(class: u8, delta: u32) -> Vec<u32> {
    (1..=delta).filter(|e| (e - 1) % 3 == class as u32).collect()
}

/// Unlabeled patterns of degree `delta` on `classes.len()` points, fibers in order of first appearance.
pub fn candidate_patterns(classes: &[u8], delta: u32) -> Vec<CoordPattern> {
    let mut out = Vec::new();
    let mut fibers: [Vec<(usize, u32)>; 3] = Default::default();
    let mut sums = [0u32; 3];
    fn go(
        k: usize,
        classes: &[u8],
        delta: u32,
        fibers: &mut [Vec<(usize, u32)>; 3],
        sums: &mut [u32; 3],
        out: &mut Vec<CoordPattern>,
    ) {
        if k == classes.len() {
            if sums.iter().all(|&s| s == delta) {
                out.push(CoordPattern::new(fibers.clone()));
            }
            return;
        }
        let opened = fibers.iter().filter(|f| !f.is_empty()).count();
        for b in 0..3usize.min(opened + 1) {
            for e in allowed_e(classes[k], delta) {
                if sums[b] + e > delta {
                    continue;
                }
                fibers[b].push((k, e));
                sums[b] += e;
                go(k + 1, classes, delta, fibers, sums, out);
                sums[b] -= e;
                fibers[b].pop();
            }
        }
    }
    go(0, classes, delta, &mut fibers, &mut sums, &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct RealizedCoordinate {
    pub pattern: CoordPattern,
    pub map: RationalFunction,
}

/// Every realizable coordinate of the given degrees on the concrete branch set.
pub fn realizable_coordinates(t: &FieldTower, points: &[ProjectivePoint], classes: &[u8], deltas: &[u32]) -> Vec<RealizedCoordinate> {
    let cands: Vec<CoordPattern> = deltas.iter().flat_map(|&dl| candidate_patterns(classes, dl)).collect();
    cands
        .into_par_iter()
        .filter_map(|p| realize(t, points, &p).map(|map| RealizedCoordinate { pattern: p, map }))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Embedding {
    /// Patterns of the non-constant coordinates.
    pub patterns: Vec<CoordPattern>,
    pub maps: [RationalFunction; 3],
}

#[derive(Clone, Debug, Default, serde::Serialize, PartialEq, Eq)]
pub struct CombinationCounts {
    pub pairs: usize,
    pub failed_lift: usize,
    pub failed_separation: usize,
    pub failed_injectivity: usize,
    pub embeddings: usize,
}

/// Triples `(first, x, y)` with `x` drawn from `pool` and `y` from `pool` or a constant,
/// that satisfy the point conditions, separate the branch points and are injective on the line.
pub fn combine_with(first: &RealizedCoordinate, pool: &[RealizedCoordinate], points: &[ProjectivePoint]) -> (Vec<Embedding>, CombinationCounts) {
    let d = points.len();
    let mut counts = CombinationCounts::default();
    let mut candidates = Vec::new();
    let pairs = (0..pool.len())
        .tuple_combinations::<(usize, usize)>()
        .map(|(i, j)| (i, Some(j)))
        .chain((0..pool.len()).flat_map(|i| [(i, Some(i)), (i, None)]));
    for (i, j) in pairs {
        counts.pairs += 1;
        let mut c = vec![&first.pattern, &pool[i].pattern];
        c.extend(j.map(|j| &pool[j].pattern));
        if !lift_ok(d, &c) {
            counts.failed_lift += 1;
            continue;
        }
        if !separates(d, &c) {
            counts.failed_separation += 1;
            continue;
        }
        candidates.push((i, j));
    }
    let t = first.map.tower().clone();
    let constant = RationalFunction::constant(&AlgebraicNumber::zero(&t));
    let checked: Vec<Option<Embedding>> = candidates
        .par_iter()
        .map(|&(i, j)| {
            let third = j.map_or_else(|| constant.clone(), |j| pool[j].map.clone());
            let maps = [first.map.clone(), pool[i].map.clone(), third];
            let mut patterns = vec![first.pattern.clone(), pool[i].pattern.clone()];
            patterns.extend(j.map(|j| pool[j].pattern.clone()));
            verify_injectivity(&maps, points).ok().then_some(Embedding { patterns, maps })
        })
        .collect();
    let mut out = Vec::new();
    for e in checked {
        match e {
            Some(e) => out.push(e),
            None => counts.failed_injectivity += 1,
        }
    }
    counts.embeddings = out.len();
    (out, counts)
}
