//! Exhaustive scan of per-point ramification data across three coordinates.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{hurwitz_solutions, HurwitzSolution, SearchError};
use crate::ratmap::{classify_point, LiftViolation};

/// Per-point `r` values of one coordinate, or a constant coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum CoordOption {
    Constant,
    Active { delta: u32, r: Vec<u32> },
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RowCount {
    pub row: HurwitzSolution,
    /// `r`-vectors with the right sum and allowed residues.
    pub generated: usize,
    /// Those whose indices split into three fibers of total `δ`.
    pub fiber_feasible: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExclusionTrace {
    pub d: usize,
    pub rows: Vec<RowCount>,
    pub triples_examined: u64,
    /// Rejection reason ↦ number of coordinate triples.
    pub rejected: BTreeMap<String, u64>,
    pub survivors: u64,
    /// `δ` with the sorted `r` multiset for every coordinate occurring in a surviving triple.
    pub surviving_shapes: Vec<(u32, Vec<u32>)>,
}

impl ExclusionTrace {
    pub fn is_empty(&self) -> bool {
        self.survivors == 0
    }
}

/// Whether the multiset `e` splits into three nonempty parts each summing to `delta`.
pub(crate) fn fiber_feasible(e: &[u32], delta: u32) -> bool {
    fn go(e: &[u32], k: usize, sums: &mut [u32; 3], counts: &mut [usize; 3], delta: u32) -> bool {
        if k == e.len() {
            return sums.iter().all(|&s| s == delta) && counts.iter().all(|&c| c > 0);
        }
        for b in 0..3 {
            if sums[b] + e[k] <= delta {
                // identical empty blocks are interchangeable
                if counts[b] == 0 && (0..b).any(|c| counts[c] == 0) {
                    continue;
                }
                sums[b] += e[k];
                counts[b] += 1;
                let ok = go(e, k + 1, sums, counts, delta);
                sums[b] -= e[k];
                counts[b] -= 1;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    let mut sorted = e.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    go(&sorted, 0, &mut [0; 3], &mut [0; 3], delta)
}

/// All vectors of length `n` over `allowed(point)` summing to `total`.
pub(crate) fn r_vectors(n: usize, total: u32, allowed: &dyn Fn(usize) -> Vec<u32>) -> Vec<Vec<u32>> {
    fn go(k: usize, n: usize, left: u32, allowed: &dyn Fn(usize) -> Vec<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in allowed(k) {
            if v <= left {
                cur.push(v);
                go(k + 1, n, left - v, allowed, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, n, total, allowed, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn options_for(d: usize, rows: &[HurwitzSolution], counts: &mut Vec<RowCount>) -> Vec<CoordOption> {
    let mut opts = vec![CoordOption::Constant];
    for row in rows {
        let delta = row.delta;
        let allowed = |_: usize| (0..delta).filter(|r| r % 3 != 2).collect::<Vec<u32>>();
        let vs = r_vectors(d, row.gamma0, &allowed);
        let generated = vs.len();
        let feasible: Vec<Vec<u32>> =
            vs.into_iter().filter(|r| fiber_feasible(&r.iter().map(|x| x + 1).collect::<Vec<_>>(), delta)).collect();
        counts.push(RowCount { row: *row, generated, fiber_feasible: feasible.len() });
        opts.extend(feasible.into_iter().map(|r| CoordOption::Active { delta, r }));
    }
    opts
}

/// First violated condition of a triple, or `None` if it survives.
pub(crate) fn triple_violation(d: usize, t: [&CoordOption; 3]) -> Option<&'static str> {
    let active = t.iter().filter(|o| matches!(o, CoordOption::Active { .. })).count();
    if d >= 4 && active < 2 {
        return Some("fewer than two non-constant coordinates");
    }
    if active == 0 {
        return Some("no non-constant coordinate");
    }
    for s in 0..d {
        let r: Vec<Option<u32>> = t
            .iter()
            .map(|o| match o {
                CoordOption::Constant => None,
                CoordOption::Active { r, .. } => Some(r[s]),
            })
            .collect();
        match classify_point(&r) {
            Ok(_) => {}
            Err(LiftViolation::Congruence(_)) => return Some("mod-3 congruence of r at a branch point"),
            Err(LiftViolation::Gcd(_)) => return Some("gcd of ramification indices exceeds 1"),
            Err(LiftViolation::NoActiveCoordinate) => return Some("no non-constant coordinate"),
        }
    }
    None
}

/// Scans every triple of per-coordinate `r`-vectors for `d` branch points.
/// Accepts `d ∈ {4, 5}` and the sanity run `d = 6`.
pub fn exclude_small(d: usize) -> Result<ExclusionTrace, SearchError> {
    if !(4..=6).contains(&d) {
        return Err(SearchError::UnsupportedD(d));
    }
    let rows = hurwitz_solutions(d);
    let mut counts = Vec::new();
    let opts = options_for(d, &rows, &mut counts);
    let mut rejected: BTreeMap<String, u64> = BTreeMap::new();
    let mut survivors = 0u64;
    let mut examined = 0u64;
    let mut shapes: BTreeSet<(u32, Vec<u32>)> = BTreeSet::new();
    // coordinates are interchangeable, so unordered triples suffice
    for i in 0..opts.len() {
        for j in i..opts.len() {
            for k in j..opts.len() {
                examined += 1;
                let t = [&opts[i], &opts[j], &opts[k]];
                match triple_violation(d, t) {
                    Some(why) => *rejected.entry(why.to_string()).or_default() += 1,
                    None => {
                        survivors += 1;
                        for o in t {
                            if let CoordOption::Active { delta, r } = o {
                                let mut s = r.clone();
                                s.sort_unstable_by(|a, b| b.cmp(a));
                                shapes.insert((*delta, s));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(ExclusionTrace {
        d,
        rows: counts,
        triples_examined: examined,
        rejected,
        survivors,
        surviving_shapes: shapes.into_iter().collect(),
    })
}
