//! Fiber assignments: which branch points each coordinate sends to `0`, `∞`, `1`,
//! and their enumeration up to relabeling.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::numkernel::FieldTower;
use crate::ratmap::{classify_point, ProjectivePoint, Target};

/// Fiber order used throughout: over `0`, over `∞`, over `1`.
pub const FIBER_TARGETS: [Target; 3] = [Target::Zero, Target::Infinity, Target::One];

/// One coordinate: the fibers over `0, ∞, 1` as `(point index, multiplicity)` lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordPattern {
    pub fibers: [Vec<(usize, u32)>; 3],
}

pub type Blocks = Vec<Vec<(usize, u32)>>;

impl CoordPattern {
    pub fn new(mut fibers: [Vec<(usize, u32)>; 3]) -> Self {
        for f in fibers.iter_mut() {
            f.sort_unstable();
        }
        CoordPattern { fibers }
    }

    pub fn delta(&self) -> u32 {
        self.fibers[0].iter().map(|x| x.1).sum()
    }

    pub fn is_consistent(&self, d: usize) -> bool {
        let delta = self.delta();
        let mut seen = vec![false; d];
        for f in &self.fibers {
            if f.is_empty() || f.iter().map(|x| x.1).sum::<u32>() != delta {
                return false;
            }
            for &(p, _) in f {
                if p >= d || seen[p] {
                    return false;
                }
                seen[p] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn entry(&self, p: usize) -> Option<(usize, u32)> {
        self.fibers.iter().enumerate().find_map(|(b, f)| f.iter().find(|x| x.0 == p).map(|x| (b, x.1)))
    }

    pub fn e_at(&self, p: usize) -> u32 {
        self.entry(p).map(|x| x.1).unwrap_or(0)
    }

    pub fn block_of(&self, p: usize) -> Option<usize> {
        self.entry(p).map(|x| x.0)
    }

    /// Fibers as an unordered partition, sorted.
    pub fn unlabeled(&self) -> Blocks {
        let mut b: Blocks = self.fibers.to_vec();
        for x in b.iter_mut() {
            x.sort_unstable();
        }
        b.sort();
        b
    }

    pub fn permuted(&self, sigma: &[usize]) -> CoordPattern {
        CoordPattern::new(self.fibers.clone().map(|f| f.into_iter().map(|(p, e)| (sigma[p], e)).collect()))
    }

    pub fn shape(&self) -> Shape {
        let mut blocks: Vec<Vec<u32>> = self
            .fibers
            .iter()
            .map(|f| {
                let mut e: Vec<u32> = f.iter().map(|x| x.1).collect();
                e.sort_unstable_by(|a, b| b.cmp(a));
                e
            })
            .collect();
        blocks.sort();
        Shape { delta: self.delta(), blocks }
    }

    /// Number of fibers shared verbatim (as point sets) with another coordinate.
    pub fn shared_blocks(&self, o: &CoordPattern) -> usize {
        let mine = self.unlabeled();
        o.unlabeled().iter().filter(|b| mine.contains(b)).count()
    }
}

/// Multiplicity multisets of the three fibers of a coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Shape {
    pub delta: u32,
    pub blocks: Vec<Vec<u32>>,
}

impl Shape {
    /// Every split of the multiplicities `e` into three fibers of total `delta`.
    pub fn from_indices(e: &[u32], delta: u32) -> Vec<Shape> {
        let mut out = Vec::new();
        let n = e.len();
        for assign in (0..n).map(|_| 0..3usize).multi_cartesian_product() {
            let mut blocks = vec![Vec::new(); 3];
            for (k, b) in assign.iter().enumerate() {
                blocks[*b].push(e[k]);
            }
            if blocks.iter().any(|b| b.is_empty() || b.iter().sum::<u32>() != delta) {
                continue;
            }
            for b in blocks.iter_mut() {
                b.sort_unstable_by(|x, y| y.cmp(x));
            }
            blocks.sort();
            let s = Shape { delta, blocks };
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.blocks.iter().map(|b| b.iter().map(|e| e.to_string()).join(",")).collect();
        write!(f, "delta={} [{}]", self.delta, b.join(" | "))
    }
}

/// A branch symbol: a fixed point of the line or a named unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symbol {
    Known(ProjectivePoint),
    Unknown(String),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Known(p) => write!(f, "{p}"),
            Symbol::Unknown(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberAssignment {
    pub label: String,
    pub symbols: Vec<Symbol>,
    pub coords: [CoordPattern; 3],
}

impl FiberAssignment {
    pub fn d(&self) -> usize {
        self.symbols.len()
    }

    pub fn unknowns(&self) -> Vec<String> {
        self.symbols
            .iter()
            .filter_map(|s| match s {
                Symbol::Unknown(n) => Some(n.clone()),
                Symbol::Known(_) => None,
            })
            .collect()
    }

    /// Per coordinate, `target <- {points}` with multiplicities above 1 marked `p^e`.
    pub fn describe(&self) -> Vec<String> {
        self.coords
            .iter()
            .map(|c| {
                c.fibers
                    .iter()
                    .zip(FIBER_TARGETS)
                    .map(|(f, t)| {
                        let pts: Vec<String> = f
                            .iter()
                            .map(|&(p, e)| if e == 1 { self.symbols[p].to_string() } else { format!("{}^{e}", self.symbols[p]) })
                            .collect();
                        format!("{} <- {{{}}}", t.label(), pts.join(", "))
                    })
                    .join("; ")
            })
            .collect()
    }

    /// Each pair of points lies in different fibers of some coordinate.
    pub fn separates_points(&self) -> bool {
        separates(self.d(), &[&self.coords[0], &self.coords[1], &self.coords[2]])
    }

    /// Congruence and gcd conditions at every point.
    pub fn lift_conditions_hold(&self) -> bool {
        lift_ok(self.d(), &[&self.coords[0], &self.coords[1], &self.coords[2]])
    }

    pub fn canonical(&self) -> Vec<Blocks> {
        canonical_form(self.d(), [&self.coords[0], &self.coords[1], &self.coords[2]])
    }
}

pub(crate) fn separates(d: usize, c: &[&CoordPattern]) -> bool {
    (0..d).tuple_combinations().all(|(p, q)| c.iter().any(|x| x.block_of(p) != x.block_of(q)))
}

pub(crate) fn lift_ok(d: usize, c: &[&CoordPattern]) -> bool {
    (0..d).all(|p| {
        let r: Vec<Option<u32>> = c.iter().map(|x| Some(x.e_at(p) - 1)).collect();
        classify_point(&r).is_ok()
    })
}

/// Lexicographically least relabeling over all point permutations and coordinate orders.
pub fn canonical_form(d: usize, c: [&CoordPattern; 3]) -> Vec<Blocks> {
    let mut best: Option<Vec<Blocks>> = None;
    for sigma in (0..d).permutations(d) {
        let mut v: Vec<Blocks> = c.iter().map(|x| x.permuted(&sigma).unlabeled()).collect();
        v.sort();
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    best.unwrap_or_default()
}

/// All coordinates of a given shape on `d` labeled points, with fibers in sorted order.
pub fn patterns_for_shape(d: usize, shape: &Shape) -> Vec<CoordPattern> {
    let evals: Vec<u32> = {
        let mut v: Vec<u32> = shape.blocks.iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut out: Vec<CoordPattern> = Vec::new();
    let choices: Vec<(usize, u32)> = (0..3).flat_map(|b| evals.iter().map(move |&e| (b, e))).collect();
    for assign in (0..d).map(|_| choices.iter().copied()).multi_cartesian_product() {
        let mut fibers: [Vec<(usize, u32)>; 3] = Default::default();
        for (p, (b, e)) in assign.into_iter().enumerate() {
            fibers[b].push((p, e));
        }
        let c = CoordPattern::new(fibers);
        if c.shape() != *shape || !c.is_consistent(d) {
            continue;
        }
        let b = c.unlabeled();
        let c = CoordPattern::new([b[0].clone(), b[1].clone(), b[2].clone()]);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out.sort();
    out
}

/// One orbit of fiber assignments under point relabeling, target relabeling and coordinate order.
#[derive(Clone, Debug)]
pub struct AssignmentOrbit {
    pub index: usize,
    pub deltas: [u32; 3],
    pub canonical: Vec<Blocks>,
    pub representative: FiberAssignment,
    /// Fibers shared verbatim between coordinates `(1,2), (1,3), (2,3)`, sorted descending.
    pub shared_blocks: [usize; 3],
}

fn symbols_for(d: usize) -> Vec<Symbol> {
    if d == 6 {
        return d6_symbols();
    }
    (0..d).map(|k| Symbol::Unknown(format!("p{k}"))).collect()
}

/// Orbits of assignments whose coordinates have the given shapes, subject to point
/// separation and the per-point congruence and gcd conditions.
pub fn enumerate_fiber_assignments(d: usize, shapes: &[Shape]) -> Vec<AssignmentOrbit> {
    let pats: Vec<Vec<CoordPattern>> = shapes.iter().map(|s| patterns_for_shape(d, s)).collect();
    let mut found: BTreeMap<(Vec<u32>, Vec<Blocks>), [CoordPattern; 3]> = BTreeMap::new();
    for (i, j, k) in (0..shapes.len()).flat_map(|i| (i..shapes.len()).flat_map(move |j| (j..shapes.len()).map(move |k| (i, j, k)))) {
        let Some(p1) = pats[i].first() else { continue };
        for p2 in &pats[j] {
            for p3 in &pats[k] {
                let c = [p1, p2, p3];
                if !separates(d, &c) || !lift_ok(d, &c) {
                    continue;
                }
                let mut deltas = vec![p1.delta(), p2.delta(), p3.delta()];
                deltas.sort_unstable();
                let key = (deltas, canonical_form(d, c));
                found.entry(key).or_insert_with(|| [p1.clone(), p2.clone(), p3.clone()]);
            }
        }
    }
    found
        .into_iter()
        .enumerate()
        .map(|(index, ((deltas, canonical), coords))| {
            let mut shared = [
                coords[0].shared_blocks(&coords[1]),
                coords[0].shared_blocks(&coords[2]),
                coords[1].shared_blocks(&coords[2]),
            ];
            shared.sort_unstable_by(|a, b| b.cmp(a));
            AssignmentOrbit {
                index,
                deltas: [deltas[0], deltas[1], deltas[2]],
                canonical,
                representative: FiberAssignment { label: format!("type {index}"), symbols: symbols_for(d), coords },
                shared_blocks: shared,
            }
        })
        .collect()
}

/// Symbols `0, ∞, 1, a, b, c` as point indices `0..6`.
pub fn d6_symbols() -> Vec<Symbol> {
    let t = FieldTower::rationals();
    vec![
        Symbol::Known(ProjectivePoint::int(&t, 0)),
        Symbol::Known(ProjectivePoint::Infinity),
        Symbol::Known(ProjectivePoint::int(&t, 1)),
        Symbol::Unknown("a".into()),
        Symbol::Unknown("b".into()),
        Symbol::Unknown("c".into()),
    ]
}

const S0: usize = 0;
const SINF: usize = 1;
const S1: usize = 2;
const SA: usize = 3;
const SB: usize = 4;
const SC: usize = 5;

fn pairs(f0: [usize; 2], finf: [usize; 2], f1: [usize; 2]) -> CoordPattern {
    CoordPattern::new([f0, finf, f1].map(|b| b.iter().map(|&p| (p, 1)).collect()))
}

/// The 15 perfect matchings of six points.
pub fn perfect_matchings() -> Vec<[[usize; 2]; 3]> {
    let mut out = Vec::new();
    for a in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&x| x != a).collect();
        for b in 1..4 {
            let r2: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != rest[b]).collect();
            out.push([[0, a], [rest[0], rest[b]], [r2[0], r2[1]]]);
        }
    }
    out
}

fn has_pair(m: &[[usize; 2]; 3], p: usize, q: usize) -> bool {
    m.iter().any(|e| (e[0] == p && e[1] == q) || (e[0] == q && e[1] == p))
}

fn edges(c: &CoordPattern) -> Vec<(usize, usize)> {
    c.fibers.iter().map(|f| (f[0].0, f[1].0)).collect()
}

fn pair_with(m: &[[usize; 2]; 3], p: usize) -> [usize; 2] {
    *m.iter().find(|e| e.contains(&p)).unwrap()
}

/// The normalized first two coordinates shared by the named case lists.
pub fn rh12() -> (CoordPattern, CoordPattern) {
    (pairs([S1, SA], [S0, SINF], [SB, SC]), pairs([SINF, SB], [S1, SA], [S0, SC]))
}

/// The second coordinate used for the case with no common fibers.
pub fn rho2_disjoint() -> CoordPattern {
    pairs([S0, SC], [SINF, S1], [SA, SB])
}

/// Third coordinates for the three cases over the normalized first two, with the
/// target labels fixed by the stated rule. Cases `i`, `ii`, `iii`.
pub fn third_coordinates(case: &str) -> Vec<CoordPattern> {
    let (r1, r2) = rh12();
    let ms = perfect_matchings();
    let mut out = Vec::new();
    for m in &ms {
        let c = match case {
            "i" => {
                // shares {b, c} with the first coordinate and nothing else
                if !has_pair(m, SB, SC) || has_pair(m, S0, SINF) {
                    continue;
                }
                let f0 = pair_with(m, SINF);
                let f1 = pair_with(m, S0);
                pairs(f0, [SB, SC], f1)
            }
            "ii" => {
                if edges(&r1).iter().chain(edges(&r2).iter()).any(|&(p, q)| has_pair(m, p, q)) {
                    continue;
                }
                let f0 = pair_with(m, SINF);
                let f1 = pair_with(m, S0);
                let rest = *m.iter().find(|e| !e.contains(&SINF) && !e.contains(&S0)).unwrap();
                pairs(f0, rest, f1)
            }
            "iii" => {
                let r2d = rho2_disjoint();
                if edges(&r1).iter().chain(edges(&r2d).iter()).any(|&(p, q)| has_pair(m, p, q)) {
                    continue;
                }
                let f0 = pair_with(m, S0);
                let finf = pair_with(m, SINF);
                let rest = *m.iter().find(|e| !e.contains(&SINF) && !e.contains(&S0)).unwrap();
                pairs(f0, finf, rest)
            }
            _ => continue,
        };
        out.push(c);
    }
    out
}

/// Listing order of the families: fibers over `0` and over `1` of the third coordinate.
fn listing_rank(case: &str, c: &CoordPattern) -> usize {
    let key = |f: &Vec<(usize, u32)>| {
        let mut v: Vec<usize> = f.iter().map(|x| x.0).collect();
        v.sort_unstable();
        v
    };
    let (f0, f1) = (key(&c.fibers[0]), key(&c.fibers[2]));
    let order: &[([usize; 2], [usize; 2])] = match case {
        "i" => &[([SINF, S1], [S0, SA]), ([SINF, SA], [S0, S1])],
        "ii" => &[([SINF, SA], [S0, SB]), ([SINF, SC], [S0, SA]), ([SINF, S1], [S0, SB]), ([SINF, SC], [S0, S1])],
        _ => &[([S0, SB], [S1, SC]), ([S0, SA], [S1, SB]), ([S0, S1], [SA, SC]), ([S0, SA], [S1, SC])],
    };
    let norm = |a: [usize; 2]| {
        let mut v = a.to_vec();
        v.sort_unstable();
        v
    };
    order.iter().position(|(a, b)| norm(*a) == f0 && norm(*b) == f1).unwrap_or(usize::MAX)
}

/// The ten families `iA, iB, ii1..ii4, iii1..iii4` over symbols `0, ∞, 1, a, b, c`.
pub fn named_families_d6() -> Vec<FiberAssignment> {
    let (r1, r2) = rh12();
    let mut out = Vec::new();
    for case in ["i", "ii", "iii"] {
        let mut thirds = third_coordinates(case);
        thirds.sort_by_key(|c| listing_rank(case, c));
        let second = if case == "iii" { rho2_disjoint() } else { r2.clone() };
        for (k, c) in thirds.into_iter().enumerate() {
            let label = if case == "i" { format!("i{}", ["A", "B"].get(k).copied().unwrap_or("?")) } else { format!("{case}{}", k + 1) };
            out.push(FiberAssignment { label, symbols: d6_symbols(), coords: [r1.clone(), second.clone(), c] });
        }
    }
    out
}

/// The single `d = 3` family: every coordinate is a bijection on the three points.
pub fn d3_family() -> Vec<AssignmentOrbit> {
    let shape = Shape { delta: 1, blocks: vec![vec![1], vec![1], vec![1]] };
    enumerate_fiber_assignments(3, &[shape])
}
