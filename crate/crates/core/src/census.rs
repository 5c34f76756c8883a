//! Curves through three singular points: the E(ω)³ census and the
//! translate census on the Z7 torus.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::numkernel::{AlgebraicNumber, FieldTower};
use crate::ratmap::{ramification_profile, ProjectivePoint, RatMapError, RationalFunction};

/// `z ↦ u z + t` on E(ω) with `u = sign · ω^rot` and `t` in the fixed subgroup Z/3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EAutomorphism {
    pub sign: i8,
    pub rot: u8,
    pub t: u8,
}

/// A 3-torsion point `(a + b ω)/3` of E(ω).
pub type Torsion = (u8, u8);

/// The fixed point `(1 + 2ω)/3` of `m_ω`.
pub const FIXED_GENERATOR: Torsion = (1, 2);

fn tor_add(p: Torsion, q: Torsion) -> Torsion {
    ((p.0 + q.0) % 3, (p.1 + q.1) % 3)
}

fn tor_scale(k: u8, p: Torsion) -> Torsion {
    ((k * p.0) % 3, (k * p.1) % 3)
}

fn tor_neg(p: Torsion) -> Torsion {
    ((3 - p.0) % 3, (3 - p.1) % 3)
}

/// `ω (a + b ω) = -b + (a - b) ω`.
fn tor_omega(p: Torsion) -> Torsion {
    ((3 - p.1) % 3, (p.0 + 3 - p.1) % 3)
}

impl EAutomorphism {
    pub const IDENTITY: EAutomorphism = EAutomorphism { sign: 1, rot: 0, t: 0 };

    /// `self ∘ other`.
    pub fn compose(&self, o: &EAutomorphism) -> EAutomorphism {
        // u1 (u2 z + t2) + t1, where units act on Z/3 through their sign
        let t2 = if self.sign == 1 { o.t } else { (3 - o.t) % 3 };
        EAutomorphism { sign: self.sign * o.sign, rot: (self.rot + o.rot) % 3, t: (t2 + self.t) % 3 }
    }

    pub fn inverse(&self) -> EAutomorphism {
        let e = all_automorphisms();
        *e.iter().find(|g| g.compose(self) == Self::IDENTITY).expect("group inverse")
    }

    pub fn order(&self) -> u32 {
        let mut p = *self;
        let mut k = 1;
        while p != Self::IDENTITY {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Action on 3-torsion points.
    pub fn apply(&self, p: Torsion) -> Torsion {
        let mut q = p;
        for _ in 0..self.rot {
            q = tor_omega(q);
        }
        if self.sign == -1 {
            q = tor_neg(q);
        }
        tor_add(q, tor_scale(self.t, FIXED_GENERATOR))
    }

    /// Induced permutation of the fixed subgroup `{0, 1, 2}`.
    pub fn on_fixed(&self, k: u8) -> u8 {
        let s = if self.sign == 1 { k } else { (3 - k) % 3 };
        (s + self.t) % 3
    }
}

fn all_automorphisms() -> Vec<EAutomorphism> {
    let mut v = Vec::with_capacity(18);
    for sign in [1i8, -1] {
        for rot in 0..3u8 {
            for t in 0..3u8 {
                v.push(EAutomorphism { sign, rot, t });
            }
        }
    }
    v
}

/// The 18 automorphisms of E(ω) preserving its three `m_ω`-fixed points,
/// after checking the group axioms.
pub fn build_aut_group() -> Vec<EAutomorphism> {
    let g = all_automorphisms();
    let set: BTreeSet<_> = g.iter().copied().collect();
    assert_eq!(set.len(), 18);
    for a in &g {
        for b in &g {
            assert!(set.contains(&a.compose(b)));
        }
        assert!(set.contains(&a.inverse()));
        let fixed: BTreeSet<Torsion> = (0..3).map(|k| a.apply(tor_scale(k, FIXED_GENERATOR))).collect();
        assert_eq!(fixed, (0..3).map(|k| tor_scale(k, FIXED_GENERATOR)).collect());
    }
    g
}

/// One coordinate of a curve in E(ω)³ parametrized by its first non-constant coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Coord {
    /// A fixed point `k · (1 + 2ω)/3`.
    Const(u8),
    Map(EAutomorphism),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CurveLabel3 {
    pub coords: [Coord; 3],
}

impl CurveLabel3 {
    pub fn nonconstant(&self) -> usize {
        self.coords.iter().filter(|c| matches!(c, Coord::Map(_))).count()
    }

    /// The image of the 3-torsion of the parameter curve.
    pub fn torsion_points(&self) -> BTreeSet<[Torsion; 3]> {
        let mut out = BTreeSet::new();
        for a in 0..3 {
            for b in 0..3 {
                let z = (a, b);
                out.insert(self.coords.map(|c| match c {
                    Coord::Const(k) => tor_scale(k, FIXED_GENERATOR),
                    Coord::Map(f) => f.apply(z),
                }));
            }
        }
        out
    }

    /// The quotient maps on the line, with fixed points `0, 1, 2` sent to `0, 1, ∞`.
    pub fn quotient_maps(&self, t: &FieldTower) -> [RationalFunction; 3] {
        self.coords.map(|c| match c {
            Coord::Const(k) => RationalFunction::constant(&AlgebraicNumber::from_int(t, k as i64)),
            Coord::Map(f) => permutation_mobius(t, [f.on_fixed(0), f.on_fixed(1), f.on_fixed(2)]),
        })
    }
}

/// The Möbius map sending `0, 1, ∞` (indices 0, 1, 2) to the indexed targets.
pub fn permutation_mobius(t: &FieldTower, perm: [u8; 3]) -> RationalFunction {
    let n = |v: i64| AlgebraicNumber::from_int(t, v);
    // (a X + b) / (c X + d)
    let (a, b, c, d) = match perm {
        [0, 1, 2] => (1, 0, 0, 1),
        [1, 0, 2] => (-1, 1, 0, 1),
        [2, 1, 0] => (0, 1, 1, 0),
        [0, 2, 1] => (1, 0, 1, -1),
        [1, 2, 0] => (0, 1, -1, 1),
        [2, 0, 1] => (1, -1, 1, 0),
        _ => unreachable!("not a permutation"),
    };
    RationalFunction::mobius(&n(a), &n(b), &n(c), &n(d)).expect("invertible")
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TripleCensus {
    pub l1: usize,
    pub l2: usize,
    pub l3: usize,
    pub total: usize,
    pub collisions: usize,
}

/// All canonical labels: the first non-constant coordinate is the identity.
pub fn enumerate_dc3_labels() -> Vec<CurveLabel3> {
    let aut = build_aut_group();
    let mut out = Vec::new();
    for first in 0..3 {
        let mut stack: Vec<Vec<Coord>> = vec![Vec::new()];
        for j in 0..3 {
            let opts: Vec<Coord> = if j < first {
                (0..3).map(Coord::Const).collect()
            } else if j == first {
                vec![Coord::Map(EAutomorphism::IDENTITY)]
            } else {
                (0..3).map(Coord::Const).chain(aut.iter().map(|&f| Coord::Map(f))).collect()
            };
            stack = stack.into_iter().flat_map(|p| opts.iter().map(move |o| [p.clone(), vec![*o]].concat())).collect();
        }
        out.extend(stack.into_iter().map(|v| CurveLabel3 { coords: [v[0], v[1], v[2]] }));
    }
    out.sort();
    out
}

pub fn count_dc3_triple() -> TripleCensus {
    let labels = enumerate_dc3_labels();
    let mut counts = [0usize; 4];
    let mut sets = BTreeSet::new();
    for l in &labels {
        counts[l.nonconstant()] += 1;
        sets.insert(l.torsion_points());
    }
    TripleCensus { l1: counts[1], l2: counts[2], l3: counts[3], total: sets.len(), collisions: labels.len() - sets.len() }
}

/// Checks every counted curve against the ramification-profile rules with `d = 3`.
pub fn verify_dc3_profiles() -> Result<usize, RatMapError> {
    let q = FieldTower::rationals();
    let branch = vec![ProjectivePoint::int(&q, 0), ProjectivePoint::int(&q, 1), ProjectivePoint::Infinity];
    let mut n = 0;
    for l in enumerate_dc3_labels() {
        let p = ramification_profile(&l.quotient_maps(&q), &branch)?;
        for c in p.coords.iter().filter(|c| !c.constant) {
            if c.delta != 1 {
                return Err(RatMapError::Hurwitz { coord: 0, detail: format!("degree {} on a d = 3 curve", c.delta) });
            }
        }
        n += 1;
    }
    Ok(n)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KleinCensus {
    pub subset: [u8; 3],
    pub labels: usize,
    pub count: usize,
    /// `−S` is not a translate of `S`.
    pub asymmetric: bool,
    /// The translates `S + q` are pairwise distinct.
    pub translates_distinct: bool,
    pub flag: Option<String>,
}

fn normalize_subset(s: &[u8]) -> Option<[u8; 3]> {
    let mut v: Vec<u8> = s.iter().map(|x| x % 7).collect();
    v.sort();
    v.dedup();
    if v.len() != 3 || v[0] != 0 {
        return None;
    }
    Some([v[0], v[1], v[2]])
}

fn point_set(s: &[u8; 3], q: u8, eps: i8, base: u8) -> [u8; 3] {
    let mut v = s.map(|x| {
        let y = (x + 7 - base) % 7;
        let y = if eps == 1 { y } else { (7 - y) % 7 };
        (y + q) % 7
    });
    v.sort();
    v
}

/// Counts the curves `t_{-q}(ε K)` through the Z7 fixed points, where `K` meets the
/// fixed set in `S`, identifying labels that give the same point set.
pub fn count_dc3_klein(subset: &[u8]) -> Option<KleinCensus> {
    let s = normalize_subset(subset)?;
    let mut sets = BTreeSet::new();
    let mut labels = 0;
    for base in s {
        for q in 0..7 {
            for eps in [1i8, -1] {
                labels += 1;
                sets.insert(point_set(&s, q, eps, base));
            }
        }
    }
    let translates: BTreeSet<[u8; 3]> = (0..7).map(|q| point_set(&s, q, 1, 0)).collect();
    let neg = point_set(&s, 0, -1, 0);
    let asymmetric = !translates.contains(&neg);
    let translates_distinct = translates.len() == 7;
    let flag = if asymmetric { None } else { Some("-S is a translate of S; the involution does not give new curves".into()) };
    Some(KleinCensus { subset: s, labels, count: sets.len(), asymmetric, translates_distinct, flag })
}

/// All 15 three-subsets of Z/7 containing 0.
pub fn scan_klein_subsets() -> Vec<KleinCensus> {
    let mut out = Vec::new();
    for a in 1..7u8 {
        for b in a + 1..7 {
            out.push(count_dc3_klein(&[0, a, b]).unwrap());
        }
    }
    out
}
