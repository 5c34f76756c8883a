//! Rational self-maps of the projective line: fibers over 0, 1, ∞,
//! ramification profiles and the cube-root lift to the curve.

use std::fmt;

use thiserror::Error;

use crate::numkernel::{extend_checked, factor, roots_in_field, AlgebraicNumber, FieldTower, NumError, Polynomial};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RatMapError {
    #[error("constant map has no fibers")]
    Constant,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("not a W_C candidate: coordinate {coord} has fiber point {point} outside the branch set")]
    NotCandidate { coord: usize, point: String },
    #[error("Hurwitz inconsistency in coordinate {coord}: {detail}")]
    Hurwitz { coord: usize, detail: String },
    #[error("malformed curve polynomial: {0}")]
    MalformedCurve(String),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Target values over which fibers are taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Zero,
    One,
    Infinity,
}

impl Target {
    pub const ALL: [Target; 3] = [Target::Zero, Target::One, Target::Infinity];

    pub fn label(self) -> &'static str {
        match self {
            Target::Zero => "0",
            Target::One => "1",
            Target::Infinity => "inf",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjectivePoint {
    Finite(AlgebraicNumber),
    Infinity,
}

impl ProjectivePoint {
    pub fn int(t: &FieldTower, v: i64) -> Self {
        ProjectivePoint::Finite(AlgebraicNumber::from_int(t, v))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjectivePoint::Infinity)
    }

    pub fn finite(&self) -> Option<&AlgebraicNumber> {
        match self {
            ProjectivePoint::Finite(a) => Some(a),
            ProjectivePoint::Infinity => None,
        }
    }

    pub fn lift_to(&self, t: &FieldTower) -> Result<Self, NumError> {
        Ok(match self {
            ProjectivePoint::Finite(a) => ProjectivePoint::Finite(a.lift_to(t)?),
            ProjectivePoint::Infinity => ProjectivePoint::Infinity,
        })
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(a) => write!(f, "{a}"),
            ProjectivePoint::Infinity => write!(f, "inf"),
        }
    }
}

/// A fiber point: either a point of the line over the coefficient tower, or a
/// bundle of conjugate points given by an irreducible factor of degree > 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FiberPoint {
    Point(ProjectivePoint),
    Bundle(Polynomial),
}

impl FiberPoint {
    /// Number of geometric points represented.
    pub fn weight(&self) -> usize {
        match self {
            FiberPoint::Point(_) => 1,
            FiberPoint::Bundle(p) => p.deg(),
        }
    }
}

impl fmt::Display for FiberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberPoint::Point(p) => write!(f, "{p}"),
            FiberPoint::Bundle(p) => write!(f, "roots of {p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberEntry {
    pub point: FiberPoint,
    pub mult: usize,
}

/// `numerator / denominator`, coprime with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, RatMapError> {
        if den.is_zero() {
            return Err(RatMapError::ZeroDenominator);
        }
        if !num.tower().same(den.tower()) {
            return Err(NumError::TowerMismatch(num.tower().name().into(), den.tower().name().into()).into());
        }
        let g = Polynomial::gcd(&num, &den);
        let (mut n, mut d) = if g.deg() > 0 {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        } else {
            (num, den)
        };
        let lc = d.lc().inv()?;
        n = n.scale(&lc);
        d = d.scale(&lc);
        Ok(RationalFunction { num: n, den: d })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let one = Polynomial::one(p.tower());
        RationalFunction { num: p, den: one }
    }

    pub fn constant(a: &AlgebraicNumber) -> Self {
        Self::from_poly(Polynomial::constant(a))
    }

    pub fn identity(t: &FieldTower) -> Self {
        Self::from_poly(Polynomial::x(t))
    }

    /// `a (X - b) / (X - c)` style Möbius map from four coefficients `(aX + b) / (cX + d)`.
    pub fn mobius(a: &AlgebraicNumber, b: &AlgebraicNumber, c: &AlgebraicNumber, d: &AlgebraicNumber) -> Result<Self, RatMapError> {
        let t = a.tower();
        let n = Polynomial::new(t, vec![b.clone(), a.clone()]);
        let m = Polynomial::new(t, vec![d.clone(), c.clone()]);
        Self::new(n, m)
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn tower(&self) -> &FieldTower {
        self.num.tower()
    }

    pub fn degree(&self) -> usize {
        if self.num.is_zero() {
            return 0;
        }
        self.num.deg().max(self.den.deg())
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn lift_to(&self, t: &FieldTower) -> Result<Self, NumError> {
        Ok(RationalFunction { num: self.num.lift_to(t)?, den: self.den.lift_to(t)? })
    }

    pub fn eval(&self, p: &ProjectivePoint) -> ProjectivePoint {
        match p {
            ProjectivePoint::Finite(a) => {
                let d = self.den.eval(a);
                if d.is_zero() {
                    ProjectivePoint::Infinity
                } else {
                    ProjectivePoint::Finite(&self.num.eval(a) / &d)
                }
            }
            ProjectivePoint::Infinity => {
                let (n, m) = (self.num.degree(), self.den.deg());
                match n {
                    None => ProjectivePoint::Finite(AlgebraicNumber::zero(self.tower())),
                    Some(n) if n > m => ProjectivePoint::Infinity,
                    Some(n) if n < m => ProjectivePoint::Finite(AlgebraicNumber::zero(self.tower())),
                    Some(_) => ProjectivePoint::Finite(&self.num.lc() / &self.den.lc()),
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).unwrap()
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den).unwrap()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn div(&self, o: &Self) -> Result<Self, RatMapError> {
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn pow(&self, e: usize) -> Self {
        RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Self) -> Self {
        let k = self.degree().max(self.num.deg()).max(self.den.deg());
        let hom = |p: &Polynomial| {
            let mut acc = Polynomial::zero(self.tower());
            for (i, c) in p.coeffs().iter().enumerate() {
                let term = &g.num.pow(i) * &g.den.pow(k - i);
                acc = &acc + &term.scale(c);
            }
            acc
        };
        Self::new(hom(&self.num), hom(&self.den)).unwrap()
    }

    /// The polynomial whose roots are the finite points of the fiber over `c`.
    pub fn fiber_polynomial(&self, c: Target) -> Polynomial {
        match c {
            Target::Zero => self.num.clone(),
            Target::Infinity => self.den.clone(),
            Target::One => &self.num - &self.den,
        }
    }

    /// Multiplicity of ∞ in the fiber over `c`.
    pub fn infinity_multiplicity(&self, c: Target) -> usize {
        let p = self.fiber_polynomial(c);
        self.degree() - p.degree().unwrap_or(0)
    }

    pub fn fiber(&self, c: Target) -> Result<Vec<FiberEntry>, RatMapError> {
        if self.is_constant() {
            return Err(RatMapError::Constant);
        }
        let mut out = Vec::new();
        for (g, m) in factor(&self.fiber_polynomial(c)) {
            let point = if g.deg() == 1 {
                FiberPoint::Point(ProjectivePoint::Finite(-&g.coeff(0)))
            } else {
                FiberPoint::Bundle(g)
            };
            out.push(FiberEntry { point, mult: m });
        }
        let inf = self.infinity_multiplicity(c);
        if inf > 0 {
            out.push(FiberEntry { point: FiberPoint::Point(ProjectivePoint::Infinity), mult: inf });
        }
        Ok(out)
    }

    /// Multiplicity of `p` in the fiber of `self` over `c` (0 if not in the fiber).
    pub fn fiber_multiplicity(&self, p: &ProjectivePoint, c: Target) -> usize {
        match p {
            ProjectivePoint::Infinity => self.infinity_multiplicity(c),
            ProjectivePoint::Finite(a) => self.fiber_polynomial(c).root_multiplicity(a),
        }
    }

    /// `N' D - N D'`, whose finite roots carry the finite ramification.
    pub fn wronskian(&self) -> Polynomial {
        &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative())
    }

    /// Ramification index at ∞.
    pub fn ramification_at_infinity(&self) -> usize {
        let (n, m) = (self.num.deg(), self.den.deg());
        if n != m {
            return n.abs_diff(m);
        }
        let c = &self.num.lc() / &self.den.lc();
        let diff = &self.num - &self.den.scale(&c);
        n - diff.degree().unwrap_or(0)
    }

    /// `Σ (e_p - 1)` over all points of the line.
    pub fn total_ramification(&self) -> usize {
        if self.is_constant() {
            return 0;
        }
        self.wronskian().deg() + self.ramification_at_infinity() - 1
    }

    pub fn fmt_var(&self, v: &str) -> String {
        if self.den.is_one() {
            self.num.fmt_var(v)
        } else {
            format!("({}) / ({})", self.num.fmt_var(v), self.den.fmt_var(v))
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("X"))
    }
}

pub fn degree(f: &RationalFunction) -> usize {
    f.degree()
}

pub fn fiber(f: &RationalFunction, c: Target) -> Result<Vec<FiberEntry>, RatMapError> {
    f.fiber(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileRow {
    pub point: ProjectivePoint,
    /// `r_{s,j}` per coordinate, `None` for constant coordinates.
    pub r: [Option<u32>; 3],
    /// The target each non-constant coordinate sends the point to.
    pub target: [Option<Target>; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateSummary {
    pub delta: usize,
    pub gamma0: usize,
    pub gamma1: usize,
    pub constant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationProfile {
    pub d: usize,
    pub rows: Vec<ProfileRow>,
    pub coords: [CoordinateSummary; 3],
}

pub fn ramification_profile(maps: &[RationalFunction; 3], branch_set: &[ProjectivePoint]) -> Result<RamificationProfile, RatMapError> {
    let d = branch_set.len();
    let mut rows: Vec<ProfileRow> =
        branch_set.iter().map(|p| ProfileRow { point: p.clone(), r: [None; 3], target: [None; 3] }).collect();
    let mut coords: Vec<CoordinateSummary> = Vec::new();
    for (j, f) in maps.iter().enumerate() {
        if f.is_constant() {
            coords.push(CoordinateSummary { delta: 0, gamma0: 0, gamma1: 0, constant: true });
            continue;
        }
        let delta = f.degree();
        let mut gamma0 = 0usize;
        for c in Target::ALL {
            let mut covered = 0usize;
            for row in rows.iter_mut() {
                let m = f.fiber_multiplicity(&row.point, c);
                if m > 0 {
                    row.r[j] = Some(m as u32 - 1);
                    row.target[j] = Some(c);
                    covered += m;
                    gamma0 += m - 1;
                }
            }
            if covered != delta {
                let stray = f
                    .fiber(c)?
                    .into_iter()
                    .find(|e| match &e.point {
                        FiberPoint::Point(p) => !branch_set.contains(p),
                        FiberPoint::Bundle(_) => true,
                    })
                    .map(|e| e.point.to_string())
                    .unwrap_or_default();
                return Err(RatMapError::NotCandidate { coord: j, point: stray });
            }
        }
        if let Some(row) = rows.iter().find(|r| r.r[j].is_none()) {
            return Err(RatMapError::NotCandidate { coord: j, point: format!("{} (branch point off the fibers)", row.point) });
        }
        let total = f.total_ramification();
        if total != 2 * delta - 2 {
            return Err(RatMapError::Hurwitz { coord: j, detail: format!("total ramification {total} != 2*{delta}-2") });
        }
        let gamma1 = total - gamma0;
        if 2 * d as i64 - 6 != (gamma0 + 3 * gamma1) as i64 {
            return Err(RatMapError::Hurwitz {
                coord: j,
                detail: format!("2d-6 = {} but gamma0 + 3 gamma1 = {}", 2 * d as i64 - 6, gamma0 + 3 * gamma1),
            });
        }
        coords.push(CoordinateSummary { delta, gamma0, gamma1, constant: false });
    }
    let coords: [CoordinateSummary; 3] = coords.try_into().unwrap();
    Ok(RamificationProfile { d, rows, coords })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointClass {
    /// All `r ≡ 0 (mod 3)`.
    Smooth,
    /// All `r ≡ 1 (mod 3)`.
    Singular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftViolation {
    Congruence(Vec<u32>),
    Gcd(Vec<u32>),
    NoActiveCoordinate,
}

impl fmt::Display for LiftViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftViolation::Congruence(r) => write!(f, "mixed residues mod 3 in r = {r:?}"),
            LiftViolation::Gcd(r) => write!(f, "gcd of r+1 over {r:?} exceeds 1"),
            LiftViolation::NoActiveCoordinate => write!(f, "no non-constant coordinate"),
        }
    }
}

/// Classifies one point from its `r` values on the non-constant coordinates.
pub fn classify_point(r: &[Option<u32>]) -> Result<PointClass, LiftViolation> {
    let act: Vec<u32> = r.iter().flatten().copied().collect();
    if act.is_empty() {
        return Err(LiftViolation::NoActiveCoordinate);
    }
    let class = act[0] % 3;
    if class == 2 || act.iter().any(|v| v % 3 != class) {
        return Err(LiftViolation::Congruence(act));
    }
    let g = act.iter().fold(0u32, |g, &v| num_integer::gcd(g, v + 1));
    if g != 1 {
        return Err(LiftViolation::Gcd(act));
    }
    Ok(if class == 0 { PointClass::Smooth } else { PointClass::Singular })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub points: Vec<(ProjectivePoint, Result<PointClass, LiftViolation>)>,
}

impl LiftReport {
    pub fn ok(&self) -> bool {
        self.points.iter().all(|(_, r)| r.is_ok())
    }

    pub fn smooth(&self) -> bool {
        self.points.iter().all(|(_, r)| *r == Ok(PointClass::Smooth))
    }

    pub fn first_failure(&self) -> Option<(&ProjectivePoint, &LiftViolation)> {
        self.points.iter().find_map(|(p, r)| r.as_ref().err().map(|e| (p, e)))
    }
}

pub fn check_lift_conditions(profile: &RamificationProfile) -> LiftReport {
    LiftReport { points: profile.rows.iter().map(|row| (row.point.clone(), classify_point(&row.r))).collect() }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CubeResult {
    /// `Q` with `Q^3 F = R (R - 1)`; the tower may extend the input by a cube root.
    Cube { q: RationalFunction, tower: FieldTower },
    NotACube { place: FiberPoint, multiplicity: i64 },
}

/// Finds `Q` with `Q^3 F = R(R-1)`. With `allow_extension`, a non-cube leading
/// constant `c` is handled by adjoining `∛c`.
pub fn cube_cofactor(r: &RationalFunction, f: &Polynomial, allow_extension: bool) -> Result<CubeResult, RatMapError> {
    if f.is_zero() {
        return Err(RatMapError::MalformedCurve("zero polynomial".into()));
    }
    if r.is_constant() {
        return Err(RatMapError::Constant);
    }
    let t = r.tower().clone();
    let f = f.lift_to(&t)?;
    let rr1 = r.mul(&r.sub(&RationalFunction::constant(&AlgebraicNumber::one(&t))));
    let g = rr1.div(&RationalFunction::from_poly(f.clone()))?;
    let mut roots = [Polynomial::one(&t), Polynomial::one(&t)];
    for (k, p) in [g.numerator(), g.denominator()].into_iter().enumerate() {
        for (h, m) in p.squarefree_decomposition() {
            if m % 3 != 0 {
                let (fac, _) = factor(&h).into_iter().next().unwrap();
                let place = if fac.deg() == 1 {
                    FiberPoint::Point(ProjectivePoint::Finite(-&fac.coeff(0)))
                } else {
                    FiberPoint::Bundle(fac)
                };
                let mult = if k == 0 { m as i64 } else { -(m as i64) };
                return Ok(CubeResult::NotACube { place, multiplicity: mult });
            }
            roots[k] = &roots[k] * &h.pow(m / 3);
        }
    }
    let c = g.numerator().lc();
    let cube_poly = Polynomial::new(&t, vec![-&c, AlgebraicNumber::zero(&t), AlgebraicNumber::zero(&t), AlgebraicNumber::one(&t)]);
    let mut rts: Vec<AlgebraicNumber> = roots_in_field(&cube_poly).into_iter().map(|(a, _)| a).collect();
    let (tower, root) = if rts.is_empty() {
        if !allow_extension {
            return Ok(CubeResult::NotACube {
                place: FiberPoint::Point(ProjectivePoint::Infinity),
                multiplicity: 0,
            });
        }
        let t2 = extend_checked(&t, "cbrtc", &cube_poly)?;
        let a = t2.top_generator();
        (t2, a)
    } else {
        rts.sort_by_key(|a| (a.as_rational().is_none(), a.clone()));
        (t.clone(), rts.swap_remove(0))
    };
    let num = roots[0].lift_to(&tower)?.scale(&root);
    let q = RationalFunction::new(num, roots[1].lift_to(&tower)?)?;
    let lhs = q.pow(3).mul(&RationalFunction::from_poly(f.lift_to(&tower)?));
    if lhs != rr1.lift_to(&tower)? {
        return Err(RatMapError::MalformedCurve("cube identity failed on re-expansion".into()));
    }
    Ok(CubeResult::Cube { q, tower })
}
