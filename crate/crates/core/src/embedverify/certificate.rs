//! Plain-text certificate files: parsing and canonical emission.

use std::fmt::Write as _;

use crate::numkernel::{q_cbrt2, q_i, q_i_cbrt2, q_mu, q_omega, AlgebraicNumber, FieldTower, Polynomial};
use crate::ratmap::{ProjectivePoint, Target};

use super::VerifyError;

/// `Y^N = lead · Π (X - root)^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub n: u32,
    pub lead: AlgebraicNumber,
    pub roots: Vec<(AlgebraicNumber, usize)>,
}

impl CurveSpec {
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::from_roots(self.lead.tower(), &self.roots).scale(&self.lead)
    }

    pub fn degree(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    /// Roots of `F`, plus `∞` when `N ∤ deg F`.
    pub fn branch_set(&self) -> Vec<ProjectivePoint> {
        let mut s: Vec<ProjectivePoint> = self.roots.iter().map(|(r, _)| ProjectivePoint::Finite(r.clone())).collect();
        if !self.degree().is_multiple_of(self.n as usize) {
            s.push(ProjectivePoint::Infinity);
        }
        s
    }
}

/// `x_j = R_j(X)`, `y_j = Q_j(X) · Y`, stored as raw numerator/denominator pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateMap {
    pub r_num: Polynomial,
    pub r_den: Polynomial,
    pub q_num: Polynomial,
    pub q_den: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberRecord {
    pub coord: usize,
    pub target: Target,
    pub points: Vec<(ProjectivePoint, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateData {
    pub id: String,
    pub tower: FieldTower,
    pub curve: CurveSpec,
    pub maps: Vec<CoordinateMap>,
    pub fibers: Vec<FiberRecord>,
}

pub fn tower_by_name(name: &str) -> Option<FieldTower> {
    Some(match name {
        "Q" => FieldTower::rationals(),
        "Q(i)" => q_i(),
        "Q(cbrt2)" => q_cbrt2(),
        "Q(i)(cbrt2)" => q_i_cbrt2(),
        "Q(w)" => q_omega(),
        "Q(mu)" => q_mu(),
        _ => return None,
    })
}

fn fmt_poly(p: &Polynomial) -> String {
    let c: Vec<String> = p.coeffs().iter().map(|a| a.to_string()).collect();
    format!("[{}]", c.join(", "))
}

fn target_label(t: Target) -> &'static str {
    t.label()
}

impl CertificateData {
    /// Canonical text form; `parse(emit(c)) == c` and `emit(parse(s)) == s` for canonical `s`.
    pub fn emit(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "certificate {}", self.id);
        let _ = writeln!(s, "tower {}", self.tower.name());
        let _ = writeln!(s, "curve {} lead {}", self.curve.n, self.curve.lead);
        for (r, m) in &self.curve.roots {
            let _ = writeln!(s, "root {} {}", r, m);
        }
        for (j, m) in self.maps.iter().enumerate() {
            let _ = writeln!(s, "map {}", j + 1);
            let _ = writeln!(s, "  x.num {}", fmt_poly(&m.r_num));
            let _ = writeln!(s, "  x.den {}", fmt_poly(&m.r_den));
            let _ = writeln!(s, "  y.num {}", fmt_poly(&m.q_num));
            let _ = writeln!(s, "  y.den {}", fmt_poly(&m.q_den));
        }
        for f in &self.fibers {
            let pts: Vec<String> = f.points.iter().map(|(p, m)| format!("{p}@{m}")).collect();
            let _ = writeln!(s, "fiber {} {} = {}", f.coord + 1, target_label(f.target), pts.join(", "));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, VerifyError> {
        let mut lines = text.lines().enumerate().peekable();
        let bad = |n: usize, msg: &str| VerifyError::Format { line: n + 1, detail: msg.to_string() };
        let mut next = |want: &str| -> Result<(usize, String), VerifyError> {
            let (n, l) = lines.next().ok_or_else(|| VerifyError::Format { line: 0, detail: format!("missing '{want}'") })?;
            let rest = l.strip_prefix(want).and_then(|r| r.strip_prefix(' ')).ok_or_else(|| bad(n, &format!("expected '{want}'")))?;
            Ok((n, rest.to_string()))
        };
        let (_, id) = next("certificate")?;
        let (n, tname) = next("tower")?;
        let tower = tower_by_name(&tname).ok_or_else(|| bad(n, "unknown tower"))?;
        let (n, curve) = next("curve")?;
        let (nstr, lead) = curve.split_once(" lead ").ok_or_else(|| bad(n, "expected 'curve <N> lead <c>'"))?;
        let cn: u32 = nstr.parse().map_err(|_| bad(n, "bad exponent"))?;
        let lead = AlgebraicNumber::parse(&tower, lead).map_err(|_| bad(n, "bad leading coefficient"))?;

        let mut roots = Vec::new();
        let mut maps = Vec::new();
        let mut fibers = Vec::new();
        let rest: Vec<(usize, &str)> = lines.collect();
        let mut i = 0;
        while i < rest.len() {
            let (n, l) = rest[i];
            if let Some(r) = l.strip_prefix("root ") {
                let (a, m) = r.rsplit_once(' ').ok_or_else(|| bad(n, "expected 'root <a> <m>'"))?;
                let a = AlgebraicNumber::parse(&tower, a).map_err(|_| bad(n, "bad root"))?;
                roots.push((a, m.parse().map_err(|_| bad(n, "bad multiplicity"))?));
                i += 1;
            } else if let Some(r) = l.strip_prefix("map ") {
                if r.parse::<usize>() != Ok(maps.len() + 1) {
                    return Err(bad(n, "maps must be numbered consecutively from 1"));
                }
                let mut polys = Vec::new();
                for (k, key) in ["  x.num ", "  x.den ", "  y.num ", "  y.den "].iter().enumerate() {
                    let (n2, l2) = *rest.get(i + 1 + k).ok_or_else(|| bad(n, "truncated map"))?;
                    let body = l2.strip_prefix(key).ok_or_else(|| bad(n2, &format!("expected '{}'", key.trim())))?;
                    polys.push(parse_poly(&tower, body).ok_or_else(|| bad(n2, "bad coefficient list"))?);
                }
                let mut it = polys.into_iter();
                maps.push(CoordinateMap {
                    r_num: it.next().unwrap(),
                    r_den: it.next().unwrap(),
                    q_num: it.next().unwrap(),
                    q_den: it.next().unwrap(),
                });
                i += 5;
            } else if let Some(r) = l.strip_prefix("fiber ") {
                let (head, body) = r.split_once(" = ").ok_or_else(|| bad(n, "expected 'fiber <j> <c> = ...'"))?;
                let (j, c) = head.split_once(' ').ok_or_else(|| bad(n, "expected 'fiber <j> <c>'"))?;
                let coord = j.parse::<usize>().ok().filter(|&j| j >= 1).ok_or_else(|| bad(n, "bad coordinate"))? - 1;
                let target = match c {
                    "0" => Target::Zero,
                    "1" => Target::One,
                    "inf" => Target::Infinity,
                    _ => return Err(bad(n, "bad target")),
                };
                let mut points = Vec::new();
                for item in body.split(", ") {
                    let (p, m) = item.rsplit_once('@').ok_or_else(|| bad(n, "expected 'point@mult'"))?;
                    let p = if p == "inf" {
                        ProjectivePoint::Infinity
                    } else {
                        ProjectivePoint::Finite(AlgebraicNumber::parse(&tower, p).map_err(|_| bad(n, "bad fiber point"))?)
                    };
                    points.push((p, m.parse().map_err(|_| bad(n, "bad multiplicity"))?));
                }
                fibers.push(FiberRecord { coord, target, points });
                i += 1;
            } else {
                return Err(bad(n, "unexpected line"));
            }
        }
        if maps.len() != 3 {
            return Err(VerifyError::Format { line: 0, detail: format!("expected 3 maps, found {}", maps.len()) });
        }
        if fibers.iter().any(|f| f.coord >= 3) {
            return Err(VerifyError::Format { line: 0, detail: "fiber coordinate out of range".into() });
        }
        Ok(CertificateData { id, tower, curve: CurveSpec { n: cn, lead, roots }, maps, fibers })
    }
}

fn parse_poly(tower: &FieldTower, body: &str) -> Option<Polynomial> {
    let inner = body.strip_prefix('[')?.strip_suffix(']')?;
    if inner.is_empty() {
        return Some(Polynomial::zero(tower));
    }
    let c = inner.split(", ").map(|s| AlgebraicNumber::parse(tower, s).ok()).collect::<Option<Vec<_>>>()?;
    let p = Polynomial::new(tower, c.clone());
    // canonical lists carry no trailing zeros
    (p.coeffs().len() == c.len()).then_some(p)
}
