//! Möbius transformations of the line as 2×2 matrices, and the symmetries of a finite point set.

use std::fmt;

use crate::numkernel::{AlgebraicNumber, FieldTower, Polynomial};
use crate::ratmap::{ProjectivePoint, RationalFunction};

/// `X ↦ (p X + q) / (r X + s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub m: [AlgebraicNumber; 4],
}

impl Mobius {
    pub fn identity(t: &FieldTower) -> Self {
        let (o, z) = (AlgebraicNumber::one(t), AlgebraicNumber::zero(t));
        Mobius { m: [o.clone(), z.clone(), z, o] }
    }

    pub fn tower(&self) -> &FieldTower {
        self.m[0].tower()
    }

    fn det(&self) -> AlgebraicNumber {
        &(&self.m[0] * &self.m[3]) - &(&self.m[1] * &self.m[2])
    }

    pub fn apply(&self, x: &ProjectivePoint) -> ProjectivePoint {
        let [p, q, r, s] = &self.m;
        let (num, den) = match x {
            ProjectivePoint::Finite(a) => (&(p * a) + q, &(r * a) + s),
            ProjectivePoint::Infinity => (p.clone(), r.clone()),
        };
        if den.is_zero() {
            ProjectivePoint::Infinity
        } else {
            ProjectivePoint::Finite(&num / &den)
        }
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Mobius) -> Mobius {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &o.m;
        Mobius { m: [&(a * e) + &(b * g), &(a * f) + &(b * h), &(c * e) + &(d * g), &(c * f) + &(d * h)] }
    }

    pub fn inverse(&self) -> Mobius {
        let [a, b, c, d] = &self.m;
        Mobius { m: [d.clone(), -b, -c, a.clone()] }
    }

    /// The map sending `a0, a1, a2` to `0, ∞, 1`; `None` unless the points are distinct.
    pub fn to_standard(t: &FieldTower, a: [&ProjectivePoint; 3]) -> Option<Mobius> {
        if a[0] == a[1] || a[1] == a[2] || a[0] == a[2] {
            return None;
        }
        let (o, z) = (AlgebraicNumber::one(t), AlgebraicNumber::zero(t));
        use ProjectivePoint::{Finite as F, Infinity as I};
        let m = match a {
            [I, F(a1), F(a2)] => [z, a2 - a1, o, -a1],
            [F(a0), I, F(a2)] => [o, -a0, z, a2 - a0],
            [F(a0), F(a1), I] => [o.clone(), -a0, o, -a1],
            [F(a0), F(a1), F(a2)] => {
                let u = a2 - a1;
                let v = a2 - a0;
                [u.clone(), -&(a0 * &u), v.clone(), -&(a1 * &v)]
            }
            _ => return None,
        };
        let mb = Mobius { m };
        (!mb.det().is_zero()).then_some(mb)
    }

    /// The unique map with `a_k ↦ b_k`.
    pub fn through(t: &FieldTower, a: [&ProjectivePoint; 3], b: [&ProjectivePoint; 3]) -> Option<Mobius> {
        let ma = Self::to_standard(t, a)?;
        let mb = Self::to_standard(t, b)?;
        Some(mb.inverse().compose(&ma))
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        let t = self.tower();
        let num = Polynomial::new(t, vec![self.m[1].clone(), self.m[0].clone()]);
        let den = Polynomial::new(t, vec![self.m[3].clone(), self.m[2].clone()]);
        RationalFunction::new(num, den).expect("invertible Möbius map")
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X -> {}", self.to_rational_function().fmt_var("X"))
    }
}

/// Möbius maps permuting `points`, each with the induced permutation (`perm[i]` is the image index of `i`).
pub fn set_symmetries(t: &FieldTower, points: &[ProjectivePoint]) -> Vec<(Mobius, Vec<usize>)> {
    let n = points.len();
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let Some(m) = Mobius::through(t, [&points[0], &points[1], &points[2]], [&points[i], &points[j], &points[k]])
                else {
                    continue;
                };
                if let Some(perm) = induced_permutation(&m, points, points) {
                    out.push((m, perm));
                }
            }
        }
    }
    out
}

/// Index map `a[i] ↦ b[perm[i]]` when `m` carries `a` onto `b`.
pub fn induced_permutation(m: &Mobius, a: &[ProjectivePoint], b: &[ProjectivePoint]) -> Option<Vec<usize>> {
    let mut perm = Vec::with_capacity(a.len());
    for p in a {
        let img = m.apply(p);
        perm.push(b.iter().position(|q| *q == img)?);
    }
    Some(perm)
}
