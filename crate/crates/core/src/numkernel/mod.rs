//! Exact arithmetic: rationals, algebraic extension towers, univariate
//! polynomials, resultants and factorization.

pub mod error;
pub mod factor;
pub mod field;
pub mod modp;
pub mod mpoly;
pub mod groebner;
pub mod poly;
pub mod resultant;

use std::sync::OnceLock;

pub use error::NumError;
pub use factor::{extend_checked, factor, is_irreducible, roots_in_field};
pub use field::{q, qi, AlgebraicNumber, FieldTower, Q};
pub use poly::Polynomial;
pub use resultant::{resultant, resultant_z, BiPoly};

/// Euler totient.
pub fn euler_phi(d: u64) -> u64 {
    assert!(d >= 1);
    let mut n = d;
    let mut out = d;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// The n-th cyclotomic polynomial over Q, by exact division of `x^n - 1`.
pub fn cyclotomic_polynomial(n: u64) -> Polynomial {
    assert!(n >= 1);
    let t = FieldTower::rationals();
    let mut c = vec![0i64; n as usize + 1];
    c[0] = -1;
    c[n as usize] = 1;
    let mut p = Polynomial::from_ints(&t, &c);
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.exact_div(&cyclotomic_polynomial(d)).expect("cyclotomic division");
        }
    }
    p
}

fn simple_extension(name: &str, minpoly: &[i64]) -> FieldTower {
    let q = FieldTower::rationals();
    extend_checked(&q, name, &Polynomial::from_ints(&q, minpoly)).expect("shipped minimal polynomial")
}

macro_rules! shipped_tower {
    ($(#[$doc:meta])* $fn:ident, $build:expr) => {
        $(#[$doc])*
        pub fn $fn() -> FieldTower {
            static CELL: OnceLock<FieldTower> = OnceLock::new();
            CELL.get_or_init(|| $build).clone()
        }
    };
}

shipped_tower!(
    /// Q(w), w a primitive cube root of unity.
    q_omega,
    simple_extension("w", &[1, 1, 1])
);
shipped_tower!(
    /// Q(i).
    q_i,
    simple_extension("i", &[1, 0, 1])
);
shipped_tower!(
    /// Q(mu), mu a primitive 7th root of unity.
    q_mu,
    simple_extension("mu", &[1, 1, 1, 1, 1, 1, 1])
);
shipped_tower!(
    /// Q(z9), z9 a primitive 9th root of unity.
    q_zeta9,
    simple_extension("z9", &[1, 0, 0, 1, 0, 0, 1])
);
shipped_tower!(
    /// Q(cbrt2).
    q_cbrt2,
    simple_extension("cbrt2", &[-2, 0, 0, 1])
);
shipped_tower!(
    /// Q(i)(cbrt2).
    q_i_cbrt2,
    {
        let b = q_i();
        extend_checked(&b, "cbrt2", &Polynomial::from_ints(&b, &[-2, 0, 0, 1])).expect("x^3 - 2 over Q(i)")
    }
);
shipped_tower!(
    /// Q(b5), b5 a primitive 5th root of unity.
    q_beta5,
    simple_extension("b5", &[1, 1, 1, 1, 1])
);

/// Q(z_n) for any n >= 3.
pub fn cyclotomic_field(n: u64) -> FieldTower {
    let q = FieldTower::rationals();
    let name = format!("z{}", n);
    q.extend_unchecked(&name, cyclotomic_polynomial(n).coeffs()).expect("cyclotomic tower")
}

/// All shipped towers with their display names.
pub fn shipped_towers() -> Vec<FieldTower> {
    vec![q_omega(), q_i(), q_mu(), q_zeta9(), q_i_cbrt2(), q_cbrt2(), q_beta5()]
}

/// Complex embeddings of the generators of a shipped tower (principal roots).
pub fn principal_embedding(t: &FieldTower) -> Vec<(f64, f64)> {
    use std::f64::consts::PI;
    (0..t.depth())
        .map(|k| match t.step_name(k) {
            "w" => ((2.0 * PI / 3.0).cos(), (2.0 * PI / 3.0).sin()),
            "i" => (0.0, 1.0),
            "mu" => ((2.0 * PI / 7.0).cos(), (2.0 * PI / 7.0).sin()),
            "z9" => ((2.0 * PI / 9.0).cos(), (2.0 * PI / 9.0).sin()),
            "b5" => ((2.0 * PI / 5.0).cos(), (2.0 * PI / 5.0).sin()),
            "cbrt2" => (2f64.cbrt(), 0.0),
            s if s.starts_with('z') => {
                let n: f64 = s[1..].parse().unwrap_or(1.0);
                ((2.0 * PI / n).cos(), (2.0 * PI / n).sin())
            }
            _ => (f64::NAN, f64::NAN),
        })
        .collect()
}
