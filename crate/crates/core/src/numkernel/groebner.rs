//! Buchberger's algorithm in lex order, saturation, and triangular solving.

use super::factor::factor;
use super::field::{AlgebraicNumber, FieldTower};
use super::mpoly::{mono_deg, mono_div, mono_divides, mono_lcm, MPoly, Monomial};

/// Full reduction of `f` modulo `g`.
pub fn normal_form(f: &MPoly, g: &[MPoly]) -> MPoly {
    let mut p = f.clone();
    let mut r = MPoly::zero(f.tower(), f.nvars());
    while let Some((m, c)) = p.pop_leading() {
        match g.iter().find(|h| mono_divides(h.lm(), &m)) {
            Some(h) => {
                let q = mono_div(&m, h.lm());
                let coef = &c * &h.lc().inv().unwrap();
                // the leading term cancels exactly; subtract the tail only
                let mut tail = h.clone();
                tail.pop_leading();
                p.sub_mul_term_assign(&tail, &q, &coef);
            }
            None => r.add_term(m, c),
        }
    }
    r
}

fn spoly(f: &MPoly, g: &MPoly) -> MPoly {
    let l = mono_lcm(f.lm(), g.lm());
    let a = f.mul_term(&mono_div(&l, f.lm()), &f.lc().inv().unwrap());
    let b = g.mul_term(&mono_div(&l, g.lm()), &g.lc().inv().unwrap());
    a.sub(&b)
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced, monic Gröbner basis in lex order. The unit ideal returns `[1]`.
pub fn groebner(input: &[MPoly]) -> Vec<MPoly> {
    let Some(first) = input.first() else { return Vec::new() };
    let tower = first.tower().clone();
    let n = first.nvars();
    let mut g: Vec<MPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut live: Vec<bool> = Vec::new();

    let add = |h: MPoly, g: &mut Vec<MPoly>, pairs: &mut Vec<Pair>, live: &mut Vec<bool>| {
        let k = g.len();
        let lh = h.lm().clone();
        // Gebauer–Möller style chain criterion on existing pairs
        pairs.retain(|p| {
            !(mono_divides(&lh, &p.lcm) && mono_lcm(g[p.i].lm(), &lh) != p.lcm && mono_lcm(g[p.j].lm(), &lh) != p.lcm)
        });
        for i in 0..k {
            if !live[i] {
                continue;
            }
            let l = mono_lcm(g[i].lm(), &lh);
            if coprime(g[i].lm(), &lh) {
                continue;
            }
            pairs.push(Pair { i, j: k, lcm: l });
        }
        for i in 0..k {
            if live[i] && mono_divides(&lh, g[i].lm()) {
                live[i] = false;
            }
        }
        g.push(h);
        live.push(true);
    };

    for f in input {
        let h = normal_form(f, &g);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![MPoly::one(&tower, n)];
        }
        add(h.monic(), &mut g, &mut pairs, &mut live);
    }

    while !pairs.is_empty() {
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| mono_deg(&a.lcm).cmp(&mono_deg(&b.lcm)).then_with(|| a.lcm.cmp(&b.lcm)))
            .unwrap();
        let p = pairs.swap_remove(idx);
        let s = spoly(&g[p.i], &g[p.j]);
        let h = normal_form(&s, &g);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![MPoly::one(&tower, n)];
        }
        add(h.monic(), &mut g, &mut pairs, &mut live);
    }

    // minimalize and interreduce
    let mut min: Vec<MPoly> = Vec::new();
    for (k, f) in g.iter().enumerate() {
        let dominated = g.iter().enumerate().any(|(j, h)| {
            j != k && mono_divides(h.lm(), f.lm()) && (h.lm() != f.lm() || j < k)
        });
        if !dominated {
            min.push(f.clone());
        }
    }
    let mut out = Vec::with_capacity(min.len());
    for k in 0..min.len() {
        let others: Vec<MPoly> = min.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, f)| f.clone()).collect();
        let mut lead = MPoly::zero(&tower, n);
        lead.add_term(min[k].lm().clone(), min[k].lc().clone());
        let mut tail = min[k].clone();
        tail.pop_leading();
        out.push(lead.add(&normal_form(&tail, &others)).monic());
    }
    out.sort_by(|a, b| a.lm().cmp(b.lm()));
    out
}

pub fn is_unit_ideal(g: &[MPoly]) -> bool {
    g.iter().any(|f| !f.is_zero() && f.is_constant())
}

/// Saturation `I : h^inf` via an extra variable `t` with `t h - 1`.
pub fn saturate(ideal: &[MPoly], h: &MPoly) -> Vec<MPoly> {
    let Some(first) = ideal.first() else { return Vec::new() };
    let n = first.nvars();
    let tower = first.tower().clone();
    let shift: Vec<usize> = (1..=n).collect();
    let mut gens: Vec<MPoly> = ideal.iter().map(|f| f.remap(n + 1, &shift)).collect();
    let t = MPoly::var(&tower, n + 1, 0);
    gens.push(t.mul(&h.remap(n + 1, &shift)).sub(&MPoly::one(&tower, n + 1)));
    let gb = groebner(&gens);
    let mut back: Vec<usize> = vec![0];
    back.extend(0..n);
    let elim: Vec<MPoly> = gb.into_iter().filter(|f| f.degree_in(0) == 0).map(|f| f.remap(n, &back)).collect();
    groebner(&elim)
}

/// Whether `f` lies in the radical of the ideal generated by the Gröbner basis `g`,
/// tested by `f^k` for `k <= max_power`.
pub fn in_radical(f: &MPoly, g: &[MPoly], max_power: u32) -> Option<u32> {
    let mut p = MPoly::one(f.tower(), f.nvars());
    for k in 1..=max_power {
        p = normal_form(&p.mul(f), g);
        if p.is_zero() {
            return Some(k);
        }
    }
    None
}

/// A point of a zero-dimensional variety, with the tower its coordinates live in.
#[derive(Clone, Debug)]
pub struct Point {
    pub tower: FieldTower,
    pub coords: Vec<AlgebraicNumber>,
}

#[derive(Clone, Debug)]
pub enum Solved {
    Points(Vec<Point>),
    /// Positive-dimensional: the Gröbner basis at the stage where no univariate
    /// element in the smallest remaining variable exists, with that variable's index.
    Positive { basis: Vec<MPoly>, free_var: usize },
}

/// Solves a zero-dimensional system given by a lex Gröbner basis over `tower`.
/// Irreducible factors of degree > 1 adjoin a new generator named `prefix<k>`.
pub fn solve(gb: &[MPoly], prefix: &str) -> Solved {
    if gb.is_empty() {
        return Solved::Positive { basis: Vec::new(), free_var: 0 };
    }
    let n = gb[0].nvars();
    let mut counter = 0usize;
    match solve_rec(gb, n, prefix, &mut counter) {
        Ok(pts) => Solved::Points(pts),
        Err((basis, v)) => Solved::Positive { basis, free_var: v },
    }
}

fn solve_rec(gb: &[MPoly], active: usize, prefix: &str, counter: &mut usize) -> Result<Vec<Point>, (Vec<MPoly>, usize)> {
    let tower = gb.first().map(|f| f.tower().clone()).unwrap();
    let n = gb[0].nvars();
    if is_unit_ideal(gb) {
        return Ok(Vec::new());
    }
    if active == 0 {
        return Ok(vec![Point { tower, coords: Vec::new() }]);
    }
    let v = active - 1;
    let uni = gb.iter().filter(|f| !f.is_zero()).find(|f| f.support() == vec![v]);
    let Some(uni) = uni else {
        if gb.iter().all(|f| f.is_zero()) {
            return Err((gb.to_vec(), v));
        }
        return Err((gb.to_vec(), v));
    };
    let up = uni.to_univariate(v).unwrap();
    let mut out = Vec::new();
    for (fac, _) in factor(&up) {
        let (t2, root) = if fac.deg() == 1 {
            (tower.clone(), -&fac.coeff(0))
        } else {
            *counter += 1;
            let name = format!("{}{}", prefix, *counter);
            let t2 = tower.extend_unchecked(&name, fac.coeffs()).expect("irreducible factor");
            let r = t2.top_generator();
            (t2, r)
        };
        let reduced: Vec<MPoly> = gb
            .iter()
            .map(|f| f.lift_to(&t2).subst(v, &root))
            .filter(|f| !f.is_zero())
            .collect();
        let sub = if reduced.is_empty() { Vec::new() } else { groebner(&reduced) };
        let sub_pts = if sub.is_empty() {
            if v == 0 {
                vec![Point { tower: t2.clone(), coords: Vec::new() }]
            } else {
                return Err((gb.to_vec(), v - 1));
            }
        } else {
            solve_rec(&sub, v, prefix, counter)?
        };
        for p in sub_pts {
            let mut coords = p.coords;
            let r = root.lift_to(&p.tower).unwrap();
            coords.push(r);
            out.push(Point { tower: p.tower, coords });
        }
    }
    let _ = n;
    Ok(out)
}
