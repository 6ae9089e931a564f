//! Domains between two points: 2-chains D on the surface with
//! ∂D = α − β for a K-path α and an L-path β from x to y.

use std::collections::VecDeque;

use serde::Serialize;

use super::diagram::{Compiled, Surface};
use crate::novikov::{rat, Rational};

/// Extra full turns beyond the primitive forward (a = 0) or backward (a = −1) path.
pub fn winding(a: i64) -> i64 {
    if a >= 0 {
        a
    } else {
        -a - 1
    }
}

/// Edge coefficients of α − β, where α runs along K from x to y plus
/// `a` full turns and β along L plus `b` turns.
fn boundary_coefficients(c: &Compiled, x: usize, y: usize, a: i64, b: i64) -> Vec<i64> {
    let m = c.m();
    let mut coef = vec![0i64; 2 * m];
    let mut path = |pos: &[usize], base: usize, turns: i64, sign: i64| {
        let (start, end) = (pos[x], pos[y]);
        let mut k = start;
        while k != end {
            coef[base + k] += sign;
            k = (k + 1) % m;
        }
        for e in 0..m {
            coef[base + e] += sign * turns;
        }
    };
    path(&c.pos_k, 0, a, 1);
    path(&c.pos_l, m, b, -1);
    coef
}

/// Solves w(left e) − w(right e) = coef[e] with w(face 0) = 0.
fn solve(c: &Compiled, coef: &[i64]) -> Option<Vec<i64>> {
    let n = c.n_faces();
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for (e, &k) in coef.iter().enumerate() {
        let (l, r) = (c.left[e], c.right[e]);
        adj[r].push((l, k));
        adj[l].push((r, -k));
    }
    let mut w: Vec<Option<i64>> = vec![None; n];
    w[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        let wf = w[f].unwrap();
        for &(g, jump) in &adj[f] {
            match w[g] {
                None => {
                    w[g] = Some(wf + jump);
                    queue.push_back(g);
                }
                Some(wg) if wg != wf + jump => return None,
                Some(_) => {}
            }
        }
    }
    w.into_iter().collect()
}

fn corner_sum(c: &Compiled, w: &[i64], p: usize) -> i64 {
    c.corners[p].iter().map(|&f| w[f]).sum()
}

/// A domain from x to y with explicit multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Domain {
    pub from: u32,
    pub to: u32,
    pub turns_k: i64,
    pub turns_l: i64,
    pub w: Vec<i64>,
    pub area: Rational,
    /// 2(m_x + m_y) with m the mean of the four corner multiplicities.
    pub corner_index: Rational,
    /// e(D) + m_x + m_y with e the Euler measure.
    pub euler_index: Rational,
}

fn make_domain(c: &Compiled, x: usize, y: usize, a: i64, b: i64, w: Vec<i64>) -> Domain {
    let sx = corner_sum(c, &w, x);
    let sy = corner_sum(c, &w, y);
    let area = w.iter().zip(&c.areas).map(|(&k, a)| a.mul_int(k)).sum();
    let euler: Rational = w.iter().zip(&c.euler).map(|(&k, e)| e.mul_int(k)).sum();
    Domain {
        from: c.labels[x],
        to: c.labels[y],
        turns_k: a,
        turns_l: b,
        area,
        corner_index: rat(sx + sy, 2),
        euler_index: euler + rat(sx + sy, 4),
        w,
    }
}

/// Multiplicities of the domain for (x, y, a, b), normalized to the surface:
/// on the annulus the hole faces must carry multiplicity 0; on the sphere
/// the free constant is fixed by `offset(w0)`.
fn normalized(
    c: &Compiled,
    x: usize,
    y: usize,
    a: i64,
    b: i64,
    sphere_offset: impl Fn(&Compiled, &[i64]) -> Option<i64>,
) -> Option<Vec<i64>> {
    let w0 = solve(c, &boundary_coefficients(c, x, y, a, b))?;
    let shift = match c.surface {
        Surface::Sphere => sphere_offset(c, &w0)?,
        Surface::Annulus => {
            let holes = c.hole_faces();
            if w0[holes[0]] != w0[holes[1]] {
                return None;
            }
            -w0[holes[0]]
        }
    };
    Some(w0.iter().map(|v| v + shift).collect())
}

/// Index-1 domains with w ≥ 0 from x to y, over all turn pairs with total
/// extra winding at most `max_wind`.
pub fn lunes_between(c: &Compiled, x: usize, y: usize, max_wind: i64) -> Vec<Domain> {
    let mut out = Vec::new();
    for a in -(max_wind + 1)..=max_wind {
        for b in -(max_wind + 1)..=max_wind {
            if winding(a) + winding(b) > max_wind {
                continue;
            }
            let offset = |c: &Compiled, w0: &[i64]| {
                // index(w0 + k) = (S + 8k)/2 = 1
                let s = corner_sum(c, w0, x) + corner_sum(c, w0, y);
                ((2 - s) % 8 == 0).then_some((2 - s) / 8)
            };
            let Some(w) = normalized(c, x, y, a, b, offset) else { continue };
            if w.iter().all(|&v| v >= 0) && corner_sum(c, &w, x) + corner_sum(c, &w, y) == 2 {
                let d = make_domain(c, x, y, a, b, w);
                debug_assert!(d.area.is_positive());
                out.push(d);
            }
        }
    }
    out
}

/// Every index-1 nonnegative domain between distinct points.
pub fn enumerate_lunes(c: &Compiled, max_wind: i64) -> Vec<Domain> {
    let mut out = Vec::new();
    for x in 0..c.m() {
        for y in 0..c.m() {
            if x != y {
                out.extend(lunes_between(c, x, y, max_wind));
            }
        }
    }
    out
}

/// Some domain from `base` to `x` living on the surface (on the annulus,
/// avoiding the holes), with the sphere constant fixed by w(face 0) = 0.
pub fn trace(c: &Compiled, base: usize, x: usize) -> Option<Domain> {
    const TURNS: [i64; 5] = [0, -1, 1, -2, 2];
    for a in TURNS {
        for b in TURNS {
            if let Some(w) = normalized(c, base, x, a, b, |_, _| Some(0)) {
                return Some(make_domain(c, base, x, a, b, w));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb_floer::diagram::{four_point_sphere_eps, two_point_sphere};

    fn names(c: &Compiled, d: &Domain) -> Vec<String> {
        d.w.iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(f, &k)| format!("{}{}", c.face_names[f], if k == 1 { String::new() } else { format!("x{k}") }))
            .collect()
    }

    #[test]
    fn primitive_lunes_of_four_point_diagram() {
        let d = four_point_sphere_eps(&rat(1, 20));
        let c = d.validate().unwrap();
        let prim: Vec<(u32, u32, Vec<String>)> = enumerate_lunes(&c, 0)
            .iter()
            .filter(|l| l.from % 2 == 0)
            .map(|l| (l.from, l.to, names(&c, l)))
            .collect();
        assert_eq!(
            prim,
            vec![
                (2, 1, vec!["A5".to_string()]),
                (2, 3, vec!["A3".to_string()]),
                (4, 1, vec!["A1".to_string()]),
                (4, 3, vec!["A6".to_string()]),
            ]
        );
    }

    #[test]
    fn two_point_lunes_come_in_pairs() {
        let c = two_point_sphere().validate().unwrap();
        let l = lunes_between(&c, 1, 0, 2);
        assert_eq!(l.len(), 2);
        assert!(l.iter().all(|d| d.area == rat(1, 4)));
        assert_eq!(lunes_between(&c, 0, 1, 2).len(), 2);
    }

    #[test]
    fn bigons_have_matching_indices() {
        let c = four_point_sphere_eps(&rat(1, 20)).validate().unwrap();
        for l in enumerate_lunes(&c, 2) {
            assert_eq!(l.corner_index, Rational::one());
        }
        let t = trace(&c, 0, 1).unwrap();
        assert!(t.euler_index.is_integer());
    }
}
