//! Independent barcode oracle: reads bars off the rank function
//! r(s, t) = rank H_D(C^{≤s}) → H_D(C^{≤t}) computed by Gaussian elimination.

use super::unroll::unroll;
use super::{ComplexError, FilteredComplex};
use crate::novikov::Rational;
use crate::persistence::{Bar, Barcode};

/// Maximal number of unrolled cells in degrees D−1, D, D+1.
pub const ORACLE_CAP: usize = 96;

type Mask = u128;

/// Rank of a set of 𝔽₂ vectors.
fn rank(vectors: impl IntoIterator<Item = Mask>) -> usize {
    let mut basis: Vec<Mask> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            let top = 127 - b.leading_zeros();
            if v >> top & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Kernel of the linear map sending unit vector i to images[i], restricted
/// to the listed domain indices; returned as masks over the domain.
fn kernel(domain: &[usize], images: &[Mask]) -> Vec<Mask> {
    // Rows: (image, combination) pairs reduced to echelon form.
    let mut pivots: Vec<(Mask, Mask)> = Vec::new();
    let mut out = Vec::new();
    for &i in domain {
        let mut img = images[i];
        let mut comb: Mask = 1 << i;
        for &(pi, pc) in &pivots {
            let top = 127 - pi.leading_zeros();
            if img >> top & 1 == 1 {
                img ^= pi;
                comb ^= pc;
            }
        }
        if img == 0 {
            out.push(comb);
        } else {
            pivots.push((img, comb));
            pivots.sort_unstable_by_key(|p| std::cmp::Reverse(p.0));
        }
    }
    out
}

pub fn brute_force_barcode(
    c: &FilteredComplex,
    window: Option<(i64, i64)>,
) -> Result<Barcode<Rational>, ComplexError> {
    c.validate()?;
    let (lo, hi) = window.unwrap_or((0, c.spec().degree_step));
    if lo >= hi {
        return Err(ComplexError::EmptyWindow);
    }
    let mut bars = Vec::new();
    for degree in lo..hi {
        bars.extend(degree_bars(c, degree)?);
    }
    Ok(Barcode::new(bars).expect("oracle bars are nonempty"))
}

fn degree_bars(c: &FilteredComplex, degree: i64) -> Result<Vec<Bar<Rational>>, ComplexError> {
    // An action window wide enough to hold every copy in degrees D−1..D+1.
    let mut actions = Vec::new();
    for g in 0..c.len() {
        for d in degree - 1..=degree + 1 {
            if let Some(e) = c.exponent_in_degree(g, d) {
                actions.push(c.copy_action(g, e));
            }
        }
    }
    if actions.is_empty() {
        return Ok(Vec::new());
    }
    let amin = actions.iter().min().unwrap().clone();
    let amax = actions.iter().max().unwrap() + Rational::one();
    let u = unroll(c, (amin, amax), Some((degree - 1, degree + 2)))?;
    if u.cells.len() > ORACLE_CAP {
        return Err(ComplexError::OracleTooLarge(u.cells.len()));
    }

    let idx_in = |d: i64| -> Vec<usize> {
        (0..u.cells.len()).filter(|&i| u.cells[i].degree == d).collect()
    };
    let here = idx_in(degree);
    let up = idx_in(degree + 1);
    let local = |global: usize, set: &[usize]| set.iter().position(|&x| x == global);
    let down = idx_in(degree - 1);

    // Masks: images of C_D cells in C_{D−1}, of C_{D+1} cells in C_D.
    let img_here: Vec<Mask> = here
        .iter()
        .map(|&i| {
            u.boundary[i]
                .iter()
                .fold(0, |m, &t| m | 1 << local(t, &down).expect("closed window"))
        })
        .collect();
    let img_up: Vec<Mask> = up
        .iter()
        .map(|&i| {
            u.boundary[i]
                .iter()
                .fold(0, |m, &t| m | 1 << local(t, &here).expect("closed window"))
        })
        .collect();

    let mut levels: Vec<Rational> = here
        .iter()
        .chain(&up)
        .map(|&i| u.cells[i].action.clone())
        .collect();
    levels.sort();
    levels.dedup();
    let n = levels.len();

    // Z[s]: cycle space of C_D^{≤ levels[s-1]}; B[t]: boundaries from C_{D+1}^{≤ levels[t-1]}.
    let below = |set: &[usize], s: usize| -> Vec<usize> {
        (0..set.len())
            .filter(|&k| s > 0 && u.cells[set[k]].action <= levels[s - 1])
            .collect()
    };
    let z: Vec<Vec<Mask>> = (0..=n).map(|s| kernel(&below(&here, s), &img_here)).collect();
    let b: Vec<Vec<Mask>> = (0..=n)
        .map(|t| below(&up, t).into_iter().map(|k| img_up[k]).collect())
        .collect();
    let rb: Vec<usize> = b.iter().map(|v| rank(v.iter().copied())).collect();
    let r = |s: usize, t: usize| -> i64 {
        if s == 0 {
            return 0;
        }
        (rank(z[s].iter().chain(&b[t]).copied()) - rb[t]) as i64
    };

    let mut bars = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let m = r(i, j - 1) - r(i - 1, j - 1) - r(i, j) + r(i - 1, j);
            debug_assert!(m >= 0);
            if m > 0 {
                bars.push(
                    Bar::finite(degree, levels[i - 1].clone(), levels[j - 1].clone())
                        .with_multiplicity(m as u32),
                );
            }
        }
        let m = r(i, n) - r(i - 1, n);
        if m > 0 {
            bars.push(Bar::infinite(degree, levels[i - 1].clone()).with_multiplicity(m as u32));
        }
    }
    Ok(bars)
}
