use serde::Serialize;

use super::{ComplexError, FilteredComplex};
use crate::novikov::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnrolledCell {
    pub generator: String,
    /// The power of the Novikov variable carried by this copy.
    pub exponent: i64,
    pub degree: i64,
    pub action: Rational,
}

/// A plain 𝔽₂ complex of the copies x^j · g inside the windows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnrolledComplex {
    pub cells: Vec<UnrolledCell>,
    /// boundary[i] lists the cells of d(cells[i]) that lie inside the windows.
    pub boundary: Vec<Vec<usize>>,
    /// Whether some boundary term fell outside the windows and was dropped.
    pub truncated: bool,
}

/// Spawns every copy x^j · g with action in `[lo, hi)` and, when given,
/// degree in `[dlo, dhi)`; cells are ordered by (degree, action, id).
pub fn unroll(
    c: &FilteredComplex,
    window: (Rational, Rational),
    degree_window: Option<(i64, i64)>,
) -> Result<UnrolledComplex, ComplexError> {
    let (lo, hi) = window;
    if lo >= hi || matches!(degree_window, Some((a, b)) if a >= b) {
        return Err(ComplexError::EmptyWindow);
    }
    let step = c.spec().action_step.clone();
    let mut cells: Vec<(usize, i64)> = Vec::new();
    for g in 0..c.len() {
        let a = &c.generators()[g].action;
        // smallest j with a + j·step >= lo
        let j0 = ((&lo - a) / &step).ceil().to_integer().expect("window fits in i64");
        let mut j = j0;
        loop {
            let act = c.copy_action(g, j);
            if act >= hi {
                break;
            }
            let deg = c.copy_degree(g, j);
            if degree_window.is_none_or(|(dl, dh)| dl <= deg && deg < dh) {
                cells.push((g, j));
            }
            j += 1;
        }
    }
    cells.sort_by(|x, y| {
        let kx = (c.copy_degree(x.0, x.1), c.copy_action(x.0, x.1), &c.generators()[x.0].id);
        let ky = (c.copy_degree(y.0, y.1), c.copy_action(y.0, y.1), &c.generators()[y.0].id);
        kx.cmp(&ky)
    });
    let position = |g: usize, j: i64| cells.iter().position(|&cell| cell == (g, j));
    let mut truncated = false;
    let mut boundary = Vec::with_capacity(cells.len());
    for &(g, j) in &cells {
        let mut col = Vec::new();
        for e in c.entries(g) {
            match position(e.target, j + e.exp) {
                Some(p) => col.push(p),
                None => truncated = true,
            }
        }
        col.sort_unstable();
        boundary.push(col);
    }
    let cells = cells
        .into_iter()
        .map(|(g, j)| UnrolledCell {
            generator: c.generators()[g].id.clone(),
            exponent: j,
            degree: c.copy_degree(g, j),
            action: c.copy_action(g, j),
        })
        .collect();
    Ok(UnrolledComplex {
        cells,
        boundary,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtered_complex::tests::sphere_example;
    use crate::novikov::rat;

    #[test]
    fn one_fundamental_domain() {
        let c = sphere_example();
        let u = unroll(&c, (rat(0, 1), rat(1, 2)), None).unwrap();
        assert_eq!(u.cells.len(), 4);
        assert!(!u.truncated);
        assert_eq!(u.boundary.iter().map(Vec::len).sum::<usize>(), 4);
    }

    #[test]
    fn two_copies_per_generator() {
        let c = sphere_example();
        let u = unroll(&c, (rat(0, 1), rat(1, 1)), Some((0, 4))).unwrap();
        assert_eq!(u.cells.len(), 8);
        let u = unroll(&c, (rat(0, 1), rat(1, 1)), Some((0, 2))).unwrap();
        assert_eq!(u.cells.len(), 4);
    }

    #[test]
    fn copies_shift_by_degree_and_action_step() {
        let c = sphere_example();
        let u = unroll(&c, (rat(0, 1), rat(1, 1)), None).unwrap();
        let copy = u
            .cells
            .iter()
            .find(|x| x.generator == "a2" && x.exponent == 1)
            .unwrap();
        assert_eq!(copy.degree, 3);
        assert_eq!(copy.action, rat(7, 10));
        assert!(unroll(&c, (rat(1, 1), rat(1, 1)), None).is_err());
    }
}
