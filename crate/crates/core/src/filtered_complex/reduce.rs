use std::collections::HashMap;

use serde::Serialize;

use super::{ComplexError, FilteredComplex, FormalSum};
use crate::novikov::{NovikovScalar, Rational};
use crate::persistence::{Bar, Barcode};

/// The copies x^e · g of degree `degree`, ordered by (action, id).
pub(crate) struct Slice {
    pub cells: Vec<(usize, i64)>,
    pub actions: Vec<Rational>,
    pos: HashMap<usize, usize>,
}

impl Slice {
    pub fn new(c: &FilteredComplex, degree: i64) -> Slice {
        let mut cells: Vec<(usize, i64, Rational)> = (0..c.len())
            .filter_map(|g| {
                c.exponent_in_degree(g, degree)
                    .map(|e| (g, e, c.copy_action(g, e)))
            })
            .collect();
        cells.sort_by(|a, b| {
            (&a.2, &c.generators()[a.0].id).cmp(&(&b.2, &c.generators()[b.0].id))
        });
        let pos = cells.iter().enumerate().map(|(k, cell)| (cell.0, k)).collect();
        Slice {
            actions: cells.iter().map(|x| x.2.clone()).collect(),
            cells: cells.into_iter().map(|x| (x.0, x.1)).collect(),
            pos,
        }
    }

    pub fn position(&self, g: usize) -> Option<usize> {
        self.pos.get(&g).copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn to_sum(&self, c: &FilteredComplex, column: &[usize]) -> FormalSum {
        let mut out: FormalSum = column
            .iter()
            .map(|&k| {
                let (g, e) = self.cells[k];
                (
                    NovikovScalar::monomial(c.spec(), e),
                    c.generators()[g].id.clone(),
                )
            })
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1));
        out
    }
}

/// Columns of d: upper → lower, each a sorted list of lower positions.
pub(crate) fn boundary_matrix(c: &FilteredComplex, upper: &Slice, lower: &Slice) -> Vec<Vec<usize>> {
    upper
        .cells
        .iter()
        .map(|&(g, _)| {
            let mut col: Vec<usize> = c
                .entries(g)
                .iter()
                .map(|e| lower.position(e.target).expect("validated complex is homogeneous"))
                .collect();
            col.sort_unstable();
            col
        })
        .collect()
}

pub(crate) fn xor_into(acc: &mut Vec<usize>, other: &[usize]) {
    let mut out = Vec::with_capacity(acc.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() && j < other.len() {
        match acc[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => {
                out.push(acc[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(other[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&acc[i..]);
    out.extend_from_slice(&other[j..]);
    *acc = out;
}

/// Column reduction R = D·V over 𝔽₂ with pivot = highest row.
pub(crate) struct Reduced {
    pub r: Vec<Vec<usize>>,
    pub v: Vec<Vec<usize>>,
    pub col_of_low: HashMap<usize, usize>,
}

pub(crate) fn reduce(matrix: Vec<Vec<usize>>) -> Reduced {
    let mut r = matrix;
    let mut v: Vec<Vec<usize>> = (0..r.len()).map(|j| vec![j]).collect();
    let mut col_of_low: HashMap<usize, usize> = HashMap::new();
    for j in 0..r.len() {
        while let Some(&low) = r[j].last() {
            match col_of_low.get(&low) {
                Some(&k) => {
                    let (rk, vk) = (r[k].clone(), v[k].clone());
                    xor_into(&mut r[j], &rk);
                    xor_into(&mut v[j], &vk);
                }
                None => {
                    col_of_low.insert(low, j);
                    break;
                }
            }
        }
    }
    Reduced { r, v, col_of_low }
}

/// The reduced data around degree D: d_{D+1} and d_D.
pub(crate) struct DegreeData {
    pub here: Slice,
    pub up: Slice,
    pub from_up: Reduced,
    pub from_here: Reduced,
}

impl DegreeData {
    pub fn new(c: &FilteredComplex, degree: i64) -> DegreeData {
        let down = Slice::new(c, degree - 1);
        let here = Slice::new(c, degree);
        let up = Slice::new(c, degree + 1);
        let from_up = reduce(boundary_matrix(c, &up, &here));
        let from_here = reduce(boundary_matrix(c, &here, &down));
        DegreeData {
            here,
            up,
            from_up,
            from_here,
        }
    }

    /// Positions of C_D that are cycles not killed by any boundary.
    pub fn essential(&self) -> Vec<usize> {
        (0..self.here.len())
            .filter(|&i| self.from_here.r[i].is_empty() && !self.from_up.col_of_low.contains_key(&i))
            .collect()
    }

    /// (low position in C_D, column position in C_{D+1}) for every finite bar.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut p: Vec<(usize, usize)> = self
            .from_up
            .col_of_low
            .iter()
            .map(|(&low, &col)| (low, col))
            .collect();
        p.sort_unstable();
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisCycle {
    pub degree: i64,
    pub action: Rational,
    pub chain: FormalSum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisPair {
    /// Degree of z = d y.
    pub degree: i64,
    pub y: FormalSum,
    pub z: FormalSum,
    pub y_action: Rational,
    pub z_action: Rational,
    pub beta: Rational,
}

/// Singular cycles x_j and pairs (y_k, z_k = d y_k) of an orthogonal basis.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct OrthogonalBasis {
    pub singular: Vec<BasisCycle>,
    pub pairs: Vec<BasisPair>,
}

impl OrthogonalBasis {
    pub fn betas(&self) -> Vec<Rational> {
        let mut b: Vec<Rational> = self.pairs.iter().map(|p| p.beta.clone()).collect();
        b.sort();
        b
    }
}

fn window_or_default(c: &FilteredComplex, window: Option<(i64, i64)>) -> Result<(i64, i64), ComplexError> {
    let (lo, hi) = window.unwrap_or((0, c.spec().degree_step));
    if lo >= hi {
        return Err(ComplexError::EmptyWindow);
    }
    Ok((lo, hi))
}

/// Orthogonal basis over the degree window (one fundamental domain
/// `[0, degree_step)` by default), indexed by the degree of z.
pub fn uz_reduce(c: &FilteredComplex, window: Option<(i64, i64)>) -> Result<OrthogonalBasis, ComplexError> {
    c.validate()?;
    let (lo, hi) = window_or_default(c, window)?;
    let mut out = OrthogonalBasis::default();
    for degree in lo..hi {
        let data = DegreeData::new(c, degree);
        for i in data.essential() {
            out.singular.push(BasisCycle {
                degree,
                action: data.here.actions[i].clone(),
                chain: data.here.to_sum(c, &data.from_here.v[i]),
            });
        }
        for (low, col) in data.pairs() {
            let y_action = data.up.actions[col].clone();
            let z_action = data.here.actions[low].clone();
            out.pairs.push(BasisPair {
                degree,
                y: data.up.to_sum(c, &data.from_up.v[col]),
                z: data.here.to_sum(c, &data.from_up.r[col]),
                beta: &y_action - &z_action,
                y_action,
                z_action,
            });
        }
    }
    Ok(out)
}

/// Finite bars (𝒜(z_k), 𝒜(y_k)] in deg z_k and infinite bars (𝒜(x_j), ∞) in deg x_j.
pub fn barcode(c: &FilteredComplex, window: Option<(i64, i64)>) -> Result<Barcode<Rational>, ComplexError> {
    let basis = uz_reduce(c, window)?;
    let mut bars = Vec::new();
    for x in basis.singular {
        bars.push(Bar::infinite(x.degree, x.action));
    }
    for p in basis.pairs {
        bars.push(Bar::finite(p.degree, p.z_action, p.y_action));
    }
    Ok(Barcode::new(bars).expect("reduction yields nonempty bars"))
}

/// c(class) = minimal action of a cycle homologous to `cycle`;
/// `None` stands for −∞, the value on the zero class.
pub fn spectral_invariant(c: &FilteredComplex, cycle: &FormalSum) -> Result<Option<Rational>, ComplexError> {
    c.validate()?;
    let mut degree = None;
    let mut monomials: Vec<(usize, i64)> = Vec::new();
    for (scalar, id) in cycle {
        let g = c.idx(id)?;
        for e in scalar.exponents() {
            let d = c.copy_degree(g, e);
            if *degree.get_or_insert(d) != d {
                return Err(ComplexError::NotHomogeneous);
            }
            monomials.push((g, e));
        }
    }
    let Some(degree) = degree else {
        return Ok(None);
    };
    let data = DegreeData::new(c, degree);
    let mut vec: Vec<usize> = Vec::new();
    for (g, _) in monomials {
        let p = data.here.position(g).expect("homogeneous copy lies in its slice");
        xor_into(&mut vec, &[p]);
    }
    // d(cycle) must vanish: combine the columns of d_D.
    let down = DegreeData::down_matrix(c, &data.here, degree);
    let mut image = Vec::new();
    for &p in &vec {
        xor_into(&mut image, &down[p]);
    }
    if !image.is_empty() {
        return Err(ComplexError::NotACycle);
    }
    // Triangular basis of Z_D indexed by lows: boundaries R_{D+1}[col] and
    // essential cycles V_D[i].
    let mut level: Option<Rational> = None;
    while let Some(&low) = vec.last() {
        if let Some(&col) = data.from_up.col_of_low.get(&low) {
            let r = data.from_up.r[col].clone();
            xor_into(&mut vec, &r);
        } else {
            debug_assert!(data.from_here.r[low].is_empty());
            let a = data.here.actions[low].clone();
            level = Some(match level {
                Some(l) => l.max(a),
                None => a,
            });
            let v = data.from_here.v[low].clone();
            xor_into(&mut vec, &v);
        }
    }
    Ok(level)
}

impl DegreeData {
    fn down_matrix(c: &FilteredComplex, here: &Slice, degree: i64) -> Vec<Vec<usize>> {
        boundary_matrix(c, here, &Slice::new(c, degree - 1))
    }
}

/// γ = (left end of the unique infinite bar in `fund_degree`)
///   − (left end of the unique infinite bar in `point_degree`).
pub fn gamma(c: &FilteredComplex, fund_degree: i64, point_degree: i64) -> Result<Rational, ComplexError> {
    let level = |degree: i64| -> Result<Rational, ComplexError> {
        let b = barcode(c, Some((degree, degree + 1)))?;
        let inf: Vec<&Bar<Rational>> = b.bars().iter().filter(|x| x.is_infinite()).collect();
        let count = b.infinite_count(degree);
        if count != 1 {
            return Err(ComplexError::GammaUndefined { degree, count });
        }
        Ok(inf[0].left.clone())
    };
    Ok(level(fund_degree)? - level(point_degree)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtered_complex::tests::{gen, q_spec, sphere_example};
    use crate::novikov::rat;
    use crate::persistence::{bar_length_spectrum, boundary_depth, Extended};

    fn one(id: &str) -> (NovikovScalar, String) {
        (NovikovScalar::one(&q_spec()), id.to_string())
    }

    #[test]
    fn sphere_example_basis() {
        let basis = uz_reduce(&sphere_example(), None).unwrap();
        assert_eq!(basis.pairs.len(), 1);
        let p = &basis.pairs[0];
        assert_eq!(p.y, vec![one("a2")]);
        assert_eq!(p.z, vec![one("a1"), one("a3")]);
        assert_eq!(p.beta, rat(1, 5));
        let singular: Vec<&FormalSum> = basis.singular.iter().map(|x| &x.chain).collect();
        assert_eq!(singular, vec![&vec![one("a1")], &vec![one("a2"), one("a4")]]);
    }

    #[test]
    fn sphere_example_barcode() {
        let c = sphere_example();
        let b = barcode(&c, None).unwrap();
        let expected = Barcode::new(vec![
            Bar::infinite(0, rat(0, 1)),
            Bar::finite(0, rat(0, 1), rat(1, 5)),
            Bar::infinite(1, rat(1, 5)),
        ])
        .unwrap();
        assert_eq!(b, expected);
        assert_eq!(boundary_depth(&b), rat(1, 5));
        assert_eq!(
            bar_length_spectrum(&b),
            vec![Extended::Finite(rat(1, 5)), Extended::Infinite, Extended::Infinite]
        );
        assert_eq!(gamma(&c, 1, 0).unwrap(), rat(1, 5));
        assert_eq!(gamma(&c.shift_actions(&rat(7, 3)), 1, 0).unwrap(), rat(1, 5));
    }

    #[test]
    fn spectral_invariants() {
        let c = sphere_example();
        assert_eq!(spectral_invariant(&c, &vec![one("a1")]).unwrap(), Some(rat(0, 1)));
        assert_eq!(spectral_invariant(&c, &vec![one("a3")]).unwrap(), Some(rat(0, 1)));
        assert_eq!(
            spectral_invariant(&c, &vec![one("a2"), one("a4")]).unwrap(),
            Some(rat(1, 5))
        );
        assert_eq!(spectral_invariant(&c, &vec![one("a1"), one("a3")]).unwrap(), None);
        assert_eq!(spectral_invariant(&c, &vec![]).unwrap(), None);
        assert!(matches!(
            spectral_invariant(&c, &vec![one("a2")]),
            Err(ComplexError::NotACycle)
        ));
        assert!(matches!(
            spectral_invariant(&c, &vec![one("a1"), one("a2")]),
            Err(ComplexError::NotHomogeneous)
        ));
    }

    #[test]
    fn zero_differential() {
        let c = FilteredComplex::from_entries(
            q_spec(),
            vec![gen("x", 0, rat(3, 1))],
            &[],
        )
        .unwrap();
        assert_eq!(
            barcode(&c, None).unwrap(),
            Barcode::new(vec![Bar::infinite(0, rat(3, 1))]).unwrap()
        );
        assert!(uz_reduce(&c, None).unwrap().pairs.is_empty());
        let c = FilteredComplex::from_entries(
            q_spec(),
            vec![gen("p", 0, rat(2, 1)), gen("f", 1, rat(5, 1))],
            &[],
        )
        .unwrap();
        assert_eq!(gamma(&c, 1, 0).unwrap(), rat(3, 1));
        assert!(gamma(&c, 1, 1).is_ok());
        let two = FilteredComplex::from_entries(
            q_spec(),
            vec![gen("p", 0, rat(2, 1)), gen("r", 0, rat(1, 1)), gen("f", 1, rat(5, 1))],
            &[],
        )
        .unwrap();
        assert!(matches!(
            gamma(&two, 1, 0),
            Err(ComplexError::GammaUndefined { degree: 0, count: 2 })
        ));
    }

    #[test]
    fn recap_exponents_in_differential() {
        // d y = q^{-1} z with deg z = 2, deg y = 1: a bar across the tower.
        let c = FilteredComplex::from_entries(
            q_spec(),
            vec![gen("z", 2, rat(1, 1)), gen("y", 1, rat(3, 4))],
            &[("y", -1, "z")],
        )
        .unwrap();
        c.validate().unwrap();
        let b = barcode(&c, None).unwrap();
        assert_eq!(b, Barcode::new(vec![Bar::finite(0, rat(1, 2), rat(3, 4))]).unwrap());
    }
}
