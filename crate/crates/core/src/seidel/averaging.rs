//! The averaging bound on the spectral norm and its telescoping proof.

use serde::Serialize;

use super::SeidelError;
use crate::novikov::Rational;

/// Seidel hypotheses S^k = t^p·[pt] and S^m = t^r·[L].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub k: i64,
    pub p: i64,
    pub m: i64,
    pub r: i64,
}

impl Hypothesis {
    pub fn check(&self) -> Result<(), SeidelError> {
        if self.k < 1 || self.k >= self.m {
            return Err(SeidelError::Precondition(format!(
                "need 1 ≤ k < m, got k = {}, m = {}",
                self.k, self.m
            )));
        }
        Ok(())
    }
}

/// (m·p − k·r)·κ/m: the average of γ over the m Seidel-shifted classes.
pub fn averaging_bound(h: &Hypothesis, kappa: &Rational) -> Result<Rational, SeidelError> {
    h.check()?;
    Ok(&(kappa.mul_int(h.m * h.p - h.k * h.r)) / &Rational::from_integer(h.m))
}

/// c-symbols c₀, …, c_{m−1} with integer coefficients plus a constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearForm {
    pub coeffs: Vec<i64>,
    pub constant: Rational,
}

impl LinearForm {
    fn zero(m: usize) -> Self {
        LinearForm {
            coeffs: vec![0; m],
            constant: Rational::zero(),
        }
    }

    fn add_scaled(&mut self, other: &LinearForm, s: i64) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += s * b;
        }
        self.constant += other.constant.mul_int(s);
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl std::fmt::Display for LinearForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(format!("c{i}")),
                -1 => parts.push(format!("-c{i}")),
                c => parts.push(format!("{c}·c{i}")),
            }
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(self.constant.to_string());
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TelescopingReport {
    pub hypothesis: Hypothesis,
    /// γ_j = c(S^j) − c(t^{−p}·S^{k+j}) after rewriting.
    pub gammas: Vec<LinearForm>,
    pub sum: LinearForm,
    pub bound: Rational,
}

/// c(t^e·S^i) reduced to the symbols c₀ … c_{m−1}: S^m = t^r·[L] lowers
/// the power, and c(λa) = c(a) − ν(λ) with ν(t^e) = −e·κ.
fn spectral_symbol(h: &Hypothesis, kappa: &Rational, mut i: i64, mut e: i64) -> LinearForm {
    while i >= h.m {
        i -= h.m;
        e += h.r;
    }
    let mut f = LinearForm::zero(h.m as usize);
    f.coeffs[i as usize] = 1;
    f.constant = kappa.mul_int(e);
    f
}

/// Symbolic check that Σ_j γ_j telescopes to m·averaging_bound.
///
/// Since [pt]·S^j = t^{−p}·S^{k+j}, each γ_j is a difference of two
/// spectral symbols; summing over j = 0..m−1 must cancel every c_i.
pub fn telescoping_check(h: &Hypothesis, kappa: &Rational) -> Result<TelescopingReport, SeidelError> {
    let bound = averaging_bound(h, kappa)?;
    let mut gammas = Vec::with_capacity(h.m as usize);
    let mut sum = LinearForm::zero(h.m as usize);
    for j in 0..h.m {
        let mut g = spectral_symbol(h, kappa, j, 0);
        g.add_scaled(&spectral_symbol(h, kappa, h.k + j, -h.p), -1);
        sum.add_scaled(&g, 1);
        gammas.push(g);
    }
    if !sum.is_constant() || sum.constant != bound.mul_int(h.m) {
        return Err(SeidelError::Residual(sum.to_string()));
    }
    Ok(TelescopingReport {
        hypothesis: *h,
        gammas,
        sum,
        bound,
    })
}

/// Defect bound of the spectral quasimorphism from γ̄: γ̄ itself, or 2γ̄
/// after homogenization.
pub fn quasimorphism_defect_bound(gamma_bar: &Rational, homogenized: bool) -> Result<Rational, SeidelError> {
    if gamma_bar.is_negative() {
        return Err(SeidelError::Precondition(format!("γ̄ = {gamma_bar} < 0")));
    }
    Ok(if homogenized {
        gamma_bar.mul_int(2)
    } else {
        gamma_bar.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::rat;

    fn h(k: i64, p: i64, m: i64, r: i64) -> Hypothesis {
        Hypothesis { k, p, m, r }
    }

    #[test]
    fn bounds() {
        for n in 1..6 {
            let a_l = rat(1, 1);
            let kappa = &a_l / &rat(2 * n, 1);
            assert_eq!(averaging_bound(&h(1, n, 2, 0), &kappa).unwrap(), rat(1, 2));
            let kappa = &rat(1, 2) / &rat(n + 1, 1);
            assert_eq!(averaging_bound(&h(n, n, n + 1, 0), &kappa).unwrap(), rat(n, 2 * n + 2));
            let kappa = rat(1, 4 * n + 4);
            assert_eq!(
                averaging_bound(&h(n, 2 * n, n + 1, -(2 * n + 2)), &kappa).unwrap(),
                rat(n, n + 1)
            );
        }
    }

    #[test]
    fn special_case_is_n_kappa() {
        let kappa = rat(3, 7);
        for m in 2..6 {
            for k in 1..m {
                assert_eq!(averaging_bound(&h(k, 4, m, 0), &kappa).unwrap(), kappa.mul_int(4));
            }
        }
    }

    #[test]
    fn telescoping() {
        let r = telescoping_check(&h(1, 3, 2, 0), &rat(1, 6)).unwrap();
        assert_eq!(r.sum.constant, rat(1, 1));
        assert_eq!(r.gammas[0].to_string(), "c0 - c1 + 1/2");
        assert_eq!(r.gammas[1].to_string(), "-c0 + c1 + 1/2");
        assert!(matches!(telescoping_check(&h(2, 1, 2, 0), &rat(1, 2)), Err(SeidelError::Precondition(_))));
    }

    #[test]
    fn defect() {
        assert_eq!(quasimorphism_defect_bound(&rat(2, 3), false).unwrap(), rat(2, 3));
        assert_eq!(quasimorphism_defect_bound(&rat(1, 2), true).unwrap(), rat(1, 1));
        assert_eq!(quasimorphism_defect_bound(&rat(0, 1), true).unwrap(), rat(0, 1));
        assert!(quasimorphism_defect_bound(&rat(-1, 2), false).is_err());
    }
}
