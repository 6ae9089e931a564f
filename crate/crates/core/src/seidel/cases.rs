use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::averaging::{averaging_bound, telescoping_check, Hypothesis};
use super::ring::{Monomial, QHPresentation};
use super::SeidelError;
use crate::novikov::{rat, Rational};

/// Smallest k ≥ 1 with S^k = t^p·[pt], then the smallest m > k with
/// S^m = t^r·[L], found by iterating powers of S for at most M·N_L steps.
pub fn verify_hypotheses(pres: &QHPresentation, s: Monomial) -> Result<Hypothesis, SeidelError> {
    pres.check()?;
    let s = pres.normalize(s);
    let limit = pres.m * pres.n_l;
    let mut power = pres.unit();
    let mut found_k: Option<(i64, i64)> = None;
    for i in 1..=limit {
        power = pres.mul_monomials(power, s);
        match found_k {
            None if power.x == pres.point_power => found_k = Some((i, power.t)),
            Some((k, p)) if power.x == 0 => return Ok(Hypothesis { k, p, m: i, r: power.t }),
            _ => {}
        }
    }
    Err(SeidelError::Hypotheses(match found_k {
        None => format!("no power of {s} up to {limit} is a multiple of [pt]"),
        Some((k, _)) => format!("no power of {s} between {k} and {limit} is a multiple of [L]"),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseName {
    /// ℝPⁿ ⊂ ℂPⁿ.
    RPn,
    /// The diagonal in ℂPⁿ × (ℂPⁿ)⁻.
    CPnDiag,
    /// Sⁿ in the quadric Qⁿ.
    SnQuadric,
    /// ℍPⁿ ⊂ Gr(2, 2n+2).
    HPnGr,
}

impl CaseName {
    pub const ALL: [CaseName; 4] = [CaseName::RPn, CaseName::CPnDiag, CaseName::SnQuadric, CaseName::HPnGr];
}

impl fmt::Display for CaseName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseName::RPn => "RPn",
            CaseName::CPnDiag => "CPn_diag",
            CaseName::SnQuadric => "Sn_quadric",
            CaseName::HPnGr => "HPn_gr",
        })
    }
}

impl FromStr for CaseName {
    type Err = SeidelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseName::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| SeidelError::UnknownCase(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeidelCase {
    pub name: String,
    pub presentation: QHPresentation,
    #[serde(rename = "S")]
    pub seidel: Monomial,
    pub hypotheses: Hypothesis,
    pub bound: Rational,
}

/// Ring presentation and Seidel element of each example, in units where
/// ω([ℂP¹]) = 1. All relations read X^M = q^{−1}.
fn table(case: CaseName, n: i64) -> (QHPresentation, Monomial, Hypothesis) {
    let pres = |dim, n_l, a_l, m, point_power| QHPresentation {
        n: dim,
        n_l,
        a_l,
        m,
        e: -1,
        point_power,
    };
    match case {
        CaseName::RPn => (
            pres(n, n + 1, rat(1, 2), n + 1, n),
            Monomial::new(1, 1),
            Hypothesis { k: n, p: n, m: n + 1, r: 0 },
        ),
        CaseName::CPnDiag => (
            pres(2 * n, 2 * n + 2, rat(1, 1), n + 1, n),
            Monomial::new(2, 1),
            Hypothesis { k: n, p: 2 * n, m: n + 1, r: 0 },
        ),
        CaseName::SnQuadric => (
            pres(n, 2 * n, rat(1, 1), 2, 1),
            Monomial::new(n, 1),
            Hypothesis { k: 1, p: n, m: 2, r: 0 },
        ),
        CaseName::HPnGr => (
            pres(4 * n, 4 * n + 4, rat(1, 1), n + 1, n),
            Monomial::new(2, 1),
            Hypothesis { k: n, p: 2 * n, m: n + 1, r: -(2 * n + 2) },
        ),
    }
}

/// One row of the example table, with the stored hypotheses re-derived by
/// ring arithmetic and the bound certified by the telescoping identity.
pub fn example_case(case: CaseName, n: i64) -> Result<SeidelCase, SeidelError> {
    if n < 1 {
        return Err(SeidelError::Precondition(format!("n = {n} < 1")));
    }
    let (presentation, seidel, stored) = table(case, n);
    let hypotheses = verify_hypotheses(&presentation, seidel)?;
    if hypotheses != stored {
        return Err(SeidelError::Hypotheses(format!(
            "{case}({n}): expected {stored:?}, ring arithmetic gives {hypotheses:?}"
        )));
    }
    let kappa = presentation.kappa();
    let bound = averaging_bound(&hypotheses, &kappa)?;
    telescoping_check(&hypotheses, &kappa)?;
    if bound >= presentation.a_l {
        return Err(SeidelError::Hypotheses(format!("bound {bound} is not below A_L")));
    }
    Ok(SeidelCase {
        name: format!("{case}({n})"),
        presentation,
        seidel,
        hypotheses,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_bounds() {
        for n in 1..=10 {
            let b = |c| example_case(c, n).unwrap().bound;
            assert_eq!(b(CaseName::RPn), rat(n, 2 * n + 2));
            assert_eq!(b(CaseName::CPnDiag), rat(n, n + 1));
            assert_eq!(b(CaseName::SnQuadric), rat(1, 2));
            assert_eq!(b(CaseName::HPnGr), rat(n, n + 1));
        }
        assert_eq!(example_case(CaseName::RPn, 1).unwrap().bound, rat(1, 4));
    }

    #[test]
    fn hypotheses_from_iteration() {
        let (p, s, _) = table(CaseName::HPnGr, 3);
        assert_eq!(verify_hypotheses(&p, s).unwrap(), Hypothesis { k: 3, p: 6, m: 4, r: -8 });
        // with X² = q, S = X = [pt] squares to q·[L]
        let mut q = p.clone();
        q.m = 2;
        q.e = 1;
        q.point_power = 1;
        assert_eq!(verify_hypotheses(&q, Monomial::new(0, 1)).unwrap(), Hypothesis { k: 1, p: 0, m: 2, r: 16 });
        // S = t·[L] never reaches [pt] = X
        assert!(matches!(verify_hypotheses(&q, Monomial::new(1, 0)), Err(SeidelError::Hypotheses(_))));
    }

    #[test]
    fn names() {
        for c in CaseName::ALL {
            assert_eq!(c.to_string().parse::<CaseName>().unwrap(), c);
        }
        assert!(matches!("CP2".parse::<CaseName>(), Err(SeidelError::UnknownCase(_))));
    }
}
