//! One-generator quantum homology rings Λ[X]/⟨X^M = q^E⟩ over 𝔽₂, with
//! q = t^{N_L}.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::SeidelError;
use crate::novikov::Rational;

/// t^t · X^x, normalized so that 0 ≤ x < M once reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub t: i64,
    #[serde(rename = "X")]
    pub x: i64,
}

impl Monomial {
    pub fn new(t: i64, x: i64) -> Self {
        Monomial { t, x }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.t, self.x) {
            (0, 0) => write!(f, "1"),
            (t, 0) => write!(f, "t^{t}"),
            (0, x) => write!(f, "X^{x}"),
            (t, x) => write!(f, "t^{t}·X^{x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QHPresentation {
    /// Dimension of L.
    pub n: i64,
    #[serde(rename = "N_L")]
    pub n_l: i64,
    #[serde(rename = "A_L")]
    pub a_l: Rational,
    /// Relation X^M = q^E.
    #[serde(rename = "M")]
    pub m: i64,
    #[serde(rename = "E")]
    pub e: i64,
    /// [pt] = X^P.
    #[serde(rename = "P")]
    pub point_power: i64,
}

/// A ring element: the set of monomials with coefficient 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QHElement(pub BTreeSet<Monomial>);

impl QHElement {
    pub fn zero() -> Self {
        QHElement::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        QHElement(BTreeSet::from([m]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_monomial(&self) -> Option<Monomial> {
        (self.0.len() == 1).then(|| *self.0.iter().next().unwrap())
    }

    pub fn add(&self, other: &QHElement) -> QHElement {
        QHElement(self.0.symmetric_difference(&other.0).copied().collect())
    }
}

impl fmt::Display for QHElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl QHPresentation {
    pub fn check(&self) -> Result<(), SeidelError> {
        if self.m < 1 {
            return Err(SeidelError::Presentation(format!("M = {} < 1", self.m)));
        }
        if self.n_l < 1 || !self.a_l.is_positive() {
            return Err(SeidelError::Presentation("N_L and A_L must be positive".into()));
        }
        if !(0..self.m).contains(&self.point_power) {
            return Err(SeidelError::Presentation(format!(
                "[pt] = X^{} outside 0..{}",
                self.point_power, self.m
            )));
        }
        Ok(())
    }

    /// Action of t: κ = A_L / N_L.
    pub fn kappa(&self) -> Rational {
        &self.a_l / &Rational::from_integer(self.n_l)
    }

    /// Rewrites X^{qM + j} as t^{q·E·N_L} X^j.
    pub fn normalize(&self, m: Monomial) -> Monomial {
        let q = m.x.div_euclid(self.m);
        Monomial::new(m.t + q * self.e * self.n_l, m.x.rem_euclid(self.m))
    }

    pub fn unit(&self) -> Monomial {
        Monomial::new(0, 0)
    }

    pub fn point(&self) -> Monomial {
        Monomial::new(0, self.point_power)
    }

    pub fn mul_monomials(&self, a: Monomial, b: Monomial) -> Monomial {
        self.normalize(Monomial::new(a.t + b.t, a.x + b.x))
    }

    pub fn pow(&self, a: Monomial, k: u32) -> Monomial {
        (0..k).fold(self.unit(), |acc, _| self.mul_monomials(acc, a))
    }
}

/// Product in the ring: monomials multiply, X^M reduces to q^E, coefficients add mod 2.
pub fn qh_mul(pres: &QHPresentation, a: &QHElement, b: &QHElement) -> QHElement {
    let mut out = QHElement::zero();
    for &x in &a.0 {
        for &y in &b.0 {
            out = out.add(&QHElement::monomial(pres.mul_monomials(x, y)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::rat;

    fn pres(n: i64, n_l: i64, m: i64, e: i64) -> QHPresentation {
        QHPresentation {
            n,
            n_l,
            a_l: rat(1, 1),
            m,
            e,
            point_power: m - 1,
        }
    }

    #[test]
    fn relations() {
        let x = QHElement::monomial(Monomial::new(0, 1));
        // X² = q with q = t^{2n}
        let p = pres(3, 6, 2, 1);
        assert_eq!(qh_mul(&p, &x, &x), QHElement::monomial(Monomial::new(6, 0)));
        // X^{n+1} = q^{-1}
        let p = pres(2, 12, 3, -1);
        let x2 = qh_mul(&p, &x, &x);
        assert_eq!(qh_mul(&p, &x2, &x), QHElement::monomial(Monomial::new(-12, 0)));
    }

    #[test]
    fn unit_and_addition() {
        let p = pres(2, 4, 3, -1);
        let one = QHElement::monomial(p.unit());
        let a = QHElement::monomial(Monomial::new(5, 2)).add(&QHElement::monomial(Monomial::new(-1, 1)));
        assert_eq!(qh_mul(&p, &a, &one), a);
        assert!(a.add(&a).is_zero());
        assert_eq!(qh_mul(&p, &a, &QHElement::zero()), QHElement::zero());
    }
}
