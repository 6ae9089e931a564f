use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::NovikovError;

/// A single-variable graded Novikov ring: the variable has degree
/// `degree_step` and valuation `-action_step`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NovikovSpec {
    pub var: String,
    pub degree_step: i64,
    pub action_step: Rational,
}

impl NovikovSpec {
    pub fn new(var: &str, degree_step: i64, action_step: Rational) -> Result<Self, NovikovError> {
        let spec = NovikovSpec {
            var: var.to_string(),
            degree_step,
            action_step,
        };
        spec.check()?;
        Ok(spec)
    }

    pub fn check(&self) -> Result<(), NovikovError> {
        if self.degree_step < 1 {
            return Err(NovikovError::BadSpec(format!(
                "degree_step must be >= 1, got {}",
                self.degree_step
            )));
        }
        if !self.action_step.is_positive() {
            return Err(NovikovError::BadSpec(format!(
                "action_step must be > 0, got {}",
                self.action_step
            )));
        }
        if self.var.is_empty() || !self.var.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(NovikovError::BadSpec(format!("bad variable name {:?}", self.var)));
        }
        Ok(())
    }

    /// ν(x^e) = −e · action_step.
    pub fn monomial_valuation(&self, e: i64) -> Rational {
        -self.action_step.mul_int(e)
    }

    /// Action of x^e · y given 𝒜(y): 𝒜(y) − ν(x^e).
    pub fn shift_action(&self, action: &Rational, e: i64) -> Rational {
        action + self.action_step.mul_int(e)
    }

    pub fn shift_degree(&self, degree: i64, e: i64) -> i64 {
        degree + e * self.degree_step
    }
}

/// A finite 𝔽₂-combination of powers of the Novikov variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NovikovScalar {
    spec: NovikovSpec,
    exps: BTreeSet<i64>,
}

impl NovikovScalar {
    pub fn zero(spec: &NovikovSpec) -> Self {
        NovikovScalar {
            spec: spec.clone(),
            exps: BTreeSet::new(),
        }
    }

    pub fn one(spec: &NovikovSpec) -> Self {
        Self::monomial(spec, 0)
    }

    pub fn monomial(spec: &NovikovSpec, e: i64) -> Self {
        NovikovScalar {
            spec: spec.clone(),
            exps: BTreeSet::from([e]),
        }
    }

    /// Builds a scalar from exponents, cancelling repeated ones mod 2.
    pub fn from_exponents<I: IntoIterator<Item = i64>>(spec: &NovikovSpec, exps: I) -> Self {
        let mut s = Self::zero(spec);
        for e in exps {
            s.toggle(e);
        }
        s
    }

    pub fn spec(&self) -> &NovikovSpec {
        &self.spec
    }

    pub fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.exps.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.exps.is_empty()
    }

    /// The exponent if this scalar is a single monomial.
    pub fn as_monomial(&self) -> Option<i64> {
        if self.exps.len() == 1 {
            self.exps.iter().next().copied()
        } else {
            None
        }
    }

    fn toggle(&mut self, e: i64) {
        if !self.exps.remove(&e) {
            self.exps.insert(e);
        }
    }

    fn same_spec(&self, other: &Self) -> Result<(), NovikovError> {
        if self.spec != other.spec {
            return Err(NovikovError::SpecMismatch {
                left: self.spec.var.clone(),
                right: other.spec.var.clone(),
            });
        }
        Ok(())
    }

    /// Parses exponent polynomials such as `1+q^2`, `q^-1 + q^{3}`, `0`.
    pub fn parse(spec: &NovikovSpec, s: &str) -> Result<Self, NovikovError> {
        let err = || NovikovError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        if compact == "0" {
            return Ok(Self::zero(spec));
        }
        let mut out = Self::zero(spec);
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(err());
            }
            if term == "1" {
                out.toggle(0);
                continue;
            }
            let rest = term.strip_prefix(spec.var.as_str()).ok_or_else(err)?;
            let e = if rest.is_empty() {
                1
            } else {
                let pow = rest.strip_prefix('^').ok_or_else(err)?;
                let pow = pow
                    .strip_prefix('{')
                    .and_then(|p| p.strip_suffix('}'))
                    .unwrap_or(pow);
                pow.parse::<i64>().map_err(|_| err())?
            };
            out.toggle(e);
        }
        Ok(out)
    }
}

impl fmt::Display for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => self.spec.var.clone(),
                _ => format!("{}^{}", self.spec.var, e),
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as its exponent polynomial, e.g. `"1+q^2"`; parsing needs the
/// spec, so there is no matching `Deserialize`.
impl Serialize for NovikovScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn nov_add(a: &NovikovScalar, b: &NovikovScalar) -> Result<NovikovScalar, NovikovError> {
    a.same_spec(b)?;
    let exps = a.exps.symmetric_difference(&b.exps).copied().collect();
    Ok(NovikovScalar {
        spec: a.spec.clone(),
        exps,
    })
}

pub fn nov_mul(a: &NovikovScalar, b: &NovikovScalar) -> Result<NovikovScalar, NovikovError> {
    a.same_spec(b)?;
    let mut out = NovikovScalar::zero(&a.spec);
    for &x in &a.exps {
        for &y in &b.exps {
            out.toggle(x + y);
        }
    }
    Ok(out)
}

pub fn nov_valuation(a: &NovikovScalar) -> Result<Rational, NovikovError> {
    let top = a.exps.iter().next_back().ok_or(NovikovError::ValuationOfZero)?;
    Ok(a.spec.monomial_valuation(*top))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::rat;
    use proptest::prelude::*;

    fn q_spec() -> NovikovSpec {
        NovikovSpec::new("q", 2, rat(1, 2)).unwrap()
    }

    fn p(s: &str) -> NovikovScalar {
        NovikovScalar::parse(&q_spec(), s).unwrap()
    }

    #[test]
    fn addition_cancels_mod_two() {
        assert!(nov_add(&p("q"), &p("q")).unwrap().is_zero());
        assert_eq!(nov_add(&p("q"), &p("q^2")).unwrap(), p("q+q^2"));
        assert_eq!(nov_add(&p("1+q"), &p("q+q^3")).unwrap(), p("1+q^3"));
    }

    #[test]
    fn multiplication() {
        let t = NovikovSpec::new("t", 1, rat(1, 4)).unwrap();
        let a = NovikovScalar::parse(&t, "t^2").unwrap();
        let b = NovikovScalar::parse(&t, "t^3").unwrap();
        assert_eq!(nov_mul(&a, &b).unwrap().to_string(), "t^5");
        assert_eq!(nov_mul(&p("1+q"), &p("1+q")).unwrap(), p("1+q^2"));
        assert_eq!(nov_mul(&p("1"), &p("q^-1+q^4")).unwrap(), p("q^-1+q^4"));
    }

    #[test]
    fn valuations() {
        assert_eq!(nov_valuation(&p("1")).unwrap(), Rational::zero());
        let t = NovikovSpec::new("t", 1, rat(1, 4)).unwrap();
        assert_eq!(
            nov_valuation(&NovikovScalar::monomial(&t, 1)).unwrap(),
            rat(-1, 4)
        );
        assert_eq!(nov_valuation(&p("q")).unwrap(), rat(-1, 2));
        assert!(nov_valuation(&p("0")).is_err());
    }

    #[test]
    fn mismatched_specs_rejected() {
        let t = NovikovSpec::new("t", 1, rat(1, 4)).unwrap();
        assert!(nov_add(&NovikovScalar::one(&t), &p("1")).is_err());
        assert!(nov_mul(&NovikovScalar::one(&t), &p("1")).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("q^{-1} + 1").to_string(), "q^-1+1");
        assert!(NovikovScalar::parse(&q_spec(), "t").is_err());
        assert!(NovikovScalar::parse(&q_spec(), "q^").is_err());
        assert!(NovikovSpec::new("q", 0, rat(1, 2)).is_err());
        assert!(NovikovSpec::new("q", 1, rat(0, 1)).is_err());
    }

    fn scalar() -> impl Strategy<Value = NovikovScalar> {
        proptest::collection::vec(-4i64..5, 0..5)
            .prop_map(|v| NovikovScalar::from_exponents(&q_spec(), v))
    }

    proptest! {
        #[test]
        fn valuation_multiplicative(a in scalar(), b in scalar()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let ab = nov_mul(&a, &b).unwrap();
            prop_assert_eq!(
                nov_valuation(&ab).unwrap(),
                nov_valuation(&a).unwrap() + nov_valuation(&b).unwrap()
            );
        }

        #[test]
        fn valuation_non_archimedean(a in scalar(), b in scalar()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let s = nov_add(&a, &b).unwrap();
            let (va, vb) = (nov_valuation(&a).unwrap(), nov_valuation(&b).unwrap());
            if !s.is_zero() {
                let vs = nov_valuation(&s).unwrap();
                prop_assert!(vs >= va.clone().min(vb.clone()));
                if va != vb {
                    prop_assert_eq!(vs, va.min(vb));
                }
            }
        }

        #[test]
        fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
            let add = |x: &NovikovScalar, y: &NovikovScalar| nov_add(x, y).unwrap();
            let mul = |x: &NovikovScalar, y: &NovikovScalar| nov_mul(x, y).unwrap();
            prop_assert_eq!(add(&a, &b), add(&b, &a));
            prop_assert_eq!(mul(&a, &b), mul(&b, &a));
            prop_assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
            prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
            prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
            prop_assert!(add(&a, &a).is_zero());
            prop_assert_eq!(mul(&a, &NovikovScalar::one(&q_spec())), a.clone());
            prop_assert_eq!(NovikovScalar::parse(&q_spec(), &a.to_string()).unwrap(), a);
        }
    }
}
