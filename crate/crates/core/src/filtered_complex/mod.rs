//! Filtered chain complexes over a single-variable Novikov field.
//!
//! Differentials are stored in compact form: every entry is a monomial
//! `x^e · y`. Because `x` has positive degree and `d` is homogeneous,
//! each generator has at most one copy `x^e · g` in a fixed degree, so
//! each graded piece is a finite 𝔽₂-vector space with a basis of such
//! copies and all reductions happen degree by degree.

mod oracle;
pub mod random;
mod reduce;
mod unroll;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::novikov::{NovikovError, NovikovScalar, NovikovSpec, Rational};

pub use oracle::{brute_force_barcode, ORACLE_CAP};
pub use reduce::{barcode, gamma, spectral_invariant, uz_reduce, BasisCycle, BasisPair, OrthogonalBasis};
pub use unroll::{unroll, UnrolledCell, UnrolledComplex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("duplicate generator id {0:?}")]
    DuplicateId(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("degree mismatch in d({from}): term {term} has degree {found}, expected {expected}")]
    DegreeMismatch {
        from: String,
        term: String,
        found: i64,
        expected: i64,
    },
    #[error("action does not decrease in d({from}): term {term} has action {term_action} >= {action}")]
    ActionNotDecreasing {
        from: String,
        term: String,
        term_action: Rational,
        action: Rational,
    },
    #[error("d∘d is nonzero on {0}")]
    DSquaredNonzero(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("element is not a cycle")]
    NotACycle,
    #[error("gamma undefined: degree {degree} carries {count} infinite bars")]
    GammaUndefined { degree: i64, count: usize },
    #[error("empty window")]
    EmptyWindow,
    #[error("oracle size cap exceeded: {0} cells")]
    OracleTooLarge(usize),
    #[error(transparent)]
    Novikov(#[from] NovikovError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub id: String,
    pub degree: i64,
    pub action: Rational,
}

/// A formal sum Σ λ_k · y_k.
pub type FormalSum = Vec<(NovikovScalar, String)>;

/// Renders a formal sum as `a1 + q^-1 a3`.
pub fn format_sum(sum: &FormalSum) -> String {
    if sum.is_empty() {
        return "0".to_string();
    }
    sum.iter()
        .map(|(s, id)| match s.as_monomial() {
            Some(0) => id.clone(),
            _ if s.exponents().count() == 1 => format!("{s} {id}"),
            _ => format!("({s}) {id}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// A monomial differential entry `x^exp · generators[target]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Entry {
    pub target: usize,
    pub exp: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    spec: NovikovSpec,
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
    /// d(generators[i]) as a sorted list of monomial entries (no repeats).
    d: Vec<Vec<Entry>>,
}

impl FilteredComplex {
    /// Builds a complex from monomial entries given by generator id.
    /// Repeated entries cancel mod 2. Checks ids only; call [`validate`]
    /// for the chain-complex invariants.
    pub fn from_entries(
        spec: NovikovSpec,
        generators: Vec<Generator>,
        entries: &[(&str, i64, &str)],
    ) -> Result<Self, ComplexError> {
        let mut c = Self::with_generators(spec, generators)?;
        for (from, exp, to) in entries {
            let i = c.idx(from)?;
            let j = c.idx(to)?;
            c.toggle(i, Entry { target: j, exp: *exp });
        }
        Ok(c)
    }

    fn with_generators(spec: NovikovSpec, generators: Vec<Generator>) -> Result<Self, ComplexError> {
        spec.check()?;
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.id.clone(), i).is_some() {
                return Err(ComplexError::DuplicateId(g.id.clone()));
            }
        }
        let n = generators.len();
        Ok(FilteredComplex {
            spec,
            generators,
            index,
            d: vec![Vec::new(); n],
        })
    }

    /// Builds from formal sums: `d(id) = Σ λ · y`.
    pub fn from_sums(
        spec: NovikovSpec,
        generators: Vec<Generator>,
        differential: &BTreeMap<String, FormalSum>,
    ) -> Result<Self, ComplexError> {
        let mut c = Self::with_generators(spec, generators)?;
        for (from, sum) in differential {
            let i = c.idx(from)?;
            for (scalar, to) in sum {
                if scalar.spec() != &c.spec {
                    return Err(NovikovError::SpecMismatch {
                        left: scalar.spec().var.clone(),
                        right: c.spec.var.clone(),
                    }
                    .into());
                }
                let j = c.idx(to)?;
                for e in scalar.exponents() {
                    c.toggle(i, Entry { target: j, exp: e });
                }
            }
        }
        Ok(c)
    }

    /// Builds directly from index-based entries (used by generators of test data).
    pub fn from_parts(
        spec: NovikovSpec,
        generators: Vec<Generator>,
        d: Vec<Vec<Entry>>,
    ) -> Result<Self, ComplexError> {
        let mut c = Self::with_generators(spec, generators)?;
        for (i, entries) in d.into_iter().enumerate() {
            for e in entries {
                if e.target >= c.generators.len() {
                    return Err(ComplexError::UnknownGenerator(format!("#{}", e.target)));
                }
                c.toggle(i, e);
            }
        }
        Ok(c)
    }

    fn toggle(&mut self, i: usize, e: Entry) {
        let row = &mut self.d[i];
        match row.binary_search(&e) {
            Ok(pos) => {
                row.remove(pos);
            }
            Err(pos) => row.insert(pos, e),
        }
    }

    pub fn idx(&self, id: &str) -> Result<usize, ComplexError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| ComplexError::UnknownGenerator(id.to_string()))
    }

    pub fn spec(&self) -> &NovikovSpec {
        &self.spec
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn entries(&self, i: usize) -> &[Entry] {
        &self.d[i]
    }

    /// Degree of the copy x^e · g.
    pub fn copy_degree(&self, g: usize, e: i64) -> i64 {
        self.spec.shift_degree(self.generators[g].degree, e)
    }

    /// Action of the copy x^e · g.
    pub fn copy_action(&self, g: usize, e: i64) -> Rational {
        self.spec.shift_action(&self.generators[g].action, e)
    }

    /// The exponent e with deg(x^e · g) = degree, if any.
    pub fn exponent_in_degree(&self, g: usize, degree: i64) -> Option<i64> {
        let diff = degree - self.generators[g].degree;
        (diff.rem_euclid(self.spec.degree_step) == 0).then(|| diff / self.spec.degree_step)
    }

    /// d(x) as formal sums keyed by source id.
    pub fn differential_sums(&self) -> BTreeMap<String, FormalSum> {
        let mut out = BTreeMap::new();
        for (i, row) in self.d.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let mut by_target: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
            for e in row {
                by_target.entry(e.target).or_default().push(e.exp);
            }
            let sum: FormalSum = by_target
                .into_iter()
                .map(|(t, exps)| {
                    (
                        NovikovScalar::from_exponents(&self.spec, exps),
                        self.generators[t].id.clone(),
                    )
                })
                .collect();
            out.insert(self.generators[i].id.clone(), sum);
        }
        out
    }

    /// All three chain-complex invariants; reports the first violation.
    pub fn validate(&self) -> Result<(), ComplexError> {
        for (i, row) in self.d.iter().enumerate() {
            let g = &self.generators[i];
            for e in row {
                let deg = self.copy_degree(e.target, e.exp);
                let term = || self.term_label(*e);
                if deg != g.degree - 1 {
                    return Err(ComplexError::DegreeMismatch {
                        from: g.id.clone(),
                        term: term(),
                        found: deg,
                        expected: g.degree - 1,
                    });
                }
                let act = self.copy_action(e.target, e.exp);
                if act >= g.action {
                    return Err(ComplexError::ActionNotDecreasing {
                        from: g.id.clone(),
                        term: term(),
                        term_action: act,
                        action: g.action.clone(),
                    });
                }
            }
        }
        for (i, row) in self.d.iter().enumerate() {
            let mut acc: BTreeMap<Entry, bool> = BTreeMap::new();
            for e in row {
                for f in &self.d[e.target] {
                    let key = Entry {
                        target: f.target,
                        exp: e.exp + f.exp,
                    };
                    *acc.entry(key).or_insert(false) ^= true;
                }
            }
            if acc.values().any(|&odd| odd) {
                return Err(ComplexError::DSquaredNonzero(self.generators[i].id.clone()));
            }
        }
        Ok(())
    }

    fn term_label(&self, e: Entry) -> String {
        let s = NovikovScalar::monomial(&self.spec, e.exp);
        format_sum(&vec![(s, self.generators[e.target].id.clone())])
    }

    /// The same complex with all actions translated by `c`.
    pub fn shift_actions(&self, c: &Rational) -> FilteredComplex {
        let mut out = self.clone();
        for g in &mut out.generators {
            g.action = &g.action + c;
        }
        out
    }

    /// Replaces generator `g` by the recapped copy x^j · g.
    pub fn recap(&self, g: usize, j: i64) -> FilteredComplex {
        let mut out = self.clone();
        out.generators[g].degree = self.copy_degree(g, j);
        out.generators[g].action = self.copy_action(g, j);
        for (i, row) in out.d.iter_mut().enumerate() {
            for e in row.iter_mut() {
                if i == g {
                    e.exp += j;
                }
                if e.target == g {
                    e.exp -= j;
                }
            }
            row.sort();
        }
        out
    }

    /// The dual complex: negated degrees and actions, transposed differential.
    pub fn dual(&self) -> FilteredComplex {
        let mut out = self.clone();
        for g in &mut out.generators {
            g.degree = -g.degree;
            g.action = -&g.action;
        }
        out.d = vec![Vec::new(); self.len()];
        for (i, row) in self.d.iter().enumerate() {
            for e in row {
                out.d[e.target].push(Entry { target: i, exp: e.exp });
            }
        }
        for row in &mut out.d {
            row.sort();
        }
        out
    }

    /// Replaces the action of every generator (used for perturbations).
    pub fn with_actions(&self, actions: &[Rational]) -> FilteredComplex {
        let mut out = self.clone();
        for (g, a) in out.generators.iter_mut().zip(actions) {
            g.action = a.clone();
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ComplexRepr::from(self)).expect("complex serializes")
    }
}

impl fmt::Display for FilteredComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            writeln!(f, "{} deg {} action {}", g.id, g.degree, g.action)?;
        }
        for (from, sum) in self.differential_sums() {
            writeln!(f, "d {} = {}", from, format_sum(&sum))?;
        }
        Ok(())
    }
}

/// JSON schema of a complex; scalars are exponent polynomials like "1+q^2".
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexRepr {
    pub spec: NovikovSpec,
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub differential: BTreeMap<String, Vec<(String, String)>>,
}

impl From<&FilteredComplex> for ComplexRepr {
    fn from(c: &FilteredComplex) -> Self {
        let differential = c
            .differential_sums()
            .into_iter()
            .map(|(k, sum)| {
                (
                    k,
                    sum.into_iter().map(|(s, id)| (s.to_string(), id)).collect(),
                )
            })
            .collect();
        ComplexRepr {
            spec: c.spec.clone(),
            generators: c.generators.clone(),
            differential,
        }
    }
}

impl TryFrom<ComplexRepr> for FilteredComplex {
    type Error = ComplexError;

    fn try_from(r: ComplexRepr) -> Result<Self, Self::Error> {
        r.spec.check()?;
        let mut sums = BTreeMap::new();
        for (from, terms) in r.differential {
            let mut sum = Vec::new();
            for (s, to) in terms {
                sum.push((NovikovScalar::parse(&r.spec, &s)?, to));
            }
            sums.insert(from, sum);
        }
        FilteredComplex::from_sums(r.spec, r.generators, &sums)
    }
}

/// Parses a formal sum given as `[["1","a1"],["q","a3"]]` pairs.
pub fn parse_sum(spec: &NovikovSpec, terms: &[(String, String)]) -> Result<FormalSum, ComplexError> {
    terms
        .iter()
        .map(|(s, id)| Ok((NovikovScalar::parse(spec, s)?, id.clone())))
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::novikov::rat;

    pub(crate) fn gen(id: &str, degree: i64, action: Rational) -> Generator {
        Generator {
            id: id.to_string(),
            degree,
            action,
        }
    }

    pub(crate) fn q_spec() -> NovikovSpec {
        NovikovSpec::new("q", 2, rat(1, 2)).unwrap()
    }

    /// The four-generator sphere complex with ε = 1/20.
    pub(crate) fn sphere_example() -> FilteredComplex {
        FilteredComplex::from_entries(
            q_spec(),
            vec![
                gen("a1", 0, rat(0, 1)),
                gen("a2", 1, rat(1, 5)),
                gen("a3", 0, rat(0, 1)),
                gen("a4", 1, rat(1, 5)),
            ],
            &[("a2", 0, "a1"), ("a2", 0, "a3"), ("a4", 0, "a1"), ("a4", 0, "a3")],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        let zero = FilteredComplex::from_entries(
            q_spec(),
            vec![gen("x", 0, rat(0, 1)), gen("y", 1, rat(1, 1))],
            &[],
        )
        .unwrap();
        assert!(zero.validate().is_ok());
        let flat = FilteredComplex::from_entries(
            q_spec(),
            vec![gen("z", 0, rat(1, 1)), gen("y", 1, rat(1, 1))],
            &[("y", 0, "z")],
        )
        .unwrap();
        assert!(matches!(
            flat.validate(),
            Err(ComplexError::ActionNotDecreasing { .. })
        ));
        let skew = FilteredComplex::from_entries(
            q_spec(),
            vec![gen("z", 0, rat(0, 1)), gen("y", 2, rat(1, 1))],
            &[("y", 0, "z")],
        )
        .unwrap();
        assert!(matches!(skew.validate(), Err(ComplexError::DegreeMismatch { .. })));
        let square = FilteredComplex::from_entries(
            q_spec(),
            vec![
                gen("a", 0, rat(0, 1)),
                gen("b", 1, rat(1, 1)),
                gen("c", 2, rat(2, 1)),
            ],
            &[("c", 0, "b"), ("b", 0, "a")],
        )
        .unwrap();
        assert!(matches!(square.validate(), Err(ComplexError::DSquaredNonzero(_))));
        assert!(sphere_example().validate().is_ok());
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{"spec":{"var":"q","degree_step":2,"action_step":"1/2"},
            "generators":[{"id":"a1","degree":0,"action":"0"},{"id":"a2","degree":1,"action":"1/5"},
                          {"id":"a3","degree":0,"action":"0"},{"id":"a4","degree":1,"action":"1/5"}],
            "differential":{"a2":[["1","a1"],["1","a3"]],"a4":[["1","a1"],["1","a3"]]}}"#;
        let repr: ComplexRepr = serde_json::from_str(text).unwrap();
        let c = FilteredComplex::try_from(repr).unwrap();
        assert_eq!(c, sphere_example());
        let again: ComplexRepr = serde_json::from_value(c.to_json()).unwrap();
        assert_eq!(FilteredComplex::try_from(again).unwrap(), c);
    }

    #[test]
    fn non_monomial_coefficients_are_inhomogeneous() {
        let text = r#"{"spec":{"var":"q","degree_step":2,"action_step":"1/2"},
            "generators":[{"id":"a","degree":0,"action":"0"},{"id":"b","degree":1,"action":"5"}],
            "differential":{"b":[["1+q","a"]]}}"#;
        let repr: ComplexRepr = serde_json::from_str(text).unwrap();
        let c = FilteredComplex::try_from(repr).unwrap();
        assert!(matches!(c.validate(), Err(ComplexError::DegreeMismatch { .. })));
    }

    #[test]
    fn recap_and_dual_stay_valid() {
        let c = sphere_example();
        let r = c.recap(1, 1);
        assert!(r.validate().is_ok());
        assert_eq!(r.generators()[1].degree, 3);
        assert_eq!(r.generators()[1].action, rat(7, 10));
        assert!(c.dual().validate().is_ok());
    }
}
