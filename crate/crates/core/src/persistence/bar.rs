use std::fmt;

use serde::{Deserialize, Serialize};

use super::value::{Extended, Filtration};
use super::PersistenceError;

/// A half-open bar `(left, right]`, or `(left, +∞)` when `right` is infinite.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bar<F> {
    pub degree: i64,
    pub left: F,
    pub right: Extended<F>,
    #[serde(default = "one", rename = "mult")]
    pub multiplicity: u32,
}

fn one() -> u32 {
    1
}

impl<F: Filtration> Bar<F> {
    pub fn finite(degree: i64, left: F, right: F) -> Self {
        Bar {
            degree,
            left,
            right: Extended::Finite(right),
            multiplicity: 1,
        }
    }

    pub fn infinite(degree: i64, left: F) -> Self {
        Bar {
            degree,
            left,
            right: Extended::Infinite,
            multiplicity: 1,
        }
    }

    pub fn with_multiplicity(mut self, m: u32) -> Self {
        self.multiplicity = m;
        self
    }

    pub fn is_infinite(&self) -> bool {
        self.right.is_infinite()
    }

    pub fn length(&self) -> Extended<F> {
        match &self.right {
            Extended::Finite(r) => Extended::Finite(r.minus(&self.left)),
            Extended::Infinite => Extended::Infinite,
        }
    }

    fn check(&self) -> Result<(), PersistenceError> {
        if self.multiplicity == 0 {
            return Err(PersistenceError::InvalidBar(format!("{self}: zero multiplicity")));
        }
        if let Extended::Finite(r) = &self.right {
            if *r <= self.left {
                return Err(PersistenceError::InvalidBar(format!("{self}: empty interval")));
            }
        }
        Ok(())
    }

    fn translate(&self, c: &F) -> Self {
        Bar {
            degree: self.degree,
            left: self.left.minus(c),
            right: match &self.right {
                Extended::Finite(r) => Extended::Finite(r.minus(c)),
                Extended::Infinite => Extended::Infinite,
            },
            multiplicity: self.multiplicity,
        }
    }
}

impl<F: fmt::Display> fmt::Display for Bar<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.right {
            Extended::Finite(r) => write!(f, "({}, {}]", self.left, r)?,
            Extended::Infinite => write!(f, "({}, inf)", self.left)?,
        }
        write!(f, " deg {}", self.degree)?;
        if self.multiplicity != 1 {
            write!(f, " x{}", self.multiplicity)?;
        }
        Ok(())
    }
}

/// A finite multiset of bars in canonical form: sorted by (degree, left, right)
/// with equal bars merged into one entry with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Barcode<F> {
    bars: Vec<Bar<F>>,
}

impl<F: Filtration> Default for Barcode<F> {
    fn default() -> Self {
        Barcode { bars: Vec::new() }
    }
}

impl<F: Filtration> Barcode<F> {
    pub fn new(bars: Vec<Bar<F>>) -> Result<Self, PersistenceError> {
        for b in &bars {
            b.check()?;
        }
        Ok(Self::canonical(bars))
    }

    fn canonical(mut bars: Vec<Bar<F>>) -> Self {
        bars.sort_by(|a, b| {
            (a.degree, &a.left, &a.right).cmp(&(b.degree, &b.left, &b.right))
        });
        let mut merged: Vec<Bar<F>> = Vec::with_capacity(bars.len());
        for b in bars {
            match merged.last_mut() {
                Some(last)
                    if last.degree == b.degree && last.left == b.left && last.right == b.right =>
                {
                    last.multiplicity += b.multiplicity
                }
                _ => merged.push(b),
            }
        }
        Barcode { bars: merged }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn bars(&self) -> &[Bar<F>] {
        &self.bars
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Total number of bars counted with multiplicity.
    pub fn len(&self) -> usize {
        self.bars.iter().map(|b| b.multiplicity as usize).sum()
    }

    /// One entry per bar copy (multiplicities expanded).
    pub fn copies(&self) -> Vec<Bar<F>> {
        self.bars
            .iter()
            .flat_map(|b| {
                std::iter::repeat_n(b.clone().with_multiplicity(1), b.multiplicity as usize)
            })
            .collect()
    }

    pub fn in_degree(&self, degree: i64) -> Barcode<F> {
        Barcode {
            bars: self.bars.iter().filter(|b| b.degree == degree).cloned().collect(),
        }
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.bars.iter().map(|b| b.degree).collect();
        d.dedup();
        d
    }

    pub fn infinite_count(&self, degree: i64) -> usize {
        self.bars
            .iter()
            .filter(|b| b.degree == degree && b.is_infinite())
            .map(|b| b.multiplicity as usize)
            .sum()
    }

    /// Reassigns every degree through `f`, re-canonicalizing.
    pub fn map_degrees(&self, f: impl Fn(i64) -> i64) -> Barcode<F> {
        Self::canonical(
            self.bars
                .iter()
                .map(|b| Bar {
                    degree: f(b.degree),
                    ..b.clone()
                })
                .collect(),
        )
    }

    pub fn union(&self, other: &Barcode<F>) -> Barcode<F> {
        Self::canonical(self.bars.iter().chain(&other.bars).cloned().collect())
    }
}

impl<F: Filtration> fmt::Display for Barcode<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bars.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.bars.iter().map(|b| b.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Deserialize)]
struct BarcodeRepr<F> {
    bars: Vec<Bar<F>>,
}

impl<'de, F: Filtration + Deserialize<'de>> Deserialize<'de> for Barcode<F> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = BarcodeRepr::<F>::deserialize(d)?;
        Barcode::new(repr.bars).map_err(serde::de::Error::custom)
    }
}

/// Maximal length of a finite bar; zero when there is none.
pub fn boundary_depth<F: Filtration>(b: &Barcode<F>) -> F {
    b.bars
        .iter()
        .filter_map(|bar| bar.length().finite().cloned())
        .max()
        .unwrap_or_else(F::zero)
}

/// Finite bar lengths ascending (with multiplicity), then one +∞ per infinite bar.
pub fn bar_length_spectrum<F: Filtration>(b: &Barcode<F>) -> Vec<Extended<F>> {
    let mut out: Vec<Extended<F>> = b.copies().iter().map(|bar| bar.length()).collect();
    out.sort();
    out
}

/// 𝓑[c]: every endpoint translated by −c.
pub fn shift_barcode<F: Filtration>(b: &Barcode<F>, c: &F) -> Barcode<F> {
    Barcode::canonical(b.bars.iter().map(|bar| bar.translate(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{rat, Rational};

    fn fin(d: i64, l: Rational, r: Rational) -> Bar<Rational> {
        Bar::finite(d, l, r)
    }

    #[test]
    fn depth_and_spectrum() {
        let b = Barcode::new(vec![
            fin(0, rat(0, 1), rat(1, 1)),
            Bar::infinite(1, rat(2, 1)),
        ])
        .unwrap();
        assert_eq!(boundary_depth(&b), rat(1, 1));
        assert_eq!(boundary_depth(&Barcode::<Rational>::empty()), Rational::zero());

        let b = Barcode::new(vec![
            fin(0, rat(0, 1), rat(3, 1)),
            fin(0, rat(1, 1), rat(2, 1)),
            Bar::infinite(0, rat(5, 1)),
        ])
        .unwrap();
        assert_eq!(
            bar_length_spectrum(&b),
            vec![
                Extended::Finite(rat(1, 1)),
                Extended::Finite(rat(3, 1)),
                Extended::Infinite
            ]
        );
        assert!(bar_length_spectrum(&Barcode::<Rational>::empty()).is_empty());
    }

    #[test]
    fn canonical_merging() {
        let b = Barcode::new(vec![
            fin(1, rat(0, 1), rat(1, 1)),
            fin(0, rat(0, 1), rat(1, 1)),
            fin(1, rat(0, 1), rat(1, 1)),
        ])
        .unwrap();
        assert_eq!(b.bars().len(), 2);
        assert_eq!(b.bars()[1].multiplicity, 2);
        assert_eq!(b.len(), 3);
        assert!(Barcode::new(vec![fin(0, rat(1, 1), rat(1, 1))]).is_err());
    }

    #[test]
    fn shifting() {
        let b = Barcode::new(vec![fin(0, rat(0, 1), rat(1, 1))]).unwrap();
        let s = shift_barcode(&b, &rat(1, 1));
        assert_eq!(s.bars()[0], fin(0, rat(-1, 1), rat(0, 1)));
        assert_eq!(shift_barcode(&b, &Rational::zero()), b);
        assert_eq!(shift_barcode(&s, &rat(-1, 1)), b);
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{"bars":[{"left":"0","right":"1/5","degree":0,"mult":1},
                               {"left":"1/5","right":"inf","degree":1}]}"#;
        let b: Barcode<Rational> = serde_json::from_str(text).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.bars()[1].is_infinite());
        let back: Barcode<Rational> =
            serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
        assert_eq!(back, b);
        let bad = r#"{"bars":[{"left":"1","right":"0","degree":0}]}"#;
        assert!(serde_json::from_str::<Barcode<Rational>>(bad).is_err());
    }
}
