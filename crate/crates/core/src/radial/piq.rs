//! Exact arithmetic in ℚ ⊕ ℚπ.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::Mutex;

use once_cell::sync::Lazy;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::novikov::{rat, Rational};
use crate::persistence::Filtration;

/// `rational + pi · π`, with π treated as transcendental: two values are
/// equal only when both coefficients agree, and order is decided by
/// refining a rational enclosure of π until the comparison resolves.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PiQ {
    pub rational: Rational,
    pub pi: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid ℚ+ℚπ literal {0:?}")]
pub struct ParsePiQError(pub String);

/// arctan(1/x) ∈ [lo, hi] from `terms` terms of the alternating series.
fn arctan_inv_bounds(x: i64, terms: usize) -> (Rational, Rational) {
    let x2 = Rational::from_integer(x * x);
    let mut power = Rational::new(1, x);
    let mut sum = Rational::zero();
    for k in 0..terms {
        let term = &power * &rat(1, 2 * k as i64 + 1);
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power = &power * &x2.recip();
    }
    let tail = &power * &rat(1, 2 * terms as i64 + 1);
    (&sum - &tail, &sum + &tail)
}

/// Machin's formula π = 16 arctan(1/5) − 4 arctan(1/239) with certified bounds.
fn compute_pi_bounds(terms: usize) -> (Rational, Rational) {
    let (lo5, hi5) = arctan_inv_bounds(5, terms);
    let (lo239, hi239) = arctan_inv_bounds(239, terms);
    (
        lo5.mul_int(16) - hi239.mul_int(4),
        hi5.mul_int(16) - lo239.mul_int(4),
    )
}

static PI_BOUNDS: Lazy<Mutex<Vec<(Rational, Rational)>>> = Lazy::new(|| Mutex::new(Vec::new()));

/// Enclosure of π at refinement level `level` (width shrinking like 25^(−8·2^level)).
pub fn pi_bounds(level: usize) -> (Rational, Rational) {
    let mut cache = PI_BOUNDS.lock().expect("pi cache poisoned");
    while cache.len() <= level {
        let terms = 8usize << cache.len();
        cache.push(compute_pi_bounds(terms));
    }
    cache[level].clone()
}

impl PiQ {
    pub fn new(rational: Rational, pi: Rational) -> Self {
        PiQ { rational, pi }
    }

    pub fn rational(r: Rational) -> Self {
        PiQ::new(r, Rational::zero())
    }

    pub fn pi_multiple(c: Rational) -> Self {
        PiQ::new(Rational::zero(), c)
    }

    pub fn zero() -> Self {
        PiQ::default()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.pi.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.pi.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> PiQ {
        PiQ::new(&self.rational * c, &self.pi * c)
    }

    pub fn mul_int(&self, k: i64) -> PiQ {
        PiQ::new(self.rational.mul_int(k), self.pi.mul_int(k))
    }

    /// Rational interval containing the value at enclosure level `level`.
    pub fn enclosure(&self, level: usize) -> (Rational, Rational) {
        let (lo, hi) = pi_bounds(level);
        let (a, b) = (&self.rational + &(&self.pi * &lo), &self.rational + &(&self.pi * &hi));
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn signum(&self) -> Ordering {
        if self.pi.is_zero() {
            return self.rational.cmp(&Rational::zero());
        }
        // a + bπ with b ≠ 0 is irrational, so refinement terminates
        let mut level = 0;
        loop {
            let (lo, hi) = self.enclosure(level);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            level += 1;
        }
    }

    pub fn floor(&self) -> i64 {
        if self.pi.is_zero() {
            return self.rational.floor().to_integer().expect("floor fits in i64");
        }
        let mut level = 0;
        loop {
            let (lo, hi) = self.enclosure(level);
            let (a, b) = (lo.floor(), hi.floor());
            if a == b {
                return a.to_integer().expect("floor fits in i64");
            }
            level += 1;
        }
    }

    pub fn abs(&self) -> PiQ {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64() + self.pi.to_f64() * std::f64::consts::PI
    }
}

impl Ord for PiQ {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.pi == other.pi {
            return self.rational.cmp(&other.rational);
        }
        (self - other).signum()
    }
}

impl PartialOrd for PiQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rational> for PiQ {
    fn from(r: Rational) -> Self {
        PiQ::rational(r)
    }
}

impl Add for &PiQ {
    type Output = PiQ;
    fn add(self, o: &PiQ) -> PiQ {
        PiQ::new(&self.rational + &o.rational, &self.pi + &o.pi)
    }
}

impl Sub for &PiQ {
    type Output = PiQ;
    fn sub(self, o: &PiQ) -> PiQ {
        PiQ::new(&self.rational - &o.rational, &self.pi - &o.pi)
    }
}

impl Add for PiQ {
    type Output = PiQ;
    fn add(self, o: PiQ) -> PiQ {
        &self + &o
    }
}

impl Sub for PiQ {
    type Output = PiQ;
    fn sub(self, o: PiQ) -> PiQ {
        &self - &o
    }
}

impl Neg for PiQ {
    type Output = PiQ;
    fn neg(self) -> PiQ {
        PiQ::new(-self.rational, -self.pi)
    }
}

impl Filtration for PiQ {
    fn zero() -> Self {
        PiQ::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn halve(&self) -> Self {
        PiQ::new(self.rational.half(), self.pi.half())
    }
}

impl fmt::Display for PiQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pi_part = |f: &mut fmt::Formatter<'_>, c: &Rational| {
            if *c == Rational::one() {
                write!(f, "π")
            } else if *c == -Rational::one() {
                write!(f, "-π")
            } else {
                write!(f, "{c}π")
            }
        };
        match (self.rational.is_zero(), self.pi.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => pi_part(f, &self.pi),
            (false, false) => {
                write!(f, "{}", self.rational)?;
                if self.pi.is_positive() {
                    write!(f, "+")?;
                }
                pi_part(f, &self.pi)
            }
        }
    }
}

impl fmt::Debug for PiQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_pi_coefficient(s: &str) -> Option<Rational> {
    let body = s.strip_suffix('π').or_else(|| s.strip_suffix("pi"))?;
    match body {
        "" | "+" => Some(Rational::one()),
        "-" => Some(-Rational::one()),
        b => {
            let b = b.strip_prefix('+').unwrap_or(b);
            b.strip_suffix('*').unwrap_or(b).parse().ok()
        }
    }
}

impl FromStr for PiQ {
    type Err = ParsePiQError;

    /// Sums of signed rational and π terms: `"3/4"`, `"-9/80π"`,
    /// `"1/2+3π"`, `"π-3"`, `"2*pi"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParsePiQError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let mut cuts: Vec<usize> = t
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-') && !t[..i].ends_with('/'))
            .map(|(i, _)| i)
            .collect();
        cuts.insert(0, 0);
        cuts.push(t.len());
        let mut out = PiQ::zero();
        for w in cuts.windows(2) {
            let term = &t[w[0]..w[1]];
            if term.ends_with('π') || term.ends_with("pi") {
                out.pi += parse_pi_coefficient(term).ok_or_else(err)?;
            } else {
                let term = term.strip_prefix('+').unwrap_or(term);
                out.rational += term.parse::<Rational>().map_err(|_| err())?;
            }
        }
        Ok(out)
    }
}

impl Serialize for PiQ {
    /// Serialized as `["rational", "π-coefficient"]`.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (&self.rational, &self.pi).serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PiQRepr {
    Pair(Rational, Rational),
    Text(String),
}

impl<'de> Deserialize<'de> for PiQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match PiQRepr::deserialize(d)? {
            PiQRepr::Pair(a, b) => Ok(PiQ::new(a, b)),
            PiQRepr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PiQ {
        s.parse().unwrap()
    }

    #[test]
    fn pi_enclosure_contains_pi() {
        for level in 0..3 {
            let (lo, hi) = pi_bounds(level);
            assert!(lo.to_f64() <= std::f64::consts::PI && std::f64::consts::PI <= hi.to_f64());
            assert!(lo < hi);
        }
        let (lo, hi) = pi_bounds(1);
        assert!((&hi - &lo) < rat(1, 1_000_000_000));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("-9/80π"), PiQ::pi_multiple(rat(-9, 80)));
        assert_eq!(p("1/2+3π"), PiQ::new(rat(1, 2), rat(3, 1)));
        assert_eq!(p("1-pi"), PiQ::new(rat(1, 1), rat(-1, 1)));
        assert_eq!(p("-1/3-2/5π"), PiQ::new(rat(-1, 3), rat(-2, 5)));
        assert_eq!(p("2*pi"), PiQ::pi_multiple(rat(2, 1)));
        assert_eq!(p("7/8"), PiQ::rational(rat(7, 8)));
        for s in ["-9/80π", "1/2+3π", "1-π", "π", "7/8", "0"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert!("".parse::<PiQ>().is_err());
        assert!("1/2+xπ".parse::<PiQ>().is_err());
        let json = serde_json::to_string(&p("1/2+3π")).unwrap();
        assert_eq!(json, r#"["1/2","3"]"#);
        assert_eq!(serde_json::from_str::<PiQ>(&json).unwrap(), p("1/2+3π"));
        assert_eq!(serde_json::from_str::<PiQ>("\"-π\"").unwrap(), p("-π"));
    }

    #[test]
    fn exact_comparison() {
        assert!(p("π") > p("3") && p("π") < p("22/7"));
        assert!(p("355/113") > p("π"));
        assert!(p("π-3") < p("1/7"));
        assert!(p("-π") < p("-3"));
        assert_eq!(p("π").floor(), 3);
        assert_eq!(p("-π").floor(), -4);
        assert_eq!(p("5/2").floor(), 2);
        assert_eq!(p("3-π").abs(), p("π-3"));
        let mut v = vec![p("22/7"), p("π"), p("3"), p("1+1/2π")];
        v.sort();
        assert_eq!(v, vec![p("1+1/2π"), p("3"), p("π"), p("22/7")]);
    }
}
