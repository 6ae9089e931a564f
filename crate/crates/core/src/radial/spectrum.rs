use serde::Serialize;

use super::piq::PiQ;
use super::profile::{LagrangianParams, RadialProfile};
use super::RadialError;
use crate::filtered_complex::FilteredComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Concavity {
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Source {
    Origin { l: i64 },
    Kink { breakpoint: usize, l: i64, concavity: Concavity, branch: u8 },
    Exterior { index: i64 },
    /// A generator of an existing filtered complex.
    Generator { id: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub degree: i64,
    pub action: PiQ,
    pub source: Source,
    pub recap: i64,
}

/// Degrees and actions of the chords of a profile, with recappings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorSpectrum {
    #[serde(rename = "N_L")]
    pub n_l: i64,
    #[serde(rename = "A_L")]
    pub a_l: PiQ,
    pub entries: Vec<SpectrumEntry>,
}

impl GeneratorSpectrum {
    /// Same spectrum with each entry replaced by its recapping that lands in
    /// degrees [0, N_L).
    pub fn fundamental_domain(&self) -> GeneratorSpectrum {
        let mut seen = std::collections::BTreeSet::new();
        let mut entries = Vec::new();
        for e in &self.entries {
            let k = -e.degree.div_euclid(self.n_l);
            let base = e.recap + k;
            if seen.insert((e.source.clone(), base)) {
                entries.push(SpectrumEntry {
                    degree: e.degree + k * self.n_l,
                    action: &e.action + &self.a_l.mul_int(k),
                    source: e.source.clone(),
                    recap: base,
                });
            }
        }
        GeneratorSpectrum {
            n_l: self.n_l,
            a_l: self.a_l.clone(),
            entries,
        }
    }

    /// Every entry shifted by j recappings (degree + j·N_L, action + j·A_L).
    pub fn recap_all(&self, j: i64) -> GeneratorSpectrum {
        let mut s = self.clone();
        for e in &mut s.entries {
            e.degree += j * self.n_l;
            e.action = &e.action + &self.a_l.mul_int(j);
            e.recap += j;
        }
        s
    }

    /// Spectrum of the generators of a filtered complex, one copy each.
    pub fn from_complex(c: &FilteredComplex) -> GeneratorSpectrum {
        let spec = c.spec();
        GeneratorSpectrum {
            n_l: spec.degree_step,
            a_l: PiQ::rational(spec.action_step.clone()),
            entries: c
                .generators()
                .iter()
                .map(|g| SpectrumEntry {
                    degree: g.degree,
                    action: PiQ::rational(g.action.clone()),
                    source: Source::Generator { id: g.id.clone() },
                    recap: 0,
                })
                .collect(),
        }
    }
}

/// Integers strictly between two non-integer slopes.
fn integers_between(a: &PiQ, b: &PiQ) -> std::ops::RangeInclusive<i64> {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    (lo.floor() + 1)..=(-(-hi.clone()).floor() - 1)
}

/// Chords of the profile, recapped by every k in `k_range` (inclusive).
///
/// A kink with slopes s⁻ → s⁺ contributes, for every integer l strictly
/// between them, two chords of action f(x) − l·x in degrees −ln and
/// −ln + n − 1 (concave up) or −ln + 1 and −ln + n (concave down). The
/// origin contributes one chord of degree −ln with l = ⌊s₀⌋, each exterior
/// critical point of index j one of degree j and action f(R). The profile
/// continues flat beyond R, so the end point is a kink towards slope 0.
pub fn generators(
    p: &RadialProfile,
    lp: &LagrangianParams,
    k_range: (i64, i64),
) -> Result<GeneratorSpectrum, RadialError> {
    p.validate()?;
    lp.check()?;
    let n = lp.n;
    let slopes = p.slopes();
    let mut base: Vec<(i64, PiQ, Source)> = Vec::new();

    let l0 = slopes[0].floor();
    base.push((-l0 * n, p.breakpoints[0].1.clone(), Source::Origin { l: l0 }));

    let last = p.breakpoints.len() - 1;
    for i in 1..=last {
        let before = &slopes[i - 1];
        let after = if i == last { PiQ::zero() } else { slopes[i].clone() };
        if *before == after {
            continue;
        }
        let concavity = if after > *before { Concavity::Up } else { Concavity::Down };
        let (x, fx) = &p.breakpoints[i];
        for l in integers_between(before, &after) {
            let action = fx - &PiQ::rational(x.mul_int(l));
            let degrees = match concavity {
                Concavity::Up => [-l * n, -l * n + n - 1],
                Concavity::Down => [-l * n + 1, -l * n + n],
            };
            for (branch, d) in degrees.into_iter().enumerate() {
                base.push((
                    d,
                    action.clone(),
                    Source::Kink {
                        breakpoint: i,
                        l,
                        concavity,
                        branch: branch as u8,
                    },
                ));
            }
        }
    }
    for &j in &p.exterior {
        base.push((j, p.end_value().clone(), Source::Exterior { index: j }));
    }

    let mut entries = Vec::new();
    for k in k_range.0..=k_range.1 {
        for (d, a, s) in &base {
            entries.push(SpectrumEntry {
                degree: d + lp.n_l * k,
                action: a + &lp.a_l.mul_int(k),
                source: s.clone(),
                recap: k,
            });
        }
    }
    Ok(GeneratorSpectrum {
        n_l: lp.n_l,
        a_l: lp.a_l.clone(),
        entries,
    })
}

/// Actions of the degree-d entries, ascending.
pub fn degree_actions(s: &GeneratorSpectrum, d: i64) -> Vec<PiQ> {
    let mut out: Vec<PiQ> = s
        .entries
        .iter()
        .filter(|e| e.degree == d)
        .map(|e| e.action.clone())
        .collect();
    out.sort();
    out
}
