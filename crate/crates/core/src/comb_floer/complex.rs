use std::collections::BTreeMap;

use serde::Serialize;

use super::diagram::{Compiled, Surface, TwoCurveDiagram};
use super::lunes::{enumerate_lunes, trace, Domain};
use super::CombError;
use crate::filtered_complex::{self, FilteredComplex, Generator};
use crate::novikov::{rat, NovikovSpec, Rational};
use crate::persistence::boundary_depth;

pub const DEFAULT_MAX_WIND: i64 = 2;

/// Degree step and action of the Novikov variable: disks bounded by an
/// equator of a unit-area sphere have Maslov index 2 and area 1/2.
pub fn sphere_spec() -> NovikovSpec {
    NovikovSpec::new("q", 2, rat(1, 2)).expect("valid spec")
}

/// One lune contributing q^exp · to to d(from).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LuneRecord {
    pub from: u32,
    pub to: u32,
    pub exp: i64,
    pub area: Rational,
    pub turns_k: i64,
    pub turns_l: i64,
    pub faces: BTreeMap<String, i64>,
}

#[derive(Clone, Debug)]
pub struct CombFloer {
    pub complex: FilteredComplex,
    pub lunes: Vec<LuneRecord>,
    /// Raw (degree, action) of each point before normalization by q-powers.
    pub grading: Vec<(u32, i64, Rational)>,
}

pub fn point_id(label: u32) -> String {
    format!("a{label}")
}

/// Builds the filtered Floer complex of a validated diagram.
///
/// Degrees and actions come from traces: a domain D from a₁ to x gives
/// deg x = −μ(D) and 𝒜(x) = −area(D), normalized by powers of q (sphere)
/// so that degrees land in {0, 1}. Each lune x → y then contributes
/// q^e · y to d x with e fixed by the degrees, and its area must equal the
/// action drop 𝒜(x) − 𝒜(q^e y); lunes are counted mod 2 per (x, y, e).
pub fn build_complex(d: &TwoCurveDiagram, max_wind: i64) -> Result<CombFloer, CombError> {
    let c = d.validate()?;
    build_from_compiled(&c, max_wind)
}

fn build_from_compiled(c: &Compiled, max_wind: i64) -> Result<CombFloer, CombError> {
    let spec = sphere_spec();
    let m = c.m();
    let base = 0usize;
    let mut degree = vec![0i64; m];
    let mut action = vec![Rational::zero(); m];
    let mut grading = Vec::with_capacity(m);
    for x in 0..m {
        let (deg, act) = if x == base {
            (0, Rational::zero())
        } else {
            let t = trace(c, base, x).ok_or_else(|| CombError::NoTrace(c.labels[x]))?;
            let mu = t.euler_index.to_integer().ok_or_else(|| {
                CombError::Grading(format!("trace to {} has index {}", c.labels[x], t.euler_index))
            })?;
            (-mu, -t.area)
        };
        grading.push((c.labels[x], deg, act.clone()));
        let j = match c.surface {
            Surface::Sphere => deg.div_euclid(spec.degree_step),
            Surface::Annulus => 0,
        };
        degree[x] = spec.shift_degree(deg, -j);
        action[x] = spec.shift_action(&act, -j);
    }

    let mut counts: BTreeMap<(usize, usize, i64), (usize, Rational)> = BTreeMap::new();
    let mut lunes = Vec::new();
    let index_of = |label: u32| c.labels.iter().position(|&l| l == label).unwrap();
    for l in enumerate_lunes(c, max_wind) {
        let (x, y) = (index_of(l.from), index_of(l.to));
        let gap = degree[x] - 1 - degree[y];
        if gap.rem_euclid(spec.degree_step) != 0 {
            return Err(CombError::Grading(format!(
                "lune {}→{} joins degrees {} and {}",
                l.from, l.to, degree[x], degree[y]
            )));
        }
        let e = gap / spec.degree_step;
        if c.surface == Surface::Annulus && e != 0 {
            return Err(CombError::Grading(format!(
                "lune {}→{} would need a recapping on the annulus",
                l.from, l.to
            )));
        }
        let drop = &action[x] - &spec.shift_action(&action[y], e);
        if drop != l.area {
            return Err(CombError::Action {
                from: l.from,
                to: l.to,
                area: l.area.clone(),
                drop,
            });
        }
        let entry = counts.entry((x, y, e)).or_insert((0, l.area.clone()));
        entry.0 += 1;
        lunes.push(record(c, &l, e));
    }

    let generators = (0..m)
        .map(|x| Generator {
            id: point_id(c.labels[x]),
            degree: degree[x],
            action: action[x].clone(),
        })
        .collect();
    let mut entries: Vec<Vec<filtered_complex::Entry>> = vec![Vec::new(); m];
    for ((x, y, e), (count, _)) in counts {
        if count % 2 == 1 {
            entries[x].push(filtered_complex::Entry { target: y, exp: e });
        }
    }
    let complex = FilteredComplex::from_parts(spec, generators, entries)?;
    complex.validate()?;
    Ok(CombFloer {
        complex,
        lunes,
        grading,
    })
}

fn record(c: &Compiled, l: &Domain, exp: i64) -> LuneRecord {
    LuneRecord {
        from: l.from,
        to: l.to,
        exp,
        area: l.area.clone(),
        turns_k: l.turns_k,
        turns_l: l.turns_l,
        faces: l
            .w
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(f, &k)| (c.face_names[f].clone(), k))
            .collect(),
    }
}

impl CombFloer {
    pub fn beta(&self) -> Result<Rational, CombError> {
        Ok(boundary_depth(&filtered_complex::barcode(&self.complex, None)?))
    }

    pub fn gamma(&self) -> Result<Rational, CombError> {
        Ok(filtered_complex::gamma(&self.complex, 1, 0)?)
    }
}

/// Boundary depth of the diagram's Floer complex.
pub fn diagram_beta(d: &TwoCurveDiagram) -> Result<Rational, CombError> {
    build_complex(d, DEFAULT_MAX_WIND)?.beta()
}

/// γ = c([L]) − c([pt]) read off the unique infinite bars in degrees 1 and 0.
pub fn diagram_gamma(d: &TwoCurveDiagram) -> Result<Rational, CombError> {
    build_complex(d, DEFAULT_MAX_WIND)?.gamma()
}
