//! Barcodes compatible with a generator spectrum.
//!
//! Working in the fundamental domain of degrees [0, N_L), a barcode is a
//! partial matching in which a generator z of degree d is paired with a
//! generator y of degree d + 1 of larger action (bar (a_z, a_y] in degree d),
//! the top degree pairing with recapped degree-0 generators (action + A_L).
//! Unpaired generators are infinite bars; their number in each degree must
//! equal the prescribed rank.

use std::collections::{BTreeMap, BTreeSet};

use super::piq::PiQ;
use super::spectrum::GeneratorSpectrum;
use super::RadialError;
use crate::persistence::{boundary_depth, Bar, Barcode};

/// Search nodes visited before giving up.
pub const DEFAULT_SEARCH_LIMIT: usize = 20_000_000;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Free,
    Unpaired,
    Lower,
    Upper,
    /// Degree-0 generator waiting to close a top-degree bar.
    Reserved,
}

/// A bar as (degree, left id, right id) into the sorted value table.
type RawBar = (usize, usize, Option<usize>);

/// Matching search over value ids; the actions are compared once, when the
/// sorted value table is built.
struct Search {
    /// Value id of each generator, per degree.
    layers: Vec<Vec<usize>>,
    /// For each generator, the (partner index, right-end id) pairs it may
    /// close a bar with, sorted by id.
    partners: Vec<Vec<Vec<(usize, usize)>>>,
    ranks: Vec<usize>,
    roles: Vec<Vec<Role>>,
    reserved: usize,
    bars: Vec<RawBar>,
    found: BTreeSet<Vec<RawBar>>,
    visited: usize,
    limit: usize,
    first_only: bool,
}

impl Search {
    fn count(&self, d: usize, from: usize, role: Role) -> usize {
        self.roles[d][from..].iter().filter(|r| **r == role).count()
    }

    fn done(&self) -> bool {
        self.first_only && !self.found.is_empty()
    }

    fn run(&mut self, d: usize, i: usize) -> Result<(), RadialError> {
        self.visited += 1;
        if self.visited > self.limit {
            return Err(RadialError::SearchLimit(self.limit));
        }
        if self.done() {
            return Ok(());
        }
        let top = self.layers.len();
        if d == top {
            if self.reserved == 0 {
                let mut bars = self.bars.clone();
                bars.sort_unstable();
                self.found.insert(bars);
            }
            return Ok(());
        }
        if i == self.layers[d].len() {
            if self.count(d, 0, Role::Unpaired) != self.ranks[d] {
                return Ok(());
            }
            return self.run(d + 1, 0);
        }
        let unpaired = self.count(d, 0, Role::Unpaired);
        if unpaired > self.ranks[d] || unpaired + self.count(d, i, Role::Free) < self.ranks[d] {
            return Ok(());
        }
        // reserved degree-0 generators must all be claimed by the top layer
        if d == top - 1 && self.reserved > self.count(d, i, Role::Free) {
            return Ok(());
        }
        if self.roles[d][i] != Role::Free {
            return self.run(d, i + 1);
        }
        let a = self.layers[d][i];

        if unpaired < self.ranks[d] {
            self.roles[d][i] = Role::Unpaired;
            self.bars.push((d, a, None));
            self.run(d, i + 1)?;
            self.bars.pop();
            self.roles[d][i] = Role::Free;
        }

        let wraps = d + 1 == top;
        let up = if wraps { 0 } else { d + 1 };
        let want = if wraps { Role::Reserved } else { Role::Free };
        let mut last = None;
        for k in 0..self.partners[d][i].len() {
            let (j, b) = self.partners[d][i][k];
            if self.roles[up][j] != want || last == Some(b) {
                continue;
            }
            last = Some(b);
            self.roles[d][i] = Role::Lower;
            self.roles[up][j] = Role::Upper;
            if wraps {
                self.reserved -= 1;
            }
            self.bars.push((d, a, Some(b)));
            self.run(d, i + 1)?;
            self.bars.pop();
            if wraps {
                self.reserved += 1;
            }
            self.roles[up][j] = want;
            self.roles[d][i] = Role::Free;
        }

        if d == 0 {
            self.roles[d][i] = Role::Reserved;
            self.reserved += 1;
            self.run(d, i + 1)?;
            self.reserved -= 1;
            self.roles[d][i] = Role::Free;
        }
        Ok(())
    }
}

fn layers(s: &GeneratorSpectrum) -> Vec<Vec<PiQ>> {
    let f = s.fundamental_domain();
    let mut layers = vec![Vec::new(); s.n_l as usize];
    for e in &f.entries {
        layers[e.degree as usize].push(e.action.clone());
    }
    for l in &mut layers {
        l.sort();
    }
    layers
}

fn rank_vector(s: &GeneratorSpectrum, ranks: &BTreeMap<i64, usize>) -> Vec<usize> {
    let mut v = vec![0; s.n_l as usize];
    for (&d, &r) in ranks {
        v[d.rem_euclid(s.n_l) as usize] += r;
    }
    v
}

fn search(
    s: &GeneratorSpectrum,
    ranks: &BTreeMap<i64, usize>,
    cap: Option<PiQ>,
    first_only: bool,
    limit: usize,
) -> Result<BTreeSet<Barcode<PiQ>>, RadialError> {
    let actions = layers(s);
    let top = actions.len();
    let values: Vec<PiQ> = actions
        .iter()
        .flatten()
        .cloned()
        .chain(actions[0].iter().map(|a| a + &s.a_l))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let id = |v: &PiQ| values.binary_search(v).expect("value is tabulated");
    let layer_ids: Vec<Vec<usize>> = actions.iter().map(|l| l.iter().map(id).collect()).collect();
    let partners = (0..top)
        .map(|d| {
            let (up, lift) = if d + 1 == top { (0, s.a_l.clone()) } else { (d + 1, PiQ::zero()) };
            actions[d]
                .iter()
                .map(|a| {
                    let mut p: Vec<(usize, usize)> = actions[up]
                        .iter()
                        .enumerate()
                        .map(|(j, b)| (j, b + &lift))
                        .filter(|(_, b)| b > a && cap.as_ref().is_none_or(|c| &(b - a) <= c))
                        .map(|(j, b)| (j, id(&b)))
                        .collect();
                    p.sort_by_key(|&(j, b)| (b, j));
                    p
                })
                .collect()
        })
        .collect();
    let mut st = Search {
        roles: layer_ids.iter().map(|l| vec![Role::Free; l.len()]).collect(),
        ranks: rank_vector(s, ranks),
        layers: layer_ids,
        partners,
        reserved: 0,
        bars: Vec::new(),
        found: BTreeSet::new(),
        visited: 0,
        limit,
        first_only,
    };
    st.run(0, 0)?;
    Ok(st
        .found
        .into_iter()
        .map(|raw| {
            let bars = raw
                .into_iter()
                .map(|(d, a, b)| match b {
                    Some(b) => Bar::finite(d as i64, values[a].clone(), values[b].clone()),
                    None => Bar::infinite(d as i64, values[a].clone()),
                })
                .collect();
            Barcode::new(bars).expect("bars are valid")
        })
        .collect())
}

/// Every barcode realizable by an action-decreasing differential on the
/// spectrum with the given ranks (keyed by degree modulo N_L), with
/// degrees in [0, N_L).
pub fn feasible_barcodes(
    s: &GeneratorSpectrum,
    ranks: &BTreeMap<i64, usize>,
) -> Result<BTreeSet<Barcode<PiQ>>, RadialError> {
    feasible_barcodes_limited(s, ranks, DEFAULT_SEARCH_LIMIT)
}

pub fn feasible_barcodes_limited(
    s: &GeneratorSpectrum,
    ranks: &BTreeMap<i64, usize>,
    limit: usize,
) -> Result<BTreeSet<Barcode<PiQ>>, RadialError> {
    let found = search(s, ranks, None, false, limit)?;
    if found.is_empty() {
        return Err(RadialError::Infeasible(format!("{ranks:?}")));
    }
    Ok(found)
}

/// Smallest boundary depth among the feasible barcodes: every Floer complex
/// with this generator spectrum and these ranks has β at least this value.
///
/// Found by bisection over candidate bar lengths, each step asking whether
/// a matching exists whose finite bars are all no longer than the candidate.
pub fn forced_bar_bound(s: &GeneratorSpectrum, ranks: &BTreeMap<i64, usize>) -> Result<PiQ, RadialError> {
    let layers = layers(s);
    let top = layers.len();
    let mut lengths: BTreeSet<PiQ> = BTreeSet::new();
    for d in 0..top {
        let (up, lift) = if d + 1 == top { (0, s.a_l.clone()) } else { (d + 1, PiQ::zero()) };
        for a in &layers[d] {
            for b in &layers[up] {
                let len = &(b + &lift) - a;
                if len > PiQ::zero() {
                    lengths.insert(len);
                }
            }
        }
    }
    let mut candidates: Vec<PiQ> = vec![PiQ::zero()];
    candidates.extend(lengths);
    let feasible = |cap: &PiQ| -> Result<bool, RadialError> {
        Ok(!search(s, ranks, Some(cap.clone()), true, DEFAULT_SEARCH_LIMIT)?.is_empty())
    };
    let last = candidates.len() - 1;
    if !feasible(&candidates[last])? {
        return Err(RadialError::Infeasible(format!("{ranks:?}")));
    }
    let (mut lo, mut hi) = (0usize, last);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(&candidates[mid])? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(candidates[lo].clone())
}

/// Minimum boundary depth over an explicit feasible set.
pub fn min_boundary_depth(set: &BTreeSet<Barcode<PiQ>>) -> Option<PiQ> {
    set.iter().map(boundary_depth).min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::rat;
    use crate::radial::profile::{LagrangianParams, RadialProfile};
    use crate::radial::spectrum::{generators, SpectrumEntry, Source};

    fn q(n: i64, d: i64) -> PiQ {
        PiQ::rational(rat(n, d))
    }

    fn circle_ranks() -> BTreeMap<i64, usize> {
        BTreeMap::from([(0, 1), (1, 1)])
    }

    fn new_radial(a: Rational) -> GeneratorSpectrum {
        let p = RadialProfile::new_radial(&a, &rat(1, 2)).unwrap();
        generators(&p, &LagrangianParams::new(1, 2, q(1, 2)), (0, 0)).unwrap()
    }

    use crate::novikov::Rational;

    #[test]
    fn new_radial_has_two_families() {
        let s = new_radial(rat(9, 10));
        let set = feasible_barcodes(&s, &circle_ranks()).unwrap();
        assert_eq!(set.len(), 2);
        let mut lengths: Vec<PiQ> = set.iter().map(boundary_depth).collect();
        lengths.sort();
        assert_eq!(lengths, vec![q(9, 40), q(11, 40)]);
        assert_eq!(forced_bar_bound(&s, &circle_ranks()).unwrap(), q(9, 40));
        assert_eq!(forced_bar_bound(&new_radial(rat(1, 2)), &circle_ranks()).unwrap(), q(1, 8));
    }

    #[test]
    fn forced_spectrum_is_all_infinite() {
        let s = GeneratorSpectrum {
            n_l: 2,
            a_l: q(1, 2),
            entries: vec![
                SpectrumEntry { degree: 0, action: q(0, 1), source: Source::Generator { id: "a".into() }, recap: 0 },
                SpectrumEntry { degree: 1, action: q(1, 8), source: Source::Generator { id: "b".into() }, recap: 0 },
            ],
        };
        let set = feasible_barcodes(&s, &circle_ranks()).unwrap();
        assert_eq!(set.len(), 1);
        assert!(set.iter().next().unwrap().bars().iter().all(|b| b.is_infinite()));
        assert_eq!(forced_bar_bound(&s, &circle_ranks()).unwrap(), PiQ::zero());
    }

    #[test]
    fn infeasible_ranks() {
        let s = new_radial(rat(9, 10));
        let ranks = BTreeMap::from([(0, 1), (1, 0)]);
        assert!(matches!(feasible_barcodes(&s, &ranks), Err(RadialError::Infeasible(_))));
        assert!(matches!(forced_bar_bound(&s, &ranks), Err(RadialError::Infeasible(_))));
    }

    #[test]
    fn recapping_one_source_keeps_the_bound() {
        let s = new_radial(rat(3, 5));
        let base = forced_bar_bound(&s, &circle_ranks()).unwrap();
        for i in 0..s.entries.len() {
            let mut t = s.clone();
            t.entries[i].degree += 2;
            t.entries[i].action = &t.entries[i].action + &q(1, 2);
            assert_eq!(forced_bar_bound(&t, &circle_ranks()).unwrap(), base);
        }
        assert_eq!(forced_bar_bound(&s.recap_all(-3), &circle_ranks()).unwrap(), base);
    }
}
