use std::collections::{BTreeMap, BTreeSet};

use super::feasible::feasible_barcodes_limited;
use super::piq::PiQ;
use super::profile::{LagrangianParams, RadialProfile};
use super::spectrum::generators;
use super::RadialError;
use crate::novikov::Rational;
use crate::persistence::{is_delta_matchable, Barcode};

/// Feasible barcodes retained at each sample of a family of profiles.
///
/// The first sample keeps its whole feasible set; each later sample keeps
/// the barcodes within C·sup|f_t − f_{t−1}| (bottleneck, per degree) of a
/// barcode retained at the previous sample.
pub fn homotopy_filter(
    profiles: &[RadialProfile],
    lp: &LagrangianParams,
    ranks: &BTreeMap<i64, usize>,
    c: &Rational,
    search_limit: usize,
) -> Result<Vec<BTreeSet<Barcode<PiQ>>>, RadialError> {
    if c < &Rational::one() {
        return Err(RadialError::Params(format!("continuity constant {c} < 1")));
    }
    let mut out: Vec<BTreeSet<Barcode<PiQ>>> = Vec::with_capacity(profiles.len());
    for (t, p) in profiles.iter().enumerate() {
        let spectrum = generators(p, lp, (0, 0))?;
        let set = feasible_barcodes_limited(&spectrum, ranks, search_limit)?;
        let kept = match out.last() {
            None => set,
            Some(prev) => {
                let delta = profiles[t - 1].sup_distance(p).scale(c);
                near_any(prev, set, &delta, lp.n_l)
            }
        };
        if kept.is_empty() {
            return Err(RadialError::EmptyPruned { sample: t });
        }
        out.push(kept);
    }
    Ok(out)
}

/// Barcodes of `candidates` within δ of some barcode of `prev`.
///
/// The degree-sensitive distance is the maximum over degrees, and feasible
/// sets repeat the same per-degree pieces many times, so the pieces are
/// compared once and each candidate intersects one bitset per degree.
fn near_any(
    prev: &BTreeSet<Barcode<PiQ>>,
    candidates: BTreeSet<Barcode<PiQ>>,
    delta: &PiQ,
    n_l: i64,
) -> BTreeSet<Barcode<PiQ>> {
    let words = prev.len().div_ceil(64);
    let mut tables: Vec<BTreeMap<Barcode<PiQ>, Vec<u64>>> = Vec::new();
    for d in 0..n_l {
        let mut pieces: BTreeMap<Barcode<PiQ>, Vec<usize>> = BTreeMap::new();
        for (i, a) in prev.iter().enumerate() {
            pieces.entry(a.in_degree(d)).or_default().push(i);
        }
        let mut table = BTreeMap::new();
        for b in candidates.iter().map(|b| b.in_degree(d)) {
            if table.contains_key(&b) {
                continue;
            }
            let mut bits = vec![0u64; words];
            for (piece, members) in &pieces {
                if is_delta_matchable(piece, &b, delta, true) {
                    for &i in members {
                        bits[i / 64] |= 1 << (i % 64);
                    }
                }
            }
            table.insert(b, bits);
        }
        tables.push(table);
    }
    candidates
        .into_iter()
        .filter(|b| {
            let rows: Vec<&Vec<u64>> = (0..n_l).map(|d| &tables[d as usize][&b.in_degree(d)]).collect();
            (0..words).any(|w| rows.iter().fold(u64::MAX, |acc, r| acc & r[w]) != 0)
        })
        .collect()
}
