//! Exhaustive matcher used to cross-check the matching-based metrics on small inputs.

use super::bar::{Bar, Barcode};
use super::value::{Extended, Filtration};

fn pair_cost<F: Filtration>(a: &Bar<F>, b: &Bar<F>, degree_sensitive: bool) -> Extended<F> {
    if (degree_sensitive && a.degree != b.degree) || a.is_infinite() != b.is_infinite() {
        return Extended::Infinite;
    }
    let l = a.left.abs_diff(&b.left);
    match (&a.right, &b.right) {
        (Extended::Finite(x), Extended::Finite(y)) => Extended::Finite(l.max(x.abs_diff(y))),
        _ => Extended::Finite(l),
    }
}

fn delete_cost<F: Filtration>(a: &Bar<F>) -> Extended<F> {
    match a.length() {
        Extended::Finite(len) => Extended::Finite(len.halve()),
        Extended::Infinite => Extended::Infinite,
    }
}

/// Minimum over every partial matching of the sup-norm cost, by enumeration.
/// Exponential; intended for barcodes with a handful of bars.
pub fn brute_force_bottleneck<F: Filtration>(
    b1: &Barcode<F>,
    b2: &Barcode<F>,
    degree_sensitive: bool,
) -> Extended<F> {
    let p = b1.copies();
    let q = b2.copies();
    let mut used = vec![false; q.len()];
    let mut best = Extended::Infinite;
    recurse(&p, &q, 0, &mut used, Extended::Finite(F::zero()), &mut best, degree_sensitive);
    best
}

fn recurse<F: Filtration>(
    p: &[Bar<F>],
    q: &[Bar<F>],
    i: usize,
    used: &mut Vec<bool>,
    acc: Extended<F>,
    best: &mut Extended<F>,
    degree_sensitive: bool,
) {
    if i == p.len() {
        let mut total = acc;
        for (j, b) in q.iter().enumerate() {
            if !used[j] {
                total = total.max(delete_cost(b));
            }
        }
        if total < *best {
            *best = total;
        }
        return;
    }
    let skip = acc.clone().max(delete_cost(&p[i]));
    recurse(p, q, i + 1, used, skip, best, degree_sensitive);
    for j in 0..q.len() {
        if !used[j] {
            used[j] = true;
            let with = acc.clone().max(pair_cost(&p[i], &q[j], degree_sensitive));
            recurse(p, q, i + 1, used, with, best, degree_sensitive);
            used[j] = false;
        }
    }
}
