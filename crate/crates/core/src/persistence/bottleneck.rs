use std::collections::BTreeSet;

use super::bar::{shift_barcode, Bar, Barcode};
use super::matching::BipartiteGraph;
use super::value::{Extended, Filtration};

/// The δ-thickening (c−δ, d+δ] of a bar (c, d].
fn thicken<F: Filtration>(bar: &Bar<F>, delta: &F) -> (F, Extended<F>) {
    let right = match &bar.right {
        Extended::Finite(r) => Extended::Finite(r.plus(delta)),
        Extended::Infinite => Extended::Infinite,
    };
    (bar.left.minus(delta), right)
}

/// Whether the half-open interval of `inner` lies inside `outer = (lo, hi]`.
fn contained<F: Filtration>(inner: &Bar<F>, outer: &(F, Extended<F>)) -> bool {
    outer.0 <= inner.left && inner.right <= outer.1
}

/// I ⊂ J^δ and J ⊂ I^δ.
pub(crate) fn interleaved<F: Filtration>(a: &Bar<F>, b: &Bar<F>, delta: &F) -> bool {
    a.is_infinite() == b.is_infinite()
        && contained(a, &thicken(b, delta))
        && contained(b, &thicken(a, delta))
}

/// A bar may be left unmatched once its length is at most 2δ.
fn deletable<F: Filtration>(bar: &Bar<F>, delta: &F) -> bool {
    match bar.length() {
        Extended::Finite(len) => len <= delta.plus(delta),
        Extended::Infinite => false,
    }
}

struct Instance<F> {
    p: Vec<Bar<F>>,
    q: Vec<Bar<F>>,
    degree_sensitive: bool,
}

impl<F: Filtration> Instance<F> {
    fn new(b1: &Barcode<F>, b2: &Barcode<F>, degree_sensitive: bool) -> Self {
        Instance {
            p: b1.copies(),
            q: b2.copies(),
            degree_sensitive,
        }
    }

    fn comparable(&self, a: &Bar<F>, b: &Bar<F>) -> bool {
        (!self.degree_sensitive || a.degree == b.degree) && a.is_infinite() == b.is_infinite()
    }

    fn infinite_counts_agree(&self) -> bool {
        let key = |b: &Bar<F>| if self.degree_sensitive { b.degree } else { 0 };
        let count = |bars: &[Bar<F>]| {
            let mut v: Vec<i64> = bars.iter().filter(|b| b.is_infinite()).map(key).collect();
            v.sort_unstable();
            v
        };
        count(&self.p) == count(&self.q)
    }

    /// Decides δ-matchability by a perfect matching on
    /// (P ∪ diag Q) × (Q ∪ diag P).
    fn feasible(&self, delta: &F) -> bool {
        let (n1, n2) = (self.p.len(), self.q.len());
        let mut g = BipartiteGraph::new(n1 + n2, n1 + n2);
        for (i, a) in self.p.iter().enumerate() {
            for (j, b) in self.q.iter().enumerate() {
                if self.comparable(a, b) && interleaved(a, b, delta) {
                    g.add_edge(i, j);
                }
            }
            if deletable(a, delta) {
                g.add_edge(i, n2 + i);
            }
        }
        for (j, b) in self.q.iter().enumerate() {
            if deletable(b, delta) {
                g.add_edge(n1 + j, j);
            }
            for i in 0..n1 {
                g.add_edge(n1 + j, n2 + i);
            }
        }
        g.has_perfect_matching()
    }

    fn candidates(&self) -> Vec<F> {
        let mut c: BTreeSet<F> = BTreeSet::new();
        c.insert(F::zero());
        for a in self.p.iter().chain(&self.q) {
            if let Extended::Finite(len) = a.length() {
                c.insert(len.halve());
            }
        }
        for a in &self.p {
            for b in &self.q {
                if self.comparable(a, b) {
                    c.insert(a.left.abs_diff(&b.left));
                    if let (Extended::Finite(x), Extended::Finite(y)) = (&a.right, &b.right) {
                        c.insert(x.abs_diff(y));
                    }
                }
            }
        }
        c.into_iter().collect()
    }

    fn solve(&self) -> Extended<F> {
        if !self.infinite_counts_agree() {
            return Extended::Infinite;
        }
        let cands = self.candidates();
        let (mut lo, mut hi) = (0usize, cands.len() - 1);
        debug_assert!(self.feasible(&cands[hi]));
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.feasible(&cands[mid]) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Extended::Finite(cands[lo].clone())
    }
}

/// Minimal δ admitting a δ-matching; infinite when the infinite bars cannot be paired.
pub fn bottleneck_distance<F: Filtration>(
    b1: &Barcode<F>,
    b2: &Barcode<F>,
    degree_sensitive: bool,
) -> Extended<F> {
    Instance::new(b1, b2, degree_sensitive).solve()
}

/// Whether a δ-matching exists for the given δ.
pub fn is_delta_matchable<F: Filtration>(
    b1: &Barcode<F>,
    b2: &Barcode<F>,
    delta: &F,
    degree_sensitive: bool,
) -> bool {
    let inst = Instance::new(b1, b2, degree_sensitive);
    inst.infinite_counts_agree() && inst.feasible(delta)
}

/// Interleaving distance of the graded persistence modules, realized through
/// the isometry with the degree-sensitive bottleneck distance.
pub fn interleaving_distance<F: Filtration>(b1: &Barcode<F>, b2: &Barcode<F>) -> Extended<F> {
    bottleneck_distance(b1, b2, true)
}

/// (d′, c*) with d′ = min over c of d(b1, b2[c]), attained at c*.
///
/// For a fixed matching the cost of shift c is a max of |c − u| terms
/// (u an endpoint difference x₂ − x₁) and constant half-lengths, so the
/// optimum lies in {0, half-lengths, |u − v|/2}, and for a feasible δ some
/// shift of the form u ± δ is feasible.
pub fn shifted_bottleneck<F: Filtration>(
    b1: &Barcode<F>,
    b2: &Barcode<F>,
) -> (Extended<F>, Option<F>) {
    shifted_bottleneck_with(b1, b2, true)
}

pub fn shifted_bottleneck_with<F: Filtration>(
    b1: &Barcode<F>,
    b2: &Barcode<F>,
    degree_sensitive: bool,
) -> (Extended<F>, Option<F>) {
    let base = Instance::new(b1, b2, degree_sensitive);
    if !base.infinite_counts_agree() {
        return (Extended::Infinite, None);
    }
    let mut us: BTreeSet<F> = BTreeSet::new();
    for a in &base.p {
        for b in &base.q {
            if base.comparable(a, b) {
                us.insert(b.left.minus(&a.left));
                if let (Extended::Finite(x), Extended::Finite(y)) = (&a.right, &b.right) {
                    us.insert(y.minus(x));
                }
            }
        }
    }
    let us: Vec<F> = us.into_iter().collect();
    let mut deltas: BTreeSet<F> = BTreeSet::new();
    deltas.insert(F::zero());
    for a in base.p.iter().chain(&base.q) {
        if let Extended::Finite(len) = a.length() {
            deltas.insert(len.halve());
        }
    }
    for (i, u) in us.iter().enumerate() {
        for v in &us[i + 1..] {
            deltas.insert(v.minus(u).halve());
        }
    }
    let deltas: Vec<F> = deltas.into_iter().collect();

    let witness = |delta: &F| -> Option<F> {
        let mut shifts: BTreeSet<F> = BTreeSet::new();
        for u in &us {
            shifts.insert(u.minus(delta));
            shifts.insert(u.plus(delta));
        }
        if shifts.is_empty() {
            shifts.insert(F::zero());
        }
        shifts.into_iter().find(|c| {
            let moved = shift_barcode(b2, c);
            Instance::new(b1, &moved, degree_sensitive).feasible(delta)
        })
    };

    let (mut lo, mut hi) = (0usize, deltas.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if witness(&deltas[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let best = witness(&deltas[lo]);
    debug_assert!(best.is_some());
    (Extended::Finite(deltas[lo].clone()), best)
}
