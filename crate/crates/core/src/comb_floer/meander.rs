//! Random admissible sphere diagrams: K is the equator, L a second simple
//! closed curve assembled from non-crossing arcs inside and outside K
//! (a meander), with face areas making both curves bisect the sphere.

use rand::seq::SliceRandom;
use rand::Rng;

use super::diagram::{four_point_sphere, Arc, Curve, Dir, Face, Surface, TwoCurveDiagram};
use crate::novikov::{rat, Rational};

const AREA_DENOM: i64 = 1000;

/// A random non-crossing perfect matching of 0..2n on a circle.
fn random_matching<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    fn fill<R: Rng>(rng: &mut R, pts: &[usize], out: &mut [usize]) {
        if pts.is_empty() {
            return;
        }
        let k = 2 * rng.gen_range(0..pts.len() / 2) + 1;
        out[pts[0]] = pts[k];
        out[pts[k]] = pts[0];
        fill(rng, &pts[1..k], out);
        fill(rng, &pts[k + 1..], out);
    }
    let pts: Vec<usize> = (0..2 * n).collect();
    let mut out = vec![0; 2 * n];
    fill(rng, &pts, &mut out);
    out
}

/// Order of L through the points, starting at 0 along its inside arc, or
/// None when the two matchings close up into more than one circle.
fn meander_order(inside: &[usize], outside: &[usize]) -> Option<Vec<usize>> {
    let mut order = vec![0usize];
    let mut p = 0;
    let mut use_inside = true;
    loop {
        p = if use_inside { inside[p] } else { outside[p] };
        use_inside = !use_inside;
        if p == 0 {
            break;
        }
        order.push(p);
    }
    (order.len() == inside.len()).then_some(order)
}

/// Slots of the four darts at a point, in counterclockwise order.
const FWD: usize = 0;
const IN: usize = 1;
const BWD: usize = 2;
const OUT: usize = 3;

struct Meander {
    size: usize,
    inside: Vec<usize>,
    outside: Vec<usize>,
    /// Position of each point along L.
    pos_l: Vec<usize>,
    order_l: Vec<usize>,
}

impl Meander {
    fn target(&self, p: usize, slot: usize) -> usize {
        let m = self.size;
        match slot {
            FWD => (p + 1) % m,
            BWD => (p + m - 1) % m,
            IN => self.inside[p],
            OUT => self.outside[p],
            _ => unreachable!("four darts per point"),
        }
    }

    /// Whether the L edge leaving p (in L's orientation) is its inside arc.
    fn l_leaves_inside(&self, p: usize) -> bool {
        self.pos_l[p].is_multiple_of(2)
    }

    /// Slot at the far end that points back along the same edge.
    fn reverse(&self, p: usize, slot: usize) -> (usize, usize) {
        let q = self.target(p, slot);
        let back = match slot {
            FWD => BWD,
            BWD => FWD,
            s => s,
        };
        (q, back)
    }

    fn arc(&self, p: usize, slot: usize) -> Arc {
        let q = self.target(p, slot);
        let (from, to) = (p as u32 + 1, q as u32 + 1);
        let (curve, dir) = match slot {
            FWD => (Curve::K, Dir::Forward),
            BWD => (Curve::K, Dir::Backward),
            IN => (Curve::L, if self.l_leaves_inside(p) { Dir::Forward } else { Dir::Backward }),
            _ => (Curve::L, if self.l_leaves_inside(p) { Dir::Backward } else { Dir::Forward }),
        };
        Arc { curve, from, to, dir }
    }

    /// Faces as dart cycles with the face on the left: after arriving at a
    /// point, leave along the dart just clockwise of the reversed one.
    fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let m = self.size;
        let mut seen = vec![[false; 4]; m];
        let mut out = Vec::new();
        for p in 0..m {
            for s in 0..4 {
                if seen[p][s] {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut u, mut t) = (p, s);
                while !seen[u][t] {
                    seen[u][t] = true;
                    walk.push((u, t));
                    let (v, back) = self.reverse(u, t);
                    u = v;
                    t = (back + 3) % 4;
                }
                out.push(walk);
            }
        }
        out
    }
}

/// Region class of a face: (inside K, left of L).
fn classify(mea: &Meander, walk: &[(usize, usize)]) -> (bool, bool) {
    let mut in_k = None;
    let mut left_l = None;
    for &(p, s) in walk {
        let a = mea.arc(p, s);
        let fwd = a.dir == Dir::Forward;
        match a.curve {
            Curve::K => in_k = Some(fwd),
            Curve::L => left_l = Some(fwd),
        }
    }
    (in_k.expect("walk meets K"), left_l.expect("walk meets L"))
}

/// Splits `total` into `k` positive rationals with random proportions.
fn split<R: Rng>(rng: &mut R, total: &Rational, k: usize, skew: u32) -> Vec<Rational> {
    let weights: Vec<i64> = (0..k)
        .map(|_| {
            let w: i64 = rng.gen_range(1..=AREA_DENOM);
            if skew > 0 && rng.gen_bool(0.5) {
                w.pow(skew).max(1)
            } else {
                w
            }
        })
        .collect();
    let sum: i64 = weights.iter().sum();
    weights
        .iter()
        .map(|&w| total * &rat(w, sum))
        .collect()
}

/// A random admissible sphere diagram with 2n intersection points.
///
/// Faces fall into four classes by side of K and side of L; the classes
/// (inside, left) and (outside, right) share the total a, the other two the
/// total 1/2 − a, which makes both curves bisect the unit-area sphere.
pub fn random_sphere_diagram<R: Rng>(rng: &mut R, n: usize) -> TwoCurveDiagram {
    assert!(n >= 1, "need at least two intersection points");
    let mea = loop {
        let inside = random_matching(rng, n);
        let outside = random_matching(rng, n);
        if let Some(order_l) = meander_order(&inside, &outside) {
            let mut pos_l = vec![0; 2 * n];
            for (i, &p) in order_l.iter().enumerate() {
                pos_l[p] = i;
            }
            break Meander {
                size: 2 * n,
                inside,
                outside,
                pos_l,
                order_l,
            };
        }
    };
    let walks = mea.faces();
    let a = rat(rng.gen_range(1..AREA_DENOM), 2 * AREA_DENOM);
    let b = rat(1, 2) - &a;
    let skew = rng.gen_range(0..3);
    let mut classes: [Vec<usize>; 4] = Default::default();
    for (f, w) in walks.iter().enumerate() {
        let (ik, ll) = classify(&mea, w);
        classes[2 * ik as usize + ll as usize].push(f);
    }
    let mut areas = vec![Rational::zero(); walks.len()];
    for (cls, faces) in classes.iter().enumerate() {
        let total = if cls == 0 || cls == 3 { &a } else { &b };
        for (f, area) in faces.iter().zip(split(rng, total, faces.len(), skew)) {
            areas[*f] = area;
        }
    }
    let faces: Vec<Face> = walks
        .iter()
        .enumerate()
        .map(|(i, w)| Face {
            name: format!("F{}", i + 1),
            walk: w.iter().map(|&(p, s)| mea.arc(p, s)).collect(),
        })
        .collect();
    let mut d = TwoCurveDiagram {
        surface: Surface::Sphere,
        points: (1..=2 * n as u32).collect(),
        order_k: (1..=2 * n as u32).collect(),
        order_l: mea.order_l.iter().map(|&p| p as u32 + 1).collect(),
        areas: faces.iter().map(|f| f.name.clone()).zip(areas).collect(),
        faces,
        holes: Vec::new(),
    };
    d.faces.shuffle(rng);
    d
}

/// A random admissible area assignment on the four-point diagram:
/// |A1| + |A3| = |A5| + |A6| = s and |A2| = |A4| = 1/2 − s.
pub fn random_four_point_areas<R: Rng>(rng: &mut R) -> [Rational; 6] {
    let s = rat(rng.gen_range(2..AREA_DENOM), 2 * AREA_DENOM);
    let t = rat(rng.gen_range(1..AREA_DENOM), AREA_DENOM);
    let u = rat(rng.gen_range(1..AREA_DENOM), AREA_DENOM);
    let one = Rational::one();
    let rest = rat(1, 2) - &s;
    [
        &s * &t,
        rest.clone(),
        &s * &(&one - &t),
        rest,
        &s * &u,
        &s * &(&one - &u),
    ]
}

pub fn random_four_point_sphere<R: Rng>(rng: &mut R) -> TwoCurveDiagram {
    four_point_sphere(random_four_point_areas(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_diagrams_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=5 {
            for _ in 0..20 {
                let d = random_sphere_diagram(&mut rng, n);
                let c = d.validate().unwrap();
                assert_eq!(c.n_faces(), 2 * n + 2);
            }
        }
        for _ in 0..20 {
            random_four_point_sphere(&mut rng).validate().unwrap();
        }
    }

    #[test]
    fn two_point_meander_is_the_symmetric_diagram() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = random_sphere_diagram(&mut rng, 1);
        assert_eq!(d.faces.len(), 4);
        assert_eq!(d.order_l, vec![1, 2]);
    }
}
