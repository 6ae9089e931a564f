use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::CombError;
use crate::novikov::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Surface {
    Sphere,
    Annulus,
}

impl Surface {
    pub fn euler_characteristic(self) -> i64 {
        match self {
            Surface::Sphere => 2,
            Surface::Annulus => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Curve {
    K,
    L,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    #[serde(rename = "+")]
    Forward,
    #[serde(rename = "-")]
    Backward,
}

/// A boundary arc of a face, walked from `from` to `to` along `curve`,
/// either with (`+`) or against (`-`) the curve's orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub curve: Curve,
    pub from: u32,
    pub to: u32,
    pub dir: Dir,
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.dir {
            Dir::Forward => '+',
            Dir::Backward => '-',
        };
        write!(f, "{:?}({}->{},{})", self.curve, self.from, self.to, d)
    }
}

/// A face given by its boundary walk, keeping the face on the left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub name: String,
    pub walk: Vec<Arc>,
}

/// Two oriented embedded closed curves K, L meeting transversally at the
/// labelled points; each order lists the points in the order the curve meets them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCurveDiagram {
    pub surface: Surface,
    pub points: Vec<u32>,
    pub order_k: Vec<u32>,
    pub order_l: Vec<u32>,
    pub faces: Vec<Face>,
    pub areas: BTreeMap<String, Rational>,
    /// Faces containing a boundary circle (annulus only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub holes: Vec<String>,
}

/// Validated combinatorics: edges, their adjacent faces and the corners at each point.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub surface: Surface,
    pub labels: Vec<u32>,
    /// Edges 0..m lie on K (edge i runs order_k[i] → order_k[i+1]); m..2m on L.
    pub edge_ends: Vec<(usize, usize)>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// pos_k[p] = index of point p in order_k, likewise pos_l.
    pub pos_k: Vec<usize>,
    pub pos_l: Vec<usize>,
    /// The four faces around each point (one per quadrant).
    pub corners: Vec<Vec<usize>>,
    pub face_names: Vec<String>,
    pub areas: Vec<Rational>,
    pub has_hole: Vec<bool>,
    /// Euler measure of each face: χ(face) − (#corners)/4.
    pub euler: Vec<Rational>,
}

impl Compiled {
    pub fn m(&self) -> usize {
        self.labels.len()
    }

    pub fn n_faces(&self) -> usize {
        self.face_names.len()
    }

    pub fn k_edge(&self, i: usize) -> usize {
        i
    }

    pub fn l_edge(&self, i: usize) -> usize {
        self.m() + i
    }

    pub fn hole_faces(&self) -> Vec<usize> {
        (0..self.n_faces()).filter(|&f| self.has_hole[f]).collect()
    }

    pub fn total_area(&self) -> Rational {
        self.areas.iter().sum()
    }
}

impl TwoCurveDiagram {
    /// Checks all combinatorial invariants and bisection (sphere).
    pub fn validate(&self) -> Result<Compiled, CombError> {
        let compiled = self.compile()?;
        if self.surface == Surface::Sphere {
            for curve in [Curve::K, Curve::L] {
                self.check_bisection(&compiled, curve)?;
            }
        }
        Ok(compiled)
    }

    fn compile(&self) -> Result<Compiled, CombError> {
        let bad = |msg: String| Err(CombError::Malformed(msg));
        let m = self.points.len();
        if m == 0 {
            return bad("no intersection points".into());
        }
        let mut index: HashMap<u32, usize> = HashMap::new();
        for (i, &p) in self.points.iter().enumerate() {
            if index.insert(p, i).is_some() {
                return bad(format!("point {p} listed twice"));
            }
        }
        let positions = |order: &[u32], name: &str| -> Result<Vec<usize>, CombError> {
            let mut pos = vec![usize::MAX; m];
            if order.len() != m {
                return Err(CombError::Malformed(format!("{name} must list each point once")));
            }
            for (k, p) in order.iter().enumerate() {
                let &i = index
                    .get(p)
                    .ok_or_else(|| CombError::Malformed(format!("{name}: unknown point {p}")))?;
                if pos[i] != usize::MAX {
                    return Err(CombError::Malformed(format!("{name}: point {p} repeated")));
                }
                pos[i] = k;
            }
            Ok(pos)
        };
        let pos_k = positions(&self.order_k, "order_k")?;
        let pos_l = positions(&self.order_l, "order_l")?;

        let mut edge_ends = Vec::with_capacity(2 * m);
        for order in [&self.order_k, &self.order_l] {
            for k in 0..m {
                edge_ends.push((index[&order[k]], index[&order[(k + 1) % m]]));
            }
        }

        let mut face_index: HashMap<&str, usize> = HashMap::new();
        for (f, face) in self.faces.iter().enumerate() {
            if face_index.insert(face.name.as_str(), f).is_some() {
                return bad(format!("face {} listed twice", face.name));
            }
        }
        let nf = self.faces.len();
        let mut left = vec![usize::MAX; 2 * m];
        let mut right = vec![usize::MAX; 2 * m];
        let mut corners: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut corner_count = vec![0usize; nf];
        for (f, face) in self.faces.iter().enumerate() {
            let w = &face.walk;
            if w.len() < 2 || w.len() % 2 != 0 {
                return bad(format!("face {}: walk must have an even number >= 2 of arcs", face.name));
            }
            for (k, arc) in w.iter().enumerate() {
                let next = &w[(k + 1) % w.len()];
                if arc.curve == next.curve {
                    return bad(format!("face {}: arcs must alternate between K and L", face.name));
                }
                if arc.to != next.from {
                    return bad(format!("face {}: walk breaks after {arc}", face.name));
                }
                let (&a, &b) = match (index.get(&arc.from), index.get(&arc.to)) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return bad(format!("face {}: {arc} uses an unknown point", face.name)),
                };
                let (pos, base) = match arc.curve {
                    Curve::K => (&pos_k, 0),
                    Curve::L => (&pos_l, m),
                };
                let (start, end) = match arc.dir {
                    Dir::Forward => (a, b),
                    Dir::Backward => (b, a),
                };
                let e = base + pos[start];
                if edge_ends[e].1 != end {
                    return bad(format!("face {}: {arc} is not an edge of {:?}", face.name, arc.curve));
                }
                let side = match arc.dir {
                    Dir::Forward => &mut left,
                    Dir::Backward => &mut right,
                };
                if side[e] != usize::MAX {
                    return Err(CombError::Incidence(format!(
                        "edge {arc} bounds faces on the same side twice"
                    )));
                }
                side[e] = f;
                corners[b].push(f);
                corner_count[f] += 1;
            }
        }
        for e in 0..2 * m {
            if left[e] == usize::MAX || right[e] == usize::MAX {
                let (a, b) = edge_ends[e];
                return Err(CombError::Incidence(format!(
                    "edge {}→{} of {} is not bounded on both sides",
                    self.points[a],
                    self.points[b],
                    if e < m { "K" } else { "L" }
                )));
            }
        }
        for (i, c) in corners.iter().enumerate() {
            if c.len() != 4 {
                return Err(CombError::Incidence(format!(
                    "point {} has {} corners, expected 4",
                    self.points[i],
                    c.len()
                )));
            }
        }

        let mut has_hole = vec![false; nf];
        let mut seen = HashSet::new();
        for h in &self.holes {
            let &f = face_index
                .get(h.as_str())
                .ok_or_else(|| CombError::Malformed(format!("hole in unknown face {h}")))?;
            if !seen.insert(f) {
                return bad(format!("face {h} holds two holes"));
            }
            has_hole[f] = true;
        }
        let expected_holes = match self.surface {
            Surface::Sphere => 0,
            Surface::Annulus => 2,
        };
        if self.holes.len() != expected_holes {
            return bad(format!(
                "{:?} needs {expected_holes} hole faces, got {}",
                self.surface,
                self.holes.len()
            ));
        }
        let euler_count = m as i64 - 2 * m as i64 + nf as i64 - self.holes.len() as i64;
        if euler_count != self.surface.euler_characteristic() {
            return Err(CombError::Euler {
                found: euler_count,
                expected: self.surface.euler_characteristic(),
            });
        }

        let mut areas = Vec::with_capacity(nf);
        for face in &self.faces {
            let a = self
                .areas
                .get(&face.name)
                .ok_or_else(|| CombError::Malformed(format!("face {} has no area", face.name)))?;
            if !a.is_positive() {
                return bad(format!("face {} has non-positive area {a}", face.name));
            }
            areas.push(a.clone());
        }
        if self.areas.len() != nf {
            return bad("areas given for unknown faces".into());
        }
        let euler = (0..nf)
            .map(|f| {
                let chi = if has_hole[f] { 0 } else { 1 };
                Rational::from_integer(chi) - rat(corner_count[f] as i64, 4)
            })
            .collect();

        Ok(Compiled {
            surface: self.surface,
            labels: self.points.clone(),
            edge_ends,
            left,
            right,
            pos_k,
            pos_l,
            corners,
            face_names: self.faces.iter().map(|f| f.name.clone()).collect(),
            areas,
            has_hole,
            euler,
        })
    }

    /// The faces on either side of `curve` must each have area 1/2.
    fn check_bisection(&self, c: &Compiled, curve: Curve) -> Result<(), CombError> {
        let sides = sides_of(c, curve);
        let mut totals: BTreeMap<usize, Rational> = BTreeMap::new();
        for (f, &s) in sides.iter().enumerate() {
            *totals.entry(s).or_default() += &c.areas[f];
        }
        let half = rat(1, 2);
        if totals.len() != 2 || totals.values().any(|t| *t != half) {
            let found: Vec<String> = totals.values().map(|t| t.to_string()).collect();
            return Err(CombError::Bisection {
                curve: format!("{curve:?}"),
                sides: found.join(" | "),
            });
        }
        Ok(())
    }
}

/// Component label of each face after cutting along `curve` only.
pub fn sides_of(c: &Compiled, curve: Curve) -> Vec<usize> {
    let m = c.m();
    let other: Vec<usize> = match curve {
        Curve::K => (m..2 * m).collect(),
        Curve::L => (0..m).collect(),
    };
    let n = c.n_faces();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for e in other {
        let (a, b) = (find(&mut parent, c.left[e]), find(&mut parent, c.right[e]));
        if a != b {
            parent[a] = b;
        }
    }
    (0..n).map(|f| find(&mut parent, f)).collect()
}

fn arc(curve: Curve, from: u32, to: u32, dir: Dir) -> Arc {
    Arc { curve, from, to, dir }
}

fn face(name: &str, walk: Vec<Arc>) -> Face {
    Face {
        name: name.to_string(),
        walk,
    }
}

/// The four-point sphere diagram whose second curve meets the equator in the
/// order (1,4,3,2); faces A1..A6 take the given areas.
pub fn four_point_sphere(areas: [Rational; 6]) -> TwoCurveDiagram {
    use Curve::{K, L};
    use Dir::{Backward as B, Forward as F};
    let faces = vec![
        face("A1", vec![arc(K, 4, 1, F), arc(L, 1, 4, F)]),
        face(
            "A2",
            vec![arc(K, 1, 2, F), arc(L, 2, 3, B), arc(K, 3, 4, F), arc(L, 4, 1, B)],
        ),
        face("A3", vec![arc(K, 2, 3, F), arc(L, 3, 2, F)]),
        face(
            "A4",
            vec![arc(K, 3, 2, B), arc(L, 2, 1, F), arc(K, 1, 4, B), arc(L, 4, 3, F)],
        ),
        face("A5", vec![arc(K, 2, 1, B), arc(L, 1, 2, B)]),
        face("A6", vec![arc(K, 4, 3, B), arc(L, 3, 4, B)]),
    ];
    let areas = faces
        .iter()
        .zip(areas)
        .map(|(f, a)| (f.name.clone(), a))
        .collect();
    TwoCurveDiagram {
        surface: Surface::Sphere,
        points: vec![1, 2, 3, 4],
        order_k: vec![1, 2, 3, 4],
        order_l: vec![1, 4, 3, 2],
        faces,
        areas,
        holes: Vec::new(),
    }
}

/// Symmetric areas |A1| = |A3| = |A5| = |A6| = 1/4 − ε, |A2| = |A4| = 2ε.
pub fn four_point_sphere_eps(eps: &Rational) -> TwoCurveDiagram {
    let big = rat(1, 4) - eps;
    let small = eps.mul_int(2);
    four_point_sphere([
        big.clone(),
        small.clone(),
        big.clone(),
        small,
        big.clone(),
        big,
    ])
}

/// The same curves on the annulus obtained by puncturing A1 and A5.
pub fn four_point_annulus(areas: [Rational; 6]) -> TwoCurveDiagram {
    let mut d = four_point_sphere(areas);
    d.surface = Surface::Annulus;
    d.holes = vec!["A1".to_string(), "A5".to_string()];
    d
}

/// Annulus areas |A3| = |A6| = 1/2 − 2ε, all others ε.
pub fn four_point_annulus_eps(eps: &Rational) -> TwoCurveDiagram {
    let big = rat(1, 2) - eps.mul_int(2);
    four_point_annulus([
        eps.clone(),
        eps.clone(),
        big.clone(),
        eps.clone(),
        eps.clone(),
        big,
    ])
}

/// Two great circles meeting at points 1 and 2, four quarter-area faces.
pub fn two_point_sphere() -> TwoCurveDiagram {
    use Curve::{K, L};
    use Dir::{Backward as B, Forward as F};
    let faces = vec![
        face("F1", vec![arc(K, 1, 2, F), arc(L, 2, 1, B)]),
        face("F2", vec![arc(K, 2, 1, F), arc(L, 1, 2, F)]),
        face("F3", vec![arc(K, 2, 1, B), arc(L, 1, 2, B)]),
        face("F4", vec![arc(K, 1, 2, B), arc(L, 2, 1, F)]),
    ];
    let areas = faces.iter().map(|f| (f.name.clone(), rat(1, 4))).collect();
    TwoCurveDiagram {
        surface: Surface::Sphere,
        points: vec![1, 2],
        order_k: vec![1, 2],
        order_l: vec![1, 2],
        faces,
        areas,
        holes: Vec::new(),
    }
}
