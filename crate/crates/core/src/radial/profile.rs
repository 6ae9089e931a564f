use serde::{Deserialize, Serialize};

use super::piq::PiQ;
use super::RadialError;
use crate::novikov::{rat, Rational};

/// Dimension, minimal Maslov number and minimal disk area of the Lagrangian.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagrangianParams {
    pub n: i64,
    #[serde(rename = "N_L")]
    pub n_l: i64,
    #[serde(rename = "A_L")]
    pub a_l: PiQ,
}

impl LagrangianParams {
    pub fn new(n: i64, n_l: i64, a_l: PiQ) -> Self {
        LagrangianParams { n, n_l, a_l }
    }

    pub fn check(&self) -> Result<(), RadialError> {
        if self.n < 1 {
            return Err(RadialError::Params(format!("dimension {} < 1", self.n)));
        }
        if self.n_l < 2 {
            return Err(RadialError::Params(format!("N_L = {} < 2", self.n_l)));
        }
        if self.a_l <= PiQ::zero() {
            return Err(RadialError::Params(format!("A_L = {} is not positive", self.a_l)));
        }
        Ok(())
    }
}

/// Piecewise-linear radial profile.
///
/// The coordinate is the capacity x = πr of the sphere |z|²/2 = r, so the
/// ball has capacity `R`, a chord condition f′ = lπ becomes df/dx = l, and
/// a kink at x contributes actions f(x) − l·x. Values may carry π terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadialProfile {
    #[serde(rename = "R")]
    pub radius: Rational,
    pub breakpoints: Vec<(Rational, PiQ)>,
    pub exterior: Vec<i64>,
}

impl RadialProfile {
    /// Builds a profile, merging consecutive breakpoints at the same radius.
    pub fn new(radius: Rational, points: Vec<(Rational, PiQ)>, exterior: Vec<i64>) -> Result<Self, RadialError> {
        let mut breakpoints: Vec<(Rational, PiQ)> = Vec::with_capacity(points.len());
        for (x, v) in points {
            match breakpoints.last() {
                Some((px, pv)) if *px == x => {
                    if *pv != v {
                        return Err(RadialError::Profile(format!("two values at x = {x}")));
                    }
                }
                _ => breakpoints.push((x, v)),
            }
        }
        let p = RadialProfile {
            radius,
            breakpoints,
            exterior,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), RadialError> {
        if !self.radius.is_positive() {
            return Err(RadialError::Profile(format!("R = {} is not positive", self.radius)));
        }
        let bp = &self.breakpoints;
        if bp.len() < 2 {
            return Err(RadialError::Profile("need at least two breakpoints".into()));
        }
        if !bp[0].0.is_zero() || bp[bp.len() - 1].0 != self.radius {
            return Err(RadialError::Profile("breakpoints must run from 0 to R".into()));
        }
        if bp.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(RadialError::Profile("radii must increase strictly".into()));
        }
        for (i, s) in self.slopes().iter().enumerate() {
            if s.is_rational() && s.rational.is_integer() {
                return Err(RadialError::IntegerSlope {
                    segment: i,
                    slope: s.clone(),
                });
            }
        }
        Ok(())
    }

    /// Slope df/dx of every segment.
    pub fn slopes(&self) -> Vec<PiQ> {
        self.breakpoints
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1).scale(&(&w[1].0 - &w[0].0).recip()))
            .collect()
    }

    pub fn value_at(&self, x: &Rational) -> PiQ {
        let bp = &self.breakpoints;
        if x <= &bp[0].0 {
            return bp[0].1.clone();
        }
        for w in bp.windows(2) {
            if x <= &w[1].0 {
                let t = &(x - &w[0].0) / &(&w[1].0 - &w[0].0);
                return &w[0].1 + &(&w[1].1 - &w[0].1).scale(&t);
            }
        }
        bp[bp.len() - 1].1.clone()
    }

    pub fn end_value(&self) -> &PiQ {
        &self.breakpoints[self.breakpoints.len() - 1].1
    }

    /// max over [0, R] of |f − g|, attained at a breakpoint of either profile.
    pub fn sup_distance(&self, other: &RadialProfile) -> PiQ {
        self.breakpoints
            .iter()
            .chain(&other.breakpoints)
            .map(|(x, _)| (&self.value_at(x) - &other.value_at(x)).abs())
            .max()
            .unwrap_or_else(PiQ::zero)
    }

    /// Profile joining (0, −aA/2), (A/2, 0), (A, −aA/2) on a ball of capacity A,
    /// with a single exterior critical point of index 0.
    pub fn new_radial(a: &Rational, capacity: &Rational) -> Result<Self, RadialError> {
        let low = PiQ::rational(-(a * capacity).half());
        RadialProfile::new(
            capacity.clone(),
            vec![
                (Rational::zero(), low.clone()),
                (capacity.half(), PiQ::zero()),
                (capacity.clone(), low),
            ],
            vec![0],
        )
    }
}

/// The folding family f_t: points (0, −m₀x(t) + Rt), (x(t), Rt), (x₂, 0),
/// (x₃, R), (R, R + m₁(R − x₃)) with x(t) = (1 − t)x₂ + t·x₁, all in
/// capacity units.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldingFamily {
    #[serde(rename = "R")]
    pub radius: Rational,
    pub x1: Rational,
    pub x2: Rational,
    pub x3: Rational,
    pub m0: Rational,
    pub m1: Rational,
    pub exterior: Vec<i64>,
}

impl FoldingFamily {
    pub fn x_at(&self, t: &Rational) -> Rational {
        &(&(Rational::one() - t) * &self.x2) + &(t * &self.x1)
    }

    pub fn at(&self, t: &Rational) -> Result<RadialProfile, RadialError> {
        let r = &self.radius;
        let xt = self.x_at(t);
        let top = t * r;
        let q = |v: Rational| PiQ::rational(v);
        RadialProfile::new(
            r.clone(),
            vec![
                (Rational::zero(), q(&top - &(&self.m0 * &xt))),
                (xt, q(top)),
                (self.x2.clone(), PiQ::zero()),
                (self.x3.clone(), q(r.clone())),
                (r.clone(), q(r + &(&self.m1 * &(r - &self.x3)))),
            ],
            self.exterior.clone(),
        )
    }

    /// Samples at t = 0, 1/s, …, 1.
    pub fn samples(&self, steps: i64) -> Result<Vec<RadialProfile>, RadialError> {
        (0..=steps).map(|i| self.at(&rat(i, steps))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_radial_shape() {
        let p = RadialProfile::new_radial(&rat(9, 10), &rat(1, 2)).unwrap();
        assert_eq!(p.slopes(), vec![PiQ::rational(rat(9, 10)), PiQ::rational(rat(-9, 10))]);
        assert_eq!(p.value_at(&rat(1, 8)), PiQ::rational(rat(-9, 80)));
        let q = RadialProfile::new_radial(&rat(1, 2), &rat(1, 2)).unwrap();
        assert_eq!(p.sup_distance(&q), PiQ::rational(rat(1, 10)));
    }

    #[test]
    fn invalid_profiles() {
        let z = PiQ::zero();
        let one = PiQ::rational(rat(1, 1));
        assert!(matches!(
            RadialProfile::new(rat(1, 1), vec![(rat(0, 1), z.clone()), (rat(1, 1), one)], vec![]),
            Err(RadialError::IntegerSlope { .. })
        ));
        assert!(RadialProfile::new(rat(1, 1), vec![(rat(0, 1), z.clone())], vec![]).is_err());
        assert!(RadialProfile::new(
            rat(1, 1),
            vec![(rat(0, 1), z.clone()), (rat(1, 2), z.clone()), (rat(1, 4), z)],
            vec![]
        )
        .is_err());
        // a π-valued slope is never an integer
        let p = RadialProfile::new(rat(1, 1), vec![(rat(0, 1), PiQ::zero()), (rat(1, 1), "π".parse().unwrap())], vec![]);
        assert!(p.is_ok());
    }

    #[test]
    fn folding_family_collapses_at_zero() {
        let fam = FoldingFamily {
            radius: rat(1, 2),
            x1: rat(1, 10),
            x2: rat(1, 4),
            x3: rat(2, 5),
            m0: rat(-1, 10),
            m1: rat(1, 10),
            exterior: vec![2],
        };
        assert_eq!(fam.at(&rat(0, 1)).unwrap().breakpoints.len(), 4);
        assert_eq!(fam.at(&rat(1, 1)).unwrap().breakpoints.len(), 5);
        assert_eq!(fam.samples(4).unwrap().len(), 5);
    }
}
