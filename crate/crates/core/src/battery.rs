//! The acceptance battery: nine numbered checks across all modules, each
//! reporting pass/fail with a one-line detail. Shared by the `check`
//! command and the acceptance test.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::comb_floer::diagram::{
    four_point_annulus, four_point_annulus_eps, four_point_sphere, four_point_sphere_eps, two_point_sphere,
};
use crate::comb_floer::meander::{random_four_point_areas, random_sphere_diagram};
use crate::comb_floer::{build_complex, diagram_beta, CombFloer, TwoCurveDiagram, DEFAULT_MAX_WIND};
use crate::filtered_complex::random::{perturb_actions, random_complex, random_spec};
use crate::filtered_complex::{barcode, brute_force_barcode, format_sum, uz_reduce, ComplexRepr, FilteredComplex};
use crate::novikov::{rat, Rational};
use crate::persistence::random::random_barcode;
use crate::persistence::reference::brute_force_bottleneck;
use crate::persistence::{
    bar_length_spectrum, bottleneck_distance, shift_barcode, shifted_bottleneck, Extended,
};
use crate::radial::{forced_bar_bound, generators, LagrangianParams, PiQ, RadialProfile};
use crate::seidel::{example_case, telescoping_check, CaseName, Hypothesis};

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Bundled example inputs, by file name.
pub const FIXTURES: &[(&str, &str)] = &[
    ("barcode_pair_a.json", include_str!("../fixtures/barcode_pair_a.json")),
    ("barcode_pair_b.json", include_str!("../fixtures/barcode_pair_b.json")),
    ("complex_annulus_four_point.json", include_str!("../fixtures/complex_annulus_four_point.json")),
    ("complex_random.json", include_str!("../fixtures/complex_random.json")),
    ("complex_sphere_four_point.json", include_str!("../fixtures/complex_sphere_four_point.json")),
    ("complex_two_point.json", include_str!("../fixtures/complex_two_point.json")),
    ("diagram_annulus_four_point.json", include_str!("../fixtures/diagram_annulus_four_point.json")),
    ("diagram_sphere_four_point.json", include_str!("../fixtures/diagram_sphere_four_point.json")),
    ("diagram_sphere_two_point.json", include_str!("../fixtures/diagram_sphere_two_point.json")),
    ("family_folding.json", include_str!("../fixtures/family_folding.json")),
    ("profile_exterior_only.json", include_str!("../fixtures/profile_exterior_only.json")),
    ("profile_new_radial.json", include_str!("../fixtures/profile_new_radial.json")),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}. {}: {}", self.id, self.name, self.detail)
    }
}

type Outcome = Result<String, String>;

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "four-point sphere diagram"),
    (2, "four-point annulus diagram"),
    (3, "sphere ceiling beta <= 1/4"),
    (4, "beta <= gamma on sphere diagrams"),
    (5, "Seidel example table"),
    (6, "telescoping sweep"),
    (7, "new-radial forced bound"),
    (8, "reduction vs rank oracle"),
    (9, "metric properties"),
];

/// Runs criterion `id` (1–9), catching panics as failures.
pub fn run_criterion(id: u8, seed: u64) -> CriterionResult {
    let name = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| c.1)
        .unwrap_or("unknown criterion");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(id as u64));
    let outcome = catch_unwind(AssertUnwindSafe(|| match id {
        1 => four_point_sphere_criterion(&mut rng),
        2 => annulus_criterion(&mut rng),
        3 => ceiling_criterion(&mut rng),
        4 => beta_gamma_criterion(&mut rng),
        5 => seidel_criterion(),
        6 => telescoping_criterion(),
        7 => new_radial_criterion(),
        8 => oracle_criterion(&mut rng),
        9 => metric_criterion(&mut rng),
        _ => Err(format!("no criterion {id}")),
    }))
    .unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id, name, passed, detail }
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, seed)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn build(d: &TwoCurveDiagram) -> Result<CombFloer, String> {
    build_complex(d, DEFAULT_MAX_WIND).map_err(|e| e.to_string())
}

fn table(cf: &CombFloer) -> Vec<String> {
    cf.complex
        .differential_sums()
        .into_iter()
        .map(|(k, v)| format!("d {k} = {}", format_sum(&v)))
        .collect()
}

fn min_of(xs: &[&Rational]) -> Rational {
    xs.iter().map(|x| (*x).clone()).min().expect("nonempty")
}

fn four_point_sphere_criterion(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..50 {
        let a = random_four_point_areas(rng);
        let beta = diagram_beta(&four_point_sphere(a.clone())).map_err(|e| e.to_string())?;
        let want = min_of(&[&a[4], &a[2], &a[0], &a[5]]);
        ensure(beta == want, || format!("areas {a:?}: beta {beta}, expected {want}"))?;
    }
    let cf = build(&four_point_sphere_eps(&rat(1, 20)))?;
    let beta = cf.beta().map_err(|e| e.to_string())?;
    ensure(beta == rat(1, 5), || format!("eps = 1/20: beta {beta}"))?;
    let t = table(&cf);
    ensure(t == ["d a2 = a1 + a3", "d a4 = a1 + a3"], || format!("table {t:?}"))?;
    Ok("50 random assignments match min(A5, A3, A1, A6); eps = 1/20 gives beta = 1/5; d a2 = d a4 = a1 + a3".into())
}

fn annulus_criterion(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..50 {
        let a = random_four_point_areas(rng);
        let beta = diagram_beta(&four_point_annulus(a.clone())).map_err(|e| e.to_string())?;
        let want = min_of(&[&a[2], &a[5]]);
        ensure(beta == want, || format!("areas {a:?}: beta {beta}, expected {want}"))?;
    }
    let eps = rat(1, 10);
    let cf = build(&four_point_annulus_eps(&eps))?;
    let beta = cf.beta().map_err(|e| e.to_string())?;
    let want = rat(1, 2) - eps.mul_int(2);
    ensure(beta == want, || format!("eps = 1/10: beta {beta}, expected {want}"))?;
    let t = table(&cf);
    ensure(t == ["d a2 = a3", "d a4 = a3"], || format!("table {t:?}"))?;
    Ok("50 random assignments match min(A3, A6); eps = 1/10 gives beta = 3/10; d a2 = d a4 = a3".into())
}

/// Random meanders with 2..14 intersection points plus the four- and
/// two-point diagrams with random areas.
fn random_sphere_diagrams(rng: &mut ChaCha8Rng, count: usize) -> Vec<TwoCurveDiagram> {
    let mut out = vec![two_point_sphere()];
    while out.len() < count {
        if rng.gen_bool(0.2) {
            out.push(four_point_sphere(random_four_point_areas(rng)));
        } else {
            let n = rng.gen_range(1..=7);
            out.push(random_sphere_diagram(rng, n));
        }
    }
    out
}

fn ceiling_criterion(rng: &mut ChaCha8Rng) -> Outcome {
    let quarter = rat(1, 4);
    let mut worst = Rational::zero();
    for d in random_sphere_diagrams(rng, 240) {
        let beta = build(&d)?.beta().map_err(|e| e.to_string())?;
        ensure(beta <= quarter, || format!("beta {beta} > 1/4 on {}", serde_json::to_string(&d).unwrap_or_default()))?;
        worst = worst.max(beta);
    }
    // the symmetric four-point family approaches the ceiling as eps → 0
    let mut best_family = Rational::zero();
    for k in [20, 50, 100, 200, 400] {
        let beta = diagram_beta(&four_point_sphere_eps(&rat(1, k))).map_err(|e| e.to_string())?;
        ensure(beta <= quarter, || format!("beta {beta} > 1/4 at eps = 1/{k}"))?;
        best_family = best_family.max(beta);
    }
    let floor = rat(1, 4) - rat(1, 100);
    ensure(best_family > floor, || format!("family maximum {best_family} does not exceed 1/4 - 1/100"))?;
    Ok(format!("240 random diagrams have beta <= 1/4 (max {worst}); symmetric family reaches {best_family}"))
}

fn beta_gamma_criterion(rng: &mut ChaCha8Rng) -> Outcome {
    let mut checked = 0;
    for d in random_sphere_diagrams(rng, 240) {
        let cf = build(&d)?;
        let beta = cf.beta().map_err(|e| e.to_string())?;
        let Ok(gamma) = cf.gamma() else { continue };
        ensure(beta <= gamma, || format!("beta {beta} > gamma {gamma}"))?;
        checked += 1;
    }
    ensure(checked >= 200, || format!("gamma defined on only {checked} diagrams"))?;
    Ok(format!("beta <= gamma on all {checked} diagrams with gamma defined"))
}

fn seidel_criterion() -> Outcome {
    for n in 1..=10 {
        let expected = [
            (CaseName::RPn, rat(n, 2 * n + 2)),
            (CaseName::CPnDiag, rat(n, n + 1)),
            (CaseName::SnQuadric, rat(1, 2)),
            (CaseName::HPnGr, rat(n, n + 1)),
        ];
        for (case, want) in expected {
            let c = example_case(case, n).map_err(|e| format!("{case}({n}): {e}"))?;
            ensure(c.bound == want, || format!("{case}({n}): bound {}, expected {want}", c.bound))?;
            ensure(c.bound < c.presentation.a_l, || format!("{case}({n}): bound not below A_L"))?;
        }
    }
    Ok("all four cases reproduce n/(2n+2), n/(n+1), 1/2, n/(n+1) for n = 1..10, each below A_L".into())
}

fn telescoping_criterion() -> Outcome {
    let kappa = rat(3, 7);
    let mut count = 0;
    for m in 2..=6 {
        for k in 1..m {
            for p in -8..=8 {
                for r in -8..=8 {
                    let h = Hypothesis { k, p, m, r };
                    telescoping_check(&h, &kappa).map_err(|e| format!("{h:?}: {e}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} tuples telescope to m times the averaging bound"))
}

fn new_radial_criterion() -> Outcome {
    let capacity = rat(1, 2);
    let lp = LagrangianParams::new(1, 2, PiQ::rational(capacity.clone()));
    let ranks = BTreeMap::from([(0, 1), (1, 1)]);
    let mut prev: Option<Rational> = None;
    let mut values = Vec::new();
    for k in 1..=9 {
        let a = rat(k, 10);
        let p = RadialProfile::new_radial(&a, &capacity).map_err(|e| e.to_string())?;
        let s = generators(&p, &lp, (0, 0)).map_err(|e| e.to_string())?;
        let bound = forced_bar_bound(&s, &ranks).map_err(|e| e.to_string())?;
        let x = (&capacity * &a).half();
        let want = PiQ::rational(x.clone().min(&capacity - &x));
        ensure(bound == want, || format!("a = {a}: bound {bound}, expected {want}"))?;
        let b = bound.rational.clone();
        ensure(b < capacity.half(), || format!("a = {a}: bound {b} reaches A/2"))?;
        if let Some(q) = &prev {
            ensure(&b > q, || format!("a = {a}: bound {b} not above {q}"))?;
        }
        values.push(b.to_string());
        prev = Some(b);
    }
    Ok(format!("bounds {} increase towards A/2 = 1/4", values.join(", ")))
}

fn oracle_check(c: &FilteredComplex, window: Option<(i64, i64)>) -> Result<(), String> {
    let fast = barcode(c, window).map_err(|e| e.to_string())?;
    let slow = brute_force_barcode(c, window).map_err(|e| e.to_string())?;
    ensure(fast == slow, || format!("barcode {fast} but oracle {slow} on\n{c}"))?;
    let betas = uz_reduce(c, window).map_err(|e| e.to_string())?.betas();
    let finite: Vec<Rational> = bar_length_spectrum(&slow)
        .into_iter()
        .filter_map(|x| x.finite().cloned())
        .collect();
    ensure(betas == finite, || format!("betas {betas:?} but oracle lengths {finite:?}"))
}

/// Every bundled complex, and the complex of every bundled diagram.
pub fn fixture_complexes() -> Result<Vec<(String, FilteredComplex)>, String> {
    let mut out = Vec::new();
    for (name, text) in FIXTURES {
        if name.starts_with("complex_") {
            let repr: ComplexRepr = serde_json::from_str(text).map_err(|e| format!("{name}: {e}"))?;
            out.push((name.to_string(), FilteredComplex::try_from(repr).map_err(|e| format!("{name}: {e}"))?));
        } else if name.starts_with("diagram_") {
            let d: TwoCurveDiagram = serde_json::from_str(text).map_err(|e| format!("{name}: {e}"))?;
            out.push((name.to_string(), build(&d)?.complex));
        }
    }
    Ok(out)
}

fn oracle_criterion(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..200 {
        let spec = random_spec(rng);
        let n = rng.gen_range(1..=10);
        let c = random_complex(rng, &spec, n);
        oracle_check(&c, Some((-2, spec.degree_step + 2)))?;
    }
    let fixtures = fixture_complexes()?;
    for (name, c) in &fixtures {
        oracle_check(c, None).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!(
        "200 random complexes and {} fixture complexes agree with the oracle, betas included",
        fixtures.len()
    ))
}

fn add(a: &Extended<Rational>, b: &Extended<Rational>) -> Extended<Rational> {
    match (a, b) {
        (Extended::Finite(x), Extended::Finite(y)) => Extended::Finite(x + y),
        _ => Extended::Infinite,
    }
}

fn metric_criterion(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..200 {
        let [a, b, c] = [0; 3].map(|_| random_barcode(rng, 6, 2));
        let ab = bottleneck_distance(&a, &b, true);
        ensure(ab == bottleneck_distance(&b, &a, true), || format!("asymmetric on {a} and {b}"))?;
        let ac = bottleneck_distance(&a, &c, true);
        let bc = bottleneck_distance(&b, &c, true);
        ensure(ac <= add(&ab, &bc), || format!("triangle fails on {a}, {b}, {c}"))?;
    }
    let mut stable = 0;
    while stable < 100 {
        let spec = random_spec(rng);
        let n = rng.gen_range(1..=8);
        let c = random_complex(rng, &spec, n);
        let delta = rat(rng.gen_range(1..=6), 20);
        let Some(p) = perturb_actions(rng, &c, &delta) else { continue };
        let (b0, b1) = (barcode(&c, None).map_err(|e| e.to_string())?, barcode(&p, None).map_err(|e| e.to_string())?);
        let d = bottleneck_distance(&b0, &b1, true);
        ensure(d <= Extended::Finite(delta.clone()), || format!("perturbation {delta} moved {b0} to {b1} by {d}"))?;
        stable += 1;
    }
    for _ in 0..100 {
        let b = random_barcode(rng, 5, 2);
        let c = rat(rng.gen_range(-40..=40), 8);
        let (d, _) = shifted_bottleneck(&b, &shift_barcode(&b, &c));
        ensure(d == Extended::Finite(Rational::zero()), || format!("d'({b}, shift {c}) = {d}"))?;
    }
    let mut compared = 0;
    while compared < 200 {
        let a = random_barcode(rng, 4, 2);
        let b = random_barcode(rng, 4, 2);
        if a.copies().len() + b.copies().len() > 6 {
            continue;
        }
        for sensitive in [true, false] {
            let fast = bottleneck_distance(&a, &b, sensitive);
            let slow = brute_force_bottleneck(&a, &b, sensitive);
            ensure(fast == slow, || format!("matcher {fast} vs brute force {slow} on {a}, {b}"))?;
        }
        compared += 1;
    }
    Ok("symmetry and triangle on 200 triples; 100 perturbations stable; 100 shifts give d' = 0; 200 small pairs match brute force".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::persistence::Barcode;

    #[test]
    fn fixtures_parse() {
        let complexes = fixture_complexes().unwrap();
        assert_eq!(complexes.len(), 7);
        let pair: Vec<Barcode<Rational>> = ["barcode_pair_a.json", "barcode_pair_b.json"]
            .iter()
            .map(|n| serde_json::from_str(FIXTURES.iter().find(|f| f.0 == *n).unwrap().1).unwrap())
            .collect();
        assert_eq!(bottleneck_distance(&pair[0], &pair[1], true), Extended::Finite(rat(2, 1)));
    }

    #[test]
    fn unknown_criterion_fails() {
        assert!(!run_criterion(42, DEFAULT_SEED).passed);
    }
}
