//! The true barcode of a filtered complex must be among the barcodes its
//! generator spectrum admits.

use std::collections::BTreeMap;

use floer_bars::comb_floer::{build_complex, diagram::four_point_sphere_eps, DEFAULT_MAX_WIND};
use floer_bars::filtered_complex::random::{random_complex, random_spec};
use floer_bars::filtered_complex::{barcode, FilteredComplex};
use floer_bars::novikov::{rat, Rational};
use floer_bars::persistence::{Bar, Barcode};
use floer_bars::radial::{feasible_barcodes, GeneratorSpectrum, PiQ};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lift(b: &Barcode<Rational>) -> Barcode<PiQ> {
    let bars = b
        .copies()
        .into_iter()
        .map(|bar| match bar.right.finite() {
            Some(r) => Bar::finite(bar.degree, PiQ::rational(bar.left.clone()), PiQ::rational(r.clone())),
            None => Bar::infinite(bar.degree, PiQ::rational(bar.left.clone())),
        })
        .collect();
    Barcode::new(bars).unwrap()
}

fn check(c: &FilteredComplex) {
    let n = c.spec().degree_step;
    let truth = lift(&barcode(c, Some((0, n))).unwrap());
    let mut ranks = BTreeMap::new();
    for d in 0..n {
        ranks.insert(d, truth.infinite_count(d));
    }
    let set = feasible_barcodes(&GeneratorSpectrum::from_complex(c), &ranks).unwrap();
    assert!(set.contains(&truth), "{c}\n{truth}");
}

#[test]
fn sphere_complex_barcode_is_feasible() {
    let cf = build_complex(&four_point_sphere_eps(&rat(1, 20)), DEFAULT_MAX_WIND).unwrap();
    check(&cf.complex);
}

#[test]
fn random_complex_barcodes_are_feasible() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tried = 0;
    while tried < 150 {
        let spec = random_spec(&mut rng);
        if spec.degree_step < 2 {
            continue;
        }
        let n = rng.gen_range(1..=8);
        let c = random_complex(&mut rng, &spec, n);
        check(&c);
        tried += 1;
    }
}
