use std::collections::BTreeMap;

use floer_bars::novikov::rat;
use floer_bars::persistence::Barcode;
use floer_bars::radial::feasible::feasible_barcodes_limited;
use floer_bars::radial::*;

fn folding() -> FoldingFamily {
    FoldingFamily {
        radius: rat(1, 2),
        x1: rat(1, 100),
        x2: rat(1, 4),
        x3: rat(49, 100),
        m0: rat(-1, 10),
        m1: rat(1, 10),
        exterior: vec![2],
    }
}

fn sphere() -> (LagrangianParams, BTreeMap<i64, usize>) {
    (
        LagrangianParams::new(2, 4, PiQ::rational(rat(1, 1))),
        BTreeMap::from([(0, 1), (2, 1)]),
    )
}

fn ends_at(b: &Barcode<PiQ>, x: &PiQ) -> bool {
    b.bars().iter().any(|bar| bar.right.finite() == Some(x))
}

#[test]
fn folding_family_keeps_the_endpoint_bar() {
    let fam = folding();
    let (lp, ranks) = sphere();
    let target = PiQ::rational(&fam.radius + &fam.x1);

    // unconstrained, many t = 1 barcodes lack the bar
    let s1 = generators(&fam.at(&rat(1, 1)).unwrap(), &lp, (0, 0)).unwrap();
    let all = feasible_barcodes_limited(&s1, &ranks, DEFAULT_LIMIT).unwrap();
    assert!(all.iter().any(|b| !ends_at(b, &target)));

    let sets = homotopy_filter(&fam.samples(4).unwrap(), &lp, &ranks, &rat(1, 1), DEFAULT_LIMIT).unwrap();
    assert_eq!(sets.len(), 5);
    let last = sets.last().unwrap();
    assert!(last.len() < all.len());
    assert!(last.iter().all(|b| ends_at(b, &target)));
}

const DEFAULT_LIMIT: usize = 100_000_000;

#[test]
fn constant_family_prunes_nothing() {
    let p = RadialProfile::new_radial(&rat(3, 5), &rat(1, 2)).unwrap();
    let lp = LagrangianParams::new(1, 2, PiQ::rational(rat(1, 2)));
    let ranks = BTreeMap::from([(0, 1), (1, 1)]);
    let full = feasible_barcodes(&generators(&p, &lp, (0, 0)).unwrap(), &ranks).unwrap();
    let sets = homotopy_filter(&[p.clone(), p.clone(), p], &lp, &ranks, &rat(1, 1), DEFAULT_LIMIT).unwrap();
    assert!(sets.iter().all(|s| *s == full));
}

#[test]
fn single_sample_is_its_feasible_set() {
    let fam = folding();
    let (lp, ranks) = sphere();
    let p = fam.at(&rat(0, 1)).unwrap();
    let full = feasible_barcodes(&generators(&p, &lp, (0, 0)).unwrap(), &ranks).unwrap();
    let sets = homotopy_filter(&[p], &lp, &ranks, &rat(3, 1), DEFAULT_LIMIT).unwrap();
    assert_eq!(sets, vec![full]);
}

#[test]
fn small_constant_is_rejected() {
    let (lp, ranks) = sphere();
    let p = folding().at(&rat(0, 1)).unwrap();
    assert!(matches!(
        homotopy_filter(&[p], &lp, &ranks, &rat(1, 2), DEFAULT_LIMIT),
        Err(RadialError::Params(_))
    ));
}

#[test]
fn slow_deformation_of_new_radial_tracks_both_families() {
    let lp = LagrangianParams::new(1, 2, PiQ::rational(rat(1, 2)));
    let ranks = BTreeMap::from([(0, 1), (1, 1)]);
    let profiles: Vec<RadialProfile> = (5..=9)
        .map(|k| RadialProfile::new_radial(&rat(k, 10), &rat(1, 2)).unwrap())
        .collect();
    let sets = homotopy_filter(&profiles, &lp, &ranks, &rat(1, 1), DEFAULT_LIMIT).unwrap();
    assert!(sets.iter().all(|s| s.len() == 2));
}
