use floer_bars::comb_floer::meander::random_sphere_diagram;
use floer_bars::comb_floer::{build_complex, point_id, Arc, TwoCurveDiagram, DEFAULT_MAX_WIND};
use floer_bars::filtered_complex::barcode;
use floer_bars::novikov::Rational;
use floer_bars::persistence::{bar_length_spectrum, Extended};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lengths(d: &TwoCurveDiagram) -> Vec<Extended<Rational>> {
    let cf = build_complex(d, DEFAULT_MAX_WIND).unwrap();
    bar_length_spectrum(&barcode(&cf.complex, None).unwrap())
}

fn relabel(d: &TwoCurveDiagram, perm: &[u32]) -> TwoCurveDiagram {
    let p = |x: u32| perm[x as usize - 1];
    let mut out = d.clone();
    out.points = d.points.iter().map(|&x| p(x)).collect();
    out.order_k = d.order_k.iter().map(|&x| p(x)).collect();
    out.order_l = d.order_l.iter().map(|&x| p(x)).collect();
    for f in &mut out.faces {
        f.walk = f.walk.iter().map(|a| Arc { from: p(a.from), to: p(a.to), ..*a }).collect();
    }
    out
}

#[test]
fn relabelling_points_keeps_bar_lengths() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..40 {
        let n = rng.gen_range(1..=5);
        let d = random_sphere_diagram(&mut rng, n);
        let mut perm: Vec<u32> = (1..=2 * n as u32).collect();
        perm.shuffle(&mut rng);
        assert_eq!(lengths(&d), lengths(&relabel(&d, &perm)));
    }
}

#[test]
fn rotating_the_curve_orders_keeps_bar_lengths() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..40 {
        let n = rng.gen_range(1..=5);
        let d = random_sphere_diagram(&mut rng, n);
        let mut r = d.clone();
        r.order_k.rotate_left(rng.gen_range(0..2 * n));
        r.order_l.rotate_left(rng.gen_range(0..2 * n));
        assert_eq!(lengths(&d), lengths(&r));
    }
}

#[test]
fn lunes_drop_action_by_their_area() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..40 {
        let n = rng.gen_range(1..=6);
        let d = random_sphere_diagram(&mut rng, n);
        let cf = build_complex(&d, DEFAULT_MAX_WIND).unwrap();
        let action = |id: &str| {
            let g = cf.complex.generators().iter().position(|g| g.id == id).unwrap();
            cf.complex.generators()[g].action.clone()
        };
        for l in &cf.lunes {
            assert!(l.area > Rational::zero());
            let target = cf.complex.copy_action(cf.complex.idx(&point_id(l.to)).unwrap(), l.exp);
            assert_eq!(&action(&point_id(l.from)) - &target, l.area);
        }
    }
}
