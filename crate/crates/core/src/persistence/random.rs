//! Random barcodes on a small rational grid, for property tests.

use rand::Rng;

use super::bar::{Bar, Barcode};
use crate::novikov::{rat, Rational};

fn grid<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    rat(rng.gen_range(lo..=hi), 4)
}

/// Up to `max_bars` bars in degrees 0..degrees, about one in five infinite.
pub fn random_barcode<R: Rng>(rng: &mut R, max_bars: usize, degrees: i64) -> Barcode<Rational> {
    let n = rng.gen_range(0..=max_bars);
    let bars = (0..n)
        .map(|_| {
            let d = rng.gen_range(0..degrees.max(1));
            let left = grid(rng, -12, 12);
            if rng.gen_bool(0.2) {
                Bar::infinite(d, left)
            } else {
                let right = &left + &grid(rng, 1, 16);
                Bar::finite(d, left, right)
            }
        })
        .collect();
    Barcode::new(bars).expect("bars are nonempty")
}
