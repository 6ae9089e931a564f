//! Random valid complexes for property tests: a standard paired complex
//! disguised by random homogeneous, filtration-preserving basis changes.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Entry, FilteredComplex, Generator};
use crate::novikov::{rat, NovikovSpec, Rational};

/// One random Novikov ring among a few small gradings.
pub fn random_spec<R: Rng>(rng: &mut R) -> NovikovSpec {
    let step = rng.gen_range(1..=3);
    let action = rat(rng.gen_range(1..=3), 2);
    NovikovSpec::new("q", step, action).expect("valid spec")
}

fn grid<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    rat(rng.gen_range(lo..=hi), 10)
}

/// A random valid complex with `n` generators.
pub fn random_complex<R: Rng>(rng: &mut R, spec: &NovikovSpec, n: usize) -> FilteredComplex {
    let step = spec.degree_step;
    let mut gens: Vec<Generator> = Vec::with_capacity(n);
    let mut d: Vec<Vec<Entry>> = Vec::new();
    let pairs = rng.gen_range(0..=n / 2);
    for _ in 0..pairs {
        let dz = rng.gen_range(-1..step + 1);
        let az = grid(rng, -10, 10);
        let e = rng.gen_range(-1..=1);
        let dy = spec.shift_degree(dz, e) + 1;
        let ay = spec.shift_action(&az, e) + grid(rng, 1, 12);
        let z = gens.len();
        gens.push(Generator { id: String::new(), degree: dz, action: az });
        gens.push(Generator { id: String::new(), degree: dy, action: ay });
        d.push(Vec::new());
        d.push(vec![Entry { target: z, exp: e }]);
    }
    while gens.len() < n {
        gens.push(Generator {
            id: String::new(),
            degree: rng.gen_range(-1..step + 1),
            action: grid(rng, -10, 10),
        });
        d.push(Vec::new());
    }

    // Basis changes g_i' = g_i + x^e g_j with 𝒜(x^e g_j) < 𝒜(g_i).
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let diff = gens[i].degree - gens[j].degree;
        if diff.rem_euclid(step) != 0 {
            continue;
        }
        let e = diff / step;
        if spec.shift_action(&gens[j].action, e) >= gens[i].action {
            continue;
        }
        change_basis(&mut d, i, j, e);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut new_pos = vec![0; n];
    for (k, &old) in order.iter().enumerate() {
        new_pos[old] = k;
    }
    let generators = order
        .iter()
        .enumerate()
        .map(|(k, &old)| Generator {
            id: format!("g{k}"),
            ..gens[old].clone()
        })
        .collect();
    let entries = order
        .iter()
        .map(|&old| {
            d[old]
                .iter()
                .map(|e| Entry { target: new_pos[e.target], exp: e.exp })
                .collect()
        })
        .collect();
    let c = FilteredComplex::from_parts(spec.clone(), generators, entries).expect("distinct ids");
    debug_assert!(c.validate().is_ok());
    c
}

fn toggle(row: &mut Vec<Entry>, e: Entry) {
    match row.iter().position(|x| *x == e) {
        Some(p) => {
            row.remove(p);
        }
        None => row.push(e),
    }
}

/// Rewrites d in the basis where g_i is replaced by g_i + x^e g_j.
fn change_basis(d: &mut [Vec<Entry>], i: usize, j: usize, e: i64) {
    // d(g_i') = d g_i + x^e d g_j
    let dj: Vec<Entry> = d[j].clone();
    for t in dj {
        toggle(&mut d[i], Entry { target: t.target, exp: t.exp + e });
    }
    // old g_i = g_i' + x^e g_j: each μ g_i gains μ x^e g_j
    for row in d.iter_mut() {
        let hits: Vec<i64> = row.iter().filter(|t| t.target == i).map(|t| t.exp).collect();
        for mu in hits {
            toggle(row, Entry { target: j, exp: mu + e });
        }
    }
}

/// Moves every action by a random amount in [−δ, δ] on the grid δ/4;
/// returns `None` when the perturbation breaks the action-decrease invariant.
pub fn perturb_actions<R: Rng>(rng: &mut R, c: &FilteredComplex, delta: &Rational) -> Option<FilteredComplex> {
    let actions: Vec<Rational> = c
        .generators()
        .iter()
        .map(|g| &g.action + &(delta * &rat(rng.gen_range(-4..=4), 4)))
        .collect();
    let p = c.with_actions(&actions);
    p.validate().is_ok().then_some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_complexes_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut nontrivial = 0;
        for _ in 0..100 {
            let spec = random_spec(&mut rng);
            let n = rng.gen_range(1..=10);
            let c = random_complex(&mut rng, &spec, n);
            c.validate().unwrap();
            if (0..c.len()).any(|g| c.entries(g).len() > 1) {
                nontrivial += 1;
            }
        }
        assert!(nontrivial > 10, "basis changes should mix the differential");
    }
}
