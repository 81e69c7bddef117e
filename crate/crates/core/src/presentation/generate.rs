use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{validate, Arrow, Presentation};
use crate::error::{Error, Result};

pub const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomOptions {
    /// Produce at least one special loop.
    pub skew: bool,
    /// Draw arrow degrees from `-2..=2` instead of leaving them at 0.
    pub graded: bool,
}

impl Default for RandomOptions {
    fn default() -> Self {
        RandomOptions {
            skew: false,
            graded: true,
        }
    }
}

/// A random connected smooth-proper (skew-)gentle presentation on `size`
/// vertices, deterministic in `seed`.
///
/// Arc ends are shuffled and cut into fans; consecutive ends of a fan give an
/// arrow, and an arrow into an arc composes to zero with an arrow out of it
/// exactly when they sit at different ends (or meet at the single end of a
/// special arc). Draws that are not smooth or not connected are rejected.
pub fn random_gentle(seed: u64, size: usize, options: RandomOptions) -> Result<Presentation> {
    if size == 0 {
        return Err(Error::BadParams("size must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let p = draw(&mut rng, size, options);
        let report = validate(&p);
        if report.is_admissible() && report.smooth_proper && report.connected {
            return Ok(p);
        }
    }
    Err(Error::GenerationFailure(MAX_ATTEMPTS))
}

fn draw(rng: &mut ChaCha8Rng, n: usize, options: RandomOptions) -> Presentation {
    let mut special = vec![false; n];
    if options.skew {
        let count = rng.gen_range(1..=n.min(3));
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for &v in &order[..count] {
            special[v] = true;
        }
    }

    // (vertex, end); special vertices have only end 0 on the marked boundary
    let mut ends: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| {
            let k = if special[v] { 1 } else { 2 };
            (0..k).map(move |e| (v, e))
        })
        .collect();
    ends.shuffle(rng);
    let fans = rng.gen_range(1..=(ends.len() / 2).max(ends.len().min(2)));
    let mut cuts: Vec<usize> = (1..ends.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(fans - 1).collect();
    cuts.sort_unstable();

    let mut arrows = Vec::new();
    // arrow -> (end it leaves from, end it arrives at)
    let mut slots = Vec::new();
    let mut start = 0;
    for stop in cuts.into_iter().chain(std::iter::once(ends.len())) {
        for w in ends[start..stop].windows(2) {
            let id = format!("x{}", arrows.len() + 1);
            let degree = if options.graded {
                rng.gen_range(-2..=2)
            } else {
                0
            };
            arrows.push(Arrow::new(
                &id,
                &(w[0].0 + 1).to_string(),
                &(w[1].0 + 1).to_string(),
                degree,
            ));
            slots.push((w[0], w[1]));
        }
        start = stop;
    }

    let mut relations = Vec::new();
    for (a, &(_, a_in)) in slots.iter().enumerate() {
        for (b, &(b_out, _)) in slots.iter().enumerate() {
            if a_in.0 == b_out.0 && (special[a_in.0] || a_in.1 != b_out.1) {
                relations.push((arrows[a].id.clone(), arrows[b].id.clone()));
            }
        }
    }

    let mut special_loops = Vec::new();
    for v in (0..n).filter(|&v| special[v]) {
        let id = format!("e{}", v + 1);
        arrows.push(Arrow::new(
            &id,
            &(v + 1).to_string(),
            &(v + 1).to_string(),
            0,
        ));
        special_loops.push(id);
    }

    Presentation::new(
        (1..=n).map(|v| v.to_string()).collect(),
        arrows,
        relations,
        special_loops,
    )
    .expect("generated presentations are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::AlgebraClass;

    #[test]
    fn deterministic_in_seed() {
        let a = random_gentle(7, 5, RandomOptions::default()).unwrap();
        let b = random_gentle(7, 5, RandomOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn samples_validate() {
        for seed in 0..200 {
            let size = 1 + (seed as usize % 8);
            for skew in [false, true] {
                let opts = RandomOptions { skew, graded: true };
                let p = random_gentle(seed, size, opts).unwrap();
                let r = validate(&p);
                let class = if skew {
                    AlgebraClass::SkewGentle
                } else {
                    AlgebraClass::Gentle
                };
                assert_eq!(r.algebra_class, class, "seed {seed}");
                assert!(r.finite_dimensional && r.smooth_proper && r.connected);
            }
        }
    }
}
