use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::CriterionWindow;
use crate::space::{AtomicSpace, MeasurableSet};

/// Largest random candidate set.
const MAX_RANDOM_SIZE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub label: String,
    pub set: MeasurableSet,
}

/// Candidate sets in the window: every singleton, aligned dyadic blocks of
/// consecutive window atoms, then `window.candidates` seeded random subsets.
pub fn candidate_sets(space: &AtomicSpace, window: &CriterionWindow) -> Vec<Candidate> {
    let (lo, hi) = window.set_window;
    let atoms = space.domain().atoms_in(lo, hi);
    let mut out: Vec<Candidate> =
        atoms.iter().map(|&a| Candidate { label: format!("singleton {a}"), set: MeasurableSet::singleton(a) }).collect();

    let mut size = 2;
    while size <= atoms.len() {
        for chunk in atoms.chunks_exact(size) {
            out.push(Candidate {
                label: format!("block {}..={}", chunk[0], chunk[size - 1]),
                set: MeasurableSet::new(chunk.iter().copied()),
            });
        }
        size *= 2;
    }

    if !atoms.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(window.seed);
        for k in 0..window.candidates {
            let size = rng.gen_range(1..=MAX_RANDOM_SIZE.min(atoms.len()));
            let picks = sample(&mut rng, atoms.len(), size);
            out.push(Candidate { label: format!("random {k}"), set: MeasurableSet::new(picks.iter().map(|i| atoms[i])) });
        }
    }
    out
}
