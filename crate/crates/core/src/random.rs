//! Seeded random instances for property runs. All draws go through
//! [`ChaCha8Rng`] so a seed fixes every instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::integral::SimpleFunction;
use crate::measure::{AtomSet, FiniteSpace, MonotoneMeasure};
use crate::value::NonNegExt;

/// Spacing of the value lattice used for measures and functions.
pub const LATTICE: f64 = 0.01;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from the points of [`crate::grid::uniform`]`(0, top, step)`, computed
/// the same way so lattice values coincide with grid points bit for bit.
fn lattice_draw(rng: &mut ChaCha8Rng, top: f64, step: f64) -> f64 {
    let cells = (top / step).round().max(1.0) as u32;
    let i = rng.gen_range(0..=cells);
    if i == cells {
        top
    } else {
        top * (i as f64) / (cells as f64)
    }
}

/// Capacity on `n` atoms with lattice values: each set draws a value and is
/// raised to the max over its one-smaller subsets, so the table is monotone.
pub fn capacity(rng: &mut ChaCha8Rng, n: usize) -> MonotoneMeasure {
    let space = FiniteSpace::with_atoms(n).expect("atom count in range");
    let full = space.universe().0 as usize;
    let mut table = vec![0.0; space.set_count()];
    for mask in 1..table.len() {
        let floor = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| table[mask & !(1 << i)])
            .fold(0.0, f64::max);
        table[mask] = if mask == full {
            1.0
        } else {
            lattice_draw(rng, 1.0, LATTICE).max(floor)
        };
    }
    MonotoneMeasure::from_table(space, table).expect("monotone by construction")
}

/// Possibility distribution on the lattice with at least one atom at 1.
pub fn possibility_distribution(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut pi: Vec<f64> = (0..n).map(|_| lattice_draw(rng, 1.0, LATTICE)).collect();
    let top = rng.gen_range(0..n);
    pi[top] = 1.0;
    pi
}

pub fn necessity(rng: &mut ChaCha8Rng, n: usize) -> MonotoneMeasure {
    let space = FiniteSpace::with_atoms(n).expect("atom count in range");
    let pi = possibility_distribution(rng, n);
    MonotoneMeasure::necessity_from_possibility(space, &pi).expect("valid distribution")
}

/// Probability weights summing to one.
pub fn probability(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut p: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let rest: f64 = p[..n - 1].iter().sum();
    p[n - 1] = (1.0 - rest).max(0.0);
    p
}

/// Function on `n` atoms with values on the lattice of `[0, k]`.
pub fn function(rng: &mut ChaCha8Rng, n: usize, k: f64) -> SimpleFunction {
    let values = (0..n).map(|_| lattice_draw(rng, k, LATTICE)).collect();
    SimpleFunction::new(values, NonNegExt::new(k).expect("finite bound")).expect("values in range")
}

/// Comonotone pair: two sorted lattice ladders placed along one shared
/// random order of the atoms.
pub fn comonotone_pair(rng: &mut ChaCha8Rng, n: usize, k: f64) -> (SimpleFunction, SimpleFunction) {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let ladder = |rng: &mut ChaCha8Rng| {
        let mut steps: Vec<f64> = (0..n).map(|_| lattice_draw(rng, k, LATTICE)).collect();
        steps.sort_by(|a, b| a.total_cmp(b));
        let mut values = vec![0.0; n];
        for (rank, &atom) in order.iter().enumerate() {
            values[atom] = steps[rank];
        }
        SimpleFunction::new(values, NonNegExt::new(k).expect("finite bound"))
            .expect("values in range")
    };
    let f = ladder(rng);
    let g = ladder(rng);
    (f, g)
}

/// Non-empty subset of `n` atoms.
pub fn nonempty_set(rng: &mut ChaCha8Rng, n: usize) -> AtomSet {
    AtomSet(rng.gen_range(1..(1u32 << n)))
}
