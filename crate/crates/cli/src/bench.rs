//! Timing of canonical forms on seeded random inputs, as CSV.

use std::time::{Duration, Instant};

use latcanon::{canonicalize, CanonOptions, PointSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::selftest::random_set;

pub const HEADER: &str = "n,d,bits,seed,wall_ms,max_frameset";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub n: usize,
    pub d: usize,
    pub bits: u32,
    pub seed: u64,
    pub wall: Duration,
    pub max_frameset: usize,
}

impl Row {
    pub fn csv(&self) -> String {
        let us = self.wall.as_micros();
        format!(
            "{},{},{},{},{}.{:03},{}",
            self.n,
            self.d,
            self.bits,
            self.seed,
            us / 1000,
            us % 1000,
            self.max_frameset
        )
    }
}

/// The `index`-th input for one benchmark size; depends only on its
/// arguments.
pub fn instance(n: usize, d: usize, bits: u32, seed: u64, index: usize) -> PointSet {
    let key = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ n as u64 ^ (index as u64).rotate_left(40);
    random_set(&mut ChaCha8Rng::seed_from_u64(key), d, n, bits)
}

/// Mean over `instances` inputs of the best of `repeat` timed runs each.
pub fn measure(
    n: usize,
    d: usize,
    bits: u32,
    seed: u64,
    instances: usize,
    repeat: usize,
) -> Result<Row> {
    let instances = instances.max(1);
    let mut total = Duration::ZERO;
    let mut max_frameset = 0;
    let mut size = n;
    for index in 0..instances {
        let set = instance(n, d, bits, seed, index);
        size = set.len();
        let mut best = Duration::MAX;
        for _ in 0..repeat.max(1) {
            let start = Instant::now();
            let c = canonicalize(&set, &CanonOptions::default())?;
            best = best.min(start.elapsed());
            max_frameset = max_frameset.max(c.stats.max_frameset);
        }
        total += best;
    }
    Ok(Row {
        n: size,
        d,
        bits,
        seed,
        wall: total / instances as u32,
        max_frameset,
    })
}
