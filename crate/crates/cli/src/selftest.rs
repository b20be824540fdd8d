//! Randomized property suites, shared by `latcanon selftest` and the
//! acceptance target.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use latcanon::exactla::{affine_rank_points, hnf_with_transform, is_row_hnf};
use latcanon::oracle::{brute_force_equivalent, random_affinity_from};
use latcanon::{
    apply_affinity, are_equivalent, canonical_form, canonicalize, canonicalize_laurent,
    equivariant_frames2, equivariant_frames_ref, Affinity, CanonOptions, Canonical, Frame,
    FrameOptions, Int, IntMatrix, LaurentPoly, Point, PointSet, RationalPoint,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest random set per dimension in the invariance suite.
pub fn invariance_max_n(d: usize) -> usize {
    match d {
        1 | 2 => 64,
        3 => 12,
        _ => 8,
    }
}

/// Largest |FrameSet| tolerated per dimension.
pub fn frame_bound(d: usize) -> usize {
    match d {
        1 => 2,
        2 => 12,
        _ => 200,
    }
}

/// Pass/fail counts for one property, with the first few failures.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub name: String,
    pub trials: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl Tally {
    fn new(name: impl Into<String>) -> Tally {
        Tally {
            name: name.into(),
            ..Tally::default()
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<28} {:>5}/{:<5} passed  ({:.1?})",
            self.name,
            self.trials - self.failures.len(),
            self.trials,
            self.elapsed
        )?;
        for msg in self.failures.iter().take(3) {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

/// Uniform coordinates in `[-2^(bits-1), 2^(bits-1))`, `bits` in `1..=64`.
pub fn random_point<R: Rng>(rng: &mut R, d: usize, bits: u32) -> Point {
    let coords = (0..d)
        .map(|_| {
            let raw: i64 = rng.gen();
            Int::from(raw >> (64 - bits.clamp(1, 64)))
        })
        .collect();
    Point::new(coords)
}

/// `n` distinct points, or fewer if the coordinate range is too small.
pub fn random_set<R: Rng>(rng: &mut R, d: usize, n: usize, bits: u32) -> PointSet {
    let mut pts = std::collections::BTreeSet::new();
    for _ in 0..n * 4 {
        if pts.len() == n {
            break;
        }
        pts.insert(random_point(rng, d, bits));
    }
    PointSet::new(d, pts).expect("uniform dimension")
}

fn rank(set: &PointSet) -> isize {
    affine_rank_points(&set.points().cloned().collect::<Vec<_>>())
}

/// A full-dimensional planar set of `n` points with coordinates in `[0, 8)`.
pub fn small_plane_set<R: Rng>(rng: &mut R, n: usize) -> PointSet {
    loop {
        let mut pts = std::collections::BTreeSet::new();
        while pts.len() < n {
            pts.insert(Point::from([rng.gen_range(0..8), rng.gen_range(0..8)]));
        }
        let set = PointSet::new(2, pts).expect("planar points");
        if rank(&set) == 2 {
            return set;
        }
    }
}

/// Up to `d + 1` affinely independent rational points with denominators in
/// `1..=3`.
pub fn random_rational_frame<R: Rng>(rng: &mut R, d: usize) -> Frame {
    let len = rng.gen_range(0..=d + 1);
    let mut pts: Vec<RationalPoint> = Vec::new();
    for _ in 0..8 * (d + 1) {
        if pts.len() == len {
            break;
        }
        let num = (0..d)
            .map(|_| Int::from(rng.gen_range(-40i64..=40)))
            .collect();
        let mut next = pts.clone();
        next.push(RationalPoint::new(num, Int::from(rng.gen_range(1i64..=3))));
        if Frame::new(d, next.clone()).is_ok() {
            pts = next;
        }
    }
    Frame::new(d, pts).expect("greedily independent")
}

pub fn random_polynomial<R: Rng>(rng: &mut R, d: usize) -> LaurentPoly {
    loop {
        let terms: Vec<(Point, Int)> = (0..rng.gen_range(1..=10))
            .map(|_| {
                let exp = Point::new(
                    (0..d)
                        .map(|_| Int::from(rng.gen_range(-20i64..=20)))
                        .collect(),
                );
                let mut c = rng.gen_range(1i64..=9);
                if rng.gen() {
                    c = -c;
                }
                (exp, Int::from(c))
            })
            .collect();
        if let Ok(p) = LaurentPoly::from_terms(d, terms) {
            return p;
        }
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R) -> IntMatrix {
    let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    let scale = rng.gen_range(0..3);
    let entries = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| match scale {
                    0 => Int::from(rng.gen_range(-9i64..=9)),
                    1 => Int::from(rng.gen::<i64>()),
                    _ => Int::from(rng.gen::<i128>()),
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(entries).expect("rectangular")
}

/// Affinity with up to 40 elementary steps.
fn random_group_element<R: Rng>(rng: &mut R, d: usize) -> Affinity {
    let steps = rng.gen_range(0..=40);
    random_affinity_from(rng, d, steps, 3)
}

/// Outcome of the invariance suite; the four tallies share their instances.
#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub invariance: Tally,
    pub witness: Tally,
    pub idempotence: Tally,
    pub frame_bound: Tally,
    /// Largest |FrameSet| seen in any call, per dimension.
    pub max_frameset: BTreeMap<usize, usize>,
}

/// For `trials` random sets in each dimension: invariance under a random
/// affinity, witness validity, idempotence and the frame-count bound.
/// `fault` corrupts the transformed form, to prove the harness can fail.
pub fn invariance_suite(
    dims: &[usize],
    trials: usize,
    bits: u32,
    seed: u64,
    fault: bool,
) -> InvarianceReport {
    let mut rep = InvarianceReport {
        invariance: Tally::new("invariance"),
        witness: Tally::new("witness validity"),
        idempotence: Tally::new("idempotence"),
        frame_bound: Tally::new("frame-set bound"),
        max_frameset: BTreeMap::new(),
    };
    let start = Instant::now();
    let opts = CanonOptions {
        frames: FrameOptions {
            instrument: true,
            ..FrameOptions::default()
        },
        ..CanonOptions::default()
    };
    for &d in dims {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (d as u64).rotate_left(32));
        for t in 0..trials {
            let n = rng.gen_range(1..=invariance_max_n(d));
            let set = random_set(&mut rng, d, n, bits);
            let phi = random_group_element(&mut rng, d);
            let tag = || format!("d={d} trial {t} n={}", set.len());

            let c = canonicalize(&set, &opts).expect("canonical form");
            let moved = apply_affinity(&phi, &set).expect("same dimension");
            let mut other = canonicalize(&moved, &opts).expect("canonical form");
            if fault {
                other.omega = apply_affinity(&Affinity::translation(unit(d)), &other.omega)
                    .expect("same dimension");
            }
            rep.invariance.record(c.omega == other.omega, tag);

            let valid = |k: &Canonical<()>, s: &PointSet| {
                k.psi.matrix().determinant().abs().is_one()
                    && apply_affinity(&k.psi, s).as_ref() == Ok(&k.omega)
            };
            rep.witness
                .record(valid(&c, &set) && valid(&other, &moved), tag);

            rep.idempotence
                .record(canonical_form(&c.omega) == c.omega, tag);

            let seen = c.stats.max_frameset.max(other.stats.max_frameset);
            let slot = rep.max_frameset.entry(d).or_default();
            *slot = (*slot).max(seen);
            let violations = c.stats.measure_violations + other.stats.measure_violations;
            rep.frame_bound
                .record(seen <= frame_bound(d) && violations == 0, || {
                    format!("{}: {seen} frames, {violations} measure violations", tag())
                });
        }
    }
    let elapsed = start.elapsed();
    for t in [
        &mut rep.invariance,
        &mut rep.witness,
        &mut rep.idempotence,
        &mut rep.frame_bound,
    ] {
        t.elapsed = elapsed;
    }
    rep
}

fn unit(d: usize) -> Vec<Int> {
    let mut v = vec![Int::zero(); d];
    v[0] = Int::one();
    v
}

/// `pairs` planar pairs, alternately equivalent by construction and
/// independent, decided both by the library and by brute force.
pub fn oracle_suite(pairs: usize, seed: u64) -> Tally {
    let mut tally = Tally::new("oracle agreement");
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..pairs {
        let n = rng.gen_range(3..=8);
        let a = small_plane_set(&mut rng, n);
        let b = if t % 2 == 0 {
            let phi = random_group_element(&mut rng, 2);
            apply_affinity(&phi, &a).expect("same dimension")
        } else {
            small_plane_set(&mut rng, n)
        };
        let fast = are_equivalent(&a, &b).expect("same dimension");
        let slow = brute_force_equivalent(&a, &b).expect("within the oracle's domain");
        let sound = fast
            .as_ref()
            .is_none_or(|w| apply_affinity(w, &a).as_ref() == Ok(&b));
        tally.record(
            fast.is_some() == slow.is_some() && sound && (t % 2 == 1 || slow.is_some()),
            || {
                format!(
                    "pair {t}: library {}, brute force {}",
                    fast.is_some(),
                    slow.is_some()
                )
            },
        );
    }
    tally.elapsed = start.elapsed();
    tally
}

/// Equivariance of both frame searches: `trials` runs each of the
/// production search with `Q` empty and with a random rational `Q`, and of
/// the reference search on at most 12 points.
pub fn frames_suite(dims: &[usize], trials: usize, seed: u64) -> Vec<Tally> {
    let mut empty_q = Tally::new("frames, Q empty");
    let mut rational_q = Tally::new("frames, rational Q");
    let mut reference = Tally::new("reference frames");
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_n = |d: usize| match d {
        1 | 2 => 32,
        3 => 16,
        _ => 8,
    };
    for t in 0..trials {
        let d = dims[t % dims.len()];
        let phi = random_group_element(&mut rng, d);

        let n = rng.gen_range(1..=max_n(d));
        let set = random_set(&mut rng, d, n, 24);
        let q = Frame::empty(d);
        empty_q.record(frames_commute(&set, &q, &phi), || {
            format!("d={d} trial {t}")
        });

        let n = rng.gen_range(1..=max_n(d).min(16));
        let set = random_set(&mut rng, d, n, 6);
        let q = random_rational_frame(&mut rng, d);
        rational_q.record(frames_commute(&set, &q, &phi), || {
            format!("d={d} trial {t}, |Q|={}", q.len())
        });

        let n = rng.gen_range(1..=max_n(d).min(12));
        let set = random_set(&mut rng, d, n, 6);
        let direct = equivariant_frames_ref(&set).map(|f| f.image(&phi));
        let moved = equivariant_frames_ref(&apply_affinity(&phi, &set).expect("same dimension"));
        reference.record(direct.is_ok() && direct == moved, || {
            format!("d={d} trial {t}")
        });
    }
    let elapsed = start.elapsed();
    let mut out = vec![empty_q, rational_q, reference];
    for t in &mut out {
        t.elapsed = elapsed;
    }
    out
}

fn frames_commute(set: &PointSet, q: &Frame, phi: &Affinity) -> bool {
    let direct = equivariant_frames2(set, q).map(|f| f.image(phi));
    let moved = match (apply_affinity(phi, set), apply_affinity(phi, q)) {
        (Ok(s), Ok(f)) => equivariant_frames2(&s, &f),
        _ => return false,
    };
    direct.is_ok() && direct == moved
}

/// Invariance of the Laurent canonical form under a monomial factor, a sign
/// flip and a unimodular change of variables, and positivity of its
/// leading coefficient.
pub fn laurent_suite(dims: &[usize], trials: usize, seed: u64) -> Tally {
    let mut tally = Tally::new("laurent invariance");
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let d = dims[t % dims.len()];
        let p = random_polynomial(&mut rng, d);
        let linear = random_group_element(&mut rng, d);
        let lambda: Vec<Int> = (0..d)
            .map(|_| Int::from(rng.gen_range(-50i64..=50)))
            .collect();
        let change = Affinity::new(linear.matrix().clone(), lambda).expect("unimodular");
        let mut q = p.substitute(&change).expect("same dimension");
        if rng.gen() {
            q = q.negated();
        }
        let (cp, cq) = (canonicalize_laurent(&p), canonicalize_laurent(&q));
        let ok = match (&cp, &cq) {
            (Ok(a), Ok(b)) => a == b && a.leading().1.is_positive(),
            _ => false,
        };
        tally.record(ok, || format!("d={d} trial {t}: {p}"));
    }
    tally.elapsed = start.elapsed();
    tally
}

/// The Hermite form contract on random matrices up to 6x6 with entries up
/// to 128 bits.
pub fn hnf_suite(trials: usize, seed: u64) -> Tally {
    let mut tally = Tally::new("hnf contract");
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let m = random_matrix(&mut rng);
        let r = hnf_with_transform(&m);
        let v = random_group_element(&mut rng, m.rows()).matrix().clone();
        let moved = hnf_with_transform(&v.mul(&m).expect("square times conforming"));
        let ok = r.u.mul(&m).as_ref() == Ok(&r.h)
            && r.u.determinant().abs().is_one()
            && (r.h.rows(), r.h.cols()) == (m.rows(), m.cols())
            && is_row_hnf(&r.h)
            && moved.h == r.h;
        tally.record(ok, || format!("matrix {t}: {m:?}"));
    }
    tally.elapsed = start.elapsed();
    tally
}

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub trials: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub inject_fault: bool,
}

#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub tallies: Vec<Tally>,
    pub max_frameset: BTreeMap<usize, usize>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.tallies.iter().all(Tally::passed)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tallies {
            writeln!(f, "{t}")?;
        }
        for (d, m) in &self.max_frameset {
            writeln!(f, "max |FrameSet| d={d}: {m}")?;
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "ALL PASS"
            } else {
                "FAILURES"
            }
        )
    }
}

pub fn run(cfg: &SelftestConfig) -> SelftestReport {
    let inv = invariance_suite(&cfg.dims, cfg.trials, 64, cfg.seed, cfg.inject_fault);
    let small: Vec<usize> = cfg.dims.iter().copied().filter(|&d| d <= 3).collect();
    let small = if small.is_empty() { vec![1] } else { small };
    let mut tallies = vec![
        inv.invariance,
        inv.witness,
        inv.idempotence,
        inv.frame_bound,
    ];
    tallies.push(oracle_suite(cfg.trials, cfg.seed));
    tallies.extend(frames_suite(&cfg.dims, cfg.trials, cfg.seed));
    tallies.push(laurent_suite(&small, cfg.trials, cfg.seed));
    tallies.push(hnf_suite(cfg.trials, cfg.seed));
    SelftestReport {
        tallies,
        max_frameset: inv.max_frameset,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_reproducible() {
        let a = random_set(&mut ChaCha8Rng::seed_from_u64(5), 3, 20, 64);
        let b = random_set(&mut ChaCha8Rng::seed_from_u64(5), 3, 20, 64);
        assert_eq!(a, b);
        assert_eq!(a.len(), 20);
        assert!(a.max_bits() <= 64);
        let small = random_set(&mut ChaCha8Rng::seed_from_u64(5), 2, 50, 4);
        assert!(small.max_bits() <= 4);
    }

    #[test]
    fn rational_frames_are_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for d in 1..=4 {
            let f = random_rational_frame(&mut rng, d);
            assert!(f.len() <= d + 1);
        }
    }

    #[test]
    fn small_run_passes_and_fault_is_caught() {
        let cfg = SelftestConfig {
            trials: 3,
            seed: 1,
            dims: vec![1, 2],
            inject_fault: false,
        };
        assert!(run(&cfg).passed());
        let faulty = invariance_suite(&[2], 3, 16, 1, true);
        assert!(!faulty.invariance.passed());
    }
}
