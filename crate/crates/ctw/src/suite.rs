//! Preset collections of generated instances.

use ctw_core::gen::{generate, GenError, GenMode, GenParams};
use ctw_core::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Parameters of the `i`-th small instance: `k <= 8`, cycling through all
/// constraint mixes, every fifth one unsatisfiable.
pub fn small_params(seed: u64, i: usize) -> GenParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let inst_seed = rng.gen();
    let mode = match i % 10 {
        0 | 5 => GenMode::Unsatisfiable,
        3 => GenMode::DsOnly,
        7 => GenMode::AtomicOnly,
        _ => GenMode::Satisfiable,
    };
    let b = if mode == GenMode::AtomicOnly { 0 } else { rng.gen_range(0..=3) };
    let min_n = usize::from(b == 0 && mode == GenMode::Unsatisfiable) * 2;
    let n = rng.gen_range(min_n..=8 - 2 * b);
    let mut p = GenParams::new(b, n, mode, inst_seed);
    p.p_atomic = rng.gen_range(0.05..0.35);
    p.p_disjunctive = rng.gen_range(0.0..0.3);
    p.p_soft = rng.gen_range(0.0..0.25);
    p.ds_count = rng.gen_range(0..=2 * b);
    p
}

/// Parameters of the `i`-th anytime instance: `k` in `[lo, hi]`, satisfiable,
/// densities typical of real cable trees.
pub fn anytime_params(seed: u64, i: usize, lo: usize, hi: usize) -> GenParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA5A5 ^ (i as u64).wrapping_mul(0xD1B5_4A32_D192_ED03));
    let k = rng.gen_range(lo..=hi);
    let b = rng.gen_range(k / 4..=k / 2);
    let mut p = GenParams::new(b, k - 2 * b, GenMode::Satisfiable, rng.gen());
    p.p_atomic = rng.gen_range(0.02..0.08);
    p.p_disjunctive = rng.gen_range(0.0..0.02);
    p.ds_count = rng.gen_range(0..=b.min(4));
    p
}

pub struct Suite {
    pub small: Vec<(String, Instance)>,
    pub anytime: Vec<(String, Instance)>,
}

pub fn generate_suite(seed: u64, small: usize, anytime: usize) -> Result<Suite, GenError> {
    Ok(Suite {
        small: (0..small)
            .map(|i| Ok((format!("small/s{i:03}"), generate(&small_params(seed, i))?)))
            .collect::<Result<_, GenError>>()?,
        anytime: (0..anytime)
            .map(|i| Ok((format!("anytime/a{i:03}"), generate(&anytime_params(seed, i, 20, 50))?)))
            .collect::<Result<_, GenError>>()?,
    })
}
