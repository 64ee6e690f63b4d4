//! Seeded error injection and Monte Carlo campaigns.
//!
//! All randomness flows through ChaCha20, so a (seed, dimensions, spec)
//! triple pins the exact error matrix and a (seed, config) pair pins an
//! entire campaign, bit for bit, across platforms.

use crate::galois::Symbol;
use crate::gc::{BitMatrix, GcCode, GcError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChannelError {
    #[error("error weight {e} exceeds capacity {max}")]
    WeightOutOfRange { e: usize, max: usize },
    #[error(transparent)]
    Gc(#[from] GcError),
}

/// How the e flipped bits are placed in the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// Uniform over all n_i * n_o bit positions.
    Uniform,
    /// Uniform, but no column receives more than `cap` flips.
    PerColumnCapped { cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErrorSpec {
    pub weight: usize,
    pub seed: u64,
    pub placement: Placement,
}

/// Which decoder a campaign exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    Classic,
    /// Grouped decoding under the code's own group plan.
    Irs,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CampaignStats {
    pub trials: usize,
    /// Trials whose estimate equals the transmitted symbol matrix.
    pub successes: usize,
    /// Wrong or incomplete estimates the report marked as such.
    pub flagged: usize,
    /// Wrong estimates delivered with a clean report.
    pub silent: usize,
    /// Inner decodings performed per trial, averaged over trials.
    pub mean_inner: f64,
    /// Outer decoding attempts per iteration, averaged over all iterations.
    pub mean_outer: f64,
}

/// Flips exactly `spec.weight` distinct bits of `c`.
pub fn inject_errors(c: &BitMatrix, spec: &ErrorSpec) -> Result<BitMatrix, ChannelError> {
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    let mut r = c.clone();
    flip_random(&mut r, spec.weight, spec.placement, &mut rng)?;
    Ok(r)
}

fn flip_random(
    m: &mut BitMatrix,
    e: usize,
    placement: Placement,
    rng: &mut ChaCha20Rng,
) -> Result<(), ChannelError> {
    let total = m.total_bits();
    match placement {
        Placement::Uniform => {
            if e > total {
                return Err(ChannelError::WeightOutOfRange { e, max: total });
            }
            // partial Fisher-Yates: the first e slots end up holding a
            // uniform e-subset of all bit positions
            let mut idx: Vec<usize> = (0..total).collect();
            for i in 0..e {
                let j = rng.gen_range(i..total);
                idx.swap(i, j);
            }
            for &x in &idx[..e] {
                m.flip(x % m.n_i(), x / m.n_i());
            }
        }
        Placement::PerColumnCapped { cap } => {
            let max = (cap * m.n_o()).min(total);
            if e > max {
                return Err(ChannelError::WeightOutOfRange { e, max });
            }
            let cap = cap.min(m.n_i());
            let mut counts = vec![0usize; m.n_o()];
            let mut flipped = std::collections::HashSet::new();
            while flipped.len() < e {
                let x = rng.gen_range(0..total);
                let (i, j) = (x % m.n_i(), x / m.n_i());
                if counts[j] == cap || !flipped.insert(x) {
                    continue;
                }
                counts[j] += 1;
                m.flip(i, j);
            }
        }
    }
    Ok(())
}

/// 32-byte ChaCha seed for one trial: master seed, then the trial index,
/// both little-endian, zero-padded.
pub fn trial_seed(master: u64, trial: u64) -> [u8; 32] {
    let mut s = [0u8; 32];
    s[..8].copy_from_slice(&master.to_le_bytes());
    s[8..16].copy_from_slice(&trial.to_le_bytes());
    s
}

/// Runs `trials` independent encode / corrupt / decode rounds with fresh
/// random information words and exactly `e` flipped bits each, and tallies
/// the outcomes against the transmitted matrices.
pub fn monte_carlo_run(
    gc: &GcCode,
    decoder: DecoderKind,
    e: usize,
    trials: usize,
    seed: u64,
) -> Result<CampaignStats, ChannelError> {
    monte_carlo_run_with(gc, decoder, e, Placement::Uniform, trials, seed)
}

pub fn monte_carlo_run_with(
    gc: &GcCode,
    decoder: DecoderKind,
    e: usize,
    placement: Placement,
    trials: usize,
    seed: u64,
) -> Result<CampaignStats, ChannelError> {
    assert!(trials >= 1);
    let plan = match decoder {
        DecoderKind::Classic => None,
        DecoderKind::Irs => Some(gc.plan_groups()),
    };
    let field_size = 1u32 << gc.field().degree();
    let info_lengths = gc.info_lengths();

    let mut stats = CampaignStats {
        trials,
        successes: 0,
        flagged: 0,
        silent: 0,
        mean_inner: 0.0,
        mean_outer: 0.0,
    };
    let mut inner_total = 0usize;
    let mut outer_total = 0usize;
    let mut iteration_total = 0usize;

    for t in 0..trials {
        let mut rng = ChaCha20Rng::from_seed(trial_seed(seed, t as u64));
        let info: Vec<Vec<Symbol>> = info_lengths
            .iter()
            .map(|&k| (0..k).map(|_| rng.gen_range(0..field_size) as Symbol).collect())
            .collect();
        let a = gc.encode_outer(&info)?;
        let mut r = gc.matrix_from_symbols(&a);
        flip_random(&mut r, e, placement, &mut rng)?;

        let report = match &plan {
            None => gc.decode_classic(&r)?,
            Some(p) => gc.decode_grouped(&r, p)?,
        };
        inner_total += report.inner_performed;
        outer_total += report.outer_attempts;
        iteration_total += report.iterations.len();
        if report.estimate == a {
            stats.successes += 1;
        } else if report.is_clean() {
            stats.silent += 1;
        } else {
            stats.flagged += 1;
        }
    }

    stats.mean_inner = inner_total as f64 / trials as f64;
    stats.mean_outer = outer_total as f64 / iteration_total as f64;
    Ok(stats)
}
