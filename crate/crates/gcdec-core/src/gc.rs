//! Generalized concatenated codes: construction, encoding, and the
//! threshold-driven multi-trial decoders.
//!
//! Encoding stacks l outer Reed-Solomon codewords into a symbol matrix A,
//! then maps each column (l times m bits) through the nested inner code.
//! The designed distance is min_l { d_outer_l * d_inner_l }.
//!
//! The classic decoder works row by row: at level l it BMD-decodes every
//! column in the coset fixed by the rows already decided, then runs one
//! outer decode per erasure threshold in the ladder 0..=radius(l), erasing
//! columns whose inner distance estimate exceeds the threshold. Candidates
//! are ranked by a per-column cost (the inner estimate when the candidate
//! agrees with the inner result, its distance-complement when it does not)
//! and the first candidate below half the row's distance product is
//! accepted without running further attempts.
//!
//! The grouped decoder replaces runs of adjacent rows with a single
//! iteration: one inner pass at the group's first level recovers every
//! grouped row's chunk per column, whole columns are erased by a
//! collaborative threshold set, and an interleaved RS decoder recovers all
//! rows of the group jointly.

use crate::galois::{Field, Symbol};
use crate::inner::{InnerCodeError, InnerDecodeOutcome, NestedBinaryCode};
use crate::interleaved::{IrsCode, IrsDecodeOutcome, IrsError};
use crate::reed_solomon::{RsCode, RsDecodeOutcome, RsError};
use crate::thresholds::maximal_threshold_set;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GcError {
    #[error("{0}")]
    DimensionMismatch(String),
    #[error("expected {expected} rows/symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("group plan does not partition the rows of this code")]
    InvalidPlan,
    #[error(transparent)]
    Rs(#[from] RsError),
    #[error(transparent)]
    Irs(#[from] IrsError),
    #[error(transparent)]
    Inner(#[from] InnerCodeError),
}

/// A binary n_i x n_o matrix stored column-wise; bit i of `columns[j]` is
/// row i of column j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    columns: Vec<u128>,
    n_i: usize,
}

impl BitMatrix {
    pub fn zero(n_i: usize, n_o: usize) -> Self {
        assert!((1..=128).contains(&n_i));
        BitMatrix { columns: vec![0; n_o], n_i }
    }

    pub fn from_columns(columns: Vec<u128>, n_i: usize) -> Result<Self, GcError> {
        if !(1..=128).contains(&n_i) {
            return Err(GcError::DimensionMismatch(format!("column height {n_i} out of range")));
        }
        let excess = if n_i == 128 { 0 } else { u128::MAX << n_i };
        if columns.iter().any(|c| c & excess != 0) {
            return Err(GcError::DimensionMismatch(format!(
                "column has bits beyond height {n_i}"
            )));
        }
        Ok(BitMatrix { columns, n_i })
    }

    pub fn n_i(&self) -> usize {
        self.n_i
    }

    pub fn n_o(&self) -> usize {
        self.columns.len()
    }

    pub fn total_bits(&self) -> usize {
        self.n_i * self.columns.len()
    }

    pub fn columns(&self) -> &[u128] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.columns[j] >> i & 1 == 1
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        assert!(i < self.n_i);
        self.columns[j] ^= 1 << i;
    }

    /// Number of positions in which the two matrices differ.
    pub fn distance(&self, other: &BitMatrix) -> usize {
        assert_eq!((self.n_i, self.n_o()), (other.n_i, other.n_o()));
        self.columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }
}

/// One outer decoding attempt inside an iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttemptLog {
    pub threshold: i64,
    /// Erased columns in this attempt's word.
    pub tau: usize,
    /// Corrections the outer decoder applied; None when it failed.
    pub epsilon: Option<usize>,
    /// Doubled selection metric 2*t(k) of the candidate; None when the outer
    /// decoder failed.
    pub metric2: Option<u64>,
    pub accepted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterationStatus {
    /// A candidate passed the selection criterion.
    Recovered,
    /// No candidate passed; the lowest-metric one was used.
    Degraded,
    /// Every attempt failed; raw inner estimates were kept.
    Failed,
}

/// One decoding iteration: a single row (classic) or a row group (grouped).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationReport {
    pub first_row: usize,
    pub row_count: usize,
    pub status: IterationStatus,
    pub attempts: Vec<AttemptLog>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeReport {
    /// Estimated outer symbol matrix, one codeword-length row per level.
    pub estimate: Vec<Vec<Symbol>>,
    pub iterations: Vec<IterationReport>,
    pub inner_performed: usize,
    pub inner_skipped: usize,
    pub outer_attempts: usize,
}

impl DecodeReport {
    /// True when every iteration accepted a candidate by the criterion.
    pub fn is_clean(&self) -> bool {
        self.iterations.iter().all(|it| it.status == IterationStatus::Recovered)
    }
}

/// Consecutive rows decoded in one iteration, with the erasure thresholds
/// that iteration will try.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub first_row: usize,
    pub rows: usize,
    /// Sum of the member rows' outer distances (mean = sum / rows).
    pub sum_outer_d: usize,
    /// Inner distance at the group's first level.
    pub d_i: u32,
    pub thresholds: Vec<i64>,
}

impl GroupSpec {
    pub fn mean_outer_distance(&self) -> f64 {
        self.sum_outer_d as f64 / self.rows as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPlan {
    pub groups: Vec<GroupSpec>,
}

impl GroupPlan {
    pub fn is_all_singletons(&self) -> bool {
        self.groups.iter().all(|g| g.rows == 1)
    }
}

#[derive(Debug, Clone)]
pub struct GcCode {
    outer: Vec<RsCode>,
    inner: NestedBinaryCode,
    designed_distance: u64,
}

/// Outer-decoder input at one threshold: the inner result's level symbol
/// where the distance estimate is within the threshold, an erasure where it
/// exceeds it or the inner decoder failed.
pub fn attempt_word(outcomes: &[InnerDecodeOutcome], threshold: i64) -> Vec<Option<Symbol>> {
    outcomes
        .iter()
        .map(|o| match o {
            InnerDecodeOutcome::Decoded { delta, suffix_symbols, .. }
                if i64::from(*delta) <= threshold =>
            {
                Some(suffix_symbols[0])
            }
            _ => None,
        })
        .collect()
}

/// Doubled per-row selection metric 2*t(k): per column twice the inner
/// distance estimate when the candidate symbol matches the inner result,
/// twice its complement to d_i when it does not, and d_i itself where the
/// inner decoder failed. A candidate is credible when this stays below
/// 2 * (d_o * d_i / 2) = d_o * d_i.
pub fn row_metric2(d_i: u32, outcomes: &[InnerDecodeOutcome], candidate: &[Symbol]) -> u64 {
    group_metric2(d_i, outcomes, std::slice::from_ref(&candidate))
}

fn group_metric2<R: AsRef<[Symbol]>>(d_i: u32, outcomes: &[InnerDecodeOutcome], rows: &[R]) -> u64 {
    let d_i = u64::from(d_i);
    outcomes
        .iter()
        .enumerate()
        .map(|(j, o)| match o {
            InnerDecodeOutcome::Decoded { delta, suffix_symbols, .. } => {
                let matches = rows
                    .iter()
                    .enumerate()
                    .all(|(g, row)| row.as_ref()[j] == suffix_symbols[g]);
                if matches {
                    2 * u64::from(*delta)
                } else {
                    2 * (d_i - u64::from(*delta))
                }
            }
            InnerDecodeOutcome::Failure => d_i,
        })
        .sum()
}

impl GcCode {
    pub fn new(outer: Vec<RsCode>, inner: NestedBinaryCode) -> Result<Self, GcError> {
        if outer.is_empty() {
            return Err(GcError::DimensionMismatch("no outer codes".into()));
        }
        if inner.levels() != outer.len() {
            return Err(GcError::DimensionMismatch(format!(
                "inner code has {} levels for {} outer rows",
                inner.levels(),
                outer.len()
            )));
        }
        let field = outer[0].field();
        if inner.bits_per_level() != field.degree() as usize {
            return Err(GcError::DimensionMismatch(format!(
                "inner code carries {} bits per level, field symbols have {}",
                inner.bits_per_level(),
                field.degree()
            )));
        }
        if outer.iter().any(|c| c.field().modulus() != field.modulus() || c.n() != outer[0].n()) {
            return Err(GcError::DimensionMismatch(
                "outer rows must share one field and length".into(),
            ));
        }
        let designed_distance = outer
            .iter()
            .zip(inner.level_distances())
            .map(|(o, &di)| o.d() as u64 * u64::from(di))
            .min()
            .unwrap();
        Ok(GcCode { outer, inner, designed_distance })
    }

    pub fn levels(&self) -> usize {
        self.outer.len()
    }

    pub fn n_o(&self) -> usize {
        self.outer[0].n()
    }

    pub fn n_i(&self) -> usize {
        self.inner.block_length()
    }

    pub fn designed_distance(&self) -> u64 {
        self.designed_distance
    }

    pub fn outer(&self) -> &[RsCode] {
        &self.outer
    }

    pub fn inner(&self) -> &NestedBinaryCode {
        &self.inner
    }

    pub fn field(&self) -> &Field {
        self.outer[0].field()
    }

    /// Information symbols per row: k of each outer code.
    pub fn info_lengths(&self) -> Vec<usize> {
        self.outer.iter().map(|c| c.k()).collect()
    }

    pub fn encode(&self, info: &[Vec<Symbol>]) -> Result<BitMatrix, GcError> {
        if info.len() != self.levels() {
            return Err(GcError::LengthMismatch { expected: self.levels(), got: info.len() });
        }
        let a = self.encode_outer(info)?;
        Ok(self.matrix_from_symbols(&a))
    }

    /// Outer stage only: RS-encodes each info row into the symbol matrix A.
    pub fn encode_outer(&self, info: &[Vec<Symbol>]) -> Result<Vec<Vec<Symbol>>, GcError> {
        if info.len() != self.levels() {
            return Err(GcError::LengthMismatch { expected: self.levels(), got: info.len() });
        }
        let mut a = Vec::with_capacity(self.levels());
        for (code, row) in self.outer.iter().zip(info) {
            a.push(code.encode(row)?);
        }
        Ok(a)
    }

    /// Inner stage: maps each column of the symbol matrix through the nested
    /// code.
    pub fn matrix_from_symbols(&self, a: &[Vec<Symbol>]) -> BitMatrix {
        let columns = (0..self.n_o())
            .map(|j| {
                (0..self.levels())
                    .fold(0u128, |w, l| w ^ self.inner.level_contribution(l, a[l][j]))
            })
            .collect();
        BitMatrix { columns, n_i: self.n_i() }
    }

    /// Extracts the information rows from an estimated symbol matrix.
    /// Rows that are not codewords (possible after a failed iteration)
    /// come back as None.
    pub fn info_from_estimate(&self, estimate: &[Vec<Symbol>]) -> Vec<Option<Vec<Symbol>>> {
        self.outer
            .iter()
            .zip(estimate)
            .map(|(code, row)| code.info_from_codeword(row).ok())
            .collect()
    }

    fn check_received(&self, received: &BitMatrix) -> Result<(), GcError> {
        if received.n_i != self.n_i() || received.n_o() != self.n_o() {
            return Err(GcError::DimensionMismatch(format!(
                "received matrix is {}x{}, code needs {}x{}",
                received.n_i,
                received.n_o(),
                self.n_i(),
                self.n_o()
            )));
        }
        Ok(())
    }

    /// Classic level-by-level decoding. Guaranteed to reproduce the
    /// transmitted matrix whenever the channel flipped fewer than
    /// designed_distance / 2 bits.
    pub fn decode_classic(&self, received: &BitMatrix) -> Result<DecodeReport, GcError> {
        self.check_received(received)?;
        let mut state = DecodeState::new(self.levels(), self.n_o());
        let mut prefix = vec![0u128; self.n_o()];
        for level in 0..self.levels() {
            let it = self.classic_iteration(level, received, &mut prefix, &mut state)?;
            state.iterations.push(it);
        }
        Ok(state.into_report())
    }

    /// Greedy left-to-right grouping: a run of adjacent rows joins one
    /// iteration while every member's outer distance exceeds the joint
    /// decoding radius and the group's mean outer distance times the
    /// first-level inner distance still covers the designed distance.
    /// Rows that cannot group become classic singleton iterations.
    pub fn plan_groups(&self) -> GroupPlan {
        let d = self.designed_distance;
        let dists: Vec<usize> = self.outer.iter().map(|c| c.d()).collect();
        let mut groups = Vec::new();
        let mut v = 0;
        while v < self.levels() {
            let mut rows = 1;
            while v + rows < self.levels() && self.group_admissible(&dists, v, rows + 1, d) {
                rows += 1;
            }
            let d_i = self.inner.level_distances()[v];
            let thresholds = if rows == 1 {
                (0..=i64::from(self.inner.radius(v))).collect()
            } else {
                maximal_threshold_set(d_i, rows as u32)
                    .expect("group admissibility implies d_i >= 2, rows >= 2")
                    .effective_integer_thresholds()
            };
            groups.push(GroupSpec {
                first_row: v,
                rows,
                sum_outer_d: dists[v..v + rows].iter().sum(),
                d_i,
                thresholds,
            });
            v += rows;
        }
        GroupPlan { groups }
    }

    fn group_admissible(&self, dists: &[usize], v: usize, rows: usize, d: u64) -> bool {
        let d_i = u64::from(self.inner.level_distances()[v]);
        if d_i < 2 {
            return false;
        }
        let sum_d: usize = dists[v..v + rows].iter().sum();
        // joint radius floor((dbar - 1) * rows / (rows + 1)) must stay below
        // every member's outer distance
        let r = (sum_d as i64 - rows as i64).div_euclid(rows as i64 + 1);
        if dists[v..v + rows].iter().any(|&dl| dl as i64 <= r) {
            return false;
        }
        // the group's guarantee dbar * d_i / 2 must still cover d / 2
        sum_d as u64 * d_i >= d * rows as u64
    }

    /// Grouped decoding per the given plan. Singleton groups run the classic
    /// row iteration unchanged; larger groups decode their rows jointly as
    /// an interleaved RS code after a single inner pass at the group's first
    /// level.
    pub fn decode_grouped(&self, received: &BitMatrix, plan: &GroupPlan) -> Result<DecodeReport, GcError> {
        self.check_received(received)?;
        let mut next = 0;
        for g in &plan.groups {
            if g.first_row != next || g.rows == 0 {
                return Err(GcError::InvalidPlan);
            }
            next += g.rows;
        }
        if next != self.levels() {
            return Err(GcError::InvalidPlan);
        }

        let mut state = DecodeState::new(self.levels(), self.n_o());
        let mut prefix = vec![0u128; self.n_o()];
        for group in &plan.groups {
            let it = if group.rows == 1 {
                self.classic_iteration(group.first_row, received, &mut prefix, &mut state)?
            } else {
                self.group_iteration(group, received, &mut prefix, &mut state)?
            };
            state.iterations.push(it);
        }
        Ok(state.into_report())
    }

    fn inner_pass(&self, level: usize, received: &BitMatrix, prefix: &[u128]) -> Vec<InnerDecodeOutcome> {
        received
            .columns
            .iter()
            .zip(prefix)
            .map(|(&col, &pw)| self.inner.coset_bmd_decode_word(col, level, pw))
            .collect()
    }

    fn classic_iteration(
        &self,
        level: usize,
        received: &BitMatrix,
        prefix: &mut [u128],
        state: &mut DecodeState,
    ) -> Result<IterationReport, GcError> {
        let outcomes = self.inner_pass(level, received, prefix);
        state.inner_performed += self.n_o();
        let d_i = self.inner.level_distances()[level];
        let d_o = self.outer[level].d() as u64;
        let budget2 = d_o * u64::from(d_i);

        let mut attempts = Vec::new();
        let mut accepted: Option<Vec<Symbol>> = None;
        let mut fallback: Option<(u64, Vec<Symbol>)> = None;
        for threshold in 0..=i64::from(self.inner.radius(level)) {
            let word = attempt_word(&outcomes, threshold);
            let tau = word.iter().filter(|s| s.is_none()).count();
            state.outer_attempts += 1;
            match self.outer[level].decode_ee(&word)? {
                RsDecodeOutcome::Decoded { codeword, errors, .. } => {
                    let m2 = row_metric2(d_i, &outcomes, &codeword);
                    let accept = m2 < budget2;
                    attempts.push(AttemptLog {
                        threshold,
                        tau,
                        epsilon: Some(errors),
                        metric2: Some(m2),
                        accepted: accept,
                    });
                    if accept {
                        accepted = Some(codeword);
                        break;
                    }
                    if fallback.as_ref().is_none_or(|(bm, _)| m2 < *bm) {
                        fallback = Some((m2, codeword));
                    }
                }
                RsDecodeOutcome::Failure => attempts.push(AttemptLog {
                    threshold,
                    tau,
                    epsilon: None,
                    metric2: None,
                    accepted: false,
                }),
            }
        }

        let (status, row) = match (accepted, fallback) {
            (Some(row), _) => (IterationStatus::Recovered, row),
            (None, Some((_, row))) => (IterationStatus::Degraded, row),
            (None, None) => (IterationStatus::Failed, best_effort_rows(&outcomes, 1).pop().unwrap()),
        };
        for (j, (&sym, pw)) in row.iter().zip(prefix.iter_mut()).enumerate() {
            debug_assert!(j < self.n_o());
            *pw ^= self.inner.level_contribution(level, sym);
        }
        state.estimate[level] = row;
        Ok(IterationReport { first_row: level, row_count: 1, status, attempts })
    }

    fn group_iteration(
        &self,
        group: &GroupSpec,
        received: &BitMatrix,
        prefix: &mut [u128],
        state: &mut DecodeState,
    ) -> Result<IterationReport, GcError> {
        let v = group.first_row;
        let lt = group.rows;
        let outcomes = self.inner_pass(v, received, prefix);
        state.inner_performed += self.n_o();
        state.inner_skipped += self.n_o() * (lt - 1);

        let irs = IrsCode::new(self.outer[v..v + lt].to_vec())?;
        let d_i = group.d_i;
        let min_d_o = self.outer[v..v + lt].iter().map(|c| c.d()).min().unwrap() as u64;
        let budget2 = min_d_o * u64::from(d_i);

        let mut attempts = Vec::new();
        let mut accepted: Option<Vec<Vec<Symbol>>> = None;
        let mut fallback: Option<(u64, Vec<Vec<Symbol>>)> = None;
        for &threshold in &group.thresholds {
            let mut erasures = Vec::new();
            let mut rows = vec![vec![0 as Symbol; self.n_o()]; lt];
            for (j, o) in outcomes.iter().enumerate() {
                match o {
                    InnerDecodeOutcome::Decoded { delta, suffix_symbols, .. }
                        if i64::from(*delta) <= threshold =>
                    {
                        for (g, row) in rows.iter_mut().enumerate() {
                            row[j] = suffix_symbols[g];
                        }
                    }
                    _ => erasures.push(j),
                }
            }
            let tau = erasures.len();
            state.outer_attempts += 1;
            match irs.decode_collaborative(&rows, &erasures)? {
                IrsDecodeOutcome::Decoded { codewords, errors, .. } => {
                    let m2 = group_metric2(d_i, &outcomes, &codewords);
                    let accept = m2 < budget2;
                    attempts.push(AttemptLog {
                        threshold,
                        tau,
                        epsilon: Some(errors),
                        metric2: Some(m2),
                        accepted: accept,
                    });
                    if accept {
                        accepted = Some(codewords);
                        break;
                    }
                    if fallback.as_ref().is_none_or(|(bm, _)| m2 < *bm) {
                        fallback = Some((m2, codewords));
                    }
                }
                IrsDecodeOutcome::Failure => attempts.push(AttemptLog {
                    threshold,
                    tau,
                    epsilon: None,
                    metric2: None,
                    accepted: false,
                }),
            }
        }

        let (status, rows) = match (accepted, fallback) {
            (Some(rows), _) => (IterationStatus::Recovered, rows),
            (None, Some((_, rows))) => (IterationStatus::Degraded, rows),
            (None, None) => (IterationStatus::Failed, best_effort_rows(&outcomes, lt)),
        };
        for (g, row) in rows.into_iter().enumerate() {
            for (j, pw) in prefix.iter_mut().enumerate() {
                *pw ^= self.inner.level_contribution(v + g, row[j]);
            }
            state.estimate[v + g] = row;
        }
        Ok(IterationReport { first_row: v, row_count: lt, status, attempts })
    }
}

/// Raw inner estimates for a failed iteration: the decoded chunk where the
/// inner decoder produced one, zero elsewhere.
fn best_effort_rows(outcomes: &[InnerDecodeOutcome], rows: usize) -> Vec<Vec<Symbol>> {
    (0..rows)
        .map(|g| {
            outcomes
                .iter()
                .map(|o| match o {
                    InnerDecodeOutcome::Decoded { suffix_symbols, .. } => suffix_symbols[g],
                    InnerDecodeOutcome::Failure => 0,
                })
                .collect()
        })
        .collect()
}

struct DecodeState {
    estimate: Vec<Vec<Symbol>>,
    iterations: Vec<IterationReport>,
    inner_performed: usize,
    inner_skipped: usize,
    outer_attempts: usize,
}

impl DecodeState {
    fn new(levels: usize, n_o: usize) -> Self {
        DecodeState {
            estimate: vec![vec![0; n_o]; levels],
            iterations: Vec::with_capacity(levels),
            inner_performed: 0,
            inner_skipped: 0,
            outer_attempts: 0,
        }
    }

    fn into_report(self) -> DecodeReport {
        DecodeReport {
            estimate: self.estimate,
            iterations: self.iterations,
            inner_performed: self.inner_performed,
            inner_skipped: self.inner_skipped,
            outer_attempts: self.outer_attempts,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn inner86() -> NestedBinaryCode {
        let rows = vec![0b11, 0b1100, 0b101, 0b10101010, 0b11001100, 0b11110000];
        NestedBinaryCode::new(rows, 2, 3, 8, Some(vec![2, 4])).unwrap()
    }

    /// Outer (7,3,5) then (7,5,3): designed distance min(5*2, 3*4) = 10.
    fn gc_classic() -> GcCode {
        let f = Field::with_default_modulus(3).unwrap();
        let outer = vec![RsCode::new(f.clone(), 7, 3).unwrap(), RsCode::new(f, 7, 5).unwrap()];
        GcCode::new(outer, inner86()).unwrap()
    }

    /// Outer (7,5,3) then (7,2,6): designed distance min(3*2, 6*4) = 6;
    /// the two rows group (mean distance 4.5, joint radius 2).
    fn gc_grouped() -> GcCode {
        let f = Field::with_default_modulus(3).unwrap();
        let outer = vec![RsCode::new(f.clone(), 7, 5).unwrap(), RsCode::new(f, 7, 2).unwrap()];
        GcCode::new(outer, inner86()).unwrap()
    }

    fn random_info(gc: &GcCode, rng: &mut ChaCha20Rng) -> Vec<Vec<Symbol>> {
        gc.info_lengths()
            .iter()
            .map(|&k| (0..k).map(|_| rng.gen_range(0..8) as Symbol).collect())
            .collect()
    }

    fn flip_random_bits(m: &mut BitMatrix, e: usize, rng: &mut ChaCha20Rng) {
        let total = m.total_bits();
        let mut idx: Vec<usize> = (0..total).collect();
        for i in 0..e {
            let j = rng.gen_range(i..total);
            idx.swap(i, j);
        }
        for &x in &idx[..e] {
            m.flip(x % m.n_i(), x / m.n_i());
        }
    }

    #[test]
    fn designed_distances() {
        assert_eq!(gc_classic().designed_distance(), 10);
        assert_eq!(gc_grouped().designed_distance(), 6);
    }

    #[test]
    fn rejects_mismatched_construction() {
        let f = Field::with_default_modulus(3).unwrap();
        let one_row = vec![RsCode::new(f.clone(), 7, 3).unwrap()];
        assert!(matches!(
            GcCode::new(one_row, inner86()),
            Err(GcError::DimensionMismatch(_))
        ));
        let f4 = Field::with_default_modulus(4).unwrap();
        let wrong_m = vec![
            RsCode::new(f4.clone(), 15, 7).unwrap(),
            RsCode::new(f4, 15, 11).unwrap(),
        ];
        assert!(matches!(
            GcCode::new(wrong_m, inner86()),
            Err(GcError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn encode_produces_inner_codewords() {
        let gc = gc_classic();
        let mut rng = ChaCha20Rng::seed_from_u64(31);
        for _ in 0..100 {
            let info = random_info(&gc, &mut rng);
            let m = gc.encode(&info).unwrap();
            for &col in m.columns() {
                assert!(gc.inner().info_of_codeword(col).is_some());
            }
        }
    }

    #[test]
    fn zero_info_encodes_to_zero() {
        let gc = gc_classic();
        let info = vec![vec![0; 3], vec![0; 5]];
        assert_eq!(gc.encode(&info).unwrap(), BitMatrix::zero(8, 7));
    }

    #[test]
    fn attempt_word_three_case_rule() {
        let outcomes = vec![
            InnerDecodeOutcome::Decoded { codeword: 0, delta: 3, suffix_symbols: vec![5, 0] },
            InnerDecodeOutcome::Decoded { codeword: 0, delta: 0, suffix_symbols: vec![2, 0] },
            InnerDecodeOutcome::Failure,
        ];
        assert_eq!(attempt_word(&outcomes, 2), vec![None, Some(2), None]);
        assert_eq!(attempt_word(&outcomes, 5), vec![Some(5), Some(2), None]);
    }

    #[test]
    fn metric_counts_mismatches_by_distance_complement() {
        let outcomes = vec![
            InnerDecodeOutcome::Decoded { codeword: 0, delta: 3, suffix_symbols: vec![5] },
            InnerDecodeOutcome::Failure,
        ];
        // mismatch costs 2*(20 - 3) = 34, failure costs 20
        assert_eq!(row_metric2(20, &outcomes, &[4, 0]), 34 + 20);
        // match costs 2*3 = 6
        assert_eq!(row_metric2(20, &outcomes, &[5, 0]), 6 + 20);
    }

    #[test]
    fn error_free_round_trip_both_decoders() {
        let gc = gc_grouped();
        let mut rng = ChaCha20Rng::seed_from_u64(32);
        let info = random_info(&gc, &mut rng);
        let a = gc.encode_outer(&info).unwrap();
        let m = gc.matrix_from_symbols(&a);

        let classic = gc.decode_classic(&m).unwrap();
        assert_eq!(classic.estimate, a);
        assert!(classic.is_clean());
        assert_eq!(classic.inner_performed, 14);
        assert_eq!(classic.inner_skipped, 0);
        // first attempt of each row accepts with metric 0
        for it in &classic.iterations {
            assert_eq!(it.attempts.len(), 1);
            assert_eq!(it.attempts[0].metric2, Some(0));
        }

        let plan = gc.plan_groups();
        assert_eq!(plan.groups.len(), 1);
        assert_eq!((plan.groups[0].first_row, plan.groups[0].rows), (0, 2));
        assert_eq!(plan.groups[0].thresholds, vec![0]);
        let grouped = gc.decode_grouped(&m, &plan).unwrap();
        assert_eq!(grouped.estimate, a);
        assert!(grouped.is_clean());
        assert_eq!(grouped.inner_performed, 7);
        assert_eq!(grouped.inner_skipped, 7);
    }

    #[test]
    fn classic_plan_stays_singleton() {
        // mean outer distance 4 against designed distance 10: grouping the
        // two rows would shrink the guarantee, so the plan must not group
        let plan = gc_classic().plan_groups();
        assert_eq!(plan.groups.len(), 2);
        assert!(plan.is_all_singletons());
        assert_eq!(plan.groups[0].thresholds, vec![0]);
        assert_eq!(plan.groups[1].thresholds, vec![0, 1]);
    }

    #[test]
    fn classic_corrects_within_half_distance() {
        let gc = gc_classic();
        let mut rng = ChaCha20Rng::seed_from_u64(33);
        for _ in 0..300 {
            let info = random_info(&gc, &mut rng);
            let a = gc.encode_outer(&info).unwrap();
            let mut m = gc.matrix_from_symbols(&a);
            let e = rng.gen_range(0..=4);
            flip_random_bits(&mut m, e, &mut rng);
            let report = gc.decode_classic(&m).unwrap();
            assert_eq!(report.estimate, a, "classic decode failed at e={e}");
            assert!(report.is_clean());
        }
    }

    #[test]
    fn grouped_corrects_within_half_distance() {
        let gc = gc_grouped();
        let plan = gc.plan_groups();
        let mut rng = ChaCha20Rng::seed_from_u64(34);
        for _ in 0..300 {
            let info = random_info(&gc, &mut rng);
            let a = gc.encode_outer(&info).unwrap();
            let mut m = gc.matrix_from_symbols(&a);
            let e = rng.gen_range(0..=2);
            flip_random_bits(&mut m, e, &mut rng);
            let report = gc.decode_grouped(&m, &plan).unwrap();
            assert_eq!(report.estimate, a, "grouped decode failed at e={e}");
            assert!(report.is_clean());
        }
    }

    #[test]
    fn singleton_plan_reports_identical_to_classic() {
        let gc = gc_classic();
        let plan = gc.plan_groups();
        assert!(plan.is_all_singletons());
        let mut rng = ChaCha20Rng::seed_from_u64(35);
        for _ in 0..60 {
            let info = random_info(&gc, &mut rng);
            let mut m = gc.encode(&info).unwrap();
            // also beyond the guarantee: the reports must agree bit for bit
            let e = rng.gen_range(0..=8);
            flip_random_bits(&mut m, e, &mut rng);
            let classic = gc.decode_classic(&m).unwrap();
            let grouped = gc.decode_grouped(&m, &plan).unwrap();
            assert_eq!(classic, grouped);
        }
    }

    #[test]
    fn invalid_plans_are_rejected() {
        let gc = gc_classic();
        let m = BitMatrix::zero(8, 7);
        let bad = GroupPlan {
            groups: vec![GroupSpec {
                first_row: 0,
                rows: 1,
                sum_outer_d: 5,
                d_i: 2,
                thresholds: vec![0],
            }],
        };
        assert_eq!(gc.decode_grouped(&m, &bad).unwrap_err(), GcError::InvalidPlan);
    }

    #[test]
    fn erasure_count_non_increasing_in_threshold() {
        let gc = gc_classic();
        let mut rng = ChaCha20Rng::seed_from_u64(36);
        let info = random_info(&gc, &mut rng);
        let mut m = gc.encode(&info).unwrap();
        flip_random_bits(&mut m, 6, &mut rng);
        let outcomes = gc.inner_pass(1, &m, &[0; 7]);
        let mut prev = usize::MAX;
        for t in 0..=1 {
            let tau = attempt_word(&outcomes, t).iter().filter(|s| s.is_none()).count();
            assert!(tau <= prev);
            prev = tau;
        }
    }
}
