//! Interleaved Reed-Solomon codes decoded collaboratively.
//!
//! A stack of l Reed-Solomon codes over the same field and length, hit by
//! column errors that corrupt whole columns of the stack. All rows then share
//! one error locator, and stacking every row's key equation into a single
//! linear system lets the joint decoder reach beyond half the minimum
//! distance: up to floor((dbar - 1 - tau) * l / (l + 1)) column errors under
//! tau column erasures, where dbar is the mean row distance. Decoding within
//! that extended radius can fail on unlucky error values (the stacked system
//! loses rank); within floor((min_d - 1 - tau) / 2) it cannot.

use crate::galois::Symbol;
use crate::reed_solomon::{
    erasure_locator, locator_roots, poly_mul_trunc, solve_affine, RsCode, RsError,
};
use thiserror::Error;

/// Upper bound on candidate locators enumerated from an underdetermined
/// stacked system before the attempt is abandoned.
const CANDIDATE_CAP: u64 = 4096;

/// Per-row codewords paired with the matching info words.
type RowsAndInfos = (Vec<Vec<Symbol>>, Vec<Vec<Symbol>>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IrsError {
    #[error("interleaving requires at least one row code")]
    Empty,
    #[error("row {level} has distance {d_o}, not above the joint radius {joint_radius}")]
    ConstraintViolated { level: usize, d_o: usize, joint_radius: i64 },
    #[error("row codes have different block lengths")]
    HeterogeneousLength,
    #[error("row codes live in different fields")]
    FieldMismatch,
    #[error("row count or length does not match the code stack")]
    ShapeMismatch,
    #[error("erasure positions must be strictly increasing and within the block")]
    BadErasures,
    #[error(transparent)]
    Rs(#[from] RsError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrsDecodeOutcome {
    Decoded {
        codewords: Vec<Vec<Symbol>>,
        infos: Vec<Vec<Symbol>>,
        /// Column error count the accepted locator accounts for.
        errors: usize,
        erasures: usize,
    },
    Failure,
}

#[derive(Debug, Clone)]
pub struct IrsCode {
    codes: Vec<RsCode>,
    n: usize,
    sum_d: usize,
    min_d: usize,
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

impl IrsCode {
    /// Stacks the given row codes. Every row distance must exceed the joint
    /// decoding radius at tau = 0, otherwise the collaborative decoder could
    /// claim more errors than the weakest row can express.
    pub fn new(codes: Vec<RsCode>) -> Result<Self, IrsError> {
        if codes.is_empty() {
            return Err(IrsError::Empty);
        }
        let n = codes[0].n();
        let modulus = codes[0].field().modulus();
        if codes.iter().any(|c| c.n() != n) {
            return Err(IrsError::HeterogeneousLength);
        }
        if codes.iter().any(|c| c.field().modulus() != modulus) {
            return Err(IrsError::FieldMismatch);
        }
        let sum_d: usize = codes.iter().map(|c| c.d()).sum();
        let min_d = codes.iter().map(|c| c.d()).min().unwrap();
        let ell = codes.len() as i64;
        let joint_radius = floor_div(sum_d as i64 - ell, ell + 1);
        if let Some((level, c)) = codes.iter().enumerate().find(|(_, c)| (c.d() as i64) <= joint_radius) {
            return Err(IrsError::ConstraintViolated { level, d_o: c.d(), joint_radius });
        }
        Ok(IrsCode { codes, n, sum_d, min_d })
    }

    pub fn rows(&self) -> usize {
        self.codes.len()
    }

    pub fn block_length(&self) -> usize {
        self.n
    }

    pub fn codes(&self) -> &[RsCode] {
        &self.codes
    }

    /// (joint, guaranteed) column-error radii under tau column erasures.
    /// Joint: floor((dbar - 1 - tau) * l / (l + 1)); decoding succeeds for
    /// almost all error values. Guaranteed: floor((min_d - 1 - tau) / 2);
    /// decoding always succeeds. Negative means no capacity left.
    pub fn collaborative_radius(&self, tau: usize) -> (i64, i64) {
        let ell = self.codes.len() as i64;
        let joint = floor_div(self.sum_d as i64 - ell * (1 + tau as i64), ell + 1);
        let guaranteed = floor_div(self.min_d as i64 - 1 - tau as i64, 2);
        (joint, guaranteed)
    }

    /// Joint errors-and-erasures decoding. `received` holds one word per row;
    /// `erasures` lists erased columns (shared by all rows, strictly
    /// increasing). Sweeps the column error count upward; at each count the
    /// stacked key equation pins the locator to an affine space, whose
    /// members are enumerated (up to a cap) and validated row by row. A
    /// uniquely validating locator is accepted; several distinct survivors
    /// mean the error count is ambiguous and decoding fails.
    pub fn decode_collaborative(
        &self,
        received: &[Vec<Symbol>],
        erasures: &[usize],
    ) -> Result<IrsDecodeOutcome, IrsError> {
        if received.len() != self.codes.len() {
            return Err(IrsError::ShapeMismatch);
        }
        if received.iter().any(|r| r.len() != self.n) {
            return Err(IrsError::ShapeMismatch);
        }
        if erasures.windows(2).any(|w| w[0] >= w[1]) || erasures.last().is_some_and(|&j| j >= self.n) {
            return Err(IrsError::BadErasures);
        }
        for (code, row) in self.codes.iter().zip(received) {
            code.check_symbols(row)?;
        }
        let tau = erasures.len();
        let field = self.codes[0].field();

        let filled: Vec<Vec<Symbol>> = received
            .iter()
            .map(|row| {
                let mut r = row.clone();
                for &j in erasures {
                    r[j] = 0;
                }
                r
            })
            .collect();
        let synd: Vec<Vec<Symbol>> = self
            .codes
            .iter()
            .zip(&filled)
            .map(|(c, r)| c.syndromes(r))
            .collect();
        let gamma = erasure_locator(field, erasures);
        let t: Vec<Vec<Symbol>> = synd
            .iter()
            .zip(&self.codes)
            .map(|(s, c)| poly_mul_trunc(field, s, &gamma, c.d() - 1))
            .collect();

        let (joint, _) = self.collaborative_radius(tau);
        let q = 1u64 << field.degree();
        let mut eps = 0usize;
        while (eps as i64) <= joint {
            let mut rows: Vec<Vec<Symbol>> = Vec::new();
            let mut rhs: Vec<Symbol> = Vec::new();
            for (l, code) in self.codes.iter().enumerate() {
                for i in (tau + eps)..code.d().saturating_sub(1) {
                    rows.push((1..=eps).map(|u| t[l][i - u]).collect());
                    rhs.push(t[l][i]);
                }
            }
            let Some((particular, kernel)) = solve_affine(field, rows, rhs) else {
                eps += 1;
                continue;
            };
            // an underdetermined system still pins the locator up to a small
            // affine space; enumerate it and keep candidates that validate
            let count = q.checked_pow(kernel.len() as u32).filter(|&c| c <= CANDIDATE_CAP);
            let Some(count) = count else {
                eps += 1;
                continue;
            };
            let mut survivors: Vec<RowsAndInfos> = Vec::new();
            for idx in 0..count {
                let mut tail = particular.clone();
                let mut rem = idx;
                for kv in &kernel {
                    let coef = (rem % q) as Symbol;
                    rem /= q;
                    if coef != 0 {
                        for (x, &kx) in tail.iter_mut().zip(kv) {
                            *x = field.add(*x, field.mul(coef, kx));
                        }
                    }
                }
                if eps > 0 && tail[eps - 1] == 0 {
                    continue;
                }
                let mut lam = Vec::with_capacity(eps + 1);
                lam.push(1);
                lam.extend(tail);

                let err_pos = locator_roots(field, &lam, self.n);
                if err_pos.len() != eps || err_pos.iter().any(|p| erasures.contains(p)) {
                    continue;
                }
                let mut pos = err_pos;
                pos.extend_from_slice(erasures);
                pos.sort_unstable();

                let Some(stack) = self.try_positions(&filled, &synd, &pos, erasures, eps) else {
                    continue;
                };
                if !survivors.contains(&stack) {
                    survivors.push(stack);
                }
            }
            match survivors.len() {
                0 => eps += 1,
                1 => {
                    let (codewords, infos) = survivors.pop().unwrap();
                    return Ok(IrsDecodeOutcome::Decoded { codewords, infos, errors: eps, erasures: tau });
                }
                // distinct valid explanations of the same size: ambiguous
                _ => return Ok(IrsDecodeOutcome::Failure),
            }
        }
        Ok(IrsDecodeOutcome::Failure)
    }

    /// Corrects every row at the given positions and validates the result;
    /// None if any row fails value solving, re-encoding, or the radius check.
    fn try_positions(
        &self,
        filled: &[Vec<Symbol>],
        synd: &[Vec<Symbol>],
        pos: &[usize],
        erasures: &[usize],
        eps: usize,
    ) -> Option<RowsAndInfos> {
        let mut codewords = Vec::with_capacity(self.codes.len());
        let mut infos = Vec::with_capacity(self.codes.len());
        for (l, code) in self.codes.iter().enumerate() {
            let corrected = code.apply_corrections(&filled[l], &synd[l], pos)?;
            if code.syndromes(&corrected).iter().any(|&s| s != 0) {
                return None;
            }
            let changed = (0..self.n)
                .filter(|&j| !erasures.contains(&j) && corrected[j] != filled[l][j])
                .count();
            if changed > eps {
                return None;
            }
            infos.push(code.info_from_codeword(&corrected).ok()?);
            codewords.push(corrected);
        }
        Some((codewords, infos))
    }
}
