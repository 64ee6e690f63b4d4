//! Nested binary inner codes and their coset decoders.
//!
//! A nested code is an [n, l*m] binary linear code whose generator rows are
//! ordered by level: level l owns rows [l*m, (l+1)*m). The span of rows
//! l*m..k forms the level-l subcode, and its minimum distance grows (weakly)
//! with l. Decoding at level l assumes the first l*m information bits are
//! already known, subtracts their contribution, and finds the nearest word
//! of the level-l subcode by exhaustive search. Words fit in a u128, so
//! block lengths up to 128 bits are supported.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InnerCodeError {
    #[error("generator rows are linearly dependent")]
    RankDeficient,
    #[error("claimed distance {claimed} at level {level}, exhaustive enumeration found {actual}")]
    DistanceMismatch { level: usize, claimed: u32, actual: u32 },
    #[error("level distances must be non-decreasing, got {0:?}")]
    NonMonotoneDistances(Vec<u32>),
    #[error("{0}")]
    DimensionMismatch(String),
    #[error("dimension {0} exceeds the exhaustive-verification limit; supply claimed distances")]
    DistancesRequired(usize),
    #[error("expected {expected} bits, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Largest dimension for which construction verifies distances exhaustively.
const VERIFY_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InnerDecodeOutcome {
    Decoded {
        /// Nearest codeword of the level subcode (prefix contribution included).
        codeword: u128,
        /// Hamming distance from the received word to `codeword`.
        delta: u32,
        /// Information chunks for the decoded level and everything below it,
        /// one m-bit symbol per level, starting at the level that was decoded.
        suffix_symbols: Vec<u16>,
    },
    Failure,
}

impl InnerDecodeOutcome {
    /// The decoded level's own m-bit information chunk, if decoding succeeded.
    pub fn info_symbol(&self) -> Option<u16> {
        match self {
            InnerDecodeOutcome::Decoded { suffix_symbols, .. } => Some(suffix_symbols[0]),
            InnerDecodeOutcome::Failure => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NestedBinaryCode {
    n_i: usize,
    m: usize,
    ell: usize,
    rows: Vec<u128>,
    level_distances: Vec<u32>,
    distances_verified: bool,
    // reduced basis with combination tracking, for inverting codewords
    inverse_basis: Vec<(u128, u128, u32)>, // (reduced row, info combination, pivot bit)
}

/// Minimum weight over the nonzero span of `rows`, by Gray-code enumeration.
fn span_min_weight(rows: &[u128]) -> u32 {
    let mut word: u128 = 0;
    let mut best = u32::MAX;
    for i in 1u64..1u64 << rows.len() {
        word ^= rows[i.trailing_zeros() as usize];
        best = best.min(word.count_ones());
    }
    best
}

fn rank(rows: &[u128]) -> usize {
    let mut basis: Vec<u128> = Vec::new();
    let mut r = 0;
    for &row in rows {
        let mut w = row;
        for &b in &basis {
            w = w.min(w ^ b);
        }
        if w != 0 {
            basis.push(w);
            basis.sort_unstable_by(|a, b| b.cmp(a));
            r += 1;
        }
    }
    r
}

impl NestedBinaryCode {
    /// Validates dimensions and rank, then computes (or verifies) the per-level
    /// subcode distances. Exhaustive enumeration is mandatory for k <= 20;
    /// larger codes must supply claimed distances, which are recorded
    /// unverified (see [`distances_verified`](Self::distances_verified)).
    pub fn new(
        rows: Vec<u128>,
        ell: usize,
        m: usize,
        n_i: usize,
        claimed_distances: Option<Vec<u32>>,
    ) -> Result<Self, InnerCodeError> {
        let k = ell * m;
        if ell == 0 || m == 0 || rows.len() != k {
            return Err(InnerCodeError::DimensionMismatch(format!(
                "need ell*m = {} generator rows, got {}",
                k,
                rows.len()
            )));
        }
        if k > n_i || n_i > 128 {
            return Err(InnerCodeError::DimensionMismatch(format!(
                "dimension {k} and length {n_i} must satisfy k <= n <= 128"
            )));
        }
        let mask_excess = if n_i == 128 { 0 } else { u128::MAX << n_i };
        if rows.iter().any(|r| r & mask_excess != 0) {
            return Err(InnerCodeError::DimensionMismatch(format!(
                "generator row has bits beyond length {n_i}"
            )));
        }
        if rank(&rows) != k {
            return Err(InnerCodeError::RankDeficient);
        }

        let (level_distances, distances_verified) = if k <= VERIFY_LIMIT {
            let computed: Vec<u32> = (0..ell).map(|l| span_min_weight(&rows[l * m..])).collect();
            if let Some(claimed) = claimed_distances {
                if claimed.len() != ell {
                    return Err(InnerCodeError::DimensionMismatch(format!(
                        "claimed {} level distances for {} levels",
                        claimed.len(),
                        ell
                    )));
                }
                for (level, (&c, &a)) in claimed.iter().zip(&computed).enumerate() {
                    if c != a {
                        return Err(InnerCodeError::DistanceMismatch {
                            level,
                            claimed: c,
                            actual: a,
                        });
                    }
                }
            }
            (computed, true)
        } else {
            match claimed_distances {
                Some(c) if c.len() == ell => (c, false),
                Some(c) => {
                    return Err(InnerCodeError::DimensionMismatch(format!(
                        "claimed {} level distances for {} levels",
                        c.len(),
                        ell
                    )))
                }
                None => return Err(InnerCodeError::DistancesRequired(k)),
            }
        };
        if level_distances.windows(2).any(|w| w[0] > w[1]) {
            return Err(InnerCodeError::NonMonotoneDistances(level_distances));
        }
        if level_distances[0] == 0 {
            return Err(InnerCodeError::DimensionMismatch(
                "zero minimum distance".into(),
            ));
        }

        // row-reduce with combination tracking so codewords can be inverted
        let mut inverse_basis: Vec<(u128, u128, u32)> = Vec::new();
        for (i, &row) in rows.iter().enumerate() {
            let mut w = row;
            let mut c: u128 = 1 << i;
            for &(bw, bc, piv) in &inverse_basis {
                if w >> piv & 1 == 1 {
                    w ^= bw;
                    c ^= bc;
                }
            }
            debug_assert!(w != 0, "full rank was already checked");
            inverse_basis.push((w, c, 127 - w.leading_zeros()));
            inverse_basis.sort_unstable_by_key(|&(_, _, p)| std::cmp::Reverse(p));
        }

        Ok(NestedBinaryCode {
            n_i,
            m,
            ell,
            rows,
            level_distances,
            distances_verified,
            inverse_basis,
        })
    }

    pub fn block_length(&self) -> usize {
        self.n_i
    }

    pub fn levels(&self) -> usize {
        self.ell
    }

    pub fn bits_per_level(&self) -> usize {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.ell * self.m
    }

    pub fn level_distances(&self) -> &[u32] {
        &self.level_distances
    }

    /// False when the code was built from unverified claimed distances (k > 20).
    pub fn distances_verified(&self) -> bool {
        self.distances_verified
    }

    pub fn generator_rows(&self) -> &[u128] {
        &self.rows
    }

    /// BMD correction radius of the level-l subcode.
    pub fn radius(&self, level: usize) -> u32 {
        (self.level_distances[level] - 1) / 2
    }

    pub fn encode(&self, info_bits: &[bool]) -> Result<u128, InnerCodeError> {
        if info_bits.len() != self.dimension() {
            return Err(InnerCodeError::LengthMismatch {
                expected: self.dimension(),
                got: info_bits.len(),
            });
        }
        let mut w = 0;
        for (i, &b) in info_bits.iter().enumerate() {
            if b {
                w ^= self.rows[i];
            }
        }
        Ok(w)
    }

    /// Contribution of a single level's m-bit chunk to a codeword.
    pub fn level_contribution(&self, level: usize, chunk: u16) -> u128 {
        let mut w = 0;
        for i in 0..self.m {
            if chunk >> i & 1 == 1 {
                w ^= self.rows[level * self.m + i];
            }
        }
        w
    }

    /// Inverts a codeword back to its information bits; None if the word is
    /// not in the code.
    pub fn info_of_codeword(&self, codeword: u128) -> Option<Vec<bool>> {
        let mut w = codeword;
        let mut combo: u128 = 0;
        for &(bw, bc, piv) in &self.inverse_basis {
            if w >> piv & 1 == 1 {
                w ^= bw;
                combo ^= bc;
            }
        }
        if w != 0 {
            return None;
        }
        Some((0..self.dimension()).map(|i| combo >> i & 1 == 1).collect())
    }

    /// Nearest-codeword decoding in the coset fixed by the already-decided
    /// prefix bits (levels below `level`). Exhausts the 2^((ell-l)*m) words of
    /// the level subcode; within the BMD radius the minimum is unique.
    ///
    /// Panics if `fixed_prefix` does not hold exactly level*m bits.
    pub fn coset_bmd_decode(
        &self,
        received: u128,
        level: usize,
        fixed_prefix: &[bool],
    ) -> InnerDecodeOutcome {
        assert!(level < self.ell, "level {level} out of range");
        assert_eq!(
            fixed_prefix.len(),
            level * self.m,
            "prefix must hold {} bits",
            level * self.m
        );
        let mut prefix_word = 0u128;
        for (i, &b) in fixed_prefix.iter().enumerate() {
            if b {
                prefix_word ^= self.rows[i];
            }
        }
        self.coset_bmd_decode_word(received, level, prefix_word)
    }

    /// Same as [`coset_bmd_decode`](Self::coset_bmd_decode), but takes the
    /// prefix contribution as an already-encoded word. The iterative decoders
    /// maintain this word incrementally.
    pub fn coset_bmd_decode_word(
        &self,
        received: u128,
        level: usize,
        prefix_word: u128,
    ) -> InnerDecodeOutcome {
        let lm = level * self.m;
        let nsuf = self.dimension() - lm;
        let suffix_rows = &self.rows[lm..];
        let mut word = prefix_word;
        let mut best_delta = (received ^ word).count_ones();
        let mut best_combo: u64 = 0;
        for i in 1u64..1u64 << nsuf {
            word ^= suffix_rows[i.trailing_zeros() as usize];
            let d = (received ^ word).count_ones();
            if d < best_delta {
                best_delta = d;
                best_combo = i ^ (i >> 1); // Gray code of i is the combination mask
            }
        }
        if best_delta > self.radius(level) {
            return InnerDecodeOutcome::Failure;
        }
        let mut cw = prefix_word;
        let mut suffix_symbols = Vec::with_capacity(self.ell - level);
        for g in 0..self.ell - level {
            let chunk = (best_combo >> (g * self.m) & ((1 << self.m) - 1)) as u16;
            suffix_symbols.push(chunk);
            cw ^= self.level_contribution(level + g, chunk);
        }
        debug_assert_eq!((received ^ cw).count_ones(), best_delta);
        InnerDecodeOutcome::Decoded {
            codeword: cw,
            delta: best_delta,
            suffix_symbols,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // [7,3] simplex code: every nonzero codeword has weight 4
    fn simplex_rows() -> Vec<u128> {
        vec![0b1110100, 0b0111010, 0b1101001]
    }

    #[test]
    fn simplex_single_level_distances() {
        let c = NestedBinaryCode::new(simplex_rows(), 1, 3, 7, None).unwrap();
        assert_eq!(c.level_distances(), &[4]);
        assert!(c.distances_verified());
    }

    #[test]
    fn two_level_one_bit_example() {
        // rows {1111, 0101}: full code distance 2, level-1 span distance 2
        let c = NestedBinaryCode::new(vec![0b1111, 0b0101], 2, 1, 4, None).unwrap();
        assert_eq!(c.level_distances(), &[2, 2]);
    }

    #[test]
    fn rejects_rank_deficient() {
        let rows = vec![0b11, 0b1100, 0b110000, 0b10101010, 0b11001100, 0b11110000];
        assert_eq!(
            NestedBinaryCode::new(rows, 2, 3, 8, None).unwrap_err(),
            InnerCodeError::RankDeficient
        );
    }

    #[test]
    fn rejects_distance_mismatch_and_non_monotone() {
        let rows = vec![0b11, 0b1100, 0b101, 0b10101010, 0b11001100, 0b11110000];
        assert_eq!(
            NestedBinaryCode::new(rows, 2, 3, 8, Some(vec![3, 4])).unwrap_err(),
            InnerCodeError::DistanceMismatch { level: 0, claimed: 3, actual: 2 }
        );
        // computed distances are monotone by construction (suffix spans
        // nest), so decreasing values can only arrive as unverified claims
        let wide: Vec<u128> = (0..22).map(|i| 1u128 << i).collect();
        let mut claims = vec![1u32; 22];
        claims[0] = 2;
        assert!(matches!(
            NestedBinaryCode::new(wide, 22, 1, 30, Some(claims)).unwrap_err(),
            InnerCodeError::NonMonotoneDistances(_)
        ));
    }

    #[test]
    fn encode_matches_rows_and_inverts() {
        let c = NestedBinaryCode::new(simplex_rows(), 1, 3, 7, None).unwrap();
        assert_eq!(c.encode(&[false; 3]).unwrap(), 0);
        assert_eq!(c.encode(&[true, false, false]).unwrap(), simplex_rows()[0]);
        for combo in 0u32..8 {
            let bits: Vec<bool> = (0..3).map(|i| combo >> i & 1 == 1).collect();
            let cw = c.encode(&bits).unwrap();
            assert_eq!(c.info_of_codeword(cw).unwrap(), bits);
        }
        assert_eq!(c.info_of_codeword(0b1), None);
        assert!(matches!(
            c.encode(&[true]),
            Err(InnerCodeError::LengthMismatch { expected: 3, got: 1 })
        ));
    }

    #[test]
    fn bmd_decodes_within_radius_and_fails_beyond() {
        let c = NestedBinaryCode::new(simplex_rows(), 1, 3, 7, None).unwrap();
        let cw = c.encode(&[true, true, false]).unwrap();
        match c.coset_bmd_decode(cw, 0, &[]) {
            InnerDecodeOutcome::Decoded { codeword, delta, .. } => {
                assert_eq!((codeword, delta), (cw, 0));
            }
            InnerDecodeOutcome::Failure => panic!("exact codeword must decode"),
        }
        match c.coset_bmd_decode(cw ^ 0b1, 0, &[]) {
            InnerDecodeOutcome::Decoded { codeword, delta, .. } => {
                assert_eq!((codeword, delta), (cw, 1));
            }
            InnerDecodeOutcome::Failure => panic!("single flip is within radius 1"),
        }
    }

    #[test]
    fn bmd_exhaustive_against_direct_search() {
        // level 1 of the two-level [8,6] code, all 256 received words
        let rows = vec![0b11, 0b1100, 0b101, 0b10101010, 0b11001100, 0b11110000];
        let c = NestedBinaryCode::new(rows.clone(), 2, 3, 8, None).unwrap();
        assert_eq!(c.level_distances(), &[2, 4]);
        let sub: Vec<u128> = (0u32..8)
            .map(|combo| {
                (0..3)
                    .filter(|i| combo >> i & 1 == 1)
                    .fold(0, |w, i| w ^ rows[3 + i])
            })
            .collect();
        for rx in 0u128..256 {
            let nearest = sub.iter().map(|&s| (rx ^ s).count_ones()).min().unwrap();
            match c.coset_bmd_decode(rx, 1, &[false, false, false]) {
                InnerDecodeOutcome::Decoded { delta, codeword, .. } => {
                    assert_eq!(delta, nearest);
                    assert!(delta <= 1);
                    assert!(sub.contains(&codeword));
                }
                InnerDecodeOutcome::Failure => assert!(nearest > 1),
            }
        }
    }

    #[test]
    fn nesting_suffix_symbols_cover_deeper_levels() {
        let rows = vec![0b11, 0b1100, 0b101, 0b10101010, 0b11001100, 0b11110000];
        let c = NestedBinaryCode::new(rows, 2, 3, 8, None).unwrap();
        let info = [true, false, true, false, true, true];
        let cw = c.encode(&info).unwrap();
        // level-0 decode of a clean word recovers both chunks
        match c.coset_bmd_decode(cw, 0, &[]) {
            InnerDecodeOutcome::Decoded { suffix_symbols, delta, .. } => {
                assert_eq!(delta, 0);
                assert_eq!(suffix_symbols, vec![0b101, 0b110]);
            }
            InnerDecodeOutcome::Failure => panic!(),
        }
    }

    #[test]
    fn requires_claims_above_verification_limit() {
        // 22 rows of an identity-like code: k = 22 > 20
        let rows: Vec<u128> = (0..22).map(|i| 1u128 << i).collect();
        assert!(matches!(
            NestedBinaryCode::new(rows.clone(), 22, 1, 30, None).unwrap_err(),
            InnerCodeError::DistancesRequired(22)
        ));
        let c = NestedBinaryCode::new(rows, 22, 1, 30, Some(vec![1; 22])).unwrap();
        assert!(!c.distances_verified());
    }
}
