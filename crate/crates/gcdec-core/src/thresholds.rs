//! Erasure-threshold calculus for multi-trial outer decoding.
//!
//! An inner decoder reports a distance estimate delta with each symbol. An
//! erasure threshold T turns the symbol into an erasure when delta > T, and
//! running the outer decoder once per threshold in a set T_1 < ... < T_z
//! trades z decoding attempts against a guaranteed error budget. This module
//! computes the optimal sets for two outer regimes: independent rows under
//! plain bounded-minimum-distance decoding, and grouped rows decoded
//! collaboratively (where an attempt "costs" lambda = (l+1)/l per error
//! instead of 2). It also carries an adversarial oracle that certifies the
//! guaranteed budgets exhaustively on small parameters.
//!
//! Threshold values are computed in exact rational arithmetic whenever the
//! intermediate powers fit in i128; otherwise in f64 with a 1e-9 guard
//! applied before flooring.

use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThresholdError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parameters too large for exhaustive search: {0}")]
    ParamsTooLarge(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdMode {
    Independent,
    Collaborative { ell: u32 },
}

/// An ordered erasure-threshold set with its attempt accounting.
///
/// `values` may start below zero for small inner distances combined with
/// large z; such attempts erase every position and are skipped by decoders,
/// but they are kept here so the set faithfully reflects its formula.
/// `z_star` counts the attempts actually worth performing: distinct
/// non-negative integer parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSet {
    pub values: Vec<f64>,
    pub integer_parts: Vec<i64>,
    pub z: usize,
    pub z_star: usize,
    pub mode: ThresholdMode,
    pub d_i: u32,
}

impl ThresholdSet {
    fn assemble(values: Vec<f64>, integer_parts: Vec<i64>, mode: ThresholdMode, d_i: u32) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        let z = values.len();
        let z_star = distinct_nonneg(&integer_parts);
        ThresholdSet { values, integer_parts, z, z_star, mode, d_i }
    }

    /// The erasure thresholds a decoder should actually try: distinct
    /// non-negative integer parts, ascending.
    pub fn effective_integer_thresholds(&self) -> Vec<i64> {
        let mut ts: Vec<i64> = self.integer_parts.iter().copied().filter(|&t| t >= 0).collect();
        ts.sort_unstable();
        ts.dedup();
        ts
    }
}

fn distinct_nonneg(parts: &[i64]) -> usize {
    let mut seen: Vec<i64> = parts.iter().copied().filter(|&p| p >= 0).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Floor with a small tolerance so values lying a hair below an integer due
/// to f64 rounding are treated as that integer.
fn floor_guarded(x: f64) -> i64 {
    (x + 1e-9).floor() as i64
}

/// T_k = k(d_i + 1)/(2z + 1) - 1 for k = 1..z: the threshold set maximizing
/// the guaranteed budget of z independent bounded-distance attempts.
pub fn thresholds_independent(d_i: u32, z: u32) -> Result<ThresholdSet, ThresholdError> {
    if d_i < 2 || z < 1 {
        return Err(ThresholdError::InvalidParams(format!(
            "need d_i >= 2 and z >= 1, got d_i={d_i}, z={z}"
        )));
    }
    let den = 2 * i64::from(z) + 1;
    let mut values = Vec::with_capacity(z as usize);
    let mut parts = Vec::with_capacity(z as usize);
    for k in 1..=i64::from(z) {
        let num = k * i64::from(d_i + 1) - den;
        values.push(num as f64 / den as f64);
        parts.push(num.div_euclid(den));
    }
    Ok(ThresholdSet::assemble(values, parts, ThresholdMode::Independent, d_i))
}

/// Guaranteed exclusive error budget of z independent attempts:
/// d_o * (floor(T_z) + 1).
pub fn bound_independent(d_o: u32, d_i: u32, z: u32) -> Result<u64, ThresholdError> {
    let tset = thresholds_independent(d_i, z)?;
    Ok(u64::from(d_o) * (tset.integer_parts[z as usize - 1] + 1).max(0) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinAttempts {
    /// Smallest z whose bound reaches d_o * d_i / 2; None when no finite z
    /// does (odd d_i: the bound approaches but never attains it).
    pub z_lower: Option<u32>,
    /// Distinct useful attempts at saturation.
    pub z_star: u32,
}

/// Attempt counts at which the independent bound saturates.
pub fn min_attempts_independent(d_i: u32) -> Result<MinAttempts, ThresholdError> {
    if d_i < 2 {
        return Err(ThresholdError::InvalidParams(format!("need d_i >= 2, got {d_i}")));
    }
    if d_i.is_multiple_of(2) {
        Ok(MinAttempts { z_lower: Some(d_i / 2), z_star: d_i / 2 })
    } else {
        Ok(MinAttempts { z_lower: None, z_star: (d_i - 1) / 2 })
    }
}

/// T_k = b - a(lambda - 1)^k with lambda = (l + 1)/l: the threshold set
/// maximizing the budget of z collaborative attempts over l grouped rows.
/// In lowest terms T_k = ((d_i-1)l^{z+1} + l + 1 - (d_i+1)l^{z+1-k}) /
/// (2l^{z+1} - l - 1).
pub fn thresholds_collaborative(d_i: u32, ell: u32, z: u32) -> Result<ThresholdSet, ThresholdError> {
    if d_i < 2 || ell < 2 || z < 1 {
        return Err(ThresholdError::InvalidParams(format!(
            "need d_i >= 2, ell >= 2, z >= 1, got d_i={d_i}, ell={ell}, z={z}"
        )));
    }
    let l = i128::from(ell);
    let head: i128 = i128::from(d_i) + 1;
    let limit = i128::MAX / (4 * head);
    if let Some(p) = checked_pow_bounded(l, z + 1, limit) {
        let den = 2 * p - l - 1;
        let base = (i128::from(d_i) - 1) * p + l + 1;
        let mut values = Vec::with_capacity(z as usize);
        let mut parts = Vec::with_capacity(z as usize);
        let mut lk = p; // l^{z+1-k} for k = 0, divided down each step
        for _k in 1..=z {
            lk /= l;
            let num = base - head * lk;
            values.push(num as f64 / den as f64);
            parts.push(num.div_euclid(den) as i64);
        }
        Ok(ThresholdSet::assemble(values, parts, ThresholdMode::Collaborative { ell }, d_i))
    } else {
        // powers overflow i128: evaluate in f64, where (lambda-1)^z has long
        // since underflowed and b, a sit at their limits
        let lam = (f64::from(ell) + 1.0) / f64::from(ell);
        let u = lam * (lam - 1.0).powi(z as i32);
        let b = (f64::from(d_i) - 1.0 + u) / (2.0 - u);
        let a = (f64::from(d_i) + 1.0) / (2.0 - u);
        let mut values = Vec::with_capacity(z as usize);
        let mut parts = Vec::with_capacity(z as usize);
        let mut pk = 1.0;
        for _k in 1..=z {
            pk *= lam - 1.0;
            let v = b - a * pk;
            values.push(v);
            parts.push(floor_guarded(v));
        }
        Ok(ThresholdSet::assemble(values, parts, ThresholdMode::Collaborative { ell }, d_i))
    }
}

fn checked_pow_bounded(base: i128, exp: u32, limit: i128) -> Option<i128> {
    let mut acc: i128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > limit {
            return None;
        }
    }
    Some(acc)
}

/// Guaranteed exclusive error budget of a collaborative threshold set:
/// d_o * (floor(T_z) + 1).
pub fn bound_collaborative(d_o: u32, tset: &ThresholdSet) -> Result<u64, ThresholdError> {
    match tset.mode {
        ThresholdMode::Collaborative { .. } => {}
        ThresholdMode::Independent => {
            return Err(ThresholdError::InvalidParams(
                "bound_collaborative needs a collaborative threshold set".into(),
            ))
        }
    }
    let last = *tset.integer_parts.last().ok_or_else(|| {
        ThresholdError::InvalidParams("empty threshold set".into())
    })?;
    Ok(u64::from(d_o) * (last + 1).max(0) as u64)
}

/// The smallest threshold set whose collaborative bound reaches
/// d_o * d_i / 2 (even d_i), respectively the finite set that stands in for
/// the z -> infinity limit (odd d_i): T_k = (d_i-1)/2 - (d_i+1)/(2 l^k) for
/// k = 1..ceil(log_l((d_i+1)/2)), topped with (d_i-1)/2 itself.
pub fn maximal_threshold_set(d_i: u32, ell: u32) -> Result<ThresholdSet, ThresholdError> {
    if d_i < 2 || ell < 2 {
        return Err(ThresholdError::InvalidParams(format!(
            "need d_i >= 2 and ell >= 2, got d_i={d_i}, ell={ell}"
        )));
    }
    if d_i.is_multiple_of(2) {
        let target = i64::from(d_i) / 2 - 1;
        for z in 1..=4096 {
            let tset = thresholds_collaborative(d_i, ell, z)?;
            if tset.integer_parts[z as usize - 1] == target {
                return Ok(tset);
            }
        }
        unreachable!("the collaborative floor reaches d_i/2 - 1 at finite z");
    }
    let half = i128::from(d_i + 1) / 2;
    let l = i128::from(ell);
    let mut k_lower = 0u32;
    let mut p: i128 = 1;
    while p < half {
        p *= l;
        k_lower += 1;
    }
    let mut values = Vec::with_capacity(k_lower as usize + 1);
    let mut parts = Vec::with_capacity(k_lower as usize + 1);
    let mut lk: i128 = 1;
    for _k in 1..=k_lower {
        lk *= l;
        let num = (i128::from(d_i) - 1) * lk - i128::from(d_i) - 1;
        let den = 2 * lk;
        values.push(num as f64 / den as f64);
        parts.push(num.div_euclid(den) as i64);
    }
    values.push(f64::from(d_i - 1) / 2.0);
    parts.push(i64::from((d_i - 1) / 2));
    Ok(ThresholdSet::assemble(values, parts, ThresholdMode::Collaborative { ell }, d_i))
}

/// Number of outer attempts a set really costs: duplicate integer parts
/// collapse into one attempt, negative ones are never performed.
pub fn actual_attempts(tset: &ThresholdSet) -> usize {
    distinct_nonneg(&tset.integer_parts)
}

const ORACLE_MAX_D_O: u32 = 12;
const ORACLE_MAX_D_I: u32 = 12;
const ORACLE_MAX_Z: usize = 4;
const ORACLE_MAX_STATES: u64 = 5_000_000;

/// Smallest total channel-error budget with which an adversary defeats every
/// decoding attempt of the given integer threshold set.
///
/// Per column holding c channel errors the adversary may induce, at the
/// attempt with threshold t: a correct symbol (c within the inner radius and
/// c <= t), an erasure (correct decode with c > t, an inner failure needing
/// c >= ceil(d_i/2), or a miscorrection at distance d_i - c > t), or a symbol
/// error (miscorrection with d_i - c <= t). An attempt is defeated once
/// lambda * errors + erasures >= d_o, with lambda = lambda_num / lambda_den
/// (2/1 reproduces the independent regime). Negative thresholds are dropped;
/// duplicates collapse. Exhaustive shortest-path search over per-attempt
/// defeat progress; caps keep it small.
pub fn adversarial_efail_oracle(
    d_o: u32,
    d_i: u32,
    lambda_num: u32,
    lambda_den: u32,
    thresholds: &[i64],
) -> Result<u64, ThresholdError> {
    if d_o < 1 || d_i < 2 {
        return Err(ThresholdError::InvalidParams(format!(
            "need d_o >= 1 and d_i >= 2, got d_o={d_o}, d_i={d_i}"
        )));
    }
    if lambda_den < 1 || lambda_num <= lambda_den || lambda_num > 2 * lambda_den {
        return Err(ThresholdError::InvalidParams(format!(
            "lambda must lie in (1, 2], got {lambda_num}/{lambda_den}"
        )));
    }
    let mut ts: Vec<i64> = thresholds.iter().copied().filter(|&t| t >= 0).collect();
    ts.sort_unstable();
    ts.dedup();
    let z = ts.len();
    if d_o > ORACLE_MAX_D_O || d_i > ORACLE_MAX_D_I || z > ORACLE_MAX_Z {
        return Err(ThresholdError::ParamsTooLarge(format!(
            "caps are d_o <= {ORACLE_MAX_D_O}, d_i <= {ORACLE_MAX_D_I}, z <= {ORACLE_MAX_Z}"
        )));
    }

    let num = u64::from(lambda_num);
    let den = u64::from(lambda_den);
    let target = den * u64::from(d_o);
    let states = (target + 1)
        .checked_pow(z as u32)
        .filter(|&s| s <= ORACLE_MAX_STATES)
        .ok_or_else(|| {
            ThresholdError::ParamsTooLarge(format!(
                "defeat-progress space exceeds {ORACLE_MAX_STATES} states"
            ))
        })?;

    // column classes: (channel errors spent, defeat progress per attempt)
    let radius = i64::from((d_i - 1) / 2);
    let mut classes: HashMap<Vec<u64>, u64> = HashMap::new();
    let mut add = |cost: u64, deltas: Vec<u64>| {
        if deltas.iter().all(|&d| d == 0) {
            return;
        }
        classes
            .entry(deltas)
            .and_modify(|c| *c = (*c).min(cost))
            .or_insert(cost);
    };
    for c in 0..=radius {
        // inner decoder finds the transmitted word at distance c
        add(c as u64, ts.iter().map(|&t| if c > t { den } else { 0 }).collect());
    }
    for delta in 0..=radius {
        // adversary steers the column to distance delta from a wrong word d_i - delta away
        let c = i64::from(d_i) - delta;
        add(c as u64, ts.iter().map(|&t| if delta <= t { num } else { den }).collect());
    }
    // inner decoding failure: erased in every attempt
    add(u64::from(d_i.div_ceil(2)), vec![den; z]);

    // Dijkstra over per-attempt progress, each coordinate capped at target
    let base = target + 1;
    let goal = states - 1; // all coordinates at target
    let mut dist: Vec<u64> = vec![u64::MAX; states as usize];
    let mut heap = std::collections::BinaryHeap::new();
    dist[0] = 0;
    heap.push(std::cmp::Reverse((0u64, 0u64)));
    while let Some(std::cmp::Reverse((cost, state))) = heap.pop() {
        if cost > dist[state as usize] {
            continue;
        }
        if state == goal {
            return Ok(cost);
        }
        for (deltas, &step) in &classes {
            let mut next = 0u64;
            let mut mul = 1u64;
            let mut s = state;
            for &d in deltas {
                let coord = (s % base + d).min(target);
                next += coord * mul;
                s /= base;
                mul *= base;
            }
            let nc = cost + step;
            if nc < dist[next as usize] {
                dist[next as usize] = nc;
                heap.push(std::cmp::Reverse((nc, next)));
            }
        }
    }
    // z >= 1 always reaches the goal (the failure class advances every attempt)
    unreachable!("defeat-progress search exhausted without reaching the goal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn independent_sets_match_hand_values() {
        let t = thresholds_independent(20, 10).unwrap();
        assert_eq!(t.integer_parts, (0..10).collect::<Vec<i64>>());
        assert_eq!(t.z_star, 10);
        assert_eq!(thresholds_independent(20, 3).unwrap().integer_parts, vec![2, 5, 8]);
        assert_eq!(thresholds_independent(20, 1).unwrap().integer_parts, vec![6]);
        // small d_i with many attempts pushes leading thresholds negative
        let p = thresholds_independent(4, 3).unwrap();
        assert_eq!(p.integer_parts, vec![-1, 0, 1]);
        assert_eq!(p.z_star, 2);
        assert_eq!(p.effective_integer_thresholds(), vec![0, 1]);
    }

    #[test]
    fn independent_bound_values_and_monotonicity() {
        assert_eq!(bound_independent(33, 20, 1).unwrap(), 231);
        assert_eq!(bound_independent(33, 20, 2).unwrap(), 264);
        assert_eq!(bound_independent(33, 20, 10).unwrap(), 330);
        assert_eq!(bound_independent(33, 20, 25).unwrap(), 330);
        let mut prev = 0;
        for z in 1..=40 {
            let b = bound_independent(7, 11, z).unwrap();
            assert!(b >= prev, "bound dropped at z={z}");
            prev = b;
        }
    }

    #[test]
    fn min_attempts_by_parity() {
        assert_eq!(
            min_attempts_independent(20).unwrap(),
            MinAttempts { z_lower: Some(10), z_star: 10 }
        );
        assert_eq!(
            min_attempts_independent(21).unwrap(),
            MinAttempts { z_lower: None, z_star: 10 }
        );
        assert_eq!(
            min_attempts_independent(3).unwrap(),
            MinAttempts { z_lower: None, z_star: 1 }
        );
    }

    #[test]
    fn collaborative_sets_match_hand_values() {
        let t = thresholds_collaborative(20, 2, 3).unwrap();
        assert_eq!(t.integer_parts, vec![4, 7, 9]);
        for (got, want) in t.values.iter().zip([139.0 / 29.0, 223.0 / 29.0, 265.0 / 29.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        // z = 2 leaves the top floor one short of d_i/2 - 1 = 9
        assert_eq!(thresholds_collaborative(20, 2, 2).unwrap().integer_parts, vec![5, 8]);
    }

    #[test]
    fn collaborative_bound_and_mode_guard() {
        let t = thresholds_collaborative(20, 2, 3).unwrap();
        assert_eq!(bound_collaborative(33, &t).unwrap(), 330);
        let indep = thresholds_independent(20, 3).unwrap();
        assert!(bound_collaborative(33, &indep).is_err());
    }

    #[test]
    fn maximal_sets_even() {
        assert_eq!(maximal_threshold_set(20, 2).unwrap().integer_parts, vec![4, 7, 9]);
        assert_eq!(maximal_threshold_set(20, 8).unwrap().integer_parts, vec![8, 9]);
        assert_eq!(maximal_threshold_set(6, 2).unwrap().integer_parts, vec![1, 2]);
        assert_eq!(maximal_threshold_set(8, 2).unwrap().integer_parts, vec![1, 3]);
    }

    #[test]
    fn maximal_sets_odd() {
        let t21 = maximal_threshold_set(21, 2).unwrap();
        assert_eq!(t21.integer_parts, vec![4, 7, 8, 9, 10]);
        assert_eq!(actual_attempts(&t21), 5);
        let t3 = maximal_threshold_set(3, 8).unwrap();
        assert_eq!(t3.integer_parts, vec![0, 1]);
        assert_eq!(actual_attempts(&t3), 2);
        let t99 = maximal_threshold_set(99, 2).unwrap();
        assert_eq!(t99.integer_parts, vec![24, 36, 42, 45, 47, 48, 49]);
    }

    #[test]
    fn thresholds_approach_half_distance() {
        let t = thresholds_independent(21, 1_000_000).unwrap();
        assert!((t.values.last().unwrap() - 10.0).abs() < 1e-3);
        let c = thresholds_collaborative(21, 2, 1_000_000).unwrap();
        assert!((c.values.last().unwrap() - 10.0).abs() < 1e-3);
        assert!(c.integer_parts.iter().all(|&p| p <= 10));
    }

    #[test]
    fn oracle_matches_frozen_values() {
        assert_eq!(adversarial_efail_oracle(5, 6, 2, 1, &[1]).unwrap(), 10);
        assert_eq!(adversarial_efail_oracle(5, 6, 2, 1, &[2]).unwrap(), 11);
        assert_eq!(adversarial_efail_oracle(3, 8, 3, 2, &[1, 3]).unwrap(), 12);
        assert_eq!(adversarial_efail_oracle(5, 7, 2, 1, &[0, 2]).unwrap(), 15);
        assert_eq!(adversarial_efail_oracle(4, 9, 4, 3, &[1, 3]).unwrap(), 16);
        assert_eq!(adversarial_efail_oracle(1, 6, 2, 1, &[0, 1, 2]).unwrap(), 3);
    }

    #[test]
    fn oracle_agrees_with_independent_bound_at_formula_floors() {
        let floors = thresholds_independent(6, 1).unwrap().effective_integer_thresholds();
        assert_eq!(floors, vec![1]);
        assert_eq!(
            adversarial_efail_oracle(5, 6, 2, 1, &floors).unwrap(),
            bound_independent(5, 6, 1).unwrap()
        );
    }

    #[test]
    fn oracle_rejects_large_parameters() {
        assert!(matches!(
            adversarial_efail_oracle(13, 6, 2, 1, &[1]),
            Err(ThresholdError::ParamsTooLarge(_))
        ));
        assert!(matches!(
            adversarial_efail_oracle(5, 6, 2, 1, &[0, 1, 2, 3, 4]),
            Err(ThresholdError::ParamsTooLarge(_))
        ));
        assert!(matches!(
            adversarial_efail_oracle(5, 6, 1, 1, &[1]),
            Err(ThresholdError::InvalidParams(_))
        ));
    }

    #[test]
    fn oracle_drops_negative_and_duplicate_thresholds() {
        assert_eq!(
            adversarial_efail_oracle(5, 6, 2, 1, &[-1, 1, 1]).unwrap(),
            adversarial_efail_oracle(5, 6, 2, 1, &[1]).unwrap()
        );
    }
}
