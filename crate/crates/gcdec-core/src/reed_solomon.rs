//! Reed-Solomon codes over GF(2^m) with errors-and-erasures decoding.
//!
//! Codewords are evaluations of the information polynomial at every nonzero
//! field element: c_j = f(alpha^j) for j = 0..n-1, with n = 2^m - 1. In this
//! view the syndromes S_s = r(alpha^s), s = 1..d-1, vanish exactly on
//! codewords, and the decoder solves the key equation on syndromes modified
//! by the erasure locator. A decode is accepted only when the corrected word
//! has all-zero syndromes and lies within the bounded-distance radius
//! floor((d - 1 - tau) / 2) on the non-erased positions.

use crate::galois::{Field, FieldError, Symbol};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RsError {
    #[error("block length {n} must equal 2^m - 1 = {order}")]
    BadLength { n: usize, order: usize },
    #[error("dimension {k} must lie in 1..={n}")]
    BadDimension { k: usize, n: usize },
    #[error("expected {expected} symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("symbol {0:#x} does not fit the field")]
    SymbolOutOfRange(Symbol),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RsDecodeOutcome {
    Decoded {
        codeword: Vec<Symbol>,
        info: Vec<Symbol>,
        /// Corrections applied on non-erased positions.
        errors: usize,
        erasures: usize,
    },
    Failure,
}

#[derive(Debug, Clone)]
pub struct RsCode {
    field: Field,
    n: usize,
    k: usize,
}

impl RsCode {
    pub fn new(field: Field, n: usize, k: usize) -> Result<Self, RsError> {
        if n != field.order() {
            return Err(RsError::BadLength { n, order: field.order() });
        }
        if k == 0 || k > n {
            return Err(RsError::BadDimension { k, n });
        }
        Ok(RsCode { field, n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum distance n - k + 1 (MDS).
    pub fn d(&self) -> usize {
        self.n - self.k + 1
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub(crate) fn check_symbols(&self, word: &[Symbol]) -> Result<(), RsError> {
        let size = 1u32 << self.field.degree();
        match word.iter().find(|&&s| u32::from(s) >= size) {
            Some(&s) => Err(RsError::SymbolOutOfRange(s)),
            None => Ok(()),
        }
    }

    pub fn encode(&self, info: &[Symbol]) -> Result<Vec<Symbol>, RsError> {
        if info.len() != self.k {
            return Err(RsError::LengthMismatch { expected: self.k, got: info.len() });
        }
        self.check_symbols(info)?;
        Ok((0..self.n)
            .map(|j| self.field.poly_eval(info, self.field.alpha_pow(j as i64)))
            .collect())
    }

    /// Recovers the information polynomial from a full codeword by the
    /// inverse evaluation map: f_0 = c(1), f_i = c(alpha^{n-i}).
    pub fn info_from_codeword(&self, codeword: &[Symbol]) -> Result<Vec<Symbol>, RsError> {
        if codeword.len() != self.n {
            return Err(RsError::LengthMismatch { expected: self.n, got: codeword.len() });
        }
        self.check_symbols(codeword)?;
        Ok((0..self.k)
            .map(|i| {
                let x = self.field.alpha_pow(((self.n - i) % self.n) as i64);
                self.field.poly_eval(codeword, x)
            })
            .collect())
    }

    pub(crate) fn syndromes(&self, word: &[Symbol]) -> Vec<Symbol> {
        (1..self.d())
            .map(|s| self.field.poly_eval(word, self.field.alpha_pow(s as i64)))
            .collect()
    }

    /// Errors-and-erasures decoding; erased positions are `None`. Sweeps the
    /// error count downward from floor((d - 1 - tau) / 2) and accepts the
    /// first count whose key equation has a unique solution surviving full
    /// validation (locator degree, root count, erasure disjointness, zero
    /// syndromes, radius).
    pub fn decode_ee(&self, received: &[Option<Symbol>]) -> Result<RsDecodeOutcome, RsError> {
        if received.len() != self.n {
            return Err(RsError::LengthMismatch { expected: self.n, got: received.len() });
        }
        let filled: Vec<Symbol> = received.iter().map(|o| o.unwrap_or(0)).collect();
        self.check_symbols(&filled)?;
        let d = self.d();
        let erasures: Vec<usize> = (0..self.n).filter(|&j| received[j].is_none()).collect();
        let tau = erasures.len();
        if tau > d - 1 {
            return Ok(RsDecodeOutcome::Failure);
        }

        let synd = self.syndromes(&filled);
        let gamma = erasure_locator(&self.field, &erasures);
        let t = poly_mul_trunc(&self.field, &synd, &gamma, d - 1);

        for eps in (0..=(d - 1 - tau) / 2).rev() {
            let rows: Vec<Vec<Symbol>> = (tau + eps..d - 1)
                .map(|i| (1..=eps).map(|u| t[i - u]).collect())
                .collect();
            let rhs: Vec<Symbol> = (tau + eps..d - 1).map(|i| t[i]).collect();
            let lam_tail = match solve_unique(&self.field, rows, rhs) {
                Some(x) => x,
                None => continue,
            };
            if eps > 0 && lam_tail[eps - 1] == 0 {
                continue;
            }
            let mut lam = Vec::with_capacity(eps + 1);
            lam.push(1);
            lam.extend(lam_tail);

            let err_pos = locator_roots(&self.field, &lam, self.n);
            if err_pos.len() != eps || err_pos.iter().any(|p| erasures.contains(p)) {
                continue;
            }

            let mut pos = err_pos;
            pos.extend_from_slice(&erasures);
            pos.sort_unstable();
            let corrected = match self.apply_corrections(&filled, &synd, &pos) {
                Some(c) => c,
                None => continue,
            };
            if self.syndromes(&corrected).iter().any(|&s| s != 0) {
                continue;
            }
            let changed = (0..self.n)
                .filter(|&j| received[j].is_some() && corrected[j] != filled[j])
                .count();
            if changed > eps {
                continue;
            }
            let info = self.info_from_codeword(&corrected)?;
            return Ok(RsDecodeOutcome::Decoded { codeword: corrected, info, errors: changed, erasures: tau });
        }
        Ok(RsDecodeOutcome::Failure)
    }

    /// Solves the correction values at the given positions from the leading
    /// syndromes (a Vandermonde system) and applies them.
    pub(crate) fn apply_corrections(&self, filled: &[Symbol], synd: &[Symbol], pos: &[usize]) -> Option<Vec<Symbol>> {
        let w = pos.len();
        let mut corrected = filled.to_vec();
        if w == 0 {
            return Some(corrected);
        }
        if w > synd.len() {
            return None;
        }
        let rows: Vec<Vec<Symbol>> = (1..=w)
            .map(|s| {
                pos.iter()
                    .map(|&p| self.field.alpha_pow((p * s) as i64))
                    .collect()
            })
            .collect();
        let rhs: Vec<Symbol> = synd[..w].to_vec();
        let vals = solve_unique(&self.field, rows, rhs)?;
        for (&p, &v) in pos.iter().zip(&vals) {
            corrected[p] = self.field.add(corrected[p], v);
        }
        Some(corrected)
    }
}

/// Positions j whose inverse locator alpha^{n-j} is a root of lambda.
pub(crate) fn locator_roots(field: &Field, lam: &[Symbol], n: usize) -> Vec<usize> {
    (0..n)
        .filter(|&j| {
            let x = field.alpha_pow(((n - j) % n) as i64);
            field.poly_eval(lam, x) == 0
        })
        .collect()
}

/// Product of (1 + alpha^j X) over the erased positions, low-order first.
pub(crate) fn erasure_locator(field: &Field, erasures: &[usize]) -> Vec<Symbol> {
    let mut g = vec![1 as Symbol];
    for &j in erasures {
        let a = field.alpha_pow(j as i64);
        let mut next = vec![0 as Symbol; g.len() + 1];
        for (i, &c) in g.iter().enumerate() {
            next[i] = field.add(next[i], c);
            next[i + 1] = field.add(next[i + 1], field.mul(c, a));
        }
        g = next;
    }
    g
}

pub(crate) fn poly_mul_trunc(field: &Field, f: &[Symbol], g: &[Symbol], len: usize) -> Vec<Symbol> {
    let mut out = vec![0 as Symbol; len];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 || i >= len {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            if i + j >= len {
                break;
            }
            out[i + j] = field.add(out[i + j], field.mul(a, b));
        }
    }
    out
}

/// Gaussian elimination over the field; Some only when the system has
/// exactly one solution.
pub(crate) fn solve_unique(field: &Field, a: Vec<Vec<Symbol>>, b: Vec<Symbol>) -> Option<Vec<Symbol>> {
    match solve_affine(field, a, b) {
        Some((particular, kernel)) if kernel.is_empty() => Some(particular),
        _ => None,
    }
}

/// Full solution set of a linear system over the field: a particular solution
/// plus a kernel basis. None when the system is inconsistent.
pub(crate) fn solve_affine(
    field: &Field,
    mut a: Vec<Vec<Symbol>>,
    mut b: Vec<Symbol>,
) -> Option<(Vec<Symbol>, Vec<Vec<Symbol>>)> {
    let nrows = a.len();
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    let mut pivot_of_col = vec![usize::MAX; ncols];
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = field.inv(a[r][c]).expect("pivot is nonzero");
        for x in a[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        b[r] = field.mul(b[r], inv);
        let pivot_row = a[r].clone();
        let pivot_b = b[r];
        for i in 0..nrows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for (x, &p) in a[i].iter_mut().zip(&pivot_row) {
                    *x = field.add(*x, field.mul(f, p));
                }
                b[i] = field.add(b[i], field.mul(f, pivot_b));
            }
        }
        pivot_of_col[c] = r;
        r += 1;
    }
    if (r..nrows).any(|i| b[i] != 0) {
        return None;
    }
    let mut particular = vec![0 as Symbol; ncols];
    for c in 0..ncols {
        if pivot_of_col[c] != usize::MAX {
            particular[c] = b[pivot_of_col[c]];
        }
    }
    let kernel = (0..ncols)
        .filter(|&free| pivot_of_col[free] == usize::MAX)
        .map(|free| {
            let mut v = vec![0 as Symbol; ncols];
            v[free] = 1;
            for c in 0..ncols {
                if pivot_of_col[c] != usize::MAX {
                    v[c] = a[pivot_of_col[c]][free];
                }
            }
            v
        })
        .collect();
    Some((particular, kernel))
}
