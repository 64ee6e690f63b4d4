//! Text file formats: bit matrices, information words, generator matrices.
//!
//! Matrix files start with a header line `n_i n_o`, followed by n_i lines of
//! n_o characters '0'/'1'; line i column j is bit (i, j). Generator files
//! use the same layout with header `n k` and one line per generator row,
//! character j being coordinate j of the row. Info files hold one line per
//! outer level: the level's information symbols as space-separated lowercase
//! hex words.

use gcdec_core::gc::BitMatrix;
use gcdec_core::Symbol;
use std::fs;
use std::path::Path;

pub fn read_matrix(path: &Path) -> Result<BitMatrix, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read matrix file {}: {e}", path.display()))?;
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad_matrix(path, "missing header"))?;
    let mut parts = header.split_whitespace();
    let n_i: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad_matrix(path, "header must be `n_i n_o`"))?;
    let n_o: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad_matrix(path, "header must be `n_i n_o`"))?;
    if parts.next().is_some() {
        return Err(bad_matrix(path, "header must be `n_i n_o`"));
    }
    if !(1..=128).contains(&n_i) {
        return Err(bad_matrix(path, "row count out of range"));
    }
    let mut m = BitMatrix::zero(n_i, n_o);
    let mut rows = 0;
    for (i, line) in lines.enumerate() {
        let line = line.trim_end();
        if line.is_empty() && i >= n_i {
            continue;
        }
        if i >= n_i {
            return Err(bad_matrix(path, "more rows than the header announces"));
        }
        if line.len() != n_o {
            return Err(bad_matrix(path, &format!("row {i} has {} columns, expected {n_o}", line.len())));
        }
        for (j, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => m.flip(i, j),
                _ => return Err(bad_matrix(path, &format!("row {i} contains '{ch}'"))),
            }
        }
        rows += 1;
    }
    if rows != n_i {
        return Err(bad_matrix(path, &format!("{rows} rows, header announces {n_i}")));
    }
    Ok(m)
}

pub fn write_matrix(path: &Path, m: &BitMatrix) -> Result<(), String> {
    let mut out = format!("{} {}\n", m.n_i(), m.n_o());
    for i in 0..m.n_i() {
        for j in 0..m.n_o() {
            out.push(if m.get(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn bad_matrix(path: &Path, what: &str) -> String {
    format!("malformed matrix file {}: {what}", path.display())
}

/// Generator file: header `n k`, then k rows of n characters, character j
/// being coordinate j.
pub fn read_generator(path: &Path) -> Result<(usize, Vec<u128>), String> {
    let bad = |what: &str| format!("malformed generator file {}: {what}", path.display());
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read generator file {}: {e}", path.display()))?;
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("missing header"))?;
    let dims: Vec<usize> = header.split_whitespace().filter_map(|s| s.parse().ok()).collect();
    let [n, k] = dims[..] else {
        return Err(bad("header must be `n k`"));
    };
    if !(1..=128).contains(&n) {
        return Err(bad("length out of range"));
    }
    let mut rows = Vec::with_capacity(k);
    for line in lines {
        let line = line.trim_end();
        if line.is_empty() && rows.len() >= k {
            continue;
        }
        if line.len() != n {
            return Err(bad(&format!("row {} has {} coordinates, expected {n}", rows.len(), line.len())));
        }
        let mut row = 0u128;
        for (j, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => row |= 1 << j,
                _ => return Err(bad(&format!("row {} contains '{ch}'", rows.len()))),
            }
        }
        rows.push(row);
    }
    if rows.len() != k {
        return Err(bad(&format!("{} rows, header announces {k}", rows.len())));
    }
    Ok((n, rows))
}

pub fn read_info(path: &Path, lengths: &[usize]) -> Result<Vec<Vec<Symbol>>, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read info file {}: {e}", path.display()))?;
    let lines: Vec<&str> = text.lines().collect();
    if lines.len() != lengths.len() {
        return Err(format!(
            "info file {}: {} lines for {} outer levels",
            path.display(),
            lines.len(),
            lengths.len()
        ));
    }
    let mut rows = Vec::with_capacity(lines.len());
    for (l, (line, &k)) in lines.iter().zip(lengths).enumerate() {
        let mut row = Vec::with_capacity(k);
        for tok in line.split_whitespace() {
            let sym = Symbol::from_str_radix(tok, 16)
                .map_err(|_| format!("info file {}: line {l} token '{tok}' is not hex", path.display()))?;
            row.push(sym);
        }
        if row.len() != k {
            return Err(format!(
                "info file {}: line {l} has {} symbols, level needs {k}",
                path.display(),
                row.len()
            ));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Rows that could not be extracted (after a failed decode) are written as
/// a single `-`.
pub fn write_info(path: &Path, rows: &[Option<Vec<Symbol>>]) -> Result<(), String> {
    let mut out = String::new();
    for row in rows {
        match row {
            Some(syms) => {
                let words: Vec<String> = syms.iter().map(|s| format!("{s:x}")).collect();
                out.push_str(&words.join(" "));
            }
            None => out.push('-'),
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| format!("cannot write {}: {e}", path.display()))
}
