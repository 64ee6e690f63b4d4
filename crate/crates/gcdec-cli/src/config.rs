//! Flat `key = value` code configuration.
//!
//! Recognized keys: `m` (field degree), `modulus` (primitive polynomial as
//! an integer, decimal or 0x-prefixed; defaults to a built-in per degree),
//! one `outer = n,k` line per level in level order, `inner` (generator file
//! path, resolved against the config file's directory), `mode` (classic,
//! irs, or auto; default auto), and optional `seed`, `trials`, `weight`
//! defaults for the randomized subcommands. Blank lines and lines starting
//! with `#` are ignored.

use crate::io;
use gcdec_core::{Field, GcCode, NestedBinaryCode, RsCode};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Classic,
    Irs,
    Auto,
}

#[derive(Debug, Clone)]
pub struct CodeConfig {
    pub m: u32,
    pub modulus: Option<u32>,
    pub outer: Vec<(usize, usize)>,
    pub inner_path: PathBuf,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub weight: Option<usize>,
}

pub fn parse_config(path: &Path) -> Result<CodeConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let dir = path.parent().unwrap_or(Path::new("."));

    let mut m = None;
    let mut modulus = None;
    let mut outer = Vec::new();
    let mut inner_path = None;
    let mut mode = Mode::Auto;
    let mut seed = None;
    let mut trials = None;
    let mut weight = None;

    for (num, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("config {}: line {} is not `key = value`", path.display(), num + 1));
        };
        let (key, value) = (key.trim(), value.trim());
        let parse_int = |what: &str| -> Result<u64, String> {
            let r = if let Some(hex) = value.strip_prefix("0x") {
                u64::from_str_radix(hex, 16)
            } else {
                value.parse()
            };
            r.map_err(|_| format!("config {}: {what} '{value}' is not a number", path.display()))
        };
        match key {
            "m" => m = Some(parse_int("m")? as u32),
            "modulus" => modulus = Some(parse_int("modulus")? as u32),
            "inner" => inner_path = Some(dir.join(value)),
            "mode" => {
                mode = match value {
                    "classic" => Mode::Classic,
                    "irs" => Mode::Irs,
                    "auto" => Mode::Auto,
                    _ => {
                        return Err(format!(
                            "config {}: mode '{value}' is not classic, irs, or auto",
                            path.display()
                        ))
                    }
                }
            }
            "seed" => seed = Some(parse_int("seed")?),
            "trials" => trials = Some(parse_int("trials")? as usize),
            "weight" => weight = Some(parse_int("weight")? as usize),
            "outer" => {
                let Some((n, k)) = value.split_once(',') else {
                    return Err(format!("config {}: outer must be `n,k`", path.display()));
                };
                let n = n.trim().parse().map_err(|_| {
                    format!("config {}: outer length '{n}' is not a number", path.display())
                })?;
                let k = k.trim().parse().map_err(|_| {
                    format!("config {}: outer dimension '{k}' is not a number", path.display())
                })?;
                outer.push((n, k));
            }
            _ => return Err(format!("config {}: unknown key '{key}'", path.display())),
        }
    }

    let m = m.ok_or_else(|| format!("config {}: missing key m", path.display()))?;
    if outer.is_empty() {
        return Err(format!("config {}: no outer rows", path.display()));
    }
    let inner_path =
        inner_path.ok_or_else(|| format!("config {}: missing key inner", path.display()))?;
    Ok(CodeConfig { m, modulus, outer, inner_path, mode, seed, trials, weight })
}

pub fn build_code(cfg: &CodeConfig) -> Result<GcCode, String> {
    let field = match cfg.modulus {
        Some(p) => Field::new(cfg.m, p),
        None => Field::with_default_modulus(cfg.m),
    }
    .map_err(|e| format!("field: {e}"))?;

    let (n_i, rows) = io::read_generator(&cfg.inner_path)?;
    let inner = NestedBinaryCode::new(rows, cfg.outer.len(), cfg.m as usize, n_i, None)
        .map_err(|e| format!("inner code: {e}"))?;

    let mut outer = Vec::with_capacity(cfg.outer.len());
    for &(n, k) in &cfg.outer {
        outer.push(RsCode::new(field.clone(), n, k).map_err(|e| format!("outer ({n},{k}): {e}"))?);
    }
    GcCode::new(outer, inner).map_err(|e| format!("code: {e}"))
}
