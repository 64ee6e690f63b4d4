//! Browser bindings: a small set of text-in/text-out entry points over the
//! core library, meant to be compiled with wasm-pack and driven from the
//! static page in www/. Everything also builds natively so the bindings can
//! be tested without a wasm toolchain.

use gcdec_core::channel::{inject_errors, ErrorSpec, Placement};
use gcdec_core::gc::IterationStatus;
use gcdec_core::thresholds::{
    actual_attempts, bound_collaborative, bound_independent, maximal_threshold_set,
    thresholds_collaborative,
};
use gcdec_core::{Field, GcCode, NestedBinaryCode, RsCode};
use wasm_bindgen::prelude::*;

/// CSV of guaranteed decoding bounds per threshold count, independent
/// versus collaborative at interleaving depth `ell`.
#[wasm_bindgen]
pub fn bounds_csv(d_o: u32, d_i: u32, ell: u32, z_max: u32) -> Result<String, String> {
    if !(1..=200).contains(&z_max) {
        return Err("z range must be 1..=200".into());
    }
    let mut out = String::from("z,bound_independent,bound_collaborative\n");
    for z in 1..=z_max {
        let indep = bound_independent(d_o, d_i, z).map_err(|e| e.to_string())?;
        let tset = thresholds_collaborative(d_i, ell, z).map_err(|e| e.to_string())?;
        let collab = bound_collaborative(d_o, &tset).map_err(|e| e.to_string())?;
        out.push_str(&format!("{z},{indep},{collab}\n"));
    }
    Ok(out)
}

/// The shortest threshold set reaching half the inner distance for
/// collaborating rows, with its exact cutoffs.
#[wasm_bindgen]
pub fn threshold_table(d_i: u32, ell: u32) -> Result<String, String> {
    let tset = maximal_threshold_set(d_i, ell).map_err(|e| e.to_string())?;
    let mut out = format!(
        "inner distance {d_i}, {ell} collaborating rows\nattempts needed: {}\n",
        actual_attempts(&tset)
    );
    for (k, (v, p)) in tset.values.iter().zip(&tset.integer_parts).enumerate() {
        out.push_str(&format!("T_{}: {v:.6} (erase above {p})\n", k + 1));
    }
    Ok(out)
}

fn demo_code() -> GcCode {
    let rows = vec![0b11, 0b1100, 0b101, 0b10101010, 0b11001100, 0b11110000];
    let inner = NestedBinaryCode::new(rows, 2, 3, 8, None).unwrap();
    let f = Field::with_default_modulus(3).unwrap();
    let outer = vec![RsCode::new(f.clone(), 7, 5).unwrap(), RsCode::new(f, 7, 2).unwrap()];
    GcCode::new(outer, inner).unwrap()
}

fn render_matrix(m: &gcdec_core::gc::BitMatrix, diff: &gcdec_core::gc::BitMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.n_i() {
        for j in 0..m.n_o() {
            let bit = if m.get(i, j) { '1' } else { '0' };
            if m.get(i, j) != diff.get(i, j) {
                out.push('[');
                out.push(bit);
                out.push(']');
            } else {
                out.push(' ');
                out.push(bit);
                out.push(' ');
            }
        }
        out.push('\n');
    }
    out
}

/// Encodes a fixed two-level toy code, flips `weight` seeded random bits,
/// decodes with grouped rows, and narrates the outcome.
#[wasm_bindgen]
pub fn demo_round_trip(weight: usize, seed: u64) -> Result<String, String> {
    let gc = demo_code();
    let info = vec![vec![1, 5, 2, 0, 7], vec![3, 6]];
    let a = gc.encode_outer(&info).map_err(|e| e.to_string())?;
    let clean = gc.matrix_from_symbols(&a);
    let spec = ErrorSpec { weight, seed, placement: Placement::Uniform };
    let noisy = inject_errors(&clean, &spec).map_err(|e| e.to_string())?;

    let plan = gc.plan_groups();
    let report = gc.decode_grouped(&noisy, &plan).map_err(|e| e.to_string())?;

    let mut out = format!(
        "designed distance {} (corrects any {} bit errors)\n",
        gc.designed_distance(),
        (gc.designed_distance() - 1) / 2
    );
    out.push_str(&format!("flipped {weight} bits with seed {seed}\n\n"));
    out.push_str("received (flips bracketed):\n");
    out.push_str(&render_matrix(&noisy, &clean));
    out.push('\n');
    for it in &report.iterations {
        let status = match it.status {
            IterationStatus::Recovered => "recovered",
            IterationStatus::Degraded => "degraded",
            IterationStatus::Failed => "failed",
        };
        out.push_str(&format!(
            "rows {}..{}: {status} after {} attempt(s)\n",
            it.first_row,
            it.first_row + it.row_count,
            it.attempts.len()
        ));
    }
    out.push_str(&format!(
        "inner decodings: {} performed, {} skipped by grouping\n",
        report.inner_performed, report.inner_skipped
    ));
    out.push_str(if report.estimate == a {
        "\nresult: transmitted data recovered exactly\n"
    } else if report.is_clean() {
        "\nresult: WRONG data delivered without a flag\n"
    } else {
        "\nresult: decoding failed and says so\n"
    });
    Ok(out)
}
