//! CSV tables: guaranteed decoding bounds against threshold count, and
//! attempt minima across inner distances. Output is deterministic with a
//! mandatory header row; every value in these tables is an integer.

use gcdec_core::thresholds::{
    actual_attempts, bound_collaborative, bound_independent, maximal_threshold_set,
    min_attempts_independent, thresholds_collaborative,
};

/// Rows `z,bound_independent,bound_collaborative` for z = 1..=z_max.
pub fn fig1_csv(d_o: u32, d_i: u32, ell: u32, z_max: u32) -> Result<String, String> {
    if z_max < 1 {
        return Err("z-max must be at least 1".into());
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

/// Rows `d_i,zstar_independent,zstar_l2,zstar_l8` for odd d_i in
/// 3..=max_d_i: the attempt count of the shortest threshold set that
/// reaches the half-distance bound, per decoding mode.
pub fn fig2_csv(max_d_i: u32) -> Result<String, String> {
    if max_d_i < 3 {
        return Err("d-inner range must reach at least 3".into());
    }
    let mut out = String::from("d_i,zstar_independent,zstar_l2,zstar_l8\n");
    for d_i in (3..=max_d_i).step_by(2) {
        let indep = min_attempts_independent(d_i).map_err(|e| e.to_string())?.z_star;
        let l2 = actual_attempts(&maximal_threshold_set(d_i, 2).map_err(|e| e.to_string())?);
        let l8 = actual_attempts(&maximal_threshold_set(d_i, 8).map_err(|e| e.to_string())?);
        out.push_str(&format!("{d_i},{indep},{l2},{l8}\n"));
    }
    Ok(out)
}
