//! End-to-end runs of the gcdec binary: pipelines, file formats, exit
//! codes, and CSV determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gcdec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcdec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn cfg(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn encode_corrupt_decode_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let info = dir.path().join("info.txt");
    let clean = dir.path().join("clean.txt");
    let noisy = dir.path().join("noisy.txt");
    let est = dir.path().join("est.txt");
    fs::write(&info, "1 2 3 4 5\n6 0\n").unwrap();

    let config = cfg("tiny_grouped.conf");
    let out = gcdec(&[
        "encode", "--config", path_str(&config), "--info", path_str(&info), "--out",
        path_str(&clean),
    ]);
    assert_eq!(exit_code(&out), 0, "{out:?}");

    // weight 0 must reproduce the matrix untouched
    let out = gcdec(&[
        "corrupt", "--in", path_str(&clean), "--weight", "0", "--seed", "1", "--out",
        path_str(&noisy),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(fs::read(&clean).unwrap(), fs::read(&noisy).unwrap());

    let out = gcdec(&[
        "decode", "--config", path_str(&config), "--in", path_str(&noisy), "--out",
        path_str(&est),
    ]);
    assert_eq!(exit_code(&out), 0, "{out:?}");
    assert_eq!(fs::read(&info).unwrap(), fs::read(&est).unwrap());

    // within half the designed distance the round trip still closes
    let out = gcdec(&[
        "corrupt", "--in", path_str(&clean), "--weight", "2", "--seed", "7", "--out",
        path_str(&noisy),
    ]);
    assert_eq!(exit_code(&out), 0);
    let out = gcdec(&[
        "decode", "--config", path_str(&config), "--in", path_str(&noisy), "--out",
        path_str(&est),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(fs::read(&info).unwrap(), fs::read(&est).unwrap());
}

#[test]
fn clean_grouped_decode_reports_single_attempt() {
    let dir = tempfile::tempdir().unwrap();
    let info = dir.path().join("info.txt");
    let clean = dir.path().join("clean.txt");
    fs::write(&info, "7 0 1 2 3\n4 5\n").unwrap();
    let config = cfg("tiny_grouped.conf");
    gcdec(&[
        "encode", "--config", path_str(&config), "--info", path_str(&info), "--out",
        path_str(&clean),
    ]);
    let out = gcdec(&["decode", "--config", path_str(&config), "--in", path_str(&clean), "--mode", "irs"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("attempts 1"), "{text}");
    assert!(text.contains("inner skipped 7"), "{text}");
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "8 7\n0101\n").unwrap();
    let config = cfg("tiny_classic.conf");
    let out = gcdec(&["decode", "--config", path_str(&config), "--in", path_str(&bad)]);
    assert_eq!(exit_code(&out), 2);

    let bad_cfg = dir.path().join("bad.conf");
    fs::write(&bad_cfg, "m = 3\nouter = 7,3\ninner = nowhere.txt\nbogus = 1\n").unwrap();
    let out = gcdec(&["build", "--config", path_str(&bad_cfg)]);
    assert_eq!(exit_code(&out), 2);

    let out = gcdec(&["simulate", "--config", path_str(&config), "--weight", "1", "--trials", "5"]);
    assert_eq!(exit_code(&out), 2, "randomized commands need a seed");
}

#[test]
fn unrecoverable_decode_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let info = dir.path().join("info.txt");
    let clean = dir.path().join("clean.txt");
    let noisy = dir.path().join("noisy.txt");
    fs::write(&info, "1 2 3 4 5\n6 0\n").unwrap();
    let config = cfg("tiny_grouped.conf");
    gcdec(&[
        "encode", "--config", path_str(&config), "--info", path_str(&info), "--out",
        path_str(&clean),
    ]);
    gcdec(&[
        "corrupt", "--in", path_str(&clean), "--weight", "25", "--seed", "1", "--out",
        path_str(&noisy),
    ]);
    let out = gcdec(&["decode", "--config", path_str(&config), "--in", path_str(&noisy)]);
    assert_eq!(exit_code(&out), 1, "{out:?}");
}

#[test]
fn encode_rejects_ill_shaped_info() {
    let dir = tempfile::tempdir().unwrap();
    let info = dir.path().join("info.txt");
    let out_path = dir.path().join("c.txt");
    let config = cfg("tiny_classic.conf");

    fs::write(&info, "1 2\n3 4 5 6 7\n").unwrap();
    let out = gcdec(&[
        "encode", "--config", path_str(&config), "--info", path_str(&info), "--out",
        path_str(&out_path),
    ]);
    assert_eq!(exit_code(&out), 2, "short row");

    fs::write(&info, "1 2 9\n3 4 5 6 7\n").unwrap();
    let out = gcdec(&[
        "encode", "--config", path_str(&config), "--info", path_str(&info), "--out",
        path_str(&out_path),
    ]);
    assert_eq!(exit_code(&out), 2, "symbol outside GF(8)");
}

#[test]
fn bound_sweep_csv_is_pinned_and_deterministic() {
    let a = gcdec(&["sweep-bounds", "--d-outer", "33", "--d-inner", "20", "--ell", "2", "--z-max", "25"]);
    let b = gcdec(&["sweep-bounds", "--d-outer", "33", "--d-inner", "20", "--ell", "2", "--z-max", "25"]);
    assert_eq!(exit_code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout_of(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "z,bound_independent,bound_collaborative");
    assert_eq!(lines[10], "10,330,330");
    assert_eq!(lines.len(), 26);
}

#[test]
fn attempts_table_csv_is_pinned() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("table.csv");
    let out = gcdec(&["attempts-table", "--max", "100", "--out", path_str(&out_path)]);
    assert_eq!(exit_code(&out), 0);
    let text = fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "d_i,zstar_independent,zstar_l2,zstar_l8");
    assert!(lines.contains(&"3,1,2,2"));
    assert!(lines.contains(&"21,10,5,3"));
}

#[test]
fn build_prints_distance_and_plan_for_the_large_config() {
    let out = gcdec(&["build", "--config", path_str(&cfg("sec6.conf"))]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("designed distance: 759"), "{text}");
    assert!(text.contains("group 0: rows 0..2"), "{text}");
}

#[test]
fn simulate_is_reproducible() {
    let config = cfg("tiny_grouped.conf");
    let args = [
        "simulate", "--config", path_str(&config), "--weight", "2", "--trials", "40", "--seed",
        "5",
    ];
    let a = gcdec(&args);
    let b = gcdec(&args);
    assert_eq!(exit_code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout_of(&a);
    assert!(text.contains("successes=40 flagged=0 silent=0"), "{text}");
}
