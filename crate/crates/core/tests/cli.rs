use std::process::Command;

use operand_fold::cli::{parse_range, run};

fn foldmul(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_foldmul")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn multiply_reports_toy_ledger() {
    let (code, out, _) = foldmul(&["multiply", "--a", "1", "--b", "0b101010100011", "--m", "12", "--k", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("product = 0b101010100011"));
    assert!(out.contains("accumulate 4, combine 2, horner 1, total 7"));
}

#[test]
fn trace_lists_vectors() {
    let (code, out, _) = foldmul(&["trace", "--a", "5", "--b", "0b101010100011", "--m", "12"]);
    assert_eq!(code, 0);
    for v in ["010100", "000001", "001000", "100010"] {
        assert!(out.contains(v), "{v} missing from\n{out}");
    }
}

#[test]
fn invalid_degree_exits_2() {
    let (code, _, err) = foldmul(&["multiply", "--a", "3", "--b", "5", "--k", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("degree"));
    assert_eq!(foldmul(&["multiply", "--a", "3", "--b", "999", "--m", "4"]).0, 2);
    assert_eq!(run(["foldmul", "optk", "--m", "0"]), 2);
}

#[test]
fn unwritable_output_exits_3() {
    let (code, _, err) = foldmul(&["hdl", "--out", "/nonexistent-dir/mult"]);
    assert_eq!(code, 3);
    assert!(err.contains("/nonexistent-dir/mult.vhd"));
}

#[test]
fn bench_is_deterministic_per_seed() {
    let args = [
        "bench",
        "--m-range",
        "32..64",
        "--k-range",
        "2,3",
        "--trials",
        "50",
        "--seed",
        "0x2A",
    ];
    let (c1, a, _) = foldmul(&args);
    let (c2, b, _) = foldmul(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let mut lines = a.lines();
    assert_eq!(lines.next(), Some("# foldmul bench v1"));
    assert_eq!(lines.next(), Some("m,k,n,f_avg,f_wst,measured_mean,stderr,trials,seed"));
    assert_eq!(lines.count(), 66);

    let env = Command::new(env!("CARGO_BIN_EXE_foldmul"))
        .args(["bench", "--m", "64", "--k", "3", "--trials", "50"])
        .env("FOLDMUL_SEED", "42")
        .output()
        .unwrap();
    let (_, flag, _) = foldmul(&["bench", "--m", "64", "--k", "3", "--trials", "50", "--seed", "42"]);
    assert_eq!(String::from_utf8(env.stdout).unwrap(), flag);
}

#[test]
fn table_rows() {
    let (code, out, _) = foldmul(&["table"]);
    assert_eq!(code, 0);
    for row in [
        "24 <= m <= 83   0.375m+3   0.500m+3",
        "84 <= m <= 261  0.292m+10  0.333m+10",
        "262 <= m <= 763  0.234m+25  0.250m+25",
        "764 <= m <= 2122  0.194m+56  0.200m+56",
    ] {
        assert!(out.contains(row), "{row} missing from\n{out}");
    }
    assert!(out.contains("1.506"));
}

#[test]
fn optk_picks_five_for_1024() {
    let (code, out, _) = foldmul(&["optk", "--m", "1024"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("5"));
    assert_eq!(foldmul(&["optk", "--m", "50"]).1.lines().next(), Some("2"));
    assert_eq!(
        foldmul(&["optk", "--m", "1024", "--k-max", "3"]).1.lines().next(),
        Some("3")
    );
}

#[test]
fn hdl_matches_golden_file() {
    let dir = std::env::temp_dir().join(format!("foldmul-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mult_32_2");
    let (code, _, _) = foldmul(&["hdl", "--m", "32", "--k", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let written = std::fs::read_to_string(path.with_extension("vhd")).unwrap();
    assert_eq!(written, include_str!("golden/mult_32_2.vhd"));
    std::fs::remove_dir_all(dir).unwrap();
    assert_eq!(foldmul(&["hdl", "--entity", "entity"]).0, 2);
}

#[test]
fn density_series_csv() {
    let (code, out, _) = foldmul(&[
        "density", "--series", "nodes", "--b", "256", "--depth", "3", "--trials", "20", "--seed", "7",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2 + 4);
    assert_eq!(foldmul(&["density", "--delta", "0.7"]).0, 2);
}

#[test]
fn ranges() {
    assert_eq!(parse_range("3..5").unwrap(), [3, 4, 5]);
    assert_eq!(parse_range("3..=5").unwrap(), [3, 4, 5]);
    assert_eq!(parse_range("1,4,9").unwrap(), [1, 4, 9]);
    assert_eq!(parse_range("7").unwrap(), [7]);
    assert!(parse_range("5..3").is_err());
    assert!(parse_range("x").is_err());
}
