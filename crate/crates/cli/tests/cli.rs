//! End-to-end tests of the `illposed` binary: exit codes, file outputs,
//! manifests, and determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_illposed"))
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("illposed-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_sin_signal(path: &Path, n: usize) {
    let dx = 2.0 * std::f64::consts::PI / n as f64;
    let mut text = format!("# 0 {dx} {} 0\n", n as f64 * dx);
    for i in 0..n {
        text.push_str(&format!("{}\n", (i as f64 * dx).sin()));
    }
    std::fs::write(path, text).unwrap();
}

fn run_ok(out: &Output) {
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

/// Manifest lines that participate in the determinism guarantee.
fn stable_manifest_lines(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with("timing."))
        .map(String::from)
        .collect()
}

#[test]
fn diff_writes_output_and_manifest_deterministically() {
    let dir = tempdir("diff");
    let sig = dir.join("sig.txt");
    write_sin_signal(&sig, 4096);
    let out_path = dir.join("deriv.txt");
    let run = || {
        let out = bin()
            .args([
                "diff",
                "--in",
                sig.to_str().unwrap(),
                "--delta",
                "1e-4",
                "--m2",
                "1",
                "--add-noise",
                "--seed",
                "42",
                "--out",
                out_path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        run_ok(&out);
        std::fs::read(&out_path).unwrap()
    };
    let first = run();
    let manifest_path = dir.join("deriv.txt.manifest");
    assert!(manifest_path.exists(), "manifest missing");
    let manifest_first = stable_manifest_lines(&manifest_path);
    let second = run();
    assert_eq!(first, second, "same config + seed must be byte-identical");
    assert_eq!(manifest_first, stable_manifest_lines(&manifest_path));
    // different seed changes the bytes
    let out = bin()
        .args([
            "diff",
            "--in",
            sig.to_str().unwrap(),
            "--delta",
            "1e-4",
            "--m2",
            "1",
            "--add-noise",
            "--seed",
            "43",
            "--out",
            out_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    run_ok(&out);
    assert_ne!(first, std::fs::read(&out_path).unwrap());
    let header = std::fs::read_to_string(&out_path).unwrap();
    assert!(header.starts_with("# bound="));
}

#[test]
fn unknown_flag_exits_one_with_usage() {
    let out = bin().args(["diff", "--frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.to_lowercase().contains("usage"), "stderr: {stderr}");
}

#[test]
fn unknown_subcommand_exits_one() {
    let out = bin().args(["transmogrify"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_signal_file_names_the_line() {
    let dir = tempdir("badsig");
    let sig = dir.join("sig.txt");
    std::fs::write(&sig, "# 0 0.1 0.3 0\n1.0\nnot-a-number\n2.0\n").unwrap();
    let out = bin()
        .args([
            "diff",
            "--in",
            sig.to_str().unwrap(),
            "--delta",
            "1e-2",
            "--m2",
            "1",
            "--out",
            dir.join("x.txt").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 3"), "stderr: {stderr}");
}

#[test]
fn radon_simulate_then_reconstruct() {
    let dir = tempdir("radon");
    let sino = dir.join("sino.txt");
    let out = bin()
        .args([
            "radon",
            "simulate",
            "--phantom",
            "disc:0.15,-0.1,0.55,1",
            "--sector",
            "30:150",
            "--n-alpha",
            "24",
            "--n-p",
            "801",
            "--out",
            sino.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    run_ok(&out);
    assert!(dir.join("sino.txt.manifest").exists());
    let recon = dir.join("recon.txt");
    let out = bin()
        .args([
            "radon",
            "reconstruct",
            "--in",
            sino.to_str().unwrap(),
            "--j",
            "8",
            "--T",
            "8",
            "--grid",
            "16",
            "--out",
            recon.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    run_ok(&out);
    let text = std::fs::read_to_string(&recon).unwrap();
    assert!(text.starts_with("# 16 16 "));
    assert_eq!(text.lines().count(), 1 + 16 * 16);
}

#[test]
fn repro_single_criterion_and_list() {
    let out = bin().args(["repro", "list"]).output().unwrap();
    run_ok(&out);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("sharpness"));
    assert_eq!(stdout.lines().count(), 9);

    let out = bin().args(["repro", "2"]).output().unwrap();
    run_ok(&out);
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));

    let out = bin().args(["repro", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn blowup_unreachable_target_exits_two() {
    // 8 plane waves cannot match the growing solution to 1e-10
    let out = bin()
        .args(["propc", "blowup", "--t", "1", "--eps", "1e-1,1e-10", "--n-alpha", "8"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_dir_env_redirects_relative_outputs() {
    let dir = tempdir("envout");
    let sig = dir.join("sig.txt");
    write_sin_signal(&sig, 1024);
    let out = bin()
        .args([
            "diff",
            "--in",
            sig.to_str().unwrap(),
            "--delta",
            "1e-3",
            "--m2",
            "1",
            "--out",
            "rel-deriv.txt",
        ])
        .env("ILLPOSED_OUT_DIR", dir.to_str().unwrap())
        .output()
        .unwrap();
    run_ok(&out);
    assert!(dir.join("rel-deriv.txt").exists());
    assert!(dir.join("rel-deriv.txt.manifest").exists());
}

#[test]
fn propc_products_prints_ladder_table() {
    let out = bin()
        .args(["propc", "products", "--f", "builtin:abs2", "--N", "2"])
        .output()
        .unwrap();
    run_ok(&out);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("residual"));
    // the |x|^2 fixture is exactly representable at N = 2
    let row = stdout.lines().nth(1).unwrap();
    let residual: f64 = row.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(residual < 1e-8, "residual {residual}");
}
