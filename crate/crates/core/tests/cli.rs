//! The `noclid` binary end to end, in a scratch directory.

use std::path::Path;
use std::process::{Command, Output};

use noclid::driver::{PartitionEnvelope, EVALUATE_HEADER, SWEEP_HEADER};
use noclid::PauliSum;

fn noclid(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noclid"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> Output {
    let out = noclid(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn build_bose_hubbard_b3d4() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["build", "bose-hubbard", "--modes", "3", "--d", "4", "--t", "1", "--U", "2", "--lattice", "chain", "--out", "b3d4"]);
    let h = PauliSum::from_text(&std::fs::read_to_string(dir.path().join("b3d4.pauli")).unwrap()).unwrap();
    assert_eq!(h.n(), 6);
    let meta: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("b3d4.json")).unwrap()).unwrap();
    assert_eq!(meta["class"], "bose-hubbard");
    assert_eq!(meta["encoding"], "gray");
    assert_eq!(meta["model"]["d"], 4);
    assert_eq!(meta["model"]["lattice"]["kind"], "chain");
}

#[test]
fn build_two_site_fermi_hubbard() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["build", "fermi-hubbard", "--sites", "2", "--t", "1", "--U", "0", "--out", "fh"]);
    let h = PauliSum::from_text(&std::fs::read_to_string(dir.path().join("fh.pauli")).unwrap()).unwrap();
    let want = PauliSum::from_text("-0.5 X0 X1\n-0.5 Y0 Y1\n").unwrap();
    assert!(h.max_abs_difference(&want) < 1e-15);
}

#[test]
fn electronic_partition_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["build", "electronic", "--fcidump", &fixture("h2.fcidump"), "--reorder", "--seed", "3", "--out", "h2"]);
    let meta: serde_json::Value = serde_json::from_slice(&std::fs::read(d.join("h2.json")).unwrap()).unwrap();
    assert_eq!(meta["model"]["permutation"].as_array().unwrap().len(), 4);
    ok(d, &["partition", "--hamiltonian", "h2.pauli", "--method", "greedy", "--k", "2", "--out", "g2.json"]);
    let env: PartitionEnvelope = serde_json::from_slice(&std::fs::read(d.join("g2.json")).unwrap()).unwrap();
    assert!(env.validation.passed);
    assert!(env.partition.max_width() <= 2);
    ok(d, &["verify", "g2.json"]);
}

#[test]
fn structured_methods_need_matching_models() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["build", "bose-hubbard", "--modes", "3", "--d", "4", "--out", "bh"]);
    ok(d, &["partition", "--hamiltonian", "bh.pauli", "--method", "qpn", "--out", "qpn.json"]);
    let env: PartitionEnvelope = serde_json::from_slice(&std::fs::read(d.join("qpn.json")).unwrap()).unwrap();
    assert_eq!(env.partition.len(), 3);
    assert_eq!(noclid(d, &["partition", "--hamiltonian", "bh.pauli", "--method", "qp", "--out", "x.json"]).status.code(), Some(2));
    assert_eq!(noclid(d, &["partition", "--hamiltonian", "bh.pauli", "--method", "greedy", "--out", "x.json"]).status.code(), Some(2));
    assert_eq!(noclid(d, &["build", "bose-hubbard", "--lattice", "moebius", "--out", "y"]).status.code(), Some(2));
    assert_eq!(noclid(d, &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn illustrative_fc_si_has_five_fragments() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("toy.pauli"), noclid::instances::ILLUSTRATIVE_H).unwrap();
    ok(d, &["partition", "--hamiltonian", "toy.pauli", "--method", "fc-si", "--out", "fc.json"]);
    let env: PartitionEnvelope = serde_json::from_slice(&std::fs::read(d.join("fc.json")).unwrap()).unwrap();
    assert_eq!(env.partition.len(), 5);
}

#[test]
fn evaluate_injected_basis_state_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // H = (X + Z)/sqrt2 split into its two Pauli bases
    let s = std::f64::consts::FRAC_1_SQRT_2;
    std::fs::write(d.join("h1.pauli"), format!("{s} X0\n{s} Z0\n")).unwrap();
    ok(d, &["partition", "--hamiltonian", "h1.pauli", "--method", "qwc-si", "--out", "gpb.json"]);
    ok(d, &["partition", "--hamiltonian", "h1.pauli", "--method", "greedy", "--k", "1", "--out", "one.json"]);
    ok(d, &["evaluate", "gpb.json", "one.json", "--state", "basis:0", "--csv", "a.csv"]);
    let csv = std::fs::read_to_string(d.join("a.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(EVALUATE_HEADER));
    let gpb: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!((gpb[0], gpb[1], gpb[2]), ("qwc-si", "basis:0", "2"));
    assert!((gpb[3].parse::<f64>().unwrap() - 0.5).abs() < 1e-15);
    // the single-fragment row equals its lower bound
    let single: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(single[2], "1");
    assert_eq!(single[3], single[4]);

    ok(d, &["evaluate", "gpb.json", "one.json", "--states", "5", "--seed", "9", "--csv", "b.csv"]);
    ok(d, &["evaluate", "gpb.json", "one.json", "--states", "5", "--seed", "9", "--csv", "c.csv"]);
    assert_eq!(std::fs::read(d.join("b.csv")).unwrap(), std::fs::read(d.join("c.csv")).unwrap());
}

#[test]
fn evaluate_rejects_mixed_hamiltonians() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("a.pauli"), "1 X0\n").unwrap();
    std::fs::write(d.join("b.pauli"), "1 Z0\n").unwrap();
    ok(d, &["partition", "--hamiltonian", "a.pauli", "--method", "fc-si", "--out", "a.json"]);
    ok(d, &["partition", "--hamiltonian", "b.pauli", "--method", "fc-si", "--out", "b.json"]);
    assert_eq!(noclid(d, &["evaluate", "a.json", "b.json"]).status.code(), Some(2));
}

#[test]
fn sweep_k_reports_k_star() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["build", "electronic", "--fcidump", &fixture("h2.fcidump"), "--out", "h2"]);
    let out = ok(d, &["sweep-k", "--hamiltonian", "h2.pauli", "--states", "4"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], SWEEP_HEADER);
    assert_eq!(rows.len(), 5);
    let last: Vec<&str> = rows[4].split(',').collect();
    assert_eq!((last[0], last[1]), ("4", "1"));
    let (mean, bound): (f64, f64) = (last[2].parse().unwrap(), last[4].parse().unwrap());
    assert!((mean - bound).abs() < 1e-10);
    assert!(String::from_utf8_lossy(&out.stderr).contains("k* = "));
    assert_eq!(noclid(d, &["sweep-k", "--hamiltonian", "h2.pauli", "--k-max", "9"]).status.code(), Some(2));
}

#[test]
fn theorem1_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["theorem1", "--resolution", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 5);
    let out = ok(dir.path(), &["theorem1", "--with-anchors"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 101 * 101 + 2);
    let anchor: Vec<f64> = text.lines().nth(101 * 101 + 1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((anchor[2] - 1.0).abs() < 1e-12 && anchor[3].abs() < 1e-12);
    assert_eq!(noclid(dir.path(), &["theorem1", "--resolution", "1"]).status.code(), Some(2));
}

#[test]
fn failed_validation_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("h.pauli"), "1 X0\n1 Z0\n").unwrap();
    ok(d, &["partition", "--hamiltonian", "h.pauli", "--method", "fc-si", "--out", "p.json"]);
    let mut env: serde_json::Value = serde_json::from_slice(&std::fs::read(d.join("p.json")).unwrap()).unwrap();
    // merge both single-term fragments: X and Z anticommute
    let second = env["partition"]["fragments"][1]["terms"][0].clone();
    env["partition"]["fragments"][0]["terms"].as_array_mut().unwrap().push(second);
    env["partition"]["fragments"].as_array_mut().unwrap().pop();
    std::fs::write(d.join("bad.json"), env.to_string()).unwrap();
    assert_eq!(noclid(d, &["verify", "bad.json"]).status.code(), Some(3));
}
