//! Black-box tests of the command-line interface: exit codes, output files,
//! manifest digests, and reproducibility.

use serde_json::Value;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hampoly"))
}

fn write_k3(dir: &Path) -> std::path::PathBuf {
    let p = dir.join("k3.json");
    fs::write(
        &p,
        r#"{"n":3,"edges":[[1,2],[2,1],[1,3],[3,1],[2,3],[3,2]]}"#,
    )
    .unwrap();
    p
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process exited with a code")
}

#[test]
fn oracle_exit_codes() {
    let tmp = TempDir::new().unwrap();
    let k3 = write_k3(tmp.path());

    let out = bin()
        .args(["oracle", k3.to_str().unwrap(), "--out"])
        .arg(tmp.path().join("o1"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "Hamiltonian graph must exit 0");
    let oracle: Value =
        serde_json::from_slice(&fs::read(tmp.path().join("o1/oracle.json")).unwrap()).unwrap();
    assert_eq!(oracle["hamiltonian"], Value::Bool(true));

    let path = tmp.path().join("path.json");
    fs::write(&path, r#"{"n":3,"edges":[[1,2],[2,3]]}"#).unwrap();
    let out = bin()
        .args(["oracle", path.to_str().unwrap(), "--out"])
        .arg(tmp.path().join("o2"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 1, "non-Hamiltonian graph must exit 1");

    let bad = tmp.path().join("bad.json");
    fs::write(&bad, "{not json").unwrap();
    let out = bin()
        .args(["oracle", bad.to_str().unwrap(), "--out"])
        .arg(tmp.path().join("o3"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 2, "malformed input must exit 2");
}

#[test]
fn sweep_writes_csv_and_manifest_digests() {
    let tmp = TempDir::new().unwrap();
    let k3 = write_k3(tmp.path());
    let dir = tmp.path().join("sw");
    let out = bin()
        .args(["sweep", k3.to_str().unwrap(), "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let csv = fs::read_to_string(dir.join("sweep.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "alpha,beta,v1,v2,v3,total");
    assert_eq!(lines.len(), 1 + 64, "8x8 grid must produce 64 data rows");

    let manifest: Value =
        serde_json::from_slice(&fs::read(dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["partial"], Value::Bool(false));
    for entry in manifest["outputs"].as_array().unwrap() {
        let bytes = fs::read(entry["path"].as_str().unwrap()).unwrap();
        let digest = format!("{:x}", Sha256::digest(&bytes));
        assert_eq!(
            digest,
            entry["sha256"].as_str().unwrap(),
            "digest mismatch for {}",
            entry["path"]
        );
    }
}

/// The propagation semantics only affects the signal-propagation rows:
/// switching it must change constraint set 3 and nothing else.
#[test]
fn semantics_flag_only_changes_signal_rows() {
    let tmp = TempDir::new().unwrap();
    let k3 = write_k3(tmp.path());
    let mut systems = Vec::new();
    for sem in ["token", "literal"] {
        let dir = tmp.path().join(sem);
        let out = bin()
            .args(["reduce", k3.to_str().unwrap(), "--semantics", sem, "--out"])
            .arg(&dir)
            .output()
            .unwrap();
        assert_eq!(code(&out), 0);
        let sys: Value =
            serde_json::from_slice(&fs::read(dir.join("system.json")).unwrap()).unwrap();
        systems.push(sys);
    }
    let eqs = |v: &Value| v["equations"].as_array().unwrap().clone();
    let (token, literal) = (eqs(&systems[0]), eqs(&systems[1]));
    assert_eq!(token.len(), literal.len());
    let mut cs3_diff = false;
    for (a, b) in token.iter().zip(&literal) {
        assert_eq!(a["label"], b["label"]);
        if a["label"] == "CS3" {
            cs3_diff = a["poly"] != b["poly"];
        } else {
            assert_eq!(a, b, "non-CS3 row changed with the semantics flag");
        }
    }
    assert!(cs3_diff, "CS3 must differ between the two semantics");
}

#[test]
fn prove_reports_infeasibility_with_exit_1() {
    let tmp = TempDir::new().unwrap();
    // cos_a^2 + 1 over the base variables: never at or below 1/2
    let poly = tmp.path().join("poly.json");
    fs::write(
        &poly,
        r#"{"variables":["cos_a","sin_a","cos_b","sin_b"],
            "terms":[{"c":"1/1","e":[2,0,0,0]},
                     {"c":"1/1","e":[0,0,0,0]}]}"#,
    )
    .unwrap();
    let dir = tmp.path().join("pv");
    let out = bin()
        .args([
            "prove",
            poly.to_str().unwrap(),
            "--threshold",
            "1/2",
            "--out",
        ])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(
        code(&out),
        1,
        "infeasible must exit 1; stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rep: Value =
        serde_json::from_slice(&fs::read(dir.join("prove.json")).unwrap()).unwrap();
    assert_eq!(rep["verdict"], "infeasible");

    // same polynomial, but the user-supplied box excludes the whole domain
    // question: a tiny box around cos_a = 1 is still infeasible
    let boxf = tmp.path().join("box.json");
    fs::write(
        &boxf,
        r#"[["9/10","1/1"],["-1/1","1/1"],["-1/1","1/1"],["-1/1","1/1"]]"#,
    )
    .unwrap();
    let dir2 = tmp.path().join("pv2");
    let out = bin()
        .args([
            "prove",
            poly.to_str().unwrap(),
            "--threshold",
            "1/2",
            "--box-file",
            boxf.to_str().unwrap(),
            "--out",
        ])
        .arg(&dir2)
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
}

#[test]
fn reduce_is_reproducible() {
    let tmp = TempDir::new().unwrap();
    let k3 = write_k3(tmp.path());
    let mut bytes = Vec::new();
    for run in ["r1", "r2"] {
        let dir = tmp.path().join(run);
        let out = bin()
            .args(["reduce", k3.to_str().unwrap(), "--aggregate", "--out"])
            .arg(&dir)
            .output()
            .unwrap();
        assert_eq!(code(&out), 0);
        bytes.push((
            fs::read(dir.join("system.json")).unwrap(),
            fs::read(dir.join("aggregate.json")).unwrap(),
        ));
    }
    assert_eq!(bytes[0].0, bytes[1].0, "system.json must be byte-identical");
    assert_eq!(bytes[0].1, bytes[1].1, "aggregate.json must be byte-identical");
}

#[test]
fn pulse_check_passes_for_irrational_rate() {
    let out = bin()
        .args([
            "pulse", "check", "--n", "3", "--r-rat", "0/1", "--r-sqrt2", "1/100", "-i", "1",
            "-j", "2", "--bound", "1000", "--out",
        ])
        .arg(TempDir::new().unwrap().path().join("pc"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
}
