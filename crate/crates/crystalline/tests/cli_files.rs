//! End-to-end runs of the file-based CLI surfaces: lattice JSON in, action
//! JSON in, reports out.

use crystalline::cli::run_capture;
use crystalline::koszul::tau_ig;
use std::io::Write;

fn write_file(dir: &tempfile::TempDir, name: &str, content: &str) -> String {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path.display().to_string()
}

#[test]
fn lattice_files_feed_compute_and_gerbe() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(
        &dir,
        "sign6.json",
        r#"{"n":6,"N":2,"T":[[-1,0,0,0,0,0],[0,-1,0,0,0,0],[0,0,-1,0,0,0],[0,0,0,-1,0,0],[0,0,0,0,-1,0],[0,0,0,0,0,-1]],"label":"minus identity"}"#,
    );
    let (code, out, _) = run_capture(&["gerbe", "--lattice", &path]);
    assert_eq!(code, 0);
    assert!(out.contains("Gb = H^3 = 0"), "{out}");

    let (code, out, _) = run_capture(&["compute", "--lattice", &path, "--kmax", "2", "--json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"status\": \"proved\""), "{out}");

    // malformed input exits 1
    let bad = write_file(&dir, "bad.json", r#"{"n":2,"N":2,"T":[[0,1],[1,1]]}"#);
    let (code, _, err) = run_capture(&["compute", "--lattice", &bad]);
    assert_eq!(code, 1);
    assert!(err.contains("order"), "{err}");
}

#[test]
fn tau_files_feed_verify_and_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let tau = tau_ig(3).unwrap();
    let lattice_path = write_file(
        &dir,
        "ig3.json",
        &serde_json::to_string(&tau.lattice().to_json().unwrap()).unwrap(),
    );
    let tau_path = write_file(
        &dir,
        "tau.json",
        &serde_json::to_string(&tau.to_rows_json().unwrap()).unwrap(),
    );

    let (code, out, _) = run_capture(&["verify", "--lattice", &lattice_path, "--tau", &tau_path]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS"), "{out}");

    let (code, out, _) = run_capture(&[
        "oracle",
        "--lattice",
        &lattice_path,
        "--tau",
        &tau_path,
        "--kmax",
        "4",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("all degrees match"), "{out}");

    // an incompatible action: right shape, wrong content
    let wrong = write_file(
        &dir,
        "wrong.json",
        r#"[{"i":1,"terms":[{"coeff":1,"exp":[0,0],"gen":1}]},{"i":2,"terms":[{"coeff":1,"exp":[0,0],"gen":2}]}]"#,
    );
    let (code, out, _) = run_capture(&["verify", "--lattice", &lattice_path, "--tau", &wrong]);
    assert_eq!(code, 0, "verification completes; the outcome is a report");
    assert!(out.starts_with("FAIL"), "{out}");
    let (code, _, err) = run_capture(&[
        "oracle",
        "--lattice",
        &lattice_path,
        "--tau",
        &wrong,
        "--kmax",
        "2",
    ]);
    assert_eq!(code, 1, "the comparison refuses unverified actions");
    assert!(err.contains("not compatible"), "{err}");
}
