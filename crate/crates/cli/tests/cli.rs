use std::path::Path;
use std::process::{Command, Output};

const HEADER: &str = "name,n,nodes,feas_tests,pivots,promotions,time_ms,verdict,iterations";

fn untangle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_untangle")).args(args).env_remove("UNTANGLE_CORPUS_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn recognize_exit_codes() {
    let o = untangle(&["recognize", "corpus:solid-torus"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Trivial\n"));

    let o = untangle(&["recognize", "corpus:trefoil"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("NonTrivial\n"));
    assert!(stdout(&o).contains("nodes=41"));

    assert_eq!(untangle(&["recognize", "missing.tri"]).status.code(), Some(2));
    assert_eq!(untangle(&["recognize", "corpus:no-such-knot"]).status.code(), Some(2));
}

#[test]
fn recognize_reads_files_and_writes_certificates_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("st.tri");
    std::fs::write(&input, "1\n0 0:1230 0:3012 - -\n").unwrap();
    let cert = dir.path().join("disc.txt");
    let stats = dir.path().join("stats.csv");
    for _ in 0..2 {
        let o = untangle(&[
            "recognize",
            input.to_str().unwrap(),
            "--emit-certificate",
            cert.to_str().unwrap(),
            "--stats",
            stats.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let disc = std::fs::read_to_string(&cert).unwrap();
    assert_eq!(disc.split_whitespace().count(), 7);
    assert!(Path::new(&format!("{}.tri", cert.display())).exists());
    let text = std::fs::read_to_string(&stats).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("st,1,"));
    assert!(lines[1].ends_with(",Trivial,1"));
}

#[test]
fn certificate_requested_for_a_knot_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("disc.txt");
    let o = untangle(&["recognize", "corpus:trefoil", "--emit-certificate", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_writes_sorted_records_and_profile() {
    let dir = tempfile::tempdir().unwrap();
    let profile = dir.path().join("profile.csv");
    let o = untangle(&["bench", "*torus*", "--repeat", "2", "--jobs", "2", "--profile", profile.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some(HEADER));
    let names: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(names.contains(&"solid-torus"));
    let p = std::fs::read_to_string(&profile).unwrap();
    assert_eq!(p.lines().next(), Some("name,n,nodes"));
    assert_eq!(p.lines().count(), names.len() + 1);
}

#[test]
fn bench_is_deterministic_apart_from_timing() {
    let strip = |o: Output| -> Vec<String> {
        stdout(&o)
            .lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f.remove(6);
                f.join(",")
            })
            .collect()
    };
    let a = strip(untangle(&["bench", "trefoil*"]));
    let b = strip(untangle(&["bench", "trefoil*", "--force-exact"]));
    assert_eq!(a, b);
}

#[test]
fn verify_quick_passes() {
    let o = untangle(&["verify", "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn verify_reports_a_corrupted_corpus() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("manifest.csv"), "name,file,expected,n,vertices\nbad,bad.tri,Trivial,1,1\n").unwrap();
    std::fs::write(dir.path().join("bad.tri"), "1\n0 0:1230 garbage\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_untangle"))
        .args(["verify", "--quick"])
        .env("UNTANGLE_CORPUS_DIR", dir.path())
        .output()
        .unwrap();
    assert_ne!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("FAIL corpus"));
}
