use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn campaigns() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../campaigns")
}

fn donkin(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_donkin"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .env_remove("DONKIN_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn ok(cache: &Path, args: &[&str]) -> String {
    let out = donkin(cache, args);
    assert!(
        out.status.success(),
        "{args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(cache: &Path, args: &[&str]) -> Option<i32> {
    donkin(cache, args).status.code()
}

#[test]
fn characters() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path();
    let e6 = ok(c, &["char", "E6", "[1,0,0,0,0,0]"]);
    assert!(e6.ends_with("dominant weights 1\nweights 27\ndimension 27\n"), "{e6}");
    assert!(ok(c, &["char", "A1", "[0]"]).ends_with("dimension 1\n"));
    let f4 = ok(c, &["char", "F4", "[0,0,0,1]"]);
    assert!(f4.contains("[0,0,0,0] 2\n"));
    assert!(f4.ends_with("weights 25\ndimension 26\n"), "{f4}");
}

#[test]
fn branching_and_products() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path();
    let b = ok(c, &["branch", "E6/F4", "[0,0,0,1,0,0]", "--dims"]);
    assert!(b.ends_with("dimension 2925\n"), "{b}");
    assert_eq!(ok(c, &["alt", "2", "E6", "[1,0,0,0,0,0]"]), "[0,0,1,0,0,0] 1\n");
    assert_eq!(ok(c, &["tensor", "E6", "[0,0,0,0,0,0]", "[0,0,0,0,0,0]"]), "[0,0,0,0,0,0] 1\n");
    let sym = ok(c, &["sym", "2", "A1", "[1]"]);
    assert_eq!(sym, "[2] 1\n");
    let image = ok(c, &["restrict", "F4/B4", "[0,0,0,1]", "--image"]);
    assert_eq!(image.lines().count(), 1);
}

#[test]
fn modular_queries() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path();
    assert!(ok(c, &["linkage", "F4", "2", "[0,1,0,0]", "[0,0,1,1]"]).starts_with("UNLINKED"));
    assert!(ok(c, &["linkage", "A1", "3", "[0]", "[4]"]).starts_with("LINKED"));
    assert!(ok(c, &["linkage", "A1", "3", "[0]", "[1]"]).starts_with("UNLINKED"));
    let j = ok(c, &["jantzen", "A1", "2", "[1]"]);
    assert_eq!(j.lines().next(), Some("0"));
    assert!(j.contains("irreducible: yes"));
    let j = ok(c, &["jantzen", "A1", "3", "[4]"]);
    assert_ne!(j.lines().next(), Some("0"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path();
    assert_eq!(code(c, &["char", "E6", "[1,0]"]), Some(2));
    assert_eq!(code(c, &["char", "Q7", "[1]"]), Some(2));
    assert_eq!(code(c, &["branch", "E6/Z3", "[0,0,0,0,0,0]"]), Some(2));
    assert_eq!(code(c, &["linkage", "A1", "4", "[0]", "[1]"]), Some(2));
    assert_eq!(code(c, &["frobnicate"]), Some(2));
    assert_eq!(code(c, &["--orbit-cap", "10", "char", "A1", "[1]"]), Some(2));
    let capped = ["--no-cache", "--orbit-cap", "10000", "restrict", "E8/D8", "[0,0,0,1,0,0,0,0]"];
    assert_eq!(code(c, &capped), Some(3));
}

#[test]
fn campaigns_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("cache");
    let empty = dir.path().join("empty.campaign");
    fs::write(&empty, "# nothing\n").unwrap();
    assert_eq!(ok(&c, &["verify", empty.to_str().unwrap()]), "");

    let bad = campaigns().join("corrupted.campaign");
    let out = donkin(&c, &["verify", bad.to_str().unwrap(), "--text"]);
    assert_eq!(out.status.code(), Some(4));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Failed [0,1,0,0] via aux alt(2,w4)"), "{text}");

    let small = dir.path().join("small.campaign");
    fs::write(&small, "case F4/B4\nprimes 3 5\nend\ncase E6/F4\nprimes 2 3\nend\n").unwrap();
    let out_dir = dir.path().join("out");
    let summary = ok(&c, &["verify", small.to_str().unwrap(), "--out", out_dir.to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(
        summary,
        "F4/B4 p=3: Certified\nF4/B4 p=5: Certified\nE6/F4 p=2: Certified\nE6/F4 p=3: CertifiedWithExternal\n"
    );
    assert!(out_dir.join("F4_B4-p3.json").is_file());
    assert!(out_dir.join("E6_F4-p2.txt").is_file());

    let json = ok(&c, &["verify", small.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 4);
    for r in reports {
        for key in ["case", "steps", "status"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
    // same bytes with a warm cache and more threads
    assert_eq!(ok(&c, &["verify", small.to_str().unwrap(), "--json", "--jobs", "4"]), json);
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path();
    assert_eq!(ok(c, &["cache", "verify"]), "OK, 0 entries\n");
    let first = ok(c, &["char", "E6", "[0,0,0,1,0,0]"]);
    let stats = ok(c, &["cache", "stats"]);
    assert!(stats.contains("E6"), "{stats}");
    assert!(!stats.contains("entries 0\n"));
    assert!(ok(c, &["cache", "verify"]).starts_with("OK, "));

    let entry = c.join("E6").join("0_0_0_1_0_0.char");
    let text = fs::read_to_string(&entry).unwrap();
    fs::write(&entry, text.replacen(" 1\n", " 7\n", 1)).unwrap();
    let out = donkin(c, &["cache", "verify"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stdout).contains("checksum mismatch"));

    // the bad entry is skipped, recomputed and repaired
    let again = donkin(c, &["char", "E6", "[0,0,0,1,0,0]"]);
    assert!(again.status.success());
    assert_eq!(String::from_utf8(again.stdout).unwrap(), first);
    assert!(String::from_utf8_lossy(&again.stderr).contains("skipped"));
    assert!(ok(c, &["cache", "verify"]).starts_with("OK, "));
    assert_eq!(fs::read_to_string(&entry).unwrap(), text);

    ok(c, &["cache", "clear"]);
    assert_eq!(ok(c, &["cache", "verify"]), "OK, 0 entries\n");
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_donkin"))
        .args(["char", "A2", "[1,0]"])
        .env("DONKIN_CACHE_DIR", dir.path())
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("A2").join("1_0.char").is_file());
}
