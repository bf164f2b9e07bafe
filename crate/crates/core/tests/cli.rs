use std::path::Path;
use std::process::{Command, Output};

fn cli(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shortcut-forge"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn binary")
}

#[test]
fn version_prints_semver() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(dir.path(), &["--version"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let version = text.split_whitespace().last().unwrap();
    let parts: Vec<&str> = version.split('.').collect();
    assert_eq!(parts.len(), 3, "{text}");
    assert!(parts.iter().all(|p| p.parse::<u64>().is_ok()), "{text}");
}

#[test]
fn unknown_subcommand_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cli(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(cli(dir.path(), &["shortcut", "--bogus"]).status.code(), Some(2));
}

#[test]
fn randomized_subcommands_need_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(dir.path(), &["gen", "--family", "path", "--n", "5", "--out", "g.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_shortcut_verify_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let steps: [&[&str]; 3] = [
        &["gen", "--family", "random_dag", "--n", "96", "--p", "0.05", "--seed", "1", "--out", "g.txt"],
        &["shortcut", "--input", "g.txt", "--diameter", "4", "--seed", "1", "--out", "h.txt"],
        &["verify", "--graph", "g.txt", "--edges", "h.txt", "--mode", "shortcut", "--diameter", "4"],
    ];
    for args in steps {
        let out = cli(d, args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/seed1_h.txt");
    assert_eq!(std::fs::read(d.join("h.txt")).unwrap(), std::fs::read(golden).unwrap());
}

#[test]
fn verify_rejects_a_non_closure_edge() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("g.txt"), "3 2\n0 1\n1 2\n").unwrap();
    std::fs::write(d.join("h.txt"), "3 1\n2 0 sampled_pair\n").unwrap();
    let out = cli(d, &["verify", "--graph", "g.txt", "--edges", "h.txt", "--mode", "shortcut", "--diameter", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn decomp_lists_chains_and_antichains() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("g.txt"), "4 3\n0 1\n1 2\n2 3\n").unwrap();
    let out = cli(d, &["decomp", "--input", "g.txt", "--ell", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "chain 0 1 2 3"), "{text}");
}
