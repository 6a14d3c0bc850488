use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypermult"))
        .args(args)
        .output()
        .expect("run hypermult")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compare with a stored snapshot; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, args: &[&str]) {
    let o = bin(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let got = stdout(&o);
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "output of {args:?} differs from {name}");
}

#[test]
fn all_examples_pass() {
    let o = bin(&["examples", "run", "--all"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(out.contains("failed: 0"), "{out}");
}

#[test]
fn registry_has_the_required_entries() {
    let out = stdout(&bin(&["examples", "list"]));
    let ids: Vec<&str> = out.lines().skip(1).filter_map(|l| l.split_whitespace().next()).collect();
    assert!(ids.len() >= 18, "{ids:?}");
    assert!(ids.contains(&"liwang-resultant"));
}

#[test]
fn li_wang_example() {
    check_golden("liwang_resultant.out", &["examples", "run", "liwang-resultant"]);
}

#[test]
fn cyclotomic_multiplicity() {
    let o = bin(&["--json", "mult", "--field", "S", "-f", "x^4-x^3+x^2-x+1", "-l", "x-1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], 4);
    assert_eq!(v["witness"].as_array().map(Vec::len), Some(4));
    check_golden("mult_cyclotomic.out", &["mult", "--field", "S", "-f", "x^4-x^3+x^2-x+1", "-l", "x-1"]);
}

#[test]
fn text_snapshots() {
    check_golden("descartes.out", &["descartes", "+ + - 0 - +"]);
    check_golden("subdivision.out", &["subdivision", "--field", "T", "-f", "0 + x + y + 2x^2 + 1xy + 2y^2"]);
    check_golden(
        "system_bound.out",
        &["--json", "system-bound", "-f", "1 + x - y", "-f", "1 + x^3 - y^3 - x^3y^3", "--h", "+,+"],
    );
    check_golden("divides.out", &["divides", "-f", "+|- +|+ - -|+ - + +", "-l", "1 + x + y"]);
    check_golden("real_quotient.out", &["--json", "real-quotient", "-f", "1 - x^2 + xy - y^2", "--signs", "+,-"]);
}

#[test]
fn svg_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("hypermult-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = "0 + x + y - 1x^2 + t^(-1)xy + 2y^2";
    let mut files = Vec::new();
    for i in 0..2 {
        let p = dir.join(format!("curve{i}.svg"));
        let o = bin(&["--field", "TR", "--svg", p.to_str().unwrap(), "curve", "-f", f]);
        assert!(o.status.success());
        files.push(std::fs::read_to_string(&p).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let path = golden("curve.svg");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &files[0]).unwrap();
    }
    assert_eq!(files[0], std::fs::read_to_string(path).unwrap());
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn exit_codes() {
    let o = bin(&["--json", "mult", "-f", "1 + x +", "-l", "1 + x"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"], "parse");

    assert_eq!(bin(&["mult", "-f", "1 + x"]).status.code(), Some(2));
    assert_eq!(bin(&["no-such-command"]).status.code(), Some(2));

    let o = bin(&["--json", "--field", "T", "transverse", "-f", "0 + x + y", "-f", "0 + x + y"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"], "infinite_intersection");
    assert!(v["message"].is_string());

    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}
