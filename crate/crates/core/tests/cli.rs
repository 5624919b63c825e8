use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn hodyne(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hodyne"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hodyne-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn train_parse_eval_round_trip() {
    let dir = scratch("round-trip");
    let s = dir.join("subject.net");
    let h = dir.join("head.net");
    let (s, h) = (s.to_str().unwrap(), h.to_str().unwrap());
    stdout(&hodyne(&["train", "--stage", "subject", "--out", s], None));
    stdout(&hodyne(&["train", "--stage", "head", "--out", h], None));
    assert!(std::fs::read_to_string(s).unwrap().starts_with("hodyne-net v1 mode=tripos tagset="));

    let input = "Still waters run deep.\n\nStop.\nThe pumps fail quickly.\n";
    let out = stdout(&hodyne(&["parse", "--subject-net", s, "--head-net", h], Some(input)));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines,
        [
            "[ Still [ waters ] ] run deep .\thead=waters\tagreement=agree",
            "EXCLUDED(too-short)\tStop.",
            "[ The [ pumps ] ] fail quickly .\thead=pumps\tagreement=agree",
        ]
    );

    let out = stdout(&hodyne(&["eval", "--kv", "--subject-net", s, "--head-net", h], None));
    assert!(out.lines().any(|l| l == "subject_found=1.000000"), "{out}");
    assert!(out.lines().any(|l| l == "excluded=0"), "{out}");
    let table = stdout(&hodyne(&["eval", "--subject-net", s, "--head-net", h], None));
    assert!(table.lines().any(|l| l.starts_with("subject found") && l.ends_with("100.0%")), "{table}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn training_twice_writes_identical_files() {
    let dir = scratch("determinism");
    let a = dir.join("a.net");
    let b = dir.join("b.net");
    for p in [&a, &b] {
        stdout(&hodyne(&["train", "--features", "both", "--out", p.to_str().unwrap()], None));
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    assert!(String::from_utf8(a).unwrap().starts_with("hodyne-net v1 mode=both"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn candidates_dump() {
    let out = stdout(&hodyne(&["candidates", "--sentence", "Then the performance of the pump must be monitored."], None));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "# 4 candidates from 216 unpruned");
    assert_eq!(lines[1], "START ADV OPEN DET NOUN PREP DET NOUN CLOSE MODAL BE VPART PUNCT");
    assert_eq!(lines.len(), 5);
}

#[test]
fn check_on_clean_corpus() {
    let out = stdout(&hodyne(&["check"], None));
    assert!(out.ends_with("# 0 flagged, 0 excluded, 0 faults of 320 entries\n"), "{out}");
}

#[test]
fn usage_errors() {
    let o = hodyne(&["train", "--stage", "predicate"], None);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("--stage"));
    let o = hodyne(&["parse", "--subject-net", "/nonexistent/x.net"], Some("x\n"));
    assert!(!o.status.success());
    let o = hodyne(&["--features", "quad", "eval"], None);
    assert!(!o.status.success());
    let dir = scratch("bad-lexicon");
    let lex = dir.join("lexicon.txt");
    std::fs::write(&lex, "default NOUN\nword x NOPE\n").unwrap();
    let o = hodyne(&["--lexicon", lex.to_str().unwrap(), "candidates", "--sentence", "x"], None);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("lexicon:2:"));
    std::fs::remove_dir_all(dir).unwrap();
}
