use std::fs;
use std::process::{Command, Output};

fn howe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_howe"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const P499: [&str; 10] = [
    "--p",
    "499",
    "--alpha1",
    "47",
    "--alpha2",
    "436",
    "--a",
    "2,1,10,55,92,84",
    "--b",
    "36,275",
];

#[test]
fn verify_tables_pass() {
    for (table, rows) in [("1", 3), ("2", 19), ("3", 3)] {
        let out = howe(&["verify-tables", table]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        let text = stdout(&out);
        assert_eq!(
            text.lines().filter(|l| l.starts_with("PASS ")).count(),
            rows
        );
        assert!(!text.contains("FAIL"));
    }
}

#[test]
fn verify_tables_reports_failures_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let wrong = dir.path().join("wrong.csv");
    fs::write(
        &wrong,
        "p,alpha1,alpha2,a1,a2,a3,a4,a5,a6,b5,b6\n499,47,436,2,1,10,55,92,84,36,275\n",
    )
    .unwrap();
    let out = howe(&["verify-tables", "2", "--data", wrong.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL 499,47,436"));

    let broken = dir.path().join("broken.csv");
    fs::write(
        &broken,
        "p,alpha1,alpha2,a1,a2,a3,a4,a5,a6,b5,b6\n11,4,6,5,3,10,7,6,8,9,2\n11,4,6,5,3\n",
    )
    .unwrap();
    let out = howe(&["verify-tables", "2", "--data", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    assert_eq!(howe(&["verify-tables", "4"]).status.code(), Some(2));
}

#[test]
fn decompose_prints_factors() {
    let out = howe(&P499);
    assert_eq!(out.status.code(), Some(2), "the subcommand is required");
    let mut args = vec!["decompose"];
    args.extend(P499);
    let out = howe(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("E5: theta = 342, lambda = 198"), "{text}");
    assert!(text.contains("#C(F_499) = 720"));
    assert!(text.contains("Serre bound over F_p: yes"));
}

#[test]
fn decompose_usage_and_validation_errors() {
    let out = howe(&["decompose", "--p", "499", "--alpha1", "47"]);
    assert_eq!(out.status.code(), Some(2));

    let out = howe(&[
        "decompose",
        "--p",
        "499",
        "--alpha1",
        "47",
        "--alpha2",
        "436",
        "--a",
        "2,1,10",
        "--b",
        "36,275",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = howe(&[
        "decompose",
        "--p",
        "499",
        "--alpha1",
        "47",
        "--alpha2",
        "436",
        "--a",
        "2,1,10,55,92,84",
        "--b",
        "36,276",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("CrossRatioFailed"),
        "{}",
        stderr(&out)
    );

    let out = howe(&[
        "decompose",
        "--p",
        "499",
        "--alpha1",
        "0",
        "--alpha2",
        "436",
        "--a",
        "2,1,10,55,92,92",
        "--b",
        "36,275",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(
        err.contains("Degenerate: alpha1 = 0") && err.contains("Degenerate: a5 = a6"),
        "{err}"
    );

    let out = howe(&[
        "decompose",
        "--p",
        "500",
        "--alpha1",
        "1",
        "--alpha2",
        "1",
        "--a",
        "0,1,2,3,4,5",
        "--b",
        "6,7",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for row in [
        [
            "--p",
            "11",
            "--alpha1",
            "4",
            "--alpha2",
            "6",
            "--a",
            "5,3,10,7,6,8",
            "--b",
            "9,2",
        ],
        [
            "--p",
            "37",
            "--alpha1",
            "17",
            "--alpha2",
            "6",
            "--a",
            "0,1,3,31,34,13",
            "--b",
            "29,30",
        ],
    ] {
        let mut args = vec!["decompose", "--json"];
        args.extend(row);
        let first = howe(&args);
        assert_eq!(first.status.code(), Some(0));
        let path = dir.path().join("report.json");
        fs::write(&path, &first.stdout).unwrap();
        let again = howe(&["decompose", "--json", "--from-json", path.to_str().unwrap()]);
        assert_eq!(again.status.code(), Some(0));
        let a: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
        let b: serde_json::Value = serde_json::from_slice(&again.stdout).unwrap();
        assert_eq!(a["verdicts"], b["verdicts"]);
        assert_eq!(a, b);
    }
}

#[test]
fn count_examples() {
    let out = howe(&[
        "count", "--theta", "8", "--lambda", "6", "--p", "11", "--ext", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stdout(&out).starts_with("#C(F_121) = 144\ntrace = -22\n"),
        "{}",
        stdout(&out)
    );

    let out = howe(&[
        "count", "--theta", "1", "--lambda", "2", "--p", "5", "--ext", "1",
    ]);
    assert!(stdout(&out).starts_with("#C(F_5) = 8\n"));

    let out = howe(&["count", "--alpha", "1", "--roots", "0,1,2,3,4", "--p", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("genus = 2"));

    let out = howe(&[
        "count", "--theta", "1", "--lambda", "2", "--p", "5", "--ext", "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_cap_suggests_zeta() {
    let out = howe(&[
        "count", "--theta", "3", "--lambda", "5", "--p", "251", "--ext", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--zeta"), "{}", stderr(&out));
    let out = howe(&[
        "count", "--theta", "3", "--lambda", "5", "--p", "251", "--ext", "3", "--zeta",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("method = zeta lift"));
}

#[test]
fn search_examples() {
    let out = howe(&[
        "search",
        "--target",
        "maximal-fp2",
        "--p-min",
        "11",
        "--p-max",
        "11",
        "--max-hits",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("p,alpha1,alpha2,a1,a2,a3,a4,a5,a6,b5,b6")
    );
    assert_eq!(lines.filter(|l| l.starts_with("11,")).count(), 5);
    assert!(stderr(&out).contains("hits=5"));

    let out = howe(&[
        "search", "--target", "serre-fp", "--p-min", "3", "--p-max", "20",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = howe(&[
        "search",
        "--target",
        "serre-fp4",
        "--p-min",
        "17",
        "--p-max",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_finds_table_row_when_pinned() {
    let out = howe(&[
        "search",
        "--target",
        "serre-fp",
        "--p-min",
        "499",
        "--p-max",
        "499",
        "--pin-alpha1",
        "47",
        "--pin-alpha2",
        "436",
        "--pin-a1",
        "2",
        "--pin-a2",
        "1",
        "--pin-a3",
        "10",
        "--pin-a4",
        "55",
        "--pin-a5",
        "92",
        "--format",
        "jsonl",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let found = stdout(&out).lines().any(|line| {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        v["b"] == serde_json::json!([36, 275]) && v["target"] == "serre-fp"
    });
    assert!(found, "{}", stdout(&out));
}

#[test]
fn selftest_passes() {
    let out = howe(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}
