use std::process::{Command, Output};

fn betanum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_betanum"))
        .args(args)
        .env("BETANUM_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = betanum(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn expand_six() {
    assert_eq!(
        stdout(&["--p", "5", "--q", "2", "expand", "--value", "6"]),
        "10.3\n"
    );
}

#[test]
fn expand_digits_and_periodic_values() {
    assert_eq!(
        stdout(&["--p", "5", "--q", "2", "expand", "--digits", "6."]),
        "10.3\n"
    );
    assert_eq!(
        stdout(&["--p", "5", "--q", "2", "expand", "--value", "b-1"]),
        "4.(2)\n"
    );
    assert_eq!(
        stdout(&["--p", "5", "--q", "2", "expand", "--value", "(b-1)/b^2"]),
        "0.04(2)\n"
    );
}

#[test]
fn normalize_example() {
    assert_eq!(
        stdout(&["--p", "5", "--q", "2", "normalize", "--digits", "7,2,3."]),
        "1200.3\n"
    );
    assert_eq!(
        stdout(&["--p", "5", "--q", "2", "normalize", "--digits", "723•"]),
        "1200.3\n"
    );
}

#[test]
fn dn_csv() {
    let out = stdout(&[
        "--p", "5", "--q", "2", "dn", "--n-max", "5", "--format", "csv",
    ]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,bruteforce,recurrence,closed_form"));
    let d: Vec<String> = lines
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(d, ["1", "2", "2", "2", "2"]);
}

#[test]
fn arithmetic_commands() {
    let base = ["--p", "5", "--q", "2"];
    let run = |rest: &[&str]| stdout(&[&base[..], rest].concat());
    assert_eq!(
        run(&["addpow", "--digits", "5213.", "--l", "1"]),
        "10000.3\n"
    );
    assert_eq!(
        run(&["add", "--x", "5", "--y", "5"]),
        "14.3 fp=1 epsilon=1\n"
    );
    assert_eq!(run(&["succ", "--digits", "5."]), "10. B\n");
    assert_eq!(run(&["succ", "--value", "b"]), "11. A\n");
    assert_eq!(run(&["lemmaf", "--j", "2"]), "1.03\n");
    assert_eq!(
        run(&["list", "--n", "8"]),
        "0.\n1.\n2.\n3.\n4.\n5.\n10.\n11.\n"
    );
}

#[test]
fn words_command() {
    let base = ["--p", "5", "--q", "2"];
    let run = |rest: &[&str]| stdout(&[&base[..], rest].concat());
    assert_eq!(
        run(&["words", "--kind", "u", "--n", "12"]),
        "AAAAABAAAAAB\n"
    );
    assert_eq!(
        run(&["words", "--kind", "subst", "--word", "AB"]),
        "AAAAABAAB\n"
    );
    assert_eq!(run(&["words", "--kind", "wn", "--n", "1"]), "B\n");
}

#[test]
fn json_round_trips_byte_identically() {
    for args in [
        &[
            "--p", "5", "--q", "2", "expand", "--value", "b-1", "--format", "json",
        ][..],
        &[
            "--p",
            "4",
            "--q",
            "1",
            "lplus",
            "--digit-bound",
            "2",
            "--format",
            "json",
        ],
        &[
            "--p",
            "5",
            "--q",
            "2",
            "balance",
            "--prefix-len",
            "500",
            "--max-window",
            "20",
            "--format",
            "json",
        ],
        &[
            "--p", "5", "--q", "2", "dn", "--n-max", "4", "--format", "json",
        ],
        &[
            "--p",
            "3",
            "--q",
            "1",
            "verify",
            "--checks",
            "periodicity,lemma-f",
            "--format",
            "json",
        ],
    ] {
        let out = stdout(args);
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", out);
    }
}

#[test]
fn identical_invocations_are_identical() {
    let args = [
        "--p",
        "4",
        "--q",
        "1",
        "lplus",
        "--digit-bound",
        "3",
        "--format",
        "json",
    ];
    let parallel = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_betanum"))
            .args(args)
            .env("BETANUM_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(parallel("1"), parallel("1"));
    assert_eq!(parallel("1"), parallel("3"));
}

#[test]
fn verify_reports_per_check() {
    let out = stdout(&["--p", "3", "--q", "2", "verify", "--checks", "lplus"]);
    assert!(out.starts_with("p=3 q=2 lplus PASS max_fp=1"), "{out}");
    let out = stdout(&[
        "verify",
        "--p-max",
        "4",
        "--checks",
        "balance,defect-sequence",
    ]);
    assert_eq!(out.lines().count(), 2 * 6);
    assert!(out.lines().all(|l| l.contains(" PASS ")), "{out}");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| betanum(args).status.code();
    assert_eq!(code(&["expand", "--value", "6"]), Some(2));
    assert_eq!(
        code(&["--p", "2", "--q", "2", "expand", "--value", "6"]),
        Some(2)
    );
    assert_eq!(code(&["--p", "5", "--q", "2", "frobnicate"]), Some(2));
    assert_eq!(
        code(&["--p", "5", "--q", "2", "expand", "--value", "6x"]),
        Some(2)
    );
    assert_eq!(
        code(&["--p", "5", "--q", "2", "expand", "--value", "-6"]),
        Some(1)
    );
    assert_eq!(
        code(&["--p", "5", "--q", "2", "addpow", "--digits", "6.", "--l", "0"]),
        Some(1)
    );
    assert_eq!(
        code(&["--p", "5", "--q", "2", "succ", "--value", "b-1"]),
        Some(1)
    );
    let err = betanum(&["--p", "5", "--q", "2", "expand", "--value", "-6"]);
    assert!(String::from_utf8_lossy(&err.stderr).starts_with("error:"));
}
