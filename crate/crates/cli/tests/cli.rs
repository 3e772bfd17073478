use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn qsm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsm"))
        .args(args)
        .env_remove("QSM_THREADS")
        .output()
        .expect("qsm runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn check_args(name: &str) -> Vec<String> {
    vec![
        "check".into(),
        "--ambient".into(),
        fixture(&format!("{name}.ambient")),
        "--monomials".into(),
        fixture(&format!("{name}.monomials")),
        "--output".into(),
        "machine".into(),
        "--witness".into(),
    ]
}

fn run(args: &[String]) -> Output {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    qsm(&refs)
}

#[test]
fn check_ex1_reports_the_witness() {
    let o = run(&check_args("ex1"));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("status = Quasismooth"));
    assert!(out.contains("[stratum]\nset = {x1,x2}\nk = 2\noutcome = witness\ngamma = {x1,x2}\nrank_small = 2\nrank_big = 3\n"), "{out}");
}

#[test]
fn check_p1_fails_with_exit_one() {
    let o = run(&check_args("p1"));
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("failing_stratum = {x1,y1}"), "{out}");
    assert!(out.contains("reason = NoDegenerateSubcollection"));
}

#[test]
fn machine_output_is_reproducible_across_thread_counts() {
    let args = check_args("dual_ex1");
    let first = stdout(&run(&args));
    assert_eq!(first, stdout(&run(&args)));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    for threads in ["0", "1", "4"] {
        let o = Command::new(env!("CARGO_BIN_EXE_qsm"))
            .args(&refs)
            .env("QSM_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(stdout(&o), first, "QSM_THREADS={threads}");
    }
}

#[test]
fn every_method_gives_the_same_exit_code() {
    for name in ["ex1", "p1", "not_max_comp", "blowup"] {
        let mut codes = Vec::new();
        for method in ["rank", "polytope", "both"] {
            let mut args = check_args(name);
            args.extend(["--method".into(), method.into()]);
            codes.push(run(&args).status.code());
        }
        assert!(codes.windows(2).all(|w| w[0] == w[1]), "{name}: {codes:?}");
    }
}

#[test]
fn unknown_method_is_a_usage_error() {
    let mut args = check_args("ex1");
    args.extend(["--method".into(), "guess".into()]);
    assert_eq!(run(&args).status.code(), Some(2));
}

#[test]
fn bad_thread_count_is_an_error() {
    let args = check_args("ex1");
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let o = Command::new(env!("CARGO_BIN_EXE_qsm"))
        .args(&refs)
        .env("QSM_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("QSM_THREADS"));
}

#[test]
fn validate_reports_non_homogeneous_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("bad.monomials");
    std::fs::write(&m, "x0^3\nx1^2\n").unwrap();
    let o = qsm(&["validate", "--ambient", &fixture("ex1.ambient"), "--monomials", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("monomials 1 and 2 have different degrees"), "{err}");
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("bad.ambient");
    std::fs::write(&a, "[rays]\n1 0\n0 x\n").unwrap();
    let o = qsm(&["validate", "--ambient", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn validate_accepts_fixtures() {
    for name in ["ex1", "p1", "not_max_comp", "blowup", "dual_ex1", "wps_235"] {
        let o = qsm(&[
            "validate",
            "--ambient",
            &fixture(&format!("{name}.ambient")),
            "--monomials",
            &fixture(&format!("{name}.monomials")),
        ]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
    }
}

#[test]
fn strata_lists_the_blowup_screen() {
    let o = qsm(&[
        "strata",
        "--ambient",
        &fixture("blowup.ambient"),
        "--monomials",
        &fixture("blowup.monomials"),
        "--output",
        "machine",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("set = {y2,y6}\nk = 1\n"), "{out}");
    let block = out.split("set = {y2,y6}").nth(1).unwrap();
    assert!(block.contains("sufficient_screen = false"));
}

#[test]
fn goodpair_exit_codes() {
    let o = qsm(&["goodpair", "--p1", &fixture("ex1_p1.polytope"), "--p2", &fixture("ex1_p2.polytope")]);
    assert_eq!(o.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("corner.polytope");
    std::fs::write(&p, "0 0 0\n1 0 0\n0 1 0\n0 0 1\n").unwrap();
    let o = qsm(&["goodpair", "--p1", p.to_str().unwrap(), "--p2", &fixture("ex1_p2.polytope")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("p1_canonical"));
}

#[test]
fn duality_pipeline_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let p1 = fixture("ex1_p1.polytope");
    let p2 = fixture("ex1_p2.polytope");

    let o = qsm(&["induce", "--p1", &p1, "--p2", &p2, "--out-dir", d]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let amb = format!("{d}/induced.ambient");
    let mon = format!("{d}/induced.monomials");
    assert_eq!(qsm(&["check", "--ambient", &amb, "--monomials", &mon]).status.code(), Some(0));

    let o = qsm(&["dualize", "--p1", &p1, "--p2", &p2, "--out-dir", d]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let q1 = format!("{d}/dual_p1.polytope");
    let q2 = format!("{d}/dual_p2.polytope");
    let sub = dir.path().join("dual");
    let o = qsm(&["induce", "--p1", &q1, "--p2", &q2, "--out-dir", sub.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let amb = sub.join("induced.ambient");
    let mon = sub.join("induced.monomials");
    let o = qsm(&["check", "--ambient", amb.to_str().unwrap(), "--monomials", mon.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn delsarte_and_transpose() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("chain.monomials");
    std::fs::write(&m, "x1^5\nx2^3*x1\nx3^2\n").unwrap();
    let o = qsm(&["delsarte", "--monomials", m.to_str().unwrap(), "--output", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("decomposition = chain(x2^3->x1^5) + fermat(x3^2)"), "{}", stdout(&o));

    let out = dir.path().join("t");
    let o = qsm(&["transpose", "--monomials", m.to_str().unwrap(), "--out-dir", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = qsm(&[
        "delsarte",
        "--ambient",
        out.join("transpose.ambient").to_str().unwrap(),
        "--monomials",
        out.join("transpose.monomials").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let n = dir.path().join("mixed.monomials");
    std::fs::write(&n, "x1^3*x2\nx2^3*x1\nx1*x2*x3^2\n").unwrap();
    let o = qsm(&["delsarte", "--monomials", n.to_str().unwrap(), "--output", "machine"]);
    assert_eq!(o.status.code(), Some(1), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("decomposable = false"));
}
