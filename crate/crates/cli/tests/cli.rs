use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shamsuddin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

#[test]
fn simple_reports_true() {
    assert_eq!(
        run_ok(&["simple", "--deriv", "y1: a=x, b=1"]),
        "simple: true\nblock 1 (y1; a=x): simple\n"
    );
}

#[test]
fn simple_lists_block_witnesses() {
    let text = run_ok(&["simple", "--deriv", "y1: a=x, b=1 ; y2: a=1, b=x"]);
    assert!(text.starts_with("simple: false\n"));
    assert!(text.contains("block 2 (y2; a=1): not simple; k = (1), z = -1*x - 1"));
}

#[test]
fn isotropy_witness_golden() {
    assert_eq!(
        run_ok(&["isotropy", "--deriv", "y1: a=1, b=x", "--witness"]),
        "trivial: false\nx -> x ; y1 -> -1*y1 - 2*x - 2\n"
    );
}

#[test]
fn mz_golden() {
    assert_eq!(
        run_ok(&["mz", "--deriv", "y1: a=x, b=1"]),
        "mz: NOT_MZ (single block with deg a >= 1)\n"
    );
    assert_eq!(
        run_ok(&["mz", "--deriv", "y1: a=x, b=0 ; y2: a=-x, b=0"]),
        "mz: UNKNOWN (outside the known criteria)\ngamma: (1, 1)\n"
    );
}

#[test]
fn json_output_is_single_line_and_stable() {
    let a = run_ok(&["isotropy", "--deriv", "y1: a=1, b=x", "--witness", "--json"]);
    let b = run_ok(&["isotropy", "--deriv", "y1: a=1, b=x", "--witness", "--json"]);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["trivial"], false);
    assert_eq!(v["witness"]["endo"], "x -> x ; y1 -> -1*y1 - 2*x - 2");
    assert_eq!(v["witness"]["kind"], "cancellation");
}

#[test]
fn describe_is_deterministic_per_seed() {
    let args = [
        "describe",
        "--deriv",
        "y1: a=0, b=1 ; y2: a=0, b=x",
        "--json",
    ];
    assert_eq!(run_ok(&args), run_ok(&args));
    let other = run_ok(&[
        "describe",
        "--deriv",
        "y1: a=0, b=1 ; y2: a=0, b=x",
        "--json",
        "--seed",
        "7",
    ]);
    let v: serde_json::Value = serde_json::from_str(&other).unwrap();
    assert_eq!(v["case"], "A_ZERO");
    assert_eq!(v["seed"], 7);
}

#[test]
fn describe_rejects_multiple_blocks() {
    let out = run(&["describe", "--deriv", "y1: a=x, b=1 ; y2: a=1, b=0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn printed_witnesses_pass_commute() {
    for deriv in [
        "y1: a=1, b=x",
        "y1: a=1, b=0",
        "y1: a=0, b=1",
        "y1: a=x, b=1 ; y2: a=x^2, b=x ; y3: a=x^2, b=-x",
        "y1: a=x-1, b=x^2 ; y2: a=3, b=1/2",
    ] {
        let text = run_ok(&["isotropy", "--deriv", deriv, "--witness"]);
        let witness = text.lines().nth(1).expect("witness line");
        let check = run_ok(&["commute", "--deriv", deriv, "--endo-text", witness]);
        assert_eq!(check, "commutes: true\n", "{deriv}");
    }
}

#[test]
fn describe_samples_pass_commute() {
    for deriv in [
        "y1: a=0, b=1",
        "y1: a=2, b=x ; y2: a=2, b=1",
        "y1: a=x^2, b=x ; y2: a=x^2, b=-x",
    ] {
        for seed in ["0", "1", "2"] {
            let text = run_ok(&["describe", "--deriv", deriv, "--seed", seed]);
            let line = text.lines().last().unwrap();
            let endo = line.split_once(": ").unwrap().1;
            let check = run_ok(&["commute", "--deriv", deriv, "--endo-text", endo]);
            assert_eq!(check, "commutes: true\n", "{deriv} seed {seed}");
        }
    }
}

#[test]
fn commute_reads_endo_file() {
    let dir = std::env::temp_dir().join(format!("shamsuddin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rho.txt");
    std::fs::write(&path, "x -> x\ny1 -> 2*y1\n").unwrap();
    let out = run(&[
        "commute",
        "--deriv",
        "y1: a=1, b=1",
        "--endo",
        path.to_str().unwrap(),
        "--exit-status",
    ]);
    assert_eq!(stdout(&out), "commutes: false\n");
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn preimage_found_and_box_relative_absence() {
    assert_eq!(
        run_ok(&["preimage", "--deriv", "y1: a=1, b=1", "--target", "y1"]),
        "preimage: y1 - x\n"
    );
    let out = run(&[
        "preimage",
        "--deriv",
        "y1: a=x, b=1",
        "--target",
        "y1",
        "--exit-status",
    ]);
    assert_eq!(
        stdout(&out),
        "preimage: none in box (x-degree <= 8, y-degree <= 4)\n"
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn apply_and_locally_finite_accept_triangular_input() {
    let tri = "y1: a=1, b=0 ; y2: a=2, b=y1^2";
    assert_eq!(
        run_ok(&["apply", "--deriv", tri, "--poly", "y2"]),
        "D(y2) = y1^2 + 2*y2\n"
    );
    assert_eq!(
        run_ok(&["locally-finite", "--deriv", tri]),
        "locally-finite: true\n"
    );
    let out = run(&["locally-finite", "--deriv", "y1: a=x, b=0", "--exit-status"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "locally-finite: false\nnon-constant a: y1\n");
}

#[test]
fn exit_status_maps_verdicts() {
    assert_eq!(
        run(&["simple", "--deriv", "y1: a=x, b=1", "--exit-status"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["simple", "--deriv", "y1: a=1, b=1", "--exit-status"])
            .status
            .code(),
        Some(1)
    );
    // without the flag a false verdict still exits 0
    assert_eq!(
        run(&["simple", "--deriv", "y1: a=1, b=1"]).status.code(),
        Some(0)
    );
}

#[test]
fn error_exit_codes() {
    let out = run(&["simple", "--deriv", "y1: a=x b=1", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["pos"], 8);

    assert_eq!(
        run(&["simple", "--deriv", "y1: a=1, b=y2 ; y2: a=1, b=0"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["simple", "--deriv", "y1: a=1, b=0 ; y2: a=1, b=y1"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["apply", "--deriv", "y1: a=1, b=0", "--poly", "y3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["simple", "/nonexistent/deriv.txt"]).status.code(),
        Some(2)
    );
}

#[test]
fn exactly_one_input_source() {
    assert!(!run(&["simple"]).status.success());
    assert!(!run(&["simple", "file.txt", "--deriv", "y1: a=x, b=1"])
        .status
        .success());
}

#[test]
fn reads_stdin_for_dash() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_shamsuddin"))
        .args(["mz", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"y1: a=1, b=x\ny2: a=1, b=0\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(
        stdout(&out),
        "mz: IS_MZ (all a_i constant; locally finite with 1 in Im D)\n"
    );
}
