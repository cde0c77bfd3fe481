use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schlesinger")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write_config(name: &str, value: &Value) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{name}.json"));
    std::fs::write(&path, value.to_string()).unwrap();
    path.to_string_lossy().into_owned()
}

/// Three rank-one residues on 2x2 with traces 0.3, 0.25, 0.15.
fn system() -> Value {
    json!({
        "matrix_size": 2,
        "poles": [[0, 0], [1, 0], [-1, 0]],
        "residues": [
            [[[0.3, 0], [0, 0]], [[0, 0], [0, 0]]],
            [[[0.1, 0], [0.15, 0]], [[0.1, 0], [0.15, 0]]],
            [[[0.2, 0], [0.05, 0]], [[-0.2, 0], [-0.05, 0]]]
        ]
    })
}

fn raw_config(system: Value) -> Value {
    // infinity: eigenvalues of -(A_1 + A_2 + A_3), roots of x^2 + 0.7 x + 0.08
    let d = (0.49f64 - 0.32).sqrt();
    json!({
        "mode": "raw-system",
        "system": system,
        "riemann_scheme": {
            "finite": [[[0.3, 0]], [[0.25, 0]], [[0.15, 0]]],
            "infinity": [[(-0.7 - d) / 2.0, 0], [(-0.7 + d) / 2.0, 0]]
        },
        "schedule": [[1, 2, 1, 1]],
        "steps": 2
    })
}

fn dpv_config(p: f64, q: f64) -> Value {
    json!({
        "mode": "dpv",
        "dpv": {"theta1": [0.1, 0], "thetat": [0.2, 0], "kappa1": [0.3, 0], "kappa2": [-0.4, 0],
                "t": [2, 0], "p": [p, 0], "q": [q, 0]}
    })
}

#[test]
fn default_verify_passes() {
    let o = run(&["verify", "--trials", "3"]);
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    assert_eq!(code(&o), 0, "{text}");
    assert!(text.starts_with("verify mode=all seed=0"));
    assert!(text.ends_with("result: PASS\n"));
}

#[test]
fn declared_scheme_and_corrupted_residue() {
    let good = write_config("good", &raw_config(system()));
    assert_eq!(code(&run(&["verify", "--config", &good])), 0);

    let mut s = system();
    s["residues"][0][0][0] = json!([0.35, 0]);
    let bad = write_config("bad", &raw_config(s));
    let o = run(&["verify", "--config", &bad]);
    assert_eq!(code(&o), 1);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("FAIL declared Riemann scheme matches the residues"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["verify", "--config", "/nonexistent/run.json"])), 2);
    assert_eq!(code(&run(&["verify", "--bogus"])), 2);
    assert_eq!(code(&run(&["orbit"])), 2);
    assert_eq!(code(&run(&["step", "--mode", "lattice"])), 2);
    let stray = write_config("stray", &json!({"mode": "dpv", "schedule": [[1, 2, 1, 1]]}));
    assert_eq!(code(&run(&["verify", "--config", &stray])), 2);
}

#[test]
fn indeterminacy_exits_3_with_locus() {
    let p0 = write_config("p0", &dpv_config(0.0, 0.7));
    let o = run(&["step", "--config", &p0]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8(o.stderr).unwrap().contains("p = 0"));

    // q = t + (theta1 + kappa2)/p
    let locus = write_config("locus", &dpv_config(0.5, 2.0 + (0.1 - 0.4) / 0.5));
    let o = run(&["step", "--config", &locus]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8(o.stderr).unwrap().contains("q - t - (theta1 + kappa2)/p"));
}

#[test]
fn orbit_halts_with_partial_trace() {
    let locus = write_config("halt", &dpv_config(0.5, 2.0 + (0.1 - 0.4) / 0.5));
    let o = run(&["orbit", "--config", &locus, "--format", "csv"]);
    assert_eq!(code(&o), 3);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "{text}");
    assert!(lines[1].starts_with("0,"));
    assert!(lines[2].starts_with("# halt step=1 exit=3"));

    let o = run(&["orbit", "--config", &locus]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["trace"].as_array().unwrap().len(), 1);
    assert_eq!(v["halt"]["exit_code"], 3);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["orbit", "--mode", "dpv", "--seed", "7"][..],
        &["orbit", "--mode", "a2star", "--seed", "7", "--format", "csv"],
        &["step", "--mode", "raw-system", "--seed", "3"],
        &["verify", "--mode", "dpv", "--seed", "11", "--trials", "2"],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = run(&["orbit", "--mode", "dpv", "--seed", "7"]).stdout;
    let b = run(&["orbit", "--mode", "dpv", "--seed", "8"]).stdout;
    assert_ne!(a, b);
}

#[test]
fn zero_steps_gives_header_only() {
    let o = run(&["orbit", "--mode", "dpv", "--steps", "0", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("step,p_re,p_im,q_re,q_im,f_re"));

    let o = run(&["orbit", "--mode", "a2star", "--steps", "0"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, json!({"trace": [], "halt": null}));
}

#[test]
fn lattice_orbit_dumps_translations() {
    let o = run(&["orbit", "--mode", "lattice", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "surface,action,vector\n\
         d-PV standard,phi,0 0 1 -1 -1\n\
         d-P(A2*) standard,phi,0 0 0 1 0 -1 0\n\
         d-P(A2*) standard,psi,0 0 0 -1 1 1 -1\n"
    );
}

#[test]
fn numbers_round_trip_at_17_digits() {
    let o = run(&["orbit", "--mode", "dpv", "--seed", "5", "--steps", "3", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut seen = 0;
    for line in text.lines().skip(1) {
        for field in line.split(',').skip(1) {
            let x: f64 = field.parse().unwrap();
            assert_eq!(format!("{x:.16e}"), field);
            seen += 1;
        }
    }
    assert!(seen > 0);

    let o = run(&["step", "--config", &write_config("rt", &raw_config(system()))]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let r = &v["before"]["system"]["residues"][1][0][1][0];
    assert_eq!(r.as_f64(), Some(0.15));
}

#[test]
fn out_flag_writes_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-out.csv");
    let p = path.to_string_lossy().into_owned();
    let o = run(&["orbit", "--mode", "lattice", "--format", "csv", "--out", &p]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("surface,action,vector\n"));
}
