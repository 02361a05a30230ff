use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output};

fn lscat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lscat"))
        .args(args)
        .env_remove("LSCAT_FACTS")
        .output()
        .expect("run lscat")
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let out = lscat(&all);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 1, "{stdout}");
    (
        out.status.code().unwrap(),
        serde_json::from_str(&stdout).unwrap(),
    )
}

const M2: &[&str] = &[
    "--r",
    "2",
    "--t",
    "13",
    "--alpha",
    "eta(2)*eta(3)*eta(4)*eps(5)",
];
const M3: &[&str] = &[
    "--r",
    "2",
    "--t",
    "13",
    "--alpha",
    "eta(2)*alpha1(3)*alpha2(6)",
];
const NP: &[&str] = &[
    "--r",
    "2",
    "--t",
    "9",
    "--alpha",
    "eta(2)*alpha1(3)*alpha1(2p)",
    "--p",
    "3",
];

fn with(cmd: &str, spec: &[&str], extra: &[&str]) -> Vec<String> {
    let mut v = vec![cmd.to_string()];
    v.extend(spec.iter().map(|s| s.to_string()));
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

#[test]
fn classify_m2_at_n4() {
    let args = with("classify", M2, &["--n", "4"]);
    let (code, v) = structured(&refs(&args));
    assert_eq!(code, 0);
    assert_eq!(
        v["report"]["catE"],
        serde_json::json!({"kind": "exact", "value": 3})
    );
    assert_eq!(v["report"]["catExSn"]["value"]["value"], 3);
    assert_eq!(v["report"]["row"], "R11");
}

#[test]
fn ganea_m3() {
    let args = with("ganea", M3, &[]);
    let (code, v) = structured(&refs(&args));
    assert_eq!(code, 0);
    assert_eq!(v["ganea"]["counterexample"], "true");
    assert_eq!(v["ganea"]["minimal_n"], 2);
}

#[test]
fn family_word_with_p() {
    let (code, v) = structured(&refs(&with("punctured", NP, &[])));
    assert_eq!(code, 0);
    assert_eq!(v["puncturedEqual"], "true");
    let (code, v) = structured(&refs(&with("hopf2", NP, &[])));
    assert_eq!(code, 0);
    assert_eq!(v["containsZero"], "true");
    assert_eq!(v["representative"], "±(î∗1)∘Σ^2(alpha1_3_p3*alpha1_6_p3)");
}

#[test]
fn undecided_word_exits_2() {
    let (code, v) = structured(&[
        "classify",
        "--r",
        "2",
        "--t",
        "4",
        "--alpha",
        "eta(2)*eta(3)",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["report"]["catE"]["kind"], "range");
    assert_eq!(v["decided"], false);
}

#[test]
fn errors_are_one_json_line() {
    let (code, v) = structured(&[
        "classify",
        "--r",
        "2",
        "--t",
        "3",
        "--alpha",
        "eta(2)*eta(2)",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "DimensionMismatch");
    let (code, v) = structured(&["classify", "--r", "2", "--t", "9", "--alpha", "alpha1(2p)"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "MissingParameter");
    let (code, v) = structured(&["hopf2", "--r", "3", "--t", "4", "--alpha", "eta(3)"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "PreconditionError");
    let (code, v) = structured(&["classify", "--r", "2", "--t", "5", "--alpha", "deg(2)"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "SpecError");
}

#[test]
fn text_errors_go_to_stderr() {
    let out = lscat(&["classify", "--r", "2", "--t", "3", "--alpha", "eta(2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("ParseError"));
    let out = lscat(&["classify", "--r", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn structured_output_is_deterministic() {
    let args = with("classify", M2, &[]);
    let a = lscat(&[&refs(&args)[..], &["--format", "structured"]].concat());
    let b = lscat(&[&refs(&args)[..], &["--format", "structured"]].concat());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn every_trace_line_cites_something() {
    for spec in [M2, M3, NP] {
        let (_, v) = structured(&refs(&with("classify", spec, &[])));
        for entry in v["report"]["trace"].as_array().unwrap() {
            assert!(
                !entry["citations"].as_array().unwrap().is_empty(),
                "{entry}"
            );
        }
    }
}

#[test]
fn facts_override() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        "gen eta_2 dom=3 cod=2 h1=iota_3\ngen eta_3 dom=4 cod=3 susp_of=eta_2"
    )
    .unwrap();
    writeln!(file, "fact zero eta_3 susp=0").unwrap();
    let path = file.path().to_str().unwrap();
    let (code, v) = structured(&[
        "classify",
        "--r",
        "2",
        "--t",
        "4",
        "--alpha",
        "eta(2)*eta(3)",
        "--facts",
        path,
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["row"], "R9");

    let out = Command::new(env!("CARGO_BIN_EXE_lscat"))
        .args([
            "classify",
            "--r",
            "2",
            "--t",
            "4",
            "--alpha",
            "eta(2)*eta(3)",
        ])
        .env("LSCAT_FACTS", path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let (code, v) = structured(&[
        "classify",
        "--r",
        "2",
        "--t",
        "4",
        "--alpha",
        "deg(0)",
        "--facts",
        "/nonexistent/facts",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "IoError");
}

#[test]
fn attach_identity() {
    let args = with("attach", M2, &["--beta", "iota(15)"]);
    let (code, v) = structured(&refs(&args));
    assert_eq!(code, 0);
    assert_eq!(v["cat"], 3);
}

#[test]
fn bar_check_passes() {
    let out = lscat(&["bar-check", "--max-length", "3", "--bound", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("∂(x⊗x) = -x^2"), "{text}");
}
