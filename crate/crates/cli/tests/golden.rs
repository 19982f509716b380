//! Runs the binary on fixed inputs and compares stdout and exit status with
//! files under `tests/golden/`. Set `BLESS=1` to rewrite them.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

use fq_totient::{FieldSpec, Poly};
use serde_json::Value;

const CASES: &[(&str, &str, i32)] = &[
    ("phi_f2_cubic", "phi --p 2 --s 1 --poly x^3+x+1", 0),
    ("phi_f3_mixed", "phi --p 3 --poly x^4+2*x^2", 0),
    ("phi_f4_csv", "phi --p 2 --s 2 --poly x^2+3*x+1 --format csv", 0),
    ("phi_constant", "phi --p 3 --poly 2", 2),
    ("phi_bad_text", "phi --p 3 --poly x^^2", 2),
    ("phi_bad_field", "phi --p 6 --poly x", 2),
    ("phi_bad_coeff", "phi --p 3 --poly 5*x", 2),
    ("sigma_f3", "sigma --p 3 --poly x^3+x", 0),
    ("sigma_f2_text", "sigma --p 2 --poly x^4+x^2 --format text", 0),
    ("factor_f2", "factor --p 2 --poly x^6+x^5+x^3+x^2", 0),
    ("factor_f9", "factor --p 3 --s 2 --poly 2*x^3+x", 0),
    ("signature_f2", "signature --p 2 --poly x^5+x^4+x", 0),
    ("same_phi_f2_true", "same-phi --p 2 --f x^2 --g x^2+1", 0),
    ("same_phi_f3_true", "same-phi --p 3 --f x^2+1 --g x^3+2*x", 0),
    ("same_phi_f3_false", "same-phi --p 3 --f x^2+1 --g x^2", 0),
    ("pi_f2", "pi --p 2 --d 6", 0),
    ("pi_f8", "pi --p 2 --s 3 --d 3", 0),
    ("preimage_count_one", "preimage count --p 2 --s 1 --n 1", 0),
    ("preimage_count_zero", "preimage count --p 2 --n 0", 2),
    ("preimage_list_f3", "preimage list --p 3 --n 8", 0),
    ("preimage_list_f2_csv", "preimage list --p 2 --n 1 --format csv", 0),
    ("preimage_profile_f4", "preimage profile --p 2 --s 2 --n 9", 0),
    ("preimage_profile_f2", "preimage profile --p 2 --n 1", 0),
    ("preimage_profile_f5_empty", "preimage profile --p 5 --n 5", 0),
    ("sierpinski_f2", "sierpinski --p 2 --goal count --l 7", 0),
    ("sierpinski_f3_power", "sierpinski --p 3 --goal q-power --l 1", 0),
    ("sierpinski_f5_binom", "sierpinski --p 5 --goal binom --l 2", 0),
    ("sierpinski_wrong_q", "sierpinski --p 2 --goal binom --l 1", 2),
    ("erdos_member_f2", "erdos member --p 2 --n 63", 0),
    ("erdos_member_f5", "erdos member --p 5 --s 1 --n 24", 1),
    ("erdos_scan_f3", "erdos scan --p 3 --y 1000", 0),
    ("erdos_scan_f2_text", "erdos scan --p 2 --y 100 --format text", 0),
    ("erdos_witness_f2", "erdos witness --p 2 --n 21", 0),
    ("erdos_witness_none", "erdos witness --p 3 --n 6", 1),
    ("density_f2", "density --p 2 --y 1000", 0),
    ("density_f3_powers", "density --p 3 --y 800 --powers --format csv", 0),
    ("density_k0", "density --p 5 --y 3 --format text", 0),
    ("verify_lemmas", "verify lemmas --budget-n 100", 0),
    ("verify_unknown", "verify nothing", 2),
    ("unknown_subcommand", "totient --p 2", 2),
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(args: &str) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_fq-totient"))
        .args(args.split_whitespace())
        .output()
        .expect("binary runs");
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("BLESS").is_some();
    let mut failures = Vec::new();
    for &(name, args, exit) in CASES {
        let (stdout, code) = run(args);
        if code != exit {
            failures.push(format!("{name}: exit {code}, expected {exit}"));
        }
        let path = golden_dir().join(format!("{name}.out"));
        if bless {
            fs::create_dir_all(golden_dir()).unwrap();
            fs::write(&path, &stdout).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(want) if want == stdout => {}
            Ok(want) => failures.push(format!("{name}:\n  got  {stdout:?}\n  want {want:?}")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn errors_go_to_stderr_as_json() {
    let out = Command::new(env!("CARGO_BIN_EXE_fq-totient"))
        .args(["phi", "--p", "3", "--poly", "2"])
        .output()
        .unwrap();
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["kind"], "constant-polynomial");
}

fn collect_polys(v: &Value, key: &str, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                collect_polys(v, k, out);
            }
        }
        Value::Array(items) => items.iter().for_each(|i| collect_polys(i, key, out)),
        Value::String(s) if matches!(key, "poly" | "preimages" | "f" | "g") => out.push(s.clone()),
        _ => {}
    }
}

#[test]
fn printed_polynomials_reparse() {
    let cases = [
        (2, 1, "factor --p 2 --poly x^9+x^4+x^2+1"),
        (3, 2, "factor --p 3 --s 2 --poly 7*x^5+3*x^2+8"),
        (2, 3, "factor --p 2 --s 3 --poly x^6+5*x^3+x+7"),
        (3, 1, "preimage list --p 3 --n 64"),
        (2, 2, "preimage list --p 2 --s 2 --n 45"),
        (5, 1, "preimage list --p 5 --n 96"),
        (2, 1, "erdos witness --p 2 --n 189"),
        (3, 1, "erdos witness --p 3 --n 16"),
    ];
    for (p, s, args) in cases {
        let field = FieldSpec::new(p, s).unwrap();
        let (stdout, _) = run(args);
        let json: Value = serde_json::from_str(&stdout).unwrap();
        let mut polys = Vec::new();
        collect_polys(&json, "", &mut polys);
        assert!(!polys.is_empty(), "{args} printed no polynomials");
        for text in polys {
            let poly = Poly::parse(&text, &field).unwrap();
            assert_eq!(poly.to_string(), text, "{args}");
        }
    }
}
