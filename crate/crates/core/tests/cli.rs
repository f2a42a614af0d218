use numpoly::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let out = run(std::iter::once("numpoly").chain(args.iter().copied()));
    (out.code, out.stdout, out.stderr)
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).expect("stdout is JSON")
}

#[test]
fn member_examples() {
    let (code, out, _) = call(&["member", "--ring", "Ast", "--prime", "3", "(w^2-1)/3"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"member":true}"#);

    let (code, out, _) = call(&["member", "--ring", "A", "(w^2-1)/3"]);
    assert_eq!(code, 1);
    assert_eq!(
        out.trim(),
        r#"{"member":false,"witness":{"p":3,"a":1,"u":0}}"#
    );
}

#[test]
fn convert_example_is_exact() {
    let (code, out, _) = call(&["convert", "--to", "binomial", "w^2"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        r#"{"basis":"binomial","terms":[{"k":1,"coeff":"1/1"},{"k":2,"coeff":"2/1"}]}"#
    );
    let (code, back, _) = call(&["convert", "--to", "monomial", out.trim()]);
    assert_eq!(code, 0);
    assert_eq!(
        back.trim(),
        r#"{"basis":"monomial","terms":[{"k":2,"coeff":"1/1"}]}"#
    );
}

#[test]
fn ring_argument_rules() {
    assert_eq!(call(&["member", "--ring", "Ap", "w"]).0, 2);
    assert_eq!(
        call(&["member", "--ring", "KO", "--prime", "3", "w^2"]).0,
        2
    );
    assert_eq!(
        call(&["member", "--ring", "Ap", "--prime", "2", "(w^2-w)/2"]).0,
        0
    );
    assert_eq!(
        call(&["member", "--ring", "Ap", "--prime", "2", "w/3"]).0,
        0
    );
    assert_eq!(call(&["member", "--ring", "A", "w/3"]).0, 1);
    assert_eq!(
        call(&["member", "--ring", "Astp", "--prime", "3", "w^-1/3"]).0,
        1
    );
    let (code, out, _) = call(&["member", "--ring", "KO", "(w^2-1)/16"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["witness"]["u"], 3);
    let (code, out, _) = call(&["member", "--ring", "KO", "w^3"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["witness"]["odd_exponent"], 3);
}

#[test]
fn errors_exit_two() {
    let (code, out, err) = call(&["member", "--ring", "A", "w^"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"));
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["basis", "--prime", "4", "--deg", "3"]).0, 2);
    assert_eq!(call(&["basis", "--prime", "3", "--deg", "26"]).0, 2);
    assert_eq!(
        call(&["hensel", "--prime", "5", "--target", "6", "w^5"]).0,
        2
    );
}

#[test]
fn gens_and_basis() {
    let (code, out, _) = call(&["gens", "--family", "d", "--prime", "3", "--max", "3"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let degrees: Vec<u64> = v["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["degree"].as_u64().unwrap())
        .collect();
    assert_eq!(degrees, vec![3, 9, 27]);

    let (code, out, _) = call(&["gens", "--family", "e", "--prime", "5", "--max", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert!(v["generators"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["invariant"] == true));

    let (code, out, _) = call(&["basis", "--prime", "3", "--deg", "9"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["holds"], true);
}

#[test]
fn hensel_verdicts() {
    let (code, out, _) = call(&["hensel", "--prime", "2", "--target", "3", "(w^2-w)/2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["lifted"], true);
    let (code, out, _) = call(&["hensel", "--prime", "3", "--target", "2", "w/3"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["lifted"], false);
}

#[test]
fn etale_presets() {
    let cases: [(&[&str], i32); 5] = [
        (
            &["--preset", "trunc", "--prime", "2", "--k", "3", "--l", "1"],
            0,
        ),
        (&["--preset", "zeta", "--prime", "5", "--k", "2"], 0),
        (
            &["--preset", "en", "--prime", "3", "--k", "4", "--j", "2"],
            0,
        ),
        (&["--preset", "negcontrol", "--prime", "3", "--k", "2"], 0),
        (&["--preset", "zeta", "--prime", "2", "--k", "2"], 2),
    ];
    for (args, expected) in cases {
        let mut full = vec!["etale"];
        full.extend_from_slice(args);
        assert_eq!(call(&full).0, expected, "{full:?}");
    }
    let (_, out, _) = call(&[
        "etale",
        "--preset",
        "negcontrol",
        "--prime",
        "2",
        "--k",
        "3",
    ]);
    assert_eq!(json(&out)["rejected"], true);
}

#[test]
fn xi_command() {
    let (code, out, _) = call(&["xi", "--d", "3", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["size"], 16);
    assert_eq!(call(&["xi", "--d", "11", "--k", "2"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    let a = call(&["gens", "--family", "e", "--prime", "3", "--max", "3"]);
    let b = call(&["gens", "--family", "e", "--prime", "3", "--max", "3"]);
    assert_eq!(a, b);
}

#[test]
fn report_bundle() {
    let dir = std::env::temp_dir().join(format!("numpoly-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let first = dir.join("a.json");
    let second = dir.join("b.json");
    let (code, out, _) = call(&[
        "report",
        "--all",
        "--primes",
        "2,3",
        "--out",
        first.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(json(&out)["failed"], 0);
    call(&[
        "report",
        "--all",
        "--primes",
        "2,3",
        "--out",
        second.to_str().unwrap(),
    ]);
    let a = std::fs::read(&first).unwrap();
    assert_eq!(a, std::fs::read(&second).unwrap());
    let parsed: Value = serde_json::from_slice(&a).unwrap();
    assert!(parsed["entries"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["passed"] == true));
    std::fs::remove_dir_all(&dir).ok();
}
