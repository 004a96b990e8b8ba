use std::io::Write;
use std::process::{Command, Output, Stdio};

fn indec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indec"))
        .args(args)
        .output()
        .expect("run indec")
}

fn stdout(args: &[&str]) -> String {
    let out = indec(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn render(json: &str) -> String {
    let mut child = Command::new(env!("CARGO_BIN_EXE_indec"))
        .arg("render")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(json.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn continued_fraction_output() {
    let text = stdout(&["cf", "143"]);
    assert!(text.contains("√143 = [11; (1,22)]"), "{text}");
    assert!(text.contains("unit: 12+√143 (norm 1)"), "{text}");
    let text = stdout(&["cf", "2", "--approx", "100"]);
    assert!(text.contains("99/70"), "{text}");
}

#[test]
fn biquadratic_field_summary() {
    let text = stdout(&["biquad", "2", "3"]);
    assert!(text.contains("ι(K) = 5"), "{text}");
    let text = stdout(&["biquad", "5", "13", "--oracle"]);
    assert!(
        text.contains("ι(K) = 35") && text.contains("match"),
        "{text}"
    );
}

#[test]
fn json_renders_like_text() {
    for args in [
        vec!["cf", "14", "--approx", "50"],
        vec!["quad", "13"],
        vec!["biquad", "2", "3"],
        vec!["table", "--max-disc", "5000"],
        vec!["family", "f3", "2"],
        vec!["preserve", "14", "91"],
        vec!["census", "2", "20000", "--stats", "--iota-max", "5"],
        vec!["census", "1", "100"],
        vec!["crm", "16", "2"],
        vec!["rankbound", "--iota", "45", "--index-squares", "4"],
    ] {
        let text = stdout(&args);
        let mut j = args.clone();
        j.push("--json");
        let json = stdout(&j);
        assert_eq!(render(&json), text, "{args:?}");
    }
}

#[test]
fn census_csv() {
    let text = stdout(&["census", "2", "10000", "--csv"]);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,gamma_1,gamma_2,gamma_3,A_1,A_2,A_3,two_exponent,discriminant"
    );
    assert_eq!(lines.count(), 6);
    assert_eq!(
        indec(&["census", "2", "10000", "--stats", "--csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn exit_codes() {
    assert_eq!(indec(&["quad", "4"]).status.code(), Some(2));
    assert_eq!(indec(&["biquad", "2", "2"]).status.code(), Some(2));
    assert_eq!(indec(&["family", "f3", "3"]).status.code(), Some(2));
    assert_eq!(
        indec(&["biquad", "2", "3", "--budget", "3"]).status.code(),
        Some(3)
    );
    assert_eq!(indec(&["census", "5", "100"]).status.code(), Some(2));
    assert_eq!(indec(&["crm", "0", "2"]).status.code(), Some(2));
}

#[test]
fn job_count_does_not_change_output() {
    for args in [
        vec!["biquad", "5", "17", "--oracle"],
        vec!["census", "2", "30000", "--stats", "--iota-max", "8"],
        vec!["census", "3", "100000000000"],
    ] {
        let mut one = vec!["--jobs", "1"];
        one.extend(&args);
        let mut three = vec!["--jobs", "3"];
        three.extend(&args);
        assert_eq!(stdout(&one), stdout(&three), "{args:?}");
    }
}

#[test]
fn preservation_counterexample() {
    let text = stdout(&["preserve", "14", "91"]);
    assert!(
        text.contains("26+5√26 = (26-5√14-2√91+5√26)/2 + (26+5√14+2√91+5√26)/2"),
        "{text}"
    );
}

#[test]
fn rank_bounds() {
    assert!(stdout(&["rankbound", "--iota", "45", "--index-squares", "4"]).contains("1260"));
    assert!(stdout(&["rankbound", "143", "165"]).contains("1260"));
    assert!(stdout(&["crm", "16", "2"]).contains("480"));
}
