use std::io::Write;

use harness::{ingest, ingest_str};

const GOOD: &str = r#"{"label":"378b3","a":[1,-1,0,-1062,13590],"rank":0,"sha_finite":true,"integral_points":[[19,-9],[19,-10]]}"#;

#[test]
fn valid_record() {
    let got = ingest_str(GOOD);
    assert!(got.errors.is_empty(), "{:?}", got.errors);
    assert_eq!(got.records.len(), 1);
    let r = &got.records[0];
    assert_eq!(r.label, "378b3");
    assert_eq!(r.integral_points.len(), 2);
    assert!(r.generator.is_none() && r.w_override.is_empty());
}

#[test]
fn point_off_the_curve_is_rejected() {
    // y² + xy = x³ − x² − 1062x + 13590 at x = 19 needs y² + 19y = −90.
    let bad = GOOD.replace("[19,-10]", "[19,-8]");
    let got = ingest_str(&format!("{GOOD}\n{bad}\n"));
    assert_eq!(got.records.len(), 1);
    assert_eq!(got.errors.len(), 1);
    assert_eq!(got.errors[0].line, 2);
    assert_eq!(got.errors[0].label.as_deref(), Some("378b3"));
    assert!(got.errors[0].message.contains("(19, -8)"));
}

#[test]
fn empty_input() {
    let got = ingest_str("");
    assert!(got.records.is_empty() && got.errors.is_empty());
    let got = ingest_str("\n# comment only\n\n");
    assert!(got.records.is_empty() && got.errors.is_empty());
}

#[test]
fn record_level_errors_carry_line_numbers() {
    let text = [
        "{not json",
        r#"{"label":"s","a":[0,0,0,0,0],"rank":0,"sha_finite":true,"integral_points":[]}"#,
        r#"{"label":"t","a":[0,0,1,-1],"rank":0,"sha_finite":true,"integral_points":[]}"#,
        r#"{"label":"u","a":[0,0,1,-1,0],"rank":0,"sha_finite":"yes","integral_points":[]}"#,
        r#"{"label":"v","a":[0,0,1,-1,0],"rank":0,"sha_finite":true,"integral_points":[],"colour":1}"#,
        r#"{"label":"w","a":[0,0,1,-1,0],"rank":1,"sha_finite":true,"integral_points":[],"w_override":{"37":["1/x"]}}"#,
        GOOD,
    ]
    .join("\n");
    let got = ingest_str(&text);
    assert_eq!(got.records.len(), 1);
    let lines: Vec<usize> = got.errors.iter().map(|e| e.line).collect();
    assert_eq!(lines, [1, 2, 3, 4, 5, 6]);
}

#[test]
fn big_coefficients_as_strings() {
    let text = r#"{"label":"big","a":["0","0","0","-1","0"],"rank":0,"sha_finite":true,"integral_points":[["0","0"],["1","0"]],"w_override":{"2":["1/4", 0]}}"#;
    let got = ingest_str(text);
    assert!(got.errors.is_empty(), "{:?}", got.errors);
    assert_eq!(got.records[0].w_override[&2], ["1/4", "0"]);
}

#[test]
fn from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "{GOOD}").unwrap();
    assert_eq!(ingest(f.path()).unwrap().records.len(), 1);
    assert!(ingest(std::path::Path::new("/nonexistent/curves.jsonl")).is_err());
    let shipped = ingest(std::path::Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/curves.jsonl"))).unwrap();
    assert!(shipped.errors.is_empty());
    assert_eq!(shipped.records.len(), 3);
}
