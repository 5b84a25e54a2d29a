//! End-to-end CLI behavior: exit codes, output formats, determinism, and
//! schema conformance of the JSON outputs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn dlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("dlat-test-{}-{name}", std::process::id()));
    p
}

/// Minimal JSON-schema validator: types, required fields, properties,
/// items, minItems/maxItems, and local $ref into $defs. Enough to enforce
/// the shipped schemas.
mod schema {
    use serde_json::Value;

    pub fn validate(schema: &Value, value: &Value, root: &Value) -> Result<(), String> {
        if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
            let target = resolve(reference, root)?;
            return validate(&target, value, root);
        }
        if let Some(ty) = schema.get("type") {
            let ok = match ty.as_str() {
                Some(t) => type_matches(t, value),
                None => ty
                    .as_array()
                    .map(|ts| {
                        ts.iter()
                            .filter_map(Value::as_str)
                            .any(|t| type_matches(t, value))
                    })
                    .unwrap_or(false),
            };
            if !ok {
                return Err(format!("type mismatch: expected {ty}, got {value}"));
            }
        }
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            let obj = value
                .as_object()
                .ok_or_else(|| "required on non-object".to_string())?;
            for name in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(name) {
                    return Err(format!("missing required field {name:?}"));
                }
            }
        }
        if let Some(props) = schema.get("properties").and_then(Value::as_object) {
            if let Some(obj) = value.as_object() {
                for (name, sub) in props {
                    if let Some(v) = obj.get(name) {
                        validate(sub, v, root).map_err(|e| format!("{name}: {e}"))?;
                    }
                }
            }
        }
        if let Some(items) = schema.get("items") {
            if let Some(arr) = value.as_array() {
                if let Some(min) = schema.get("minItems").and_then(Value::as_u64) {
                    if (arr.len() as u64) < min {
                        return Err(format!("array shorter than minItems {min}"));
                    }
                }
                if let Some(max) = schema.get("maxItems").and_then(Value::as_u64) {
                    if (arr.len() as u64) > max {
                        return Err(format!("array longer than maxItems {max}"));
                    }
                }
                for (i, v) in arr.iter().enumerate() {
                    validate(items, v, root).map_err(|e| format!("[{i}]: {e}"))?;
                }
            }
        }
        Ok(())
    }

    fn resolve(reference: &str, root: &Value) -> Result<Value, String> {
        let path = reference
            .strip_prefix("#/")
            .ok_or_else(|| format!("unsupported $ref {reference}"))?;
        let mut cur = root;
        for part in path.split('/') {
            cur = cur
                .get(part)
                .ok_or_else(|| format!("missing $ref target {reference}"))?;
        }
        Ok(cur.clone())
    }

    fn type_matches(t: &str, v: &Value) -> bool {
        match t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "number" => v.is_number(),
            "integer" => v.is_i64() || v.is_u64(),
            "string" => v.is_string(),
            "boolean" => v.is_boolean(),
            "null" => v.is_null(),
            _ => false,
        }
    }
}

fn load_schema(name: &str) -> serde_json::Value {
    let path = format!("{}/schemas/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn density_builtin_heptagon() {
    let out = dlat(&["density2d", "--builtin", "heptagon"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("density:   0.892691"), "{text}");
}

#[test]
fn density_square_and_triangle() {
    for (name, expected) in [("square", "1.000000"), ("triangle", "1.000000")] {
        let out = dlat(&["density2d", "--builtin", name]);
        assert!(out.status.success());
        assert!(stdout_of(&out).contains(expected));
    }
}

#[test]
fn density_json_output_validates() {
    let json_path = tmp("density.json");
    let out = dlat(&[
        "density2d",
        "--builtin",
        "heptagon",
        "--json",
        json_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let schema = load_schema("density_result.schema.json");
    schema::validate(&schema, &value, &schema).unwrap();
    assert!((value["density"].as_f64().unwrap() - 0.892691).abs() < 1e-5);
    std::fs::remove_file(json_path).ok();
}

#[test]
fn polygon_file_round_trip() {
    let poly_path = tmp("poly.json");
    std::fs::write(
        &poly_path,
        r#"{"vertices": [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]}"#,
    )
    .unwrap();
    // Validate the input against the shipped polygon schema, then run.
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&poly_path).unwrap()).unwrap();
    let schema = load_schema("polygon.schema.json");
    schema::validate(&schema, &value, &schema).unwrap();
    let out = dlat(&["density2d", "--input", poly_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("1.000000"));
    std::fs::remove_file(poly_path).ok();
}

#[test]
fn input_errors_exit_2() {
    let out = dlat(&["density2d", "--builtin", "enneadecagon"]);
    assert_eq!(out.status.code(), Some(2));

    let bad = tmp("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = dlat(&["density2d", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line") || err.contains("column"), "{err}");
    std::fs::remove_file(bad).ok();

    // Clockwise (invalid) polygon.
    let cw = tmp("cw.json");
    std::fs::write(
        &cw,
        r#"{"vertices": [[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]}"#,
    )
    .unwrap();
    let out = dlat(&["density2d", "--input", cw.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(cw).ok();

    let out = dlat(&["certify-heptagon", "--checks", "bogus-check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certify_single_check_and_json() {
    let json_path = tmp("report.json");
    let out = dlat(&[
        "certify-heptagon",
        "--checks",
        "null-sum",
        "--json",
        json_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("PASS null-sum"), "{text}");
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let schema = load_schema("certificate_report.schema.json");
    schema::validate(&schema, &value, &schema).unwrap();
    std::fs::remove_file(json_path).ok();
}

#[test]
fn certify_mutated_table_fails() {
    let out = dlat(&["certify-heptagon", "--mutate-table", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("FAIL null-sum"));
}

#[test]
fn ball3d_ball_report() {
    let out = dlat(&["ball3d", "--builtin", "ball", "--lambda", "0.1"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("mean width w:       2.000000000"), "{text}");
    assert!(text.contains("bound(lambda):      0.740480"), "{text}");
}

#[test]
fn ball3d_legendre_csv() {
    let csv_path = tmp("legendre.csv");
    let out = dlat(&[
        "ball3d",
        "--legendre",
        "12",
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "l,c_l,c_l_float");
    assert_eq!(lines.len(), 14);
    assert!(lines[1].starts_with("0,12,"));
    assert!(lines[2].starts_with("1,0,"));
    assert!(lines[3].starts_with("2,0,"));
    assert!(lines[4].starts_with("3,5/36,"));
    std::fs::remove_file(csv_path).ok();
}

#[test]
fn ball3d_body_file() {
    let body_path = tmp("body.json");
    std::fs::write(
        &body_path,
        r#"{"vertices": [[0.5,0.5,0.5],[0.5,0.5,-0.5],[0.5,-0.5,0.5],[0.5,-0.5,-0.5],
                        [-0.5,0.5,0.5],[-0.5,0.5,-0.5],[-0.5,-0.5,0.5],[-0.5,-0.5,-0.5]]}"#,
    )
    .unwrap();
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&body_path).unwrap()).unwrap();
    let schema = load_schema("body3.schema.json");
    schema::validate(&schema, &value, &schema).unwrap();
    let out = dlat(&["ball3d", "--input", body_path.to_str().unwrap(), "--lambda", "0.05"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::remove_file(body_path).ok();
}

#[test]
fn render_is_deterministic() {
    let a_path = tmp("a.svg");
    let b_path = tmp("b.svg");
    for p in [&a_path, &b_path] {
        let out = dlat(&[
            "render",
            "--builtin",
            "heptagon",
            "--shells",
            "2",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = std::fs::read(&a_path).unwrap();
    let b = std::fs::read(&b_path).unwrap();
    assert_eq!(a, b, "byte-identical SVG across runs");
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("<svg"));
    assert!(text.contains("viewBox=\"0 0"));
    std::fs::remove_file(a_path).ok();
    std::fs::remove_file(b_path).ok();
}

#[test]
fn harmonic_serialization_matches_schema() {
    // The harmonic expansion interface: serialize one and validate.
    let h = dlat::ball3d::HarmonicSupport::zero(3);
    let value = serde_json::to_value(&h).unwrap();
    let schema = load_schema("harmonic.schema.json");
    schema::validate(&schema, &value, &schema).unwrap();
}
