use std::process::Command;

fn classalg(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_classalg")).args(args).output().expect("runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn all_on_trivial_group_passes() {
    let (code, out, _) = classalg(&["all", "--group", "trivial", "--level", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["status"] == "pass"));
}

#[test]
fn stable_constants_shape() {
    let (code, out, _) = classalg(&["stable", "constants", "--group", "cyclic2", "--cap", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let pairs = v["pairs"].as_array().unwrap();
    // 8 types of norm <= 2 for two classes
    assert_eq!(pairs.len(), 64);
    let first = &pairs[0];
    let keys: Vec<_> = first.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["rho", "sigma", "terms"]);
    let term = first["terms"][0].as_object().unwrap();
    assert_eq!(term.keys().cloned().collect::<Vec<_>>(), ["nu", "dtilde", "d"]);
}

#[test]
fn unknown_preset_is_usage_error() {
    let (code, _, err) = classalg(&["group", "--group", "cyclic99x"]);
    assert_eq!(code, 2);
    assert!(err.contains("cyclic99x"));
}

#[test]
fn bad_flag_values_are_usage_errors() {
    assert_eq!(classalg(&["fock", "verify", "cubic", "--level", "50"]).0, 2);
    assert_eq!(classalg(&["nonsense"]).0, 2);
}

#[test]
fn literal_vertex_operator_fails_for_cyclic2() {
    let (code, out, _) = classalg(&["winf", "verify", "vo", "--group", "cyclic2", "--level", "3"]);
    assert_eq!(code, 1);
    assert!(out.contains("\"fail\""));
    let (code, _, _) = classalg(&["winf", "verify", "vo", "--group", "cyclic2", "--level", "3", "--form", "corrected"]);
    assert_eq!(code, 0);
}

#[test]
fn output_is_reproducible() {
    let args = ["winf", "verify", "level-one", "--group", "cyclic2", "--level", "3", "--seed", "5"];
    assert_eq!(classalg(&args).1, classalg(&args).1);
}

#[test]
fn timing_adds_wall_time() {
    let (_, out, _) = classalg(&["fock", "verify", "dual", "--level", "2", "--timing"]);
    assert!(out.contains("wall_time_ms"));
    let (_, out, _) = classalg(&["fock", "verify", "dual", "--level", "2"]);
    assert!(!out.contains("wall_time_ms"));
}

#[test]
fn config_file_and_flag_override() {
    let dir = std::env::temp_dir().join(format!("classalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.toml");
    std::fs::write(&cfg, "group = \"cyclic3\"\nn = 2\nformat = \"csv\"\n").unwrap();
    let (code, out, _) = classalg(&["wreath", "classes", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("type,size,centralizer"));
    // 9 classes of Z/3 wr S_2
    assert_eq!(out.lines().count(), 10);
    let (_, out, _) = classalg(&["wreath", "classes", "--config", cfg.to_str().unwrap(), "--n", "1"]);
    assert_eq!(out.lines().count(), 4);
    std::fs::write(&cfg, "colour = 1\n").unwrap();
    assert_eq!(classalg(&["group", "--config", cfg.to_str().unwrap()]).0, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn pl_prints_polynomial() {
    let (code, out, _) = classalg(&["winf", "pl", "--l", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "P2 = :(J0)^2: + dJ0");
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("classalg-out-{}.json", std::process::id()));
    let (code, out, _) = classalg(&["jm", "table", "--group", "cyclic2", "--n", "2", "--k", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["jm"][1]["support"], 2);
    std::fs::remove_file(path).ok();
}
