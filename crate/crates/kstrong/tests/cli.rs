use std::path::Path;
use std::process::{Command, Output};

use kstrong::json::{game_to_string, read_game};
use kstrong_core::{parse_rational, Rational};
use serde_json::Value;

fn kstrong(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kstrong")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn rational(v: &Value) -> Rational {
    parse_rational(v.as_str().expect("string")).unwrap()
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

const TWO_LINK: &str = r#"{"n": 2, "basis": "mono:1",
  "resources": [{"alpha": ["1"]}, {"alpha": ["1"]}],
  "strategies": [[[0], [1]], [[0], [1]]]}"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn bounds_examples() {
    let r = json_of(&kstrong(&["bounds", "--class", "affine", "--n", "2", "--k", "1"]));
    assert_eq!((r["upper"].as_str(), r["lower"].as_str()), (Some("3"), Some("3")));
    assert_eq!(r["lambda_mu"][0]["certificate"], Value::Bool(false));
    let r = json_of(&kstrong(&["bounds", "--class", "affine", "--n", "2", "--k", "2"]));
    assert_eq!((r["upper"].as_str(), r["lower"].as_str()), (Some("1"), Some("1")));
    let r = json_of(&kstrong(&["bounds", "--class", "poly:2", "--n", "1", "--k", "1"]));
    assert_eq!((r["upper"].as_str(), r["lower"].as_str()), (Some("1"), Some("1")));
    let r = json_of(&kstrong(&["--float", "bounds", "--class", "affine", "--n", "3", "--k", "1"]));
    assert!((r["upper"].as_f64().unwrap() - 3.0).abs() < 1e-9);
    assert_eq!(r["upper_decimal"].as_str(), Some("3"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bounds", "--class", "affine", "--n", "2", "--k", "3"][..],
        &["bounds", "--class", "quadratic", "--n", "2", "--k", "1"],
        &["bounds", "--class", "affine", "--n", "2"],
        &["sweep", "--n", "3"],
        &["sweep", "--class", "affine", "--n", "3..1"],
    ] {
        assert_eq!(kstrong(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn sweep_rows_and_clamping() {
    let out = kstrong(&["sweep", "--class", "affine", "--n", "10", "--k", "1..10"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(text.lines().next(), Some("class,n,k,upper,lower,zeta_star,c_star,exact_mode"));
    assert_eq!(rows.len(), 10);
    let uppers: Vec<Rational> = rows.iter().map(|r| parse_rational(r.split(',').nth(3).unwrap()).unwrap()).collect();
    assert!(uppers.windows(2).all(|w| w[1] <= w[0]));

    let out = kstrong(&["sweep", "--class", "affine", "--n", "10", "--k", "1..20"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 11);
    assert!(String::from_utf8_lossy(&out.stderr).contains("clamped"));
}

#[test]
fn sweep_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for jobs in ["1", "3"] {
        let path = dir.path().join(format!("sweep{jobs}.csv"));
        let out = kstrong(&[
            "--jobs", jobs, "sweep", "--class", "poly:2", "--class", "affine", "--n", "2..5", "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let text = String::from_utf8(outputs[0].clone()).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("affine,2,1,"));
    assert_eq!(text.lines().count(), 1 + 2 * (2 + 3 + 4 + 5));
}

#[test]
fn float_class_sweeps_in_float_mode() {
    let out = kstrong(&["sweep", "--class", "exp:0.5,1", "--n", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("\"exp:0.5,1\",2,1,"));
    assert!(text.lines().nth(1).unwrap().ends_with(",false"));
}

#[test]
fn dump_lp_writes_programs() {
    let dir = tempfile::tempdir().unwrap();
    let out = kstrong(&["bounds", "--class", "affine", "--n", "2", "--k", "2", "--dump-lp", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let p = std::fs::read_to_string(dir.path().join("affine_p_n2_zeta1.lp")).unwrap();
    assert!(p.starts_with("maximize: 1*rho\nsubject to:\n"));
    let q = std::fs::read_to_string(dir.path().join("affine_q_n2_k2_c1.lp")).unwrap();
    assert!(q.starts_with("minimize:"));
    assert!(q.contains("normalization"));
}

#[test]
fn construct_then_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let game = dir.path().join("ring.json");
    let sidecar = dir.path().join("ring.sidecar.json");
    let out = kstrong(&[
        "construct", "--n", "2", "--k", "1", "--class-fn", "mono:1", "--theta", "from-lp", "--verify", "--out-game",
        game.to_str().unwrap(), "--out-sidecar", sidecar.to_str().unwrap(),
    ]);
    let summary = json_of(&out);
    assert_eq!(summary["resources"], Value::from(8));
    assert_eq!(summary["verification"]["ratio"].as_str(), Some("3"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("8 resources"));

    let text = std::fs::read_to_string(&game).unwrap();
    assert_eq!(game_to_string(&read_game::<Rational>(&game).unwrap()), text);

    let oracle = json_of(&kstrong(&["oracle", "--game", game.to_str().unwrap(), "--k", "1"]));
    assert!(rational(&oracle["exact_spoa"]) >= int(3));

    let verify = json_of(&kstrong(&[
        "verify", "--game", game.to_str().unwrap(), "--k", "1", "--strategy", sidecar.to_str().unwrap(),
    ]));
    assert_eq!(verify["k_strong"], Value::Bool(true));
    let verify = json_of(&kstrong(&[
        "verify", "--game", game.to_str().unwrap(), "--k", "2", "--strategy", sidecar.to_str().unwrap(),
    ]));
    assert_eq!(verify["k_strong"], Value::Bool(false));
    assert_eq!(verify["witness"]["group"], serde_json::json!([0, 1]));

    let rebuilt = dir.path().join("again.json");
    let out = kstrong(&[
        "construct", "--n", "2", "--class-fn", "mono:1", "--theta", sidecar.to_str().unwrap(), "--out-game",
        rebuilt.to_str().unwrap(), "--out-sidecar", dir.path().join("again.sidecar.json").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&rebuilt).unwrap(), text);
}

#[test]
fn construct_respects_the_player_cap() {
    let dir = tempfile::tempdir().unwrap();
    let out = kstrong(&[
        "construct", "--n", "3", "--class-fn", "mono:1", "--max-players", "2", "--out-game",
        dir.path().join("g").to_str().unwrap(), "--out-sidecar", dir.path().join("s").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(kstrong(&["construct", "--n", "2", "--class-fn", "affine", "--out-game", "g", "--out-sidecar", "s"]).status.code(), Some(2));
}

#[test]
fn oracle_verify_dynamics_on_a_small_game() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(dir.path(), "two_link.json", TWO_LINK);
    let report = json_of(&kstrong(&["oracle", "--game", &game, "--k", "1"]));
    assert_eq!(report["equilibria"], serde_json::json!([[0, 1], [1, 0]]));
    assert_eq!(report["exact_spoa"].as_str(), Some("1"));
    assert_eq!(report["optimal_cost"].as_str(), Some("2"));

    let verify = json_of(&kstrong(&["verify", "--game", &game, "--k", "2"]));
    assert_eq!(verify["k_strong"], Value::Bool(true));
    let start = write(dir.path(), "start.json", "[0, 0]");
    let verify = json_of(&kstrong(&["verify", "--game", &game, "--k", "1", "--strategy", &start]));
    assert_eq!(verify["k_strong"], Value::Bool(false));
    assert_eq!(verify["witness"]["group"], serde_json::json!([0]));

    let run = json_of(&kstrong(&["dynamics", "--game", &game, "--k", "2", "--start", &start]));
    assert_eq!(run["cost"], report["optimal_cost"]);
    assert_eq!(run["k_strong"], Value::Bool(true));
    for seed in ["1", "2", "3"] {
        let run = json_of(&kstrong(&["--seed", seed, "dynamics", "--game", &game, "--k", "2", "--tie", "steepest"]));
        assert_eq!(run["cost"], report["optimal_cost"]);
    }
    let float = json_of(&kstrong(&["--float", "oracle", "--game", &game, "--k", "1"]));
    assert_eq!(float["exact_spoa"].as_f64(), Some(1.0));
}

#[test]
fn bad_game_files() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(dir.path(), "broken.json", "{\n  \"n\": 2,\n  \"basis\": \"affine\",\n  oops\n}");
    let out = kstrong(&["oracle", "--game", &broken, "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.json:4:"));
    let missing = dir.path().join("missing.json");
    assert_eq!(kstrong(&["oracle", "--game", missing.to_str().unwrap(), "--k", "1"]).status.code(), Some(1));
    let game = write(dir.path(), "g.json", TWO_LINK);
    let out = kstrong(&["oracle", "--game", &game, "--k", "1", "--max-joint", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("joint strategies"));
}
