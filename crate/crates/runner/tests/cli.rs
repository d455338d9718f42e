use std::path::Path;
use std::process::{Command, Output};

fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(args)
        .env_remove("QWALK_OUT")
        .output()
        .expect("spawn qwalk")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<csv::StringRecord>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    (header, r.records().map(Result::unwrap).collect())
}

fn is_17_digit_float(s: &str) -> bool {
    let Some((mantissa, exp)) = s.split_once('e') else { return false };
    let digits = mantissa.trim_start_matches('-');
    exp.parse::<i32>().is_ok()
        && digits.len() == 18
        && digits.as_bytes()[1] == b'.'
        && digits.chars().filter(char::is_ascii_digit).count() == 17
}

#[test]
fn run_writes_tables_with_exact_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = qwalk(&["run", "hqw", "--steps", "12", "--out", out, "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));

    let (header, rows) = read_csv(&dir.path().join("hqw/measures.csv"));
    assert_eq!(header.join(","), "step,I_full,I_p,I_c,E,C_r,I_cc_raw,I_cc,sigma");
    assert_eq!(rows.len(), 13);
    for (t, row) in rows.iter().enumerate() {
        assert_eq!(row[0].parse::<usize>().unwrap(), t);
        assert!(row.iter().skip(1).all(is_17_digit_float), "{row:?}");
    }

    let (header, rows) = read_csv(&dir.path().join("hqw/distribution.csv"));
    assert_eq!(header.join(","), "step,x,prob,mu");
    assert_eq!(rows.len(), 13 * 25);
    assert_eq!((&rows[0][0], &rows[0][1]), ("0", "-12"));
    assert_eq!((&rows[24][0], &rows[24][1]), ("0", "12"));
    let total: f64 = rows.iter().filter(|r| &r[0] == "12").map(|r| r[2].parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-12);

    let meta: toml::Table = std::fs::read_to_string(dir.path().join("hqw/metadata.toml")).unwrap().parse().unwrap();
    assert_eq!(meta["scenario"]["steps"].as_integer(), Some(12));
    assert_eq!(meta["scenario"]["sites"].as_integer(), Some(25));
    assert_eq!(meta["normalization"]["i_full"].as_integer(), Some(49));
    assert_eq!(meta["normalization"]["i_p"].as_integer(), Some(24));
    assert_eq!(meta["angles"]["theta"].as_float(), Some(std::f64::consts::FRAC_PI_4));
    assert!(!dir.path().join("hqw/chiral.toml").exists());
}

#[test]
fn output_root_defaults_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(["run", "ss-a", "--steps", "5"])
        .env("QWALK_OUT", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(dir.path().join("ss-a/measures.csv").exists());
    assert!(dir.path().join("ss-a/chiral.toml").exists());
}

#[test]
fn custom_walk_from_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = qwalk(&[
        "run", "edge", "--walk", "split-step", "--theta1", "-3pi/2", "--theta2-minus", "-pi", "--theta2-plus",
        "pi", "--steps", "10", "--initial", "-1,0,0,0", "--out", out,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let meta: toml::Table = std::fs::read_to_string(dir.path().join("edge/metadata.toml")).unwrap().parse().unwrap();
    assert_eq!(meta["scenario"]["walk"].as_str(), Some("split-step"));
    assert_eq!(meta["angles"]["theta1"].as_float(), Some(-1.5 * std::f64::consts::PI));
    assert_eq!(meta["initial"]["alpha_re"].as_float(), Some(-1.0));
    assert_eq!(meta["conventions"]["mu_extension"].as_bool(), Some(true));
}

#[test]
fn invalid_flags_fail_with_field_name() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = qwalk(&["run", "hqw", "--initial", "1,0,1,0", "--out", out]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("initial"), "{}", stderr(&o));
    let o = qwalk(&["run", "hqw", "--theta", "half", "--out", out]);
    assert!(stderr(&o).contains("theta"), "{}", stderr(&o));
    let o = qwalk(&["run", "nope", "--out", out]);
    assert!(stderr(&o).contains("walk"), "{}", stderr(&o));
    let o = qwalk(&["run", "hqw", "--format", "json", "--out", out]);
    assert!(!o.status.success());
}

#[test]
fn sweep_runs_every_entry() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    std::fs::write(
        &cfg,
        "[[scenario]]\nname = \"hqw\"\nsteps = 8\n\n[[scenario]]\nname = \"tqw-small\"\nbase = \"tqw\"\nsteps = 8\nruns = 3\n",
    )
    .unwrap();
    let out = dir.path().join("out");
    let o = qwalk(&["sweep", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let meta: toml::Table = std::fs::read_to_string(out.join("tqw-small/metadata.toml")).unwrap().parse().unwrap();
    assert_eq!(meta["seeds"]["realization"].as_array().unwrap().len(), 3);
    assert_eq!(meta["angles"]["table_len"].as_integer(), Some(9));
    assert!(out.join("hqw/distribution.csv").exists());

    std::fs::write(&cfg, "[[scenario]]\nname = \"hqw\"\nstep = 8\n").unwrap();
    let o = qwalk(&["sweep", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("step"), "{}", stderr(&o));
}

#[test]
fn chiral_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.toml");
    let o = qwalk(&["chiral", "ss-c", "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("sites = 51"), "{text}");
    let doc: toml::Table = std::fs::read_to_string(&path).unwrap().parse().unwrap();
    assert!(doc["full"]["unitarity_residual"].as_float().unwrap() < 1e-12);
    assert!(doc["full"]["chirality_residual_max"].as_float().is_some());
    assert!(!qwalk(&["chiral", "hqw"]).status.success());
}

#[test]
fn verify_passes() {
    let o = qwalk(&["verify"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(o.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 9);
}

#[test]
fn list_shows_catalog() {
    let text = String::from_utf8(qwalk(&["list"]).stdout).unwrap();
    for n in ["hqw", "sqw", "tqw", "ss-a", "ss-b", "ss-c", "ss-d"] {
        assert!(text.contains(n));
    }
}
