use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_ranklab");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("RANKLAB_DATA_DIR")
        .output()
        .expect("binary runs")
}

fn run_with_data_dir(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env("RANKLAB_DATA_DIR", dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap()
}

#[test]
fn dim_prints_actual_dimension() {
    let o = run(&["dim", "--variety", "veronese", "--n", "2", "--d", "4", "--s", "5"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("actual dim 13"), "{s}");
    assert!(s.contains("hypersurface=true"), "{s}");
}

#[test]
fn dim_json_with_exact_verification() {
    let v = json(&run(&[
        "dim",
        "--variety",
        "segre",
        "--dims",
        "3,3,3",
        "--s",
        "4",
        "--verify",
        "exact",
        "--format",
        "json",
    ]));
    assert_eq!(v["schema"], "ranklab/1");
    assert_eq!(v["record"]["actual_dim"], 25);
    assert_eq!(v["record"]["verified_dim"], 25);
    assert_eq!(v["record"]["params"], serde_json::json!([3, 3, 3]));
}

#[test]
fn bounds_row_for_plane_cubics() {
    let v = json(&run(&[
        "bounds",
        "--variety",
        "veronese",
        "--n",
        "2",
        "--d",
        "3",
        "--format",
        "json",
    ]));
    let b = &v["report"]["bounds"];
    assert_eq!(v["report"]["g"], 4);
    assert_eq!((b["jelisiejew"].as_u64(), b["bdp"].as_u64()), (Some(5), Some(5)));
    assert_eq!((b["deparis2"].as_u64(), b["main"].as_u64()), (Some(7), Some(6)));
    assert_eq!((b["bhmt"].as_u64(), b["bt_hypersurface"].as_u64()), (Some(6), Some(7)));
    let text = stdout(&run(&["bounds", "--variety", "veronese", "--n", "2", "--d", "3"]));
    assert!(text.contains("X_{2,3}"), "{text}");
}

#[test]
fn census_finds_four_records() {
    let v = json(&run(&["census", "--family", "grassmann", "--limit", "500"]));
    assert_eq!(v["count"], 4);
    let got: Vec<(u64, u64, u64)> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["params"][0].as_u64().unwrap(),
                r["params"][1].as_u64().unwrap(),
                r["s"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(got, vec![(2, 4, 1), (3, 7, 3), (8, 17, 333), (9, 17, 333)]);
    assert_eq!(v["records"][2]["status"], "conjecture");
}

#[test]
fn identical_seed_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = run(&[
            "census",
            "--family",
            "grassmann",
            "--limit",
            "10",
            "--verify",
            "modular",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        assert!(o.stdout.is_empty());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let w1 = run(&["witness", "--variety", "sym2", "--random", "--seed", "3"]);
    let w2 = run(&["witness", "--variety", "sym2", "--random", "--seed", "3"]);
    assert_eq!(w1.stdout, w2.stdout);
}

#[test]
fn report_all_is_deterministic() {
    let args = [
        "report-all",
        "--format",
        "json",
        "--census-limit",
        "20",
        "--samples",
        "5",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema"], "ranklab/1");
    let titles: Vec<&str> = v["sections"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["title"].as_str().unwrap())
        .collect();
    assert_eq!(titles, ["Veronese", "Grassmann", "Segre", "Flag"]);
    let md = stdout(&run(&["report-all", "--census-limit", "20", "--samples", "5"]));
    assert!(md.starts_with("# ranklab report"));
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let v = json(&run(&[
        "census", "--family", "veronese", "--limit", "3", "--d-max", "4",
    ]));
    let csv_out = run(&[
        "census", "--family", "veronese", "--limit", "3", "--d-max", "4", "--format", "csv",
    ]);
    let mut rdr = csv::Reader::from_reader(csv_out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let recs = v["records"].as_array().unwrap();
    assert_eq!(rows.len(), recs.len());
    assert!(!rows.is_empty());
    for (row, rec) in rows.iter().zip(recs) {
        let params: Vec<String> = rec["params"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(&row[0], rec["family"].as_str().unwrap());
        assert_eq!(row[1], params.join(" "));
        for (i, key) in [
            (2, "s"),
            (3, "ambient_dim"),
            (4, "expected_dim"),
            (5, "actual_dim"),
            (6, "defect"),
        ] {
            assert_eq!(row[i], rec[key].to_string(), "{key}");
        }
        assert_eq!(row[7], rec["hypersurface"].to_string());
    }
}

#[test]
fn data_dir_override_changes_the_census() {
    let dir = tempfile::tempdir().unwrap();
    let table = r#"[{"family":"veronese","params":[2,4],"s":5,"defect":1,"status":"theorem","citation":"x"}]"#;
    fs::write(dir.path().join("exceptions.json"), table).unwrap();
    let v = json(&run_with_data_dir(
        dir.path(),
        &["census", "--family", "grassmann", "--limit", "500"],
    ));
    assert_eq!(v["count"], 3);
    // --data-dir wins over the environment
    let o = run_with_data_dir(
        Path::new("/nonexistent"),
        &[
            "census",
            "--family",
            "grassmann",
            "--limit",
            "500",
            "--data-dir",
            dir.path().to_str().unwrap(),
        ],
    );
    assert_eq!(json(&o)["count"], 3);
}

#[test]
fn missing_data_file_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_with_data_dir(dir.path(), &["census", "--family", "grassmann", "--limit", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["kind"], "config");
}

#[test]
fn malformed_table_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    fs::write(
        &path,
        r#"[{"family":"grassmann","params":[3,7],"s":3,"defect":1,"status":"theorem","citation":"x","extra":true}]"#,
    )
    .unwrap();
    let o = run(&[
        "census",
        "--family",
        "grassmann",
        "--limit",
        "10",
        "--table",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr_json(&o);
    assert_eq!(e["schema"], "ranklab/1");
    assert_eq!(e["error"]["variant"], "DataFile");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["dim", "--variety", "veronese"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let o = run(&["witness", "--variety", "flag", "--random", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn module_errors_exit_one() {
    let o = run(&["dim", "--variety", "segre", "--dims", "9,9,9,9", "--s", "40"]);
    assert_eq!(o.status.code(), Some(1));
    let e = stderr_json(&o);
    assert_eq!(e["error"]["kind"], "module");
    assert_eq!(e["error"]["variant"], "UnknownCase");
}

#[test]
fn witness_from_point_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.txt");
    fs::write(&p, "# diag(1,1,-2)\n1 0 0\n0 1 0\n0 0 -2\n").unwrap();
    let v = json(&run(&["witness", "--variety", "flag", "--point", p.to_str().unwrap()]));
    assert_eq!(v["rank_bound"], 3);
    assert_eq!(v["verified"], true);
    assert_eq!(v["exactness"]["kind"], "exact");
    assert_eq!(
        v["p"],
        serde_json::json!(["1", "0", "0", "0", "1", "0", "0", "0", "-2"])
    );

    let k = dir.path().join("k.txt");
    fs::write(&k, "1 0 0 0 0 1").unwrap();
    let v = json(&run(&["witness", "--variety", "klein", "--point", k.to_str().unwrap()]));
    assert_eq!(v["rank_bound"], 2);
    assert_eq!(v["verified"], true);
}

#[test]
fn witness_rejects_points_on_the_hypersurface() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.txt");
    fs::write(&p, "1 0 0  0 0 0  0 0 -1").unwrap();
    let o = run(&["witness", "--variety", "flag", "--point", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"]["variant"], "PrecondViolated");
    fs::write(&p, "1 0 0  0 1 0  0 0 1").unwrap();
    let o = run(&["witness", "--variety", "flag", "--point", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_decomp_single_case() {
    let v = json(&run(&[
        "verify-decomp",
        "--case",
        "11",
        "--samples",
        "25",
        "--seed",
        "4",
        "--format",
        "json",
    ]));
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["passed"], 25);
    assert_eq!(v["cases"][0]["case"], "11");
    let o = run(&["verify-decomp", "--case", "42"]);
    assert_eq!(o.status.code(), Some(2));
}
