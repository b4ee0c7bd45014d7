use std::process::{Command, Output};

fn oddgrid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddgrid"))
        .args(args)
        .env_remove("ODDGRID_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn solve_reports_value_and_count() {
    let out = oddgrid(&["solve", "king", "n=7", "--count"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("alpha_od = 9"), "{text}");
    assert!(text.contains("maximum sets: 1"), "{text}");
}

#[test]
fn solve_json_has_witness_cells() {
    let out = oddgrid(&[
        "--format",
        "json",
        "solve",
        "path_grid",
        "k=5",
        "--quantity",
        "alpha-iod",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["optimum"], 12);
    assert_eq!(v["cells"].as_array().unwrap().len(), 12);
}

#[test]
fn exhausted_budget_exits_with_two() {
    let out = oddgrid(&["--node-budget", "1000", "solve", "path_grid", "k=9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("budget exhausted"));
}

#[test]
fn bad_input_exits_with_three() {
    assert_eq!(oddgrid(&["solve", "dragon", "n=3"]).status.code(), Some(3));
    assert_eq!(oddgrid(&["solve", "king"]).status.code(), Some(3));
    assert_eq!(
        oddgrid(&["verify-set", "/nonexistent/cells.txt", "path_grid", "k=3"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn verify_set_flags_parity_violations() {
    let dir = std::env::temp_dir().join(format!("oddgrid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(&good, "(0, 0) (0, 2) (1, 1) (2, 0) (2, 2)\n").unwrap();
    assert_eq!(
        oddgrid(&["verify-set", good.to_str().unwrap(), "path_grid", "k=3"])
            .status
            .code(),
        Some(0)
    );
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "[[0, 0], [0, 2]]").unwrap();
    let out = oddgrid(&["verify-set", bad.to_str().unwrap(), "path_grid", "k=3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("(0, 1)"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn catalog_lists_errata() {
    let out = oddgrid(&["verify-catalog"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("ERRATUM  planar   k=11"), "{text}");
    assert!(text.contains("56 verified, 0 failed, 3 errata"), "{text}");
}

#[test]
fn tables_csv_export() {
    let out = oddgrid(&[
        "--format",
        "csv",
        "tables",
        "--planar",
        "5",
        "--cylinder",
        "0",
        "--torus",
        "0",
        "--iod",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("schema,family,params,quantity,value,method,proof_complete,elapsed_ms")
    );
    let values: Vec<&str> = lines.map(|l| l.split(',').nth(4).unwrap()).collect();
    assert_eq!(values, ["5", "5", "12"]);
}

#[test]
fn densities_and_bounds_print_exact_ratios() {
    let out = oddgrid(&["density", "knight"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("7/16 (0.437500)"));
    let out = oddgrid(&["density", "torus-import", "--param", "4"]);
    assert!(stdout(&out).contains("3/8 (0.375000)"));
    let out = oddgrid(&["bounds", "star-free", "8", "8", "15"]);
    assert!(stdout(&out).contains("7/1 (7.000000)"));
    let out = oddgrid(&["bounds", "density", "planar-grid"]);
    assert!(stdout(&out).contains("5/13 (0.384615)"));
}

#[test]
fn colorings_self_verify() {
    for args in [
        &["color", "grid5", "--size", "9,11"][..],
        &["color", "frame4", "--size", "3,2"],
        &["color", "king", "--size", "8"],
        &["color", "dgrid3", "--size", "3", "--window", "7"],
        &["color", "hexagonal"],
    ] {
        let out = oddgrid(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(stdout(&out).trim_end().ends_with("PASS"), "{args:?}");
    }
}
