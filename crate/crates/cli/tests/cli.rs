use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ring_thermo::{compare_datasets, emit_csv, run_sweep, Dataset, SweepConfig, SweepSpec};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ring-thermo"))
}

fn sweep_to(out: &Path, args: &[&str]) -> Output {
    bin().arg("sweep").args(args).arg("--out").arg(out).output().unwrap()
}

fn spec(text: &str) -> SweepSpec {
    SweepSpec::try_from(SweepConfig::from_toml(text).unwrap()).unwrap()
}

#[test]
fn byte_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = ["--ensemble", "grand", "--variant", "isotropic", "--t-points", "40"];
    assert!(sweep_to(&a, &[&args[..], &["--workers", "1"]].concat()).status.success());
    assert!(sweep_to(&b, &[&args[..], &["--workers", "7"]].concat()).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn round_trip_preserves_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rt.csv");
    let result = run_sweep(&spec("strengths = [0.3]\nt_min = 0.1\nt_max = 0.9\nt_points = 2")).unwrap();
    emit_csv(&result, &path).unwrap();
    let back = Dataset::read(&path).unwrap();
    assert_eq!(back.rows.len(), 2);
    for (row, cells) in result.rows.iter().zip(&back.rows) {
        assert_eq!(cells[0], Some(row.strength));
        assert_eq!(cells[1], Some(row.grid));
        let values: Vec<Option<f64>> = row.values.as_ref().unwrap().iter().map(|&v| Some(v)).collect();
        assert_eq!(&cells[2..], &values[..]);
    }
}

#[test]
fn golden_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    let out = sweep_to(
        &path,
        &["--ensemble", "grand", "--strengths", "0,1.2", "--t-points", "3", "--quantities", "n,j,c"],
    );
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let golden_head = [
        "# ring-thermo v0.1.0",
        "# ensemble=grand",
        "# variant=anisotropic",
        "# strengths=0,1.2",
        "# grid=t 0.01,1,3",
        "# mu=0.1",
        "# unit_mode=dimensionless omega=1 mass_radius=1",
        "# backend=direct",
        "# truncation tail_tol=1e-12 n_min=16 n_max=200000",
        "# quantities=n,j,c",
        "# rows=6 failed=0",
        "strength,grid,n,j,c",
    ];
    assert_eq!(&lines[..golden_head.len()], &golden_head[..]);
    assert_eq!(lines.len(), golden_head.len() + 6);
    assert!(lines[golden_head.len()].starts_with("0.0000000000000000e0,1.0000000000000000e-2,"));
    for line in &lines[golden_head.len()..] {
        assert_eq!(line.split(',').count(), 5);
    }
}

#[test]
fn flagged_rows_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fail.csv");
    let out = sweep_to(&path, &["--strengths", "0", "--t-points", "2", "--n-max", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let data = Dataset::read(&path).unwrap();
    assert_eq!(data.rows.len(), 2);
    for row in &data.rows {
        assert!(row[0].is_some() && row[1].is_some());
        assert!(row[2..].iter().all(Option::is_none));
    }
    assert!(fs::read_to_string(&path).unwrap().contains(",ERROR,ERROR"));
}

#[test]
fn invalid_spec_exits_two_without_output() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["--strengths", ""][..],
        &["--t-min", "0"],
        &["--t-points", "1"],
        &["--quantities", "n"],
    ] {
        let path = dir.path().join("never.csv");
        let out = sweep_to(&path, args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!path.exists());
    }
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "strengths = []\n").unwrap();
    let out = bin().arg("sweep").arg("--config").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "ensemble = \"grand\"\nstrengths = [0.6]\nt_points = 5\nmu = 0.5\n").unwrap();
    let path = dir.path().join("o.csv");
    let out = bin()
        .arg("sweep")
        .arg("--config")
        .arg(&cfg)
        .args(["--mu", "-0.2", "--fixed-T", "0.3"])
        .arg("--out")
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let data = Dataset::read(&path).unwrap();
    assert!(data.metadata.contains(&"mu=-0.2".to_string()));
    assert!(data.metadata.contains(&"strengths=0.6".to_string()));
    assert_eq!(data.rows.len(), 5);
}

#[test]
fn io_errors_name_the_path() {
    let out = sweep_to(Path::new("/nonexistent-dir/out.csv"), &["--t-points", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent-dir/out.csv"));
}

#[test]
fn compare_identical_and_perturbed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    assert!(sweep_to(&a, &["--t-points", "10"]).status.success());
    let report = compare_datasets(&a, &a, 0.0, 0.0).unwrap();
    assert!(report.passed());
    assert!(report.columns.iter().all(|c| c.max_abs == 0.0));

    let mut data = Dataset::read(&a).unwrap();
    let text = fs::read_to_string(&a).unwrap();
    let b = dir.path().join("b.csv");
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let first = lines.iter().position(|l| l.starts_with("strength")).unwrap() + 1;
    let v = data.rows[0][2].unwrap();
    let bumped = v * (1.0 + 1e-12);
    data.rows[0][2] = Some(bumped);
    let mut cells: Vec<String> = lines[first].split(',').map(str::to_string).collect();
    cells[2] = format!("{bumped:.16e}");
    lines[first] = cells.join(",");
    fs::write(&b, lines.join("\n") + "\n").unwrap();
    assert!(compare_datasets(&a, &b, 1e-9, 0.0).unwrap().passed());
    assert!(!compare_datasets(&a, &b, 0.0, 0.0).unwrap().passed());

    let status = bin().arg("compare").arg(&a).arg(&b).args(["--rtol", "1e-9"]).status().unwrap();
    assert!(status.success());
    let status = bin().arg("compare").arg(&a).arg(&b).status().unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn compare_schema_mismatch_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert!(sweep_to(&a, &["--t-points", "4", "--quantities", "f,u"]).status.success());
    assert!(sweep_to(&b, &["--t-points", "4", "--quantities", "f,c"]).status.success());
    let status = bin().arg("compare").arg(&a).arg(&b).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn physical_radius_sweep_keeps_spacing_definition() {
    let result = run_sweep(&spec(
        "ensemble = \"grand\"\nunit_mode = \"physical\"\nr0_sweep = [0.2, 5.0, 25]\nstrengths = [0.0, 0.9]\nquantities = [\"u\"]",
    ))
    .unwrap();
    assert_eq!(result.rows.len(), 50);
    for row in &result.rows {
        let m = row.model;
        assert!((m.omega() * 2.0 * m.mass() * m.radius() * m.radius() - 1.0).abs() < 1e-12);
        assert!((m.radius_nm() - 50.0 * row.grid).abs() < 1e-9);
    }
}

#[test]
fn direct_and_closed_form_datasets_agree() {
    // backend agreement on T in [0.2, 1] at rtol 1e-2
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("direct.csv");
    let b = dir.path().join("em.csv");
    let grid = ["--t-min", "0.2", "--t-max", "1.0", "--t-points", "20"];
    assert!(sweep_to(&a, &[&grid[..], &["--backend", "direct"]].concat()).status.success());
    assert!(sweep_to(&b, &[&grid[..], &["--backend", "em"]].concat()).status.success());
    let report = compare_datasets(&a, &b, 1e-2, 0.0).unwrap();
    assert!(report.passed(), "{report}");
}
