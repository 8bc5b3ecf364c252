use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_teleport"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("teleport-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_passes_and_lists_checks() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("ok")).count() >= 6);
    assert_eq!(run(&["verify"]).stdout, o.stdout);
}

#[test]
fn corrupted_correction_table_fails_verify() {
    let cfg = scratch("corrupt.toml", "[verify.corrections]\npsi_minus = \"X\"\n");
    let o = run(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("first failure: correction Ψ-"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Ψ-"));
}

#[test]
fn ideal_singlet_has_unit_fidelity() {
    let cfg = scratch("singlet.toml", "[setup]\nlabels = [\"C\"]\n");
    let o = run(&["ideal", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<_> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "fidelity").unwrap();
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 12);
    for row in rows {
        assert!(row.starts_with("C,"));
        assert_eq!(row.split(',').nth(col), Some("1.000000000"));
    }
}

#[test]
fn sweep_has_one_row_per_grid_point() {
    let cfg = scratch("sweep.toml", "[sweep]\nchi = [0.0, 0.05, 0.1]\n");
    let o = run(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn rates_report_about_ten_per_minute() {
    let o = run(&["rates", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let raw = v["records"][0]["raw_sixfold_per_minute"].as_f64().unwrap();
    assert!((raw - 10.387811634349).abs() < 1e-9);
    assert_eq!(v["metadata"]["command"], "rates");
}

#[test]
fn malformed_config_names_line_and_field() {
    let cfg = scratch(
        "bad.toml",
        "[setup]\norder_cutoff = 2\noverlap = [1.0, 1.0]\n",
    );
    let o = run(&["noisy", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("overlap") && err.contains("line 3"), "{err}");

    let cfg = scratch("bad_type.toml", "[setup]\nsamples = \"many\"\n");
    let o = run(&["noisy", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn invalid_values_are_config_errors() {
    let cfg = scratch("bad_chi.toml", "[sweep]\nchi = [0.5]\n");
    assert_eq!(
        run(&["sweep", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    let cfg = scratch("bad_v.toml", "[setup]\noverlap_v = [1.5, 1.0]\n");
    assert_eq!(
        run(&["noisy", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["noisy", "--config", "/nonexistent/x.toml"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn zero_brightness_is_flagged_not_fatal() {
    let cfg = scratch(
        "dark.toml",
        "[setup]\nchi = [0.0, 0.0, 0.0]\nlabels = [\"A\"]\n",
    );
    let o = run(&["noisy", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn same_seed_gives_identical_files() {
    let dir = std::env::temp_dir().join(format!("teleport-cli-det-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut files = Vec::new();
    for i in 0..2 {
        let path = dir.join(format!("run{i}.json"));
        let o = run(&[
            "noisy",
            "--samples",
            "5000",
            "--seed",
            "17",
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        files.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let other = run(&[
        "noisy",
        "--samples",
        "5000",
        "--seed",
        "18",
        "--format",
        "json",
    ]);
    assert_ne!(other.stdout, files[0]);
}
