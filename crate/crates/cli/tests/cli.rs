use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rbf-weno"))
}

#[test]
fn invalid_scheme_is_usage_error() {
    let out = bin()
        .args(["run", "--problem", "sod", "--scheme", "upwind", "--n", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown scheme"));
}

#[test]
fn missing_required_flag_is_usage_error() {
    let out = bin().args(["run", "--scheme", "eno"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let out = bin().arg("verify").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let pass_lines = text.lines().filter(|l| l.starts_with("PASS ")).count();
    assert!(pass_lines >= 20, "only {pass_lines} check lines");
    assert!(text.contains("checks passed"));

    let out = bin()
        .args(["verify", "--inject-fault", "corrupt-poly-coeff"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL poly-limit-bit-equality-k2"));

    let out = bin()
        .args(["verify", "--inject-fault", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_configs_produce_bit_identical_csv() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let status = bin()
            .args([
                "run",
                "--problem",
                "burgers-sine",
                "--scheme",
                "rbf-weno-js",
                "--k",
                "3",
                "--n",
                "40",
                "--out",
            ])
            .arg(dir.path())
            .status()
            .unwrap();
        assert!(status.success());
    }
    let name = "burgers-sine_rbf-weno-js_k3_n40.csv";
    let a = std::fs::read(dir_a.path().join(name)).unwrap();
    let b = std::fs::read(dir_b.path().join(name)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn run_csv_has_header_and_finite_cells() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args([
            "run", "--problem", "lax", "--scheme", "eno", "--k", "2", "--n", "50", "--out",
        ])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(dir.path().join("lax_eno_k2_n50.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,rho,u,p"));
    let mut rows = 0;
    for line in lines {
        for cell in line.split(',') {
            let v: f64 = cell.parse().expect("numeric cell");
            assert!(v.is_finite());
        }
        rows += 1;
    }
    assert_eq!(rows, 50);
}

#[test]
fn converge_table_uses_printed_number_style() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "converge",
            "--problem",
            "advect-smooth",
            "--scheme",
            "weno-js",
            "--k",
            "2",
            "--resolutions",
            "10,20",
            "--both-norms",
            "--out",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv =
        std::fs::read_to_string(dir.path().join("advect-smooth_weno-js_k2_converge.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("N,L1_error,L1_order,L2_error,L2_order,Linf_error,Linf_order")
    );
    let first = lines.next().unwrap();
    // first row: orders empty, errors like 1.23E-4
    let cells: Vec<&str> = first.split(',').collect();
    assert_eq!(cells[0], "10");
    assert!(cells[1].contains('E'));
    assert!(cells[2].is_empty());
    let second = lines.next().unwrap();
    let cells: Vec<&str> = second.split(',').collect();
    assert!(!cells[2].is_empty(), "order column fills from the 2nd row");
    // mean-normalized companion written on request
    assert!(dir
        .path()
        .join("advect-smooth_weno-js_k2_converge_mean.csv")
        .exists());
}

#[test]
fn converge_rejects_problems_without_exact_solution() {
    let out = bin()
        .args(["converge", "--problem", "sod", "--scheme", "eno"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_merges_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# sweep defaults\nproblem = advect-smooth\nscheme = eno\nk = 2\nn = 20\nt_end = 0.1\n",
    )
    .unwrap();
    // flag overrides the file's scheme; the rest comes from the file
    let status = bin()
        .args(["run", "--scheme", "weno-js", "--config"])
        .arg(&cfg)
        .args(["--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(dir.path().join("advect-smooth_weno-js_k2_n20.csv").exists());

    std::fs::write(&cfg, "nonsense_key = 3\n").unwrap();
    let out = bin()
        .args(["run", "--scheme", "eno", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
