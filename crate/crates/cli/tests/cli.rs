use std::path::Path;
use std::process::{Command, Output};

fn gravhelm(dir: &Path, args: &[&str], config: &str) -> Output {
    let cfg = dir.join("run.toml");
    std::fs::write(&cfg, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_gravhelm"))
        .args(args)
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn eval_fs_grid_and_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = "energy = 5.0\nsource = [0.0, 10.0]\ngrid_x1 = [-2.0, 2.0]\ngrid_x2 = [8.0, 10.0]\n\
               grid_n = [5, 3]\ndiagnostic_target = [3.0, 2.0]\n";
    let out = gravhelm(dir.path(), &["eval-fs", "--threads", "2"], cfg);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = read_csv(&dir.path().join("out/fs_grid.csv"));
    assert_eq!(header, ["x1", "x2", "re_phi", "im_phi", "node_count"]);
    assert_eq!(rows.len(), 15);
    // x1 varies fastest
    assert_eq!(rows[1][0].parse::<f64>().unwrap(), -1.0);
    assert_eq!(rows[1][1].parse::<f64>().unwrap(), 8.0);
    // (0, 10) is the source itself
    let at_source = rows
        .iter()
        .find(|r| r[0].parse::<f64>().unwrap() == 0.0 && r[1].parse::<f64>().unwrap() == 10.0);
    assert_eq!(at_source.unwrap()[2], "");
    let (dh, drows) = read_csv(&dir.path().join("out/contour.csv"));
    assert_eq!(dh[0], "kind");
    assert_eq!(drows.iter().filter(|r| r[0] == "saddle").count(), 2);
    assert!(drows.iter().filter(|r| r[0] == "node").count() > 20);
}

#[test]
fn eval_fs_is_reproducible_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = "grid_n = [7, 7]\n";
    let a = gravhelm(dir.path(), &["eval-fs", "--threads", "1"], cfg);
    assert!(a.status.success());
    let first = std::fs::read(dir.path().join("out/fs_grid.csv")).unwrap();
    let b = gravhelm(dir.path(), &["eval-fs", "--threads", "3"], cfg);
    assert!(b.status.success());
    assert_eq!(first, std::fs::read(dir.path().join("out/fs_grid.csv")).unwrap());
}

#[test]
fn interior_airy_converges() {
    let dir = tempfile::tempdir().unwrap();
    let out = gravhelm(
        dir.path(),
        &["interior-airy", "--solver", "gmres"],
        "n_sweep = [80, 160]\ninterior_points = 20\n",
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = read_csv(&dir.path().join("out/interior_airy.csv"));
    assert_eq!(header[..3], ["n", "max_error", "green_residual"]);
    let err: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(err[1] < 1e-8 && err[1] < 1e-3 * err[0], "{err:?}");
    assert!(rows.iter().all(|r| r[5].parse::<usize>().unwrap() > 0));
}

#[test]
fn scatter_small_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = "energy = 5.0\ncurve_c0 = 2.0\ncurve_sin = [0.0, 0.3]\nsource = [-6.0, -3.0]\n\
               n_sweep = [80, 120]\ncircle_radius = 4.0\ncircle_points = 16\n\
               grid_x1 = [-4.0, 4.0]\ngrid_x2 = [-4.0, 4.0]\ngrid_n = [9, 9]\n";
    let out = gravhelm(dir.path(), &["scatter"], cfg);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = read_csv(&dir.path().join("out/scatter.csv"));
    assert_eq!(
        header,
        [
            "n",
            "fill_seconds",
            "solve_seconds",
            "eval_seconds_per_target",
            "iterations",
            "max_error"
        ]
    );
    assert_eq!(rows.len(), 2);
    assert!(rows[0][5].parse::<f64>().unwrap() < 1e-4);
    let (fh, frows) = read_csv(&dir.path().join("out/scatter_field.csv"));
    assert_eq!(fh.last().unwrap(), "status");
    assert_eq!(frows.len(), 81);
    let origin = frows
        .iter()
        .find(|r| r[0].parse::<f64>().unwrap() == 0.0 && r[1].parse::<f64>().unwrap() == 0.0)
        .unwrap();
    assert_eq!(origin[6], "inside");
    assert!(frows.iter().any(|r| r[6] == "ok" && !r[2].is_empty()));
}

#[test]
fn bad_input_fails_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&[&str], &str); 4] = [
        (&["eval-fs", "--eps=-1"], ""),
        (&["eval-fs"], "grid_n = [0, 3]\n"),
        (&["scatter"], "energy = 0.0\n"),
        (&["interior-airy"], "curve_c0 = 1.0\ncurve_cos = [0.0, 2.0]\n"),
    ];
    for (args, cfg) in cases {
        let out = gravhelm(dir.path(), args, cfg);
        assert!(!out.status.success(), "{args:?} {cfg:?} should fail");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
    let out = gravhelm(dir.path(), &["eval-fs"], "unknown_key = 1\n");
    assert!(!out.status.success());
}
