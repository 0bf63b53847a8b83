//! End-to-end runs of the `casimir` binary on the shipped configurations.

mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn casimir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Runs a subcommand writing CSV to a temporary file and returns the rows.
fn csv_rows(args: &[&str]) -> Vec<csv::StringRecord> {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let mut full = vec!["--out", out.to_str().unwrap()];
    full.extend_from_slice(args);
    let o = casimir(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut reader = csv::Reader::from_path(&out).unwrap();
    reader.records().map(Result::unwrap).collect()
}

fn energy_rows(config: &str, extra: &[&str]) -> Vec<(f64, f64, f64, bool)> {
    let path = configs().join(config);
    let mut args = extra.to_vec();
    args.extend(["energy", path.to_str().unwrap()]);
    csv_rows(&args)
        .iter()
        .map(|r| {
            (
                r[0].parse().unwrap(),
                r[1].parse().unwrap(),
                r[2].parse().unwrap(),
                r[3].parse().unwrap(),
            )
        })
        .collect()
}

fn sign_changes(values: &[f64]) -> usize {
    values
        .windows(2)
        .filter(|w| (w[0] < 0.0) != (w[1] < 0.0))
        .count()
}

#[test]
fn gap_matched_rows_are_zero() {
    let rows = energy_rows("gap-matched.toml", &[]);
    assert_eq!(rows.len(), 3);
    for (_, e, p, converged) in rows {
        assert_eq!((e, p), (0.0, 0.0));
        assert!(converged);
    }
}

#[test]
fn ideal_metal_rows_match_casimir() {
    let rows = energy_rows("ideal-metal.toml", &[]);
    assert_eq!(rows.len(), 3);
    for (d, e, p, converged) in rows {
        assert!(converged);
        let want_e = common::casimir_energy(d);
        let want_p = common::casimir_pressure(d);
        assert!(
            ((e - want_e) / want_e).abs() < 5e-3,
            "d = {d}: {e} vs {want_e}"
        );
        assert!(
            ((p - want_p) / want_p).abs() < 5e-3,
            "d = {d}: {p} vs {want_p}"
        );
    }
}

#[test]
fn toluene_gold_curve_crosses_once() {
    for extra in [&[][..], &["--no-retardation"][..]] {
        let rows = energy_rows("toluene-gold-20A.toml", extra);
        assert_eq!(rows.len(), 40);
        let e: Vec<f64> = rows.iter().map(|r| r.1).collect();
        assert_eq!(sign_changes(&e), 1, "{extra:?}");
        assert!(e[0] < 0.0 && e[39] > 0.0, "{extra:?}");
        assert!(rows.iter().all(|r| r.3));
    }
}

#[test]
fn bromobenzene_z_curve_is_repulsive() {
    let rows = energy_rows("bromobenzene-Z-gold-20A.toml", &[]);
    assert!(rows.iter().all(|r| r.1 > 0.0 && r.3));
}

#[test]
fn symmetric_scan_reports_no_levitation() {
    let path = configs().join("symmetric-scan.toml");
    let rows = csv_rows(&["levitation", path.to_str().unwrap()]);
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert_eq!(&r[1], "");
        assert_eq!(&r[4], "no levitation in range");
    }
}

#[test]
fn dielectric_static_point_and_ordering() {
    let rows = csv_rows(&["dielectric", "silica", "--grid", "0,0,1,linear"]);
    assert_eq!(rows.len(), 1);
    assert_eq!(
        rows[0][2].parse::<f64>().unwrap(),
        1.0 + 0.829 + 0.095 + 1.098
    );

    let grid = "0.001,100,41,log";
    let column = |name: &str| -> Vec<f64> {
        csv_rows(&["dielectric", name, "--grid", grid])
            .iter()
            .map(|r| r[2].parse().unwrap())
            .collect()
    };
    let gold = column("gold");
    assert!(gold.windows(2).all(|w| w[1] < w[0]));

    // Each liquid is optically denser than silica in the visible (row 26 is
    // 2.05 eV) but not across the whole axis.
    let silica = column("silica");
    for liquid in ["toluene", "bromobenzene-Z"] {
        let diff: Vec<f64> = column(liquid)
            .iter()
            .zip(&silica)
            .map(|(a, b)| a - b)
            .collect();
        assert!(diff[26] > 0.0, "{liquid}");
        assert!(sign_changes(&diff) >= 1, "{liquid}");
    }
}

#[test]
fn unknown_material_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let run = dir.path().join("run.toml");
    std::fs::write(
        &run,
        "[stack]\nleft = \"silica\"\nleft_films = [ { material = \"unobtainium\", thickness = \"2 nm\" } ]\ngap = \"toluene\"\nright = \"silica\"\n\n[grid]\nmin = \"1 nm\"\nmax = \"2 nm\"\ncount = 2\n",
    )
    .unwrap();
    let o = casimir(&["energy", run.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("stack.left_films[0].material"), "{err}");
    assert!(err.contains("unobtainium"), "{err}");
}

#[test]
fn missing_file_is_an_io_error() {
    let o = casimir(&["energy", "/definitely/not/here.toml"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn csv_on_stdout_round_trips() {
    let path = configs().join("gap-matched.toml");
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("a.csv");
    let o = casimir(&[
        "--out",
        file.to_str().unwrap(),
        "energy",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let on_disk = std::fs::read(&file).unwrap();

    // Without an output path in the config or on the command line the CSV
    // goes to stdout, byte for byte identical.
    let run = dir.path().join("run.toml");
    let text = std::fs::read_to_string(&path).unwrap();
    let text: String = text
        .lines()
        .filter(|l| !l.starts_with("output"))
        .map(|l| format!("{l}\n"))
        .collect();
    std::fs::write(&run, text).unwrap();
    let o = casimir(&["energy", run.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(o.stdout, on_disk);
}

#[test]
fn levitation_scan_grows_with_film_thickness() {
    let path = configs().join("toluene-levitation-scan.toml");
    let rows = csv_rows(&["levitation", path.to_str().unwrap()]);
    assert_eq!(rows.len(), 5);
    let mut previous = 0.0;
    for r in &rows {
        assert_eq!(&r[4], "ok");
        let d: f64 = r[1].parse().unwrap();
        let peak: f64 = r[2].parse().unwrap();
        assert!(d > previous && peak > d);
        assert!(r[3].parse::<f64>().unwrap() > 0.0);
        previous = d;
    }
}
