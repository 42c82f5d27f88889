use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_noma-slicing");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn text(o: &Output) -> String {
    format!("{}{}", String::from_utf8_lossy(&o.stdout), String::from_utf8_lossy(&o.stderr))
}

fn build(dir: &Path, name: &str, workers: &str) -> Output {
    let out = dir.join(name);
    run(&[
        "--workers", workers, "table-build", "--f-u", "1", "--r-bar-u", "1", "--eps", "1e-2", "--s-min", "0",
        "--s-max", "40", "--s-step", "1", "--i-min", "-10", "--i-max", "20", "--i-step", "5", "--stages",
        "4000,40000", "--seed", "5", "--out", out.to_str().unwrap(),
    ])
}

#[test]
fn table_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let o = build(dir.path(), "a.tbl", "1");
    assert!(o.status.success(), "{}", text(&o));
    assert!(text(&o).contains("cells: "));
    let a = dir.path().join("a.tbl");

    // same config and seed, different worker count: identical bytes
    let o = build(dir.path(), "b.tbl", "2");
    assert!(o.status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(dir.path().join("b.tbl")).unwrap());

    let o = run(&["verify", "--table", a.to_str().unwrap()]);
    assert!(o.status.success(), "{}", text(&o));
    assert!(text(&o).contains("closed-form"));

    // push one cell's bound above its neighbour: monotonicity must fail and name it
    let bytes = std::fs::read(&a).unwrap();
    let body = bytes.windows(11).position(|w| w == b"end_header\n").unwrap() + 11;
    let mut bad = bytes.clone();
    let cells = (bytes.len() - body) / 32;
    let target = body + (cells / 2) * 32 + 8;
    bad[target..target + 8].copy_from_slice(&1.0f64.to_le_bytes());
    let flipped = dir.path().join("bad.tbl");
    std::fs::write(&flipped, &bad).unwrap();
    let o = run(&["verify", "--table", flipped.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", text(&o));
    assert!(text(&o).contains("[FAIL] monotonicity"), "{}", text(&o));
    assert!(text(&o).contains("s="), "{}", text(&o));

    let cut = dir.path().join("cut.tbl");
    std::fs::write(&cut, &bytes[..bytes.len() - 5]).unwrap();
    let o = run(&["verify", "--table", cut.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5), "{}", text(&o));

    let csv = dir.path().join("a.csv");
    let o = run(&["export-csv", "--table", a.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(csv).unwrap().contains("s_db,i_db,estimate,upper95"));
}

#[test]
fn bad_grid_names_the_flag() {
    let o = run(&["table-build", "--s-min", "10", "--s-max", "0", "--out", "/nonexistent/x.tbl"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(text(&o).contains("--s-min"), "{}", text(&o));
}

#[test]
fn allocate_commands() {
    let dir = tempfile::tempdir().unwrap();
    let tbl = dir.path().join("t.tbl");
    let o = run(&[
        "table-build", "--f-u", "3", "--eps", "1e-2", "--s-min", "-10", "--s-max", "50", "--s-step", "1",
        "--i-min", "-10", "--i-max", "40", "--i-step", "2", "--stages", "4000,40000", "--out",
        tbl.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", text(&o));

    let uniform = dir.path().join("uniform.ch");
    std::fs::write(&uniform, "gamma_e = 5, 5, 5\nrho_u_db = 20\n").unwrap();
    let alloc = |scheme: &str, ch: &Path, extra: &[&str]| {
        let mut args = vec!["allocate", "--channel", ch.to_str().unwrap(), "--table", tbl.to_str().unwrap()];
        args.extend_from_slice(&["--scheme", scheme, "--verify-samples", "20000"]);
        args.extend_from_slice(extra);
        run(&args)
    };
    let fea = alloc("n-fea", &uniform, &["--r-e", "3"]);
    let heu = alloc("n-heu", &uniform, &["--r-e", "3"]);
    assert!(fea.status.success(), "{}", text(&fea));
    let strip = |o: &Output| {
        text(o).lines().filter(|l| !l.starts_with("scheme:") && !l.starts_with("worst-interference")).collect::<Vec<_>>().join("\n")
    };
    assert_eq!(strip(&fea), strip(&heu));
    assert!(text(&fea).contains("f*: 0"));

    // OMA on 12 resources with a quarter for URLLC
    let twelve = dir.path().join("twelve.ch");
    std::fs::write(&twelve, "gamma_e_db = 3,1,9,4,-2,7,5,0,6,2,8,10\nrho_u_db = 25\n").unwrap();
    let csv = dir.path().join("oma.csv");
    let o = alloc("oma", &twelve, &["--urllc-share", "0.25", "--r-e", "6", "--csv", csv.to_str().unwrap()]);
    assert!(o.status.success(), "{}", text(&o));
    assert!(text(&o).contains("F_e=9, F_u=3"), "{}", text(&o));
    let rows: Vec<Vec<f64>> = std::fs::read_to_string(&csv)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r[1] * r[3] == 0.0));
    assert!(Path::new(&format!("{}.manifest.json", csv.display())).exists());

    // a table for the wrong F_u is a configuration error
    let o = alloc("n-fea", &twelve, &[]);
    assert_eq!(o.status.code(), Some(2), "{}", text(&o));
}
