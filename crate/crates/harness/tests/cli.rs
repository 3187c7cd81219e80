use std::path::Path;
use std::process::Command;

fn vi_peg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vi-peg"))
}

fn write_spec(dir: &Path, body: &str) -> std::path::PathBuf {
    let p = dir.join("spec.toml");
    std::fs::write(&p, body).unwrap();
    p
}

const KS: &str = "[global]\ntiming = false\n[[problem]]\nkind = \"kojima-shindo\"\n[[solver]]\nkind = \"ipeg\"\n";

#[test]
fn run_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), KS);
    let out = vi_peg().arg("run").arg(&spec).arg("--out").arg(dir.path().join("o")).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("o/summary.csv").exists());
    assert!(dir.path().join("o/traces").read_dir().unwrap().count() == 1);

    let spec = write_spec(dir.path(), &KS.replace("timing = false", "max_iter = 3"));
    let out = vi_peg().arg("run").arg(&spec).arg("--out").arg(dir.path().join("o2")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let spec = write_spec(dir.path(), &KS.replace("ipeg", "newton"));
    let out = vi_peg().arg("run").arg(&spec).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("config error"));
}

#[test]
fn seed_override_changes_the_bootstrap() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), KS);
    let run = |seed: &str, out: &str| {
        let o = vi_peg()
            .env("VIPEG_SEED", seed)
            .arg("run")
            .arg(&spec)
            .arg("--out")
            .arg(dir.path().join(out))
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(dir.path().join(out).join("summary.csv")).unwrap()
    };
    let a = run("1", "a");
    let b = run("1", "b");
    let c = run("2", "c");
    assert_eq!(a, b);
    assert_ne!(a, c);
    let bad = vi_peg().env("VIPEG_SEED", "x").arg("run").arg(&spec).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn kappa_and_divergence_demo() {
    let out = vi_peg().args(["kappa", "--delta", "1", "--oracle"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("kappa(1) = 0.41421356237"));
    assert!(text.contains("oracle"));
    let out = vi_peg().args(["kappa", "--delta", "0.5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = vi_peg().args(["demo-divergence", "--delta", "1", "--lambda", "0.9"]).output().unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("diverges"));
    let out = vi_peg().args(["demo-divergence", "--delta", "1", "--lambda", "0.5"]).output().unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("converges"));
}

#[test]
fn plot_from_traces() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), &format!("{KS}[[solver]]\nkind = \"tfbf\"\n"));
    let o = vi_peg().arg("run").arg(&spec).arg("--out").arg(dir.path().join("o")).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let mut traces: Vec<_> =
        std::fs::read_dir(dir.path().join("o/traces")).unwrap().map(|e| e.unwrap().path()).collect();
    traces.sort();
    let svg = dir.path().join("p.svg");
    let o = vi_peg().arg("plot").args(&traces).arg("--out").arg(&svg).args(["--column", "lambda"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polyline").count(), 2);
}
