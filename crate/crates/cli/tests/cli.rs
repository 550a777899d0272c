use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn karaflat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_karaflat"))
        .args(args)
        .env_remove("KARAFLAT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn mul_writes_product_and_count() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.txt", "2 3\n");
    let b = write(dir.path(), "b.txt", "5\n7");
    let c = dir.path().join("c.txt");
    for algo in ["naive", "traditional", "interleaved", "partial", "flat", "gray"] {
        let o = karaflat(&["mul", "--algo", algo, s(&a), s(&b), "-o", s(&c)]);
        assert_eq!(o.status.code(), Some(0), "{algo}: {}", stderr(&o));
        assert_eq!(fs::read_to_string(&c).unwrap(), "10\n29\n21");
        let want = if algo == "naive" { "4" } else { "3" };
        assert!(
            stderr(&o).contains(&format!("{algo}: {want} multiplications")),
            "{}",
            stderr(&o)
        );
    }
}

#[test]
fn mul_zero_gives_empty_file() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.txt", "# nothing but zeros\n0 0 0\n");
    let b = write(dir.path(), "b.txt", "4 5");
    let c = dir.path().join("c.txt");
    let o = karaflat(&["mul", "--algo", "flat", s(&a), s(&b), "-o", s(&c)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&c).unwrap(), "");
}

#[test]
fn mul_names_bad_token() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.txt", "1 2\n3 4x 5\n");
    let b = write(dir.path(), "b.txt", "1");
    let o = karaflat(&["mul", s(&a), s(&b)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("\"4x\""), "{}", stderr(&o));
    assert!(stderr(&o).contains("line 2, column 3"), "{}", stderr(&o));
}

#[test]
fn mul_missing_file_is_usage_error() {
    let o = karaflat(&["mul", "/nonexistent/a", "/nonexistent/b"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "--sizes", "1,2,4,8,16,32", "--trials", "10", "--seed", "7"];
    let first = karaflat(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    let text = stdout(&first);
    assert!(text.starts_with("# verify seed=7 "), "{text}");
    assert!(text.contains("algos=traditional,interleaved,partial,flat,gray"));
    assert!(text.ends_with("all 60 pairs match\n"), "{text}");
    assert_eq!(stdout(&karaflat(&args)), text);
}

#[test]
fn verify_reports_injected_fault() {
    let o = karaflat(&[
        "verify",
        "--sizes",
        "4,8",
        "--trials",
        "3",
        "--seed",
        "11",
        "--inject-fault",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("MISMATCH algo=traditional n=4 trial=0 seed=11"), "{err}");
    assert!(
        err.contains("reproduce: karaflat verify --algo traditional --sizes 4 --trials 1 --seed 11"),
        "{err}"
    );
}

#[test]
fn verify_rejects_bad_config() {
    assert_eq!(karaflat(&["verify", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(karaflat(&["verify", "--sizes", "3"]).status.code(), Some(2));
    assert_eq!(karaflat(&["verify", "--coeff-bound", "0"]).status.code(), Some(2));
    assert_eq!(karaflat(&["verify", "--algo", "fft"]).status.code(), Some(2));
}

#[test]
fn verify_with_naive_expects_square_count() {
    let o = karaflat(&["verify", "--algo", "naive,gray", "--sizes", "16", "--trials", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn seed_falls_back_to_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_karaflat"))
        .args(["verify", "--sizes", "2", "--trials", "1"])
        .env("KARAFLAT_SEED", "1234")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# verify seed=1234 "));
}

fn csv_without_nanos(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.rsplit_once(',').unwrap().0.to_string())
        .collect()
}

#[test]
fn bench_csv_contract() {
    let o = karaflat(&[
        "bench",
        "--algo",
        "flat,naive",
        "--sizes",
        "64",
        "--trials",
        "3",
        "--seed",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("algo,n,trial,muls,nanos"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    for r in &rows {
        assert_eq!(r.len(), 5);
        assert_eq!(r[1], "64");
        let want = if r[0] == "flat" { "729" } else { "4096" };
        assert_eq!(r[3], want);
        r[4].parse::<u128>().unwrap();
    }
    assert!(stderr(&o).contains("seed=5"));
    assert!(stderr(&o).contains("algos=flat,naive"));

    let again = karaflat(&[
        "bench",
        "--algo",
        "flat,naive",
        "--sizes",
        "64",
        "--trials",
        "3",
        "--seed",
        "5",
    ]);
    assert_eq!(csv_without_nanos(&stdout(&again)), csv_without_nanos(&text));
}

#[test]
fn bench_to_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("bench.csv");
    let o = karaflat(&[
        "bench",
        "--algo",
        "partial",
        "--sizes",
        "1,2",
        "--trials",
        "1",
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(
        csv_without_nanos(&text),
        ["algo,n,trial,muls", "partial,1,0,1", "partial,2,0,3"]
    );
}

#[test]
fn coeff_examples() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.txt", "2 3");
    let b = write(dir.path(), "b.txt", "5 7");
    for form in ["tau", "sierpinski"] {
        let o = karaflat(&["coeff", "--m", "0", "--form", form, s(&a), s(&b)]);
        assert_eq!(stdout(&o), "10\n");
        let o = karaflat(&["coeff", "--m", "1", "--form", form, s(&a), s(&b)]);
        assert_eq!(stdout(&o), "29\n");
        let o = karaflat(&["coeff", "--m", "2", "--form", form, s(&a), s(&b)]);
        assert_eq!(o.status.code(), Some(2));
    }
}

#[test]
fn seq_examples() {
    assert_eq!(
        stdout(&karaflat(&["seq", "--name", "A106400", "--count", "8"])),
        "1 -1 -1 1 -1 1 1 -1\n"
    );
    assert_eq!(stdout(&karaflat(&["seq", "--name", "Sd", "--d", "5"])), "1 4 5\n");
    assert_eq!(
        stdout(&karaflat(&["seq", "--name", "A268289", "--count", "8"])),
        "0 1 1 3 2 3 4 7\n"
    );
    assert_eq!(
        stdout(&karaflat(&["seq", "--name", "A047999-row", "--row", "5"])),
        "1 1 0 0 1 1\n"
    );
    assert_eq!(karaflat(&["seq", "--name", "Sd"]).status.code(), Some(2));
    assert_eq!(
        karaflat(&["seq", "--name", "A000045", "--count", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn series_examples() {
    let dir = TempDir::new().unwrap();
    let ones = write(dir.path(), "ones.txt", "1 1 1 1 1 1 1");
    for form in ["partial", "flat"] {
        let o = karaflat(&["series", "--form", form, "--order", "5", s(&ones), s(&ones)]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), "1\n2\n3\n4\n5\n");
        let o = karaflat(&["series", "--form", form, "--order", "8", s(&ones), s(&ones)]);
        assert_eq!(o.status.code(), Some(2));
    }
}

#[test]
fn help_and_usage_codes() {
    assert_eq!(karaflat(&["--help"]).status.code(), Some(0));
    assert_eq!(karaflat(&["mul", "--help"]).status.code(), Some(0));
    assert_eq!(karaflat(&["--version"]).status.code(), Some(0));
    assert_eq!(karaflat(&[]).status.code(), Some(2));
    assert_eq!(karaflat(&["frobnicate"]).status.code(), Some(2));
}
