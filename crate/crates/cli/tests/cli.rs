use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const KINDS: [&str; 7] = ["random", "symmetric", "hermitian", "diagonal", "sparse", "unit", "tfim"];
const METHODS: [&str; 5] = ["tpd-recursive", "tpd-iterative", "tpd-sparse", "naive", "composer"];

fn paulitpd(args: &[&str]) -> Output {
    paulitpd_env(args, &[])
}

fn paulitpd_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_paulitpd"));
    cmd.args(args).env_remove("PAULITPD_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("run paulitpd")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decompose_unit() {
    let o = paulitpd(&["decompose", "--kind", "unit", "--n", "3", "--method", "tpd-recursive"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "III 1 0\n");
}

#[test]
fn decompose_tfim() {
    let o = paulitpd(&["decompose", "--kind", "tfim", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.ends_with(" -1 0")));
}

#[test]
fn rejects_three_by_three() {
    let dir = tempfile::tempdir().unwrap();
    let mm = dir.path().join("bad.mm");
    fs::write(&mm, "%%MatrixMarket matrix coordinate real general\n3 3 1\n1 1 1\n").unwrap();
    let o = paulitpd(&["decompose", "--in", path_str(&mm)]);
    assert_eq!(o.status.code(), Some(3));

    let dense = dir.path().join("bad.txt");
    fs::write(&dense, "paulitpd-dense v1 3\n1 0 0\n0 1 0\n0 0 1\n").unwrap();
    let o = paulitpd(&["decompose", "--in", path_str(&dense)]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn input_source_must_be_unique() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("a.txt");
    fs::write(&f, "paulitpd-dense v1 2\n1 0\n0 1\n").unwrap();
    let o = paulitpd(&["decompose", "--in", path_str(&f), "--kind", "unit", "--n", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = paulitpd(&["decompose", "--kind", "unit"]);
    assert_eq!(o.status.code(), Some(3));
    let o = paulitpd(&["decompose", "--kind", "nonsense", "--n", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn missing_file_is_io_error() {
    let o = paulitpd(&["decompose", "--in", "/definitely/not/here.mm"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn naive_guard() {
    let o = paulitpd(&["decompose", "--kind", "unit", "--n", "9", "--method", "naive"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_every_method_and_kind() {
    for method in METHODS {
        for kind in KINDS {
            for n in ["2", "4", "6"] {
                let o = paulitpd(&["verify", "--kind", kind, "--n", n, "--seed", "7", "--method", method]);
                assert_eq!(o.status.code(), Some(0), "{method} {kind} n={n}: {}", stdout(&o));
                assert!(stdout(&o).starts_with("PASS"));
            }
        }
    }
}

#[test]
fn verify_unit_six() {
    let o = paulitpd(&["verify", "--kind", "unit", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("terms=1 "));
}

#[test]
fn verify_detects_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.txt");
    let o = paulitpd(&["decompose", "--kind", "random", "--n", "3", "--seed", "4", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let good = fs::read_to_string(&out).unwrap();
    let o = paulitpd(&["verify", "--kind", "random", "--n", "3", "--seed", "4", "--decomposition", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));

    // Change one weight.
    let mut lines: Vec<String> = good.lines().map(String::from).collect();
    let label = lines[5].split_whitespace().next().unwrap().to_string();
    lines[5] = format!("{label} 0.123 0");
    fs::write(&out, lines.join("\n")).unwrap();
    let o = paulitpd(&["verify", "--kind", "random", "--n", "3", "--seed", "4", "--decomposition", path_str(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn generate_then_decompose_file() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, name) in [("hermitian", "h.txt"), ("sparse", "s.mtx")] {
        let file = dir.path().join(name);
        let gen = paulitpd(&["generate", "--kind", kind, "--n", "4", "--seed", "9", "--density", "0.2", "--out", path_str(&file)]);
        assert_eq!(gen.status.code(), Some(0));
        let from_file = paulitpd(&["decompose", "--in", path_str(&file)]);
        let direct = paulitpd(&["decompose", "--kind", kind, "--n", "4", "--seed", "9", "--density", "0.2"]);
        assert_eq!(from_file.status.code(), Some(0));
        assert_eq!(stdout(&from_file), stdout(&direct), "{kind}");
    }
}

#[test]
fn generate_to_stdout() {
    let o = paulitpd(&["generate", "--kind", "unit", "--n", "1"]);
    assert_eq!(stdout(&o), "paulitpd-dense v1 2\n1.0 0.0\n0.0 1.0\n");
    let o = paulitpd(&["generate", "--kind", "unit", "--n", "1", "--mm"]);
    assert_eq!(
        stdout(&o),
        "%%MatrixMarket matrix coordinate complex general\n2 2 2\n1 1 1.0 0.0\n2 2 1.0 0.0\n"
    );
}

#[test]
fn bench_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("results.csv");
    let o = paulitpd(&[
        "bench", "--kind", "unit", "--n", "2..4", "--method", "tpd-recursive,naive", "--out", path_str(&csv),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "method,kind,n,rep,wall_time_s,terms");
    assert_eq!(lines.len(), 31);
    assert!(lines[1].starts_with("naive,unit,2,0,"));
    assert!(lines[30].starts_with("tpd-recursive,unit,4,4,"));
    let summary = fs::read_to_string(dir.path().join("results.summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 7);
    assert_eq!(summary.lines().next().unwrap(), "method,kind,n,median_wall_time_s,terms");
}

#[test]
fn bench_rejects_guarded_range() {
    let o = paulitpd(&["bench", "--kind", "random", "--n", "8..9", "--method", "naive", "--reps", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn parallel_and_thread_count_do_not_change_output() {
    let reference = paulitpd(&["decompose", "--kind", "hermitian", "--n", "8", "--seed", "3"]);
    assert_eq!(reference.status.code(), Some(0));
    for threads in ["1", "3", "8"] {
        for method in ["tpd-recursive", "tpd-iterative", "tpd-sparse"] {
            let o = paulitpd_env(
                &["decompose", "--kind", "hermitian", "--n", "8", "--seed", "3", "--method", method, "--parallel"],
                &[("PAULITPD_THREADS", threads)],
            );
            assert_eq!(o.status.code(), Some(0));
            assert_eq!(o.stdout, reference.stdout, "{method} threads={threads}");
        }
    }
}

#[test]
fn bad_thread_env() {
    let o = paulitpd_env(&["decompose", "--kind", "unit", "--n", "1"], &[("PAULITPD_THREADS", "zero")]);
    assert_eq!(o.status.code(), Some(3));
}
