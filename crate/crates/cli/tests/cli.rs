use std::io::Write;
use std::process::{Command, Output, Stdio};

use kinv::report::Report;

fn kinv(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kinv"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn generated(args: &[&str]) -> String {
    let o = kinv(&[&["generate"], args].concat(), None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn json_report(args: &[&str], stdin: Option<&str>) -> Report {
    let o = kinv(&[&["report", "--json", "-"], args].concat(), stdin);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("kinv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn a_q_report_through_a_pipe() {
    let text = generated(&["a_q", "--param", "q=2", "--field", "Fp:5"]);
    let r = json_report(&[], Some(&text));
    assert_eq!((r.k, r.ell, r.dim), (3, Some(1), 4));
    assert!(r.failed_checks().next().is_none());
    assert!(r
        .checks
        .iter()
        .all(|c| !c.lhs.is_empty() || c.status == kinv::classify::CheckStatus::Skip));
}

#[test]
fn classify_examples() {
    let kron = generated(&["kronecker", "4", "--field", "Q"]);
    let o = kinv(&["classify"], Some(&kron));
    assert!(o.status.success());
    assert!(
        stdout(&o).starts_with("other  (k, codim K_2, ell) = (2, 2, 2)"),
        "{}",
        stdout(&o)
    );

    let dual = generated(&["truncated", "2", "--field", "Fp:2"]);
    let o = kinv(&["classify"], Some(&dual));
    assert!(
        stdout(&o).starts_with("Morita equivalent to F[X]/(X^2)"),
        "{}",
        stdout(&o)
    );
    assert!(stdout(&o).contains("independent: true; x^2 = 0: true"));
}

#[test]
fn generated_file_reproduces_the_report() {
    let path = scratch("a_q.alg");
    let p = path.to_str().unwrap();
    let o = kinv(&["generate", "a_q", "3", "--field", "Fp:7", "-o", p], None);
    assert!(o.status.success());
    let first = json_report(&[p], None);
    let second = json_report(&[p], None);
    let piped = json_report(&[], Some(&std::fs::read_to_string(&path).unwrap()));
    assert_eq!(first, second);
    assert_eq!(first, piped);

    let json_path = scratch("a_q.json");
    let o = kinv(&["report", p, "--json", json_path.to_str().unwrap()], None);
    assert!(o.status.success());
    let written: Report =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(written, first);
}

#[test]
fn fuzz_is_deterministic() {
    let a = kinv(&["fuzz", "--seed", "11", "--count", "12"], None);
    let b = kinv(&["fuzz", "--seed", "11", "--count", "12"], None);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).trim(), "12 of 12 instances passed");
    let local = kinv(
        &["fuzz", "--seed", "3", "--count", "6", "--family", "local"],
        None,
    );
    assert!(local.status.success());
}

#[test]
fn exit_codes() {
    let bad = kinv(
        &["check"],
        Some("algebra dim=2 field=Q\nunit: 1 0\nmul 0 0 5 1\n"),
    );
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 3, column 9"));

    let non_split = generated(&["cyclic_group", "3", "--field", "Fp:2"]);
    assert_eq!(kinv(&["classify"], Some(&non_split)).status.code(), Some(2));
    assert_eq!(kinv(&["basic"], Some(&non_split)).status.code(), Some(2));
    // the theorem suite still runs and skips the split-only checks
    let verify = kinv(&["verify"], Some(&non_split));
    assert_eq!(verify.status.code(), Some(0));
    assert!(stdout(&verify).contains("SKIP codim_k1_equals_ell"));

    // (e1 e2) e2 = e1 but e1 (e2 e2) = e1 e1 = 0
    let non_associative = "algebra dim=3 field=Q\nunit: 1 0 0\nmul 0 0 0 1\nmul 0 1 1 1\nmul 1 0 1 1\nmul 0 2 2 1\nmul 2 0 2 1\nmul 1 2 1 1\nmul 2 2 1 1\n";
    assert_eq!(
        kinv(&["check"], Some(non_associative)).status.code(),
        Some(1)
    );
    let verify = kinv(&["verify"], Some(non_associative));
    assert_eq!(verify.status.code(), Some(3));
    assert!(stdout(&verify).starts_with("FAIL valid_algebra"));

    assert_eq!(
        kinv(&["check", "/nonexistent/input"], None).status.code(),
        Some(4)
    );
    assert_eq!(
        kinv(&["generate", "a_q", "1", "--field", "Fp:5"], None)
            .status
            .code(),
        Some(1)
    );
    assert_eq!(kinv(&["generate", "nothing"], None).status.code(), Some(1));
}

#[test]
fn cayley_input_with_field() {
    let table = "3\n0 1 2\n1 2 0\n2 0 1\n";
    let r = json_report(&["--field", "Fp:3"], Some(table));
    assert_eq!((r.k, r.ell, r.loewy_length), (3, Some(1), 3));
    let o = kinv(&["check", "--field", "Fp:3"], Some(table));
    assert!(o.status.success());
}

#[test]
fn quiver_input_with_parameter() {
    let quiver = "quiver field=Fp:5\nvertices: v\narrows: x: v->v, y: v->v\nrelations: x^2, y^2, x*y - q y*x\n";
    let r = json_report(&["--param", "q=2"], Some(quiver));
    assert_eq!((r.k, r.codim_series.clone()), (3, vec![1, 3, 3]));
    let missing = kinv(&["report"], Some(quiver));
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn basic_and_inflate_emit_valid_algebras() {
    let kron = generated(&["kronecker", "1", "--field", "Q"]);
    let inflated = kinv(&["inflate", "--mult", "1,2"], Some(&kron));
    assert!(inflated.status.success());
    let inflated = stdout(&inflated);
    assert!(inflated.starts_with("algebra dim=7 field=Q"));
    let basic = kinv(&["basic"], Some(&inflated));
    assert!(basic.status.success());
    let basic = stdout(&basic);
    assert!(basic.starts_with("algebra dim=3 field=Q"));
    assert!(basic.contains("\"bijective\": true"));
    let check = kinv(&["check"], Some(&basic));
    assert!(
        check.status.success(),
        "{}",
        String::from_utf8_lossy(&check.stderr)
    );
    let r = json_report(&[], Some(&basic));
    assert_eq!(
        (r.k, r.ell, r.codim_series.clone()),
        (2, Some(2), vec![2, 2])
    );
}

#[test]
fn verify_prints_both_sides() {
    let t = generated(&["triangular", "3", "--field", "Q"]);
    let o = kinv(&["verify"], Some(&t));
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("PASS codim_k1_equals_ell: 3 vs 3"), "{out}");
    assert!(
        out.contains("PASS radical_square_zero_k_equals_trace_cartan")
            || out.contains("PASS k_at_most_trace_cartan: 3 vs 3")
    );
}
